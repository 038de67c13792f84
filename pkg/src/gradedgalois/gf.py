"""Finite fields GF(p^m) in discrete-log form.

Nonzero elements are stored as powers of a fixed primitive element omega
(the class of x modulo the defining polynomial), so multiplication is
exponent arithmetic and addition goes through a precomputed Zech logarithm
table.  Machine code for an element: 0 for zero, 1 + dlog otherwise.

The defining polynomial of GF(p^m) is the lexicographically least monic
primitive polynomial (coefficients compared constant term first) whose root
omega is compatible with every proper subfield: for each proper divisor d
of m, omega**((p**m-1)//(p**d-1)) must be a root of the defining polynomial
of GF(p^d).  Without the compatibility condition the convention
omega_L**[L^x : F^x] = omega_F would fail to be a field embedding for some
towers (GF(5) inside GF(25) is the smallest failure), so the plain
lexicographic rule is tightened to the compatible one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SIZE_CAP = 1 << 16

# scalar codes: 0 is zero, 1 + d is omega**d
ZERO = 0


class FieldError(ValueError):
	pass


def _is_prime(n: int) -> bool:
	if n < 2:
		return False
	d = 2
	while d * d <= n:
		if n % d == 0:
			return False
		d += 1
	return True


def prime_factors(n: int) -> list[int]:
	"""Distinct prime factors of n, ascending."""
	out = []
	d = 2
	while d * d <= n:
		if n % d == 0:
			out.append(d)
			while n % d == 0:
				n //= d
		d += 1
	if n > 1:
		out.append(n)
	return out


# ---------------------------------------------------------------------------
# polynomial arithmetic over GF(p) used only while constructing a field;
# coefficient lists are constant-term first and trimmed

def _ptrim(a):
	while len(a) > 1 and a[-1] == 0:
		a.pop()
	if not a:
		a.append(0)
	return a


def _pmul(a, b, p):
	out = [0] * (len(a) + len(b) - 1)
	for i, x in enumerate(a):
		if x:
			for j, y in enumerate(b):
				out[i + j] = (out[i + j] + x * y) % p
	return _ptrim(out)


def _psub(a, b, p):
	n = max(len(a), len(b))
	out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
	return _ptrim(out)


def _pmod(a, m, p):
	a = list(a)
	dm = len(m) - 1
	inv_lead = pow(m[-1], p - 2, p)
	while len(a) - 1 >= dm and not (len(a) == 1 and a[0] == 0):
		c = a[-1]
		if c:
			cc = c * inv_lead % p
			off = len(a) - 1 - dm
			for i in range(dm + 1):
				a[off + i] = (a[off + i] - cc * m[i]) % p
		a.pop()
		_ptrim(a)
	return _ptrim(a)


def _ppowmod(a, e, m, p):
	result = [1]
	base = _pmod(a, m, p)
	while e:
		if e & 1:
			result = _pmod(_pmul(result, base, p), m, p)
		base = _pmod(_pmul(base, base, p), m, p)
		e >>= 1
	return result


def _pgcd(a, b, p):
	a, b = list(a), list(b)
	while b != [0]:
		a, b = b, _pmod(a, b, p)
	return a


def _is_irreducible_gfp(f, p, m):
	x = [0, 1]
	if _ppowmod(x, p ** m, f, p) != x:
		return False
	for r in prime_factors(m):
		g = _psub(_ppowmod(x, p ** (m // r), f, p), x, p)
		if len(_pgcd(f, g, p)) > 1:
			return False
	return True


def _is_primitive_gfp(f, p, m):
	q1 = p ** m - 1
	x = [0, 1]
	for ell in prime_factors(q1):
		if _ppowmod(x, q1 // ell, f, p) == [1]:
			return False
	return True


def _eval_gfp_poly(coeffs, elt, f, p):
	"""Evaluate a GF(p)[t] polynomial at an element of GF(p)[x]/(f)."""
	acc = [0]
	for c in reversed(coeffs):
		acc = _pmod(_pmul(acc, elt, p), f, p)
		acc = _ptrim([(acc[0] + c) % p] + acc[1:])
	return acc


def _canonical_defpoly(p: int, m: int) -> tuple[int, ...]:
	if m == 1:
		for c0 in range(p):
			g = (-c0) % p
			if g == 0:
				continue
			ok = True
			acc = g
			for _ in range(p - 2):
				if acc == 1:
					ok = False
					break
				acc = acc * g % p
			if ok:
				return (c0, 1)
		raise FieldError(f"no primitive linear polynomial mod {p}")
	q1 = p ** m - 1
	subs = [(d, _canonical_defpoly(p, d)) for d in range(1, m) if m % d == 0]

	def compatible(f):
		for d, sub in subs:
			y = _ppowmod([0, 1], q1 // (p ** d - 1), f, p)
			if _eval_gfp_poly(sub, y, f, p) != [0]:
				return False
		return True

	# enumerate (c0, ..., c_{m-1}) in lexicographic order, so the last
	# coefficient varies fastest and the first hit is the least polynomial;
	# the cheap screens below only discard candidates the full tests would
	# reject (root at 0 or +-1 kills irreducibility for m >= 2, and a
	# non-primitive constant-term norm kills primitivity), so the first
	# surviving polynomial is unchanged
	counter = [0] * m
	while True:
		f = counter + [1]
		c0 = counter[0]
		norm = (c0 if m % 2 == 0 else -c0) % p
		screened = (
			c0 == 0
			or (p > 2 and pow(norm, (p - 1) // 2, p) == 1)
			or sum(f) % p == 0
			or sum(-c if i % 2 else c for i, c in enumerate(f)) % p == 0
		)
		if not screened and _is_irreducible_gfp(f, p, m) and _is_primitive_gfp(f, p, m) and compatible(f):
			return tuple(f)
		i = m - 1
		while i >= 0:
			counter[i] += 1
			if counter[i] < p:
				break
			counter[i] = 0
			i -= 1
		if i < 0:
			raise FieldError(f"no compatible primitive polynomial for GF({p}^{m})")


_FIELDS: dict[tuple[int, int], "Field"] = {}


def field_create(p: int, m: int) -> "Field":
	"""The canonical GF(p^m); repeated calls return the same object."""
	key = (p, m)
	if key in _FIELDS:
		return _FIELDS[key]
	if not _is_prime(p):
		raise FieldError(f"{p} is not prime")
	if m < 1:
		raise FieldError("extension degree must be at least 1")
	if p ** m > SIZE_CAP:
		raise FieldError(f"GF({p}^{m}) exceeds the size cap {SIZE_CAP}")
	fld = Field(p, m)
	_FIELDS[key] = fld
	return fld


class Field:
	"""GF(p^m) with Zech-log arithmetic.  Use field_create, not Field()."""

	def __init__(self, p: int, m: int):
		self.p = p
		self.m = m
		self.q = p ** m
		self.order = self.q - 1  # size of the unit group
		self.defpoly = _canonical_defpoly(p, m)
		# powers of the root in blocks of m: x^(am+b) mod f is column b of
		# the a-th power of the m-step companion matrix, so the whole table
		# costs q/m small matrix products instead of q polynomial steps
		comp = np.zeros((m, m), dtype=np.int64)
		for b in range(m - 1):
			comp[b + 1, b] = 1
		comp[:, m - 1] = [(-c) % p for c in self.defpoly[:m]]
		step = np.eye(m, dtype=np.int64)
		for _ in range(m):
			step = (comp @ step) % p
		blocks = []
		acc = np.eye(m, dtype=np.int64)
		for _ in range(-(-self.order // m)):
			blocks.append(acc)
			acc = (step @ acc) % p
		digits = np.concatenate(blocks, axis=1)[:, : self.order]
		weights = np.array([p ** i for i in range(m)], dtype=np.int64)
		exp = weights @ digits
		log = np.full(self.q, -1, dtype=np.int64)
		log[exp] = np.arange(self.order, dtype=np.int64)
		if np.count_nonzero(log < 0) != 1 or exp[0] != 1:
			raise FieldError("defining polynomial root is not primitive")
		c0 = exp % p
		zech = log[exp - c0 + (c0 + 1) % p]
		self._exp = exp
		self._log = log
		self._zech = zech
		self._tables = None

	# -- scalar arithmetic on codes -------------------------------------

	def add(self, a: int, b: int) -> int:
		if a == ZERO:
			return b
		if b == ZERO:
			return a
		da, db = a - 1, b - 1
		if da > db:
			da, db = db, da
		z = int(self._zech[(db - da) % self.order])
		if z < 0:
			return ZERO
		return 1 + (da + z) % self.order

	def neg(self, a: int) -> int:
		if a == ZERO or self.p == 2:
			return a
		half = self.order // 2
		return 1 + (a - 1 + half) % self.order

	def sub(self, a: int, b: int) -> int:
		return self.add(a, self.neg(b))

	def mul(self, a: int, b: int) -> int:
		if a == ZERO or b == ZERO:
			return ZERO
		return 1 + (a - 1 + b - 1) % self.order

	def inv(self, a: int) -> int:
		if a == ZERO:
			raise ZeroDivisionError("inverse of zero")
		return 1 + (-(a - 1)) % self.order

	def pow(self, a: int, k: int) -> int:
		if a == ZERO:
			if k < 0:
				raise ZeroDivisionError("negative power of zero")
			return ZERO if k else 1
		return 1 + (a - 1) * k % self.order

	def dlog(self, a: int) -> int:
		if a == ZERO:
			raise FieldError("zero has no discrete log")
		return a - 1

	# -- element constructors -------------------------------------------

	def zero(self) -> "FieldElt":
		return FieldElt(self, ZERO)

	def one(self) -> "FieldElt":
		return FieldElt(self, 1)

	def gen(self) -> "FieldElt":
		"""omega, the canonical primitive element."""
		if self.q == 2:
			return FieldElt(self, 1)
		return FieldElt(self, 2)

	def from_dlog(self, d: int) -> "FieldElt":
		return FieldElt(self, 1 + d % self.order)

	def from_code(self, c: int) -> "FieldElt":
		return FieldElt(self, c)

	def from_poly(self, coeffs) -> "FieldElt":
		packed = 0
		cs = list(coeffs) + [0] * (self.m - len(coeffs))
		for c in reversed(cs[: self.m]):
			packed = packed * self.p + c % self.p
		if packed == 0:
			return self.zero()
		return FieldElt(self, 1 + int(self._log[packed]))

	def from_int(self, n: int) -> "FieldElt":
		"""The image of the integer n under GF(p) -> GF(p^m)."""
		return self.from_poly([n % self.p])

	def poly_coeffs(self, a: int) -> tuple[int, ...]:
		"""GF(p)-coordinates of a code in the power basis of omega."""
		if a == ZERO:
			return (0,) * self.m
		v = int(self._exp[a - 1])
		out = []
		for _ in range(self.m):
			out.append(v % self.p)
			v //= self.p
		return tuple(out)

	def elements(self):
		yield self.zero()
		for d in range(self.order):
			yield self.from_dlog(d)

	def units(self):
		for d in range(self.order):
			yield self.from_dlog(d)

	def elt_order(self, a: int) -> int:
		"""Multiplicative order of a nonzero code."""
		if a == ZERO:
			raise FieldError("zero has no multiplicative order")
		return self.order // math.gcd(a - 1, self.order)

	# -- numpy lookup tables for matrix work ----------------------------

	def tables(self):
		"""(ADD, MUL, NEG, INV) code tables; only for small fields."""
		if self._tables is None:
			if self.q > 256:
				raise FieldError(f"no matrix tables for GF({self.q}); field too large")
			q = self.q
			add = np.zeros((q, q), dtype=np.int32)
			mul = np.zeros((q, q), dtype=np.int32)
			neg = np.zeros(q, dtype=np.int32)
			invt = np.zeros(q, dtype=np.int32)
			for a in range(q):
				neg[a] = self.neg(a)
				if a:
					invt[a] = self.inv(a)
				for b in range(q):
					add[a, b] = self.add(a, b)
					mul[a, b] = self.mul(a, b)
			self._tables = (add, mul, neg, invt)
		return self._tables

	def __repr__(self):
		return f"GF({self.q})"

	def name(self) -> str:
		return f"GF({self.p}^{self.m})"


@dataclass(frozen=True)
class FieldElt:
	field: Field
	code: int

	def is_zero(self) -> bool:
		return self.code == ZERO

	@property
	def dlog(self):
		return None if self.code == ZERO else self.code - 1

	def _coerce(self, other):
		if isinstance(other, FieldElt):
			if other.field is not self.field:
				raise FieldError("elements of different fields")
			return other.code
		raise TypeError(f"cannot combine FieldElt with {type(other)!r}")

	def __add__(self, other):
		return FieldElt(self.field, self.field.add(self.code, self._coerce(other)))

	def __sub__(self, other):
		return FieldElt(self.field, self.field.sub(self.code, self._coerce(other)))

	def __mul__(self, other):
		return FieldElt(self.field, self.field.mul(self.code, self._coerce(other)))

	def __truediv__(self, other):
		oc = self._coerce(other)
		return FieldElt(self.field, self.field.mul(self.code, self.field.inv(oc)))

	def __neg__(self):
		return FieldElt(self.field, self.field.neg(self.code))

	def __pow__(self, k: int):
		return FieldElt(self.field, self.field.pow(self.code, k))

	def inv(self) -> "FieldElt":
		return FieldElt(self.field, self.field.inv(self.code))

	def order(self) -> int:
		return self.field.elt_order(self.code)

	def poly(self) -> tuple[int, ...]:
		return self.field.poly_coeffs(self.code)

	def to_json(self):
		if self.code == ZERO:
			return {"zero": True}
		return {"field": self.field.name(), "dlog": self.code - 1}

	def __repr__(self):
		if self.code == ZERO:
			return f"0_{self.field!r}"
		d = self.code - 1
		if d == 0:
			return f"1_{self.field!r}"
		return f"w^{d}_{self.field!r}"


def elt_from_json(obj) -> FieldElt:
	if obj.get("zero"):
		raise FieldError("zero element carries no field name; supply the field separately")
	p, m = parse_field_name(obj["field"])
	return field_create(p, m).from_dlog(obj["dlog"])


def parse_field_name(s: str) -> tuple[int, int]:
	"""Accepts 'GF(p^m)', 'GF(q)', 'p^m' or 'q' and returns (p, m)."""
	t = s.strip()
	if t.startswith("GF(") and t.endswith(")"):
		t = t[3:-1]
	if "^" in t:
		ps, ms = t.split("^")
		return int(ps), int(ms)
	q = int(t)
	for p in range(2, q + 1):
		if _is_prime(p) and q % p == 0:
			m = 0
			qq = q
			while qq > 1:
				if qq % p:
					raise FieldError(f"{q} is not a prime power")
				qq //= p
				m += 1
			return p, m
	raise FieldError(f"{q} is not a prime power")


def field_from_name(s: str) -> Field:
	p, m = parse_field_name(s)
	return field_create(p, m)


# ---------------------------------------------------------------------------
# towers

_TOWERS: dict[tuple[int, int, int], "Tower"] = {}


def tower_create(base: Field, top: Field) -> "Tower":
	key = (base.p, base.m, top.m)
	if key in _TOWERS:
		return _TOWERS[key]
	t = Tower(base, top)
	_TOWERS[key] = t
	return t


class Tower:
	"""A fixed pair F = GF(p^e) inside L = GF(p^(e*n)).

	embed sends omega_F to omega_L**index with index = [L^x : F^x]; the
	compatible defining polynomials make this an honest field embedding
	(checked exhaustively at construction).
	"""

	def __init__(self, base: Field, top: Field):
		if base.p != top.p:
			raise FieldError("tower fields must share the characteristic")
		if top.m % base.m != 0:
			raise FieldError(f"{base!r} does not embed in {top!r}")
		self.base = base
		self.top = top
		self.e = base.m
		self.n = top.m // base.m
		self.index = (top.q - 1) // (base.q - 1)
		if base.q > 512:
			raise FieldError("tower base too large to certify the embedding")
		for a in base.elements():
			for b in base.elements():
				if self.embed(a + b) != self.embed(a) + self.embed(b):
					raise FieldError(
						f"embedding {base!r} -> {top!r} is not additive; "
						"defining polynomials are incompatible")

	def embed(self, x: FieldElt) -> FieldElt:
		if x.field is not self.base:
			raise FieldError("embed expects an element of the base field")
		if x.code == ZERO:
			return self.top.zero()
		return self.top.from_dlog((x.code - 1) * self.index)

	def project(self, y: FieldElt) -> FieldElt:
		"""Inverse of embed; errors when y lies outside the base field."""
		if y.field is not self.top:
			raise FieldError("project expects an element of the top field")
		if y.code == ZERO:
			return self.base.zero()
		d = y.code - 1
		if d % self.index:
			raise FieldError("element does not lie in the base subfield")
		return self.base.from_dlog(d // self.index)

	def contains(self, y: FieldElt) -> bool:
		return y.code == ZERO or (y.code - 1) % self.index == 0

	def frobenius(self, x: FieldElt, j: int = 1) -> FieldElt:
		"""phi^j with phi the relative Frobenius y -> y**(p**e)."""
		if x.field is not self.top:
			raise FieldError("frobenius expects an element of the top field")
		if x.code == ZERO:
			return x
		shift = pow(self.base.q, j % self.n, self.top.order)
		return self.top.from_dlog((x.code - 1) * shift)

	def norm(self, x: FieldElt) -> FieldElt:
		"""Norm L -> F, equal to x**index on units."""
		if x.field is not self.top:
			raise FieldError("norm expects an element of the top field")
		if x.code == ZERO:
			return self.base.zero()
		return self.base.from_dlog(x.code - 1)

	def norm_section(self, y: FieldElt) -> FieldElt:
		"""The section omega_F^j -> omega_L^j of the norm, 0 <= j < |F^x|."""
		if y.field is not self.base:
			raise FieldError("norm_section expects an element of the base field")
		if y.code == ZERO:
			raise FieldError("zero is not in the image of the unit norm")
		return self.top.from_dlog(y.code - 1)

	def __repr__(self):
		return f"Tower({self.base!r} in {self.top!r})"


# ---------------------------------------------------------------------------
# distinguished roots of unity and the canonical root section

def omega(field: Field, N: int) -> FieldElt:
	"""The canonical element of order N, omega**((q-1)/N)."""
	if N < 1 or field.order % N:
		raise FieldError(f"GF({field.q}) has no root of unity of order {N}")
	return field.from_dlog(field.order // N)


def root_section(field: Field, N: int, x: FieldElt) -> FieldElt:
	"""The canonical N-th root: write x = omega_M^j with M = order(x) and
	0 <= j < M, and return omega_(M*N)^j.

	The result does not depend on replacing M by a multiple (still with
	0 <= j < M), which is what makes the map a section of y -> y**N.
	"""
	if x.field is not field:
		raise FieldError("root_section expects an element of the given field")
	if x.code == ZERO:
		raise FieldError("root_section is defined on units only")
	if N < 1:
		raise FieldError("root index must be positive")
	M = field.elt_order(x.code)
	if field.order % (M * N):
		raise FieldError(
			f"GF({field.q}) has no root of unity of order {M * N}; "
			"pick a larger ambient field")
	j = (x.code - 1) // (field.order // M)
	return field.from_dlog(j * (field.order // (M * N)))
