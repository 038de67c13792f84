"""Finite abelian groups: subgroups, cosets, quotients, characters, and
alternating bicharacters.

Elements of a group with orders (d_1, ..., d_r) are residue tuples.  All
groups here are small (caps inherited from the callers: |G| <= 4096 for
materialized subgroups, <= 256 for full subgroup enumeration), so closures
and radicals are computed by exhaustion rather than cleverness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod

from .gf import Field, FieldElt, omega

SUBGROUP_CAP = 1 << 12
ENUM_CAP = 256


class GroupError(ValueError):
	pass


@dataclass(frozen=True)
class AbGroup:
	"""Direct product of cyclic groups Z/d_1 x ... x Z/d_r."""

	orders: tuple[int, ...]

	def __post_init__(self):
		if any(d < 1 for d in self.orders):
			raise GroupError(f"orders must be positive, got {self.orders}")

	@property
	def size(self) -> int:
		return prod(self.orders)

	@property
	def rank(self) -> int:
		return len(self.orders)

	def zero(self):
		return (0,) * len(self.orders)

	def add(self, x, y):
		return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

	def neg(self, x):
		return tuple((-a) % d for a, d in zip(x, self.orders))

	def sub(self, x, y):
		return self.add(x, self.neg(y))

	def smul(self, n: int, x):
		return tuple((n * a) % d for a, d in zip(x, self.orders))

	def order_of(self, x) -> int:
		return _lcm_list([d // gcd(a, d) for a, d in zip(x, self.orders)])

	def elements(self):
		return itertools.product(*(range(d) for d in self.orders))

	@property
	def exponent(self) -> int:
		return _lcm_list(list(self.orders)) if self.orders else 1

	def contains(self, x) -> bool:
		return len(x) == len(self.orders) and all(0 <= a < d for a, d in zip(x, self.orders))

	def invariant_factors(self) -> tuple[int, ...]:
		return _invariant_factors_from_orders(self.orders)

	def generators(self):
		"""Standard generators e_i, paired with their orders (order-1 slots skipped)."""
		out = []
		for i, d in enumerate(self.orders):
			if d > 1:
				e = [0] * len(self.orders)
				e[i] = 1
				out.append((tuple(e), d))
		return out

	def name(self) -> str:
		return "x".join(f"Z/{d}" for d in self.orders) if self.orders else "1"


def _lcm_list(ds) -> int:
	out = 1
	for d in ds:
		out = out * d // gcd(out, d)
	return out


def _invariant_factors_from_orders(orders) -> tuple[int, ...]:
	"""Normalize cyclic factor orders to d_1 | d_2 | ... | d_r (the trivial
	group gets ())."""
	primary: dict[int, list[int]] = {}
	for d in orders:
		dd = d
		p = 2
		while dd > 1:
			if dd % p == 0:
				e = 0
				while dd % p == 0:
					dd //= p
					e += 1
				primary.setdefault(p, []).append(p ** e)
			p += 1
	for p in primary:
		primary[p].sort(reverse=True)
	depth = max((len(v) for v in primary.values()), default=0)
	factors = []
	for i in range(depth):
		f = 1
		for p, v in primary.items():
			if i < len(v):
				f *= v[i]
		factors.append(f)
	return tuple(reversed(factors))


# ---------------------------------------------------------------------------
# greedy basis extraction for an arbitrary small abelian group given as
# (elements, add, neg, zero); used for subgroups and quotients alike


def _closure(group: AbGroup, gens):
	seen = {group.zero()}
	frontier = [group.zero()]
	while frontier:
		nxt = []
		for x in frontier:
			for g in gens:
				y = group.add(x, g)
				if y not in seen:
					seen.add(y)
					nxt.append(y)
		frontier = nxt
	return seen


def _abstract_basis(elements, add, zero):
	"""Independent generators of a finite abelian group, invariant-factor
	ordered (orders ascending, each dividing the next).

	Works one prime at a time: greedily pick an element of maximal order in
	the current quotient, then correct it by a subgroup element so its true
	order matches its quotient order (the correction is found by scanning
	the subgroup generated so far, which is fine at these sizes).
	"""
	n = len(elements)
	if n == 1:
		return []

	def times(k, x):
		acc = zero
		b = x
		while k:
			if k & 1:
				acc = add(acc, b)
			b = add(b, b)
			k >>= 1
		return acc

	def order_of(x):
		k = 1
		y = x
		while y != zero:
			y = add(y, x)
			k += 1
		return k

	primes = []
	nn = n
	p = 2
	while nn > 1:
		if nn % p == 0:
			primes.append(p)
			while nn % p == 0:
				nn //= p
		p += 1

	per_prime: dict[int, list[tuple]] = {}
	for p in primes:
		cof = n
		while cof % p == 0:
			cof //= p
		# the p-primary component: images of multiplication by the
		# prime-to-p cofactor
		comp = sorted({times(cof, x) for x in elements})
		basis: list[tuple] = []
		span = {zero}
		while len(span) < len(comp):
			best = None
			best_ord = 0
			for x in comp:
				if x in span:
					continue
				q = 1
				y = x
				while y not in span:
					y = times(p, y)
					q *= p
				if q > best_ord or (q == best_ord and x < best):
					best, best_ord = x, q
			# correct so the element's actual order equals its quotient order
			fixed = None
			for s in sorted(span):
				cand = add(best, s)
				if order_of(cand) == best_ord:
					fixed = cand
					break
			if fixed is None:
				raise GroupError("basis correction failed; not an abelian group?")
			basis.append(fixed)
			span = {add(s, times(k, fixed)) for s in span for k in range(best_ord)}
		per_prime[p] = basis

	depth = max((len(v) for v in per_prime.values()), default=0)
	out = []
	for i in range(depth):
		g = zero
		o = 1
		for p, basis in per_prime.items():
			if i < len(basis):
				g = add(g, basis[i])
				o *= order_of(basis[i])
		out.append((g, o))
	out.reverse()  # ascending orders, d_1 | d_2 | ... | d_r
	return out


class Subgroup:
	"""A subgroup of an AbGroup with materialized elements and a canonical
	independent generator tuple."""

	def __init__(self, parent: AbGroup, elems, gens_with_orders):
		self.parent = parent
		self.elems = tuple(sorted(elems))
		self.elemset = frozenset(elems)
		self.gens = tuple(g for g, _ in gens_with_orders)
		self.gen_orders = tuple(o for _, o in gens_with_orders)
		self._coords: dict | None = None

	@property
	def size(self) -> int:
		return len(self.elems)

	def invariant_factors(self) -> tuple[int, ...]:
		return tuple(self.gen_orders)

	@property
	def exponent(self) -> int:
		return _lcm_list(list(self.gen_orders)) if self.gen_orders else 1

	def contains(self, x) -> bool:
		return x in self.elemset

	def coords(self, x) -> tuple[int, ...]:
		"""Exponents (e_1, ..., e_m) with x = sum e_i * gens_i, 0 <= e_i < o_i."""
		if self._coords is None:
			table = {}
			for exps in itertools.product(*(range(o) for o in self.gen_orders)):
				y = self.parent.zero()
				for e, g in zip(exps, self.gens):
					y = self.parent.add(y, self.parent.smul(e, g))
				if y in table:
					raise GroupError("generator tuple is not independent")
				table[y] = exps
			if len(table) != len(self.elems):
				raise GroupError("generators do not span the subgroup")
			self._coords = table
		return self._coords[x]

	def __eq__(self, other):
		return isinstance(other, Subgroup) and self.parent == other.parent and self.elemset == other.elemset

	def __hash__(self):
		return hash((self.parent, self.elemset))

	def __repr__(self):
		return f"Subgroup({self.parent.name()}, order {self.size})"


def subgroup_from_generators(G: AbGroup, gens) -> Subgroup:
	"""Smallest subgroup of G containing gens, with a canonical basis."""
	if G.size > SUBGROUP_CAP:
		raise GroupError(f"|G| = {G.size} exceeds the materialization cap {SUBGROUP_CAP}")
	for g in gens:
		if not G.contains(g):
			raise GroupError(f"{g} is not an element of {G.name()}")
	elems = _closure(G, list(gens))
	basis = _abstract_basis(sorted(elems), G.add, G.zero())
	return Subgroup(G, elems, basis)


def full_subgroup(G: AbGroup) -> Subgroup:
	return subgroup_from_generators(G, [g for g, _ in G.generators()])


def trivial_subgroup(G: AbGroup) -> Subgroup:
	return subgroup_from_generators(G, [])


def torsion(G: AbGroup, N: int) -> Subgroup:
	"""G_[N]: the kernel of multiplication by N."""
	elems = [x for x in G.elements() if G.smul(N, x) == G.zero()]
	return subgroup_from_generators(G, elems)


def enumerate_subgroups(G: AbGroup) -> list[Subgroup]:
	"""Every subgroup exactly once, sorted by (order, element list)."""
	if G.size > ENUM_CAP:
		raise GroupError(f"|G| = {G.size} exceeds the enumeration cap {ENUM_CAP}")
	seen: dict[frozenset, Subgroup] = {}
	triv = trivial_subgroup(G)
	seen[triv.elemset] = triv
	frontier = [triv]
	all_elems = sorted(G.elements())
	while frontier:
		nxt = []
		for S in frontier:
			for x in all_elems:
				if x in S.elemset:
					continue
				bigger = subgroup_from_generators(G, list(S.gens) + [x])
				if bigger.elemset not in seen:
					seen[bigger.elemset] = bigger
					nxt.append(bigger)
		frontier = nxt
	return sorted(seen.values(), key=lambda S: (S.size, S.elems))


@dataclass(frozen=True)
class Coset:
	"""A coset rep + K of a subgroup, canonicalized by its least member."""

	subgroup: Subgroup
	rep: tuple

	def __post_init__(self):
		G = self.subgroup.parent
		least = min(G.add(self.rep, k) for k in self.subgroup.elems)
		object.__setattr__(self, "rep", least)

	def elements(self):
		G = self.subgroup.parent
		return sorted(G.add(self.rep, k) for k in self.subgroup.elems)

	def __eq__(self, other):
		return (
			isinstance(other, Coset)
			and self.subgroup == other.subgroup
			and self.rep == other.rep
		)

	def __hash__(self):
		return hash((self.subgroup, self.rep))


def cosets(G: AbGroup, K: Subgroup) -> list[Coset]:
	"""The cosets of K in G, sorted by representative."""
	out = []
	covered = set()
	for x in sorted(G.elements()):
		if x in covered:
			continue
		c = Coset(K, x)
		covered.update(c.elements())
		out.append(c)
	return out


class Quotient:
	"""G/H in invariant-factor form, with projection and a section."""

	def __init__(self, G: AbGroup, H: Subgroup):
		self.parent = G
		self.subgroup = H
		coset_of = {}
		keys = []
		for x in sorted(G.elements()):
			if x in coset_of:
				continue
			c = Coset(H, x)
			key = c.rep
			keys.append(key)
			for y in c.elements():
				coset_of[y] = key
		zero_key = coset_of[G.zero()]

		def qadd(a, b):
			return coset_of[G.add(a, b)]

		basis = _abstract_basis(keys, qadd, zero_key)
		self.group = AbGroup(tuple(o for _, o in basis)) if basis else AbGroup(())
		coords = {}
		sect = {}
		for exps in itertools.product(*(range(o) for _, o in basis)):
			y = zero_key
			for e, (g, _) in zip(exps, basis):
				for _ in range(e):
					y = qadd(y, g)
			coords[y] = exps
			sect[exps] = y
		if len(coords) != len(keys):
			raise GroupError("quotient basis failed to span")
		self._coset_of = coset_of
		self._coords = coords
		self._sect = sect

	def proj(self, x) -> tuple:
		return self._coords[self._coset_of[x]]

	def section(self, q) -> tuple:
		"""The least coset member mapping to q."""
		return self._sect[q]


def quotient(G: AbGroup, H: Subgroup) -> Quotient:
	return Quotient(G, H)


def is_hyperbolic(K: Subgroup) -> bool:
	"""True iff K is isomorphic to A x A for some finite abelian A, i.e. the
	prime-power divisors pair up."""
	factors = K.invariant_factors()
	counts: dict[tuple[int, int], int] = {}
	for d in factors:
		dd = d
		p = 2
		while dd > 1:
			if dd % p == 0:
				e = 0
				while dd % p == 0:
					dd //= p
					e += 1
				counts[(p, e)] = counts.get((p, e), 0) + 1
			p += 1
	return all(v % 2 == 0 for v in counts.values())


# ---------------------------------------------------------------------------
# characters and bicharacters


def _group_gens(group):
	"""(generator, order) pairs for an AbGroup or Subgroup."""
	if isinstance(group, AbGroup):
		return group.generators()
	return list(zip(group.gens, group.gen_orders))


def _group_coords(group, x):
	if isinstance(group, AbGroup):
		return tuple(a for a, d in zip(x, group.orders) if d > 1)
	return group.coords(x)


def _group_elements(group):
	if isinstance(group, AbGroup):
		return list(group.elements())
	return list(group.elems)


class Character:
	"""A homomorphism from an abelian group into F^x, given on generators."""

	def __init__(self, group, target: Field, values):
		self.group = group
		self.target = target
		self.values = tuple(values)
		gens = _group_gens(group)
		if len(self.values) != len(gens):
			raise GroupError("one value per generator required")
		for v, (_, d) in zip(self.values, gens):
			if v.code == 0:
				raise GroupError("character values must be units")
			if (v ** d).code != 1:
				raise GroupError(f"value {v} does not satisfy v^{d} = 1")

	def value(self, x) -> FieldElt:
		exps = _group_coords(self.group, x)
		out = self.target.one()
		for e, v in zip(exps, self.values):
			out = out * v ** e
		return out

	def is_trivial(self) -> bool:
		return all(v.code == 1 for v in self.values)

	def __eq__(self, other):
		return (
			isinstance(other, Character)
			and self.group == other.group
			and self.target is other.target
			and self.values == other.values
		)

	def __hash__(self):
		return hash((id(self.target), self.values))

	def __repr__(self):
		return f"Character({[v.code for v in self.values]})"


def characters(group, target: Field) -> list[Character]:
	"""All homomorphisms group -> target^x, deterministic order."""
	gens = _group_gens(group)
	choice_lists = []
	for _, d in gens:
		g = gcd(d, target.order)
		root = omega(target, g)
		choice_lists.append([root ** t for t in range(g)])
	return [Character(group, target, vals) for vals in itertools.product(*choice_lists)]


class Bicharacter:
	"""A bimultiplicative pairing K x K -> F^x given by generator values."""

	def __init__(self, group: Subgroup, target: Field, matrix):
		self.group = group
		self.target = target
		self.matrix = tuple(tuple(row) for row in matrix)
		gens = _group_gens(group)
		m = len(gens)
		if len(self.matrix) != m or any(len(r) != m for r in self.matrix):
			raise GroupError("matrix shape must match the generator tuple")
		for i, (_, di) in enumerate(gens):
			for j, (_, dj) in enumerate(gens):
				v = self.matrix[i][j]
				if v.code == 0:
					raise GroupError("bicharacter values must be units")
				if (v ** gcd(di, dj)).code != 1:
					raise GroupError("value order must divide gcd of generator orders")

	def value(self, x, y) -> FieldElt:
		ex = _group_coords(self.group, x)
		ey = _group_coords(self.group, y)
		out = self.target.one()
		for i, a in enumerate(ex):
			if not a:
				continue
			for j, b in enumerate(ey):
				if b:
					out = out * self.matrix[i][j] ** (a * b)
		return out

	def is_alternating(self) -> bool:
		m = len(self.matrix)
		for i in range(m):
			if self.matrix[i][i].code != 1:
				return False
			for j in range(i + 1, m):
				if (self.matrix[i][j] * self.matrix[j][i]).code != 1:
					return False
		return True

	def radical(self) -> list:
		gens = [g for g, _ in _group_gens(self.group)]
		return [
			k
			for k in _group_elements(self.group)
			if all(self.value(k, g).code == 1 for g in gens)
		]

	def is_nondegenerate(self) -> bool:
		if not self.is_alternating():
			raise GroupError("nondegeneracy is defined here for alternating pairings")
		return len(self.radical()) == 1

	def exponent_matrix(self) -> tuple:
		"""Dlog codes of the generator values; the canonical label."""
		return tuple(tuple(v.code for v in row) for row in self.matrix)

	def __eq__(self, other):
		return (
			isinstance(other, Bicharacter)
			and self.group == other.group
			and self.target is other.target
			and self.exponent_matrix() == other.exponent_matrix()
		)

	def __hash__(self):
		return hash((id(self.target), self.exponent_matrix()))

	def __repr__(self):
		return f"Bicharacter({self.exponent_matrix()})"


def trivial_bicharacter(K: Subgroup, target: Field) -> Bicharacter:
	m = len(K.gens)
	one = target.one()
	return Bicharacter(K, target, [[one] * m for _ in range(m)])


def alternating_bicharacters(K: Subgroup, target: Field) -> list[Bicharacter]:
	"""All alternating bicharacters on K with values in target^x."""
	gens = _group_gens(K)
	m = len(gens)
	one = target.one()
	slots = [(i, j) for i in range(m) for j in range(i + 1, m)]
	choice_lists = []
	for i, j in slots:
		g = gcd(gcd(gens[i][1], gens[j][1]), target.order)
		root = omega(target, g)
		choice_lists.append([root ** t for t in range(g)])
	out = []
	for vals in itertools.product(*choice_lists):
		M = [[one] * m for _ in range(m)]
		for (i, j), v in zip(slots, vals):
			M[i][j] = v
			M[j][i] = v.inv()
		out.append(Bicharacter(K, target, M))
	return out


def nondegenerate_alternating_bicharacters(K: Subgroup, target: Field) -> list[Bicharacter]:
	return [b for b in alternating_bicharacters(K, target) if b.is_nondegenerate()]


def symplectic_basis(beta: Bicharacter):
	"""Pairs (a_i, b_i, n_i) with beta(a_i, b_i) of exact order n_i = o(a_i)
	= o(b_i) and all other generator pairings trivial.

	Greedy: take the least element of maximal order, find the least partner
	pairing to a root of that exact order, restrict to the orthogonal
	complement, repeat.  The caller can reconstruct beta from the output.
	"""
	if not beta.is_nondegenerate():
		raise GroupError("symplectic basis requires a nondegenerate alternating pairing")
	K = beta.group
	G = K.parent
	out = []
	current = sorted(K.elems)
	while len(current) > 1:
		max_ord = max(G.order_of(x) for x in current if x != G.zero())
		a = min(x for x in current if x != G.zero() and G.order_of(x) == max_ord)
		b = None
		for y in current:
			v = beta.value(a, y)
			if v.order() == max_ord:
				b = y
				break
		if b is None:
			raise GroupError("no symplectic partner found; pairing degenerate?")
		out.append((a, b, max_ord))
		current = [
			x
			for x in current
			if beta.value(a, x).code == 1 and beta.value(b, x).code == 1
		]
	return out


def bichar_orbit_reps(K: Subgroup, target: Field) -> list[Bicharacter]:
	"""One representative per Frobenius orbit of nondegenerate alternating
	bicharacters, least exponent matrix first."""
	if not is_hyperbolic(K):
		raise GroupError("K must be of the form A x A")
	if target.order % K.exponent != 0:
		raise GroupError("exp(K) must divide |F^x|")
	if K.size > 16:
		raise GroupError("orbit enumeration is capped at |K| <= 16")
	all_nd = {b.exponent_matrix(): b for b in nondegenerate_alternating_bicharacters(K, target)}
	reps = []
	seen = set()
	for key in sorted(all_nd):
		if key in seen:
			continue
		b = all_nd[key]
		orbit = set()
		cur = b
		while cur.exponent_matrix() not in orbit:
			orbit.add(cur.exponent_matrix())
			cur = Bicharacter(
				K, target, [[v ** target.p for v in row] for row in cur.matrix]
			)
		seen.update(orbit)
		reps.append(b)
	return reps
