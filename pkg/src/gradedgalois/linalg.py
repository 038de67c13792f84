"""Exact numpy-backed linear algebra over the fields from gf.

Matrices hold scalar codes (0 for zero, 1 + dlog otherwise).  Prime fields
are handled by decoding to residues and using integer arithmetic mod p;
extension fields use precomputed lookup tables, so everything stays exact.
"""

from __future__ import annotations

import numpy as np

from .gf import Field, FieldError

_OPS_CACHE: dict[int, "_Ops"] = {}


def _ops(field: Field) -> "_Ops":
	key = id(field)
	if key not in _OPS_CACHE:
		_OPS_CACHE[key] = _PrimeOps(field) if field.m == 1 else _TableOps(field)
	return _OPS_CACHE[key]


class _PrimeOps:
	"""Work representation: residues mod p."""

	def __init__(self, field: Field):
		self.field = field
		p = field.p
		dec = np.zeros(field.q, dtype=np.int64)
		for c in range(1, field.q):
			dec[c] = pow((-field.defpoly[0]) % p, c - 1, p)
		enc = np.zeros(p, dtype=np.int64)
		for c in range(field.q):
			enc[dec[c]] = c
		self._dec = dec
		self._enc = enc
		self.p = p

	def to_work(self, C):
		return self._dec[C]

	def from_work(self, W):
		return self._enc[np.mod(W, self.p)]

	def add(self, A, B):
		return (A + B) % self.p

	def sub(self, A, B):
		return (A - B) % self.p

	def mul(self, A, B):
		return (A * B) % self.p

	def neg(self, A):
		return (-A) % self.p

	def scalar_inv(self, a):
		return pow(int(a), self.p - 2, self.p)

	def matmul(self, A, B):
		return (A @ B) % self.p


class _TableOps:
	"""Work representation: the codes themselves, via lookup tables."""

	def __init__(self, field: Field):
		self.field = field
		self.ADD, self.MUL, self.NEG, self.INV = field.tables()

	def to_work(self, C):
		return C.astype(np.int32, copy=True)

	def from_work(self, W):
		return W

	def add(self, A, B):
		return self.ADD[A, B]

	def sub(self, A, B):
		return self.ADD[A, self.NEG[B]]

	def mul(self, A, B):
		return self.MUL[A, B]

	def neg(self, A):
		return self.NEG[A]

	def scalar_inv(self, a):
		return int(self.INV[int(a)])

	def matmul(self, A, B):
		out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int32)
		for k in range(A.shape[1]):
			col = A[:, k]
			if not col.any():
				continue
			out = self.ADD[out, self.MUL[col[:, None], B[k][None, :]]]
		return out


def _as_array(A) -> np.ndarray:
	M = np.asarray(A)
	if M.ndim == 1:
		M = M[None, :]
	return M


def matmul(field: Field, A, B) -> np.ndarray:
	ops = _ops(field)
	W = ops.matmul(ops.to_work(np.asarray(A)), ops.to_work(np.asarray(B)))
	return ops.from_work(W)


def matvec(field: Field, A, x) -> np.ndarray:
	return matmul(field, A, np.asarray(x)[:, None])[:, 0]


def add(field: Field, A, B) -> np.ndarray:
	ops = _ops(field)
	return ops.from_work(ops.add(ops.to_work(np.asarray(A)), ops.to_work(np.asarray(B))))


def sub(field: Field, A, B) -> np.ndarray:
	ops = _ops(field)
	return ops.from_work(ops.sub(ops.to_work(np.asarray(A)), ops.to_work(np.asarray(B))))


def neg(field: Field, A) -> np.ndarray:
	ops = _ops(field)
	return ops.from_work(ops.neg(ops.to_work(np.asarray(A))))


def scale(field: Field, c: int, A) -> np.ndarray:
	ops = _ops(field)
	W = ops.to_work(np.asarray(A))
	cw = ops.to_work(np.asarray([c]))[0]
	return ops.from_work(ops.mul(W, cw))


def eye(n: int) -> np.ndarray:
	M = np.zeros((n, n), dtype=np.int32)
	np.fill_diagonal(M, 1)
	return M


def zeros(shape) -> np.ndarray:
	return np.zeros(shape, dtype=np.int32)


def _rref_work(ops, M):
	M = M.copy()
	rows, cols = M.shape
	pivots = []
	r = 0
	for c in range(cols):
		if r == rows:
			break
		nz = np.nonzero(M[r:, c])[0]
		if len(nz) == 0:
			continue
		pr = r + int(nz[0])
		if pr != r:
			M[[r, pr]] = M[[pr, r]]
		piv = M[r, c]
		if piv != 1:
			M[r] = ops.mul(M[r], np.asarray(ops.scalar_inv(piv)))
		rest = np.nonzero(M[:, c])[0]
		rest = rest[rest != r]
		if len(rest):
			M[rest] = ops.sub(M[rest], ops.mul(M[rest, c][:, None], M[r][None, :]))
		pivots.append(c)
		r += 1
	return M, pivots


def rref(field: Field, A):
	"""Reduced row echelon form; returns (R, pivot column list)."""
	ops = _ops(field)
	W, pivots = _rref_work(ops, ops.to_work(_as_array(A)))
	return ops.from_work(W), pivots


def _rank_prime_blocked(W, p: int, panel: int = 32) -> int:
	"""Forward elimination over GF(p) with panel-deferred trailing updates.

	Trailing blocks are updated by one float64 gemm per panel; every
	intermediate is an integer bounded by panel * (p-1)**2, far below 2**53,
	so the floating arithmetic is exact.
	"""
	M = np.asarray(W, dtype=np.float64).copy()
	rows, cols = M.shape
	r = 0
	inv = [0.0] + [float(pow(x, p - 2, p)) for x in range(1, p)]
	c0 = 0
	while c0 < cols and r < rows:
		c1 = min(c0 + panel, cols)
		F = np.zeros((rows, c1 - c0))
		V = np.zeros((c1 - c0, cols - c1))
		k = 0
		r0 = r
		for c in range(c0, c1):
			if r == rows:
				break
			nz = np.nonzero(M[r:, c])[0]
			if len(nz) == 0:
				continue
			pr = r + int(nz[0])
			if pr != r:
				M[[r, pr]] = M[[pr, r]]
				F[[r, pr]] = F[[pr, r]]
			ipiv = inv[int(M[r, c])]
			if cols > c1:
				vrow = M[r, c1:]
				if k:
					vrow = vrow - F[r, :k] @ V[:k]
				V[k] = (vrow * ipiv) % p
			if ipiv != 1.0:
				M[r, c:c1] = (M[r, c:c1] * ipiv) % p
			f = M[r + 1 :, c].copy()
			F[r + 1 :, k] = f
			if c1 > c + 1:
				M[r + 1 :, c + 1 : c1] = (
					M[r + 1 :, c + 1 : c1] - f[:, None] * M[r, c + 1 : c1][None, :]
				) % p
			M[r + 1 :, c] = 0.0
			k += 1
			r += 1
		if k and cols > c1:
			M[r0:, c1:] = (M[r0:, c1:] - F[r0:, :k] @ V[:k]) % p
		c0 = c1
	return r


def rank(field: Field, A) -> int:
	"""Rank by forward elimination; this is the hot path for the Phi test."""
	ops = _ops(field)
	M = ops.to_work(_as_array(A))
	if isinstance(ops, _PrimeOps):
		return _rank_prime_blocked(M, field.p)
	M = M.copy()
	rows, cols = M.shape
	r = 0
	ADD, MUL, NEG, INV = ops.ADD, ops.MUL, ops.NEG, ops.INV
	for c in range(cols):
		if r == rows:
			break
		nz = np.nonzero(M[r:, c])[0]
		if len(nz) == 0:
			continue
		pr = r + int(nz[0])
		if pr != r:
			M[[r, pr]] = M[[pr, r]]
		piv = int(M[r, c])
		if piv != 1:
			M[r, c:] = MUL[INV[piv], M[r, c:]]
		below = M[r + 1 :, c:]
		if below.shape[0]:
			prod = MUL[NEG[below[:, 0]][:, None], M[r, c:][None, :]]
			below[...] = ADD[below, prod]
		r += 1
	return r


def kernel(field: Field, A) -> np.ndarray:
	"""Rows form a basis of the right null space {x : A x = 0}."""
	A = _as_array(A)
	R, pivots = rref(field, A)
	cols = A.shape[1]
	free = [c for c in range(cols) if c not in pivots]
	out = zeros((len(free), cols))
	fobj = field
	for i, fc in enumerate(free):
		out[i, fc] = 1
		for r, pc in enumerate(pivots):
			out[i, pc] = fobj.neg(int(R[r, fc]))
	return out


def solve(field: Field, A, b):
	"""One solution of A x = b, or None."""
	A = _as_array(A)
	b = np.asarray(b)
	aug = np.concatenate([A, b[:, None]], axis=1)
	R, pivots = rref(field, aug)
	if A.shape[1] in pivots:
		return None
	x = zeros(A.shape[1])
	for r, pc in enumerate(pivots):
		x[pc] = R[r, A.shape[1]]
	return x


def inverse(field: Field, A):
	"""Matrix inverse, or None when singular."""
	A = _as_array(A)
	n = A.shape[0]
	if A.shape[1] != n:
		raise ValueError("inverse of a non-square matrix")
	aug = np.concatenate([A, eye(n)], axis=1)
	R, pivots = rref(field, aug)
	if pivots[:n] != list(range(n)) or len(pivots) < n:
		return None
	return R[:, n:]


def is_invertible(field: Field, A) -> bool:
	A = _as_array(A)
	return A.shape[0] == A.shape[1] and rank(field, A) == A.shape[0]


class Echelon:
	"""Incremental row span with optional expression tracking.

	Vectors are code rows.  With track=True each stored echelon row also
	carries its expression in terms of the vectors passed to add(), so
	express() can rewrite any member of the span in those generators.
	"""

	def __init__(self, field: Field, width: int, track: bool = False):
		self.field = field
		self.width = width
		self.track = track
		self.rows: list[np.ndarray] = []
		self.pivots: list[int] = []
		self.exprs: list[dict[int, int]] = []
		self.n_gens = 0

	@property
	def dim(self) -> int:
		return len(self.rows)

	def _reduce(self, v):
		f = self.field
		v = np.asarray(v, dtype=np.int32).copy()
		expr: dict[int, int] = {}
		for row, pc, rex in zip(self.rows, self.pivots, self.exprs if self.track else [None] * len(self.rows)):
			c = int(v[pc])
			if c == 0:
				continue
			v = sub(f, v[None, :], scale(f, c, row[None, :]))[0]
			if self.track:
				for g, coef in rex.items():
					expr[g] = f.sub(expr.get(g, 0), f.mul(c, coef))
		return v, expr

	def add(self, v) -> bool:
		"""Insert v into the span; returns True when the dimension grew."""
		f = self.field
		gen_index = self.n_gens
		self.n_gens += 1
		vred, expr = self._reduce(v)
		nz = np.nonzero(vred)[0]
		if len(nz) == 0:
			return False
		pc = int(nz[0])
		inv = f.inv(int(vred[pc]))
		vred = scale(f, inv, vred[None, :])[0]
		if self.track:
			expr = {g: f.mul(inv, c) for g, c in expr.items()}
			expr[gen_index] = inv
		# re-reduce existing rows by the new one for a clean rref
		for i, row in enumerate(self.rows):
			c = int(row[pc])
			if c:
				self.rows[i] = sub(f, row[None, :], scale(f, c, vred[None, :]))[0]
				if self.track:
					for g, coef in expr.items():
						self.exprs[i][g] = f.sub(self.exprs[i].get(g, 0), f.mul(c, coef))
		pos = 0
		while pos < len(self.pivots) and self.pivots[pos] < pc:
			pos += 1
		self.rows.insert(pos, vred)
		self.pivots.insert(pos, pc)
		self.exprs.insert(pos, expr if self.track else {})
		return True

	def contains(self, v) -> bool:
		vred, _ = self._reduce(v)
		return not vred.any()

	def express(self, v):
		"""Coefficients over the added generators, or None if outside."""
		if not self.track:
			raise ValueError("Echelon built without tracking")
		vred, expr = self._reduce(v)
		if vred.any():
			return None
		out = zeros(self.n_gens)
		f = self.field
		for g, c in expr.items():
			out[g] = f.neg(c)
		return out

	def basis_matrix(self) -> np.ndarray:
		if not self.rows:
			return zeros((0, self.width))
		return np.stack(self.rows)


def minpoly_vec(field: Field, mul, unit_vec, x_vec, maxdeg: int):
	"""Minimal polynomial (codes, constant first, monic) of x in an algebra
	given by a vector multiplication callback."""
	ech = Echelon(field, len(unit_vec), track=True)
	powers = [np.asarray(unit_vec, dtype=np.int32)]
	ech.add(powers[0])
	cur = np.asarray(x_vec, dtype=np.int32)
	for _ in range(maxdeg):
		coeffs = ech.express(cur)
		if coeffs is not None:
			out = [field.neg(int(c)) for c in coeffs]
			out.append(1)
			return out
		ech.add(cur)
		powers.append(cur)
		cur = mul(cur, x_vec)
	coeffs = ech.express(cur)
	if coeffs is None:
		raise FieldError("minimal polynomial exceeds the requested degree bound")
	out = [field.neg(int(c)) for c in coeffs]
	out.append(1)
	return out
