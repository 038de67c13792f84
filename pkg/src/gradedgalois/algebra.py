"""Finite-dimensional associative F-algebras by structure constants, with
gradings by finite abelian groups, semilinear group actions, and the
construction kit built on them (twisted group algebras, smash products,
corners, cocycle twists, loop algebras, scalar pullbacks).

Vectors and matrices hold scalar codes (0 = zero, 1 + dlog otherwise).
Associativity and the unit axioms are verified at construction up to
dimension 64; larger algebras are produced only by constructions whose
output is associative by design, and the skip is deliberate.
"""

from __future__ import annotations

import random

import numpy as np

from . import linalg, polys
from .abgroup import AbGroup, Quotient, Subgroup, _group_coords, _group_elements, _group_gens
from .cochain import ActionSpec, Cocycle2
from .gf import Field, FieldElt, Tower, field_create, field_from_name

CHECK_CAP = 64


class AlgebraError(ValueError):
	pass


# ---------------------------------------------------------------------------
# the L-as-F-module bridge: power-basis coordinates for a tower


class _LModule:
	"""Coordinates of L = GF(p^(e*n)) over F = GF(p^e) in the power basis
	1, omega_L, ..., omega_L^(n-1)."""

	def __init__(self, tower: Tower):
		self.tower = tower
		F, L, n = tower.base, tower.top, tower.n
		self.n = n
		mL = L.m
		P = field_create(F.p, 1)
		self._prime = P
		# columns: prime-field coordinates of embed(omega_F^t) * omega_L^j
		M = linalg.zeros((mL, mL))
		c = 0
		for j in range(n):
			wj = L.from_dlog(j)
			for t in range(F.m):
				elt = tower.embed(F.from_dlog(t)) * wj
				for r, coeff in enumerate(elt.poly()):
					M[r, c] = P.from_int(coeff).code
				c += 1
		self._M = M
		self._Minv = linalg.inverse(P, M)
		if self._Minv is None:
			raise AlgebraError("power basis failed to span (internal)")
		self._cache: dict[int, np.ndarray] = {}

	def decompose(self, x: FieldElt) -> np.ndarray:
		"""F-codes (length n) of x over the power basis."""
		if x.code in self._cache:
			return self._cache[x.code].copy()
		P = self._prime
		F = self.tower.base
		rhs = linalg.zeros(self.tower.top.m)
		for r, coeff in enumerate(x.poly()):
			rhs[r] = P.from_int(coeff).code
		sol = linalg.matvec(P, self._Minv, rhs)
		out = linalg.zeros(self.n)
		e = F.m
		for j in range(self.n):
			c = F.zero()
			for t in range(e):
				if sol[j * e + t]:
					residue = P.poly_coeffs(int(sol[j * e + t]))[0]
					c = c + F.from_int(residue) * F.from_dlog(t)
			out[j] = c.code
		self._cache[x.code] = out.copy()
		return out

	def compose(self, coords) -> FieldElt:
		tower = self.tower
		L = tower.top
		out = L.zero()
		for j, c in enumerate(coords):
			if c:
				out = out + tower.embed(tower.base.from_code(int(c))) * L.from_dlog(j)
		return out

	def semilinear_matrix(self, c: FieldElt, frob_power: int) -> np.ndarray:
		"""Matrix (F-codes, power basis) of x -> c * phi^frob_power(x)."""
		tower = self.tower
		L = tower.top
		M = linalg.zeros((self.n, self.n))
		for j in range(self.n):
			M[:, j] = self.decompose(c * tower.frobenius(L.from_dlog(j), frob_power))
		return M


_LMODULES: dict[tuple, _LModule] = {}


def l_module(tower: Tower) -> _LModule:
	key = (tower.base.p, tower.base.m, tower.top.m)
	if key not in _LMODULES:
		_LMODULES[key] = _LModule(tower)
	return _LMODULES[key]


# ---------------------------------------------------------------------------
# plain algebras


class Algebra:
	"""b_i b_j = sum_k c_ijk b_k over F, by sparse structure constants."""

	def __init__(self, field: Field, dim: int, sc, unit, skip_checks: bool = False):
		self.field = field
		self.dim = dim
		entries = []
		for i, j, k, c in sc:
			c = int(c)
			if c == 0:
				continue
			if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim and c < field.q):
				raise AlgebraError(f"bad structure constant entry {(i, j, k, c)}")
			entries.append((int(i), int(j), int(k), c))
		self.sc = tuple(sorted(entries))
		self.unit = np.asarray(unit, dtype=np.int32).copy()
		if self.unit.shape != (dim,):
			raise AlgebraError("unit vector has the wrong length")
		self._T = None
		self._Tres = None
		self._scmap: dict = {}
		if dim <= CHECK_CAP:
			T = linalg.zeros((dim, dim, dim))
			for i, j, k, c in self.sc:
				if T[i, j, k]:
					raise AlgebraError(f"duplicate structure constant at {(i, j, k)}")
				T[i, j, k] = c
			self._T = T
			if field.m == 1:
				ops = linalg._ops(field)
				self._Tres = ops._dec[T].astype(np.int64)
		else:
			for i, j, k, c in self.sc:
				self._scmap.setdefault((i, j), []).append((k, c))
		if not skip_checks and dim <= CHECK_CAP:
			self._verify()

	def _verify(self):
		F = self.field
		n = self.dim
		ident = linalg.eye(n)
		lu = self.left_matrix(self.unit)
		ru = self.right_matrix(self.unit)
		if not np.array_equal(lu, ident) or not np.array_equal(ru, ident):
			raise AlgebraError("unit axioms fail")
		if self._Tres is not None:
			p = F.p
			Ls = np.ascontiguousarray(self._Tres.transpose(0, 2, 1)).astype(np.float64)
			for i in range(n):
				lhs = np.matmul(Ls[i], Ls) % p
				rhs = np.tensordot(self._Tres[i].astype(np.float64), Ls, axes=(1, 0)) % p
				if not np.array_equal(lhs, rhs):
					raise AlgebraError("associativity fails")
		else:
			for i in range(n):
				Li = self._T[i].T.copy()
				for j in range(n):
					lhs = linalg.matmul(F, Li, self._T[j].T)
					rhs = linalg.zeros((n, n))
					for l in range(n):
						c = int(self._T[i, j, l])
						if c:
							rhs = linalg.add(F, rhs, linalg.scale(F, c, self._T[l].T))
					if not np.array_equal(lhs, rhs):
						raise AlgebraError("associativity fails")

	def mul(self, x, y) -> np.ndarray:
		x = np.asarray(x, dtype=np.int32)
		y = np.asarray(y, dtype=np.int32)
		if self._Tres is not None:
			ops = linalg._ops(self.field)
			xr = ops._dec[x].astype(np.int64)
			yr = ops._dec[y].astype(np.int64)
			U = np.tensordot(xr, self._Tres, axes=(0, 0)) % self.field.p
			z = np.tensordot(yr, U, axes=(0, 0)) % self.field.p
			return ops._enc[z].astype(np.int32)
		F = self.field
		z = linalg.zeros(self.dim)
		if self._T is not None:
			for i in np.nonzero(x)[0]:
				w = linalg.scale(F, int(x[i]), y[None, :])[0]
				for j in np.nonzero(w)[0]:
					z = linalg.add(F, z, linalg.scale(F, int(w[j]), self._T[i, j][None, :])[0])
			return z
		for i in np.nonzero(x)[0]:
			for j in np.nonzero(y)[0]:
				c = F.mul(int(x[i]), int(y[j]))
				for k, v in self._scmap.get((int(i), int(j)), ()):
					z[k] = F.add(int(z[k]), F.mul(c, v))
		return z

	def left_matrix(self, x) -> np.ndarray:
		"""Matrix of y -> x y."""
		x = np.asarray(x, dtype=np.int32)
		F = self.field
		if self._Tres is not None:
			ops = linalg._ops(F)
			xr = ops._dec[x].astype(np.int64)
			M = np.tensordot(xr, self._Tres, axes=(0, 0)) % F.p
			return ops._enc[M.T].astype(np.int32)
		M = linalg.zeros((self.dim, self.dim))
		if self._T is not None:
			for i in np.nonzero(x)[0]:
				M = linalg.add(F, M, linalg.scale(F, int(x[i]), self._T[i].T))
			return M
		for i in np.nonzero(x)[0]:
			for (ii, j), lst in self._scmap.items():
				if ii != int(i):
					continue
				for k, v in lst:
					M[k, j] = F.add(int(M[k, j]), F.mul(int(x[i]), v))
		return M

	def right_matrix(self, x) -> np.ndarray:
		"""Matrix of y -> y x."""
		x = np.asarray(x, dtype=np.int32)
		F = self.field
		if self._Tres is not None:
			ops = linalg._ops(F)
			xr = ops._dec[x].astype(np.int64)
			M = np.tensordot(xr, self._Tres, axes=(0, 1)) % F.p
			return ops._enc[M.T].astype(np.int32)
		M = linalg.zeros((self.dim, self.dim))
		if self._T is not None:
			for j in np.nonzero(x)[0]:
				M = linalg.add(F, M, linalg.scale(F, int(x[j]), self._T[:, j, :].T))
			return M
		for j in np.nonzero(x)[0]:
			for (i, jj), lst in self._scmap.items():
				if jj != int(j):
					continue
				for k, v in lst:
					M[k, i] = F.add(int(M[k, i]), F.mul(int(x[j]), v))
		return M

	def is_invertible_elt(self, x) -> bool:
		return linalg.rank(self.field, self.left_matrix(x)) == self.dim

	def inverse_elt(self, x):
		"""Two-sided inverse of x, or None."""
		sol = linalg.solve(self.field, self.left_matrix(x), self.unit)
		if sol is None:
			return None
		if not np.array_equal(self.mul(sol, x), self.unit):
			return None
		return sol.astype(np.int32)

	def power(self, x, k: int) -> np.ndarray:
		out = self.unit.copy()
		cur = np.asarray(x, dtype=np.int32)
		while k:
			if k & 1:
				out = self.mul(out, cur)
			cur = self.mul(cur, cur)
			k >>= 1
		return out

	def minpoly(self, x) -> list[int]:
		return linalg.minpoly_vec(self.field, self.mul, self.unit, x, self.dim)

	def basis_vec(self, i: int) -> np.ndarray:
		v = linalg.zeros(self.dim)
		v[i] = 1
		return v

	def __eq__(self, other):
		return (
			isinstance(other, Algebra)
			and self.field is other.field
			and self.dim == other.dim
			and self.sc == other.sc
			and np.array_equal(self.unit, other.unit)
		)

	def __repr__(self):
		return f"Algebra(dim={self.dim} over {self.field.name()})"


def center(A: Algebra) -> np.ndarray:
	"""Rows form a basis of the center."""
	return centralizer(A, [A.basis_vec(i) for i in range(A.dim)])


def centralizer(A: Algebra, vectors) -> np.ndarray:
	blocks = []
	for v in vectors:
		blocks.append(linalg.sub(A.field, A.left_matrix(v), A.right_matrix(v)))
	if not blocks:
		return linalg.eye(A.dim)
	stacked = np.concatenate(blocks, axis=0)
	return linalg.kernel(A.field, stacked)


def subalgebra(A: Algebra, rows, unit_vec) -> tuple[Algebra, np.ndarray]:
	"""The algebra on the span of rows (must be multiplicatively closed and
	contain unit_vec); returns it with the echelonized basis matrix."""
	ech = linalg.Echelon(A.field, A.dim)
	for r in rows:
		ech.add(r)
	basis = ech.basis_matrix()
	m = basis.shape[0]
	pivots = list(ech.pivots)

	def coords(w):
		out = linalg.zeros(m)
		for r, pc in enumerate(pivots):
			out[r] = w[pc]
		resid = linalg.sub(A.field, w, linalg.matmul(A.field, out[None, :], basis)[0])
		if resid.any():
			raise AlgebraError("span is not multiplicatively closed")
		return out

	sc = []
	for r in range(m):
		for s in range(m):
			w = coords(A.mul(basis[r], basis[s]))
			for k in np.nonzero(w)[0]:
				sc.append((r, s, int(k), int(w[k])))
	unit = coords(np.asarray(unit_vec, dtype=np.int32))
	return Algebra(A.field, m, sc, unit), basis


def opposite(A: Algebra) -> Algebra:
	return Algebra(A.field, A.dim, [(j, i, k, c) for i, j, k, c in A.sc], A.unit)


def tensor(A: Algebra, B: Algebra) -> Algebra:
	if A.field is not B.field:
		raise AlgebraError("tensor factors must share the base field")
	F = A.field
	nB = B.dim
	sc = []
	for i, j, k, c1 in A.sc:
		for a, b, d, c2 in B.sc:
			sc.append((i * nB + a, j * nB + b, k * nB + d, F.mul(c1, c2)))
	unit = linalg.zeros(A.dim * nB)
	for i in np.nonzero(A.unit)[0]:
		for a in np.nonzero(B.unit)[0]:
			unit[i * nB + a] = F.mul(int(A.unit[i]), int(B.unit[a]))
	return Algebra(F, A.dim * nB, sc, unit)


# ---------------------------------------------------------------------------
# graded algebras


class GradedAlgebra:
	"""An Algebra with a degree in an abelian group for every basis index."""

	def __init__(self, alg: Algebra, grp: AbGroup, deg):
		self.alg = alg
		self.grp = grp
		self.deg = tuple(tuple(d) for d in deg)
		if len(self.deg) != alg.dim:
			raise AlgebraError("one degree per basis index required")
		for d in self.deg:
			if not grp.contains(d):
				raise AlgebraError(f"degree {d} is not in {grp.name()}")
		for i, j, k, c in alg.sc:
			if grp.add(self.deg[i], self.deg[j]) != self.deg[k]:
				raise AlgebraError("structure constants do not respect the grading")
		self._components: dict[tuple, list[int]] = {}
		for i, d in enumerate(self.deg):
			self._components.setdefault(d, []).append(i)
		e = grp.zero()
		for i in np.nonzero(alg.unit)[0]:
			if self.deg[int(i)] != e:
				raise AlgebraError("unit is not homogeneous of trivial degree")

	def support(self) -> list[tuple]:
		return sorted(self._components)

	def component(self, g) -> list[int]:
		return list(self._components.get(tuple(g), []))

	def project(self, x, g) -> np.ndarray:
		out = linalg.zeros(self.alg.dim)
		for i in self.component(g):
			out[i] = x[i]
		return out

	def homogeneous_degree(self, x):
		"""The degree of a homogeneous vector, or None for 0 / mixed."""
		degs = {self.deg[int(i)] for i in np.nonzero(np.asarray(x))[0]}
		if len(degs) != 1:
			return None
		return degs.pop()

	def __repr__(self):
		return f"GradedAlgebra(dim={self.alg.dim} over {self.alg.field.name()}, group {self.grp.name()})"


def opposite_graded(D: GradedAlgebra) -> GradedAlgebra:
	return GradedAlgebra(opposite(D.alg), D.grp, D.deg)


def tensor_graded(A: GradedAlgebra, B: GradedAlgebra) -> GradedAlgebra:
	if A.grp != B.grp:
		raise AlgebraError("graded tensor factors must share the grading group")
	T = tensor(A.alg, B.alg)
	deg = []
	for i in range(A.alg.dim):
		for a in range(B.alg.dim):
			deg.append(A.grp.add(A.deg[i], B.deg[a]))
	return GradedAlgebra(T, A.grp, deg)


def regrade(D: GradedAlgebra, grp: AbGroup, degmap) -> GradedAlgebra:
	"""Same algebra, degrees pushed through degmap into grp."""
	return GradedAlgebra(D.alg, grp, [degmap(d) for d in D.deg])


def cocycle_twist(D: GradedAlgebra, gamma: Cocycle2) -> GradedAlgebra:
	"""Structure constants rescaled by gamma(deg_i, deg_j)."""
	F = D.alg.field
	if gamma.field is not F:
		raise AlgebraError("twisting cocycle must take values in the base field")
	sc = []
	for i, j, k, c in D.alg.sc:
		sc.append((i, j, k, F.mul(c, gamma.value(D.deg[i], D.deg[j]).code)))
	# gamma need not be normalized; rescale the unit so it stays a unit
	ge = gamma.value(D.grp.zero(), D.grp.zero())
	unit = linalg.scale(F, ge.inv().code, D.alg.unit[None, :])[0]
	alg = Algebra(F, D.alg.dim, sc, unit)
	return GradedAlgebra(alg, D.grp, D.deg)


def is_graded_division(D: GradedAlgebra) -> bool:
	"""True iff D_e is a division algebra and every nonzero component is
	D_e u_g for an invertible u_g."""
	A = D.alg
	F = A.field
	e = D.grp.zero()
	comp_e = D.component(e)
	m = len(comp_e)
	if m == 0:
		return False
	# division check within the identity component
	if F.q ** m <= 6561:
		for codes in _nonzero_tuples(F.q, m):
			v = linalg.zeros(A.dim)
			for idx, c in zip(comp_e, codes):
				v[idx] = c
			sub = A.left_matrix(v)[np.ix_(comp_e, comp_e)]
			if linalg.rank(F, sub) != m:
				return False
	else:
		if not _field_certificate(D, comp_e):
			return False
	for g in D.support():
		if g == e:
			continue
		comp_g = D.component(g)
		if len(comp_g) != m:
			return False
		u = None
		for idx in comp_g:
			if A.is_invertible_elt(A.basis_vec(idx)):
				u = A.basis_vec(idx)
				break
		if u is None and F.q ** len(comp_g) <= 6561:
			for codes in _nonzero_tuples(F.q, len(comp_g)):
				v = linalg.zeros(A.dim)
				for idx, c in zip(comp_g, codes):
					v[idx] = c
				if A.is_invertible_elt(v):
					u = v
					break
		if u is None:
			return False
		ech = linalg.Echelon(F, A.dim)
		for idx in comp_e:
			ech.add(A.mul(A.basis_vec(idx), u))
		if ech.dim != m:
			return False
	return True


def _nonzero_tuples(q: int, m: int):
	stack = [()]
	while stack:
		t = stack.pop()
		if len(t) == m:
			if any(t):
				yield t
			continue
		for c in range(q - 1, -1, -1):
			stack.append(t + (c,))


def _field_certificate(D: GradedAlgebra, comp_e) -> bool:
	"""Certify that D_e is a (commutative) field: basis products commute and
	some element has an irreducible minimal polynomial of full degree."""
	A = D.alg
	F = A.field
	m = len(comp_e)
	for a in comp_e:
		for b in comp_e:
			va, vb = A.basis_vec(a), A.basis_vec(b)
			if not np.array_equal(A.mul(va, vb), A.mul(vb, va)):
				return False
	rng = random.Random(0)
	candidates = [A.basis_vec(i) for i in comp_e]
	for _ in range(16):
		v = linalg.zeros(A.dim)
		for i in comp_e:
			v[i] = rng.randrange(F.q)
		candidates.append(v)
	for x in candidates:
		mp = A.minpoly(x)
		fac = polys.squarefree_decomposition(F, mp)
		if any(k > 1 for _, k in fac):
			return False
		if len(mp) - 1 == m and polys.is_irreducible(F, mp):
			return True
	raise AlgebraError("cannot certify the identity component either way")


# ---------------------------------------------------------------------------
# group actions


class GAction:
	"""Matrices (one per generator of grp) acting on galg by algebra
	automorphisms; relations and automorphism axioms verified.  grp may be
	an AbGroup or a Subgroup of one."""

	def __init__(self, galg: Algebra, grp, mats):
		self.galg = galg
		self.grp = grp
		self.mats = [np.asarray(M, dtype=np.int32) for M in mats]
		gens = _group_gens(grp)
		if len(self.mats) != len(gens):
			raise AlgebraError("one matrix per group generator required")
		n = galg.dim
		F = galg.field
		ident = linalg.eye(n)
		for M, (_, d) in zip(self.mats, gens):
			if M.shape != (n, n):
				raise AlgebraError("action matrix has the wrong shape")
			P = ident
			for _ in range(d):
				P = linalg.matmul(F, P, M)
			if not np.array_equal(P, ident):
				raise AlgebraError("generator matrix order does not divide the generator order")
			if not np.array_equal(linalg.matvec(F, M, galg.unit), galg.unit):
				raise AlgebraError("action does not fix the unit")
			self._check_automorphism(M)
		for a in range(len(self.mats)):
			for b in range(a + 1, len(self.mats)):
				AB = linalg.matmul(F, self.mats[a], self.mats[b])
				BA = linalg.matmul(F, self.mats[b], self.mats[a])
				if not np.array_equal(AB, BA):
					raise AlgebraError("generator matrices do not commute")

	def _check_automorphism(self, M):
		A = self.galg
		F = A.field
		n = A.dim
		if A._Tres is not None:
			p = F.p
			ops = linalg._ops(F)
			Mr = ops._dec[M].astype(np.int64)
			lhs = np.tensordot(A._Tres, Mr, axes=(2, 1)) % p
			tmp = np.tensordot(Mr, A._Tres, axes=(0, 0)) % p
			rhs = np.einsum("ibk,bj->ijk", tmp, Mr) % p
			if not np.array_equal(lhs, rhs):
				raise AlgebraError("matrix is not an algebra automorphism")
			return
		for i in range(n):
			vi = linalg.matvec(F, M, A.basis_vec(i))
			for j in range(n):
				vj = linalg.matvec(F, M, A.basis_vec(j))
				lhs = linalg.matvec(F, M, A.mul(A.basis_vec(i), A.basis_vec(j)))
				if not np.array_equal(lhs, A.mul(vi, vj)):
					raise AlgebraError("matrix is not an algebra automorphism")


class GAlgebra:
	"""An algebra together with a G-action."""

	def __init__(self, action: GAction):
		self.action = action
		self.alg = action.galg
		self.grp = action.grp
		self._cache: dict[tuple, np.ndarray] = {}

	def act_matrix(self, g) -> np.ndarray:
		g = tuple(g)
		if g in self._cache:
			return self._cache[g]
		F = self.alg.field
		out = linalg.eye(self.alg.dim)
		coords = _group_coords(self.grp, g)
		for M, c in zip(self.action.mats, coords):
			for _ in range(c):
				out = linalg.matmul(F, out, M)
		self._cache[g] = out
		return out

	def act(self, g, x) -> np.ndarray:
		return linalg.matvec(self.alg.field, self.act_matrix(g), np.asarray(x, dtype=np.int32))

	def fixed_basis(self) -> np.ndarray:
		F = self.alg.field
		blocks = []
		ident = linalg.eye(self.alg.dim)
		for M in self.action.mats:
			blocks.append(linalg.sub(F, M, ident))
		if not blocks:
			return ident
		return linalg.kernel(F, np.concatenate(blocks, axis=0))

	def is_faithful(self) -> bool:
		elems = _group_elements(self.grp)
		seen = set()
		for g in elems:
			seen.add(np.ascontiguousarray(self.act_matrix(g), dtype=np.int64).tobytes())
		return len(seen) == len(elems)

	def __repr__(self):
		return f"GAlgebra(dim={self.alg.dim} over {self.alg.field.name()})"


def opposite_galgebra(C: GAlgebra) -> GAlgebra:
	return GAlgebra(GAction(opposite(C.alg), C.grp, C.action.mats))


# ---------------------------------------------------------------------------
# construction kit


def twisted_group_algebra(tower: Tower, K: Subgroup, tau: Cocycle2) -> GradedAlgebra:
	"""L^tau[K]: basis omega_L^i X_k, K-graded, X's commuting with L."""
	if tau.field is not tower.top:
		raise AlgebraError("cocycle values must lie in the top field of the tower")
	if set(_group_elements(tau.domain)) != set(K.elems):
		raise AlgebraError("cocycle domain differs from K")
	F, L = tower.base, tower.top
	LM = l_module(tower)
	n = tower.n
	elems = sorted(K.elems)
	pos = {k: idx for idx, k in enumerate(elems)}
	dim = n * len(elems)
	sc = []
	for k1 in elems:
		for k2 in elems:
			t = tau.value(k1, k2)
			kk = K.parent.add(k1, k2)
			for i1 in range(n):
				w1 = L.from_dlog(i1)
				for i2 in range(n):
					w2 = L.from_dlog(i2)
					coords = LM.decompose(w1 * w2 * t)
					for j in np.nonzero(coords)[0]:
						sc.append((
							pos[k1] * n + i1,
							pos[k2] * n + i2,
							pos[kk] * n + int(j),
							int(coords[j]),
						))
	unit = linalg.zeros(dim)
	u0 = LM.decompose(tau.value(K.parent.zero(), K.parent.zero()).inv())
	unit[pos[K.parent.zero()] * n : pos[K.parent.zero()] * n + n] = u0
	alg = Algebra(F, dim, sc, unit)
	deg = []
	for k in elems:
		deg.extend([k] * n)
	return GradedAlgebra(alg, K.parent, deg)


def field_galgebra(action: ActionSpec) -> GAlgebra:
	"""L as a G-algebra over F, G acting through theta by Frobenius powers."""
	tower = action.tower
	LM = l_module(tower)
	n = tower.n
	L = tower.top
	sc = []
	for i1 in range(n):
		w1 = L.from_dlog(i1)
		for i2 in range(n):
			w2 = L.from_dlog(i2)
			coords = LM.decompose(w1 * w2)
			for j in np.nonzero(coords)[0]:
				sc.append((i1, i2, int(j), int(coords[j])))
	unit = linalg.zeros(n)
	unit[0] = 1
	alg = Algebra(tower.base, n, sc, unit)
	mats = []
	for g, _ in action.G.generators():
		mats.append(LM.semilinear_matrix(L.one(), action.theta[g]))
	return GAlgebra(GAction(alg, action.G, mats))


def matrix_algebra(F: Field, r: int) -> Algebra:
	sc = []
	for a in range(r):
		for b in range(r):
			for d in range(r):
				sc.append((a * r + b, b * r + d, a * r + d, 1))
	unit = linalg.zeros(r * r)
	for a in range(r):
		unit[a * r + a] = 1
	return Algebra(F, r * r, sc, unit)


def smash_group(C: GAlgebra) -> GradedAlgebra:
	"""C # FG with (a g)(b h) = a (g.b) (gh), graded by the g-slot."""
	G = C.grp
	A = C.alg
	F = A.field
	n = A.dim
	gl = sorted(G.elements())
	pos = {g: i for i, g in enumerate(gl)}
	dim = n * len(gl)
	sc = []
	for g in gl:
		Mg = C.act_matrix(g)
		for h in gl:
			gh = G.add(g, h)
			for j in range(n):
				v = Mg[:, j]
				for i in range(n):
					w = A.mul(A.basis_vec(i), v)
					for k in np.nonzero(w)[0]:
						sc.append((
							pos[g] * n + i,
							pos[h] * n + j,
							pos[gh] * n + int(k),
							int(w[k]),
						))
	unit = linalg.zeros(dim)
	unit[pos[G.zero()] * n : pos[G.zero()] * n + n] = A.unit
	alg = Algebra(F, dim, sc, unit)
	deg = []
	for g in gl:
		deg.extend([g] * n)
	return GradedAlgebra(alg, G, deg)


def smash_dual(D: GradedAlgebra) -> GAlgebra:
	"""D # (FG)^* on basis a eps_g, with (a eps_g)(b eps_h) = (a b_{g-h}) eps_h
	and the translation G-action on the eps-slot."""
	G = D.grp
	A = D.alg
	F = A.field
	n = A.dim
	gl = sorted(G.elements())
	pos = {g: i for i, g in enumerate(gl)}
	dim = n * len(gl)
	sc = []
	for g in gl:
		for h in gl:
			d = G.sub(g, h)
			for j in range(n):
				if D.deg[j] != d:
					continue
				for i in range(n):
					w = A.mul(A.basis_vec(i), A.basis_vec(j))
					for k in np.nonzero(w)[0]:
						sc.append((
							pos[g] * n + i,
							pos[h] * n + j,
							pos[h] * n + int(k),
							int(w[k]),
						))
	unit = linalg.zeros(dim)
	for g in gl:
		unit[pos[g] * n : pos[g] * n + n] = A.unit
	alg = Algebra(F, dim, sc, unit)
	mats = []
	for gen, _ in G.generators():
		M = linalg.zeros((dim, dim))
		for h in gl:
			dest = pos[G.sub(h, gen)]
			for i in range(n):
				M[dest * n + i, pos[h] * n + i] = 1
		mats.append(M)
	return GAlgebra(GAction(alg, G, mats))


def smash_dual_idempotents(D: GradedAlgebra) -> list[np.ndarray]:
	"""The eps_g images inside smash_dual(D), in sorted group order."""
	G = D.grp
	n = D.alg.dim
	gl = sorted(G.elements())
	out = []
	for i, _ in enumerate(gl):
		v = linalg.zeros(n * len(gl))
		v[i * n : (i + 1) * n] = D.alg.unit
		out.append(v)
	return out


def embed_in_smash_dual(D: GradedAlgebra, x) -> np.ndarray:
	"""a -> sum_g a eps_g."""
	G = D.grp
	n = D.alg.dim
	count = G.size
	out = linalg.zeros(n * count)
	for i in range(count):
		out[i * n : (i + 1) * n] = x
	return out


def gamma_of(D: GradedAlgebra) -> tuple[GAlgebra, GAlgebra, np.ndarray]:
	"""Gamma(D) = Cent_{D#(FG)^*}(D) with the inherited action; returns
	(Gamma as GAlgebra, the ambient smash GAlgebra, the basis matrix of
	Gamma inside it)."""
	S = smash_dual(D)
	images = [embed_in_smash_dual(D, D.alg.basis_vec(i)) for i in range(D.alg.dim)]
	rows = centralizer(S.alg, images)
	gam, basis = subalgebra(S.alg, rows, S.alg.unit)
	F = gam.field
	ech = linalg.Echelon(F, S.alg.dim)
	for r in basis:
		ech.add(r)
	mats = []
	for M in S.action.mats:
		cols = []
		for r in range(basis.shape[0]):
			img = linalg.matvec(F, M, basis[r])
			co = linalg.zeros(basis.shape[0])
			for idx, pc in enumerate(ech.pivots):
				co[idx] = img[pc]
			resid = linalg.sub(F, img, linalg.matmul(F, co[None, :], ech.basis_matrix())[0])
			if resid.any():
				raise AlgebraError("centralizer is not action-stable (internal)")
			cols.append(co)
		mats.append(np.stack(cols, axis=1))
	return GAlgebra(GAction(gam, D.grp, mats)), S, basis


def split_primitive_idempotent(A: Algebra, seed: int = 0) -> np.ndarray:
	"""A primitive idempotent of a semisimple algebra, by minimal-polynomial
	splitting and recursion; deterministic for a fixed seed."""
	rng = random.Random(seed)
	F = A.field

	def rec(basis: np.ndarray, unit: np.ndarray) -> np.ndarray:
		m = basis.shape[0]
		if m == 1:
			return unit
		candidates = [basis[i] for i in range(m)]
		for _ in range(24):
			co = [rng.randrange(F.q) for _ in range(m)]
			v = linalg.zeros(A.dim)
			for c, row in zip(co, basis):
				if c:
					v = linalg.add(F, v, linalg.scale(F, c, row[None, :])[0])
			candidates.append(v)
		nil_seen = False
		for x in candidates:
			if not np.asarray(x).any():
				continue
			mp = linalg.minpoly_vec(F, A.mul, unit, x, m)
			fac = polys.factor(F, mp)
			if len(fac) == 1 and fac[0][1] > 1 and polys.pdeg(fac[0][0]) == 1 and fac[0][0][0] == 0:
				nil_seen = True
				continue
			if any(k > 1 for _, k in fac):
				continue
			if len(fac) < 2:
				continue
			f1 = fac[0][0]
			rest = [1]
			for g, _ in fac[1:]:
				rest = polys.pmul(F, rest, g)
			_, s, _ = polys.pxgcd(F, rest, f1)
			epoly = polys.pmod(F, polys.pmul(F, rest, s), mp)
			E1 = _eval_poly_at(A, epoly, x, unit)
			if not np.array_equal(A.mul(E1, E1), E1) or not E1.any():
				raise AlgebraError("idempotent split failed (internal)")
			if np.array_equal(E1, unit):
				continue
			newrows = linalg.Echelon(F, A.dim)
			for row in basis:
				newrows.add(A.mul(A.mul(E1, row), E1))
			return rec(newrows.basis_matrix(), E1)
		if nil_seen:
			raise AlgebraError("nilpotent obstruction: input is not semisimple")
		if F.q ** m <= 20000:
			for codes in _nonzero_tuples(F.q, m):
				v = linalg.zeros(A.dim)
				for c, row in zip(codes, basis):
					if c:
						v = linalg.add(F, v, linalg.scale(F, c, row[None, :])[0])
				if np.array_equal(A.mul(v, v), v) and v.any() and not np.array_equal(v, unit):
					raise AlgebraError("corner still splits; candidate scan was incomplete")
		return unit

	return rec(linalg.eye(A.dim), A.unit)


def _eval_poly_at(A: Algebra, poly_codes, x, unit) -> np.ndarray:
	out = linalg.zeros(A.dim)
	for c in reversed(poly_codes):
		out = A.mul(out, x)
		if c:
			out = linalg.add(A.field, out, linalg.scale(A.field, int(c), unit[None, :])[0])
	return out


def corner(E, D: GradedAlgebra) -> GradedAlgebra:
	"""E D E with unit E, graded by E D_g E."""
	A = D.alg
	F = A.field
	E = np.asarray(E, dtype=np.int32)
	if not np.array_equal(A.mul(E, E), E) or not E.any():
		raise AlgebraError("E must be a nonzero idempotent")
	if D.homogeneous_degree(E) != D.grp.zero():
		raise AlgebraError("E must be homogeneous of trivial degree")
	rows = []
	degs = []
	for g in D.support():
		ech = linalg.Echelon(F, A.dim)
		for i in D.component(g):
			ech.add(A.mul(A.mul(E, A.basis_vec(i)), E))
		for r in ech.rows:
			rows.append(r)
			degs.append(g)
	sub, basis = subalgebra(A, rows, E)
	# subalgebra re-echelonizes; per-component pivots are disjoint, so the
	# order is preserved and degs still line up
	if basis.shape[0] != len(rows):
		raise AlgebraError("corner basis collapsed (internal)")
	order = []
	for r in rows:
		nz = int(np.nonzero(r)[0][0])
		order.append(nz)
	perm = sorted(range(len(rows)), key=lambda t: order[t])
	deg_sorted = [degs[t] for t in perm]
	return GradedAlgebra(sub, D.grp, deg_sorted)


def loop_twisted(Q: Quotient, gamma: Cocycle2, Dbar: GradedAlgebra) -> GradedAlgebra:
	"""sum_t Dbar_{pi(t)} x t with (a x t)(b x t') = gamma(t,t') ab x tt'."""
	G = Q.parent
	if Dbar.grp != Q.group:
		raise AlgebraError("Dbar must be graded by the quotient group")
	Z = center(Dbar.alg)
	if Z.shape[0] != 1:
		raise AlgebraError("loop input must be central (center of dimension 1)")
	F = Dbar.alg.field
	if gamma.field is not F:
		raise AlgebraError("twist values must lie in the base field")
	gl = sorted(G.elements())
	blocks = {}
	offset = 0
	deg = []
	for t in gl:
		comp = Dbar.component(Q.proj(t))
		blocks[t] = (offset, comp)
		offset += len(comp)
		deg.extend([t] * len(comp))
	dim = offset
	sc = []
	for t1 in gl:
		off1, comp1 = blocks[t1]
		for t2 in gl:
			off2, comp2 = blocks[t2]
			tt = G.add(t1, t2)
			offt, compt = blocks[tt]
			gcode = gamma.value(t1, t2).code
			for a, ia in enumerate(comp1):
				for b, ib in enumerate(comp2):
					w = Dbar.alg.mul(Dbar.alg.basis_vec(ia), Dbar.alg.basis_vec(ib))
					for k in np.nonzero(w)[0]:
						c = F.mul(int(w[k]), gcode)
						sc.append((off1 + a, off2 + b, offt + compt.index(int(k)), c))
	unit = linalg.zeros(dim)
	offe, compe = blocks[G.zero()]
	ge = gamma.value(G.zero(), G.zero())
	uscaled = linalg.scale(F, ge.inv().code, Dbar.alg.unit[None, :])[0]
	for a, ia in enumerate(compe):
		unit[offe + a] = uscaled[ia]
	alg = Algebra(F, dim, sc, unit)
	return GradedAlgebra(alg, G, deg)


def pull_scalars(A: Algebra, j: int) -> Algebra:
	"""A^psi for psi = (x -> x^(p^j)): structure constants through psi^{-1}."""
	F = A.field
	lut = _frobenius_lut(F, j)
	sc = [(i, jj, k, int(lut[c])) for i, jj, k, c in A.sc]
	unit = lut[A.unit]
	return Algebra(F, A.dim, sc, unit)


def pull_scalars_graded(D: GradedAlgebra, j: int) -> GradedAlgebra:
	return GradedAlgebra(pull_scalars(D.alg, j), D.grp, D.deg)


def _frobenius_lut(F: Field, j: int) -> np.ndarray:
	e = F.m
	shift = pow(F.p, (e - (j % e)) % e, F.order) if F.order > 1 else 1
	lut = np.zeros(F.q, dtype=np.int32)
	for c in range(1, F.q):
		lut[c] = 1 + ((c - 1) * shift) % F.order
	return lut


# ---------------------------------------------------------------------------
# serialization


def algebra_to_json(A: Algebra, graded: GradedAlgebra | None = None, galg: GAlgebra | None = None) -> dict:
	out = {
		"field": A.field.name(),
		"dim": A.dim,
		"unit": [int(c) for c in A.unit],
		"sc": [[i, j, k, c] for i, j, k, c in A.sc],
	}
	if graded is not None:
		out["grading"] = {
			"group": {"orders": list(graded.grp.orders)},
			"deg": [list(d) for d in graded.deg],
		}
	if galg is not None:
		out["action"] = {
			"group": {"orders": list(galg.grp.orders)},
			"gens": [[[int(c) for c in row] for row in M] for M in galg.action.mats],
		}
	return out


def algebra_from_json(obj: dict):
	"""Returns (Algebra, GradedAlgebra or None, GAlgebra or None)."""
	F = field_from_name(obj["field"])
	A = Algebra(F, int(obj["dim"]), [tuple(e) for e in obj["sc"]], obj["unit"])
	graded = None
	galg = None
	if "grading" in obj:
		grp = AbGroup(tuple(obj["grading"]["group"]["orders"]))
		graded = GradedAlgebra(A, grp, [tuple(d) for d in obj["grading"]["deg"]])
	if "action" in obj:
		grp = AbGroup(tuple(obj["action"]["group"]["orders"]))
		mats = [np.asarray(M, dtype=np.int32) for M in obj["action"]["gens"]]
		galg = GAlgebra(GAction(A, grp, mats))
	return A, graded, galg
