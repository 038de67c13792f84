"""Construction and enumeration of the classified objects over finite fields.

Two families are modeled.  Simple G-Galois extensions are parameterized by
(K, C, beta, s): a hyperbolic kernel K with exp(K) dividing |F^x|, a coset C
generating the cyclic quotient G/K, a nondegenerate alternating bicharacter
beta on K, and a torsor vector s with 0 <= s_i < o(a_i).  Graded-division
algebras are parameterized by quintuples (T, H, C, O, chi): the support T,
a central-support subgroup H, a coset C of K in T generating T/K (with
H <= K <= T and K/H hyperbolic), a Frobenius-orbit representative bicharacter
O on K/H, and a character chi of K_[|F^x|] encoding the symmetric 2-cocycle
class of the loop twist.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .abgroup import (
	AbGroup,
	Bicharacter,
	Character,
	Coset,
	Subgroup,
	bichar_orbit_reps,
	characters,
	cosets,
	enumerate_subgroups,
	is_hyperbolic,
	nondegenerate_alternating_bicharacters,
	quotient,
	subgroup_from_generators,
)
from .algebra import (
	GAction,
	GAlgebra,
	GradedAlgebra,
	corner,
	l_module,
	loop_twisted,
	opposite_galgebra,
	pull_scalars_graded,
	regrade,
	smash_group,
	split_primitive_idempotent,
	twisted_group_algebra,
)
from .cochain import (
	ActionSpec,
	Cocycle2,
	canonical_character_extension,
	extend_character,
	symmetric_cocycle_from_character,
	torsion_subgroup_of,
)
from .gf import SIZE_CAP, Field, field_create, tower_create

GROUP_CAP_GALOIS = 64
GROUP_CAP_GDR = 32
ISO_SCAN_CAP = 6561


class ClassifyError(ValueError):
	pass


# ---------------------------------------------------------------------------
# parameter records


@dataclass
class GaloisParams:
	"""One isomorphism class of simple G-Galois extensions."""

	F: Field
	G: AbGroup
	K: Subgroup
	C: Coset
	beta: Bicharacter
	s: tuple

	def dim(self) -> int:
		return self.G.size

	def key(self) -> tuple:
		return (
			self.F.name(),
			self.G.orders,
			tuple(sorted(self.K.elems)),
			self.C.rep,
			self.beta.exponent_matrix(),
			tuple(self.s),
		)

	def to_json(self) -> dict:
		return {
			"kind": "galois",
			"field": self.F.name(),
			"group": list(self.G.orders),
			"K_gens": [list(g) for g in self.K.gens],
			"coset": list(self.C.rep),
			"beta_codes": [list(r) for r in self.beta.exponent_matrix()],
			"s": list(self.s),
			"dim": self.dim(),
		}


@dataclass
class GdrParams:
	"""One quintuple (T, H, C, O, chi) naming a graded-division algebra."""

	F: Field
	G: AbGroup
	T: Subgroup
	H: Subgroup
	C: Coset
	O: Bicharacter
	chi: Character

	@property
	def K(self) -> Subgroup:
		return self.C.subgroup

	def dim(self) -> int:
		return self.T.size * (self.T.size // self.K.size)

	def chi_dlogs(self) -> tuple:
		return tuple(v.dlog for v in self.chi.values)

	def key(self) -> tuple:
		return (
			self.F.name(),
			self.G.orders,
			tuple(sorted(self.T.elems)),
			tuple(sorted(self.H.elems)),
			tuple(sorted(self.K.elems)),
			self.C.rep,
			self.O.exponent_matrix(),
			self.chi_dlogs(),
		)

	def to_json(self) -> dict:
		return {
			"kind": "gdr",
			"field": self.F.name(),
			"group": list(self.G.orders),
			"T_gens": [list(g) for g in self.T.gens],
			"H_gens": [list(g) for g in self.H.gens],
			"K_gens": [list(g) for g in self.K.gens],
			"coset": list(self.C.rep),
			"beta_bar_codes": [list(r) for r in self.O.exponent_matrix()],
			"chi_dlogs": list(self.chi_dlogs()),
			"dim": self.dim(),
		}


# ---------------------------------------------------------------------------
# the pairing exponent and the normal-form model


def jcb(C: Coset, beta: Bicharacter, k) -> int:
	"""The exponent j with beta(t0(C)^n, k) = omega_F^j, 0 <= j < |F^x|;
	t0(C) is the canonical (least) coset representative and n = [G:K]."""
	K = C.subgroup
	G = K.parent
	n = G.size // K.size
	v = beta.value(G.smul(n, C.rep), k)
	return v.dlog if v.code else 0


def _normal_form_galgebra(spec: ActionSpec, beta: Bicharacter, s) -> tuple[GAlgebra, GradedAlgebra]:
	"""The crossed product L^tau[K] with the G-action g.X_i = f_{a_i}(g) X_i.

	tau is the normal-form 2-cocycle of the ordered monomial basis: reordering
	contributes beta factors, wraparound in each cyclic slot contributes
	mu_i = omega_L^(o_i j_i / |F^x|) omega_F^(s_i).
	"""
	tower = spec.tower
	F, L = tower.base, tower.top
	G, K = spec.G, spec.K
	kg = list(zip(K.gens, K.gen_orders))
	m = len(kg)
	nf = F.order
	idx = max(L.order, 1) // max(nf, 1)
	t0coset = Coset(K, spec.t0)
	mus = []
	for (a, d), si in zip(kg, s):
		j = jcb(t0coset, beta, a)
		if (d * j) % max(nf, 1):
			raise ClassifyError("pairing exponent is incompatible with the generator order")
		y = (d * j) // max(nf, 1) + idx * si
		mus.append(L.from_dlog(y % max(L.order, 1)))
	emb = {}
	for a, _ in kg:
		for b, _ in kg:
			emb[(a, b)] = tower.embed(beta.value(a, b))
	table = {}
	for k1 in K.elems:
		c1 = K.coords(k1)
		for k2 in K.elems:
			c2 = K.coords(k2)
			val = L.one()
			for jj in range(m):
				for ii in range(jj):
					e = c1[jj] * c2[ii]
					if e:
						val = val * emb[(kg[jj][0], kg[ii][0])] ** e
			for ii in range(m):
				if (c1[ii] + c2[ii]) // kg[ii][1]:
					val = val * mus[ii]
			table[(k1, k2)] = val
	tau = Cocycle2(K, L, table)
	D = twisted_group_algebra(tower, K, tau)
	fs = []
	for a, _ in kg:
		lam = Character(K, F, [beta.value(g2, a) for g2, _ in kg])
		fs.append(extend_character(spec, lam))
	lm = l_module(tower)
	n = tower.n
	pos = {k: i for i, k in enumerate(sorted(K.elems))}
	dim = D.alg.dim
	mats = []
	for g, _ in G.generators():
		M = linalg.zeros((dim, dim))
		for k in K.elems:
			c = K.coords(k)
			fk = L.one()
			for f, e in zip(fs, c):
				if e:
					fk = fk * f.value(g) ** e
			block = lm.semilinear_matrix(fk, spec.theta[g])
			o = pos[k] * n
			M[o : o + n, o : o + n] = block
		mats.append(M)
	return GAlgebra(GAction(D.alg, G, mats)), D


def _validated_bichar(K: Subgroup, F: Field, beta: Bicharacter) -> None:
	if len(K.gens) == 0:
		return
	if beta.group is not K and beta.group != K:
		raise ClassifyError("bicharacter is not defined on K")
	if not beta.is_alternating():
		raise ClassifyError("bicharacter must be alternating")
	if not beta.is_nondegenerate():
		raise ClassifyError("bicharacter must be nondegenerate")
	if F.order % K.exponent:
		raise ClassifyError("exp(K) must divide |F^x|")


def construct_simple_galois(params: GaloisParams) -> GAlgebra:
	"""The model C(s_1, ..., s_m) as a G-algebra over F: the crossed product
	of L = GF(p^(en)) by K with relations X_i X_j = beta(a_i, a_j) X_j X_i
	and X_i^(o(a_i)) = omega_L^(o(a_i) j_i / |F^x|) omega_F^(s_i)."""
	F, G, K, C = params.F, params.G, params.K, params.C
	if not is_hyperbolic(K):
		raise ClassifyError("K must be of the form A x A")
	_validated_bichar(K, F, params.beta)
	kg = list(zip(K.gens, K.gen_orders))
	if len(params.s) != len(kg):
		raise ClassifyError("one torsor coordinate per generator of K required")
	for si, (_, d) in zip(params.s, kg):
		if not 0 <= si < d:
			raise ClassifyError(f"s must satisfy 0 <= s_i < {d}")
	n = G.size // K.size
	L = field_create(F.p, F.m * n)
	tower = tower_create(F, L)
	spec = ActionSpec.from_coset(tower, G, C)
	galg, _ = _normal_form_galgebra(spec, params.beta, params.s)
	return galg


def enumerate_simple_galois(F: Field, G: AbGroup, field_cap: int = SIZE_CAP) -> list[GaloisParams]:
	"""All classes of simple G-Galois extensions of F, one GaloisParams per
	class.  Kernels whose center field would exceed field_cap are skipped."""
	if G.size > GROUP_CAP_GALOIS:
		raise ClassifyError(f"|G| = {G.size} exceeds the cap {GROUP_CAP_GALOIS}")
	nf = F.order
	out = []
	for K in enumerate_subgroups(G):
		n = G.size // K.size
		if F.p ** (F.m * n) > field_cap:
			continue
		Q = quotient(G, K)
		if Q.group.size != n or Q.group.invariant_factors() not in ((), (n,)):
			continue
		if not is_hyperbolic(K):
			continue
		if K.exponent > 1 and nf % K.exponent:
			continue
		betas = nondegenerate_alternating_bicharacters(K, F)
		if not betas:
			continue
		gencosets = [cs for cs in cosets(G, K) if Q.group.order_of(Q.proj(cs.rep)) == n]
		ranges = [range(d) for d in K.gen_orders]
		for cs in gencosets:
			for beta in betas:
				for s in itertools.product(*ranges):
					out.append(GaloisParams(F, G, K, cs, beta, s))
	return out


# ---------------------------------------------------------------------------
# graded-division algebras


def _parent_elem(T: Subgroup, coords) -> tuple:
	G = T.parent
	acc = G.zero()
	for c, g in zip(coords, T.gens):
		acc = G.add(acc, G.smul(c, g))
	return acc


def _extend_to_torsion(parent: AbGroup, S: Subgroup, chi: Character, TN: Subgroup) -> Character:
	"""Extend a character S -> F^x to TN >= S; both groups have exponent
	dividing N = |F^x|, so an extension exists, and the dlog-division rule
	below picks a canonical one."""
	F = chi.target
	N = max(F.order, 1)
	val = {x: chi.value(x).dlog for x in S.elems}
	cur = set(S.elems)
	for g in TN.gens:
		if g in cur:
			continue
		dp = 1
		acc = g
		while acc not in cur:
			dp += 1
			acc = parent.add(acc, g)
		u = val[acc]
		if u % dp:
			raise ClassifyError("character extension failed (internal)")
		v = u // dp
		new = {}
		for a in range(dp):
			ag = parent.smul(a, g)
			for x in cur:
				new[parent.add(ag, x)] = (a * v + val[x]) % N
		val = new
		cur = set(val)
	if cur != TN.elemset:
		raise ClassifyError("character extension did not reach the torsion subgroup (internal)")
	return Character(TN, F, [F.from_dlog(val[g]) for g in TN.gens])


def crossed_product_bar(params: GdrParams):
	"""The opposite crossed product over T/H whose corner seeds the model;
	returns (T as an abstract group, the quotient by H, the G-algebra)."""
	F, T, H, C = params.F, params.T, params.H, params.C
	K = C.subgroup
	if not H.elemset <= K.elemset or not K.elemset <= T.elemset:
		raise ClassifyError("the subgroups must satisfy H <= K <= T")
	if C.rep not in T.elemset:
		raise ClassifyError("C must be a coset inside T")
	T_ab = AbGroup(tuple(T.gen_orders))
	from_t = T.coords
	H_ab = subgroup_from_generators(T_ab, [from_t(h) for h in H.elems])
	Q1 = quotient(T_ab, H_ab)
	Tbar = Q1.group
	Kbar = subgroup_from_generators(Tbar, [Q1.proj(from_t(k)) for k in K.elems])
	n = T.size // K.size
	L = field_create(F.p, F.m * n)
	tw = tower_create(F, L)
	Cbar = Coset(Kbar, Q1.proj(from_t(C.rep)))
	spec = ActionSpec.from_coset(tw, Tbar, Cbar)
	bb = Bicharacter(Kbar, F, [[F.from_code(c) for c in row] for row in params.O.exponent_matrix()])
	_validated_bichar(Kbar, F, bb)
	cbar, _ = _normal_form_galgebra(spec, bb, (0,) * len(Kbar.gens))
	return T_ab, Q1, opposite_galgebra(cbar)


def construct_gdr(params: GdrParams, seed: int = 0, idem=None) -> GradedAlgebra:
	"""The model algebra of a quintuple: the crossed product over T/H is
	cornered by a primitive idempotent of its smash product, then lifted
	along T -> T/H with the symmetric twist attached to chi.

	idem overrides the seeded idempotent search; it must be a primitive
	idempotent of the opposite crossed product (the class does not depend
	on the choice)."""
	F, T, H, C = params.F, params.T, params.H, params.C
	K = C.subgroup
	T_ab, Q1, cop = crossed_product_bar(params)
	nf = F.order
	from_t = T.coords
	sm = smash_group(cop)
	E = split_primitive_idempotent(cop.alg, seed=seed) if idem is None else np.asarray(idem, dtype=np.int32)
	evec = linalg.zeros(sm.alg.dim)
	evec[: cop.alg.dim] = E
	dbar = corner(evec, sm)
	kn = torsion_subgroup_of(K, nf)
	if params.chi.group != kn and tuple(params.chi.group.elems) != tuple(kn.elems):
		raise ClassifyError("chi must be a character of K_[|F^x|]")
	kn_ab = subgroup_from_generators(T_ab, [from_t(x) for x in kn.elems])
	tn_ab = torsion_subgroup_of(T_ab, nf)
	chi_ab = Character(kn_ab, F, [params.chi.value(_parent_elem(T, x)) for x in kn_ab.gens])
	chi_t = _extend_to_torsion(T_ab, kn_ab, chi_ab, tn_ab)
	amb, tilde = canonical_character_extension(T_ab, F, chi_t)
	gamma = symmetric_cocycle_from_character(T_ab, F, tilde, amb)
	dloop = loop_twisted(Q1, gamma, dbar)
	return regrade(dloop, params.G, lambda t: _parent_elem(T, t))


def enumerate_gdr(F: Field, G: AbGroup, dim_cap: int = 256) -> list[GdrParams]:
	"""All quintuples (T, H, C, O, chi) with model dimension |T| [T:K]
	at most dim_cap."""
	if G.size > GROUP_CAP_GDR:
		raise ClassifyError(f"|G| = {G.size} exceeds the cap {GROUP_CAP_GDR}")
	if dim_cap > 256:
		raise ClassifyError("dim_cap exceeds 256")
	nf = F.order
	out = []
	for T in enumerate_subgroups(G):
		T_ab = AbGroup(tuple(T.gen_orders))
		from_t = T.coords
		subs = enumerate_subgroups(T_ab)
		for H_ab in subs:
			H = subgroup_from_generators(G, [_parent_elem(T, x) for x in H_ab.elems])
			Q1 = quotient(T_ab, H_ab)
			for K_ab in subs:
				if not H_ab.elemset <= K_ab.elemset:
					continue
				n = T.size // K_ab.size
				if T.size * n > dim_cap:
					continue
				if F.p ** (F.m * n) > SIZE_CAP:
					continue
				Q2 = quotient(T_ab, K_ab)
				if Q2.group.size != n or Q2.group.invariant_factors() not in ((), (n,)):
					continue
				Kbar = subgroup_from_generators(Q1.group, [Q1.proj(x) for x in K_ab.elems])
				if not is_hyperbolic(Kbar):
					continue
				if Kbar.exponent > 1 and nf % Kbar.exponent:
					continue
				orbits = bichar_orbit_reps(Kbar, F)
				K = subgroup_from_generators(G, [_parent_elem(T, x) for x in K_ab.elems])
				kn = torsion_subgroup_of(K, nf)
				chis = characters(kn, F)
				gencosets = [
					cs for cs in cosets(T_ab, K_ab)
					if Q2.group.order_of(Q2.proj(cs.rep)) == n
				]
				for cs in gencosets:
					C = Coset(K, _parent_elem(T, cs.rep))
					for O in orbits:
						for chi in chis:
							out.append(GdrParams(F, G, T, H, C, O, chi))
	return out


# ---------------------------------------------------------------------------
# graded-ring isomorphism


def _bichar_value_lcm(F: Field, O: Bicharacter) -> int:
	m = 1
	for row in O.exponent_matrix():
		for c in row:
			o = F.elt_order(c)
			m = m * o // np.gcd(m, o)
	return int(m)


def _stable_subfield_degree(F: Field, O: Bicharacter) -> int:
	"""The degree over the prime field of the subfield generated by the
	bicharacter values."""
	M = _bichar_value_lcm(F, O)
	for d in range(1, F.m + 1):
		if F.m % d == 0 and (F.p ** d - 1) % M == 0:
			return d
	return F.m


def gdr_iso_classes(F: Field, G: AbGroup, dim_cap: int = 256) -> list[list[GdrParams]]:
	"""Quintuples grouped into graded-ring isomorphism classes: chi and
	psi(chi) name the same class for psi in Gal(F/F0), F0 generated by the
	values of the orbit bicharacter."""
	params = enumerate_gdr(F, G, dim_cap)
	nf = max(F.order, 1)
	buckets: dict[tuple, list[GdrParams]] = {}
	for P in params:
		k = P.key()[:-1]
		buckets.setdefault(k, []).append(P)
	classes = []
	for k in sorted(buckets):
		plist = buckets[k]
		e0 = _stable_subfield_degree(F, plist[0].O)
		by_chi = {P.chi_dlogs(): P for P in plist}
		seen = set()
		for chid in sorted(by_chi):
			if chid in seen:
				continue
			orbit = set()
			cur = chid
			while cur not in orbit:
				orbit.add(cur)
				cur = tuple((d * (F.p ** e0)) % nf for d in cur)
			orbit &= set(by_chi)
			seen |= orbit
			classes.append([by_chi[c] for c in sorted(orbit)])
	return classes


def _component_rows(D: GradedAlgebra, g) -> np.ndarray:
	idxs = D.component(g)
	return np.stack([D.alg.basis_vec(i) for i in idxs]) if idxs else linalg.zeros((0, D.alg.dim))


def _span_combos(F: Field, rows: np.ndarray):
	"""All nonzero elements of the row span, deterministic order."""
	m = rows.shape[0]
	if F.q ** m > ISO_SCAN_CAP:
		raise ClassifyError("component too large for the isomorphism scan")
	for codes in itertools.product(range(F.q), repeat=m):
		if not any(codes):
			continue
		v = linalg.zeros(rows.shape[1])
		for c, row in zip(codes, rows):
			if c:
				v = linalg.add(F, v, linalg.scale(F, c, row[None, :])[0])
		yield v


def _in_wpows(F: Field, wpows: np.ndarray, v) -> np.ndarray | None:
	return linalg.solve(F, wpows.T.copy(), np.asarray(v, dtype=np.int32))


def _graded_iso_linear(D1: GradedAlgebra, D2: GradedAlgebra) -> bool:
	"""Search for a degree-preserving F-algebra isomorphism D1 -> D2 of
	graded-division algebras, over monomial generator images."""
	A1, A2 = D1.alg, D2.alg
	F = A1.field
	if A1.dim != A2.dim or A1.field is not A2.field or D1.grp != D2.grp:
		return False
	s1 = D1.support()
	if s1 != D2.support():
		return False
	comps1 = {g: _component_rows(D1, g) for g in s1}
	comps2 = {g: _component_rows(D2, g) for g in s1}
	if any(comps1[g].shape != comps2[g].shape for g in s1):
		return False
	T = subgroup_from_generators(D1.grp, s1)
	if sorted(T.elems) != s1:
		return False
	zero = D1.grp.zero()
	m0 = comps1[zero].shape[0]
	w1 = None
	for v in _span_combos(F, comps1[zero]):
		mp = A1.minpoly(v)
		if len(mp) - 1 == m0:
			w1 = v
			break
	if w1 is None:
		raise ClassifyError("identity component has no primitive element")
	mp1 = A1.minpoly(w1)
	wpows1 = np.stack([A1.power(w1, a) for a in range(m0)])
	tg = list(zip(T.gens, T.gen_orders))
	u1 = []
	for t, _ in tg:
		u = comps1[t][0]
		if not A1.is_invertible_elt(u):
			return False
		u1.append(u)
	rel_conj = []
	rel_pow = []
	for (t, o), u in zip(tg, u1):
		cu = A1.mul(A1.mul(u, w1), A1.inverse_elt(u))
		cc = _in_wpows(F, wpows1, cu)
		pc = _in_wpows(F, wpows1, A1.power(u, o))
		if cc is None or pc is None:
			return False
		rel_conj.append(cc)
		rel_pow.append(pc)
	rows1 = []
	for k in sorted(T.elems):
		c = T.coords(k)
		base = A1.unit
		for u, e in zip(u1, c):
			for _ in range(e):
				base = A1.mul(base, u)
		for a in range(m0):
			rows1.append(A1.mul(wpows1[a], base))
	B1 = np.stack(rows1)
	if linalg.rank(F, B1) != A1.dim:
		return False
	B1inv = linalg.inverse(F, B1.T.copy())
	for w2 in _span_combos(F, comps2[zero]):
		if A2.minpoly(w2) != mp1:
			continue
		wpows2 = np.stack([A2.power(w2, a) for a in range(m0)])

		def from_coords(co):
			out = linalg.zeros(A2.dim)
			for a in np.nonzero(co)[0]:
				out = linalg.add(F, out, linalg.scale(F, int(co[a]), wpows2[a][None, :])[0])
			return out

		cands = []
		for (t, o), cc, pc in zip(tg, rel_conj, rel_pow):
			tconj = from_coords(cc)
			tpow = from_coords(pc)
			good = []
			for v in _span_combos(F, comps2[t]):
				if not A2.is_invertible_elt(v):
					continue
				if not np.array_equal(A2.mul(A2.mul(v, w2), A2.inverse_elt(v)), tconj):
					continue
				if not np.array_equal(A2.power(v, o), tpow):
					continue
				good.append(v)
			if not good:
				break
			cands.append(good)
		if len(cands) != len(tg):
			continue
		for choice in itertools.product(*cands):
			rows2 = []
			for k in sorted(T.elems):
				c = T.coords(k)
				base = A2.unit
				for u, e in zip(choice, c):
					for _ in range(e):
						base = A2.mul(base, u)
				for a in range(m0):
					rows2.append(A2.mul(wpows2[a], base))
			B2 = np.stack(rows2)
			M = linalg.matmul(F, B2.T.copy(), B1inv)
			if linalg.rank(F, M) != A1.dim:
				continue
			if not np.array_equal(linalg.matvec(F, M, A1.unit), A2.unit):
				continue
			ok = True
			for r in range(A1.dim):
				for cidx in range(A1.dim):
					lhs = linalg.matvec(F, M, A1.mul(A1.basis_vec(r), A1.basis_vec(cidx)))
					rhs = A2.mul(M[:, r], M[:, cidx])
					if not np.array_equal(lhs, rhs):
						ok = False
						break
				if not ok:
					break
			if ok:
				return True
	return False


def graded_ring_iso_oracle(D1: GradedAlgebra, D2: GradedAlgebra) -> bool:
	"""Graded-RING isomorphism of graded-division algebras: an F-linear
	graded isomorphism composed with any power of Frobenius on scalars."""
	for j in range(D1.alg.field.m):
		if _graded_iso_linear(pull_scalars_graded(D1, j), D2):
			return True
	return False
