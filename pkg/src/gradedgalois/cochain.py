"""Cocycles for a finite abelian group acting on the units of a field
extension, plus the explicit cohomological maps the constructions need.

The action is always through a tower F subset L with cyclic Galois group:
theta assigns to each group element the power of the relative Frobenius it
acts by.  Cocycle tables are verified exhaustively at construction (|G|^2
pairs for degree 1, |K|^3 triples for degree 2), so nothing downstream has
to trust the enumeration shortcuts.
"""

from __future__ import annotations

import itertools
from math import gcd

import numpy as np

from .abgroup import (
	AbGroup,
	Bicharacter,
	Character,
	Coset,
	Subgroup,
	_group_coords,
	_group_elements,
	_group_gens,
	full_subgroup,
	quotient,
	subgroup_from_generators,
	torsion,
)
from .gf import Field, FieldElt, Tower, field_create, root_section, tower_create

H1_GROUP_CAP = 16
H1_FIELD_CAP = 81


class CochainError(ValueError):
	pass


class ActionSpec:
	"""A surjective homomorphism theta: G -> Gal(L/F) = Z/n with kernel K.

	g acts on L as the relative Frobenius to the power theta(g); the
	distinguished generator t0 is the least element with theta(t0) = 1.
	"""

	def __init__(self, tower: Tower, G: AbGroup, K: Subgroup, theta: dict):
		self.tower = tower
		self.G = G
		self.K = K
		self.theta = dict(theta)
		n = tower.n
		self.n = n
		for g in G.elements():
			if g not in self.theta:
				raise CochainError(f"theta missing {g}")
			if not 0 <= self.theta[g] < n:
				raise CochainError("theta values must lie in 0..n-1")
		for g in G.elements():
			for h in G.elements():
				if self.theta[G.add(g, h)] != (self.theta[g] + self.theta[h]) % n:
					raise CochainError("theta is not a homomorphism")
		kernel = {g for g in G.elements() if self.theta[g] == 0}
		if kernel != K.elemset:
			raise CochainError("kernel of theta differs from K")
		if G.size != K.size * n:
			raise CochainError("[G:K] does not match the tower degree")
		if n == 1:
			self.t0 = G.zero()
		else:
			ones = sorted(g for g in G.elements() if self.theta[g] == 1)
			if not ones:
				raise CochainError("theta is not surjective")
			self.t0 = ones[0]

	@classmethod
	def from_coset(cls, tower: Tower, G: AbGroup, C: Coset) -> "ActionSpec":
		"""theta sending the elements of C^j to Frobenius^j."""
		K = C.subgroup
		Q = quotient(G, K)
		n = tower.n
		if Q.group.invariant_factors() not in ((), (n,)) or Q.group.size != n:
			raise CochainError("G/K is not cyclic of the tower degree")
		cbar = Q.proj(C.rep)
		theta = {}
		power = {Q.group.zero(): 0}
		cur = Q.group.zero()
		for j in range(1, n):
			cur = Q.group.add(cur, cbar)
			power[cur] = j
		if len(power) != n:
			raise CochainError("C does not generate G/K")
		for g in G.elements():
			theta[g] = power[Q.proj(g)]
		return cls(tower, G, K, theta)

	def sigma(self, g, x: FieldElt) -> FieldElt:
		return self.tower.frobenius(x, self.theta[g])

	def field(self) -> Field:
		return self.tower.top

	def base(self) -> Field:
		return self.tower.base


class Cocycle1:
	"""A map f: G -> L^x with f(g1 g2) = f(g1) sigma_{g1}(f(g2))."""

	def __init__(self, action: ActionSpec, table: dict):
		self.action = action
		self.table = dict(table)
		G = action.G
		L = action.field()
		for g in G.elements():
			v = self.table.get(g)
			if v is None or v.field is not L or v.code == 0:
				raise CochainError(f"table must give a unit of L at {g}")
		if self.table[G.zero()].code != 1:
			raise CochainError("f(identity) must be 1")
		# the |G|^2 identity check, vectorized over unit dlogs: the sigma
		# twist multiplies the dlog by the Frobenius power of the acting
		# element
		els = list(G.elements())
		idx = {g: i for i, g in enumerate(els)}
		nel = len(els)
		V = np.array([self.table[g].code - 1 for g in els], dtype=np.int64)
		SH = np.array(
			[pow(action.base().q, action.theta[g], L.order) for g in els], dtype=np.int64
		)
		ADD = np.empty((nel, nel), dtype=np.int64)
		for i, g in enumerate(els):
			for j, h in enumerate(els):
				ADD[i, j] = idx[G.add(g, h)]
		lhs = V[ADD]
		rhs = (V[:, None] + V[None, :] * SH[:, None]) % L.order
		if not np.array_equal(lhs, rhs):
			raise CochainError("cocycle identity fails")

	def value(self, g) -> FieldElt:
		return self.table[g]

	def mul(self, other: "Cocycle1") -> "Cocycle1":
		G = self.action.G
		return Cocycle1(
			self.action, {g: self.table[g] * other.table[g] for g in G.elements()}
		)

	def ratio(self, other: "Cocycle1") -> dict:
		G = self.action.G
		return {g: self.table[g] / other.table[g] for g in G.elements()}

	def key(self) -> tuple:
		return tuple(self.table[g].code for g in sorted(self.action.G.elements()))

	def restriction(self) -> Character:
		"""f restricted to K, as a character with values in the base field."""
		act = self.action
		tower = act.tower
		vals = []
		for g in act.K.gens:
			v = self.table[g]
			if not tower.contains(v):
				raise CochainError("restriction value lies outside the base field")
			vals.append(tower.project(v))
		return Character(act.K, act.base(), vals)

	def __eq__(self, other):
		return isinstance(other, Cocycle1) and self.action is other.action and self.key() == other.key()

	def __hash__(self):
		return hash(self.key())


def coboundary1(action: ActionSpec, l: FieldElt) -> Cocycle1:
	"""The coboundary g -> sigma_g(l) / l."""
	if l.code == 0:
		raise CochainError("coboundary of zero is undefined")
	G = action.G
	return Cocycle1(action, {g: action.sigma(g, l) / l for g in G.elements()})


def extend_character(action: ActionSpec, lam: Character, mu0: FieldElt | None = None) -> Cocycle1:
	"""The unique 1-cocycle restricting to lam on K with f(t0) = mu0.

	With mu0 = None the canonical choice is used: lam(t0^n) = omega_F^j with
	0 <= j < |F^x| gives mu0 = omega_L^j, which indeed has norm lam(t0^n).
	"""
	act = action
	tower = act.tower
	F, L = act.base(), act.field()
	if lam.group != act.K or lam.target is not F:
		raise CochainError("lam must be a character of K with values in the base field")
	t0 = act.t0
	t0n = act.G.smul(act.n, t0)
	target = lam.value(t0n)
	if mu0 is None:
		j = 0 if target.code == 1 else (target.code - 1)
		mu0 = L.from_dlog(j)
	else:
		if mu0.field is not L or mu0.code == 0:
			raise CochainError("mu0 must be a unit of L")
		if tower.norm(mu0) != target:
			raise CochainError("norm(mu0) differs from lam(t0^n)")
	# f(k + j*t0) = lam(k) * mu0 * phi(mu0) * ... * phi^{j-1}(mu0)
	partial = [L.one()]
	for j in range(1, act.n):
		partial.append(partial[-1] * tower.frobenius(mu0, j - 1))
	table = {}
	for g in act.G.elements():
		j = act.theta[g]
		k = act.G.sub(g, act.G.smul(j, t0))
		if not act.K.contains(k):
			raise CochainError("internal decomposition failure")
		table[g] = tower.embed(lam.value(k)) * partial[j]
	return Cocycle1(act, table)


def h1(action: ActionSpec) -> tuple[int, list[Cocycle1]]:
	"""|H^1(G, L^x)| and one representative cocycle per class.

	Z^1 is enumerated honestly: candidate generator values must satisfy the
	twisted-norm condition, candidates are filtered by the pairwise
	compatibility congruence, and every surviving table is still verified
	against the cocycle identity on all |G|^2 pairs by the constructor.
	"""
	act = action
	G, L = act.G, act.field()
	if G.size > H1_GROUP_CAP or L.q > H1_FIELD_CAP:
		raise CochainError("h1 caps: |G| <= 16 and |L| <= 81")
	Q = L.order
	gens = [(g, d) for g, d in G.generators()]
	P = [pow(act.base().q, act.theta[g], Q) for g, _ in gens]
	cands = []
	for (g, d), Pi in zip(gens, P):
		S = sum(pow(Pi, j, Q) for j in range(d)) % Q
		step = Q // gcd(S, Q)
		cands.append([y for y in range(0, Q, step)])
	cocycles = []
	for ys in itertools.product(*cands):
		ok = True
		for i in range(len(gens)):
			for j in range(i + 1, len(gens)):
				if ((1 - P[j]) * ys[i] - (1 - P[i]) * ys[j]) % Q:
					ok = False
					break
			if not ok:
				break
		if not ok:
			continue
		table = {}
		for x in G.elements():
			coords = [a for a, dd in zip(x, G.orders) if dd > 1]
			dlog = 0
			shift = 1
			for (g, d), Pi, yi, c in zip(gens, P, ys, coords):
				dlog = (dlog + shift * yi * sum(pow(Pi, t, Q) for t in range(c))) % Q
				shift = shift * pow(Pi, c, Q) % Q
			table[x] = L.from_dlog(dlog)
		cocycles.append(Cocycle1(act, table))
	cob_keys = set()
	for code in range(1, L.q):
		cob_keys.add(coboundary1(act, L.from_code(code)).key())
	if len(cocycles) % len(cob_keys):
		raise CochainError("B^1 does not divide Z^1; enumeration bug")
	reps = []
	seen = set()
	order = sorted(G.elements())
	for f in sorted(cocycles, key=lambda f: f.key()):
		if f.key() in seen:
			continue
		reps.append(f)
		for code in range(1, L.q):
			l = L.from_code(code)
			shifted = tuple((f.table[x] * act.sigma(x, l) / l).code for x in order)
			seen.add(shifted)
	size = len(cocycles) // len(cob_keys)
	if len(reps) != size:
		raise CochainError("representative count mismatch")
	return size, reps


class Cocycle2:
	"""A 2-cocycle on a subgroup with values in the units of a field
	(trivial action on the coefficients)."""

	def __init__(self, domain: Subgroup, field: Field, table: dict):
		self.domain = domain
		self.field = field
		self.table = dict(table)
		elems = _group_elements(domain)
		add = domain.parent.add
		for k1 in elems:
			for k2 in elems:
				v = self.table.get((k1, k2))
				if v is None or v.field is not field or v.code == 0:
					raise CochainError(f"table must give a unit at {(k1, k2)}")
		# the |K|^3 identity check, vectorized over unit dlogs
		idx = {k: i for i, k in enumerate(elems)}
		nel = len(elems)
		ADD = np.empty((nel, nel), dtype=np.int64)
		T = np.empty((nel, nel), dtype=np.int64)
		for i, k1 in enumerate(elems):
			for j, k2 in enumerate(elems):
				ADD[i, j] = idx[add(k1, k2)]
				T[i, j] = self.table[(k1, k2)].code - 1
		lhs = (T[:, :, None] + T[ADD, :]) % field.order
		rhs = (T[None, :, :] + T[:, ADD]) % field.order
		if not np.array_equal(lhs, rhs):
			raise CochainError("2-cocycle identity fails")

	def value(self, k1, k2) -> FieldElt:
		return self.table[(k1, k2)]

	def is_symmetric(self) -> bool:
		elems = _group_elements(self.domain)
		return all(
			self.table[(a, b)] == self.table[(b, a)] for a in elems for b in elems
		)

	def is_normalized(self) -> bool:
		z = self.domain.parent.zero()
		elems = _group_elements(self.domain)
		return all(
			self.table[(z, k)].code == 1 and self.table[(k, z)].code == 1 for k in elems
		)

	def mul(self, other: "Cocycle2") -> "Cocycle2":
		elems = _group_elements(self.domain)
		return Cocycle2(
			self.domain,
			self.field,
			{(a, b): self.table[(a, b)] * other.table[(a, b)] for a in elems for b in elems},
		)

	def key(self) -> tuple:
		elems = sorted(_group_elements(self.domain))
		return tuple(self.table[(a, b)].code for a in elems for b in elems)

	def alt(self) -> Bicharacter:
		"""The alternating bicharacter tau(k1,k2)/tau(k2,k1); verified to be
		bimultiplicative on every pair."""
		K = self.domain
		gens = [g for g, _ in _group_gens(K)]
		m = len(gens)
		M = [[self.table[(a, b)] / self.table[(b, a)] for b in gens] for a in gens]
		beta = Bicharacter(K, self.field, M)
		for a in _group_elements(K):
			for b in _group_elements(K):
				if beta.value(a, b) != self.table[(a, b)] / self.table[(b, a)]:
					raise CochainError("commutation ratio is not bimultiplicative")
		return beta


def upper_triangular_cocycle(beta: Bicharacter, field: Field | None = None) -> Cocycle2:
	"""The bimultiplicative tau with tau(a_i, a_j) = beta(a_i, a_j) for
	i < j and 1 otherwise, on the fixed generator tuple of K."""
	if not beta.is_alternating():
		raise CochainError("beta must be alternating")
	K = beta.group
	F = field if field is not None else beta.target
	if F is not beta.target:
		raise CochainError("field mismatch")
	elems = _group_elements(K)
	table = {}
	for x in elems:
		cx = K.coords(x)
		for y in elems:
			cy = K.coords(y)
			v = F.one()
			for i in range(len(cx)):
				for j in range(i + 1, len(cy)):
					if cx[i] and cy[j]:
						v = v * beta.matrix[i][j] ** (cx[i] * cy[j])
			table[(x, y)] = v
	return Cocycle2(K, F, table)


def check_compat(f_map: dict, tau: Cocycle2) -> bool:
	"""Whether f_{k1} f_{k2} = d(tau(k1,k2)) f_{k1 k2} for all pairs."""
	K = tau.domain
	elems = _group_elements(K)
	if set(f_map) != set(elems):
		raise CochainError("f_map must cover exactly K")
	some = f_map[elems[0]]
	act = some.action
	for k1 in elems:
		for k2 in elems:
			lhs = f_map[k1].mul(f_map[k2])
			d = coboundary1(act, tau.value(k1, k2))
			rhs = d.mul(f_map[K.parent.add(k1, k2)])
			if lhs.key() != rhs.key():
				return False
	return True


# ---------------------------------------------------------------------------
# symmetric 2-cocycles from characters via canonical N-th roots


def ambient_root_field(F: Field, M: int) -> Field:
	"""The smallest field of characteristic p containing F and an M-th root
	of unity (M coprime to p)."""
	if M % F.p == 0:
		raise CochainError("no p-th roots of unity in characteristic p")
	r = F.m
	while (F.p ** r - 1) % M:
		r += F.m
		if F.p ** r > (1 << 16):
			raise CochainError(f"ambient field for M={M} exceeds the size cap")
	return field_create(F.p, r)


def prime_to_p_part(d: int, p: int) -> tuple[int, int]:
	"""(p-power part, prime-to-p part) of d."""
	a = 1
	while d % p == 0:
		d //= p
		a *= p
	return a, d


def canonical_character_extension(group, F: Field, chi: Character):
	"""Extend chi on group_[N] (N = |F^x|) to a character of the whole group
	with values in a root field; returns (ambient, tilde values dict).

	The generator values are canonical: the p-part of each root extraction
	is done inside F by Frobenius inversion, the rest by the [1/M] section.
	"""
	N = F.order
	gens = _group_gens(group)
	parent = group if isinstance(group, AbGroup) else group.parent
	tor_gens = []
	for g, d in gens:
		gd = gcd(d, N)
		tor_gens.append((parent.smul(d // gd, g), gd))
	# chi lives on the subgroup generated by tor_gens
	Mneed = 1
	vals = []
	for (g, d), (tg, gd) in zip(gens, tor_gens):
		w = chi.value(tg)
		lift = d // gd
		a, u = prime_to_p_part(lift, F.p)
		if a > 1:
			w = w ** pow(a, -1, N)
		need = u * w.order()
		Mneed = Mneed * need // gcd(Mneed, need)
		vals.append((w, u))
	amb = ambient_root_field(F, Mneed * N)
	tower = tower_create(F, amb)
	out = []
	for w, u in vals:
		out.append(root_section(amb, u, tower.embed(w)) if u > 1 else tower.embed(w))
	return amb, dict(zip([g for g, _ in gens], out))


def symmetric_cocycle_from_character(group, F: Field, tilde_vals: dict, ambient: Field) -> Cocycle2:
	"""gamma(g1,g2) = z(g1) z(g2) / z(g1 g2) with z = [1/N] of the character
	values; verified symmetric with values in F^x."""
	N = F.order
	tower = tower_create(F, ambient)
	gens = _group_gens(group)
	parent = group if isinstance(group, AbGroup) else group.parent
	elems = _group_elements(group)

	def chi_tilde(x) -> FieldElt:
		exps = _group_coords(group, x)
		out = ambient.one()
		for e, (g, _) in zip(exps, gens):
			out = out * tilde_vals[g] ** e
		return out

	z = {x: root_section(ambient, N, chi_tilde(x)) for x in elems}
	table = {}
	for a in elems:
		for b in elems:
			v = z[a] * z[b] / z[parent.add(a, b)]
			if not tower.contains(v):
				raise CochainError("cocycle value escaped the base field")
			table[(a, b)] = tower.project(v)
	dom = group if isinstance(group, Subgroup) else full_subgroup(group)
	c = Cocycle2(dom, F, table)
	if not c.is_symmetric():
		raise CochainError("cocycle from character is not symmetric")
	return c


def gamma_from_character(G: AbGroup, F: Field, chi: Character) -> Cocycle2:
	"""The symmetric 2-cocycle on G attached to a character of G_[N]."""
	amb, tilde = canonical_character_extension(G, F, chi)
	return symmetric_cocycle_from_character(G, F, tilde, amb)


def eta_from_character(K: Subgroup, F: Field, chi: Character) -> Cocycle2:
	"""The symmetric 2-cocycle on a subgroup K attached to a character of
	K_[N]; same construction as gamma_from_character."""
	amb, tilde = canonical_character_extension(K, F, chi)
	return symmetric_cocycle_from_character(K, F, tilde, amb)


def torsion_subgroup_of(group, N: int) -> Subgroup:
	"""group_[N] as a Subgroup of the ambient parent."""
	if isinstance(group, AbGroup):
		return torsion(group, N)
	parent = group.parent
	elems = [x for x in group.elems if parent.smul(N, x) == parent.zero()]
	return subgroup_from_generators(parent, elems)


def connecting_alpha(T, K: Subgroup, lam: Character) -> tuple[Cocycle2, "object"]:
	"""The symmetric 2-cocycle alpha_lam on T/K with
	alpha(x1, x2) = lam(s(x1) + s(x2) - s(x1 x2)), s the least-member
	section; returns (cocycle on the quotient group, the quotient)."""
	if not isinstance(T, AbGroup):
		raise CochainError("connecting_alpha expects the ambient group presentation")
	parent = T
	Q = quotient(parent, K)
	F = lam.target
	elems = list(Q.group.elements())
	table = {}
	for x in elems:
		for y in elems:
			s = parent.add(Q.section(x), Q.section(y))
			diff = parent.sub(s, Q.section(Q.proj(s)))
			if not K.contains(diff):
				raise CochainError("section arithmetic escaped K")
			table[(x, y)] = lam.value(diff)
	dom = full_subgroup(Q.group)
	c = Cocycle2(dom, F, table)
	if not c.is_symmetric():
		raise CochainError("connecting cocycle is not symmetric")
	return c, Q


def is_coboundary2(c: Cocycle2) -> bool:
	"""Whether c is the coboundary of some F^x-valued 1-cochain, by
	exhaustive search with early pruning."""
	K = c.domain
	F = c.field
	elems = sorted(_group_elements(K))
	add = K.parent.add
	zero = K.parent.zero()
	# normalize away the constant: a coboundary with u(0)=1 exists iff one
	# with arbitrary u(0) does
	units = [F.from_code(t) for t in range(1, F.q)]
	assign: dict = {zero: F.one()}

	def extend(idx: int) -> bool:
		if idx == len(elems):
			return True
		x = elems[idx]
		if x in assign:
			return extend(idx + 1)
		for u in units:
			assign[x] = u
			ok = True
			for y in list(assign):
				s = add(x, y)
				if s in assign:
					if c.value(x, y) != assign[x] * assign[y] / assign[s]:
						ok = False
						break
				s2 = add(y, x)
				if ok and s2 in assign:
					if c.value(y, x) != assign[y] * assign[x] / assign[s2]:
						ok = False
						break
			if ok and extend(idx + 1):
				return True
			del assign[x]
		return False

	return extend(0)
