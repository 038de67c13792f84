"""Dense univariate polynomials over the gf fields.

A polynomial is a python list of scalar codes, constant term first, with no
trailing zeros; the zero polynomial is [0].  Factorization is deterministic
Berlekamp (kernel basis plus gcd refinement over all field scalars), which
is entirely adequate at the field sizes this package allows in matrices.
"""

from __future__ import annotations

from .gf import Field, FieldError


def ptrim(f):
	while len(f) > 1 and f[-1] == 0:
		f.pop()
	if not f:
		f.append(0)
	return f


def pdeg(f) -> int:
	return -1 if f == [0] else len(f) - 1


def padd(field: Field, a, b):
	n = max(len(a), len(b))
	out = [field.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
	return ptrim(out)


def psub(field: Field, a, b):
	n = max(len(a), len(b))
	out = [field.sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
	return ptrim(out)


def pscale(field: Field, c: int, a):
	return ptrim([field.mul(c, x) for x in a])


def pmul(field: Field, a, b):
	if a == [0] or b == [0]:
		return [0]
	out = [0] * (len(a) + len(b) - 1)
	for i, x in enumerate(a):
		if x:
			for j, y in enumerate(b):
				out[i + j] = field.add(out[i + j], field.mul(x, y))
	return ptrim(out)


def pmonic(field: Field, a):
	if a == [0]:
		return [0]
	lead = a[-1]
	if lead == 1:
		return list(a)
	return pscale(field, field.inv(lead), a)


def pdivmod(field: Field, a, b):
	if b == [0]:
		raise ZeroDivisionError("polynomial division by zero")
	a = list(a)
	db, lead = len(b) - 1, b[-1]
	inv_lead = field.inv(lead)
	if len(a) - 1 < db:
		return [0], ptrim(a)
	quot = [0] * (len(a) - db)
	while len(a) - 1 >= db and a != [0]:
		c = a[-1]
		if c:
			cc = field.mul(c, inv_lead)
			off = len(a) - 1 - db
			quot[off] = cc
			for i in range(db + 1):
				a[off + i] = field.sub(a[off + i], field.mul(cc, b[i]))
		a.pop()
		ptrim(a)
		if len(a) - 1 < db:
			break
	return ptrim(quot), ptrim(a)


def pmod(field: Field, a, b):
	return pdivmod(field, a, b)[1]


def pgcd(field: Field, a, b):
	a, b = list(a), list(b)
	while b != [0]:
		a, b = b, pmod(field, a, b)
	return pmonic(field, a)


def pxgcd(field: Field, a, b):
	"""(g, s, t) with s*a + t*b = g, g monic."""
	r0, r1 = list(a), list(b)
	s0, s1 = [1], [0]
	t0, t1 = [0], [1]
	while r1 != [0]:
		q, r = pdivmod(field, r0, r1)
		r0, r1 = r1, r
		s0, s1 = s1, psub(field, s0, pmul(field, q, s1))
		t0, t1 = t1, psub(field, t0, pmul(field, q, t1))
	if r0 == [0]:
		return [0], [0], [0]
	lead = r0[-1]
	if lead != 1:
		c = field.inv(lead)
		r0, s0, t0 = pscale(field, c, r0), pscale(field, c, s0), pscale(field, c, t0)
	return r0, s0, t0


def ppowmod(field: Field, a, e: int, m):
	result = [1]
	base = pmod(field, a, m)
	while e:
		if e & 1:
			result = pmod(field, pmul(field, result, base), m)
		base = pmod(field, pmul(field, base, base), m)
		e >>= 1
	return result


def peval(field: Field, f, x: int) -> int:
	acc = 0
	for c in reversed(f):
		acc = field.add(field.mul(acc, x), c)
	return acc


def pderiv(field: Field, f):
	if len(f) <= 1:
		return [0]
	out = []
	for i in range(1, len(f)):
		c = f[i]
		k = i % field.p
		acc = 0
		for _ in range(k):
			acc = field.add(acc, c)
		out.append(acc)
	return ptrim(out)


def squarefree_decomposition(field: Field, f):
	"""List of (g, k) with f = prod g**k, the g squarefree and coprime."""
	f = pmonic(field, f)
	if pdeg(f) <= 0:
		return []
	out = []
	c = pgcd(field, f, pderiv(field, f))
	w = pdivmod(field, f, c)[0]
	i = 1
	while pdeg(w) > 0:
		y = pgcd(field, w, c)
		fac = pdivmod(field, w, y)[0]
		if pdeg(fac) > 0:
			out.append((fac, i))
		w = y
		c = pdivmod(field, c, y)[0]
		i += 1
	if pdeg(c) > 0:
		# c is a p-th power: take the p-th root coefficientwise
		p = field.p
		root = [field.pow(c[j], field.q // p) for j in range(0, len(c), p)]
		for g, k in squarefree_decomposition(field, ptrim(root)):
			out.append((g, k * p))
	return out


def _berlekamp_squarefree(field: Field, f):
	"""Irreducible factors of a squarefree monic f, deterministic order."""
	from . import linalg

	n = pdeg(f)
	if n <= 1:
		return [f]
	q = field.q
	Q = linalg.zeros((n, n))
	# row i holds the coordinates of x^(i*q) mod f
	xq = ppowmod(field, [0, 1], q, f)
	cur = [1]
	for i in range(n):
		for j, c in enumerate(cur):
			Q[i, j] = c
		cur = pmod(field, pmul(field, cur, xq), f)
	M = linalg.sub(field, Q, linalg.eye(n))
	basis = linalg.kernel(field, M.T)
	r = basis.shape[0]
	if r == 1:
		return [pmonic(field, f)]
	factors = [pmonic(field, f)]
	for b in basis:
		if len(factors) == r:
			break
		bpoly = ptrim([int(c) for c in b])
		if pdeg(bpoly) < 1:
			continue
		for c in range(q):
			if len(factors) == r:
				break
			shifted = psub(field, bpoly, [c])
			nxt = []
			for h in factors:
				if pdeg(h) == 1:
					nxt.append(h)
					continue
				d = pgcd(field, h, shifted)
				if 0 < pdeg(d) < pdeg(h):
					nxt.append(d)
					nxt.append(pmonic(field, pdivmod(field, h, d)[0]))
				else:
					nxt.append(h)
			factors = nxt
	if len(factors) != r:
		raise FieldError("Berlekamp refinement failed to separate the factors")
	return sorted(factors, key=lambda h: (len(h), tuple(h)))


def factor(field: Field, f):
	"""Sorted list of (monic irreducible, multiplicity)."""
	if pdeg(f) < 1:
		raise FieldError("factor expects a polynomial of positive degree")
	out = []
	for g, k in squarefree_decomposition(field, f):
		for h in _berlekamp_squarefree(field, g):
			out.append((h, k))
	return sorted(out, key=lambda t: (len(t[0]), tuple(t[0]), t[1]))


def is_irreducible(field: Field, f) -> bool:
	fs = factor(field, f)
	return len(fs) == 1 and fs[0][1] == 1


def roots(field: Field, f):
	"""Distinct root codes of f in the field, ascending."""
	return [c for c in range(field.q) if peval(field, f, c) == 0]
