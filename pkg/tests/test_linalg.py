"""Exact linear algebra over lookup-table fields."""

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from gradedgalois import linalg
from gradedgalois.gf import field_create

F9 = field_create(3, 2)
F5 = field_create(5, 1)


def rand_matrix(field, rows, cols, rng):
	return rng.integers(0, field.q, size=(rows, cols)).astype(np.int32)


def test_eye_and_matmul():
	rng = np.random.default_rng(1)
	A = rand_matrix(F9, 4, 4, rng)
	assert np.array_equal(linalg.matmul(F9, linalg.eye(4), A), A)
	assert np.array_equal(linalg.matmul(F9, A, linalg.eye(4)), A)


@given(st.integers(0, 10 ** 6))
def test_matmul_associative(seed):
	rng = np.random.default_rng(seed)
	A = rand_matrix(F5, 3, 4, rng)
	B = rand_matrix(F5, 4, 2, rng)
	C = rand_matrix(F5, 2, 5, rng)
	left = linalg.matmul(F5, linalg.matmul(F5, A, B), C)
	right = linalg.matmul(F5, A, linalg.matmul(F5, B, C))
	assert np.array_equal(left, right)


@given(st.integers(0, 10 ** 6))
def test_rank_plus_nullity(seed):
	rng = np.random.default_rng(seed)
	A = rand_matrix(F9, 4, 6, rng)
	r = linalg.rank(F9, A)
	ker = linalg.kernel(F9, A)
	assert r + ker.shape[0] == 6
	for row in ker:
		assert not linalg.matvec(F9, A, row).any()


@given(st.integers(0, 10 ** 6))
def test_solve_and_inverse(seed):
	rng = np.random.default_rng(seed)
	A = rand_matrix(F5, 4, 4, rng)
	x = rng.integers(0, F5.q, size=4).astype(np.int32)
	b = linalg.matvec(F5, A, x)
	sol = linalg.solve(F5, A, b)
	assert sol is not None
	assert np.array_equal(linalg.matvec(F5, A, sol), b)
	if linalg.is_invertible(F5, A):
		Ainv = linalg.inverse(F5, A)
		assert np.array_equal(linalg.matmul(F5, Ainv, A), linalg.eye(4))
		assert np.array_equal(linalg.matmul(F5, A, Ainv), linalg.eye(4))


def test_solve_reports_inconsistency():
	A = np.array([[1, 0], [1, 0]], dtype=np.int32)
	b = np.array([1, 2], dtype=np.int32)
	assert linalg.solve(F5, A, b) is None


def test_rref_idempotent():
	rng = np.random.default_rng(7)
	A = rand_matrix(F9, 5, 7, rng)
	R, piv = linalg.rref(F9, A)
	R2, piv2 = linalg.rref(F9, R)
	assert np.array_equal(R, R2)
	assert piv == piv2


@given(st.integers(0, 10 ** 6))
def test_echelon_tracks_membership(seed):
	rng = np.random.default_rng(seed)
	ech = linalg.Echelon(F9, 5, track=True)
	rows = []
	for _ in range(4):
		v = rng.integers(0, F9.q, size=5).astype(np.int32)
		if ech.add(v):
			rows.append(v)
	assert ech.dim == len(rows)
	for v in rows:
		assert ech.contains(v)
		coeffs = ech.express(v)
		assert coeffs is not None
		acc = linalg.zeros(5)
		for c, r in zip(coeffs, rows):
			acc = linalg.add(F9, acc, linalg.scale(F9, int(c), r[None, :])[0])
		assert np.array_equal(acc, v)
	outside = rng.integers(0, F9.q, size=5).astype(np.int32)
	assert ech.contains(outside) == (ech.express(outside) is not None)


def test_minpoly_vec_of_generator():
	# the companion action of the GF(9) generator on itself has the defining
	# polynomial as its minimal polynomial
	from gradedgalois.algebra import matrix_algebra

	A = matrix_algebra(F5, 2)
	e12 = A.basis_vec(1)
	poly = A.minpoly(e12)
	assert poly == [0, 0, 1]
