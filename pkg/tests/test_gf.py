"""Field arithmetic: Zech codes, canonical roots, towers."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedgalois.gf import (
	FieldError,
	field_create,
	omega,
	parse_field_name,
	prime_factors,
	tower_create,
)

SMALL_FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)]


def test_field_create_caps_and_errors():
	with pytest.raises(FieldError):
		field_create(4, 1)
	with pytest.raises(FieldError):
		field_create(3, 0)
	with pytest.raises(FieldError):
		field_create(2, 17)
	assert field_create(3, 2) is field_create(3, 2)


def test_parse_field_name():
	assert parse_field_name("GF(3^2)") == (3, 2)
	assert parse_field_name("GF(7^1)") == (7, 1)
	with pytest.raises(FieldError):
		field_create(*parse_field_name("GF(6^1)"))


def test_prime_field_matches_integers_mod_p():
	F = field_create(5, 1)
	for a in range(5):
		for b in range(5):
			assert F.from_int(a) + F.from_int(b) == F.from_int(a + b)
			assert F.from_int(a) * F.from_int(b) == F.from_int(a * b)


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_unit_group_is_cyclic_of_full_order(p, m):
	F = field_create(p, m)
	w = F.gen()
	seen = set()
	x = F.one()
	for _ in range(F.order):
		seen.add(x.code)
		x = x * w
	assert x == F.one()
	assert len(seen) == F.order


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_zech_addition_matches_polynomial_addition(p, m):
	F = field_create(p, m)
	for a in range(F.q):
		pa = F.poly_coeffs(a)
		for b in range(F.q):
			pb = F.poly_coeffs(b)
			want = tuple((x + y) % p for x, y in zip(pa, pb))
			assert F.poly_coeffs(F.add(a, b)) == want


def test_from_poly_roundtrip():
	F = field_create(3, 3)
	for a in range(F.q):
		assert F.from_poly(F.poly_coeffs(a)).code == a


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_field_axioms_gf9(a, b, c):
	F = field_create(3, 2)
	x, y, z = F.from_code(a), F.from_code(b), F.from_code(c)
	assert (x + y) + z == x + (y + z)
	assert (x * y) * z == x * (y * z)
	assert x * (y + z) == x * y + x * z
	assert x + y == y + x
	assert x * y == y * x


@given(st.integers(1, 24))
def test_inverse_gf25(a):
	F = field_create(5, 2)
	x = F.from_code(a)
	assert x * x.inv() == F.one()


def test_elt_order_divides_group_order():
	F = field_create(3, 2)
	for a in range(1, F.q):
		assert F.order % F.elt_order(a) == 0
	assert F.elt_order(F.gen().code) == F.order


def test_omega_compatibility_chain():
	F = field_create(3, 4)
	for N in (80, 40, 16, 10, 8, 5, 4, 2, 1):
		assert omega(F, N).order() == N
		for d in (2, 4, 5):
			if N % d == 0:
				assert omega(F, N) ** d == omega(F, N // d)
	with pytest.raises(FieldError):
		omega(F, 3)


def test_tower_embedding_is_a_field_hom():
	F = field_create(3, 1)
	L = field_create(3, 4)
	tw = tower_create(F, L)
	for a in F.elements():
		for b in F.elements():
			assert tw.embed(a + b) == tw.embed(a) + tw.embed(b)
			assert tw.embed(a * b) == tw.embed(a) * tw.embed(b)
	assert tw.embed(F.one()) == L.one()


def test_tower_frobenius_generates_the_right_group():
	F = field_create(3, 2)
	L = field_create(3, 4)
	tw = tower_create(F, L)
	x = L.gen()
	assert tw.frobenius(x, tw.n) == x
	assert tw.frobenius(x, 1) != x
	for a in F.elements():
		assert tw.frobenius(tw.embed(a)) == tw.embed(a)


def test_tower_norm_and_section():
	F = field_create(3, 1)
	L = field_create(3, 2)
	tw = tower_create(F, L)
	for c in range(1, F.q):
		y = F.from_code(c)
		assert tw.norm(tw.norm_section(y)) == y
	x = L.gen()
	assert tw.norm(x) == tw.project(x * tw.frobenius(x))


def test_tower_project_rejects_outsiders():
	F = field_create(3, 1)
	L = field_create(3, 2)
	tw = tower_create(F, L)
	assert not tw.contains(L.gen())
	with pytest.raises(FieldError):
		tw.project(L.gen())


def test_defpoly_subfield_compatibility():
	# the canonical generator of a subfield is the matching power of the
	# canonical generator upstairs
	F9 = field_create(3, 2)
	L = field_create(3, 4)
	tw = tower_create(F9, L)
	assert tw.embed(F9.gen()) == L.from_dlog(L.order // F9.order)


def test_prime_factors():
	assert prime_factors(1) == []
	assert prime_factors(12) == [2, 3]
	assert prime_factors(59048) == [2, 11, 61]
