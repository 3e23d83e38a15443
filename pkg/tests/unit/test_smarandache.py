"""
Tests for the Smarandache function family and the basis data
"""

import math

import pytest

from polyfunlab.errors import InvalidInputError
from polyfunlab.oracles import naive_smarandache
from polyfunlab.smarandache import (
    MultiIndex,
    S_d,
    basis_spec,
    e_star,
    is_factorial_multiple,
    q,
    s,
    s_d,
    s_star,
)


@pytest.mark.parametrize("n,expected", [(1, 0), (2, 2), (4, 4), (8, 4), (16, 6), (27, 9), (90, 6), (97, 97)])
def test_s_known_values(n, expected):
    assert s(n) == expected


def test_s_agrees_with_factorial_scan():
    for n in range(1, 300):
        assert s(n) == naive_smarandache(n)


def test_s_rejects_zero():
    with pytest.raises(InvalidInputError):
        s(0)


def test_q_is_smallest_prime_divisor():
    assert q(90) == 2
    assert q(45) == 3


class TestStarFunctions:
    @pytest.mark.parametrize("p,m,expected", [(3, 2, 2), (2, 4, 3), (5, 1, 1), (2, 2, 2)])
    def test_s_star(self, p, m, expected):
        assert s_star(p, m) == expected

    def test_s_star_is_minimal(self):
        for p in (2, 3, 5):
            for m in range(1, 12):
                x = s_star(p, m)
                assert (p ** x * math.factorial(x)) % p ** m == 0
                assert x == 1 or (p ** (x - 1) * math.factorial(x - 1)) % p ** m != 0

    def test_e_star_caps_at_m(self):
        assert e_star(3, 2, 1) == 1
        assert e_star(3, 2, 2) == 2
        assert e_star(2, 4, 2) == 3
        assert e_star(2, 4, 3) == 4

    def test_e_star_range(self):
        with pytest.raises(InvalidInputError):
            e_star(2, 4, 4)


class TestBasisSpec:
    def test_ninety(self):
        spec = basis_spec(90)
        assert spec.q == 2
        assert spec.betas == (6, 5, 3, 2)
        assert spec.alphas == (1, 3, 15, 45)
        assert spec.t == 4

    @pytest.mark.parametrize("n,betas,alphas", [
        (4, (4, 2), (1, 2)),
        (9, (6, 3), (1, 3)),
        (7, (7,), (1,)),
        (12, (4, 3, 2), (1, 2, 6)),
    ])
    def test_small_moduli(self, n, betas, alphas):
        spec = basis_spec(n)
        assert spec.betas == betas
        assert spec.alphas == alphas

    def test_structural_invariants(self):
        for n in range(2, 200):
            spec = basis_spec(n)
            assert spec.betas[0] == s(n)
            assert spec.betas[-1] == spec.q
            assert spec.alphas[0] == 1
            assert list(spec.betas) == sorted(set(spec.betas), reverse=True)
            assert all(a < b for a, b in zip(spec.alphas, spec.alphas[1:]))
            assert all(n % a == 0 for a in spec.alphas)

    def test_boundary_conventions(self):
        spec = basis_spec(90)
        assert spec.beta(0) == 0
        assert spec.beta(1) == 6
        assert spec.beta(spec.t + 1) == 0
        assert spec.alpha(spec.t + 1) == 90

    def test_rejects_unit_ring(self):
        with pytest.raises(InvalidInputError):
            basis_spec(1)


class TestMultiIndex:
    def test_degree_and_factorial(self):
        k = MultiIndex((2, 3))
        assert k.degree == 5
        assert k.dimension == 2
        assert k.factorial() == 12
        assert k.ep(2) == 2

    @pytest.mark.parametrize("bad", [(), (1, -1)])
    def test_rejects_invalid(self, bad):
        with pytest.raises(InvalidInputError):
            MultiIndex(bad)


def test_S_d_small_box():
    assert S_d(2, 2) == {MultiIndex(k) for k in [(0, 0), (0, 1), (1, 0), (1, 1)]}


def test_s_d_reduces_to_s_in_one_variable():
    for n in range(2, 60):
        assert s_d(n, 1) == s(n)


def test_S_d_members_do_not_divide():
    for k in S_d(12, 2):
        assert not is_factorial_multiple(12, k)
        assert k.factorial() % 12 != 0


def test_s_of_small_prime_powers():
    for p in (2, 3, 5, 7):
        for k in range(1, p + 1):
            assert s(p ** k) == k * p


def test_S_d_grows_along_divisibility():
    for m in range(2, 61):
        for n in range(2, m + 1):
            if m % n:
                continue
            for d in (1, 2):
                assert S_d(n, d) <= S_d(m, d)


def test_S_d_refuses_oversized_boxes():
    with pytest.raises(InvalidInputError, match="multi_index_max_points"):
        S_d(2, 40)
    with pytest.raises(InvalidInputError):
        s_d(2, 40)
