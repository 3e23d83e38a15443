"""
Tests for the null-polynomial basis, canonical forms, counting and structure
"""

import pytest

from polyfunlab.arith import FactoredCount, gcd_factorial
from polyfunlab.errors import (
    InvalidInputError,
    ModulusMismatchError,
    NotNullPolynomialError,
    OracleGuardError,
)
from polyfunlab.oracles import quotient_order_bruteforce, random_null_polynomial, random_poly
from polyfunlab.polyfun import (
    GroupDecomposition,
    basic_null_poly,
    canonical_count,
    canonicalize,
    coefficient_bounds,
    count_r0_idempotents,
    decompose_null,
    enumerate_canonical,
    equal_as_functions,
    group_structure,
    group_structure_bruteforce,
    group_structure_prime_power,
    has_polyfunction_inverse,
    ideal_basis_star,
    idempotents,
    in_ideal_Ipm,
    is_unit,
    monomial_quotient_order,
    null_count,
    polyfunction_span,
    psi,
    psi_bruteforce,
    psi_prime_power,
    psi_prime_power_closed,
    recompose,
    unit_count_3k,
    unit_count_bruteforce,
    voll_check,
)
from polyfunlab.polynomial import Poly, is_null, rising_product
from polyfunlab.smarandache import basis_spec, s


class TestBasicNullPolys:
    def test_b4_over_ninety(self):
        assert basic_null_poly(90, 4).coeffs == (0, 45, 45)

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_prime_modulus_gives_fermat_polynomial(self, p):
        expected = Poly(p, (0, -1) + (0,) * (p - 2) + (1,))
        assert basic_null_poly(p, 1) == expected

    def test_every_basis_element_is_null(self):
        for n in range(2, 60):
            for k in range(1, basis_spec(n).t + 1):
                b = basic_null_poly(n, k)
                assert is_null(b)
                assert b.degree == basis_spec(n).beta(k)

    def test_index_range(self):
        with pytest.raises(InvalidInputError):
            basic_null_poly(90, 5)


class TestDecomposition:
    def test_single_basis_element(self):
        deco = decompose_null(basic_null_poly(90, 2))
        assert deco.nonzero() == {2: Poly(30, (1,))}

    def test_mixed_combination(self):
        p = Poly.x(90) * basic_null_poly(90, 1) + basic_null_poly(90, 3)
        deco = decompose_null(p)
        assert deco.cofactor(1) == Poly(90, (0, 1))
        assert deco.cofactor(3) == Poly(6, (1,))
        assert deco.cofactor(2).is_zero()
        assert deco.cofactor(4).is_zero()

    def test_cofactor_moduli(self):
        deco = decompose_null(Poly.zero(90))
        assert [q.modulus for _, q in deco.cofactors] == [90, 30, 6, 2]
        assert deco.nonzero() == {}
        assert recompose(deco).is_zero()

    def test_roundtrip_random_null_polynomials(self, rng):
        for n in (12, 36, 90, 64):
            for _ in range(20):
                p = random_null_polynomial(n, rng)
                deco = decompose_null(p)
                assert recompose(deco) == p
                spec = basis_spec(n)
                for k in range(2, spec.t + 1):
                    assert deco.cofactor(k).degree < spec.beta(k - 1) - spec.beta(k)

    def test_rejects_non_null(self):
        with pytest.raises(NotNullPolynomialError):
            decompose_null(Poly.x(90))


class TestCanonicalize:
    def test_null_polynomial_collapses_to_zero(self):
        assert canonicalize(Poly(90, (0, 45, 45))).coeffs == (0,) * 6

    def test_identity_is_already_canonical(self):
        assert canonicalize(Poly.x(90)).coeffs == (0, 1, 0, 0, 0, 0)

    def test_high_power_is_reduced(self, rng):
        for n in (4, 12, 90):
            for _ in range(20):
                p = random_poly(n, s(n) + rng.randrange(10), rng)
                form = canonicalize(p)
                assert len(form.coeffs) == s(n)
                assert all(0 <= c < b for c, b in zip(form.coeffs, coefficient_bounds(n)))
                assert form.value_table() == p.value_table()

    def test_huge_monomial_keeps_values(self):
        p = Poly.monomial(90, 5000)
        form = canonicalize(p)
        assert len(form.coeffs) == s(90)
        assert form.value_table() == tuple(pow(x, 5000, 90) for x in range(90))

    def test_equality_matches_value_tables(self, rng):
        for _ in range(200):
            n = rng.randint(2, 100)
            p = random_poly(n, rng.randint(0, 12), rng)
            if rng.random() < 0.5:
                q = p + random_null_polynomial(n, rng)
            else:
                q = random_poly(n, rng.randint(0, 12), rng)
            assert equal_as_functions(p, q) == (p.value_table() == q.value_table())

    def test_equal_as_functions(self):
        assert equal_as_functions(Poly.monomial(5, 5), Poly.x(5))
        assert not equal_as_functions(Poly.x(5), Poly(5, (1, 1)))
        with pytest.raises(ModulusMismatchError):
            equal_as_functions(Poly.x(4), Poly.x(5))

    def test_canonical_forms_are_distinct_functions(self):
        tables = {c.value_table() for c in enumerate_canonical(12)}
        assert len(tables) == canonical_count(12).to_int() == psi(12).to_int()


class TestCounting:
    def test_psi_ninety(self):
        assert psi(90).to_int() == 246037500
        assert str(psi(90)) == "2^2 * 3^9 * 5^5"

    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 4), (4, 64), (6, 108), (9, 19683)])
    def test_psi_small(self, n, expected):
        assert psi(n).to_int() == expected

    def test_psi_matches_span(self):
        for n in range(2, 17):
            assert psi(n).to_int() == psi_bruteforce(n)

    def test_span_oracle_guard(self):
        with pytest.raises(OracleGuardError):
            psi_bruteforce(17)

    def test_cached_span_is_frozen(self):
        span = polyfunction_span(8)
        assert span.frozen
        with pytest.raises(InvalidInputError):
            span.add([1] * 8)
        assert polyfunction_span(8).size() == psi(8).to_int()

    def test_cached_span_rechecks_guard(self, monkeypatch):
        polyfunction_span(8)
        monkeypatch.setattr("polyfunlab.oracles.get_limit", lambda name: 4)
        with pytest.raises(OracleGuardError):
            polyfunction_span(8)

    def test_prime_power_forms(self):
        assert psi_prime_power(5, 1) == FactoredCount.prime_power(5, 5)
        assert psi_prime_power(3, 2) == FactoredCount.prime_power(3, 9)
        for p in (2, 3, 5, 7):
            for m in range(1, p + 1):
                assert psi_prime_power(p, m) == psi_prime_power_closed(p, m)
                assert psi(p ** m) == psi_prime_power(p, m)

    def test_closed_form_range(self):
        with pytest.raises(InvalidInputError):
            psi_prime_power_closed(3, 4)
        with pytest.raises(InvalidInputError):
            psi_prime_power(4, 1)

    def test_psi_is_multiplicative(self):
        assert psi(90) == psi(2) * psi(9) * psi(5)

    def test_null_count_complements_psi(self):
        assert null_count(90).to_int() == 2160
        for n in range(2, 200):
            assert psi(n) * null_count(n) == FactoredCount.from_int(n) ** s(n)
            assert canonical_count(n) == psi(n)


class TestGroupStructure:
    def test_z4(self):
        group = group_structure(4)
        assert group.orders == (4, 4, 2, 2)
        assert str(group) == "Z_4^2 ⊕ Z_2^2"
        assert group.multiplicities() == [(4, 2), (2, 2)]

    def test_prime(self):
        assert group_structure(3).orders == (3, 3, 3)

    def test_order_is_psi(self):
        for n in range(2, 120):
            assert group_structure(n).order() == psi(n)

    def test_prime_power_formula(self):
        for p, m in [(2, 1), (2, 2), (2, 3), (2, 5), (3, 2), (3, 4), (5, 3)]:
            assert group_structure_prime_power(p, m) == group_structure(p ** m)

    def test_matches_smith_normal_form(self):
        for n in (2, 4, 6, 8, 9, 12):
            assert group_structure(n) == group_structure_bruteforce(n)

    def test_comparison_ignores_presentation(self):
        assert GroupDecomposition.from_orders([6, 2]) == GroupDecomposition.from_orders([2, 3, 2])
        assert GroupDecomposition.render(()) == "0"

    def test_monomial_quotient_order(self):
        assert [monomial_quotient_order(4, k) for k in range(4)] == [4, 2, 2, 1]
        for n in (4, 8, 9, 12):
            for k in range(s(n) + 1):
                assert monomial_quotient_order(n, k) == quotient_order_bruteforce(n, k)


class TestUnits:
    def test_pointwise_criterion(self):
        assert is_unit(Poly.constant(9, 1))
        assert is_unit(Poly(9, (1, 3)))
        assert not is_unit(Poly.x(9))

    def test_three_power_formula(self):
        assert unit_count_3k(1).to_int() == 8
        assert unit_count_3k(2).to_int() == 5832
        assert unit_count_bruteforce(3) == 8

    def test_inverse_exists_exactly_for_units(self):
        for n in (2, 3, 4, 6):
            for form in enumerate_canonical(n):
                f = form.to_poly()
                assert has_polyfunction_inverse(f) == is_unit(f)


class TestIdempotentsAndIdeal:
    def test_eps0_over_z3(self):
        eps = idempotents(3, 1)
        assert eps[0].coeffs == (1, 0, 2)
        assert eps[0].value_table() == (1, 0, 0)

    def test_idempotents_are_indicators(self):
        for p, m in [(2, 2), (3, 2), (5, 1)]:
            n = p ** m
            for j, eps in enumerate(idempotents(p, m)):
                assert eps.value_table() == tuple(1 if x % p == j else 0 for x in range(n))

    def test_count_r0_idempotents(self):
        assert count_r0_idempotents(2, 2) == 2

    def test_ideal_basis(self):
        basis = ideal_basis_star(2, 2)
        assert basis[0] == Poly(4, (0, 2))
        assert basis[1] == Poly(4, (0, 2, 1))
        assert all(in_ideal_Ipm(b, 2, 2) for b in basis)

    def test_ideal_membership(self):
        assert in_ideal_Ipm(Poly.zero(9), 3, 2)
        assert not in_ideal_Ipm(Poly.constant(9, 1), 3, 2)
        with pytest.raises(ModulusMismatchError):
            in_ideal_Ipm(Poly.zero(8), 3, 2)


class TestWindowCriterion:
    def test_constant_on_single_point_fails(self):
        assert not voll_check(Poly(2, (1,)), 0, 1)

    def test_basis_element_passes(self):
        assert voll_check(rising_product(6, 90), 0, 6)

    def test_degree_above_window(self):
        with pytest.raises(InvalidInputError):
            voll_check(rising_product(6, 90), 0, 5)

    def test_factorial_step_coefficients(self):
        n = 90
        step = n // gcd_factorial(n, 4)
        p = Poly(n, (0, 0, 0, 0, step))
        assert voll_check(p, 3, 4)
