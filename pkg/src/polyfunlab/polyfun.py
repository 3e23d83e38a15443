"""
Polyfunctions over Z_n: the null-polynomial basis and its decomposition,
canonical representatives, the counting formulas, the additive group
structure, units, and the idempotent / ideal structure over Z_{p^m}.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

from sympy import Matrix, ZZ, isprime
from sympy.matrices.normalforms import smith_normal_form

from .arith import (
    FactoredCount,
    binom,
    euler_phi,
    factorize,
    fc_product,
    gcd_factorial,
    legendre_ep,
)
from .errors import (
    InvalidInputError,
    InvariantViolation,
    ModulusMismatchError,
    NotNullPolynomialError,
)
from .oracles import SpanBuilder, check_guard, monomial_table
from .polynomial import Poly, is_null, monic_divrem, rising_product
from .smarandache import basis_spec, e_star, s, s_star

logger = logging.getLogger(__name__)


def _require_prime(p: int) -> None:
    if not isprime(p):
        raise InvalidInputError(f"{p} is not a prime")


def basic_null_poly(n: int, k: int) -> Poly:
    """b_k(x) = alpha_k * prod_{i=1}^{beta_k} (x + i) over Z_n"""
    spec = basis_spec(n)
    if not 1 <= k <= spec.t:
        raise InvalidInputError(f"basis index {k} out of range 1..{spec.t} for n={n}")
    return rising_product(spec.beta(k), n).scale(spec.alpha(k))


@dataclass(frozen=True)
class NullDecomposition:
    """Cofactors q_k of p = sum q_k * b_k, q_k living over Z_{n / alpha_k}"""
    n: int
    cofactors: Tuple[Tuple[int, Poly], ...]

    def cofactor(self, k: int) -> Poly:
        for index, q in self.cofactors:
            if index == k:
                return q
        raise InvalidInputError(f"no cofactor with index {k}")

    def nonzero(self) -> Dict[int, Poly]:
        return {k: q for k, q in self.cofactors if not q.is_zero()}


def decompose_null(p: Poly) -> NullDecomposition:
    """
    Split a null-polynomial over the basis b_1, ..., b_t.

    Stage k divides the running remainder by alpha_k, divides the quotient
    polynomial by the monic prod_{i=1}^{beta_k}(x + i) over Z_{n/alpha_k} and
    lifts the remainder back by alpha_k. The final remainder must vanish.
    """
    n = p.modulus
    if n < 2:
        raise InvalidInputError(f"decomposition needs n >= 2, got {n}")
    if not is_null(p):
        raise NotNullPolynomialError(f"{p} is not a null-polynomial over Z_{n}")

    spec = basis_spec(n)
    remainder = p
    cofactors: List[Tuple[int, Poly]] = []
    for k in range(1, spec.t + 1):
        beta, alpha = spec.beta(k), spec.alpha(k)
        if any(c % alpha for c in remainder.coeffs):
            raise InvariantViolation(
                f"stage {k} over Z_{n}: alpha={alpha} does not divide remainder {remainder}")
        sub = n // alpha
        reduced = Poly(sub, [c // alpha for c in remainder.coeffs])
        quotient, rest = monic_divrem(reduced, rising_product(beta, sub))
        cofactors.append((k, quotient))
        remainder = Poly(n, [alpha * c for c in rest.coeffs])
        logger.debug(f"decompose Z_{n} stage {k}: beta={beta} alpha={alpha} q={quotient} rem={remainder}")

    if not remainder.is_zero():
        raise InvariantViolation(f"nonzero final remainder {remainder} over Z_{n}")
    return NullDecomposition(n, tuple(cofactors))


def recompose(decomposition: NullDecomposition) -> Poly:
    n = decomposition.n
    total = Poly(n)
    for k, q in decomposition.cofactors:
        if not q.is_zero():
            total = total + q.with_modulus(n) * basic_null_poly(n, k)
    return total


@dataclass(frozen=True)
class CanonicalPolyfunction:
    """Coefficients c_0..c_{s(n)-1} with 0 <= c_k < n / gcd(n, k!)"""
    n: int
    coeffs: Tuple[int, ...]

    def to_poly(self) -> Poly:
        return Poly(self.n, self.coeffs)

    def value_table(self) -> Tuple[int, ...]:
        return self.to_poly().value_table()


def coefficient_bounds(n: int) -> Tuple[int, ...]:
    return tuple(n // gcd_factorial(n, k) for k in range(s(n)))


def canonicalize(p: Poly) -> CanonicalPolyfunction:
    """
    Reduce p to the canonical representative of its polyfunction.

    Degrees are walked from the top down; the part of c_k divisible by
    n / gcd(n, k!) is removed with the null polynomial given by that multiple
    of prod_{i=1}^{k}(x + i), which only touches lower degrees.
    """
    n = p.modulus
    top = s(n)
    if n > 1 and p.degree >= top:
        p = monic_divrem(p, rising_product(top, n))[1]
    coeffs = list(p.coeffs)
    for k in range(len(coeffs) - 1, 0, -1):
        c = coeffs[k] % n
        bound = n // gcd_factorial(n, k)
        excess = c - c % bound
        if excess:
            relation = rising_product(k, n).coeffs
            for j, b in enumerate(relation):
                coeffs[j] = (coeffs[j] - excess * b) % n
    padded = [coeffs[k] % n if k < len(coeffs) else 0 for k in range(top)]
    return CanonicalPolyfunction(n, tuple(padded))


def equal_as_functions(p: Poly, q: Poly) -> bool:
    if p.modulus != q.modulus:
        raise ModulusMismatchError(f"moduli differ: {p.modulus} vs {q.modulus}")
    return canonicalize(p) == canonicalize(q)


def enumerate_canonical(n: int) -> Iterator[CanonicalPolyfunction]:
    """Every canonical representative over Z_n, in lexicographic order"""
    check_guard(canonical_count(n).to_int(), "polyfunction_scan_max", f"polyfunction count of Z_{n}")
    for coeffs in itertools.product(*(range(b) for b in coefficient_bounds(n))):
        yield CanonicalPolyfunction(n, coeffs)


def psi(n: int) -> FactoredCount:
    """Number of polyfunctions over Z_n, prod_k gcd(n, beta_k!)^(beta_k - beta_{k-1})"""
    if n < 1:
        raise InvalidInputError(f"psi needs n >= 1, got {n}")
    if n == 1:
        return FactoredCount.one()
    spec = basis_spec(n)
    return fc_product(
        FactoredCount.from_int(gcd_factorial(n, spec.beta(k))) ** (spec.beta(k) - spec.beta(k - 1))
        for k in range(1, spec.t + 1)
    )


def psi_prime_power(p: int, m: int) -> FactoredCount:
    _require_prime(p)
    if m < 1:
        raise InvalidInputError(f"exponent must be >= 1, got {m}")
    return FactoredCount.prime_power(p, sum(s(p ** k) for k in range(1, m + 1)))


def psi_prime_power_closed(p: int, m: int) -> FactoredCount:
    """p^(p * C(m+1, 2)), valid for 1 <= m <= p"""
    _require_prime(p)
    if not 1 <= m <= p:
        raise InvalidInputError(f"closed form needs 1 <= m <= p, got p={p}, m={m}")
    return FactoredCount.prime_power(p, p * binom(m + 1, 2))


def null_count(n: int) -> FactoredCount:
    """Null-polynomials of degree < s(n): prod_{i=2}^{t} (n/alpha_i)^(beta_{i-1} - beta_i)"""
    spec = basis_spec(n)
    return fc_product(
        FactoredCount.from_int(n // spec.alpha(i)) ** (spec.beta(i - 1) - spec.beta(i))
        for i in range(2, spec.t + 1)
    )


def canonical_count(n: int) -> FactoredCount:
    """Number of admissible canonical coefficient tuples"""
    return fc_product(FactoredCount.from_int(b) for b in coefficient_bounds(n))


def polyfunction_span(n: int) -> SpanBuilder:
    """Span of the monomial value tables x^0..x^n inside Z_n^n, frozen"""
    check_guard(n, "span_max_modulus", "modulus")
    return _build_polyfunction_span(n)


@lru_cache(maxsize=32)
def _build_polyfunction_span(n: int) -> SpanBuilder:
    return SpanBuilder(n, n).add_all(monomial_table(n, k) for k in range(n + 1)).freeze()


def psi_bruteforce(n: int) -> int:
    """
    Size of the additive span of the monomial value tables x^0..x^n in Z_n^n.

    Monomials up to degree n cover every polyfunction since s(n) <= n.
    """
    check_guard(n, "span_max_modulus", "modulus")
    if n == 1:
        return 1
    return polyfunction_span(n).size()


def primary_form(orders) -> Tuple[int, ...]:
    """Split cyclic orders into prime-power orders, drop trivial ones, sort descending"""
    refined: List[int] = []
    for order in orders:
        if order > 1:
            refined.extend(p ** a for p, a in factorize(order))
    return tuple(sorted(refined, reverse=True))


@dataclass(frozen=True)
class GroupDecomposition:
    """Finite abelian group as a direct sum of cyclic groups, compared in primary form"""
    orders: Tuple[int, ...]
    presented: Tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def from_orders(cls, orders) -> GroupDecomposition:
        orders = tuple(orders)
        return cls(primary_form(orders), tuple(o for o in orders if o > 1))

    def order(self) -> FactoredCount:
        return fc_product(FactoredCount.from_int(o) for o in self.orders)

    def multiplicities(self) -> List[Tuple[int, int]]:
        return [(o, len(list(group))) for o, group in itertools.groupby(self.orders)]

    @staticmethod
    def render(orders) -> str:
        if not orders:
            return "0"
        parts = []
        for o, group in itertools.groupby(orders):
            count = len(list(group))
            parts.append(f"Z_{o}" if count == 1 else f"Z_{o}^{count}")
        return " ⊕ ".join(parts)

    def __str__(self) -> str:
        return self.render(self.orders)


def group_structure(n: int) -> GroupDecomposition:
    """alpha_{k+1} with multiplicity beta_k - beta_{k+1}, k = 1..t"""
    spec = basis_spec(n)
    orders: List[int] = []
    for k in range(1, spec.t + 1):
        orders.extend([spec.alpha(k + 1)] * (spec.beta(k) - spec.beta(k + 1)))
    return GroupDecomposition.from_orders(orders)


def group_structure_prime_power(p: int, m: int) -> GroupDecomposition:
    """p copies of Z_{p^{m - e_p(pk)}} for k = 0..s(p^m)/p - 1"""
    _require_prime(p)
    orders: List[int] = []
    for k in range(s(p ** m) // p):
        orders.extend([p ** (m - legendre_ep(p, p * k))] * p)
    return GroupDecomposition.from_orders(orders)


def group_structure_bruteforce(n: int) -> GroupDecomposition:
    """Smith normal form of M[k][x] = x^k mod n, k < s(n), x < n"""
    check_guard(n, "span_max_modulus", "modulus")
    rows = [monomial_table(n, k) for k in range(s(n))]
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diagonal = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    logger.debug(f"SNF diagonal for Z_{n}: {diagonal}")
    return GroupDecomposition.from_orders(n // math.gcd(d, n) for d in diagonal)


def monomial_quotient_order(n: int, k: int) -> int:
    """Order of x^{k+1} modulo polyfunctions of degree <= k: alpha_j for beta_j <= k+1 < beta_{j-1}"""
    if k < 0:
        raise InvalidInputError(f"k must be >= 0, got {k}")
    spec = basis_spec(n)
    for j in range(1, spec.t + 1):
        if spec.beta(j) <= k + 1:
            return spec.alpha(j)
    return n


def is_unit(f: Poly) -> bool:
    """Invertible polyfunction iff every value is a unit of Z_n"""
    n = f.modulus
    return all(math.gcd(f.eval(x), n) == 1 for x in range(n))


def unit_count_3k(k: int) -> FactoredCount:
    """(2/3)^3 * psi(3^k)"""
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    return FactoredCount.of({2: 3}) * psi_prime_power(3, k) / FactoredCount.of({3: 3})


def unit_count_bruteforce(n: int) -> int:
    return sum(1 for c in enumerate_canonical(n) if is_unit(c.to_poly()))


def has_polyfunction_inverse(f: Poly) -> bool:
    """Search for a polyfunction g with f*g = 1 pointwise"""
    n = f.modulus
    check_guard(n, "span_max_modulus", "modulus")
    values = f.value_table()
    if any(math.gcd(v, n) != 1 for v in values):
        return False
    return polyfunction_span(n).contains([pow(v, -1, n) for v in values])


def _prime_power_modulus(p: int, m: int) -> int:
    _require_prime(p)
    if m < 1:
        raise InvalidInputError(f"exponent must be >= 1, got {m}")
    n = p ** m
    check_guard(n, "idempotent_max_modulus", "modulus")
    return n


def idempotents(p: int, m: int) -> List[Poly]:
    """eps_j(x) = eps_0(x - j) with eps_0(x) = 1 - x^{m phi(p^m)}, j = 0..p-1"""
    n = _prime_power_modulus(p, m)
    eps0 = Poly.constant(n, 1) - Poly.monomial(n, m * euler_phi(n))
    return [eps0.translate(-j) for j in range(p)]


def count_r0_idempotents(p: int, m: int) -> int:
    """Idempotent value tables among polyfunctions vanishing off pZ"""
    n = _prime_power_modulus(p, m)
    supported = {
        table for table in (c.value_table() for c in enumerate_canonical(n))
        if all(table[x] == 0 for x in range(n) if x % p)
    }
    return sum(1 for table in supported if all(v * v % n == v for v in table))


def ideal_basis_star(p: int, m: int) -> List[Poly]:
    """b*_k(x) = p^{m - e*(k)} prod_{j=1}^{k}(x + jp), k = 1..s*(p, m)"""
    n = _prime_power_modulus(p, m)
    return [
        rising_product(k, n, step=p).scale(p ** (m - e_star(p, m, k)))
        for k in range(1, s_star(p, m) + 1)
    ]


def in_ideal_Ipm(f: Poly, p: int, m: int) -> bool:
    """f(jp) = 0 for every multiple jp in Z_{p^m}"""
    n = p ** m
    if f.modulus != n:
        raise ModulusMismatchError(f"expected modulus {n}, got {f.modulus}")
    return all(f.eval(j * p) == 0 for j in range(p ** (m - 1)))


def voll_check(p: Poly, alpha: int, r: int) -> bool:
    """
    Coefficient condition a_k * r! = 0 mod n for a polynomial of degree <= r.

    ``alpha`` names the window alpha..alpha+r the polynomial is assumed to
    vanish on; the condition itself does not depend on it.
    """
    if p.degree > r:
        raise InvalidInputError(f"degree {p.degree} exceeds window length {r}")
    n = p.modulus
    fact = math.factorial(r) % n
    return all(c * fact % n == 0 for c in p.coeffs)
