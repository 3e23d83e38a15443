"""
Multivariate polyfunctions over Z_n in d variables.

Polynomials are sparse maps MultiIndex -> coefficient. Monomial reduction
follows the divisibility criterion n | a*k!, and canonical forms are only
defined over prime-power moduli.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from .arith import FactoredCount, binom, factorize, fc_product, prime_power_parts, valuation
from .errors import InvalidInputError, ModulusMismatchError, NotPrimePowerError, NotReducibleError, ParseError
from .oracles import SpanBuilder, check_guard
from .polynomial import power_mod, rising_product
from .smarandache import MultiIndex, S_d, s, s_d

logger = logging.getLogger(__name__)


def _order_key(k: MultiIndex) -> Tuple[int, Tuple[int, ...]]:
    """Total degree first, then lexicographic"""
    return k.degree, tuple(k)


@dataclass(frozen=True)
class MultiPoly:
    modulus: int
    dimension: int
    terms: Tuple[Tuple[MultiIndex, int], ...] = ()

    def __post_init__(self):
        if self.modulus < 1 or self.dimension < 1:
            raise InvalidInputError(f"bad MultiPoly shape: modulus={self.modulus}, d={self.dimension}")
        merged: Dict[MultiIndex, int] = {}
        for k, c in self.terms:
            k = MultiIndex(k)
            if k.dimension != self.dimension:
                raise InvalidInputError(f"index {tuple(k)} does not have {self.dimension} components")
            merged[k] = (merged.get(k, 0) + c) % self.modulus
        cleaned = tuple(sorted(((k, c) for k, c in merged.items() if c), key=lambda kc: _order_key(kc[0])))
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def from_dict(cls, modulus: int, dimension: int, coeffs: Mapping[Tuple[int, ...], int]) -> MultiPoly:
        return cls(modulus, dimension, tuple(coeffs.items()))

    @classmethod
    def monomial(cls, modulus: int, k: Sequence[int], a: int = 1) -> MultiPoly:
        return cls(modulus, len(k), ((MultiIndex(k), a),))

    def as_dict(self) -> Dict[MultiIndex, int]:
        return dict(self.terms)

    def coeff(self, k: Sequence[int]) -> int:
        return self.as_dict().get(MultiIndex(k), 0)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree, -1 for the zero polynomial"""
        return max((k.degree for k, _ in self.terms), default=-1)

    def _check(self, other: MultiPoly) -> None:
        if (self.modulus, self.dimension) != (other.modulus, other.dimension):
            raise ModulusMismatchError(
                f"cannot combine Z_{self.modulus}^{self.dimension} with Z_{other.modulus}^{other.dimension}")

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        return MultiPoly(self.modulus, self.dimension, self.terms + other.terms)

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.modulus, self.dimension, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def scale(self, a: int) -> MultiPoly:
        return MultiPoly(self.modulus, self.dimension, tuple((k, a * c) for k, c in self.terms))

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        product = [
            (tuple(i + j for i, j in zip(k, l)), a * b)
            for (k, a), (l, b) in itertools.product(self.terms, other.terms)
        ]
        return MultiPoly(self.modulus, self.dimension, tuple(product))

    def eval(self, x: Sequence[int]) -> int:
        return eval_multi(self, x)

    def value_table(self) -> Tuple[int, ...]:
        """Values on Z_n^d in lexicographic point order"""
        return tuple(eval_multi(self, x) for x in itertools.product(range(self.modulus), repeat=self.dimension))

    def __str__(self) -> str:
        return format_multipoly(self)


def eval_multi(p: MultiPoly, x: Sequence[int]) -> int:
    if len(x) != p.dimension:
        raise InvalidInputError(f"point {tuple(x)} has {len(x)} components, expected {p.dimension}")
    n = p.modulus
    total = 0
    for k, c in p.terms:
        term = c
        for xi, ki in zip(x, k):
            term = term * pow(xi, ki, n) % n
        total += term
    return total % n


def is_null_multi(p: MultiPoly) -> bool:
    check_guard(p.modulus ** p.dimension, "multi_null_max_points", "point count n^d")
    return all(eval_multi(p, x) == 0 for x in itertools.product(range(p.modulus), repeat=p.dimension))


def is_reducible_monomial(n: int, a: int, k: Sequence[int]) -> bool:
    """n | a * k!, checked prime by prime"""
    k = MultiIndex(k)
    a %= n
    if a == 0:
        return True
    return all(valuation(p, a) + k.ep(p) >= e for p, e in factorize(n))


def _coordinate_poly(n: int, d: int, i: int, coeffs: Sequence[int]) -> MultiPoly:
    """A univariate coefficient list placed on variable x_i"""
    terms = tuple((tuple(j if axis == i else 0 for axis in range(d)), c) for j, c in enumerate(coeffs))
    return MultiPoly(n, d, terms)


def reduce_monomial(n: int, a: int, k: Sequence[int]) -> MultiPoly:
    """
    A polynomial of total degree < |k| agreeing with a*x^k on Z_n^d.

    q(x) = a * prod_i prod_{l=1}^{k_i} (x_i + l) is null when n | a*k!, and
    a*x^k - q(x) drops the leading monomial.
    """
    k = MultiIndex(k)
    d = k.dimension
    if not is_reducible_monomial(n, a, k):
        raise NotReducibleError(f"{a}*x^{tuple(k)} is not reducible modulo {n}")
    q = MultiPoly(n, d, ((MultiIndex([0] * d), a),))
    for i, ki in enumerate(k):
        q = q * _coordinate_poly(n, d, i, rising_product(ki, n).coeffs)
    return MultiPoly.monomial(n, k, a) - q


def extract_leading_coefficient(q: MultiPoly, k: Sequence[int]) -> int:
    """
    Iterated finite difference of q over the box [0..k_1] x ... x [0..k_d].

    For q with total degree <= |k| this is q_k * k! mod n.
    """
    k = MultiIndex(k)
    if k.dimension != q.dimension:
        raise InvalidInputError(f"index {tuple(k)} does not match dimension {q.dimension}")
    if q.degree > k.degree:
        raise InvalidInputError(f"q has total degree {q.degree} > |k| = {k.degree}")
    n = q.modulus
    total = 0
    for j in itertools.product(*(range(ki + 1) for ki in k)):
        weight = math.prod((-1) ** (ki - ji) * binom(ki, ji) for ki, ji in zip(k, j))
        total += weight * eval_multi(q, j)
    return total % n


def _canonical_bound(p: int, m: int, k: MultiIndex) -> int:
    e = k.ep(p)
    return p ** (m - e) if e < m else 1


def _shrink_exponents(poly: MultiPoly) -> MultiPoly:
    """Same function, every exponent below s(n), via x_i^k mod prod_{l=1}^{s(n)}(x_i + l)"""
    n, d = poly.modulus, poly.dimension
    top = s(n)
    if all(max(k, default=0) < top for k, _ in poly.terms):
        return poly
    relation = rising_product(top, n)
    result = MultiPoly(n, d)
    for k, c in poly.terms:
        term = MultiPoly(n, d, (((0,) * d, c),))
        for i, ki in enumerate(k):
            coeffs = power_mod(ki, relation).coeffs if ki >= top else (0,) * ki + (1,)
            term = term * _coordinate_poly(n, d, i, coeffs)
        result = result + term
    return result


def canonicalize_multi(poly: MultiPoly) -> MultiPoly:
    """
    Canonical representative over Z_{p^m}: monomials in S_d(p^m) only, with
    coefficient of x^k below p^{m - e_p(k)}.

    Indices are settled from the largest (total degree, lex) downwards; every
    reduction only introduces strictly lower total degrees.
    """
    n = poly.modulus
    try:
        p, m = prime_power_parts(n)
    except InvalidInputError:
        raise NotPrimePowerError(f"canonical forms need a prime-power modulus, got {n}")
    d = poly.dimension
    coeffs = _shrink_exponents(poly).as_dict()
    heap = [(-k.degree, tuple(-c for c in k), k) for k in coeffs]
    heapq.heapify(heap)
    queued = set(coeffs)
    while heap:
        _, _, k = heapq.heappop(heap)
        c = coeffs.get(k, 0)
        bound = _canonical_bound(p, m, k)
        excess = c - c % bound
        if not excess:
            continue
        coeffs[k] = c % bound
        for l, b in reduce_monomial(n, excess, k).terms:
            coeffs[l] = (coeffs.get(l, 0) + b) % n
            if l not in queued:
                queued.add(l)
                heapq.heappush(heap, (-l.degree, tuple(-c for c in l), l))
        logger.debug(f"canonicalize_multi Z_{n}: reduced {excess}*x^{tuple(k)}")
    return MultiPoly.from_dict(n, d, coeffs)


def canonical_multi_bounds(p: int, m: int, d: int) -> Dict[MultiIndex, int]:
    return {k: _canonical_bound(p, m, k) for k in S_d(p ** m, d)}


def canonical_multi_count(p: int, m: int, d: int) -> FactoredCount:
    return fc_product(FactoredCount.from_int(b) for b in canonical_multi_bounds(p, m, d).values())


def enumerate_canonical_multi(p: int, m: int, d: int) -> Iterator[MultiPoly]:
    check_guard(canonical_multi_count(p, m, d).to_int(), "polyfunction_scan_max", "canonical form count")
    bounds = sorted(canonical_multi_bounds(p, m, d).items(), key=lambda kb: _order_key(kb[0]))
    n = p ** m
    for coeffs in itertools.product(*(range(b) for _, b in bounds)):
        yield MultiPoly(n, d, tuple(zip((k for k, _ in bounds), coeffs)))


def psi_d(p: int, m: int, d: int) -> FactoredCount:
    """prod over k in S_d(p^m) of p^{m - e_p(k)}"""
    return FactoredCount.prime_power(p, sum(m - k.ep(p) for k in S_d(p ** m, d)))


def psi_d_alt(p: int, m: int, d: int) -> FactoredCount:
    """p^{sum_{j=1}^{m} s_d(p^j)}"""
    return FactoredCount.prime_power(p, sum(s_d(p ** j, d) for j in range(1, m + 1)))


def psi_d_general(n: int, d: int) -> FactoredCount:
    """Product of psi_d over the prime-power parts of n"""
    return fc_product(psi_d(p, a, d) for p, a in factorize(n))


def _monomial_table(n: int, k: Sequence[int], points: List[Tuple[int, ...]]) -> List[int]:
    return [math.prod(pow(xi, ki, n) for xi, ki in zip(x, k)) % n for x in points]


def psi_d_bruteforce(n: int, d: int) -> int:
    """Size of the span of the monomial value tables with exponents in {0..n}^d"""
    check_guard(n, "multi_span_max_modulus", "modulus")
    check_guard(n ** d, "multi_span_max_points", "point count n^d")
    points = list(itertools.product(range(n), repeat=d))
    builder = SpanBuilder(n, len(points))
    builder.add_all(_monomial_table(n, k, points) for k in itertools.product(range(n + 1), repeat=d))
    return builder.size()


def is_reducible_bruteforce(n: int, a: int, k: Sequence[int]) -> bool:
    """Search for a polynomial of total degree < |k| agreeing with a*x^k"""
    k = MultiIndex(k)
    d = k.dimension
    check_guard(n ** d, "multi_span_max_points", "point count n^d")
    points = list(itertools.product(range(n), repeat=d))
    lower = (l for l in itertools.product(range(k.degree), repeat=d) if sum(l) < k.degree)
    builder = SpanBuilder(n, len(points)).add_all(_monomial_table(n, l, points) for l in lower)
    target = [a * v for v in _monomial_table(n, k, points)]
    return builder.contains(target)


def parse_multipoly(text: str) -> MultiPoly:
    """
    Parse the term-per-line format:

        mod=8 d=2
        1 1 : 2
        0 0 : 5

    Blank lines and lines starting with '#' are skipped.
    """
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines:
        raise ParseError("empty polynomial file")
    header = dict(field.split("=", 1) for field in lines[0].split() if "=" in field)
    try:
        n, d = int(header["mod"]), int(header["d"])
    except (KeyError, ValueError):
        raise ParseError(f"bad header {lines[0]!r}, expected 'mod=<n> d=<d>'")
    terms = []
    for line in lines[1:]:
        if ":" not in line:
            raise ParseError(f"bad term line {line!r}, expected 'k1 ... kd : c'")
        left, right = line.split(":", 1)
        try:
            k = tuple(int(t) for t in left.split())
            c = int(right.strip())
        except ValueError:
            raise ParseError(f"bad term line {line!r}")
        if len(k) != d:
            raise ParseError(f"term {line!r} has {len(k)} exponents, expected {d}")
        terms.append((k, c))
    return MultiPoly(n, d, tuple(terms))


def format_multipoly(p: MultiPoly) -> str:
    lines = [f"mod={p.modulus} d={p.dimension}"]
    for k, c in reversed(p.terms):
        lines.append(f"{' '.join(str(i) for i in k)} : {c}")
    return "\n".join(lines)
