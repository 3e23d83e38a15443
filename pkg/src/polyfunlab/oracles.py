"""
Independent brute-force engines and seeded generators.

Nothing here relies on the closed formulas it is used to check: the span
engine only knows vectors over Z_n, and the generators build their inputs
straight from the definitions.
"""

from __future__ import annotations

import logging
import math
import random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

try:
    from sympy import igcdex
except ImportError:
    from sympy.core.intfunc import igcdex

from config import get_limit

from .arith import gcd_factorial
from .errors import InvalidInputError, OracleGuardError
from .polynomial import Poly, rising_product
from .smarandache import basis_spec, s

logger = logging.getLogger(__name__)


def check_guard(value: int, limit_name: str, what: str) -> None:
    """Refuse oracle inputs beyond the configured guard"""
    limit = get_limit(limit_name)
    if value > limit:
        raise OracleGuardError(f"{what} = {value} exceeds the oracle guard {limit_name} = {limit}")


class SpanBuilder:
    """
    Additive subgroup of Z_n^N generated by the vectors added so far.

    Rows are kept in echelon form keyed by pivot column, each pivot entry a
    proper divisor g_c of n. Whenever a pivot row is stored, the multiple that
    kills its pivot entry is absorbed as well, so every element has exactly
    one expansion sum x_c * row_c with 0 <= x_c < n / g_c. A pivot is only
    ever replaced by a proper divisor of itself, which bounds the work.
    """

    def __init__(self, modulus: int, length: int):
        if modulus < 1 or length < 0:
            raise InvalidInputError(f"bad span shape: modulus={modulus}, length={length}")
        self.modulus = modulus
        self.length = length
        self.rows: Dict[int, List[int]] = {}
        self.frozen = False

    def freeze(self) -> SpanBuilder:
        """Refuse further additions; shared spans are frozen"""
        self.frozen = True
        return self

    def add(self, vector: Sequence[int]) -> None:
        if self.frozen:
            raise InvalidInputError("span is frozen and takes no more vectors")
        self._check_length(vector)
        n = self.modulus
        pending = [([v % n for v in vector], 0)]
        while pending:
            v, start = pending.pop()
            self._absorb(v, start, pending)

    def add_all(self, vectors: Iterable[Sequence[int]]) -> SpanBuilder:
        for v in vectors:
            self.add(v)
        return self

    def _absorb(self, v: List[int], start: int, pending: list) -> None:
        n = self.modulus
        for c in range(start, self.length):
            a = v[c]
            if not a:
                continue
            row = self.rows.get(c)
            if row is not None and a % row[c] == 0:
                factor = a // row[c]
                v = [(x - factor * y) % n for x, y in zip(v, row)]
                continue
            if row is None:
                g = math.gcd(a, n)
                unit = pow(a // g, -1, n // g)
                pivot_row = [(unit * x) % n for x in v]
            else:
                s_coef, t_coef, _ = (int(z) for z in igcdex(a, row[c]))
                pivot_row = [(s_coef * x + t_coef * y) % n for x, y in zip(v, row)]
                pending.append((row, c))
            # the original vector now reduces against the new pivot row
            pending.append((v, c))
            self.rows[c] = pivot_row
            pending.append((self._killer(pivot_row, c), c + 1))
            return

    def _killer(self, row: List[int], c: int) -> List[int]:
        order = self.modulus // row[c]
        return [(order * x) % self.modulus for x in row]

    def _check_length(self, vector: Sequence[int]) -> None:
        if len(vector) != self.length:
            raise InvalidInputError(f"vector of length {len(vector)} in a span of length {self.length}")

    def size(self) -> int:
        return math.prod(self.modulus // row[c] for c, row in self.rows.items())

    def contains(self, vector: Sequence[int]) -> bool:
        self._check_length(vector)
        n = self.modulus
        v = [x % n for x in vector]
        for c in range(self.length):
            a = v[c]
            if not a:
                continue
            row = self.rows.get(c)
            if row is None or a % row[c]:
                return False
            factor = a // row[c]
            v = [(x - factor * y) % n for x, y in zip(v, row)]
        return True

    def order_of(self, vector: Sequence[int]) -> int:
        """Additive order of the class of vector modulo the span"""
        n = self.modulus
        for c in range(1, n + 1):
            if n % c == 0 and self.contains([c * x for x in vector]):
                return c
        return n


def span_size(modulus: int, vectors: Sequence[Sequence[int]]) -> int:
    """Exact size of the additive span of vectors inside Z_modulus^N"""
    if not vectors:
        return 1
    return SpanBuilder(modulus, len(vectors[0])).add_all(vectors).size()


def in_span(modulus: int, vectors: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    builder = SpanBuilder(modulus, len(target))
    return builder.add_all(vectors).contains(target)


def monomial_table(n: int, k: int) -> List[int]:
    """Values of x^k on Z_n, with 0^0 = 1"""
    return [pow(x, k, n) for x in range(n)]


def naive_smarandache(n: int) -> int:
    """min{k >= 0 : n | k!} by scanning k! mod n"""
    if n < 1:
        raise InvalidInputError(f"s(n) needs n >= 1, got {n}")
    k, fact = 0, 1 % n
    while fact:
        k += 1
        fact = fact * k % n
    return k


def ring_smarandache_bruteforce(n: int) -> int:
    """Smallest m such that x^m agrees on Z_n with a polynomial of lower degree"""
    check_guard(n, "span_max_modulus", "modulus")
    builder = SpanBuilder(n, n)
    m = 0
    while not builder.contains(monomial_table(n, m)):
        builder.add(monomial_table(n, m))
        m += 1
    return m


def quotient_order_bruteforce(n: int, k: int) -> int:
    """Order of x^{k+1} in the polyfunction group modulo those of degree <= k"""
    check_guard(n, "span_max_modulus", "modulus")
    if k < 0:
        raise InvalidInputError(f"k must be >= 0, got {k}")
    builder = SpanBuilder(n, n).add_all(monomial_table(n, j) for j in range(k + 1))
    return builder.order_of(monomial_table(n, k + 1))


def random_poly(n: int, degree: int, rng: random.Random) -> Poly:
    """Uniform coefficients in 0..n-1 up to the given degree (zero for degree < 0)"""
    return Poly(n, [rng.randrange(n) for _ in range(degree + 1)])


def random_null_polynomial(n: int, rng: random.Random, max_degree: Optional[int] = None) -> Poly:
    """
    A null-polynomial h*b_1 + sum_{k>=2} u_k*b_k with random cofactors.

    deg u_k < beta_{k-1} - beta_k and deg h <= max_degree - s(n), where
    max_degree defaults to 2 s(n).
    """
    spec = basis_spec(n)
    top = spec.beta(1)
    max_degree = 2 * top if max_degree is None else max_degree
    total = random_poly(n, rng.randint(-1, max_degree - top), rng) * rising_product(top, n)
    for k in range(2, spec.t + 1):
        b_k = rising_product(spec.beta(k), n).scale(spec.alpha(k))
        width = spec.beta(k - 1) - spec.beta(k)
        total = total + random_poly(n, rng.randrange(width), rng) * b_k
    return total


def random_window_vanishing(n: int, rng: random.Random, r_max: int = 8) -> Tuple[Poly, int, int]:
    """
    A polynomial of degree <= r vanishing on alpha, ..., alpha + r.

    Built in the falling Newton basis prod_{i<k}(x - alpha - i) with the k-th
    coefficient a random multiple of n / gcd(n, k!).
    """
    r = rng.randint(0, r_max)
    alpha = rng.randrange(n)
    total = Poly(n)
    newton = Poly.constant(n, 1)
    for k in range(r + 1):
        step = n // gcd_factorial(n, k)
        total = total + newton.scale(step * rng.randrange(n))
        newton = newton * Poly(n, (-(alpha + k), 1))
    return total, alpha, r


def smarandache_table(limit: int) -> List[Tuple[int, int, int]]:
    """(n, s(n), naive scan) for 1 <= n <= limit"""
    return [(n, s(n), naive_smarandache(n)) for n in range(1, limit + 1)]
