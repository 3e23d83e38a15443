"""
The Smarandache function family and the beta/alpha data of the basic
null-polynomials.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, Tuple

from config import get_limit

from .arith import factorize, gcd_factorial, legendre_ep, smallest_prime_divisor
from .errors import InvalidInputError

logger = logging.getLogger(__name__)


class MultiIndex(tuple):
    """Exponent vector k = (k_1, ..., k_d) with k! = prod k_i! and |k| = sum k_i"""

    def __new__(cls, components: Iterable[int]) -> MultiIndex:
        values = tuple(int(c) for c in components)
        if not values:
            raise InvalidInputError("a multi-index needs at least one component")
        if any(c < 0 for c in values):
            raise InvalidInputError(f"multi-index components must be >= 0: {values}")
        return super().__new__(cls, values)

    @property
    def dimension(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def factorial(self) -> int:
        return math.prod(math.factorial(k) for k in self)

    def ep(self, p: int) -> int:
        """Exponent of p in k!"""
        return sum(legendre_ep(p, k) for k in self)


def _prime_power_smarandache(p: int, a: int) -> int:
    # e_p only grows at multiples of p, so the answer is a multiple of p
    k = p
    while legendre_ep(p, k) < a:
        k += p
    return k


@lru_cache(maxsize=None)
def s(n: int) -> int:
    """Smallest k >= 0 with n | k!"""
    if n < 1:
        raise InvalidInputError(f"s(n) is defined for n >= 1, got {n}")
    return max((_prime_power_smarandache(p, a) for p, a in factorize(n)), default=0)


def q(n: int) -> int:
    """Smallest prime divisor of n"""
    return smallest_prime_divisor(n)


def s_star(p: int, m: int) -> int:
    """min{x >= 1 : p^m | p^x x!}"""
    if m < 1:
        raise InvalidInputError(f"s_star needs m >= 1, got {m}")
    x = 1
    while x + legendre_ep(p, x) < m:
        x += 1
    return x


def e_star(p: int, m: int, r: int) -> int:
    """Valuation of p^r r!, capped at m for r = s_star(p, m)"""
    top = s_star(p, m)
    if not 1 <= r <= top:
        raise InvalidInputError(f"e_star needs 1 <= r <= {top}, got {r}")
    if r == top:
        return m
    return r + legendre_ep(p, r)


@dataclass(frozen=True)
class BasisSpec:
    """Degrees and leading scalars of the basic null-polynomials over Z_n"""
    n: int
    q: int
    betas: Tuple[int, ...]
    alphas: Tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.betas)

    def beta(self, k: int) -> int:
        """beta_k with the conventions beta_0 = 0 and beta_{t+1} = 0"""
        if k == 0 or k == self.t + 1:
            return 0
        return self.betas[k - 1]

    def alpha(self, k: int) -> int:
        """alpha_k with the convention alpha_{t+1} = n"""
        if k == self.t + 1:
            return self.n
        return self.alphas[k - 1]


@lru_cache(maxsize=1024)
def basis_spec(n: int) -> BasisSpec:
    if n < 2:
        raise InvalidInputError(f"the null-polynomial basis needs n >= 2, got {n}")
    smallest = q(n)
    top = s(n)
    # every alpha >= s(n) yields s(n) again; the scan covers composite alpha too
    betas = sorted({s(gcd_factorial(n, a)) for a in range(smallest, top + 1)} - set(range(smallest)),
                   reverse=True)
    alphas = [n // gcd_factorial(n, b) for b in betas]
    spec = BasisSpec(n=n, q=smallest, betas=tuple(betas), alphas=tuple(alphas))
    logger.debug(f"basis_spec({n}): betas={spec.betas} alphas={spec.alphas}")
    return spec


def is_factorial_multiple(n: int, k: Tuple[int, ...]) -> bool:
    """True iff n | k! for a multi-index k"""
    return all(sum(legendre_ep(p, c) for c in k) >= a for p, a in factorize(n))


def S_d(n: int, d: int) -> FrozenSet[MultiIndex]:
    """All multi-indices k in N_0^d with n not dividing k!"""
    if n < 2 or d < 1:
        raise InvalidInputError(f"S_d needs n >= 2 and d >= 1, got n={n}, d={d}")
    points = s(n) ** d
    if points > get_limit("multi_index_max_points"):
        raise InvalidInputError(f"S_d({n}, {d}) would scan {points} multi-indices, beyond multi_index_max_points")
    # a component >= s(n) already forces n | k!, so the box is exhaustive
    box = itertools.product(range(s(n)), repeat=d)
    return frozenset(MultiIndex(k) for k in box if not is_factorial_multiple(n, k))


def s_d(n: int, d: int) -> int:
    return len(S_d(n, d))
