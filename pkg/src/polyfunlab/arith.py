"""
Exact modular and factored-integer arithmetic shared by the algebra modules.

Counts such as the number of polyfunctions overflow machine words almost
immediately, so they are carried as prime -> exponent maps (``FactoredCount``)
and only rendered to decimal at the edge.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Tuple

from sympy import factorint
from sympy.functions.combinatorial.numbers import stirling

from config import get_limit

from .errors import InvalidInputError, NotAnIntegerError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer, primes ascending"""
    factors: Tuple[Tuple[int, int], ...]

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def value(self) -> int:
        return math.prod(p ** a for p, a in self.factors)

    def is_prime_power(self) -> bool:
        return len(self.factors) == 1


def factorize(n: int) -> Factorization:
    """Factor n >= 1; n = 1 gives the empty factorization"""
    if n < 1:
        raise InvalidInputError(f"cannot factor {n}: expected a positive integer")
    if n > get_limit("factor_max"):
        raise InvalidInputError(f"modulus {n} exceeds the supported range")
    return _factorize(n)


@lru_cache(maxsize=4096)
def _factorize(n: int) -> Factorization:
    return Factorization(tuple(sorted((int(p), int(a)) for p, a in factorint(n).items())))


def smallest_prime_divisor(n: int) -> int:
    if n < 2:
        raise InvalidInputError(f"{n} has no prime divisor")
    return factorize(n).factors[0][0]


def prime_power_parts(n: int) -> Tuple[int, int]:
    """Return (p, m) with n = p^m, or raise if n is not a prime power"""
    fac = factorize(n)
    if not fac.is_prime_power():
        raise InvalidInputError(f"{n} is not a prime power")
    return fac.factors[0]


def legendre_ep(p: int, k: int) -> int:
    """Exponent of the prime p in k! (Legendre's formula)"""
    if p < 2 or k < 0:
        raise InvalidInputError(f"legendre_ep needs a prime p and k >= 0, got p={p}, k={k}")
    total = 0
    power = p
    while power <= k:
        total += k // power
        power *= p
    return total


def valuation(p: int, a: int) -> float:
    """Exponent of p in a; a = 0 is treated as infinitely divisible"""
    if a == 0:
        return math.inf
    count = 0
    while a % p == 0:
        a //= p
        count += 1
    return count


def gcd_factorial(n: int, k: int) -> int:
    """gcd(n, k!) computed per prime, without forming k!"""
    if k < 0:
        raise InvalidInputError(f"factorial of negative number {k}")
    result = 1
    for p, a in factorize(n):
        result *= p ** min(a, legendre_ep(p, k))
    return result


def divides_factorial(n: int, k: int) -> bool:
    """True iff n | k!"""
    return all(legendre_ep(p, k) >= a for p, a in factorize(n))


def euler_phi(n: int) -> int:
    """Euler's totient via the factorization of n"""
    result = 1
    for p, a in factorize(n):
        result *= (p - 1) * p ** (a - 1)
    return result


@lru_cache(maxsize=None)
def stirling2(j: int, r: int) -> int:
    """Stirling number of the second kind {j over r}, with {0 over 0} = 1"""
    if j < 0 or r < 0:
        raise InvalidInputError(f"stirling2 needs nonnegative arguments, got ({j}, {r})")
    return int(stirling(j, r, kind=2))


def binom(a: int, b: int) -> int:
    """Binomial coefficient; zero when b > a"""
    if a < 0 or b < 0:
        raise InvalidInputError(f"binom needs nonnegative arguments, got ({a}, {b})")
    return math.comb(a, b)


@dataclass(frozen=True)
class FactoredCount:
    """
    Exact integer held as a prime -> exponent map.

    Exponents may be negative while a product formula is being assembled;
    rendering requires them all to be nonnegative.
    """
    exponents: Tuple[Tuple[int, int], ...] = ()
    sign: int = 1

    @classmethod
    def of(cls, mapping: Mapping[int, int], sign: int = 1) -> FactoredCount:
        return cls(tuple(sorted((p, e) for p, e in mapping.items() if e != 0)), sign)

    @classmethod
    def one(cls) -> FactoredCount:
        return cls()

    @classmethod
    def from_int(cls, n: int) -> FactoredCount:
        if n == 0:
            raise InvalidInputError("zero has no factored form")
        sign = -1 if n < 0 else 1
        return cls(factorize(abs(n)).factors, sign)

    @classmethod
    def prime_power(cls, p: int, e: int) -> FactoredCount:
        return cls.of({p: e})

    def as_dict(self) -> Dict[int, int]:
        return dict(self.exponents)

    def __mul__(self, other: FactoredCount) -> FactoredCount:
        merged = self.as_dict()
        for p, e in other.exponents:
            merged[p] = merged.get(p, 0) + e
        return FactoredCount.of(merged, self.sign * other.sign)

    def __truediv__(self, other: FactoredCount) -> FactoredCount:
        return self * other ** -1

    def __pow__(self, e: int) -> FactoredCount:
        sign = self.sign if e % 2 else 1
        return FactoredCount.of({p: a * e for p, a in self.exponents}, sign)

    def is_integer(self) -> bool:
        return all(e >= 0 for _, e in self.exponents)

    def to_int(self) -> int:
        if not self.is_integer():
            raise NotAnIntegerError(f"{self} is not an integer")
        return self.sign * math.prod(p ** e for p, e in self.exponents)

    def to_decimal(self) -> str:
        return str(self.to_int())

    def __str__(self) -> str:
        if not self.exponents:
            return "1" if self.sign > 0 else "-1"
        body = " * ".join(f"{p}^{e}" if e != 1 else str(p) for p, e in self.exponents)
        return body if self.sign > 0 else f"-({body})"


def fc_mul(a: FactoredCount, b: FactoredCount) -> FactoredCount:
    return a * b


def fc_pow(a: FactoredCount, e: int) -> FactoredCount:
    return a ** e


def fc_to_decimal(a: FactoredCount) -> str:
    return a.to_decimal()


def fc_product(counts) -> FactoredCount:
    result = FactoredCount.one()
    for c in counts:
        result = result * c
    return result
