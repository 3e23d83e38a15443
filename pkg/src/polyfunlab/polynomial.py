"""
Dense univariate polynomials over Z_n.

Coefficients are stored ascending (a_0, a_1, ..., a_r), reduced into 0..n-1,
with trailing zeros trimmed so the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

from .arith import binom
from .errors import InvalidInputError, ModulusMismatchError, NonNormedDivisorError, ParseError

logger = logging.getLogger(__name__)


def _trim(coeffs: Iterable[int], modulus: int) -> Tuple[int, ...]:
    values = [c % modulus for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class Poly:
    modulus: int
    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidInputError(f"modulus must be >= 1, got {self.modulus}")
        object.__setattr__(self, "coeffs", _trim(self.coeffs, self.modulus))

    @classmethod
    def zero(cls, modulus: int) -> Poly:
        return cls(modulus)

    @classmethod
    def constant(cls, modulus: int, c: int) -> Poly:
        return cls(modulus, (c,))

    @classmethod
    def x(cls, modulus: int) -> Poly:
        return cls(modulus, (0, 1))

    @classmethod
    def monomial(cls, modulus: int, k: int, c: int = 1) -> Poly:
        return cls(modulus, (0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial"""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_normed(self) -> bool:
        """Leading coefficient congruent to 1"""
        return bool(self.coeffs) and self.leading == 1 % self.modulus

    def _check(self, other: Poly) -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatchError(f"moduli differ: {self.modulus} vs {other.modulus}")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.modulus, (self.coeff(i) + other.coeff(i) for i in range(size)))

    def __neg__(self) -> Poly:
        return Poly(self.modulus, (-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Union[Poly, int]) -> Poly:
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.modulus)
        product = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    product[i + j] += a * b
        return Poly(self.modulus, product)

    __rmul__ = __mul__

    def scale(self, c: int) -> Poly:
        return Poly(self.modulus, (c * a for a in self.coeffs))

    def shift(self, k: int) -> Poly:
        """Multiply by x^k"""
        if self.is_zero():
            return self
        return Poly(self.modulus, (0,) * k + self.coeffs)

    def eval(self, x: int) -> int:
        """Horner evaluation mod n"""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.modulus
        return acc

    def __call__(self, x: int) -> int:
        return self.eval(x)

    def value_table(self) -> Tuple[int, ...]:
        return tuple(self.eval(x) for x in range(self.modulus))

    def translate(self, c: int) -> Poly:
        """The polynomial x -> p(x + c), expanded by binomial coefficients"""
        n = self.modulus
        out = [0] * len(self.coeffs)
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            # walk C(k, j) * c^(k-j) from j = k downwards
            choose, power = 1, 1
            for j in range(k, -1, -1):
                out[j] = (out[j] + a * choose * power) % n
                choose = choose * j // (k - j + 1)
                power = power * c % n
        return Poly(n, out)

    def with_modulus(self, modulus: int) -> Poly:
        """Reinterpret the integer coefficients modulo another modulus"""
        return Poly(modulus, self.coeffs)

    def __str__(self) -> str:
        return format_poly(self)


@lru_cache(maxsize=4096)
def rising_product(k: int, modulus: int, step: int = 1) -> Poly:
    """prod_{i=1}^{k} (x + i*step) expanded over Z_modulus"""
    if k < 0:
        raise InvalidInputError(f"rising_product needs k >= 0, got {k}")
    result = Poly.constant(modulus, 1)
    for i in range(1, k + 1):
        result = result * Poly(modulus, (i * step, 1))
    return result


def monic_divrem(p: Poly, d: Poly) -> Tuple[Poly, Poly]:
    """Division with remainder by a normed divisor: p = q*d + r, deg r < deg d"""
    p._check(d)
    if not d.is_normed():
        raise NonNormedDivisorError(f"divisor {format_poly(d)} is not normed over Z_{d.modulus}")
    n = p.modulus
    rem = list(p.coeffs)
    dd = d.degree
    if len(rem) <= dd:
        return Poly(n), p
    quot = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i] % n
        if c:
            quot[i - dd] = c
            for j, b in enumerate(d.coeffs):
                rem[i - dd + j] -= c * b
    return Poly(n, quot), Poly(n, rem[:dd])


def power_mod(k: int, d: Poly) -> Poly:
    """x^k reduced modulo a normed divisor d, by repeated squaring"""
    if k < 0:
        raise InvalidInputError(f"exponent must be >= 0, got {k}")
    result = monic_divrem(Poly.constant(d.modulus, 1), d)[1]
    base = monic_divrem(Poly.x(d.modulus), d)[1]
    while k:
        if k & 1:
            result = monic_divrem(result * base, d)[1]
        base = monic_divrem(base * base, d)[1]
        k >>= 1
    return result


def is_null(p: Poly) -> bool:
    """True iff p vanishes at every residue"""
    return all(p.eval(x) == 0 for x in range(p.modulus))


def finite_difference(values: Sequence[int], m: int, modulus: int = 0) -> int:
    """
    Alternating binomial sum sum_{j=0}^{m} (-1)^{m-j} C(m, j) f(j).

    ``values`` is the function table f(0), ..., f(m) (longer tables are
    accepted). With modulus 0 the exact integer is returned.
    """
    if m < 0 or len(values) <= m:
        raise InvalidInputError(f"finite_difference needs a table on 0..{m}, got {len(values)} values")
    total = sum((-1) ** (m - j) * binom(m, j) * values[j] for j in range(m + 1))
    return total % modulus if modulus else total


def vanishes_on_window(p: Poly, alpha: int, r: int) -> bool:
    """True iff p(alpha + i) = 0 for i = 0..r"""
    if r < 0:
        raise InvalidInputError(f"window length must be >= 0, got {r}")
    return all(p.eval(alpha + i) == 0 for i in range(r + 1))


def parse_poly(text: str, modulus: int) -> Poly:
    """Parse the ascending comma-separated coefficient format, e.g. "2,0,1" = 2 + x^2"""
    cleaned = "".join(text.split())
    if not cleaned:
        return Poly(modulus)
    coeffs: List[int] = []
    for token in cleaned.split(","):
        try:
            coeffs.append(int(token))
        except ValueError:
            raise ParseError(f"bad coefficient {token!r} in polynomial {text!r}")
    return Poly(modulus, coeffs)


def format_poly(p: Poly) -> str:
    """Inverse of parse_poly; the zero polynomial is "0" """
    return ",".join(str(c) for c in p.coeffs) if p.coeffs else "0"
