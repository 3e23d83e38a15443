"""
Oracle-equivalence verification.

Every closed formula in the library is compared against an independent
brute-force engine or a directly constructed input. Suites run in a fixed
order and all randomness comes from one seeded generator per suite, so a
given seed always reproduces the same report.
"""

import itertools
import logging
import math
import random
from typing import Any, Callable, Dict, List, Optional, Sequence

from sympy import primerange

from config import ConfigManager, get_config

from .arith import FactoredCount, stirling2
from .errors import InvariantViolation
from .multivar import (
    MultiPoly,
    canonicalize_multi,
    enumerate_canonical_multi,
    extract_leading_coefficient,
    is_reducible_bruteforce,
    is_reducible_monomial,
    psi_d,
    psi_d_alt,
    psi_d_bruteforce,
    psi_d_general,
    reduce_monomial,
)
from .oracles import (
    naive_smarandache,
    quotient_order_bruteforce,
    random_null_polynomial,
    random_poly,
    random_window_vanishing,
    ring_smarandache_bruteforce,
)
from .polyfun import (
    canonical_count,
    canonicalize,
    count_r0_idempotents,
    decompose_null,
    enumerate_canonical,
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
    psi,
    psi_bruteforce,
    psi_prime_power,
    psi_prime_power_closed,
    recompose,
    unit_count_3k,
    unit_count_bruteforce,
    voll_check,
)
from .polynomial import finite_difference, is_null, vanishes_on_window
from .smarandache import basis_spec, s, s_star

logger = logging.getLogger(__name__)

SUITES = (
    "smarandache",
    "identities",
    "psi",
    "null_count",
    "decomposition",
    "voll",
    "canonical",
    "group",
    "units",
    "idempotents",
    "multivar",
)

DECOMPOSITION_MODULI = (12, 36, 90)
VOLL_MODULI = (8, 12, 90)
IDEMPOTENT_CASES = ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1))
R0_CASES = ((2, 2), (3, 1), (3, 2))
INVERSE_MODULI = (2, 3, 4, 6, 9)
QUOTIENT_MODULI = (4, 8, 9, 12)
MULTI_SPAN_CASES = ((2, 2), (3, 2), (4, 2), (2, 3))
MULTI_CANONICAL_CASES = ((2, 1, 2), (2, 2, 2), (3, 1, 2))


class PolyfunVerifier:
    """Runs the verification suites and collects a validation-style result"""

    def __init__(self, config: Optional[ConfigManager] = None, seed: Optional[int] = None,
                 inject_fault: Optional[str] = None):
        self.config = config or get_config()
        self.settings = self.config.get_verification_config()
        self.limits = self.config.get_limits_config()
        self.seed = self.settings["seed"] if seed is None else seed
        self.inject_fault = inject_fault
        self.result: Dict[str, Any] = {}
        self._current = ""

    def run(self, suites: Optional[Sequence[str]] = None, **overrides: Any) -> Dict[str, Any]:
        """
        Run the requested suites (all of them by default).

        Args:
            suites: suite names from SUITES
            overrides: psi_max, group_max, deco_samples, ... replacing the configured defaults

        Returns:
            Result with valid flag, errors, warnings and per-suite details
        """
        selected = [name for name in SUITES if suites is None or name in suites]
        unknown = sorted(set(suites or ()) - set(SUITES))
        params = {**self.settings, **{k: v for k, v in overrides.items() if v is not None}}

        self.result = {
            "valid": True,
            "seed": self.seed,
            "errors": [],
            "warnings": [f"Unknown suite '{name}' ignored" for name in unknown],
            "suites": {},
        }
        for name in selected:
            suite = {"valid": True, "checks": 0, "errors": [], "fault_injected": False}
            self.result["suites"][name] = suite
            self._current = name
            runner: Callable[[Dict[str, Any], Dict[str, Any]], None] = getattr(self, f"_suite_{name}")
            logger.info(f"Running suite {name}")
            try:
                runner(suite, params)
            except InvariantViolation as e:
                self._fail(suite, f"invariant violation: {e}")
            if not suite["valid"]:
                self.result["valid"] = False
                self.result["errors"].extend(f"[{name}] {err}" for err in suite["errors"])
            logger.info(f"Suite {name}: {suite['checks']} checks, {'ok' if suite['valid'] else 'FAILED'}")

        if self.inject_fault and self.inject_fault not in selected:
            self.result["warnings"].append(f"Fault injection target '{self.inject_fault}' was not run")
        return self.result

    def _fail(self, suite: Dict[str, Any], message: str) -> None:
        suite["valid"] = False
        suite["errors"].append(message)

    def _rng(self, name: str) -> random.Random:
        return random.Random(f"{self.seed}:{name}")

    def _expect(self, suite: Dict[str, Any], label: str, expected: Any, actual: Any) -> None:
        suite["checks"] += 1
        if self.inject_fault == self._current and not suite["fault_injected"]:
            suite["fault_injected"] = True
            actual = f"{actual} (injected fault)"
        if expected != actual:
            self._fail(suite, f"{label}: expected {expected}, got {actual}")

    def _suite_smarandache(self, suite: Dict[str, Any], params: Dict[str, Any]) -> None:
        for n in range(1, params["smarandache_max"] + 1):
            self._expect(suite, f"s({n}) vs factorial scan", naive_smarandache(n), s(n))
        for p in primerange(2, 14):
            for m in range(1, 7):
                self._expect(suite, f"p*s*({p},{m}) = s({p}^{m})", s(p ** m), p * s_star(p, m))
        for n in range(2, 501):
            spec = basis_spec(n)
            shape_ok = (spec.betas[0] == s(n) and spec.betas[-1] == spec.q and spec.alphas[0] == 1
                        and all(a < b for a, b in zip(spec.alphas, spec.alphas[1:])))
            self._expect(suite, f"basis_spec({n}) shape", True, shape_ok)
        for n in range(2, self.limits["span_max_modulus"] + 1):
            self._expect(suite, f"ring Smarandache of Z_{n}", s(n), ring_smarandache_bruteforce(n))

    def _suite_identities(self, suite: Dict[str, Any], params: Dict[str, Any]) -> None:
        for j in range(13):
            for x in range(13):
                falling = sum(stirling2(j, r) * math.perm(x, r) for r in range(j + 1))
                self._expect(suite, f"x^{j} in falling factorials at x={x}", x ** j, falling)
            for r in range(13):
                table = [x ** j for x in range(r + 1)]
                self._expect(suite, f"difference of x^{j} over 0..{r}",
                             math.factorial(r) * stirling2(j, r), finite_difference(table, r))
                if j <= r:
                    self._expect(suite, f"delta_(j={j}, r={r}) r!",
                                 math.factorial(r) if j == r else 0, finite_difference(table, r))

    def _suite_psi(self, suite: Dict[str, Any], params: Dict[str, Any]) -> None:
        self._expect(suite, "psi(90)", "246037500", psi(90).to_decimal())
        self._expect(suite, "psi(2) psi(9) psi(5)", psi(90), psi(2) * psi(9) * psi(5))
        for n in range(2, params["psi_max"] + 1):
            self._expect(suite, f"psi({n}) vs span", psi(n).to_int(), psi_bruteforce(n))
        for a, b in itertools.combinations(range(2, 51), 2):
            if a * b <= 100 and math.gcd(a, b) == 1:
                self._expect(suite, f"psi({a}*{b}) multiplicative", psi(a) * psi(b), psi(a * b))
        for p in (2, 3, 5, 7):
            for m in range(1, 5):
                self._expect(suite, f"psi({p}^{m}) prime power", psi_prime_power(p, m), psi(p ** m))
                if m <= p:
                    self._expect(suite, f"psi({p}^{m}) closed form", psi_prime_power_closed(p, m), psi(p ** m))
        for n in range(2, params["null_count_max"] + 1):
            self._expect(suite, f"canonical tuple count of Z_{n}", psi(n), canonical_count(n))

    def _suite_null_count(self, suite: Dict[str, Any], params: Dict[str, Any]) -> None:
        for n in range(2, params["null_count_max"] + 1):
            self._expect(suite, f"|N({n})| psi({n}) = {n}^s({n})",
                         FactoredCount.from_int(n) ** s(n), null_count(n) * psi(n))

    def _suite_decomposition(self, suite: Dict[str, Any], params: Dict[str, Any]) -> None:
        rng = self._rng("decomposition")
        for n in DECOMPOSITION_MODULI:
            spec = basis_spec(n)
            for i in range(params["deco_samples"]):
                p = random_null_polynomial(n, rng)
                label = f"Z_{n} sample {i}"
                self._expect(suite, f"{label} is null", True, is_null(p))
                deco = decompose_null(p)
                self._expect(suite, f"{label} round trip", p, recompose(deco))
                q1 = deco.cofactor(1)
                expected_q1 = p.degree - spec.beta(1) if p.degree >= spec.beta(1) else -1
                self._expect(suite, f"{label} deg q_1", expected_q1, q1.degree)
                for k in range(2, spec.t + 1):
                    width = spec.beta(k - 1) - spec.beta(k)
                    self._expect(suite, f"{label} deg q_{k} < {width}", True, deco.cofactor(k).degree < width)
                self._expect(suite, f"{label} re-decomposition", deco, decompose_null(recompose(deco)))

    def _suite_voll(self, suite: Dict[str, Any], params: Dict[str, Any]) -> None:
        rng = self._rng("voll")
        for n in VOLL_MODULI:
            for i in range(params["voll_samples"]):
                p, alpha, r = random_window_vanishing(n, rng)
                self._expect(suite, f"Z_{n} sample {i} vanishes", True, vanishes_on_window(p, alpha, r))
                self._expect(suite, f"Z_{n} sample {i} a_k r! = 0", True, voll_check(p, alpha, r))

    def _suite_canonical(self, suite: Dict[str, Any], params: Dict[str, Any]) -> None:
        rng = self._rng("canonical")
        for i in range(params["deco_samples"]):
            n = rng.randint(2, 100)
            p = random_poly(n, rng.randint(0, s(n) + 10), rng)
            c = canonicalize(p)
            self._expect(suite, f"canonicalize sample {i} over Z_{n} keeps values", p.value_table(), c.value_table())
            self._expect(suite, f"canonicalize sample {i} over Z_{n} idempotent", c, canonicalize(c.to_poly()))

    def _suite_group(self, suite: Dict[str, Any], params: Dict[str, Any]) -> None:
        for n in range(2, params["group_max"] + 1):
            self._expect(suite, f"F({n}) vs Smith form", group_structure_bruteforce(n), group_structure(n))
        for n in range(2, params["null_count_max"] + 1):
            self._expect(suite, f"|F({n})| = psi({n})", psi(n), group_structure(n).order())
        for p in (2, 3, 5):
            for m in range(1, 5):
                self._expect(suite, f"F({p}^{m}) prime-power form",
                             group_structure(p ** m), group_structure_prime_power(p, m))
        for n in QUOTIENT_MODULI:
            for k in range(s(n)):
                self._expect(suite, f"order of x^{k + 1} in F({n})/F_{k}({n})",
                             quotient_order_bruteforce(n, k), monomial_quotient_order(n, k))

    def _suite_units(self, suite: Dict[str, Any], params: Dict[str, Any]) -> None:
        for k in (1, 2):
            self._expect(suite, f"unit count of Z_3^{k}", unit_count_3k(k).to_int(), unit_count_bruteforce(3 ** k))
        for n in INVERSE_MODULI:
            for c in enumerate_canonical(n):
                f = c.to_poly()
                self._expect(suite, f"inverse criterion for {f} over Z_{n}", is_unit(f), has_polyfunction_inverse(f))

    def _suite_idempotents(self, suite: Dict[str, Any], params: Dict[str, Any]) -> None:
        for p, m in IDEMPOTENT_CASES:
            n = p ** m
            tables = [e.value_table() for e in idempotents(p, m)]
            for j, t in enumerate(tables):
                self._expect(suite, f"eps_{j}^2 = eps_{j} over Z_{n}", t, tuple(v * v % n for v in t))
                self._expect(suite, f"eps_{j} indicator over Z_{n}",
                             tuple(int(x % p == j) for x in range(n)), t)
            for i, j in itertools.combinations(range(p), 2):
                self._expect(suite, f"eps_{i} eps_{j} = 0 over Z_{n}", (0,) * n,
                             tuple(a * b % n for a, b in zip(tables[i], tables[j])))
            self._expect(suite, f"sum eps_j = 1 over Z_{n}", (1 % n,) * n,
                         tuple(sum(col) % n for col in zip(*tables)))
        for p, m in R0_CASES:
            self._expect(suite, f"idempotents of R_0({p}^{m})", 2, count_r0_idempotents(p, m))
        for p in primerange(2, 82):
            m = 1
            while p ** m <= 81:
                for k, b in enumerate(ideal_basis_star(p, m), start=1):
                    self._expect(suite, f"b*_{k} in I_({p},{m})", True, in_ideal_Ipm(b, p, m))
                m += 1

    def _suite_multivar(self, suite: Dict[str, Any], params: Dict[str, Any]) -> None:
        for p in (2, 3, 5):
            for m in range(1, 4):
                for d in range(1, 4):
                    self._expect(suite, f"psi_d({p},{m},{d}) two formulas", psi_d(p, m, d), psi_d_alt(p, m, d))
                self._expect(suite, f"psi_1({p}^{m}) = psi", psi_prime_power(p, m), psi_d(p, m, 1))
        for n, d in MULTI_SPAN_CASES:
            self._expect(suite, f"psi_{d}({n}) vs span", psi_d_general(n, d).to_int(), psi_d_bruteforce(n, d))
        for n in range(2, 7):
            for d in (1, 2):
                for k in itertools.product(range(5), repeat=d):
                    if sum(k) > 4:
                        continue
                    for a in range(n):
                        self._check_reducibility(suite, n, a, k)
        for p, m, d in MULTI_CANONICAL_CASES:
            tables = {f.value_table() for f in enumerate_canonical_multi(p, m, d)}
            self._expect(suite, f"distinct canonical forms over Z_{p ** m}^{d}", psi_d(p, m, d).to_int(), len(tables))
        rng = self._rng("multivar")
        for i in range(params["deco_samples"]):
            p, m, d = rng.choice(MULTI_CANONICAL_CASES)
            n = p ** m
            terms = tuple((tuple(rng.randrange(6) for _ in range(d)), rng.randrange(n)) for _ in range(4))
            f = MultiPoly(n, d, terms)
            c = canonicalize_multi(f)
            self._expect(suite, f"canonicalize_multi sample {i} keeps values", f.value_table(), c.value_table())
            self._expect(suite, f"canonicalize_multi sample {i} idempotent", c, canonicalize_multi(c))

    def _check_reducibility(self, suite: Dict[str, Any], n: int, a: int, k) -> None:
        label = f"{a}*x^{k} over Z_{n}"
        divisible = is_reducible_monomial(n, a, k)
        extracted = extract_leading_coefficient(MultiPoly.monomial(n, k, a), k) == 0
        self._expect(suite, f"{label} divisibility vs finite difference", divisible, extracted)
        self._expect(suite, f"{label} divisibility vs certificate search", divisible, is_reducible_bruteforce(n, a, k))
        if divisible:
            r = reduce_monomial(n, a, k)
            self._expect(suite, f"{label} reduction agrees", MultiPoly.monomial(n, k, a).value_table(), r.value_table())
            self._expect(suite, f"{label} reduction lowers degree", True, r.degree < sum(k))

    def generate_report(self, result: Optional[Dict[str, Any]] = None) -> str:
        """Render a verification result as text"""
        result = result or self.result
        report: List[str] = []
        report.append("=" * 60)
        report.append("POLYFUNCTION VERIFICATION REPORT")
        report.append("=" * 60)
        report.append("")

        report.append("SUMMARY:")
        report.append(f"  Overall Status: {'✅ VALID' if result['valid'] else '❌ INVALID'}")
        report.append(f"  Seed: {result['seed']}")
        report.append(f"  Suites: {len(result['suites'])}")
        report.append(f"  Checks: {sum(s['checks'] for s in result['suites'].values())}")
        report.append(f"  Errors: {len(result['errors'])}")
        report.append(f"  Warnings: {len(result['warnings'])}")
        report.append("")

        if result["errors"]:
            report.append("ERRORS:")
            for error in result["errors"]:
                report.append(f"  ❌ {error}")
            report.append("")

        if result["warnings"]:
            report.append("WARNINGS:")
            for warning in result["warnings"]:
                report.append(f"  ⚠️ {warning}")
            report.append("")

        report.append("SUITE DETAILS:")
        for name, suite in result["suites"].items():
            status = "✅ VALID" if suite["valid"] else "❌ INVALID"
            report.append(f"  {name}: {status} ({suite['checks']} checks)")
        report.append("")
        report.append("=" * 60)
        return "\n".join(report)
