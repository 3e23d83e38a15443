"""
Command-line front end.

Results go to stdout, logs and diagnostics to stderr. Exit codes: 0 success,
1 verification discrepancy, 2 input or configuration error.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence

from config import ConfigurationError, get_config, init_config

from .errors import InvalidInputError, NotAnIntegerError, OracleGuardError, ParseError
from .multivar import canonicalize_multi, format_multipoly, parse_multipoly, psi_d_general
from .polyfun import basic_null_poly, canonicalize, decompose_null, group_structure, psi
from .polynomial import format_poly, parse_poly
from .records import OutputRecord, parse_columns, parse_range, records_to_json, table_csv, table_records
from .smarandache import basis_spec, s
from .verifier import SUITES, PolyfunVerifier

logger = logging.getLogger(__name__)

LOG_FORMATS = {
    "simple": "%(levelname)s: %(message)s",
    "detailed": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
}


class JsonLogFormatter(logging.Formatter):
    """One JSON object per log line"""

    def format(self, record: logging.LogRecord) -> str:
        return json.dumps({
            "time": self.formatTime(record),
            "logger": record.name,
            "level": record.levelname,
            "message": record.getMessage(),
        })


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Configure the root logger on stderr from the logging config section"""
    settings = get_config().get_logging_config()
    level = "DEBUG" if verbose else "WARNING" if quiet else settings["level"]
    handler = logging.StreamHandler(sys.stderr)
    if settings["format"] == "json":
        handler.setFormatter(JsonLogFormatter())
    else:
        handler.setFormatter(logging.Formatter(LOG_FORMATS.get(settings["format"], LOG_FORMATS["simple"])))
    try:
        logging.basicConfig(level=level, handlers=[handler], force=True)
    except ValueError as e:
        raise ConfigurationError(f"Invalid logging configuration: {e}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyfun_cli", description="Polyfunctions over Z/nZ")
    parser.add_argument("--json", action="store_true", help="Emit OutputRecord JSON instead of plain text")
    parser.add_argument("--env", help="Configuration environment (development, testing, production)")
    noise = parser.add_mutually_exclusive_group()
    noise.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    noise.add_argument("--quiet", action="store_true", help="Only warnings and errors on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    cmd = commands.add_parser("smarandache", help="Smallest k with n | k!")
    cmd.add_argument("n", type=int)

    cmd = commands.add_parser("basis", help="Basic null-polynomials of Z_n")
    cmd.add_argument("n", type=int)

    cmd = commands.add_parser("psi", help="Number of polyfunctions over Z_n")
    cmd.add_argument("n", type=int)
    cmd.add_argument("--d", type=int, default=None, help="Number of variables")

    cmd = commands.add_parser("decompose", help="Decompose a null-polynomial over the basis")
    cmd.add_argument("n", type=int)
    cmd.add_argument("poly", help='Ascending coefficients, e.g. "2,0,1"')

    cmd = commands.add_parser("canonical", help="Canonical representative of a polyfunction")
    cmd.add_argument("n", type=int, nargs="?")
    cmd.add_argument("poly", nargs="?")
    cmd.add_argument("--multi", metavar="FILE", help="Multivariate polynomial file (prime-power modulus)")

    cmd = commands.add_parser("group", help="Additive group of polyfunctions over Z_n")
    cmd.add_argument("n", type=int)

    cmd = commands.add_parser("verify", help="Run the oracle-equivalence suites")
    cmd.add_argument("--psi-max", type=int, help="Compare counting formula and span up to this modulus")
    cmd.add_argument("--group-max", type=int, help="Compare group structure and Smith form up to this modulus")
    cmd.add_argument("--deco-samples", type=int, help="Random null-polynomials per modulus")
    cmd.add_argument("--multi-grid", action="store_true", help="Multivariate suite")
    cmd.add_argument("--units", action="store_true", help="Unit counting suite")
    cmd.add_argument("--idempotents", action="store_true", help="Idempotent and ideal suite")
    cmd.add_argument("--all", action="store_true", help="Every suite")
    cmd.add_argument("--seed", type=int, help="Override the configured seed")
    cmd.add_argument("--inject-fault", choices=SUITES, help="Deliberately break the first check of a suite")
    cmd.add_argument("--report", action="store_true", help="Print the full textual report")

    cmd = commands.add_parser("table", help="Invariant table over a range of moduli")
    cmd.add_argument("--range", dest="span", default="2..20", help="Inclusive range a..b")
    cmd.add_argument("--columns", default="s,psi,q,t", help="Comma-separated subset of s,psi,q,t")
    cmd.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _emit(args: argparse.Namespace, record: OutputRecord) -> None:
    if args.json:
        print(records_to_json([record]))
    elif isinstance(record.result, list):
        print("\n".join(record.result))
    else:
        print(record.result)


def cmd_smarandache(args: argparse.Namespace) -> int:
    _emit(args, OutputRecord("smarandache", f"n={args.n}", str(s(args.n)),
                             "max over p^a || n of min{k : e_p(k) >= a}"))
    return 0


def cmd_basis(args: argparse.Namespace) -> int:
    spec = basis_spec(args.n)
    lines = [
        f"n={spec.n} q={spec.q} t={spec.t}",
        f"betas={','.join(map(str, spec.betas))}",
        f"alphas={','.join(map(str, spec.alphas))}",
    ]
    lines += [f"b_{k}={format_poly(basic_null_poly(args.n, k))}" for k in range(1, spec.t + 1)]
    _emit(args, OutputRecord("basis", f"n={args.n}", lines, "b_k = alpha_k prod_{i=1}^{beta_k} (x+i)"))
    return 0


def cmd_psi(args: argparse.Namespace) -> int:
    if args.d is None:
        count = psi(args.n)
        record = OutputRecord("psi", f"n={args.n}", [count.to_decimal(), str(count)],
                              "prod gcd(n, beta_k!)^(beta_k - beta_{k-1})")
    else:
        count = psi_d_general(args.n, args.d)
        record = OutputRecord("psi", f"n={args.n} d={args.d}", [count.to_decimal(), str(count)],
                              "prod over S_d(p^m) of p^(m - e_p(k)), multiplied over p^m || n")
    _emit(args, record)
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    deco = decompose_null(parse_poly(args.poly, args.n))
    lines = [f"q_{k} mod {q.modulus}: {format_poly(q)}" for k, q in deco.cofactors]
    _emit(args, OutputRecord("decompose", f"n={args.n} poly={args.poly}", lines, "p = sum q_k b_k"))
    return 0


def cmd_canonical(args: argparse.Namespace) -> int:
    if args.multi:
        try:
            with open(args.multi, "r", encoding="utf-8") as f:
                text = f.read()
        except UnicodeDecodeError as e:
            raise ParseError(f"{args.multi} is not UTF-8 text: {e}")
        result = format_multipoly(canonicalize_multi(parse_multipoly(text))).splitlines()
        _emit(args, OutputRecord("canonical", f"multi={args.multi}", result,
                                 "coefficient of x^k below p^(m - e_p(k)), k in S_d(p^m)"))
        return 0
    if args.n is None or args.poly is None:
        raise InvalidInputError("canonical needs n and a polynomial, or --multi FILE")
    form = canonicalize(parse_poly(args.poly, args.n))
    _emit(args, OutputRecord("canonical", f"n={args.n} poly={args.poly}", format_poly(form.to_poly()),
                             "coefficient of x^k below n / gcd(n, k!), k < s(n)"))
    return 0


def cmd_group(args: argparse.Namespace) -> int:
    group = group_structure(args.n)
    lines = [f"cyclic: {group.render(group.presented)}", f"primary: {group}"]
    _emit(args, OutputRecord("group", f"n={args.n}", lines,
                             "sum over k of (beta_k - beta_{k+1}) Z_{alpha_{k+1}}"))
    return 0


def _selected_suites(args: argparse.Namespace) -> Optional[List[str]]:
    if args.all:
        return None
    flags = {
        "psi": args.psi_max is not None,
        "group": args.group_max is not None,
        "decomposition": args.deco_samples is not None,
        "multivar": args.multi_grid,
        "units": args.units,
        "idempotents": args.idempotents,
    }
    chosen = [name for name, on in flags.items() if on]
    return chosen or None


def cmd_verify(args: argparse.Namespace) -> int:
    verifier = PolyfunVerifier(seed=args.seed, inject_fault=args.inject_fault)
    result = verifier.run(
        _selected_suites(args),
        psi_max=args.psi_max,
        group_max=args.group_max,
        deco_samples=args.deco_samples,
    )
    lines = [
        f"{name}: {'ok' if suite['valid'] else 'FAILED'} ({suite['checks']} checks)"
        for name, suite in result["suites"].items()
    ]
    if not result["valid"]:
        lines.append(f"first discrepancy: {result['errors'][0]}")
    for warning in result["warnings"]:
        logger.warning(warning)

    if args.report and not args.json:
        print(verifier.generate_report(result))
    else:
        _emit(args, OutputRecord("verify", f"seed={result['seed']}", lines, "oracle-equivalence suites"))
    return 0 if result["valid"] else 1


def cmd_table(args: argparse.Namespace) -> int:
    moduli = parse_range(args.span)
    columns = parse_columns(args.columns)
    if args.format == "json" or args.json:
        print(records_to_json(table_records(moduli, columns)))
    else:
        sys.stdout.write(table_csv(moduli, columns))
    return 0


COMMANDS = {
    "smarandache": cmd_smarandache,
    "basis": cmd_basis,
    "psi": cmd_psi,
    "decompose": cmd_decompose,
    "canonical": cmd_canonical,
    "group": cmd_group,
    "verify": cmd_verify,
    "table": cmd_table,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """CLI interface; returns the process exit code"""
    args = build_parser().parse_args(argv)
    try:
        if args.env:
            init_config(args.env)
        setup_logging(args.verbose, args.quiet)
        logger.debug(f"Running {args.command} with {vars(args)}")
        return COMMANDS[args.command](args)
    except (InvalidInputError, OracleGuardError, NotAnIntegerError, ConfigurationError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"❌ Failed to read input: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    exit(main())
