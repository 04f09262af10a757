"""System file format, benchmark family generators, and the command-line driver.

File format: a ``vars:`` line naming the variables greatest-first, an optional
``order:`` line (degrevlex default), ``#`` comments, then one polynomial per
line built from ``+ - * ^`` with integer or rational coefficients.  Products
need an explicit ``*``.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .engine import (
    CompletionTimeout,
    RunStats,
    Strategy,
    extract_reduced_gb,
    janet_basis,
)
from .oracle import ideals_equal, is_groebner, is_janet_basis
from .poly import (
    DEGLEX,
    DEGREVLEX,
    MonomialOrder,
    Polynomial,
    Q,
    format_polynomial,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CERTIFICATE = 2
EXIT_TIMEOUT = 3

STRATEGY_NAMES = [s.value for s in Strategy]


class ParseError(ValueError):
    """Syntax or semantic error in a system file, with 1-based position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(message)
        self.line = line
        self.col = col


@dataclass
class SystemFile:
    """A parsed polynomial system: variable names (greatest first) and generators."""

    variables: list
    order: MonomialOrder
    polynomials: list

    def with_order(self, kind: str) -> "SystemFile":
        order = MonomialOrder(kind, len(self.variables))
        polys = [Polynomial.from_terms(order, p.terms) for p in self.polynomials]
        return SystemFile(self.variables, order, polys)


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN_RE = re.compile(r"[0-9]+|[A-Za-z_][A-Za-z0-9_]*|\S")


class _LineParser:
    def __init__(self, line: str, lineno: int, var_index: dict, order: MonomialOrder):
        self.tokens = [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(line)]
        self.lineno = lineno
        self.pos = 0
        self.var_index = var_index
        self.order = order
        self.end_col = len(line) + 1

    def fail(self, message, col=None):
        raise ParseError(message, self.lineno, self.end_col if col is None else col)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, self.end_col)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        terms = []
        sign = 1
        tok, col = self.peek()
        if tok in ("+", "-"):
            self.take()
            sign = -1 if tok == "-" else 1
        while True:
            terms.append(self._term(sign))
            tok, col = self.peek()
            if tok is None:
                break
            if tok == "+":
                sign = 1
            elif tok == "-":
                sign = -1
            else:
                self.fail(f"expected '+' or '-', found {tok!r}", col)
            self.take()
        return Polynomial.from_terms(self.order, terms)

    def _term(self, sign):
        coeff = Q(sign)
        exps = [0] * self.order.n
        while True:
            tok, col = self.peek()
            if tok is None:
                self.fail("unexpected end of polynomial")
            if tok.isdigit():
                self.take()
                num = int(tok)
                den = 1
                if self.peek()[0] == "/":
                    self.take()
                    dtok, dcol = self.take()
                    if dtok is None or not dtok.isdigit():
                        self.fail("expected an integer denominator", dcol)
                    den = int(dtok)
                    if den == 0:
                        self.fail("zero denominator", dcol)
                coeff = coeff * Q(num, den)
            elif _NAME_RE.match(tok):
                self.take()
                idx = self.var_index.get(tok)
                if idx is None:
                    self.fail(f"unknown variable {tok!r}", col)
                e = 1
                if self.peek()[0] == "^":
                    _, ccol = self.take()
                    etok, ecol = self.take()
                    if etok is None or not etok.isdigit():
                        self.fail("malformed exponent", ecol if etok else ccol)
                    e = int(etok)
                exps[idx] += e
            else:
                self.fail(f"expected a coefficient or variable, found {tok!r}", col)
            tok, col = self.peek()
            if tok == "*":
                self.take()
                continue
            return tuple(exps), coeff


def parse_system(text: str) -> SystemFile:
    """Parse a system file; raises ParseError with line/column on bad input."""
    variables = None
    order_kind = None
    poly_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0]
        stripped = content.strip()
        if not stripped:
            continue
        if stripped.startswith("vars:"):
            if variables is not None:
                raise ParseError("duplicate vars: line", lineno, 1)
            names = stripped[len("vars:"):].split()
            if not names:
                raise ParseError("vars: line names no variables", lineno, 1)
            for name in names:
                if not _NAME_RE.match(name):
                    raise ParseError(f"bad variable name {name!r}", lineno, 1)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", lineno, 1)
            variables = names
        elif stripped.startswith("order:"):
            if order_kind is not None:
                raise ParseError("duplicate order: line", lineno, 1)
            value = stripped[len("order:"):].strip()
            if value not in (DEGREVLEX, DEGLEX):
                raise ParseError(f"unknown order {value!r}", lineno, 1)
            order_kind = value
        else:
            if variables is None:
                raise ParseError("polynomial before the vars: line", lineno, 1)
            poly_lines.append((lineno, content))
    if variables is None:
        raise ParseError("missing vars: line", 1, 1)
    if not poly_lines:
        raise ParseError("empty system: no polynomials", 1, 1)
    order = MonomialOrder(order_kind or DEGREVLEX, len(variables))
    var_index = {name: i for i, name in enumerate(variables)}
    polynomials = []
    for lineno, content in poly_lines:
        p = _LineParser(content, lineno, var_index, order).parse()
        if not p:
            raise ParseError("polynomial is zero", lineno, 1)
        polynomials.append(p)
    return SystemFile(variables, order, polynomials)


def render_system(system: SystemFile) -> str:
    """Canonical text form; parse(render(s)) == s."""
    lines = [
        "vars: " + " ".join(system.variables),
        f"order: {system.order.kind}",
    ]
    lines.extend(format_polynomial(p, system.variables) for p in system.polynomials)
    return "\n".join(lines) + "\n"


# -- benchmark families ------------------------------------------------------


def _names(prefix, lo, hi):
    return [f"{prefix}{i}" for i in range(lo, hi + 1)]


def _gen_cyclic(n):
    order = MonomialOrder(DEGREVLEX, n)
    polys = []
    for d in range(1, n):
        acc = {}
        for i in range(1, n + 1):
            mon = [0] * n
            for j in range(d):
                mon[(i + j - 1) % n] += 1
            mon = tuple(mon)
            acc[mon] = acc.get(mon, 0) + 1
        polys.append(Polynomial.from_terms(order, acc.items()))
    full = (1,) * n
    polys.append(Polynomial.from_terms(order, [(full, 1), ((0,) * n, -1)]))
    return SystemFile(_names("x", 1, n), order, polys)


def _gen_katsura(n):
    # n+1 variables x0..xn
    nv = n + 1
    order = MonomialOrder(DEGREVLEX, nv)
    unit = (0,) * nv

    def pair(a, b):
        mon = [0] * nv
        mon[a] += 1
        mon[b] += 1
        return tuple(mon)

    def single(a):
        mon = [0] * nv
        mon[a] = 1
        return tuple(mon)

    polys = []
    for m in range(n):
        acc = {}
        for i in range(-n, n + 1):
            if abs(m - i) > n:
                continue
            mon = pair(abs(i), abs(m - i))
            acc[mon] = acc.get(mon, 0) + 1
        mon = single(m)
        acc[mon] = acc.get(mon, 0) - 1
        polys.append(Polynomial.from_terms(order, acc.items()))
    acc = {single(0): 1, unit: -1}
    for i in range(1, n + 1):
        acc[single(i)] = 2
    polys.append(Polynomial.from_terms(order, acc.items()))
    return SystemFile(_names("x", 0, n), order, polys)


def _gen_eco(n):
    order = MonomialOrder(DEGREVLEX, n)
    unit = (0,) * n

    def mon(*idx):
        m = [0] * n
        for i in idx:
            m[i] += 1
        return tuple(m)

    polys = []
    for k in range(1, n):
        acc = {mon(k - 1, n - 1): 1, unit: -k}
        for i in range(1, n - k):
            m = mon(i - 1, i + k - 1, n - 1)
            acc[m] = acc.get(m, 0) + 1
        polys.append(Polynomial.from_terms(order, acc.items()))
    acc = {unit: 1}
    for i in range(1, n):
        acc[mon(i - 1)] = 1
    polys.append(Polynomial.from_terms(order, acc.items()))
    return SystemFile(_names("x", 1, n), order, polys)


def _gen_noon(n):
    order = MonomialOrder(DEGREVLEX, n)
    unit = (0,) * n
    polys = []
    for i in range(n):
        acc = {}
        for j in range(n):
            if j == i:
                continue
            mon = [0] * n
            mon[i] = 1
            mon[j] = 2
            acc[tuple(mon)] = 10
        single = [0] * n
        single[i] = 1
        acc[tuple(single)] = -11
        acc[unit] = 10
        polys.append(Polynomial.from_terms(order, acc.items()))
    return SystemFile(_names("x", 1, n), order, polys)


def _gen_reimer(n):
    order = MonomialOrder(DEGREVLEX, n)
    unit = (0,) * n
    polys = []
    for k in range(2, n + 2):
        acc = {unit: -1}
        for i in range(n):
            mon = [0] * n
            mon[i] = k
            acc[tuple(mon)] = 2 if i % 2 == 0 else -2
        polys.append(Polynomial.from_terms(order, acc.items()))
    return SystemFile(_names("x", 1, n), order, polys)


FAMILIES = {
    "cyclic": _gen_cyclic,
    "katsura": _gen_katsura,
    "eco": _gen_eco,
    "noon": _gen_noon,
    "reimer": _gen_reimer,
}


def generate(family: str, n: int) -> SystemFile:
    """Deterministically build a named benchmark system (degrevlex).

    katsura-n has n+1 variables x0..xn; the other families have n variables
    x1..xn.  n must be at least 2.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r} (have: {', '.join(sorted(FAMILIES))})")
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"family parameter must be an integer >= 2, got {n!r}")
    return FAMILIES[family](n)


# -- run orchestration -------------------------------------------------------

STAT_COLUMNS = [
    "system",
    "strategy",
    "order",
    "n_vars",
    "status",
    "basis_size",
    "gb_size",
    "prolongations_enqueued",
    "head_reduction_steps",
    "tail_reduction_steps",
    "zero_reductions",
    "displacements",
    "max_q_size",
    "wall_time",
]


@dataclass
class RunReport:
    """Outcome of one (system, strategy) engine run."""

    system: str
    strategy: str
    order: str
    n_vars: int
    status: str
    stats: RunStats
    basis: list | None = None
    gb: list | None = None
    certificates: list | None = None

    def row(self) -> dict:
        row = {
            "system": self.system,
            "strategy": self.strategy,
            "order": self.order,
            "n_vars": self.n_vars,
            "status": self.status,
            "basis_size": len(self.basis) if self.basis is not None else "",
            "gb_size": len(self.gb) if self.gb is not None else "",
        }
        row.update(self.stats.as_dict())
        return row


def run_system(system: SystemFile, strategy, *, label: str = "system",
               timeout: float | None = None, verify: bool = False,
               want_gb: bool = False) -> RunReport:
    """Run one completion; optionally extract the reduced GB and verify."""
    strategy = Strategy(strategy)
    base = dict(
        system=label,
        strategy=strategy.value,
        order=system.order.kind,
        n_vars=len(system.variables),
    )
    try:
        basis, stats = janet_basis(
            system.polynomials, system.order, strategy, timeout=timeout
        )
    except CompletionTimeout as exc:
        return RunReport(status="timeout", stats=exc.stats, **base)
    report = RunReport(status="ok", stats=stats, basis=basis, **base)
    if want_gb or verify:
        report.gb = extract_reduced_gb(basis, system.order)
    if verify:
        report.certificates = [
            is_janet_basis(basis),
            is_groebner(basis),
            ideals_equal(system.polynomials, basis),
        ]
        if not all(report.certificates):
            report.status = "certificate-failed"
    return report


def _emit_stats(reports, fmt, stream):
    rows = [r.row() for r in reports]
    if fmt == "csv":
        writer = csv.DictWriter(stream, fieldnames=STAT_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    elif fmt == "json":
        json.dump(rows, stream, indent=2)
        stream.write("\n")
    else:
        for row in rows:
            pairs = " ".join(f"{k}={row[k]}" for k in STAT_COLUMNS if k != "system")
            stream.write(f"{row['system']}: {pairs}\n")
    stream.flush()


def _print_basis(polys, names, stream):
    for p in polys:
        stream.write(format_polynomial(p, names) + "\n")


# -- command-line driver -----------------------------------------------------


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="janetbasis",
                     description="Minimal Janet bases and reduced Groebner bases "
                                 "for degree-compatible orders.")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="complete a system file to a Janet basis")
    solve.add_argument("file")
    solve.add_argument("--strategy", choices=STRATEGY_NAMES + ["all"],
                       default="baseline")
    solve.add_argument("--order", choices=[DEGREVLEX, DEGLEX], default=None,
                       help="override the order declared in the file")
    solve.add_argument("--output", choices=["janet", "groebner", "both"],
                       default="janet")
    solve.add_argument("--verify", action="store_true",
                       help="run the basis certificates; nonzero exit on failure")
    solve.add_argument("--stats", choices=["csv", "json"], default=None,
                       help="stats format on stderr (default: plain text)")
    solve.add_argument("--timeout", type=float, default=None, metavar="SECONDS")

    gen = sub.add_parser("gen", help="emit a benchmark family system file")
    gen.add_argument("family", choices=sorted(FAMILIES))
    gen.add_argument("n", type=int)
    gen.add_argument("-o", "--output-file", default=None)

    bench = sub.add_parser("bench", help="run a list of jobs and print CSV stats")
    bench.add_argument("specfile",
                       help="lines of: <family>:<n> | <path> [strategy,...|all]")
    bench.add_argument("--jobs", type=int, default=1)
    return parser


def _cmd_solve(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        system = parse_system(fh.read())
    if args.order:
        system = system.with_order(args.order)
    strategies = STRATEGY_NAMES if args.strategy == "all" else [args.strategy]
    want_gb = args.output in ("groebner", "both")
    reports = []
    for name in strategies:
        report = run_system(system, name, label=args.file, timeout=args.timeout,
                            verify=args.verify, want_gb=want_gb)
        reports.append(report)
        if report.status == "timeout":
            _emit_stats(reports, args.stats, sys.stderr)
            print(f"janetbasis: strategy {name} timed out", file=sys.stderr)
            return EXIT_TIMEOUT
    bases = {tuple(r.basis) for r in reports}
    if len(bases) != 1:
        _emit_stats(reports, args.stats, sys.stderr)
        print("janetbasis: strategies returned different bases", file=sys.stderr)
        return EXIT_CERTIFICATE
    final = reports[-1]
    if args.output in ("janet", "both"):
        _print_basis(final.basis, system.variables, sys.stdout)
    if args.output == "both":
        sys.stdout.write("\n")
    if want_gb:
        _print_basis(final.gb, system.variables, sys.stdout)
    _emit_stats(reports, args.stats, sys.stderr)
    failed = [c for r in reports for c in (r.certificates or []) if not c]
    if failed:
        for cert in failed:
            print(f"janetbasis: certificate {cert.property} failed: "
                  f"{cert.witnesses[:5]}", file=sys.stderr)
        return EXIT_CERTIFICATE
    return EXIT_OK


def _cmd_gen(args) -> int:
    system = generate(args.family, args.n)
    text = render_system(system)
    if args.output_file:
        with open(args.output_file, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _parse_bench_spec(text: str):
    jobs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        fields = content.split()
        if len(fields) > 2:
            raise ParseError("expected: <target> [strategies]", lineno, 1)
        target = fields[0]
        names = fields[1].split(",") if len(fields) == 2 else ["all"]
        if names == ["all"]:
            names = STRATEGY_NAMES
        for name in names:
            if name not in STRATEGY_NAMES:
                raise ParseError(f"unknown strategy {name!r}", lineno, 1)
        jobs.append((target, names))
    if not jobs:
        raise ParseError("bench file lists no jobs", 1, 1)
    return jobs


def _load_target(target: str) -> SystemFile:
    if ":" in target:
        family, _, num = target.partition(":")
        return generate(family, int(num))
    with open(target, encoding="utf-8") as fh:
        return parse_system(fh.read())


def _bench_worker(job):
    target, strategy = job
    try:
        system = _load_target(target)
        report = run_system(system, strategy, label=target, want_gb=True)
        return report.row()
    except Exception as exc:  # report, don't kill the whole batch
        row = {k: "" for k in STAT_COLUMNS}
        row.update(system=target, strategy=strategy, status=f"error: {exc}")
        return row


def _cmd_bench(args) -> int:
    with open(args.specfile, encoding="utf-8") as fh:
        spec = _parse_bench_spec(fh.read())
    jobs = [(target, name) for target, names in spec for name in names]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_worker, jobs))
    else:
        rows = [_bench_worker(job) for job in jobs]
    writer = csv.DictWriter(sys.stdout, fieldnames=STAT_COLUMNS)
    writer.writeheader()
    writer.writerows(rows)
    return EXIT_OK if all(r["status"] == "ok" for r in rows) else EXIT_USAGE


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"janetbasis: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "gen":
            return _cmd_gen(args)
        return _cmd_bench(args)
    except ParseError as exc:
        print(f"janetbasis: line {exc.line}, column {exc.col}: {exc}",
              file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"janetbasis: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
