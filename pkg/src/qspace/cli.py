"""Command-line frontend.

Exit status: 0 on success or a true verdict, 1 on a false verdict,
2 on bad usage or malformed input, 3 when a size cap or node budget is hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import bounds, codeio, construct, designs, projections
from .errors import CapExceeded, QSpaceError
from .gf import FieldSpec, gf, parse_descriptor
from .rank_metric import FerrersDiagram, fdrm_construct, gabidulin, lift_code
from .subspace import (
    DEFAULT_ENUM_CAP,
    DISTANCES,
    METRICS,
    Subspace,
    SubspaceCode,
    enumerate_grassmannian,
    enumerate_projective,
    gaussian_binomial,
    min_distance,
    rref,
)

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- argument helpers ---------------------------------------------------------------

def int_range(text: str) -> list[int]:
    """'6', '6..8' or '2,4,6' as a list of integers."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                a, b = part.split("..", 1)
                lo, hi = int(a), int(b)
                if hi < lo:
                    raise argparse.ArgumentTypeError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range like 6..8, got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty range")
    return out


def _field_of(args) -> FieldSpec:
    desc = getattr(args, "field", None)
    if desc:
        return parse_descriptor(desc)
    return gf(getattr(args, "q", None) or 2)


def _add_field(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--q", type=int, help="field size (default modulus), default 2")
    g.add_argument("--field", help='field descriptor such as "GF(2^6)/1,1,0,0,0,0,1"')


def _add_io(p: argparse.ArgumentParser, inp: bool = False) -> None:
    if inp:
        p.add_argument("--in", dest="inp", default="-", help="input file ('-' for stdin, the default)")
    p.add_argument("--out", help="write to this file instead of stdout")


def _read_input(args) -> str:
    if args.inp == "-":
        return sys.stdin.read()
    try:
        with open(args.inp, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.inp}: {exc.strerror}") from None


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_rows(text: str, F: FieldSpec, n: int | None = None) -> tuple[list[tuple[int, ...]], int]:
    rows = []
    for part in text.split(";" if F.q > 10 else ","):
        part = part.strip()
        if not part:
            continue
        digits = part.split(",") if F.q > 10 else list(part)
        try:
            row = tuple(int(c) for c in digits)
        except ValueError:
            raise UsageError(f"row {part!r} has a non-digit character") from None
        if any(not 0 <= c < F.q for c in row):
            raise UsageError(f"row {part!r} has a digit outside GF({F.q})")
        rows.append(row)
    lengths = {len(r) for r in rows}
    if len(lengths) > 1:
        raise UsageError("rows of different lengths")
    width = lengths.pop() if lengths else n
    if width is None:
        raise UsageError("give --n for an empty row list")
    return rows, width


def _read_code(args) -> SubspaceCode:
    res = codeio.read_code(_read_input(args))
    for w in res.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return res.code


# -- subcommands ---------------------------------------------------------------------

def cmd_field(args) -> int:
    F = _field_of(args)
    info = {"descriptor": F.descriptor, "p": F.p, "m": F.m, "q": F.q, "modulus": list(F.modulus),
            "generator": F.generator}
    if args.table:
        info["powers"] = [F.alpha_pow(i) for i in range(F.q - 1)]
    if args.format == "json":
        _emit(args, json.dumps(info, indent=2))
        return EXIT_OK
    lines = [f"field      {F.descriptor}", f"order      {F.q} = {F.p}^{F.m}",
             f"generator  {F.generator}"]
    if args.table:
        lines.append("i  alpha^i")
        lines.extend(f"{i}  {v}" for i, v in enumerate(info["powers"]))
    _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_gauss(args) -> int:
    F = _field_of(args)
    if args.rows is not None:
        rows, n = _parse_rows(args.rows, F, args.n)
        red, rk = rref(rows, F, n)
        text = [f"rank {rk}"] + [codeio.row_text(r, F.q) for r in red]
        _emit(args, "\n".join(text))
        return EXIT_OK
    if args.n is None or args.k is None:
        raise UsageError("gauss needs --n and --k (Gaussian coefficient) or --rows (row reduction)")
    _emit(args, str(gaussian_binomial(args.n, args.k, F.q)))
    return EXIT_OK


def cmd_enum(args) -> int:
    F = _field_of(args)
    if args.k is None:
        words = list(enumerate_projective(args.n, F, args.cap))
        metric = "subspace"
    else:
        words = list(enumerate_grassmannian(args.n, args.k, F, args.cap))
        metric = "grassmannian"
    if args.count:
        _emit(args, str(len(words)))
        return EXIT_OK
    _emit(args, codeio.write_code(SubspaceCode(F, args.n, tuple(words), metric)))
    return EXIT_OK


def cmd_dist(args) -> int:
    F = _field_of(args)
    ra, na = _parse_rows(args.a, F, args.n)
    rb, nb = _parse_rows(args.b, F, args.n)
    if na != nb:
        raise UsageError(f"--a has length {na} but --b has length {nb}")
    X, Y = Subspace.from_matrix(F, na, ra), Subspace.from_matrix(F, nb, rb)
    metrics = METRICS if args.metric == "all" else (args.metric,)
    out = {}
    for m in metrics:
        if m == "grassmannian" and X.k != Y.k:
            out[m] = None
            continue
        out[m] = DISTANCES[m](X, Y)
    if args.format == "json":
        _emit(args, json.dumps(out))
    else:
        _emit(args, "\n".join(f"{m} {'-' if v is None else v}" for m, v in out.items()))
    return EXIT_OK


def _skeleton_for(args, F: FieldSpec) -> construct.SkeletonCode:
    if args.skeleton:
        try:
            with open(args.skeleton, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.skeleton}: {exc.strerror}") from None
    elif args.words:
        text = "\n".join(args.words.split(","))
    else:
        raise UsageError("multilevel needs --skeleton FILE or --words w1,w2,...")
    words = codeio.read_skeleton_words(text)
    kind = "asymmetric" if args.metric == "injection" else "hamming"
    return construct.SkeletonCode.from_strings(words, kind)


def cmd_construct(args) -> int:
    F = _field_of(args)
    what = args.what
    if what == "mrd":
        if args.diagram:
            code = fdrm_construct(FerrersDiagram.parse(args.diagram), args.delta, F,
                                  seed=args.seed, budget=args.budget)
        else:
            code = gabidulin(args.k, args.l, args.delta, F)
        _emit(args, codeio.write_rank_code(code))
        return EXIT_OK
    if what == "lift":
        if args.inp:
            rc, _ = codeio.read_rank_code(_read_input(args))
        else:
            if None in (args.k, args.l, args.delta):
                raise UsageError("lift needs --k, --l and --delta, or --in with a rank code file")
            rc = gabidulin(args.k, args.l, args.delta, F)
        C = lift_code(rc)
    elif what == "multilevel":
        metric = args.metric or "grassmannian"
        args.metric = metric
        skeleton = _skeleton_for(args, F)
        report = construct.multilevel_report(skeleton, args.delta, F, metric,
                                             verify=not args.no_verify, seed=args.seed)
        for v, size, dim, ok in zip(skeleton.words, report.layer_sizes,
                                    report.layer_dims, report.attained):
            tag = "" if ok else " (below the Ferrers bound)"
            print(f"layer {''.join(map(str, v))}: {size} words, dim {dim}{tag}", file=sys.stderr)
        C = report.code
    elif what == "spread":
        C = construct.spread(args.n, args.k, F)
    elif what == "partial-spread":
        C = construct.partial_spread(args.n, args.k, F)
    elif what == "cyclic":
        if not args.gens:
            raise UsageError("cyclic needs at least one --gens list")
        from .gf import Extension
        big = F
        base = gf(big.p)
        ext = Extension(base, big.m, big)
        gens = [construct.OrbitGenerator.parse(g, ext) for g in args.gens]
        C = construct.cyclic_orbit_code(gens, args.add_trivial, args.add_trivial, args.metric or "injection")
    elif what == "puncture":
        src = _read_code(args)
        choice = construct.choose_Q(src)
        C = construct.puncture_code(src, choice.Q, choice.v)
        print(f"hyperplane {';'.join(codeio.row_text(r, src.field.q) for r in choice.Q.rows)}, "
              f"v {codeio.row_text(choice.v, src.field.q)}, {choice.size} words", file=sys.stderr)
        if args.augment is not None:
            C = construct.augment_greedy(C, args.augment, "subspace", max_new=args.max_new)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown construction {what!r}")
    _emit(args, codeio.write_code(C))
    return EXIT_OK


def _verdict(args, check: str, ok: bool, details: dict, summary: str) -> int:
    block = {"check": check, "verdict": bool(ok)}
    block.update(details)
    _emit(args, json.dumps(block, indent=2, sort_keys=True))
    print(f"{check}: {'PASS' if ok else 'FAIL'} ({summary})", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_verify(args) -> int:
    C = _read_code(args)
    what = args.what
    base = {"size": len(C), "n": C.n, "field": C.field.descriptor}
    if what == "mindist":
        metric = args.metric or C.metric
        d = min_distance(C.words, metric)
        expect = args.expect if args.expect is not None else C.claimed_min_distance
        ok = expect is None or d >= expect
        base.update({"metric": metric, "min_distance": d, "expected": expect})
        return _verdict(args, "mindist", ok, base, f"{len(C)} words, {metric} distance {d}")
    if what in ("steiner", "design", "covering"):
        t = args.t
        rep = designs.coverage(C, t, args.cap)
        if what == "steiner":
            ok = rep.is_steiner
        elif what == "design":
            ok = rep.is_design(args.lam)
        else:
            ok = rep.is_covering
        base.update(rep.as_dict())
        return _verdict(args, what, ok, base, f"{len(C)} words, multiplicities {rep.histogram}")
    if what == "spread":
        ok = designs.verify_spread(C)
        return _verdict(args, "spread", ok, base, f"{len(C)} words")
    if what == "partial-spread":
        ok = designs.verify_partial_spread(C)
        return _verdict(args, "partial-spread", ok, base, f"{len(C)} words")
    if what == "std":
        k = args.k if args.k is not None else (C.dimensions[0] if C.dimensions else 0)
        rep = designs.verify_std(C, k, C.n, args.t)
        base.update(rep.as_dict())
        failed = [i for i, v in rep.properties.items() if not v]
        return _verdict(args, "std", rep.ok, base,
                        "all five properties hold" if rep.ok else f"properties {failed} fail")
    if what == "cover":
        ok = designs.cover_check(C)
        return _verdict(args, "cover", ok, base, f"{len(C)} words")
    raise UsageError(f"unknown check {what!r}")  # pragma: no cover


def cmd_bounds(args) -> int:
    if args.what == "single":
        lo, up = bounds.best_bounds(args.n, args.delta, args.k, args.q, not args.no_constructions)
        if args.format == "json":
            _emit(args, json.dumps({"q": args.q, "n": args.n, "delta": args.delta, "k": args.k,
                                    "lower": lo.value, "upper": up.value,
                                    "lower_src": lo.source, "upper_src": up.source}, indent=2))
        elif args.format == "csv":
            _emit(args, codeio.write_csv(
                ["q", "n", "delta", "k", "lower", "upper", "lower_src", "upper_src"],
                [(args.q, args.n, args.delta, args.k, lo.value, up.value, lo.source, up.source)]))
        else:
            cell = f"{lo.value}" if lo.value == up.value else f"{lo.value} - {up.value}"
            _emit(args, f"A_{args.q}({args.n},{args.delta},{args.k}) = {cell}   [{lo.source} / {up.source}]")
        return EXIT_OK
    table = bounds.emit_table(args.q, args.n, include_trivial=args.include_trivial,
                              constructions=not args.no_constructions)
    if args.delta or args.k:
        keep = {}
        for (n, delta, k), cell in table.cells.items():
            if args.delta and delta not in args.delta:
                continue
            if args.k and k not in args.k:
                continue
            keep[(n, delta, k)] = cell
        table.cells = keep
    fmt = args.format or "csv"
    if fmt == "csv":
        _emit(args, table.to_csv())
    elif fmt == "json":
        header = ["q", "n", "delta", "k", "lower", "upper", "lower_src", "upper_src"]
        _emit(args, json.dumps([dict(zip(header, r)) for r in table.rows()], indent=2))
    else:
        _emit(args, table.to_text())
    return EXIT_OK


def _parse_pins(items: Sequence[str]) -> dict[int, int]:
    pins = {}
    for it in items or ():
        try:
            j, v = it.split("=", 1)
            pins[int(j)] = int(v)
        except ValueError:
            raise UsageError(f"pin {it!r} is not of the form INDEX=VALUE") from None
    return pins


def _outcome_text(system: projections.EquationSystem, res: projections.SolveOutcome) -> str:
    lines = [f"outcome {res.tag}", f"summary {res.summary()}"]
    sol = res.solutions[0] if res.solutions else None
    if sol is not None:
        lines.append("solution" if res.tag == "Unique" else "first solution")
        for j, (Y, v) in enumerate(zip(system.variables, sol)):
            rows = ";".join(codeio.row_text(r, system.q) for r in Y.rows) or "0"
            lines.append(f"  a[{j}] dim {Y.k} {rows} = {v}")
    return "\n".join(lines)


def cmd_projections(args) -> int:
    if args.what == "gen":
        system = projections.build_system(args.n, args.k, args.t, args.q, args.rho)
        _emit(args, json.dumps(system.to_json(), indent=1))
        return EXIT_OK
    if args.what == "solve":
        try:
            doc = json.loads(_read_input(args))
        except json.JSONDecodeError as exc:
            raise UsageError(f"system file: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        try:
            system = projections.EquationSystem.from_json(doc)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, QSpaceError):
                raise
            raise UsageError(f"system file is malformed: {exc!r}") from None
        pins = _parse_pins(args.pin)
        if args.symmetric:
            gens = [projections.point_stabilizer_cycle(system.rho, system.q)]
            res = projections.invariant_solve(system, gens, cap=args.cap, node_budget=args.budget)
        else:
            res = projections.solve(system, pins, cap=args.cap, node_budget=args.budget)
        if args.format == "json":
            _emit(args, json.dumps({"tag": res.tag, "count": res.count, "nodes": res.nodes,
                                    "free": res.free, "solutions": res.solutions}))
        else:
            _emit(args, _outcome_text(system, res))
        if res.tag == "CapReached":
            return EXIT_CAP
        return EXIT_FALSE if res.tag == "Infeasible" else EXIT_OK
    rows = projections.feasibility_report(args.n, args.k, args.t, args.q, args.rho,
                                          node_budget=args.budget)
    _emit(args, "\n".join(f"rho={rho}: {verdict}" for rho, verdict in rows))
    return EXIT_FALSE if any(v.startswith("excluded") for _, v in rows) else EXIT_OK


def cmd_complements(args) -> int:
    out = []
    for n in args.n:
        c = designs.complements_census(n, args.q, args.cap)
        out.append({"n": n, "q": args.q, "count": c.count, "total": c.total,
                    "ratio": float(c.ratio), "limit": c.limit, "gap": float(c.ratio) - c.limit})
    if args.format == "json":
        _emit(args, json.dumps(out, indent=2))
    elif args.format == "csv":
        header = ["n", "q", "count", "total", "ratio", "limit", "gap"]
        _emit(args, codeio.write_csv(header, [[f"{r[h]:.6f}" if isinstance(r[h], float) else r[h]
                                               for h in header] for r in out]))
    else:
        lines = [f"n={r['n']}  {r['count']}/{r['total']} = {r['ratio']:.6f}  "
                 f"(limit {r['limit']:.6f}, gap {r['gap']:+.6f})" for r in out]
        _emit(args, "\n".join(lines))
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qspace", description="Subspace codes, q-designs and their bounds.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("field", help="describe a finite field")
    _add_field(p)
    p.add_argument("--table", action="store_true", help="list the powers of the generator")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_io(p)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("gauss", help="Gaussian coefficient, or row reduction of --rows")
    _add_field(p)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--rows", help="comma-separated digit rows, e.g. 110,011")
    _add_io(p)
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("enum", help="all k-subspaces (or all subspaces) of GF(q)^n")
    _add_field(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--count", action="store_true", help="print only the number of subspaces")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUM_CAP)
    _add_io(p)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("dist", help="distances between two subspaces")
    _add_field(p)
    p.add_argument("--a", required=True, help="rows of the first subspace, e.g. 100,010")
    p.add_argument("--b", required=True, help="rows of the second subspace")
    p.add_argument("--n", type=int, help="ambient dimension (needed only for {0})")
    p.add_argument("--metric", choices=METRICS + ("all",), default="all")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_io(p)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("construct", help="build a code")
    p.add_argument("what", choices=("mrd", "lift", "multilevel", "spread", "partial-spread", "cyclic", "puncture"))
    _add_field(p)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--diagram", help="Ferrers diagram row lengths, e.g. 3,2,1 (mrd)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=200, help="random search budget for Ferrers diagram codes")
    p.add_argument("--skeleton", help="file of binary skeleton words (multilevel)")
    p.add_argument("--words", help="comma-separated skeleton words (multilevel)")
    p.add_argument("--metric", choices=METRICS)
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--gens", action="append", help="exponent list of a generator, repeatable (cyclic)")
    p.add_argument("--add-trivial", action="store_true", help="add {0} and the full space (cyclic)")
    p.add_argument("--augment", type=int, help="greedily add words keeping this subspace distance (puncture)")
    p.add_argument("--max-new", type=int)
    p.add_argument("--in", dest="inp", help="input file (lift: rank code; puncture: code, '-' for stdin)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a property of a code read from --in or stdin")
    p.add_argument("what", choices=("mindist", "steiner", "design", "covering", "spread", "partial-spread",
                                     "std", "cover"))
    p.add_argument("--metric", choices=METRICS)
    p.add_argument("--expect", type=int, help="required minimum distance")
    p.add_argument("--t", type=int)
    p.add_argument("--lam", type=int, default=1)
    p.add_argument("--k", type=int)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUM_CAP)
    _add_io(p, inp=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="bounds on A_q(n, delta, k)")
    p.add_argument("what", choices=("single", "table"))
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--n", required=True, type=int_range)
    p.add_argument("--delta", type=int_range)
    p.add_argument("--k", type=int_range)
    p.add_argument("--include-trivial", action="store_true")
    p.add_argument("--no-constructions", action="store_true",
                   help="skip the multilevel construction sizes among the lower bounds")
    p.add_argument("--format", choices=("csv", "text", "json"))
    _add_io(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("projections", help="projection equations for a hypothetical q-Steiner system")
    p.add_argument("what", choices=("gen", "solve", "report"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--rho", type=int_range)
    p.add_argument("--pin", action="append", help="fix a variable, INDEX=VALUE (repeatable)")
    p.add_argument("--cap", type=int, default=2, help="stop after this many solutions")
    p.add_argument("--budget", type=int, default=projections.DEFAULT_NODE_BUDGET)
    p.add_argument("--symmetric", action="store_true",
                   help="search only solutions invariant under a cyclic group fixing one point")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_io(p, inp=True)
    p.set_defaults(func=cmd_projections)

    p = sub.add_parser("complements", help="count subspaces meeting their dual trivially")
    p.add_argument("--n", required=True, type=int_range)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUM_CAP)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    _add_io(p)
    p.set_defaults(func=cmd_complements)
    return parser


_REQUIRED: dict[tuple[str, str | None], tuple[str, ...]] = {
    ("construct", "mrd"): ("k", "l", "delta"),
    ("construct", "multilevel"): ("delta",),
    ("construct", "spread"): ("n", "k"),
    ("construct", "partial-spread"): ("n", "k"),
    ("verify", "steiner"): ("t",),
    ("verify", "design"): ("t",),
    ("verify", "covering"): ("t",),
    ("bounds", "single"): ("delta", "k"),
    ("projections", "gen"): ("n", "k", "t", "rho"),
    ("projections", "report"): ("n", "k", "t", "rho"),
}


def _check_required(args) -> None:
    key = (args.command, getattr(args, "what", None))
    missing = [f"--{a}" for a in _REQUIRED.get(key, ()) if getattr(args, a, None) is None]
    if key == ("construct", "mrd") and args.diagram:
        missing = [m for m in missing if m not in ("--k", "--l")]
    if missing:
        raise UsageError(f"{' '.join(key)} needs {', '.join(missing)}")
    if args.command == "bounds" and args.what == "single":
        for name in ("n", "delta", "k"):
            vals = getattr(args, name)
            if len(vals) != 1:
                raise UsageError(f"bounds single takes one value for --{name}")
            setattr(args, name, vals[0])
    if args.command == "projections" and args.what == "gen":
        if len(args.rho) != 1:
            raise UsageError("projections gen takes a single --rho")
        args.rho = args.rho[0]
    if args.command == "construct" and args.what == "puncture" and args.inp is None:
        args.inp = "-"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    func: Callable = args.func
    try:
        _check_required(args)
        return func(args)
    except CapExceeded as exc:
        print(f"qspace: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (QSpaceError, UsageError) as exc:
        print(f"qspace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:  # pragma: no cover - downstream closed early
        return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
