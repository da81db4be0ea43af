"""Command-line front end.

Every subcommand builds a JSON report; the text output is a rendering of it.
Exit codes: 0 when every check passes (divergence and non-integral shifts
are findings, not failures), 1 when an identity fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from pathlib import Path
from typing import Dict, List, Sequence

from . import __version__
from . import gklo, monopole, rank2
from .quiver import (QuiverError, ValuedQuiver, build_pair, check_assumption, classify_finite,
                     edge_constants, edge_identities_hold, finite_type_quiver, unfold)
from .poly import norm_scalar
from .shift import Ambient, ShiftOperator

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    def __init__(self, errors):
        self.errors = [errors] if isinstance(errors, str) else list(errors)
        super().__init__("; ".join(self.errors))


# input ------------------------------------------------------------------------

def load_json_arg(value: str, what: str):
    """``value`` is inline JSON (starting with ``{`` or ``[``) or a file path."""
    text = value.strip()
    if not text.startswith(("{", "[")):
        try:
            text = Path(value).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {what} file {value!r}: {exc.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {what} at line {exc.lineno} column {exc.colno}: {exc.msg}")


def load_quiver(args) -> ValuedQuiver:
    if getattr(args, "type", None):
        try:
            kind, n = args.type[0].upper(), int(args.type[1:])
            v = _int_list(args.v) if args.v else None
            w = _int_list(args.w) if args.w else None
            return finite_type_quiver(kind, n, v, w)
        except (ValueError, KeyError, QuiverError) as exc:
            raise InputError(getattr(exc, "errors", None) or f"bad --type {args.type!r}: {exc}")
    if not getattr(args, "quiver", None):
        raise InputError("one of --quiver or --type is required")
    data = load_json_arg(args.quiver, "quiver")
    try:
        return ValuedQuiver.from_json(data)
    except QuiverError as exc:
        raise InputError(exc.errors)


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}")


def _point(text: str):
    vals = _int_list(text)
    if len(vals) != 2:
        raise InputError(f"expected a lattice point a,b, got {text!r}")
    return tuple(vals)


def _coweight(value: str, q: ValuedQuiver):
    data = load_json_arg(value, "coweight")
    try:
        lam = tuple(tuple(int(x) for x in part) for part in data)
    except (TypeError, ValueError):
        raise InputError("coweight must be a list of integer lists, one per vertex")
    if [len(p) for p in lam] != list(q.v):
        raise InputError(f"coweight shape {[len(p) for p in lam]} does not match v = {list(q.v)}")
    return lam


def _quiver_note(q: ValuedQuiver) -> List[str]:
    if q.symmetrizer_inferred:
        return [f"symmetrizer not given; using the minimal one d = {list(q.d)}"]
    return []


# subcommands ------------------------------------------------------------------

def cmd_validate(args) -> dict:
    q = load_quiver(args)
    consts = edge_constants(q)
    edges = [{"edge": f"{e.i}-{e.j}", "g": e.g, "f_ij": e.f_ij, "f_ji": e.f_ji, "d_ij": e.d_ij}
             for e in sorted(consts.values(), key=lambda e: (e.i, e.j))]
    checks = [{"id": "edge-identities", "anchor": "edge constants: d_ij = gcd, d_i f_ij = lcm",
               "status": "pass" if edge_identities_hold(q) else "fail"}]
    return {"input": {"quiver": q.to_json()}, "notes": _quiver_note(q), "checks": checks,
            "result": {"valid": True, "symmetrizer": list(q.d), "edges": edges,
                       "assumption": check_assumption(q), "finite_type": classify_finite(q)}}


def cmd_monopole(args) -> dict:
    q = load_quiver(args)
    flavor = not args.no_flavor
    echo = {"quiver": q.to_json(), "flavor_term": flavor}
    if args.coweight:
        lam = _coweight(args.coweight, q)
        echo["coweight"] = [list(p) for p in lam]
        result = {
            "delta": str(monopole.delta(q, lam, flavor)),
            "d_lambda": monopole.d_lambda(q, lam, flavor),
            "rho_pairing": str(norm_scalar(monopole.rho_pairing(lam))),
            "homological_exponent": monopole.homological_exponent(q, lam, flavor),
            "grading_gap": str(monopole.grading_gap(q, lam, flavor)),
        }
        return {"input": echo, "notes": _quiver_note(q), "checks": [], "result": result}
    if args.order < 1 or args.bound < 1:
        raise InputError("--order and --bound must be positive")
    cap = None
    if args.cap:
        cap = load_json_arg(args.cap, "cap")
    echo.update(order=args.order, bound=args.bound, grading=args.grading, cap=cap)
    report = monopole.hilbert_series(q, args.order, args.bound, flavor_term=flavor,
                                     grading=args.grading, cap=cap, workers=args.workers)
    notes = _quiver_note(q)
    if report.status != "stable":
        notes.append(f"series is {report.status} at bound {args.bound}")
    return {"input": echo, "notes": notes, "checks": [], "result": report.to_json()}


RANK2_CHECKS = ("all", "relations", "ladder", "family", "presentation", "zastava-g2")


def cmd_rank2(args) -> dict:
    if args.m < 1 or args.m > 12:
        raise InputError("--m must be between 1 and 12")
    custom = any(x is not None for x in (args.g, args.f12, args.f21))
    edge = rank2.edge_from_args(args.m, args.g, args.f12, args.f21) if custom else rank2.EdgeData.from_m(args.m)
    if min(edge.g, edge.f12, edge.f21) < 1:
        raise InputError("--g, --f12, --f21 must be positive")
    echo = {"m": args.m, "edge": edge.to_json(), "check": args.check}
    results: List[rank2.RelationResult] = []
    want = {args.check} if args.check != "all" else set(RANK2_CHECKS)
    if "relations" in want:
        named = [r for r in rank2.named_relations() if r.id.startswith(f"m{args.m}-")]
        results += named or rank2.quadratic_relations(args.m)
    if "ladder" in want:
        results += rank2.ladder_relations(args.m)
    if "family" in want:
        results += rank2.quadratic_relations(args.m)
    if "presentation" in want:
        results += rank2.presentation_checks(edge)
    result: Dict[str, object] = {}
    if "zastava-g2" in want:
        z = rank2.g2_zastava_dictionary()
        results += z.relations
        result["boundary"] = str(z.boundary)
        result["boundary_matches"] = z.boundary_matches
        result["boundary_in_torus"] = z.boundary_in_torus
    if args.zstar:
        result["zstar"] = {f"{a},{b}": rank2.zstar((a, b), edge).to_json()
                           for a, b in (_point(p) for p in args.zstar)}
    checks = [r.to_json() for r in results]
    if "zastava-g2" in want:
        checks.append({"id": "zastava-boundary", "anchor": "G2 zastava boundary equation",
                       "status": "pass" if z.boundary_matches and z.boundary_in_torus else "fail"})
    result["checked"] = len(checks)
    return {"input": echo, "notes": [], "checks": checks, "result": result}


GKLO_CHECKS = ("sigma", "phi", "compare", "relations", "all")


def cmd_gklo(args) -> dict:
    q = load_quiver(args)
    if not 1 <= args.modes <= 4:
        raise InputError("--modes must be between 1 and 4")
    data = gklo.TheoryData(q)
    want = {args.check} if args.check != "all" else set(GKLO_CHECKS)
    echo = {"quiver": q.to_json(), "check": args.check, "modes": args.modes,
            "rescale": not args.literal}
    notes = _quiver_note(q)
    checks: List[dict] = []
    result: Dict[str, object] = {}
    mu1, mu2 = gklo.mu12(data)
    result["mu"] = data.mu()
    result["mu1"], result["mu2"] = mu1, mu2
    sigma = None
    if want & {"sigma", "compare"}:
        try:
            sigma = gklo.solve_sigma(q)
        except gklo.SigmaCycleError as exc:
            raise InputError(exc.errors)
        if args.sigma_shift:
            sigma = sigma.shifted(args.sigma_shift)
        result["sigma"] = sigma.to_json()
        zero = all(v == 0 for v in sigma.residuals.values())
        checks.append({"id": "sigma-residuals", "anchor": "sigma shift equations along arrows",
                       "status": "pass" if zero else "fail"})
        if not sigma.integral:
            notes.append("sigma is not integral for this quiver")
    if "phi" in want:
        images = {}
        for i in q.ids:
            for gen in gklo.GENERATORS:
                for k in range(1, args.modes + 1):
                    x = gklo.phi(data, gen, i, k, rescale=not args.literal)
                    images[f"{gen}[{i}]^({k})"] = str(x)
                    ok = gklo.image_shape_ok(data, gen, i, x) and isinstance(x.grade(), (int, type(None)))
                    checks.append({"id": f"phi-shape-{gen}-{i}-{k}",
                                   "anchor": f"GKLO image of {gen}_{i}^({k}): shift support and grading",
                                   "status": "pass" if ok else "fail"})
        result["phi"] = images
    if "compare" in want:
        try:
            cmp = gklo.compare_all(data, args.modes, sigma, rescale=not args.literal)
        except QuiverError as exc:
            raise InputError(exc.errors)
        checks += [c.to_json() for c in cmp]
        result["f_signs"] = {c.id: c.detail["sign"] for c in cmp if "sign" in c.detail}
    if "relations" in want:
        try:
            suite = gklo.relation_suite(data, args.modes)
        except ValueError as exc:
            raise InputError(str(exc))
        checks += [c.to_json() for c in suite.checks]
        result["scalars"] = suite.scalars
        result["global_sign"] = suite.sign
    return {"input": echo, "notes": notes, "checks": checks, "result": result}


def cmd_unfold(args) -> dict:
    q = load_quiver(args)
    partition = load_json_arg(args.partition, "partition") if args.partition else None
    try:
        u = unfold(q, partition)
    except QuiverError as exc:
        raise InputError(exc.errors)
    checks = []
    if u.expected_type is not None:
        checks.append({"id": "unfolding-type", "anchor": f"unfolding table entry for {u.source_type}",
                       "status": "pass" if u.table_matches else "fail",
                       "detail": {"expected": u.expected_type, "got": u.target_type}})
    return {"input": {"quiver": q.to_json(), "partition": partition}, "notes": _quiver_note(q),
            "checks": checks,
            "result": {"quiver": u.quiver.to_json(), "weight": u.weight,
                       "source_type": u.source_type, "target_type": u.target_type}}


def cmd_pair(args) -> dict:
    q = load_quiver(args)
    pair = build_pair(q)
    checks = [{"id": "pair-trivial-action", "anchor": "G_k acts trivially on N_j unless j divides k",
               "status": "pass" if pair.trivial_action_holds(q) else "fail"}]
    return {"input": {"quiver": q.to_json()}, "notes": _quiver_note(q), "checks": checks,
            "result": pair.to_json()}


def cmd_corpus(args) -> dict:
    entries = load_corpus(args.dir)
    checks = [run_corpus_entry(e) for e in entries]
    return {"input": {"dir": args.dir or "builtin"}, "notes": [], "checks": checks,
            "result": {"entries": len(checks)}}


# golden corpus ----------------------------------------------------------------

def load_corpus(directory: str | None = None) -> List[dict]:
    if directory:
        files = sorted(Path(directory).glob("*.json"))
        return [dict(json.loads(p.read_text()), file=p.name) for p in files]
    root = resources.files("coulombkit") / "corpus"
    names = sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))
    return [dict(json.loads((root / n).read_text()), file=n) for n in names]


def lookup(report, path: str):
    node = report
    for part in path.split("."):
        if isinstance(node, list):
            node = node[int(part)]
        else:
            node = node[part]
    return node


def run_corpus_entry(entry: dict) -> dict:
    """Replay one golden file; each expectation is checked against the report."""
    out = {"id": entry["id"], "anchor": entry["anchor"]}
    failures = []
    if entry["kind"] == "cli":
        report, code = run(entry["argv"])
        if code != entry.get("exit", 0):
            failures.append({"exit": code, "expected": entry.get("exit", 0)})
        for path, want in entry.get("expect", {}).items():
            try:
                got = lookup(report, path)
            except (KeyError, IndexError, ValueError, TypeError):
                got = "<missing>"
            if got != want:
                failures.append({"path": path, "got": got, "expected": want})
    elif entry["kind"] == "shift-product":
        q = ValuedQuiver.from_json(entry["quiver"])
        amb = Ambient.from_quiver(q)
        product = amb.scalar(1)
        for factor in entry["factors"]:
            product = product * ShiftOperator.parse(amb, factor)
        expected = ShiftOperator.parse(amb, entry["equals"])
        if product != expected:
            failures.append({"got": str(product), "expected": str(expected)})
    else:
        failures.append({"error": f"unknown corpus kind {entry['kind']!r}"})
    out["status"] = "fail" if failures else "pass"
    if failures:
        out["witness"] = failures
    return out


# driver -----------------------------------------------------------------------

COMMANDS = {
    "validate": cmd_validate,
    "monopole": cmd_monopole,
    "rank2": cmd_rank2,
    "gklo": cmd_gklo,
    "unfold": cmd_unfold,
    "pair": cmd_pair,
    "corpus": cmd_corpus,
}


def _quiver_options(p: argparse.ArgumentParser):
    p.add_argument("--quiver", help="quiver JSON file, or inline JSON text")
    p.add_argument("--type", help="finite type shorthand such as A2, B3, G2 (instead of --quiver)")
    p.add_argument("--v", help="gauge dimensions for --type, comma-separated")
    p.add_argument("--w", help="framing dimensions for --type, comma-separated")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coulombkit",
        description="Exact computations for Coulomb branches of quiver gauge theories with symmetrizers.",
        epilog=f"Set {monopole.WORKERS_ENV}=N to sum the monopole formula on N processes.")
    parser.add_argument("--version", action="version", version=f"coulombkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", help="also write the JSON report to this path")
        p.add_argument("--format", choices=("json", "text"), default="json",
                       help="stdout rendering (default json)")
        p.add_argument("--timing", action="store_true",
                       help="include wall-clock timing in the report (breaks byte stability)")

    p = sub.add_parser("validate", help="check a quiver and print derived edge constants")
    _quiver_options(p)
    common(p)

    p = sub.add_parser("monopole", help="truncated twisted monopole formula")
    _quiver_options(p)
    p.add_argument("--order", type=int, default=20, help="keep exponents below this (default 20)")
    p.add_argument("--bound", type=int, default=8, help="coweight entries in [-bound, bound] (default 8)")
    p.add_argument("--no-flavor", action="store_true", help="drop the framing term")
    p.add_argument("--cap", help="JSON list of per-vertex caps for the dominance order")
    p.add_argument("--grading", choices=monopole.GRADINGS, default="delta")
    p.add_argument("--workers", type=int, default=None,
                   help=f"process count (default from {monopole.WORKERS_ENV}, else 1)")
    p.add_argument("--coweight", help="evaluate the exponents at one coweight, e.g. '[[1],[0]]'")
    common(p)

    p = sub.add_parser("rank2", help="rank-2 torus model identities")
    p.add_argument("--m", type=int, default=3, help="edge multiplicity m with g=f12=1, f21=m (default 3)")
    p.add_argument("--g", type=int, help="general edge data g12")
    p.add_argument("--f12", type=int, help="general edge data f12")
    p.add_argument("--f21", type=int, help="general edge data f21")
    p.add_argument("--check", choices=RANK2_CHECKS, default="all")
    p.add_argument("--zstar", action="append", metavar="A,B", help="print the image of y_{A,B}")
    common(p)

    p = sub.add_parser("gklo", help="GKLO images, shift solver, comparison and relation suite")
    _quiver_options(p)
    p.add_argument("--check", choices=GKLO_CHECKS, default="all")
    p.add_argument("--modes", type=int, default=3, help="largest mode index, 1..4 (default 3)")
    p.add_argument("--literal", action="store_true",
                   help="keep square-root prefactors as symbols s[i] instead of rescaling")
    p.add_argument("--sigma-shift", type=int, default=0, help="add a constant to the solved shifts")
    common(p)

    p = sub.add_parser("unfold", help="split each vertex i into d_i vertices")
    _quiver_options(p)
    p.add_argument("--partition", help="JSON object vertex -> list of d_i dimensions")
    common(p)

    p = sub.add_parser("pair", help="the (G_k, N_k) data attached to the quiver")
    _quiver_options(p)
    common(p)

    p = sub.add_parser("corpus", help="replay the golden corpus")
    p.add_argument("--dir", help="directory of golden JSON files (default: bundled corpus)")
    common(p)
    return parser


def run(argv: Sequence[str]):
    """Parse ``argv`` and execute; returns (report, exit code)."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return {"tool": "coulombkit", "version": __version__, "status": "error",
                "errors": ["invalid arguments"]}, EXIT_INPUT if exc.code else EXIT_OK
    return execute(args)


def execute(args):
    start = time.perf_counter()
    report = {"tool": "coulombkit", "version": __version__, "command": args.command}
    try:
        body = COMMANDS[args.command](args)
    except InputError as exc:
        report.update(status="error", errors=exc.errors)
        return report, EXIT_INPUT
    except QuiverError as exc:
        report.update(status="error", errors=exc.errors)
        return report, EXIT_INPUT
    report.update(body)
    failed = [c for c in report["checks"] if c["status"] == "fail"]
    report["status"] = "fail" if failed else "pass"
    if getattr(args, "timing", False):
        report["seconds"] = round(time.perf_counter() - start, 3)
    return report, EXIT_FAIL if failed else EXIT_OK


def render_text(report: dict) -> str:
    lines = [f"coulombkit {report.get('command', '')}: {report['status']}"]
    for err in report.get("errors", []):
        lines.append(f"  error: {err}")
    for note in report.get("notes", []):
        lines.append(f"  note: {note}")
    for c in report.get("checks", []):
        lines.append(f"  [{c['status']}] {c['id']}  ({c['anchor']})")
        if "witness" in c:
            lines.append("      witness: " + json.dumps(c["witness"], sort_keys=True))
    result = report.get("result")
    if result:
        for key in sorted(result):
            lines.append(f"  {key}: {json.dumps(result[key], sort_keys=True)}")
    return "\n".join(lines)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(sys.argv[1:] if argv is None else list(argv))
    report, code = execute(args)
    text = dumps(report)
    if args.output:
        Path(args.output).write_text(text + "\n")
    print(text if args.format == "json" else render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
