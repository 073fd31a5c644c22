"""Command-line front end.

Subcommands::

    weights FILE      generalized rank weight tables
    enumerator FILE   rank weight enumerator coefficients
    analyze FILE      degeneracy / duality / equivalence report
    sweep             randomized property sweep
    example           print the built-in demonstration code file

Exit codes: 0 on success, 1 on parse/usage errors (including a failing
sweep), 2 when an exact enumeration would exceed the cutoff.  JSON
output is schema-stable with sorted keys and integer values, so
identical inputs produce byte-identical documents.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import AnalysisReport, equivalence_report
from .code import RankCode
from .codefile import EXAMPLE_TEXT, field_to_json, load, serialize_text, to_json_obj
from .errors import Infeasible, RankWeightsError
from .sweep import PROPERTY_NAMES, run_sweep
from .weights import DEFAULT_CUTOFF, DEFINITIONS, WeightProfile, profile

_EXIT_OK = 0
_EXIT_ERROR = 1
_EXIT_INFEASIBLE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.exit(_EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _add_common(sub):
    sub.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    sub.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF,
                     help="max words scanned per subcode before giving up")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker threads for enumerations (results are identical)")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rankweights",
                description="generalized rank weights of rank-metric codes")
    subs = p.add_subparsers(dest="command", required=True)

    w = subs.add_parser("weights", parents=[], help="weight tables of a code file")
    w.add_argument("file")
    w.add_argument("--defs", default=",".join(DEFINITIONS),
                   help="comma-separated subset of " + ",".join(DEFINITIONS))
    w.add_argument("--r", default="all", help="subcode dimension, or 'all'")
    _add_common(w)

    e = subs.add_parser("enumerator", help="enumerator coefficients A[w]")
    e.add_argument("file")
    e.add_argument("--r", default="all", help="subcode dimension, or 'all'")
    _add_common(e)

    a = subs.add_parser("analyze", help="degeneracy and duality diagnostics")
    a.add_argument("file")
    _add_common(a)

    s = subs.add_parser("sweep", help="randomized property sweep")
    s.add_argument("--q", type=int, required=True, help="size of the base field K")
    s.add_argument("--m-max", type=int, required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--k-max", type=int, required=True)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--isometries", type=int, default=50,
                   help="random isometries checked per code")
    _add_common(s)

    x = subs.add_parser("example", help="print the built-in example code file")
    return p


def _parse_defs(text: str) -> tuple:
    names = tuple(t.strip() for t in text.split(",") if t.strip())
    for name in names:
        if name not in DEFINITIONS:
            raise RankWeightsError(f"unknown definition {name!r}; pick from {','.join(DEFINITIONS)}")
    return names


def _parse_r(text: str, k: int):
    if text == "all":
        return None
    try:
        r = int(text)
    except ValueError:
        raise RankWeightsError(f"--r must be an integer or 'all', got {text!r}") from None
    return r


def _bool_int(b) -> int:
    return 1 if b else 0


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _document(code: RankCode, prof: WeightProfile | None = None,
              report: AnalysisReport | None = None, r=None) -> dict:
    doc = {"field": field_to_json(code.field), "n": code.n, "k": code.k}
    if prof is not None:
        doc["weights"] = {name: list(vals) for name, vals in prof.d.items()}
        doc["enumerators"] = [list(row) for row in prof.enumerators]
        doc["m_ge_n"] = _bool_int(prof.m_ge_n)
    if report is not None:
        doc["analysis"] = _analysis_json(code, report)
    if r is not None:
        doc["r"] = r
    return doc


def _analysis_json(code: RankCode, rep: AnalysisReport) -> dict:
    F = code.field
    from .codefile import _entry_to_json  # shared element encoding

    out = {
        "degenerate": _bool_int(rep.degenerate),
        "rsupp_full": _bool_int(rep.rsupp_full),
        "duality_ok": _bool_int(rep.duality_ok),
        "criteria_agree": _bool_int(rep.criteria_agree),
        "bound_km_ge_n": _bool_int(rep.bound_km_ge_n),
        "weights_self": list(rep.weights_self),
        "weights_dual": list(rep.weights_dual),
        "equivalence": {k: [_bool_int(b) for b in v] for k, v in rep.equivalence.items()},
    }
    if rep.witness is not None:
        out["witness"] = {
            "dual_word": [_entry_to_json(F, x) for x in rep.witness.dual_word],
            "normalized": [_entry_to_json(F, x) for x in rep.witness.normalized],
            "isometry_scalar": _entry_to_json(F, rep.witness.isometry.scalar),
            "isometry_matrix": [list(row) for row in rep.witness.isometry.matrix.rows],
        }
    return out


def cmd_weights(args) -> int:
    code = load(args.file)
    defs = _parse_defs(args.defs)
    r = _parse_r(args.r, code.k)
    if r is not None and not 0 <= r <= code.k:
        from .errors import RankOutOfRange

        raise RankOutOfRange(f"r={r} outside 0..k={code.k}")
    prof = profile(code, cutoff=args.cutoff, defs=defs, threads=args.threads)
    if args.json:
        sys.stdout.write(_json_dump(_document(code, prof=prof, r=r)))
        return _EXIT_OK
    if r is not None:
        sys.stdout.write(" ".join(f"{name}:{prof.d[name][r]}" for name in defs) + "\n")
    else:
        for name in defs:
            sys.stdout.write(f"{name}: " + " ".join(str(v) for v in prof.d[name]) + "\n")
    return _EXIT_OK


def cmd_enumerator(args) -> int:
    code = load(args.file)
    r = _parse_r(args.r, code.k)
    from .errors import RankOutOfRange
    from .weights import enumerator

    if r is not None and not 0 <= r <= code.k:
        raise RankOutOfRange(f"r={r} outside 0..k={code.k}")
    rows = (
        [(r, enumerator(code, r, args.threads))]
        if r is not None
        else [(i, enumerator(code, i, args.threads)) for i in range(code.k + 1)]
    )
    if args.json:
        doc = {"field": field_to_json(code.field), "n": code.n, "k": code.k,
               "enumerators": {str(i): coeffs for i, coeffs in rows}}
        sys.stdout.write(_json_dump(doc))
        return _EXIT_OK
    for i, coeffs in rows:
        sys.stdout.write(f"r={i}: [" + ",".join(str(c) for c in coeffs) + "]\n")
    return _EXIT_OK


def cmd_analyze(args) -> int:
    code = load(args.file)
    rep = equivalence_report(code, cutoff=args.cutoff, threads=args.threads)
    if args.json:
        sys.stdout.write(_json_dump(_document(code, prof=rep.profile, report=rep)))
        return _EXIT_OK
    w = sys.stdout.write
    w(f"n={code.n} k={code.k} over GF({code.field.q}^{code.field.m})\n")
    w(f"degenerate: {rep.degenerate}\n")
    if rep.witness is not None:
        w(f"  rank-one dual word: {list(rep.witness.dual_word)}\n")
        w(f"  normalized (in K^n): {list(rep.witness.normalized)}\n")
        w(f"  zeroing isometry matrix rows: {[list(r) for r in rep.witness.isometry.matrix.rows]}\n")
    w(f"support fills K^n: {rep.rsupp_full}\n")
    w(f"duality identity: {rep.duality_ok} (self {list(rep.weights_self)}, dual {list(rep.weights_dual)})\n")
    for name, flags in rep.equivalence.items():
        w(f"{name}: {'OK' if all(flags) else 'DIFFERS at r=' + str([i for i, b in enumerate(flags) if not b])}\n")
    w(f"k*m >= n when nondegenerate: {rep.bound_km_ge_n}\n")
    return _EXIT_OK


def cmd_sweep(args) -> int:
    rep = run_sweep(args.q, args.m_max, args.n_max, args.k_max, args.seed,
                    args.count, cutoff=args.cutoff, isometries=args.isometries,
                    threads=args.threads)
    if args.json:
        doc = {
            "q": args.q,
            "seed": args.seed,
            "count": args.count,
            "passed": _bool_int(rep.all_passed()),
            "properties": {
                name: {"checked": app, "passed": ok}
                for name, (app, ok) in rep.stats.items()
            },
            "failures": [
                {"code": c.code_text, "failed": [r.name for r in c.failed()]}
                for c in rep.failures
            ],
        }
        sys.stdout.write(_json_dump(doc))
        return _EXIT_OK if rep.all_passed() else _EXIT_ERROR
    for name, (app, ok) in rep.stats.items():
        status = "PASS" if ok == app else "FAIL"
        sys.stdout.write(f"{status} {name}: {ok}/{app}\n")
    if not rep.all_passed():
        for c in rep.failures:
            sys.stdout.write("FAILING CODE (" + ", ".join(r.name for r in c.failed()) + "):\n")
            sys.stdout.write(c.code_text)
        sys.stdout.write("sweep FAILED\n")
        return _EXIT_ERROR
    sys.stdout.write(f"sweep passed: {rep.count} codes in {rep.seconds:.1f}s\n")
    return _EXIT_OK


def cmd_example(_args) -> int:
    sys.stdout.write(EXAMPLE_TEXT)
    return _EXIT_OK


_COMMANDS = {
    "weights": cmd_weights,
    "enumerator": cmd_enumerator,
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "example": cmd_example,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else _EXIT_ERROR
    try:
        return _COMMANDS[args.command](args)
    except Infeasible as exc:
        sys.stderr.write(f"infeasible: {exc}\n")
        return _EXIT_INFEASIBLE
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _EXIT_ERROR
    except RankWeightsError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
