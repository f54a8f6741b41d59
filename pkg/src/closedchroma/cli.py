"""Command-line interface.

Family descriptors use ``name[:p1[,p2]]``::

    complete:4  star:3  friendship:2  path:7  cycle:6  bipartite:2,3
    caterpillar:3,4  binary-tree:3  petersen:7,2  mary-tree:4  tiling:r4

Integer ranges accept ``3:12`` (inclusive), ``1,2,5`` or mixtures such as
``1:12,16,24``.

Exit status: 0 completed, 2 completed but some theorem/oracle comparison
failed, 1 usage or resource error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import closedforms, engine
from .engine import Verdict
from .graphs import Family, Graph, build_family, parse_family, read_edge_list

EXIT_OK, EXIT_ERROR, EXIT_FAILURE = 0, 1, 2
FIELDS = ("family", "params", "n", "k", "verdict", "value", "witness", "source",
          "theorem", "conditions", "timing_ms")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ":" in part:
                lo, hi = part.split(":")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad integer range {text!r}") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return sorted(set(out))


def worker_count() -> int:
    env = os.environ.get("CLOSED_CHROMA_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError("CLOSED_CHROMA_THREADS must be an integer") from None
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# input


def load_input(args) -> tuple[str, list[int], Graph, Family]:
    if bool(args.family) == bool(getattr(args, "edges", None)):
        raise UsageError("give exactly one of --family or --edges")
    if args.family:
        try:
            desc = parse_family(args.family)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if not desc.finite:
            raise UsageError(f"{desc} is not finitely realizable; use 'classify'")
        return str(desc), list(desc.params), build_family(desc), desc
    return f"file:{args.edges}", [], load_edges(args.edges), None


def load_edges(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return read_edge_list(text)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def graph_from_family_field(family: str) -> Graph:
    if family.startswith("file:"):
        return load_edges(family[5:])
    try:
        return build_family(parse_family(family))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def read_labeling(path: str) -> list[int]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            values.append(int(line))
        except ValueError:
            raise UsageError(f"{path}:{lineno}: expected one integer, got {line!r}") from None
    return values


# ---------------------------------------------------------------------------
# records and output


def verdict_record(family: str, params, n: int, k: int, verdict: Verdict,
                   theorem: str | None = None, conditions=None) -> dict:
    rec = {"family": family, "params": list(params), "n": n, "k": k, "verdict": verdict.status}
    if verdict.value is not None:
        rec["value"] = verdict.value
    if verdict.witness is not None:
        rec["witness"] = list(verdict.witness.values)
    rec["source"] = verdict.source
    if theorem is not None:
        rec["theorem"] = theorem
    if conditions is not None:
        rec["conditions"] = {name: _jsonable(val) for name, val in conditions}
    return rec


def theorem_record(family: str, params, n: int, k: int, tv: closedforms.TheoremVerdict) -> dict:
    rec = verdict_record(family, params, n, k, tv.verdict, tv.theorem_id, tv.conditions)
    if tv.notes:
        rec["notes"] = list(tv.notes)
    return rec


def _jsonable(val):
    if isinstance(val, tuple):
        return [_jsonable(v) for v in val]
    return val


def render(report: dict, fmt: str) -> str:
    rows = report.get("rows")
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        records = rows if rows is not None else [report]
        extra = sorted({key for r in records for key in r} - set(FIELDS))
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        columns = list(FIELDS) + extra
        writer.writerow(columns)
        for r in records:
            writer.writerow([_csv_cell(r.get(c)) for c in columns])
        return buf.getvalue()
    records = rows if rows is not None else [report]
    lines = []
    for r in records:
        head = f"{r.get('family', '')} n={r.get('n')} k={r.get('k')}"
        if "verdict" in r:
            head += f": {r['verdict']}"
            if "value" in r:
                head += f" {r['value']}"
            head += f" [{r.get('source', '')}]"
        lines.append(head)
        for key in r:
            if key not in ("family", "params", "n", "k", "verdict", "value", "source"):
                lines.append(f"  {key}: {_csv_cell(r[key])}")
    for key, val in report.items():
        if key != "rows" and rows is not None:
            lines.append(f"{key}: {_csv_cell(val)}")
    return "\n".join(lines) + "\n"


def _csv_cell(val) -> str:
    if val is None:
        return ""
    if isinstance(val, list) and all(isinstance(v, int) for v in val):
        return " ".join(map(str, val))
    if isinstance(val, (dict, list)):
        return json.dumps(val, separators=(",", ":"))
    return str(val)


# ---------------------------------------------------------------------------
# subcommands


def cmd_compute(args) -> tuple[dict, int]:
    family, params, graph, _ = load_input(args)
    deadline = time.monotonic() + args.time_budget if args.time_budget else None
    verdict = engine.closed_chromatic_number(graph, args.n, args.k, args.enumeration_cap,
                                             args.chromatic_bound, deadline)
    # a graph over the chromatic bound is never attempted: report it, but as an error
    status = EXIT_ERROR if verdict.source.startswith("resource") else EXIT_OK
    return verdict_record(family, params, args.n, args.k, verdict), status


def cmd_classify(args) -> tuple[dict, int]:
    if args.edges:
        family, params, graph, _ = load_input(args)
        desc = Family("arbitrary", graph=graph)
    else:
        try:
            desc = parse_family(args.family)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        family, params = str(desc), list(desc.params)
    tv = closedforms.classify(desc, args.n, args.k)
    return theorem_record(family, params, args.n, args.k, tv), EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    if args.report:
        return verify_report(args.report)
    if args.labeling is None or args.n is None or args.k is None:
        raise UsageError("verify needs --labeling, --n and --k (or --report)")
    family, params, graph, _ = load_input(args)
    values = read_labeling(args.labeling)
    try:
        rep = engine.verify_labeling(graph, values, args.n, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rec = {"family": family, "params": params, "n": args.n, "k": args.k,
           "proper": rep.proper, "closed_ok": rep.closed_ok, "order": rep.order}
    if rep.first_violation:
        rec["first_violation"] = rep.first_violation
    return rec, EXIT_OK if rep.ok else EXIT_FAILURE


def verify_report(path: str) -> tuple[dict, int]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read report {path}: {exc}") from None
    records = data.get("rows", [data]) if isinstance(data, dict) else data
    rows, failures = [], 0
    for rec in records:
        witness = rec.get("witness")
        if witness is None:
            continue
        graph = graph_from_family_field(rec["family"])
        rep = engine.verify_labeling(graph, witness, rec["n"], rec["k"])
        ok = rep.ok and ("value" not in rec or rep.order == rec["value"])
        failures += not ok
        rows.append({"family": rec["family"], "n": rec["n"], "k": rec["k"],
                     "proper": rep.proper, "closed_ok": rep.closed_ok, "order": rep.order,
                     "value_matches": "value" not in rec or rep.order == rec["value"]})
    return {"rows": rows, "checked": len(rows), "failures": failures}, \
        EXIT_FAILURE if failures else EXIT_OK


SURVEY_FAMILIES = ("complete", "star", "friendship", "path", "cycle", "bipartite",
                   "caterpillar", "binary-tree", "petersen", "tiling")


def _survey_cell(cell):
    kind, params, n, k, cap = cell
    if kind == "tiling":
        size = params[1]
        tv = closedforms.classify(Family("tiling", (params[0],)), n, k)
        try:
            witness = closedforms.tiling_quotient_witness(params[0], n, k, size, size, lift=True)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        oracle = (Verdict.exists(witness.order, "quotient-witness", witness) if witness is not None
                  else Verdict.not_exists("quotient-witness"))
        agree = (witness is not None) == closedforms.tiling_condition(params[0], n, k)
        return tv, oracle, agree
    desc = Family(kind, params)
    tv = closedforms.classify(desc, n, k)
    graph = build_family(desc)
    if kind in ("binary-tree", "petersen"):
        space = engine.exists_closed_coloring(graph, n, k)
        oracle = Verdict.exists(None, "oracle") if space is not None else Verdict.not_exists("oracle")
    else:
        oracle = engine.closed_chromatic_number(graph, n, k, cap)
    c = tv.verdict
    if c.is_unknown or oracle.is_unknown:
        agree = None
    else:
        agree = c.status == oracle.status and (c.value is None or c.value == oracle.value)
    return tv, oracle, agree


def cmd_survey(args) -> tuple[dict, int]:
    kind = args.family
    p1 = parse_range(args.p1)
    p2 = parse_range(args.p2) if args.p2 else None
    n_values = parse_range(args.n)
    cells = []
    for a in p1:
        for b in (p2 if p2 is not None else [None]):
            params = (a,) if b is None else (a, b)
            if kind == "petersen" and b is None:
                raise UsageError("petersen survey needs --p2 for j")
            if kind == "tiling" and b is None:
                params = (a, {3: 6, 4: 4, 6: 3}.get(a, 4))
            try:
                if kind != "tiling":
                    Family(kind, params)
            except ValueError:
                continue
            for n in n_values:
                ks = parse_range(args.k) if args.k else range(n)
                for k in ks:
                    cells.append((kind, params, n, k, args.enumeration_cap))
    deadline = time.monotonic() + args.time_budget if args.time_budget else None
    results = _run_cells(cells, deadline)
    rows, failures = [], 0
    for cell, res in zip(cells, results):
        kind_, params, n, k, _ = cell
        family = (f"tiling:r{params[0]}" if kind_ == "tiling"
                  else str(Family(kind_, params)))
        if res is None:
            rec = verdict_record(family, params, n, k, Verdict.unknown("budget"))
            rec["agree"] = None
            rows.append(rec)
            continue
        tv, oracle, agree = res
        rec = verdict_record(family, params, n, k, oracle)
        rec["classifier"] = {"verdict": tv.verdict.status, "value": tv.verdict.value,
                             "theorem": tv.theorem_id, "source": tv.verdict.source}
        rec["conditions"] = {name: _jsonable(v) for name, v in tv.conditions}
        rec["agree"] = agree
        failures += agree is False
        rows.append(rec)
    report = {"family": kind, "rows": rows, "cells": len(rows), "failures": failures}
    return report, EXIT_FAILURE if failures else EXIT_OK


def _run_cells(cells, deadline):
    workers = worker_count()
    if workers > 1 and len(cells) > 64 and deadline is None:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_survey_cell, cells, chunksize=16))
    out = []
    for cell in cells:
        if deadline is not None and time.monotonic() > deadline:
            out.append(None)
        else:
            out.append(_survey_cell(cell))
    return out


def cmd_frontier(args) -> tuple[dict, int]:
    if args.probe == "petersen":
        j_filter = {"all": None, "even": lambda j: j % 2 == 0, "odd": lambda j: j % 2 == 1}[args.j]
        cells = closedforms.petersen_frontier(parse_range(args.m or "3:10"), j_filter,
                                              parse_range(args.n or "1:12,16,24"),
                                              parse_range(args.k or "1,2"), args.time_budget)
        rows = []
        for c in cells:
            rec = theorem_record(f"petersen:{c.m},{c.j}", [c.m, c.j], c.n, c.k, c.classifier)
            rec["oracle"] = c.oracle.status
            rec["status"] = ("FAILURE" if c.failure else
                             "resolved-open-cell" if c.resolves_open_cell else
                             "open" if c.classifier.verdict.is_unknown else "agree")
            rows.append(rec)
        failures = sum(c.failure for c in cells)
        report = {"probe": "petersen", "rows": rows, "cells": len(rows),
                  "resolved_open_cells": sum(c.resolves_open_cell for c in cells),
                  "failures": failures}
        return report, EXIT_FAILURE if failures else EXIT_OK

    family, params, graph, _ = load_input(args)
    if args.probe == "additivity":
        rows = []
        for n in parse_range(args.n or "1:6"):
            for k1 in range(n):
                for k2 in range(k1, n):
                    r = engine.probe_additivity(graph, n, k1, k2, args.enumeration_cap)
                    rec = verdict_record(family, params, n, k1 + k2, r.lhs)
                    rec.update({"k1": k1, "k2": k2, "rhs_sum": r.rhs_sum,
                                "subadditive": r.subadditive})
                    rows.append(rec)
        violations = sum(r["subadditive"] is False for r in rows)
        return {"probe": "additivity", "family": family, "rows": rows,
                "violations": violations}, EXIT_OK

    record = engine.probe_ieds_question(graph, args.n_max)
    return {"probe": "ieds", "family": family, "params": params,
            "ieds": list(record.ieds) if record.ieds is not None else None,
            "chromatic": record.chromatic, "moduli_checked": record.moduli_checked,
            "exists_for_all_n": record.all_exist,
            "failing_modulus": record.failing_modulus}, EXIT_OK


def cmd_series(args) -> tuple[dict, int]:
    rows = [{"index": c.index, "coefficient": str(c), "alpha": c.alpha_coef, "k": c.k_coef}
            for c in closedforms.binary_tree_coeffs(args.upto)]
    return {"series": "perfect-binary-tree level labels", "rows": rows}, EXIT_OK


def cmd_ieds(args) -> tuple[dict, int]:
    family, params, graph, _ = load_input(args)
    found = engine.find_ieds(graph, args.ieds_bound)
    rec = {"family": family, "params": params,
           "ieds": list(found) if found is not None else None}
    if found is not None and args.n is not None:
        labeling = engine.coloring_from_ieds(graph, found, args.n, args.k or 0,
                                             args.chromatic_bound)
        rep = engine.verify_labeling(graph, labeling, args.n, args.k or 0)
        rec.update({"n": args.n, "k": args.k or 0, "witness": list(labeling.values),
                    "order": labeling.order, "proper": rep.proper, "closed_ok": rep.closed_ok})
    return rec, EXIT_OK


def _render_series(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    return "".join(f"{r['index']}, {r['coefficient']}\n" for r in report["rows"])


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="closed-chroma", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, graph_input=True, nk=True, nk_required=True):
        if graph_input:
            p.add_argument("--family", help="family descriptor, e.g. petersen:7,2")
            p.add_argument("--edges", help="edge-list file")
        if nk:
            p.add_argument("--n", type=int, required=nk_required)
            p.add_argument("--k", type=int, required=nk_required)
        p.add_argument("--enumeration-cap", type=int, default=engine.DEFAULT_ENUMERATION_CAP)
        p.add_argument("--chromatic-bound", type=int, default=engine.DEFAULT_CHROMATIC_BOUND)
        p.add_argument("--ieds-bound", type=int, default=engine.DEFAULT_IEDS_BOUND)
        p.add_argument("--time-budget", type=float, default=None, help="seconds")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--output", help="write here instead of standard output")
        p.add_argument("--timing", action="store_true",
                       help="add timing_ms (reports are then no longer byte-reproducible)")

    p = sub.add_parser("compute", help="exact closed chromatic number of a graph")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("classify", help="closed-form verdict for a family")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="check a labeling file or re-check a JSON report")
    common(p, nk_required=False)
    p.add_argument("--labeling", help="one integer per line, in vertex order")
    p.add_argument("--report", help="JSON report whose witnesses are re-verified")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("survey", help="classifier against oracle over a parameter grid")
    common(p, graph_input=False, nk=False)
    p.add_argument("--family", required=True, choices=SURVEY_FAMILIES)
    p.add_argument("--p1", required=True, help="first parameter range (tiling: 3,4,6)")
    p.add_argument("--p2", help="second parameter range (tiling: torus size)")
    p.add_argument("--n", required=True, help="modulus range")
    p.add_argument("--k", help="remainder range (default: all of 0..n-1)")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("frontier", help="probe open cases")
    common(p, nk=False)
    p.add_argument("probe", choices=("petersen", "additivity", "ieds"))
    p.add_argument("--m", help="petersen: range of m")
    p.add_argument("--j", choices=("all", "even", "odd"), default="all")
    p.add_argument("--n", help="modulus range")
    p.add_argument("--k", help="petersen: remainders (default 1,2)")
    p.add_argument("--n-max", type=int, default=12, help="ieds: largest modulus checked")
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("series", help="binary-tree level coefficients")
    common(p, graph_input=False, nk=False)
    p.add_argument("--upto", type=int, default=16)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("ieds", help="find an IEDS and optionally the colouring built from it")
    common(p, nk_required=False)
    p.set_defaults(func=cmd_ieds)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for cap in ("enumeration_cap", "chromatic_bound", "ieds_bound"):
        if getattr(args, cap) < 1:
            parser.error(f"--{cap.replace('_', '-')} must be positive")
    if args.time_budget is not None and args.time_budget <= 0:
        parser.error("--time-budget must be positive")
    if getattr(args, "n", None) is not None and isinstance(args.n, int) and args.n < 1:
        parser.error("--n must be positive")
    start = time.perf_counter()
    try:
        report, status = args.func(args)
    except UsageError as exc:
        print(f"closed-chroma: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except engine.ResourceLimit as exc:
        print(f"closed-chroma: resource limit: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.timing:
        report["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    if args.command == "series":
        text = _render_series(report, args.format)
    else:
        text = render(report, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
