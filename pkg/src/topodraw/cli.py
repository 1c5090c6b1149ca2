"""Command-line front end.

Every subcommand prints a JSON run report on stdout (a short human summary
goes to stderr) with enough provenance -- parameters, seeds, input digests,
tool version -- to re-run bit-identically.  Exit codes: 0 the computation
ran (whatever the verdict), 1 input error, 2 internal inconsistency.
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from fractions import Fraction

import click

from . import __version__, geometry, graphs, halfcircle, matrices, ramsey, realizability
from .errors import BudgetExceededError, InconsistencyError, InputError
from .planarity import check_planarity
from .tables import TypeTable, load_table


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _emit(subcommand: str, parameters: dict, result: dict,
          inputs: dict | None = None, started: float | None = None,
          summary: str | None = None) -> None:
    report = {
        "subcommand": subcommand,
        "version": __version__,
        "parameters": parameters,
        "input_digests": {name: _digest(path) for name, path in (inputs or {}).items()},
        "result": result,
        "duration_seconds": round(time.monotonic() - started, 6) if started else None,
    }
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    if summary:
        print(summary, file=sys.stderr)


def _frac_dict(q: Fraction) -> dict:
    return {"numerator": q.numerator, "denominator": q.denominator, "float": float(q)}


def _maybe_svg(drawing, svg_path):
    if svg_path:
        with open(svg_path, "w") as fh:
            fh.write(geometry.drawing_to_svg(drawing))


def _maybe_out(payload: dict, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


@click.group()
def cli():
    """Tools for simple topological graph drawings."""


# -- planarity / realizability -------------------------------------------------


@cli.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True))
@click.option("--certificate", is_flag=True, help="include an embedding or Kuratowski witness")
def planar(graph_path, certificate):
    """Planarity of an abstract graph."""
    started = time.monotonic()
    g = graphs.load_graph(graph_path)
    res = check_planarity(g, certificate=certificate)
    result = {"planar": res.planar}
    if certificate:
        if res.embedding is not None:
            result["embedding"] = {str(v): [str(w) for w in ns]
                                   for v, ns in sorted(res.embedding.items(), key=lambda kv: str(kv[0]))}
        if res.kuratowski is not None:
            result["kuratowski"] = {"kind": res.kuratowski.kind,
                                    "subgraph": res.kuratowski.subgraph.to_json_dict()}
    _emit("planar", {"graph": graph_path, "certificate": certificate}, result,
          inputs={"graph": graph_path}, started=started,
          summary=f"planar: {res.planar}")


@cli.command()
@click.option("--file", "spec_path", required=True, type=click.Path(exists=True))
def realize(spec_path):
    """Realizability of a crossing specification as a simple drawing."""
    started = time.monotonic()
    spec = realizability.load_spec(spec_path)
    ok = realizability.is_realizable(spec)
    _emit("realize", {"file": spec_path}, {"realizable": ok},
          inputs={"file": spec_path}, started=started, summary=f"realizable: {ok}")


@cli.command(name="c6-audit")
@click.option("--control", is_flag=True,
              help="run the thrackle control set instead of the audit")
@click.option("--full-control", is_flag=True,
              help="with --control, enumerate everything instead of stopping at the first witness")
@click.option("--no-symmetry", is_flag=True, help="skip the symmetry re-runs")
@click.option("--jobs", default=1, show_default=True, type=int)
def c6_audit(control, full_control, no_symmetry, jobs):
    """Exhaustive realizability audit of 6-cycle local-thrackle specifications."""
    started = time.monotonic()
    if control:
        report = realizability.c6_thrackle_control(jobs=jobs, stop_at_first=not full_control)
    else:
        report = realizability.c6_local_thrackle_audit(jobs=jobs, symmetry_check=not no_symmetry)
    _emit("c6-audit", {"control": control, "full_control": full_control,
                       "symmetry": not no_symmetry, "jobs": jobs},
          report.to_json_dict(), started=started,
          summary=f"tested {report.tested}, realizable {report.realizable}")


# -- pattern / drawing predicates -----------------------------------------------


def _load_pattern_arg(pattern_path, drawing_path):
    if (pattern_path is None) == (drawing_path is None):
        raise InputError("provide exactly one of --pattern or --drawing")
    if pattern_path:
        pattern = graphs.load_pattern(pattern_path)
        report = graphs.validate_simple_pattern(pattern)
        if not report.valid:
            raise InputError("invalid pattern: "
                             + "; ".join(v.describe() for v in report.violations))
        return pattern, {"pattern": pattern_path}
    with open(drawing_path) as fh:
        drawing = geometry.GeometricDrawing.from_json_dict(json.load(fh))
    return geometry.simple_crossing_pattern(drawing), {"drawing": drawing_path}


def _edge_json(e):
    return [str(v) for v in graphs.edge_key(e)]


@cli.command()
@click.argument("check", type=click.Choice(
    ["thrackle", "local-thrackle", "plane-path", "self-crossing-path"]))
@click.option("--pattern", "pattern_path", type=click.Path(exists=True))
@click.option("--drawing", "drawing_path", type=click.Path(exists=True))
@click.option("--k", "k", type=int, default=None,
              help="path length for the path checks (default 3, or 4 for self-crossing)")
def verify(check, pattern_path, drawing_path, k):
    """Drawing-level predicates on a crossing pattern or a geometric drawing."""
    started = time.monotonic()
    pattern, inputs = _load_pattern_arg(pattern_path, drawing_path)
    if check == "thrackle":
        ok, witness = graphs.is_thrackle(pattern)
        result = {"verdict": ok,
                  "witness": [_edge_json(witness[0]), _edge_json(witness[1])] if witness else None}
        summary = f"thrackle: {ok}"
    elif check == "local-thrackle":
        ok, witness = graphs.is_local_thrackle(pattern)
        result = {"verdict": ok,
                  "witness": [str(v) for v in witness.vertices] if witness else None}
        summary = f"local thrackle: {ok}"
    elif check == "plane-path":
        k = 3 if k is None else k
        witness = graphs.find_plane_path(pattern, k)
        result = {"found": witness is not None, "k": k,
                  "path": [str(v) for v in witness.vertices] if witness else None}
        summary = f"plane {k}-path: {witness is not None}"
    else:
        k = 4 if k is None else k
        witness = graphs.find_self_intersecting_path(pattern, k)
        result = {"found": witness is not None, "k": k,
                  "path": [str(v) for v in witness.vertices] if witness else None}
        summary = f"self-intersecting {k}-path: {witness is not None}"
    _emit("verify", {"check": check, "k": k, **{k2: v for k2, v in inputs.items()}},
          result, inputs=inputs, started=started, summary=summary)


@cli.command()
@click.argument("kind", type=click.Choice(["thrackleable", "local-thrackleable"]))
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True))
def classify(kind, graph_path):
    """Geometric drawability of an abstract graph (straight-line edges)."""
    started = time.monotonic()
    g = graphs.load_graph(graph_path)
    if kind == "thrackleable":
        res = graphs.classify_geometric_thrackleable(g)
    else:
        res = graphs.classify_geometric_local_thrackleable(g)
    result = {
        "verdict": res.verdict,
        "reason": res.reason,
        "components": [
            {"vertices": [str(v) for v in c.vertices], "kind": c.kind,
             "cycle_length": c.cycle_length}
            for c in res.components
        ],
    }
    _emit("classify", {"kind": kind, "graph": graph_path}, result,
          inputs={"graph": graph_path}, started=started,
          summary=f"{kind}: {res.verdict}")


# -- geometric constructions -----------------------------------------------------


def _parse_spikes(n, spikes):
    if spikes is None:
        return None
    parts = [p.strip() for p in str(spikes).split(",")]
    if len(parts) == 1:
        return [int(parts[0])] * n
    if len(parts) != n:
        raise InputError(f"--spikes needs 1 or {n} comma-separated counts")
    return [int(p) for p in parts]


@cli.command()
@click.option("--n", required=True, type=int)
@click.option("--spikes", default=None, help="spike count, or per-vertex comma list")
@click.option("--svg", "svg_path", type=click.Path(), default=None)
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="also write the drawing JSON to a file")
def ngon(n, spikes, svg_path, out_path):
    """Spiked even-cycle local thrackle on a regular n-gon."""
    started = time.monotonic()
    counts = _parse_spikes(n, spikes)
    drawing = geometry.ngon_spiked_cycle(n, counts)
    pattern = geometry.simple_crossing_pattern(drawing)
    local_ok, _ = graphs.is_local_thrackle(pattern)
    thr_ok, witness = graphs.is_thrackle(pattern)
    payload = drawing.to_json_dict()
    _maybe_svg(drawing, svg_path)
    _maybe_out(payload, out_path)
    result = {
        "n": n,
        "step": geometry.spiked_ngon_step(n),
        "spikes": counts or [0] * n,
        "local_thrackle": local_ok,
        "thrackle": thr_ok,
        "non_crossing_pair": [_edge_json(witness[0]), _edge_json(witness[1])] if witness else None,
        "drawing": payload,
    }
    _emit("ngon", {"n": n, "spikes": spikes, "svg": svg_path, "out": out_path},
          result, started=started,
          summary=f"n={n}: local thrackle {local_ok}, thrackle {thr_ok}")


@cli.command()
@click.option("--s", required=True, type=int)
@click.option("--t", required=True, type=int)
@click.option("--yu", default=None, help="comma list of increasing rationals for U")
@click.option("--yv", default=None, help="comma list of increasing rationals for V")
@click.option("--svg", "svg_path", type=click.Path(), default=None)
@click.option("--out", "out_path", type=click.Path(), default=None)
def twolines(s, t, yu, yv, svg_path, out_path):
    """Complete bipartite drawing on two vertical lines."""
    started = time.monotonic()
    y_u = [p.strip() for p in yu.split(",")] if yu else None
    y_v = [p.strip() for p in yv.split(",")] if yv else None
    drawing = geometry.two_line_drawing(s, t, y_u, y_v)
    payload = drawing.to_json_dict()
    _maybe_svg(drawing, svg_path)
    _maybe_out(payload, out_path)
    pattern = geometry.simple_crossing_pattern(drawing)
    _emit("twolines", {"s": s, "t": t, "yu": yu, "yv": yv}, {
        "drawing": payload,
        "crossings": len(pattern.crossings),
    }, started=started, summary=f"two-line drawing {s}x{t}, {len(pattern.crossings)} crossings")


@cli.command()
@click.option("--drawing", "drawing_path", required=True, type=click.Path(exists=True))
@click.option("--u", "u_list", default=None, help="comma list of U vertices in order")
@click.option("--v", "v_list", default=None, help="comma list of V vertices in order")
@click.option("--out", "out_path", type=click.Path(), default=None)
def typetable(drawing_path, u_list, v_list, out_path):
    """Order-type table of a simple complete bipartite drawing."""
    started = time.monotonic()
    with open(drawing_path) as fh:
        drawing = geometry.GeometricDrawing.from_json_dict(json.load(fh))
    if u_list and v_list:
        part_u = [p.strip() for p in u_list.split(",")]
        part_v = [p.strip() for p in v_list.split(",")]
    elif u_list or v_list:
        raise InputError("provide both --u and --v, or neither")
    else:
        part_u, part_v = geometry.two_line_parts(drawing)
        if not part_u or not part_v:
            raise InputError("cannot infer parts; pass --u and --v")
    table = geometry.type_table_from_drawing(drawing, part_u, part_v)
    payload = table.to_json_dict()
    _maybe_out(payload, out_path)
    _emit("typetable", {"drawing": drawing_path, "u": u_list, "v": v_list}, payload,
          inputs={"drawing": drawing_path}, started=started,
          summary=f"table over |U|={len(part_u)}, |V|={len(part_v)}")


# -- pipeline ---------------------------------------------------------------------


@cli.command(name="find-ckk")
@click.option("--table", "table_path", required=True, type=click.Path(exists=True))
@click.option("--k", required=True, type=int)
def find_ckk(table_path, k):
    """Extract a two-line-equivalent k-by-k sub-drawing from a type table."""
    started = time.monotonic()
    table = load_table(table_path)
    try:
        res = ramsey.extract_two_line(table, k)
        result = res.to_json_dict()
        summary = f"status: {res.status}"
    except BudgetExceededError as exc:
        result = {"status": "budget-exceeded", "detail": str(exc)}
        summary = "status: budget-exceeded"
    _emit("find-ckk", {"table": table_path, "k": k}, result,
          inputs={"table": table_path}, started=started, summary=summary)


@cli.command()
@click.option("--table", "table_path", required=True, type=click.Path(exists=True))
def transitivity(table_path):
    """Check transitivity of the per-type ordered graphs of a table."""
    started = time.monotonic()
    table = load_table(table_path)
    violation = ramsey.check_type_transitivity(table)
    result = {"transitive": violation is None}
    if violation is not None:
        result["violation"] = {"type": violation.order_type,
                               "v_pair": [violation.s, violation.t],
                               "triple": list(violation.triple)}
    _emit("transitivity", {"table": table_path}, result,
          inputs={"table": table_path}, started=started,
          summary=f"transitive: {violation is None}")


# -- half-circle model ---------------------------------------------------------


@cli.group(name="halfcircle")
def halfcircle_group():
    """The random half-circle drawing model."""


@halfcircle_group.command()
@click.option("--n", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--out", "out_path", type=click.Path(), default=None)
def sample(n, seed, out_path):
    """Sample a drawing: one fair side bit per edge."""
    started = time.monotonic()
    d = halfcircle.sample_drawing(n, seed)
    payload = d.to_json_dict()
    _maybe_out(payload, out_path)
    _emit("halfcircle sample", {"n": n, "seed": seed}, payload, started=started,
          summary=f"sampled drawing on {n} vertices")


@halfcircle_group.command()
@click.option("--k", required=True, type=int)
def exact(k):
    """Exact probability that a separated pair induces the two-line pattern."""
    started = time.monotonic()
    report = halfcircle.exact_pair_report(k)
    result = {
        "k": k,
        "probability": _frac_dict(report.probability),
        "formula_asserted": report.formula_asserted,
        "per_split": [
            {"split": s.split, "favorable": s.favorable, "total": s.total,
             "structure_matches": s.structure_matches}
            for s in report.splits
        ],
    }
    _emit("halfcircle exact", {"k": k}, result, started=started,
          summary=f"probability {report.probability}")


@halfcircle_group.command()
@click.option("--n", required=True, type=int)
@click.option("--k", required=True, type=int)
@click.option("--trials", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--jobs", default=1, show_default=True, type=int)
def mc(n, k, trials, seed, jobs):
    """Monte Carlo estimate of the expected two-line pair count."""
    started = time.monotonic()
    report = halfcircle.montecarlo_expectation(n, k, trials, seed, jobs=jobs)
    result = report.to_json_dict()
    result["formula_mean"] = _frac_dict(halfcircle.expected_count(n, k))
    _emit("halfcircle mc", {"n": n, "k": k, "trials": trials, "seed": seed, "jobs": jobs},
          result, started=started,
          summary=f"mean {report.mean:.4f} +- {report.stderr:.4f} "
                  f"(formula {float(halfcircle.expected_count(n, k)):.4f})")


@halfcircle_group.command(name="export-typetable")
@click.option("--n", required=True, type=int)
@click.option("--k", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--out", "out_path", type=click.Path(), default=None)
def export_typetable(n, k, seed, out_path):
    """Sample a drawing and export the table of two random disjoint k-subsets."""
    started = time.monotonic()
    table = halfcircle.export_type_table(n, k, seed)
    payload = table.to_json_dict()
    _maybe_out(payload, out_path)
    _emit("halfcircle export-typetable", {"n": n, "k": k, "seed": seed}, payload,
          started=started, summary=f"table over random {k}-subsets of {n} vertices")


# -- matrices -----------------------------------------------------------------


@cli.group(name="matrix")
def matrix_group():
    """Two-row matrices and forbidden submatrix patterns."""


@matrix_group.command()
@click.option("--file", "matrix_path", required=True, type=click.Path(exists=True))
def check(matrix_path):
    """Detect F1/F2 submatrices and run the extremal bound check."""
    started = time.monotonic()
    M = matrices.load_matrix(matrix_path)
    witness = matrices.contains_forbidden_submatrix(M)
    bound = matrices.pptt_bound_check(M)
    result = {
        "contains": witness is not None,
        "witness": witness.to_json_dict() if witness else None,
        "bound": bound.to_json_dict(),
    }
    _emit("matrix check", {"file": matrix_path}, result,
          inputs={"file": matrix_path}, started=started,
          summary=f"forbidden pattern: {witness is not None}")


@matrix_group.command()
@click.option("--trials", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--max-cols", default=30, show_default=True, type=int)
def stress(trials, seed, max_cols):
    """Generate pattern-free matrices; count (expected zero) bound violations."""
    started = time.monotonic()
    report = matrices.stress_bound(trials, seed, max_cols=max_cols)
    _emit("matrix stress", {"trials": trials, "seed": seed, "max_cols": max_cols},
          report.to_json_dict(), started=started,
          summary=f"{report.trials} matrices, {report.lemma_violations} violations")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except (InputError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
