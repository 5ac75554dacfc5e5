"""Command-line front end.

Exit codes: 0 success/valid, 1 invalid input or negative verdict, 2 usage
errors, 3 search cap exceeded.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import catalog
from .coloring import (
    ColoringError,
    SearchCapExceeded,
    chi,
    chi_dynamic,
    choosable,
    find_list_coloring,
    is_dynamic,
    parse_coloring,
    parse_lists,
    serialize_coloring,
    serialize_lists,
)
from .discharge import apply_rules, audit_claims, format_report, initial_charges, machine_report
from .drawing import DrawingError, parse_drawing, serialize_drawing
from .graph import Graph, GraphError, parse_graph
from .reduce import ExtensionError, ReduceError, color_1planar, uniform_lists

_SOFT_ERRORS = (
    GraphError,
    DrawingError,
    ColoringError,
    ReduceError,
    ExtensionError,
    catalog.CatalogError,
    OSError,
)


def _run(f):
    try:
        f()
    except SearchCapExceeded as e:
        click.echo(f"cap exceeded: {e}", err=True)
        sys.exit(3)
    except _SOFT_ERRORS as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)


@click.group()
def main():
    """Dynamic (list) coloring of 1-planar graphs."""


# -- check -------------------------------------------------------------------------


def _load_graph(path) -> Graph:
    """Graph from a graph file, or the underlying graph of a drawing file."""
    text = Path(path).read_text()
    try:
        return parse_graph(text)
    except GraphError as graph_err:
        try:
            return parse_drawing(text).graph
        except DrawingError:
            raise graph_err from None


def _first_violation(g: Graph, c, dynamic: bool):
    for v in g.vertices():
        if v not in c:
            return f"vertex {v} has no color"
    for u, v in g.edges():
        if c[u] == c[v]:
            return f"adjacent vertices {u} and {v} share color {c[u]}"
    if dynamic:
        for v in g.vertices():
            ns = g.neighbors(v)
            if len(ns) >= 2 and len({c[u] for u in ns}) < 2:
                return f"monochromatic neighborhood at {v}"
    return None


@main.command()
@click.argument("graph_file", type=click.Path(exists=True))
@click.argument("coloring_file", type=click.Path(exists=True))
@click.option("--dynamic", is_flag=True, help="Also require two colors around every 2+-degree vertex.")
@click.option("--format", "fmt", type=click.Choice(["plain", "json"]), default="plain")
def check(graph_file, coloring_file, dynamic, fmt):
    """Verify a coloring file against a graph file."""

    def go():
        g = _load_graph(graph_file)
        c = parse_coloring(Path(coloring_file).read_text())
        violation = _first_violation(g, c, dynamic)
        if fmt == "json":
            click.echo(json.dumps({"valid": violation is None, "violation": violation}))
        elif violation is None:
            click.echo("valid")
        else:
            click.echo(f"invalid: {violation}")
        if violation is not None:
            sys.exit(1)

    _run(go)


# -- solve -------------------------------------------------------------------------


@main.command()
@click.argument("graph_file", type=click.Path(exists=True))
@click.option("--param", type=click.Choice(["chi", "chid", "ch", "chd"]), required=True)
@click.option("--ell", type=int, default=None, help="For ch/chd: test this list size instead of searching.")
@click.option("--format", "fmt", type=click.Choice(["plain", "json"]), default="plain")
def solve(graph_file, param, ell, fmt):
    """Exact chromatic / choosability parameters (small graphs)."""

    def go():
        g = _load_graph(graph_file)
        base = Path(graph_file)
        if param in ("chi", "chid"):
            rep = (chi if param == "chi" else chi_dynamic)(g)
            witness = base.with_suffix(base.suffix + ".witness")
            witness.write_text(serialize_coloring(rep.coloring))
            out = {"param": param, "value": rep.value, "witness": str(witness)}
        else:
            dynamic = param == "chd"
            if ell is not None:
                rep = choosable(g, ell, dynamic)
                out = {"param": param, "ell": ell, "choosable": rep.choosable}
                if rep.counterexample is not None:
                    witness = base.with_suffix(base.suffix + ".counterexample")
                    witness.write_text(serialize_lists(rep.counterexample))
                    out["counterexample"] = str(witness)
            else:
                val = 1
                while True:
                    rep = choosable(g, val, dynamic)
                    if rep.choosable:
                        break
                    val += 1
                out = {"param": param, "value": val}
        if fmt == "json":
            click.echo(json.dumps(out))
        else:
            for k, v in out.items():
                click.echo(f"{k}: {v}")

    _run(go)


# -- color11 -----------------------------------------------------------------------


@main.command()
@click.argument("drawing_file", type=click.Path(exists=True))
@click.argument("lists_file", type=click.Path(exists=True), required=False)
@click.option("--uniform-lists", type=int, default=None, help="Use {1..N} as every vertex's list.")
@click.option("--trace", is_flag=True, help="Print the reduction trace.")
@click.option("--format", "fmt", type=click.Choice(["plain", "json"]), default="plain")
def color11(drawing_file, lists_file, uniform_lists, trace, fmt):
    """Dynamic list coloring of a 1-plane drawing (lists of size >= 11)."""

    def go():
        d = parse_drawing(Path(drawing_file).read_text())
        if (lists_file is None) == (uniform_lists is None):
            raise ColoringError("provide exactly one of LISTS_FILE or --uniform-lists")
        if uniform_lists is not None:
            lists = uniform_lists_checked(d.graph, uniform_lists)
        else:
            lists = parse_lists(Path(lists_file).read_text())
        tr = []
        c = color_1planar(d, lists, trace=tr)
        base = Path(drawing_file)
        out_path = base.with_suffix(base.suffix + ".coloring")
        out_path.write_text(serialize_coloring(c))
        if fmt == "json":
            click.echo(json.dumps({"coloring": str(out_path), "trace": tr if trace else None,
                                   "verified_dynamic": True}))
        else:
            click.echo(f"coloring written to {out_path} (verified dynamic)")
            if trace:
                for line in tr:
                    click.echo(f"  {line}")

    _run(go)


def uniform_lists_checked(g: Graph, n: int):
    if n < 11:
        raise ColoringError(f"lists must have at least 11 colors, got {n}")
    return uniform_lists(g, n)


# -- discharge ----------------------------------------------------------------------


@main.command()
@click.argument("drawing_file", type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["plain", "json"]), default="plain")
def discharge(drawing_file, fmt):
    """Charge ledger, rule application R1-R5, and claim audit."""

    def go():
        d = parse_drawing(Path(drawing_file).read_text())
        diag = d.validate()
        if not diag.ok:
            for v in diag.violations:
                click.echo(f"invalid drawing: {v.code}: {v.detail}", err=True)
            sys.exit(1)
        a = d.planarization()
        ledger = apply_rules(a, initial_charges(a))
        audits = audit_claims(a, ledger, drawing=d)
        if fmt == "json":
            click.echo(machine_report(a, ledger, audits))
        else:
            click.echo(format_report(a, ledger, audits))

    _run(go)


# -- generate -----------------------------------------------------------------------


@main.command()
@click.argument("family", type=click.Choice(["cycle", "path", "complete", "complete-subdiv", "random-planar"]))
@click.argument("n", type=int)
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(), default=None, help="Write here instead of stdout.")
def generate(family, n, seed, out):
    """Emit a validated drawing of the given family."""

    def go():
        if family == "cycle":
            d = catalog.cycle_drawing(n)
        elif family == "path":
            d = catalog.path_drawing(n)
        elif family == "complete":
            d = catalog.complete_drawing(n)
        elif family == "complete-subdiv":
            d = catalog.complete_subdivision_drawing(n)[0]
        else:
            d = catalog.random_planar_drawing(n, seed=seed)
        assert d.validate().ok
        text = serialize_drawing(d)
        if out:
            Path(out).write_text(text)
            click.echo(f"written to {out}")
        else:
            click.echo(text, nl=False)

    _run(go)


# -- fixtures helper ------------------------------------------------------------------


@main.command()
@click.argument("name", required=False)
@click.option("--out", type=click.Path(), default=None)
def fixture(name, out):
    """Emit a named fixture drawing (no NAME: list fixtures)."""

    def go():
        if name is None:
            for n in catalog.fixture_names():
                click.echo(n)
            return
        d = catalog.fixture(name)
        text = serialize_drawing(d)
        if out:
            Path(out).write_text(text)
            click.echo(f"written to {out}")
        else:
            click.echo(text, nl=False)

    _run(go)


# -- selftest -----------------------------------------------------------------------


@main.command()
@click.option("--deep", is_flag=True, help="Include the multi-minute choosability runs.")
def selftest(deep):
    """Run the executable examples as a smoke-test battery."""

    failures = []

    def case(label, fn):
        try:
            fn()
            click.echo(f"ok   {label}")
        except Exception as e:  # noqa: BLE001 - report and continue
            failures.append(label)
            click.echo(f"FAIL {label}: {e}")

    def go():
        from fractions import Fraction

        from .coloring import chi_d_even_cycle, lift_coloring, subdivision_gap
        from .discharge import negative_elements
        from .graph import two_subdivision

        case("cycle formula m=4..14", lambda: [
            _expect(chi_dynamic(Graph.cycle(m)).value, chi_d_even_cycle(m)) for m in (4, 6, 8, 10, 12, 14)])
        case("chi_dynamic(C_5) = 5", lambda: _expect(chi_dynamic(Graph.cycle(5)).value, 5))
        case("chi(K_7) = 7", lambda: _expect(chi(Graph.complete(7)).value, 7))
        case("choosable(C_6, 3, dynamic)", lambda: _expect(choosable(Graph.cycle(6), 3, True).choosable, True))
        case("not choosable(C_8, 3, dynamic)", lambda: _expect(choosable(Graph.cycle(8), 3, True).choosable, False))
        if deep:
            case("choosable(C_8, 4, dynamic)", lambda: _expect(choosable(Graph.cycle(8), 4, True).choosable, True))
        case("subdivision gaps n=3..12", lambda: [
            _expect(subdivision_gap(n),
                    chi_dynamic(Graph.cycle(2 * n), cap=24).value - chi(Graph.cycle(n), cap=24).value)
            for n in range(3, 13)])

        def fixtures_conserve():
            for name in catalog.fixture_names():
                d = catalog.fixture(name)
                a = d.planarization()
                led = apply_rules(a, initial_charges(a))
                led.assert_conserved()
        case("fixtures validate and conserve charge", fixtures_conserve)

        def color_fixture(name):
            d = catalog.fixture(name)
            c = color_1planar(d, uniform_lists(d.graph, 11))
            assert is_dynamic(d.graph, c)
        case("color11 on K_6 fixture", lambda: color_fixture("k6-oneplane"))
        case("color11 on K_7 subdivision fixture", lambda: color_fixture("k7-subdiv"))

        def lift_k7():
            d = catalog.fixture("k7-subdiv")
            c = color_1planar(d, uniform_lists(d.graph, 11))
            g7 = Graph.complete(7)
            sub, mapping, mids = two_subdivision(g7)
            assert sub.is_isomorphic_brute(d.graph) or sub == d.graph
            lifted = lift_coloring(g7, mapping, mids, c)
            assert len(set(lifted.values())) >= 7
        case("lifted K_7 coloring is proper with >= 7 colors", lift_k7)

        def redraw():
            from .reduce import improve_drawing_6face
            d = catalog.fixture("pattern6")
            better = improve_drawing_6face(d)
            assert better is not None
            assert better.graph == d.graph
            assert len(better.crossings) == len(d.crossings) - 3
            assert better.validate().ok
        case("6-face redrawing saves 3 crossings", redraw)

        if failures:
            click.echo(f"{len(failures)} failures", err=True)
            sys.exit(1)
        click.echo("selftest passed")

    _run(go)


def _expect(got, want):
    if got != want:
        raise AssertionError(f"got {got}, want {want}")
    return True


if __name__ == "__main__":
    main()
