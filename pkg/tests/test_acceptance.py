"""End-to-end acceptance battery.

Each test covers one numbered acceptance criterion; the terminal summary
prints one verdict line per criterion (see conftest).
"""

import time
from fractions import Fraction as F

import networkx as nx

from dyncolor import catalog
from dyncolor.coloring import (
    chi,
    chi_d_even_cycle,
    chi_dynamic,
    choosable,
    is_dynamic,
    is_proper,
    lift_coloring,
    subdivision_gap,
)
from dyncolor.discharge import apply_rules, initial_charges
from dyncolor.drawing import insert_crossing_pair_in_face
from dyncolor.geometry import straight_line_drawing
from dyncolor.graph import Graph, two_subdivision
from dyncolor.reduce import color_1planar, improve_drawing_6face, uniform_lists


def test_criterion_01_even_cycle_formula():
    t0 = time.time()
    for m, want in zip((4, 6, 8, 10, 12, 14), (4, 3, 4, 4, 3, 4)):
        assert chi_d_even_cycle(m) == want
        assert chi_dynamic(Graph.cycle(m)).value == want
    assert time.time() - t0 < 5


def test_criterion_02_five_cycle_is_the_worst_small_planar_case():
    t0 = time.time()
    assert chi_dynamic(Graph.cycle(5)).value == 5
    for g in catalog.connected_planar_upto6():
        rep = chi_dynamic(g)
        assert rep.value <= 5
        assert is_proper(g, rep.coloring) and is_dynamic(g, rep.coloring)
    assert time.time() - t0 < 60


def test_criterion_03_cycle_choosability_at_tiny_scale():
    t0 = time.time()
    assert choosable(Graph.cycle(6), 3, dynamic=True).choosable
    assert not choosable(Graph.cycle(8), 3, dynamic=True).choosable
    assert choosable(Graph.cycle(8), 4, dynamic=True).choosable
    assert time.time() - t0 < 600


def test_criterion_04_subdividing_never_lowers_the_chromatic_number():
    t0 = time.time()
    atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() <= 5]
    assert len(atlas) == 53
    for h in atlas:
        g = Graph.from_edges(h.nodes(), h.edges())
        sub, _, _ = two_subdivision(g)
        assert chi(g).value <= chi_dynamic(sub).value
    for n in range(3, 13):
        brute = chi_dynamic(Graph.cycle(2 * n), cap=24).value - chi(Graph.cycle(n), cap=24).value
        assert subdivision_gap(n) == brute
    assert time.time() - t0 < 120


def test_criterion_05_charge_totals_and_conservation():
    names = catalog.fixture_names()
    assert len(names) >= 10
    for name in names:
        a = catalog.fixture(name).planarization()
        led = initial_charges(a)
        assert led.total_initial() == -8, name  # every fixture is connected
        after = apply_rules(a, led)
        after.assert_conserved()
        assert after.total_final() == led.total_initial(), name
    # and -8 per component when there are several
    two_triangles = Graph.from_edges(range(6), [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    a = catalog.planar_drawing_of(two_triangles).planarization()
    assert initial_charges(a).total_initial() == -16


def test_criterion_06_rule_arithmetic_spot_checks():
    # claim computations as exact rationals
    assert 3 - 4 + 3 * F(1, 3) == 0
    assert 3 - 4 + 2 * F(1, 2) == 0
    assert 4 - 4 + 1 - 1 == 0
    # an 11-vertex sending into 11 surrounding faces: with every window of
    # three consecutive faces receiving at most 2 (and two short windows at
    # most 3/2), the total sent is at most (3/2 + 3/2 + 9 * 2) / 3 = 7
    alphas = [F(1), F(0), F(1, 2)] * 3 + [F(1), F(0)]
    windows = [sum(alphas[(i + j) % 11] for j in range(3)) for i in range(11)]
    assert sum(windows) == 3 * sum(alphas)
    bound = (F(3, 2) + F(3, 2) + 2 * 9) / 3
    assert bound == 7
    assert 11 - 4 - bound == 0

    # the same numbers reproduced by the engine on synthetic drawings:
    # a true 3-face among three 11+-vertices ends at 3 - 4 + 3/3 = 0
    a = _pendant_triangle().planarization()
    led = apply_rules(a, initial_charges(a))
    f3 = next(f for f in a.faces if f.degree == 3)
    assert led.final()[("f", f3.id)] == 0
    assert led.net_by_rule(("f", f3.id)) == {"R1": 1}

    # a false 3-face flanked by two 9+-vertices ends at 3 - 4 + 2/2 = 0
    a = _pendant_crossed_square().planarization()
    led = apply_rules(a, initial_charges(a))
    false3 = [f for f in a.faces if f.degree == 3 and any(a.is_false(x) for x in f.vertex_set())]
    assert false3
    for f in false3:
        assert led.final()[("f", f.id)] == 0
        assert led.net_by_rule(("f", f.id)) == {"R2": 1}

    # a special 4-face takes 1 from its big vertex, gives 1 to its 2-vertex
    from dyncolor.drawing import special_4_faces

    a = catalog.fixture("pattern6").planarization()
    led = apply_rules(a, initial_charges(a))
    for f, u, v in special_4_faces(a):
        assert led.sent(("v", u), ("f", f.id), ("R3",)) == 1
        assert led.sent(("f", f.id), ("v", v), ("R3",)) == 1
        assert led.final()[("f", f.id)] == 0


def _with_outward_pendants(corners, cycle_edges, per_corner):
    """Straight-line drawing of a cycle with `per_corner` pendants fanned
    into the outer face at every corner, keeping the inner face clean."""
    pts = {v: (F(x), F(y)) for v, (x, y) in corners.items()}
    cx = sum(x for x, _ in pts.values()) / len(pts)
    cy = sum(y for _, y in pts.values()) / len(pts)
    verts, edges, nxt = list(corners), list(cycle_edges), max(corners) + 1
    for v, (x, y) in corners.items():
        dx = 1 if x >= cx else -1
        dy = 1 if y >= cy else -1
        for k in range(1, per_corner + 1):
            verts.append(nxt)
            edges.append((v, nxt))
            pts[nxt] = (F(x + dx), F(y + dy * k))
            nxt += 1
    return straight_line_drawing(Graph.from_edges(verts, edges), pts)


def _pendant_triangle():
    return _with_outward_pendants(
        {0: (0, 0), 1: (20, 0), 2: (10, 30)}, [(0, 1), (1, 2), (0, 2)], 10
    )


def _pendant_crossed_square():
    d = _with_outward_pendants(
        {0: (0, 0), 1: (20, 0), 2: (20, 20), 3: (0, 20)},
        [(0, 1), (1, 2), (2, 3), (3, 0)],
        8,
    )
    face = next(f for f in d.planarization().faces
                if f.degree == 4 and f.vertex_set() == frozenset(range(4)))
    vs = face.vertices()
    return insert_crossing_pair_in_face(d, face, vs[0], vs[1], vs[2], vs[3])


def test_criterion_07_constructive_colorer_soundness():
    t0 = time.time()

    def run(d):
        lists = uniform_lists(d.graph, 11)
        trace = []
        c = color_1planar(d, lists, trace=trace)
        assert is_dynamic(d.graph, c)
        assert all(c[v] in lists[v] for v in d.graph.vertices())
        measures = [int(ln.rsplit("measure=", 1)[1]) for ln in trace if "measure=" in ln]
        assert measures == sorted(measures, reverse=True)
        assert len(set(measures)) == len(measures)

    for name in catalog.fixture_names():
        run(catalog.fixture(name))
    for i in range(200):
        run(catalog.random_planar_drawing(5 + (i % 36), seed=i))
    for i in range(50):
        run(catalog.random_oneplane_drawing(8 + (i % 29), seed=i))
    assert time.time() - t0 < 300


def test_criterion_08_lifting_the_subdivided_complete_graph():
    d = catalog.fixture("k7-subdiv")
    c = color_1planar(d, uniform_lists(d.graph, 11))
    g7 = Graph.complete(7)
    sub, mapping, mids = two_subdivision(g7)
    assert sub == d.graph
    lifted = lift_coloring(g7, mapping, mids, c)
    assert is_proper(g7, lifted)
    assert len(set(lifted.values())) >= 7


def test_criterion_09_redrawing_a_six_face_saves_three_crossings():
    d = catalog.fixture("pattern6")
    better = improve_drawing_6face(d)
    assert better is not None
    assert better.validate().ok
    assert better.graph == d.graph
    assert len(better.crossings) == len(d.crossings) - 3


def test_criterion_10_scope_statement():
    """The headline bound (dynamic 11-list colorability of every 1-planar
    graph) is a universally quantified theorem and is NOT mechanically
    reproduced here.  What this suite does verify is the machinery behind it:
    exact small-scale solvers against oracles (criteria 1-4), the charge
    identities and rule audits (criteria 5-6), and the constructive colorer's
    soundness on every drawing it is given (criteria 7-9)."""
    assert test_criterion_10_scope_statement.__doc__ is not None
