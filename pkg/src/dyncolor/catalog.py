"""Fixture drawings, graph generators, and the small-graph catalog.

Fixtures are built deterministically in code from frozen rational coordinates
(see geometry module); serialized copies are shipped under data/fixtures for
CLI use and golden tests.  Random generators are fully determined by their
seed.
"""

from __future__ import annotations

import random
from fractions import Fraction as F
from importlib import resources
from typing import Dict, List, Optional, Tuple

from .drawing import (
    DrawingError,
    OnePlaneDrawing,
    insert_crossing_pair_in_face,
    insert_leaf_path_in_face,
    faces_containing,
)
from .geometry import GeometryError, straight_line_drawing, subdivided_one_plane_drawing
from .graph import Graph, GraphError, edge_key


class CatalogError(ValueError):
    pass


# Frozen coordinates.  The K_5/K_6 point sets give straight-line drawings with
# each edge crossed at most once; the K_7 set has each edge crossed at most
# twice, so its 2-subdivision is drawable with one crossing per edge.
COMPLETE_POINTS: Dict[int, Dict[int, Tuple[F, F]]] = {
    3: {0: (F(0), F(0)), 1: (F(6), F(0)), 2: (F(3), F(5))},
    4: {0: (F(0), F(0)), 1: (F(6), F(0)), 2: (F(3), F(5)), 3: (F(3), F(2))},
    5: {0: (F(-9), F(-31)), 1: (F(0), F(33)), 2: (F(-44), F(-41)), 3: (F(18), F(-38)), 4: (F(-4), F(24))},
    6: {0: (F(-57), F(-58)), 1: (F(37), F(-46)), 2: (F(-32), F(94)), 3: (F(-15), F(53)), 4: (F(29), F(-35)), 5: (F(-6), F(-14))},
    7: {0: (F(11), F(-5)), 1: (F(12), F(14)), 2: (F(74), F(40)), 3: (F(7), F(55)), 4: (F(-74), F(77)), 5: (F(13), F(-98)), 6: (F(82), F(39))},
}

# Core of the redrawable 6-face pattern: three 2-vertices 0,1,2, three high
# vertices 3,4,5, all six edges crossed, giving an inner 6-face whose three
# true vertices are all special 2-vertices.
_PATTERN6_POINTS = {
    3: (F(0), F(12)), 4: (F(-10), F(-6)), 5: (F(10), F(-6)),
    0: (F(0), F(4)), 1: (F(-3), F(-2)), 2: (F(3), F(-2)),
}
_PATTERN6_EDGES = [(0, 4), (0, 5), (1, 3), (1, 5), (2, 3), (2, 4)]


def _chain_rotations(g: Graph) -> Dict[int, Tuple[tuple, ...]]:
    """Rotations for graphs of maximum degree <= 2 (forced up to reflection)."""
    return {v: tuple(sorted(edge_key(v, u) for u in g.neighbors(v))) for v in g.vertices()}


def cycle_drawing(n: int) -> OnePlaneDrawing:
    g = Graph.cycle(n)
    return OnePlaneDrawing(g, (), _chain_rotations(g), {})


def path_drawing(n: int) -> OnePlaneDrawing:
    g = Graph.path(n)
    return OnePlaneDrawing(g, (), _chain_rotations(g), {})


def planar_drawing_of(g: Graph) -> OnePlaneDrawing:
    """Crossing-free drawing of a connected planar graph (grid coordinates)."""
    if g.num_vertices() == 0:
        return OnePlaneDrawing(g, (), {}, {})
    if max((g.degree(v) for v in g.vertices()), default=0) <= 2:
        return OnePlaneDrawing(g, (), _chain_rotations(g), {})
    import networkx as nx

    ng = nx.Graph()
    ng.add_nodes_from(g.vertices())
    ng.add_edges_from(g.edges())
    ok, emb = nx.check_planarity(ng)
    if not ok:
        raise CatalogError("graph is not planar")
    pos = nx.combinatorial_embedding_to_pos(emb)
    pts = {v: (F(int(x)), F(int(y))) for v, (x, y) in pos.items()}
    d = straight_line_drawing(g, pts)
    assert not d.crossings
    return d


def complete_drawing(n: int) -> OnePlaneDrawing:
    """1-plane drawing of K_n (n <= 6; K_7 admits no such drawing)."""
    if n < 3 or n > 6:
        if 1 <= n <= 2:
            g = Graph.complete(n)
            return OnePlaneDrawing(g, (), _chain_rotations(g), {})
        raise CatalogError(f"no 1-plane drawing of K_{n} exists (supported: n <= 6)")
    return straight_line_drawing(Graph.complete(n), COMPLETE_POINTS[n])


def complete_subdivision_drawing(n: int) -> Tuple[OnePlaneDrawing, Dict[int, int], frozenset]:
    """1-plane drawing of the 2-subdivision of K_n (n <= 7).

    A drawing of K_n with each edge crossed at most twice yields one of its
    subdivision with each edge crossed at most once; K_8 already fails to be
    drawable that way, so larger n is refused.
    """
    if n < 3 or n > 7:
        raise CatalogError(f"complete-subdiv supports 3 <= n <= 7, got {n}")
    return subdivided_one_plane_drawing(Graph.complete(n), COMPLETE_POINTS[n])


def two_crossing_edges_drawing() -> OnePlaneDrawing:
    g = Graph.from_edges([0, 1, 2, 3], [(0, 2), (1, 3)])
    return OnePlaneDrawing(
        g,
        [((0, 2), (1, 3))],
        {0: ((0, 2),), 1: ((1, 3),), 2: ((0, 2),), 3: ((1, 3),)},
        {},
    )


def k4_crossed_drawing() -> OnePlaneDrawing:
    """K_4 drawn as a square with crossing diagonals."""
    d = cycle_drawing(4)
    face = d.planarization().faces[0]
    return insert_crossing_pair_in_face(d, face, *[x[0] for x in face.walk])


def pattern6_drawing(pendants: int = 9) -> OnePlaneDrawing:
    """The redrawable 6-face fixture: an inner 6-face whose three true
    vertices are special 2-vertices, with the three high vertices padded by
    pendant leaves up to degree 2 + pendants (11 by default)."""
    g = Graph.from_edges(range(6), _PATTERN6_EDGES)
    d = straight_line_drawing(g, _PATTERN6_POINTS)
    nxt = 6
    for anchor in (3, 4, 5):
        for _ in range(pendants):
            plan = d.planarization()
            outer = faces_containing(plan, [3, 4, 5])[0]
            d = insert_leaf_path_in_face(d, outer, nxt, [anchor])
            nxt += 1
    return d


def random_planar_drawing(n: int, seed: int = 0, thin: float = 0.25) -> OnePlaneDrawing:
    """Random connected plane drawing: Delaunay triangulation of random
    integer points, thinned by removing random non-disconnecting edges."""
    if n < 3:
        raise CatalogError("random planar drawings need n >= 3")
    rng = random.Random(seed)
    from scipy.spatial import Delaunay, QhullError

    for _ in range(100):
        box = 12 * n
        coords = set()
        while len(coords) < n:
            coords.add((rng.randrange(box), rng.randrange(box)))
        pts = sorted(coords)
        try:
            tri = Delaunay(pts)
        except QhullError:
            continue
        edges = set()
        for simplex in tri.simplices:
            s = sorted(int(x) for x in simplex)
            edges.update([(s[0], s[1]), (s[0], s[2]), (s[1], s[2])])
        if {v for e in edges for v in e} != set(range(n)):
            continue
        g = Graph.from_edges(range(n), edges)
        order = sorted(edges)
        rng.shuffle(order)
        for e in order:
            if rng.random() < thin:
                g2 = g.remove_edge(*e)
                if g2.is_connected():
                    g = g2
        fpts = {i: (F(x), F(y)) for i, (x, y) in enumerate(pts)}
        try:
            d = straight_line_drawing(g, fpts)
        except GeometryError:
            continue
        return d
    raise CatalogError(f"could not build a random planar drawing for n={n}, seed={seed}")


def random_oneplane_drawing(n: int, seed: int = 0, crossings: Optional[int] = None) -> OnePlaneDrawing:
    """Random 1-plane drawing: a random plane drawing plus crossing pairs
    inserted into faces of degree >= 4."""
    rng = random.Random(seed ^ 0x5EED)
    d = random_planar_drawing(n, seed)
    target = crossings if crossings is not None else max(1, n // 8)
    added = 0
    while added < target:
        plan = d.planarization()
        candidates = []
        for f in plan.faces:
            if f.degree < 4:
                continue
            vs = f.vertices()
            k = len(vs)
            for off in range(k):
                quad = [vs[(off + j) % k] for j in range(4)]
                if any(not isinstance(x, int) for x in quad):
                    continue
                if len(set(quad)) != 4:
                    continue
                # on a non-simple face walk a repeated vertex has several
                # corners, and the insertion cannot tell which one is meant
                if any(vs.count(x) > 1 for x in quad):
                    continue
                a, b, c, dd = quad
                if d.graph.has_edge(a, c) or d.graph.has_edge(b, dd):
                    continue
                candidates.append((f.id, a, b, c, dd))
        if not candidates:
            break
        candidates.sort()
        while candidates:
            fid, a, b, c, dd = rng.choice(candidates)
            try:
                d = insert_crossing_pair_in_face(d, plan.faces[fid], a, b, c, dd)
                added += 1
                break
            except DrawingError:
                candidates.remove((fid, a, b, c, dd))
        else:
            break
    return d


# -- fixture registry ---------------------------------------------------------

FIXTURE_BUILDERS = {
    "cycle6": lambda: cycle_drawing(6),
    "path4": lambda: path_drawing(4),
    "k4-plane": lambda: complete_drawing(4),
    "octahedron": lambda: planar_drawing_of(
        Graph.from_edges(range(6), [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5),
                                    (0, 3), (0, 4), (1, 4), (1, 5), (2, 3), (2, 5)])
    ),
    "wheel6": lambda: planar_drawing_of(
        Graph.from_edges(range(7), [(0, i) for i in range(1, 7)] + [(i, i % 6 + 1) for i in range(1, 7)])
    ),
    "grid33": lambda: planar_drawing_of(
        Graph.from_edges(range(9), [(r * 3 + c, r * 3 + c + 1) for r in range(3) for c in range(2)]
                         + [(r * 3 + c, r * 3 + c + 3) for r in range(2) for c in range(3)])
    ),
    "two-crossing-edges": two_crossing_edges_drawing,
    "k4-crossed": k4_crossed_drawing,
    "k5-oneplane": lambda: complete_drawing(5),
    "k6-oneplane": lambda: complete_drawing(6),
    "k7-subdiv": lambda: complete_subdivision_drawing(7)[0],
    "pattern6": pattern6_drawing,
    "random-oneplane-16": lambda: random_oneplane_drawing(16, seed=3, crossings=3),
}


def fixture_names() -> List[str]:
    return list(FIXTURE_BUILDERS)


def fixture(name: str) -> OnePlaneDrawing:
    try:
        builder = FIXTURE_BUILDERS[name]
    except KeyError:
        raise CatalogError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_BUILDERS)}") from None
    d = builder()
    diag = d.validate()
    if not diag.ok:  # pragma: no cover - fixtures are validated in tests
        raise CatalogError(f"fixture {name} invalid: {diag}")
    return d


# -- shipped small-graph catalog ------------------------------------------------


def connected_planar_upto6() -> List[Graph]:
    """All connected planar graphs on at most 6 vertices, up to isomorphism."""
    text = resources.files("dyncolor").joinpath("data/planar_connected_upto6.txt").read_text()
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "g" or len(parts) < 2 or len(parts) % 2 != 0:
            raise GraphError(f"catalog line {lineno}: malformed record")
        n = int(parts[1])
        flat = [int(x) for x in parts[2:]]
        edges = list(zip(flat[::2], flat[1::2]))
        out.append(Graph.from_edges(range(n), edges))
    return out
