"""Exact straight-line drawings over rational coordinates.

Used to build drawings whose rotation systems are correct by construction:
place vertices at rational points, intersect the straight edges exactly, and
read off the cyclic orders.  Everything uses Fraction arithmetic so there are
no robustness issues; the resulting combinatorial drawing is what the tests
and fixtures actually consume.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, List, Optional, Tuple

from .drawing import CrossKey, Half, OnePlaneDrawing, cross_key
from .graph import EdgeKey, Graph, edge_key, subdivision_midpoints, two_subdivision

Point = Tuple[Fraction, Fraction]


class GeometryError(ValueError):
    pass


def _pt(p) -> Point:
    return (Fraction(p[0]), Fraction(p[1]))


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def segment_intersection(p1: Point, p2: Point, q1: Point, q2: Point) -> Optional[Tuple[Fraction, Fraction]]:
    """Parameters (t, s) of a proper interior crossing of p1p2 and q1q2.

    Returns None for disjoint segments; raises on collinear overlap or
    endpoint touching, which a generic point set never produces.
    """
    r = (p2[0] - p1[0], p2[1] - p1[1])
    s = (q2[0] - q1[0], q2[1] - q1[1])
    denom = r[0] * s[1] - r[1] * s[0]
    qp = (q1[0] - p1[0], q1[1] - p1[1])
    if denom == 0:
        if qp[0] * r[1] - qp[1] * r[0] == 0:
            # collinear: an error only if the segments actually overlap
            rr = r[0] * r[0] + r[1] * r[1]
            t0 = (qp[0] * r[0] + qp[1] * r[1]) / rr
            t1 = t0 + (s[0] * r[0] + s[1] * r[1]) / rr
            lo, hi = min(t0, t1), max(t0, t1)
            if hi > 0 and lo < 1:
                raise GeometryError("collinear overlapping segments")
        return None
    t = (qp[0] * s[1] - qp[1] * s[0]) / denom
    u = (qp[0] * r[1] - qp[1] * r[0]) / denom
    if t < 0 or t > 1 or u < 0 or u > 1:
        return None
    if t in (0, 1) or u in (0, 1):
        raise GeometryError("segments touch at an endpoint")
    return t, u


def _angular_order(center: Point, targets: List[Tuple[Point, object]]) -> List[object]:
    """Labels of the target points sorted counterclockwise around center."""

    def half(p: Point) -> int:
        dx, dy = p[0] - center[0], p[1] - center[1]
        if dy > 0 or (dy == 0 and dx > 0):
            return 0
        return 1

    def cmp(a, b):
        pa, pb = a[0], b[0]
        ha, hb = half(pa), half(pb)
        if ha != hb:
            return ha - hb
        c = _cross(center, pa, pb)
        if c == 0:
            raise GeometryError(f"coincident directions around {center}")
        return -1 if c > 0 else 1

    return [label for _, label in sorted(((p, l) for p, l in targets), key=cmp_to_key(cmp))]


def edge_crossings(g: Graph, points: Dict[int, Point]) -> Dict[EdgeKey, List[Tuple[Fraction, EdgeKey]]]:
    """Per edge: sorted list of (parameter along the edge, crossing edge)."""
    pts = {v: _pt(points[v]) for v in g.vertices()}
    edges = g.edges()
    hits: Dict[EdgeKey, List[Tuple[Fraction, EdgeKey]]] = {e: [] for e in edges}
    for i, e1 in enumerate(edges):
        for e2 in edges[i + 1 :]:
            if set(e1) & set(e2):
                continue
            r = segment_intersection(pts[e1[0]], pts[e1[1]], pts[e2[0]], pts[e2[1]])
            if r is None:
                continue
            t, u = r
            hits[e1].append((t, e2))
            hits[e2].append((u, e1))
    for e in edges:
        hits[e].sort()
    return hits


def _point_on(p1: Point, p2: Point, t: Fraction) -> Point:
    return (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))


def straight_line_drawing(g: Graph, points: Dict[int, Point]) -> OnePlaneDrawing:
    """The drawing induced by straight edges between the given points.

    Every edge must be crossed at most once; degenerate incidences raise.
    """
    pts = {v: _pt(points[v]) for v in g.vertices()}
    hits = edge_crossings(g, pts)
    crossings: List[CrossKey] = []
    for e, lst in hits.items():
        if len(lst) > 1:
            raise GeometryError(f"edge {e} is crossed {len(lst)} times")
        for t, e2 in lst:
            if e < e2:
                crossings.append(cross_key(e, e2))

    rot_true: Dict[int, Tuple[EdgeKey, ...]] = {}
    for v in g.vertices():
        targets = [(pts[u], edge_key(v, u)) for u in g.neighbors(v)]
        rot_true[v] = tuple(_angular_order(pts[v], targets))

    rot_false: Dict[CrossKey, Tuple[Half, ...]] = {}
    for ck in crossings:
        e1, e2 = ck
        t = hits[e1][0][0]
        xp = _point_on(pts[e1[0]], pts[e1[1]], t)
        targets = [(pts[w], (e, w)) for e in ck for w in e]
        rot_false[ck] = tuple(_angular_order(xp, targets))

    d = OnePlaneDrawing(g, crossings, rot_true, rot_false)
    diag = d.validate()
    if not diag.ok:
        raise GeometryError(f"straight-line drawing invalid: {diag}")
    return d


def subdivided_one_plane_drawing(
    g: Graph, points: Dict[int, Point]
) -> Tuple[OnePlaneDrawing, Dict[int, int], frozenset]:
    """1-plane drawing of the 2-subdivision of g, from points where every
    straight edge of g is crossed at most twice.

    Each edge's new 2-vertex is placed so that it separates that edge's
    crossings, leaving at most one crossing per subdivided edge.  Returns the
    drawing together with the subdivision's vertex injection and 2-vertex set.
    """
    pts = {v: _pt(points[v]) for v in g.vertices()}
    hits = edge_crossings(g, pts)
    sub, mapping, mids = two_subdivision(g)
    mid_of = subdivision_midpoints(g)
    sub_pts: Dict[int, Point] = dict(pts)
    for e, m in mid_of.items():
        lst = hits[e]
        if len(lst) > 2:
            raise GeometryError(f"edge {e} is crossed {len(lst)} times")
        if len(lst) == 2:
            t = (lst[0][0] + lst[1][0]) / 2
        elif len(lst) == 1:
            t = (lst[0][0] + 1) / 2
        else:
            t = Fraction(1, 2)
        sub_pts[m] = _point_on(pts[e[0]], pts[e[1]], t)
    d = straight_line_drawing(sub, sub_pts)
    return d, mapping, mids


def plane_rotations_from_points(g: Graph, points: Dict[int, Point]) -> Dict[int, Tuple[EdgeKey, ...]]:
    """Rotation system of a crossing-free straight-line drawing."""
    pts = {v: _pt(points[v]) for v in g.vertices()}
    rot = {}
    for v in g.vertices():
        rot[v] = tuple(_angular_order(pts[v], [(pts[u], edge_key(v, u)) for u in g.neighbors(v)]))
    return rot
