"""Reducible configurations, coloring extension, and the constructive
dynamic 11-list colorer for 1-plane drawings.

Each configuration kind pairs a local structure that cannot occur in a
smallest uncolorable graph with a recipe: delete a few vertices (sometimes
adding one edge), color the smaller drawing, then re-color the deleted
vertices avoiding a small forbidden set.  Every extension is re-verified with
the dynamic-coloring checker; a verification failure is a hard error.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .coloring import Coloring, ListAssignment, SearchCapExceeded, find_list_coloring, is_dynamic
from .drawing import (
    AssociatedPlaneGraph,
    Face,
    OnePlaneDrawing,
    delete_vertex_from_drawing,
    faces_containing,
    insert_edge_crossing_existing,
    insert_edge_in_face,
    insert_leaf_path_in_face,
    special_vertices,
)
from .graph import Graph, edge_key

KINDS = (
    "MinDeg1",
    "AdjacentTwos",
    "SmallEdge2",
    "SmallEdgeGeneral",
    "TriangleSmall",
    "FalseTriangleTrueSmall",
    "BigFaceSmall",
)


class ReduceError(ValueError):
    pass


class ExtensionError(ValueError):
    """Empty candidate set at an extension step (hypothesis mismatch)."""


@dataclass
class ReducibleConfig:
    kind: str
    roles: Dict[str, object]
    delete: Tuple[int, ...]
    add_edge: Optional[Tuple[int, int]] = None
    degrees: Dict[int, int] = field(default_factory=dict)  # snapshot for staleness


@dataclass
class ExtensionRecipe:
    kind: str
    roles: Dict[str, object]
    parent: Graph
    child: Graph


# -- configuration detection ------------------------------------------------------


def _least(iterable):
    xs = sorted(iterable)
    return xs[0] if xs else None


def _find_min_deg1(g: Graph, ell: int) -> Optional[ReducibleConfig]:
    for u in g.vertices():
        if g.degree(u) <= 1:
            roles: Dict[str, object] = {"u": u, "v": None, "v1": None}
            if g.degree(u) == 1:
                v = next(iter(g.neighbors(u)))
                roles["v"] = v
                roles["v1"] = _least(g.neighbors(v) - {u})
            return ReducibleConfig("MinDeg1", roles, (u,), degrees={u: g.degree(u)})
    return None


def _find_adjacent_twos(g: Graph, ell: int) -> Optional[ReducibleConfig]:
    for u, v in g.edges():
        if g.degree(u) != 2 or g.degree(v) != 2:
            continue
        x = next(iter(g.neighbors(u) - {v}))
        y = next(iter(g.neighbors(v) - {u}))
        x1 = _least(g.neighbors(x) - {u, v})
        y1 = _least(g.neighbors(y) - {u, v})
        if x1 is None or y1 is None:
            continue  # the protecting neighbors must survive the deletion
        roles = {"u": u, "v": v, "x": x, "y": y, "x1": x1, "y1": y1}
        return ReducibleConfig("AdjacentTwos", roles, (u, v), degrees={u: 2, v: 2})
    return None


def _split_small_neighbors(g: Graph, v: int, u: int):
    """Other neighbors of v split into 2-vertices (with their far neighbor)
    and 3+-vertices."""
    xs, xps, ys = [], [], []
    for w in sorted(g.neighbors(v) - {u}):
        if g.degree(w) == 2:
            far = _least(g.neighbors(w) - {v})
            xs.append(w)
            xps.append(far)
        else:
            ys.append(w)
    return xs, xps, ys


def _find_small_edge2(g: Graph, ell: int) -> Optional[ReducibleConfig]:
    for a, b in g.edges():
        for u, v in ((a, b), (b, a)):
            if g.degree(u) != 2 or not (3 <= g.degree(v) <= ell - 1):
                continue
            z = next(iter(g.neighbors(u) - {v}))
            xs, xps, ys = _split_small_neighbors(g, v, u)
            deleted = {u, v, *xs}
            if z in deleted or any(x is None or x in deleted for x in xps):
                continue
            roles = {"u": u, "v": v, "z": z, "xs": tuple(xs), "xps": tuple(xps), "ys": tuple(ys)}
            snap = {u: 2, v: g.degree(v)}
            return ReducibleConfig("SmallEdge2", roles, (u, v, *xs), degrees=snap)
    return None


def _find_small_edge_general(g: Graph, ell: int) -> Optional[ReducibleConfig]:
    for a, b in g.edges():
        da, db = g.degree(a), g.degree(b)
        if not (3 <= da <= ell - 1 and 3 <= db <= ell - 1):
            continue
        u, v = (a, b) if (da, a) <= (db, b) else (b, a)
        roles = {
            "u": u,
            "v": v,
            "us": tuple(sorted(g.neighbors(u) - {v})),
            "vs": tuple(sorted(g.neighbors(v) - {u})),
        }
        return ReducibleConfig("SmallEdgeGeneral", roles, (u, v), degrees={u: g.degree(u), v: g.degree(v)})
    return None


def _find_triangle_small(g: Graph, ell: int) -> Optional[ReducibleConfig]:
    for u in g.vertices():
        if g.degree(u) > ell - 1:
            continue
        ns = sorted(g.neighbors(u))
        for i, v in enumerate(ns):
            for w in ns[i + 1 :]:
                if g.has_edge(v, w):
                    xs = tuple(x for x in ns if x not in (v, w))
                    roles = {"u": u, "v": v, "w": w, "xs": xs}
                    return ReducibleConfig("TriangleSmall", roles, (u,), degrees={u: g.degree(u)})
    return None


def _find_false_triangle(d: OnePlaneDrawing, a: AssociatedPlaneGraph, ell: int) -> Optional[ReducibleConfig]:
    g = d.graph
    for f in a.faces:
        if f.degree != 3:
            continue
        vs = f.vertices()
        false_pos = [i for i, x in enumerate(vs) if a.is_false(x)]
        if len(false_pos) != 1:
            continue
        p = vs[false_pos[0]]
        trues = sorted((x for x in vs if isinstance(x, int)), key=lambda x: (g.degree(x), x))
        for u in trues:
            if g.degree(u) > ell - 3:
                continue
            # u's crossed edge through p, and the edge crossing it at p
            e_u = next(e for e in (p[1], p[2]) if u in e)
            e_o = p[1] if e_u == p[2] else p[2]
            v = e_u[0] if e_u[1] == u else e_u[1]
            w = next(x for x in vs if isinstance(x, int) and x != u)
            wp = e_o[0] if e_o[1] == w else e_o[1]
            if w not in g.neighbors(u):
                continue  # the face's true side must be the edge uw
            xs = tuple(sorted(g.neighbors(u) - {v, w}))
            # v' is colored in the reduced graph: a neighbor of v there
            vp = _least(g.neighbors(v) - {u, w, wp})
            if vp is None:
                continue
            roles = {"u": u, "v": v, "w": w, "wp": wp, "vp": vp, "xs": xs, "face": f.id}
            add = None if g.has_edge(v, w) else edge_key(v, w)
            return ReducibleConfig("FalseTriangleTrueSmall", roles, (u,), add_edge=add, degrees={u: g.degree(u)})
    return None


def _find_big_face_small(d: OnePlaneDrawing, a: AssociatedPlaneGraph, ell: int) -> Optional[ReducibleConfig]:
    g = d.graph
    for f in a.faces:
        if f.degree < 4:
            continue
        vs = f.vertices()
        k = len(vs)
        for i in range(k):
            u = vs[i]
            if a.is_false(u) or g.degree(u) > ell - 3:
                continue
            for direction in (1, -1):
                v = vs[(i + direction) % k]
                w = vs[(i - direction) % k]
                if a.is_false(v):
                    continue  # normalize: the successor v is true
                ys = tuple(vs[(i + direction * (1 + j)) % k] for j in range(1, k - 2))
                if not a.is_false(w):
                    # both neighbors true
                    if not isinstance(v, int) or not isinstance(w, int):
                        continue
                    xs = tuple(sorted(g.neighbors(u) - {v, w}))
                    vp = _least(g.neighbors(v) - set(xs) - {u, w})
                    if vp is None:
                        continue
                    wp = _least(g.neighbors(w) - set(xs) - {u, v, vp})
                    if wp is None:
                        continue
                    roles = {
                        "case": "true-true", "u": u, "v": v, "w": w,
                        "vp": vp, "wp": wp, "xs": xs, "face": f.id,
                    }
                    add = None if g.has_edge(v, w) else edge_key(v, w)
                    return ReducibleConfig("BigFaceSmall", roles, (u,), add_edge=add, degrees={u: g.degree(u)})
                # v true, w false: w is the crossing of uu' with an edge w'y_s
                e_u = next(e for e in (w[1], w[2]) if u in e)
                up = e_u[0] if e_u[1] == u else e_u[1]
                e_o = w[1] if e_u == w[2] else w[2]
                y_s = ys[-1] if ys else None
                if y_s in e_o:
                    wp = e_o[0] if e_o[1] == y_s else e_o[1]
                else:
                    wp = min(e_o)
                if not g.has_edge(u, v):
                    continue
                xs = tuple(sorted(g.neighbors(u) - {up, v}))
                upp = _least(g.neighbors(up) - set(xs) - {u, v})
                if upp is None:
                    continue
                y1 = ys[0] if ys else None
                aux = y1
                if aux is None or not isinstance(aux, int):
                    # the walk vertex after v may be a crossing; protect v via
                    # one of its other colored neighbors instead
                    aux = _least(g.neighbors(v) - set(xs) - {u, up, upp})
                roles = {
                    "case": "true-false", "u": u, "v": v, "up": up, "upp": upp,
                    "wp": wp, "aux": aux, "xs": xs, "face": f.id, "eo": e_o,
                }
                add = None if g.has_edge(up, v) else edge_key(up, v)
                return ReducibleConfig("BigFaceSmall", roles, (u,), add_edge=add, degrees={u: g.degree(u)})
    return None


def find_reducible_configuration(d: OnePlaneDrawing, ell: int) -> Optional[ReducibleConfig]:
    """First configuration under the fixed scan order, or None."""
    g = d.graph
    for finder in (_find_min_deg1, _find_adjacent_twos, _find_small_edge2,
                   _find_small_edge_general, _find_triangle_small):
        cfg = finder(g, ell)
        if cfg is not None:
            return cfg
    a = d.planarization()
    for finder in (_find_false_triangle, _find_big_face_small):
        cfg = finder(d, a, ell)
        if cfg is not None:
            return cfg
    return None


# -- reduction ---------------------------------------------------------------------


def reduce(d: OnePlaneDrawing, cfg: ReducibleConfig) -> Tuple[OnePlaneDrawing, ExtensionRecipe]:
    g = d.graph
    for v, deg in cfg.degrees.items():
        if not g.has_vertex(v) or g.degree(v) != deg:
            raise ReduceError(f"stale configuration: vertex {v} changed since detection")
    measure = g.num_vertices() + g.num_edges()
    out = d
    for v in cfg.delete:
        out = delete_vertex_from_drawing(out, v)
    if cfg.add_edge is not None:
        x, y = cfg.add_edge
        plan = out.planarization()
        inserted = None
        for f in faces_containing(plan, [x, y]):
            cand = insert_edge_in_face(out, f, x, y)
            if cand.validate().ok:
                inserted = cand
                break
        if inserted is None and "eo" in cfg.roles:
            # the surviving crossed edge separates x from y; the new edge is
            # drawn through it, reusing the freed crossing point
            cand = insert_edge_crossing_existing(out, x, y, cfg.roles["eo"])
            if cand.validate().ok:
                inserted = cand
        if inserted is None:
            raise ReduceError(f"no face admits the edge {x}-{y} after deleting {cfg.delete}")
        out = inserted
    new_measure = out.graph.num_vertices() + out.graph.num_edges()
    assert new_measure < measure, "reduction must decrease |V|+|E|"
    diag = out.validate()
    if not diag.ok:  # pragma: no cover - surgery keeps drawings valid
        raise ReduceError(f"reduced drawing invalid: {diag}")
    return out, ExtensionRecipe(cfg.kind, dict(cfg.roles), g, out.graph)


# -- extension ---------------------------------------------------------------------


def _protection(g: Graph, c: Coloring, v: int) -> set:
    """Colors that would leave some neighbor of v with a monochromatic,
    fully-colored neighborhood once v is colored."""
    out = set()
    for nb in g.neighbors(v):
        if g.degree(nb) < 2:
            continue
        others = g.neighbors(nb) - {v}
        if all(o in c for o in others):
            seen = {c[o] for o in others}
            if len(seen) == 1:
                out |= seen
    return out


def _assign(g: Graph, c: Coloring, lists: ListAssignment, v: int, forbidden) -> None:
    f = {x for x in forbidden if x is not None}
    f |= {c[nb] for nb in g.neighbors(v) if nb in c}
    f |= _protection(g, c, v)
    candidates = sorted(lists[v] - f)
    if not candidates:
        raise ExtensionError(f"no candidate color for vertex {v}: list {sorted(lists[v])}, forbidden {sorted(f)}")
    c[v] = candidates[0]


def _col(c: Coloring, v) -> Optional[int]:
    return None if v is None else c[v]


def extend_coloring(c_prime: Coloring, recipe: ExtensionRecipe, lists: ListAssignment) -> Coloring:
    """Color the deleted vertices of a reduction on top of a dynamic coloring
    of the reduced graph, per the recipe of the configuration kind."""
    if not is_dynamic(recipe.child, c_prime):
        raise ExtensionError("base coloring is not a dynamic coloring of the reduced graph")
    for v in recipe.child.vertices():
        if c_prime[v] not in lists[v]:
            raise ExtensionError(f"base coloring violates the list at vertex {v}")
    g = recipe.parent
    r = recipe.roles
    c: Coloring = dict(c_prime)

    if recipe.kind == "MinDeg1":
        _assign(g, c, lists, r["u"], {_col(c, r["v"]), _col(c, r["v1"])})
    elif recipe.kind == "AdjacentTwos":
        _assign(g, c, lists, r["u"], {c[r["x"]], c[r["y"]], c[r["x1"]]})
        _assign(g, c, lists, r["v"], {c[r["u"]], c[r["x"]], c[r["y"]], c[r["y1"]]})
    elif recipe.kind == "SmallEdge2":
        xs, xps, ys = r["xs"], r["xps"], r["ys"]
        fv = {c[r["z"]]} | {c[x] for x in xps} | {c[y] for y in ys}
        _assign(g, c, lists, r["v"], fv)
        for x, xp in zip(xs, xps):
            _assign(g, c, lists, x, {c[r["v"]], c[xp]})
        third = c[xs[0]] if xs else c[ys[0]]
        _assign(g, c, lists, r["u"], {c[r["z"]], c[r["v"]], third})
    elif recipe.kind == "SmallEdgeGeneral":
        u, v, us, vs = r["u"], r["v"], r["us"], r["vs"]
        vcols = sorted(c[x] for x in vs)
        u1 = min(us)
        if vcols[0] != vcols[-1]:
            _assign(g, c, lists, v, set(vcols) | {c[u1]})
            _assign(g, c, lists, u, {c[x] for x in us} | {c[v]})
        else:
            _assign(g, c, lists, u, {c[x] for x in us} | {vcols[0]})
            _assign(g, c, lists, v, {vcols[0], c[u], c[u1]})
    elif recipe.kind == "TriangleSmall":
        _assign(g, c, lists, r["u"], {c[r["v"]], c[r["w"]]} | {c[x] for x in r["xs"]})
    elif recipe.kind == "FalseTriangleTrueSmall":
        forb = {c[r["v"]], c[r["w"]], c[r["vp"]], c[r["wp"]]} | {c[x] for x in r["xs"]}
        _assign(g, c, lists, r["u"], forb)
    elif recipe.kind == "BigFaceSmall":
        if r["case"] == "true-true":
            forb = {c[r["v"]], c[r["w"]], c[r["vp"]], c[r["wp"]]} | {c[x] for x in r["xs"]}
        else:
            forb = {c[r["v"]], c[r["up"]], c[r["upp"]], _col(c, r["aux"])} | {c[x] for x in r["xs"]}
        _assign(g, c, lists, r["u"], forb)
    else:  # pragma: no cover
        raise ReduceError(f"unknown recipe kind {recipe.kind}")

    if not is_dynamic(g, c):
        raise ExtensionError(
            f"extension for {recipe.kind} produced a non-dynamic coloring (implementation bug)"
        )
    return c


# -- 6-face redrawing ----------------------------------------------------------------


def _replant_2vertex(d: OnePlaneDrawing, t: int) -> Optional[OnePlaneDrawing]:
    """Delete a 2-vertex and re-insert it crossing-free joined to its two
    neighbors (which share the face freed by the deletion)."""
    ns = sorted(d.graph.neighbors(t))
    if len(ns) != 2:
        return None
    d1 = delete_vertex_from_drawing(d, t)
    plan = d1.planarization()
    for f in faces_containing(plan, ns):
        cand = insert_leaf_path_in_face(d1, f, t, ns)
        if cand.validate().ok:
            return cand
    return None


def improve_drawing_6face(d: OnePlaneDrawing, ell: int = 11) -> Optional[OnePlaneDrawing]:
    """Redraw around a 6-face carrying three special 2-vertices, saving
    exactly three crossings; None when no such face exists."""
    a = d.planarization()
    special = special_vertices(a, ell)
    for f in a.faces:
        if f.degree != 6:
            continue
        vs = f.vertices()
        for r in (0, 1):
            trues = [vs[(r + 2 * j) % 6] for j in range(3)]
            falses = [vs[(r + 1 + 2 * j) % 6] for j in range(3)]
            if not all(isinstance(x, int) for x in trues):
                continue
            if not all(a.is_false(x) for x in falses):
                continue
            if not all(x in special and d.graph.degree(x) == 2 for x in trues):
                continue
            _, v, w = trues
            d1 = _replant_2vertex(d, v)
            if d1 is None:
                continue
            d2 = _replant_2vertex(d1, w)
            if d2 is None:
                continue
            if d2.graph != d.graph or len(d2.crossings) != len(d.crossings) - 3:
                continue
            return d2
    return None


# -- the constructive colorer ----------------------------------------------------------


def color_1planar(
    d: OnePlaneDrawing,
    lists: ListAssignment,
    ell: int = 11,
    base_cap: int = 9,
    fallback_cap: int = 14,
    trace: Optional[List[str]] = None,
) -> Coloring:
    """Dynamic L-coloring of a valid 1-plane drawing with 11+-lists.

    Repeatedly reduces configurations (or redraws a bad 6-face), solves the
    small remainder exactly, then unwinds the recipe stack.  When neither a
    configuration nor a redrawing applies, falls back to exact search and
    logs it — arbitrary drawings carry no crossing-minimality certificate.
    """

    def log(msg: str) -> None:
        if trace is not None:
            trace.append(msg)

    diag = d.validate()
    if not diag.ok:
        raise ReduceError(f"invalid drawing: {diag}")
    for v in d.graph.vertices():
        if v not in lists or len(lists[v]) < ell:
            raise ReduceError(f"vertex {v} needs a list of at least {ell} colors")

    stack: List[ExtensionRecipe] = []
    cur = d
    while True:
        g = cur.graph
        measure = g.num_vertices() + g.num_edges()
        if g.num_vertices() <= base_cap:
            c = find_list_coloring(g, lists, dynamic=True)
            if c is None:  # pragma: no cover - 11 colors always suffice at this size
                raise ReduceError("exact base solve failed unexpectedly")
            log(f"base-solve n={g.num_vertices()} m={g.num_edges()}")
            break
        cfg = find_reducible_configuration(cur, ell)
        if cfg is not None:
            cur, recipe = reduce(cur, cfg)
            stack.append(recipe)
            new_measure = cur.graph.num_vertices() + cur.graph.num_edges()
            log(f"reduce {cfg.kind} roles={_role_summary(cfg)} measure {measure}->{new_measure}")
            continue
        better = improve_drawing_6face(cur, ell)
        if better is not None:
            log(f"redraw 6-face crossings {len(cur.crossings)}->{len(better.crossings)}")
            cur = better
            continue
        if g.num_vertices() > fallback_cap:
            raise SearchCapExceeded(
                f"no configuration applies and {g.num_vertices()} vertices exceed the exact fallback cap {fallback_cap}"
            )
        log(f"fallback exact search n={g.num_vertices()} (no configuration applied)")
        c = find_list_coloring(g, lists, dynamic=True)
        if c is None:
            raise ReduceError("exact fallback found no coloring")
        break

    for recipe in reversed(stack):
        c = extend_coloring(c, recipe, lists)
    if not is_dynamic(d.graph, c):  # pragma: no cover - re-checked per step
        raise ExtensionError("final coloring failed verification")
    for v in d.graph.vertices():
        assert c[v] in lists[v]
    return c


def _role_summary(cfg: ReducibleConfig) -> str:
    parts = []
    for k in sorted(cfg.roles):
        if k in ("face", "case"):
            continue
        parts.append(f"{k}={cfg.roles[k]}")
    return ",".join(parts)


def uniform_lists(g: Graph, ell: int = 11) -> ListAssignment:
    colors = frozenset(range(1, ell + 1))
    return {v: colors for v in g.vertices()}
