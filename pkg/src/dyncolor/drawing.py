"""Combinatorial 1-plane drawings and their planarizations.

A drawing is a graph together with a set of crossing edge pairs and a
rotation system: at every true vertex the cyclic order of incident edges, at
every crossing the cyclic order of the four edge halves meeting there.
Replacing each crossing by a degree-4 "false" vertex gives the associated
plane graph, whose faces are traced purely from the rotations.  Everything is
combinatorial; there are no coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .graph import EdgeKey, Graph, GraphError, edge_key

CrossKey = Tuple[EdgeKey, EdgeKey]  # sorted pair of edge keys
Half = Tuple[EdgeKey, int]  # (edge, true endpoint of this half)
FalseNode = Tuple[str, EdgeKey, EdgeKey]  # ('x', e1, e2)
Node = Union[int, FalseNode]
Dart = Tuple[Node, Node]


class DrawingError(ValueError):
    pass


def cross_key(e1: EdgeKey, e2: EdgeKey) -> CrossKey:
    return (e1, e2) if e1 < e2 else (e2, e1)


def false_node(ck: CrossKey) -> FalseNode:
    return ("x", ck[0], ck[1])


def node_sort_key(x: Node):
    if isinstance(x, int):
        return (0, x, (), ())
    return (1, 0, x[1], x[2])


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str


@dataclass
class Diagnostics:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, detail: str) -> None:
        self.violations.append(Violation(code, detail))

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(f"{v.code}: {v.detail}" for v in self.violations)


@dataclass(frozen=True)
class Face:
    id: int
    walk: Tuple[Dart, ...]
    lone_vertex: Optional[int] = None  # isolated-vertex face (degree 0)

    @property
    def degree(self) -> int:
        return len(self.walk)

    def vertices(self) -> Tuple[Node, ...]:
        """Boundary vertices with multiplicity, in walk order."""
        if self.lone_vertex is not None:
            return (self.lone_vertex,)
        return tuple(d[0] for d in self.walk)

    def vertex_set(self) -> FrozenSet[Node]:
        return frozenset(self.vertices())


def _canonical_walk(walk: Tuple[Dart, ...]) -> Tuple[Dart, ...]:
    if not walk:
        return walk

    def dkey(d: Dart):
        return (node_sort_key(d[0]), node_sort_key(d[1]))

    best = min(range(len(walk)), key=lambda i: [dkey(x) for x in walk[i:] + walk[:i]])
    return walk[best:] + walk[:best]


def trace_faces(rotation: Dict[Node, Tuple[Node, ...]]) -> List[Tuple[Dart, ...]]:
    """Partition all darts into face walks.

    The successor of dart (a, b) is (b, c) where c follows a in the rotation
    at b; this is the standard face permutation of a combinatorial map.
    """
    index: Dict[Dart, int] = {}
    for v, ns in rotation.items():
        for i, u in enumerate(ns):
            index[(u, v)] = i  # position of u in rotation at v
    seen: set = set()
    walks = []
    for v in sorted(rotation, key=node_sort_key):
        for u in rotation[v]:
            start = (v, u)
            if start in seen:
                continue
            walk = []
            d = start
            while True:
                walk.append(d)
                seen.add(d)
                a, b = d
                rot_b = rotation[b]
                c = rot_b[(index[(a, b)] + 1) % len(rot_b)]
                d = (b, c)
                if d == start:
                    break
            walks.append(_canonical_walk(tuple(walk)))
    return walks


class AssociatedPlaneGraph:
    """Planarization of a 1-plane drawing, with traced faces."""

    def __init__(self, drawing: "OnePlaneDrawing", rotation: Dict[Node, Tuple[Node, ...]]):
        self.drawing = drawing
        self.rotation = rotation
        self.nodes: Tuple[Node, ...] = tuple(sorted(rotation, key=node_sort_key))
        walks = trace_faces(rotation)
        faces: List[Face] = []
        walks.sort(key=lambda w: [(node_sort_key(d[0]), node_sort_key(d[1])) for d in w])
        fid = 0
        for w in walks:
            faces.append(Face(fid, w))
            fid += 1
        for v in self.nodes:
            if isinstance(v, int) and not rotation[v]:
                faces.append(Face(fid, (), lone_vertex=v))
                fid += 1
        self.faces: Tuple[Face, ...] = tuple(faces)

    # -- queries ---------------------------------------------------------

    def is_false(self, node: Node) -> bool:
        return not isinstance(node, int)

    def degree(self, node: Node) -> int:
        return len(self.rotation[node])

    def true_nodes(self) -> Tuple[int, ...]:
        return tuple(v for v in self.nodes if isinstance(v, int))

    def false_nodes(self) -> Tuple[FalseNode, ...]:
        return tuple(v for v in self.nodes if not isinstance(v, int))

    def num_edges(self) -> int:
        return sum(len(ns) for ns in self.rotation.values()) // 2

    def original_edge(self, a: Node, b: Node) -> EdgeKey:
        """The edge of the drawn graph a planarization edge belongs to."""
        for x in (a, b):
            if not isinstance(x, int):
                e1, e2 = x[1], x[2]
                other = b if x is a else a
                for e in (e1, e2):
                    if other in e:
                        return e
                raise DrawingError(f"no original edge for segment {a}-{b}")
        return edge_key(a, b)

    def faces_at(self, node: Node) -> Tuple[Face, ...]:
        return tuple(f for f in self.faces if node in f.vertex_set())

    def face_by_id(self, fid: int) -> Face:
        return self.faces[fid]

    def faces_around(self, node: Node) -> Tuple[Face, ...]:
        """Faces in rotation order around a node (one per corner, with
        multiplicity)."""
        at_corner: Dict[Dart, Face] = {}
        for f in self.faces:
            for d in f.walk:
                at_corner[d] = f
        out = []
        for u in self.rotation[node]:
            out.append(at_corner[(node, u)])
        return tuple(out)


class OnePlaneDrawing:
    """Graph + crossing pairs + rotation system (value-semantic)."""

    def __init__(
        self,
        graph: Graph,
        crossings: Iterable[Tuple[EdgeKey, EdgeKey]] = (),
        rot_true: Optional[Dict[int, Tuple[EdgeKey, ...]]] = None,
        rot_false: Optional[Dict[CrossKey, Tuple[Half, ...]]] = None,
    ):
        self.graph = graph
        self.crossings: Tuple[CrossKey, ...] = tuple(
            sorted(cross_key(tuple(e1), tuple(e2)) for e1, e2 in crossings)
        )
        self.rot_true: Dict[int, Tuple[EdgeKey, ...]] = dict(rot_true or {})
        self.rot_false: Dict[CrossKey, Tuple[Half, ...]] = dict(rot_false or {})
        self._plan: Optional[AssociatedPlaneGraph] = None

    # -- derived ----------------------------------------------------------

    def crossing_of(self) -> Dict[EdgeKey, EdgeKey]:
        out: Dict[EdgeKey, EdgeKey] = {}
        for e1, e2 in self.crossings:
            out[e1] = e2
            out[e2] = e1
        return out

    def is_crossed(self, e: EdgeKey) -> bool:
        return any(e in ck for ck in self.crossings)

    def validate(self) -> Diagnostics:
        diag = Diagnostics()
        g = self.graph
        edges = set(g.edges())
        seen_edges: Dict[EdgeKey, int] = {}
        for e1, e2 in self.crossings:
            for e in (e1, e2):
                if e not in edges:
                    diag.add("unknown-edge", f"crossing references missing edge {e}")
                seen_edges[e] = seen_edges.get(e, 0) + 1
            if e1 == e2:
                diag.add("self-crossing", f"edge {e1} crosses itself")
            elif set(e1) & set(e2):
                diag.add("adjacent-crossing", f"crossing edges {e1} and {e2} share an endpoint")
        for e, k in seen_edges.items():
            if k > 1:
                diag.add("edge-crossed-twice", f"edge {e} appears in {k} crossing pairs")

        for v in g.vertices():
            rot = self.rot_true.get(v)
            incident = {edge_key(v, u) for u in g.neighbors(v)}
            if rot is None:
                diag.add("missing-rotation", f"no rotation at vertex {v}")
                continue
            if len(rot) != len(set(rot)) or set(rot) != incident:
                diag.add("bad-rotation", f"rotation at {v} is not a cyclic order of its incident edges")
        for v in self.rot_true:
            if not g.has_vertex(v):
                diag.add("unknown-vertex", f"rotation given for missing vertex {v}")

        cross_set = set(self.crossings)
        for ck in self.rot_false:
            if ck not in cross_set:
                diag.add("unknown-crossing", f"rotation given for missing crossing {ck}")
        for ck in cross_set:
            rot = self.rot_false.get(ck)
            if rot is None:
                continue  # auto-interleaved later
            e1, e2 = ck
            expected = {(e1, e1[0]), (e1, e1[1]), (e2, e2[0]), (e2, e2[1])}
            if len(rot) != 4 or set(rot) != expected:
                diag.add("bad-false-rotation", f"rotation at crossing {ck} must list its four halves")
                continue
            if rot[0][0] == rot[1][0]:
                diag.add("not-interleaved", f"halves at crossing {ck} do not alternate between the two edges")

        if diag.ok:
            try:
                plan = self._build_planarization()
            except DrawingError as exc:
                diag.add("genus", str(exc))
            else:
                self._plan = plan
        return diag

    def planarization(self) -> AssociatedPlaneGraph:
        if self._plan is None:
            diag = self.validate()
            if not diag.ok:
                raise DrawingError(f"invalid drawing: {diag}")
            assert self._plan is not None
        return self._plan

    def _rotation_nodes(self, rot_false: Dict[CrossKey, Tuple[Half, ...]]) -> Dict[Node, Tuple[Node, ...]]:
        crossing_of = self.crossing_of()
        rotation: Dict[Node, Tuple[Node, ...]] = {}
        for v in self.graph.vertices():
            ns = []
            for e in self.rot_true[v]:
                if e in crossing_of:
                    ns.append(false_node(cross_key(e, crossing_of[e])))
                else:
                    a, b = e
                    ns.append(b if a == v else a)
            rotation[v] = tuple(ns)
        for ck in self.crossings:
            rotation[false_node(ck)] = tuple(h[1] for h in rot_false[ck])
        return rotation

    def _build_planarization(self) -> AssociatedPlaneGraph:
        missing = [ck for ck in self.crossings if ck not in self.rot_false]
        if len(missing) > 12:
            raise DrawingError("too many crossings without explicit rotations")

        def attempt(choice_bits: int) -> Optional[AssociatedPlaneGraph]:
            rf = dict(self.rot_false)
            for i, ck in enumerate(missing):
                e1, e2 = ck
                if (choice_bits >> i) & 1:
                    rf[ck] = ((e1, e1[0]), (e2, e2[1]), (e1, e1[1]), (e2, e2[0]))
                else:
                    rf[ck] = ((e1, e1[0]), (e2, e2[0]), (e1, e1[1]), (e2, e2[1]))
            rotation = self._rotation_nodes(rf)
            if not _euler_ok(rotation):
                return None
            self.rot_false = rf
            return AssociatedPlaneGraph(self, rotation)

        for bits in range(1 << len(missing)):
            plan = attempt(bits)
            if plan is not None:
                return plan
        raise DrawingError("rotation system is not a sphere embedding (Euler check failed)")

    # -- comparisons -------------------------------------------------------

    def same_embedding(self, other: "OnePlaneDrawing") -> bool:
        if self.graph != other.graph or self.crossings != other.crossings:
            return False

        def cyc_eq(a: Sequence, b: Sequence) -> bool:
            if len(a) != len(b):
                return False
            if not a:
                return True
            la, lb = list(a), list(b)
            return any(lb[i:] + lb[:i] == la for i in range(len(lb)))

        for v in self.graph.vertices():
            if not cyc_eq(self.rot_true[v], other.rot_true[v]):
                return False
        if self.crossings:
            # resolve any still-implicit crossing rotations before comparing
            self.planarization()
            other.planarization()
        for ck in self.crossings:
            if not cyc_eq(self.rot_false[ck], other.rot_false[ck]):
                return False
        return True

    def __repr__(self):
        return f"OnePlaneDrawing(n={self.graph.num_vertices()}, m={self.graph.num_edges()}, crossings={len(self.crossings)})"


def _euler_ok(rotation: Dict[Node, Tuple[Node, ...]]) -> bool:
    # connected components of the planarization
    nodes = list(rotation)
    comp: Dict[Node, int] = {}
    cid = 0
    for start in nodes:
        if start in comp:
            continue
        stack = [start]
        comp[start] = cid
        while stack:
            x = stack.pop()
            for y in rotation[x]:
                if y not in comp:
                    comp[y] = cid
                    stack.append(y)
        cid += 1
    walks = trace_faces(rotation)
    v_cnt = [0] * cid
    e_cnt = [0] * cid
    f_cnt = [0] * cid
    for x in nodes:
        v_cnt[comp[x]] += 1
        e_cnt[comp[x]] += len(rotation[x])
    for w in walks:
        f_cnt[comp[w[0][0]]] += 1
    for c in range(cid):
        e = e_cnt[c] // 2
        if e == 0:
            continue  # single vertex component
        if v_cnt[c] - e + f_cnt[c] != 2:
            return False
    return True


def validate_drawing(d: OnePlaneDrawing) -> Diagnostics:
    return d.validate()


def associated_plane_graph(d: OnePlaneDrawing) -> AssociatedPlaneGraph:
    return d.planarization()


# -- face classification ------------------------------------------------------


def classify_faces(a: AssociatedPlaneGraph) -> Dict[int, str]:
    """'false' if the face is incident with at least one false vertex."""
    out = {}
    for f in a.faces:
        out[f.id] = "false" if any(a.is_false(v) for v in f.vertex_set()) else "true"
    return out


def special_4_faces(a: AssociatedPlaneGraph, ell: int = 11) -> List[Tuple[Face, int, int]]:
    """4-faces u x v y with d(u) >= ell, d(v) in {2, 3}, x and y false.

    Returns (face, big vertex u, special low vertex v) triples.
    """
    out = []
    for f in a.faces:
        if f.degree != 4:
            continue
        vs = f.vertices()
        for r in range(4):
            u, x, v, y = vs[r], vs[(r + 1) % 4], vs[(r + 2) % 4], vs[(r + 3) % 4]
            if a.is_false(x) and a.is_false(y) and not a.is_false(u) and not a.is_false(v):
                if a.degree(u) >= ell and 2 <= a.degree(v) <= 3:
                    out.append((f, u, v))
    return out


def special_vertices(a: AssociatedPlaneGraph, ell: int = 11) -> FrozenSet[int]:
    """2- and 3-vertices that are the low vertex of some special 4-face."""
    return frozenset(v for _, _, v in special_4_faces(a, ell))


# -- drawing surgery -----------------------------------------------------------


def _corner_at(face: Face, v: int, occurrence: int = 0) -> Tuple[Dart, Dart]:
    """(entering dart, leaving dart) of the given occurrence of v on the walk."""
    hits = [i for i, d in enumerate(face.walk) if d[0] == v]
    if not hits:
        raise DrawingError(f"vertex {v} is not on face {face.id}")
    i = hits[occurrence]
    return face.walk[i - 1], face.walk[i]


def _insert_after(rot: Tuple[EdgeKey, ...], anchor: EdgeKey, new: EdgeKey) -> Tuple[EdgeKey, ...]:
    i = rot.index(anchor)
    return rot[: i + 1] + (new,) + rot[i + 1 :]


def insert_edge_in_face(d: OnePlaneDrawing, face: Face, u: int, v: int) -> OnePlaneDrawing:
    """Insert the crossing-free edge uv inside a face both vertices lie on."""
    a = d.planarization()
    if u == v:
        raise DrawingError("cannot insert a loop")
    if not (isinstance(u, int) and isinstance(v, int)):
        raise DrawingError("endpoints must be true vertices")
    if d.graph.has_edge(u, v):
        raise DrawingError(f"edge {u}-{v} already present")
    new_e = edge_key(u, v)
    rot_true = dict(d.rot_true)
    for x in (u, v):
        entering, _ = _corner_at(face, x)
        e_in = a.original_edge(*entering)
        rot_true[x] = _insert_after(rot_true[x], e_in, new_e)
    out = OnePlaneDrawing(d.graph.add_edge(u, v), d.crossings, rot_true, dict(d.rot_false))
    return out


def delete_vertex_from_drawing(d: OnePlaneDrawing, u: int) -> OnePlaneDrawing:
    if not d.graph.has_vertex(u):
        raise DrawingError(f"unknown vertex {u}")
    if not isinstance(u, int):
        raise DrawingError("can only delete true vertices")
    dead_edges = {edge_key(u, w) for w in d.graph.neighbors(u)}
    crossings = [ck for ck in d.crossings if not (set(ck) & dead_edges)]
    rot_false = {ck: d.rot_false[ck] for ck in crossings if ck in d.rot_false}
    rot_true = {}
    for v in d.graph.vertices():
        if v == u:
            continue
        rot_true[v] = tuple(e for e in d.rot_true[v] if e not in dead_edges)
    return OnePlaneDrawing(d.graph.remove_vertices([u]), crossings, rot_true, rot_false)


def insert_leaf_path_in_face(
    d: OnePlaneDrawing, face: Face, new_v: int, anchors: Sequence[int]
) -> OnePlaneDrawing:
    """Add a new vertex inside a face, joined crossing-free to one or two
    boundary vertices."""
    a = d.planarization()
    if d.graph.has_vertex(new_v):
        raise DrawingError(f"vertex {new_v} already present")
    rot_true = dict(d.rot_true)
    g = d.graph.add_vertex(new_v)
    new_edges = []
    for x in anchors:
        e = edge_key(new_v, x)
        new_edges.append(e)
        entering, _ = _corner_at(face, x)
        e_in = a.original_edge(*entering)
        rot_true[x] = _insert_after(rot_true[x], e_in, e)
        g = g.add_edge(new_v, x)
    rot_true[new_v] = tuple(new_edges)
    return OnePlaneDrawing(g, d.crossings, rot_true, dict(d.rot_false))


def insert_crossing_pair_in_face(
    d: OnePlaneDrawing, face: Face, a_v: int, b_v: int, c_v: int, d_v: int
) -> OnePlaneDrawing:
    """Insert edges a-c and b-d crossing once inside a face on whose walk the
    four (distinct, true) vertices appear in the cyclic order a, b, c, d."""
    plan = d.planarization()
    quad = (a_v, b_v, c_v, d_v)
    if len(set(quad)) != 4:
        raise DrawingError("need four distinct vertices")
    for x, y in ((a_v, c_v), (b_v, d_v)):
        if d.graph.has_edge(x, y):
            raise DrawingError(f"edge {x}-{y} already present")
    e1 = edge_key(a_v, c_v)
    e2 = edge_key(b_v, d_v)
    if e1 == e2:
        raise DrawingError("degenerate crossing pair")
    rot_true = dict(d.rot_true)
    g = d.graph
    for x, e in ((a_v, e1), (b_v, e2), (c_v, e1), (d_v, e2)):
        entering, _ = _corner_at(face, x)
        e_in = plan.original_edge(*entering)
        rot_true[x] = _insert_after(rot_true[x], e_in, e)
    g = g.add_edge(a_v, c_v).add_edge(b_v, d_v)
    ck = cross_key(e1, e2)
    rot_false = dict(d.rot_false)
    # around the crossing the halves point to a, b, c, d in face-walk order
    rot_false[ck] = ((e1, a_v), (e2, b_v), (e1, c_v), (e2, d_v))
    cand = OnePlaneDrawing(g, d.crossings + (ck,), rot_true, rot_false)
    if cand.validate().ok:
        return cand
    # orientation mismatch between walk order and rotation convention
    rot_false[ck] = ((e1, a_v), (e2, d_v), (e1, c_v), (e2, b_v))
    cand = OnePlaneDrawing(g, d.crossings + (ck,), rot_true, rot_false)
    diag = cand.validate()
    if not diag.ok:
        raise DrawingError(f"crossing insertion failed: {diag}")
    return cand


def insert_edge_crossing_existing(
    d: OnePlaneDrawing, u: int, v: int, e_old: EdgeKey
) -> OnePlaneDrawing:
    """Insert edge u-v drawn with a single crossing over the existing
    uncrossed edge e_old, for when e_old separates u's face from v's face."""
    plan = d.planarization()
    if d.is_crossed(e_old):
        raise DrawingError(f"edge {e_old} is already crossed")
    if d.graph.has_edge(u, v):
        raise DrawingError(f"edge {u}-{v} already present")
    e_new = edge_key(u, v)
    if set(e_new) & set(e_old):
        raise DrawingError("crossing edges may not share an endpoint")
    a_end, b_end = e_old
    fu = next(f for f in plan.faces if (a_end, b_end) in f.walk)
    fv = next(f for f in plan.faces if (b_end, a_end) in f.walk)
    if u not in fu.vertex_set():
        fu, fv = fv, fu
    if u not in fu.vertex_set() or v not in fv.vertex_set():
        raise DrawingError(f"{u} and {v} do not flank the edge {e_old}")
    rot_true = dict(d.rot_true)
    for x, f in ((u, fu), (v, fv)):
        entering, _ = _corner_at(f, x)
        e_in = plan.original_edge(*entering)
        rot_true[x] = _insert_after(rot_true[x], e_in, e_new)
    g = d.graph.add_edge(u, v)
    ck = cross_key(e_new, e_old)
    for ordering in (
        ((e_new, u), (e_old, a_end), (e_new, v), (e_old, b_end)),
        ((e_new, u), (e_old, b_end), (e_new, v), (e_old, a_end)),
    ):
        rot_false = dict(d.rot_false)
        rot_false[ck] = ordering
        cand = OnePlaneDrawing(g, d.crossings + (ck,), rot_true, rot_false)
        if cand.validate().ok:
            return cand
    raise DrawingError(f"no sphere embedding with {e_new} crossing {e_old}")


def faces_containing(a: AssociatedPlaneGraph, vertices: Iterable[Node]) -> List[Face]:
    want = set(vertices)
    return [f for f in a.faces if want <= f.vertex_set()]


# -- text format ----------------------------------------------------------------
#
#   v <id>
#   e <eid> <u> <v>
#   x <eid1> <eid2>
#   r <vid> <eid> <eid> ...
#   rx <eid1>x<eid2> <eid>:<endpoint-vid> ...


def serialize_drawing(d: OnePlaneDrawing) -> str:
    edges = d.graph.edges()
    eid = {e: i + 1 for i, e in enumerate(edges)}
    lines = [f"v {v}" for v in d.graph.vertices()]
    lines += [f"e {eid[e]} {e[0]} {e[1]}" for e in edges]
    lines += [f"x {eid[e1]} {eid[e2]}" for e1, e2 in d.crossings]
    for v in d.graph.vertices():
        if d.rot_true.get(v):
            lines.append("r " + str(v) + " " + " ".join(str(eid[e]) for e in d.rot_true[v]))
    for ck in d.crossings:
        if ck in d.rot_false:
            e1, e2 = ck
            segs = " ".join(f"{eid[e]}:{w}" for e, w in d.rot_false[ck])
            lines.append(f"rx {eid[e1]}x{eid[e2]} {segs}")
    return "\n".join(lines) + "\n"


def parse_drawing(text: str) -> OnePlaneDrawing:
    vertices: List[int] = []
    edges_by_id: Dict[int, EdgeKey] = {}
    raw_edges: List[Tuple[int, int]] = []
    crossings: List[CrossKey] = []
    rot_true: Dict[int, Tuple[EdgeKey, ...]] = {}
    rot_false: Dict[CrossKey, Tuple[Half, ...]] = {}
    pending: List[Tuple[int, List[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            kind = parts[0]
            if kind == "v" and len(parts) == 2:
                vertices.append(int(parts[1]))
            elif kind == "e" and len(parts) == 4:
                eid = int(parts[1])
                if eid in edges_by_id:
                    raise DrawingError(f"duplicate edge id {eid}")
                u, v = int(parts[2]), int(parts[3])
                k = edge_key(u, v)
                if k in edges_by_id.values():
                    raise DrawingError(f"duplicate edge {u}-{v}")
                edges_by_id[eid] = k
                raw_edges.append((u, v))
            elif kind == "e" and len(parts) == 3:
                raise DrawingError("drawing edges need ids: 'e <eid> <u> <v>'")
            elif kind in ("x", "r", "rx"):
                pending.append((lineno, parts))
            else:
                raise DrawingError(f"unrecognized record {kind!r}")
        except (ValueError, DrawingError) as exc:
            raise DrawingError(f"line {lineno}: {exc}") from None

    def edge(eid_s: str, lineno: int) -> EdgeKey:
        eid = int(eid_s)
        if eid not in edges_by_id:
            raise DrawingError(f"line {lineno}: unknown edge id {eid}")
        return edges_by_id[eid]

    for lineno, parts in pending:
        try:
            kind = parts[0]
            if kind == "x" and len(parts) == 3:
                crossings.append(cross_key(edge(parts[1], lineno), edge(parts[2], lineno)))
            elif kind == "r" and len(parts) >= 2:
                v = int(parts[1])
                rot_true[v] = tuple(edge(s, lineno) for s in parts[2:])
            elif kind == "rx" and len(parts) >= 2:
                a, b = parts[1].split("x")
                ck = cross_key(edge(a, lineno), edge(b, lineno))
                halves = []
                for s in parts[2:]:
                    es, ws = s.split(":")
                    halves.append((edge(es, lineno), int(ws)))
                rot_false[ck] = tuple(halves)
            else:
                raise DrawingError(f"malformed {kind!r} record")
        except (ValueError, DrawingError) as exc:
            raise DrawingError(f"line {lineno}: {exc}") from None

    g = Graph.from_edges(vertices, raw_edges)
    return OnePlaneDrawing(g, crossings, rot_true, rot_false)


def plane_drawing_from_rotations(g: Graph, rot_true: Dict[int, Tuple[EdgeKey, ...]]) -> OnePlaneDrawing:
    """Crossing-free drawing from a plain rotation system."""
    return OnePlaneDrawing(g, (), rot_true, {})
