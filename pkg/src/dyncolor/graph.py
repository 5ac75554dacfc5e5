"""Simple undirected graphs with value semantics.

Vertices are small nonnegative integers whose identity is stable under
deletions (no renumbering).  All mutating operations return a new graph and
leave the input untouched, because the reduction/extension machinery keeps
many graph versions alive at once.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, Tuple

VertexId = int
EdgeKey = Tuple[int, int]  # always (min, max)


class GraphError(ValueError):
    pass


def edge_key(u: int, v: int) -> EdgeKey:
    if u == v:
        raise GraphError(f"loop at vertex {u} is not allowed")
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("_adj",)

    def __init__(self, adj: Dict[int, FrozenSet[int]]):
        self._adj = adj

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_edges(vertices: Iterable[int] = (), edges: Iterable[Tuple[int, int]] = ()) -> "Graph":
        adj: Dict[int, set] = {int(v): set() for v in vertices}
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at vertex {u} is not allowed")
            adj.setdefault(u, set())
            adj.setdefault(v, set())
            adj[u].add(v)
            adj[v].add(u)
        return Graph({v: frozenset(ns) for v, ns in adj.items()})

    @staticmethod
    def cycle(n: int) -> "Graph":
        if n < 3:
            raise GraphError("cycle needs at least 3 vertices")
        return Graph.from_edges(range(n), [(i, (i + 1) % n) for i in range(n)])

    @staticmethod
    def path(n: int) -> "Graph":
        if n < 1:
            raise GraphError("path needs at least 1 vertex")
        return Graph.from_edges(range(n), [(i, i + 1) for i in range(n - 1)])

    @staticmethod
    def complete(n: int) -> "Graph":
        return Graph.from_edges(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])

    # -- queries -----------------------------------------------------------

    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(self._adj))

    def edges(self) -> Tuple[EdgeKey, ...]:
        out = []
        for u, ns in self._adj.items():
            for v in ns:
                if u < v:
                    out.append((u, v))
        return tuple(sorted(out))

    def num_vertices(self) -> int:
        return len(self._adj)

    def num_edges(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def neighbors(self, v: int) -> FrozenSet[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def connected_components(self) -> Tuple[FrozenSet[int], ...]:
        seen: set = set()
        comps = []
        for start in sorted(self._adj):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    # -- value-semantic mutations -------------------------------------------

    def add_vertex(self, v: int) -> "Graph":
        if v in self._adj:
            return self
        adj = dict(self._adj)
        adj[int(v)] = frozenset()
        return Graph(adj)

    def add_edge(self, u: int, v: int) -> "Graph":
        k = edge_key(u, v)
        for x in k:
            if x not in self._adj:
                raise GraphError(f"unknown vertex {x}")
        if self.has_edge(u, v):
            return self
        adj = dict(self._adj)
        adj[u] = adj[u] | {v}
        adj[v] = adj[v] | {u}
        return Graph(adj)

    def remove_vertices(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        for v in drop:
            if v not in self._adj:
                raise GraphError(f"unknown vertex {v}")
        adj = {v: ns - drop for v, ns in self._adj.items() if v not in drop}
        return Graph(adj)

    def remove_edge(self, u: int, v: int) -> "Graph":
        edge_key(u, v)
        if not self.has_edge(u, v):
            raise GraphError(f"no edge {u}-{v}")
        adj = dict(self._adj)
        adj[u] = adj[u] - {v}
        adj[v] = adj[v] - {u}
        return Graph(adj)

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self):
        return hash(frozenset((v, ns) for v, ns in self._adj.items()))

    def __repr__(self):
        return f"Graph(n={self.num_vertices()}, m={self.num_edges()})"

    def is_isomorphic_brute(self, other: "Graph") -> bool:
        """Brute-force isomorphism check for small graphs (test helper)."""
        from itertools import permutations

        if self.num_vertices() != other.num_vertices() or self.num_edges() != other.num_edges():
            return False
        a, b = self.vertices(), other.vertices()
        if sorted(self.degree(v) for v in a) != sorted(other.degree(v) for v in b):
            return False
        my_edges = set(self.edges())
        for perm in permutations(b):
            m = dict(zip(a, perm))
            if all(other.has_edge(m[u], m[v]) for u, v in my_edges):
                return True
        return False


def two_subdivision(g: Graph) -> Tuple[Graph, Dict[int, int], FrozenSet[int]]:
    """Insert a new degree-2 vertex on every edge.

    Returns (subdivided graph, injection of original vertices, set of new
    2-vertices).  New vertices take ids above the current maximum, assigned
    in sorted edge order, so the result is deterministic.
    """
    verts = g.vertices()
    next_id = (max(verts) + 1) if verts else 0
    mapping = {v: v for v in verts}
    new_edges = []
    mids = []
    for u, v in g.edges():
        m = next_id
        next_id += 1
        mids.append(m)
        new_edges.append((u, m))
        new_edges.append((m, v))
    sub = Graph.from_edges(list(verts) + mids, new_edges)
    return sub, mapping, frozenset(mids)


def subdivision_midpoints(g: Graph) -> Dict[EdgeKey, int]:
    """Edge -> midpoint id map matching :func:`two_subdivision` numbering."""
    verts = g.vertices()
    next_id = (max(verts) + 1) if verts else 0
    out = {}
    for e in g.edges():
        out[e] = next_id
        next_id += 1
    return out


def two_planar_edge_bound_check(g: Graph) -> bool:
    """Necessary condition for 2-planarity: m <= 5n - 10 (needs n >= 3)."""
    n = g.num_vertices()
    if n < 3:
        raise GraphError("edge bound check needs at least 3 vertices")
    return g.num_edges() <= 5 * n - 10


# -- text format -----------------------------------------------------------
#
#   # comment
#   v <id>
#   e <id1> <id2>


def parse_graph(text: str) -> Graph:
    vertices: list = []
    edges: list = []
    seen_edges: set = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "v" and len(parts) == 2:
                vertices.append(int(parts[1]))
            elif parts[0] == "e" and len(parts) == 3:
                u, v = int(parts[1]), int(parts[2])
                k = edge_key(u, v)
                if k in seen_edges:
                    raise GraphError(f"duplicate edge {u}-{v}")
                seen_edges.add(k)
                edges.append((u, v))
            else:
                raise GraphError(f"unrecognized record {parts[0]!r}")
        except (ValueError, GraphError) as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
    return Graph.from_edges(vertices, edges)


def serialize_graph(g: Graph) -> str:
    lines = [f"v {v}" for v in g.vertices()]
    lines += [f"e {u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"
