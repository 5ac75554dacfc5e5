"""Proper and dynamic (list) coloring: checkers and exact solvers.

A dynamic coloring is a proper coloring in which every vertex of degree at
least two sees at least two distinct colors in its neighborhood.  The exact
solvers are plain branch-and-bound searches with deterministic branching
(highest degree first, colors ascending), sized for desk-scale graphs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, FrozenSet, Optional, Tuple

from .graph import Graph, two_subdivision

Coloring = Dict[int, int]
ListAssignment = Dict[int, FrozenSet[int]]


class SearchCapExceeded(RuntimeError):
    """Raised when an exact search would exceed its configured size cap."""


class ColoringError(ValueError):
    pass


# -- checkers ----------------------------------------------------------------


def is_proper(g: Graph, c: Coloring) -> bool:
    _require_total(g, c)
    return all(c[u] != c[v] for u, v in g.edges())


def is_dynamic(g: Graph, c: Coloring) -> bool:
    """Proper, and every vertex of degree >= 2 sees >= 2 neighbor colors."""
    if not is_proper(g, c):
        return False
    for v in g.vertices():
        ns = g.neighbors(v)
        if len(ns) >= 2 and len({c[u] for u in ns}) < 2:
            return False
    return True


def _require_total(g: Graph, c: Coloring) -> None:
    missing = [v for v in g.vertices() if v not in c]
    if missing:
        raise ColoringError(f"coloring is partial; missing vertices {missing}")


# -- exact chromatic solvers ---------------------------------------------------


@dataclass
class SolveReport:
    value: int
    coloring: Coloring
    nodes: int
    seconds: float


def _branch_order(g: Graph) -> Tuple[int, ...]:
    return tuple(sorted(g.vertices(), key=lambda v: (-g.degree(v), v)))


def _search_k_coloring(g: Graph, k: int, dynamic: bool) -> Tuple[Optional[Coloring], int]:
    """Find a (dynamic) proper coloring with colors 1..k, canonicalized so a
    new color is introduced only as max_used + 1.  Returns (coloring, nodes)."""
    order = _branch_order(g)
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}
    color: Dict[int, int] = {}
    # uncolored-neighbor counts, used to trigger the dynamic check as soon as
    # a neighborhood is complete
    remaining = {v: g.degree(v) for v in order}
    nodes = 0

    def neighborhood_ok(v: int) -> bool:
        if g.degree(v) < 2:
            return True
        seen = {color[u] for u in g.neighbors(v)}
        return len(seen) >= 2

    def rec(i: int, max_used: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        v = order[i]
        forbidden = {color[u] for u in g.neighbors(v) if u in color}
        top = min(k, max_used + 1)
        for col in range(1, top + 1):
            if col in forbidden:
                continue
            nodes += 1
            color[v] = col
            ok = True
            if dynamic:
                for u in g.neighbors(v):
                    remaining[u] -= 1
                    if remaining[u] == 0 and not neighborhood_ok(u):
                        ok = False
                if ok and remaining[v] == 0 and not neighborhood_ok(v):
                    ok = False
            if ok and rec(i + 1, max(max_used, col)):
                return True
            if dynamic:
                for u in g.neighbors(v):
                    remaining[u] += 1
            del color[v]
        return False

    found = rec(0, 0)
    return (dict(color) if found else None), nodes


def _exact_chromatic(g: Graph, dynamic: bool, cap: int) -> SolveReport:
    n = g.num_vertices()
    if n > cap:
        raise SearchCapExceeded(f"graph has {n} vertices, cap is {cap}")
    t0 = time.perf_counter()
    if n == 0:
        return SolveReport(0, {}, 0, time.perf_counter() - t0)
    total_nodes = 0
    for k in range(1, n + 1):
        witness, nodes = _search_k_coloring(g, k, dynamic)
        total_nodes += nodes
        if witness is not None:
            checker = is_dynamic if dynamic else is_proper
            assert checker(g, witness)
            return SolveReport(k, witness, total_nodes, time.perf_counter() - t0)
    raise AssertionError("n colors always suffice")  # pragma: no cover


def chi(g: Graph, cap: int = 16) -> SolveReport:
    return _exact_chromatic(g, dynamic=False, cap=cap)


def chi_dynamic(g: Graph, cap: int = 16) -> SolveReport:
    return _exact_chromatic(g, dynamic=True, cap=cap)


# -- list coloring -------------------------------------------------------------


def find_list_coloring(g: Graph, lists: ListAssignment, dynamic: bool) -> Optional[Coloring]:
    """Exhaustive backtracking search; None means definitively no coloring."""
    for v in g.vertices():
        if v not in lists or not lists[v]:
            raise ColoringError(f"vertex {v} has no candidate list")
    order = _branch_order(g)
    n = len(order)
    color: Dict[int, int] = {}
    remaining = {v: g.degree(v) for v in order}

    def neighborhood_ok(v: int) -> bool:
        if g.degree(v) < 2:
            return True
        return len({color[u] for u in g.neighbors(v)}) >= 2

    def rec(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        forbidden = {color[u] for u in g.neighbors(v) if u in color}
        for col in sorted(lists[v]):
            if col in forbidden:
                continue
            color[v] = col
            ok = True
            if dynamic:
                for u in g.neighbors(v):
                    remaining[u] -= 1
                    if remaining[u] == 0 and not neighborhood_ok(u):
                        ok = False
                if ok and remaining[v] == 0 and not neighborhood_ok(v):
                    ok = False
            if ok and rec(i + 1):
                return True
            if dynamic:
                for u in g.neighbors(v):
                    remaining[u] += 1
            del color[v]
        return False

    return dict(color) if rec(0) else None


# -- choosability ---------------------------------------------------------------


@dataclass
class ChoosabilityReport:
    ell: int
    choosable: bool
    counterexample: Optional[ListAssignment]
    assignments_checked: int
    seconds: float


def _automorphisms(g: Graph) -> Tuple[Tuple[int, ...], ...]:
    verts = g.vertices()
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    adj = [frozenset(idx[u] for u in g.neighbors(v)) for v in verts]
    auts = []
    degs = [len(a) for a in adj]
    for perm in permutations(range(n)):
        if any(degs[i] != degs[perm[i]] for i in range(n)):
            continue
        if all(frozenset(perm[u] for u in adj[i]) == adj[perm[i]] for i in range(n)):
            auts.append(perm)
    return tuple(auts)


def _make_fast_colorability_checker(g: Graph, dynamic: bool):
    """Colorability test over index-encoded lists (bitmask of color ids).

    Built once per graph; the returned closure answers "do these lists admit a
    (dynamic) proper coloring" for lists given as an int bitmask per vertex
    index.  Vertex indices follow sorted vertex order.
    """
    verts = g.vertices()
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    nbrs = [tuple(sorted(idx[u] for u in g.neighbors(v))) for v in verts]
    order = sorted(range(n), key=lambda i: (-len(nbrs[i]), i))
    pos = {v: p for p, v in enumerate(order)}
    # dynamic condition for x becomes checkable once its last neighbor is colored
    trigger = [[] for _ in range(n)]
    for x in range(n):
        if len(nbrs[x]) >= 2:
            trigger[max(pos[u] for u in nbrs[x])].append(x)
    colors = [-1] * n

    def rec(p: int, lists) -> bool:
        if p == n:
            return True
        v = order[p]
        avail = lists[v]
        for u in nbrs[v]:
            cu = colors[u]
            if cu >= 0:
                avail &= ~(1 << cu)
        while avail:
            low = avail & -avail
            avail ^= low
            colors[v] = low.bit_length() - 1
            ok = True
            if dynamic:
                for x in trigger[p]:
                    seen = {colors[u] for u in nbrs[x]}
                    if len(seen) < 2:
                        ok = False
                        break
            if ok and rec(p + 1, lists):
                colors[v] = -1
                return True
        colors[v] = -1
        return False

    def check(lists) -> bool:
        return rec(0, lists)

    return check


def choosable(g: Graph, ell: int, dynamic: bool, n_cap: int = 8, ell_cap: int = 4) -> ChoosabilityReport:
    """Exact (dynamic) ell-choosability verdict.

    List assignments are enumerated as multisets of color supports (the set of
    vertices whose list contains a given color).  Two colors with disjoint
    supports can always be merged without making a bad assignment colorable,
    so only assignments whose supports pairwise intersect need to be checked;
    for n >= 2 this also rules out singleton supports.  Supports are generated
    in a canonical order (always extending the lowest-indexed vertex that has
    no color yet, then the lowest with a short list), and a branch is cut as
    soon as the partially built lists already admit a coloring — adding more
    colors can only keep an assignment colorable.  The search itself runs in a
    compiled kernel (see _fastpath).
    """
    n = g.num_vertices()
    if n > n_cap:
        raise SearchCapExceeded(f"graph has {n} vertices, cap is {n_cap}")
    if ell > ell_cap:
        raise SearchCapExceeded(f"list size {ell} exceeds cap {ell_cap}")
    if ell < 1:
        raise ColoringError("list size must be positive")
    t0 = time.perf_counter()
    verts = g.vertices()
    if n == 0:
        return ChoosabilityReport(ell, True, None, 0, time.perf_counter() - t0)
    if n == 1:
        return ChoosabilityReport(ell, True, None, 1, time.perf_counter() - t0)

    import numpy as np

    from ._fastpath import choosable_core

    popcount = [bin(m).count("1") for m in range(1 << n)]

    def key(m: int) -> int:
        return (popcount[m] << n) | m

    # masks of size >= 2 containing vertex i, largest first
    masks_flat: list = []
    mw_start, mw_len = [], []
    for i in range(n):
        ms = sorted((m for m in range(1 << n) if (m >> i) & 1 and popcount[m] >= 2), key=key, reverse=True)
        mw_start.append(len(masks_flat))
        mw_len.append(len(ms))
        masks_flat.extend(ms)
    keys = np.array([key(m) for m in range(1 << n)], np.int64)

    idx = {v: i for i, v in enumerate(verts)}
    nbrs = [tuple(sorted(idx[u] for u in g.neighbors(v))) for v in verts]
    order = sorted(range(n), key=lambda i: (-len(nbrs[i]), i))
    pos = {v: p for p, v in enumerate(order)}
    nbr_flat: list = []
    nbr_start = [0]
    for i in range(n):
        nbr_flat.extend(nbrs[i])
        nbr_start.append(len(nbr_flat))
    # vertex dynamic conditions become checkable at the position where their
    # last neighbor gets colored
    trig = [[] for _ in range(n)]
    for x in range(n):
        if len(nbrs[x]) >= 2:
            trig[max(pos[u] for u in nbrs[x])].append(x)
    trig_flat: list = []
    trig_start = [0]
    for p in range(n):
        trig_flat.extend(trig[p])
        trig_start.append(len(trig_flat))

    out_masks = np.zeros(n * ell, np.int64)
    k, checked, _nodes = choosable_core(
        n, ell,
        np.array(masks_flat or [0], np.int64),
        np.array(mw_start, np.int64),
        np.array(mw_len, np.int64),
        keys,
        np.array(order, np.int64),
        np.array(nbr_flat or [0], np.int64),
        np.array(nbr_start, np.int64),
        np.array(trig_flat or [0], np.int64),
        np.array(trig_start, np.int64),
        dynamic,
        out_masks,
    )
    elapsed = time.perf_counter() - t0
    if k > 0:
        counterexample = _lists_from_masks(verts, [int(out_masks[i]) for i in range(k)])
        assert all(len(counterexample[v]) == ell for v in verts)
        assert find_list_coloring(g, counterexample, dynamic) is None
        return ChoosabilityReport(ell, False, counterexample, checked, elapsed)
    return ChoosabilityReport(ell, True, None, checked, elapsed)


def _lists_from_masks(verts, masks) -> ListAssignment:
    out: Dict[int, set] = {v: set() for v in verts}
    for color, m in enumerate(masks, start=1):
        for i, v in enumerate(verts):
            if (m >> i) & 1:
                out[v].add(color)
    return {v: frozenset(s) for v, s in out.items()}


# -- closed forms for cycles -----------------------------------------------------


def chi_d_even_cycle(m: int) -> int:
    """Dynamic chromatic number of the even cycle C_m (m = 2n >= 4)."""
    if m < 4 or m % 2 != 0:
        raise ColoringError("even cycle formula needs even m >= 4")
    n = m // 2
    return 3 if n % 3 == 0 else 4


def subdivision_gap(n: int) -> int:
    """Gap between the dynamic chromatic number of the 2-subdivision of C_n
    (which is C_{2n}) and the chromatic number of C_n."""
    if n < 3:
        raise ColoringError("cycle needs n >= 3")
    rem = n % 6
    if rem == 3:
        return 0
    if rem in (0, 1, 5):
        return 1
    return 2  # rem in (2, 4)


# -- subdivision coloring lift ------------------------------------------------------


def lift_coloring(g: Graph, mapping: Dict[int, int], s: FrozenSet[int], c_star: Coloring) -> Coloring:
    """Pull a dynamic coloring of the 2-subdivision back to the base graph.

    The two neighbors of any inserted 2-vertex get distinct colors in a
    dynamic coloring, so restricting to the branch vertices is proper.
    """
    g_star, expected_map, expected_s = two_subdivision(g)
    if mapping != expected_map or s != expected_s:
        raise ColoringError("mapping/new-vertex set do not match the 2-subdivision of g")
    if not is_dynamic(g_star, c_star):
        raise ColoringError("input coloring is not a dynamic coloring of the 2-subdivision")
    c = {v: c_star[mapping[v]] for v in g.vertices()}
    assert is_proper(g, c)
    return c


# -- list/coloring text formats ----------------------------------------------------
#
#   l <vid> <color> <color> ...
#   c <vid> <color>


def parse_lists(text: str) -> ListAssignment:
    out: Dict[int, FrozenSet[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "l" or len(parts) < 3:
            raise ColoringError(f"line {lineno}: expected 'l <vid> <color>...'")
        v = int(parts[1])
        colors = frozenset(int(x) for x in parts[2:])
        if v in out:
            raise ColoringError(f"line {lineno}: duplicate list for vertex {v}")
        out[v] = colors
    return out


def serialize_lists(lists: ListAssignment) -> str:
    lines = []
    for v in sorted(lists):
        cols = " ".join(str(c) for c in sorted(lists[v]))
        lines.append(f"l {v} {cols}")
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> Coloring:
    out: Coloring = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "c" or len(parts) != 3:
            raise ColoringError(f"line {lineno}: expected 'c <vid> <color>'")
        v = int(parts[1])
        if v in out:
            raise ColoringError(f"line {lineno}: duplicate color for vertex {v}")
        out[v] = int(parts[2])
    return out


def serialize_coloring(c: Coloring) -> str:
    return "\n".join(f"c {v} {c[v]}" for v in sorted(c)) + "\n"
