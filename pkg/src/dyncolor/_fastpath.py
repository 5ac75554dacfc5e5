"""Compiled search core for the choosability checker.

The enumeration state is flattened into integer arrays so the whole search
(canonical support-multiset generation plus the colorability test at each
covered prefix) runs as one machine-compiled loop.  See coloring.choosable
for the algorithm description; this module is an implementation detail.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _bit_index(b):
    i = 0
    while b > 1:
        b >>= 1
        i += 1
    return i


@njit(cache=True)
def choosable_core(n, ell, masks_flat, mw_start, mw_len, keys, order,
                   nbr_flat, nbr_start, trig_flat, trig_start, dynamic, out_masks):
    """Depth-first search for a bad list assignment, explicit-stack form.

    Returns (k, checked, nodes): k > 0 means out_masks[:k] holds the color
    supports of a counterexample assignment; k == 0 means none exists.
    """
    full = (1 << n) - 1
    total_slots = n * ell
    maxdepth = total_slots // 2 + 1
    counts = np.zeros(n, np.int64)
    lists = np.zeros(n, np.int64)
    limits = np.full(n, np.int64(1) << 40, np.int64)
    chosen = np.zeros(maxdepth, np.int64)
    colors = np.zeros(n, np.int64)
    avail_stack = np.zeros(n, np.int64)
    st_target = np.zeros(maxdepth, np.int64)
    st_idx = np.zeros(maxdepth, np.int64)
    st_oldlimit = np.zeros(maxdepth, np.int64)
    st_total = np.zeros(maxdepth, np.int64)
    st_covered = np.zeros(maxdepth, np.int64)
    nodes = 0
    checked = 0
    depth = 0
    st_total[0] = total_slots
    st_covered[0] = 0
    st_target[0] = 0
    st_idx[0] = 0
    while depth >= 0:
        target = st_target[depth]
        covered = st_covered[depth]
        total = st_total[depth]
        advanced = False
        i0 = mw_start[target]
        ln = mw_len[target]
        idx = st_idx[depth]
        while idx < ln:
            m = masks_flat[i0 + idx]
            idx += 1
            km = keys[m]
            # the support may not touch a finished vertex nor break the
            # canonical (key-decreasing per target) order
            ok = True
            sz = 0
            mm = m
            while mm:
                b = mm & (-mm)
                mm ^= b
                i = _bit_index(b)
                sz += 1
                if counts[i] >= ell or km > limits[i]:
                    ok = False
                    break
            if not ok:
                continue
            for d2 in range(depth):
                if chosen[d2] & m == 0:  # supports pairwise intersect
                    ok = False
                    break
            if not ok:
                continue
            total2 = total - sz
            mm = m
            while mm:
                b = mm & (-mm)
                mm ^= b
                i = _bit_index(b)
                counts[i] += 1
                lists[i] |= np.int64(1) << depth
            covered2 = covered | m
            # feasibility: any future support covers >= 2 open slots, and
            # every support must keep an unfinished vertex to intersect
            mx = 0
            open_mask = 0
            for i in range(n):
                dd = ell - counts[i]
                if dd > 0:
                    open_mask |= 1 << i
                    if dd > mx:
                        mx = dd
            okpath = True
            if total2 > 0:
                if 2 * mx > total2:
                    okpath = False
                else:
                    for d2 in range(depth):
                        if chosen[d2] & open_mask == 0:
                            okpath = False
                            break
                    if okpath and (m & open_mask) == 0:
                        okpath = False
            if okpath and covered2 == full:
                checked += 1
                # colorability of the partial lists: once colorable, every
                # extension is colorable and the branch dies
                p = 0
                colored_ok = False
                while True:
                    if p == n:
                        colored_ok = True
                        break
                    v = order[p]
                    av = lists[v]
                    for q in range(nbr_start[v], nbr_start[v + 1]):
                        av &= ~colors[nbr_flat[q]]
                    placed = False
                    while True:
                        while av:
                            low = av & (-av)
                            av ^= low
                            colors[v] = low
                            good = True
                            if dynamic:
                                for q in range(trig_start[p], trig_start[p + 1]):
                                    x = trig_flat[q]
                                    s = 0
                                    for r in range(nbr_start[x], nbr_start[x + 1]):
                                        s |= colors[nbr_flat[r]]
                                    if s & (s - 1) == 0:
                                        good = False
                                        break
                            if good:
                                placed = True
                                break
                        if placed:
                            avail_stack[p] = av
                            p += 1
                            break
                        colors[v] = 0
                        p -= 1
                        if p < 0:
                            break
                        v = order[p]
                        av = avail_stack[p]
                        colors[v] = 0
                    if p < 0:
                        break
                    if p == n:
                        colored_ok = True
                        break
                for i in range(n):
                    colors[i] = 0
                if colored_ok:
                    okpath = False
                elif total2 == 0:
                    chosen[depth] = m
                    for d2 in range(depth + 1):
                        out_masks[d2] = chosen[d2]
                    return depth + 1, checked, nodes
            if okpath and total2 > 0:
                chosen[depth] = m
                st_idx[depth] = idx
                st_oldlimit[depth] = limits[target]
                limits[target] = km
                depth += 1
                nodes += 1
                st_total[depth] = total2
                st_covered[depth] = covered2
                if covered2 != full:
                    miss = full ^ covered2
                    st_target[depth] = _bit_index(miss & (-miss))
                else:
                    for i in range(n):
                        if counts[i] < ell:
                            st_target[depth] = i
                            break
                st_idx[depth] = 0
                advanced = True
                break
            else:
                mm = m
                while mm:
                    b = mm & (-mm)
                    mm ^= b
                    i = _bit_index(b)
                    counts[i] -= 1
                    lists[i] &= ~(np.int64(1) << depth)
        if advanced:
            continue
        depth -= 1
        if depth >= 0:
            target = st_target[depth]
            m = chosen[depth]
            limits[target] = st_oldlimit[depth]
            mm = m
            while mm:
                b = mm & (-mm)
                mm ^= b
                i = _bit_index(b)
                counts[i] -= 1
                lists[i] &= ~(np.int64(1) << depth)
    return 0, checked, nodes
