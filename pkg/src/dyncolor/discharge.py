"""Charge bookkeeping and rule audits on associated plane graphs.

Every vertex and face of the planarization starts with charge degree − 4 (the
total is −8 per connected component, by Euler's formula).  Five transfer
rules move charge from high-degree vertices and big faces toward 3-faces and
low-degree vertices.  On drawings satisfying all the structural claims every
element would end nonnegative — impossible, since the total stays −8 — which
is exactly what makes the claims useful: each violated claim points at a
reducible configuration or a redrawing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .drawing import (
    AssociatedPlaneGraph,
    Face,
    Node,
    OnePlaneDrawing,
    classify_faces,
    node_sort_key,
    special_4_faces,
    special_vertices,
)

# an element is ("v", node) or ("f", face id)
Element = Tuple[str, object]


class DischargeError(ValueError):
    pass


def element_str(a: AssociatedPlaneGraph, e: Element) -> str:
    kind, x = e
    if kind == "f":
        f = a.faces[x]
        if f.lone_vertex is not None:
            return f"face#{x}[isolated {f.lone_vertex}]"
        return f"face#{x}(deg {f.degree})"
    if isinstance(x, int):
        return f"v{x}"
    return f"x({x[1][0]}-{x[1][1]},{x[2][0]}-{x[2][1]})"


def _elem_degree(a: AssociatedPlaneGraph, e: Element) -> int:
    kind, x = e
    return a.faces[x].degree if kind == "f" else a.degree(x)


@dataclass(frozen=True)
class Transfer:
    rule: str
    source: Element
    target: Element
    amount: Fraction


@dataclass
class ChargeLedger:
    initial: Dict[Element, Fraction]
    transfers: List[Transfer] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)

    def final(self) -> Dict[Element, Fraction]:
        out = dict(self.initial)
        for t in self.transfers:
            out[t.source] -= t.amount
            out[t.target] += t.amount
        return out

    def net_by_rule(self, e: Element) -> Dict[str, Fraction]:
        out: Dict[str, Fraction] = {}
        for t in self.transfers:
            if t.source == e:
                out[t.rule] = out.get(t.rule, Fraction(0)) - t.amount
            if t.target == e:
                out[t.rule] = out.get(t.rule, Fraction(0)) + t.amount
        return out

    def sent(self, source: Element, target: Element, rules=None) -> Fraction:
        tot = Fraction(0)
        for t in self.transfers:
            if t.source == source and t.target == target and (rules is None or t.rule in rules):
                tot += t.amount
        return tot

    def total_initial(self) -> Fraction:
        return sum(self.initial.values(), Fraction(0))

    def total_final(self) -> Fraction:
        return sum(self.final().values(), Fraction(0))

    def assert_conserved(self) -> None:
        assert self.total_initial() == self.total_final(), "charge must be conserved"


def _elements(a: AssociatedPlaneGraph) -> List[Element]:
    out: List[Element] = [("v", x) for x in a.nodes]
    out.extend(("f", f.id) for f in a.faces)
    return out


def _components(a: AssociatedPlaneGraph) -> List[frozenset]:
    seen = set()
    comps = []
    for start in a.nodes:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in a.rotation[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def initial_charges(a: AssociatedPlaneGraph) -> ChargeLedger:
    """Charge degree − 4 on every vertex and face; −8 per component."""
    ledger = ChargeLedger({e: Fraction(_elem_degree(a, e) - 4) for e in _elements(a)})
    for comp in _components(a):
        total = sum(ledger.initial[("v", x)] for x in comp)
        for f in a.faces:
            anchor = f.lone_vertex if f.lone_vertex is not None else f.walk[0][0]
            if anchor in comp:
                total += ledger.initial[("f", f.id)]
        if total != -8:
            raise DischargeError(
                f"component of {sorted(comp, key=node_sort_key)[0]} has total charge {total}, expected -8 "
                "(non-spherical or inconsistent embedding)"
            )
    return ledger


def apply_rules(a: AssociatedPlaneGraph, ledger: ChargeLedger, ell: int = 11) -> ChargeLedger:
    """Apply R1..R5 in order on a fresh copy of the ledger."""
    out = ChargeLedger(dict(ledger.initial), list(ledger.transfers), list(ledger.flags))
    kinds = classify_faces(a)
    spec4 = special_4_faces(a, ell)
    special = special_vertices(a, ell)

    # R1: true 3-faces draw 1/3 from each incident 11+-vertex
    for f in a.faces:
        if f.degree == 3 and kinds[f.id] == "true":
            for v in f.vertices():
                if a.degree(v) >= 11:
                    out.transfers.append(Transfer("R1", ("v", v), ("f", f.id), Fraction(1, 3)))
    # R2: false 3-faces draw 1/2 from each incident 9+-vertex
    for f in a.faces:
        if f.degree == 3 and kinds[f.id] == "false":
            for v in f.vertices():
                if not a.is_false(v) and a.degree(v) >= 9:
                    out.transfers.append(Transfer("R2", ("v", v), ("f", f.id), Fraction(1, 2)))
    # R3: special 4-faces relay 1 from their big vertex to their low vertex
    for f, u, v in spec4:
        out.transfers.append(Transfer("R3", ("v", u), ("f", f.id), Fraction(1)))
        out.transfers.append(Transfer("R3", ("f", f.id), ("v", v), Fraction(1)))
    # R4: 5+-faces send 1 to each incident special 2-vertex (with multiplicity)
    for f in a.faces:
        if f.degree >= 5:
            for v in f.vertices():
                if not a.is_false(v) and a.degree(v) == 2 and v in special:
                    out.transfers.append(Transfer("R4", ("f", f.id), ("v", v), Fraction(1)))
    # R5: 5+-faces split their remaining charge equally over incident
    # non-special 2-vertices and all 3-vertices (with multiplicity)
    after = out.final()
    for f in a.faces:
        if f.degree < 5:
            continue
        eligible = [
            v
            for v in f.vertices()
            if not a.is_false(v)
            and (a.degree(v) == 3 or (a.degree(v) == 2 and v not in special))
        ]
        if not eligible:
            continue
        share = after[("f", f.id)] / len(eligible)
        if share < 0:
            out.flags.append(
                f"R5 share {share} on face#{f.id} is negative (non-minimal input; transferred as-is)"
            )
        for v in eligible:
            out.transfers.append(Transfer("R5", ("f", f.id), ("v", v), share))
    out.assert_conserved()
    return out


def negative_elements(ledger: ChargeLedger) -> List[Tuple[Element, Fraction]]:
    fin = ledger.final()
    neg = [(e, c) for e, c in fin.items() if c < 0]
    neg.sort(key=lambda ec: (ec[1], str(ec[0])))
    return neg


# -- claim audits ----------------------------------------------------------------


@dataclass
class ClaimAudit:
    claim: str
    description: str
    holds: bool
    witnesses: List[str] = field(default_factory=list)
    attached: Optional[str] = None


def _adjacent_faces(f1: Face, f2: Face) -> bool:
    darts = {(d[1], d[0]) for d in f1.walk}
    return any(d in darts for d in f2.walk)


def audit_claims(
    a: AssociatedPlaneGraph,
    ledger: ChargeLedger,
    drawing: Optional[OnePlaneDrawing] = None,
    ell: int = 11,
) -> List[ClaimAudit]:
    """Check the structural claims the rule set relies on; violations carry
    witnesses and, when a drawing is supplied, the reducible configuration or
    redrawing that exploits them."""
    fin = ledger.final()
    special = special_vertices(a, ell)
    spec4 = special_4_faces(a, ell)
    audits: List[ClaimAudit] = []

    def attach(applies_redraw: bool = False) -> Optional[str]:
        if drawing is None:
            return None
        from .reduce import find_reducible_configuration, improve_drawing_6face

        if applies_redraw and improve_drawing_6face(drawing, ell) is not None:
            return "redraw-6face"
        cfg = find_reducible_configuration(drawing, ell)
        if cfg is not None:
            return cfg.kind
        if improve_drawing_6face(drawing, ell) is not None:
            return "redraw-6face"
        return None

    # 1. every 5--face ends nonnegative
    w = [
        f"{element_str(a, ('f', f.id))} final {fin[('f', f.id)]}"
        for f in a.faces
        if f.degree <= 5 and fin[("f", f.id)] < 0
    ]
    audits.append(ClaimAudit(
        "small-face-nonneg", "every face of degree <= 5 ends with nonnegative charge",
        not w, w, attach() if w else None))

    # 2. every 6-face carries at most two special 2-vertices
    w = []
    for f in a.faces:
        if f.degree != 6:
            continue
        cnt = sum(1 for v in f.vertices() if not a.is_false(v) and a.degree(v) == 2 and v in special)
        if cnt > 2:
            w.append(f"{element_str(a, ('f', f.id))} has {cnt} special 2-vertices")
    audits.append(ClaimAudit(
        "six-face-special-limit", "every 6-face is incident with at most two special 2-vertices",
        not w, w, attach(applies_redraw=True) if w else None))

    # 3. big-face transfer bounds: u,x,v,y,w consecutive on a 5+-face, u big,
    #    x,y false, v a non-special 2-vertex or any 3-vertex: f sends >= 2 to v
    #    when w is also big, else >= 1
    w = []
    for f in a.faces:
        if f.degree < 5:
            continue
        vs = f.vertices()
        k = len(vs)
        for i in range(k):
            for step in (1, -1):
                u, x, v, y, ww = (vs[(i + j * step) % k] for j in range(5))
                if a.is_false(u) or a.degree(u) < ell:
                    continue
                if not (a.is_false(x) and a.is_false(y)) or a.is_false(v) or a.is_false(ww):
                    continue
                dv = a.degree(v)
                if not (dv == 3 or (dv == 2 and v not in special)):
                    continue
                need = 2 if a.degree(ww) >= ell else 1
                got = ledger.sent(("f", f.id), ("v", v), rules={"R4", "R5"})
                if got < need:
                    w.append(
                        f"{element_str(a, ('f', f.id))} sends {got} < {need} to v{v}"
                    )
    audits.append(ClaimAudit(
        "big-face-transfer", "a 5+-face flanked by big vertices sends enough to its low vertex",
        not w, w, attach() if w else None))

    # 4/5. low vertices end nonnegative
    for deg, name in ((2, "two-vertex-nonneg"), (3, "three-vertex-nonneg")):
        w = [
            f"v{v} final {fin[('v', v)]}"
            for v in a.true_nodes()
            if a.degree(v) == deg and fin[("v", v)] < 0
        ]
        audits.append(ClaimAudit(
            name, f"every {deg}-vertex ends with nonnegative charge", not w, w,
            attach() if w else None))

    # 6. no two special 4-faces share their big vertex and an edge
    w = []
    for i in range(len(spec4)):
        for j in range(i + 1, len(spec4)):
            f1, u1, _ = spec4[i]
            f2, u2, _ = spec4[j]
            if u1 == u2 and _adjacent_faces(f1, f2):
                w.append(f"face#{f1.id} and face#{f2.id} share v{u1} and an edge")
    audits.append(ClaimAudit(
        "special-faces-apart", "special 4-faces around one big vertex are never adjacent",
        not w, w, attach() if w else None))

    # 7. a big vertex sends at most 2 to any three consecutive faces around it
    w = []
    for v in a.true_nodes():
        if a.degree(v) < ell:
            continue
        ring = a.faces_around(v)
        d = len(ring)
        sent = [ledger.sent(("v", v), ("f", f.id)) for f in ring]
        for i in range(d):
            tot = sent[i] + sent[(i + 1) % d] + sent[(i + 2) % d]
            if tot > 2:
                w.append(f"v{v} sends {tot} > 2 to faces {ring[i].id},{ring[(i+1)%d].id},{ring[(i+2)%d].id}")
    audits.append(ClaimAudit(
        "three-consecutive-faces", "a big vertex sends at most 2 to three consecutive faces",
        not w, w, attach() if w else None))

    # 8. every 4+-vertex (true or false) ends nonnegative
    w = [
        f"{element_str(a, ('v', v))} final {fin[('v', v)]}"
        for v in a.nodes
        if a.degree(v) >= 4 and fin[("v", v)] < 0
    ]
    audits.append(ClaimAudit(
        "big-vertex-nonneg", "every vertex of degree >= 4 ends with nonnegative charge",
        not w, w, attach() if w else None))

    # consistency: all claims holding plus a deficit of -8 per component means
    # the deficit sits on elements outside the claims' scope (vertices of
    # degree <= 1); otherwise the drawing could not have validated
    if all(c.holds for c in audits):
        uncovered = [e for e, c in negative_elements(ledger)
                     if not (e[0] == "v" and a.degree(e[1]) <= 1)]
        if uncovered:
            raise DischargeError(
                "all claims hold yet negative charge remains on "
                + ", ".join(element_str(a, e) for e in uncovered)
                + " — inconsistent ledger (validation should have failed)"
            )
    return audits


# -- reports ------------------------------------------------------------------------


RULES = ("R1", "R2", "R3", "R4", "R5")


def format_report(a: AssociatedPlaneGraph, ledger: ChargeLedger, audits: List[ClaimAudit]) -> str:
    fin = ledger.final()
    lines = []
    header = f"{'element':<24}{'deg':>4}{'initial':>9}" + "".join(f"{r:>8}" for r in RULES) + f"{'final':>9}"
    lines.append(header)
    lines.append("-" * len(header))
    for e in sorted(fin, key=lambda e: (e[0], node_sort_key(e[1]) if e[0] == "v" else (e[1],))):
        nets = ledger.net_by_rule(e)
        row = f"{element_str(a, e):<24}{_elem_degree(a, e):>4}{str(ledger.initial[e]):>9}"
        row += "".join(f"{str(nets.get(r, '')):>8}" for r in RULES)
        row += f"{str(fin[e]):>9}"
        lines.append(row)
    lines.append("-" * len(header))
    lines.append(f"total initial {ledger.total_initial()}   total final {ledger.total_final()}")
    for fl in ledger.flags:
        lines.append(f"flag: {fl}")
    lines.append("")
    lines.append("claims:")
    for c in audits:
        status = "holds" if c.holds else "VIOLATED"
        lines.append(f"  [{status}] {c.claim}: {c.description}")
        for wit in c.witnesses[:5]:
            lines.append(f"      witness: {wit}")
        if len(c.witnesses) > 5:
            lines.append(f"      ... and {len(c.witnesses) - 5} more")
        if c.attached:
            lines.append(f"      applicable reduction: {c.attached}")
    neg = negative_elements(ledger)
    lines.append("")
    lines.append("negative elements: " + (", ".join(
        f"{element_str(a, e)}={c}" for e, c in neg) if neg else "none"))
    lines.append("")
    lines.append("machine-readable:")
    lines.append(machine_report(a, ledger, audits))
    return "\n".join(lines)


def machine_report(a: AssociatedPlaneGraph, ledger: ChargeLedger, audits: List[ClaimAudit]) -> str:
    fin = ledger.final()
    payload = {
        "elements": [
            {
                "element": element_str(a, e),
                "degree": _elem_degree(a, e),
                "initial": str(ledger.initial[e]),
                "by_rule": {r: str(x) for r, x in ledger.net_by_rule(e).items()},
                "final": str(fin[e]),
            }
            for e in sorted(fin, key=lambda e: (e[0], node_sort_key(e[1]) if e[0] == "v" else (e[1],)))
        ],
        "total_initial": str(ledger.total_initial()),
        "total_final": str(ledger.total_final()),
        "flags": list(ledger.flags),
        "claims": [
            {
                "claim": c.claim,
                "holds": c.holds,
                "witnesses": c.witnesses,
                "attached": c.attached,
            }
            for c in audits
        ],
        "negative": [[element_str(a, e), str(c)] for e, c in negative_elements(ledger)],
    }
    return json.dumps(payload, sort_keys=True)
