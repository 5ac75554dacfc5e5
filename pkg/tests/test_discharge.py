import json
from fractions import Fraction as F

from dyncolor import catalog
from dyncolor.discharge import (
    RULES,
    ChargeLedger,
    Transfer,
    apply_rules,
    audit_claims,
    element_str,
    format_report,
    initial_charges,
    machine_report,
    negative_elements,
)
from dyncolor.graph import Graph


def _ledger(name):
    a = catalog.fixture(name).planarization()
    return a, apply_rules(a, initial_charges(a))


def wheel_drawing(spokes):
    g = Graph.from_edges(
        range(spokes + 1),
        [(0, i) for i in range(1, spokes + 1)] + [(i, i % spokes + 1) for i in range(1, spokes + 1)],
    )
    return catalog.planar_drawing_of(g)


# -- initial charges ----------------------------------------------------------------


def test_initial_charges_star_of_crossing_edges():
    a = catalog.fixture("two-crossing-edges").planarization()
    led = initial_charges(a)
    assert led.total_initial() == -8
    # four 1-valent endpoints at -3, the 4-valent crossing at 0, one 8-face at +4
    assert sorted(led.initial.values()) == [-3, -3, -3, -3, 0, 4]


def test_initial_charges_cycle():
    a = catalog.fixture("cycle6").planarization()
    led = initial_charges(a)
    assert led.total_initial() == -8
    assert all(led.initial[("v", v)] == -2 for v in range(6))
    assert all(led.initial[("f", f.id)] == 2 for f in a.faces)


def test_initial_charges_per_component():
    two_triangles = Graph.from_edges(range(6), [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    a = catalog.planar_drawing_of(two_triangles).planarization()
    assert initial_charges(a).total_initial() == -16


def test_initial_charges_all_fixtures_sum_to_minus_eight():
    for name in catalog.fixture_names():
        a = catalog.fixture(name).planarization()
        assert initial_charges(a).total_initial() == -8, name


# -- rule application ---------------------------------------------------------------


def test_rules_conserve_charge_on_all_fixtures():
    for name in catalog.fixture_names():
        a, led = _ledger(name)
        led.assert_conserved()
        assert led.total_final() == led.total_initial()


def test_wheel11_exact_charges():
    # hub of degree 11 pays 1/3 into each of its 11 true 3-faces; the outer
    # 11-face splits its +7 equally over the eleven 3-valent rim vertices
    d = wheel_drawing(11)
    a = d.planarization()
    led = apply_rules(a, initial_charges(a))
    fin = led.final()
    assert fin[("v", 0)] == F(10, 3)  # 7 - 11/3
    assert all(fin[("v", v)] == F(-4, 11) for v in range(1, 12))  # -1 + 7/11
    tri = [f for f in a.faces if f.degree == 3]
    outer = [f for f in a.faces if f.degree == 11]
    assert len(tri) == 11 and len(outer) == 1
    assert all(fin[("f", f.id)] == F(-2, 3) for f in tri)  # -1 + 1/3
    assert fin[("f", outer[0].id)] == 0
    for f in tri:
        assert led.sent(("v", 0), ("f", f.id), ("R1",)) == F(1, 3)


def test_wheel6_small_hub_gives_nothing():
    # a 6-valent hub is below every rule threshold; only the outer face moves
    d = wheel_drawing(6)
    a = d.planarization()
    led = apply_rules(a, initial_charges(a))
    assert all(t.rule == "R5" for t in led.transfers)
    assert led.final()[("v", 0)] == 2
    assert all(led.final()[("v", v)] == F(-2, 3) for v in range(1, 7))


def test_cycle6_charges_after_rules():
    a, led = _ledger("cycle6")
    fin = led.final()
    assert all(fin[("v", v)] == F(-4, 3) for v in range(6))
    assert all(fin[("f", f.id)] == 0 for f in a.faces)


def test_special_faces_transfer_on_pattern6():
    # each special 4-face takes 1 from its big vertex and hands 1 to its
    # special 2-vertex; each bordering 5+-face pays the 2-vertex another 1
    from dyncolor.drawing import special_4_faces

    a, led = _ledger("pattern6")
    triples = special_4_faces(a)
    assert len(triples) == 3
    for f, u, v in triples:
        assert led.sent(("v", u), ("f", f.id), ("R3",)) == 1
        assert led.sent(("f", f.id), ("v", v), ("R3",)) == 1
    r4 = [t for t in led.transfers if t.rule == "R4"]
    assert r4, "special 2-vertices border a 5+-face"
    assert all(t.amount == 1 for t in r4)
    specials = {v for _, _, v in triples}
    assert {t.target[1] for t in r4} <= specials


def test_transfers_follow_rule_order():
    _, led = _ledger("pattern6")
    seen = [t.rule for t in led.transfers]
    assert seen == sorted(seen, key=RULES.index)
    assert set(seen) <= set(RULES)


def test_apply_rules_is_deterministic():
    a = catalog.fixture("k6-oneplane").planarization()
    l1 = apply_rules(a, initial_charges(a))
    l2 = apply_rules(a, initial_charges(a))
    assert l1.transfers == l2.transfers
    assert l1.final() == l2.final()


def test_negative_elements_sorted():
    _, led = _ledger("two-crossing-edges")
    neg = negative_elements(led)
    assert [e for e, _ in neg] == [("v", v) for v in range(4)]
    assert all(q == -3 for _, q in neg)


def test_ledger_arithmetic():
    led = ChargeLedger(
        initial={("v", 0): F(1), ("f", 0): F(-1)},
        transfers=(
            Transfer("R1", ("v", 0), ("f", 0), F(1, 3)),
            Transfer("R5", ("v", 0), ("f", 0), F(1, 6)),
        ),
        flags=(),
    )
    led.assert_conserved()
    assert led.final() == {("v", 0): F(1, 2), ("f", 0): F(-1, 2)}
    assert led.sent(("v", 0), ("f", 0)) == F(1, 2)
    assert led.sent(("v", 0), ("f", 0), ("R1",)) == F(1, 3)
    assert led.net_by_rule(("f", 0)) == {"R1": F(1, 3), "R5": F(1, 6)}


# -- claim audits --------------------------------------------------------------------


CLAIMS = (
    "small-face-nonneg",
    "six-face-special-limit",
    "big-face-transfer",
    "two-vertex-nonneg",
    "three-vertex-nonneg",
    "special-faces-apart",
    "three-consecutive-faces",
    "big-vertex-nonneg",
)


def _audit(name):
    d = catalog.fixture(name)
    a = d.planarization()
    led = apply_rules(a, initial_charges(a))
    return {au.claim: au for au in audit_claims(a, led, drawing=d)}


def test_audit_covers_all_claims():
    audits = _audit("k4-crossed")
    assert tuple(audits) == CLAIMS


def test_violated_claims_attach_a_repair():
    by = _audit("cycle6")
    assert not by["two-vertex-nonneg"].holds
    assert by["two-vertex-nonneg"].attached == "AdjacentTwos"

    by = _audit("k6-oneplane")
    assert not by["small-face-nonneg"].holds
    assert by["small-face-nonneg"].attached == "SmallEdgeGeneral"

    by = _audit("pattern6")
    assert not by["six-face-special-limit"].holds
    assert by["six-face-special-limit"].attached == "redraw-6face"


def test_wheel11_claim_attachments():
    d = wheel_drawing(11)
    a = d.planarization()
    led = apply_rules(a, initial_charges(a))
    by = {au.claim: au for au in audit_claims(a, led, drawing=d)}
    assert not by["small-face-nonneg"].holds  # 3-faces end at -2/3
    assert not by["three-vertex-nonneg"].holds  # rim ends at -4/11
    assert by["big-vertex-nonneg"].holds  # hub ends at +10/3


def test_holding_claims_have_no_witnesses():
    for au in _audit("two-crossing-edges").values():
        if au.holds:
            assert au.witnesses == []


# -- reports -------------------------------------------------------------------------


def test_format_report_mentions_everything():
    d = catalog.fixture("pattern6")
    a = d.planarization()
    led = apply_rules(a, initial_charges(a))
    audits = audit_claims(a, led, drawing=d)
    text = format_report(a, led, audits)
    for rule in RULES:
        assert rule in text
    assert "six-face-special-limit" in text
    assert element_str(a, ("v", 0)) in text


def test_machine_report_is_json():
    d = catalog.fixture("k6-oneplane")
    a = d.planarization()
    led = apply_rules(a, initial_charges(a))
    audits = audit_claims(a, led, drawing=d)
    data = json.loads(machine_report(a, led, audits))
    assert data["total_initial"] == "-8"
    assert data["total_final"] == "-8"
    assert {c["claim"] for c in data["claims"]} == set(CLAIMS)
