import json

import pytest

import oracles
from t0lab import check, check_all, crosscheck_h_sober, crosscheck_super
from t0lab.checkers import (
    PROPERTY_IDS,
    Verdict,
    h_consonance,
    upper_topology_report,
    validate_evidence,
)
from t0lab.config import RunConfig
from t0lab.errors import MissingSystem, UsageError
from t0lab.systems import BASE_IDS

CORES = ("S", "C", "D", "R")
H_PROPS = (
    "h_sober",
    "super_h_sober",
    "h_complete",
    "h_bounded",
    "hip",
    "smyth_h_complete",
    "h_consonant",
)


def active_values(v: Verdict) -> list[str]:
    return [val for _, val in v.characterizations if val in ("true", "false")]


# -- argument handling -----------------------------------------------------


def test_property_ids_are_complete():
    assert len(PROPERTY_IDS) == 13
    assert len(set(PROPERTY_IDS)) == 13
    for p in H_PROPS:
        assert p in PROPERTY_IDS


def test_check_argument_validation(sier):
    with pytest.raises(UsageError):
        check(sier, "frobnicated")
    with pytest.raises(MissingSystem):
        check(sier, "h_sober")
    with pytest.raises(UsageError):
        check(sier, "sober", "D")


# -- the finite collapse, against the raw oracles --------------------------


def test_plain_verdicts_match_raw_oracles(all_posets):
    for n in (1, 2, 3, 4):
        for X in all_posets[n]:
            assert check(X, "sober").holds == oracles.sober(X)
            assert check(X, "d_space").holds == oracles.d_space(X)
            ks = oracles.compacts(X)
            if len(ks) <= 10:
                assert check(X, "well_filtered").holds == oracles.well_filtered(X)


def test_h_sober_verdicts_match_raw_oracle(all_posets):
    for n in (1, 2, 3, 4):
        for X in all_posets[n]:
            for core in CORES:
                assert check(X, "h_sober", core).holds == oracles.h_sober(X, core)


def test_super_verdicts_match_raw_oracle(all_posets):
    for n in (1, 2, 3):
        for X in all_posets[n]:
            for core in CORES:
                assert check(X, "super_h_sober", core).holds == \
                    oracles.super_h_sober(X, core)
    # at four points the irreducible-family quantifier gets expensive;
    # the cheap pairwise cores still run raw
    for X in all_posets[4]:
        if len(oracles.compacts(X)) > 10:
            continue
        for core in ("S", "C", "D"):
            assert check(X, "super_h_sober", core).holds == \
                oracles.super_h_sober(X, core)


def test_every_property_holds_on_small_posets(all_posets):
    for n in (1, 2, 3, 4):
        for X in all_posets[n]:
            for v in check_all(X):
                assert v.holds, (X, v.property, v.system)
                assert v.characterizations_agreed, (X, v.property, v.system)
                assert len(active_values(v)) >= 2
                assert validate_evidence(X, v)


def test_check_all_shape(diamond):
    vs = check_all(diamond)
    assert len(vs) == 6 + 7 * 7
    assert [v.property for v in vs[:6]] == [
        "t0", "d_space", "sober", "well_filtered", "omega_well_filtered",
        "locally_hypercompact",
    ]
    assert all(v.system is None for v in vs[:6])
    tail = vs[6:]
    assert {v.property for v in tail} == set(H_PROPS)
    assert {v.system for v in tail} == {str(H) for H in BASE_IDS}


# -- worked evidence -------------------------------------------------------


def test_sierpinski_sober_evidence(sier):
    v = check(sier, "sober")
    assert v.holds and v.characterizations_agreed
    assert v.evidence["generic_points"] == {"{a}": "a", "{a,b}": "b"}
    assert validate_evidence(sier, v)


def test_validate_evidence_rejects_tampering(sier):
    v = check(sier, "sober")
    bogus = Verdict(
        property=v.property,
        system=v.system,
        holds=v.holds,
        characterizations=v.characterizations,
        characterizations_agreed=v.characterizations_agreed,
        evidence={"generic_points": {"{b}": "b"}},
    )
    assert not validate_evidence(sier, bogus)
    swapped = Verdict(
        property=v.property,
        system=v.system,
        holds=v.holds,
        characterizations=v.characterizations,
        characterizations_agreed=v.characterizations_agreed,
        evidence={"generic_points": {"{a,b}": "a"}},
    )
    assert not validate_evidence(sier, swapped)


def test_verdict_json_shape(diamond):
    v = check(diamond, "h_sober", "D")
    doc = v.to_json()
    assert doc["property"] == "h_sober" and doc["system"] == "D"
    assert doc["holds"] is True and doc["characterizations_agreed"] is True
    assert all({"name", "value"} == set(c) for c in doc["characterizations"])
    json.dumps(doc)  # JSON-serializable end to end


# -- fast mode and caching -------------------------------------------------


def test_fast_mode_keeps_one_active_path(diamond):
    fast = RunConfig(fast=True)
    v = check(diamond, "sober", config=fast)
    assert v.holds
    assert len(active_values(v)) == 1
    # opting out of corroboration still counts as agreement
    assert v.characterizations_agreed
    assert v.holds == check(diamond, "sober").holds


def test_verdicts_are_cached_per_config(diamond):
    a = check(diamond, "sober")
    b = check(diamond, "sober")
    assert a is b
    c = check(diamond, "sober", config=RunConfig(seed=5))
    assert c is not a and c.holds == a.holds


# -- crosschecks -----------------------------------------------------------


def test_crosschecks_agree_everywhere_small(all_posets):
    for n in (1, 2, 3, 4):
        for X in all_posets[n]:
            for H in BASE_IDS:
                r1 = crosscheck_h_sober(X, H)
                assert r1.agreed, (X, str(H), r1.conditions)
                assert len(r1.conditions) == 9
                assert all(v is True for _, v in r1.conditions)
                r2 = crosscheck_super(X, H)
                assert r2.agreed, (X, str(H), r2.conditions)
                assert all(v is True for _, v in r2.conditions)


def test_crosscheck_condition_batteries(diamond):
    r1 = crosscheck_h_sober(diamond, "D")
    assert dict(r1.modes)["members"] == "raw"
    names = [n for n, _ in r1.conditions]
    assert names[0] == "h_sober"
    assert sum("cut equation" in n for n in names) == 4
    r2 = crosscheck_super(diamond, "R")
    names2 = [n for n, _ in r2.conditions]
    assert "Smyth power space is sober" in names2
    r3 = crosscheck_super(diamond, "Dw")
    assert "descending countable chains" in [n for n, _ in r3.conditions]
    assert "Smyth power space is sober" not in [n for n, _ in r3.conditions]
    doc = r2.to_json()
    assert doc["agreed"] is True and doc["property"] == "super_h_sober_characterizations"
    json.dumps(doc)


def test_crosschecks_on_random_corpus(corpus):
    for X in corpus[:30]:
        for H in ("S", "D", "R"):
            assert crosscheck_h_sober(X, H).agreed
            assert crosscheck_super(X, H).agreed


# -- hierarchy by refinement ----------------------------------------------


def test_property_implications_along_the_hierarchy(corpus):
    # h_sober implies completeness implies boundedness; the super form
    # implies the Smyth-side completeness which implies the intersection
    # property (all True on finite spaces, asserted per-verdict anyway)
    for X in corpus[:40]:
        for H in BASE_IDS:
            hs = check(X, "h_sober", H).holds
            hc = check(X, "h_complete", H).holds
            hb = check(X, "h_bounded", H).holds
            assert (not hs or hc) and (not hc or hb)
            sup = check(X, "super_h_sober", H).holds
            sc = check(X, "smyth_h_complete", H).holds
            ip = check(X, "hip", H).holds
            assert (not sup or sc) and (not sc or ip)
            assert not sup or hs


# -- auxiliary reports -----------------------------------------------------


def test_upper_topology_report(all_posets, diamond):
    for X in all_posets[3] + [diamond]:
        for H in ("D", "R"):
            v = upper_topology_report(X, H)
            assert v.holds and v.characterizations_agreed


def test_h_consonance_is_the_checker_property(diamond):
    v = h_consonance(diamond, "D")
    assert v.property == "h_consonant" and v.holds
    assert v is check(diamond, "h_consonant", "D")
