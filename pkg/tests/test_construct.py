import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from t0lab import (
    continuous_maps,
    enumerate_posets,
    function_space,
    homeomorphic,
    parse_space,
    product,
    random_space,
    reflect,
    universal_property_verify,
)
from t0lab.config import Caps, RunConfig
from t0lab.construct import (
    _KINDS,
    equalizer,
    functor_laws,
    product_preservation,
    reflection_functor,
    retract_verify,
)
from t0lab.errors import (
    CapExceeded,
    EndpointMismatch,
    NoHomeomorphism,
    UsageError,
)
from t0lab.spaces import SpaceMap

seeds = st.integers(min_value=0, max_value=10**9)

# classes of T0 spaces on 1..6 points up to homeomorphism
POSET_COUNTS = [1, 2, 5, 16, 63, 318]


# -- products --------------------------------------------------------------


def test_product_order_is_componentwise(sier, diamond):
    P = product(sier, diamond)
    X, Y = P.factors
    for i in range(X.n):
        for j in range(Y.n):
            for a in range(X.n):
                for b in range(Y.n):
                    got = P.space.leq(P.pair_index(i, j), P.pair_index(a, b))
                    assert got == (X.leq(i, a) and Y.leq(j, b))
    assert P.left.table[P.pair_index(1, 2)] == 1
    assert P.right.table[P.pair_index(1, 2)] == 2


def test_product_with_a_point_is_the_factor(diamond):
    one = parse_space({"points": ["*"], "covers": []})
    P = product(one, diamond)
    assert homeomorphic(P.space, diamond) is not None


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_product_projections_preserve_opens(seed):
    rng = random.Random(seed)
    X = random_space(rng, max_points=4)
    Y = random_space(rng, max_points=4, prefix="q")
    P = product(X, Y)
    for U in X.upsets():
        assert P.space.is_up(P.left.preimage_mask(U))
    for V in Y.upsets():
        assert P.space.is_up(P.right.preimage_mask(V))


# -- map enumeration and function spaces -----------------------------------


def test_continuous_maps_match_raw_enumeration():
    rng = random.Random(13)
    for _ in range(10):
        X = random_space(rng, max_points=4)
        Y = random_space(rng, max_points=3, prefix="q")
        got = [f.table for f in continuous_maps(X, Y)]
        assert got == oracles.continuous_tables(X, Y)


def test_continuous_maps_cap(diamond):
    tight = RunConfig(caps=Caps(map_count=10))
    with pytest.raises(CapExceeded):
        continuous_maps(diamond, diamond, tight)


def test_function_space_carrier_and_order(sier):
    F = function_space(sier, sier)
    maps = continuous_maps(sier, sier)
    assert F.n == len(maps) == 3
    # pointwise order: const-a <= id <= const-b
    tables = [m.table for m in maps]
    ca, ident, cb = tables.index((0, 0)), tables.index((0, 1)), tables.index((1, 1))
    assert F.leq(ca, ident) and F.leq(ident, cb) and not F.leq(cb, ca)


def test_function_space_from_a_point_is_the_target(diamond):
    one = parse_space({"points": ["*"], "covers": []})
    F = function_space(one, diamond)
    assert homeomorphic(F, diamond) is not None


# -- equalizers and retracts ----------------------------------------------


def test_equalizer_of_a_parallel_pair(diamond, sier):
    f = SpaceMap.from_labels(
        diamond, sier, {"bot": "a", "l": "a", "r": "b", "top": "b"}
    )
    g = SpaceMap.from_labels(
        diamond, sier, {"bot": "a", "l": "b", "r": "b", "top": "b"}
    )
    E = equalizer(f, g)
    assert not E.is_empty
    assert set(E.space.labels) == {"bot", "r", "top"}
    assert E.inclusion.is_order_embedding()
    same = equalizer(f, f)
    assert same.space.n == diamond.n


def test_equalizer_can_be_empty(sier):
    const_a = SpaceMap.from_labels(sier, sier, {"a": "a", "b": "a"})
    const_b = SpaceMap.from_labels(sier, sier, {"a": "b", "b": "b"})
    E = equalizer(const_a, const_b)
    assert E.is_empty and E.space is None and E.inclusion is None


def test_equalizer_endpoint_mismatch(sier, diamond):
    f = SpaceMap.identity(sier)
    g = SpaceMap.identity(diamond)
    with pytest.raises(EndpointMismatch):
        equalizer(f, g)


def test_retract_verify(diamond):
    A = diamond.subspace(diamond.mask_of(["bot", "top"]))
    s = SpaceMap.from_labels(A, diamond, {"bot": "bot", "top": "top"})
    r = SpaceMap.from_labels(
        diamond, A, {"bot": "bot", "l": "bot", "r": "bot", "top": "top"}
    )
    rep = retract_verify(s, r)
    assert rep["identity"] and rep["ok"]
    assert all(t["retract"] for t in rep["transfers"].values())
    with pytest.raises(EndpointMismatch):
        retract_verify(s, s)


# -- enumeration up to homeomorphism ---------------------------------------


def test_poset_counts_are_the_known_ones():
    for n, want in enumerate(POSET_COUNTS, start=1):
        assert len(enumerate_posets(n)) == want


def test_enumerated_classes_are_pairwise_distinct():
    classes = enumerate_posets(4)
    for i, X in enumerate(classes):
        for Y in classes[i + 1 :]:
            assert homeomorphic(X, Y) is None


def test_enumerate_posets_bounds():
    with pytest.raises(CapExceeded):
        enumerate_posets(0)
    with pytest.raises(CapExceeded):
        enumerate_posets(8)


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_homeomorphic_is_invariant_under_relabeling(seed):
    rng = random.Random(seed)
    X = random_space(rng, max_points=6)
    perm = list(range(X.n))
    rng.shuffle(perm)
    from t0lab.spaces import FiniteSpace, bits as _bits

    up = [0] * X.n
    for i in range(X.n):
        m = 0
        for j in _bits(X.up[i]):
            m |= 1 << perm[j]
        up[perm[i]] = m
    relabeled = FiniteSpace([f"q{i}" for i in range(X.n)], up)
    f = homeomorphic(X, relabeled)
    assert f is not None
    assert f.is_injective() and f.is_order_embedding()
    assert len(set(f.table)) == X.n


def test_homeomorphic_distinguishes_chain_from_antichain(anti3):
    chain = parse_space(
        {"points": ["x", "y", "z"], "covers": [["x", "y"], ["y", "z"]]}
    )
    assert homeomorphic(chain, anti3) is None
    two = parse_space({"points": ["a", "b"], "covers": [["a", "b"]]})
    assert homeomorphic(chain, two) is None  # size mismatch


# -- reflections -----------------------------------------------------------


def test_reflect_kinds_and_unit(diamond):
    for kind in _KINDS:
        refl = reflect(diamond, "R", kind)
        assert refl.kind == kind
        assert refl.unit.is_injective() and refl.unit.is_order_embedding()
        # finite spaces already satisfy every target property, so the
        # reflection changes nothing up to homeomorphism
        assert refl.iso is not None
        assert refl.space.n == diamond.n
        doc = refl.to_json()
        assert doc["kind"] == kind and doc["points"] == diamond.n
    with pytest.raises(UsageError):
        reflect(diamond, "R", "plumbing")


def test_reflect_carrier_is_the_point_closures(all_posets):
    for n in (1, 2, 3, 4):
        for X in all_posets[n]:
            for system in ("D", "R"):
                refl = reflect(X, system)
                assert set(refl.carrier) == {X.down[i] for i in range(X.n)}
                assert refl.iso is not None


def test_universal_property_against_small_targets(diamond):
    refl = reflect(diamond, "R")
    for Y in enumerate_posets(3):
        rep = universal_property_verify(refl, Y)
        assert rep["ok"], rep
        assert rep["maps_checked"] == len(continuous_maps(diamond, Y))


def test_universal_property_single_map(sier, diamond):
    refl = reflect(sier, "D")
    f = SpaceMap.from_labels(sier, diamond, {"a": "bot", "b": "top"})
    rep = universal_property_verify(refl, diamond, f)
    assert rep["ok"] and rep["maps_checked"] == 1
    with pytest.raises(EndpointMismatch):
        universal_property_verify(refl, diamond, SpaceMap.identity(diamond))


def test_reflection_functor_laws(sier, diamond, anti3):
    rX, rY, rZ = reflect(sier, "R"), reflect(diamond, "R"), reflect(anti3, "R")
    f = SpaceMap.from_labels(sier, diamond, {"a": "bot", "b": "top"})
    g = SpaceMap.from_labels(
        diamond, anti3, {"bot": "y", "l": "y", "r": "y", "top": "y"}
    )
    lifted = reflection_functor(rX, rY, f)
    assert lifted.source is rX.space and lifted.target is rY.space
    laws = functor_laws(rX, rY, rZ, f, g)
    assert laws["identity"] and laws["composition"]
    with pytest.raises(EndpointMismatch):
        reflection_functor(rY, rX, f)


def test_product_preservation(sier, diamond):
    rep = product_preservation(sier, diamond, "R")
    assert rep["ok"] and rep["carrier_decomposes"]
    assert rep["reflection_points"] == sier.n * diamond.n
    assert rep["iso"].is_order_embedding()
