"""Categorical constructions: products, map enumeration, function spaces,
equalizers, retracts, poset enumeration up to isomorphism, and the
sobriety-style reflections with their universal property."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce
from itertools import permutations

from .config import DEFAULT, RunConfig
from .errors import (
    CapExceeded,
    EndpointMismatch,
    NoHomeomorphism,
    UsageError,
)
from .spaces import FiniteSpace, SpaceMap, bits
from . import checkers, powers, systems

__all__ = [
    "Product",
    "product",
    "continuous_maps",
    "function_space",
    "Equalizer",
    "equalizer",
    "retract_verify",
    "enumerate_posets",
    "homeomorphic",
    "Reflection",
    "reflect",
    "universal_property_verify",
    "reflection_functor",
    "functor_laws",
    "product_preservation",
]


# -- products -------------------------------------------------------------


@dataclass(frozen=True)
class Product:
    space: FiniteSpace
    left: SpaceMap
    right: SpaceMap
    factors: tuple[FiniteSpace, FiniteSpace]

    def pair_index(self, i: int, j: int) -> int:
        return i * self.factors[1].n + j


def product(X: FiniteSpace, Y: FiniteSpace, config: RunConfig = DEFAULT) -> Product:
    """Componentwise-ordered product with its projections.

    The projections are checked continuous by construction; saturation of
    a sampled handful of sets is checked to commute with them.
    """
    labels = []
    up = []
    for i in range(X.n):
        for j in range(Y.n):
            labels.append(f"({X.labels[i]},{Y.labels[j]})")
            m = 0
            for a in bits(X.up[i]):
                for b in bits(Y.up[j]):
                    m |= 1 << (a * Y.n + b)
            up.append(m)
    P = FiniteSpace(labels, up)
    left = SpaceMap(P, X, tuple(i for i in range(X.n) for _ in range(Y.n)))
    right = SpaceMap(P, Y, tuple(j for _ in range(X.n) for j in range(Y.n)))
    rng = random.Random(f"{config.seed}|product|{X.n}|{Y.n}")
    for _ in range(min(16, config.caps.sample_count)):
        m = rng.getrandbits(P.n)
        if not m:
            continue
        # projections are open maps here: image of saturation = saturation of image
        for pr in (left, right):
            if pr.image_mask(P.sat_mask(m)) != pr.target.sat_mask(pr.image_mask(m)):
                raise UsageError("projection failed a saturation sample")
    return Product(space=P, left=left, right=right, factors=(X, Y))


# -- map enumeration and function spaces ----------------------------------


def continuous_maps(X: FiniteSpace, Y: FiniteSpace, config: RunConfig = DEFAULT) -> list[SpaceMap]:
    """All continuous (= monotone) maps X -> Y in lexicographic table order.

    Backtracks along a linear extension of X so that each placement only
    needs checking against already-placed lower points.
    """
    if Y.n ** X.n > config.caps.map_count:
        raise CapExceeded(
            f"{Y.n}^{X.n} candidate maps exceed the cap {config.caps.map_count}"
        )
    order = sorted(range(X.n), key=lambda i: (X.down[i].bit_count(), i))
    below = []  # earlier positions strictly under the current point
    for pos, i in enumerate(order):
        below.append([q for q in range(pos) if (X.down[i] >> order[q]) & 1])
    out = []
    assign = [0] * X.n

    def place(pos: int):
        if pos == X.n:
            table = [0] * X.n
            for q, i in enumerate(order):
                table[i] = assign[q]
            out.append(tuple(table))
            return
        i = order[pos]
        for y in range(Y.n):
            ok = True
            for q in below[pos]:
                if not (Y.up[assign[q]] >> y) & 1:
                    ok = False
                    break
            if ok:
                assign[pos] = y
                place(pos + 1)

    place(0)
    out.sort()
    return [SpaceMap(X, Y, t) for t in out]


def function_space(X: FiniteSpace, Y: FiniteSpace, config: RunConfig = DEFAULT) -> FiniteSpace:
    """Space of all continuous maps X -> Y under the pointwise order.

    Certifies that the pointwise-order topology is the one generated by
    the sets {f : f(x) in U}: each such set is an up-set, and each
    principal filter of a map is the finite intersection of them at its
    values.  For very small map counts the generated family is also
    compared raw.
    """
    maps = continuous_maps(X, Y, config)
    if len(maps) > 4096:
        raise CapExceeded(f"{len(maps)} maps exceed the function-space bound")
    label = lambda f: "[" + ",".join(
        f"{X.labels[i]}>{Y.labels[f.table[i]]}" for i in range(X.n)
    ) + "]"
    up = []
    for f in maps:
        m = 0
        for gi, g in enumerate(maps):
            if all((Y.up[f.table[i]] >> g.table[i]) & 1 for i in range(X.n)):
                m |= 1 << gi
        up.append(m)
    F = FiniteSpace([label(f) for f in maps], up)

    def subbasic(x: int, U: int) -> int:
        m = 0
        for gi, g in enumerate(maps):
            if (U >> g.table[x]) & 1:
                m |= 1 << gi
        return m

    for x in range(X.n):
        for U in Y.upsets():
            if not F.is_up(subbasic(x, U)):
                raise UsageError("subbasic evaluation set is not an up-set")
    for fi, f in enumerate(maps):
        inter = F.full
        for x in range(X.n):
            inter &= subbasic(x, Y.up[f.table[x]])
        if inter != F.up[fi]:
            raise UsageError("principal filter is not a finite meet of subbasics")
    if len(maps) <= config.caps.topology_compare:
        gen = {0, F.full}
        basics = [subbasic(x, U) for x in range(X.n) for U in Y.upsets()]
        meets = set(basics) | {F.full}
        for a in basics:
            meets |= {a & b for b in meets}
        # close the finite meets under unions
        family = {0}
        while True:
            more = {a | b for a in family for b in meets} - family
            if not more:
                break
            family |= more
        if family != set(F.upsets()):
            raise UsageError("generated topology differs from the pointwise order")
    return F


# -- equalizers and retracts ----------------------------------------------


@dataclass(frozen=True)
class Equalizer:
    space: FiniteSpace | None  # None when the equalizer is empty
    inclusion: SpaceMap | None
    is_empty: bool


def equalizer(f: SpaceMap, g: SpaceMap) -> Equalizer:
    if f.source is not g.source or f.target is not g.target:
        raise EndpointMismatch("equalizer needs two parallel maps")
    mask = 0
    for i in range(f.source.n):
        if f.table[i] == g.table[i]:
            mask |= 1 << i
    if mask == 0:
        return Equalizer(space=None, inclusion=None, is_empty=True)
    E = f.source.subspace(mask)
    incl = SpaceMap(E, f.source, tuple(f.source.index(l) for l in E.labels))
    return Equalizer(space=E, inclusion=incl, is_empty=False)


def retract_verify(section: SpaceMap, retraction: SpaceMap, config: RunConfig = DEFAULT) -> dict:
    """Check r . s = id and that the ambient space's properties transfer
    to the retract (evaluated, not assumed)."""
    if section.target is not retraction.source or section.source is not retraction.target:
        raise EndpointMismatch("section and retraction endpoints do not match")
    A, X = section.source, section.target
    ident = section.then(retraction).table == tuple(range(A.n))
    transfers = {}
    ok = ident
    for prop, sysid in [
        ("sober", None),
        ("d_space", None),
        ("well_filtered", None),
        ("h_sober", "D"),
        ("h_sober", "R"),
        ("super_h_sober", "R"),
    ]:
        vx = checkers.check(X, prop, sysid, config)
        va = checkers.check(A, prop, sysid, config)
        name = prop if sysid is None else f"{prop}[{sysid}]"
        transfers[name] = {"ambient": vx.holds, "retract": va.holds}
        if vx.holds and not va.holds:
            ok = False
    return {"identity": ident, "transfers": transfers, "ok": ok}


# -- poset enumeration up to isomorphism ----------------------------------

_POSET_CACHE: dict[tuple[int, str], list[FiniteSpace]] = {}


def _wl_labels(n: int, down: list[int], up: list[int]) -> list:
    """Isomorphism-invariant point labels by two rounds of neighborhood
    refinement; comparable across spaces."""
    lab = [(down[i].bit_count(), up[i].bit_count()) for i in range(n)]
    for _ in range(2):
        nxt = []
        for i in range(n):
            nxt.append(
                (
                    lab[i],
                    tuple(sorted(lab[j] for j in bits(down[i] & ~(1 << i)))),
                    tuple(sorted(lab[j] for j in bits(up[i] & ~(1 << i)))),
                )
            )
        lab = nxt
    return lab


def _canon_key(n: int, up: list[int]) -> tuple:
    down = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down[j] |= 1 << i
    labels = _wl_labels(n, down, up)
    groups: dict = {}
    for i, l in enumerate(labels):
        groups.setdefault(l, []).append(i)
    ordered = sorted(groups)
    budget = 1
    for c in ordered:
        k = len(groups[c])
        budget *= max(1, reduce(lambda a, b: a * b, range(1, k + 1), 1))
        if budget > 40320:
            break
    if budget > 40320:
        perms = permutations(range(n))
    else:
        def gen():
            parts = [list(permutations(groups[c])) for c in ordered]

            def rec(k, acc):
                if k == len(parts):
                    # target slots are handed out class-block by class-block
                    pi = [0] * n
                    slot = 0
                    for block in acc:
                        for src in block:
                            pi[src] = slot
                            slot += 1
                    yield pi
                    return
                for p in parts[k]:
                    yield from rec(k + 1, acc + [p])

            yield from rec(0, [])

        perms = gen()
    best = None
    for pi in perms:
        pi = list(pi)
        relabeled = [0] * n
        for i in range(n):
            m = 0
            for j in bits(up[i]):
                m |= 1 << pi[j]
            relabeled[pi[i]] = m
        key = tuple(relabeled)
        if best is None or key < best:
            best = key
    return best


def enumerate_posets(n: int, prefix: str = "p", config: RunConfig = DEFAULT) -> list[FiniteSpace]:
    """All T0 spaces on n points up to homeomorphism.

    Generates naturally labeled posets (strict relations pointing up a
    linear extension) by choosing, for each new point, a down-closed set
    of predecessors, then dedupes by a canonical relabeling key.
    """
    if n < 1 or n > 7:
        raise CapExceeded("poset enumeration supports 1..7 points")
    cached = _POSET_CACHE.get((n, prefix))
    if cached is not None:
        return list(cached)
    labels = [f"{prefix}{i}" for i in range(n)]
    results: dict[tuple, list[int]] = {}
    up: list[int] = []

    def rec(k: int):
        if k == n:
            key = _canon_key(n, up)
            if key not in results:
                results[key] = list(up)
            return
        # choose the strict down-set of point k among 0..k-1; down-closure
        # means a point outside m may not lie under any point of m
        for m in range(1 << k):
            ok = True
            for i in range(k):
                if not (m >> i) & 1 and up[i] & m & ~(1 << i):
                    ok = False
                    break
            if not ok:
                continue
            for j in bits(m):
                up[j] |= 1 << k
            up.append(1 << k)
            rec(k + 1)
            up.pop()
            for j in bits(m):
                up[j] &= ~(1 << k)

    rec(0)
    out = [FiniteSpace(labels, list(key)) for key in sorted(results)]
    _POSET_CACHE[(n, prefix)] = out
    return list(out)


def homeomorphic(X: FiniteSpace, Y: FiniteSpace, config: RunConfig = DEFAULT) -> SpaceMap | None:
    """An order isomorphism X -> Y, or None.

    Prefilters on point count, relation size and refined degree classes,
    then backtracks within matching classes.
    """
    if X.n != Y.n:
        return None
    if sum(m.bit_count() for m in X.up) != sum(m.bit_count() for m in Y.up):
        return None
    lx = _wl_labels(X.n, list(X.down), list(X.up))
    ly = _wl_labels(Y.n, list(Y.down), list(Y.up))
    if sorted(lx) != sorted(ly):
        return None
    # candidate targets per source point: identical refined labels
    cands = []
    for i in range(X.n):
        cands.append([j for j in range(Y.n) if lx[i] == ly[j]])
    order = sorted(range(X.n), key=lambda i: len(cands[i]))
    table = [-1] * X.n
    used = [False] * Y.n

    def rec(pos: int) -> bool:
        if pos == X.n:
            return True
        i = order[pos]
        for j in cands[i]:
            if used[j]:
                continue
            ok = True
            for q in range(pos):
                a = order[q]
                if ((X.up[a] >> i) & 1) != ((Y.up[table[a]] >> j) & 1):
                    ok = False
                    break
                if ((X.up[i] >> a) & 1) != ((Y.up[j] >> table[a]) & 1):
                    ok = False
                    break
            if ok:
                table[i] = j
                used[j] = True
                if rec(pos + 1):
                    return True
                used[j] = False
                table[i] = -1
        return False

    if not rec(0):
        return None
    f = SpaceMap(X, Y, tuple(table))
    assert f.is_injective() and f.is_order_embedding()
    return f


# -- reflections ----------------------------------------------------------

_KINDS = ("sobrification", "h_sobrification", "super_h_sobrification")


@dataclass(frozen=True)
class Reflection:
    base: FiniteSpace
    system: str
    kind: str
    space: FiniteSpace
    unit: SpaceMap
    carrier: tuple[int, ...]
    iso: SpaceMap | None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "system": self.system,
            "points": self.space.n,
            "carrier": [sorted(self.base.labels_of(m)) for m in self.carrier],
            "unit": self.unit.to_json(),
            "iso_to_base": None if self.iso is None else self.iso.to_json(),
        }


def _determined_closed(X: FiniteSpace, H: systems.SubsetSystemId, config: RunConfig) -> list[int]:
    """Closures of the determined members for the reflection's system.

    Verified honestly per candidate; exhaustively complete when the closed
    sets are enumerable, else principal closures (irreducible closed sets
    of a finite space all have a greatest element)."""
    tag = systems.SubsetSystemId(H.base, "R" if H.derived is None else H.derived)
    if X.n <= config.caps.family_listing:
        return [
            d for d in X.downsets() if d and systems.h_member(tag, X, d)
        ]
    out = sorted({X.down[i] for i in range(X.n)}, key=lambda m: (m.bit_count(), m))
    for d in out:
        if not systems.h_member(tag, X, d):
            raise UsageError("principal closure failed determinacy")
    return out


def reflect(
    X: FiniteSpace,
    system="R",
    kind: str = "h_sobrification",
    config: RunConfig = DEFAULT,
) -> Reflection:
    """The sobriety reflection of the named kind: the space of determined
    closed sets under inclusion, with the point-closure unit.

    Asserts the unit is a topological embedding and that the reflected
    space satisfies its target property; on these finite carriers it also
    records the canonical isomorphism back to the base space.
    """
    if kind not in _KINDS:
        raise UsageError(f"kind must be one of {_KINDS}")
    H = systems.as_system(system)
    carrier = _determined_closed(X, H, config)
    HS = powers.hoare(X, carrier, config)
    unit = powers.hoare_eta(HS, config)
    R = HS.space
    if kind == "sobrification":
        v = checkers.check(R, "sober", None, config)
    elif kind == "h_sobrification":
        v = checkers.check(R, "h_sober", H, config)
    else:
        v = checkers.check(R, "super_h_sober", H, config)
    if not v.holds:
        raise UsageError(f"reflected space failed {v.property}")
    if not (unit.is_injective() and unit.is_order_embedding()):
        raise UsageError("unit is not an embedding")
    iso = homeomorphic(X, R, config)
    return Reflection(
        base=X,
        system=str(H),
        kind=kind,
        space=R,
        unit=unit,
        carrier=tuple(carrier),
        iso=iso,
    )


def _extend_along_unit(refl: Reflection, f: SpaceMap, config: RunConfig) -> SpaceMap:
    """The unique continuous extension f* with f* . unit = f: a determined
    closed set goes to the generic point of the closure of its image."""
    Y = f.target
    table = []
    for m in refl.carrier:
        img = Y.closure_mask(f.image_mask(m))
        t = Y.top_of(img)
        if t is None:
            raise UsageError("target is not sober enough to extend along the unit")
        table.append(t)
    return SpaceMap(refl.space, Y, tuple(table))


def universal_property_verify(
    refl: Reflection,
    Y: FiniteSpace,
    f: SpaceMap | None = None,
    config: RunConfig = DEFAULT,
) -> dict:
    """Check the reflection's universal property against one target: every
    continuous map from the base extends uniquely through the unit.

    With ``f`` omitted, all continuous maps into the target are tried.
    Uniqueness is verified by grouping *all* continuous maps from the
    reflected space by their restriction along the unit.
    """
    X = refl.base
    fs = [f] if f is not None else continuous_maps(X, Y, config)
    all_g = continuous_maps(refl.space, Y, config)
    by_restriction: dict[tuple, list[SpaceMap]] = {}
    for g in all_g:
        key = tuple(g.table[refl.unit.table[i]] for i in range(X.n))
        by_restriction.setdefault(key, []).append(g)
    checked = 0
    unique = True
    commute = True
    for fmap in fs:
        if fmap.source is not X or fmap.target is not Y:
            raise EndpointMismatch("map endpoints do not match the reflection")
        star = _extend_along_unit(refl, fmap, config)
        checked += 1
        if refl.unit.then(star).table != fmap.table:
            commute = False
        cls = by_restriction.get(fmap.table, [])
        if len(cls) != 1 or cls[0].table != star.table:
            unique = False
    # restriction along the unit is a bijection onto the continuous maps
    all_f = fs if f is None else continuous_maps(X, Y, config)
    surj = all(len(v) == 1 for v in by_restriction.values()) and len(by_restriction) == len(all_f)
    return {
        "target_points": Y.n,
        "maps_checked": checked,
        "factorizations_commute": commute,
        "factorizations_unique": unique,
        "restriction_bijective": surj,
        "ok": commute and unique and surj,
    }


def reflection_functor(
    refl_X: Reflection, refl_Y: Reflection, f: SpaceMap, config: RunConfig = DEFAULT
) -> SpaceMap:
    """The functorial lift of f between reflections (closure of the image,
    member by member), checked to commute with the units."""
    if f.source is not refl_X.base or f.target is not refl_Y.base:
        raise EndpointMismatch("map endpoints do not match the reflections")
    idx = {m: i for i, m in enumerate(refl_Y.carrier)}
    table = []
    for m in refl_X.carrier:
        img = refl_Y.base.closure_mask(f.image_mask(m))
        j = idx.get(img)
        if j is None:
            raise UsageError("image closure left the determined carrier")
        table.append(j)
    lifted = SpaceMap(refl_X.space, refl_Y.space, tuple(table))
    if refl_X.unit.then(lifted).table != f.then(refl_Y.unit).table:
        raise UsageError("lift does not commute with the units")
    return lifted


def functor_laws(
    refl_X: Reflection,
    refl_Y: Reflection,
    refl_Z: Reflection,
    f: SpaceMap,
    g: SpaceMap,
    config: RunConfig = DEFAULT,
) -> dict:
    """Identity and composition laws for the reflection functor on a given
    composable pair."""
    idX = SpaceMap.identity(refl_X.base)
    lid = reflection_functor(refl_X, refl_X, idX, config)
    lf = reflection_functor(refl_X, refl_Y, f, config)
    lg = reflection_functor(refl_Y, refl_Z, g, config)
    lgf = reflection_functor(refl_X, refl_Z, f.then(g), config)
    return {
        "identity": lid.table == tuple(range(refl_X.space.n)),
        "composition": lf.then(lg).table == lgf.table,
    }


def product_preservation(
    X: FiniteSpace,
    Y: FiniteSpace,
    system="R",
    kind: str = "h_sobrification",
    config: RunConfig = DEFAULT,
) -> dict:
    """Compare the reflection of a binary product with the product of the
    reflections: exhibits a homeomorphism (raising NoHomeomorphism when
    the search fails) and checks that every determined closed set of the
    product is the product of its projections' closures."""
    P = product(X, Y, config)
    RP = reflect(P.space, system, kind, config)
    RX = reflect(X, system, kind, config)
    RY = reflect(Y, system, kind, config)
    RXY = product(RX.space, RY.space, config)
    iso = homeomorphic(RP.space, RXY.space, config)
    if iso is None:
        raise NoHomeomorphism(
            f"no homeomorphism between the {RP.space.n}-point reflection of the "
            f"product and the {RXY.space.n}-point product of reflections"
        )
    decomposed = True
    for m in RP.carrier:
        a = P.left.image_mask(m)
        b = P.right.image_mask(m)
        ca = X.closure_mask(a)
        cb = Y.closure_mask(b)
        rebuilt = 0
        for i in bits(ca):
            for j in bits(cb):
                rebuilt |= 1 << P.pair_index(i, j)
        if rebuilt != m:
            decomposed = False
    return {
        "iso": iso,
        "carrier_decomposes": decomposed,
        "reflection_points": RP.space.n,
        "ok": decomposed,
    }
