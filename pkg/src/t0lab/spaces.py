"""Finite T0 spaces as labelled posets.

A finite T0 space is the same data as a finite poset: opens are exactly the
up-sets of the specialization order ``x <= y iff x in cl{y}``.  Closure,
saturation, compactness and irreducibility all become order calculus, so a
space is stored as precomputed bitmask rows (``up[i]`` = points above ``i``,
``down[i]`` = points below ``i``) and subsets of the carrier travel as plain
int bitmasks wrapped in :class:`PointSet` at the API boundary.

Useful finite facts (each pinned to definitional code by the test suite):

* compact saturated sets are exactly the nonempty up-sets;
* a nonempty set is irreducible iff its closure has a greatest element;
* a nonempty set is directed iff every pair has an upper bound inside it,
  and a finite directed set contains its own greatest element.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    CapExceeded,
    ContinuityError,
    DuplicateLabel,
    EmptyMember,
    EmptySet,
    EndpointMismatch,
    MalformedDocument,
    NotAlexandroffConsistent,
    NotATopology,
    NotDirected,
    NotT0,
    SpaceMismatch,
    UsageError,
)

__all__ = [
    "bits",
    "mask_of_indices",
    "FiniteSpace",
    "PointSet",
    "ClosedSet",
    "CompactSat",
    "SpaceMap",
    "parse_space",
    "closure",
    "saturation",
    "order_calculus",
    "is_directed",
    "chain_core",
    "is_irreducible",
    "is_irreducible_definitional",
    "enumerate_families",
    "minimal_points",
    "down_meet_closed",
    "singletons",
    "point_closures",
    "principal_filters",
    "random_space",
    "to_dot",
]


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of_indices(idxs: Iterable[int]) -> int:
    m = 0
    for i in idxs:
        m |= 1 << i
    return m


class FiniteSpace:
    """A finite T0 space, stored as its specialization poset.

    Instances are immutable; identity is used for ownership checks on
    subsets, so build a space once and pass it around.
    """

    __slots__ = ("labels", "up", "down", "_index", "_cache")

    def __init__(self, labels: Sequence[str], up: Sequence[int]):
        labels = tuple(labels)
        up = tuple(up)
        n = len(labels)
        if n == 0:
            raise MalformedDocument("a space needs at least one point")
        if len(set(labels)) != n:
            dupes = sorted({l for l in labels if labels.count(l) > 1})
            raise DuplicateLabel(f"duplicate point labels: {dupes}")
        if len(up) != n:
            raise MalformedDocument("order table size does not match labels")
        full = (1 << n) - 1
        for i, row in enumerate(up):
            if row & ~full:
                raise MalformedDocument("order row mentions unknown points")
            if not (row >> i) & 1:
                raise MalformedDocument("order must be reflexive")
        # antisymmetry: a cycle would merge two points, violating T0
        for i in range(n):
            for j in bits(up[i]):
                if j != i and (up[j] >> i) & 1:
                    raise NotT0(
                        f"points {labels[i]!r} and {labels[j]!r} lie in each "
                        f"other's closure; the description is not T0"
                    )
        # transitivity is an internal contract of the constructors
        for i in range(n):
            acc = up[i]
            for j in bits(up[i]):
                acc |= up[j]
            if acc != up[i]:
                raise MalformedDocument("order table is not transitive")
        down = [0] * n
        for i in range(n):
            row = up[i]
            for j in bits(row):
                down[j] |= 1 << i
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "up", up)
        object.__setattr__(self, "down", tuple(down))
        object.__setattr__(self, "_index", {l: i for i, l in enumerate(labels)})
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("FiniteSpace is immutable")

    # -- basic structure -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise MalformedDocument(f"unknown point label {label!r}") from None

    def leq(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def mask_of(self, labels: Iterable[str]) -> int:
        return mask_of_indices(self.index(l) for l in labels)

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    def __repr__(self) -> str:
        preview = ",".join(self.labels[:4]) + ("…" if self.n > 4 else "")
        return f"FiniteSpace({self.n} points: {preview})"

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_covers(cls, labels: Sequence[str], covers: Iterable[tuple[str, str]]) -> "FiniteSpace":
        """Build from strict order edges ``(a, b)`` meaning ``a < b``.

        Edges need not be a Hasse diagram; the reflexive-transitive closure
        is taken.  Cycles raise :class:`NotT0`.
        """
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            dupes = sorted({l for l in labels if labels.count(l) > 1})
            raise DuplicateLabel(f"duplicate point labels: {dupes}")
        index = {l: i for i, l in enumerate(labels)}
        n = len(labels)
        if n == 0:
            raise MalformedDocument("a space needs at least one point")
        rows = [1 << i for i in range(n)]
        for edge in covers:
            if len(edge) != 2:
                raise MalformedDocument(f"cover edge {edge!r} is not a pair")
            a, b = edge
            if a not in index or b not in index:
                raise MalformedDocument(f"cover edge {edge!r} mentions unknown points")
            if a == b:
                raise MalformedDocument(f"cover edge {edge!r} is a self-loop")
            rows[index[a]] |= 1 << index[b]
        # Floyd-Warshall style transitive closure on bit rows
        for k in range(n):
            bit = 1 << k
            row_k = rows[k]
            for i in range(n):
                if rows[i] & bit:
                    rows[i] |= row_k
        for i in range(n):
            for j in bits(rows[i]):
                if j != i and (rows[j] >> i) & 1:
                    raise NotT0(
                        f"cycle through {labels[i]!r} and {labels[j]!r}: "
                        f"the edges do not describe a T0 space"
                    )
        return cls(labels, rows)

    @classmethod
    def from_opens(cls, labels: Sequence[str], opens: Iterable[Iterable[str]]) -> "FiniteSpace":
        """Build from an explicit list of open sets.

        The family must be a topology on the points and must equal the
        up-set family of its own specialization order (every finite space
        determines and is determined by that order).
        """
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            dupes = sorted({l for l in labels if labels.count(l) > 1})
            raise DuplicateLabel(f"duplicate point labels: {dupes}")
        if not labels:
            raise MalformedDocument("a space needs at least one point")
        index = {l: i for i, l in enumerate(labels)}
        n = len(labels)
        full = (1 << n) - 1
        fam: set[int] = set()
        for U in opens:
            m = 0
            for l in U:
                if l not in index:
                    raise MalformedDocument(f"open set mentions unknown point {l!r}")
                m |= 1 << index[l]
            fam.add(m)
        if 0 not in fam or full not in fam:
            raise NotATopology("the family must contain the empty set and the whole carrier")
        fam_list = sorted(fam)
        for a in fam_list:
            for b in fam_list:
                if (a | b) not in fam:
                    raise NotATopology(
                        f"not closed under union: {sorted(labels[i] for i in bits(a))} "
                        f"| {sorted(labels[i] for i in bits(b))}"
                    )
                if (a & b) not in fam:
                    raise NotATopology(
                        f"not closed under intersection: {sorted(labels[i] for i in bits(a))} "
                        f"& {sorted(labels[i] for i in bits(b))}"
                    )
        # specialization order: x <= y iff every open containing x contains y
        rows = []
        for i in range(n):
            m = full
            for U in fam_list:
                if (U >> i) & 1:
                    m &= U
            rows.append(m)
        for i in range(n):
            for j in bits(rows[i]):
                if j != i and (rows[j] >> i) & 1:
                    raise NotT0(
                        f"points {labels[i]!r} and {labels[j]!r} have the same "
                        f"open neighbourhoods"
                    )
        space = cls(labels, rows)
        expected = set(space.upsets())
        if fam != expected:
            missing = sorted(expected - fam)
            extra = sorted(fam - expected)
            detail = []
            if missing:
                detail.append(f"missing up-set {list(space.labels_of(missing[0]))}")
            if extra:
                detail.append(f"extra open {list(space.labels_of(extra[0]))}")
            raise NotAlexandroffConsistent(
                "the family is a topology but not the up-set topology of its "
                "specialization order: " + "; ".join(detail)
            )
        return space

    # -- order calculus on masks ----------------------------------------

    def closure_mask(self, mask: int) -> int:
        m = 0
        for i in bits(mask):
            m |= self.down[i]
        return m

    def sat_mask(self, mask: int) -> int:
        m = 0
        for i in bits(mask):
            m |= self.up[i]
        return m

    def ubs_mask(self, mask: int) -> int:
        """Common upper bounds; the whole carrier when ``mask`` is empty."""
        m = self.full
        for i in bits(mask):
            m &= self.up[i]
        return m

    def lbs_mask(self, mask: int) -> int:
        m = self.full
        for i in bits(mask):
            m &= self.down[i]
        return m

    def max_mask(self, mask: int) -> int:
        m = 0
        for i in bits(mask):
            if self.up[i] & mask == 1 << i:
                m |= 1 << i
        return m

    def min_mask(self, mask: int) -> int:
        m = 0
        for i in bits(mask):
            if self.down[i] & mask == 1 << i:
                m |= 1 << i
        return m

    def is_down(self, mask: int) -> bool:
        return self.closure_mask(mask) == mask

    def is_up(self, mask: int) -> bool:
        return self.sat_mask(mask) == mask

    def top_of(self, mask: int) -> int | None:
        """The greatest element of ``mask`` as an index, or ``None``."""
        m = self.max_mask(mask)
        if m and m & (m - 1) == 0:
            t = m.bit_length() - 1
            if mask & ~self.down[t] == 0:
                return t
        return None

    # -- family enumeration ---------------------------------------------

    def downsets(self, cap: int | None = None) -> list[int]:
        """All down-sets (closed sets), sorted by (size, mask).

        Output-sensitive: built over a linear extension, so cost is
        O(#downsets * n), never 2^n.  ``cap`` guards the carrier size.
        """
        if cap is not None and self.n > cap:
            raise CapExceeded(f"downset listing needs carrier <= {cap}, got {self.n}")
        cached = self._cache.get("downsets")
        if cached is None:
            order = sorted(range(self.n), key=lambda i: (self.down[i].bit_count(), i))
            ideals = [0]
            for i in order:
                need = self.down[i] & ~(1 << i)
                bit = 1 << i
                ideals += [I | bit for I in ideals if need & ~I == 0]
            cached = sorted(ideals, key=lambda m: (m.bit_count(), m))
            self._cache["downsets"] = cached
        return cached

    def upsets(self, cap: int | None = None) -> list[int]:
        full = self.full
        return sorted((full ^ d for d in self.downsets(cap)), key=lambda m: (m.bit_count(), m))

    def nonempty_upsets(self, cap: int | None = None) -> list[int]:
        return [u for u in self.upsets(cap) if u]

    def irr_downsets(self, cap: int | None = None) -> list[int]:
        """Irreducible closed sets; on a finite space these are exactly the
        point closures, but they are computed honestly from the criterion."""
        out = [d for d in self.downsets(cap) if d and self.top_of(d) is not None]
        return out

    # -- presentation ----------------------------------------------------

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Hasse diagram edges (i, j) with i < j and nothing strictly between."""
        out = []
        for i in range(self.n):
            above = self.up[i] & ~(1 << i)
            for j in bits(above):
                between = above & self.down[j] & ~(1 << j)
                if between == 0:
                    out.append((i, j))
        return out

    def to_doc(self) -> dict:
        covers = [[self.labels[i], self.labels[j]] for i, j in self.cover_pairs()]
        return {"points": list(self.labels), "covers": covers}

    def subspace(self, mask: int) -> "FiniteSpace":
        """Induced subspace on the points of ``mask`` (labels preserved)."""
        if mask == 0:
            raise EmptySet("a subspace needs at least one point")
        keep = list(bits(mask))
        pos = {old: new for new, old in enumerate(keep)}
        rows = []
        for old in keep:
            r = 0
            for j in bits(self.up[old] & mask):
                r |= 1 << pos[j]
            rows.append(r)
        return FiniteSpace(tuple(self.labels[i] for i in keep), rows)

    def same_structure(self, other: "FiniteSpace") -> bool:
        return self.labels == other.labels and self.up == other.up


# -- subset wrappers ------------------------------------------------------


@dataclass(frozen=True)
class PointSet:
    """A subset of a space's carrier.  Equality is structural; the owning
    space is compared by identity, which is what SpaceMismatch checks use."""

    space: FiniteSpace
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask <= self.space.full:
            raise UsageError("subset mask does not fit the carrier")

    @classmethod
    def of(cls, space: FiniteSpace, labels: Iterable[str]) -> "PointSet":
        return cls(space, space.mask_of(labels))

    @property
    def labels(self) -> tuple[str, ...]:
        return self.space.labels_of(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def __bool__(self) -> bool:
        return self.mask != 0

    def to_json(self) -> list[str]:
        return list(self.labels)


class ClosedSet(PointSet):
    def __post_init__(self):
        super().__post_init__()
        if not self.space.is_down(self.mask):
            raise UsageError(
                f"{list(self.space.labels_of(self.mask))} is not closed "
                f"(not a down-set)"
            )


class CompactSat(PointSet):
    """A compact saturated set: on a finite space, a nonempty up-set."""

    def __post_init__(self):
        super().__post_init__()
        if self.mask == 0:
            raise EmptyMember("compact saturated sets are nonempty")
        if not self.space.is_up(self.mask):
            raise UsageError(
                f"{list(self.space.labels_of(self.mask))} is not saturated "
                f"(not an up-set)"
            )

    def smyth_leq(self, other: "CompactSat") -> bool:
        """Smyth order: K1 below K2 iff K2 is contained in K1."""
        _same_space(self, other)
        return other.mask & ~self.mask == 0


def _same_space(a: PointSet, b: PointSet) -> None:
    if a.space is not b.space:
        raise SpaceMismatch("subsets belong to different spaces")


def _owns(space: FiniteSpace, A: PointSet) -> None:
    if A.space is not space:
        raise SpaceMismatch("subset does not belong to this space")


def _as_mask(space: FiniteSpace, A) -> int:
    if isinstance(A, PointSet):
        _owns(space, A)
        return A.mask
    if isinstance(A, int):
        if not 0 <= A <= space.full:
            raise UsageError("subset mask does not fit the carrier")
        return A
    return space.mask_of(A)


# -- operations -----------------------------------------------------------


def parse_space(doc) -> FiniteSpace:
    """Parse a space description.

    Accepts a dict (or JSON string) of the form
    ``{"points": [...], "covers": [[a, b], ...]}`` with ``a < b``, or
    ``{"points": [...], "opens": [[...], ...]}``.
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise MalformedDocument(f"not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise MalformedDocument("space description must be an object")
    if "points" not in doc:
        raise MalformedDocument('space description needs a "points" list')
    points = doc["points"]
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise MalformedDocument('"points" must be a list of strings')
    has_covers = "covers" in doc
    has_opens = "opens" in doc
    if has_covers == has_opens:
        raise MalformedDocument('give exactly one of "covers" or "opens"')
    extra = set(doc) - {"points", "covers", "opens", "name"}
    if extra:
        raise MalformedDocument(f"unknown keys in space description: {sorted(extra)}")
    if has_covers:
        covers = doc["covers"]
        if not isinstance(covers, list):
            raise MalformedDocument('"covers" must be a list of pairs')
        return FiniteSpace.from_covers(points, [tuple(e) for e in covers])
    opens = doc["opens"]
    if not isinstance(opens, list):
        raise MalformedDocument('"opens" must be a list of lists')
    return FiniteSpace.from_opens(points, opens)


def closure(X: FiniteSpace, A) -> ClosedSet:
    return ClosedSet(X, X.closure_mask(_as_mask(X, A)))


def saturation(X: FiniteSpace, A) -> PointSet:
    return PointSet(X, X.sat_mask(_as_mask(X, A)))


def order_calculus(X: FiniteSpace, A, which: str) -> PointSet:
    """One-stop order operators: up, down, max, min, ubs (common upper
    bounds), lbs (common lower bounds)."""
    m = _as_mask(X, A)
    ops = {
        "up": X.sat_mask,
        "down": X.closure_mask,
        "max": X.max_mask,
        "min": X.min_mask,
        "ubs": X.ubs_mask,
        "lbs": X.lbs_mask,
    }
    if which not in ops:
        raise UsageError(f"unknown order operator {which!r}; choose from {sorted(ops)}")
    return PointSet(X, ops[which](m))


def is_directed(X: FiniteSpace, A) -> bool:
    """Every pair of elements has an upper bound *inside* the set."""
    m = _as_mask(X, A)
    if m == 0:
        raise EmptySet("directedness is about nonempty sets")
    idxs = list(bits(m))
    for a in range(len(idxs)):
        ua = X.up[idxs[a]]
        for b in range(a + 1, len(idxs)):
            if m & ua & X.up[idxs[b]] == 0:
                return False
    return True


def chain_core(X: FiniteSpace, D) -> PointSet:
    """A chain inside a directed set with the same down-closure.

    A finite directed set has a greatest element, so the core is that
    single point; checked, not assumed.
    """
    m = _as_mask(X, D)
    if m == 0:
        raise EmptySet("directedness is about nonempty sets")
    if not is_directed(X, m):
        raise NotDirected(f"{list(X.labels_of(m))} is not directed")
    t = X.top_of(m)
    if t is None:  # unreachable for finite directed sets; guards the claim
        raise NotDirected("finite directed set without greatest element")
    core = 1 << t
    if X.closure_mask(core) != X.closure_mask(m):
        raise NotDirected("chain core failed to have the same closure")
    return PointSet(X, core)


def is_irreducible(X: FiniteSpace, A) -> bool:
    """Irreducibility of a nonempty set: not covered by two closed proper
    cut-downs.  On a finite space this holds iff the closure of the set has
    a greatest element, which is what is evaluated here; the definitional
    two-closed-sets version is `is_irreducible_definitional`."""
    m = _as_mask(X, A)
    if m == 0:
        raise EmptySet("irreducibility is about nonempty sets")
    return X.top_of(X.closure_mask(m)) is not None


def is_irreducible_definitional(X: FiniteSpace, A, cap: int | None = 14) -> bool:
    """Definitional irreducibility: for closed B, C, if A is inside B union C
    then A is inside one of them.  Exponential in the carrier; used as the
    oracle that pins `is_irreducible` down."""
    m = _as_mask(X, A)
    if m == 0:
        raise EmptySet("irreducibility is about nonempty sets")
    downs = X.downsets(cap)
    for b in downs:
        if m & ~b == 0:
            continue
        for c in downs:
            if m & ~c == 0:
                continue
            if m & ~(b | c) == 0:
                return False
    return True


def enumerate_families(X: FiniteSpace, which: str, cap: int | None = 14) -> list[PointSet]:
    """List a named family of subsets, sorted by (size, mask).

    ``which`` is one of ``closed``, ``open``, ``compact_saturated``,
    ``irr_closed``, ``point_closures``.
    """
    if which == "closed":
        return [ClosedSet(X, d) for d in X.downsets(cap)]
    if which == "open":
        return [PointSet(X, u) for u in X.upsets(cap)]
    if which == "compact_saturated":
        return [CompactSat(X, u) for u in X.nonempty_upsets(cap)]
    if which == "irr_closed":
        return [ClosedSet(X, d) for d in X.irr_downsets(cap)]
    if which == "point_closures":
        masks = sorted({X.down[i] for i in range(X.n)}, key=lambda m: (m.bit_count(), m))
        return [ClosedSet(X, d) for d in masks]
    raise UsageError(f"unknown family {which!r}")


def minimal_points(X: FiniteSpace, K) -> PointSet:
    """Minimal points of a compact saturated set; their saturation is the set
    back (checked)."""
    if isinstance(K, CompactSat):
        _owns(X, K)
        m = K.mask
    else:
        m = _as_mask(X, K)
        CompactSat(X, m)  # validates nonempty saturated
    mins = X.min_mask(m)
    if X.sat_mask(mins) != m:
        raise UsageError("minimal points failed to regenerate the set")  # unreachable on valid input
    return PointSet(X, mins)


def down_meet_closed(X: FiniteSpace, K, A) -> ClosedSet:
    """The closed set down(K meet A), together with the cutting identity
    down(K meet A) = union over k in min K of down(up(k) meet A) (checked)."""
    km = _as_mask(X, K)
    CompactSat(X, km)
    am = _as_mask(X, A)
    if not X.is_down(am):
        raise UsageError("A must be closed")
    out = X.closure_mask(km & am)
    alt = 0
    for k in bits(X.min_mask(km)):
        alt |= X.closure_mask(X.up[k] & am)
    if alt != out:
        raise UsageError("cutting identity failed")  # unreachable on valid input
    return ClosedSet(X, out)


def singletons(X: FiniteSpace) -> list[PointSet]:
    return [PointSet(X, 1 << i) for i in range(X.n)]


def point_closures(X: FiniteSpace) -> list[ClosedSet]:
    return [ClosedSet(X, X.down[i]) for i in range(X.n)]


def principal_filters(X: FiniteSpace) -> list[CompactSat]:
    return [CompactSat(X, X.up[i]) for i in range(X.n)]


# -- maps -----------------------------------------------------------------


@dataclass(frozen=True)
class SpaceMap:
    """A continuous map between finite spaces.

    On finite spaces continuity is exactly monotonicity for the
    specialization orders, and that is checked at construction.
    ``table[i]`` is the target index of source point ``i``.
    """

    source: FiniteSpace
    target: FiniteSpace
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.source.n:
            raise UsageError("map table size does not match the source carrier")
        for v in self.table:
            if not 0 <= v < self.target.n:
                raise UsageError("map table points outside the target carrier")
        src, tgt, tab = self.source, self.target, self.table
        for i in range(src.n):
            for j in bits(src.up[i]):
                if not tgt.leq(tab[i], tab[j]):
                    raise ContinuityError(
                        f"not monotone: {src.labels[i]!r} <= {src.labels[j]!r} "
                        f"but {tgt.labels[tab[i]]!r} !<= {tgt.labels[tab[j]]!r}"
                    )

    @classmethod
    def identity(cls, X: FiniteSpace) -> "SpaceMap":
        return cls(X, X, tuple(range(X.n)))

    @classmethod
    def from_labels(cls, X: FiniteSpace, Y: FiniteSpace, mapping: dict) -> "SpaceMap":
        table = []
        for l in X.labels:
            if l not in mapping:
                raise UsageError(f"map does not cover point {l!r}")
            table.append(Y.index(mapping[l]))
        return cls(X, Y, tuple(table))

    def __call__(self, i: int) -> int:
        return self.table[i]

    def image_mask(self, mask: int) -> int:
        m = 0
        for i in bits(mask):
            m |= 1 << self.table[i]
        return m

    def preimage_mask(self, mask: int) -> int:
        m = 0
        for i, v in enumerate(self.table):
            if (mask >> v) & 1:
                m |= 1 << i
        return m

    def then(self, other: "SpaceMap") -> "SpaceMap":
        """Composition: first self, then other."""
        if other.source is not self.target:
            raise EndpointMismatch("composition endpoints do not match")
        return SpaceMap(self.source, other.target, tuple(other.table[v] for v in self.table))

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_order_embedding(self) -> bool:
        src, tgt, tab = self.source, self.target, self.table
        for i in range(src.n):
            for j in range(src.n):
                if tgt.leq(tab[i], tab[j]) != src.leq(i, j):
                    return False
        return True

    def to_json(self) -> dict:
        return {
            self.source.labels[i]: self.target.labels[v]
            for i, v in enumerate(self.table)
        }


# -- random generation ----------------------------------------------------


def random_space(rng, max_points: int, prefix: str = "p") -> FiniteSpace:
    """Seeded random poset: pick a size, pick an edge density from
    {0.15, 0.3, 0.5}, keep DAG edges (i < j by index) in shuffled order,
    then close transitively."""
    n = rng.randint(1, max_points)
    density = rng.choice([0.15, 0.3, 0.5])
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(pairs)
    labels = [f"{prefix}{i}" for i in range(n)]
    edges = [
        (labels[i], labels[j]) for i, j in pairs if rng.random() < density
    ]
    return FiniteSpace.from_covers(labels, edges)


# -- rendering ------------------------------------------------------------


def to_dot(X: FiniteSpace, name: str = "space", highlight: Iterable[str] = ()) -> str:
    """Hasse diagram in DOT, bottom-up."""
    hi = set(highlight)
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;", "  node [shape=ellipse];"]
    for l in X.labels:
        attrs = ' [style=filled, fillcolor="lightblue"]' if l in hi else ""
        lines.append(f"  {json.dumps(l)}{attrs};")
    for i, j in X.cover_pairs():
        lines.append(f"  {json.dumps(X.labels[i])} -> {json.dumps(X.labels[j])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
