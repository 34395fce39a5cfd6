"""Subset systems: families of distinguished subsets, one per space.

The seven base tags and what they select on a finite carrier:

======  =====================================  ==========================
tag     selects                                finite-carrier note
======  =====================================  ==========================
``S``   singletons
``Cw``  countable nonempty chains              same sets as ``C``
``C``   nonempty chains
``Dw``  countable directed sets                same sets as ``D``
``D``   directed sets
``Rw``  countable irreducible sets             same sets as ``R``
``R``   irreducible sets
======  =====================================  ==========================

The countable tags are kept distinct so reports stay traceable even though
every subset of a finite carrier is countable.  A derived marker ``^d``,
``^R`` or ``^D`` widens a system to the sets it *determines* (sobriety-,
Rudin-, or strongly-determined).  On a finite carrier each derived system
collapses to the irreducible sets; the collapse is a theorem about finite
spaces, and the test suite pins it to the definitional predicates.

Family-level membership (a family of compact saturated sets as a subset of
the Smyth order, i.e. reverse inclusion) is also provided here so that
power-space code and checkers share one implementation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    CapExceeded,
    EmptyFamily,
    EmptyMember,
    EmptySet,
    MissingSystem,
    NotInM,
    PreconditionViolated,
    UnsupportedDepth,
    UsageError,
)
from .spaces import (
    ClosedSet,
    CompactSat,
    FiniteSpace,
    PointSet,
    _as_mask,
    bits,
    is_directed,
    is_irreducible,
)

__all__ = [
    "SubsetSystemId",
    "BASE_IDS",
    "ALL_IDS",
    "h_member",
    "h_family_member",
    "meets_all",
    "m_family",
    "rudin_minimal",
    "property_m_instance",
    "property_q_instance",
    "scott_h_open",
    "scott_h_continuous",
    "RudinWitness",
    "rudin_witness",
]

_BASES = ("S", "Cw", "C", "Dw", "D", "Rw", "R")
_DERIVED = ("d", "R", "D")
_ALIASES = {"Cω": "Cw", "Dω": "Dw", "Rω": "Rw"}

# refinement edges H1 <= H2 (every H1-set is an H2-set, over every space)
_REFINE_EDGES = {
    ("S", "Cw"), ("Cw", "C"), ("Cw", "Dw"), ("C", "D"),
    ("Dw", "D"), ("Dw", "Rw"), ("D", "R"), ("Rw", "R"),
}


def _refine_closure() -> frozenset[tuple[str, str]]:
    rel = {(b, b) for b in _BASES} | set(_REFINE_EDGES)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return frozenset(rel)


_REFINES = _refine_closure()


@dataclass(frozen=True)
class SubsetSystemId:
    """Identifier such as ``D``, ``Cw`` or ``D^R``.

    ``base`` is one of the seven tags; ``derived`` is ``None`` or one of
    ``d``/``R``/``D``.  Derived markers do not stack.
    """

    base: str
    derived: str | None = None

    def __post_init__(self):
        if self.base not in _BASES:
            raise MissingSystem(f"unknown subset system {self.base!r}")
        if self.derived is not None and self.derived not in _DERIVED:
            raise MissingSystem(f"unknown derived marker {self.derived!r}")

    @classmethod
    def parse(cls, text: str) -> "SubsetSystemId":
        if not isinstance(text, str) or not text:
            raise MissingSystem(f"not a subset-system id: {text!r}")
        parts = text.split("^")
        base = _ALIASES.get(parts[0], parts[0])
        if base not in _BASES:
            raise MissingSystem(f"unknown subset system {parts[0]!r}")
        if len(parts) == 1:
            return cls(base)
        if len(parts) > 2:
            raise UnsupportedDepth(f"derived markers do not stack: {text!r}")
        if parts[1] not in _DERIVED:
            raise MissingSystem(f"unknown derived marker {parts[1]!r} in {text!r}")
        return cls(base, parts[1])

    def __str__(self) -> str:
        return self.base if self.derived is None else f"{self.base}^{self.derived}"

    @property
    def base_core(self) -> str:
        """The tag with any countability marker dropped: S, C, D or R."""
        return self.base[:-1] if self.base.endswith("w") else self.base

    @property
    def is_countable_tag(self) -> bool:
        return self.base.endswith("w")

    def refines(self, other: "SubsetSystemId") -> bool | None:
        """Whether every self-set is an other-set over every space.

        ``None`` means the comparison is not decided by the known chain
        S <= Cw <= C <= D <= R, Cw <= Dw <= D, Dw <= Rw <= R and the
        derived widenings H <= H^d <= H^D <= R, H <= H^R.
        """
        if self.derived is None and other.derived is None:
            return (self.base, other.base) in _REFINES or None
        if self.derived is None and other.derived is not None:
            # H1 <= H2 implies H1 <= H2^anything
            return ((self.base, other.base) in _REFINES) or None
        if self.derived is not None and other.derived is None:
            # every derived system sits below R (all its sets are irreducible)
            if other.base == "R":
                return True
            return None
        order = {"d": 0, "D": 1}
        if self.base == other.base and self.derived in order and other.derived in order:
            return order[self.derived] <= order[other.derived] or None
        return None


BASE_IDS: tuple[SubsetSystemId, ...] = tuple(SubsetSystemId(b) for b in _BASES)
ALL_IDS: tuple[SubsetSystemId, ...] = BASE_IDS + tuple(
    SubsetSystemId(b, d) for b in _BASES for d in _DERIVED
)


def as_system(H) -> SubsetSystemId:
    if isinstance(H, SubsetSystemId):
        return H
    return SubsetSystemId.parse(H)


# -- membership: subsets of the carrier -----------------------------------


def _chain_mask(X: FiniteSpace, m: int) -> bool:
    idxs = list(bits(m))
    for a in range(len(idxs)):
        for b in range(a + 1, len(idxs)):
            if not (X.leq(idxs[a], idxs[b]) or X.leq(idxs[b], idxs[a])):
                return False
    return True


def h_member(H, X: FiniteSpace, A) -> bool:
    """Is A a member of H(X)?

    Raises EmptySet for the empty set: all seven systems consist of
    nonempty sets.
    """
    H = as_system(H)
    m = _as_mask(X, A)
    if m == 0:
        raise EmptySet("subset-system members are nonempty")
    if H.derived is not None:
        # determined sets of any of the seven bases collapse to the
        # irreducible sets on a finite carrier
        return is_irreducible(X, m)
    core = H.base_core
    if core == "S":
        return m & (m - 1) == 0
    if core == "C":
        return _chain_mask(X, m)
    if core == "D":
        return is_directed(X, m)
    return is_irreducible(X, m)


def h_closed_members(X: FiniteSpace, H, cap: int | None = 14) -> list[int]:
    """Masks of H_c(X): closures of H-sets, i.e. the closed H-sets.

    (The closure of an H-set is again an H-set for each of the seven tags,
    so taking closed members and taking closures agree; asserted cheaply.)
    """
    H = as_system(H)
    out = []
    for d in X.downsets(cap):
        if d and h_member(H, X, d):
            out.append(d)
    return out


# -- membership: families of compact saturated sets -----------------------


def family_masks(X: FiniteSpace, family) -> list[int]:
    masks = set()
    for K in family:
        if isinstance(K, CompactSat):
            if K.space is not X:
                from .errors import SpaceMismatch

                raise SpaceMismatch("family member belongs to a different space")
            masks.add(K.mask)
        else:
            m = _as_mask(X, K)
            CompactSat(X, m)  # validates nonempty saturated
            masks.add(m)
    if not masks:
        raise EmptyFamily("the family has no members")
    if 0 in masks:
        raise EmptyMember("compact saturated sets are nonempty")
    return sorted(masks, key=lambda m: (m.bit_count(), m))


def family_base_ok(core: str, masks: Sequence[int]) -> bool:
    """Family membership in the Smyth order (reverse inclusion), on raw
    masks.  ``core`` is S, C, D or R."""
    k = len(masks)
    if core == "S":
        return k == 1
    if core == "C":
        for a in range(k):
            for b in range(a + 1, k):
                x, y = masks[a], masks[b]
                if x & ~y != 0 and y & ~x != 0:
                    return False
        return True
    if core == "D":
        for a in range(k):
            for b in range(a + 1, k):
                meet = masks[a] & masks[b]
                if not any(c & ~meet == 0 for c in masks):
                    return False
        return True
    # R: irreducible in the Smyth order iff the family has a least member
    # under inclusion (equivalently the intersection is a member)
    inter = masks[0]
    for m in masks[1:]:
        inter &= m
    return inter in set(masks)


def h_family_member(H, X: FiniteSpace, family) -> bool:
    """Is the family a member of H(P_S(X)), P_S being the Smyth power space?

    Evaluated directly on the reverse-inclusion order, which is the
    specialization order of the Smyth power space.
    """
    H = as_system(H)
    masks = family_masks(X, family)
    if H.derived is not None:
        return family_base_ok("R", masks)
    return family_base_ok(H.base_core, masks)


# -- the M(family) machinery ----------------------------------------------


def meets_all(X: FiniteSpace, family, C) -> bool:
    """Does the closed set C meet every member of the family?"""
    masks = family_masks(X, family)
    cm = _as_mask(X, C)
    if not X.is_down(cm):
        raise UsageError("C must be closed")
    return all(cm & k for k in masks)


def m_family(X: FiniteSpace, family, cap: int | None = 12) -> list[ClosedSet]:
    """Minimal closed sets meeting every member of the family."""
    masks = family_masks(X, family)
    members = [d for d in X.downsets(cap) if all(d & k for k in masks)]
    # members is sorted by (size, mask); a member is minimal iff no
    # strictly smaller member is a subset of it
    out = []
    for i, d in enumerate(members):
        if not any(e != d and e & ~d == 0 for e in members[:i]):
            out.append(d)
    return [ClosedSet(X, d) for d in out]


def rudin_minimal(X: FiniteSpace, family, C) -> ClosedSet:
    """Shrink the closed set C to a minimal closed set still meeting every
    family member, by deleting maximal points greedily in index order.

    Greedy deletion does reach a minimal member: if a proper closed subset
    D of the current set still meets the family, some maximal point of the
    current set lies outside D (else D would contain all maximal points and
    hence the whole set), and deleting it keeps D inside, so a deletion is
    available whenever the current set is non-minimal.
    """
    masks = family_masks(X, family)
    cm = _as_mask(X, C)
    if not X.is_down(cm):
        raise UsageError("C must be closed")
    if not all(cm & k for k in masks):
        raise NotInM("C does not meet every member of the family")
    cur = cm
    changed = True
    while changed:
        changed = False
        for p in bits(X.max_mask(cur)):
            cand = cur & ~(1 << p)
            if cand and all(cand & k for k in masks):
                cur = cand
                changed = True
                break
    return ClosedSet(X, cur)


@dataclass(frozen=True)
class RudinWitness:
    """Evidence that a closed set is a minimal closed set meeting every
    member of some family from a given system."""

    system: SubsetSystemId
    space: FiniteSpace
    family: tuple[int, ...]
    minimal_set: int

    def recheck(self) -> bool:
        X = self.space
        if not h_family_member(self.system, X, list(self.family)):
            return False
        d = self.minimal_set
        if not X.is_down(d) or not all(d & k for k in self.family):
            return False
        # minimality: deleting any maximal point must lose some member
        for p in bits(X.max_mask(d)):
            cand = d & ~(1 << p)
            if cand and all(cand & k for k in self.family):
                return False
        return True

    def to_json(self) -> dict:
        X = self.space
        return {
            "system": str(self.system),
            "family": [list(X.labels_of(k)) for k in self.family],
            "minimal_set": list(X.labels_of(self.minimal_set)),
        }


def rudin_witness(H, X: FiniteSpace, A) -> RudinWitness | None:
    """A family witnessing that cl(A) is Rudin for the system H, or None.

    On a finite carrier an irreducible closed set has a greatest element t
    and the one-member family {up(t)} witnesses it; one-member families
    belong to every system.  Non-irreducible sets admit no witness for the
    systems here (their minimal meeting sets are point closures inside
    them); checked by ``recheck``.
    """
    H = as_system(H)
    m = _as_mask(X, A)
    if m == 0:
        raise EmptySet("subset-system members are nonempty")
    cl = X.closure_mask(m)
    t = X.top_of(cl)
    if t is None:
        return None
    w = RudinWitness(H, X, (X.up[t],), cl)
    if not w.recheck():  # unreachable; keeps the witness honest
        return None
    return w


# -- property M and property Q, per instance ------------------------------


def property_m_instance(H, X: FiniteSpace, family, A) -> bool:
    """Given an H-family and a closed set A meeting every member, is the
    derived family {up(K meet A)} again an H-family?"""
    H = as_system(H)
    masks = family_masks(X, family)
    am = _as_mask(X, A)
    if not X.is_down(am):
        raise UsageError("A must be closed")
    if not h_family_member(H, X, masks):
        raise PreconditionViolated("the family is not an H-family")
    if not all(am & k for k in masks):
        raise NotInM("A does not meet every member of the family")
    derived = sorted({X.sat_mask(k & am) for k in masks}, key=lambda m: (m.bit_count(), m))
    return h_family_member(H, X, derived)


def property_q_instance(H, X: FiniteSpace, family, A, cap: int | None = 12) -> bool:
    """Given an H-family and a closed set A meeting every member, does A
    contain a *closed H-set* that still meets every member?"""
    H = as_system(H)
    masks = family_masks(X, family)
    am = _as_mask(X, A)
    if not X.is_down(am):
        raise UsageError("A must be closed")
    if not h_family_member(H, X, masks):
        raise PreconditionViolated("the family is not an H-family")
    if not all(am & k for k in masks):
        raise NotInM("A does not meet every member of the family")
    if am.bit_count() > (cap if cap is not None else am.bit_count()):
        raise CapExceeded(f"property Q search needs |A| <= {cap}")
    # closed subsets of A are the down-sets of the induced poset on A
    sub = X.subspace(am)
    back = list(bits(am))
    for d in sub.downsets():
        if d == 0:
            continue
        c = 0
        for i in bits(d):
            c |= 1 << back[i]
        if all(c & k for k in masks) and h_member(H, X, c):
            return True
    return False


# -- Scott-style open system ----------------------------------------------


def _sup_of(X: FiniteSpace, m: int) -> int | None:
    """Least upper bound of the set, as an index, if it exists."""
    ubs = X.ubs_mask(m)
    if ubs == 0:
        return None
    least = X.min_mask(ubs)
    if least and least & (least - 1) == 0:
        t = least.bit_length() - 1
        if ubs & ~X.up[t] == 0:
            return t
    return None


def scott_h_open(H, X: FiniteSpace, U, cap: int | None = 14) -> bool:
    """Is U open in the Scott-style system for H?

    Two clauses: U is an up-set, and whenever an H-set has a least upper
    bound lying in U, the set already meets U.  The H-set quantifier is
    enumerated, so the carrier must fit under ``cap``.
    """
    H = as_system(H)
    um = _as_mask(X, U)
    if not X.is_up(um):
        return False
    if cap is not None and X.n > cap:
        raise CapExceeded(f"Scott-open check enumerates subsets; needs carrier <= {cap}")
    for m in range(1, X.full + 1):
        if not h_member(H, X, m):
            continue
        t = _sup_of(X, m)
        if t is not None and (um >> t) & 1 and m & um == 0:
            return False
    return True


def scott_h_continuous(H, X: FiniteSpace, Y: FiniteSpace, mapping, cap: int | None = 14) -> bool:
    """Does the point map preserve all existing least upper bounds of
    H-sets?  ``mapping`` is a dict of labels, a label list, or an index
    table; monotonicity is not assumed.
    """
    H = as_system(H)
    if isinstance(mapping, dict):
        table = [Y.index(mapping[l]) for l in X.labels]
    else:
        table = [Y.index(v) if isinstance(v, str) else int(v) for v in mapping]
    if len(table) != X.n or any(not 0 <= v < Y.n for v in table):
        raise UsageError("mapping does not cover the source carrier")
    if cap is not None and X.n > cap:
        raise CapExceeded(f"Scott-continuity check enumerates subsets; needs carrier <= {cap}")
    for m in range(1, X.full + 1):
        if not h_member(H, X, m):
            continue
        t = _sup_of(X, m)
        if t is None:
            continue
        img = 0
        for i in bits(m):
            img |= 1 << table[i]
        s = _sup_of(Y, img)
        if s is None or s != table[t]:
            return False
    return True
