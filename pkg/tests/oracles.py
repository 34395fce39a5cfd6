"""Brute-force reference implementations used to pin the package's
reduced/clever paths to the raw definitions.

Everything here works by exhaustive enumeration straight from the
definitions (powersets, all splits, all families) and deliberately avoids
the package's own shortcuts: no top-of-closure criteria, no least-member
reductions, no structural certifications.  Only usable on small spaces.
"""
from __future__ import annotations

from itertools import combinations

from t0lab.spaces import FiniteSpace, bits


def closure(X: FiniteSpace, m: int) -> int:
    out = 0
    for i in bits(m):
        out |= X.down[i]
    return out


def downsets(X: FiniteSpace) -> list[int]:
    out = []
    for m in range(X.full + 1):
        if all((m >> j) & 1 for i in bits(m) for j in bits(X.down[i])):
            out.append(m)
    return out


def upsets(X: FiniteSpace) -> list[int]:
    return [X.full & ~d for d in downsets(X)]


def irreducible(X: FiniteSpace, m: int) -> bool:
    """Definitional: nonempty, and no cover of the closure by two proper
    relatively-closed parts."""
    if m == 0:
        return False
    cl = closure(X, m)
    downs = [d for d in downsets(X) if d & cl != cl]
    for c1 in downs:
        for c2 in downs:
            if cl & ~(c1 | c2) == 0:
                return False
    return True


def directed(X: FiniteSpace, m: int) -> bool:
    if m == 0:
        return False
    for i in bits(m):
        for j in bits(m):
            if not (X.up[i] & X.up[j] & m):
                return False
    return True


def chain(X: FiniteSpace, m: int) -> bool:
    if m == 0:
        return False
    for i in bits(m):
        for j in bits(m):
            if not ((X.up[i] >> j) & 1 or (X.up[j] >> i) & 1):
                return False
    return True


def h_member(core: str, X: FiniteSpace, m: int) -> bool:
    if core == "S":
        return m != 0 and m & (m - 1) == 0
    if core == "C":
        return chain(X, m)
    if core == "D":
        return directed(X, m)
    if core == "R":
        return irreducible(X, m)
    raise ValueError(core)


def sup_of(X: FiniteSpace, m: int):
    ubs = [i for i in range(X.n) if all((X.up[j] >> i) & 1 for j in bits(m))]
    least = [i for i in ubs if all((X.up[i] >> j) & 1 for j in ubs)]
    return least[0] if least else None


def sober(X: FiniteSpace) -> bool:
    for d in downsets(X):
        if not irreducible(X, d):
            continue
        generics = [i for i in range(X.n) if X.down[i] == d]
        if len(generics) != 1:
            return False
    return True


def d_space(X: FiniteSpace) -> bool:
    for m in range(1, X.full + 1):
        if not directed(X, m):
            continue
        s = sup_of(X, m)
        if s is None or closure(X, m) != X.down[s]:
            return False
    return True


def compacts(X: FiniteSpace) -> list[int]:
    # on a finite space the compact saturated sets are the nonempty up-sets
    return [u for u in upsets(X) if u]


def filtered_family(X: FiniteSpace, fam: tuple[int, ...]) -> bool:
    if not fam:
        return False
    for a in fam:
        for b in fam:
            if not any(c & ~(a & b) == 0 for c in fam):
                return False
    return True


def well_filtered(X: FiniteSpace, max_family_base: int = 12) -> bool:
    ks = compacts(X)
    if len(ks) > max_family_base:
        raise ValueError("space too large for the raw oracle")
    opens = upsets(X)
    for r in range(1, len(ks) + 1):
        for fam in combinations(ks, r):
            if not filtered_family(X, fam):
                continue
            inter = X.full
            for k in fam:
                inter &= k
            for U in opens:
                if inter & ~U == 0 and not any(k & ~U == 0 for k in fam):
                    return False
    return True


def h_sober(X: FiniteSpace, core: str) -> bool:
    for d in downsets(X):
        if d == 0 or not h_member(core, X, d):
            continue
        generics = [i for i in range(X.n) if X.down[i] == d]
        if len(generics) != 1:
            return False
    return True


def smyth_space(X: FiniteSpace) -> tuple[list[int], FiniteSpace]:
    ks = compacts(X)
    up = []
    for a in ks:
        m = 0
        for j, b in enumerate(ks):
            if b & ~a == 0:  # reverse inclusion
                m |= 1 << j
        up.append(m)
    return ks, FiniteSpace([f"k{i}" for i in range(len(ks))], up)


def family_h_member(core: str, X: FiniteSpace, fam: tuple[int, ...]) -> bool:
    """Definitional membership of a family of compacts in the system over
    the Smyth order, via the raw Smyth space."""
    ks, S = smyth_space(X)
    idx = {k: i for i, k in enumerate(ks)}
    m = 0
    for k in fam:
        m |= 1 << idx[k]
    return h_member(core, S, m)


def super_h_sober(X: FiniteSpace, core: str, max_family_base: int = 12) -> bool:
    """Definitional: every H-family of compacts has a member inside each
    open neighborhood of its intersection."""
    ks, S = smyth_space(X)
    if len(ks) > max_family_base:
        raise ValueError("space too large for the raw oracle")
    idx = {k: i for i, k in enumerate(ks)}
    opens = upsets(X)
    for r in range(1, len(ks) + 1):
        for fam in combinations(ks, r):
            fm = 0
            for k in fam:
                fm |= 1 << idx[k]
            if not h_member(core, S, fm):
                continue
            inter = X.full
            for k in fam:
                inter &= k
            for U in opens:
                if inter & ~U == 0 and not any(k & ~U == 0 for k in fam):
                    return False
    return True


def scott_h_open(core: str, X: FiniteSpace, U: int) -> bool:
    if any((U >> j) & 1 == 0 for i in bits(U) for j in bits(X.up[i])):
        return False
    for m in range(1, X.full + 1):
        if not h_member(core, X, m):
            continue
        s = sup_of(X, m)
        if s is not None and (U >> s) & 1 and not (m & U):
            return False
    return True


def open_filters(X: FiniteSpace) -> list[frozenset]:
    """All proper filters of nonempty opens, by powerset enumeration."""
    opens = [u for u in upsets(X) if u]
    out = []
    for r in range(1, len(opens) + 1):
        for fam in combinations(opens, r):
            fs = set(fam)
            # upward closed among opens
            if any(u & ~v == 0 and v not in fs for u in fs for v in opens):
                continue
            if any(u & v not in fs for u in fs for v in fs):
                continue
            out.append(frozenset(fs))
    return out


def minimal_meeting_closed(X: FiniteSpace, fam: tuple[int, ...]) -> list[int]:
    meet_all = [
        d for d in downsets(X) if d and all(d & k for k in fam)
    ]
    out = []
    for d in meet_all:
        if not any(e != d and e & ~d == 0 for e in meet_all):
            out.append(d)
    return sorted(out, key=lambda m: (m.bit_count(), m))


def continuous_tables(X: FiniteSpace, Y: FiniteSpace) -> list[tuple[int, ...]]:
    """All monotone tables by raw product enumeration."""
    out = []
    tables = [()]
    for _ in range(X.n):
        tables = [t + (y,) for t in tables for y in range(Y.n)]
    for t in tables:
        if all(
            (Y.up[t[i]] >> t[j]) & 1
            for i in range(X.n)
            for j in bits(X.up[i])
        ):
            out.append(t)
    return sorted(out)
