"""Resource caps and run configuration.

All enumerative code paths consult a :class:`Caps` instance.  Below a cap
the definitional enumeration runs raw; above it, operations either raise
:class:`~t0lab.errors.CapExceeded` (user-facing enumerations) or switch to
an exact reduced evaluation and record that they did (checkers).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class Caps:
    # carrier size up to which powerset-style enumerations run (2^n subsets)
    subset_enum: int = 12
    # carrier size cap for enumerate_families / downset listings
    family_listing: int = 14
    # |K(X)| up to which subfamilies of K(X) are enumerated raw (2^|K|)
    compact_family_enum: int = 8
    # carrier size cap for m_family / property_q ground enumeration
    m_family: int = 12
    # largest Smyth carrier we will materialize
    smyth_carrier: int = 2048
    # base carrier size allowed for the double Smyth power
    double_power_base: int = 3
    # |Y|^|X| bound for continuous-map enumeration
    map_count: int = 200000
    # carrier size up to which raw topology-family comparisons run
    topology_compare: int = 16
    # largest target size used by universal-property verification
    target_bound: int = 4
    # number of seeded spot-check samples used alongside reduced paths
    sample_count: int = 64

    def with_(self, **kw) -> "Caps":
        return replace(self, **kw)


@dataclass(frozen=True)
class RunConfig:
    caps: Caps = field(default_factory=Caps)
    seed: int = 0
    # stop after the first characterization per property; off by default so
    # verdicts normally carry the full agreement record
    fast: bool = False


DEFAULT = RunConfig()
