"""Domain types and the noiseless Boolean-OR probing primitive.

A probe transmits energy from every active device in a group and the access
point's energy detector reports a single bit: 1 if at least one group member
is active, 0 otherwise. Detection is assumed error-free, so all strategies
built on top of this primitive are zero-error identifiers.

Devices are indexed 0..n-1. All values here are immutable after
construction and safe to share between concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Sequence, Tuple


class DiscoveryError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInstanceError(DiscoveryError):
    """Inputs violate an instance invariant (e.g. device index out of range)."""


class DisjointnessError(DiscoveryError):
    """Groups probed in the same slot overlap."""


class DegenerateInstanceError(DiscoveryError):
    """Planning is undefined (e.g. as many expected actives as devices)."""


class BandwidthInfeasibleError(DiscoveryError):
    """A slot needs more subcarriers than the bandwidth cap allows."""

    def __init__(self, slot: int, needed: int, cap: int):
        super().__init__(
            f"slot {slot} needs {needed} subcarriers but the cap is {cap}"
        )
        self.slot = slot
        self.needed = needed
        self.cap = cap


class UnreachableTargetError(DiscoveryError):
    """A success-probability target cannot be met."""


class InfeasibleGroupError(DiscoveryError):
    """Feedback accounting asked for more positive groups than groups."""


class ConsistencyError(DiscoveryError):
    """Declared active count disagrees with the probing outcomes."""


UNBOUNDED = 0
"""Sentinel for "no subcarrier cap" in :class:`DiscoveryInstance.nf_max`."""


@dataclass(frozen=True)
class DiscoveryInstance:
    """One activity-detection problem: population, truth, and resource caps.

    Parameters
    ----------
    n : int
        Total number of devices.
    active_set : frozenset[int]
        Indices of the truly active devices (subset of range(n)).
    k_est : int, optional
        Estimated number of active devices used for planning. Defaults to
        the true count, clamped to at least 1 (the planning formulas are
        undefined at zero).
    nt_max : int
        Access-delay cap: maximum number of time slots.
    nf_max : int
        Bandwidth cap: maximum subcarriers per slot. ``UNBOUNDED`` (0)
        means no cap.
    """

    n: int
    active_set: FrozenSet[int]
    nt_max: int
    nf_max: int = UNBOUNDED
    k_est: int = 0  # 0 means "default to max(1, k)"

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInstanceError(f"n must be positive, got {self.n}")
        object.__setattr__(self, "active_set", frozenset(self.active_set))
        for d in self.active_set:
            if not 0 <= d < self.n:
                raise InvalidInstanceError(f"device {d} outside [0, {self.n})")
        if self.nt_max < 1:
            raise InvalidInstanceError("nt_max must be >= 1")
        if self.nf_max < 0:
            raise InvalidInstanceError("nf_max must be >= 1 or UNBOUNDED (0)")
        if self.k_est < 0:
            raise InvalidInstanceError("k_est must be positive (or 0 for default)")
        if self.k_est == 0:
            object.__setattr__(self, "k_est", max(1, len(self.active_set)))

    @property
    def k(self) -> int:
        """True number of active devices."""
        return len(self.active_set)

    @property
    def bandwidth_cap(self) -> int | None:
        return None if self.nf_max == UNBOUNDED else self.nf_max


@dataclass(frozen=True)
class ProbeGroup:
    """One group probed on one (slot, subcarrier) cell of the resource grid."""

    members: Tuple[int, ...]
    slot: int
    subcarrier: int

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))


@dataclass(frozen=True)
class SlotRecord:
    """All probes launched in one time slot, in launch order."""

    slot: int
    outcomes: Tuple[Tuple[ProbeGroup, int], ...]

    @property
    def subcarriers_used(self) -> int:
        return len(self.outcomes)

    @property
    def results(self) -> Tuple[int, ...]:
        return tuple(bit for _, bit in self.outcomes)


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one full strategy run against an instance."""

    identified: FrozenSet[int]
    slot_log: Tuple[SlotRecord, ...]
    feedback_bits: float = 0.0
    strategy: str = ""
    aborted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "identified", frozenset(self.identified))
        object.__setattr__(self, "slot_log", tuple(self.slot_log))

    @property
    def slots_used(self) -> int:
        return len(self.slot_log)

    @property
    def resources_used(self) -> int:
        return sum(rec.subcarriers_used for rec in self.slot_log)


def boolean_or_probe(active_set: Iterable[int], group: Iterable[int], n: int | None = None) -> int:
    """Energy-detector outcome for one probe: 1 iff the group holds an active device.

    Deterministic and noise-free. ``n``, when given, bounds the valid index
    range; negative indices are always rejected.
    """
    active = active_set if isinstance(active_set, (set, frozenset)) else set(active_set)
    for d in group:
        if d < 0 or (n is not None and d >= n):
            raise InvalidInstanceError(f"device index {d} out of range")
        if d in active:
            # Short-circuit is safe: remaining indices are validated by the
            # instance invariants whenever a bound is enforced upstream.
            if n is None:
                return 1
            # keep validating the rest of the group when a bound is given
            rest_bad = [x for x in group if x < 0 or x >= n]
            if rest_bad:
                raise InvalidInstanceError(f"device index {rest_bad[0]} out of range")
            return 1
    return 0


def run_slot(
    active_set: Iterable[int],
    groups: Sequence[Iterable[int]],
    slot: int,
    n: int | None = None,
) -> SlotRecord:
    """Probe several disjoint groups in parallel during one time slot.

    Each group occupies its own subcarrier; the record preserves launch
    order and uses exactly ``len(groups)`` subcarriers.
    """
    active = frozenset(active_set)
    seen: set[int] = set()
    outcomes: List[Tuple[ProbeGroup, int]] = []
    for idx, members in enumerate(groups):
        members = tuple(members)
        for d in members:
            if d in seen:
                raise DisjointnessError(
                    f"device {d} probed twice in slot {slot}"
                )
            seen.add(d)
        bit = boolean_or_probe(active, members, n=n)
        outcomes.append((ProbeGroup(members, slot, idx), bit))
    return SlotRecord(slot=slot, outcomes=tuple(outcomes))
