"""Domain types and the packet-preference rule of the two-source gossip network.

A packet carries a reliability flag (0 for a packet that originated at the
reliable source, 1 for the unreliable source) and a version age. Nodes prefer
reliable packets and accept being up to ``gap`` versions staler to hold one.
"""
from __future__ import annotations

import functools
import numbers
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

RELIABLE = 0
UNRELIABLE = 1


@functools.total_ordering
class _InfiniteAge:
    """Age of the empty node set.

    Compares greater than every integer age but refuses arithmetic, so it can
    never leak into a sum or an average by accident.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        if other is self or isinstance(other, numbers.Integral):
            return False
        return NotImplemented

    def __hash__(self):
        return hash("agegossip.INFINITE_AGE")

    def __repr__(self):
        return "INFINITE_AGE"

    def __reduce__(self):
        return (_InfiniteAge, ())


INFINITE_AGE = _InfiniteAge()

Age = Union[int, _InfiniteAge]


@dataclass(frozen=True)
class Params:
    """Rates and sizes of the network.

    Parameters
    ----------
    n : int
        Number of user nodes.
    lambda_e : float
        Rate of the Poisson process that updates the tracked event.
    lambda_r : float
        Total rate of the reliable source (each node receives ``lambda_r / n``).
    lambda_u : float
        Total rate of the unreliable source (each node receives ``lambda_u / n``).
    lambda_g : float
        Total gossip rate of a node, split evenly over its ``n - 1`` peers.
    gap : int
        Number of versions a node gives up to keep or adopt a reliable packet.
    """

    n: int
    lambda_e: float
    lambda_r: float
    lambda_u: float
    lambda_g: float
    gap: int = 0

    def __post_init__(self):
        for name in ("n", "gap"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, numbers.Integral):
                raise ValueError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if self.gap < 0:
            raise ValueError(f"gap must be non-negative, got {self.gap}")
        if not self.lambda_e > 0:
            raise ValueError(f"lambda_e must be positive, got {self.lambda_e!r}")
        if not self.lambda_r > 0:
            raise ValueError(f"lambda_r must be positive, got {self.lambda_r!r}")
        if not self.lambda_u >= 0:
            raise ValueError(f"lambda_u must be non-negative, got {self.lambda_u!r}")
        if not self.lambda_g >= 0:
            raise ValueError(f"lambda_g must be non-negative, got {self.lambda_g!r}")

    @property
    def reliable_link_rate(self) -> float:
        return self.lambda_r / self.n

    @property
    def unreliable_link_rate(self) -> float:
        return self.lambda_u / self.n

    @property
    def gossip_link_rate(self) -> float:
        """Rate from one node to one given peer. Only meaningful for n >= 2."""
        if self.n == 1:
            raise ValueError("a single-node network has no gossip links")
        return self.lambda_g / (self.n - 1)

    def with_gap(self, gap: int) -> "Params":
        return Params(self.n, self.lambda_e, self.lambda_r, self.lambda_u,
                      self.lambda_g, gap)


class PacketState(NamedTuple):
    reliability: int
    age: int


class SetSummary(NamedTuple):
    """Reliability and age of the best packet held by a set of nodes.

    ``reliability`` is None for the empty set, whose age is ``INFINITE_AGE``.
    """

    reliability: Optional[int]
    age: Age

    @property
    def is_empty(self) -> bool:
        return self.age is INFINITE_AGE


EMPTY_SUMMARY = SetSummary(None, INFINITE_AGE)


def reliable_wins(reliable_age: int, unreliable_age: int, gap: int) -> bool:
    # non-strict: at the boundary the reliable packet is kept
    return reliable_age <= unreliable_age + gap


def set_summary(packets: Iterable[PacketState], gap: int) -> SetSummary:
    """Pick the best packet of a node set under the gap preference.

    The freshest reliable packet wins if it is at most ``gap`` versions
    older than the freshest unreliable packet; otherwise the freshest
    unreliable packet wins.

    >>> set_summary([PacketState(0, 3), PacketState(1, 1)], gap=2)
    SetSummary(reliability=0, age=3)
    >>> set_summary([PacketState(0, 4), PacketState(1, 1)], gap=2)
    SetSummary(reliability=1, age=1)
    """
    best_r: Age = INFINITE_AGE
    best_u: Age = INFINITE_AGE
    for reliability, age in packets:
        if reliability == RELIABLE:
            if age < best_r:
                best_r = age
        elif age < best_u:
            best_u = age
    if best_r is INFINITE_AGE and best_u is INFINITE_AGE:
        return EMPTY_SUMMARY
    if best_u is INFINITE_AGE:
        return SetSummary(RELIABLE, best_r)
    if best_r is INFINITE_AGE:
        return SetSummary(UNRELIABLE, best_u)
    if reliable_wins(best_r, best_u, gap):
        return SetSummary(RELIABLE, best_r)
    return SetSummary(UNRELIABLE, best_u)


def merge(own: PacketState, incoming: PacketState, gap: int) -> PacketState:
    """Packet a node keeps after receiving ``incoming`` while holding ``own``.

    Equal reliability keeps the fresher packet (own on ties). Across
    reliabilities the reliable packet is kept iff its age is at most the
    unreliable age plus ``gap``.
    """
    if own.reliability == incoming.reliability:
        return incoming if incoming.age < own.age else own
    if own.reliability == RELIABLE:
        return own if reliable_wins(own.age, incoming.age, gap) else incoming
    return incoming if reliable_wins(incoming.age, own.age, gap) else own
