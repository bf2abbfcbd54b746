"""Continuous-time Monte Carlo simulation of the two-source gossip network.

All Poisson processes (event updates, both sources on every node, gossip on
every ordered node pair) are superposed into one exponential clock of total
rate ``lambda_e + lambda_r + lambda_u + n * lambda_g``; each tick is then
assigned to a category in proportion to its rate and to uniform nodes within
the category.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

import numpy as np

from .model import RELIABLE, UNRELIABLE, PacketState, Params, merge

# category codes used by the batch sampler
EVENT, RELIABLE_SOURCE, UNRELIABLE_SOURCE, GOSSIP = 0, 1, 2, 3

_BATCH = 4096


@dataclass(frozen=True)
class EventUpdate:
    pass


@dataclass(frozen=True)
class ReliableToNode:
    target: int


@dataclass(frozen=True)
class UnreliableToNode:
    target: int


@dataclass(frozen=True)
class Gossip:
    source: int
    target: int

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError(f"gossip from node {self.source} to itself")


Transition = Union[EventUpdate, ReliableToNode, UnreliableToNode, Gossip]


@dataclass
class NetworkState:
    """Packets held by the n nodes, stored column-wise for cheap updates."""

    reliability: list[int]
    age: list[int]
    clock: float = 0.0
    event_count: int = 0

    @classmethod
    def initial(cls, n: int) -> "NetworkState":
        """All nodes hold a fresh reliable packet."""
        return cls(reliability=[RELIABLE] * n, age=[0] * n)

    @property
    def n(self) -> int:
        return len(self.age)

    @property
    def nodes(self) -> list[PacketState]:
        return [PacketState(r, a) for r, a in zip(self.reliability, self.age)]

    def node(self, i: int) -> PacketState:
        return PacketState(self.reliability[i], self.age[i])

    def fraction_unreliable(self) -> float:
        return sum(self.reliability) / self.n

    def mean_age(self) -> float:
        return sum(self.age) / self.n


@dataclass(frozen=True)
class Estimates:
    fraction_unreliable: float
    version_age: float
    horizon: float
    burn_in: float
    seed: int
    measured_time: float = field(default=0.0, compare=False)
    transitions: int = field(default=0, compare=False)


def total_rate(params: Params) -> float:
    return params.lambda_e + params.lambda_r + params.lambda_u + params.n * params.lambda_g


def _category_weights(params: Params) -> np.ndarray:
    gossip = params.n * params.lambda_g if params.n > 1 else 0.0
    return np.array([params.lambda_e, params.lambda_r, params.lambda_u, gossip])


def sample_batch(params: Params, rng: np.random.Generator, size: int):
    """Draw ``size`` consecutive transitions as arrays.

    Returns ``(dwell, category, target, source)``; ``source`` is only
    meaningful for gossip and is always different from ``target`` there.
    """
    weights = _category_weights(params)
    cumulative = np.cumsum(weights)
    rate = cumulative[-1]
    dwell = rng.exponential(1.0 / rate, size=size)
    category = np.searchsorted(cumulative, rng.random(size) * rate, side="right")
    # rounding at the top edge must not land in a trailing zero-rate category
    category = np.minimum(category, np.flatnonzero(weights)[-1])
    target = rng.integers(0, params.n, size=size)
    if params.n > 1:
        source = rng.integers(0, params.n - 1, size=size)
        source = source + (source >= target)
    else:
        source = np.zeros(size, dtype=target.dtype)
    return dwell, category, target, source


def _make_transition(category: int, target: int, source: int) -> Transition:
    if category == EVENT:
        return EventUpdate()
    if category == RELIABLE_SOURCE:
        return ReliableToNode(target)
    if category == UNRELIABLE_SOURCE:
        return UnreliableToNode(target)
    return Gossip(source, target)


def sample_transition(params: Params, rng: np.random.Generator) -> tuple[float, Transition]:
    dwell, category, target, source = sample_batch(params, rng, 1)
    return float(dwell[0]), _make_transition(int(category[0]), int(target[0]), int(source[0]))


def iter_transitions(params: Params, rng: np.random.Generator) -> Iterator[tuple[float, Transition]]:
    """Endless stream of ``(dwell, transition)`` pairs drawn in batches."""
    while True:
        dwell, category, target, source = sample_batch(params, rng, _BATCH)
        for item in zip(dwell.tolist(), category.tolist(), target.tolist(), source.tolist()):
            yield item[0], _make_transition(item[1], item[2], item[3])


def _check_node(state: NetworkState, i: int) -> None:
    if not 0 <= i < state.n:
        raise IndexError(f"node index {i} outside 0..{state.n - 1}")


def apply(state: NetworkState, transition: Transition, params: Params) -> NetworkState:
    """Apply ``transition`` to ``state`` in place and return it.

    An unreliable delivery goes through the same preference rule as gossip:
    a reliable holder keeps its packet iff its age is at most ``gap``.
    """
    gap = params.gap
    if isinstance(transition, EventUpdate):
        ages = state.age
        for i in range(len(ages)):
            ages[i] += 1
        state.event_count += 1
    elif isinstance(transition, ReliableToNode):
        j = transition.target
        _check_node(state, j)
        state.reliability[j] = RELIABLE
        state.age[j] = 0
    elif isinstance(transition, UnreliableToNode):
        j = transition.target
        _check_node(state, j)
        kept = merge(state.node(j), PacketState(UNRELIABLE, 0), gap)
        state.reliability[j], state.age[j] = kept
    elif isinstance(transition, Gossip):
        i, j = transition.source, transition.target
        _check_node(state, i)
        _check_node(state, j)
        kept = merge(state.node(j), state.node(i), gap)
        state.reliability[j], state.age[j] = kept
    else:
        raise TypeError(f"unknown transition {transition!r}")
    return state


def run(params: Params, horizon: float, burn_in: Optional[float] = None,
        seed: int = 0) -> Estimates:
    """Simulate up to ``horizon`` and time-average over ``[burn_in, horizon]``.

    Parameters
    ----------
    params : Params
        Network rates and gap.
    horizon : float
        Total simulated time.
    burn_in : float, optional
        Initial stretch excluded from the averages. Defaults to 10% of
        the horizon.
    seed : int
        Seed of the numpy random generator; equal seeds give identical runs.

    Returns
    -------
    Estimates
        Window averages of the unreliable fraction and of the node age
        (pooled over all nodes).
    """
    if burn_in is None:
        burn_in = 0.1 * horizon
    if not horizon > 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    if not 0 <= burn_in < horizon:
        raise ValueError(f"burn_in must lie in [0, horizon), got {burn_in}")

    rng = np.random.default_rng(seed)
    state = NetworkState.initial(params.n)
    unreliable_time = 0.0
    age_time = 0.0
    measured = 0.0
    steps = 0
    for dwell, transition in iter_transitions(params, rng):
        start = state.clock
        end = start + dwell
        lo = start if start > burn_in else burn_in
        hi = end if end < horizon else horizon
        if hi > lo:
            span = hi - lo
            unreliable_time += span * sum(state.reliability)
            age_time += span * sum(state.age)
            measured += span
        if end >= horizon:
            state.clock = horizon
            break
        state.clock = end
        apply(state, transition, params)
        steps += 1

    window = horizon - burn_in
    n = params.n
    return Estimates(
        fraction_unreliable=unreliable_time / (n * window),
        version_age=age_time / (n * window),
        horizon=float(horizon),
        burn_in=float(burn_in),
        seed=seed,
        measured_time=measured,
        transitions=steps,
    )
