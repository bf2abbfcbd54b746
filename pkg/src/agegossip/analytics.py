"""Exact long-run reliability and version age of the gap-preference gossip network.

All tables are indexed by set size: row ``k - 1`` holds the value for an
arbitrary set of ``k`` nodes. Columns of ``c`` and ``d`` are indexed by the age
threshold ``g``. Each table is filled by back-substitution from ``k = n`` down
to ``k = 1``, which makes every system triangular and costs O(n * gap).

=========  ==============================================================
``c[k,g]`` probability that the freshest reliable packet in the set has
           age at most ``g`` (``g = 0 .. gap-1``)
``b[k]``   probability the set plus the unreliable source resolves to an
           unreliable packet
``a[k]``   probability the set resolves to an unreliable packet
``d[k,g]`` mean of the set age restricted to freshest-reliable age <= g
           (``g = 0 .. gap``)
``e[k]``   mean set age
=========  ==============================================================
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Params


@dataclass(frozen=True)
class AnalyticTables:
    c: np.ndarray
    d: np.ndarray
    b: np.ndarray
    a: np.ndarray
    e: np.ndarray


@dataclass(frozen=True)
class AnalyticResult:
    fraction_unreliable: float
    version_age: float
    tables: AnalyticTables


def rate_terms(params: Params, k: int) -> tuple[float, float, float]:
    """Aggregate rates into a set of ``k`` nodes.

    Returns the reliable source rate ``k * lambda_r / n``, the unreliable
    source rate ``k * lambda_u / n`` and the gossip rate from the remaining
    ``n - k`` nodes, ``k * (n - k) * lambda_g / (n - 1)``.
    """
    n = params.n
    if not 1 <= k <= n:
        raise ValueError(f"set size k must lie in 1..{n}, got {k}")
    src_r = k * params.lambda_r / n
    src_u = k * params.lambda_u / n
    gossip = 0.0 if k == n else k * (n - k) * params.lambda_g / (n - 1)
    return src_r, src_u, gossip


def solve_c(params: Params) -> np.ndarray:
    n, gap, lam_e = params.n, params.gap, params.lambda_e
    c = np.zeros((n, gap))
    if gap == 0:
        return c
    for k in range(n, 0, -1):
        src_r, _, gossip = rate_terms(params, k)
        denom = lam_e + src_r + gossip
        prev = 0.0
        for g in range(gap):
            below = c[k, g] if k < n else 0.0
            prev = (prev * lam_e + src_r + below * gossip) / denom
            c[k - 1, g] = prev
    return c


def _last_c_column(params: Params, c: np.ndarray) -> np.ndarray:
    if params.gap == 0:
        return np.zeros(params.n)
    return c[:, params.gap - 1]


def solve_b(params: Params, c: np.ndarray) -> np.ndarray:
    n, lam_e = params.n, params.lambda_e
    c_last = _last_c_column(params, c)
    b = np.zeros(n)
    below = 0.0
    for k in range(n, 0, -1):
        src_r, _, gossip = rate_terms(params, k)
        below = ((1.0 - c_last[k - 1]) * lam_e + below * gossip) / (lam_e + src_r + gossip)
        b[k - 1] = below
    return b


def solve_a(params: Params, b: np.ndarray) -> np.ndarray:
    n = params.n
    a = np.zeros(n)
    below = 0.0
    for k in range(n, 0, -1):
        src_r, src_u, gossip = rate_terms(params, k)
        denom = src_u + src_r + gossip
        if denom <= 0:
            raise ZeroDivisionError(f"all rates into a set of size {k} vanish")
        below = (b[k - 1] * src_u + below * gossip) / denom
        a[k - 1] = below
    return a


def solve_d(params: Params, c: np.ndarray) -> np.ndarray:
    n, gap, lam_e = params.n, params.gap, params.lambda_e
    d = np.zeros((n, gap + 1))
    for k in range(n, 0, -1):
        src_r, _, gossip = rate_terms(params, k)
        denom = lam_e + src_r + gossip
        prev_d = 0.0
        for g in range(gap + 1):
            prev_c = c[k - 1, g - 1] if g > 0 else 0.0
            below = d[k, g] if k < n else 0.0
            prev_d = ((prev_d + prev_c) * lam_e + below * gossip) / denom
            d[k - 1, g] = prev_d
    return d


def solve_e(params: Params, d: np.ndarray) -> np.ndarray:
    n, gap, lam_e = params.n, params.gap, params.lambda_e
    e = np.zeros(n)
    below = 0.0
    for k in range(n, 0, -1):
        src_r, src_u, gossip = rate_terms(params, k)
        below = (lam_e + d[k - 1, gap] * src_u + below * gossip) / (src_u + src_r + gossip)
        e[k - 1] = below
    return e


def solve(params: Params) -> AnalyticResult:
    """Solve every table for ``params`` and return F and the mean node age.

    >>> r = solve(Params(n=1, lambda_e=2, lambda_r=1, lambda_u=5, lambda_g=0.1))
    >>> round(r.fraction_unreliable, 12), round(r.version_age, 12)
    (0.555555555556, 0.333333333333)
    """
    c = solve_c(params)
    b = solve_b(params, c)
    a = solve_a(params, b)
    d = solve_d(params, c)
    e = solve_e(params, d)
    return AnalyticResult(
        fraction_unreliable=float(a[0]),
        version_age=float(e[0]),
        tables=AnalyticTables(c=c, d=d, b=b, a=a, e=e),
    )


def _single_source_age(params: Params, source_rate: float) -> float:
    n, lam_e = params.n, params.lambda_e
    below = 0.0
    for k in range(n, 0, -1):
        _, _, gossip = rate_terms(params, k)
        below = (lam_e + below * gossip) / (k * source_rate / n + gossip)
    return below


def limit_age_g0(params: Params) -> float:
    """Mean node age at gap 0, where both sources act as one of rate lambda_r + lambda_u."""
    return _single_source_age(params, params.lambda_r + params.lambda_u)


def limit_age_ginf(params: Params) -> float:
    """Mean node age as the gap grows without bound and unreliable packets are never kept."""
    return _single_source_age(params, params.lambda_r)
