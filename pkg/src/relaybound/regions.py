"""Achievable-rate regions as intersections of per-cut halfspaces.

A region lives in the orthant indexed by destination nodes; every constraint
bounds the sum of rates over the destinations on the far side of some cut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .networks import Cut
from .optimize import bisect_feasible, simplex_lp_max

MEMBERSHIP_SLACK = 1e-9


@dataclass(frozen=True)
class RegionConstraint:
    """sum of R_d over dims with coeff 1 is at most bound; cut is provenance."""

    coeff: tuple[int, ...]
    bound: float
    cut: Cut | None = None


@dataclass(frozen=True)
class RateRegion:
    dims: tuple[int, ...]
    constraints: tuple[RegionConstraint, ...]

    def __init__(self, dims: Sequence[int], constraints: Sequence[RegionConstraint]):
        dims = tuple(int(d) for d in dims)
        if not dims:
            raise ValueError("a region needs at least one rate dimension")
        for c in constraints:
            if len(c.coeff) != len(dims):
                raise ValueError(
                    f"constraint arity {len(c.coeff)} != {len(dims)} dimensions"
                )
            if any(x not in (0, 1) for x in c.coeff):
                raise ValueError(f"coefficients must be 0/1, got {c.coeff}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "constraints", tuple(constraints))

    def to_dicts(self) -> list[dict]:
        return [
            {
                "cut": list(c.cut.s) if c.cut is not None else None,
                "coeff": list(c.coeff),
                "bound": c.bound,
            }
            for c in self.constraints
        ]


def region_membership(region: RateRegion, rates: Sequence[float]) -> bool:
    """True when the rate tuple satisfies every constraint within 1e-9 slack."""
    rates = [float(r) for r in rates]
    if len(rates) != len(region.dims):
        raise ValueError(f"expected {len(region.dims)} rates, got {len(rates)}")
    if any(r < 0 for r in rates):
        raise ValueError(f"rates must be nonnegative, got {rates}")
    for c in region.constraints:
        total = sum(r for r, m in zip(rates, c.coeff) if m)
        if total > c.bound + MEMBERSHIP_SLACK:
            return False
    return True


def region_max_weighted(
    region: RateRegion, weights: Sequence[float]
) -> tuple[np.ndarray, float]:
    """Maximize sum_d w_d R_d over the region via the simplex LP."""
    weights = [float(w) for w in weights]
    if len(weights) != len(region.dims):
        raise ValueError(f"expected {len(region.dims)} weights, got {len(weights)}")
    if not region.constraints:
        raise ValueError("region has no constraints")
    rows = [(c.coeff, max(c.bound, 0.0)) for c in region.constraints]
    return simplex_lp_max(weights, rows)


def region_max_symmetric(region: RateRegion, tol: float = 1e-9) -> float:
    """Largest t with (t, ..., t) in the region, found by bisection."""
    if not region.constraints:
        raise ValueError("region has no constraints")
    hi = math.inf
    for c in region.constraints:
        k = sum(c.coeff)
        if k and not math.isinf(c.bound):
            hi = min(hi, max(c.bound, 0.0) / k)
    if math.isinf(hi):
        return math.inf
    rates_ok = lambda t: region_membership(region, [t] * len(region.dims))
    return bisect_feasible(rates_ok, 0.0, hi + 1.0, tol)
