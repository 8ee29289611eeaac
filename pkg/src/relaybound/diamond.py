"""Closed-form bound comparison for the four-node Gaussian diamond.

Node 1 broadcasts to relays 2 and 3 over orthogonal-noise links with received
SNRs s21 and s31; the relays reach destination 4 over a MAC with SNRs s42 and
s43.  Every bound below is an explicit function of those four SNRs, so the
whole benchmark is cheap enough to sweep and to cross-check against the
generic covariance machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .info import RateBits, gauss_c
from .networks import GaussianNetwork
from .optimize import Box, golden_max, grid_then_refine
from .parallel import map_ordered


@dataclass(frozen=True)
class DiamondConfig:
    """Received SNRs of the four links."""

    s21: float
    s31: float
    s42: float
    s43: float

    def __post_init__(self):
        for name in ("s21", "s31", "s42", "s43"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @classmethod
    def from_distance(cls, d: float, p: float) -> "DiamondConfig":
        """Relays at distance d from the source, 1 - d from the destination,
        with path-loss exponent 3 (gain = distance^(-3/2)) and power p."""
        if not 0.0 < d < 1.0:
            raise ValueError(f"relay position d must lie in (0, 1), got {d}")
        if p <= 0:
            raise ValueError(f"power must be positive, got {p}")
        near = p / d**3
        far = p / (1.0 - d) ** 3
        return cls(s21=near, s31=far, s42=far, s43=near)

    def to_network(self, power: float) -> GaussianNetwork:
        """The same diamond as a GaussianNetwork carrying unit-variance noise."""
        if power <= 0:
            raise ValueError(f"power must be positive, got {power}")
        g = np.zeros((4, 4))
        g[1, 0] = math.sqrt(self.s21 / power)
        g[2, 0] = math.sqrt(self.s31 / power)
        g[3, 1] = math.sqrt(self.s42 / power)
        g[3, 2] = math.sqrt(self.s43 / power)
        return GaussianNetwork(4, g, power, destinations=[4])


@dataclass(frozen=True)
class DdfParams:
    """Relay correlation and per-relay description-noise variances."""

    rho: float
    sigma2_sq: float
    sigma3_sq: float

    def __post_init__(self):
        if not 0.0 <= self.rho < 1.0:
            raise ValueError(f"rho must lie in [0, 1), got {self.rho}")
        if self.sigma2_sq <= 0 or self.sigma3_sq <= 0:
            raise ValueError("description-noise variances must be positive")


def _relay_info(s: float, sigma_sq: float) -> float:
    """I between a relay's description and its observation, in bits."""
    return 0.5 * math.log2(
        (1.0 + s) * (sigma_sq + s) / (sigma_sq + (1.0 + sigma_sq) * s)
    )


def ddf_diamond_terms(cfg: DiamondConfig, params: DdfParams) -> tuple[float, ...]:
    rho, s2, s3 = params.rho, params.sigma2_sq, params.sigma3_sq
    i2 = _relay_info(cfg.s21, s2)
    i3 = _relay_info(cfg.s31, s3)
    cross = 2.0 * rho * math.sqrt(cfg.s42 * cfg.s43)
    shrink = 1.0 - rho * rho
    joint_cost = 0.5 * math.log2(
        (s2 + cfg.s21)
        * (s3 + cfg.s31)
        / ((s2 * s3 + s2 * cfg.s31 + s3 * cfg.s21) * shrink)
    )
    return (
        gauss_c(cfg.s42 + cfg.s43 + cross),
        gauss_c(shrink * cfg.s42) + i3,
        gauss_c(shrink * cfg.s43) + i2,
        i2 + i3 - joint_cost,
    )


def ddf_diamond(cfg: DiamondConfig, params: DdfParams) -> RateBits:
    """Partial-decode-and-bin achievable rate at fixed parameters."""
    return min(ddf_diamond_terms(cfg, params))


def ddf_diamond_opt(
    cfg: DiamondConfig, budget: int = 6000, seed: int = 0
) -> tuple[RateBits, DdfParams]:
    grid = 16 if budget >= 16**3 else max(2, round(budget ** (1 / 3)))
    box = Box(
        [
            (0.0, 0.999),
            (math.exp(-6.0), math.exp(6.0), "log"),
            (math.exp(-6.0), math.exp(6.0), "log"),
        ]
    )
    arg, value = grid_then_refine(
        lambda rho, s2, s3: ddf_diamond(cfg, DdfParams(rho, s2, s3)),
        box,
        grid_per_dim=grid,
        refine_budget=max(budget - grid**3, 0),
        seed=seed,
    )
    return value, DdfParams(*arg)


def nnc_diamond_terms(
    cfg: DiamondConfig, sigma2_sq: float, sigma3_sq: float
) -> tuple[float, ...]:
    if sigma2_sq <= 0 or sigma3_sq <= 0:
        raise ValueError("compression-noise variances must be positive")
    s2, s3 = sigma2_sq, sigma3_sq
    return (
        gauss_c(
            (cfg.s21 * (1.0 + s3) + cfg.s31 * (1.0 + s2))
            / ((1.0 + s2) * (1.0 + s3))
        ),
        gauss_c(cfg.s42) + gauss_c(cfg.s31 / (1.0 + s3)) - gauss_c(1.0 / s2),
        gauss_c(cfg.s43) + gauss_c(cfg.s21 / (1.0 + s2)) - gauss_c(1.0 / s3),
        gauss_c(cfg.s42 + cfg.s43) - gauss_c(1.0 / s2) - gauss_c(1.0 / s3),
    )


def nnc_diamond(cfg: DiamondConfig, sigma2_sq: float, sigma3_sq: float) -> RateBits:
    """Compress-and-forward (noisy network coding) rate at fixed quantizers.

    Can be negative for poor quantizer choices; reported as computed.
    """
    return min(nnc_diamond_terms(cfg, sigma2_sq, sigma3_sq))


def nnc_diamond_opt(
    cfg: DiamondConfig, budget: int = 2000, seed: int = 0
) -> tuple[RateBits, tuple[float, float]]:
    grid = 24 if budget >= 24**2 else max(2, round(math.sqrt(budget)))
    box = Box(
        [
            (math.exp(-6.0), math.exp(6.0), "log"),
            (math.exp(-6.0), math.exp(6.0), "log"),
        ]
    )
    arg, value = grid_then_refine(
        lambda s2, s3: nnc_diamond(cfg, s2, s3),
        box,
        grid_per_dim=grid,
        refine_budget=max(budget - grid**2, 0),
        seed=seed,
    )
    return value, arg


def af_diamond(cfg: DiamondConfig) -> RateBits:
    """Amplify-and-forward: the relays scale their observations to full power,
    leaving a single effective Gaussian channel to the destination."""
    a = math.sqrt(cfg.s21 * cfg.s42 * (cfg.s31 + 1.0))
    b = math.sqrt(cfg.s31 * cfg.s43 * (cfg.s21 + 1.0))
    den = (
        cfg.s42 * (cfg.s31 + 1.0)
        + cfg.s43 * (cfg.s21 + 1.0)
        + (cfg.s21 + 1.0) * (cfg.s31 + 1.0)
    )
    return gauss_c((a + b) ** 2 / den)


def df_diamond(cfg: DiamondConfig) -> RateBits:
    """Both relays decode the full message, then beamform over the MAC."""
    return min(
        gauss_c(cfg.s21),
        gauss_c(cfg.s31),
        gauss_c(cfg.s42 + cfg.s43 + 2.0 * math.sqrt(cfg.s42 * cfg.s43)),
    )


def cutset_diamond_terms(cfg: DiamondConfig, rho: float) -> tuple[float, ...]:
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")
    shrink = 1.0 - rho * rho
    return (
        gauss_c(cfg.s21 + cfg.s31),
        gauss_c(cfg.s31) + gauss_c(shrink * cfg.s42),
        gauss_c(cfg.s21) + gauss_c(shrink * cfg.s43),
        gauss_c(cfg.s42 + cfg.s43 + 2.0 * rho * math.sqrt(cfg.s42 * cfg.s43)),
    )


def cutset_diamond(cfg: DiamondConfig, rho: float) -> RateBits:
    """Cutset outer bound at a fixed relay correlation."""
    return min(cutset_diamond_terms(cfg, rho))


def cutset_diamond_opt(cfg: DiamondConfig) -> tuple[RateBits, float]:
    """Cutset bound maximized over the relay correlation.

    The profile is a minimum of one constant, two decreasing, and one
    increasing term of rho, hence unimodal, so golden search is exact here.
    """
    rho, value = golden_max(lambda r: cutset_diamond(cfg, r), 0.0, 1.0, tol=1e-10)
    return value, rho


# ---------------------------------------------------------------------------
# Sweeps over the relay position.


@dataclass(frozen=True)
class SweepRow:
    d: float
    cutset: float
    df: float
    af: float
    nnc: float
    ddf: float
    cutset_rho: float
    nnc_sigma_sq: tuple[float, float]
    ddf_params: DdfParams
    nnc_active: int
    ddf_active: int


@dataclass(frozen=True)
class SweepTable:
    power: float
    rows: tuple[SweepRow, ...]

    def to_csv(self) -> str:
        lines = ["d,cutset,df,af,nnc,ddf"]
        for r in self.rows:
            lines.append(
                f"{r.d:.6f},{r.cutset:.6f},{r.df:.6f},{r.af:.6f},"
                f"{r.nnc:.6f},{r.ddf:.6f}"
            )
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "power": self.power,
            "rows": [
                {
                    "d": r.d,
                    "cutset": r.cutset,
                    "df": r.df,
                    "af": r.af,
                    "nnc": r.nnc,
                    "ddf": r.ddf,
                    "params": {
                        "cutset_rho": r.cutset_rho,
                        "nnc_sigma_sq": list(r.nnc_sigma_sq),
                        "ddf": {
                            "rho": r.ddf_params.rho,
                            "sigma2_sq": r.ddf_params.sigma2_sq,
                            "sigma3_sq": r.ddf_params.sigma3_sq,
                        },
                        "active": {"nnc": r.nnc_active, "ddf": r.ddf_active},
                    },
                }
                for r in self.rows
            ],
        }


def _lowest_argmin(terms: Sequence[float]) -> int:
    best = min(terms)
    for i, t in enumerate(terms):
        if t == best:
            return i
    raise AssertionError("min not among terms")


def diamond_sweep(
    d_grid: Sequence[float], p: float, budget: int = 6000, seed: int = 0
) -> SweepTable:
    """Evaluate every bound on a grid of relay positions.

    Rows are independent, so they may be computed on worker threads; the
    output order always follows d_grid and is deterministic for a fixed
    budget and seed.
    """
    if p <= 0:
        raise ValueError(f"power must be positive, got {p}")

    def one(d: float) -> SweepRow:
        cfg = DiamondConfig.from_distance(d, p)
        cut_v, cut_rho = cutset_diamond_opt(cfg)
        nnc_v, nnc_s = nnc_diamond_opt(cfg, budget=budget // 3, seed=seed)
        ddf_v, ddf_p = ddf_diamond_opt(cfg, budget=budget, seed=seed)
        return SweepRow(
            d=d,
            cutset=cut_v,
            df=df_diamond(cfg),
            af=af_diamond(cfg),
            nnc=nnc_v,
            ddf=ddf_v,
            cutset_rho=cut_rho,
            nnc_sigma_sq=nnc_s,
            ddf_params=ddf_p,
            nnc_active=_lowest_argmin(nnc_diamond_terms(cfg, *nnc_s)),
            ddf_active=_lowest_argmin(ddf_diamond_terms(cfg, ddf_p)),
        )

    rows = map_ordered(one, [float(d) for d in d_grid])
    return SweepTable(power=float(p), rows=tuple(rows))
