"""Inner and outer bounds for Gaussian relay networks.

The inner bound evaluates, per cut S (source side), a mutual-information term
(1/2) log2 |I + G(S) diag(P(S)) G(S)^T| minus one penalty per far-side node,

    penalty_k = (1/2) log2(1 + S_k / (1 + S_k)) <= 1/2,

with S_k the full-power received SNR at node k.  The cutset outer bound uses
the same log-det kernel with a free input covariance.  Relaxing the penalty to
its worst case 1/2 per node, and the covariance by Hadamard's inequality to
1/2 per source-side node, pins the inner/outer gap at exactly n/2 bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .info import RateBits, log_det_rate
from .networks import Cut, GaussianNetwork, cut_submatrix, enumerate_cuts, received_snr
from .regions import RateRegion, RegionConstraint


def penalty_rate(snr: float) -> RateBits:
    """(1/2) log2(1 + s/(1+s)); lies in [0, 1/2] for every s >= 0."""
    if snr < 0:
        raise ValueError(f"snr must be nonnegative, got {snr}")
    return 0.5 * math.log2(1.0 + snr / (1.0 + snr))


def node_penalty(net: GaussianNetwork, k: int) -> RateBits:
    return penalty_rate(received_snr(net, k))


def _check_cut(net: GaussianNetwork, cut: Cut) -> tuple[int, ...]:
    if cut.n != net.n:
        raise ValueError(f"cut is over {cut.n} nodes, network has {net.n}")
    far = cut.complement
    if not far:
        raise ValueError(f"cut {cut.s} has an empty far side")
    return far


def _power_diag(net: GaussianNetwork, nodes: tuple[int, ...]) -> np.ndarray:
    return np.diag([net.power[k - 1] for k in nodes])


def cut_rate_term(net: GaussianNetwork, cut: Cut) -> RateBits:
    """(1/2) log2 |I + G(S) diag(P(S)) G(S)^T| at full per-node power."""
    _check_cut(net, cut)
    g = cut_submatrix(net, cut)
    return log_det_rate(g @ _power_diag(net, cut.s) @ g.T)


def ddf_cut_rate(net: GaussianNetwork, cut: Cut) -> RateBits:
    """Inner-bound value of one cut: rate term minus all far-side penalties.

    May be negative; region constructors clamp at zero.
    """
    far = _check_cut(net, cut)
    return cut_rate_term(net, cut) - sum(node_penalty(net, k) for k in far)


def relaxed_inner_cut(net: GaussianNetwork, cut: Cut) -> RateBits:
    """Rate term minus the worst-case penalty 1/2 per far-side node."""
    far = _check_cut(net, cut)
    return cut_rate_term(net, cut) - len(far) / 2.0


def cutset_relaxed_cut(net: GaussianNetwork, cut: Cut) -> RateBits:
    """Covariance-free outer bound: rate term plus 1/2 per source-side node."""
    _check_cut(net, cut)
    return cut_rate_term(net, cut) + len(cut.s) / 2.0


def _validate_cov(net: GaussianNetwork, k_cov: np.ndarray) -> np.ndarray:
    k = np.asarray(k_cov, dtype=float)
    if k.shape != (net.n, net.n):
        raise ValueError(f"covariance must be {net.n}x{net.n}, got {k.shape}")
    if np.max(np.abs(k - k.T)) > 1e-9:
        raise ValueError("covariance is not symmetric within 1e-9")
    k = 0.5 * (k + k.T)
    eig = np.linalg.eigvalsh(k)
    if eig[0] < -1e-9:
        raise ValueError(f"covariance has eigenvalue {eig[0]:.3e} < -1e-9")
    for j in range(net.n):
        if k[j, j] > net.power[j] + 1e-9:
            raise ValueError(
                f"covariance diagonal {k[j, j]} at node {j + 1} exceeds the "
                f"power limit {net.power[j]}"
            )
    return k


def cutset_cut_rate(net: GaussianNetwork, cut: Cut, k_cov: np.ndarray) -> RateBits:
    """(1/2) log2 |I + G(S) K(S) G(S)^T| for a feasible input covariance K."""
    _check_cut(net, cut)
    k = _validate_cov(net, k_cov)
    return _cutset_cut_fast(net, cut, k)


def _cutset_cut_fast(net: GaussianNetwork, cut: Cut, k: np.ndarray) -> RateBits:
    g = cut_submatrix(net, cut)
    idx = [j - 1 for j in cut.s]
    return log_det_rate(g @ k[np.ix_(idx, idx)] @ g.T)


def _half_log2_det_pd(a: np.ndarray, what: str) -> float:
    """(1/2) log2 det(a) via Cholesky; non-PD input raises ValueError."""
    try:
        chol = np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        raise ValueError(f"degenerate covariance: {what} is not positive definite") from None
    return float(np.sum(np.log2(np.diag(chol))))


def ddf_cut_rate_general(
    net: GaussianNetwork,
    cut: Cut,
    k_cov: np.ndarray,
    sigma_sq: float | np.ndarray = 1.0,
) -> RateBits:
    """Inner-bound cut value for a general input covariance and per-node
    quantization noise:

        (1/2) log2 |Sigma(S^c) + G(S) K(S|S^c) G(S)^T| + (1/2) log2 |K(S^c)|
        - sum_{k in S^c} [ (1/2) log2(sigma_k^2 + S_k/(1+S_k)) + (1/2) log2 K_kk ]

    where K(S|S^c) is the conditional (Schur-complement) covariance and S_k is
    the received-signal variance at node k conditioned on X_k.  At K = P I and
    sigma^2 = 1 this reduces to ddf_cut_rate.
    """
    far = _check_cut(net, cut)
    k = _validate_cov(net, k_cov)
    sig = np.asarray(sigma_sq, dtype=float)
    if sig.ndim == 0:
        sig = np.full(net.n, float(sig))
    if sig.shape != (net.n,):
        raise ValueError(f"sigma_sq must be a scalar or length-{net.n} vector")
    far_idx = [j - 1 for j in far]
    near_idx = [j - 1 for j in cut.s]
    if np.any(sig[far_idx] <= 0):
        raise ValueError("quantizer variances must be positive on the far side")

    k_ff = k[np.ix_(far_idx, far_idx)]
    half_log_det_far = _half_log2_det_pd(k_ff, "K(S^c)")
    k_nn = k[np.ix_(near_idx, near_idx)]
    k_nf = k[np.ix_(near_idx, far_idx)]
    k_cond = k_nn - k_nf @ np.linalg.solve(k_ff, k_nf.T)
    g = cut_submatrix(net, cut)
    first = _half_log2_det_pd(
        np.diag(sig[far_idx]) + g @ k_cond @ g.T, "quantized observation covariance"
    )

    total = first + half_log_det_far
    for k_node in far:
        i = k_node - 1
        rho_sq = k[i, i]
        if rho_sq <= 0:
            raise ValueError(f"degenerate covariance: zero variance at node {k_node}")
        v = net.gains[i]
        recv = float(v @ k @ v)
        cross = float(v @ k[:, i])
        s_cond = max(recv - cross * cross / rho_sq, 0.0)
        total -= 0.5 * math.log2(sig[i] + s_cond / (1.0 + s_cond))
        total -= 0.5 * math.log2(rho_sq)
    return total


def ddf_unicast_cut_rate(net: GaussianNetwork, cut: Cut, dest: int) -> RateBits:
    """One unicast cut: the destination's observation row enters twice (its
    compressed description and its own channel output), then the usual
    far-side penalties are charged."""
    far = _check_cut(net, cut)
    if dest not in far:
        raise ValueError(f"destination {dest} must lie on the far side of {cut.s}")
    g = cut_submatrix(net, cut)
    g_hat = np.vstack([g, g[far.index(dest)]])
    first = log_det_rate(g_hat @ _power_diag(net, cut.s) @ g_hat.T)
    return first - sum(node_penalty(net, k) for k in far)


def ddf_unicast_rate(net: GaussianNetwork, dest: int) -> RateBits:
    """Achievable rate to a single destination: minimum over unicast cuts."""
    if dest < 2 or dest > net.n:
        raise ValueError(f"destination {dest} must lie in 2..{net.n}")
    cuts = enumerate_cuts(net.n, {dest}, "unicast")
    return min(ddf_unicast_cut_rate(net, cut, dest) for cut in cuts)


def ddf_region(net: GaussianNetwork) -> RateRegion:
    """Broadcast inner bound: one halfspace per cut, clamped at zero."""
    dims = net.destinations
    constraints = []
    for cut in enumerate_cuts(net.n, dims, "broadcast"):
        far = set(cut.complement)
        coeff = tuple(1 if d in far else 0 for d in dims)
        constraints.append(
            RegionConstraint(coeff, max(ddf_cut_rate(net, cut), 0.0), cut)
        )
    return RateRegion(dims, constraints)


# ---------------------------------------------------------------------------
# Cutset estimation: heuristic maximization over input covariances.


@dataclass(frozen=True)
class CutsetEstimate:
    """A lower estimate of the cutset value plus the certified relaxation.

    ``estimate`` is the best min-over-cuts value found inside the searched
    covariance family, so it never exceeds the true cutset optimum;
    ``relaxed_upper`` is the always-valid min over cuts of the relaxed outer
    bound.
    """

    estimate: RateBits
    relaxed_upper: RateBits
    k_best: np.ndarray
    evaluations: int


def _corr_to_cov(corr: np.ndarray, powers: np.ndarray) -> np.ndarray:
    d = np.sqrt(powers)
    return corr * np.outer(d, d)


def _structured_corr(n: int, rho: float, family: str) -> np.ndarray:
    corr = np.eye(n)
    if family == "all":
        corr[:] = rho
        np.fill_diagonal(corr, 1.0)
    elif family == "relays":
        if n > 2:
            block = slice(1, n)
            corr[block, block] = rho
            np.fill_diagonal(corr, 1.0)
    else:
        raise ValueError(f"unknown correlation family {family!r}")
    return corr


def _search_cov(net, cuts, budget: int, seed: int):
    """Shared search loop: returns (best value, best K, evaluations used)."""
    n = net.n
    powers = net.power.copy()

    evals = 0

    def value_of(k: np.ndarray) -> float:
        nonlocal evals
        evals += 1
        return min(_cutset_cut_fast(net, cut, k) for cut in cuts)

    best_k = np.diag(powers)
    best_v = value_of(best_k)

    families = ("relays", "all")
    rho_grid = np.linspace(0.0, 0.992, 17)
    for family in families:
        fam_best_rho, fam_best_v = 0.0, -math.inf
        for rho in rho_grid:
            if evals >= budget:
                break
            v = value_of(_corr_to_cov(_structured_corr(n, rho, family), powers))
            if v > fam_best_v:
                fam_best_rho, fam_best_v = rho, v
            if v > best_v:
                best_v = v
                best_k = _corr_to_cov(_structured_corr(n, rho, family), powers)
        if evals + 40 <= budget:
            # local refine of the correlation level around the grid winner
            lo = max(0.0, fam_best_rho - 0.07)
            hi = min(0.999, fam_best_rho + 0.07)
            rho, v = _golden_rho(
                lambda r: value_of(_corr_to_cov(_structured_corr(n, r, family), powers)),
                lo,
                hi,
            )
            if v > best_v:
                best_v = v
                best_k = _corr_to_cov(_structured_corr(n, rho, family), powers)

    rng = np.random.default_rng(seed)
    random_budget = max(0, budget - evals - budget // 5)
    for trial in range(random_budget):
        factors = rng.standard_normal((n, n + 1))
        c = factors @ factors.T
        d = np.sqrt(np.diag(c))
        corr = c / np.outer(d, d)
        p = powers if trial % 2 == 0 else powers * rng.uniform(0.0, 1.0, n)
        p = np.maximum(p, powers * 1e-6)
        k = _corr_to_cov(corr, p)
        v = value_of(k)
        if v > best_v:
            best_v, best_k = v, k

    # hill-climb around the incumbent with shrinking perturbations
    scale = 0.3
    while evals < budget:
        jitter = rng.standard_normal((n, n))
        delta = (jitter + jitter.T) * (scale * float(np.mean(powers)) / 2.0)
        cand = best_k + delta
        eig, vec = np.linalg.eigh(0.5 * (cand + cand.T))
        cand = (vec * np.maximum(eig, 0.0)) @ vec.T
        diag = np.diag(cand)
        shrink = np.sqrt(np.minimum(1.0, powers / np.maximum(diag, 1e-12)))
        cand = cand * np.outer(shrink, shrink)
        v = value_of(cand)
        if v > best_v:
            best_v, best_k = v, cand
        else:
            scale = max(scale * 0.97, 0.01)
    return best_v, best_k, evals


def _golden_rho(f, lo: float, hi: float) -> tuple[float, float]:
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1, x2 = b - phi * (b - a), a + phi * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(30):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + phi * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - phi * (b - a)
            f1 = f(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def cutset_estimate(
    net: GaussianNetwork, dest: int, budget: int = 10_000, seed: int = 0
) -> CutsetEstimate:
    """Estimate the unicast cutset bound by searching input covariances.

    The searched family (full-power diagonal, one-parameter correlation
    profiles, random correlation factors, local hill-climbing) always contains
    K = diag(P), so the estimate is at least the easy diagonal value, and it
    is always a lower bound on the true cutset optimum.
    """
    if dest < 2 or dest > net.n:
        raise ValueError(f"destination {dest} must lie in 2..{net.n}")
    if budget < 1:
        raise ValueError("budget must be positive")
    cuts = enumerate_cuts(net.n, {dest}, "unicast")
    best_v, best_k, evals = _search_cov(net, cuts, budget, seed)
    relaxed = min(cutset_relaxed_cut(net, cut) for cut in cuts)
    return CutsetEstimate(best_v, relaxed, best_k, evals)


def cutset_estimate_region(
    net: GaussianNetwork, budget: int = 10_000, seed: int = 0
) -> tuple[RateRegion, RateRegion]:
    """Broadcast variant: (region at the best covariance found, relaxed region).

    The first region is an estimate slice of the cutset outer bound (its
    covariance maximizes the worst cut); the second is certified valid for
    every admissible covariance.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    dims = net.destinations
    cuts = enumerate_cuts(net.n, dims, "broadcast")
    _, best_k, _ = _search_cov(net, cuts, budget, seed)
    est, rel = [], []
    for cut in cuts:
        far = set(cut.complement)
        coeff = tuple(1 if d in far else 0 for d in dims)
        est.append(RegionConstraint(coeff, _cutset_cut_fast(net, cut, best_k), cut))
        rel.append(RegionConstraint(coeff, cutset_relaxed_cut(net, cut), cut))
    return RateRegion(dims, est), RateRegion(dims, rel)


# ---------------------------------------------------------------------------
# The half-bit-per-node gap certificate.


@dataclass(frozen=True)
class GapRow:
    cut: Cut
    upper: RateBits
    inner: RateBits
    gap: RateBits
    ddf: RateBits
    tighter_gap: RateBits


@dataclass(frozen=True)
class GapCertificate:
    """Per-cut witnesses that outer minus inner is at most n/2 bits.

    ``gap`` is upper - inner with the shared log-det term cancelled
    algebraically before any floating-point subtraction, so it equals n/2
    exactly; ``tighter_gap`` subtracts the unrelaxed inner bound instead.
    """

    n: int
    rows: tuple[GapRow, ...]
    max_gap: RateBits
    max_tighter_gap: RateBits

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "max_gap": self.max_gap,
            "max_tighter_gap": self.max_tighter_gap,
            "cuts": [
                {
                    "cut": list(r.cut.s),
                    "upper": r.upper,
                    "inner": r.inner,
                    "gap": r.gap,
                    "ddf": r.ddf,
                    "tighter_gap": r.tighter_gap,
                }
                for r in self.rows
            ],
        }


def gap_certificate(net: GaussianNetwork) -> GapCertificate:
    rows = []
    half_n = net.n / 2.0
    for cut in enumerate_cuts(net.n, net.destinations, "broadcast"):
        term = cut_rate_term(net, cut)
        upper = term + len(cut.s) / 2.0
        inner = term - len(cut.complement) / 2.0
        ddf = ddf_cut_rate(net, cut)
        rows.append(GapRow(cut, upper, inner, half_n, ddf, upper - ddf))
    if not rows:
        raise ValueError("network has no broadcast cuts")
    return GapCertificate(
        net.n,
        tuple(rows),
        max(r.gap for r in rows),
        max(r.tighter_gap for r in rows),
    )
