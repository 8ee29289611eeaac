"""Exactness and closed-form checks for the dense pmf information measures."""

import math

import numpy as np
import pytest

from relaybound import (
    JointPmf,
    TensorCapError,
    binary_entropy,
    entropy,
    gauss_c,
    log_det_rate,
    mutual_info,
    ternary_entropy,
)
from relaybound.info import CELL_CAP, ZERO_EPS, _plain_entropy


def naive_marginal(pmf, names):
    """Dict-accumulation marginal, adding cells in flat index-ascending order."""
    keep = sorted(pmf.axis_of(n) for n in set(names))
    buckets = {}
    for idx in np.ndindex(*pmf.probs.shape):
        key = tuple(idx[i] for i in keep)
        buckets[key] = buckets.get(key, 0.0) + float(pmf.probs[idx])
    shape = tuple(pmf.probs.shape[i] for i in keep)
    out = np.zeros(shape)
    for key, val in buckets.items():
        out[key] = val
    return out


def naive_entropy(marg):
    acc = 0.0
    for p in marg.reshape(-1):
        if p >= ZERO_EPS:
            acc -= p * math.log2(p)
    return acc


def random_pmf(rng, sizes, names=None):
    if names is None:
        names = [f"v{i}" for i in range(len(sizes))]
    p = rng.random(tuple(sizes))
    p /= p.sum()
    return JointPmf(list(zip(names, sizes)), p)


def test_marginal_matches_naive_accumulation_bitwise():
    rng = np.random.default_rng(0)
    for _ in range(20):
        ndim = int(rng.integers(1, 5))
        sizes = [int(rng.integers(1, 5)) for _ in range(ndim)]
        pmf = random_pmf(rng, sizes)
        subset_count = int(rng.integers(1, ndim + 1))
        names = list(rng.choice(pmf.names, size=subset_count, replace=False))
        got = pmf.marginal(names)
        want = naive_marginal(pmf, names)
        assert got.shape == want.shape
        assert np.array_equal(got, want), "marginal should be bitwise reproducible"


def test_entropy_matches_naive_oracle_bitwise():
    rng = np.random.default_rng(1)
    for _ in range(20):
        sizes = [int(rng.integers(2, 5)) for _ in range(int(rng.integers(1, 4)))]
        pmf = random_pmf(rng, sizes)
        names = list(pmf.names[: int(rng.integers(1, len(sizes) + 1))])
        got = entropy(pmf, names)
        want = naive_entropy(naive_marginal(pmf, names))
        assert got == want


def test_closed_form_kernels():
    assert gauss_c(0.0) == 0.0
    assert gauss_c(1.0) == 0.5
    assert gauss_c(3.0) == 1.0
    assert abs(gauss_c(15.0) - 2.0) < 1e-15
    with pytest.raises(ValueError):
        gauss_c(-0.1)

    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == 1.0
    h011 = -(0.11 * math.log2(0.11) + 0.89 * math.log2(0.89))
    assert abs(binary_entropy(0.11) - h011) < 1e-15

    assert abs(ternary_entropy(1 / 3, 1 / 3) - math.log2(3)) < 1e-12
    assert ternary_entropy(1.0, 0.0) == 0.0
    with pytest.raises(ValueError):
        ternary_entropy(-0.01, 0.5)
    with pytest.raises(ValueError):
        ternary_entropy(0.6, 0.6)


def test_joint_pmf_validation():
    with pytest.raises(ValueError, match="duplicate"):
        JointPmf([("a", 2), ("a", 2)], np.full((2, 2), 0.25))
    with pytest.raises(ValueError, match="alphabet size"):
        JointPmf([("a", 0)], np.array([1.0]))
    with pytest.raises(ValueError, match="nonnegative"):
        JointPmf([("a", 2)], np.array([1.5, -0.5]))
    with pytest.raises(ValueError, match="sum to"):
        JointPmf([("a", 2)], np.array([0.7, 0.7]))
    with pytest.raises(TensorCapError):
        JointPmf([("a", 3), ("b", 4)], np.full((3, 4), 1 / 12), cell_cap=10)
    assert CELL_CAP == 10_000_000

    pmf = JointPmf([("a", 2), ("b", 3)], np.full((2, 3), 1 / 6))
    assert pmf.names == ("a", "b")
    assert pmf.size_of("b") == 3
    assert pmf.axis_of("b") == 1
    with pytest.raises(ValueError, match="unknown variable"):
        pmf.axis_of("c")
    assert not pmf.probs.flags.writeable
    assert pmf.marginal(["a", "b"]) is pmf.probs


def test_entropy_basics():
    pmf = JointPmf([("x", 4)], np.full(4, 0.25))
    assert entropy(pmf, ["x"]) == 2.0

    # independent pair: conditioning changes nothing
    p = np.outer([0.3, 0.7], [0.25, 0.25, 0.5])
    pmf2 = JointPmf([("x", 2), ("y", 3)], p)
    assert abs(entropy(pmf2, ["x"], ["y"]) - entropy(pmf2, ["x"])) < 1e-12

    # copy: zero conditional entropy
    eye = np.eye(3) / 3
    pmf3 = JointPmf([("x", 3), ("y", 3)], eye)
    assert entropy(pmf3, ["x"], ["y"]) == 0.0

    with pytest.raises(ValueError, match="unknown variable"):
        entropy(pmf2, ["z"])


def test_entropy_inequalities_sweep():
    rng = np.random.default_rng(2)
    for _ in range(50):
        pmf = random_pmf(rng, [2, 3, 2], names=["a", "b", "c"])
        h_ab = entropy(pmf, ["a", "b"])
        h_a = entropy(pmf, ["a"])
        h_b = entropy(pmf, ["b"])
        assert h_ab <= h_a + h_b + 1e-12
        assert entropy(pmf, ["a"], ["b"]) <= h_a + 1e-12
        assert entropy(pmf, ["a"], ["b", "c"]) <= entropy(pmf, ["a"], ["b"]) + 1e-12
        # chain rule
        assert abs(h_ab - (h_a + entropy(pmf, ["b"], ["a"]))) < 1e-12


def test_mutual_info_basics():
    p = np.outer([0.3, 0.7], [0.25, 0.25, 0.5])
    indep = JointPmf([("x", 2), ("y", 3)], p)
    assert mutual_info(indep, ["x"], ["y"]) < 1e-12

    eye = np.eye(3) / 3
    copy = JointPmf([("x", 3), ("y", 3)], eye)
    assert abs(mutual_info(copy, ["x"], ["y"]) - math.log2(3)) < 1e-12

    with pytest.raises(ValueError, match="overlapping"):
        mutual_info(copy, ["x"], ["x"])
    with pytest.raises(ValueError, match="overlapping"):
        mutual_info(copy, ["x"], ["y"], ["y"])


def test_mutual_info_bsc_closed_form():
    eps = 0.11
    joint = np.array([[0.5 * (1 - eps), 0.5 * eps], [0.5 * eps, 0.5 * (1 - eps)]])
    pmf = JointPmf([("x", 2), ("y", 2)], joint)
    want = 1.0 - (-(eps * math.log2(eps) + (1 - eps) * math.log2(1 - eps)))
    assert abs(mutual_info(pmf, ["x"], ["y"]) - want) < 1e-12


def test_mutual_info_symmetry_and_nonnegativity():
    rng = np.random.default_rng(3)
    for _ in range(50):
        pmf = random_pmf(rng, [3, 2, 2], names=["a", "b", "c"])
        ab = mutual_info(pmf, ["a"], ["b"], ["c"])
        ba = mutual_info(pmf, ["b"], ["a"], ["c"])
        assert abs(ab - ba) < 1e-12
        assert ab >= 0.0
        assert mutual_info(pmf, ["a"], ["b"]) >= 0.0


def test_log_det_rate_against_slogdet():
    rng = np.random.default_rng(4)
    for _ in range(30):
        n = int(rng.integers(1, 6))
        a = rng.normal(size=(n, n))
        m = a @ a.T
        want = 0.5 * np.linalg.slogdet(np.eye(n) + m)[1] / math.log(2)
        assert abs(log_det_rate(m) - want) < 1e-9


def test_log_det_rate_edges():
    assert log_det_rate(np.zeros((0, 0))) == 0.0
    assert log_det_rate(np.zeros((3, 3))) == 0.0
    assert abs(log_det_rate(np.array([[3.0]])) - 1.0) < 1e-15
    with pytest.raises(ValueError, match="square"):
        log_det_rate(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="symmetric"):
        log_det_rate(np.array([[1.0, 0.5], [0.0, 1.0]]))
    with pytest.raises(ValueError, match="eigenvalue"):
        log_det_rate(-2.0 * np.eye(2))


def test_plain_entropy_treats_tiny_mass_as_zero():
    marg = np.array([1.0, 1e-16])
    assert _plain_entropy(marg) == 0.0
