"""Edge statistics S1, S2 and the moment estimators S3, S4.

S1 is the edge density recentred to [-1, 1] and S2 the scaled sample
variance of the degrees. Their limits (m and tau2) invert in closed form
to the model parameters, which is what s3_s4 implements:

    S3 = (S1^2 + S2 - 1) / (S2 - S1^2 S2)   -> theta2
    S4 = atanh(S1) - 2 S3 S1                -> theta1
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import kstest
from sklearn.base import BaseEstimator

from .model import degrees, edge_count
from .sampling import SampleSet

# Sign splits with positive fraction inside this band are treated as the
# symmetric two-phase regime when resolving the sign of theta1_hat.
BALANCE_BAND = (0.25, 0.75)


class DegenerateSampleError(ValueError):
    """Raised when draws carry no usable degree variation."""


def s1(g):
    """S1 = (2 dbar - (n-1))/(n-1), in [-1, 1]."""
    n = g.n
    return (4.0 * edge_count(g) - n * (n - 1)) / (n * (n - 1))


def s2(g):
    """S2 = (4/(n-1)^2) sum_i (d_i - dbar)^2, nonnegative."""
    n = g.n
    d = degrees(g).astype(np.float64)
    return float(4.0 * ((d - d.mean()) ** 2).sum()) / (n - 1) ** 2


def s3_s4(s1_value, s2_value):
    """Invert (S1, S2) to (theta2_hat, theta1_hat).

    Raises DegenerateSampleError when S2 = 0 or |S1| = 1 (regular, empty,
    or complete graphs carry no information), and ValueError when the
    inputs are outside the statistics' range.
    """
    s1_value = float(s1_value)
    s2_value = float(s2_value)
    if abs(s1_value) > 1.0:
        raise ValueError(f"S1 must lie in [-1, 1], got {s1_value}")
    if s2_value < 0.0:
        raise ValueError(f"S2 must be nonnegative, got {s2_value}")
    if s2_value == 0.0 or abs(s1_value) == 1.0:
        raise DegenerateSampleError(
            "degenerate sample: S2 = 0 or |S1| = 1 (regular, empty, or complete graph)"
        )
    s3 = (s1_value * s1_value + s2_value - 1.0) / (s2_value - s1_value * s1_value * s2_value)
    s4 = math.atanh(s1_value) - 2.0 * s3 * s1_value
    return s3, s4


def ks_statistic(samples, mean, variance):
    """Sup distance between the empirical CDF and Normal(mean, variance)."""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.size < 2:
        raise ValueError("need at least 2 samples")
    if not variance > 0.0:
        raise ValueError(f"variance must be positive, got {variance}")
    return float(kstest(samples, "norm", args=(mean, math.sqrt(variance))).statistic)


def degree_concentration(g, m):
    """Worst-case deviation of the degree fractions from their predicted value.

    The prediction is (1 + sigma |m|)/2 where sigma is the sign of the
    observed S1 (ties to +1), so the branch is matched to the data; m may
    be passed with either sign.
    """
    n = g.n
    sigma = 1.0 if s1(g) >= 0.0 else -1.0
    target = (1.0 + sigma * abs(m)) / 2.0
    d = degrees(g).astype(np.float64)
    return float(np.max(np.abs(d / (n - 1) - target)))


@dataclass(frozen=True)
class EstimateReport:
    """Point estimates plus per-branch diagnostics for one SampleSet.

    n_draws counts the draws actually used; n_degenerate the excluded
    ones. Branch fields are None when the branch holds fewer than two
    draws. symmetric records whether the sign split fell in BALANCE_BAND,
    in which case theta1_hat is reported via the positive branch.
    """

    theta2_hat: float
    theta1_hat: float
    n_draws: int
    n_degenerate: int
    frac_positive: float
    s1_mean: float
    s1_absmean: float
    s2_mean: float
    ks_pos: float | None
    ks_neg: float | None
    pos_count: int
    neg_count: int
    pos_mean: float | None
    pos_var: float | None
    neg_mean: float | None
    neg_var: float | None
    s1_stderr: float
    s2_stderr: float
    symmetric: bool

    def to_json_dict(self):
        """The fixed external field set, in its documented order."""
        return {
            "theta2_hat": self.theta2_hat,
            "theta1_hat": self.theta1_hat,
            "n_draws": self.n_draws,
            "n_degenerate": self.n_degenerate,
            "frac_positive": self.frac_positive,
            "s1_mean": self.s1_mean,
            "s1_absmean": self.s1_absmean,
            "s2_mean": self.s2_mean,
            "ks_pos": self.ks_pos,
            "ks_neg": self.ks_neg,
        }


def _branch_summary(values):
    count = int(values.size)
    if count == 0:
        return count, None, None, None
    mean = float(values.mean())
    if count < 2:
        return count, mean, None, None
    var = float(values.var(ddof=1))
    ks = ks_statistic(values, mean, var) if var > 0.0 else None
    return count, mean, var, ks


def estimate(sample_set):
    """Pooled moment estimate over a SampleSet.

    Degenerate draws are excluded (their count is reported); the remaining
    draws are pooled with mean |S1| as the magnetization-magnitude
    estimate and mean S2 as the tau2 estimate. theta1_hat uses the
    positive branch when the sign split is near-balanced, the signed mean
    otherwise.
    """
    if isinstance(sample_set, SampleSet):
        s1_all = sample_set.s1_values()
        s2_all = sample_set.s2_values()
    else:
        raise TypeError("estimate expects a SampleSet")
    if s1_all.size == 0:
        raise ValueError("empty sample set")

    usable = ~((s2_all == 0.0) | (np.abs(s1_all) == 1.0))
    n_degenerate = int((~usable).sum())
    if not usable.any():
        raise DegenerateSampleError("all draws are degenerate")
    s1_used = s1_all[usable]
    s2_used = s2_all[usable]
    n_draws = int(s1_used.size)

    positive = s1_used >= 0.0
    frac_positive = float(positive.mean())
    s1_mean = float(s1_used.mean())
    s1_absmean = float(np.abs(s1_used).mean())
    s2_mean = float(s2_used.mean())

    theta2_hat, _ = s3_s4(s1_absmean, s2_mean)
    symmetric = BALANCE_BAND[0] <= frac_positive <= BALANCE_BAND[1]
    s1_for_sign = s1_absmean if symmetric else s1_mean
    theta1_hat = math.atanh(s1_for_sign) - 2.0 * theta2_hat * s1_for_sign

    pos_count, pos_mean, pos_var, ks_pos = _branch_summary(s1_used[positive])
    neg_count, neg_mean, neg_var, ks_neg = _branch_summary(s1_used[~positive])

    return EstimateReport(
        theta2_hat=theta2_hat,
        theta1_hat=theta1_hat,
        n_draws=n_draws,
        n_degenerate=n_degenerate,
        frac_positive=frac_positive,
        s1_mean=s1_mean,
        s1_absmean=s1_absmean,
        s2_mean=s2_mean,
        ks_pos=ks_pos,
        ks_neg=ks_neg,
        pos_count=pos_count,
        neg_count=neg_count,
        pos_mean=pos_mean,
        pos_var=pos_var,
        neg_mean=neg_mean,
        neg_var=neg_var,
        s1_stderr=float(s1_used.std(ddof=1) / math.sqrt(n_draws)) if n_draws > 1 else 0.0,
        s2_stderr=float(s2_used.std(ddof=1) / math.sqrt(n_draws)) if n_draws > 1 else 0.0,
        symmetric=symmetric,
    )


class TwoStarMomentEstimator(BaseEstimator):
    """Estimator-style wrapper over estimate().

    fit(sample_set) runs the pooled moment estimate and exposes
    theta1_, theta2_, and the full report_.
    """

    def fit(self, X, y=None):
        report = estimate(X)
        self.report_ = report
        self.theta1_ = report.theta1_hat
        self.theta2_ = report.theta2_hat
        return self
