"""Brute-force enumeration oracle for small n.

Enumerates all 2^{n(n-1)/2} labeled graphs, so n is capped at 6 (32768
graphs). Used as the ground truth that the samplers are tested against.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from ._validation import check_n
from .model import Beta

MAX_EXACT_N = 6


def _enumerate_statistics(n):
    """Edge and two-star counts for every graph on n vertices.

    Graph g is encoded by the bitmask of its adjacency array: bit p of the
    mask is the entry at flat pair index p. Returns (edge_counts,
    two_star_counts), each of length 2^{n(n-1)/2}.
    """
    m = n * (n - 1) // 2
    rows, cols = np.triu_indices(n, k=1)
    masks = np.arange(1 << m, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(m)) & 1
    deg = np.zeros((1 << m, n), dtype=np.int64)
    for p in range(m):
        deg[:, rows[p]] += bits[:, p]
        deg[:, cols[p]] += bits[:, p]
    edge_counts = bits.sum(axis=1)
    two_star_counts = (deg * (deg - 1) // 2).sum(axis=1)
    return edge_counts, two_star_counts


@dataclass(frozen=True)
class ExactModel:
    """Exact distribution over all graphs on n vertices.

    log_weights holds the unnormalized log weight of every graph (index =
    adjacency bitmask); log_z is their log-sum-exp; edge_pmf[e] is the
    exact probability that the graph has e edges.
    """

    n: int
    beta: Beta | None
    edge_counts: np.ndarray = field(repr=False)
    two_star_counts: np.ndarray = field(repr=False)
    log_weights: np.ndarray = field(repr=False)
    log_z: float
    edge_pmf: np.ndarray = field(repr=False)

    @property
    def z(self):
        return float(np.exp(self.log_z))

    @property
    def probabilities(self):
        return np.exp(self.log_weights - self.log_z)

    def _moments(self, values):
        p = self.probabilities
        mean = float(p @ values)
        return mean, float(p @ (values - mean) ** 2)

    @property
    def mean_edges(self):
        return self._moments(self.edge_counts)[0]

    @property
    def var_edges(self):
        return self._moments(self.edge_counts)[1]

    @property
    def mean_two_stars(self):
        return self._moments(self.two_star_counts)[0]

    @property
    def var_two_stars(self):
        return self._moments(self.two_star_counts)[1]


def _build(n, beta, log_weights, edge_counts, two_star_counts):
    log_z = float(logsumexp(log_weights))
    probs = np.exp(log_weights - log_z)
    m = n * (n - 1) // 2
    edge_pmf = np.bincount(edge_counts, weights=probs, minlength=m + 1)
    edge_pmf /= edge_pmf.sum()
    return ExactModel(
        n=n,
        beta=beta,
        edge_counts=edge_counts,
        two_star_counts=two_star_counts,
        log_weights=log_weights,
        log_z=log_z,
        edge_pmf=edge_pmf,
    )


def enumerate_exact(n, b):
    """Exact model at Beta b; n must satisfy 2 <= n <= 6."""
    n = check_n(n, minimum=2, maximum=MAX_EXACT_N)
    edge_counts, two_star_counts = _enumerate_statistics(n)
    log_weights = (b.beta2 / (n - 1)) * two_star_counts + (b.beta1 + b.beta2 / (n - 1)) * edge_counts
    return _build(n, b, log_weights.astype(np.float64), edge_counts, two_star_counts)


def enumerate_uniform(n):
    """Uniform distribution over all graphs on n vertices.

    Kept as a code path of its own: the in-space limit beta2 -> 0 with
    beta1 = 0 is not representable by Beta, but the uniform law is the
    reference case (edge count is Binomial(n(n-1)/2, 1/2)).
    """
    n = check_n(n, minimum=2, maximum=MAX_EXACT_N)
    edge_counts, two_star_counts = _enumerate_statistics(n)
    log_weights = np.zeros(len(edge_counts), dtype=np.float64)
    return _build(n, None, log_weights, edge_counts, two_star_counts)
