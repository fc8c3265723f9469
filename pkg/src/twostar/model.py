"""Graph representation, model parameters, and sufficient statistics.

The model places weight exp{(beta2/(n-1)) T(x) + (beta1 + beta2/(n-1)) E(x)}
on a labeled simple graph x with n vertices, where E is the number of edges
and T the number of two-stars (paths of length two).
"""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_n, check_positive, check_real


@dataclass(frozen=True)
class Beta:
    """Natural parameters (beta1, beta2) with beta2 > 0."""

    beta1: float
    beta2: float

    def __post_init__(self):
        object.__setattr__(self, "beta1", check_real(self.beta1, "beta1"))
        object.__setattr__(self, "beta2", check_positive(self.beta2, "beta2"))

    def to_theta(self):
        return reparametrize(self)


@dataclass(frozen=True)
class Theta:
    """Reparametrized parameters theta1 = (beta1+beta2)/2, theta2 = beta2/4."""

    theta1: float
    theta2: float

    def __post_init__(self):
        object.__setattr__(self, "theta1", check_real(self.theta1, "theta1"))
        object.__setattr__(self, "theta2", check_positive(self.theta2, "theta2"))

    def to_beta(self):
        return inverse(self)


def reparametrize(b):
    """Map Beta to Theta: theta1 = (beta1 + beta2)/2, theta2 = beta2/4."""
    return Theta(theta1=(b.beta1 + b.beta2) / 2.0, theta2=b.beta2 / 4.0)


def inverse(t):
    """Map Theta back to Beta: beta2 = 4 theta2, beta1 = 2 theta1 - 4 theta2."""
    return Beta(beta1=2.0 * t.theta1 - 4.0 * t.theta2, beta2=4.0 * t.theta2)


def pair_index(n, i, j):
    """Flat row-major index of the upper-triangular pair (i, j), i < j."""
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got i={i}, j={j}, n={n}")
    return i * (n - 1) - i * (i - 1) // 2 + (j - i - 1)


def pair_indices(n):
    """All pairs (i, j) with i < j in row-major order, as two index arrays."""
    return np.triu_indices(n, k=1)


class Graph:
    """Labeled simple graph stored as a flat upper-triangular 0/1 array.

    Parameters
    ----------
    n : int
        Number of vertices, at least 2. Vertices are labeled 0 .. n-1.
    adj : array-like of {0, 1}, length n(n-1)/2
        Entry for the pair (i, j), i < j, in row-major order.
    """

    __slots__ = ("n", "adj")

    def __init__(self, n, adj):
        n = check_n(n)
        adj = np.ascontiguousarray(adj, dtype=np.uint8)
        m = n * (n - 1) // 2
        if adj.shape != (m,):
            raise ValueError(f"adj must have length {m} for n={n}, got shape {adj.shape}")
        if np.any(adj > 1):
            raise ValueError("adj entries must be 0 or 1")
        self.n = n
        self.adj = adj

    @classmethod
    def empty(cls, n):
        return cls(n, np.zeros(n * (n - 1) // 2, dtype=np.uint8))

    @classmethod
    def complete(cls, n):
        return cls(n, np.ones(n * (n - 1) // 2, dtype=np.uint8))

    @classmethod
    def from_edges(cls, n, edges):
        adj = np.zeros(n * (n - 1) // 2, dtype=np.uint8)
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop ({i}, {j}) is not representable")
            if i > j:
                i, j = j, i
            adj[pair_index(n, i, j)] = 1
        return cls(n, adj)

    @classmethod
    def erdos_renyi(cls, n, p, rng):
        """Each pair present independently with probability p."""
        m = n * (n - 1) // 2
        return cls(n, (rng.random(m) < p).astype(np.uint8))

    def has_edge(self, i, j):
        if i > j:
            i, j = j, i
        return bool(self.adj[pair_index(self.n, i, j)])

    def edges(self):
        """Edge list [(i, j), ...] with i < j, row-major order."""
        rows, cols = pair_indices(self.n)
        present = self.adj.astype(bool)
        return list(zip(rows[present].tolist(), cols[present].tolist()))

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.adj, other.adj)
        )

    def __repr__(self):
        return f"Graph(n={self.n}, edges={int(self.adj.sum())})"


def degrees(g):
    """Degree vector of g as an int64 array of length n."""
    d = np.zeros(g.n, dtype=np.int64)
    rows, cols = pair_indices(g.n)
    np.add.at(d, rows, g.adj)
    np.add.at(d, cols, g.adj)
    return d


def edge_count(g):
    """E(x), the number of edges."""
    return int(g.adj.sum())


def two_star_count(g):
    """T(x) = sum_i C(d_i, 2), the number of two-stars."""
    d = degrees(g)
    return int((d * (d - 1) // 2).sum())


def log_weight(g, b):
    """Unnormalized log weight of g under Beta b.

    Computed from the sufficient statistics as
    (beta2/(n-1)) T(x) + (beta1 + beta2/(n-1)) E(x).
    """
    n = g.n
    return (b.beta2 / (n - 1)) * two_star_count(g) + (b.beta1 + b.beta2 / (n - 1)) * edge_count(g)


def log_weight_degree_form(g, b):
    """Same value as log_weight via the degree identity.

    Equals (beta2/(2(n-1))) sum_i d_i^2 + (beta1/2) sum_i d_i; used by the
    samplers, where degree increments are cheap to maintain.
    """
    n = g.n
    d = degrees(g).astype(np.float64)
    return (b.beta2 / (2.0 * (n - 1))) * float((d * d).sum()) + (b.beta1 / 2.0) * float(d.sum())


def graph_to_text(g):
    """Serialize g: first line 'n', then one 'i j' line per edge (0-based)."""
    lines = [str(g.n)]
    lines.extend(f"{i} {j}" for i, j in g.edges())
    return "\n".join(lines) + "\n"


def graph_from_text(text):
    """Parse the format written by graph_to_text."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty graph text")
    n = int(lines[0])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph.from_edges(n, edges)
