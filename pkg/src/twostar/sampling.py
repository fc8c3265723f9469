"""Markov chain samplers for the two-star model.

Two independent samplers are provided. The auxiliary sampler augments the
graph with a Gaussian field phi (one coordinate per vertex) that decouples
the two-star interaction: given phi, the edges are independent, and given
the graph, the phi_i are independent normals. Alternating the two blocks
gives an exact Gibbs sampler whose graph marginal is the model. The
Glauber sampler resamples one edge at a time from its full conditional and
serves as an independent correctness oracle.

Spins are kept as y_ij = 2 x_ij - 1 in {-1, +1}; k_i = sum_j y_ij is the
centered degree, related to the ordinary degree by d_i = (k_i + n - 1)/2.
"""

import io
import math
from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed
from scipy.special import expit
from sklearn.base import BaseEstimator

from ._validation import (
    check_count,
    check_n,
    check_probability,
    check_seed,
)
from .model import Graph, Theta

INIT_POLICIES = ("iid-fair-coin", "all-plus", "all-minus", "erdos-renyi")
REGIMES = ("fresh", "thinning")
KINDS = ("auxiliary", "glauber")


def _logistic(x):
    # scalar, overflow-safe
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


class ChainState:
    """Mutable state of one chain: spins, auxiliary field, and bookkeeping.

    Attributes
    ----------
    n : int
        Number of vertices.
    theta : Theta
        Model parameters.
    y : (n, n) int8 array
        Symmetric spin matrix with zero diagonal, y_ij = 2 x_ij - 1.
    phi : (n,) float array
        Auxiliary Gaussian field, refreshed by update_phi.
    k : (n,) int64 array
        Centered degrees k_i = sum_{j != i} y_ij, maintained alongside y.
    rng : numpy Generator
        The chain's private random stream.
    sweeps_done : int
        Number of completed sweeps.
    """

    __slots__ = ("n", "theta", "y", "phi", "k", "rng", "sweeps_done",
                 "_rows", "_cols", "_beta")

    def __init__(self, n, theta, y, rng):
        self.n = n
        self.theta = theta
        self.y = y
        self.phi = np.zeros(n, dtype=np.float64)
        self.k = y.sum(axis=1, dtype=np.int64)
        self.rng = rng
        self.sweeps_done = 0
        self._rows, self._cols = np.triu_indices(n, k=1)
        self._beta = theta.to_beta()

    @classmethod
    def initialize(cls, n, theta, rng, init="iid-fair-coin", er_p=0.5):
        """Fresh chain with spins drawn from the given init policy."""
        n = check_n(n)
        if init not in INIT_POLICIES:
            raise ValueError(f"unknown init policy {init!r}")
        m = n * (n - 1) // 2
        if init == "all-plus":
            bits = np.ones(m, dtype=np.int8)
        elif init == "all-minus":
            bits = -np.ones(m, dtype=np.int8)
        else:
            p = 0.5 if init == "iid-fair-coin" else check_probability(er_p, "er_p")
            bits = np.where(rng.random(m) < p, 1, -1).astype(np.int8)
        rows, cols = np.triu_indices(n, k=1)
        y = np.zeros((n, n), dtype=np.int8)
        y[rows, cols] = bits
        y[cols, rows] = bits
        return cls(n, theta, y, rng)

    def to_graph(self):
        """Current spins as a Graph (x_ij = (y_ij + 1)/2)."""
        bits = ((self.y[self._rows, self._cols] + 1) // 2).astype(np.uint8)
        return Graph(self.n, bits)

    def recomputed_k(self):
        return self.y.sum(axis=1, dtype=np.int64)

    def check_consistency(self):
        """Verify the maintained k against a recomputation from y."""
        if not np.array_equal(self.k, self.recomputed_k()):
            raise AssertionError("maintained k is inconsistent with y")

    def statistics(self):
        """(edges, two_stars, s1, s2) of the current graph."""
        n = self.n
        k = self.k
        edges = int((k.sum() + n * (n - 1)) // 4)
        d = (k + (n - 1)) // 2
        two_stars = int((d * (d - 1) // 2).sum())
        kbar = k.mean()
        s1 = kbar / (n - 1)
        s2 = float(((k - kbar) ** 2).sum()) / (n - 1) ** 2
        return edges, two_stars, float(s1), s2


def update_phi(state):
    """Refresh the auxiliary field from its conditional given the spins.

    Each phi_i is drawn independently from
    Normal(k_i/(n-1), 1/((n-1) theta2)), one draw per vertex.
    """
    n = state.n
    sd = 1.0 / math.sqrt((n - 1) * state.theta.theta2)
    state.phi = state.k / (n - 1) + sd * state.rng.standard_normal(n)
    return state


def update_y(state):
    """Resample every spin from its conditional given the field.

    Given phi the spins are independent with
    P(y_ij = +1 | phi) = e^w / (2 cosh w), w = theta2 (phi_i + phi_j) + theta1,
    which equals logistic(2w). Uniform variates are consumed in row-major
    pair order so the update is reproducible.
    """
    t = state.theta
    rows, cols = state._rows, state._cols
    w = t.theta2 * (state.phi[rows] + state.phi[cols]) + t.theta1
    u = state.rng.random(rows.shape[0])
    bits = np.where(u < expit(2.0 * w), 1, -1).astype(np.int8)
    state.y[rows, cols] = bits
    state.y[cols, rows] = bits
    state.k = state.y.sum(axis=1, dtype=np.int64)
    return state


def gibbs_sweep(state):
    """One sweep of the auxiliary sampler: phi block, then spin block."""
    update_phi(state)
    update_y(state)
    state.sweeps_done += 1
    return state


def glauber_sweep(state):
    """One systematic-scan pass resampling each edge from its conditional.

    For edge (i, j) with d'_i, d'_j the endpoint degrees excluding the
    edge, the conditional log-odds of x_ij = 1 is
    (beta2/(n-1)) (d'_i + d'_j) + beta1 + beta2/(n-1). Degrees are
    maintained incrementally across the pass.
    """
    n = state.n
    b = state._beta
    c = b.beta2 / (n - 1)
    base = b.beta1 + c
    rows, cols = state._rows, state._cols
    u = state.rng.random(rows.shape[0])
    y = state.y
    d = (state.k + (n - 1)) // 2
    for p in range(rows.shape[0]):
        i = int(rows[p])
        j = int(cols[p])
        x_old = (int(y[i, j]) + 1) >> 1
        log_odds = c * (d[i] + d[j] - 2 * x_old) + base
        x_new = 1 if u[p] < _logistic(log_odds) else 0
        if x_new != x_old:
            dd = x_new - x_old
            d[i] += dd
            d[j] += dd
            spin = np.int8(2 * x_new - 1)
            y[i, j] = spin
            y[j, i] = spin
    state.k = 2 * d - (n - 1)
    state.sweeps_done += 1
    return state


def log_f(phi, t):
    """Log of the unnormalized phi-marginal density.

    Returns -sum_{i<j} p(phi_i, phi_j) with
    p(x, y) = (theta2/2)(x^2 + y^2) - log cosh(theta2 (x + y) + theta1).
    """
    phi = np.asarray(phi, dtype=np.float64)
    rows, cols = np.triu_indices(phi.shape[0], k=1)
    z = t.theta2 * (phi[rows] + phi[cols]) + t.theta1
    az = np.abs(z)
    log_cosh = az + np.log1p(np.exp(-2.0 * az)) - math.log(2.0)
    pair = 0.5 * t.theta2 * (phi[rows] ** 2 + phi[cols] ** 2) - log_cosh
    return float(-pair.sum())


@dataclass(frozen=True)
class SamplerConfig:
    """Full description of a sampling run.

    regime "fresh" draws each record from an independent chain (seeded by
    the record index) run for burn_in sweeps; regime "thinning" runs one
    chain for burn_in sweeps and then records every gap-th sweep.
    """

    n: int
    theta: Theta
    kind: str = "auxiliary"
    num_samples: int = 1
    burn_in: int = 200
    regime: str = "fresh"
    gap: int = 1
    init: str = "iid-fair-coin"
    er_p: float = 0.5
    seed: int = 0

    def __post_init__(self):
        check_n(self.n)
        if not isinstance(self.theta, Theta):
            raise TypeError("theta must be a Theta instance")
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        check_count(self.num_samples, "num_samples")
        check_count(self.burn_in, "burn_in", minimum=0)
        if self.regime not in REGIMES:
            raise ValueError(f"regime must be one of {REGIMES}, got {self.regime!r}")
        check_count(self.gap, "gap")
        if self.init not in INIT_POLICIES:
            raise ValueError(f"init must be one of {INIT_POLICIES}, got {self.init!r}")
        check_probability(self.er_p, "er_p")
        check_seed(self.seed)

    def echo(self):
        """One-line key=value rendering, embedded as a CSV comment."""
        parts = [
            f"n={self.n}",
            f"theta1={format(self.theta.theta1, '.17g')}",
            f"theta2={format(self.theta.theta2, '.17g')}",
            f"kind={self.kind}",
            f"num_samples={self.num_samples}",
            f"burn_in={self.burn_in}",
            f"regime={self.regime}",
            f"gap={self.gap}",
            f"init={self.init}",
            f"er_p={format(self.er_p, '.17g')}",
            f"seed={self.seed}",
        ]
        return "# " + " ".join(parts)

    @classmethod
    def from_echo(cls, line):
        kv = dict(part.split("=", 1) for part in line.lstrip("# ").split())
        return cls(
            n=int(kv["n"]),
            theta=Theta(float(kv["theta1"]), float(kv["theta2"])),
            kind=kv["kind"],
            num_samples=int(kv["num_samples"]),
            burn_in=int(kv["burn_in"]),
            regime=kv["regime"],
            gap=int(kv["gap"]),
            init=kv["init"],
            er_p=float(kv["er_p"]),
            seed=int(kv["seed"]),
        )


@dataclass(frozen=True)
class SampleRecord:
    """Summary statistics of one recorded draw."""

    index: int
    edges: int
    two_stars: int
    s1: float
    s2: float

    @property
    def sign(self):
        """Sign of s1 with ties assigned to +1."""
        return 1 if self.s1 >= 0.0 else -1


@dataclass(frozen=True)
class SampleSet:
    """An ordered collection of draws plus the config that produced them."""

    config: SamplerConfig | None
    records: tuple
    graphs: tuple | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.records)

    def s1_values(self):
        return np.array([r.s1 for r in self.records], dtype=np.float64)

    def s2_values(self):
        return np.array([r.s2 for r in self.records], dtype=np.float64)

    def to_csv_text(self):
        """Deterministic CSV serialization (LF endings, 17 significant digits)."""
        buf = io.StringIO()
        if self.config is not None:
            buf.write(self.config.echo() + "\n")
        buf.write("index,edges,two_stars,s1,s2\n")
        for r in self.records:
            buf.write(
                f"{r.index},{r.edges},{r.two_stars},"
                f"{format(r.s1, '.17g')},{format(r.s2, '.17g')}\n"
            )
        return buf.getvalue()

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv_text())

    @classmethod
    def from_csv_text(cls, text):
        config = None
        records = []
        header_seen = False
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                if config is None:
                    config = SamplerConfig.from_echo(line)
                continue
            if not header_seen:
                if line != "index,edges,two_stars,s1,s2":
                    raise ValueError(f"unexpected CSV header: {line!r}")
                header_seen = True
                continue
            idx, e, t, s1, s2 = line.split(",")
            records.append(
                SampleRecord(int(idx), int(e), int(t), float(s1), float(s2))
            )
        if not header_seen:
            raise ValueError("missing CSV header")
        return cls(config=config, records=tuple(records))

    @classmethod
    def from_csv(cls, path):
        with open(path, "r") as fh:
            return cls.from_csv_text(fh.read())


_SWEEPS = {"auxiliary": gibbs_sweep, "glauber": glauber_sweep}


def _chain_rng(seed, chain_index):
    # per-chain stream independent of scheduling
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chain_index,)))


def _run_fresh_chain(config, index, keep_graph):
    sweep = _SWEEPS[config.kind]
    state = ChainState.initialize(
        config.n, config.theta, _chain_rng(config.seed, index),
        init=config.init, er_p=config.er_p,
    )
    for _ in range(config.burn_in):
        sweep(state)
    edges, two_stars, s1, s2 = state.statistics()
    bits = state.to_graph().adj if keep_graph else None
    return SampleRecord(index, edges, two_stars, s1, s2), bits


def run(config, keep_graphs=False, n_jobs=1):
    """Execute a sampling run and return its SampleSet.

    In the fresh regime, chains are independent and may execute in
    parallel (n_jobs); records are ordered by chain index either way. The
    thinning regime is inherently sequential.
    """
    if config.regime == "fresh":
        if n_jobs == 1:
            results = [
                _run_fresh_chain(config, idx, keep_graphs)
                for idx in range(config.num_samples)
            ]
        else:
            results = Parallel(n_jobs=n_jobs)(
                delayed(_run_fresh_chain)(config, idx, keep_graphs)
                for idx in range(config.num_samples)
            )
        records = tuple(r for r, _ in results)
        graphs = tuple(Graph(config.n, b) for _, b in results) if keep_graphs else None
        return SampleSet(config=config, records=records, graphs=graphs)

    sweep = _SWEEPS[config.kind]
    state = ChainState.initialize(
        config.n, config.theta, _chain_rng(config.seed, 0),
        init=config.init, er_p=config.er_p,
    )
    for _ in range(config.burn_in):
        sweep(state)
    records = []
    graphs = [] if keep_graphs else None
    for idx in range(config.num_samples):
        for _ in range(config.gap):
            sweep(state)
        edges, two_stars, s1, s2 = state.statistics()
        records.append(SampleRecord(idx, edges, two_stars, s1, s2))
        if keep_graphs:
            graphs.append(state.to_graph())
    return SampleSet(
        config=config,
        records=tuple(records),
        graphs=tuple(graphs) if keep_graphs else None,
    )


class TwoStarSampler(BaseEstimator):
    """Estimator-style front end over run().

    Parameters mirror SamplerConfig and follow the sklearn convention of
    being stored verbatim; sample() assembles the config, executes the
    run, and returns the SampleSet.

    Parameters
    ----------
    theta1, theta2 : float
        Model parameters (theta2 > 0).
    n : int
        Number of vertices.
    kind : {"auxiliary", "glauber"}
        Which sampler to use.
    num_samples : int
        Number of recorded draws.
    burn_in : int
        Sweeps discarded before the first record.
    regime : {"fresh", "thinning"}
        Independent chain per record, or one thinned chain.
    gap : int
        Sweeps between records in the thinning regime.
    init : str
        Initial spin policy; one of INIT_POLICIES.
    er_p : float
        Edge probability for the "erdos-renyi" policy.
    seed : int
        Master seed (64-bit unsigned); chains derive their own streams.
    n_jobs : int
        Parallel chains in the fresh regime; 1 means sequential.
    """

    def __init__(self, theta1=0.0, theta2=0.25, n=100, kind="auxiliary",
                 num_samples=1, burn_in=200, regime="fresh", gap=1,
                 init="iid-fair-coin", er_p=0.5, seed=0, n_jobs=1):
        self.theta1 = theta1
        self.theta2 = theta2
        self.n = n
        self.kind = kind
        self.num_samples = num_samples
        self.burn_in = burn_in
        self.regime = regime
        self.gap = gap
        self.init = init
        self.er_p = er_p
        self.seed = seed
        self.n_jobs = n_jobs

    def config(self):
        return SamplerConfig(
            n=self.n,
            theta=Theta(self.theta1, self.theta2),
            kind=self.kind,
            num_samples=self.num_samples,
            burn_in=self.burn_in,
            regime=self.regime,
            gap=self.gap,
            init=self.init,
            er_p=self.er_p,
            seed=self.seed,
        )

    def sample(self, keep_graphs=False):
        """Run the configured sampler and return the SampleSet."""
        return run(self.config(), keep_graphs=keep_graphs, n_jobs=self.n_jobs)
