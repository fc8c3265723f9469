"""Domain classification, the magnetization fixed point, and limit constants.

Everything here is driven by the scalar fixed-point equation

    m = tanh(2 theta2 m + theta1),

whose relevant root determines the limiting edge density (1+m)/2 and all
constants appearing in the normal limit laws of the edge statistics.
"""

import enum
import math
import warnings
from dataclasses import dataclass

from ._validation import check_n
from .model import Beta, Theta


class DomainClass(enum.Enum):
    """Partition of the parameter space by fixed-point structure.

    Theta11, Theta12, Theta13 make up the uniqueness region (one relevant
    root); Theta2 is the non-uniqueness region (two symmetric roots, the
    positive one reported); Theta3 is the critical point (0, 1/2).
    """

    THETA11 = "Theta11"
    THETA12 = "Theta12"
    THETA13 = "Theta13"
    THETA2 = "Theta2"
    THETA3 = "Theta3"


class CriticalPointError(ValueError):
    """Raised when limit constants are requested at the critical point."""


class NearCriticalWarning(UserWarning):
    """The solved root is numerically indistinguishable from zero."""


def classify(t):
    """Assign t to its domain class.

    theta1 is compared to 0 exactly: the Theta2 / Theta3 behavior holds
    only at exact symmetry, so callers wanting those classes must pass
    theta1 = 0 literally.
    """
    if t.theta2 <= 0:
        raise ValueError(f"theta2 must be positive, got {t.theta2}")
    if t.theta1 > 0:
        return DomainClass.THETA12
    if t.theta1 < 0:
        return DomainClass.THETA13
    if t.theta2 < 0.5:
        return DomainClass.THETA11
    if t.theta2 > 0.5:
        return DomainClass.THETA2
    return DomainClass.THETA3


def _bisect_root(f, lo, hi, width=1e-13):
    """Bisection for a sign change of f on [lo, hi] down to the given width."""
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ValueError("root not bracketed")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo = mid
            flo = fm
    return 0.5 * (lo + hi)


def _positive_root(theta1, theta2):
    """Unique positive root of t = tanh(2 theta2 t + theta1), theta1 >= 0.

    Requires a sign change on (0, 1), which holds for theta1 > 0 and for
    theta1 = 0 with theta2 > 1/2. Bisection to width 1e-13, then up to 3
    Newton polish steps on g(t) = tanh(2 theta2 t + theta1) - t.
    """

    def g(t):
        return math.tanh(2.0 * theta2 * t + theta1) - t

    root = _bisect_root(g, 1e-15, 1.0 - 1e-15)
    for _ in range(3):
        th = math.tanh(2.0 * theta2 * root + theta1)
        gprime = 2.0 * theta2 * (1.0 - th * th) - 1.0
        if abs(gprime) < 1e-8:
            break
        nxt = root - (th - root) / gprime
        if not 0.0 < nxt < 1.0:
            break
        root = nxt
    return root


def solve_m(t):
    """The relevant root m of the fixed-point equation for Theta t.

    Returns 0 exactly on Theta11 and Theta3; the unique positive root on
    Theta12 and Theta2; the unique negative root (by symmetry) on Theta13.
    The residual |m - tanh(2 theta2 m + theta1)| is below 1e-12.
    """
    domain = classify(t)
    if domain in (DomainClass.THETA11, DomainClass.THETA3):
        return 0.0
    if domain is DomainClass.THETA12:
        return _positive_root(t.theta1, t.theta2)
    if domain is DomainClass.THETA13:
        # tanh is odd, so the root is minus the mirrored positive root.
        return -_positive_root(-t.theta1, t.theta2)
    root = _positive_root(0.0, t.theta2)
    if root < 1e-8:
        warnings.warn(
            "positive root is numerically zero; theta2 is too close to the "
            "critical value 1/2 to resolve the non-uniqueness branch",
            NearCriticalWarning,
        )
    return root


@dataclass(frozen=True)
class AsymptoticConstants:
    """Closed-form limit constants at a Theta away from the critical point.

    m is the magnetization root; mu, tau1, tau2 parametrize the normal
    limits of the centered edge statistics; eta1, eta2 are the auxiliary-
    field counterparts (eta_i = tau_i + 1/theta2); a1..a4 are the Taylor
    coefficients of the field log-density at its mode; p0_plus and
    p0_minus are the limiting degree fractions (1 +/- m)/2.
    """

    m: float
    mu: float
    tau1: float
    tau2: float
    eta1: float
    eta2: float
    a1: float
    a2: float
    a3: float
    a4: float
    p0_plus: float
    p0_minus: float


def constants(t):
    """All limit constants at t; raises CriticalPointError on Theta3."""
    domain = classify(t)
    if domain is DomainClass.THETA3:
        raise CriticalPointError("critical point: limit constants undefined")
    th2 = t.theta2
    m = solve_m(t)
    s = 1.0 - m * m
    one_minus = 1.0 - th2 * s
    one_minus_2 = 1.0 - 2.0 * th2 * s
    return AsymptoticConstants(
        m=m,
        mu=2.0 * th2 * m * s / (one_minus * one_minus_2),
        tau1=2.0 * s / one_minus_2,
        tau2=s / one_minus,
        eta1=1.0 / (th2 * one_minus_2),
        eta2=1.0 / (th2 * one_minus),
        a1=th2 - th2 * th2 * s,
        a2=th2 * th2 * s,
        a3=2.0 * th2**3 * m * s,
        a4=2.0 * th2**4 * s * (1.0 - 3.0 * m * m),
        p0_plus=(1.0 + m) / 2.0,
        p0_minus=(1.0 - m) / 2.0,
    )


def check_stability(t):
    """Second derivative q''(2m) = (theta2/2)(1 - 2 theta2 (1 - m^2)).

    Strictly positive away from the critical point, zero at it; the
    positivity is what makes the fixed point a stable maximum.
    """
    m = solve_m(t)
    th = math.tanh(2.0 * t.theta2 * m + t.theta1)
    return t.theta2 / 2.0 - t.theta2 * t.theta2 * (1.0 - th * th)


def _density_objective(b, p):
    return (
        b.beta1 * p
        + b.beta2 * p * p
        - p * math.log(p)
        - (1.0 - p) * math.log(1.0 - p)
    )


_P_LO = 1e-9
_P_HI = 1.0 - 1e-9


def optimal_density(b):
    """Maximizer p* of beta1 p + beta2 p^2 + H(p) over (0, 1).

    H is the binary entropy. The objective can have two local maxima (it
    is bimodal past the phase boundary), so a dense grid scan brackets the
    global one before golden-section search; a final Newton step on the
    stationarity condition p = logistic(beta1 + 2 beta2 p) polishes the
    result when it stays interior.
    """
    grid_size = 4097
    step = (_P_HI - _P_LO) / (grid_size - 1)
    best_k = 0
    best_v = -math.inf
    for k in range(grid_size):
        v = _density_objective(b, _P_LO + k * step)
        if v > best_v:
            best_v = v
            best_k = k
    lo = _P_LO + max(best_k - 1, 0) * step
    hi = _P_LO + min(best_k + 1, grid_size - 1) * step

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc = _density_objective(b, c)
    fd = _density_objective(b, d)
    while hi - lo > 1e-12:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = _density_objective(b, c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = _density_objective(b, d)
    p = 0.5 * (lo + hi)

    for _ in range(5):
        fprime = b.beta1 + 2.0 * b.beta2 * p - math.log(p / (1.0 - p))
        fsecond = 2.0 * b.beta2 - 1.0 / (p * (1.0 - p))
        if fsecond >= 0.0:
            break
        nxt = p - fprime / fsecond
        if not _P_LO < nxt < _P_HI:
            break
        p = nxt
    return p


def limiting_log_partition(b):
    """Limit of (1/n^2) log Z_n: half the supremum of the density objective."""
    return 0.5 * _density_objective(b, optimal_density(b))


@dataclass(frozen=True)
class EdgeLawBranch:
    """One conditional normal branch: (n-1)(S1 - center) => N(mean, variance)."""

    center: float
    mean: float
    variance: float
    weight: float


@dataclass(frozen=True)
class EdgeLaw:
    """Predicted law of S1 at size n: a mixture of normal branches."""

    n: int
    scale: float
    branches: tuple


def predicted_edge_law(t, n):
    """Predicted limit law of S1 at size n.

    On the uniqueness region this is a single normal branch centered at m;
    on the non-uniqueness region, two branches of weight 1/2 centered at
    +m and -m (the conditional limits given the phase). Raises
    CriticalPointError at the critical point.
    """
    n = check_n(n)
    domain = classify(t)
    c = constants(t)
    if domain is DomainClass.THETA2:
        branches = (
            EdgeLawBranch(center=c.m, mean=-c.mu, variance=c.tau1, weight=0.5),
            EdgeLawBranch(center=-c.m, mean=c.mu, variance=c.tau1, weight=0.5),
        )
    else:
        branches = (EdgeLawBranch(center=c.m, mean=-c.mu, variance=c.tau1, weight=1.0),)
    return EdgeLaw(n=n, scale=float(n - 1), branches=branches)
