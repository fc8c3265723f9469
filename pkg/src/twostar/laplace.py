"""Numerical check of the Laplace-method rate for the integrals b_{l,n}.

b_{l,n} = integral of x^l exp{-n x^2 eta(x)} over the real line, with
eta(x) = a1/2 + (a3/6) x + (b4/24) x^2 kept strictly positive by the
constraint 3 b4 a1 > a3^2. The closed-form predictions decay like
n^{-(l+1)/2} (even l) or n^{-(l+2)/2} (odd l), and convergence_check
measures how fast the quadrature value approaches them.
"""

import math
from dataclasses import dataclass

from scipy.integrate import quad

from ._validation import check_count, check_positive, check_real


class QuadratureError(RuntimeError):
    """Quadrature failed to converge; the result is not usable."""


def default_b4(a1, a3):
    """Default quartic coefficient: max(1, 2 a3^2 / (3 a1)).

    Any b4 above a3^2/(3 a1) is admissible; this choice keeps a safety
    factor of two and stays valid when a3 = 0.
    """
    a1 = check_positive(a1, "a1")
    a3 = check_real(a3, "a3")
    return max(1.0, 2.0 * a3 * a3 / (3.0 * a1))


@dataclass(frozen=True)
class LaplaceSpec:
    """Coefficients and scale for one integral b_{l,n}."""

    a1: float
    a3: float
    b4: float
    l: int
    n: float

    def __post_init__(self):
        object.__setattr__(self, "a1", check_positive(self.a1, "a1"))
        object.__setattr__(self, "a3", check_real(self.a3, "a3"))
        object.__setattr__(self, "b4", check_real(self.b4, "b4"))
        if not 3.0 * self.b4 * self.a1 > self.a3 * self.a3:
            raise ValueError(
                f"need 3 b4 a1 > a3^2 so eta stays positive; "
                f"got a1={self.a1}, a3={self.a3}, b4={self.b4}"
            )
        check_count(self.l, "l", minimum=0)
        object.__setattr__(self, "n", check_positive(self.n, "n"))

    @property
    def d(self):
        """Twice the infimum of eta; positive by the coefficient constraint."""
        return self.a1 - self.a3 * self.a3 / (3.0 * self.b4)

    def truncation_radius(self):
        """X with n d X^2 / 2 = 80, bounding the dropped tail below 1e-34."""
        return math.sqrt(160.0 / (self.n * self.d))


def b_integral(spec, radius_scale=1.0):
    """Evaluate b_{l,n} by adaptive quadrature on the folded half line.

    The symmetric and antisymmetric parts are combined analytically:

        even l:  integral_0^X x^l (e^{-(g-h)} + e^{-(g+h)}) dx
        odd l:  -integral_0^X x^l (e^{-(g-h)} - e^{-(g+h)}) dx

    with g = n x^2 (a1/2 + (b4/24) x^2) and h = n (a3/6) x^3, so the
    near-cancellation of the odd case never happens in floating point.
    Both exponents are bounded below by n d x^2 / 2, which also gives the
    tail bound behind the truncation radius. radius_scale widens the
    truncation interval (used to test its soundness). Raises
    QuadratureError when the adaptive rule reports non-convergence.
    """
    n = spec.n
    a1, a3, b4, l = spec.a1, spec.a3, spec.b4, spec.l
    x_max = spec.truncation_radius() * radius_scale
    even = l % 2 == 0

    def integrand(x):
        g = n * x * x * (0.5 * a1 + b4 / 24.0 * x * x)
        h = n * (a3 / 6.0) * x**3
        if even:
            return x**l * (math.exp(-(g - h)) + math.exp(-(g + h)))
        return x**l * (math.exp(-(g - h)) - math.exp(-(g + h)))

    value, abserr, info, *rest = quad(
        integrand, 0.0, x_max, epsabs=1e-280, epsrel=1e-11, limit=200,
        full_output=1,
    )
    if rest:
        raise QuadratureError(f"quadrature did not converge: {rest[0]}")
    return value if even else -value


def _even_normal_moment(k):
    # E Z^k for standard normal Z and even k: (k-1)!!
    result = 1
    for factor in range(k - 1, 0, -2):
        result *= factor
    return float(result)


def asymptotic_prediction(spec):
    """Closed-form leading term for b_{l,n}.

    Even l: D_l / n^{(l+1)/2} with D_l = sqrt(2 pi / a1^{l+1}) E Z^l.
    Odd l: -C_l / n^{(l+2)/2} with
    C_l = (a3/6) sqrt(2 pi / a1^{l+4}) E Z^{l+3}.
    """
    a1, a3, l, n = spec.a1, spec.a3, spec.l, spec.n
    if l % 2 == 0:
        d_l = math.sqrt(2.0 * math.pi / a1 ** (l + 1)) * _even_normal_moment(l)
        return d_l / n ** ((l + 1) / 2.0)
    c_l = (a3 / 6.0) * math.sqrt(2.0 * math.pi / a1 ** (l + 4)) * _even_normal_moment(l + 3)
    return -c_l / n ** ((l + 2) / 2.0)


@dataclass(frozen=True)
class ConvergenceRow:
    """One (l, n) entry of a convergence table."""

    l: int
    n: float
    integral: float
    prediction: float
    ratio: float


def convergence_check(a1, a3, b4, l, n_grid):
    """Quadrature-vs-prediction ratios along an increasing n grid.

    The ratio is NaN when the prediction is exactly zero (the caller then
    asserts that the integral is below an absolute tolerance instead).
    """
    n_grid = [check_positive(n, "n") for n in n_grid]
    if any(b >= a for a, b in zip(n_grid[1:], n_grid)):
        raise ValueError("n_grid must be strictly increasing")
    rows = []
    for n in n_grid:
        spec = LaplaceSpec(a1=a1, a3=a3, b4=b4, l=l, n=n)
        integral = b_integral(spec)
        prediction = asymptotic_prediction(spec)
        ratio = integral / prediction if prediction != 0.0 else math.nan
        rows.append(ConvergenceRow(l=l, n=n, integral=integral, prediction=prediction, ratio=ratio))
    return rows
