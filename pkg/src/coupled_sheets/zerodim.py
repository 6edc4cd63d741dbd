"""Zero-dimensional partition functions.

Quadratic model:  Z(g) = int int exp(-nu^2 x^2 - omega^2 y^2 - g x y + J x + K y)
Sextic model:     Z(g) = int int exp(-x^6 - y^6 - g x^3 y^3), and its moments G_ab.

The sextic Z is (1/9) Gamma(1/6)^2 2F1(1/6, 1/6; 1/2; g^2/4); near g = +-2 the
connection formula in 1 - g^2/4 exposes a sixth-root branch factor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ClearanceError, DomainError, MarginError, ParityError, PoleError
from .paths import PathSpec
from .specfun import HyperParams, gamma, hyp2f1_series, hyp2f1_series_derivative, hyp2f1_transport, HyperState, transport_matrix

SEXTIC_PARAMS = HyperParams(1 / 6, 1 / 6, 1 / 2)
SEXTIC_SERIES_MAX_G = 1.6
CONNECTION_MARGIN = 0.8
QUAD_TOL = 1e-10
SEXTIC_CLEARANCE = 1e-3

_SQRT_PI = math.sqrt(math.pi)
_G16 = gamma(1 / 6).real
_G13 = gamma(1 / 3).real
_GM16 = gamma(-1 / 6).real  # reflection formula
_CONN_A = _SQRT_PI * _G16**3 / (9.0 * _G13**2)
_CONN_B = _SQRT_PI * _GM16 / 9.0


@dataclass(frozen=True)
class SexticSheet:
    k: int = 0

    def __post_init__(self):
        if int(self.k) != self.k or not 0 <= self.k <= 5:
            raise DomainError("sextic sheet index must be 0..5")

    @property
    def phase(self) -> complex:
        return cmath.exp(1j * math.pi * self.k / 3.0)

    def next(self, steps: int = 1) -> SexticSheet:
        return SexticSheet((self.k + steps) % 6)


@dataclass(frozen=True)
class SourcePair:
    J: complex = 0.0
    K: complex = 0.0


@dataclass(frozen=True)
class GreenIndex:
    alpha: int
    beta: int

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0 or int(self.alpha) != self.alpha or int(self.beta) != self.beta:
            raise DomainError("Green's function indices must be nonnegative integers")


def _freqs(osc) -> tuple[float, float]:
    # the Gaussian integral is fine at nu == omega, so plain pairs are accepted too
    if hasattr(osc, "nu"):
        return float(osc.nu), float(osc.omega)
    nu, omega = osc
    return float(nu), float(omega)


def _quadratic_det(osc, g) -> complex:
    nu, om = _freqs(osc)
    d = 4.0 * nu**2 * om**2 - complex(g) ** 2
    if abs(d) < 1e-14 * 4.0 * nu**2 * om**2:
        raise PoleError("g = %r is a branch point +-2 nu omega of Z" % (g,))
    return d


def z_quadratic(osc, g, sign: int = 1) -> complex:
    """2 pi / sqrt(4 nu^2 omega^2 - g^2) on the sheet selected by ``sign``."""
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    return sign * 2.0 * math.pi / cmath.sqrt(_quadratic_det(osc, g))


def z_quadratic_sourced(osc, g, src: SourcePair, sign: int = 1) -> complex:
    """Sourced Gaussian partition function.

    The exponential factor has essential singularities at g = +-2 nu omega.
    """
    nu, om = _freqs(osc)
    d = _quadratic_det(osc, g)
    J, K = complex(src.J), complex(src.K)
    return z_quadratic(osc, g, sign) * cmath.exp((J * J * om**2 + K * K * nu**2 - complex(g) * K * J) / d)


def continue_z_quadratic(osc, path: PathSpec, sign: int = 1, per_segment: int = 256) -> tuple[complex, int]:
    """Continue Z along ``path`` by following the square root continuously.

    Returns the final value and the sheet sign relative to the principal
    value at the end point.
    """
    nu, om = _freqs(osc)
    w = 2.0 * nu * om
    for b in (w, -w):
        if path.distance_to(b) < 1e-3 * w:
            raise ClearanceError("path passes too close to the branch point %g" % b)
    root = sign * cmath.sqrt(_quadratic_det(osc, path.base))
    for a, b in path.segments():
        for t in np.linspace(0.0, 1.0, per_segment + 1)[1:]:
            r = cmath.sqrt(_quadratic_det(osc, a + t * (b - a)))
            root = r if abs(r - root) <= abs(r + root) else -r
    value = 2.0 * math.pi / root
    principal = z_quadratic(osc, path.end, 1)
    return value, (1 if abs(value - principal) <= abs(value + principal) else -1)


def _gauss_legendre_panels(R: float, panels: int, order: int = 16):
    x0, w0 = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(-R, R, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * x0[None, :]).ravel()
    w = (half[:, None] * w0[None, :]).ravel()
    return x, w


def tensor_quadrature(f, R: float, tol: float = QUAD_TOL, panels: int = 16, max_panels: int = 512) -> float:
    """Integrate f(x, y) over [-R, R]^2 with composite Gauss-Legendre panels,
    doubling the panel count until successive results agree within ``tol``."""

    def rule(p):
        x, w = _gauss_legendre_panels(R, p)
        total = 0.0
        for i in range(0, len(x), 256):
            block = f(x[i:i + 256, None], x[None, :])
            total += w[i:i + 256] @ (block @ w)
        return total

    prev = rule(panels)
    while panels < max_panels:
        panels *= 2
        cur = rule(panels)
        if abs(cur - prev) < tol:
            return float(cur)
        prev = cur
    raise MarginError("quadrature did not reach %.1e with %d panels" % (tol, max_panels))


def z_quadratic_quadrature(osc, g: float) -> float:
    """Direct 2-D quadrature of the Gaussian integral (real g inside the window)."""
    nu, om = _freqs(osc)
    g = float(g)
    lam = 0.5 * (nu**2 + om**2) - math.sqrt(0.25 * (nu**2 - om**2) ** 2 + 0.25 * g * g)
    if lam <= 0:
        raise DomainError("integral diverges for |g| >= 2 nu omega")
    R = math.sqrt(45.0 / lam)
    return tensor_quadrature(lambda x, y: np.exp(-nu**2 * x * x - om**2 * y * y - g * x * y), R)


def _check_series_g(g: complex):
    if abs(g) > SEXTIC_SERIES_MAX_G:
        raise MarginError("|g| = %g exceeds the series margin %g" % (abs(g), SEXTIC_SERIES_MAX_G))


def z_sextic_series(g) -> complex:
    g = complex(g)
    _check_series_g(g)
    return _G16**2 / 9.0 * hyp2f1_series(SEXTIC_PARAMS, g * g / 4.0)


def z_sextic_connection(g, sheet: SexticSheet | int = 0) -> complex:
    """Connection-formula form around g = +-2; ``sheet`` multiplies the
    (1 - g^2/4)^(1/6) factor by exp(i pi k / 3)."""
    if not isinstance(sheet, SexticSheet):
        sheet = SexticSheet(sheet)
    g = complex(g)
    w = 1.0 - g * g / 4.0
    if abs(w) > CONNECTION_MARGIN:
        raise MarginError("|1 - g^2/4| = %g exceeds %g" % (abs(w), CONNECTION_MARGIN))
    first = _CONN_A * hyp2f1_series(HyperParams(1 / 6, 1 / 6, 5 / 6), w)
    branch = sheet.phase * w ** (1.0 / 6.0) if w != 0 else 0j
    second = branch * _CONN_B * hyp2f1_series(HyperParams(1 / 3, 1 / 3, 7 / 6), w)
    return first + second


def _sextic_radius(g: float) -> float:
    return 4.0 / (1.0 - abs(g) / 2.0) ** (1.0 / 6.0)


def _check_quad_g(g) -> float:
    if isinstance(g, complex):
        if g.imag != 0:
            raise DomainError("sextic quadrature needs real g")
        g = g.real
    g = float(g)
    if not abs(g) < 2.0:
        raise DomainError("the sextic integral diverges for |g| >= 2")
    return g


def z_sextic_quadrature(g) -> float:
    return greens_quadrature(GreenIndex(0, 0), g)


def greens_series(idx: GreenIndex, g) -> complex:
    """Moment G_ab from its power series in g (|g| <= 1.6)."""
    g = complex(g)
    _check_series_g(g)
    a, b = idx.alpha, idx.beta
    if (a + b) % 2 or a % 2:
        # odd total vanishes by x,y -> -x,-y; mixed parity both odd handled below
        if (a + b) % 2:
            return 0j
        p, q = (a + 4) / 6.0, (b + 4) / 6.0
        coef = -gamma(p).real * gamma(q).real / 9.0
        return coef * g * hyp2f1_series(HyperParams(p, q, 1.5), g * g / 4.0)
    p, q = (a + 1) / 6.0, (b + 1) / 6.0
    coef = gamma(p).real * gamma(q).real / 9.0
    return coef * hyp2f1_series(HyperParams(p, q, 0.5), g * g / 4.0)


def greens_quadrature(idx: GreenIndex, g) -> float:
    g = _check_quad_g(g)
    a, b = idx.alpha, idx.beta
    if (a + b) % 2:
        return 0.0
    R = _sextic_radius(g)

    def f(x, y):
        x3, y3 = x**3, y**3
        return x**a * y**b * np.exp(-x3 * x3 - y3 * y3 - g * x3 * y3)

    return tensor_quadrature(f, R)


def singularity_exponent(idx: GreenIndex) -> Fraction:
    """Exponent of the (1 - g^2/4) branch factor of G_ab."""
    if (idx.alpha + idx.beta) % 2:
        raise ParityError("alpha + beta must be even")
    return Fraction(1 - idx.alpha - idx.beta, 6)


def _sextic_z_path(loop: PathSpec, subdivisions: int) -> PathSpec:
    for s in (-2.0, 0.0, 2.0):
        d = loop.distance_to(s)
        if d < SEXTIC_CLEARANCE:
            raise ClearanceError("g path comes within %.3g of g = %g" % (d, s))
    return loop.mapped(lambda g: g * g / 4.0, subdivisions)


def sextic_monodromy(loop: PathSpec, subdivisions: int = 16) -> np.ndarray:
    """Monodromy matrix of the sextic hypergeometric equation around ``loop``.

    The basis is (value, derivative) at the base point: columns of M are the
    continued solutions that started as (1, 0) and (0, 1).
    """
    if not loop.closed:
        raise DomainError("sextic monodromy needs a closed loop")
    return transport_matrix(SEXTIC_PARAMS, _sextic_z_path(loop, subdivisions))


def continue_sextic(path: PathSpec, subdivisions: int = 16) -> complex:
    """Continue Z from the series value at ``path.base`` along ``path``."""
    g0 = path.base
    z0 = g0 * g0 / 4.0
    scale = _G16**2 / 9.0
    init = HyperState(z0, hyp2f1_series(SEXTIC_PARAMS, z0), hyp2f1_series_derivative(SEXTIC_PARAMS, z0))
    st = hyp2f1_transport(SEXTIC_PARAMS, _sextic_z_path(path, subdivisions), init)
    return scale * st.f
