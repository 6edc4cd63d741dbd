"""Closed-form energy surface E(g) of two bilinearly coupled oscillators.

The ground-state energy solves the even quartic

    E^4 - 2 (nu^2 + omega^2) E^2 + (nu^2 - omega^2)^2 + g^2 = 0

whose roots are sigma_out * sqrt(nu^2 + omega^2 + sigma_in * sqrt(4 nu^2 omega^2 - g^2)).
The four sign choices are the four sheets.

Cut layout used for single-point evaluation:

* sheets 1 and 2: inner-root cuts run vertically down from +-2 nu omega;
* sheets 3 and 4: inner-root cuts run vertically up from +-2 nu omega;
* sheets 2 and 3: outer-root cuts run along the imaginary axis from
  +-i (nu^2 - omega^2) out to +-i infinity (principal square root).

Continuation along paths (see :mod:`continuation`) does not depend on this layout.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BranchPointError, DomainError

BRANCH_POINT_ATOL = 1e-12


@dataclass(frozen=True)
class OscillatorPair:
    """Frequencies of the two oscillators, normalized so that ``nu > omega``.

    ``swapped`` records whether the inputs were exchanged at construction.
    """

    nu: float
    omega: float
    swapped: bool = field(default=False, compare=False)

    def __post_init__(self):
        nu, omega = float(self.nu), float(self.omega)
        if not (nu > 0 and omega > 0 and math.isfinite(nu) and math.isfinite(omega)):
            raise DomainError("frequencies must be positive and finite")
        if nu == omega:
            raise DomainError("nu and omega must differ (got %g twice)" % nu)
        if nu < omega:
            nu, omega = omega, nu
            object.__setattr__(self, "swapped", True)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "omega", omega)

    @property
    def inner_branch(self) -> float:
        """2 nu omega, the real branch-point modulus."""
        return 2.0 * self.nu * self.omega

    @property
    def outer_branch(self) -> float:
        """nu^2 - omega^2, the imaginary branch-point modulus."""
        return self.nu**2 - self.omega**2


@dataclass(frozen=True)
class SheetId:
    inner: int
    outer: int

    def __post_init__(self):
        if self.inner not in (1, -1) or self.outer not in (1, -1):
            raise DomainError("sheet signs must be +1 or -1")

    @classmethod
    def from_number(cls, n: int) -> SheetId:
        try:
            return SHEETS[int(n) - 1]
        except (IndexError, ValueError, TypeError):
            raise DomainError("sheet number must be 1, 2, 3 or 4, got %r" % (n,)) from None

    @property
    def number(self) -> int:
        return SHEETS.index(self) + 1

    def __str__(self):
        return "Sheet %d (%s,%s)" % (self.number, "+-"[self.inner < 0], "+-"[self.outer < 0])


SHEETS = (SheetId(1, 1), SheetId(-1, 1), SheetId(-1, -1), SheetId(1, -1))


@dataclass(frozen=True)
class BranchPointSet:
    inner_points: tuple[complex, complex]
    outer_points: tuple[complex, complex]

    def all(self) -> tuple[complex, ...]:
        return self.inner_points + self.outer_points


@dataclass(frozen=True)
class WedgeDescriptor:
    center_angle: float
    opening_angle: float = math.pi / 2


def quartic_coeffs(osc: OscillatorPair, g) -> tuple[complex, complex, complex, complex, complex]:
    """Coefficients of E^4, E^3, E^2, E^1, E^0 (odd ones vanish)."""
    nu2, om2 = osc.nu**2, osc.omega**2
    return (1.0, 0.0, -2.0 * (nu2 + om2), 0.0, (nu2 - om2) ** 2 + complex(g) ** 2)


def quartic_residual(osc: OscillatorPair, g, E):
    """Relative residual |P(E)| / (1 + |E|^4); vectorized over ``E``."""
    E = np.asarray(E, dtype=complex)
    nu2, om2 = osc.nu**2, osc.omega**2
    E2 = E * E
    p = (E2 - 2.0 * (nu2 + om2)) * E2 + ((nu2 - om2) ** 2 + np.asarray(g, dtype=complex) ** 2)
    return np.abs(p) / (1.0 + np.abs(E) ** 4)


def quartic_roots(osc: OscillatorPair, g):
    """All four roots at ``g`` (array, trailing axis of length 4), principal branches.

    The set of roots is branch independent; the ordering is not meaningful.
    """
    g = np.asarray(g, dtype=complex)
    nu2, om2 = osc.nu**2, osc.omega**2
    s = np.sqrt(4.0 * nu2 * om2 - g * g)
    up = np.sqrt(nu2 + om2 + s)
    # down^2 = (nu2 - om2)^2 + g^2) / up^2 = nu2 + om2 - s without cancellation;
    # up never vanishes because Re s >= 0 for the principal root
    down = np.sqrt((nu2 - om2) ** 2 + g * g) / up
    return np.stack([up, down, -down, -up], axis=-1)


def _sqrt_cut(u: complex, cut_angle: float) -> complex:
    """Square root with its cut on the ray arg(u) = cut_angle, cut_angle in (0, 2 pi).

    Positive on the positive real axis. Points on the cut take arg = cut_angle.
    """
    if u == 0:
        return 0j
    phi = cmath.phase(u) % (2.0 * math.pi)
    if phi > cut_angle:
        phi -= 2.0 * math.pi
    return math.sqrt(abs(u)) * cmath.exp(0.5j * phi)


def inner_root(osc: OscillatorPair, g, upward: bool = False) -> complex:
    """(4 nu^2 omega^2 - g^2)^(1/2), positive on (-2 nu omega, 2 nu omega).

    Cuts run vertically down (or up when ``upward``) from g = +-2 nu omega.
    """
    g = complex(g)
    w = osc.inner_branch
    # g = w - i t  <=> w - g = i t      (down); g = w + i t <=> w - g = -i t  (up)
    # g = -w - i t <=> w + g = -i t    (down); g = -w + i t <=> w + g = i t (up)
    if upward:
        a1, a2 = 1.5 * math.pi, 0.5 * math.pi
    else:
        a1, a2 = 0.5 * math.pi, 1.5 * math.pi
    return _sqrt_cut(w - g, a1) * _sqrt_cut(w + g, a2)


def outer_radicand(osc: OscillatorPair, g, sheet: SheetId) -> complex:
    upward = sheet.number in (3, 4)
    return osc.nu**2 + osc.omega**2 + sheet.inner * inner_root(osc, g, upward)


def eval_sheet(osc: OscillatorPair, g, sheet: SheetId | int) -> complex:
    """Energy on ``sheet`` at coupling ``g`` (single-point, fixed cut layout).

    At the inner branch points the value is the common limit of the two
    colliding branches. At +-i(nu^2 - omega^2) on sheets 2 and 3 the energy
    vanishes and the sheet sign is undefined; this raises BranchPointError.
    """
    if not isinstance(sheet, SheetId):
        sheet = SheetId.from_number(sheet)
    g = complex(g)
    if sheet.number in (2, 3):
        tol = BRANCH_POINT_ATOL * osc.nu * osc.omega
        for b in (1j * osc.outer_branch, -1j * osc.outer_branch):
            if abs(g - b) < tol:
                raise BranchPointError("g = %r is at the branch point %r of %s" % (g, b, sheet))
    r = outer_radicand(osc, g, sheet)
    return sheet.outer * cmath.sqrt(r)


def branch_points(osc: OscillatorPair) -> BranchPointSet:
    w, d = osc.inner_branch, osc.outer_branch
    return BranchPointSet((complex(w), complex(-w)), (1j * d, -1j * d))


def sheet_values_at_zero(osc: OscillatorPair) -> dict[SheetId, float]:
    nu, om = osc.nu, osc.omega
    return {
        SHEETS[0]: nu + om,
        SHEETS[1]: nu - om,
        SHEETS[2]: -nu + om,
        SHEETS[3]: -nu - om,
    }


def single_oscillator_energy(nu, n: int) -> complex:
    """Level n of p^2 + nu^2 x^2, continued in the frequency: (2n + 1) nu."""
    if n < 0 or int(n) != n:
        raise DomainError("n must be a nonnegative integer")
    return (2 * int(n) + 1) * complex(nu)


def stokes_wedges(arg_nu: float) -> tuple[WedgeDescriptor, WedgeDescriptor]:
    """Pair of quarter-plane wedges where exp(-nu x^2 / 2) decays.

    They rotate clockwise by half the angle through which nu turns.
    """
    c = -0.5 * arg_nu
    return WedgeDescriptor(c), WedgeDescriptor(math.pi + c)


def find_collisions(osc: OscillatorPair, extent: float | None = None, step: float | None = None,
                    xtol: float = 1e-12) -> list[complex]:
    """Locate root-collision points of the quartic by minimizing the smallest
    pairwise root distance, first on a grid and then locally.
    """
    from scipy.optimize import minimize

    scale = max(osc.inner_branch, osc.outer_branch)
    extent = 1.5 * scale if extent is None else extent
    step = scale / 80.0 if step is None else step
    xs = np.arange(-extent, extent + step / 2, step)
    G = xs[None, :] + 1j * xs[:, None]
    R = quartic_roots(osc, G)
    diff = np.abs(R[..., :, None] - R[..., None, :])
    diff[..., np.arange(4), np.arange(4)] = np.inf
    dmin = diff.min(axis=(-1, -2))

    # local minima of the grid, 8-neighbour
    pad = np.pad(dmin, 1, constant_values=np.inf)
    neigh = np.stack([pad[1 + di:pad.shape[0] - 1 + di, 1 + dj:pad.shape[1] - 1 + dj]
                      for di in (-1, 0, 1) for dj in (-1, 0, 1) if di or dj])
    is_min = (dmin <= neigh.min(axis=0)) & (dmin < 0.5 * np.median(dmin))

    def objective(v):
        r = quartic_roots(osc, complex(v[0], v[1]))
        d = np.abs(r[:, None] - r[None, :])
        d[np.arange(4), np.arange(4)] = np.inf
        return float(d.min() ** 2)

    found: list[complex] = []
    for i, j in zip(*np.nonzero(is_min)):
        g0 = G[i, j]
        res = minimize(objective, [g0.real, g0.imag], method="Nelder-Mead",
                       options={"xatol": xtol, "fatol": 1e-300, "maxiter": 20000,
                                "initial_simplex": [[g0.real, g0.imag], [g0.real + step, g0.imag],
                                                    [g0.real, g0.imag + step]]})
        g1 = complex(res.x[0], res.x[1])
        if all(abs(g1 - f) > 10 * step for f in found):
            found.append(g1)
    return sorted(found, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
