"""Complex log-Gamma, Pochhammer symbols and the Gauss hypergeometric function.

``hyp2f1_transport`` continues a solution of the hypergeometric equation
along a polyline by integrating the ODE, which is how monodromy matrices
are obtained.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ClearanceError, DomainError, MarginError, NoConvergenceError, PoleError, StepUnderflowError
from .paths import PathSpec

# B_2k / (2k (2k - 1)) for the Stirling series, k = 1..10
_STIRLING_COEF = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
)
_STIRLING_MIN_ABS = 17.0
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

SERIES_MARGIN = 0.8
SERIES_RTOL = 1e-16
SERIES_MAX_TERMS = 500

TRANSPORT_CLEARANCE = 1e-3
TRANSPORT_RTOL = 1e-12


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _stirling_log(w: complex) -> complex:
    # Re w >= 0 and |w| >= 17; components summed exactly
    lw = cmath.log(w)
    u = w - 0.5
    inv = 1.0 / w
    inv2 = inv * inv
    tail = 0j
    for coef in reversed(_STIRLING_COEF):
        tail = tail * inv2 + coef
    tail *= inv
    re = math.fsum((u.real * lw.real, -u.imag * lw.imag, -w.real, _HALF_LOG_2PI, tail.real))
    im = math.fsum((u.real * lw.imag, u.imag * lw.real, -w.imag, tail.imag))
    return complex(re, im)


def ln_gamma(z) -> complex:
    """Principal branch of log Gamma(z).

    The branch cut lies on the negative real axis. On the cut itself the
    value is the limit from above, consistent with
    ``ln_gamma(z + 1) == ln_gamma(z) + log(z)`` using the principal ``log``.
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError("Gamma has a pole at %r" % z)
    n = max(0, int(math.ceil(-z.real)))
    while abs(z + n) < _STIRLING_MIN_ABS:
        n += 1
    head = _stirling_log(z + n)
    if n == 0:
        return head
    shifted = [z + k for k in range(n)]
    re = math.fsum([head.real] + [-math.log(abs(s)) for s in shifted])
    im = math.fsum([head.imag] + [-cmath.phase(s) for s in shifted])
    return complex(re, im)


def gamma(z) -> complex:
    """Gamma(z); uses the reflection formula left of Re z = 1/2."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError("Gamma has a pole at %r" % z)
    if z.real >= 0.5:
        return cmath.exp(ln_gamma(z))
    return cmath.pi / (cmath.sin(cmath.pi * z) * cmath.exp(ln_gamma(1.0 - z)))


def pochhammer(a, m: int) -> complex:
    """Rising factorial (a)_m = a (a+1) ... (a+m-1)."""
    if m < 0 or int(m) != m:
        raise DomainError("m must be a nonnegative integer")
    out = complex(1.0)
    a = complex(a)
    for k in range(int(m)):
        out *= a + k
    return out


@dataclass(frozen=True)
class HyperParams:
    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if _is_nonpositive_integer(self.c):
            raise DomainError("c must not be zero or a negative integer")

    def shifted(self, k: int = 1) -> HyperParams:
        return HyperParams(self.a + k, self.b + k, self.c + k)


@dataclass(frozen=True)
class HyperState:
    z: complex
    f: complex
    df: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.f, self.df], dtype=complex)


def hyp2f1_series(p: HyperParams, z) -> complex:
    """Sum the Gauss series for 2F1(a, b; c; z) with |z| <= 0.8."""
    z = complex(z)
    if abs(z) > SERIES_MARGIN:
        raise MarginError("|z| = %g exceeds the series margin %g" % (abs(z), SERIES_MARGIN))
    a, b, c = p.a, p.b, p.c
    term = complex(1.0)
    total = complex(1.0)
    for k in range(SERIES_MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        if abs(term) < SERIES_RTOL * abs(total) or term == 0:
            return total
    raise NoConvergenceError("2F1 series did not converge in %d terms" % SERIES_MAX_TERMS)


def hyp2f1_series_derivative(p: HyperParams, z) -> complex:
    """d/dz 2F1(a, b; c; z) = (ab/c) 2F1(a+1, b+1; c+1; z)."""
    return p.a * p.b / p.c * hyp2f1_series(p.shifted(), z)


def _check_clearance(path: PathSpec, singular=(0.0, 1.0), clearance: float = TRANSPORT_CLEARANCE):
    for s in singular:
        d = path.distance_to(s)
        if d < clearance:
            raise ClearanceError("path comes within %.3g of the singular point z = %g" % (d, s.real))


def _hyp_rhs(p: HyperParams, z0: complex, dz: complex):
    a, b, c = p.a, p.b, p.c
    ab = a * b
    s = a + b + 1.0

    def rhs(t, y):
        z = z0 + t * dz
        f, df = y
        d2f = (ab * f - (c - s * z) * df) / (z * (1.0 - z))
        return np.array([df * dz, d2f * dz])

    return rhs


def hyp2f1_transport(p: HyperParams, path: PathSpec, initial: HyperState, rtol: float = TRANSPORT_RTOL) -> HyperState:
    """Continue a solution (f, f') of the hypergeometric equation along ``path``.

    ``initial.z`` must coincide with ``path.base``. Each segment is integrated
    with an adaptive 8th-order Dormand-Prince pair.
    """
    if abs(initial.z - path.base) > 1e-12 * (1.0 + abs(path.base)):
        raise DomainError("initial state is not at the path base point")
    _check_clearance(path)
    y = initial.as_array()
    min_step = 1e-10 * max(path.length, 1e-300)
    for z0, z1 in path.segments():
        dz = z1 - z0
        sol = solve_ivp(
            _hyp_rhs(p, z0, dz), (0.0, 1.0), y,
            method="DOP853", rtol=rtol, atol=rtol * 1e-2 * max(1.0, float(np.max(np.abs(y)))),
        )
        if sol.status != 0:
            raise StepUnderflowError("transport failed on segment %r -> %r: %s" % (z0, z1, sol.message))
        steps = np.diff(sol.t)
        if abs(dz) > 1e3 * min_step and abs(dz) * steps[:-1].min(initial=1.0) < min_step:
            raise StepUnderflowError("step fell below %.3g on segment %r -> %r" % (min_step, z0, z1))
        y = sol.y[:, -1]
    return HyperState(path.end, complex(y[0]), complex(y[1]))


def transport_matrix(p: HyperParams, path: PathSpec, basis: np.ndarray | None = None) -> np.ndarray:
    """Continue two solutions around ``path``.

    ``basis`` is a 2x2 matrix whose columns are the (f, f') initial states;
    the identity (value/derivative basis) by default. Returns ``M`` with
    ``final_basis = basis @ M``, so for a closed path ``M`` is the monodromy
    matrix in that basis.
    """
    if basis is None:
        basis = np.eye(2, dtype=complex)
    basis = np.asarray(basis, dtype=complex)
    cols = []
    for j in range(2):
        st = hyp2f1_transport(p, path, HyperState(path.base, basis[0, j], basis[1, j]))
        cols.append([st.f, st.df])
    final = np.array(cols, dtype=complex).T
    return np.linalg.solve(basis, final)
