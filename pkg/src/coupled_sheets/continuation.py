"""Analytic continuation of the four energy branches along paths in the g plane."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousMatchError, ClearanceError, CollisionError, NoConvergenceError
from .paths import PathSpec
from .surface import SHEETS, OscillatorPair, SheetId, branch_points, eval_sheet, sheet_values_at_zero

RESIDUAL_TOL = 1e-13
NEWTON_MAX_ITER = 8
INITIAL_STEP_FRACTION = 1.0 / 64.0
MIN_STEP_FRACTION = 1e-9
MATCH_RTOL = 1e-8


def default_collision_radius(osc: OscillatorPair) -> float:
    return 1e-3 * max(osc.inner_branch, osc.outer_branch)


@dataclass
class RootTrack:
    """Four labeled roots sampled along a path.

    ``roots[k, i]`` is the root carrying label ``labels[i]`` (a sheet number
    assigned at the base point) at ``g[k]``; ``s`` is arclength.
    """

    s: np.ndarray
    g: np.ndarray
    roots: np.ndarray
    labels: tuple[int, ...] = (1, 2, 3, 4)

    @property
    def samples(self) -> list[tuple[complex, np.ndarray]]:
        return list(zip(self.g, self.roots))

    def __len__(self):
        return len(self.g)

    def final(self) -> np.ndarray:
        return self.roots[-1]


def _min_separation(E: np.ndarray) -> float:
    d = np.abs(E[:, None] - E[None, :])
    d[np.arange(len(E)), np.arange(len(E))] = np.inf
    return float(d.min())


class _Quartic:
    def __init__(self, osc: OscillatorPair):
        self.S = osc.nu**2 + osc.omega**2
        self.C = (osc.nu**2 - osc.omega**2) ** 2

    def value(self, E, g):
        E2 = E * E
        return (E2 - 2.0 * self.S) * E2 + (self.C + g * g)

    def dE(self, E):
        return 4.0 * E * (E * E - self.S)

    def residual(self, E, g):
        return np.abs(self.value(E, g)) / (1.0 + np.abs(E) ** 4)

    def tangent(self, E, g):
        # dE/dg from implicit differentiation
        return -2.0 * g / self.dE(E)

    def newton(self, E, g, tol):
        for it in range(NEWTON_MAX_ITER + 1):
            if np.all(self.residual(E, g) <= tol):
                return E, True
            if it == NEWTON_MAX_ITER:
                break
            E = E - self.value(E, g) / self.dE(E)
        return E, False


def check_path_clearance(osc: OscillatorPair, path: PathSpec, radius: float | None = None):
    radius = default_collision_radius(osc) if radius is None else radius
    for b in branch_points(osc).all():
        d = path.distance_to(b)
        if d < radius:
            raise ClearanceError("path passes within %.3g of branch point %s (collision radius %.3g)"
                                 % (d, _fmt(b), radius))


def _fmt(z: complex) -> str:
    return "%.6g%+.6gi" % (z.real, z.imag)


def base_roots(osc: OscillatorPair, g0: complex, tol: float = RESIDUAL_TOL) -> np.ndarray:
    """Roots at ``g0`` in sheet order 1..4, labeled by the closed form."""
    E = np.array([eval_sheet(osc, g0, s) for s in SHEETS], dtype=complex)
    if _min_separation(E) <= 1e-10 * (1.0 + np.abs(E).max()):
        raise AmbiguousMatchError("sheets are not distinguishable at the base point %s" % _fmt(g0))
    E, _ = _Quartic(osc).newton(E, complex(g0), tol)
    return E


def track_roots(osc: OscillatorPair, path: PathSpec, tol: float = RESIDUAL_TOL,
                collision_radius: float | None = None, start: np.ndarray | None = None) -> RootTrack:
    """Follow all four roots of the quartic along ``path``.

    Predictor: tangent step from implicit differentiation. Corrector: Newton
    on the quartic. A step is halved unless Newton converges, every root
    moves by less than half the smallest pairwise separation, and that
    separation exceeds four times the corrector displacement.
    """
    check_path_clearance(osc, path, collision_radius)
    q = _Quartic(osc)
    E = base_roots(osc, path.base, tol) if start is None else np.asarray(start, dtype=complex)
    s_list, g_list, r_list = [0.0], [path.base], [E.copy()]
    s_total = 0.0
    for a, b in path.segments():
        L = abs(b - a)
        u = (b - a) / L
        h_max = L * INITIAL_STEP_FRACTION
        h_min = L * MIN_STEP_FRACTION
        h = h_max
        t = 0.0
        clean = 0
        g = a
        while t < L:
            h = min(h, L - t)
            g_new = a + (t + h) * u if t + h < L else b
            pred = E + q.tangent(E, g) * (g_new - g)
            E_new, ok = q.newton(pred, g_new, tol)
            if ok:
                sep = min(_min_separation(E), _min_separation(E_new))
                moved = np.abs(E_new - E).max()
                corr = np.abs(E_new - pred).max()
                ok = moved < 0.5 * sep and 4.0 * corr < sep
            if not ok:
                h *= 0.5
                clean = 0
                if h < h_min:
                    if not np.all(q.residual(E_new, g_new) <= tol):
                        raise NoConvergenceError("corrector failed near g = %s" % _fmt(g_new))
                    raise CollisionError("step underflow near g = %s; path too close to a branch point"
                                         % _fmt(g_new))
                continue
            t = t + h if g_new != b else L
            g, E = g_new, E_new
            s_list.append(s_total + t)
            g_list.append(g)
            r_list.append(E.copy())
            clean += 1
            if clean >= 4:
                h = min(2.0 * h, h_max)
                clean = 0
        s_total += L
    return RootTrack(np.array(s_list), np.array(g_list, dtype=complex), np.array(r_list))


@dataclass(frozen=True)
class MonodromyPermutation:
    """Bijection on sheet labels: ``mapping[i] = j`` means the branch that
    starts on sheet ``i`` ends on sheet ``j``."""

    mapping: tuple[tuple[int, int], ...]

    def __post_init__(self):
        m = dict(self.mapping)
        if sorted(m) != sorted(m.values()):
            raise ValueError("not a bijection: %r" % (m,))
        object.__setattr__(self, "mapping", tuple(sorted(m.items())))

    @classmethod
    def from_dict(cls, m: dict) -> MonodromyPermutation:
        return cls(tuple(m.items()))

    @classmethod
    def identity(cls, labels=(1, 2, 3, 4)) -> MonodromyPermutation:
        return cls(tuple((i, i) for i in labels))

    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def __call__(self, i: int) -> int:
        return self.as_dict()[i]

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in self.mapping)

    def then(self, other: MonodromyPermutation) -> MonodromyPermutation:
        """Permutation of traversing this loop first, then ``other``."""
        a, b = self.as_dict(), other.as_dict()
        return MonodromyPermutation.from_dict({i: b[a[i]] for i in a})

    def inverse(self) -> MonodromyPermutation:
        return MonodromyPermutation.from_dict({j: i for i, j in self.mapping})

    def cycles(self) -> list[tuple[int, ...]]:
        m = self.as_dict()
        seen, out = set(), []
        for i in sorted(m):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = m[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = m[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_of(self, i: int) -> tuple[int, ...]:
        for c in self.cycles():
            if i in c:
                return c
        return ()

    def notation(self, start: int | None = None) -> str:
        """Cycle notation, e.g. ``(1 2)(3 4)``; ``()`` for the identity.

        With ``start`` only the cycle containing that label is shown.
        """
        cycles = self.cycles() if start is None else [c for c in [self.cycle_of(start)] if c]
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __str__(self):
        return self.notation()


def match_permutation(base: np.ndarray, final: np.ndarray, labels=(1, 2, 3, 4),
                      rtol: float = MATCH_RTOL) -> MonodromyPermutation:
    out = {}
    for i, e in enumerate(final):
        d = np.abs(base - e)
        hits = np.nonzero(d <= rtol * np.maximum(1.0, np.abs(base)))[0]
        if len(hits) != 1:
            raise AmbiguousMatchError("final root %s matches %d base roots" % (_fmt(complex(e)), len(hits)))
        out[labels[i]] = labels[int(hits[0])]
    if sorted(out.values()) != sorted(labels):
        raise AmbiguousMatchError("final roots are not a permutation of the base roots")
    return MonodromyPermutation.from_dict(out)


def monodromy(osc: OscillatorPair, loop: PathSpec, tol: float = RESIDUAL_TOL,
              collision_radius: float | None = None) -> MonodromyPermutation:
    if not loop.closed:
        raise ClearanceError("monodromy needs a closed loop")
    tr = track_roots(osc, loop, tol, collision_radius)
    return match_permutation(tr.roots[0], tr.final(), tr.labels)


def loop_around(center: complex, radius: float, base: complex = 0j, segments: int = 64,
                orientation: int = 1) -> PathSpec:
    """Closed path from ``base`` straight to the circle about ``center``,
    once around it, and straight back."""
    center, base = complex(center), complex(base)
    theta0 = math.atan2((base - center).imag, (base - center).real)
    k = np.arange(segments + 1)
    ring = center + radius * np.exp(1j * (theta0 + orientation * 2 * np.pi * k / segments))
    ring[-1] = ring[0]
    return PathSpec(base, tuple(ring), True)


@dataclass(frozen=True)
class TourLeg:
    name: str
    path: PathSpec | None
    sheet: SheetId
    energy: float
    permutation: MonodromyPermutation


@dataclass(frozen=True)
class GrandTour:
    legs: tuple[TourLeg, ...]

    @property
    def energies(self) -> list[float]:
        return [leg.energy for leg in self.legs]

    @property
    def net_change(self) -> float:
        return self.legs[-1].energy - self.legs[0].energy

    def composed(self) -> MonodromyPermutation:
        out = MonodromyPermutation.identity()
        for leg in self.legs:
            out = out.then(leg.permutation)
        return out


def grand_tour_legs(osc: OscillatorPair) -> list[tuple[str, PathSpec]]:
    """The three loops of the tour, all based at g = 0.

    Loops are counterclockwise circles of radius nu*omega about 2 nu omega and
    (nu^2 - omega^2)/2 about i(nu^2 - omega^2), reached along the axes.
    """
    w, d = osc.inner_branch, osc.outer_branch
    inner = loop_around(w, 0.5 * w)
    outer = loop_around(1j * d, 0.5 * d)
    return [
        ("cross inner cut at +2nu*omega", inner),
        ("cross outer cut at +i(nu^2-omega^2)", outer),
        ("cross inner cut at +2nu*omega again", inner),
    ]


def grand_tour(osc: OscillatorPair, tol: float = RESIDUAL_TOL) -> GrandTour:
    """Start on sheet 1 at g = 0 and visit all four sheets, returning to g = 0 after each loop."""
    zero = sheet_values_at_zero(osc)
    sheet_of = {v: k for k, v in zero.items()}
    base = np.array([zero[s] for s in SHEETS], dtype=complex)

    def which(E: complex) -> SheetId:
        for v, s in sheet_of.items():
            if abs(E - v) <= MATCH_RTOL * max(1.0, abs(v)):
                return s
        raise AmbiguousMatchError("energy %s at g = 0 matches no sheet" % _fmt(E))

    current = SHEETS[0]
    legs = [TourLeg("start", None, current, float(zero[current]), MonodromyPermutation.identity())]
    for name, path in grand_tour_legs(osc):
        tr = track_roots(osc, path, tol)
        perm = match_permutation(base, tr.final())
        current = SheetId.from_number(perm(current.number))
        E_end = complex(tr.final()[tr.labels.index(legs[-1].sheet.number)])
        if which(E_end) != current:
            raise AmbiguousMatchError("tour bookkeeping mismatch on leg %r" % name)
        legs.append(TourLeg(name, path, current, float(E_end.real), perm))
    return GrandTour(tuple(legs))
