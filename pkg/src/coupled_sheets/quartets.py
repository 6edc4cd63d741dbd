"""Gaussian-ansatz parameters and the four lowest energy quartets.

For P(x, y) in {1, x, y, xy} times exp(-a x^2/2 - b y^2/2 + c x y) the
eigenvalue problem closes on

    (0,0):  E = a + b
    (1,0), (0,1):  eigenvalues of [[3a + b, -2c], [-2c, a + 3b]]
    (1,1):  E = 3 (a + b)

with a, b, c fixed by the ground-state energy E0 on the chosen sheet.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import BranchPointError, LabelingError
from .surface import SHEETS, OscillatorPair, SheetId, eval_sheet

QUARTETS = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class GaussianAnsatz:
    a: complex
    b: complex
    c: complex

    def residuals(self, osc: OscillatorPair, g) -> tuple[float, float, float]:
        """Relative residuals of a^2 + c^2 = nu^2, b^2 + c^2 = omega^2, 2c(a + b) + g = 0."""
        a, b, c = self.a, self.b, self.c
        g = complex(g)
        r1 = abs(a * a + c * c - osc.nu**2) / osc.nu**2
        r2 = abs(b * b + c * c - osc.omega**2) / osc.omega**2
        r3 = abs(2 * c * (a + b) + g) / max(1.0, abs(g), abs(2 * c * (a + b)))
        return r1, r2, r3


@dataclass(frozen=True)
class QuartetCoeffs:
    """Coefficients of P(x, y) = A x + B y + C x y + D."""

    A: complex
    B: complex
    C: complex
    D: complex


@dataclass(frozen=True)
class QuartetEnergies:
    energies: dict
    ansatz: GaussianAnsatz
    # (1,0)/(0,1) labels off g = 0 come from continuation along [0, g]
    labeling: str = "continuity along the straight segment from g = 0"

    def __getitem__(self, key):
        return self.energies[key]


def recover_ansatz(osc: OscillatorPair, g, E) -> GaussianAnsatz:
    E = complex(E)
    if E == 0:
        raise BranchPointError("E = 0: g is at an outer branch point +-i(nu^2 - omega^2)")
    d = osc.outer_branch
    return GaussianAnsatz(0.5 * (E + d / E), 0.5 * (E - d / E), -complex(g) / (2.0 * E))


def _pair_splitting(osc: OscillatorPair, g: complex) -> complex:
    # E0 * sqrt((a - b)^2 + 4 c^2) = sqrt((nu^2 - omega^2)^2 + g^2), continued from
    # nu^2 - omega^2 at g = 0 along the segment [0, g]. The radicand moves on a ray from
    # (nu^2 - omega^2)^2 in direction g^2, so the principal root is the continuation
    # unless g^2 is real and <= -(nu^2 - omega^2)^2, where the ray runs through zero.
    d2 = osc.outer_branch**2
    g2 = g * g
    if abs(g2.imag) <= 1e-14 * max(1.0, abs(g2)) and g2.real <= -d2 * (1 - 1e-12):
        raise LabelingError("(1,0) and (0,1) collide on the segment from 0 to g = %r" % g)
    return cmath.sqrt(d2 + g2)


def quartet_energies(osc: OscillatorPair, g, sheet: SheetId | int) -> QuartetEnergies:
    if not isinstance(sheet, SheetId):
        sheet = SheetId.from_number(sheet)
    g = complex(g)
    E0 = eval_sheet(osc, g, sheet)
    ans = recover_ansatz(osc, g, E0)
    split = _pair_splitting(osc, g) / E0
    energies = {
        (0, 0): E0,
        (0, 1): 2.0 * E0 - split,
        (1, 0): 2.0 * E0 + split,
        (1, 1): 3.0 * E0,
    }
    return QuartetEnergies(energies, ans)


def quartet_coeffs(osc: OscillatorPair, g, sheet: SheetId | int, label: tuple[int, int]) -> QuartetCoeffs:
    """Polynomial prefactor P(x, y) of the (m, n) eigenfunction (unnormalized)."""
    q = quartet_energies(osc, g, sheet)
    a, b, c = q.ansatz.a, q.ansatz.b, q.ansatz.c
    if label == (0, 0):
        return QuartetCoeffs(0, 0, 0, 1)
    if label == (1, 1):
        return QuartetCoeffs(0, 0, 1, 0)
    E = q[label]
    # (3a + b - E) A = 2 c B ; pick the better-conditioned row
    r1, r2 = 3 * a + b - E, a + 3 * b - E
    if abs(r1) >= abs(r2):
        A, B = (2 * c, r1) if abs(r1) > 0 else (1, 0)
    else:
        A, B = (r2, 2 * c) if abs(r2) > 0 else (0, 1)
    if abs(c) == 0:
        A, B = (1, 0) if label == (1, 0) else (0, 1)
    return QuartetCoeffs(complex(A), complex(B), 0j, 0j)


def zero_coupling_table(osc: OscillatorPair) -> dict[tuple[int, int], dict[SheetId, float]]:
    """Quartet energies at g = 0: sx (2m+1) nu + sy (2n+1) omega per sheet."""
    signs = {SHEETS[0]: (1, 1), SHEETS[1]: (1, -1), SHEETS[2]: (-1, 1), SHEETS[3]: (-1, -1)}
    return {
        (m, n): {s: sx * (2 * m + 1) * osc.nu + sy * (2 * n + 1) * osc.omega for s, (sx, sy) in signs.items()}
        for m, n in QUARTETS
    }
