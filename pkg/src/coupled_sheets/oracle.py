"""Fock-basis diagonalization of H = p^2 + nu^2 x^2 + q^2 + omega^2 y^2 + g x y.

Only real g inside the stability window |g| < 2 nu omega is handled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .surface import OscillatorPair


@dataclass(frozen=True)
class FockTruncation:
    n_max: int

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise DomainError("n_max must be an integer >= 1")

    @property
    def dimension(self) -> int:
        return (self.n_max + 1) ** 2


@dataclass(frozen=True)
class SpectrumSlice:
    eigenvalues: np.ndarray
    truncation: FockTruncation
    truncation_error: np.ndarray


def _check_window(osc: OscillatorPair, g) -> float:
    if isinstance(g, complex):
        if g.imag != 0:
            raise DomainError("the Fock oracle only supports real g")
        g = g.real
    g = float(g)
    if not abs(g) < osc.inner_branch:
        raise DomainError("|g| = %g is outside the stable window |g| < 2 nu omega = %g; "
                          "the potential is unbounded below" % (abs(g), osc.inner_branch))
    return g


def position_matrix(n: int, freq: float) -> np.ndarray:
    """x in the eigenbasis of p^2 + freq^2 x^2, truncated to n levels."""
    off = np.sqrt(np.arange(1, n)) / math.sqrt(2.0 * freq)
    return np.diag(off, 1) + np.diag(off, -1)


def build_hamiltonian(osc: OscillatorPair, g, trunc: FockTruncation) -> np.ndarray:
    g = _check_window(osc, g)
    n = trunc.n_max + 1
    levels = 2 * np.arange(n) + 1
    diag = (levels[:, None] * osc.nu + levels[None, :] * osc.omega).ravel()
    H = g * np.kron(position_matrix(n, osc.nu), position_matrix(n, osc.omega))
    H[np.diag_indices_from(H)] += diag
    return H


def _lowest(osc, g, trunc, k):
    H = build_hamiltonian(osc, g, trunc)
    return np.linalg.eigvalsh(H)[:k]


def lowest_energies(osc: OscillatorPair, g, trunc: FockTruncation, k: int) -> SpectrumSlice:
    if not 1 <= k <= trunc.dimension:
        raise DomainError("k must lie in 1..%d" % trunc.dimension)
    vals = _lowest(osc, g, trunc, k)
    if trunc.n_max - 4 >= 1 and (trunc.n_max - 3) ** 2 >= k:
        coarse = _lowest(osc, g, FockTruncation(trunc.n_max - 4), k)
        err = np.abs(vals - coarse)
    else:
        err = np.full(k, np.nan)
    return SpectrumSlice(vals, trunc, err)


def normal_mode_energies(osc: OscillatorPair, g) -> tuple[float, float]:
    """Normal-mode frequencies (Omega_plus, Omega_minus) of the coupled potential."""
    g = _check_window(osc, g)
    mean = 0.5 * (osc.nu**2 + osc.omega**2)
    rad = math.sqrt(0.25 * osc.outer_branch**2 + 0.25 * g * g)
    return math.sqrt(mean + rad), math.sqrt(mean - rad)


def normal_mode_spectrum(osc: OscillatorPair, g, k: int, n_max: int = 40) -> np.ndarray:
    """k lowest levels (2i+1) Omega_plus + (2j+1) Omega_minus."""
    wp, wm = normal_mode_energies(osc, g)
    lv = 2 * np.arange(n_max + 1) + 1
    return np.sort((lv[:, None] * wp + lv[None, :] * wm).ravel())[:k]
