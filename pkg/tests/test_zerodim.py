import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate, special

from coupled_sheets.continuation import loop_around
from coupled_sheets.errors import ClearanceError, DomainError, MarginError, ParityError, PoleError
from coupled_sheets.paths import circle_path, segment_path
from coupled_sheets.zerodim import (
    GreenIndex,
    SexticSheet,
    SourcePair,
    continue_sextic,
    continue_z_quadratic,
    greens_quadrature,
    greens_series,
    sextic_monodromy,
    singularity_exponent,
    z_quadratic,
    z_quadratic_quadrature,
    z_quadratic_sourced,
    z_sextic_connection,
    z_sextic_quadrature,
    z_sextic_series,
)

UNIT = (1.0, 1.0)
Z0 = (special.gamma(1 / 6) / 3) ** 2


def sextic_polar(g):
    """Independent oracle: Z(g) = (1/3) Gamma(1/3) * int_0^{2pi} (c^6 + s^6 + g c^3 s^3)^(-1/3) dtheta."""
    def f(t):
        c, s = math.cos(t), math.sin(t)
        return (c**6 + s**6 + g * c**3 * s**3) ** (-1 / 3)
    val, _ = integrate.quad(f, 0, 2 * math.pi, epsabs=1e-13, epsrel=1e-13, limit=200)
    return special.gamma(1 / 3) / 6 * val


def test_z_quadratic_examples():
    assert z_quadratic(UNIT, 0, 1) == pytest.approx(math.pi, rel=1e-15)
    assert z_quadratic(UNIT, 0, -1) == pytest.approx(-math.pi, rel=1e-15)
    assert abs(z_quadratic(UNIT, 1) - 2 * math.pi / math.sqrt(3)) < 1e-14
    with pytest.raises(PoleError):
        z_quadratic(UNIT, 2)
    with pytest.raises(DomainError):
        z_quadratic(UNIT, 0, 2)


def test_z_quadratic_vs_quadrature(osc21):
    assert abs(z_quadratic_quadrature(UNIT, 1) - 2 * math.pi / math.sqrt(3)) < 1e-10
    for g in (-3.0, 0.5, 2.5):
        assert abs(z_quadratic_quadrature(osc21, g) - z_quadratic(osc21, g).real) < 1e-10


def test_sourced():
    assert z_quadratic_sourced(UNIT, 0.7, SourcePair()) == z_quadratic(UNIT, 0.7)
    assert abs(z_quadratic_sourced(UNIT, 0, SourcePair(1, 0)) - math.pi * math.exp(0.25)) < 1e-13
    ref = 2 * math.pi / math.sqrt(3) * math.exp(1 / 3)
    assert abs(z_quadratic_sourced(UNIT, 1, SourcePair(1, 1)) - ref) < 1e-13


def test_sourced_vs_quadrature():
    from coupled_sheets.zerodim import tensor_quadrature
    # the sources enter as exp(-S + J x + K y) with S = x^2 + y^2 + g x y
    val = tensor_quadrature(lambda x, y: np.exp(-x * x - y * y - x * y + x + y), 12.0)
    assert abs(val - z_quadratic_sourced(UNIT, 1, SourcePair(1, 1)).real) < 1e-9


def test_source_derivatives(osc21):
    h = 1e-4
    for g in (0.5, 1.5 + 0.5j):
        Z = lambda J, K: z_quadratic_sourced(osc21, g, SourcePair(J, K))
        dJ = (Z(h, 0) - Z(-h, 0)) / (2 * h)
        assert abs(dJ) < 1e-6
        dJK = (Z(h, h) - Z(h, -h) - Z(-h, h) + Z(-h, -h)) / (4 * h * h)
        ref = -g / (16 - g * g) * z_quadratic(osc21, g)
        assert abs(dJK - ref) < 1e-6


def test_two_sheet_structure():
    loop = loop_around(2, 1.0, base=0.5)
    v1, s1 = continue_z_quadratic(UNIT, loop)
    assert s1 == -1 and abs(v1 + z_quadratic(UNIT, 0.5)) < 1e-12
    v2, s2 = continue_z_quadratic(UNIT, loop.then(loop))
    assert s2 == 1 and abs(v2 - z_quadratic(UNIT, 0.5)) < 1e-12
    _, s = continue_z_quadratic(UNIT, circle_path(0, 1.0, 32))
    assert s == 1
    with pytest.raises(ClearanceError):
        continue_z_quadratic(UNIT, segment_path(0, 2))


def test_sextic_z0():
    assert abs(z_sextic_series(0) - Z0) < 1e-13
    assert abs(z_sextic_quadrature(0) - Z0) < 1e-9


def test_sextic_series_evenness_and_margin():
    rng = np.random.default_rng(8)
    for g in rng.uniform(-1.1, 1.1, 20) + 1j * rng.uniform(-1.1, 1.1, 20):
        assert abs(z_sextic_series(-g) - z_sextic_series(g)) < 1e-13
    with pytest.raises(MarginError):
        z_sextic_series(1.7)


@pytest.mark.parametrize("g", [0.5, 1.0, 1.5])
def test_sextic_series_vs_quadrature(g):
    assert abs(z_sextic_series(g) - z_sextic_quadrature(g)) < 1e-8


@pytest.mark.parametrize("g", [0.0, 0.9, 1.5, -1.9])
def test_sextic_quadrature_vs_polar(g):
    assert abs(z_sextic_quadrature(g) - sextic_polar(g)) < 1e-9


def test_sextic_near_boundary():
    z = z_sextic_quadrature(1.99)
    assert math.isfinite(z) and z > 0
    with pytest.raises(DomainError):
        z_sextic_quadrature(2.0)


@pytest.mark.parametrize("g", [1.2, 1.5])
def test_connection_vs_series(g):
    assert abs(z_sextic_connection(g, 0) - z_sextic_series(g)) < 1e-10


def test_connection_beyond_series():
    assert abs(z_sextic_connection(1.8, 0) - z_sextic_quadrature(1.8)) < 1e-8


def test_connection_sheets():
    w = 1 - 1.5**2 / 4
    base = z_sextic_connection(1.5, 0)
    k3 = z_sextic_connection(1.5, 3)
    first = base - w ** (1 / 6) * (math.sqrt(math.pi) * special.gamma(-1 / 6) / 9) * special.hyp2f1(1 / 3, 1 / 3, 7 / 6, w)
    assert abs((base + k3) / 2 - first) < 1e-12
    s = SexticSheet(0)
    for _ in range(6):
        s = s.next()
    assert z_sextic_connection(1.5, s) == base
    with pytest.raises(MarginError):
        z_sextic_connection(0.5, 0)
    with pytest.raises(DomainError):
        SexticSheet(6)


def test_triple_agreement_band():
    for g in np.linspace(1.2, 1.6, 5):
        s, c, q = z_sextic_series(g), z_sextic_connection(g, 0), z_sextic_quadrature(g)
        assert max(abs(s - c), abs(s - q), abs(c - q)) <= 1e-8


def test_sextic_real_positive():
    for g in np.linspace(-1.9, 1.9, 9):
        z = z_sextic_quadrature(g)
        assert z > 0
        if abs(g) <= 1.6:
            assert abs(z_sextic_series(g).imag) == 0 and z_sextic_series(g).real > 0


def test_greens_parity_and_identity():
    assert greens_series(GreenIndex(1, 0), 0.8) == 0
    assert greens_quadrature(GreenIndex(3, 2), 0.8) == 0
    assert greens_series(GreenIndex(0, 0), 0.9) == z_sextic_series(0.9)
    assert greens_quadrature(GreenIndex(0, 0), 0.9) == z_sextic_quadrature(0.9)
    assert abs(greens_quadrature(GreenIndex(3, 1), 0)) < 1e-12


@pytest.mark.parametrize("a,b,g", [(2, 2, 1.0), (2, 2, 0.5), (1, 1, 0.5), (1, 1, 1.0), (3, 1, 1.2), (4, 0, -0.7)])
def test_greens_series_vs_quadrature(a, b, g):
    s = greens_series(GreenIndex(a, b), g)
    q = greens_quadrature(GreenIndex(a, b), g)
    assert abs(s - q) < 1e-8
    if (a, b) == (1, 1):
        assert q < 0


def test_greens_symmetry_and_parity_in_g():
    for a, b in ((2, 0), (3, 1), (4, 2), (5, 3)):
        for g in (0.4, 1.1 + 0.3j):
            assert abs(greens_series(GreenIndex(a, b), g) - greens_series(GreenIndex(b, a), g)) < 1e-13
            sign = 1 if a % 2 == 0 else -1
            assert abs(greens_series(GreenIndex(a, b), -g) - sign * greens_series(GreenIndex(a, b), g)) < 1e-13


def test_singularity_exponent():
    assert singularity_exponent(GreenIndex(0, 0)) == Fraction(1, 6)
    assert singularity_exponent(GreenIndex(2, 2)) == Fraction(-1, 2)
    assert singularity_exponent(GreenIndex(1, 1)) == Fraction(-1, 6)
    with pytest.raises(ParityError):
        singularity_exponent(GreenIndex(1, 2))
    with pytest.raises(DomainError):
        GreenIndex(-1, 0)


def test_sextic_monodromy():
    M = sextic_monodromy(loop_around(2, 0.5, base=1.0))
    ev = np.linalg.eigvals(M)
    targets = [1, cmath.exp(1j * math.pi / 3)]
    for t in targets:
        assert np.abs(ev - t).min() < 1e-7
    assert np.abs(np.linalg.matrix_power(M, 6) - np.eye(2)).max() < 1e-6
    M0 = sextic_monodromy(circle_path(1.0, 0.5, 32))
    assert np.abs(M0 - np.eye(2)).max() < 1e-9
    with pytest.raises(ClearanceError):
        sextic_monodromy(circle_path(1.0, 1.0, 32))


def test_sheet_accounting_agrees():
    # continuing from the series region once around g = 2 lands on the next connection sheet
    loop = loop_around(2, 0.5, base=1.5)
    assert abs(continue_sextic(loop) - z_sextic_connection(1.5, 1)) < 1e-10
    assert abs(continue_sextic(loop.then(loop)) - z_sextic_connection(1.5, 2)) < 1e-10
    assert abs(continue_sextic(loop.reversed()) - z_sextic_connection(1.5, 5)) < 1e-10
