"""Riemann-sheet structure of two coupled oscillators and of related
zero-dimensional partition functions."""

from .continuation import (
    GrandTour,
    MonodromyPermutation,
    RootTrack,
    grand_tour,
    loop_around,
    monodromy,
    track_roots,
)
from .oracle import FockTruncation, build_hamiltonian, lowest_energies, normal_mode_energies
from .paths import PathSpec, circle_path, load_path, save_path
from .quartets import zero_coupling_table, quartet_energies, recover_ansatz
from .surface import (
    SHEETS,
    OscillatorPair,
    SheetId,
    branch_points,
    eval_sheet,
    quartic_coeffs,
    sheet_values_at_zero,
    single_oscillator_energy,
    stokes_wedges,
)
from .zerodim import (
    GreenIndex,
    SexticSheet,
    SourcePair,
    greens_quadrature,
    greens_series,
    sextic_monodromy,
    singularity_exponent,
    z_quadratic,
    z_quadratic_sourced,
    z_sextic_connection,
    z_sextic_quadrature,
    z_sextic_series,
)

__version__ = "0.1.0"
