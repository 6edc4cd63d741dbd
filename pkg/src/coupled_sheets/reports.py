"""Deterministic number formatting and the trace CSV format."""

from __future__ import annotations

import csv
import io

import numpy as np

from .continuation import RootTrack

TRACE_HEADER = ["s", "g_re", "g_im", "E1_re", "E1_im", "E2_re", "E2_im", "E3_re", "E3_im", "E4_re", "E4_im"]
SIG_DIGITS = 9


def rounded(x: float) -> float:
    """x rounded to 9 significant digits (negative zero folded to zero)."""
    return float("%.*g" % (SIG_DIGITS, float(x))) + 0.0


def fmt(x: float) -> str:
    return repr(rounded(x))


def fmt_complex(z: complex) -> str:
    """``re`` when the imaginary part is exactly zero, else ``re,im``."""
    z = complex(z)
    if z.imag == 0:
        return fmt(z.real)
    return "%s,%s" % (fmt(z.real), fmt(z.imag))


def json_complex(z: complex) -> list[float]:
    z = complex(z)
    return [rounded(z.real), rounded(z.imag)]


def trace_rows(track: RootTrack):
    for s, g, E in zip(track.s, track.g, track.roots):
        row = [fmt(s), fmt(g.real), fmt(g.imag)]
        for e in E:
            row += [fmt(e.real), fmt(e.imag)]
        yield row


def trace_csv(track: RootTrack) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_HEADER)
    w.writerows(trace_rows(track))
    return buf.getvalue()


def read_trace_csv(text: str) -> RootTrack:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != TRACE_HEADER:
        raise ValueError("not a trace CSV (header mismatch)")
    data = np.array([[float(v) for v in r] for r in rows[1:]], dtype=float).reshape(-1, len(TRACE_HEADER))
    roots = data[:, 3::2] + 1j * data[:, 4::2]
    return RootTrack(data[:, 0], data[:, 1] + 1j * data[:, 2], roots)
