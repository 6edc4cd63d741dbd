"""Command-line front end.

Exit codes: 0 success, 2 usage or domain error, 1 internal/numerical failure.
Complex inputs use ``re,im``. ``RT_TOL`` overrides the root-tracking
residual tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import continuation, oracle, quartets, surface, zerodim
from .errors import DomainError
from .paths import circle_path, load_path, save_path
from .reports import fmt, fmt_complex, json_complex, rounded, trace_csv


class UsageError(DomainError):
    pass


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError("expected 're' or 're,im', got %r" % text)


def residual_tol() -> float:
    raw = os.environ.get("RT_TOL")
    if raw is None:
        return continuation.RESIDUAL_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError("RT_TOL must be a positive float, got %r" % raw) from None
    if not tol > 0:
        raise UsageError("RT_TOL must be a positive float, got %r" % raw)
    return tol


def _osc(args) -> surface.OscillatorPair:
    return surface.OscillatorPair(args.nu, args.omega)


def _emit(args, text_lines, payload, csv_header=None, csv_rows=None):
    fmt_ = getattr(args, "format", "text")
    if fmt_ == "json":
        out = json.dumps(payload, indent=1, sort_keys=True) + "\n"
    elif fmt_ == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(csv_header)
        w.writerows(csv_rows)
        out = buf.getvalue()
    else:
        out = "".join(line + "\n" for line in text_lines)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_eval(args):
    osc = _osc(args)
    sheet = surface.SheetId.from_number(args.sheet)
    E = surface.eval_sheet(osc, args.g, sheet)
    _emit(args, [fmt_complex(E)],
          {"g": json_complex(args.g), "sheet": sheet.number, "E": json_complex(E)},
          ["g_re", "g_im", "sheet", "E_re", "E_im"],
          [[fmt(args.g.real), fmt(args.g.imag), sheet.number, fmt(E.real), fmt(E.imag)]])


def cmd_trace(args):
    osc = _osc(args)
    path = load_path(args.path)
    track = continuation.track_roots(osc, path, residual_tol())
    text = trace_csv(track)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.figure:
        from .plotting import plot_trace
        plot_trace(track, osc, args.figure)


def cmd_monodromy(args):
    osc = _osc(args)
    path = load_path(args.path)
    perm = continuation.monodromy(osc, path, residual_tol())
    cyc = perm.notation(args.from_sheet)
    names = ["%d->%d" % (i, j) for i, j in perm.mapping]
    _emit(args, [cyc, "sheets: " + " ".join(names)],
          {"cycles": cyc, "mapping": {str(i): j for i, j in perm.mapping}},
          ["from_sheet", "to_sheet"], [[i, j] for i, j in perm.mapping])


def cmd_grand_tour(args):
    osc = _osc(args)
    tour = continuation.grand_tour(osc, residual_tol())
    lines = ["leg,sheet,E0,name"]
    rows = []
    for k, leg in enumerate(tour.legs):
        rows.append([k, leg.sheet.number, fmt(leg.energy), leg.name])
        lines.append("%d,%d,%s,%s" % (k, leg.sheet.number, fmt(leg.energy), leg.name))
    lines.append("net," + fmt(tour.net_change))
    payload = {
        "legs": [{"leg": k, "sheet": leg.sheet.number, "E0": rounded(leg.energy), "name": leg.name}
                 for k, leg in enumerate(tour.legs)],
        "net_change": rounded(tour.net_change),
        "composed": tour.composed().notation(),
    }
    _emit(args, lines, payload, ["leg", "sheet", "E0", "name"], rows)
    if args.figure:
        from .plotting import plot_grand_tour
        plot_grand_tour(tour, osc, args.figure)


def cmd_quartets(args):
    osc = _osc(args)
    q = quartets.quartet_energies(osc, args.g, args.sheet)
    labels = quartets.QUARTETS
    _emit(args, ["(%d,%d) %s" % (m, n, fmt_complex(q[(m, n)])) for m, n in labels],
          {"sheet": args.sheet, "g": json_complex(args.g), "labeling": q.labeling,
           "energies": {"%d,%d" % k: json_complex(q[k]) for k in labels}},
          ["m", "n", "E_re", "E_im"],
          [[m, n, fmt(q[(m, n)].real), fmt(q[(m, n)].imag)] for m, n in labels])


def cmd_oracle(args):
    osc = _osc(args)
    sl = oracle.lowest_energies(osc, args.g, oracle.FockTruncation(args.nmax), args.k)
    _emit(args, [fmt(e) for e in sl.eigenvalues],
          {"n_max": args.nmax, "eigenvalues": [rounded(e) for e in sl.eigenvalues],
           "truncation_error": [None if np.isnan(e) else rounded(e) for e in sl.truncation_error]},
          ["level", "E", "truncation_error"],
          [[i, fmt(e), "nan" if np.isnan(d) else fmt(d)]
           for i, (e, d) in enumerate(zip(sl.eigenvalues, sl.truncation_error))])


def cmd_partition(args):
    g = args.g
    if args.model == "quadratic":
        if args.sheet not in (1, -1):
            raise UsageError("quadratic model sheet must be +1 or -1")
        src = zerodim.SourcePair(args.J, args.K)
        Z = zerodim.z_quadratic_sourced((args.nu, args.omega), g, src, args.sheet)
        _emit(args, [fmt_complex(Z)], {"model": "quadratic", "Z": json_complex(Z)},
              ["Z_re", "Z_im"], [[fmt(Z.real), fmt(Z.imag)]])
        return
    cols, row, payload = [], [], {"model": "sextic", "g": json_complex(g)}
    values = {}
    if abs(g) <= zerodim.SEXTIC_SERIES_MAX_G:
        values["series"] = zerodim.z_sextic_series(g)
    if abs(1 - g * g / 4) <= zerodim.CONNECTION_MARGIN:
        values["connection"] = zerodim.z_sextic_connection(g, args.sheet % 6)
    if g.imag == 0 and abs(g.real) < 2:
        values["quadrature"] = complex(zerodim.z_sextic_quadrature(g.real))
    if not values:
        raise UsageError("no sextic evaluation is valid at g = %s" % fmt_complex(g))
    for k, v in values.items():
        cols += [k + "_re", k + "_im"]
        row += [fmt(v.real), fmt(v.imag)]
        payload[k] = json_complex(v)
    if "series" in values and "quadrature" in values:
        d = abs(values["series"] - values["quadrature"])
        cols.append("abs_delta")
        row.append(fmt(d))
        payload["abs_delta"] = rounded(d)
    text = ["%s %s" % (k, fmt_complex(v)) for k, v in values.items()]
    if "abs_delta" in payload:
        text.append("|delta| " + fmt(payload["abs_delta"]))
    _emit(args, text, payload, cols, [row])


def cmd_greens(args):
    idx = zerodim.GreenIndex(args.alpha, args.beta)
    g = args.g
    s = zerodim.greens_series(idx, g)
    payload = {"alpha": idx.alpha, "beta": idx.beta, "series": json_complex(s)}
    cols, row = ["series_re", "series_im"], [fmt(s.real), fmt(s.imag)]
    text = ["series %s" % fmt_complex(s)]
    if g.imag == 0:
        q = zerodim.greens_quadrature(idx, g.real)
        payload["quadrature"] = rounded(q)
        payload["abs_delta"] = rounded(abs(s - q))
        cols += ["quadrature", "abs_delta"]
        row += [fmt(q), fmt(abs(s - q))]
        text += ["quadrature %s" % fmt(q), "|delta| %s" % fmt(abs(s - q))]
    if (idx.alpha + idx.beta) % 2 == 0:
        e = zerodim.singularity_exponent(idx)
        payload["singularity_exponent"] = str(e)
        text.append("singularity exponent %s" % e)
    _emit(args, text, payload, cols, [row])


def cmd_branch_points(args):
    bp = surface.branch_points(_osc(args))
    pts = bp.all()
    kinds = ["inner", "inner", "outer", "outer"]
    _emit(args, ["%s %s" % (k, fmt_complex(p)) for k, p in zip(kinds, pts)],
          {"inner": [json_complex(p) for p in bp.inner_points], "outer": [json_complex(p) for p in bp.outer_points]},
          ["kind", "g_re", "g_im"], [[k, fmt(p.real), fmt(p.imag)] for k, p in zip(kinds, pts)])


def cmd_circle(args):
    path = circle_path(args.center, args.radius, args.segments, args.orientation)
    if args.out:
        save_path(path, args.out)
    else:
        sys.stdout.write(json.dumps(path.to_json(), indent=1) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coupled-sheets", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def osc_args(sp):
        sp.add_argument("--nu", type=float, required=True)
        sp.add_argument("--omega", type=float, required=True)

    def out_args(sp):
        sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
        sp.add_argument("--out", help="write the report to this file instead of stdout")

    sp = sub.add_parser("eval", help="energy on one sheet")
    osc_args(sp)
    sp.add_argument("--g", type=parse_complex, required=True)
    sp.add_argument("--sheet", type=int, choices=[1, 2, 3, 4], required=True)
    out_args(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("trace", help="track the four roots along a path (CSV)")
    osc_args(sp)
    sp.add_argument("--path", required=True, help="path JSON file")
    sp.add_argument("--out")
    sp.add_argument("--figure", help="also render a PNG of the trace")
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("monodromy", help="sheet permutation around a closed path")
    osc_args(sp)
    sp.add_argument("--path", required=True)
    sp.add_argument("--from-sheet", type=int, choices=[1, 2, 3, 4],
                    help="print only the cycle containing this sheet")
    out_args(sp)
    sp.set_defaults(func=cmd_monodromy)

    sp = sub.add_parser("grand-tour", help="visit all four sheets returning to g = 0")
    osc_args(sp)
    out_args(sp)
    sp.add_argument("--figure")
    sp.set_defaults(func=cmd_grand_tour)

    sp = sub.add_parser("quartets", help="the four (m, n) quartet energies on a sheet")
    osc_args(sp)
    sp.add_argument("--g", type=parse_complex, required=True)
    sp.add_argument("--sheet", type=int, choices=[1, 2, 3, 4], required=True)
    out_args(sp)
    sp.set_defaults(func=cmd_quartets)

    sp = sub.add_parser("oracle", help="Fock-basis diagonalization (real g)")
    osc_args(sp)
    sp.add_argument("--g", type=float, required=True)
    sp.add_argument("--nmax", type=int, default=30)
    sp.add_argument("--k", type=int, default=4)
    out_args(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("partition", help="zero-dimensional partition functions")
    sp.add_argument("--model", choices=["quadratic", "sextic"], required=True)
    sp.add_argument("--g", type=parse_complex, required=True)
    sp.add_argument("--nu", type=float, default=1.0)
    sp.add_argument("--omega", type=float, default=1.0)
    sp.add_argument("--sheet", type=int, default=None,
                    help="quadratic: +1/-1 (default +1); sextic: 0..5 (default 0)")
    sp.add_argument("--J", type=parse_complex, default=0j)
    sp.add_argument("--K", type=parse_complex, default=0j)
    out_args(sp)
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("greens", help="sextic Green's function G_ab")
    sp.add_argument("--alpha", type=int, required=True)
    sp.add_argument("--beta", type=int, required=True)
    sp.add_argument("--g", type=parse_complex, required=True)
    out_args(sp)
    sp.set_defaults(func=cmd_greens)

    sp = sub.add_parser("branch-points", help="list the branch points")
    osc_args(sp)
    out_args(sp)
    sp.set_defaults(func=cmd_branch_points)

    sp = sub.add_parser("circle", help="write a circular path JSON")
    sp.add_argument("--center", type=parse_complex, required=True)
    sp.add_argument("--radius", type=float, required=True)
    sp.add_argument("--segments", type=int, default=64)
    sp.add_argument("--orientation", type=int, choices=[1, -1], default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_circle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "partition" and args.sheet is None:
        args.sheet = 1 if args.model == "quadratic" else 0
    try:
        args.func(args)
    except DomainError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print("internal error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
