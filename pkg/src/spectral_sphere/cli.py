"""Command-line interface.

Subcommands::

    spectral-sphere singularities --medium rose-bengal-dmso --radius 3.300mm
    spectral-sphere scan --medium rose-bengal-dmso --radius 3.300mm --g0 4.981546 --window 548.9:549.1
    spectral-sphere min-radius --medium rose-bengal-dmso
    spectral-sphere media list

Exit codes: 0 success, 2 usage/configuration error, 3 numerical failure.
"""
import argparse
import csv
import io
import json
import logging
import math
import sys

from . import gainmodel, solver
from .errors import SpectralSphereError
from .specfun import NU_DEFAULT
from .units import nm_to_mm, parse_length

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

log = logging.getLogger(__name__)


class ConfigError(ValueError):
    pass


def fmt(value):
    """Floats at 17 significant digits, so they parse back bit-for-bit."""
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


# ---------------------------------------------------------------------------
# Serialization of mode tables
# ---------------------------------------------------------------------------

SOLUTION_COLUMNS = ["ell", "m", "g0_per_cm", "lambda_pert_nm", "lambda_exact_nm", "residual", "status"]


def solution_rows(solutions):
    for ell, s in enumerate(solutions, start=1):
        exact = s.method == "exact"
        yield {
            "ell": ell,
            "m": s.m,
            "g0_per_cm": s.g0,
            "lambda_pert_nm": s.lam_pert,
            "lambda_exact_nm": s.lam if exact else "",
            "residual": s.residual_mag,
            "status": s.status,
        }


def solutions_to_csv(solutions):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, SOLUTION_COLUMNS, lineterminator="\r\n")
    writer.writeheader()
    for row in solution_rows(solutions):
        writer.writerow({k: fmt(v) for k, v in row.items()})
    return buf.getvalue()


def solutions_to_json(solutions):
    records = [dict(ell=ell, **s.to_dict()) for ell, s in enumerate(solutions, start=1)]
    return json.dumps(records, indent=1)


def solutions_from_json(text):
    out = []
    for rec in json.loads(text):
        rec = dict(rec)
        rec.pop("ell", None)
        out.append(solver.ModeSolution.from_dict(rec))
    return out


def read_solutions_csv(text):
    """Parse the CSV table back into dictionaries with numeric fields."""
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append({
            "ell": int(row["ell"]),
            "m": int(row["m"]),
            "g0_per_cm": float(row["g0_per_cm"]),
            "lambda_pert_nm": float(row["lambda_pert_nm"]),
            "lambda_exact_nm": float(row["lambda_exact_nm"]) if row["lambda_exact_nm"] else None,
            "residual": float(row["residual"]),
            "status": row["status"],
        })
    return rows


def _log10(r):
    return math.log10(r) if r > 0 else -math.inf


def scan_to_csv(result):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["lambda_nm", "R", "log10R"])
    for s in result.samples:
        w.writerow([fmt(s.lam), fmt(s.R), fmt(_log10(s.R))])
    buf.write("\r\n# peaks\r\n")
    w.writerow(["lambda_nm", "R", "log10R", "classification"])
    for p in result.peaks:
        w.writerow([fmt(p.lam), fmt(p.R), fmt(_log10(p.R)), p.classification])
    return buf.getvalue()


def scan_to_json(result):
    return json.dumps({
        "samples": [{"lambda_nm": s.lam, "R": s.R, "log10R": _log10(s.R)} for s in result.samples],
        "peaks": [
            {"lambda_nm": p.lam, "R": p.R, "log10R": _log10(p.R), "classification": p.classification}
            for p in result.peaks
        ],
    })


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

def _positive(kind):
    def conv(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
        if not v > 0:
            raise argparse.ArgumentTypeError(f"{text!r} must be positive")
        return v
    return conv


def _non_negative(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be non-negative")
    return v


def _length(text):
    try:
        v = parse_length(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not v > 0:
        raise argparse.ArgumentTypeError("radius must be positive")
    return v


def _window(text):
    try:
        lo, hi = (float(s) for s in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like LO:HI (nm), got {text!r}") from None
    if not 0 < lo < hi:
        raise argparse.ArgumentTypeError("window must be positive and ordered")
    return lo, hi


def _load_catalog(path):
    if not path:
        return {}
    try:
        return gainmodel.load_catalog(path)
    except (OSError, SpectralSphereError) as exc:
        raise ConfigError(f"cannot read catalog {path}: {exc}") from None


def _resolve_medium(args):
    catalog = _load_catalog(args.catalog)
    try:
        return gainmodel.get_medium(args.medium, catalog)
    except KeyError as exc:
        raise ConfigError(exc.args[0]) from None


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_singularities(args, out):
    medium = _resolve_medium(args)
    cap = args.g0_max if args.g0_max is not None else medium.g0_max
    sols = solver.enumerate_singularities(
        medium, args.radius, NU_DEFAULT, refine=not args.no_refine, g0_cap=cap,
        dispersion=args.dispersion, workers=args.workers,
    )
    if not sols:
        print(f"radius below minimum: no mode of {medium.name} reaches threshold under "
              f"g0 <= {cap} cm^-1 at a = {nm_to_mm(args.radius)} mm", file=sys.stderr)
    out.write(solutions_to_json(sols) + "\n" if args.format == "json" else solutions_to_csv(sols))
    return EXIT_OK if all(s.status == "ok" for s in sols) else EXIT_NUMERIC


def cmd_scan(args, out):
    medium = _resolve_medium(args)
    g0 = args.g0
    if g0 is None:
        first = solver.first_critical_gain(medium, args.radius, dispersion=args.dispersion)
        if first is None:
            raise ConfigError("no --g0 given and the radius supports no singularity")
        g0 = first.g0
    window = args.window or (medium.lambda0 - 0.1, medium.lambda0 + 0.1)
    result = solver.reflection_scan(
        medium, args.radius, g0, window, args.grid, refine_peaks=not args.no_refine,
        dispersion=args.dispersion, workers=args.workers,
    )
    out.write(scan_to_json(result) + "\n" if args.format == "json" else scan_to_csv(result))
    return EXIT_OK


def cmd_min_radius(args, out):
    medium = _resolve_medium(args)
    res = gainmodel.min_radius(medium, NU_DEFAULT, g0_max=args.g0_max)
    rec = {
        "medium": medium.name,
        "radius_mm": nm_to_mm(res.radius),
        "m": res.m,
        "lambda_nm": res.wavelength,
        "envelope_mm": nm_to_mm(res.envelope),
    }
    if args.format == "json":
        out.write(json.dumps(rec) + "\n")
    else:
        w = csv.writer(out, lineterminator="\r\n")
        w.writerow(list(rec))
        w.writerow([fmt(v) for v in rec.values()])
    return EXIT_OK


def cmd_media_list(args, out):
    catalog = _load_catalog(args.catalog)
    media = dict(gainmodel.PRESETS)
    media.update(catalog)
    recs = [
        {"name": m.name, "n0": m.n0, "lambda0_nm": m.lambda0, "gamma_hat": m.gamma_hat, "g0_max_per_cm": m.g0_max}
        for m in media.values()
    ]
    if args.format == "json":
        out.write(json.dumps(recs) + "\n")
    else:
        w = csv.writer(out, lineterminator="\r\n")
        w.writerow(list(recs[0]))
        for r in recs:
            w.writerow([fmt(v) for v in r.values()])
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="spectral-sphere", description=__doc__.split("\n\n")[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, radius=True):
        sp.add_argument("--medium", required=True, help="preset or catalog medium name")
        sp.add_argument("--catalog", metavar="FILE", help="media catalog file")
        if radius:
            sp.add_argument("--radius", type=_length, required=True, help="sphere radius with unit, e.g. 3.300mm")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    def numeric(sp):
        sp.add_argument("--dispersion", choices=gainmodel.DISPERSION_MODES, default=solver.DEFAULT_DISPERSION)
        sp.add_argument("--no-refine", action="store_true")
        sp.add_argument("--workers", type=_positive(int), default=1)

    sp = sub.add_parser("singularities", help="enumerate spectral singularities under the gain cap")
    common(sp)
    numeric(sp)
    sp.add_argument("--g0-max", type=_positive(float), help="override the medium's gain cap (cm^-1)")
    sp.set_defaults(func=cmd_singularities)

    sp = sub.add_parser("scan", help="reflection coefficient spectrum with peak summary")
    common(sp)
    numeric(sp)
    sp.add_argument("--g0", type=_non_negative, help="gain coefficient (cm^-1); default: first critical value")
    sp.add_argument("--window", type=_window, metavar="LO:HI", help="wavelength window in nm")
    sp.add_argument("--grid", type=_positive(int), default=10_000)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("min-radius", help="smallest radius supporting a spectral singularity")
    common(sp, radius=False)
    sp.add_argument("--g0-max", type=_positive(float), help="override the medium's gain cap (cm^-1)")
    sp.set_defaults(func=cmd_min_radius)

    sp = sub.add_parser("media", help="media catalog operations")
    media_sub = sp.add_subparsers(dest="media_command", required=True)
    lp = media_sub.add_parser("list", help="list preset and catalog media")
    lp.add_argument("--catalog", metavar="FILE")
    lp.add_argument("--format", choices=("csv", "json"), default="csv")
    lp.set_defaults(func=cmd_media_list)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SpectralSphereError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
