"""Command-line frontend.

Subcommands: simulate, optimize, sweep, convolve, analyze. All wavelengths
are vacuum nanometres. Exit codes: 0 ok, 2 usage/config, 3 physics/domain,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .errors import ConfigError, ContractError, NumericalError, PhysicsError
from .instrument import (
    FilterSpec,
    analyze_measured,
    comparison_report,
    convolve_jsi,
    fwhm,
    marginal,
    quadrature_fwhm,
)
from .jsa import PumpSpec, build_jsa, default_grid
from .scan import optimize_pump_bandwidth, wavelength_sweep
from .schmidt import decompose
from .svg import heatmap_svg, line_chart_svg

EXIT_OK, EXIT_CONFIG, EXIT_PHYSICS, EXIT_NUMERICAL = 0, 2, 3, 4


def _add_common(p, lambda0=True):
    p.add_argument("--config", help="simulation config JSON (default: bundled 30 mm PPKTP)")
    if lambda0:
        p.add_argument(
            "--lambda0", type=float, default=None,
            help="degenerate signal/idler wavelength in nm (pump at half)",
        )
    p.add_argument("--grid", type=int, default=None, help="points per grid axis")
    p.add_argument(
        "--span-widths", type=float, default=None,
        help="grid half-span in units of the estimated marginal FWHM",
    )


def _add_bandwidth(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--sigma", type=float, help="pump bandwidth sigma_p in rad/ps")
    g.add_argument(
        "--optimize", choices=("p_jsi", "p_jsa"),
        help="choose sigma_p maximizing this purity at --lambda0",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="purephoton",
        description="Joint spectra and spectral purity of group-velocity-matched SPDC.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="joint spectrum and Schmidt analysis at one wavelength")
    _add_common(p)
    _add_bandwidth(p)
    p.add_argument("--kind", choices=("JSI", "JSA"), default=None,
                   help="spectrum to write and decompose (default follows --optimize, else JSI)")
    p.add_argument("--out-csv", help="spectrum CSV path")
    p.add_argument("--out-json", help="Schmidt result JSON path")
    p.add_argument("--svg", help="heatmap SVG path")

    p = sub.add_parser("optimize", help="pump bandwidth maximizing a purity")
    _add_common(p)
    p.add_argument("--objective", choices=("p_jsi", "p_jsa"), default="p_jsi")
    p.add_argument("--out-json", help="result JSON path (default: stdout)")

    p = sub.add_parser("sweep", help="purity versus degenerate wavelength")
    _add_common(p, lambda0=False)
    p.add_argument("--from", dest="start", type=float, default=1460.0)
    p.add_argument("--to", dest="stop", type=float, default=1675.0)
    p.add_argument("--step", type=float, default=5.0)
    p.add_argument("--optimize-at", type=float, default=None,
                   help="wavelength (nm) where both bandwidths are optimized "
                        "(default: the crystal's degenerate wavelength)")
    p.add_argument("--sigma-jsi", type=float, help="fixed sigma_p for P_JSI (skips optimization)")
    p.add_argument("--sigma-jsa", type=float, help="fixed sigma_p for P_JSA (skips optimization)")
    p.add_argument("--resolve-poling", action="store_true",
                   help="re-solve the poling period at every wavelength")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="sweep CSV path (default: stdout)")
    p.add_argument("--svg", help="purity line chart SVG path")

    p = sub.add_parser("convolve", help="apply scanned Gaussian filters to a JSI CSV")
    p.add_argument("input", help="JSI CSV (lambda_s_nm,lambda_i_nm,value)")
    p.add_argument("--filter-fwhm", type=float, default=0.56, help="signal filter FWHM (nm)")
    p.add_argument("--filter-fwhm-idler", type=float, default=None,
                   help="idler filter FWHM (nm); defaults to --filter-fwhm")
    p.add_argument("--out-csv", help="convolved JSI CSV path")
    p.add_argument("--out-json", help="report JSON path (default: stdout)")
    p.add_argument("--svg", help="heatmap SVG path")

    p = sub.add_parser("analyze", help="P_JSI and bandwidths of a measured coincidence grid")
    p.add_argument("csv", help="coincidence counts CSV")
    p.add_argument("sidecar", help="JSON sidecar with dwell_s and filters")
    _add_common(p)
    _add_bandwidth(p)
    p.add_argument("--out", help="report JSON path (default: stdout)")
    return parser


def _emit(path, text):
    if path:
        io.atomic_write_text(path, text)
    else:
        sys.stdout.write(text)


def _emit_json(path, doc):
    import json

    _emit(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _setup(args):
    cfg = io.load_config(args.config)
    points = args.grid if args.grid is not None else cfg.points
    span = args.span_widths if args.span_widths is not None else cfg.span_widths
    lam0 = getattr(args, "lambda0", None)
    if lam0 is None:
        lam0 = (
            2 * cfg.pump_wavelength_nm
            if cfg.pump_wavelength_nm is not None
            else cfg.crystal.degenerate_wavelength_nm
        )
    crystal = cfg.crystal
    if crystal.poling_period_um is None:
        crystal = crystal.matched(lam0)
    return cfg, crystal, float(lam0), points, span


def _bandwidth(args, cfg, crystal, lam0, points, span):
    if getattr(args, "sigma", None) is not None:
        return args.sigma
    objective = getattr(args, "optimize", None)
    if objective is None and cfg.bandwidth is not None:
        return float(cfg.bandwidth)
    objective = objective or "p_jsi"
    return optimize_pump_bandwidth(crystal, lam0, objective, points, span).bandwidth


def cmd_simulate(args):
    cfg, crystal, lam0, points, span = _setup(args)
    sigma = _bandwidth(args, cfg, crystal, lam0, points, span)
    kind = args.kind or ("JSA" if args.optimize == "p_jsa" else "JSI")
    pump = PumpSpec(lam0 / 2.0, sigma)
    grid = default_grid(crystal, pump, points, span)
    spec = build_jsa(crystal, pump, grid)
    fspec = build_jsa(crystal, pump, grid.to_frequency())
    if kind == "JSI":
        spec, fspec = spec.intensity(), fspec.intensity()
    result = decompose(fspec)
    if args.out_csv:
        io.write_spectrum_csv(spec, args.out_csv)
    _emit_json(args.out_json, result.to_dict())
    if args.svg:
        io.atomic_write_text(
            args.svg,
            heatmap_svg(spec.density, grid.signal, grid.idler, f"{kind} at {lam0:g} nm"),
        )
    return EXIT_OK


def cmd_optimize(args):
    _, crystal, lam0, points, span = _setup(args)
    res = optimize_pump_bandwidth(crystal, lam0, args.objective, points, span)
    _emit_json(
        args.out_json,
        {
            "objective": res.objective,
            "lambda0_nm": lam0,
            "bandwidth_rad_per_ps": res.bandwidth,
            "purity": res.purity,
            "bracket_rad_per_ps": list(res.bracket),
        },
    )
    return EXIT_OK


def cmd_sweep(args):
    cfg = io.load_config(args.config)
    points = args.grid if args.grid is not None else cfg.points
    span = args.span_widths if args.span_widths is not None else cfg.span_widths
    at = args.optimize_at or cfg.crystal.degenerate_wavelength_nm
    crystal = cfg.crystal
    if crystal.poling_period_um is None:
        crystal = crystal.matched(at)
    s_jsi = args.sigma_jsi
    if s_jsi is None:
        s_jsi = optimize_pump_bandwidth(crystal, at, "p_jsi", points, span).bandwidth
    s_jsa = args.sigma_jsa
    if s_jsa is None:
        s_jsa = optimize_pump_bandwidth(crystal, at, "p_jsa", points, span).bandwidth
    rows = wavelength_sweep(
        crystal, args.start, args.stop, args.step, s_jsi, s_jsa,
        resolve_poling=args.resolve_poling, points=points, span_widths=span,
        workers=args.workers,
    )
    _emit(args.out, io.sweep_to_csv(rows))
    if args.svg:
        lam = [r.lambda_nm for r in rows]
        io.atomic_write_text(
            args.svg,
            line_chart_svg(
                lam,
                {"P_JSI": [r.p_jsi for r in rows], "P_JSA": [r.p_jsa for r in rows]},
                "purity vs wavelength", ylabel="purity",
            ),
        )
    return EXIT_OK


def cmd_convolve(args):
    spec = io.read_spectrum_csv(args.input, "JSI")
    fw_i = args.filter_fwhm_idler if args.filter_fwhm_idler is not None else args.filter_fwhm
    cs, ci = spec.grid.center
    f_s, f_i = FilterSpec(cs, args.filter_fwhm), FilterSpec(ci, fw_i)
    out = convolve_jsi(spec, f_s, f_i)
    the_s, the_i = fwhm(marginal(spec, "signal")), fwhm(marginal(spec, "idler"))
    report = {
        "p_jsi_theoretical": decompose(spec).purity,
        "p_jsi_convolved": decompose(out).purity,
        "filters": [f_s.to_dict(), f_i.to_dict()],
        "fwhm_theoretical_nm": {"signal": the_s, "idler": the_i},
        "fwhm_convolved_nm": {
            "signal": fwhm(marginal(out, "signal")),
            "idler": fwhm(marginal(out, "idler")),
        },
        "fwhm_quadrature_nm": {
            "signal": quadrature_fwhm(the_s, f_s.fwhm_nm),
            "idler": quadrature_fwhm(the_i, f_i.fwhm_nm),
        },
    }
    if args.out_csv:
        io.write_spectrum_csv(out, args.out_csv)
    _emit_json(args.out_json, report)
    if args.svg:
        io.atomic_write_text(
            args.svg, heatmap_svg(out.values, out.grid.signal, out.grid.idler, "convolved JSI")
        )
    return EXIT_OK


def cmd_analyze(args):
    measured = io.read_measured(args.csv, args.sidecar)
    rep = analyze_measured(measured)
    doc = {"measured": rep.to_dict()}
    if args.lambda0 is not None:
        cfg, crystal, lam0, points, span = _setup(args)
        sigma = _bandwidth(args, cfg, crystal, lam0, points, span)
        pump = PumpSpec(lam0 / 2.0, sigma)
        grid = default_grid(crystal, pump, points, span)
        theory = build_jsa(crystal, pump, grid).intensity()
        p_the = decompose(build_jsa(crystal, pump, grid.to_frequency()).intensity()).purity
        filters = measured.filters or (
            FilterSpec(grid.center[0], 0.56), FilterSpec(grid.center[1], 0.56)
        )
        conv = convolve_jsi(theory, filters[0], filters[-1])
        p_con = decompose(conv).purity
        fw = {ax: fwhm(marginal(theory, ax)) for ax in ("signal", "idler")}
        doc["purity"] = comparison_report([{
            "label": f"{lam0:g} nm",
            "theoretical": p_the,
            "convolved": p_con,
            "measured": rep.p_jsi,
        }])
        doc["bandwidth"] = comparison_report([
            {
                "label": f"{lam0:g} nm {ax}",
                "theoretical": fw[ax],
                "convolved": quadrature_fwhm(fw[ax], f.fwhm_nm),
                "measured": getattr(rep, f"fwhm_{ax}_nm"),
            }
            for ax, f in (("signal", filters[0]), ("idler", filters[-1]))
        ])
    _emit_json(args.out, doc)
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
    "convolve": cmd_convolve,
    "analyze": cmd_analyze,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, ContractError) as exc:
        print(f"purephoton: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhysicsError as exc:
        print(f"purephoton: physics error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"purephoton: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
