"""Command-line front end: spectral sweeps, order runs, eigenvalue evaluation, energy balance.

Exit codes: 0 success, 1 verification failure (parseval residual above
tolerance), 2 malformed input or usage error.  All output is deterministic:
identical arguments produce byte-identical CSV bodies, and --threads changes
wall time only.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .analysis import estimate_order, min_nodes, parseval_check
from .discrete import DEFAULT_H_SCALE, a_prime, refine_eigenvalue
from .errors import (
    EigenvalueSearchError,
    RoundoffFloorError,
    SignalFormatError,
    SolverError,
)
from .grids import SampledPotential, SchemeParams, UniformGrid, validate_potential
from .potentials import ReferencePotential, make_reference
from .propagators import propagate
from .scattering import SpectralGrid, continuous_sweep, extract_ab, reflection

_REFERENCE_NAMES = ("sech", "satsuma_yajima", "rectangle", "zero")


def _complex_arg(text: str) -> complex:
    try:
        return complex(text.strip().replace("i", "j").replace("J", "j"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from exc


def _fmt(value: float) -> str:
    return repr(float(value))


def load_signal(path: str | Path, sigma: int = 1) -> SampledPotential:
    """Read a signal CSV (header t,re_q,im_q; '#' comments allowed).

    The grid must be uniform within 1e-9 relative spacing, centered on t = 0,
    with an odd node count and finite values.
    """
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    rows = []
    header_seen = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if [c.strip() for c in line.split(",")] != ["t", "re_q", "im_q"]:
                raise SignalFormatError(f"line {lineno}: expected header 't,re_q,im_q'")
            header_seen = True
            continue
        fields = line.split(",")
        if len(fields) != 3:
            raise SignalFormatError(f"line {lineno}: ragged row ({len(fields)} fields)")
        try:
            rows.append(tuple(float(f) for f in fields))
        except ValueError as exc:
            raise SignalFormatError(f"line {lineno}: {exc}") from exc
    if not header_seen:
        raise SignalFormatError("missing header 't,re_q,im_q'")
    if len(rows) < 3:
        raise SignalFormatError("need at least 3 sample rows")

    data = np.array(rows)
    t = data[:, 0]
    if not np.all(np.isfinite(data)):
        raise SignalFormatError("non-finite values in signal file")
    ref_step = (t[-1] - t[0]) / (len(t) - 1)
    if ref_step <= 0:
        raise SignalFormatError("non-uniform grid: time column must increase")
    if np.max(np.abs(np.diff(t) - ref_step)) > 1e-9 * ref_step:
        raise SignalFormatError("non-uniform grid: spacing varies beyond 1e-9 relative")
    if abs(t[0] + t[-1]) > 1e-9 * (t[-1] - t[0]):
        raise SignalFormatError("grid must be centered on t = 0 (domain [-L, L])")
    try:
        return validate_potential(data[:, 1] + 1j * data[:, 2], (t[-1] - t[0]) / 2.0, sigma)
    except ValueError as exc:
        raise SignalFormatError(str(exc)) from exc


def write_signal(potential: SampledPotential, path: str | Path) -> None:
    """Write a potential in the load_signal format with full float precision."""
    lines = ["# zscatter signal", "t,re_q,im_q"]
    for t, q in zip(potential.grid.nodes, potential.samples):
        lines.append(f"{float(t)!r},{float(q.real)!r},{float(q.imag)!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _add_potential_args(parser: argparse.ArgumentParser, with_input: bool = True) -> None:
    parser.add_argument("--potential", choices=_REFERENCE_NAMES, help="built-in reference signal")
    if with_input:
        parser.add_argument("--input", metavar="FILE", help="signal file (CSV t,re_q,im_q)")
    parser.add_argument("--L", type=float, default=40.0, help="half-width of the time domain")
    parser.add_argument("--M", type=int, default=4096, help="half node count (grid has 2M+1 nodes)")
    parser.add_argument("--sigma", type=int, choices=(1, -1), default=1,
                        help="+1 focusing / -1 defocusing")
    parser.add_argument("--amplitude", type=float, default=None,
                        help="amplitude for satsuma_yajima / rectangle")
    parser.add_argument("--edges", type=float, nargs=2, default=(-1.0, 1.0),
                        metavar=("T1", "T2"), help="rectangle edges")


def _add_scheme_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scheme", choices=("bo", "ct4", "family"), default="ct4")
    parser.add_argument("--alpha", type=float, default=1.0 / 48.0, help="family coefficient")
    parser.add_argument("--beta", type=float, default=1.0 / 48.0, help="family coefficient")


def _scheme_params(args) -> SchemeParams:
    if args.scheme == "bo":
        return SchemeParams.bo()
    if args.scheme == "ct4":
        return SchemeParams.ct4()
    return SchemeParams.family(args.alpha, args.beta)


def _resolve_potential(args) -> tuple[SampledPotential, ReferencePotential | None, str]:
    if getattr(args, "input", None):
        if args.potential:
            raise ValueError("give either --potential or --input, not both")
        return load_signal(args.input, args.sigma), None, str(args.input)
    if not args.potential:
        raise ValueError("one of --potential or --input is required")
    grid = UniformGrid(half_width=args.L, half_steps=args.M)
    potential, reference = make_reference(
        args.potential, grid, amplitude=args.amplitude, edges=tuple(args.edges)
    )
    if args.sigma != 1:
        potential = SampledPotential(grid=grid, samples=potential.samples, sigma=args.sigma)
        reference = None  # closed forms tabulated for the focusing problem only
    return potential, reference, args.potential


def _emit(lines: list[str], output: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_sweep(args) -> int:
    potential, _, label = _resolve_potential(args)
    params = _scheme_params(args)
    if args.xi_max is not None:
        grid = SpectralGrid.uniform(args.xi_max, args.n_xi or potential.grid.node_count)
    else:
        grid = SpectralGrid.fourier_convention(potential, args.n_xi)

    bound = min_nodes(grid.half_width, potential.max_abs, potential.grid.half_width)
    if potential.grid.half_steps < bound:
        print(
            f"warning: M={potential.grid.half_steps} is below the sampling bound "
            f"M_min={bound} for |xi| up to {grid.half_width:g}; results may be unresolved",
            file=sys.stderr,
        )

    samples = continuous_sweep(potential, grid, params, threads=args.threads)
    lines = [
        "# zscatter sweep",
        f"# potential={label} L={potential.grid.half_width!r} M={potential.grid.half_steps} "
        f"scheme={args.scheme} sigma={potential.sigma} n_xi={grid.n_points} d_xi={grid.step!r}",
        "xi,re_a,im_a,re_b,im_b,abs_r",
    ]
    for s in samples:
        r = reflection(s)
        lines.append(
            f"{_fmt(s.zeta.real)},{_fmt(s.a.real)},{_fmt(s.a.imag)},"
            f"{_fmt(s.b.real)},{_fmt(s.b.imag)},{_fmt(abs(r))}"
        )
    _emit(lines, args.output)
    return 0


def _cmd_order(args) -> int:
    args.input = None  # order runs need a resampleable built-in reference
    if args.sigma != 1:
        raise ValueError("order runs are defined for the focusing problem (sigma = +1)")
    _, reference, label = _resolve_potential(args)

    schemes: list[tuple[str, SchemeParams]]
    if args.scheme == "both":
        schemes = [("bo", SchemeParams.bo()), ("ct4", SchemeParams.ct4())]
    elif args.scheme == "family":
        schemes = [("family", SchemeParams.family(args.alpha, args.beta))]
    else:
        schemes = [(args.scheme, _scheme_params(args))]

    xis = np.linspace(-args.xi_max, args.xi_max, args.n_xi)
    pairs = [int(m) for m in (args.coarse_M or [1024, 2048])]
    lines = [
        "# zscatter order",
        f"# potential={label} L={args.L!r} pairs={pairs} n_xi={args.n_xi} xi_max={args.xi_max!r}",
        "xi,coarse_M,fine_M," + ",".join(f"m_{name}" for name, _ in schemes),
    ]
    measured = 0
    for coarse in pairs:
        for xi in xis:
            zeta = complex(xi)
            final = reference.final_state(zeta)
            cells = [_fmt(xi), str(coarse), str(2 * coarse)]
            for _, params in schemes:
                try:
                    est = estimate_order(reference.resample, zeta, params, coarse, final)
                except RoundoffFloorError:
                    # e.g. xi = 0 on a real signal, where the schemes are
                    # exponentially accurate: no measurable order there
                    cells.append("")
                else:
                    cells.append(_fmt(est.m))
                    measured += 1
            lines.append(",".join(cells))
    if measured == 0:
        print("error: roundoff floor: no spectral point yields a measurable order",
              file=sys.stderr)
        return 2
    _emit(lines, args.output)
    return 0


def _eigen_row(potential, reference, params, zeta, mode, fd_step):
    """One eigen CSV row; Newton failures are reported, not raised."""
    status = "ok"
    iterations = 0
    a = b = ap = r = None
    err_zeta = err_a = err_b = ""
    try:
        if mode == "refine":
            result = refine_eigenvalue(potential, zeta, params)
            zeta, a, b, ap, r = result.zeta, result.a_at, result.b, result.a_prime, result.norming
            iterations = result.iterations
        else:
            sample = extract_ab(propagate(potential, zeta, params), zeta)
            a, b = sample.a, sample.b
            h = fd_step if fd_step else DEFAULT_H_SCALE * max(1.0, abs(zeta))
            if zeta.imag > h:
                ap = a_prime(potential, zeta, params, h=fd_step)
                if abs(ap) > 1e-14:
                    r = b / ap
    except EigenvalueSearchError as exc:
        status = f"diverged: {exc}"

    if status == "ok" and reference is not None:
        err_a = _fmt(abs(a - reference.analytic_a(zeta)))
        if reference.eigenvalues:
            nearest = min(reference.eigenvalues, key=lambda ev: abs(ev - zeta))
            err_zeta = _fmt(abs(zeta - nearest))
            if abs(zeta - nearest) < 1e-6:
                b_ref = reference.b_at_eigenvalues[reference.eigenvalues.index(nearest)]
                err_b = _fmt(abs(b - b_ref))
        if not err_b and zeta.imag == 0:
            err_b = _fmt(abs(b - reference.analytic_b(zeta)))

    def pair(value):
        return f"{_fmt(value.real)},{_fmt(value.imag)}" if value is not None else ","

    return (
        f"{mode},{_fmt(zeta.real)},{_fmt(zeta.imag)},{status.split(':')[0]},{iterations},"
        f"{pair(a)},{pair(b)},{pair(ap)},{pair(r)},{err_zeta},{err_a},{err_b}"
    ), status


def _cmd_eigen(args) -> int:
    potential, reference, label = _resolve_potential(args)
    params = _scheme_params(args)
    if not args.at and not args.refine:
        raise ValueError("give at least one --at or --refine spectral point")
    lines = [
        "# zscatter eigen",
        f"# potential={label} L={potential.grid.half_width!r} M={potential.grid.half_steps} "
        f"scheme={args.scheme} sigma={potential.sigma}",
        "mode,re_zeta,im_zeta,status,iterations,re_a,im_a,re_b,im_b,"
        "re_aprime,im_aprime,re_r,im_r,err_zeta,err_a,err_b",
    ]
    failures = []
    for zeta in args.at or []:
        row, status = _eigen_row(potential, reference, params, zeta, "at", args.fd_step)
        lines.append(row)
        if status != "ok":
            failures.append(status)
    for zeta in args.refine or []:
        row, status = _eigen_row(potential, reference, params, zeta, "refine", args.fd_step)
        lines.append(row)
        if status != "ok":
            failures.append(status)
    _emit(lines, args.output)
    for failure in failures:
        print(f"warning: {failure}", file=sys.stderr)
    return 0


def _cmd_parseval(args) -> int:
    potential, reference, label = _resolve_potential(args)
    params = _scheme_params(args)
    grid = SpectralGrid.fourier_convention(potential, args.n_xi)
    samples = continuous_sweep(potential, grid, params, threads=args.threads)

    caveat = None
    modes = []
    if args.no_modes:
        pass
    elif reference is not None:
        modes = [refine_eigenvalue(potential, ev, params) for ev in reference.eigenvalues]
    elif args.mode_start:
        modes = [refine_eigenvalue(potential, z, params) for z in args.mode_start]
    else:
        caveat = "modes unspecified: discrete energy omitted (give --mode-start)"

    report = parseval_check(potential, samples, modes)
    print(f"potential:                  {label}")
    print(f"signal energy (time):       {report.c0_time:.12g}")
    print(f"continuous spectrum energy: {report.e_continuous:.12g}")
    print(f"discrete spectrum energy:   {report.e_discrete:.12g}")
    print(f"residual:                   {report.residual:.6g}")
    if caveat:
        print(f"caveat: {caveat}")
        return 2
    passed = report.residual <= args.tol
    print(f"status: {'PASS' if passed else 'FAIL'} (tol {args.tol:g})")
    return 0 if passed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zscatter",
        description="Direct Zakharov-Shabat scattering with 2nd- and 4th-order transfer schemes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="continuous-spectrum sweep to CSV")
    _add_potential_args(p_sweep)
    _add_scheme_args(p_sweep)
    p_sweep.add_argument("--n-xi", type=int, default=None, help="number of spectral points")
    p_sweep.add_argument("--xi-max", type=float, default=None,
                         help="override spectral half-width (default pi/(2 tau))")
    p_sweep.add_argument("--threads", type=int, default=1)
    p_sweep.add_argument("--output", default=None, help="CSV path (default stdout)")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_order = sub.add_parser("order", help="empirical approximation order on embedded grids")
    _add_potential_args(p_order, with_input=False)
    p_order.add_argument("--scheme", choices=("both", "bo", "ct4", "family"), default="both")
    p_order.add_argument("--alpha", type=float, default=1.0 / 48.0)
    p_order.add_argument("--beta", type=float, default=1.0 / 48.0)
    p_order.add_argument("--coarse-M", type=int, action="append", default=None,
                         help="coarse grid half count; repeatable (default 1024 and 2048)")
    p_order.add_argument("--n-xi", type=int, default=201)
    p_order.add_argument("--xi-max", type=float, default=20.0)
    p_order.add_argument("--output", default=None)
    p_order.set_defaults(handler=_cmd_order)

    p_eigen = sub.add_parser("eigen", help="evaluate a, b at given zeta / refine eigenvalues")
    _add_potential_args(p_eigen)
    _add_scheme_args(p_eigen)
    p_eigen.add_argument("--at", type=_complex_arg, action="append",
                         help="evaluate at this zeta without root finding; repeatable")
    p_eigen.add_argument("--refine", type=_complex_arg, action="append",
                         help="Newton-refine from this starting zeta; repeatable")
    p_eigen.add_argument("--fd-step", type=float, default=None,
                         help="finite-difference step for a'")
    p_eigen.add_argument("--output", default=None)
    p_eigen.set_defaults(handler=_cmd_eigen)

    p_par = sub.add_parser("parseval", help="energy balance between signal and spectra")
    _add_potential_args(p_par)
    _add_scheme_args(p_par)
    p_par.add_argument("--n-xi", type=int, default=None)
    p_par.add_argument("--tol", type=float, default=1e-4)
    p_par.add_argument("--no-modes", action="store_true",
                       help="omit the discrete-spectrum energy")
    p_par.add_argument("--mode-start", type=_complex_arg, action="append",
                       help="Newton start for a discrete mode (non-reference signals)")
    p_par.add_argument("--threads", type=int, default=1)
    p_par.set_defaults(handler=_cmd_parseval)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (SolverError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
