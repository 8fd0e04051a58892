"""Command-line front end.

Subcommands: ``amp``, ``hv``, ``squeeze-scan``, ``bell``, ``lattice`` and
``oracle-check``.  Single results are printed as JSON, scans as CSV; both
carry a run manifest.  Shared options may also be set through ``CSREL_*``
environment variables (``CSREL_SEED``, ``CSREL_FOCK_DIM``, ``CSREL_FOCK_DIM_TWO``,
``CSREL_TOL``, ``CSREL_THREADS``); command-line flags take precedence.

Exit status: 0 on success, 1 on a usage error, 2 when a numerical contract
(tail bound, normalization, quadrature quality, oracle agreement) fails.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time

import numpy as np

from . import bell, checks, fock, hv, squeeze, su2, wh
from .core import NormalizationError, probability_of, relation_size
from .output import RunManifest, csv_document, json_document

ENV_PREFIX = "CSREL_"
DEFAULT_SEED = 2
EXIT_USAGE = 1
EXIT_NUMERICAL = 2


class UsageError(Exception):
    pass


class ContractFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_complex(text: str) -> complex:
    """``re,im`` (or a bare real) to a complex number."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")


def parse_grid(text: str) -> np.ndarray:
    """``lo:hi:n`` to ``n`` evenly spaced values."""
    try:
        lo, hi, n = text.split(":")
        n = int(n)
        if n < 1:
            raise ValueError
        return np.linspace(float(lo), float(hi), n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo:hi:n', got {text!r}") from None


def _env(name: str, cast, default):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"bad value {raw!r} for {ENV_PREFIX}{name}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("shared options")
    g.add_argument("--seed", type=int, default=_env("SEED", int, DEFAULT_SEED))
    g.add_argument("--fock-dim", type=int, default=_env("FOCK_DIM", int, None),
                   help="single-mode Fock cutoff")
    g.add_argument("--fock-dim-two", type=int, default=_env("FOCK_DIM_TWO", int, None),
                   help="per-mode cutoff for two-mode checks")
    g.add_argument("--tol", type=float, default=_env("TOL", float, None),
                   help="command-specific numerical tolerance")
    g.add_argument("--threads", type=int, default=_env("THREADS", int, 1),
                   help="worker threads (never changes results)")
    g.add_argument("--record-time", action="store_true",
                   help="add wall time to the manifest (breaks byte-identical output)")
    g.add_argument("-o", "--output", default=None, help="write to file instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="csrel", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    amp = sub.add_parser("amp", help="amplitude, size and probability")
    amp_sub = amp.add_subparsers(dest="group", required=True, parser_class=_Parser)
    a_su2 = amp_sub.add_parser("su2", parents=[common])
    a_su2.add_argument("--theta", type=float, required=True)
    a_su2.add_argument("--phi", type=float, default=0.0)
    a_su2.add_argument("--ref-theta", type=float, default=0.0)
    a_su2.add_argument("--ref-phi", type=float, default=0.0)
    a_wh = amp_sub.add_parser("wh", parents=[common])
    a_wh.add_argument("--lam", type=parse_complex, action="append", required=True,
                      help="displacement 're,im'; repeat once per mode")
    a_wh.add_argument("--ref-lam", type=parse_complex, action="append", default=None)

    hvp = sub.add_parser("hv", help="hidden-variable Born estimate")
    hv_sub = hvp.add_subparsers(dest="group", required=True, parser_class=_Parser)
    h_su2 = hv_sub.add_parser("su2", parents=[common])
    h_su2.add_argument("--theta", type=float, required=True, help="relative angle")
    h_su2.add_argument("--samples", type=int, default=100_000)
    h_wh = hv_sub.add_parser("wh", parents=[common])
    h_wh.add_argument("--lam", type=parse_complex, required=True)
    h_wh.add_argument("--samples", type=int, default=100_000)

    sq = sub.add_parser("squeeze-scan", parents=[common], help="CSV scan of the EPR amplitude")
    sq.add_argument("--zeta", type=parse_complex, required=True)
    sq.add_argument("--grid", type=parse_grid, default=parse_grid("-1:1:5"),
                    help="real parts of lam_a and lam_b, 'lo:hi:n'")
    sq.add_argument("--grid-imag", type=parse_grid, default=parse_grid("0:0:1"),
                    help="imaginary parts of lam_a and lam_b, 'lo:hi:n'")

    bp = sub.add_parser("bell", parents=[common], help="generalized Bell state on the sphere")
    bp.add_argument("--grid-order", type=int, default=16)

    lp = sub.add_parser("lattice", parents=[common], help="lattice Gram matrix probe")
    lp.add_argument("--window", type=int, required=True, help="largest half-width")
    lp.add_argument("--core-radius", type=int, default=1)

    sub.add_parser("oracle-check", parents=[common], help="closed forms vs Fock oracle")
    return parser


def _manifest(args, parameters: dict, truncation: dict | None = None,
              seed: int | None = None) -> RunManifest:
    m = RunManifest(args.command, parameters, seed, truncation or {})
    if args.record_time:
        m.wall_time_s = time.perf_counter() - args.started
    return m


def cmd_amp(args):
    if args.group == "su2":
        try:
            det = su2.SphereLabel(args.ref_theta, args.ref_phi)
            sysl = su2.SphereLabel(args.theta, args.phi)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        amp = su2.su2_amplitude(det, sysl)
        params = {"group": "su2", "theta": args.theta, "phi": args.phi,
                  "ref_theta": args.ref_theta, "ref_phi": args.ref_phi}
    else:
        lam = np.array(args.lam)
        ref = np.array(args.ref_lam) if args.ref_lam else np.zeros_like(lam)
        if ref.shape != lam.shape:
            raise UsageError("--ref-lam must have as many modes as --lam")
        amp = wh.glauber_overlap(ref, lam)
        params = {"group": "wh", "lam": [[z.real, z.imag] for z in lam],
                  "ref_lam": [[z.real, z.imag] for z in ref]}
    tol = args.tol if args.tol is not None else 1e-9
    payload = {
        "amplitude_re": amp.real,
        "amplitude_im": amp.imag,
        "modulus": abs(amp),
        "size": relation_size(amp, tol),
        "probability": probability_of(amp, tol),
    }
    return json_document(payload, _manifest(args, params))


def cmd_hv(args):
    param = args.theta if args.group == "su2" else args.lam
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    try:
        est = hv.estimate(args.group, param, args.samples, args.seed, workers=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = est.as_dict()
    payload["p_analytic"] = hv.analytic_probability(args.group, param)
    payload["z_score"] = ((est.p_hat - payload["p_analytic"]) / est.stderr
                          if est.stderr > 0 else 0.0)
    params = {"group": args.group, "samples": args.samples}
    if args.group == "su2":
        params["theta"] = args.theta
    else:
        params["lam"] = [args.lam.real, args.lam.imag]
    return json_document(payload, _manifest(args, params, seed=args.seed))


SCAN_HEADER = ["lam_a_re", "lam_a_im", "lam_b_re", "lam_b_im", "amp_re", "amp_im", "probability"]


def cmd_squeeze_scan(args):
    try:
        p = squeeze.SqueezeParam(args.zeta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for ar in args.grid:
        for ai in args.grid_imag:
            for br in args.grid:
                for bi in args.grid_imag:
                    amp = squeeze.epr_amplitude(complex(ar, ai), complex(br, bi), p)
                    rows.append([float(ar), float(ai), float(br), float(bi),
                                 amp.real, amp.imag, probability_of(amp)])
    params = {"zeta": [p.zeta.real, p.zeta.imag], "beta": p.beta,
              "grid": [float(args.grid[0]), float(args.grid[-1]), len(args.grid)],
              "grid_imag": [float(args.grid_imag[0]), float(args.grid_imag[-1]),
                            len(args.grid_imag)]}
    return csv_document(SCAN_HEADER, rows, _manifest(args, params))


BELL_PROBES = (su2.NORTH, su2.SphereLabel(math.pi / 2, 0.0),
               su2.SphereLabel(math.pi / 2, math.pi / 2), su2.SphereLabel(2.0, 4.0), su2.SOUTH)


def cmd_bell(args):
    k = args.grid_order
    if k < 8:
        raise UsageError("--grid-order must be at least 8")
    tol = args.tol if args.tol is not None else 1e-8
    q = bell.gauss_legendre_sphere(k)
    defect, c = bell.identity_defect(q)
    try:
        state = bell.build_bell(q, tol)
    except bell.QuadratureError as exc:
        raise ContractFailure(str(exc)) from None
    fidelity = bell.singlet_fidelity(state)
    table = []
    for g1 in BELL_PROBES:
        for g2 in BELL_PROBES:
            corr = bell.bell_correlation(g1, g2, state)
            expect = c * su2.su2_amplitude(g1, g2)
            table.append({"g1": [g1.theta, g1.phi], "g2": [g2.theta, g2.phi],
                          "correlation_re": corr.real, "correlation_im": corr.imag,
                          "expected_re": expect.real, "expected_im": expect.imag})
    payload = {
        "identity_defect": defect,
        "identity_constant": c,
        "singlet_fidelity": fidelity,
        "norm": float(np.vdot(state, state).real),
        "measure_norm": bell.measure_norm(q),
        "state_re": state.real.tolist(),
        "state_im": state.imag.tolist(),
        "correlation_table": table,
    }
    doc = json_document(payload, _manifest(args, {"grid_order": k, "nodes": len(q.weights)}))
    if k >= 16 and not fidelity > 1.0 - 1e-10:
        raise ContractFailure(f"singlet fidelity {fidelity!r} below 1 - 1e-10", doc)
    return doc


def cmd_lattice(args):
    if args.window < 0:
        raise UsageError("--window must be non-negative")
    tol = args.tol if args.tol is not None else fock.DISPLACEMENT_TAIL_TOL
    windows = []
    for m in range(args.window + 1):
        w = wh.LatticeWindow(m)
        dim = args.fock_dim or wh.required_fock_dim(w.max_modulus(), tol)
        try:
            probe = wh.lattice_gram(w, dim, tol, args.core_radius)
        except fock.TruncationError as exc:
            raise ContractFailure(f"truncation insufficient: {exc}") from None
        windows.append({
            "half_width": m,
            "points": len(w.points),
            "min_singular": probe.min_singular,
            "coeff_modulus_spread_interior": probe.core_spread,
            "fock_dim": dim,
            "tail_bound": probe.tail_bound,
            "oracle_gram_deviation": probe.oracle_deviation,
        })
    top = windows[-1]
    payload = {
        "min_singular": top["min_singular"],
        "coeff_modulus_spread_interior": top["coeff_modulus_spread_interior"],
        "tail_bound": top["tail_bound"],
        "spacing": wh.LATTICE_SPACING,
        "windows": windows,
    }
    params = {"window": args.window, "core_radius": args.core_radius, "tail_tol": tol}
    trunc = {"fock_dim": args.fock_dim if args.fock_dim else "auto"}
    return json_document(payload, _manifest(args, params, trunc))


def cmd_oracle_check(args):
    dim = args.fock_dim or fock.DEFAULT_DIM
    dim_two = args.fock_dim_two or fock.DEFAULT_DIM_TWO_MODE
    results = checks.run_all(dim, dim_two)
    ok = all(r.passed for r in results)
    payload = {"all_passed": ok, "suites": [r.as_dict() for r in results]}
    doc = json_document(payload, _manifest(args, {}, {"fock_dim": dim, "fock_dim_two": dim_two}))
    if not ok:
        raise ContractFailure("oracle suites failed", doc)
    return doc


COMMANDS = {
    "amp": cmd_amp,
    "hv": cmd_hv,
    "squeeze-scan": cmd_squeeze_scan,
    "bell": cmd_bell,
    "lattice": cmd_lattice,
    "oracle-check": cmd_oracle_check,
}


def _write(doc: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"csrel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # argparse exits on --help (0) and on bad arguments (1)
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    args.started = time.perf_counter()
    try:
        doc = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"csrel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractFailure as exc:
        if len(exc.args) > 1:
            _write(exc.args[1], args.output)
        print(f"csrel: numerical contract failed: {exc.args[0]}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (fock.TruncationError, NormalizationError, bell.QuadratureError) as exc:
        print(f"csrel: numerical contract failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _write(doc, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
