"""Command line front end: verification suites and data emission.

Angles are radians.  Points specified by cosines in the source material
can be passed as --beta-cos/--beta-sin; when several forms are given
they must agree within ANGLE_TOL.  A JSON config file may mirror any
flag of the chosen subcommand (flags override the file).  Exit codes:
0 success, 1 verification failure, 2 bad input.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import plotting
from .chain import (ChainSpec, boundary_nullspace, fermion_quadratic, fig1_csv,
                    fig1_data, spin_chain_matrix, zero_mode_cubic)
from .entanglement import classify, concurrence3, concurrence_closed
from .hamiltonian import ConvergenceError, DriveParams, berry_phase, eigenbasis3
from .qlinalg import herm_eig
from .rmatrix import lorentz_add, ybe_residual
from .threebody import (EtaBeta, ThreeBodyAngles, eta_beta_from, generate_states,
                        r123_exponential, r123_factorized)
from .transfer import TransferSpec, one_magnon_indices, sweep, sweep_csv

ANGLE_TOL = 1e-9

BETA_STAR = float(np.arccos(np.sqrt(6.0) / 3.0))

SUITES = ("ybe", "chart", "spectrum", "berry", "jw", "zeromode")

BERRY_ETAS = (np.pi / 6, -np.pi / 6, np.pi / 3, -np.pi / 3, 0.2, 1.0)
BERRY_BETAS = (0.4, 1.1)

JW_SITES = (4, 6, 8)


class InputError(ValueError):
    pass


def _wrap_pi(x):
    return (x + np.pi) % (2 * np.pi) - np.pi


def _resolve_beta(args):
    """Combine --beta, --beta-cos and --beta-sin into one angle."""
    cos_b = getattr(args, "beta_cos", None)
    sin_b = getattr(args, "beta_sin", None)
    beta = getattr(args, "beta", None)
    if cos_b is None and sin_b is None:
        if beta is None:
            raise InputError("beta is required (--beta or --beta-cos/--beta-sin)")
        return float(beta)
    if cos_b is not None and sin_b is not None:
        if abs(cos_b ** 2 + sin_b ** 2 - 1.0) > ANGLE_TOL:
            raise InputError("beta-cos/beta-sin pair is not on the unit circle")
        recon = float(np.arctan2(sin_b, cos_b))
    elif cos_b is not None:
        if abs(cos_b) > 1.0 + ANGLE_TOL:
            raise InputError("|beta-cos| exceeds 1")
        recon = float(np.arccos(np.clip(cos_b, -1.0, 1.0)))
    else:
        if abs(sin_b) > 1.0 + ANGLE_TOL:
            raise InputError("|beta-sin| exceeds 1")
        recon = float(np.arcsin(np.clip(sin_b, -1.0, 1.0)))
    if beta is not None and abs(_wrap_pi(beta - recon)) > ANGLE_TOL:
        raise InputError("--beta disagrees with --beta-cos/--beta-sin")
    return recon


def _resolve_point(args) -> EtaBeta:
    """EtaBeta either from (eta, beta) or from the (theta1, theta3) chart."""
    phi = float(getattr(args, "phi", 0.0) or 0.0)
    t1, t3 = getattr(args, "theta1", None), getattr(args, "theta3", None)
    if t1 is not None or t3 is not None:
        if t1 is None or t3 is None:
            raise InputError("theta1 and theta3 must be given together")
        if args.eta is not None:
            raise InputError("give either --eta/--beta or --theta1/--theta3")
        return eta_beta_from(ThreeBodyAngles(float(t1), float(t3), phi))
    if args.eta is None:
        raise InputError("eta is required")
    return EtaBeta(float(args.eta), _resolve_beta(args), phi)


def _json_text(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _vec_pairs(vec):
    return [[float(z.real), float(z.imag)] for z in np.asarray(vec)]


def _with_suffix(path, suffix):
    stem, _ = os.path.splitext(path)
    return stem + suffix


# ---------------------------------------------------------------- commands


def cmd_states(args) -> int:
    eb = _resolve_point(args)
    states = generate_states(eb)
    triple = concurrence3(states[0])
    payload = {
        "eta": eb.eta, "beta": eb.beta, "phi": eb.phi,
        "concurrence_sq": list(triple.as_array()),
        "class": classify(triple).tag,
        "states": [_vec_pairs(s) for s in states],
    }
    text = _json_text(payload)
    if args.out:
        _emit(text, args.out)
    sys.stdout.write(text if args.json else
                     "c_sq = (%.12g, %.12g, %.12g)  class = %s\n"
                     % (*triple.as_array(), payload["class"]))
    return 0


def cmd_concurrence(args) -> int:
    eb = _resolve_point(args)
    triple = concurrence_closed(eb)
    payload = {
        "eta": eb.eta, "beta": eb.beta, "phi": eb.phi,
        "concurrence_sq": list(triple.as_array()),
        "class": classify(triple).tag,
    }
    text = _json_text(payload)
    if args.out:
        _emit(text, args.out)
    sys.stdout.write(text if args.json else
                     "c_sq = (%.12g, %.12g, %.12g)  class = %s\n"
                     % (*triple.as_array(), payload["class"]))
    return 0


def cmd_spectrum(args) -> int:
    if args.eta is None:
        raise InputError("eta is required")
    dp = DriveParams(float(args.eta), _resolve_beta(args))
    rep = eigenbasis3(dp, phi=float(args.phi or 0.0))
    payload = {
        "eta": dp.eta, "beta": dp.beta,
        "eigenvalues": [float(e) for e in rep.eigenvalues],
        "e_plus": rep.e_plus, "e_minus": rep.e_minus,
        "multiplicities": list(rep.multiplicities),
        "degenerate": rep.degenerate,
        "projector_distance": (None if rep.projector_distance is None
                               else list(rep.projector_distance)),
    }
    text = _json_text(payload)
    if args.out:
        _emit(text, args.out)
    sys.stdout.write(text if args.json else
                     "eigenvalues: %s\n" % np.array2string(
                         rep.eigenvalues, precision=10, separator=", "))
    return 0


def _berry_closed(eta, band):
    sign = -1.0 if band == "plus" else 1.0
    return float(-np.pi * (1.0 + sign * np.sin(eta)))


def cmd_berry(args) -> int:
    if args.eta is None:
        raise InputError("eta is required")
    dp = DriveParams(float(args.eta), _resolve_beta(args))
    bands = ("plus", "minus") if args.band == "both" else (args.band,)
    results = []
    for band in bands:
        gamma = berry_phase(dp, band, steps=args.steps)
        closed = _berry_closed(dp.eta, band)
        results.append({"band": band, "gamma": gamma, "closed_form": closed,
                        "abs_error": abs(gamma - closed)})
    payload = {"eta": dp.eta, "beta": dp.beta, "steps": args.steps,
               "results": results}
    text = _json_text(payload)
    if args.out:
        _emit(text, args.out)
    if args.json:
        sys.stdout.write(text)
    else:
        for r in results:
            sys.stdout.write("band %s: gamma=%.10f closed=%.10f err=%.3e\n"
                             % (r["band"], r["gamma"], r["closed_form"],
                                r["abs_error"]))
    return 0


def cmd_fig1(args) -> int:
    if args.grid < 2:
        raise InputError("grid needs at least 2 points")
    edge = (np.pi / 2) / (args.grid + 1)
    betas = np.linspace(edge, np.pi / 2 - edge, args.grid)
    # the gap-closing point is always included so its row is exact
    betas = np.unique(np.append(betas, BETA_STAR))
    rows = fig1_data(betas)
    near = rows[np.argmin(np.abs(rows[:, 0] - BETA_STAR))]
    if args.out:
        fig1_csv(rows, args.out)
        if not args.no_plot:
            plotting.plot_fig1(rows, _with_suffix(args.out, ".png"))
    payload = {"rows": int(rows.shape[0]),
               "beta_star": float(near[0]),
               "moduli_at_star": [float(x) for x in near[1:]]}
    if args.json:
        sys.stdout.write(_json_text(payload))
    elif not args.out:
        sys.stdout.write("beta,abs_x1,abs_x2,abs_x3\n")
        for r in rows:
            sys.stdout.write("%.12g,%.12g,%.12g,%.12g\n" % tuple(r))
    else:
        sys.stdout.write("wrote %d rows; at beta*=%.6f moduli=(%.6f, %.6f, %.6f)\n"
                         % (rows.shape[0], near[0], *near[1:]))
    return 0


def cmd_zeromode(args) -> int:
    beta = _resolve_beta(args)
    roots = zero_mode_cubic(beta)
    rep = boundary_nullspace(beta, roots)
    payload = {
        "beta": beta,
        "roots": _vec_pairs(rep.roots),
        "moduli": [float(m) for m in rep.moduli],
        "inside_count": rep.inside_count,
        "boundary_rank": rep.boundary_rank,
        "unpaired_mf": rep.unpaired_mf,
        "gap_closed": rep.gap_closed,
    }
    text = _json_text(payload)
    if args.out:
        _emit(text, args.out)
    sys.stdout.write(text if args.json else
                     "moduli=(%.6f, %.6f, %.6f) unpaired_mf=%s\n"
                     % (*payload["moduli"], rep.unpaired_mf))
    return 0


def cmd_transfer(args) -> int:
    beta = _resolve_beta(args)
    spec = TransferSpec(args.n, beta, m1=args.m1, m2=args.m2,
                        t_max=args.t_max, n_t=args.t_steps)
    if args.theta is not None:
        theta_grid = np.array([float(args.theta)])
    else:
        theta_grid = np.linspace(args.theta_min, args.theta_max, args.theta_steps)
    t_grid = np.linspace(0.0, args.t_max, args.t_steps)
    rows, report = sweep(spec, args.l1, args.l2, theta_grid, t_grid)
    if args.out:
        sweep_csv(rows, args.out)
        _emit(_json_text(report), _with_suffix(args.out, "_report.json"))
        if not args.no_plot:
            if theta_grid.size == 1:
                block = rows[:, 2]
                plotting.plot_concurrence_timeline(
                    t_grid, block, _with_suffix(args.out, ".png"))
            else:
                plotting.plot_transfer_surface(rows, _with_suffix(args.out, ".png"))
    sys.stdout.write(_json_text(report) if args.json else
                     "c_max=%.6f at theta=%.6f t=%.6f\n"
                     % (report["c_max"], report["theta_star"], report["t_star"]))
    return 0


# ---------------------------------------------------------------- verify


def _suite_ybe(rng, samples, tol):
    worst_on, min_off, off_ok = 0.0, np.inf, True
    for _ in range(samples):
        t1, t3 = rng.uniform(-np.pi, np.pi, 2)
        chi = rng.uniform(-np.pi, np.pi)
        t2 = lorentz_add(t1, t3).theta2
        worst_on = max(worst_on, ybe_residual(t1, t2, t3, chi).lhs_rhs_norm)
        # R(theta+pi) = -R(theta), so offsets stay clear of 0 and pi
        bad = t2 + rng.uniform(0.05, 1.0) * rng.choice((-1.0, 1.0))
        res = ybe_residual(t1, bad, t3, chi).lhs_rhs_norm
        min_off = min(min_off, res)
        off_ok = off_ok and res > 1e-6
    ok = worst_on <= tol and off_ok
    return ok, "max_on_branch=%.3e min_off_branch=%.3e" % (worst_on, min_off)


def _suite_chart(rng, samples, tol):
    worst = 0.0
    for _ in range(samples):
        t1, t3 = rng.uniform(-1.3, 1.3, 2)
        phi = rng.uniform(-np.pi, np.pi)
        angles = ThreeBodyAngles(t1, t3, phi)
        diff = np.linalg.norm(r123_factorized(angles)
                              - r123_exponential(eta_beta_from(angles)))
        worst = max(worst, float(diff))
    return worst <= tol, "max_form_diff=%.3e" % worst


def _suite_spectrum(tol):
    worst = 0.0
    for eta in np.linspace(-1.3, 1.3, 11):
        for beta in np.linspace(0.1, 1.4, 7):
            rep = eigenbasis3(DriveParams(float(eta), float(beta)), phi=0.3)
            want = np.sort(np.array([0.0] * 4 + [rep.e_plus] * 2 + [rep.e_minus] * 2))
            have = np.sort(rep.eigenvalues)
            worst = max(worst, float(np.abs(have - want).max()))
            want2 = np.sort(np.array([0.0] * 4 + [2 * np.sin(eta)] * 2
                                     + [-2 * np.sin(eta)] * 2))
            worst = max(worst, float(np.abs(have - want2).max()))
    return worst <= tol, "max_eig_err=%.3e" % worst


def _suite_berry(etas, steps, tol):
    worst, spread = 0.0, 0.0
    for eta in etas:
        for band in ("plus", "minus"):
            gammas = [berry_phase(DriveParams(float(eta), b), band, steps=steps)
                      for b in BERRY_BETAS]
            closed = _berry_closed(eta, band)
            worst = max(worst, max(abs(g - closed) for g in gammas))
            spread = max(spread, max(gammas) - min(gammas))
    ok = worst <= tol and spread <= tol
    return ok, "max_loop_err=%.3e beta_spread=%.3e" % (worst, spread)


def _suite_jw(rng, tol):
    worst = 0.0
    for n in JW_SITES:
        eta = rng.uniform(-1.3, 1.3)
        beta = rng.uniform(0.1, 1.4)
        spec = ChainSpec(n, eta, beta, 0.0, boundary="open")
        idx = one_magnon_indices(n)
        block = spin_chain_matrix(spec)[np.ix_(idx, idx)]
        fq = fermion_quadratic(spec)
        t = np.diag(fq.onsite + fq.vacuum_energy()).astype(complex)
        for j, h in enumerate(fq.nn_hop):
            t[j, j + 1] += h
            t[j + 1, j] += h
        for j, h in enumerate(fq.nnn_hop):
            t[j, j + 2] += h
            t[j + 2, j] += h
        diff = np.abs(np.sort(herm_eig(block).eigenvalues)
                      - np.sort(herm_eig(t).eigenvalues)).max()
        worst = max(worst, float(diff))
    return worst <= tol, "max_spectrum_diff=%.3e" % worst


def _suite_zeromode(n_grid):
    edge = (np.pi / 2) / (n_grid + 1)
    betas = np.linspace(edge, np.pi / 2 - edge, n_grid)
    bad_inside, bad_unpaired = 0, 0
    for beta in betas:
        roots = zero_mode_cubic(float(beta))
        rep = boundary_nullspace(float(beta), roots)
        bad_inside += int(rep.inside_count != 2)
        bad_unpaired += int(rep.unpaired_mf)
    ok = bad_inside == 0 and bad_unpaired == 0
    return ok, "betas=%d inside!=2: %d unpaired_mf: %d" % (n_grid, bad_inside,
                                                           bad_unpaired)


def cmd_verify(args) -> int:
    suites = args.suite or list(SUITES)
    rng = np.random.default_rng(args.seed)
    etas = [float(args.eta)] if args.eta is not None else list(BERRY_ETAS)
    all_ok = True
    for name in suites:
        if name == "ybe":
            ok, detail = _suite_ybe(rng, args.samples, args.tol or 1e-12)
        elif name == "chart":
            ok, detail = _suite_chart(rng, args.samples, args.tol or 1e-12)
        elif name == "spectrum":
            ok, detail = _suite_spectrum(args.tol or 1e-10)
        elif name == "berry":
            ok, detail = _suite_berry(etas, args.steps, args.tol or 1e-6)
        elif name == "jw":
            ok, detail = _suite_jw(rng, args.tol or 1e-10)
        else:
            ok, detail = _suite_zeromode(args.beta_grid)
        all_ok = all_ok and ok
        sys.stdout.write("%-9s %s  %s\n" % (name + ":", detail,
                                            "PASS" if ok else "FAIL"))
    return 0 if all_ok else 1


# ---------------------------------------------------------------- plumbing


def _add_angle_flags(p, with_chart=False):
    p.add_argument("--eta", type=float, default=None, help="eta in radians")
    p.add_argument("--beta", type=float, default=None, help="beta in radians")
    p.add_argument("--beta-cos", type=float, default=None, dest="beta_cos")
    p.add_argument("--beta-sin", type=float, default=None, dest="beta_sin")
    p.add_argument("--phi", type=float, default=0.0)
    if with_chart:
        p.add_argument("--theta1", type=float, default=None)
        p.add_argument("--theta3", type=float, default=None)


def _add_common(p):
    p.add_argument("--out", default=None, help="output file path")
    p.add_argument("--json", action="store_true", help="JSON to stdout")
    p.add_argument("--no-plot", action="store_true", dest="no_plot",
                   help="skip figure rendering")
    p.add_argument("--config", default=None,
                   help="JSON file mirroring the flags; flags override it")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="ybe3q",
        description="Factorized three-body scattering toolkit: verification "
                    "suites, state generation, chain spectra and transfer sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)
    submap = {}

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", action="append", choices=SUITES, default=None)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--steps", type=int, default=10000, help="berry loop steps")
    p.add_argument("--eta", type=float, default=None, help="berry suite eta")
    p.add_argument("--beta-grid", type=int, default=200, dest="beta_grid")
    _add_common(p)
    submap["verify"] = p

    p = sub.add_parser("states", help="eight generated states + concurrence")
    _add_angle_flags(p, with_chart=True)
    _add_common(p)
    submap["states"] = p

    p = sub.add_parser("concurrence", help="closed-form concurrence triple")
    _add_angle_flags(p, with_chart=True)
    _add_common(p)
    submap["concurrence"] = p

    p = sub.add_parser("spectrum", help="three-site generator spectrum")
    _add_angle_flags(p)
    _add_common(p)
    submap["spectrum"] = p

    p = sub.add_parser("berry", help="adiabatic loop phase per band")
    _add_angle_flags(p)
    p.add_argument("--band", choices=("plus", "minus", "both"), default="both")
    p.add_argument("--steps", type=int, default=10000)
    _add_common(p)
    submap["berry"] = p

    p = sub.add_parser("fig1", help="zero-mode root moduli over beta")
    p.add_argument("--grid", type=int, default=400)
    _add_common(p)
    submap["fig1"] = p

    p = sub.add_parser("zeromode", help="end-mode report at one beta")
    _add_angle_flags(p)
    _add_common(p)
    submap["zeromode"] = p

    p = sub.add_parser("transfer", help="one-magnon transfer sweep")
    p.add_argument("--n", type=int, default=6)
    _add_angle_flags(p)
    p.add_argument("--theta", type=float, default=None,
                   help="single AC phase instead of a sweep")
    p.add_argument("--theta-min", type=float, default=-np.pi, dest="theta_min")
    p.add_argument("--theta-max", type=float, default=np.pi, dest="theta_max")
    p.add_argument("--theta-steps", type=int, default=315, dest="theta_steps")
    p.add_argument("--t-max", type=float, default=20.0, dest="t_max")
    p.add_argument("--t-steps", type=int, default=1001, dest="t_steps")
    p.add_argument("--m1", type=int, default=1)
    p.add_argument("--m2", type=int, default=2)
    p.add_argument("--l1", type=int, default=3)
    p.add_argument("--l2", type=int, default=4)
    _add_common(p)
    submap["transfer"] = p

    return parser, submap


def _merge_config(args, submap):
    if not getattr(args, "config", None):
        return
    with open(args.config) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise InputError("config must be a single JSON object")
    actions = {a.dest: a.default for a in submap[args.command]._actions
               if a.dest not in ("help", "config")}
    for key, value in cfg.items():
        if key not in actions:
            raise InputError("unknown config key: %s" % key)
        if getattr(args, key) == actions[key]:
            setattr(args, key, value)


HANDLERS = {
    "verify": cmd_verify,
    "states": cmd_states,
    "concurrence": cmd_concurrence,
    "spectrum": cmd_spectrum,
    "berry": cmd_berry,
    "fig1": cmd_fig1,
    "zeromode": cmd_zeromode,
    "transfer": cmd_transfer,
}


def main(argv=None) -> int:
    parser, submap = _build_parser()
    args = parser.parse_args(argv)
    try:
        _merge_config(args, submap)
        return HANDLERS[args.command](args)
    except ConvergenceError as exc:
        sys.stderr.write("verification failed: %s\n" % exc)
        return 1
    except (InputError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
