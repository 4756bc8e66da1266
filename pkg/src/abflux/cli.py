"""Command-line front end: ``abflux <subcommand> [--config FILE] [--output FILE]``.

Every subcommand reads one scenario file (defaults apply when none is
given) and writes CSV with a ``# config_hash=`` provenance line. Exit codes:
0 success, 2 configuration or usage error, 3 convergence or instability
failure, 4 acceptance failure.
"""
import argparse
import sys

import numpy as np

from . import acceptance
from .config import default_config, load_config
from .constants import PHI0
from .errors import ConfigError, ConvergenceError, DomainError, InstabilityError, SingularityError
from .fields import a_moving_charge, a_solenoid, b_moving_charge, b_solenoid
from .interaction import induced_emf, straight_trajectory, verify_eq2
from .interference import ab_phase, fringe_pattern
from .quantum_lc import build_lc_operators, verify_commutators
from .shield import pulse_spectrum, shields_ac
from .squid import Hypothesis, run_experiment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_ACCEPTANCE = 4


def fmt(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


class CsvWriter:
    def __init__(self, config_hash):
        self.lines = [f"# config_hash={config_hash}"]

    def comment(self, text):
        self.lines.append(f"# {text}")

    def header(self, names):
        self.lines.append(",".join(names))

    def row(self, values):
        self.lines.append(",".join(fmt(v) for v in values))

    def text(self):
        return "\n".join(self.lines) + "\n"


def _axis(spec):
    lo, hi, n = spec
    return np.array([lo]) if n == 1 else np.linspace(lo, hi, n)


def cmd_fields(cfg, args, out):
    g = cfg["grid"]
    x, y, z = np.meshgrid(_axis(g["x"]), _axis(g["y"]), _axis(g["z"]), indexing="ij")
    pts = np.column_stack([x.ravel(), y.ravel(), z.ravel()])
    b = np.zeros_like(pts)
    a = np.zeros_like(pts)
    if g["source"] in ("solenoid", "both"):
        s = cfg.solenoid()
        b += b_solenoid(s, pts)
        if g["potential"]:
            a += a_solenoid(s, pts)
    if g["source"] in ("charge", "both"):
        c = cfg.charge()
        b += b_moving_charge(c, pts)
        if g["potential"]:
            a += a_moving_charge(c, pts)
    names = ["x", "y", "z", "Bx", "By", "Bz"] + (["Ax", "Ay", "Az"] if g["potential"] else [])
    out.header(names)
    for k in range(len(pts)):
        out.row([*pts[k], *b[k], *(a[k] if g["potential"] else ())])


def cmd_energy(cfg, args, out):
    rep = verify_eq2(cfg.charge(), cfg.solenoid(), cfg["quadrature"]["tol"])
    row = rep.as_row()
    out.header(row.keys())
    out.row(row.values())


def cmd_emf(cfg, args, out):
    t = cfg["trajectory"]
    times = np.linspace(t["t_start"], t["t_end"], t["samples"])
    trace = induced_emf(straight_trajectory(cfg.charge(), times), cfg.solenoid(),
                        t["turns_total"], sections=t["sections"])
    out.header(["t", "flux", "emf"])
    for row in zip(trace.times, trace.flux_through_solenoid, trace.emf):
        out.row(row)


def cmd_interfere(cfg, args, out):
    i = cfg["interference"]
    # behind a screening shield the enclosed flux has no visible effect
    delta = 0.0 if i["shielded"] else ab_phase(i["flux_quanta"] * PHI0)
    screen = np.linspace(i["screen_min"], i["screen_max"], i["screen_points"])
    pattern = fringe_pattern(delta, i["gradient"], screen)
    out.comment(f"delta_phi_rad={fmt(delta)}")
    out.header(["x", "intensity"])
    for row in zip(pattern.positions, pattern.intensities):
        out.row(row)


def cmd_shield(cfg, args, out):
    shield = cfg.shield()
    c = cfg.charge()
    if not c.speed > 0 or c.q == 0:
        raise DomainError("the shield subcommand needs a moving charge (charge.q, charge.velocity)")
    spec = pulse_spectrum(c.speed, shield.radius, cfg["shield"]["pulse_samples"], q=abs(c.q))
    screens = shields_ac(shield, cfg["shield"]["temperature"], spec.photon_energy)
    out.comment(f"centroid_hz={fmt(spec.centroid_frequency)}, photon_ev={fmt(spec.photon_energy)}, "
                f"shields={fmt(screens)}")
    out.header(["freq_hz", "amplitude"])
    for row in zip(spec.frequencies, spec.amplitudes):
        out.row(row)


def cmd_squid(cfg, args, out):
    h = Hypothesis(args.hypothesis) if args.hypothesis else cfg.hypothesis()
    trace = run_experiment(cfg.squid(), cfg.shield(), cfg.protocol(), h)
    out.comment(f"hypothesis={h.value}")
    out.header(trace.COLUMNS)
    for row in trace.rows():
        out.row(row)
    out.comment(f"final_total_flux_quanta={fmt(trace.final_total_flux_quanta)}")


def cmd_lc(cfg, args, out):
    lc = cfg["lc"]
    dim = args.dim if args.dim is not None else lc["dim"]
    q, phi, u = build_lc_operators(lc["inductance"], lc["capacitance"], dim)
    rep = verify_commutators(q, phi, u, lc["capacitance"])
    return (f"max_block_deviation={fmt(rep.max_block_deviation)}\n"
            f"corner_value={fmt(rep.corner_value.real)} (expected {fmt(rep.expected_corner)})\n")


def cmd_verify_all(cfg, args, out):
    failed = 0

    def report(res):
        nonlocal failed
        failed += not res.passed
        print(res.line(), flush=True)

    results = acceptance.run_all(report)
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return EXIT_ACCEPTANCE if failed else EXIT_OK


COMMANDS = {
    "fields": (cmd_fields, "sample B (and A) on the configured grid"),
    "energy": (cmd_energy, "interaction energy by both routes"),
    "emf": (cmd_emf, "EMF induced by a charge on a straight trajectory"),
    "interfere": (cmd_interfere, "two-beam fringe pattern for the enclosed flux"),
    "shield": (cmd_shield, "field-pulse spectrum and the shielding verdict"),
    "squid-run": (cmd_squid, "simulate the SQUID cooling experiment"),
    "lc-check": (cmd_lc, "check the truncated LC commutators"),
    "verify-all": (cmd_verify_all, "run the acceptance suite"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="scenario file (TOML); defaults when omitted")
    common.add_argument("-o", "--output", help="write CSV here instead of stdout")
    parser = argparse.ArgumentParser(prog="abflux", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "squid-run":
            p.add_argument("--hypothesis", choices=[h.value for h in Hypothesis])
        if name == "lc-check":
            p.add_argument("--dim", type=int)
    return parser


def _write(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    fn = COMMANDS[args.command][0]
    try:
        cfg = load_config(args.config) if args.config else default_config()
        out = CsvWriter(cfg.hash)
        result = fn(cfg, args, out)
    except (ConfigError, DomainError, SingularityError, ValueError, OSError) as exc:
        print(f"abflux: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, InstabilityError) as exc:
        print(f"abflux: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if isinstance(result, int):
        return result
    path = args.output or cfg["output"]["path"]
    _write(result if isinstance(result, str) else out.text(), path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
