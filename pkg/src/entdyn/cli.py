"""Command-line front end: ``entdyn {simulate,reproduce,state,check-channel,sample}``.

Exit codes: 0 success, 2 configuration or usage error, 3 numerical failure.
"""

import argparse
import csv
import sys

import numpy as np

from . import __version__
from .channels import (
    is_bistochastic,
    is_trace_preserving,
    make_amplitude_damping,
    pauli_field,
)
from .config import (
    DEFAULTS,
    KEYS,
    format_number,
    load_config,
    resolve,
    to_dynamics,
    write_series_csv,
)
from .dynamics import run_ensemble
from .errors import ConfigError, ConvergenceError, EntdynError, NumericalError
from .matcore import eig_hermitian, partial_trace
from .measures import (
    entanglement_of_formation,
    entropy_report,
    von_neumann_entropy,
)
from .presets import FIGURES, reproduce
from .sampling import ENSEMBLES, RandomSource, sample_max_entangled, sample_pure, sample_separable
from .states import (
    bell_state,
    bloch_decompose,
    format_matrix,
    make_rho1,
    make_rho2,
    pure_to_density,
)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on its own errors, which matches EXIT_CONFIG
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _flag(key):
    return "--" + key.replace("_", "-")


def _bool(x):
    return "true" if x else "false"


def cmd_simulate(args) -> int:
    file_values = load_config(args.config) if args.config else {}
    flags = {key: getattr(args, key) for key in KEYS}
    settings = resolve(file_values, flags)
    cfg = to_dynamics(settings)
    series = run_ensemble(cfg, workers=args.workers)
    if settings["output"] == "-":
        write_series_csv(series, sys.stdout)
    else:
        with open(settings["output"], "w", newline="") as fh:
            write_series_csv(series, fh)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    manifest = reproduce(args.figure, args.out_dir, seed=args.seed, workers=args.workers)
    print(manifest)
    return EXIT_OK


def _state_from_args(args):
    if args.rho1 or args.rho2:
        build = make_rho1 if args.rho1 else make_rho2
        label = f"{'rho1' if args.rho1 else 'rho2'}(q={args.q:g}, a_sq={args.a_sq:g})"
        return label, build(args.q, args.a_sq)
    if args.bell:
        return "bell phi+", bell_state()
    rng = RandomSource(args.seed)
    for name, sampler in (
        ("pure_random", sample_pure),
        ("separable_random", sample_separable),
        ("max_entangled_random", sample_max_entangled),
    ):
        if getattr(args, name):
            return f"{name}(seed={args.seed})", pure_to_density(sampler(rng))
    raise UsageError("choose a state")


def cmd_state(args) -> int:
    label, rho = _state_from_args(args)
    ent = entanglement_of_formation(rho)
    rep = entropy_report(rho)
    bloch = bloch_decompose(rho)
    vec = lambda v: " ".join(format_number(x) for x in v)  # noqa: E731
    lines = [
        f"state = {label}",
        "matrix =",
        format_matrix(rho),
        f"C = {format_number(ent.concurrence)}",
        f"E_nats = {format_number(ent.eof_nats)}",
        f"E_over_ln2 = {format_number(ent.eof_rescaled)}",
        f"S = {format_number(rep.s_total)}",
        f"S_A = {format_number(rep.s_a)}",
        f"S_B = {format_number(rep.s_b)}",
        f"violates_A = {_bool(rep.violates_A)}",
        f"violates_B = {_bool(rep.violates_B)}",
        f"bloch_a = {vec(bloch.a)}",
        f"bloch_b = {vec(bloch.b)}",
        "T =",
        *(vec(row) for row in bloch.T),
    ]
    print("\n".join(lines))
    return EXIT_OK


def cmd_check_channel(args) -> int:
    if args.damping:
        if args.p is None:
            raise UsageError("--damping needs --p")
        channel = make_amplitude_damping(args.p)
    else:
        if args.epsilon is None:
            raise UsageError("Pauli fields need --epsilon")
        kind = 1 if args.ref1 else 2 if args.ref2 else 3
        channel = pauli_field(kind, args.epsilon)
    tp, tp_res = is_trace_preserving(channel)
    bi, bi_res = is_bistochastic(channel)
    print(f"channel = {channel.label}")
    print(f"trace_preserving = {_bool(tp)} (residual {tp_res:.3g})")
    print(f"bistochastic = {_bool(bi)} (residual {bi_res:.3g})")
    return EXIT_OK


def sample_rows(ensemble: str, n: int, seed: int):
    """Per-draw (index, E_nats, S_marginal_A, r) for a sampled ensemble."""
    sampler = ENSEMBLES[ensemble]
    rng = RandomSource(seed)
    for i in range(n):
        rho = pure_to_density(sampler(rng))
        marginal = partial_trace(rho, "B")
        e = entanglement_of_formation(rho).eof_nats
        s_a = von_neumann_entropy(marginal)
        r = float(eig_hermitian(marginal).eigenvalues[0]) - 0.5
        yield i, e, s_a, max(r, 0.0)


def cmd_sample(args) -> int:
    if args.n < 1:
        raise UsageError("-n must be positive")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["index", "E_nats", "S_marginal_A", "r"])
    totals = np.zeros(3)
    for i, e, s_a, r in sample_rows(args.ensemble, args.n, args.seed):
        totals += (e, s_a, r)
        writer.writerow([i, format_number(e), format_number(s_a), format_number(r)])
    mean = totals / args.n
    sys.stdout.write(
        f"# mean_E_nats={format_number(mean[0])} "
        f"mean_S_marginal_A={format_number(mean[1])} mean_r={format_number(mean[2])}\n"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="entdyn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sim = sub.add_parser("simulate", help="run one configured experiment, CSV out")
    sim.add_argument("config", nargs="?", help="key = value config file")
    for key in KEYS:
        sim.add_argument(_flag(key), dest=key, default=None, help=f"default {DEFAULTS[key]}")
    sim.add_argument("--workers", type=int, default=1, help="threads for the ensemble")
    sim.set_defaults(func=cmd_simulate)

    rep = sub.add_parser("reproduce", help="run a figure preset")
    rep.add_argument("figure", choices=list(FIGURES))
    rep.add_argument("--out-dir", default=".")
    rep.add_argument("--seed", type=int, default=None)
    rep.add_argument("--workers", type=int, default=1)
    rep.set_defaults(func=cmd_reproduce)

    st = sub.add_parser("state", help="report on a single state")
    kinds = st.add_mutually_exclusive_group(required=True)
    for name in ("rho1", "rho2", "bell", "pure_random", "separable_random", "max_entangled_random"):
        kinds.add_argument(_flag(name), dest=name, action="store_true")
    st.add_argument("--q", type=float, default=DEFAULTS["q"])
    st.add_argument("--a-sq", dest="a_sq", type=float, default=DEFAULTS["a_sq"])
    st.add_argument("--seed", type=int, default=DEFAULTS["seed"])
    st.set_defaults(func=cmd_state)

    ch = sub.add_parser("check-channel", help="trace preservation and bistochasticity")
    chk = ch.add_mutually_exclusive_group(required=True)
    for name in ("ref1", "ref2", "ref3", "damping"):
        chk.add_argument(_flag(name), dest=name, action="store_true")
    ch.add_argument("--epsilon", type=float)
    ch.add_argument("--p", type=float)
    ch.set_defaults(func=cmd_check_channel)

    sm = sub.add_parser("sample", help="per-draw observables of a random ensemble")
    sm.add_argument("--ensemble", choices=list(ENSEMBLES), required=True)
    sm.add_argument("-n", type=int, default=100)
    sm.add_argument("--seed", type=int, default=DEFAULTS["seed"])
    sm.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, UsageError, KeyError) as exc:
        print(f"entdyn: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, ConvergenceError, ArithmeticError) as exc:
        print(f"entdyn: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (EntdynError, ValueError) as exc:
        print(f"entdyn: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
