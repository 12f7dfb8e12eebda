"""Command line entry point: ``qperceptron <command> ...``.

Exit codes: 0 success, 2 configuration/argument error, 3 numeric error,
4 I/O or file-format error.
"""

import argparse
import csv
import json
import sys

import numpy as np

from . import baseline, dfree
from .errors import ConfigError, DomainError, NumericError, PersistenceError
from .harness import ExperimentConfig, emit_plot, load_network, run_experiment, save_network, speedup_report
from .harness.experiment import build_network
from .linalg import certify, polar_unitary
from .stochastic import RANDOMNESS_NOTE, DynamicsState, integrate_zw, simulate_chain, transition_matrix
from .tasks import TASKS

EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 2, 3, 4


def _config(args):
    cfg = ExperimentConfig.from_file(args.config) if args.config else ExperimentConfig()
    return cfg.replace(
        seeds=args.seed,
        iters=args.iters,
        method=args.method,
        unitarize_mode=args.mode,
        eq3_interpretation=args.interp,
        out_csv=args.out if args.command == "xor" else None,
        out_summary=getattr(args, "summary", None),
        jobs=getattr(args, "jobs", None),
    )


def cmd_xor(args):
    cfg = _config(args)
    if args.print_config:
        print(cfg.to_json())
        return 0
    _, summary = run_experiment(cfg)
    print(f"wrote {cfg.out_csv} and {cfg.out_summary}")
    for method, stats in summary["methods"].items():
        print(
            f"{method:9s} median sustained={stats['median_sustained']} "
            f"(converged {stats['converged_fraction']:.0%}, median among converged={stats['median_sustained_converged']}) "
            f"median plateau onset={stats['median_plateau_onset']}"
        )
    return 0


def _unitary(kind, dim, seed):
    if kind == "hadamard":
        return certify(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    if kind == "identity":
        return certify(np.eye(dim))
    rng = np.random.default_rng(seed)
    return polar_unitary(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))


def cmd_markov(args):
    u = _unitary(args.unitary, args.dim, args.seed)
    path = simulate_chain(u, args.start, args.steps, args.seed)
    t = transition_matrix(u).entries
    print(f"# {RANDOMNESS_NOTE}")
    print("# T[i, j] = Pr(next = i | current = j)")
    for row in t:
        print("# " + " ".join(f"{v:.6f}" for v in row))
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(("step", "state"))
        writer.writerows(enumerate(path))
    finally:
        if args.out:
            out.close()
    return 0


def cmd_dynamics(args):
    rng = np.random.default_rng(args.seed)
    n = args.n
    w = np.zeros((n, n)) if args.coupling == "zero" else rng.normal(scale=args.scale, size=(n, n))
    state = DynamicsState(rng.uniform(0, 1, n), np.full(n, args.tau), w, args.h)
    traj = integrate_zw(state, args.steps)
    out = open(args.out, "w", newline="") if args.out else None
    if out:
        with out:
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["step"] + [f"z{i}" for i in range(n)])
            for k, z in enumerate(traj):
                writer.writerow([k] + [repr(float(v)) for v in z])
    print("final Z:", " ".join(f"{v:.9f}" for v in traj[-1]))
    return 0


def cmd_speedup(args):
    base = args.base if args.base == "e" else int(args.base)
    print(repr(speedup_report(args.n, base)))
    return 0


def cmd_plot(args):
    emit_plot(args.csv, args.series, args.out, seed=args.plot_seed, title=args.title)
    print(f"wrote {args.out}")
    return 0


def cmd_net_save(args):
    cfg = _config(args)
    seed = cfg.seeds[0]
    sampler = TASKS[cfg.task]
    if cfg.method == "backprop":
        model, _ = baseline.sgd_train(baseline.init_params((2, cfg.hidden, 1), seed), sampler, cfg.iters, cfg.lr, seed)
    else:
        model, _ = dfree.train(build_network(cfg, seed), sampler, cfg.iters, seed)
    save_network(model, args.out)
    print(f"saved {type(model).__name__} to {args.out}")
    return 0


def cmd_net_load(args):
    model = load_network(args.path)
    sampler = TASKS[args.task]
    predict = dfree.predict if isinstance(model, dfree.LayeredNetwork) else baseline.predict
    print(f"{type(model).__name__} loaded from {args.path}")
    for bits, y in sampler.support():
        print(f"{bits[0]} {bits[1]} -> {predict(model, bits)} (label {y})")
    return 0


def _experiment_flags(p, out_default):
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--seed", type=int, nargs="+", help="one or more seeds")
    p.add_argument("--iters", type=int)
    p.add_argument("--method", choices=("dfree", "backprop", "both"))
    p.add_argument("--mode", choices=("uv", "u"), help="unitarization mode")
    p.add_argument("--interp", choices=("A", "B"), help="weight-update interpretation")
    p.add_argument("--out", default=out_default)


def build_parser():
    parser = argparse.ArgumentParser(prog="qperceptron", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("xor", help="run the XOR benchmark")
    _experiment_flags(p, None)
    p.add_argument("--summary", help="summary JSON path")
    p.add_argument("--jobs", type=int)
    p.add_argument("--print-config", action="store_true")
    p.set_defaults(func=cmd_xor)

    p = sub.add_parser("markov", help="simulate a Markov chain from unitary amplitudes")
    p.add_argument("--unitary", choices=("hadamard", "random", "identity"), default="hadamard")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_markov)

    p = sub.add_parser("dynamics", help="integrate tau dZ/dt = -Z + sigmoid(W Z)")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--h", type=float, default=0.1)
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--coupling", choices=("zero", "random"), default="random")
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("speedup", help="print N^2 / log N")
    p.add_argument("n", type=int)
    p.add_argument("--base", choices=("2", "e", "10"), default="2")
    p.set_defaults(func=cmd_speedup)

    p = sub.add_parser("plot", help="SVG plot from a results CSV")
    p.add_argument("csv")
    p.add_argument("--series", nargs="+", default=["dfree:loss", "backprop:loss"], help="method:metric keys")
    p.add_argument("--plot-seed", type=int, help="plot one seed instead of the seed average")
    p.add_argument("--title", default="")
    p.add_argument("--out", default="plot.svg")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("net", help="save or inspect trained networks")
    net_sub = p.add_subparsers(dest="net_command", required=True)
    q = net_sub.add_parser("save", help="train on the first seed and save the model")
    _experiment_flags(q, "network.json")
    q.set_defaults(func=cmd_net_save)
    q = net_sub.add_parser("load", help="load a model and print its truth table")
    q.add_argument("path")
    q.add_argument("--task", choices=sorted(TASKS), default="xor")
    q.set_defaults(func=cmd_net_load)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OSError, PersistenceError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
