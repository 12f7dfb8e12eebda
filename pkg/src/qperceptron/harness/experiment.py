"""XOR benchmark: derivative-free trainer against backprop, per seed."""

import csv
import io
import json
import statistics
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .. import baseline, dfree
from ..tasks import TASKS

CSV_HEADER = ("method", "seed", "iteration", "train_error", "test_error", "loss", "accuracy")


def build_network(config, seed):
    return dfree.init_network(
        width=config.width,
        depth=config.depth,
        seed=seed,
        unitarize_mode=config.unitarize_mode,
        operator_mode=config.operator_mode,
        interpretation=config.eq3_interpretation,
        normalize_inputs=config.normalize_inputs,
    )


def run_one(config, method, seed):
    """Train one method on one seed; returns ``(final_model, log)``."""
    sampler = TASKS[config.task]
    if method == "dfree":
        return dfree.train(build_network(config, seed), sampler, config.iters, seed)
    params = baseline.init_params((2, config.hidden, 1), seed)
    return baseline.sgd_train(params, sampler, config.iters, config.lr, seed)


def _log_only(args):
    config, method, seed = args
    return run_one(config, method, seed)[1]


def first_sustained(accuracy, window):
    """1-based start of the first run of ``window`` consecutive correct tests."""
    run = 0
    for i, ok in enumerate(accuracy):
        run = run + 1 if ok else 0
        if run == window:
            return i - window + 2
    return None


def first_hit(accuracy):
    hits = np.flatnonzero(np.asarray(accuracy) == 1)
    return int(hits[0]) + 1 if hits.size else None


def plateau_onset(loss, tol):
    """Smallest iteration ``t0`` with ``|loss_t - loss_(t-1)| < tol`` for every ``t > t0``."""
    loss = np.asarray(loss)
    if loss.size < 2:
        return min(loss.size, 1)
    big = np.flatnonzero(np.abs(np.diff(loss)) >= tol)
    # diff index k compares iterations k+1 and k+2 (1-based)
    return int(big[-1]) + 2 if big.size else 1


def _median(values):
    return float(statistics.median(values)) if values else None


def summarize(config, logs):
    """Per-method convergence statistics from ``{(method, seed): IterationLog}``."""
    summary = {"config": config.to_dict(), "methods": {}}
    for method in config.methods():
        per_seed = {}
        for seed in config.seeds:
            log = logs[(method, seed)]
            acc = log.column("accuracy")
            per_seed[seed] = {
                "sustained": first_sustained(acc, config.sustain_window),
                "first_hit": first_hit(acc),
                "plateau_onset": plateau_onset(log.column("loss"), config.plateau_tol),
                "final_loss": float(log.column("loss")[-1]) if len(log) else None,
            }
        sustained = [v["sustained"] for v in per_seed.values()]
        converged = [s for s in sustained if s is not None]
        summary["methods"][method] = {
            "median_sustained": _median([s if s is not None else float("inf") for s in sustained])
            if len(converged) * 2 > len(sustained)
            else None,
            "median_sustained_converged": _median(converged),
            "converged_fraction": len(converged) / len(sustained),
            "median_first_hit": _median([v["first_hit"] for v in per_seed.values() if v["first_hit"] is not None]),
            "median_plateau_onset": _median([v["plateau_onset"] for v in per_seed.values()]),
            "per_seed": {str(k): v for k, v in per_seed.items()},
        }
    summary["notes"] = {
        "sustained_window": config.sustain_window,
        "eq3_interpretation": config.eq3_interpretation,
        "unitarize_mode": config.unitarize_mode,
        "loss": "mean L1 error over the task truth table",
    }
    return summary


def collect_logs(config):
    tasks = [(config, m, s) for m in config.methods() for s in config.seeds]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            logs = list(pool.map(_log_only, tasks))
    else:
        logs = [_log_only(t) for t in tasks]
    return {(m, s): log for (_, m, s), log in zip(tasks, logs)}


def rows(logs, config):
    for method in config.methods():
        for seed in config.seeds:
            for r in logs[(method, seed)]:
                yield (method, seed, r.iteration, r.train_error, r.test_error, r.loss, r.accuracy)


def render_csv(logs, config):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows(logs, config):
        method, seed, it, tr, te, loss, acc = row
        writer.writerow((method, seed, it, repr(tr), repr(te), repr(loss), acc))
    return buf.getvalue()


def run_experiment(config, write=True):
    """Train every requested method on every seed.

    Returns ``(csv_text, summary)``; with ``write`` the CSV and the JSON
    summary go to the paths named in the config.
    """
    logs = collect_logs(config)
    text = render_csv(logs, config)
    summary = summarize(config, logs)
    if write:
        with open(config.out_csv, "w", newline="") as fh:
            fh.write(text)
        with open(config.out_summary, "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return text, summary
