"""Command-line interface.

Subcommands: sample, estimate, predict, exact, laplace, experiment. Every
command is deterministic given its flags; reals are printed with 17
significant digits; CSV output is comma-separated with LF line endings
and a mandatory header row.
"""

import argparse
import json
import math
import os
import sys

import numpy as np
from scipy.stats import norm

from . import asymptotics, estimation, laplace, sampling
from ._validation import check_seed
from .exact import enumerate_exact
from .model import Beta, Theta

PRESETS = {
    "domain1": {
        "n": 100, "theta1": 0.0, "theta2": 0.25, "samples": 5000,
        "burnin": 200, "seed": 0, "sampler": "auxiliary",
        "bins": 50, "branch_bins": None,
    },
    "domain2": {
        "n": 100, "theta1": 0.0, "theta2": 0.55, "samples": 5000,
        "burnin": 200, "seed": 0, "sampler": "auxiliary",
        "bins": 80, "branch_bins": 50,
    },
}


def _fmt(x):
    """17-significant-digit rendering used for every real."""
    return format(float(x), ".17g")


def _json_render(value, indent=0):
    pad = "  " * indent
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "NaN"
        return _fmt(v)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        items = [
            f'{pad}  {json.dumps(k)}: {_json_render(v, indent + 1)}'
            for k, v in value.items()
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, (list, tuple, np.ndarray)):
        items = [f"{pad}  {_json_render(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    raise TypeError(f"cannot render {type(value)!r} as JSON")


def _write_text(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _parse_int_list(text, name):
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ValueError(f"{name} must be a comma-separated integer list") from exc


def _parse_float_list(text, name):
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ValueError(f"{name} must be a comma-separated number list") from exc


def _sampler_config(args):
    return sampling.SamplerConfig(
        n=args.n,
        theta=Theta(args.theta1, args.theta2),
        kind=args.sampler,
        num_samples=args.samples,
        burn_in=args.burnin,
        regime=args.regime,
        gap=args.gap,
        init=args.init,
        er_p=args.er_p,
        seed=check_seed(args.seed),
    )


def cmd_sample(args):
    config = _sampler_config(args)
    sample_set = sampling.run(config, n_jobs=args.jobs)
    _write_text(sample_set.to_csv_text(), args.out)
    return 0


def cmd_estimate(args):
    sample_set = sampling.SampleSet.from_csv(args.infile)
    report = estimation.estimate(sample_set)
    _write_text(_json_render(report.to_json_dict()) + "\n", args.out)
    return 0


def cmd_predict(args):
    t = Theta(args.theta1, args.theta2)
    domain = asymptotics.classify(t)
    c = asymptotics.constants(t)
    payload = {
        "theta1": t.theta1,
        "theta2": t.theta2,
        "domain": domain.value,
        "m": c.m,
        "mu": c.mu,
        "tau1": c.tau1,
        "tau2": c.tau2,
        "eta1": c.eta1,
        "eta2": c.eta2,
        "a1": c.a1,
        "a2": c.a2,
        "a3": c.a3,
        "a4": c.a4,
        "p_plus": c.p0_plus,
        "p_minus": c.p0_minus,
        "stability": asymptotics.check_stability(t),
    }
    _write_text(_json_render(payload) + "\n", args.out)
    return 0


def cmd_exact(args):
    model = enumerate_exact(args.n, Beta(args.beta1, args.beta2))
    payload = {
        "n": model.n,
        "beta1": model.beta.beta1,
        "beta2": model.beta.beta2,
        "log_z": model.log_z,
        "z": model.z,
        "edge_pmf": list(model.edge_pmf),
        "mean_edges": model.mean_edges,
        "var_edges": model.var_edges,
        "mean_two_stars": model.mean_two_stars,
        "var_two_stars": model.var_two_stars,
    }
    _write_text(_json_render(payload) + "\n", args.out)
    return 0


def cmd_laplace(args):
    if args.a1 is not None:
        if args.theta1 is not None or args.theta2 is not None:
            raise ValueError("pass either --a1/--a3 or --theta1/--theta2, not both")
        a1 = args.a1
        a3 = args.a3 if args.a3 is not None else 0.0
    else:
        if args.theta1 is None or args.theta2 is None:
            raise ValueError("need --a1 (with optional --a3) or --theta1 and --theta2")
        c = asymptotics.constants(Theta(args.theta1, args.theta2))
        a1, a3 = c.a1, c.a3
    b4 = args.b4 if args.b4 is not None else laplace.default_b4(a1, a3)
    l_values = _parse_int_list(args.l, "--l")
    n_grid = _parse_float_list(args.n_grid, "--n-grid")
    lines = ["l,n,integral,prediction,ratio"]
    for l in l_values:
        for row in laplace.convergence_check(a1, a3, b4, l, n_grid):
            lines.append(
                f"{row.l},{_fmt(row.n)},{_fmt(row.integral)},"
                f"{_fmt(row.prediction)},{_fmt(row.ratio)}"
            )
    _write_text("\n".join(lines) + "\n", args.out)
    return 0


def _histogram_csv(values, bins, echo):
    counts, edges = np.histogram(values, bins=bins)
    lines = [echo, "bin_left,bin_right,count"]
    for i, count in enumerate(counts):
        lines.append(f"{_fmt(edges[i])},{_fmt(edges[i + 1])},{int(count)}")
    return "\n".join(lines) + "\n"


def _qq_csv(values, echo):
    values = np.sort(np.asarray(values, dtype=np.float64))
    n = values.size
    mean = float(values.mean())
    sd = float(values.std(ddof=1))
    positions = (np.arange(1, n + 1) - 0.5) / n
    theoretical = norm.ppf(positions, loc=mean, scale=sd)
    lines = [echo, "normal_quantile,empirical_quantile"]
    for t_val, e_val in zip(theoretical, values):
        lines.append(f"{_fmt(t_val)},{_fmt(e_val)}")
    return "\n".join(lines) + "\n"


def cmd_experiment(args):
    if args.preset is not None:
        if args.preset not in PRESETS:
            raise ValueError(f"unknown preset {args.preset!r}")
        settings = dict(PRESETS[args.preset])
    else:
        settings = {
            "n": 100, "theta1": None, "theta2": None, "samples": 5000,
            "burnin": 200, "seed": 0, "sampler": "auxiliary",
            "bins": 50, "branch_bins": None,
        }
    for key in ("n", "theta1", "theta2", "samples", "burnin", "seed",
                "sampler", "bins", "branch_bins"):
        value = getattr(args, key)
        if value is not None:
            settings[key] = value
    if settings["theta1"] is None or settings["theta2"] is None:
        raise ValueError("need --preset or explicit --theta1 and --theta2")

    config = sampling.SamplerConfig(
        n=settings["n"],
        theta=Theta(settings["theta1"], settings["theta2"]),
        kind=settings["sampler"],
        num_samples=settings["samples"],
        burn_in=settings["burnin"],
        seed=check_seed(settings["seed"]),
    )
    sample_set = sampling.run(config, n_jobs=args.jobs)
    echo = config.echo()

    os.makedirs(args.out_dir, exist_ok=True)

    def path(name):
        return os.path.join(args.out_dir, name)

    with open(path("samples.csv"), "w", newline="") as fh:
        fh.write(sample_set.to_csv_text())

    s1_values = sample_set.s1_values()
    with open(path("histogram.csv"), "w", newline="") as fh:
        fh.write(_histogram_csv(s1_values, settings["bins"], echo))
    with open(path("qq.csv"), "w", newline="") as fh:
        fh.write(_qq_csv(s1_values, echo))

    if settings["branch_bins"] is not None:
        pos = s1_values[s1_values >= 0.0]
        neg = s1_values[s1_values < 0.0]
        for name, branch in (("pos", pos), ("neg", neg)):
            if branch.size == 0:
                raise ValueError(f"branch {name!r} is empty; cannot bin it")
            with open(path(f"hist_{name}.csv"), "w", newline="") as fh:
                fh.write(_histogram_csv(branch, settings["branch_bins"], echo))
            with open(path(f"qq_{name}.csv"), "w", newline="") as fh:
                fh.write(_qq_csv(branch, echo))

    report = estimation.estimate(sample_set)
    payload = report.to_json_dict()
    payload["config"] = echo.lstrip("# ")
    with open(path("report.json"), "w", newline="") as fh:
        fh.write(_json_render(payload) + "\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twostar",
        description="Simulation and estimation toolkit for the two-star model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw samples and write a SampleSet CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta1", type=float, required=True)
    p.add_argument("--theta2", type=float, required=True)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--burnin", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sampler", choices=sampling.KINDS, default="auxiliary")
    p.add_argument("--regime", choices=sampling.REGIMES, default="fresh")
    p.add_argument("--gap", type=int, default=1)
    p.add_argument("--init", choices=sampling.INIT_POLICIES, default="iid-fair-coin")
    p.add_argument("--er-p", dest="er_p", type=float, default=0.5)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("estimate", help="estimate parameters from a SampleSet CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("predict", help="closed-form limit constants at a Theta")
    p.add_argument("--theta1", type=float, required=True)
    p.add_argument("--theta2", type=float, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("exact", help="exact enumeration at small n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta1", type=float, required=True)
    p.add_argument("--beta2", type=float, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("laplace", help="quadrature vs asymptotic prediction table")
    p.add_argument("--a1", type=float, default=None)
    p.add_argument("--a3", type=float, default=None)
    p.add_argument("--theta1", type=float, default=None)
    p.add_argument("--theta2", type=float, default=None)
    p.add_argument("--b4", type=float, default=None)
    p.add_argument("--l", default="0,1,2,3,4")
    p.add_argument("--n-grid", dest="n_grid", default="100,1000,10000")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_laplace)

    p = sub.add_parser("experiment", help="sampling run + histogram/qq/report bundle")
    p.add_argument("--preset", choices=sorted(PRESETS), default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--theta1", type=float, default=None)
    p.add_argument("--theta2", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--burnin", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--sampler", choices=sampling.KINDS, default=None)
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("--branch-bins", dest="branch_bins", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out-dir", dest="out_dir", required=True)
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
