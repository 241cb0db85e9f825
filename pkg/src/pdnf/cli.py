"""Command-line front end.

Every subcommand reads the shared JSON model format where a model is
needed, takes an explicit --seed (or generates one and echoes it), and
writes CSV with a single '# key=value ...' header line so runs are
reproducible from their own output.  Exit codes: 0 success, 1 domain
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import secrets
import sys

import numpy as np

from . import core, distance, encoder, fusion, model_io, sensor, stochastic
from .families import ProbTriple
from .families import total_entropy as _total_entropy
from .venjunction import Venjunction, VenjunctionMeasure, hidden_variable_encoding


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def _write_report(out_path, header: dict, columns, rows, trailer: list[str] | None = None) -> None:
    lines = ["# " + " ".join(f"{k}={_fmt(v)}" for k, v in header.items())]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    for extra in trailer or []:
        lines.append("# " + extra)
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_model(pdnf, out_path) -> None:
    text = model_io.dumps(pdnf)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _seeded(args, header: dict) -> np.random.Generator:
    seed = args.seed if args.seed is not None else secrets.randbits(63)
    header["seed"] = seed
    return np.random.default_rng(seed)


def _measure(path) -> VenjunctionMeasure:
    return VenjunctionMeasure.from_pdnf(model_io.load_model(path))


def _triple(text: str) -> ProbTriple:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated probabilities, got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric probability in {text!r}") from None
    return ProbTriple(*vals)


def _coeffs(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated coefficients, got {text!r}")
    return tuple(float(p) for p in parts)


def _figure_path(args, command: str) -> str | None:
    if args.plot is None:
        return None
    if args.plot:
        return args.plot
    if args.out:
        stem = args.out[:-4] if args.out.endswith(".csv") else args.out
        return stem + ".png"
    return f"pdnf-{command}.png"


def _note_figure(path: str) -> None:
    print(f"wrote figure: {path}", file=sys.stderr)


def _driver(args) -> stochastic.StepDistribution:
    return stochastic.StepDistribution.lattice(args.p_up, args.p_down,
                                               scale=args.scale, offset=args.offset)


def _walk_process(args, m: int | None = None) -> stochastic.WalkProcess:
    m = m if m is not None else args.vars
    step = _driver(args)
    var0 = (args.init_var,) * m if args.init_var else None
    return stochastic.WalkProcess(steps=(step,) * m, horizon=args.horizon,
                                  init_variance=var0)


# ---------------------------------------------------------------- handlers


def _cmd_algebra(args) -> int:
    if args.op == "norm":
        model = model_io.load_model(args.model[0])
        _write_report(args.out, {"command": "algebra-norm", "model": args.model[0]},
                      ["norm_l1"], [(core.norm_l1(model.weights),)])
        return 0
    if args.op == "scale":
        model = model_io.load_model(args.model[0])
        scaled = core.Pdnf(core.scale(args.alpha, model.weights), model.family)
        _write_model(scaled, args.out)
        return 0
    if len(args.model) != 2:
        raise ValueError(f"algebra add needs exactly two --model paths, got {len(args.model)}")
    a = model_io.load_model(args.model[0])
    b = model_io.load_model(args.model[1])
    if model_io.family_to_spec(a.family) != model_io.family_to_spec(b.family):
        raise ValueError("models carry different families; refusing to add their weights")
    summed = core.Pdnf(core.add(a.weights, b.weights, strict=args.strict), a.family)
    _write_model(summed, args.out)
    return 0


def _cmd_probs(args) -> int:
    model = model_io.load_model(args.model)
    grid = model.position_probs()
    rows = [(t + 1, j + 1, grid[t, j, 0], grid[t, j, 1], grid[t, j, 2])
            for t in range(model.n) for j in range(model.m)]
    _write_report(args.out, {"command": "probs", "model": args.model, "n": model.n, "m": model.m},
                  ["t", "j", "p_neg", "p_eps", "p_pos"], rows)
    return 0


def _cmd_entropy(args) -> int:
    model = model_io.load_model(args.model)
    _write_report(args.out, {"command": "entropy", "model": args.model, "n": model.n, "m": model.m},
                  ["total_entropy"], [(_total_entropy(model),)])
    return 0


def _cmd_sample(args) -> int:
    meas = _measure(args.model)
    header = {"command": "sample", "model": args.model, "count": args.count}
    rng = _seeded(args, header)
    rows = [(i, v.to_text()) for i, v in enumerate(meas.sample(rng, args.count))]
    _write_report(args.out, header, ["index", "venjunction"], rows)
    return 0


def _cmd_support(args) -> int:
    meas = _measure(args.model)
    support = meas.enumerate_support(cap=args.cap)
    total = sum(mass for _, mass in support)
    rows = [(i, v.to_text(), mass) for i, (v, mass) in enumerate(support)]
    _write_report(args.out,
                  {"command": "support", "model": args.model,
                   "support_size": len(support), "total_mass": total},
                  ["index", "venjunction", "mass"], rows)
    return 0


def _cmd_language(args) -> int:
    meas = _measure(args.model)
    lang = meas.language()
    rows = []
    for t in range(meas.n):
        for j in range(meas.m):
            allowed = "".join({-1: "-", 0: "e", 1: "+"}[lit] for lit in lang.allowed[t][j])
            rows.append((t + 1, j + 1, allowed, lang.local_sizes[t][j]))
    _write_report(args.out,
                  {"command": "language", "model": args.model, "size": lang.size},
                  ["t", "j", "allowed", "local_size"], rows,
                  trailer=[f"description {lang.describe()}"])
    return 0


def _cmd_hidden_encode(args) -> int:
    meas = _measure(args.model)
    support = [v for v, _ in meas.enumerate_support(cap=args.cap)]
    enc = hidden_variable_encoding(support)
    rows = [(r, enc.code_text(r) or "(none)", enc.support[r].to_text())
            for r in range(len(enc.support))]
    _write_report(args.out,
                  {"command": "hidden-encode", "model": args.model,
                   "support_size": len(enc.support), "hidden_vars": enc.l},
                  ["rank", "hidden", "venjunction"], rows)
    return 0


def _cmd_fuse(args) -> int:
    fused = fusion.fuse(args.p.validate(1e-9), args.q.validate(1e-9))
    _write_report(args.out, {"command": "fuse"},
                  ["p_neg", "p_eps", "p_pos"], [tuple(fused)])
    return 0


def _cmd_compose_check(args) -> int:
    from .families import SoftmaxFamily
    family = SoftmaxFamily([list(args.alpha)])
    if args.xi is not None or args.eta is not None:
        if args.xi is None or args.eta is None:
            raise ValueError("--xi and --eta must be given together")
        dev = fusion.check_composition(family, args.xi, args.eta)
        _write_report(args.out, {"command": "compose-check", "alpha": ",".join(map(repr, args.alpha))},
                      ["xi", "eta", "deviation"], [(args.xi, args.eta, dev)])
        return 0
    header = {"command": "compose-check", "alpha": ",".join(map(repr, args.alpha)),
              "pairs": args.pairs, "radius": args.radius}
    rng = _seeded(args, header)
    worst = 0.0
    worst_pair = (0.0, 0.0)
    for _ in range(args.pairs):
        xi, eta = rng.uniform(-args.radius, args.radius, 2)
        dev = fusion.check_composition(family, float(xi), float(eta))
        if dev > worst:
            worst, worst_pair = dev, (float(xi), float(eta))
    _write_report(args.out, header, ["xi", "eta", "max_deviation"],
                  [(worst_pair[0], worst_pair[1], worst)])
    return 0


def _cmd_identify(args) -> int:
    meas = _measure(args.model)
    header = {"command": "identify", "model": args.model,
              "delta": args.delta, "trials": args.trials}
    rng = _seeded(args, header)
    result = fusion.identification_experiment(meas, rng, args.trials,
                                              delta=args.delta, p_min=args.pmin)
    header["p_min"] = result.bound.p_min
    header["n_draws"] = result.bound.n_draws
    header["support_size"] = result.support_size
    rows = [(i, result.bound.n_draws, bool(c)) for i, c in enumerate(result.covered)]
    rows.append(("summary", result.bound.n_draws, result.success_rate))
    _write_report(args.out, header, ["trial", "draws_used", "covered"], rows)
    fig = _figure_path(args, "identify")
    if fig:
        from . import plots
        _note_figure(plots.identification_figure(result, fig))
    return 0


def _cmd_bound(args) -> int:
    b = fusion.coupon_bound(args.pmin, args.delta, args.n, args.m)
    _write_report(args.out, {"command": "bound"},
                  ["p_min", "delta", "n", "m", "n_draws"],
                  [(b.p_min, b.delta, b.n, b.m, b.n_draws)])
    return 0


def _dist_from_args(args) -> distance.DistanceDistribution:
    meas = _measure(args.model)
    target = Venjunction.from_text(args.target)
    return distance.distance_distribution(meas, target)


def _cmd_distance(args) -> int:
    dist = _dist_from_args(args)
    cum = np.cumsum(dist.coeffs)
    rows = [(k, float(dist.coeffs[k]), float(cum[k])) for k in range(dist.coeffs.size)]
    _write_report(args.out,
                  {"command": "distance", "model": args.model, "target": args.target,
                   "mu_s": dist.mu_s, "sigma_s": dist.sigma_s},
                  ["k", "mass", "cumulative"], rows)
    fig = _figure_path(args, "distance")
    if fig:
        from . import plots
        _note_figure(plots.distance_figure(dist, fig))
    return 0


def _cmd_ball(args) -> int:
    dist = _dist_from_args(args)
    prob = distance.ball_probability(dist, args.rho)
    _write_report(args.out,
                  {"command": "ball", "model": args.model, "target": args.target},
                  ["rho", "probability"], [(args.rho, prob)])
    return 0


def _cmd_normal_approx(args) -> int:
    dist = _dist_from_args(args)
    approx = distance.normal_approx(dist, args.rho)
    exact = ""
    if float(args.rho).is_integer() and 0 <= int(args.rho) <= dist.max_distance:
        exact = distance.ball_probability(dist, int(args.rho))
    _write_report(args.out,
                  {"command": "normal-approx", "model": args.model, "target": args.target,
                   "mu_s": dist.mu_s, "sigma_s": dist.sigma_s},
                  ["rho", "normal", "exact"], [(args.rho, approx, exact)])
    return 0


def _cmd_walk(args) -> int:
    proc = _walk_process(args)
    header = {"command": "walk", "p_up": args.p_up, "p_down": args.p_down,
              "scale": args.scale, "offset": args.offset,
              "horizon": args.horizon, "count": args.count}
    rng = _seeded(args, header)
    trajs = stochastic.simulate_walks(proc, rng, args.count)
    rows = [(k, t + 1, j + 1, float(trajs[k, t, j]))
            for k in range(args.count) for t in range(args.horizon) for j in range(proc.m)]
    _write_report(args.out, header, ["walk_id", "t", "j", "xi"], rows)
    fig = _figure_path(args, "walk")
    if fig:
        from . import plots
        _note_figure(plots.walk_figure(trajs, stochastic.mean_encoder(proc).heights, fig))
    return 0


def _cmd_mean_encoder(args) -> int:
    proc = _walk_process(args)
    analytic = stochastic.mean_encoder(proc)
    variances = stochastic.variance_encoder(proc)
    header = {"command": "mean-encoder", "p_up": args.p_up, "p_down": args.p_down,
              "scale": args.scale, "offset": args.offset, "horizon": args.horizon}
    mc = None
    if args.count:
        header["count"] = args.count
        rng = _seeded(args, header)
        mc = stochastic.monte_carlo_mean_encoder(proc, rng, args.count)
        header["l1_error"] = float(np.abs(mc.heights - analytic.heights).sum())
    columns = ["t", "j", "mean", "variance"] + (["mc_mean"] if mc is not None else [])
    rows = []
    for t in range(proc.horizon):
        for j in range(proc.m):
            row = [t + 1, j + 1, float(analytic.heights[t, j]), float(variances.heights[t, j])]
            if mc is not None:
                row.append(float(mc.heights[t, j]))
            rows.append(tuple(row))
    _write_report(args.out, header, columns, rows)
    fig = _figure_path(args, "mean-encoder")
    if fig:
        from . import plots
        _note_figure(plots.mean_encoder_figure(analytic, mc, fig))
    return 0


def _cmd_hmm(args) -> int:
    model = model_io.load_model(args.model)
    horizon = args.horizon if args.horizon else model.n
    step = _driver(args)
    var0 = (args.init_var,) * model.m if args.init_var else None
    proc = stochastic.WalkProcess(steps=(step,) * model.m, horizon=horizon,
                                  init_variance=var0)
    header = {"command": "hmm", "model": args.model, "horizon": horizon,
              "count": args.count, "p_up": args.p_up, "p_down": args.p_down,
              "scale": args.scale, "offset": args.offset}
    rng = _seeded(args, header)
    trajs, lits = stochastic.hmm_sample_many(proc, model.family, rng, args.count)
    rows = [(k, t + 1, j + 1, float(trajs[k, t, j]), int(lits[k, t, j]))
            for k in range(args.count) for t in range(horizon) for j in range(model.m)]
    _write_report(args.out, header, ["run", "t", "j", "xi", "literal"], rows)
    return 0


def _cmd_sensor_demo(args) -> int:
    cfg = sensor.SensorConfig(theta_x=args.theta_x, theta_0=args.theta_0,
                              p_y=args.p_y, p_0=args.p_0,
                              sigma_theta=args.sigma_theta, sigma_p=args.sigma_p,
                              times=tuple(range(args.t_start, args.t_end + 1)))
    header = {"command": "sensor-demo", "experiments": args.experiments,
              "theta_x": cfg.theta_x, "theta_0": cfg.theta_0,
              "p_y": cfg.p_y, "p_0": cfg.p_0,
              "sigma_theta": cfg.sigma_theta, "sigma_p": cfg.sigma_p,
              "t_start": args.t_start, "t_end": args.t_end}
    rng = _seeded(args, header)
    result = sensor.run_demo(cfg, args.experiments, rng)
    rows = [(r.t, r.sensor, r.component, r.analytic_avg, r.empirical_freq, r.std_err)
            for r in result.rows()]
    _write_report(args.out, header,
                  ["t", "sensor", "component", "analytic_avg", "empirical_freq", "std_err"],
                  rows)
    fig = _figure_path(args, "sensor-demo")
    if fig:
        from . import plots
        _note_figure(plots.sensor_figure(result, fig))
    return 0


# ---------------------------------------------------------------- parser


def _add_out(p: argparse.ArgumentParser):
    p.add_argument("--out", help="output path (default: stdout)")


def _add_seed(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, help="RNG seed; generated and echoed when omitted")


def _add_plot(p: argparse.ArgumentParser):
    p.add_argument("--plot", nargs="?", const="", metavar="PNG",
                   help="also render a figure (default path derives from --out)")


def _add_walk_flags(p: argparse.ArgumentParser, with_count=True):
    p.add_argument("--p-up", type=float, default=0.5, help="probability of a +1 step")
    p.add_argument("--p-down", type=float, default=1 / 3, help="probability of a -1 step")
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--offset", type=float, default=0.0, help="walk start level")
    p.add_argument("--horizon", type=int, default=10)
    p.add_argument("--init-var", type=float, default=0.0,
                   help="variance of the initial weights")
    if with_count:
        p.add_argument("--count", type=int, default=10, help="number of trajectories")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdnf",
        description="Probabilistic DNF toolkit: algebra, measures, fusion, distances, walks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra", help="weight-matrix vector space operations")
    alg = p.add_subparsers(dest="op", required=True)
    for op in ("add", "scale", "norm"):
        q = alg.add_parser(op)
        q.add_argument("--model", action="append", required=True,
                       help="model path (twice for add)")
        if op == "scale":
            q.add_argument("--alpha", type=float, required=True)
        if op == "add":
            q.add_argument("--strict", action="store_true",
                           help="reject shape mismatches instead of zero-padding")
        _add_out(q)
        q.set_defaults(handler=_cmd_algebra)

    p = sub.add_parser("probs", help="per-position probability triples")
    p.add_argument("--model", required=True)
    _add_out(p)
    p.set_defaults(handler=_cmd_probs)

    p = sub.add_parser("entropy", help="total entropy of the induced measure")
    p.add_argument("--model", required=True)
    _add_out(p)
    p.set_defaults(handler=_cmd_entropy)

    p = sub.add_parser("sample", help="draw venjunctions from the measure")
    p.add_argument("--model", required=True)
    p.add_argument("--count", type=int, default=10)
    _add_seed(p)
    _add_out(p)
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("support", help="enumerate positive-mass venjunctions")
    p.add_argument("--model", required=True)
    p.add_argument("--cap", type=int, default=3 ** 12)
    _add_out(p)
    p.set_defaults(handler=_cmd_support)

    p = sub.add_parser("language", help="per-position allowed literals and support size")
    p.add_argument("--model", required=True)
    _add_out(p)
    p.set_defaults(handler=_cmd_language)

    p = sub.add_parser("hidden-encode", help="ternary hidden-variable codes for the support")
    p.add_argument("--model", required=True)
    p.add_argument("--cap", type=int, default=3 ** 12)
    _add_out(p)
    p.set_defaults(handler=_cmd_hidden_encode)

    p = sub.add_parser("fuse", help="Bayesian fusion of two probability triples")
    p.add_argument("--p", type=_triple, required=True, metavar="NEG,EPS,POS")
    p.add_argument("--q", type=_triple, required=True, metavar="NEG,EPS,POS")
    _add_out(p)
    p.set_defaults(handler=_cmd_fuse)

    p = sub.add_parser("compose-check", help="fusion vs weight-addition deviation")
    p.add_argument("--alpha", type=_coeffs, default=(-1.0, 0.0, 1.0), metavar="A,B,C")
    p.add_argument("--xi", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--pairs", type=int, default=1000)
    p.add_argument("--radius", type=float, default=50.0)
    _add_seed(p)
    _add_out(p)
    p.set_defaults(handler=_cmd_compose_check)

    p = sub.add_parser("identify", help="coupon-collector coverage experiment")
    p.add_argument("--model", required=True)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--pmin", type=float, help="override the enumerated minimum mass")
    _add_seed(p)
    _add_out(p)
    _add_plot(p)
    p.set_defaults(handler=_cmd_identify)

    p = sub.add_parser("bound", help="identification draw-count bound")
    p.add_argument("--pmin", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _add_out(p)
    p.set_defaults(handler=_cmd_bound)

    p = sub.add_parser("distance", help="exact law of the distance to a target")
    p.add_argument("--model", required=True)
    p.add_argument("--target", required=True, help="venjunction text, e.g. '+-e∠ee+'")
    _add_out(p)
    _add_plot(p)
    p.set_defaults(handler=_cmd_distance)

    p = sub.add_parser("ball", help="cumulative distance probability P{S <= rho}")
    p.add_argument("--model", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--rho", type=int, required=True)
    _add_out(p)
    p.set_defaults(handler=_cmd_ball)

    p = sub.add_parser("normal-approx", help="normal estimate of the ball probability")
    p.add_argument("--model", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--rho", type=float, required=True)
    _add_out(p)
    p.set_defaults(handler=_cmd_normal_approx)

    p = sub.add_parser("walk", help="simulate lattice-walk weight trajectories")
    _add_walk_flags(p)
    p.add_argument("--vars", type=int, default=1, help="number of variables")
    _add_seed(p)
    _add_out(p)
    _add_plot(p)
    p.set_defaults(handler=_cmd_walk)

    p = sub.add_parser("mean-encoder", help="analytic mean/variance encoder, optional MC check")
    _add_walk_flags(p, with_count=False)
    p.add_argument("--vars", type=int, default=1)
    p.add_argument("--count", type=int, default=0,
                   help="Monte Carlo trajectories (0 = analytic only)")
    _add_seed(p)
    _add_out(p)
    _add_plot(p)
    p.set_defaults(handler=_cmd_mean_encoder)

    p = sub.add_parser("hmm", help="hidden walk trajectories with emitted literals")
    p.add_argument("--model", required=True, help="model supplying the emission family")
    _add_walk_flags(p)
    p.set_defaults(horizon=0)  # 0 means: use the model's conjunction count
    _add_seed(p)
    _add_out(p)
    p.set_defaults(handler=_cmd_hmm)

    p = sub.add_parser("sensor-demo", help="two-sensor threshold demo table")
    p.add_argument("--experiments", type=int, default=10000)
    p.add_argument("--theta-x", type=float, default=20.0)
    p.add_argument("--theta-0", type=float, default=22.0)
    p.add_argument("--p-y", type=float, default=105.0)
    p.add_argument("--p-0", type=float, default=106.0)
    p.add_argument("--sigma-theta", type=float, default=0.5)
    p.add_argument("--sigma-p", type=float, default=0.5)
    p.add_argument("--t-start", type=int, default=30)
    p.add_argument("--t-end", type=int, default=39)
    _add_seed(p)
    _add_out(p)
    _add_plot(p)
    p.set_defaults(handler=_cmd_sensor_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
