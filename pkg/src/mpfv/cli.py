"""Command line interface: run single experiments, convergence studies, and
the full benchmark suite, writing CSV artifacts.

Floats are written with 17 significant digits so every CSV round-trips to the
same double, and a manifest accompanies each run so identical configurations
produce identical bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from .cases import ExperimentSpec, ICKind
from .diagnostics import observed_order
from .grid import Grid
from .limiters import LimiterKind
from .runner import RunResult, run_experiment
from .suite import BenchmarkSuite, convergence_spec
from .velocity import StreamCase, StreamKind


def fmt(x: float) -> str:
    return f"{x:.17g}"


def write_field_csv(path: Path, u: np.ndarray, g: Grid) -> None:
    xs = g.x_centers()
    ys = g.y_centers()
    with open(path, "w") as fh:
        fh.write("i,j,x_center,y_center,value\n")
        for i in range(g.nx):
            for j in range(g.ny):
                fh.write(f"{i},{j},{fmt(xs[i])},{fmt(ys[j])},{fmt(u[i, j])}\n")


def read_field_csv(path: Path) -> tuple[np.ndarray, Grid]:
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if header != ["i", "j", "x_center", "y_center", "value"]:
            raise ValueError(f"unexpected field csv header: {header}")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    nx = max(int(r[0]) for r in rows) + 1
    ny = max(int(r[1]) for r in rows) + 1
    g = Grid(nx, ny)
    u = np.zeros(g.shape)
    for r in rows:
        u[int(r[0]), int(r[1])] = float(r[4])
    return u, g


REPORT_COLUMNS = [
    "scheme", "limiter", "case", "ic", "nx", "ny", "cn_target", "dt", "n_steps",
    "end_time", "rel_l1", "rel_l2", "rel_linf", "min_val", "max_val",
    "max_mp_violation", "max_courant", "mass_drift",
]


def report_row(result: RunResult) -> list[str]:
    spec = result.spec
    rep = result.report
    mp = "na" if rep.max_mp_violation is None else fmt(rep.max_mp_violation)
    return [
        spec.scheme, spec.limiter.value, spec.stream.kind.value, spec.ic.value,
        str(spec.resolution[0]), str(spec.resolution[1]),
        fmt(spec.courant_target), fmt(result.plan.dt), str(result.plan.n_steps),
        fmt(spec.end_time), fmt(rep.rel_l1), fmt(rep.rel_l2), fmt(rep.rel_linf),
        fmt(rep.min_val), fmt(rep.max_val), mp, fmt(rep.max_courant),
        fmt(rep.mass_drift),
    ]


def write_report_csv(path: Path, results: list[RunResult]) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(REPORT_COLUMNS) + "\n")
        for r in results:
            fh.write(",".join(report_row(r)) + "\n")


def write_stage_log_csv(path: Path, result: RunResult) -> None:
    with open(path, "w") as fh:
        fh.write("step,stage,t,courant,alpha_min,mp_violation\n")
        for rec in result.stage_log:
            mp = "na" if rec.mp_violation is None else fmt(rec.mp_violation)
            fh.write(
                f"{rec.step},{rec.stage},{fmt(rec.t)},{fmt(rec.courant)},"
                f"{fmt(rec.alpha_min)},{mp}\n"
            )


CONND_COLUMNS = [
    "scheme", "limiter", "case", "norm", "n_coarse", "n_fine",
    "err_coarse", "err_fine", "order",
]


def run_tag(spec: ExperimentSpec) -> str:
    return (
        f"{spec.scheme}-{spec.limiter.value}-{spec.stream.kind.value}"
        f"-{spec.ic.value}-{spec.resolution[0]}"
    )


def manifest_dict(spec: ExperimentSpec, result: RunResult, outputs: dict) -> dict:
    cfg = {
        "scheme": spec.scheme,
        "limiter": spec.limiter.value,
        "case": spec.stream.kind.value,
        "ic": spec.ic.value,
        "nx": spec.resolution[0],
        "ny": spec.resolution[1],
        "cn_target": spec.courant_target,
        "end_time": spec.end_time,
        "init_mode": spec.resolved_init_mode(),
        "ssp": spec.resolved_ssp(),
    }
    digest = hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()
    return {
        "config": cfg,
        "config_digest": digest,
        "dt": result.plan.dt,
        "n_steps": result.plan.n_steps,
        "deterministic": True,
        "outputs": outputs,
    }


LIMITER_NAMES = {k.value: k for k in LimiterKind}
LIMITER_NAMES["kuz"] = LimiterKind.KUZMIN
CASE_NAMES = {k.value: k for k in StreamKind}
IC_NAMES = {k.value: k for k in ICKind}
INIT_MODES = {"auto": "auto", "point": "point_sample", "gauss": "gauss3x3"}


class UsageError(Exception):
    pass


def load_config_file(path: str) -> dict:
    """key=value lines; blank lines and # comments ignored."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        values[key] = val
    return values


RUN_KEYS = {
    "scheme", "limiter", "case", "ic", "res", "cn", "end", "init_mode", "ssp",
}


def build_spec(args: argparse.Namespace) -> ExperimentSpec:
    values = {
        "scheme": args.scheme,
        "limiter": args.limiter,
        "case": args.case,
        "ic": args.ic,
        "res": args.res,
        "cn": args.cn,
        "end": args.end,
        "init_mode": args.init_mode,
        "ssp": args.ssp,
    }
    if getattr(args, "config", None):
        file_values = load_config_file(args.config)
        unknown = set(file_values) - RUN_KEYS
        if unknown:
            raise UsageError(f"invalid config keys: {sorted(unknown)}")
        for key, val in file_values.items():
            if values[key] is None:
                values[key] = val

    defaults = {
        "scheme": "fv2", "limiter": "n2n", "case": "sbr", "ic": "leveque",
        "res": 100, "cn": 0.5, "end": 1.0, "init_mode": "auto", "ssp": "auto",
    }
    for key, val in defaults.items():
        if values[key] is None:
            values[key] = val

    try:
        limiter = LIMITER_NAMES[str(values["limiter"])]
        case = CASE_NAMES[str(values["case"])]
        ic = IC_NAMES[str(values["ic"])]
        init_mode = INIT_MODES[str(values["init_mode"])]
        res = int(values["res"])
        cn = float(values["cn"])
        end = float(values["end"])
        ssp = str(values["ssp"])
        scheme = str(values["scheme"])
        return ExperimentSpec(
            scheme=scheme,
            limiter=limiter,
            stream=StreamCase(case),
            ic=ic,
            resolution=(res, res),
            courant_target=cn,
            end_time=end,
            init_mode=init_mode,
            ssp=ssp,
        )
    except (KeyError, ValueError) as exc:
        raise UsageError(f"invalid configuration: {exc}") from exc


def cmd_run(args: argparse.Namespace) -> int:
    spec = build_spec(args)
    out = Path(args.out)
    result = run_experiment(spec)
    out.mkdir(parents=True, exist_ok=True)
    tag = run_tag(spec)
    paths = {
        "field": str(out / f"{tag}_field.csv"),
        "report": str(out / f"{tag}_report.csv"),
        "stages": str(out / f"{tag}_stages.csv"),
        "manifest": str(out / f"{tag}_manifest.json"),
    }
    write_field_csv(Path(paths["field"]), result.final, spec.grid())
    write_report_csv(Path(paths["report"]), [result])
    write_stage_log_csv(Path(paths["stages"]), result)
    manifest = manifest_dict(spec, result, paths)
    Path(paths["manifest"]).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    rep = result.report
    mp = "na" if rep.max_mp_violation is None else f"{rep.max_mp_violation:.3e}"
    print(
        f"{tag}: steps={result.plan.n_steps} dt={result.plan.dt:.6e}"
        f" L1={rep.rel_l1:.6f} L2={rep.rel_l2:.6f} Linf={rep.rel_linf:.6f}"
        f" min={rep.min_val:.3e} max={rep.max_val:.6f} mp={mp} cn={rep.max_courant:.4f}"
    )
    if spec.courant_target > (0.5 if spec.scheme == "fv2" else 0.25):
        print(
            f"warning: courant target {spec.courant_target} exceeds the"
            " incompressible stage bound for this scheme"
        )
    return 0


def cmd_convergence(args: argparse.Namespace) -> int:
    resolutions = [int(r) for r in args.resolutions.split(",")]
    if len(resolutions) < 2:
        raise UsageError("need at least two resolutions")
    for a, b in zip(resolutions, resolutions[1:]):
        if b != 2 * a:
            raise UsageError("each resolution must double the previous one")
    limiters = [LIMITER_NAMES[name] for name in args.limiters.split(",")]
    cases = [CASE_NAMES[name] for name in args.cases.split(",")]
    norms = {"l1": (1, "rel_l1"), "l2": (2, "rel_l2"), "linf": (np.inf, "rel_linf")}
    wanted = [norms[n] for n in args.norms.split(",")]

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for lim in limiters:
        for case in cases:
            reports = {}
            for res in resolutions:
                spec = convergence_spec(args.scheme, lim, case, res, cn=args.cn)
                reports[res] = run_experiment(spec).report
            for (p, attr) in wanted:
                label = "linf" if p is np.inf else f"l{p}"
                for nc, nf in zip(resolutions, resolutions[1:]):
                    ec = getattr(reports[nc], attr)
                    ef = getattr(reports[nf], attr)
                    order = observed_order(ec, ef)
                    rows.append(
                        [args.scheme, lim.value, case.value, label, str(nc),
                         str(nf), fmt(ec), fmt(ef), fmt(order)]
                    )
                    print(
                        f"{args.scheme} {lim.value:9s} {case.value:4s} {label:4s}"
                        f" {nc:>4d}->{nf:<4d} err {ec:.5e} -> {ef:.5e} order {order:.3f}"
                    )
    path = out / f"convergence_{args.scheme}.csv"
    with open(path, "w") as fh:
        fh.write(",".join(CONND_COLUMNS) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")
    print(f"wrote {path}")
    return 0


def cmd_suite(args: argparse.Namespace) -> int:
    suite = BenchmarkSuite(verbose=True)
    if args.list:
        for name in suite.ALL:
            print(name)
        return 0
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    results = suite.run_all(only=args.only)

    with open(out / "suite_summary.csv", "w") as fh:
        fh.write("criterion,status,details\n")
        for res in results:
            fh.write(f"{res.name},{'pass' if res.passed else 'fail'},{len(res.lines)}\n")
    with open(out / "suite_details.txt", "w") as fh:
        for res in results:
            fh.write(res.summary() + "\n")
            for line in res.lines:
                fh.write("  " + line + "\n")

    # artifacts consumed by the plot renderer
    sbr_runs = []
    if args.only in (None, "fv2-sbr"):
        for lim, rr in suite.sbr_fv2_runs().items():
            write_field_csv(out / f"{run_tag(rr.spec)}_field.csv", rr.final, rr.spec.grid())
            sbr_runs.append(rr)
        unlimited = run_experiment(
            ExperimentSpec(
                scheme="fv4",
                limiter=LimiterKind.UNLIMITED,
                stream=StreamCase(StreamKind.SBR),
                ic=ICKind.LEVEQUE,
                resolution=(100, 100),
                courant_target=0.5,
                end_time=1.0,
            )
        )
        write_field_csv(out / f"{run_tag(unlimited.spec)}_field.csv",
                        unlimited.final, unlimited.spec.grid())
        sbr_runs.append(unlimited)
        write_report_csv(out / "sbr_reports.csv", sbr_runs)
    if args.only in (None, "fv2-convergence"):
        rows = []
        for lim in (LimiterKind.BJ, LimiterKind.N2N_MP, LimiterKind.KUZMIN, LimiterKind.NK_MP):
            for kind in (StreamKind.DIAG, StreamKind.QUAD, StreamKind.SIN, StreamKind.SBR):
                o = suite.fv2_order(lim, kind)
                rows.append(["fv2", lim.value, kind.value, "l2", "128", "256",
                             fmt(o["err_coarse"]), fmt(o["err_fine"]), fmt(o["order"])])
        with open(out / "convergence_fv2.csv", "w") as fh:
            fh.write(",".join(CONND_COLUMNS) + "\n")
            for row in rows:
                fh.write(",".join(row) + "\n")

    for res in results:
        print(res.summary())
        for line in res.lines:
            print("  " + line)
    return 0 if all(r.passed for r in results) else 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="mpfv",
        description="maximum-principle-preserving finite volume advection benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute one experiment and write artifacts")
    run_p.add_argument("--scheme", choices=["fv2", "fv4"], default=None)
    run_p.add_argument("--limiter", choices=sorted(LIMITER_NAMES), default=None)
    run_p.add_argument("--case", choices=sorted(CASE_NAMES), default=None)
    run_p.add_argument("--ic", choices=sorted(IC_NAMES), default=None)
    run_p.add_argument("--res", type=int, default=None)
    run_p.add_argument("--cn", type=float, default=None)
    run_p.add_argument("--end", type=float, default=None)
    run_p.add_argument("--init-mode", dest="init_mode", choices=sorted(INIT_MODES), default=None)
    run_p.add_argument("--ssp", choices=["auto", "fe", "ssp22", "ssp33"], default=None)
    run_p.add_argument("--config", help="optional key=value file; flags win", default=None)
    run_p.add_argument("--out", default="out")
    run_p.set_defaults(func=cmd_run)

    conv_p = sub.add_parser("convergence", help="grid refinement study")
    conv_p.add_argument("--scheme", choices=["fv2", "fv4"], default="fv2")
    conv_p.add_argument("--limiters", default="bj,n2n,kuz,nk")
    conv_p.add_argument("--cases", default="diag,quad,sin,sbr")
    conv_p.add_argument("--resolutions", default="128,256")
    conv_p.add_argument("--norms", default="l2")
    conv_p.add_argument("--cn", type=float, default=0.5)
    conv_p.add_argument("--out", default="out")
    conv_p.set_defaults(func=cmd_convergence)

    suite_p = sub.add_parser("suite", help="run the full benchmark suite")
    suite_p.add_argument("--only", default=None)
    suite_p.add_argument("--list", action="store_true")
    suite_p.add_argument("--out", default="out")
    suite_p.set_defaults(func=cmd_suite)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
