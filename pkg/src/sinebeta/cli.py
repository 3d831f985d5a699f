"""Command-line entry points: expansion evaluation, ensemble sampling,
sine-process simulation, CLT sweeps, and the invariant verification gate.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import expansion, harness, linefn
from .cbe import sample_cbe_batch
from .linefn import normalize_for_unit_variance
from .pointprocess import TWO_PI, lattice_preimages
from .sde import SDEConfig, simulate_sine_path


def _load_config(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _circle_from_config(cfg: dict) -> expansion.CircleFunction:
    coeffs = {int(j): complex(re, im) for j, re, im in cfg["coeffs"]}
    return expansion.CircleFunction(coeffs)


def _line_from_config(cfg: dict) -> linefn.LineFunction:
    family = cfg["family"]
    if family == "gaussian":
        return linefn.LineFunction.gaussian(cfg.get("amplitude", 1.0), cfg.get("width", 1.0))
    if family == "triangle":
        return linefn.LineFunction.triangle(cfg.get("amplitude", 1.0), cfg.get("halfwidth", 1.0))
    if family == "user-tabulated":
        return linefn.LineFunction.tabulated(cfg["grid"], cfg["samples"])
    raise SystemExit(f"unknown line-function family {family!r}")


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_expand(args) -> int:
    cfg = _load_config(args.config)
    beta = float(cfg["beta"])
    alpha = Fraction(2) / Fraction(str(beta))
    f = _circle_from_config(cfg)
    cap = int(cfg.get("degree_cap", 10))
    records = []
    for n in cfg["n_list"]:
        value, tail = expansion.gessel_expectation(f, alpha, int(n), cap)
        lim = expansion.limit_laplace(f, beta)
        bound = (
            expansion.cbe_error_bound(f, beta, int(n) // 2)
            if f.is_real and int(n) % 2 == 0
            else None
        )
        records.append(
            {
                "n": int(n),
                "value": [value.real, value.imag],
                "tail_estimate": tail,
                "limit": [lim.real, lim.imag],
                "bound": bound,
            }
        )
    _write_text(cfg.get("out", args.out), json.dumps(records, indent=1))
    return 0


def cmd_sample_cbe(args) -> int:
    rng = np.random.default_rng(args.seed)
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        done = 0
        while done < args.samples:
            m = min(10000, args.samples - done)
            angles = sample_cbe_batch(args.n, args.beta, rng, m)
            writer.writerows(angles.tolist())
            done += m
    print(f"wrote {args.samples} samples (n={args.n}, beta={args.beta}, seed={args.seed}) to {args.out}")
    return 0


def cmd_simulate_sine(args) -> int:
    rng = np.random.default_rng(args.seed)
    a, b = args.window
    if not a < 0 < b:
        raise SystemExit("window must contain 0")
    grid = np.unique(np.concatenate([np.linspace(a, b, args.grid_points), [0.0]]))
    cfg = SDEConfig(beta=args.beta, x_grid=grid, steps=args.steps)
    repair = []
    means = []
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for _ in range(args.paths):
            path = simulate_sine_path(cfg, rng)
            omega = rng.uniform(0.0, TWO_PI)
            config = lattice_preimages(path.as_view(), omega)
            writer.writerow(list(config.points))
            repair.append(path.repair_magnitude)
            means.append(float(np.mean(path.u)))
    sidecar = {
        "beta": args.beta,
        "window": [a, b],
        "paths": args.paths,
        "seed": args.seed,
        "steps": args.steps,
        "repair_magnitude_max": max(repair) if repair else 0.0,
        "mean_terminal_value": float(np.mean(means)) if means else 0.0,
        "intensity_reference": (b - a) / TWO_PI,
    }
    _write_text(args.out + ".meta.json", json.dumps(sidecar, indent=1))
    print(f"wrote {args.paths} configurations to {args.out}")
    return 0


def cmd_clt_test(args) -> int:
    cfg = _load_config(args.config)
    f = _line_from_config(cfg["function"])
    beta = float(cfg["beta"])
    f = normalize_for_unit_variance(f, beta) if cfg.get("normalize", True) else f
    record = harness.run_clt_experiment(
        f,
        beta,
        cfg["R_list"],
        int(cfg["paths"]),
        int(cfg["seed"]),
        steps=int(cfg.get("steps", 1000)),
        spacing=float(cfg.get("spacing", 0.5)),
    )
    out_json = cfg.get("out_json", "clt_record.json")
    out_csv = cfg.get("out_csv", "clt_table.csv")
    _write_text(out_json, record.to_json())
    with open(out_csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["R", "statistic", "value"])
        for row in record.results:
            for key, val in row.items():
                if key != "R":
                    writer.writerow([row["R"], key, val])
    print(f"wrote {out_json} and {out_csv}")
    return 0


def _gate(name: str, ok: bool, failures: list) -> None:
    print(f"verify {name}: {'PASS' if ok else 'FAIL'}")
    if not ok:
        failures.append(name)


def cmd_verify(args) -> int:
    from fractions import Fraction as F

    from .jack import inner_product_alpha, jack_basis, jack_hook_norm_check
    from .linefn import limit_variance, sobolev_seminorm_line
    from .partitions import enumerate_partitions
    from .pointprocess import MonotoneFnView

    failures: list = []

    def cauchy_ok() -> bool:
        from .partitions import z_lambda

        for alpha in (F(1, 2), F(2)):
            basis = jack_basis(alpha)
            for k in range(5):
                lhs: dict = {}
                for lam in enumerate_partitions(k):
                    poly, nrm = basis.jack(lam), basis.norm(lam)
                    for mu, cm in poly.coeffs.items():
                        for nu, cn in poly.coeffs.items():
                            lhs[(mu, nu)] = lhs.get((mu, nu), F(0)) + cm * cn / nrm
                lhs = {key: v for key, v in lhs.items() if v}
                rhs = {
                    (mu, mu): 1 / (z_lambda(mu) * alpha ** len(mu))
                    for mu in enumerate_partitions(k)
                }
                if lhs != rhs:
                    return False
        return True

    _gate("cauchy-identity", cauchy_ok(), failures)

    def orthogonality_ok() -> bool:
        for alpha in (F(1, 2), F(2)):
            basis = jack_basis(alpha)
            for k in range(5):
                parts = enumerate_partitions(k)
                for i, lam in enumerate(parts):
                    if not jack_hook_norm_check(lam, alpha):
                        return False
                    for mu in parts[i + 1 :]:
                        if inner_product_alpha(basis.jack(lam), basis.jack(mu), alpha) != 0:
                            return False
        return True

    _gate("jack-orthogonality-and-hooks", orthogonality_ok(), failures)

    _gate(
        "plancherel-normalization",
        all(
            sum(expansion.plancherel_pmf(lam, alpha) for lam in enumerate_partitions(n)) == 1
            for alpha in (F(1, 2), F(1), F(2))
            for n in range(1, 6)
        ),
        failures,
    )

    def expansion_ok() -> bool:
        f = expansion.CircleFunction.from_cosines({1: 0.2})
        theta = np.linspace(-np.pi, np.pi, 801)
        vals = np.exp(f.value(theta))
        t1, t2 = theta[:, None], theta[None, :]
        for beta, alpha in ((1.0, F(2)), (2.0, F(1))):
            dens = np.abs(np.exp(1j * t1) - np.exp(1j * t2)) ** beta
            num = np.trapezoid(np.trapezoid(dens * vals[:, None] * vals[None, :], theta), theta)
            den = np.trapezoid(np.trapezoid(dens, theta), theta)
            value, tail = expansion.gessel_expectation(f, alpha, 2, 10)
            if abs(value.real - num / den) > 5e-4 + tail:
                return False
        return True

    _gate("expansion-vs-quadrature", expansion_ok(), failures)

    def scaling_ok() -> bool:
        f = linefn.LineFunction.gaussian()
        base = {p: sobolev_seminorm_line(f, p) for p in (0.5, 1.0)}
        for r in (2.0, 10.0):
            fr = f.dilate(r)
            for p in (0.5, 1.0):
                if abs(sobolev_seminorm_line(fr, p) - r ** (1 - 2 * p) * base[p]) > 1e-8 * base[p]:
                    return False
            if abs(limit_variance(fr, 2.0) - limit_variance(f, 2.0)) > 1e-8:
                return False
        return True

    _gate("seminorm-scaling-and-dilation", scaling_ok(), failures)

    def feller_ok() -> bool:
        s2 = math.sqrt(1.01)
        phi1 = lambda y: math.exp(-(y**2) / 2.0)
        phi2 = lambda y: math.exp(-(s2 * y) ** 2 / 2.0)
        xs = np.linspace(-8, 8, 20001)
        gap = float(np.max(np.abs(harness.normal_cdf(xs) - harness.normal_cdf(xs / s2))))
        return harness.feller_bound(phi1, phi2, 5.0) >= gap

    _gate("feller-smoothing", feller_ok(), failures)

    def theta_map_ok() -> bool:
        view = MonotoneFnView(np.linspace(0, 10 * np.pi, 2001), np.linspace(0, 10 * np.pi, 2001))
        config = lattice_preimages(view, 0.0)
        return len(config) == 6 and np.allclose(config.points, TWO_PI * np.arange(6), atol=1e-9)

    _gate("lattice-preimages", theta_map_ok(), failures)

    def sde_ok() -> bool:
        rng = np.random.default_rng(12345)
        grid = np.array([-2 * np.pi, 0.0, 2 * np.pi])
        cfg = SDEConfig(beta=2.0, x_grid=grid, steps=1000)
        from .sde import simulate_sine_paths

        profiles = simulate_sine_paths(cfg, rng, 300)
        if np.max(np.abs(profiles[:, 1])) != 0.0:
            return False
        mean = profiles[:, 2].mean()
        err = profiles[:, 2].std() / math.sqrt(profiles.shape[0])
        return abs(mean - 2 * np.pi) <= 4 * err

    _gate("sde-mean-and-fixed-point", sde_ok(), failures)

    if failures:
        print(f"{len(failures)} gate(s) failed: {', '.join(failures)}")
        return 1
    print("all verification gates passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sinebeta",
        description="circular beta-ensemble and sine-process toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="evaluate the partition expansion from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("sample-cbe", help="draw circular-ensemble samples to CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample_cbe)

    p = sub.add_parser("simulate-sine", help="simulate sine-process configurations to CSV")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--window", type=float, nargs=2, required=True)
    p.add_argument("--grid-points", type=int, default=200)
    p.add_argument("--paths", type=int, default=100)
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate_sine)

    p = sub.add_parser("clt-test", help="run the central-limit sweep from a config file")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_clt_test)

    p = sub.add_parser("verify", help="run the invariant gates; nonzero exit on failure")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
