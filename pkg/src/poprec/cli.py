"""poprec command line: one entry point wiring sampling, inversion,
estimation, recovery, the analysis checks, and benchmark sweeps.

Every subcommand that writes an output file also writes
``<output>.manifest.json`` recording the resolved parameters, input/output
hashes, tool version and wall-clock duration; ``poprec replay`` re-runs a
manifest and verifies the outputs come back byte-identical.

Exit codes: 0 success, 1 domain error (a violated precondition, printed to
stderr), 2 usage error (argparse prints the synopsis). Rational arguments
are accepted as ``p/q`` or decimal text and converted exactly.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from pathlib import Path

from . import __version__
from .analysis import (
    DiskSpec,
    bad_polynomial,
    check_disk_growth,
    check_dual_witness,
    dual_witness,
    eval_poly,
    relaxation_gap_check,
    three_circle_check,
)
from .channel import ListOracle, SampleOracle, _Lane, stream_word
from .core import (
    Params,
    PoprecError,
    SparseDistribution,
    ValidationError,
    format_rational,
    format_rational_pair,
    load_distribution,
    load_samples,
    parse_rational,
    rat,
    save_distribution,
    validate_bitstring,
)
from .estimate import compute_sample_count
from .inverse import (
    LocalInverseCertificate,
    natural_estimator,
    sensitivity_report,
    solve_local_inverse,
)
from .matrices import inf_norm
from .recover import RecoveryConfig, recover_population, recover_single

__all__ = ["main"]

_CHUNK_LINES = 1 << 16


# ---------------------------------------------------------------------------
# small helpers
# ---------------------------------------------------------------------------


def _rational_arg(text: str):
    try:
        return parse_rational(text)
    except ValidationError as exc:  # malformed literal = usage error
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_grid(text: str) -> list:
    """Parse '1:12' (inclusive range) or '1,2,5' into a list of ints."""
    text = text.strip()
    try:
        if ":" in text:
            lo, hi = text.split(":")
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ValidationError(f"not an integer grid: {text!r}") from None
    if not values:
        raise ValidationError("bench grid is empty")
    return values


def _rat_grid(text: str) -> list:
    values = [parse_rational(t) for t in text.split(",") if t.strip()]
    if not values:
        raise ValidationError("bench grid is empty")
    return values


def _float_list(text: str) -> list:
    parts = [t for t in text.replace(",", " ").split() if t]
    if not parts:
        raise ValidationError("coefficient list is empty")
    return [float(parse_rational(t)) for t in parts]


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def _write_manifest(args, params: dict, inputs: list, outputs: list, started: float):
    manifest = {
        "tool": "poprec",
        "version": __version__,
        "subcommand": args._subcommand,
        "argv": args._argv,
        "params": params,
        "seed": getattr(args, "seed", None),
        "inputs": {str(p): _sha256(p) for p in inputs},
        "outputs": {str(p): _sha256(p) for p in outputs},
        "duration_seconds": round(time.perf_counter() - started, 6),
    }
    path = Path(str(outputs[0]) + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _pair(x) -> str:
    return format_rational_pair(x)


def _passfail(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _fmt_log10(lg: float) -> str:
    """Decimal text for a number given as log10, safe far beyond float range."""
    if not math.isfinite(lg):
        return "0" if lg < 0 else "inf"
    e = math.floor(lg)
    m = 10.0 ** (lg - e)
    if m >= 10.0:
        m, e = m / 10.0, e + 1
    return f"{m:.6f}e{e:+03d}"


def _csv_number(x, lg: float) -> str:
    """Plot-friendly decimal for an exact rational with known log10."""
    try:
        return f"{float(x):.12g}"
    except OverflowError:
        return _fmt_log10(lg)


def _check_threads_env() -> None:
    value = os.environ.get("POPREC_THREADS")
    if value is None:
        return
    try:
        cap = int(value)
    except ValueError:
        raise ValidationError(
            f"POPREC_THREADS must be a positive integer, got {value!r}"
        ) from None
    if cap < 1:
        raise ValidationError(
            f"POPREC_THREADS must be a positive integer, got {value!r}"
        )
    # The current build runs single-threaded, so every cap is already honored.


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_gen(args) -> int:
    started = time.perf_counter()
    n, k = args.n, args.support
    if n < 1:
        raise ValidationError(f"n must be a positive integer, got {n}")
    if not 0 <= args.seed < (1 << 64):
        raise ValidationError(f"seed must be a 64-bit integer, got {args.seed}")
    if not 1 <= k <= (1 << n):
        raise ValidationError(f"support size must be in [1, 2^{n}], got {k}")
    lane = _Lane(stream_word(args.seed, 0))
    space = 1 << n
    chosen: dict = {}
    attempts = 0
    while len(chosen) < k:
        attempts += 1
        if attempts > 64 * k + 4 * space:
            raise PoprecError("support generation stalled; lower --support")
        chosen.setdefault(format(lane.uniform_below(space), f"0{n}b"), None)
    support = list(chosen)
    if args.masses == "uniform":
        masses = [rat(1, k)] * k
    else:
        weights = [1 + lane.uniform_below(1_000_000) for _ in range(k)]
        total = sum(weights)
        masses = [rat(w, total) for w in weights]
    dist = SparseDistribution.from_pairs(zip(support, masses), n=n)
    save_distribution(dist, args.out)
    params = {
        "n": str(n),
        "support": str(k),
        "masses": args.masses,
        "seed": str(args.seed),
        "out": str(args.out),
    }
    manifest = _write_manifest(args, params, [], [args.out], started)
    print(f"wrote {k}-point distribution on {{0,1}}^{n} to {args.out}")
    print(f"manifest {manifest}")
    return 0


def _cmd_sample(args) -> int:
    started = time.perf_counter()
    if args.count < 0:
        raise ValidationError(f"count must be nonnegative, got {args.count}")
    dist = load_distribution(args.dist)
    oracle = SampleOracle(dist, args.mu, args.seed)
    with open(args.out, "w") as f:
        done = 0
        while done < args.count:
            take = min(_CHUNK_LINES, args.count - done)
            f.writelines(s + "\n" for s in oracle.block(done, take))
            done += take
    params = {
        "dist": str(args.dist),
        "mu": format_rational(oracle.mu),
        "count": str(args.count),
        "seed": str(args.seed),
        "out": str(args.out),
    }
    manifest = _write_manifest(args, params, [args.dist], [args.out], started)
    print(f"wrote {args.count} samples (n={oracle.n}, mu={_pair(oracle.mu)}) to {args.out}")
    print(f"manifest {manifest}")
    return 0


def _cmd_estimate(args) -> int:
    validate_bitstring(args.target)
    samples = load_samples(args.samples)
    oracle = ListOracle(samples, n=len(args.target) if not samples else None)
    params = Params(n=len(args.target), mu=args.mu, eps=args.eps, delta=args.delta)
    cfg = RecoveryConfig(params=params)
    est = recover_single(oracle, args.target, cfg)
    print(f"target {est.target}")
    print(f"n {params.n}")
    print(f"mu {_pair(params.mu)}")
    print(f"eps {_pair(params.eps)}")
    print(f"delta {_pair(params.delta)}")
    print(f"samples_used {est.samples_used}")
    print(f"estimate {_pair(est.value)}")
    return 0


def _cmd_inverse(args) -> int:
    if args.n < 0:
        raise ValidationError(f"n must be nonnegative, got {args.n}")
    if args.natural:
        v = natural_estimator(args.n, args.mu)
        cert = LocalInverseCertificate(
            n=args.n,
            mu=args.mu,
            eps=args.eps,
            v=tuple(v),
            sigma=inf_norm(v),
            residual=rat(0),
        )
        mode = "natural"
    else:
        cert = solve_local_inverse(args.n, args.mu, args.eps)
        mode = "lp"
    report = sensitivity_report(cert)
    print(f"n {cert.n}")
    print(f"mu {_pair(cert.mu)}")
    print(f"eps {_pair(cert.eps)}")
    print(f"mode {mode}")
    print(f"sigma {_pair(cert.sigma)}")
    print(f"residual {_pair(cert.residual)}")
    if mode == "lp":
        print(f"pivots {cert.pivots}")
    print(f"sigma_log10 {report['sigma_log10']:.6f}")
    print(f"bound_log10 {report['bound_log10']:.6f}")
    print(f"margin_log10 {report['margin_log10']:.6f}")
    print(f"sensitivity_bound {_passfail(report['holds'])}")
    for i, vi in enumerate(cert.v):
        print(f"v[{i}] {_pair(vi)}")
    return 0


def _cmd_recover(args) -> int:
    started = time.perf_counter()
    inputs = []
    if args.dist is not None:
        if args.seed is None:
            raise ValidationError("--seed is required when sampling from --dist")
        dist = load_distribution(args.dist)
        inputs.append(args.dist)
        oracle = SampleOracle(dist, args.mu, args.seed)
    else:
        samples = load_samples(args.samples)
        inputs.append(args.samples)
        oracle = ListOracle(samples, n=args.n)
    if args.n is not None and oracle.n != args.n:
        raise ValidationError(
            f"--n {args.n} contradicts the input sample length {oracle.n}"
        )
    params = Params(
        n=oracle.n,
        mu=args.mu,
        eps=args.eps,
        delta=args.delta,
        seed=args.seed if args.seed is not None else 0,
    )
    cfg = RecoveryConfig(
        params=params, fresh_samples_per_stage=not args.reuse_samples
    )
    result = recover_population(oracle, cfg)
    lines = [f"{a} {format_rational(e)}" for a, e in result.entries]
    lines.append(f"# samples_consumed {result.samples_consumed}")
    for st in result.stages:
        lines.append(
            f"# stage {st.length} sigma={format_rational(st.sigma)} "
            f"samples={st.samples} start={st.start_index} "
            f"candidates={st.candidates} survivors={st.survivors}"
        )
    Path(args.out).write_text("\n".join(lines) + "\n")
    manifest_params = {
        "n": str(params.n),
        "mu": format_rational(params.mu),
        "eps": format_rational(params.eps),
        "delta": format_rational(params.delta),
        "seed": str(params.seed),
        "source": "dist" if args.dist is not None else "samples",
        "reuse_samples": "true" if args.reuse_samples else "false",
        "out": str(args.out),
    }
    manifest = _write_manifest(args, manifest_params, inputs, [args.out], started)
    for a, e in result.entries:
        print(f"{a} {_pair(e)}")
    print(f"recovered {len(result.entries)} strings "
          f"using {result.samples_consumed} samples; wrote {args.out}")
    print(f"manifest {manifest}")
    return 0


def _cmd_bench(args) -> int:
    started = time.perf_counter()
    ns = _int_grid(args.n_grid)
    mus = _rat_grid(args.mu_grid)
    epss = _rat_grid(args.eps_grid)
    rows = []
    for n in ns:
        if n < 0:
            raise ValidationError(f"n must be nonnegative, got {n}")
        for mu in mus:
            for eps in epss:
                cert = solve_local_inverse(n, mu, eps)
                report = sensitivity_report(cert)
                m = compute_sample_count(n, cert.sigma, eps, args.delta)
                rows.append(
                    ",".join(
                        [
                            str(n),
                            f"{float(mu):.12g}",
                            f"{float(eps):.12g}",
                            _csv_number(cert.sigma, report["sigma_log10"]),
                            _fmt_log10(report["bound_log10"]),
                            f"{report['margin_log10']:.6f}",
                            str(m),
                            str(cert.pivots),
                        ]
                    )
                )
    header = [
        "# schema=1",
        "# margin is log10(bound) - log10(sigma); nonnegative means the bound holds",
        "n,mu,eps,sigma,bound,margin,samples_required,lp_pivots",
    ]
    Path(args.out).write_text("\n".join(header + rows) + "\n")
    params = {
        "n_grid": args.n_grid,
        "mu_grid": args.mu_grid,
        "eps_grid": args.eps_grid,
        "delta": format_rational(args.delta),
        "out": str(args.out),
    }
    manifest = _write_manifest(args, params, [], [args.out], started)
    print(f"wrote {len(rows)} bench rows to {args.out}")
    print(f"manifest {manifest}")
    return 0


def _cmd_replay(args) -> int:
    path = Path(args.manifest)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from None
    for key in ("argv", "outputs", "subcommand"):
        if key not in data:
            raise ValidationError(f"{path} is missing manifest key {key!r}")
    if data["subcommand"] == "replay":
        raise ValidationError("refusing to replay a replay")
    argv = [str(a) for a in data["argv"]]
    try:
        rc = _dispatch(argv)
    except SystemExit:
        raise ValidationError(f"manifest argv is not a valid invocation: {argv}") from None
    if rc != 0:
        raise PoprecError(f"replayed command exited {rc}")
    ok = True
    for out_path, want in data["outputs"].items():
        try:
            got = _sha256(out_path)
        except OSError:
            got = "<missing>"
        verdict = "OK" if got == want else "MISMATCH"
        ok = ok and got == want
        print(f"{out_path}: {verdict}")
    print(f"replay {_passfail(ok)}")
    return 0 if ok else 1


# -- analyze ----------------------------------------------------------------


def _cmd_analyze_dual(args) -> int:
    witness = dual_witness(args.n, args.mu, args.eps)
    checks = check_dual_witness(witness)
    print(f"n {witness.n}")
    print(f"mu {_pair(witness.mu)}")
    print(f"eps {_pair(witness.eps)}")
    print(f"sigma {_pair(witness.sigma)}")
    for i, c in enumerate(witness.p):
        print(f"p[{i}] {_pair(c)}")
    for i, c in enumerate(witness.q):
        print(f"q[{i}] {_pair(c)}")
    print(f"translate_matches {_passfail(checks['translate_matches'])}")
    print(f"objective_matches {_passfail(checks['objective_matches'])}")
    print(f"translate_l1_bounded {_passfail(checks['translate_l1_bounded'])}")
    print(f"dual_witness {_passfail(checks['ok'])}")
    return 0


def _cmd_analyze_three_circle(args) -> int:
    coeffs = _float_list(args.coeffs)
    result = three_circle_check(
        coeffs, args.a, args.b, args.c,
        grid_points=args.grid_points, tolerance=args.tolerance,
    )
    sup_a, sup_b, sup_c = result["sups"]
    print(f"radii {args.a} {args.b} {args.c}")
    print(f"sup_a {sup_a:.12g}")
    print(f"sup_b {sup_b:.12g}")
    print(f"sup_c {sup_c:.12g}")
    print(f"degenerate {'yes' if result['degenerate'] else 'no'}")
    if not result["degenerate"]:
        print(f"lhs {result['lhs']:.12g}")
        print(f"rhs {result['rhs']:.12g}")
        print(f"margin {result['margin']:.6g}")
    print(f"three_circle {_passfail(result['holds'])}")
    return 0


def _cmd_analyze_disk_growth(args) -> int:
    coeffs = _float_list(args.coeffs)
    try:
        center = complex(args.center)
    except ValueError:
        raise ValidationError(f"not a complex literal: {args.center!r}") from None
    result = check_disk_growth(
        coeffs, DiskSpec(center=center, radius=args.radius),
        grid_points=args.grid_points, tolerance=args.tolerance,
    )
    print(f"center {center}")
    print(f"radius {args.radius}")
    print(f"applicable {'yes' if result['applicable'] else 'no'}")
    print(f"inner_sup {result['inner_sup']:.12g}")
    print(f"center_value {result['center_value']:.12g}")
    if not result["applicable"]:
        print("disk_growth NOT-APPLICABLE")
        return 0
    print(f"exponent {result['exponent']:.12g}")
    print(f"bound {result['bound']:.12g}")
    print(f"outer_sup {result['outer_sup']:.12g}")
    print(f"margin {result['margin']:.6g}")
    print(f"disk_growth {_passfail(result['holds'])}")
    return 0


def _cmd_analyze_relaxation(args) -> int:
    coeffs = _float_list(args.coeffs)
    result = relaxation_gap_check(
        coeffs, args.mu, args.eps,
        grid_points=args.grid_points, tolerance=args.tolerance,
    )
    print(f"mu {_pair(args.mu)}")
    print(f"eps {_pair(args.eps)}")
    print(f"applicable {'yes' if result['applicable'] else 'no'}")
    print(f"inner_sup {result['inner_sup']:.12g}")
    print(f"objective {result['objective']:.12g}")
    if result["applicable"]:
        print(f"bound {result['bound']:.12g}")
        print(f"margin {result['margin']:.6g}")
    print(f"relaxation_gap {_passfail(result['holds'])}")
    return 0


def _cmd_analyze_bad_poly(args) -> int:
    coeffs = bad_polynomial(args.n, args.mu)
    mu = args.mu
    left = 1 - 2 * mu
    end_value = eval_poly(coeffs, left)
    center_value = eval_poly(coeffs, rat(0))
    print(f"n {args.n}")
    print(f"mu {_pair(mu)}")
    print(f"interval [{format_rational(left)}, 1]")
    print(f"value_at_left {_pair(end_value)}")
    print(f"interval_sup_is_one {_passfail(end_value == 1)}")
    print(f"value_at_zero {_pair(center_value)}")
    disk = DiskSpec(center=float(1 - mu), radius=float(mu))
    result = check_disk_growth(
        [float(c) for c in coeffs], disk,
        grid_points=args.grid_points, tolerance=args.tolerance,
    )
    print(f"disk_growth_applicable {'yes' if result['applicable'] else 'no'}")
    if result["applicable"]:
        print(f"disk_growth_margin {result['margin']:.6g}")
        print(f"disk_growth {_passfail(result['holds'])}")
    else:
        print("disk_growth NOT-APPLICABLE")
    return 0


# ---------------------------------------------------------------------------
# parser plumbing
# ---------------------------------------------------------------------------


def _add_analysis_knobs(p) -> None:
    p.add_argument("--grid-points", type=int, default=4096,
                   help="starting circle-grid resolution (default 4096)")
    p.add_argument("--tolerance", type=float, default=1e-6,
                   help="relative slack for grid comparisons (default 1e-6)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poprec",
        description="Lossy population recovery: sampling, exact local "
                    "inverses, estimation, recovery, analysis, benchmarks.",
    )
    parser.add_argument("--version", action="version", version=f"poprec {__version__}")
    sub = parser.add_subparsers(dest="_subcommand", required=True, metavar="SUBCOMMAND")

    p = sub.add_parser("gen", help="generate a sparse distribution file")
    p.add_argument("--n", type=int, required=True, help="string length")
    p.add_argument("--support", type=int, required=True, help="number of support strings")
    p.add_argument("--masses", choices=["uniform", "random"], default="uniform")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("sample", help="draw channel samples from a distribution")
    p.add_argument("--dist", required=True, help="distribution file")
    p.add_argument("--mu", type=_rational_arg, required=True,
                   help="per-coordinate survival probability")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("estimate", help="estimate one string's mass from samples")
    p.add_argument("--samples", required=True, help="sample file")
    p.add_argument("--target", required=True, help="bitstring to estimate")
    p.add_argument("--mu", type=_rational_arg, required=True)
    p.add_argument("--eps", type=_rational_arg, required=True)
    p.add_argument("--delta", type=_rational_arg, required=True)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("inverse", help="solve the minimum-sensitivity local inverse")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=_rational_arg, required=True)
    p.add_argument("--eps", type=_rational_arg, required=True)
    p.add_argument("--natural", action="store_true",
                   help="emit the closed-form geometric inverse instead of the LP optimum")
    p.set_defaults(func=_cmd_inverse)

    p = sub.add_parser("recover", help="recover a sparse distribution from lossy samples")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dist", help="distribution file (simulate the channel; needs --seed)")
    src.add_argument("--samples", help="file of existing channel samples")
    p.add_argument("--n", type=int, default=None, help="expected string length (checked)")
    p.add_argument("--mu", type=_rational_arg, required=True)
    p.add_argument("--eps", type=_rational_arg, required=True)
    p.add_argument("--delta", type=_rational_arg, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--reuse-samples", action="store_true",
                   help="re-read samples [0, m) each stage instead of fresh blocks")
    p.add_argument("--out", default="recovery.txt")
    p.set_defaults(func=_cmd_recover)

    p = sub.add_parser("analyze", help="duality / complex-analysis checks")
    asub = p.add_subparsers(dest="_mode", required=True, metavar="CHECK")

    q = asub.add_parser("dual", help="optimal dual witness and its identities")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--mu", type=_rational_arg, required=True)
    q.add_argument("--eps", type=_rational_arg, required=True)
    q.set_defaults(func=_cmd_analyze_dual)

    q = asub.add_parser("three-circle", help="Hadamard three-circle inequality")
    q.add_argument("--coeffs", required=True, help="comma-separated coefficients, low degree first")
    q.add_argument("--a", type=float, required=True)
    q.add_argument("--b", type=float, required=True)
    q.add_argument("--c", type=float, required=True)
    _add_analysis_knobs(q)
    q.set_defaults(func=_cmd_analyze_three_circle)

    q = asub.add_parser("disk-growth", help="growth lower bound from an inner disk")
    q.add_argument("--coeffs", required=True)
    q.add_argument("--center", required=True, help="complex literal, e.g. 0.7 or 0.7+0.1j")
    q.add_argument("--radius", type=float, required=True)
    _add_analysis_knobs(q)
    q.set_defaults(func=_cmd_analyze_disk_growth)

    q = asub.add_parser("relaxation", help="LP relaxation gap bound on a polynomial")
    q.add_argument("--coeffs", required=True)
    q.add_argument("--mu", type=_rational_arg, required=True)
    q.add_argument("--eps", type=_rational_arg, required=True)
    _add_analysis_knobs(q)
    q.set_defaults(func=_cmd_analyze_relaxation)

    q = asub.add_parser("bad-poly", help="worst-case polynomial demonstration")
    q.add_argument("--n", type=int, required=True, help="even degree")
    q.add_argument("--mu", type=_rational_arg, required=True)
    _add_analysis_knobs(q)
    q.set_defaults(func=_cmd_analyze_bad_poly)

    p = sub.add_parser("bench", help="sigma-vs-bound sweep to CSV")
    p.add_argument("--n-grid", required=True, help="e.g. 1:12 or 1,2,4,8")
    p.add_argument("--mu-grid", required=True, help="e.g. 1/10,1/5,3/10")
    p.add_argument("--eps-grid", required=True, help="e.g. 1/10,1/20")
    p.add_argument("--delta", type=_rational_arg, default=rat(1, 20),
                   help="failure budget for the samples_required column (default 1/20)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("replay", help="re-run a manifest and verify outputs byte-for-byte")
    p.add_argument("manifest", help="path to a .manifest.json file")
    p.set_defaults(func=_cmd_replay)

    return parser


def _dispatch(argv: list) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    args._argv = list(argv)
    return args.func(args)


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        _check_threads_env()
        return _dispatch(argv)
    except PoprecError as exc:
        print(f"poprec: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"poprec: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
