"""Command-line entry point: ``npf <subcommand> [options]``.

Data goes to stdout (or --out), diagnostics to stderr.  Exit status is 0 on
success, 1 on a failed check or undecided record, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, replace
from pathlib import Path

from . import bernoulli as bern
from . import glcount, npstats, sieveeval
from .config import OUTPUT_FORMATS, ConfigError, RunConfig, load_config
from .congruences import almost_eisenstein, eisenstein_congruence_check
from .golden import TABLE_PRECISION, reproduce_table
from .qexp import EIGENFORM_WEIGHTS, FormHandle, IngestError, PrecisionError, cached_eigenform, ingest_form, write_coeff_file
from .report import render_records, render_rows, to_json

SUBCOMMANDS = ("coeffs", "np-scan", "np-record", "congruence", "group-count", "sieve", "bounds", "bernoulli",
               "chowla", "eisenstein-primes", "bk-report", "erdos-kac", "ingest", "table-7-1")


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--config", help="flat key=value config file")
    g.add_argument("--cache-dir")
    g.add_argument("--no-cache", action="store_true", help="compute coefficient tables without the disk cache")
    g.add_argument("--threads", help="worker processes, or 'auto'")
    g.add_argument("--budget-seconds", type=float, dest="factor_budget_seconds")
    g.add_argument("--trial-bound", type=int)
    g.add_argument("--precision-ceiling", type=int)
    g.add_argument("--format", choices=OUTPUT_FORMATS, dest="output_format")
    g.add_argument("--out", help="write data here instead of stdout")
    return p


def _form_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--form", default="delta12", help="delta12, delta16, ..., delta26")
    src.add_argument("--coeff-file", help="ingest a coefficient file instead")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="npf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    common = [_common()]

    p = sub.add_parser("coeffs", parents=common, help="write a level-one a_p table in coefficient-file format")
    p.add_argument("--k", type=int, default=12)
    p.add_argument("--n", type=int, default=TABLE_PRECISION, help="precision: a_p for p < n")

    p = sub.add_parser("np-scan", parents=common, help="N_p records for good primes p <= X")
    _form_args(p)
    p.add_argument("--x", type=int, required=True)
    f = p.add_mutually_exclusive_group()
    f.add_argument("--omega", type=int)
    f.add_argument("--big-omega", type=int)

    p = sub.add_parser("np-record", parents=common, help="one N_p record")
    _form_args(p)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("congruence", parents=common, help="primes where modulus does not divide N_p")
    _form_args(p)
    p.add_argument("--modulus", type=int, default=66336)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--start", type=int, default=5)

    p = sub.add_parser("group-count", parents=common, help="#G_l, #C_l1 and delta(l), with brute-force check")
    p.add_argument("--ell", type=int, action="append", help="repeatable; default all primes <= --max-ell")
    p.add_argument("--max-ell", type=int, default=31)
    p.add_argument("--k", type=int, action="append", help="repeatable; default all even k in [4, 26]")
    p.add_argument("--n", type=int, default=1, help="level exponent; n >= 2 reports brute counts per variant")
    p.add_argument("--no-brute", action="store_true")

    p = sub.add_parser("sieve", parents=common, help="Richert main term along a parameter family")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--fn", choices=sieveeval.FAMILIES)
    mode.add_argument("--threshold", choices=sieveeval.FAMILIES)
    p.add_argument("--k", type=int, default=12)
    p.add_argument("--lo", type=float, default=3.0)
    p.add_argument("--hi", type=float, default=4.0)

    p = sub.add_parser("bounds", parents=common, help="omega / Omega bound family for weight k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--text", action="store_true", help="aligned text instead of JSON")

    p = sub.add_parser("bernoulli", parents=common, help="B_k and the factored numerator of B_k/k")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("chowla", parents=common, help="divisibility along n + (p-1)i")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i-max", type=int, default=2)
    p.add_argument("--deep", action="store_true", help="also run 691 along 12 + 690i and the joint progression")

    p = sub.add_parser("eisenstein-primes", parents=common, help="almost-Eisenstein prime candidates")
    _form_args(p)
    p.add_argument("--limit", type=int, default=2000, help="test primes p <= limit")
    p.add_argument("--lmax", type=int, default=10**4)
    p.add_argument("--check-ell", type=int, action="append", default=[],
                   help="also verify a_n = sigma_{k-1}(n) mod ell for n <= limit")

    p = sub.add_parser("bk-report", parents=common, help="omega(num(B_k/k)) against k/log k and log k")
    p.add_argument("--kmax", type=int, default=400)
    p.add_argument("--kmin", type=int, default=12)

    p = sub.add_parser("erdos-kac", parents=common, help="standardized truncated omega sample")
    _form_args(p)
    p.add_argument("--x", type=int, default=10**5)
    p.add_argument("--y", type=int, default=10**4)

    p = sub.add_parser("ingest", parents=common, help="validate a coefficient file")
    p.add_argument("path")

    sub.add_parser("table-7-1", parents=common, help="reproduce the omega = 4 table for Delta and diff it")
    return parser


def _config(args) -> RunConfig:
    overrides = {k: getattr(args, k, None) for k in
                 ("cache_dir", "factor_budget_seconds", "trial_bound", "precision_ceiling", "output_format")}
    if args.threads is not None:
        try:
            overrides["threads"] = None if args.threads == "auto" else int(args.threads)
        except ValueError:
            raise UsageError(f"--threads expects an integer or 'auto', got {args.threads!r}") from None
    cfg = load_config(args.config, overrides=overrides)
    if args.threads == "auto":
        cfg = replace(cfg, threads=None)
    return cfg


def _load_form(args, cfg: RunConfig, precision: int, ceiling: int | None = None) -> FormHandle:
    if getattr(args, "coeff_file", None):
        form = ingest_form(args.coeff_file)
        return form
    name = args.form
    if not name.startswith("delta") or not name[5:].isdigit() or int(name[5:]) not in EIGENFORM_WEIGHTS:
        raise UsageError(f"unknown form {name!r}; expected delta<k> with k in {EIGENFORM_WEIGHTS}")
    cache = None if args.no_cache else cfg.cache_dir
    return cached_eigenform(int(name[5:]), precision, cache, ceiling=ceiling or cfg.precision_ceiling)


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(args) -> int:
    cfg = _config(args)
    fmt = cfg.output_format
    cmd = args.command

    if cmd == "coeffs":
        cache = None if args.no_cache else cfg.cache_dir
        form = cached_eigenform(args.k, args.n, cache, ceiling=cfg.precision_ceiling)
        if args.out:
            write_coeff_file(form, args.out)
        else:
            lines = ["# npf-coeffs v1", f"# level={form.level} weight={form.weight} label={form.label}"]
            sys.stdout.write("\n".join(lines + [f"{p} {a}" for p, a in form.ap.items()]) + "\n")
        return 0

    if cmd == "np-scan":
        form = _load_form(args, cfg, args.x + 1)
        flt = None
        if args.omega is not None:
            flt = npstats.CountFilter("omega", args.omega)
        elif args.big_omega is not None:
            flt = npstats.CountFilter("big_omega", args.big_omega)
        result = npstats.scan(form, args.x, flt, cfg.budget, cfg.workers)
        _emit(args, render_records(result.records, fmt))
        if result.undecided:
            text = render_records(result.undecided, "csv")
            if args.out:
                Path(args.out + ".undecided.csv").write_text(text, encoding="utf-8")
            else:
                sys.stderr.write("# undecided records\n" + text)
        return 0

    if cmd == "np-record":
        form = _load_form(args, cfg, args.p + 1)
        _emit(args, render_records([npstats.np_record(form, args.p, cfg.budget)], fmt))
        return 0

    if cmd == "congruence":
        form = _load_form(args, cfg, args.x + 1)
        bad = npstats.congruence_scan(form, args.modulus, args.x, args.start)
        rows = [{"p": p, "Np_mod": npstats.np_value(form, p) % args.modulus} for p in bad]
        _emit(args, render_rows(rows, ("p", "Np_mod"), fmt))
        print(f"{len(bad)} violating primes in [{args.start}, {args.x}] for modulus {args.modulus}", file=sys.stderr)
        return 0

    if cmd == "group-count":
        from .primes import primes_upto
        ells = args.ell or primes_upto(args.max_ell)
        ks = args.k or list(range(4, 27, 2))
        if args.n >= 2:
            rows = []
            for ell in ells:
                for k in ks:
                    gp = glcount.GroupParams(ell, k, args.n)
                    order = glcount.brute_order(gp)
                    for v in glcount.VARIANTS:
                        c = glcount.brute_count(gp, v)
                        rows.append({"ell": ell, "k": k, "n": args.n, "variant": v, "orderG": order, "count": c,
                                     "ratio": f"{c / order:.6f}", "reference": f"{1 / ell ** args.n:.6f}"})
            cols = ("ell", "k", "n", "variant", "orderG", "count", "ratio", "reference")
            _emit(args, render_rows(rows, cols, fmt))
            return 0
        table = glcount.count_table(ells, ks, brute=not args.no_brute)
        rows = [{"ell": r.ell, "k": r.k, "lambda": r.lam, "orderG": r.order_G, "countC1": r.count_C1,
                 "delta_num": r.delta.numerator, "delta_den": r.delta.denominator, "brute_match": r.brute_match}
                for r in table]
        cols = ("ell", "k", "lambda", "orderG", "countC1", "delta_num", "delta_den", "brute_match")
        _emit(args, render_rows(rows, cols, fmt))
        return 0 if all(r.brute_match is not False for r in table) else 1

    if cmd == "sieve":
        if args.fn:
            params = sieveeval.params_family(args.fn, args.k)
            out = {"family": args.fn, "k": args.k, "alpha": str(params.alpha), "u": str(params.u),
                   "v": str(params.v), "lambda": params.lam, "F": sieveeval.richert_F(params),
                   "closed_form": sieveeval.g_closed(args.fn, args.k),
                   "count_bound": sieveeval.bound_from_params(params, args.k)}
        else:
            root = sieveeval.positivity_threshold(args.threshold, args.lo, args.hi)
            out = {"family": args.threshold, "lo": args.lo, "hi": args.hi, "threshold": root}
        _emit(args, to_json(out) + "\n")
        return 0

    if cmd == "bounds":
        b = sieveeval.bounds(args.k)
        if args.text:
            width = max(len(k) for k in asdict(b))
            _emit(args, "".join(f"{k:<{width}}  {v}\n" for k, v in asdict(b).items()))
        else:
            _emit(args, to_json(b, compact=True) + "\n")
        return 0

    if cmd == "bernoulli":
        e = bern.bk_over_k(args.k, cfg.budget)
        out = {"k": e.k, "B_k": str(e.b_k), "B_k_over_k": str(e.bk_over_k),
               "numerator_factorization": e.numerator_factorization.render(),
               "complete": e.numerator_factorization.complete, "omega": e.omega}
        _emit(args, to_json(out) + "\n")
        return 0

    if cmd == "chowla":
        verdicts = [bern.chowla_check(args.p, args.n, args.i_max)]
        extra = {}
        if args.deep:
            verdicts.append(bern.chowla_check(691, 12, 1))
            joint = bern.common_weight_progression([(args.n, args.p - 1), (12, 690)])
            extra["joint_progression"] = None if joint is None else {"base": joint[0], "modulus": joint[1]}
        out = [{"p": v.p, "n": v.n, "p_divides_num_Bn_over_n": v.divides_base,
                "p_coprime_to_2^n-1": v.coprime_to_2n_minus_1, "hypothesis": v.hypothesis,
                "progression": [{"k": k, "divides": ok} for k, ok in v.progression], "passed": v.passed}
               for v in verdicts]
        _emit(args, to_json({"checks": out, **extra}) + "\n")
        return 0

    if cmd == "eisenstein-primes":
        form = _load_form(args, cfg, args.limit + 1)
        res = almost_eisenstein(form, args.limit, args.lmax)
        out = {"form": form.label, "X": res.X, "Lmax": res.Lmax, "test_primes": res.test_primes,
               "candidates": list(res.candidates), "nu": res.nu, "warning": res.warning}
        if args.check_ell:
            out["congruence_checks"] = {str(ell): eisenstein_congruence_check(form, ell, args.limit)
                                        for ell in args.check_ell}
        _emit(args, to_json(out) + "\n")
        return 0

    if cmd == "bk-report":
        rows = bern.omega_numerator_report(args.kmax, cfg.budget, k_min=args.kmin)
        dict_rows = [{"k": r.k, "omega": r.omega, "k_over_log_k": f"{r.k_over_log_k:.4f}",
                      "log_k": f"{r.log_k:.4f}", "numerator": r.factorization} for r in rows]
        _emit(args, render_rows(dict_rows, ("k", "omega", "k_over_log_k", "log_k", "numerator"), fmt))
        return 0

    if cmd == "erdos-kac":
        ceiling = max(cfg.precision_ceiling, args.x + 1)
        form = _load_form(args, cfg, args.x + 1, ceiling=ceiling)
        rep = npstats.erdos_kac_sample(form, args.x, args.y)
        _emit(args, to_json(rep) + "\n")
        return 0

    if cmd == "ingest":
        form = ingest_form(args.path)
        out = {"label": form.label, "level": form.level, "weight": form.weight, "source": form.source,
               "primes": len(form.ap), "max_prime": max(form.ap) if form.ap else None}
        _emit(args, to_json(out) + "\n")
        return 0

    if cmd == "table-7-1":
        cache = None if args.no_cache else cfg.cache_dir
        delta = cached_eigenform(12, TABLE_PRECISION, cache, ceiling=max(cfg.precision_ceiling, TABLE_PRECISION))
        result = reproduce_table(delta, cfg.budget, cfg.workers)
        _emit(args, result.rendered)
        if result.undecided:
            print(f"{len(result.undecided)} undecided records: " + ", ".join(str(r.p) for r in result.undecided),
                  file=sys.stderr)
        if not result.matches:
            sys.stderr.write("table mismatch\n" + result.diff())
            return 1
        print("table matches the expected golden table", file=sys.stderr)
        return 0

    raise UsageError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except (UsageError, ConfigError, IngestError, PrecisionError, ValueError, KeyError) as exc:
        print(f"npf {args.command}: error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
