"""
Command-line front end.

Subcommands: construct, encode, decode, mindist, das, simulate, compare.
Code specs, words and reports are JSON; words use -1 for an erasure.
Exit status: 0 success (decode: fully recovered), 1 usage or validation
error, 2 decode left uncorrectable erasures.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace

from . import bc_code, bc_decoder, das
from .das import DasParams, PrecisionConfig, protocol_metrics
from .field import FieldError, parse_field_spec, smallest_prime_field
from .topology import TopologyParams

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNCORRECTABLE = 2


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _dump_json(obj, path=None):
    text = json.dumps(obj, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def word_to_json(word):
    return [-1 if v is None else int(v) for v in word]


def word_from_json(values):
    return [None if v == -1 else int(v) for v in values]


def _field_from_args(args, params):
    if args.field:
        return parse_field_spec(args.field, getattr(args, "modulus", None))
    return smallest_prime_field(params.period + 1)


def _code_from_args(args) -> bc_code.BcCode:
    if getattr(args, "spec", None):
        return bc_code.BcCode.load(args.spec)
    if None in (args.mu, args.lam, args.omega, args.rho):
        raise ValueError("either --spec or all of --mu/--lambda/--omega/--rho "
                         "must be given")
    params = TopologyParams(args.mu, args.lam, args.omega, args.rho)
    field = _field_from_args(args, params)
    locators = None
    if getattr(args, "locators", None):
        locators = [int(x) for x in args.locators.split(",")]
    return bc_code.BcCode(params, field, locators)


def cmd_construct(args):
    code = _code_from_args(args)
    d = code.min_distance_analytic()
    report = {"n": code.n, "k": code.k, "d": d,
              "rate": code.k / code.n,
              "local_code": [code.params.local_len,
                             code.params.lam * code.params.omega,
                             code.params.rho + 1],
              "field": code.field.to_json()}
    if args.out:
        code.save(args.out)
        report["spec_file"] = args.out
    if args.dump_h:
        _dump_json([[int(v) for v in row] for row in code.pc.data], args.dump_h)
    if args.dump_g:
        _dump_json([[int(v) for v in row] for row in code.generator.data], args.dump_g)
    _dump_json(report)
    return EXIT_OK


def cmd_encode(args):
    code = bc_code.BcCode.load(args.spec)
    message = _load_json(args.message)
    if not isinstance(message, list) or len(message) != code.k:
        print(f"error: message must be a JSON list of {code.k} symbols",
              file=sys.stderr)
        return EXIT_USAGE
    word = code.encode([int(v) for v in message])
    _dump_json(word_to_json(word), args.out)
    return EXIT_OK


def cmd_decode(args):
    code = bc_code.BcCode.load(args.spec)
    raw = _load_json(args.word)
    if not isinstance(raw, list) or len(raw) != code.n:
        print(f"error: word must be a JSON list of {code.n} entries",
              file=sys.stderr)
        return EXIT_USAGE
    word = word_from_json(raw)
    outcome = bc_decoder.decode(code, word)
    if args.plan:
        plan = bc_decoder.distributed_plan(code, word)
        _dump_json(bc_decoder.plan_to_json(plan), args.plan)
    _dump_json(word_to_json(outcome.word), args.out)
    if outcome.status != bc_decoder.FULLY_RECOVERED:
        print("word has uncorrectable erasures", file=sys.stderr)
        return EXIT_UNCORRECTABLE
    return EXIT_OK


def cmd_mindist(args):
    code = _code_from_args(args)
    d = code.brute_force_min_distance(budget=args.budget)
    _dump_json({"d": d, "n": code.n, "k": code.k,
                "analytic": code.min_distance_analytic()})
    return EXIT_OK


def _das_params(args) -> DasParams:
    if args.d < 1:
        raise ValueError("need d >= 1")
    return DasParams(n=args.n, k=args.k, d=args.d, c=args.c, s=1,
                     gamma=args.gamma, eta=args.eta,
                     chat_target=args.chat_target,
                     ctilde_target=args.ctilde_target)


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def cmd_das(args):
    params = _das_params(args)
    cfg = PrecisionConfig.from_env()
    s = das.s_min(params, cfg)
    report = {"n": params.n, "k": params.k, "d": params.d, "c": params.c,
              "gamma": params.gamma, "eta": params.eta,
              "chat_target": params.chat_target,
              "ctilde_target": params.ctilde_target,
              "s_min": s}
    if s is None:
        report["achievable"] = False
        _dump_json(report, args.out)
        return EXIT_OK
    report["achievable"] = True
    report["p1_at_smin"] = float(das.p1(params.n, params.d, s, cfg))
    report["chat_at_smin"] = das.c_hat(params.n, params.d, s, params.c,
                                       params.gamma, cfg)
    report["ctilde_at_smin"] = das.c_tilde(params.n, params.d, s, params.c,
                                           params.eta, cfg)
    if args.curves:
        stem = args.curves[:-4] if args.curves.endswith(".csv") else args.curves
        _write_csv(stem + "_p1.csv", ["s", "p1"],
                   das.p1_curve(params.n, params.d, min(4 * s, params.n - params.d), cfg))
        cs = list(range(max(1, params.c // 20), params.c + 1,
                        max(1, params.c // 20)))
        _write_csv(stem + "_chat.csv", ["c", "chat"],
                   das.chat_curve(params.n, params.d, s, cs, params.gamma, cfg))
        c_hi = min(params.c, 2 * params.ctilde_target)
        _write_csv(stem + "_qc.csv", ["c", "qc"],
                   das.qc_curve(params.n, params.d, s, range(1, c_hi + 1), cfg))
        report["curves"] = [stem + "_p1.csv", stem + "_chat.csv", stem + "_qc.csv"]
    _dump_json(report, args.out)
    return EXIT_OK


def cmd_simulate(args):
    from .das_sim import SimConfig, simulate
    params = DasParams(n=args.n, k=args.k, d=args.d, c=args.c, s=args.s)
    config = SimConfig(params=params, trials=args.trials, seed=args.seed)
    c0s = [int(x) for x in args.c0.split(",")] if args.c0 else []
    rep = simulate(config, c0_values=c0s, workers=args.workers,
                   backend=args.backend)
    _dump_json(rep.to_json(), args.out)
    return EXIT_OK


def _compare_entry(obj):
    """Analytic [n,k,d] and protocol metrics from a compare spec entry."""
    kind = obj.get("type", "bc")
    if kind == "2drs":
        n0, k0 = obj["n0"], obj["k0"]
        n, k, d = n0 * n0, k0 * k0, (n0 - k0 + 1) ** 2
        return protocol_metrics(obj.get("name", f"2DRS[{k0}]"), n, k, d,
                                local_codes=2 * n0, k0=k0, n0=n0,
                                d0=n0 - k0 + 1,
                                kzg_homomorphic_precompute=2 * k0)
    if kind == "bc":
        params = TopologyParams(obj["mu"], obj["lambda"], obj["omega"], obj["rho"])
        z = obj.get("shorten", 0)
        # overlap factor 2 pins the distance; otherwise take an explicit "d"
        d = obj.get("d", 2 * params.rho + 1 if params.lam == 2 else None)
        name = obj.get("name", f"BC[{params.mu},{params.lam},{params.omega},{params.rho}]"
                       + (f"-{z}" if z else ""))
        return protocol_metrics(name, params.n, params.k - z, d,
                                local_codes=params.mu,
                                k0=params.lam * params.omega,
                                n0=params.local_len, d0=params.rho + 1)
    raise ValueError(f"unknown compare spec type {kind!r}")


def cmd_compare(args):
    cfg = PrecisionConfig.from_env()
    entries = []
    for path in args.specs:
        m = _compare_entry(_load_json(path))
        if args.smin and m.d is not None:
            params = DasParams(n=m.n, k=m.k, d=m.d, c=args.c, s=1,
                               gamma=args.gamma, eta=args.eta,
                               chat_target=args.chat_target,
                               ctilde_target=args.ctilde_target)
            s = das.s_min(params, cfg)
            chat = ctl = None
            if s is not None:
                chat = das.c_hat(m.n, m.d, s, args.c, args.gamma, cfg)
                ctl = das.c_tilde(m.n, m.d, s, args.c, args.eta, cfg)
            m = replace(m, s_min=s, chat=chat, ctilde=ctl)
        entries.append(m)
    cols = ["name", "[n,k,d]", "[n0,k0,d0]", "rate", "d/n", "s_min",
            "digests", "header(Merkle)", "header(KZG)", "CFP", "chunks/node"]
    print("\t".join(cols))
    for m in entries:
        print("\t".join([
            m.name,
            f"[{m.n},{m.k},{m.d if m.d is not None else '?'}]",
            f"[{m.n0},{m.k0},{m.d0}]",
            f"{m.overhead:.1f}x",
            "-" if m.d is None else f"{100 * m.rel_distance:.2f}%",
            "-" if m.s_min is None else str(m.s_min),
            str(m.digests),
            str(m.header_merkle),
            str(m.header_kzg),
            str(m.cfp_chunks),
            str(m.chunks_per_decoding_node),
        ]))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="blockcirc",
                                 description="block circulant codes and "
                                             "availability-sampling analysis")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_code_args(p, with_spec=True):
        if with_spec:
            p.add_argument("--spec", help="code spec JSON file")
        p.add_argument("--mu", type=int)
        p.add_argument("--lambda", dest="lam", type=int)
        p.add_argument("--omega", type=int)
        p.add_argument("--rho", type=int)
        p.add_argument("--field", help="p<prime> or b<degree>, e.g. p11, b8")
        p.add_argument("--modulus", type=int,
                       help="modulus polynomial bitmask for binary fields")
        p.add_argument("--locators", help="comma-separated locator values")

    p = sub.add_parser("construct", help="build a code and write its spec")
    add_code_args(p, with_spec=False)
    p.add_argument("--out", help="spec file to write")
    p.add_argument("--dump-h", help="write the parity-check matrix as JSON")
    p.add_argument("--dump-g", help="write the systematic generator as JSON")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("encode", help="systematically encode a message file")
    p.add_argument("--spec", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_encode)

    p = sub.add_parser("decode", help="two-phase erasure decode a word file")
    p.add_argument("--spec", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--out")
    p.add_argument("--plan", help="also write the distributed schedule JSON")
    p.set_defaults(fn=cmd_decode)

    p = sub.add_parser("mindist", help="brute-force minimum distance")
    add_code_args(p)
    p.add_argument("--budget", type=int, default=bc_code.DEFAULT_ENUM_BUDGET)
    p.set_defaults(fn=cmd_mindist)

    p = sub.add_parser("das", help="sampling analysis for an [n,k,d] code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c", type=int, default=1000)
    p.add_argument("--gamma", type=float, default=0.99)
    p.add_argument("--eta", type=float, default=0.99)
    p.add_argument("--chat-target", type=int, required=True)
    p.add_argument("--ctilde-target", type=int, required=True)
    p.add_argument("--curves", help="CSV stem for p1/chat/qc curve files")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_das)

    p = sub.add_parser("simulate", help="Monte Carlo estimates of the "
                                        "sampling probabilities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c0", help="comma-separated thresholds for Pr(Y > c0)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--backend", choices=["compiled", "numpy"])
    p.add_argument("--out")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("compare", help="side-by-side code comparison table")
    p.add_argument("--specs", nargs="+", required=True)
    p.add_argument("--smin", action="store_true",
                   help="also run the sampling analysis per code")
    p.add_argument("--c", type=int, default=1000)
    p.add_argument("--gamma", type=float, default=0.99)
    p.add_argument("--eta", type=float, default=0.99)
    p.add_argument("--chat-target", type=int, default=900)
    p.add_argument("--ctilde-target", type=int, default=100)
    p.set_defaults(fn=cmd_compare)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, FieldError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
