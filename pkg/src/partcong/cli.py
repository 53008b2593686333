"""Command-line interface: partition tables, accident searches, certificate
verification, newform data management, and density scans.

Exit codes: 0 success (including empty search results), 2 data unavailable,
3 verification counterexample, 4 usage error."""

import argparse
import json
import os
import sys

from . import arith, congruence, lmfdb_client, newforms, qseries

EXIT_OK = 0
EXIT_DATA = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_USAGE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_config(path):
    """Optional key=value config file (one pair per line, # comments)."""
    cfg = {}
    if not path or not os.path.exists(path):
        return cfg
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, _, value = line.partition("=")
            cfg[key.strip()] = value.strip().strip('"')
    return cfg


def _parse_signs(text):
    table = {"+": 1, "-": -1}
    if len(text) != 2 or any(c not in table for c in text):
        raise SystemExit(EXIT_USAGE)
    return (table[text[0]], table[text[1]])


def _emit(args, payload, human):
    if args.json:
        print(json.dumps(payload))
    else:
        print(human)


def _load_space(args, weight, signs):
    """Records for a weight (and optional signs) from cache/fixtures."""
    cache_dir = args.cache_dir
    try:
        return lmfdb_client.load_cached(weight, signs=signs, cache_dir=cache_dir)
    except lmfdb_client.DataUnavailable as exc:
        print(f"data unavailable: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_DATA)


def cmd_partition(args):
    table = qseries.partition_mod(args.max + 1, args.mod, method=args.method)
    lines = [f"{n} {int(table[n])}" for n in range(args.max + 1)]
    if args.out:
        if args.binary:
            qseries.dump_zseries(table, args.out)
        else:
            with open(args.out, "w") as fh:
                fh.write("\n".join(lines) + "\n")
    elif args.json:
        print(json.dumps({"modulus": args.mod,
                          "values": [int(table[n]) for n in range(args.max + 1)]}))
    else:
        print("\n".join(lines))
    return EXIT_OK


def cmd_search(args):
    ell = args.ell
    if args.kind == "type1":
        signs = congruence.type1_signs(ell)
        space = _load_space(args, ell - 3, signs)
        hits = congruence.accident_search_type1(
            ell, space, (args.qmin, args.qmax), class_constraint=args.qclass)
        certs = [congruence.certify_type1(ell, Q, alpha) for Q, alpha in hits]
        rows = [{"Q": Q, "alpha": alpha, "epsilon": c.epsilon}
                for (Q, alpha), c in zip(hits, certs)]
    elif args.kind == "type2":
        space = _load_space(args, ell * ell - 3, (-1, -1))
        qs = congruence.accident_search_type2(ell, space, (args.qmin, args.qmax))
        certs = [congruence.certify_type2(ell, Q) for Q in qs]
        rows = [{"Q": Q} for Q in qs]
    elif args.kind == "ono":
        if args.family == "zero":
            space = _load_space(args, ell - 3, congruence.type1_signs(ell))
        else:
            space = _load_space(args, ell * ell - 3, (-1, -1))
        qs = congruence.accident_search_ono(ell, space, (args.qmin, args.qmax))
        certs = [congruence.certify_ono(ell, Q, args.family) for Q in qs]
        rows = [{"Q": Q, "family": args.family} for Q in qs]
    else:
        return EXIT_USAGE
    if args.cert_dir:
        os.makedirs(args.cert_dir, exist_ok=True)
        for cert in certs:
            name = f"{args.kind}-ell{ell}-Q{cert.Q}.json"
            congruence.save_certificate(cert, os.path.join(args.cert_dir, name))
    human = "\n".join(
        " ".join(f"{k}={v}" for k, v in row.items()) for row in rows
    ) or "no hits"
    _emit(args, {"kind": args.kind, "ell": ell, "hits": rows}, human)
    return EXIT_OK


def cmd_verify(args):
    cert = congruence.load_certificate(args.certificate)
    try:
        result = congruence.verify_partition(cert, args.budget)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = {
        "kind": cert.kind, "ell": cert.ell, "Q": cert.Q,
        "checked": result.checked,
        "failures": [list(f) for f in result.failures],
        "verification": result.certificate.verification,
    }
    human = (f"checked {result.checked}, failures {len(result.failures)}"
             + ("" if result.ok else f" (first: {result.failures[0]})"))
    _emit(args, payload, human)
    if args.update and result.ok:
        congruence.save_certificate(result.certificate, args.certificate)
    return EXIT_OK if result.ok else EXIT_COUNTEREXAMPLE


def cmd_newforms(args):
    if args.subcmd == "fetch":
        signs = _parse_signs(args.signs) if args.signs else None
        source = None
        if args.fixture_dir:
            source = lmfdb_client.FixtureSource(args.fixture_dir)
        try:
            entries = lmfdb_client.fetch_newspace(
                args.weight, signs=signs, source=source, cache_dir=args.cache_dir)
        except (lmfdb_client.DataUnavailable, ConnectionError) as exc:
            print(f"data unavailable: {exc}", file=sys.stderr)
            return EXIT_DATA
        rows = [{"label": e.record.label, "degree": e.record.degree,
                 "al_signs": list(e.record.al_signs),
                 "n_stored": e.record.n_stored} for e in entries]
        _emit(args, {"weight": args.weight, "newforms": rows},
              "\n".join(f"{r['label']} degree={r['degree']} "
                        f"signs={r['al_signs']} n_stored={r['n_stored']}"
                        for r in rows))
        return EXIT_OK
    if args.subcmd == "check-congruences":
        signs = _parse_signs(args.signs)
        space = _load_space(args, args.weight, signs)
        bound = args.bound or newforms.sturm_bound(args.weight)
        pairs = newforms.pairwise_congruence_check(space, args.ell, bound)
        distinct = newforms.count_distinct_reductions(space, args.ell, bound)
        rows = [p.report_line() for p in pairs]
        payload = {
            "ell": args.ell, "weight": args.weight, "bound": bound,
            "pairs": rows, "distinct_reductions": distinct,
            "congruent_pairs": sum(p.status == "congruent" for p in pairs),
        }
        _emit(args, payload,
              "\n".join(rows + [f"distinct reductions: {distinct}"]))
        return EXIT_OK
    if args.subcmd == "image-test":
        space = _load_space(args, args.weight, None)
        rows = []
        for rec in space:
            try:
                verdict = newforms.exceptional_test(rec, args.ell, args.p)
            except ValueError as exc:
                verdict = f"refused ({exc})"
            rows.append({"label": rec.label, "p": args.p, "verdict": verdict})
        _emit(args, {"ell": args.ell, "weight": args.weight, "tests": rows},
              "\n".join(f"{r['label']} p={r['p']}: {r['verdict']}" for r in rows))
        return EXIT_OK
    return EXIT_USAGE


def cmd_density(args):
    report = arith.density_scan(args.bound, args.predicate)
    payload = {
        "predicate": report.predicate_name, "bound": report.bound,
        "numerator": report.numerator, "denominator": report.denominator,
        "density": float(report.fraction),
    }
    _emit(args, payload,
          f"{report.numerator}/{report.denominator} = {float(report.fraction):.5f}")
    return EXIT_OK


def _add_common(parser, root):
    """Global flags, accepted both before and after the subcommand."""
    suppress = {} if root else {"default": argparse.SUPPRESS}
    parser.add_argument("--json", action="store_true",
                        help="machine-readable output", **suppress)
    parser.add_argument("--threads", type=int,
                        help="worker threads (results are order-independent)",
                        **({"default": 1} if root else {"default": argparse.SUPPRESS}))
    parser.add_argument("--cache-dir",
                        help="newform cache directory "
                             "(default: $PARTCONG_CACHE_DIR or ~/.cache)",
                        **({"default": None} if root else {"default": argparse.SUPPRESS}))
    parser.add_argument("--config", help="optional key=value config file",
                        **({"default": None} if root else {"default": argparse.SUPPRESS}))


def build_parser():
    parser = _Parser(prog="partcong",
                     description="partition congruence toolkit")
    _add_common(parser, root=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="partition table modulo a prime power")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--method", default="auto",
                   choices=["auto", "recurrence", "inverse"])
    p.add_argument("--out", default=None)
    p.add_argument("--binary", action="store_true")
    _add_common(p, root=False)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("search", help="accident search over cached eigenvalues")
    p.add_argument("kind", choices=["type1", "type2", "ono"])
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--qmin", type=int, default=5)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--qclass", type=int, default=None,
                   help="restrict to Q = qclass (mod ell)")
    p.add_argument("--family", choices=["zero", "minus"], default="zero")
    p.add_argument("--cert-dir", default=None,
                   help="write certificate JSON files here")
    _add_common(p, root=False)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="verify a certificate against p(n)")
    p.add_argument("certificate")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--update", action="store_true",
                   help="write verification metadata back on success")
    _add_common(p, root=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("newforms", help="newform data operations")
    psub = p.add_subparsers(dest="subcmd", required=True)
    pf = psub.add_parser("fetch")
    pf.add_argument("--weight", type=int, required=True)
    pf.add_argument("--signs", default=None)
    pf.add_argument("--fixture-dir", default=None,
                    help="import from fixtures instead of HTTP")
    _add_common(pf, root=False)
    pf.set_defaults(func=cmd_newforms)
    pc = psub.add_parser("check-congruences")
    pc.add_argument("--ell", type=int, required=True)
    pc.add_argument("--weight", type=int, required=True)
    pc.add_argument("--signs", required=True)
    pc.add_argument("--bound", type=int, default=None)
    _add_common(pc, root=False)
    pc.set_defaults(func=cmd_newforms)
    pi = psub.add_parser("image-test")
    pi.add_argument("--ell", type=int, required=True)
    pi.add_argument("--weight", type=int, required=True)
    pi.add_argument("--p", type=int, default=5)
    _add_common(pi, root=False)
    pi.set_defaults(func=cmd_newforms)

    p = sub.add_parser("density", help="density of primes meeting a predicate")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--predicate", required=True,
                   choices=sorted(arith.predicate_names()))
    _add_common(p, root=False)
    p.set_defaults(func=cmd_density)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    cfg = _load_config(args.config)
    if args.cache_dir is None and "cache_dir" in cfg:
        args.cache_dir = cfg["cache_dir"]
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
