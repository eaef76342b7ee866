"""rankdec command line: analyze, simulate, decode, selftest.

Exit codes: 0 success, 1 decoding failure, 2 usage or validation error.
RANKDEC_LOG sets the log level (DEBUG, INFO, WARNING, ...).
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from rankdec import analysis

log = logging.getLogger("rankdec")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _delta_arg(text: str):
    if text == "auto":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}") from None


def _add_params(p, required=True):
    for name in ("q", "m", "n", "k", "w"):
        p.add_argument(f"--{name}", type=int, required=required and name != "q", default=2 if name == "q" else None)


def _add_output(p, formats=("json", "csv", "table")):
    p.add_argument("--format", choices=formats, default="table")
    p.add_argument("--out", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rankdec", description="Randomized decoding of Gabidulin codes beyond half the minimum distance.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="work factors for a parameter set")
    _add_params(p, required=False)
    p.add_argument("--batch", metavar="PATH", help="JSON list of {q, m, n, k, w} objects")
    p.add_argument("--no-poly-factor", action="store_true", help="drop the cubic prefactor of the enumeration cost")
    _add_output(p)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of the work factor")
    _add_params(p)
    p.add_argument("--delta", type=_delta_arg, default="auto")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--max-iter", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--mode", choices=("per-guess", "geometric"), default="per-guess")
    p.add_argument("--reference", action="store_true", help="use the pure-Python decoder")
    _add_output(p)

    p = sub.add_parser("decode", help="decode one instance file")
    p.add_argument("instance", metavar="INSTANCE", help="instance JSON file")
    p.add_argument("--w", type=int, help="target radius (default: the instance's w)")
    p.add_argument("--delta", type=_delta_arg, default="auto")
    p.add_argument("--max-iter", type=int)
    p.add_argument("--seed", type=int, default=0)
    _add_output(p, formats=("json", "table"))

    p = sub.add_parser("selftest", help="run the built-in oracle cross-checks")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", action="store_true", help="perturb one Gaussian binomial (harness sanity)")
    return parser


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.2f}"
    return str(v)


def _table(rows: list[dict]) -> str:
    cols = list(rows[0])
    cells = [[_fmt(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(wd) for c, wd in zip(cols, widths))]
    lines += ["  ".join(x.rjust(wd) for x, wd in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def _params(args) -> analysis.ParamSet:
    missing = [n for n in ("m", "n", "k", "w") if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing --{', --'.join(missing)}")
    return analysis.ParamSet(args.q, args.m, args.n, args.k, args.w)


def cmd_analyze(args) -> int:
    if args.batch:
        with open(args.batch) as fh:
            plist = [analysis.ParamSet.from_json(obj) for obj in json.load(fh)]
    else:
        plist = [_params(args)]
    reports = [analysis.report(ps, poly_factor=not args.no_poly_factor) for ps in plist]
    flat = [{**r.params.to_json(), "delta_star": r.delta_star, **r.to_json()["log2"]} for r in reports]
    if args.format == "json":
        docs = [r.to_json() for r in reports]
        text = json.dumps(docs if args.batch else docs[0], indent=2)
    elif args.format == "csv":
        import csv
        import io

        buf = io.StringIO()
        wr = csv.DictWriter(buf, list(flat[0]), lineterminator="\n")
        wr.writeheader()
        wr.writerows(flat)
        text = buf.getvalue()
    else:
        text = _table(flat)
    _emit(text, args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    from rankdec import randdec, simulate

    ps = _params(args)
    if ps.w > ps.n - ps.k:
        raise UsageError(f"w={ps.w} exceeds n-k={ps.n - ps.k}; the decoder cannot succeed")
    delta = randdec.choose_delta(ps.n, ps.k, ps.m, ps.w, ps.q) if args.delta == "auto" else args.delta
    max_iter = args.max_iter
    if max_iter is None:
        max_iter = 1
        if args.mode == "geometric":
            # 20/p iterations, p the per-guess success estimate
            p = analysis.lemma3_success_prob(ps, delta).value if not analysis.w_le_unique(ps) else 1
            max_iter = min(randdec.MAX_ITER_CAP, max(1, int(20 / p))) if p else randdec.MAX_ITER_CAP
    cfg = simulate.SimulationConfig(
        ps.q, ps.m, ps.n, ps.k, ps.w, delta, args.trials, args.seed, args.workers, args.mode, max_iter,
        compiled=not args.reference,
    )
    rec = simulate.simulate(cfg)
    if args.format == "json":
        text = json.dumps(rec.to_json(), indent=2)
    elif args.format == "csv":
        text = simulate.records_to_csv([rec])
    else:
        text = _table([rec.to_json()])
    _emit(text, args.out)
    return EXIT_OK


def cmd_decode(args) -> int:
    from rankdec.channel import SeededRng
    from rankdec.gabidulin import Instance
    from rankdec.randdec import RandDecoderConfig, choose_delta, randomized_decode

    try:
        with open(args.instance) as fh:
            inst = Instance.loads(fh.read())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read instance {args.instance}: {exc}") from exc
    code, T = inst.code, inst.code.tower
    w = inst.w if args.w is None else args.w
    if not 0 <= w <= code.n - code.k:
        raise UsageError(f"w={w} outside [0, n-k={code.n - code.k}]")
    delta = choose_delta(code.n, code.k, T.m, w, T.q) if args.delta == "auto" else args.delta
    cfg = RandDecoderConfig.for_code(code, w, delta, args.max_iter)
    rep = randomized_decode(code, inst.r, cfg, SeededRng(args.seed))
    doc = rep.outcome.to_json(T)
    doc.update(iterations_used=rep.iterations_used, delta=delta, w=w)
    if args.format == "json":
        text = json.dumps(doc)
    else:
        text = "\n".join(f"{key}: {val}" for key, val in doc.items())
    _emit(text, args.out)
    return EXIT_FAIL if rep.outcome.failed else EXIT_OK


def cmd_selftest(args) -> int:
    from rankdec import selftest

    ok = selftest.run(args.level, seed=args.seed, inject_fault=args.inject_fault)
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"analyze": cmd_analyze, "simulate": cmd_simulate, "decode": cmd_decode, "selftest": cmd_selftest}


def _setup_logging():
    level = os.environ.get("RANKDEC_LOG", "WARNING").upper()
    logging.basicConfig(
        level=int(level) if level.isdigit() else getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv=None) -> int:
    _setup_logging()
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"rankdec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # parameter validation from the library (ParamSet, configs, contracts)
        print(f"rankdec: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
