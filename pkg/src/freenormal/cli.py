"""
Command line entry point.

Exit codes: 0 ok, 1 verification failed, 2 finite index, 3 core cap exceeded,
4 witness search exhausted, 5 witness too large, 64 usage error.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import List

from . import certificate as certio
from .core import DEFAULT_CAP, CapExceeded
from .corpus import DEFAULT_COUNT, DEFAULT_SEED, run_corpus
from .kurosh import NotInC, retract_letters
from .oracle import naive_closure_member, naive_member
from .pipeline import FiniteIndex, analyze
from .stallings import contains, from_generators, pullback, subgroup_basis
from .verify import DEFAULT_SAMPLE_LENGTH, DEFAULT_SAMPLES, verify
from .witness import (
    DEFAULT_MAX_ATTEMPTS,
    DEFAULT_MAX_LENGTH,
    SearchExhausted,
    WitnessTooLarge,
    build_witness,
    member_of_C,
    member_of_N,
)
from .words import MAX_TEXT_RANK, WordError, parse

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_FINITE_INDEX = 2
EXIT_CAP = 3
EXIT_EXHAUSTED = 4
EXIT_TOO_LARGE = 5
EXIT_USAGE = 64


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    rank: int = 2
    generators: List[str] = field(default_factory=list)
    trivial: bool = False
    max_core: int = DEFAULT_CAP
    max_attempts: int = DEFAULT_MAX_ATTEMPTS
    max_witness_length: int = DEFAULT_MAX_LENGTH
    seed: int = 0
    sample_count: int = DEFAULT_SAMPLES
    sample_length: int = DEFAULT_SAMPLE_LENGTH
    output: str = "json"

    def words(self, texts=None):
        texts = self.generators if texts is None else texts
        try:
            return [parse(t, self.rank) for t in texts]
        except WordError as exc:
            raise UsageError(f"bad generator: {exc}") from exc

    def check(self):
        if not 1 <= self.rank <= MAX_TEXT_RANK:
            raise UsageError(f"rank must be between 1 and {MAX_TEXT_RANK}")
        if not self.generators and not self.trivial:
            raise UsageError("give --gens, or --trivial for the trivial subgroup")
        if self.generators and self.trivial:
            raise UsageError("--trivial excludes --gens")


class _Parser(argparse.ArgumentParser):
    # argparse would exit with 2, which is reserved for "finite index"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _split(text, keep_empty=False):
    if text is None:
        return []
    return [t.strip() for t in text.split(",") if keep_empty or t.strip()]


def _config(args):
    seed = args.seed
    env = os.environ.get("KS_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError as exc:
            raise UsageError(f"KS_SEED must be an integer, got {env!r}") from exc
    return RunConfig(
        rank=args.rank,
        generators=_split(getattr(args, "gens", None)),
        trivial=getattr(args, "trivial", False),
        max_core=args.max_core,
        max_attempts=args.max_attempts,
        max_witness_length=args.max_witness_length,
        seed=seed,
        sample_count=args.sample_count,
        sample_length=args.sample_length,
        output=args.output,
    )


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _err(msg):
    print(msg, file=sys.stderr)


def cmd_analyze(cfg, out=None):
    cfg.check()
    gens = cfg.words()
    try:
        ctx = analyze(gens, cfg.rank, cfg.max_core)
        cert = build_witness(ctx, cfg.max_attempts, cfg.max_witness_length)
    except FiniteIndex as exc:
        _err(str(exc))
        return EXIT_FINITE_INDEX
    except CapExceeded as exc:
        _err(f"{exc}; raise --max-core to continue")
        return EXIT_CAP
    except SearchExhausted as exc:
        _err(f"witness search exhausted: {exc}")
        return EXIT_EXHAUSTED
    except WitnessTooLarge as exc:
        _err(str(exc))
        return EXIT_TOO_LARGE
    text = certio.dumps(cert)
    if out not in (None, "-"):
        _write(text, out)
    if cfg.output == "pretty":
        print(f"H = <{', '.join(str(g) for g in cert.input_generators) or 'ε'}> in F_{cert.rank}")
        print(f"[F:K] = {cert.index_FK}, basis_Q = {[str(w) for w in cert.basis_Q]}")
        print(f"[F:C] = n = {cert.n}, |basis_CH| = {len(cert.basis_CH)}, |basis_J| = {len(cert.basis_J)}")
        print(f"j = {cert.chosen_j}")
        w = str(cert.witness)
        print(f"witness ({len(cert.witness)} letters): {w if len(w) <= 200 else w[:200] + '...'}")
    elif out in (None, "-"):
        _write(text, None)
    return EXIT_OK


def cmd_verify(path, cfg, report_path=None):
    try:
        cert = certio.load(path)
    except (OSError, certio.MalformedCertificate) as exc:
        _err(f"cannot read certificate: {exc}")
        return EXIT_VERIFY_FAILED
    report = verify(cert, cfg.sample_count, cfg.sample_length, cfg.seed)
    if report_path:
        _write(json.dumps(certio.report_to_dict(report), indent=2, ensure_ascii=False) + "\n", report_path)
    if cfg.output == "pretty":
        for c in report.checks:
            print(f"{c.id} {'pass' if c.passed else 'FAIL'}  {c.description}: {c.details}")
        print("overall:", "pass" if report.overall else "FAIL")
    elif not report_path:
        _write(json.dumps(certio.report_to_dict(report), indent=2, ensure_ascii=False) + "\n", None)
    return EXIT_OK if report.overall else EXIT_VERIFY_FAILED


def cmd_member(cfg, word, target):
    """Membership of ``word`` in H, K, C, L or N for the configured H."""
    cfg.check()
    gens = cfg.words()
    w = cfg.words([word])[0]
    if target == "H":
        return contains(from_generators(gens, cfg.rank), w)
    ctx = analyze(gens, cfg.rank, cfg.max_core)
    if target == "K":
        return ctx.factorization.completed.trace(w) == ctx.factorization.completed.basepoint
    if target == "C":
        return member_of_C(ctx, w)
    if target == "L":
        try:
            return not retract_letters(ctx.kurosh, w)
        except NotInC:
            return False
    if target == "N":
        return member_of_N(ctx, w)
    raise UsageError(f"unknown target {target}")


def cmd_intersect(cfg, gens1, gens2):
    g1 = from_generators(cfg.words(gens1), cfg.rank)
    g2 = from_generators(cfg.words(gens2), cfg.rank)
    return subgroup_basis(pullback(g1, g2))


def cmd_corpus(cfg, count):
    summary = run_corpus(count, cfg.seed, cfg.rank, cap=cfg.max_core, max_attempts=cfg.max_attempts,
                         max_length=cfg.max_witness_length, sample_count=cfg.sample_count,
                         sample_length=cfg.sample_length)
    print(f"{'case':>4}  {'outcome':<9} {'n':>5} {'|w|':>7} {'sec':>6}  generators")
    for r in summary.results:
        n = r.certificate.n if r.certificate else "-"
        wl = len(r.certificate.witness) if r.certificate else "-"
        gens = ",".join(str(g) for g in r.generators)
        print(f"{r.index:>4}  {r.outcome:<9} {n:>5} {wl:>7} {r.seconds:>6.2f}  {gens}")
    tally = summary.tally()
    print("tally: " + ", ".join(f"{k} {v}" for k, v in sorted(tally.items())))
    print(f"pass rate: {summary.pass_rate:.1%} of {len(summary.accepted)} accepted cases")
    print(f"max |w|: {summary.max_witness_length}")
    print(f"max n: {summary.max_n}")
    print(f"wall time: {summary.seconds:.1f} s")
    return summary


def _oracle(cfg, args):
    w = cfg.words([args.word])[0]
    gens = cfg.words()
    if args.conjugators is not None:
        # an empty entry stands for the identity, e.g. ",b"
        conj = cfg.words(_split(args.conjugators, keep_empty=True))
        return naive_closure_member(gens, conj, w, args.depth)
    return naive_member(gens, w, args.depth)


def build_parser():
    p = _Parser(prog="freenormal", description="Normal subgroups of free groups avoiding a given subgroup.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser,
                         metavar="{analyze,verify,member,intersect,corpus}")

    def common(sp, gens=True):
        sp.add_argument("--rank", type=int, default=2)
        if gens:
            sp.add_argument("--gens", help="comma-separated generator words, e.g. a^2,b")
            sp.add_argument("--trivial", action="store_true", help="use the trivial subgroup")
        sp.add_argument("--max-core", type=int, default=DEFAULT_CAP)
        sp.add_argument("--max-attempts", type=int, default=DEFAULT_MAX_ATTEMPTS)
        sp.add_argument("--max-witness-length", type=int, default=DEFAULT_MAX_LENGTH)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--sample-count", type=int, default=DEFAULT_SAMPLES)
        sp.add_argument("--sample-length", type=int, default=DEFAULT_SAMPLE_LENGTH)
        sp.add_argument("--output", choices=("json", "pretty"), default="json")

    sp = sub.add_parser("analyze", help="build a witness certificate")
    common(sp)
    sp.add_argument("--out", help="certificate path (default stdout)")

    sp = sub.add_parser("verify", help="re-check a certificate")
    common(sp, gens=False)
    sp.add_argument("path")
    sp.add_argument("--report", help="report path (default stdout)")

    sp = sub.add_parser("member", help="membership in H, K, C, L or N")
    common(sp)
    sp.add_argument("--target", choices=("H", "K", "C", "L", "N"), default="H")
    sp.add_argument("word")

    sp = sub.add_parser("intersect", help="basis of the intersection of two subgroups")
    common(sp, gens=False)
    sp.add_argument("--gens1", required=True)
    sp.add_argument("--gens2", required=True)

    sp = sub.add_parser("corpus", help="analyze and verify seeded random subgroups")
    common(sp, gens=False)
    sp.set_defaults(seed=DEFAULT_SEED)
    sp.add_argument("count", type=int, nargs="?", default=DEFAULT_COUNT)

    sp = sub.add_parser("oracle")  # no help text keeps it out of the listing
    common(sp)
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--conjugators", help="search the normal closure under these conjugators instead")
    sp.add_argument("word")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "analyze":
            return cmd_analyze(cfg, args.out)
        if args.command == "verify":
            return cmd_verify(args.path, cfg, args.report)
        if args.command == "member":
            try:
                print("true" if cmd_member(cfg, args.word, args.target) else "false")
            except FiniteIndex as exc:
                _err(str(exc))
                return EXIT_FINITE_INDEX
            except CapExceeded as exc:
                _err(str(exc))
                return EXIT_CAP
            return EXIT_OK
        if args.command == "intersect":
            if not 1 <= cfg.rank <= MAX_TEXT_RANK:
                raise UsageError(f"rank must be between 1 and {MAX_TEXT_RANK}")
            words = cmd_intersect(cfg, _split(args.gens1), _split(args.gens2))
            print(json.dumps([str(w) for w in words]))
            return EXIT_OK
        if args.command == "corpus":
            summary = cmd_corpus(cfg, args.count)
            return EXIT_OK if summary.pass_rate == 1.0 else EXIT_VERIFY_FAILED
        if args.command == "oracle":
            answer = _oracle(cfg, args)
            print(type(answer).__name__ + (f" (depth {answer.depth_exhausted})" if hasattr(answer, "depth_exhausted") else ""))
            return EXIT_OK
    except UsageError as exc:
        _err(f"freenormal: error: {exc}")
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
