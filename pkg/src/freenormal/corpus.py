"""Seeded random subgroups and the analyze/verify round trip over them."""

import random
import time
from dataclasses import dataclass, field
from typing import List, Optional

from .core import DEFAULT_CAP, CapExceeded
from .pipeline import FiniteIndex, analyze
from .verify import verify
from .witness import DEFAULT_MAX_ATTEMPTS, DEFAULT_MAX_LENGTH, SearchExhausted, WitnessTooLarge, build_witness
from .words import Word

DEFAULT_SEED = 42
DEFAULT_COUNT = 100


def random_word(rng, rank, length):
    """A freely reduced word of exactly ``length`` letters."""
    letters = [s * (g + 1) for g in range(rank) for s in (1, -1)]
    w = []
    while len(w) < length:
        x = rng.choice(letters)
        if w and w[-1] == -x:
            continue
        w.append(x)
    return Word(w)


def random_subgroups(count, seed=DEFAULT_SEED, rank=2, max_gens=3, max_len=6):
    """``count`` generator lists: 1..max_gens reduced words of length 1..max_len."""
    rng = random.Random(seed)
    cases = []
    for _ in range(count):
        k = rng.randint(1, max_gens)
        cases.append([random_word(rng, rank, rng.randint(1, max_len)) for _ in range(k)])
    return cases


@dataclass
class CaseResult:
    index: int
    generators: List[Word]
    outcome: str  # "verified", "failed", "finite", "cap", "exhausted", "too-large"
    seconds: float
    context: object = None
    certificate: object = None
    report: object = None
    detail: Optional[str] = None


@dataclass
class CorpusSummary:
    results: List[CaseResult] = field(default_factory=list)
    seconds: float = 0.0

    def tally(self):
        out = {}
        for r in self.results:
            out[r.outcome] = out.get(r.outcome, 0) + 1
        return out

    @property
    def accepted(self):
        return [r for r in self.results if r.outcome in ("verified", "failed")]

    @property
    def pass_rate(self):
        acc = self.accepted
        if not acc:
            return 1.0
        return sum(r.outcome == "verified" for r in acc) / len(acc)

    @property
    def max_witness_length(self):
        return max((len(r.certificate.witness) for r in self.accepted), default=0)

    @property
    def max_n(self):
        return max((r.certificate.n for r in self.accepted), default=0)


def run_case(index, gens, rank=2, cap=DEFAULT_CAP, max_attempts=DEFAULT_MAX_ATTEMPTS,
             max_length=DEFAULT_MAX_LENGTH, seed=0, keep=False, **verify_kw):
    t0 = time.perf_counter()
    res = CaseResult(index, gens, "", 0.0)
    try:
        ctx = analyze(gens, rank, cap)
        cert = build_witness(ctx, max_attempts, max_length)
    except FiniteIndex as exc:
        res.outcome, res.detail = "finite", f"index {exc.index}"
    except CapExceeded as exc:
        res.outcome, res.detail = "cap", str(exc)
    except SearchExhausted as exc:
        res.outcome, res.detail = "exhausted", str(exc)
    except WitnessTooLarge as exc:
        res.outcome, res.detail = "too-large", str(exc)
    else:
        report = verify(cert, seed=seed, **verify_kw)
        res.outcome = "verified" if report.overall else "failed"
        res.certificate, res.report = cert, report
        if not report.overall:
            res.detail = "failed " + ",".join(report.failed())
        if keep:
            res.context = ctx
    res.seconds = time.perf_counter() - t0
    return res


def run_corpus(count=DEFAULT_COUNT, seed=DEFAULT_SEED, rank=2, keep=False, **kw):
    """Analyze, build and verify every case; cases are independent and run in order."""
    t0 = time.perf_counter()
    summary = CorpusSummary()
    for i, gens in enumerate(random_subgroups(count, seed, rank)):
        summary.results.append(run_case(i, gens, rank, seed=seed, keep=keep, **kw))
    summary.seconds = time.perf_counter() - t0
    return summary
