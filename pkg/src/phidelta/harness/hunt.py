"""Seeded random search for counterexamples, with greedy shrinking of anything found."""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field, replace
from math import gcd
from typing import Any, Callable

from ..maps import MapError, default_expansions, default_reductions, expansion_from_json
from ..ideals import IdealError
from ..rings import Product, Quotient, RingDesc, RingError, SquareZero, ZMod, build_ring, desc_from_json, desc_to_json
from .config import CheckConfig, ConfigError
from .report import TheoremReport

# products cost a full factor-catalog sweep, so keep them small
PRODUCT_ORDER_CAP = 24
KIND_WEIGHTS = (("zmod", 5), ("product", 2), ("quotient", 2), ("square_zero", 1))
SHRINK_STEPS = 50


@dataclass(frozen=True)
class Sample:
    """One random configuration: a ring, two phis, two deltas and two generator lists."""

    ring: RingDesc
    phis: tuple[str, ...]
    deltas: tuple[str, ...]
    gens: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"ring": desc_to_json(self.ring), "phis": [json.loads(p) for p in self.phis],
                "deltas": [json.loads(d) for d in self.deltas], "mult_set_gens": [list(g) for g in self.gens]}

    @property
    def order(self) -> int:
        return build_ring(self.ring).order

    def config(self, theorems) -> CheckConfig:
        products = (self.ring.left, self.ring.right) if isinstance(self.ring, Product) else None
        return CheckConfig(
            rings=(self.ring,), quotients=(self.ring,), deltas=self.deltas, phis=self.phis,
            mult_sets=tuple({"gens": list(g)} for g in self.gens), theorems=theorems,
            products=(products,) if products else (), product_phis=self.phis, product_mult_sets="cyclic")


def _lit(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True)


def _square_zero_choices(max_order: int) -> list[SquareZero]:
    out = []
    for p in (2, 3, 5, 7):
        k = 1
        while p ** (k + 1) <= max_order:
            out.append(SquareZero(p, k))
            k += 1
    return out


def _random_ring(rng: random.Random, max_order: int) -> RingDesc:
    kinds, weights = zip(*KIND_WEIGHTS)
    kind = rng.choices(kinds, weights)[0]
    cap = min(max_order, PRODUCT_ORDER_CAP)
    if kind == "product" and cap >= 4:
        a = rng.randint(2, cap // 2)
        b = rng.randint(2, cap // a)
        return Product(ZMod(a), ZMod(b))
    if kind == "quotient" and max_order >= 4:
        n = rng.randint(4, max_order)
        nonunits = [g for g in range(n) if gcd(g, n) != 1]
        return Quotient(ZMod(n), (rng.choice(nonunits),))
    if kind == "square_zero":
        choices = _square_zero_choices(max_order)
        if choices:
            return rng.choice(choices)
    return ZMod(rng.randint(2, max_order))


def random_sample(rng: random.Random, max_order: int) -> Sample:
    desc = _random_ring(rng, max_order)
    ring = build_ring(desc)
    phis = rng.sample(default_reductions(), 2)
    deltas = default_expansions(ring)
    deltas = rng.sample(deltas, min(2, len(deltas)))
    gens = tuple(tuple(sorted(rng.sample(range(ring.order), rng.randint(1, 2)))) for _ in range(2))
    return Sample(desc, tuple(_lit(p.to_json()) for p in phis), tuple(_lit(d.to_json()) for d in deltas), gens)


def _smaller_rings(desc: RingDesc) -> list[RingDesc]:
    """Candidate replacement rings, smallest first."""
    if isinstance(desc, ZMod):
        return [ZMod(m) for m in range(2, desc.n)]
    if isinstance(desc, Product):
        out = [desc.left, desc.right]
        out += [Product(l, desc.right) for l in _smaller_rings(desc.left)]
        out += [Product(desc.left, r) for r in _smaller_rings(desc.right)]
        return sorted(out, key=lambda d: build_ring(d).order)
    if isinstance(desc, Quotient):
        return [ZMod(build_ring(desc).order)] if build_ring(desc).order > 1 else []
    if isinstance(desc, SquareZero):
        return [SquareZero(desc.p, k) for k in range(1, desc.k)] + [ZMod(desc.p)]
    return []


def _shrink_candidates(sample: Sample) -> list[Sample]:
    out = []
    for i, g in enumerate(sample.gens):
        for j in range(len(g)):
            fewer = g[:j] + g[j + 1:]
            out.append(replace(sample, gens=sample.gens[:i] + (fewer,) + sample.gens[i + 1:]))
    for desc in _smaller_rings(sample.ring):
        try:
            ring = build_ring(desc)
            for d in sample.deltas:
                expansion_from_json(d, ring)
        except (RingError, MapError, IdealError):
            continue
        gens = tuple(tuple(x for x in g if x < ring.order) for g in sample.gens)
        out.append(replace(sample, ring=desc, gens=gens))
    return out


def _violates(sample: Sample, theorem: str, runner: Callable[[CheckConfig], TheoremReport]) -> bool:
    try:
        cfg = sample.config((theorem,))
    except ConfigError:
        return False
    return runner(cfg).tallies[theorem].violations > 0


def shrink(sample: Sample, theorem: str, runner: Callable[[CheckConfig], TheoremReport]) -> Sample:
    """Greedy: take the first smaller candidate that still violates, until none does."""
    for _ in range(SHRINK_STEPS):
        for cand in _shrink_candidates(sample):
            if _violates(cand, theorem, runner):
                sample = cand
                break
        else:
            return sample
    return sample


@dataclass
class HuntResult:
    cfg: CheckConfig
    report: TheoremReport
    samples: list[Sample] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)

    def exit_code(self) -> int:
        return 2 if self.counterexamples else self.report.exit_code()

    def to_json(self) -> dict:
        body = self.report.to_json()
        body["summary"]["exit_code"] = self.exit_code()
        return {
            "hunt": {"seed": self.cfg.seed, "budget": self.cfg.budget, "max_order": self.cfg.max_order},
            "samples": [s.to_json() for s in self.samples],
            "counterexamples": self.counterexamples,
            **body,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_text(self, timing: bool = True) -> str:
        lines = [f"hunt seed={self.cfg.seed} budget={self.cfg.budget} max_order={self.cfg.max_order} "
                 f"samples={len(self.samples)} counterexamples={len(self.counterexamples)}"]
        for cx in self.counterexamples:
            lines.append(f"  {cx['theorem']}: shrunk to {json.dumps(cx['shrunk'], sort_keys=True)}")
        lines.append(self.report.to_text(timing=timing))
        return "\n".join(lines)


def hunt(cfg: CheckConfig, runner: Callable[[CheckConfig], TheoremReport] | None = None) -> HuntResult:
    """Run ``cfg.budget`` random samples; every violated theorem is shrunk once, on its first sample."""
    if runner is None:
        from . import run_all as runner
    rng = random.Random(cfg.seed)
    report = TheoremReport(cfg.enabled)
    result = HuntResult(cfg, report)
    start = time.perf_counter()
    shrunk: set[str] = set()
    for _ in range(cfg.budget):
        sample = random_sample(rng, cfg.max_order)
        result.samples.append(sample)
        part = runner(sample.config(cfg.enabled))
        report.merge(part)
        for tid in cfg.enabled:
            tally = part.tallies.get(tid)
            if tally is None or not tally.violations or tid in shrunk:
                continue
            shrunk.add(tid)
            small = shrink(sample, tid, runner)
            example = runner(small.config((tid,))).tallies[tid].examples[:1]
            result.counterexamples.append({"theorem": tid, "sample": sample.to_json(), "shrunk": small.to_json(),
                                           "example": example[0] if example else None})
    report.elapsed = time.perf_counter() - start
    return result


def sample_from_json(obj: dict) -> Sample:
    """Inverse of :meth:`Sample.to_json`, for replaying a hunt finding."""
    return Sample(desc_from_json(obj["ring"]), tuple(_lit(p) for p in obj["phis"]),
                  tuple(_lit(d) for d in obj["deltas"]), tuple(tuple(g) for g in obj["mult_set_gens"]))
