"""Per-theorem tallies: examined, skipped by gate, and violations with full configurations."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Union

MAX_EXAMPLES = 5

# id -> one-line statement shown in text reports
THEOREMS: dict[str, str] = {
    "directed_union": "union of a chain of primary-type ideals sharing a witness keeps that witness",
    "directed_intersection": "intersection of a directed family with equal phi and delta images keeps the witness",
    "colon_by_element": "(P:a) keeps the witness when (phi(P):a) <= phi(P:a)",
    "colon_by_ideal": "(P:J) keeps the witness when phi and delta commute with (-:J) one way",
    "meet_and_product_with_S_ideal": "I meet P and IP stay primary-type when P meets S and phi is constant below I",
    "radical_of_primary": "radical of a primary-type ideal is primary-type under the two radical containments",
    "radical_is_prime": "radical of a phi-S-primary ideal is phi-S-prime",
    "radical_colon_avoids_S": "(rad I : a) avoids S for a outside (rad I : s)",
    "expansion_colon_avoids_S": "(delta(I):s) = (delta(I):s^2) and (delta(I):a) avoids S outside it",
    "colon_dichotomy": "(I:sa) is (I:s) or (phi(I):sa) for a outside (delta(I):s^2)",
    "colon_dichotomy_radical": "(I:sa) is (I:s) or (phi(I):sa) for a outside (rad I : s)",
    "square_in_reduction": "a witness that is not a classical witness forces I^2 <= phi(I)",
    "radical_alternative": "I <= rad phi(I) or s rad phi(I) <= delta(I)",
    "colon_characterization": "pairwise, colon and ideal-pair characterizations agree with the definition",
    "nilpotent_absorption": "s I rad phi(I) <= phi(I) for non-classical witnesses with (I:s) = (delta(I):s)",
    "product_absorption": "s I J <= phi(I) for two non-classical ideals sharing a witness",
    "reduction_primary_equivalence": "every phi-primary-type ideal is delta-primary iff phi-images and delta-S-primary ideals are",
    "weakly_prime_domain": "weakly S-prime ideals are prime iff R is a domain and S-prime ideals are prime",
    "weakly_primary_domain": "weakly S-primary ideals are primary iff (0) is primary and S-primary ideals are primary",
    "reduction_monotone": "phi <= psi makes every phi-witness a psi-witness",
    "expansion_monotone": "delta <= gamma makes every delta-witness a gamma-witness",
    "multset_enlargement": "S1 <= S2 makes every S1-witness an S2-witness",
    "multset_shrink": "a cofinal S1 <= S2 turns an S2-witness s into S1-witnesses st",
    "saturation_laws": "S <= S*, S** = S*, and S* avoids proper ideals that S avoids",
    "saturation_invariance": "primary-type for S iff primary-type for S*",
    "localization_equivalence": "witness, (I:s) primary-type, and the two localized statements agree",
    "quotient_transfer": "witness sets transport through R -> R/J in both directions",
    "quotient_correspondence": "push and pull are inverse bijections over the kernel",
    "twin_zero_transport": "twin zeros correspond exactly under the quotient map",
    "quotient_weakly": "witness iff weakly-gamma witness of I/phi(I) when phi(phi(I)) = phi(I)",
    "twin_zero_quotient": "twin zeros correspond to weakly twin zeros of I/phi(I)",
    "twin_zero_radical": "a twin zero forces rad I = rad phi(I)",
    "twin_zero_annihilates": "a twin zero (a, b) has aI <= phi(I) and bI <= phi(I)",
    "free_twin_zero": "global twin-zero freeness iff the ideal-pair condition",
    "projection_transfer": "witness sets transport through a product projection",
    "product_full_factor": "I1 x R2 primary-type iff I1 classically primary when phi2(R2) != R2",
    "product_full_factor_nonclassical": "non-classical witnesses of I1 x R2 come from non-classical witnesses of I1",
    "product_classical": "unreduced factors: product witnesses are the four classical disjuncts",
    "product_nonclassical": "non-classical product witnesses sit on a reduced factor containing s",
    "product_weakly": "weakly non-classical products have the (I1, 0) shape with a zero witness coordinate",
}

Thunk = Union[bool, Callable[[], Any]]


def _force(value: Thunk) -> Any:
    return value() if callable(value) else value


@dataclass
class TheoremTally:
    theorem: str
    examined: int = 0
    skipped: Counter = field(default_factory=Counter)
    violations: int = 0
    examples: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "id": self.theorem,
            "examined": self.examined,
            "skipped": dict(sorted(self.skipped.items())),
            "violations": self.violations,
            "examples": self.examples,
            "notes": self.notes,
        }


class TheoremReport:
    """Tallies for a set of enabled theorems; merge reports from several sweeps with ``merge``."""

    def __init__(self, enabled: Iterable[str] | None = None):
        self.enabled = tuple(enabled) if enabled is not None else tuple(THEOREMS)
        unknown = [t for t in self.enabled if t not in THEOREMS]
        if unknown:
            raise KeyError(f"unknown theorem ids {unknown}")
        self.tallies: dict[str, TheoremTally] = {t: TheoremTally(t) for t in self.enabled}
        self.elapsed = 0.0

    def wants(self, theorem: str) -> bool:
        return theorem in self.tallies

    def note(self, theorem: str, text: str) -> None:
        if theorem in self.tallies and text not in self.tallies[theorem].notes:
            self.tallies[theorem].notes.append(text)

    def check(self, theorem: str, gates: Iterable[tuple[str, Thunk]], claim: Thunk,
              config: Callable[[], dict] | dict) -> bool | None:
        """Record one configuration: skipped at the first failing gate, else passed or violated.

        ``claim`` may return a bool or a (bool, detail) pair.
        """
        tally = self.tallies.get(theorem)
        if tally is None:
            return None
        for name, ok in gates:
            if not _force(ok):
                tally.skipped[name] += 1
                return None
        outcome = _force(claim)
        detail = None
        if isinstance(outcome, tuple):
            outcome, detail = outcome
        tally.examined += 1
        if not outcome:
            tally.violations += 1
            if len(tally.examples) < MAX_EXAMPLES:
                entry = {"config": _force(config)}
                if detail is not None:
                    entry["detail"] = detail
                tally.examples.append(entry)
        return bool(outcome)

    def merge(self, other: TheoremReport) -> TheoremReport:
        for tid, theirs in other.tallies.items():
            mine = self.tallies.setdefault(tid, TheoremTally(tid))
            mine.examined += theirs.examined
            mine.skipped.update(theirs.skipped)
            mine.violations += theirs.violations
            room = MAX_EXAMPLES - len(mine.examples)
            mine.examples.extend(theirs.examples[:max(room, 0)])
            for n in theirs.notes:
                if n not in mine.notes:
                    mine.notes.append(n)
        self.enabled = tuple(dict.fromkeys(self.enabled + other.enabled))
        self.elapsed += other.elapsed
        return self

    @property
    def violation_count(self) -> int:
        return sum(t.violations for t in self.tallies.values())

    def vacuous(self) -> list[str]:
        return [t for t in self.enabled if self.tallies[t].examined == 0]

    def exit_code(self) -> int:
        if self.violation_count:
            return 2
        if self.vacuous():
            return 3
        return 0

    def to_json(self) -> dict:
        return {
            "theorems": [self.tallies[t].to_json() for t in self.enabled],
            "summary": {
                "theorems": len(self.enabled),
                "examined": sum(t.examined for t in self.tallies.values()),
                "violations": self.violation_count,
                "vacuous": self.vacuous(),
                "exit_code": self.exit_code(),
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    def to_text(self, timing: bool = True) -> str:
        lines = []
        width = max((len(t) for t in self.enabled), default=10)
        for tid in self.enabled:
            t = self.tallies[tid]
            verdict = "VIOLATED" if t.violations else ("VACUOUS" if t.examined == 0 else "ok")
            skipped = sum(t.skipped.values())
            lines.append(f"{tid:<{width}}  {verdict:<8}  examined={t.examined} skipped={skipped} "
                         f"violations={t.violations}")
            for gate, count in sorted(t.skipped.items()):
                lines.append(f"{'':<{width}}    skip {gate}: {count}")
            for note in t.notes:
                lines.append(f"{'':<{width}}    note: {note}")
            for ex in t.examples:
                lines.append(f"{'':<{width}}    counterexample: {json.dumps(ex, sort_keys=True)}")
        s = self.to_json()["summary"]
        lines.append(f"theorems={s['theorems']} examined={s['examined']} violations={s['violations']} "
                     f"vacuous={len(s['vacuous'])} exit={s['exit_code']}")
        if timing:
            lines.append(f"elapsed {self.elapsed:.2f}s")
        return "\n".join(lines)
