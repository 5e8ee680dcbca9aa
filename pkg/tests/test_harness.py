from __future__ import annotations

import json

import pytest

from phidelta.harness import GROUPS, THEOREMS, CheckConfig, ConfigError, TheoremReport, config_from_json, \
    load_config, run_all
from phidelta.harness.hunt import Sample, hunt, random_sample, sample_from_json, shrink
from phidelta.harness.report import MAX_EXAMPLES
from phidelta.rings import Product, SquareZero, ZMod, build_ring

from test_localize import ill_defined_delta

Z12 = ZMod(12)


def test_groups_cover_every_theorem_once():
    ids = [t for group, _ in GROUPS for t in group]
    assert sorted(ids) == sorted(THEOREMS) and len(ids) == len(set(ids))


@pytest.mark.parametrize("group", [g for g, _ in GROUPS], ids=lambda g: g[0])
def test_each_group_is_clean_on_z12(group):
    cfg = CheckConfig(rings=(Z12,), products=((ZMod(4), ZMod(3)),), theorems=group)
    report = run_all(cfg)
    assert report.violation_count == 0
    # only the weakly product case needs a non-principal factor
    assert set(report.vacuous()) <= {"product_weakly"}


def test_gate_semantics():
    report = TheoremReport(["directed_union"])
    calls = []
    assert report.check("directed_union", [("first", True), ("second", False)], lambda: calls.append(1), {}) is None
    assert calls == [] and report.tallies["directed_union"].skipped == {"second": 1}
    assert report.exit_code() == 3
    assert report.check("directed_union", [], True, {}) is True
    assert report.exit_code() == 0
    for i in range(MAX_EXAMPLES + 2):
        report.check("directed_union", [], (False, {"i": i}), lambda: {"n": 12})
    tally = report.tallies["directed_union"]
    assert tally.violations == MAX_EXAMPLES + 2 and len(tally.examples) == MAX_EXAMPLES
    assert tally.examples[0] == {"config": {"n": 12}, "detail": {"i": 0}}
    assert report.exit_code() == 2
    assert report.check("radical_is_prime", [], False, {}) is None


def test_unknown_theorem_in_report():
    with pytest.raises(KeyError):
        TheoremReport(["no_such_theorem"])


def test_vacuous_run_exits_3():
    cfg = CheckConfig(rings=(), products=((ZMod(4), ZMod(3)),), theorems=("product_weakly",))
    assert run_all(cfg).exit_code() == 3


def test_single_theorem_run_exits_0():
    report = run_all(CheckConfig(rings=(Z12,), theorems=("colon_characterization",)))
    assert report.enabled == ("colon_characterization",)
    assert report.tallies["colon_characterization"].examined > 0 and report.exit_code() == 0


def test_ill_defined_localized_expansion_is_skipped():
    from phidelta.rings import zmod

    delta = json.dumps(ill_defined_delta(zmod(12)).to_json())
    cfg = CheckConfig(rings=(Z12,), deltas=(delta,), mult_sets=({"gens": [2]},),
                      theorems=("localization_equivalence",))
    tally = run_all(cfg).tallies["localization_equivalence"]
    assert tally.examined == 0 and tally.skipped["delta_S_ill_defined"] > 0


@pytest.mark.parametrize("doc,message", [
    ({"colour": 1}, "unknown config key"),
    ({"theorems": ["nope"]}, "unknown theorem"),
    ({"budget": 0}, "budget"),
    ({"max_order": 1}, "max_order"),
    ({"mult_sets": "some"}, "mult_sets"),
    ({"phis": []}, "nonempty"),
    ({"phis": ["bogus"]}, "does not fit"),
    ({"mult_sets": [{"members": [1, 2]}]}, "mult set"),
    ({"rings": [{"type": "zmod", "n": 0}]}, "rings"),
    ({"products": [[{"type": "zmod", "n": 4}]]}, "products"),
    ({"seed": "0"}, "seed"),
    ([], "JSON object"),
    ("{", "not valid JSON"),
])
def test_config_errors(doc, message):
    with pytest.raises(ConfigError, match=message):
        config_from_json(doc)


def test_config_round_trip(tmp_path):
    cfg = CheckConfig(rings=(Z12, SquareZero(2, 2)), phis=('"zero"',), mult_sets="units",
                      products=((ZMod(4), ZMod(3)),), quotients=(Z12,), theorems=("quotient_transfer",), seed=7)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg.to_json()))
    assert load_config(path) == cfg
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "missing.json")


def test_hunt_is_deterministic():
    cfg = CheckConfig(seed=3, budget=4, max_order=12, theorems=("colon_characterization", "twin_zero_radical"))
    first, second = hunt(cfg).dumps(), hunt(cfg).dumps()
    assert first == second
    doc = json.loads(first)
    assert doc["hunt"] == {"seed": 3, "budget": 4, "max_order": 12} and len(doc["samples"]) == 4
    assert "elapsed" not in first


def test_samples_respect_max_order_and_round_trip():
    import random

    rng = random.Random(0)
    for _ in range(30):
        sample = random_sample(rng, 16)
        assert sample.order <= 16
        assert sample_from_json(json.loads(json.dumps(sample.to_json()))) == sample


def _fake_runner(threshold):
    """Reports a violation of every enabled theorem whenever the ring has order >= threshold."""
    def runner(cfg: CheckConfig) -> TheoremReport:
        report = TheoremReport(cfg.enabled)
        big = build_ring(cfg.rings[0]).order >= threshold
        for tid in cfg.enabled:
            report.check(tid, [], (not big, {"order": build_ring(cfg.rings[0]).order}), {})
        return report
    return runner


def test_shrink_finds_smallest_violating_ring():
    sample = Sample(ZMod(30), ('"zero"', '"empty"'), ('"identity"', '"radical"'), ((5, 7), (11,)))
    small = shrink(sample, "saturation_laws", _fake_runner(6))
    assert small.ring == ZMod(6) and small.gens == ((), ())


def test_shrink_descends_into_products():
    sample = Sample(Product(ZMod(4), ZMod(5)), ('"zero"', '"empty"'), ('"identity"', '"radical"'), ((3,), ()))
    small = shrink(sample, "saturation_laws", _fake_runner(6))
    assert small.ring == Product(ZMod(3), ZMod(2)) and small.gens == ((), ())


def test_hunt_reports_each_violated_theorem_once():
    cfg = CheckConfig(seed=1, budget=6, max_order=20, theorems=("saturation_laws", "radical_is_prime"))
    result = hunt(cfg, runner=_fake_runner(6))
    assert result.exit_code() == 2
    assert sorted(cx["theorem"] for cx in result.counterexamples) == ["radical_is_prime", "saturation_laws"]
    for cx in result.counterexamples:
        assert build_ring(sample_from_json(cx["shrunk"]).ring).order >= 6
        # shrinking keeps every map literal meaningful, so it may stop above the threshold
        assert cx["example"]["detail"]["order"] >= 6
