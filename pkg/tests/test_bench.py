"""Per-output regime statistics, exhaustive verification, fault campaigns."""

import json
import random
from pathlib import Path

import pytest

import resilient_obdd as ro
from resilient_obdd.bench import (
    REFERENCE_COUNTS,
    RecoveryStats,
    StatsRow,
    build_output,
    cube_oracle,
    index_ir_campaign,
    index_ut_campaign,
    stats,
    stats_csv,
    stats_json,
    stats_text,
    verify_function,
    verify_pla,
)
from resilient_obdd.core import assignments
from resilient_obdd.pla import load_pla

from conftest import random_reduced

PLAS = Path(__file__).resolve().parent.parent / "plas"

# derived by hand before implementation: subtable counting for ro/qr,
# blocking-count analysis for ir; (ro, qr, ir) per output column
EXPECTED_SIZES = {
    ("majority3", 0): [(4, 6, 4)],
    ("xor4", 0): [(7, 7, 7)],
    ("joined", 0): [(3, 3, 3)],
    ("dontcare", 0): [(2, 5, 3), (4, 6, 5)],
    ("dontcare", 1): [(3, 6, 4), (4, 6, 5)],
}


@pytest.mark.parametrize("name,dc_value", sorted(EXPECTED_SIZES))
def test_bundled_pla_regime_sizes(name, dc_value):
    pla = load_pla(PLAS / f"{name}.pla")
    for j, (want_ro, want_qr, want_ir) in enumerate(EXPECTED_SIZES[(name, dc_value)]):
        r, q, i = build_output(pla, j, dc_value)
        got = (ro.count_nodes(r), ro.count_nodes(q), ro.count_nodes(i))
        assert got == (want_ro, want_qr, want_ir), f"output {j}"


def test_stats_aggregates_outputs():
    pla = load_pla(PLAS / "dontcare.pla")
    row = stats(pla, dc_value=0)
    assert row.benchmark == "dontcare"
    assert (row.n_inputs, row.n_outputs) == (3, 2)
    assert row.per_output == [(5, 2, 3), (6, 4, 5)]  # (qr, ro, ir)
    assert (row.qr_nodes, row.ro_nodes, row.ir_nodes) == (11, 6, 8)


def test_stats_text_shows_drift_for_known_benchmarks():
    known = StatsRow("alu1", 12, 8, qr_nodes=207, ro_nodes=31, ir_nodes=108)
    fresh = StatsRow("tiny", 3, 1, qr_nodes=6, ro_nodes=4, ir_nodes=4)
    text = stats_text([known, fresh])
    lines = text.splitlines()
    assert lines[0].split() == [
        "benchmark", "in", "out", "qr", "ro", "ir", "d_qr", "d_ro", "d_ir"]
    assert "+1" in lines[1] and "+0" in lines[1] and "-1" in lines[1]
    assert lines[2].split()[-3:] == ["-", "-", "-"]


def test_stats_csv_and_json_round_trip():
    pla = load_pla(PLAS / "majority3.pla")
    row = stats(pla)
    csv = stats_csv([row])
    assert csv.splitlines()[1] == "majority3,3,1,6,4,4,,,"
    payload = json.loads(stats_json([row]))
    assert payload == [{
        "benchmark": "majority3", "inputs": 3, "outputs": 1,
        "qr_nodes": 6, "ro_nodes": 4, "ir_nodes": 4,
    }]


def test_reference_counts_satisfy_the_sandwich():
    for name, (n_in, n_out, qr, ro_, ir) in REFERENCE_COUNTS.items():
        assert ro_ <= ir <= qr, name
        assert n_in > 0 and n_out > 0


def test_reference_counts_spot_values():
    assert REFERENCE_COUNTS["alu1"] == (12, 8, 206, 31, 109)
    assert REFERENCE_COUNTS["co14"] == (14, 1, 39, 27, 27)
    assert REFERENCE_COUNTS["clpl"] == (11, 5, 140, 53, 84)


# ---------------------------------------------------------------------------
# verification


def test_cube_oracle_matches_diagram_semantics():
    onset = ["1--0", "0011"]
    dcset = ["01--"]
    for dc_value in (0, 1):
        oracle = cube_oracle(onset, dcset, dc_value)
        d = ro.from_cubes(4, onset, dcset, dc_value)
        assert [oracle(a) for a in assignments(4)] == ro.truth_table(d)


def test_verify_function_clean():
    pla = load_pla(PLAS / "majority3.pla")
    r, q, i = build_output(pla, 0, 0)
    oracle = cube_oracle(pla.onset(0), pla.dcset(0), 0)
    assert verify_function(3, oracle, r, q, i) == []


def test_verify_function_reports_broken_diagrams():
    # dontcare output 0 fully reduced skips a level, majority3's does not
    pla = load_pla(PLAS / "dontcare.pla")
    r, q, i = build_output(pla, 0, 0)
    oracle = cube_oracle(pla.onset(0), pla.dcset(0), 0)
    # feed the fully reduced diagram where the resilient one belongs
    problems = verify_function(3, oracle, r, q, r, label="dc0")
    assert any("not index-resilient" in p for p in problems)
    # and a wrong function entirely
    wrong = ro.from_truth_table(3, [1, 0, 0, 0, 0, 0, 0, 0])
    problems = verify_function(3, oracle, wrong, q, i, label="dc0")
    assert any(p.startswith("dc0/ro: wrong value") for p in problems)


def test_verify_pla_bundled_files():
    for name in ("majority3", "xor4", "dontcare", "joined"):
        pla = load_pla(PLAS / f"{name}.pla")
        for dc_value in (0, 1):
            assert verify_pla(pla, dc_value) == [], (name, dc_value)


def test_verify_pla_guards_input_width():
    pla = load_pla(PLAS / "xor4.pla")
    with pytest.raises(ValueError):
        verify_pla(pla, max_n=3)


# ---------------------------------------------------------------------------
# campaigns


def test_index_ut_campaign_recovers_everything():
    rng = random.Random(7)
    d = random_reduced(rng, 7)
    result = index_ut_campaign(d, trials=80, seed=3)
    assert result == RecoveryStats(80, 80, 3)
    assert result.all_recovered
    # deterministic reruns
    assert index_ut_campaign(d, trials=80, seed=3) == result


def test_index_ir_campaign_recovers_on_resilient_diagrams():
    rng = random.Random(11)
    d = ro.ir_reduce(ro.build_qr(random_reduced(rng, 6)))
    before = {u: d.store.node(u).index
              for u in ro.dfs_preorder(d, include_terminals=False)}
    result = index_ir_campaign(d, trials=60, faults=3, seed=5)
    assert result.all_recovered
    after = {u: d.store.node(u).index
             for u in ro.dfs_preorder(d, include_terminals=False)}
    assert after == before


def test_index_ir_campaign_fails_without_the_property(wide_range_example):
    # fully reduced diagrams skip levels, so child-based repair misfires
    d, _, _ = wide_range_example
    before = {u: d.store.node(u).index
              for u in ro.dfs_preorder(d, include_terminals=False)}
    result = index_ir_campaign(d, trials=40, faults=1, seed=9)
    assert 0 < result.recovered < result.trials
    after = {u: d.store.node(u).index
             for u in ro.dfs_preorder(d, include_terminals=False)}
    assert after == before  # failed trials are rolled back too


def test_campaigns_on_terminal_only_diagram():
    d = ro.Diagram(ro.DiagramStore(4), ro.TERM0)
    assert index_ut_campaign(d, trials=5, seed=1).trials == 0
    assert index_ir_campaign(d, trials=5, faults=2, seed=1).trials == 0
