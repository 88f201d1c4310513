"""Benchmark harness: capacity sweep, timing, and false-accept reports."""

import json

import numpy as np
import pytest

from conftest import rng_for
from hpauth.bench import (
    REFERENCE_LABEL,
    REFERENCE_LOGIN_TIMES_S,
    FalseAcceptReport,
    ProbeClassRow,
    SweepPoint,
    _perturb,
    capacity_sweep,
    false_accept_sweep,
    random_patterns,
    timing_bench,
)
from hpauth.errors import BadParamsError

# smallest byte-aligned network that fits the synthetic 8+8 character
# credentials used by the timing and false-accept benches
MIN_CRED_BITS = 144


class TestRandomPatterns:
    def test_shape_dtype_and_alphabet(self):
        block = random_patterns(rng_for(1), 5, 16)
        assert block.shape == (5, 16)
        assert block.dtype == np.int8
        assert set(np.unique(block)) <= {-1, 1}


class TestCapacitySweep:
    def test_single_pattern_is_always_exact(self):
        report = capacity_sweep(bits=32, pattern_counts=[1], trials=5, seed=1)
        (point,) = report.points
        assert point == SweepPoint(1, 5, 0.0, 1.0)

    def test_points_sorted_even_if_input_is_not(self):
        report = capacity_sweep(bits=32, pattern_counts=[8, 2, 4], trials=2, seed=1)
        assert [pt.pattern_count for pt in report.points] == [2, 4, 8]

    def test_rates_are_rates(self):
        report = capacity_sweep(bits=24, pattern_counts=[2, 6, 10], trials=5, seed=3)
        for pt in report.points:
            assert 0.0 <= pt.bit_error_rate <= 1.0
            assert 0.0 <= pt.exact_recall_rate <= 1.0

    def test_overload_degrades_recall(self):
        report = capacity_sweep(bits=64, pattern_counts=[2, 16], trials=10, seed=4)
        light, heavy = report.points
        assert light.exact_recall_rate == 1.0
        assert heavy.exact_recall_rate < light.exact_recall_rate
        assert heavy.bit_error_rate > light.bit_error_rate

    def test_same_seed_reproduces_exactly(self):
        a = capacity_sweep(bits=24, pattern_counts=[4, 8], trials=10, seed=9)
        b = capacity_sweep(bits=24, pattern_counts=[4, 8], trials=10, seed=9)
        assert a == b
        assert a.to_tsv() == b.to_tsv()

    def test_different_seed_changes_noisy_cells(self):
        a = capacity_sweep(bits=24, pattern_counts=[8], trials=20, seed=1)
        b = capacity_sweep(bits=24, pattern_counts=[8], trials=20, seed=2)
        assert a.points != b.points

    def test_cells_do_not_depend_on_other_counts(self):
        # each (count, trial) cell draws from its own generator, so adding
        # more counts to the sweep must not disturb existing cells
        alone = capacity_sweep(bits=24, pattern_counts=[6], trials=5, seed=7)
        combined = capacity_sweep(bits=24, pattern_counts=[2, 6], trials=5, seed=7)
        assert combined.points[1] == alone.points[0]

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(bits=0, pattern_counts=[1], trials=1, seed=1),
            dict(bits=16, pattern_counts=[], trials=1, seed=1),
            dict(bits=16, pattern_counts=[0], trials=1, seed=1),
            dict(bits=16, pattern_counts=[17], trials=1, seed=1),
            dict(bits=16, pattern_counts=[4], trials=0, seed=1),
        ],
    )
    def test_rejects_bad_parameters(self, kwargs):
        with pytest.raises(BadParamsError):
            capacity_sweep(**kwargs)

    def test_tsv_shape(self):
        report = capacity_sweep(bits=32, pattern_counts=[2, 4], trials=3, seed=5)
        lines = report.to_tsv().splitlines()
        assert lines[0] == "patterns\ttrials\tbit_error_rate\texact_recall_rate"
        data = [ln for ln in lines if not ln.startswith("#")][1:]
        assert len(data) == 2
        first = data[0].split("\t")
        assert first[0] == "2" and first[1] == "3"
        float(first[2]), float(first[3])  # numeric columns parse
        comments = [ln for ln in lines if ln.startswith("#")]
        assert "# bits: 32" in comments and "# seed: 5" in comments

    def test_json_shape(self):
        report = capacity_sweep(bits=32, pattern_counts=[2], trials=3, seed=5)
        doc = json.loads(report.to_json())
        assert doc["bits"] == 32 and doc["seed"] == 5
        assert doc["points"][0].keys() == {
            "pattern_count",
            "trials",
            "bit_error_rate",
            "exact_recall_rate",
        }


class TestTimingBench:
    def test_rows_match_requested_counts(self):
        report = timing_bench(user_counts=[2, 3], bits=MIN_CRED_BITS, trials=2, seed=5)
        assert [row.n_users for row in report.rows] == [2, 3]
        for row in report.rows:
            assert row.mean_register_s > 0
            assert row.median_register_s > 0
            assert row.mean_login_s > 0
            assert row.median_login_s > 0
        assert isinstance(report.hardware, str) and report.hardware

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(user_counts=[], bits=MIN_CRED_BITS, trials=1, seed=1),
            dict(user_counts=[0], bits=MIN_CRED_BITS, trials=1, seed=1),
            dict(user_counts=[2], bits=MIN_CRED_BITS, trials=0, seed=1),
            dict(user_counts=[100], bits=MIN_CRED_BITS, trials=1, seed=1),  # capacity 14
        ],
    )
    def test_rejects_bad_parameters(self, kwargs):
        with pytest.raises(BadParamsError):
            timing_bench(**kwargs)

    def test_tsv_quotes_reference_rows_as_comments(self):
        report = timing_bench(user_counts=[2], bits=MIN_CRED_BITS, trials=1, seed=5)
        text = report.to_tsv()
        assert f"# {REFERENCE_LABEL}" in text
        for users, hop, _layered in REFERENCE_LOGIN_TIMES_S:
            row = next(ln for ln in text.splitlines() if ln.startswith(f"# {users}\t"))
            assert f"{hop:g}" in row
        assert "n/a" in text  # the 10-million-user row has no layered figure
        measured = [ln for ln in text.splitlines() if not ln.startswith("#")]
        assert len(measured) == 2  # header + one data row; reference stays commented

    def test_json_separates_reference_from_measurements(self):
        report = timing_bench(user_counts=[2], bits=MIN_CRED_BITS, trials=1, seed=5)
        doc = json.loads(report.to_json())
        assert doc["reference"]["label"] == REFERENCE_LABEL
        assert doc["reference"]["login_times_s"][0] == [25, 0.000435, 91.0]
        assert doc["reference"]["login_times_s"][-1] == [10_000_000, 213.0, None]
        assert {row["n_users"] for row in doc["rows"]} == {2}


class TestPerturb:
    def test_changes_exactly_one_character(self):
        rng = rng_for(8)
        for _ in range(200):
            original = "abcdefgh"
            mutated = _perturb(rng, original)
            assert len(mutated) == len(original)
            diffs = [i for i in range(len(original)) if mutated[i] != original[i]]
            assert len(diffs) == 1
            assert 0x20 <= ord(mutated[diffs[0]]) <= 0x7E


class TestFalseAcceptSweep:
    def test_class_labels_and_counts(self):
        report = false_accept_sweep(bits=256, n_users=2, attempts=6, seed=3)
        assert [row.label for row in report.classes] == ["correct", "random", "perturbed"]
        for row in report.classes:
            assert row.attempts == 6
            assert 0 <= row.accepted <= 6
            assert row.accept_rate == row.accepted / 6

    def test_rate_lookup(self):
        report = false_accept_sweep(bits=256, n_users=1, attempts=3, seed=3)
        assert report.rate("correct") == report.classes[0].accept_rate
        with pytest.raises(KeyError):
            report.rate("bogus")

    def test_single_user_store_accepts_owner_and_rejects_wrong(self):
        report = false_accept_sweep(bits=256, n_users=1, attempts=20, seed=11)
        assert report.rate("correct") == 1.0  # one stored pattern is a fixed point
        assert report.rate("random") == 0.0
        assert report.rate("perturbed") == 0.0

    def test_empty_store_rejects_everything(self):
        report = false_accept_sweep(bits=256, n_users=0, attempts=5, seed=3)
        for row in report.classes:
            assert row.accepted == 0

    def test_deterministic_given_seed(self):
        a = false_accept_sweep(bits=256, n_users=3, attempts=10, seed=21)
        b = false_accept_sweep(bits=256, n_users=3, attempts=10, seed=21)
        assert a == b

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(bits=256, n_users=-1, attempts=5, seed=1),
            dict(bits=256, n_users=2, attempts=0, seed=1),
            dict(bits=256, n_users=2, attempts=5, seed=1, password_len=0),
            dict(bits=256, n_users=26, attempts=5, seed=1),  # capacity 25
        ],
    )
    def test_rejects_bad_parameters(self, kwargs):
        with pytest.raises(BadParamsError):
            false_accept_sweep(**kwargs)

    def test_json_summary_restates_class_rates(self):
        report = false_accept_sweep(bits=256, n_users=2, attempts=8, seed=13)
        doc = json.loads(report.to_json())
        assert doc["summary"]["false_reject_rate"] == 1.0 - report.rate("correct")
        assert doc["summary"]["false_accept_random"] == report.rate("random")
        assert doc["summary"]["false_accept_perturbed"] == report.rate("perturbed")

    def test_tsv_shape(self):
        report = false_accept_sweep(bits=256, n_users=2, attempts=4, seed=13)
        lines = report.to_tsv().splitlines()
        assert lines[0] == "class\tattempts\taccepted\taccept_rate"
        assert [ln.split("\t")[0] for ln in lines[1:4]] == ["correct", "random", "perturbed"]

    def test_report_value_type(self):
        row = ProbeClassRow("correct", 4, 4, 1.0)
        report = FalseAcceptReport(256, 1, 4, 9, (row,))
        assert report.rate("correct") == 1.0
