"""
Set distances, perturbation sequences, stability probes and report export.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from pydantic import ValidationError

from src.diagnostics import (
    SequenceSpec, constant_sequence, excess, format_float, lsc_probe, lsc_probe_async,
    point_segment_distance, read_csv, read_json, segment_excess, selection_oscillation,
    selection_oscillation_async, to_json, write_csv, write_json, write_report,
)
from src.errors import NonSingletonError
from src.geometry import rotate, rotate_inv
from src.solver import optimal_set

segment = arrays(np.float64, (2, 3), elements=st.floats(-10.0, 10.0))


# ==================== Distances ====================

class TestDistance:

    def test_point_segment_distance(self):
        start, end = np.array([-1.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0])
        points = np.array([[0.0, 2.0, 0.0], [3.0, 0.0, 0.0], [0.5, 0.0, 0.0]])
        assert np.allclose(point_segment_distance(points, start, end), [2.0, 2.0, 0.0])
        assert point_segment_distance(points[0], start, start) == pytest.approx(math.sqrt(5.0))

    def test_excess(self):
        seg = [[-1.0, 0.0, 0.0], [1.0, 0.0, 0.0]]
        assert excess([0.0, 0.0, 0.0], seg) == 0.0
        assert excess(rotate([1.0, 0.0, 0.0]), np.zeros(3)) == pytest.approx(1.0)
        with pytest.raises(ValueError):
            excess(np.empty((0, 3)), seg)
        with pytest.raises(ValueError):
            excess([0.0, 0.0, 0.0], np.zeros((3, 3)))

    def test_excess_of_optimal_set_over_origin(self, basic):
        assert excess(optimal_set(np.zeros(3), basic).endpoints, np.zeros(3)) == pytest.approx(1.0, abs=1e-6)

    @settings(max_examples=200)
    @given(segment, segment, segment)
    def test_excess_triangle_inequality(self, a, b, c):
        assert segment_excess(a, c) <= segment_excess(a, b) + segment_excess(b, c) + 1e-9

    @given(segment)
    def test_excess_of_segment_over_itself(self, a):
        assert segment_excess(a, a) <= 1e-9

    def test_enlarging_target_never_increases_distance(self, rng):
        start, end = rng.normal(size=(2, 3))
        points = rng.normal(size=(50, 3))
        wider = point_segment_distance(points, start - (end - start), end + (end - start))
        assert np.all(wider <= point_segment_distance(points, start, end) + 1e-12)


# ==================== Sequences ====================

class TestSequences:

    def test_basic_terms(self):
        seq = SequenceSpec(kind="basic_lsc", n_max=4)
        expected = rotate([[0.0, 3.0 / math.sqrt(n), 1.0 / n] for n in (1, 2, 3, 4)])
        assert np.allclose(seq.terms(), expected)

    def test_alternating_signs(self):
        seq = SequenceSpec(kind="twisted_alternating", n_max=4)
        rotated = rotate_inv(seq.terms())
        assert np.allclose(rotated[:, 1], [-16.0, 16.0, -16.0 / math.sqrt(2.0), 16.0 / math.sqrt(2.0)])
        assert seq.parities() == ["odd", "even", "odd", "even"]

    def test_geometric_parameters(self):
        seq = SequenceSpec(kind="twisted_alternating", n_max=6, spacing="geometric")
        assert seq.parameters() == [1, 1, 4, 4, 16, 16]
        assert SequenceSpec(kind="basic_lsc", n_max=3, spacing="geometric", ratio=2).parameters() == [1, 2, 4]

    def test_shift(self):
        seq = SequenceSpec(kind="basic_lsc", n_max=2, shift=(1.0, 0.0, 0.0))
        assert np.allclose(seq.terms() - SequenceSpec(kind="basic_lsc", n_max=2).terms(), [[1.0, 0.0, 0.0]] * 2)

    @pytest.mark.parametrize("kwargs", [
        {"kind": "basic_lsc", "n_max": 0},
        {"kind": "basic_lsc", "n_max": 2, "points": [(0.0, 0.0, 0.0)] * 2},
        {"kind": "custom", "n_max": 2, "points": [(0.0, 0.0, 0.0)]},
        {"kind": "custom", "n_max": 2, "points": [(0.0, 0.0, 0.0), (1.0, 1.0, 1.0)]},
        {"kind": "custom", "n_max": 2},
        {"kind": "twisted_alternating", "ratio": 1},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            SequenceSpec(**kwargs)

    def test_constant(self):
        seq = constant_sequence([1.0, 2.0, 3.0], 3)
        assert np.allclose(seq.terms(), [[1.0, 2.0, 3.0]] * 3)


# ==================== Probes ====================

class TestProbes:

    def test_lsc_gap_at_origin(self, basic):
        report = lsc_probe(np.zeros(3), SequenceSpec(kind="basic_lsc", n_max=20), basic)
        assert 0.99 <= report.gap <= 1.01
        assert np.linalg.norm(report.witness) == pytest.approx(1.0, abs=1e-6)
        assert len(report.per_n()) == 20
        assert max(report.widths) <= 1e-4

    def test_lsc_constant_sequence_has_no_gap(self, basic):
        report = lsc_probe(np.zeros(3), constant_sequence(np.zeros(3), 3), basic)
        assert report.gap <= 1e-6

    @pytest.mark.slow
    def test_lsc_full_length(self, basic):
        report = lsc_probe(np.zeros(3), SequenceSpec(kind="basic_lsc", n_max=100), basic)
        assert 0.99 <= report.gap <= 1.01

    def test_selection_oscillates_on_twisted(self, twisted):
        seq = SequenceSpec(kind="twisted_alternating", n_max=18, spacing="geometric")
        report = selection_oscillation(seq, twisted)
        assert 0.99 <= report.oscillation <= 1.01
        assert report.odd_limit[0] < 0.0 < report.even_limit[0]
        assert [row["parity"] for row in report.per_n()[:2]] == ["odd", "even"]

    def test_selection_is_stable_on_basic(self, basic):
        report = selection_oscillation(SequenceSpec(kind="basic_lsc", n_max=20), basic)
        assert report.oscillation <= 1e-3

    def test_selection_constant_singleton(self, basic):
        report = selection_oscillation(constant_sequence(rotate([0.0, 2.0, 0.0]), 4), basic)
        assert report.oscillation <= 1e-6

    def test_selection_needs_singletons(self, basic):
        with pytest.raises(NonSingletonError) as info:
            selection_oscillation(constant_sequence(np.zeros(3), 2), basic)
        assert info.value.index == 1

    @pytest.mark.asyncio
    async def test_lsc_gap_inside_running_loop(self, basic):
        report = await lsc_probe_async(np.zeros(3), SequenceSpec(kind="basic_lsc", n_max=20), basic)
        assert 0.99 <= report.gap <= 1.01
        assert len(report.per_n()) == 20

    @pytest.mark.asyncio
    async def test_selection_inside_running_loop(self, basic):
        seq = constant_sequence(rotate([0.0, 2.0, 0.0]), 4)
        report = await selection_oscillation_async(seq, basic)
        assert report.oscillation <= 1e-6
        with pytest.raises(RuntimeError):
            selection_oscillation(seq, basic)

    @pytest.mark.asyncio
    async def test_async_selection_needs_singletons(self, basic):
        with pytest.raises(NonSingletonError):
            await selection_oscillation_async(constant_sequence(np.zeros(3), 2), basic)


# ==================== Export ====================

class TestExport:

    @pytest.mark.parametrize("value, text", [
        (-0.0, "0"),
        (1.0 / 3.0, "0.333333333333"),
        (1e-20, "1e-20"),
        (math.nan, "nan"),
        (-math.inf, "-inf"),
    ])
    def test_format_float(self, value, text):
        assert format_float(value) == text

    def test_json_is_sorted_and_rounded(self, tmp_path):
        data = {"b": 1.0 / 3.0, "a": [0.1 + 0.2, -0.0]}
        assert to_json(data) == to_json(dict(reversed(list(data.items()))))
        path = write_json(data, tmp_path / "nested" / "out.json")
        assert read_json(path) == {"a": [0.3, 0.0], "b": 0.333333333333}

    def test_csv_round_trip_types(self, tmp_path):
        rows = [{"index": 1, "parity": "odd", "z1": 0.5}, {"index": 2, "parity": "even", "z1": -1.25}]
        path = write_csv(rows, tmp_path / "rows.csv", ["index", "parity", "z1"])
        assert path.read_text(encoding="utf-8").splitlines()[0] == "index,parity,z1"
        assert read_csv(path) == rows

    def test_report_files_are_reproducible(self, twisted, tmp_path):
        seq = SequenceSpec(kind="twisted_alternating", n_max=6, spacing="geometric")
        for name in ("first", "second"):
            write_report(selection_oscillation(seq, twisted), tmp_path / f"{name}.json", tmp_path / f"{name}.csv")
        assert (tmp_path / "first.json").read_bytes() == (tmp_path / "second.json").read_bytes()
        assert (tmp_path / "first.csv").read_bytes() == (tmp_path / "second.csv").read_bytes()
        assert len(read_csv(tmp_path / "first.csv")) == 6
