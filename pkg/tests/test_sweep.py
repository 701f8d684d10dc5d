import json
from datetime import UTC, datetime, timedelta

import numpy as np
import pytest

from core import Axis, CouplingPoint, Flag, ParitySector
from geometry import fidelity_susceptibility
from sweep import (
    AxisRange,
    ClassifyConfig,
    Dataset,
    DatasetFormat,
    DatasetIOError,
    EchoConfig,
    FidelityStepConfig,
    GapConfig,
    OverlapConfig,
    PlanError,
    Quantity,
    QuantityCode,
    ScanPlan,
    SusceptibilityConfig,
    dataset_timestamp,
    default_workers,
    evaluate_point,
    existing_quantities,
    format_dataset,
    read_dataset,
    read_plan_file,
    run_scan,
    write_dataset,
)

from .conftest import CRITICAL, ORIGIN


def _gap_plan(*axes: AxisRange, **kwargs) -> ScanPlan:
    return ScanPlan(QuantityCode.GAP, axes, N=kwargs.pop("N", 40), config=GapConfig(resolution=256), **kwargs)


class TestAxisRange:
    def test_parse(self):
        axis_range = AxisRange.parse("ly:0:2:101")
        assert axis_range == AxisRange(Axis.LAMBDA_Y, 0.0, 2.0, 101)
        assert str(axis_range) == "ly:0:2:101"
        values = axis_range.values()
        assert values.size == 101
        assert values[50] == pytest.approx(1.0)

    def test_single_step_samples_start(self):
        np.testing.assert_array_equal(AxisRange.parse("h:0.5:0.5:1").values(), [0.5])

    @pytest.mark.parametrize("text", ["ly:0:2", "zz:0:1:3", "ly:a:1:3", "ly:0:1:0", "ly:1:0:3", "ly:0:inf:3"])
    def test_rejects(self, text):
        with pytest.raises(PlanError):
            AxisRange.parse(text)


class TestScanPlan:
    def test_row_major_points(self):
        plan = _gap_plan(AxisRange.parse("lx:0:1:2"), AxisRange.parse("h:0:2:3"), fixed={Axis.LAMBDA_Y: 0.5})
        assert plan.shape == (2, 3)
        assert plan.points() == [
            CouplingPoint(0, 0.5, 0),
            CouplingPoint(0, 0.5, 1),
            CouplingPoint(0, 0.5, 2),
            CouplingPoint(1, 0.5, 0),
            CouplingPoint(1, 0.5, 1),
            CouplingPoint(1, 0.5, 2),
        ]
        assert plan.midpoint() == CouplingPoint(0.5, 0.5, 1.0)

    def test_default_config(self):
        plan = ScanPlan("classify", (AxisRange.parse("h:0:1:2"),))
        assert plan.quantity is QuantityCode.CLASSIFY
        assert isinstance(plan.config, ClassifyConfig)
        assert plan.N == 500
        assert plan.sector is ParitySector.EVEN

    @pytest.mark.parametrize(
        ("kwargs", "message"),
        [
            ({"quantity": "entropy"}, "unknown quantity"),
            ({"axes": ()}, "1 or 2 axes"),
            ({"axes": (AxisRange.parse("h:0:1:2"),) * 2}, "distinct"),
            ({"fixed": {Axis.H: 1.0}}, "overlap"),
            ({"N": 7}, "even"),
            ({"sector": 3}, "sector"),
            ({"config": EchoConfig()}, "expects GapConfig"),
        ],
    )
    def test_rejects(self, kwargs, message):
        arguments = {"quantity": QuantityCode.GAP, "axes": (AxisRange.parse("h:0:1:2"),)} | kwargs
        with pytest.raises(PlanError, match=message):
            ScanPlan(**arguments)

    def test_as_dict(self):
        plan = _gap_plan(AxisRange.parse("h:0:1:2"), fixed={Axis.LAMBDA_X: 0.25}, sector=1)
        assert plan.as_dict() == {
            "quantity": "gap",
            "axes": ["h:0:1:2"],
            "fixed": {"lx": 0.25},
            "N": 40,
            "sector": 1,
            "config": {"resolution": 256},
        }


class TestConfigs:
    def test_defaults(self):
        assert GapConfig().resolution == 4096
        assert FidelityStepConfig().step == 0.05
        assert FidelityStepConfig().axis is Axis.LAMBDA_Y
        assert SusceptibilityConfig().direction == (0.0, 1.0, 0.0)
        assert EchoConfig().final == CRITICAL
        assert EchoConfig().dt is None
        assert OverlapConfig().center is None

    def test_coercion(self):
        assert FidelityStepConfig(step="0.1", axis="h").axis is Axis.H
        assert EchoConfig(final=(0, 0, 0)).final == ORIGIN
        assert EchoConfig(final=(0, 1, 0)).as_dict() == {"final": [0.0, 1.0, 0.0], "t_max": 100.0, "dt": None}

    @pytest.mark.parametrize(
        ("factory", "message"),
        [
            (lambda: FidelityStepConfig(step=0), "non-zero"),
            (lambda: FidelityStepConfig(axis="q"), "axis"),
            (lambda: SusceptibilityConfig(direction=(1, 1, 0)), "unit"),
            (lambda: EchoConfig(t_max=-1), "t_max"),
            (lambda: EchoConfig(dt=0), "dt"),
            (lambda: GapConfig(resolution=8), "at least 64"),
            (lambda: ClassifyConfig(tol=0), "tol"),
        ],
    )
    def test_rejects(self, factory, message):
        with pytest.raises(ValueError, match=message):
            factory()


class TestRunScan:
    def test_layout(self):
        plan = _gap_plan(AxisRange.parse("h:0:2:5"), fixed={Axis.LAMBDA_Y: 1.0})
        dataset = run_scan(plan, workers=1)
        assert dataset.schema == ("lx", "ly", "h", "gap", "k_min", "flags")
        assert len(dataset) == 5
        assert dataset.column("h") == pytest.approx([0.0, 0.5, 1.0, 1.5, 2.0])
        assert dataset.column("ly") == [1.0] * 5
        assert dataset.metadata["plan"]["quantity"] == "gap"
        assert all(label == "" for label in dataset.column("flags"))

    def test_single_point_plan(self):
        plan = _gap_plan(AxisRange.parse("h:0:0:1"))
        row = run_scan(plan, workers=1).rows[0]
        assert row[:3] == (0.0, 0.0, 0.0)
        assert row[3] == pytest.approx(1.0, abs=1e-9)

    def test_workers_keep_order(self):
        plan = ScanPlan(QuantityCode.FIDELITY_STEP, (AxisRange.parse("lx:-1:1:7"),), N=60)
        assert run_scan(plan, workers=2).rows == run_scan(plan, workers=1).rows

    def test_rejects_bad_worker_count(self):
        with pytest.raises(PlanError, match="workers"):
            run_scan(_gap_plan(AxisRange.parse("h:0:1:2")), workers=0)

    def test_failures_become_flagged_rows(self, monkeypatch):
        class Failing(Quantity):
            columns = ("gap", "k_min")

            def evaluate(self, point, plan):
                if point.h > 0.5:
                    raise ArithmeticError("boom")
                return (1.0, 0.0), Flag(0)

        monkeypatch.setitem(existing_quantities, QuantityCode.GAP, Failing)
        dataset = run_scan(_gap_plan(AxisRange.parse("h:0:1:2")), workers=1)
        assert dataset.rows[0][3:] == (1.0, 0.0, "")
        assert dataset.rows[1][3:] == (None, None, "EVALUATION_ERROR")
        assert dataset.metadata["flags"] == "EVALUATION_ERROR"
        assert not dataset.all_flagged

    def test_evaluate_point(self):
        plan = ScanPlan(QuantityCode.CHI_F, (AxisRange.parse("h:0:0:1"),), N=8, config=SusceptibilityConfig((0, 0, 1)))
        values, flags = evaluate_point(plan, ORIGIN)
        assert values == pytest.approx((0.5,))
        assert not flags

    def test_susceptibility_scan_matches_geometry(self):
        direction = (0.6, 0.0, 0.8)
        config = SusceptibilityConfig(direction, per_site=True)
        plan = ScanPlan(QuantityCode.CHI_F, (AxisRange.parse("lx:0.2:0.6:3"),), {Axis.H: 0.3}, N=30, config=config)
        dataset = run_scan(plan, workers=1)
        for (lx, ly, h, value, _), point in zip(dataset.rows, plan.points(), strict=True):
            assert (lx, ly, h) == pytest.approx(tuple(point.as_array()))
            assert value == pytest.approx(fidelity_susceptibility(point, direction, plan.grid, per_site=True))

    def test_gapless_fidelity_rows_are_all_flagged(self):
        plan = ScanPlan(QuantityCode.FIDELITY_STEP, (AxisRange.parse("ly:1:1:1"),), N=400, sector=ParitySector.ODD)
        dataset = run_scan(plan, workers=1)
        assert "GAPLESS_MODE" in dataset.column("flags")[0]
        assert dataset.all_flagged

    def test_classify_scan_is_partner_symmetric(self):
        config = ClassifyConfig(resolution=512)
        axis = (AxisRange.parse("lx:-1.5:1.5:7"),)
        scan = run_scan(ScanPlan("classify", axis, {Axis.LAMBDA_Y: 0.6, Axis.H: 0.2}, config=config), workers=1)
        partner = run_scan(ScanPlan("classify", axis, {Axis.LAMBDA_Y: -0.6, Axis.H: 0.2}, config=config), workers=1)
        assert scan.column("is_gapless") == partner.column("is_gapless")[::-1]
        assert scan.column("gap") == pytest.approx(partner.column("gap")[::-1], abs=1e-9)

    def test_overlap_scan_uses_window_center(self):
        plan = ScanPlan(QuantityCode.OVERLAP_F, (AxisRange.parse("h:0:2:3"),), N=40, sector=ParitySector.EVEN)
        fidelities = run_scan(plan, workers=1).column("F")
        assert fidelities[1] == pytest.approx(1.0)
        assert fidelities[0] < 1.0

    def test_echo_quantity(self):
        config = EchoConfig(final=CouplingPoint(0, 0, 0.5), t_max=30.0)
        plan = ScanPlan(QuantityCode.ECHO, (AxisRange.parse("h:1.5:1.5:1"),), N=40, config=config)
        row = run_scan(plan, workers=1).rows[0]
        mean, std, minimum = row[3:6]
        assert 0.0 <= minimum <= mean <= 1.0
        assert std >= 0.0


class TestDefaultWorkers:
    def test_unset(self, monkeypatch):
        monkeypatch.delenv("CLUSTER_XY_WORKERS", raising=False)
        assert default_workers() == 1

    def test_from_environment(self, monkeypatch):
        monkeypatch.setenv("CLUSTER_XY_WORKERS", "3")
        assert default_workers() == 3

    @pytest.mark.parametrize("raw", ["0", "many", "-2"])
    def test_rejects(self, monkeypatch, raw):
        monkeypatch.setenv("CLUSTER_XY_WORKERS", raw)
        with pytest.raises(PlanError, match="CLUSTER_XY_WORKERS"):
            default_workers()


class TestDatasetTimestamp:
    def test_from_source_date_epoch(self, monkeypatch):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "1718064000")
        assert dataset_timestamp() == "2024-06-11T00:00:00+00:00"
        plan = _gap_plan(AxisRange.parse("h:0:0:1"))
        assert run_scan(plan, workers=1).metadata == run_scan(plan, workers=1).metadata

    def test_current_time_when_unset(self, monkeypatch):
        monkeypatch.delenv("SOURCE_DATE_EPOCH", raising=False)
        moment = datetime.fromisoformat(dataset_timestamp())
        assert moment.utcoffset() == timedelta(0)
        assert abs(datetime.now(UTC) - moment) < timedelta(minutes=1)

    @pytest.mark.parametrize("raw", ["soon", "1.5"])
    def test_rejects(self, monkeypatch, raw):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", raw)
        with pytest.raises(ValueError, match="SOURCE_DATE_EPOCH"):
            dataset_timestamp()


@pytest.fixture
def dataset() -> Dataset:
    rows = (
        (0.0, 1.0, 0.1, True, None, ""),
        (0.5, 1.0, 1 / 3, False, "MulticriticalLine", "GAPLESS_MODE"),
    )
    return Dataset(("lx", "ly", "gap", "is_gapless", "surfaces", "flags"), rows, {"plan": {"N": 8}})


class TestDataset:
    def test_rejects_ragged_rows(self):
        with pytest.raises(ValueError, match="schema"):
            Dataset(("a", "b"), ((1.0,),))

    def test_numpy_cells_become_builtins(self):
        dataset = Dataset(("a", "flags"), ((np.float64(0.5), ""),))
        assert type(dataset.rows[0][0]) is float

    def test_csv_text(self, dataset):
        text = format_dataset(dataset, DatasetFormat.CSV)
        lines = text.split("\n")
        assert lines[0] == "lx,ly,gap,is_gapless,surfaces,flags"
        assert lines[1] == "0,1,0.10000000000000001,true,,"
        assert lines[2] == "0.5,1,0.33333333333333331,false,MulticriticalLine,GAPLESS_MODE"
        assert text.endswith("\n")

    def test_csv_round_trip(self, dataset, tmp_path):
        path = tmp_path / "scan.csv"
        write_dataset(dataset, "csv", path)
        restored = read_dataset(path)
        assert restored.schema == dataset.schema
        assert restored.rows == dataset.rows
        assert restored.metadata == {}

    def test_json_round_trip(self, dataset, tmp_path):
        path = tmp_path / "nested" / "scan.json"
        write_dataset(dataset, DatasetFormat.JSON, path)
        restored = read_dataset(path)
        assert restored.rows == dataset.rows
        assert restored.metadata == {"plan": {"N": 8}}
        assert json.loads(path.read_text())["schema"] == list(dataset.schema)

    def test_writes_are_byte_identical(self, dataset, tmp_path):
        for fmt in DatasetFormat:
            first, second = tmp_path / f"a.{fmt.value}", tmp_path / f"b.{fmt.value}"
            write_dataset(dataset, fmt, first)
            write_dataset(dataset, fmt, second)
            assert first.read_bytes() == second.read_bytes()

    def test_header_only(self, tmp_path):
        path = tmp_path / "empty.csv"
        write_dataset(Dataset(("lx", "flags")), "csv", path)
        assert path.read_text() == "lx,flags\n"
        assert len(read_dataset(path)) == 0

    def test_all_flagged(self, dataset):
        assert not dataset.all_flagged
        flagged = Dataset(("x", "flags"), ((1.0, "GAPLESS_MODE"), (2.0, "DEGENERATE")))
        assert flagged.all_flagged
        assert not Dataset(("x", "flags")).all_flagged
        assert not Dataset(("x", "flags"), ((1.0, "TRIVIAL_PROTOCOL"),)).all_flagged

    def test_read_errors(self, tmp_path):
        with pytest.raises(DatasetIOError, match="missing.csv"):
            read_dataset(tmp_path / "missing.csv")
        with pytest.raises(DatasetIOError, match="format"):
            read_dataset(tmp_path / "scan.txt")
        broken = tmp_path / "broken.json"
        broken.write_text("{}")
        with pytest.raises(DatasetIOError, match="malformed"):
            read_dataset(broken)

    def test_write_error_names_path(self, dataset, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        with pytest.raises(DatasetIOError, match="file"):
            write_dataset(dataset, "csv", blocker / "scan.csv")


class TestPlanFile:
    def test_without_section_header(self, tmp_path):
        path = tmp_path / "plan.ini"
        path.write_text("# chain\nN = 400\nlx = 0.1  # start\nt-max = 120\naxis = ly:0:2:11\n")
        assert read_plan_file(path) == {"N": "400", "lx": "0.1", "t_max": "120", "axis": "ly:0:2:11"}

    def test_with_section_header(self, tmp_path):
        path = tmp_path / "plan.ini"
        path.write_text("[plan]\nsector = 1\n")
        assert read_plan_file(path) == {"sector": "1"}

    def test_missing_section(self, tmp_path):
        path = tmp_path / "plan.ini"
        path.write_text("[other]\nsector = 1\n")
        with pytest.raises(PlanError, match="no \\[plan\\]"):
            read_plan_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(PlanError, match="cannot read"):
            read_plan_file(tmp_path / "absent.ini")
