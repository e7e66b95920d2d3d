import numpy as np
import pytest
from lxml import etree

from tspgcn.core import Tour
from tspgcn.data import generate_dataset
from tspgcn.errors import InvalidArgumentError
from tspgcn.evalbench import (
    REPORT_HEADER,
    benchmark,
    build_solver,
    export_figure,
    mean_gap,
    optimality_gap,
    parse_model_method,
    sweep,
    write_report_csv,
    write_sweep_csv,
)
from tspgcn.model import GcnConfig, GcnModel
from tspgcn.train import TrainConfig, fit
from tspgcn.utils.utils import read_csv

SVG = "{http://www.w3.org/2000/svg}"


@pytest.fixture(scope="module")
def tsp8_test():
    return generate_dataset(8, 16, seed=31, split="test")


@pytest.fixture
def tiny_checkpoint(tiny_config, tmp_path):
    path = tmp_path / "tiny.ckpt"
    GcnModel(tiny_config, seed=9).save(path)
    return str(path)


class TestOptimalityGap:
    def test_percentage(self):
        assert optimality_gap(4.2, 4.0) == pytest.approx(5.0)

    def test_equal_is_zero(self):
        assert optimality_gap(3.1, 3.1) == 0.0

    @pytest.mark.parametrize("opt", [0.0, -1.0])
    def test_non_positive_reference(self, opt):
        with pytest.raises(InvalidArgumentError):
            optimality_gap(1.0, opt)

    def test_mean_gap(self):
        assert mean_gap([4.2, 3.0], [4.0, 3.0]) == pytest.approx(2.5)


class TestBuildSolver:
    @pytest.mark.parametrize(
        "method",
        ["exact", "brute", "nearest_neighbor", "nearest_insertion", "random_insertion", "farthest_insertion+2opt"],
    )
    def test_known_methods(self, method):
        assert build_solver(method).name == method

    @pytest.mark.parametrize("method", ["cheapest_insertion", "greedy", "exact+3opt"])
    def test_unknown(self, method):
        with pytest.raises(InvalidArgumentError):
            build_solver(method)

    def test_model_methods(self):
        assert parse_model_method("model:greedy") == ("greedy", 1)
        assert parse_model_method("model:beam-shortest:16") == ("beam-shortest", 16)
        with pytest.raises(InvalidArgumentError):
            parse_model_method("model:beam")
        with pytest.raises(InvalidArgumentError):
            parse_model_method("model:beam:0")


class TestBenchmark:
    def test_exact_against_itself(self, tsp8_test):
        report = benchmark("exact", tsp8_test)
        assert report.mean_gap_pct == pytest.approx(0.0, abs=1e-12)
        assert report.reference == "exact"
        assert report.count == 16 and report.n == 8

    def test_gaps_non_negative(self, tsp8_test):
        report = benchmark("nearest_neighbor", tsp8_test)
        assert min(report.gaps) >= -1e-9
        assert report.mean_gap_pct > 0

    def test_thread_count_does_not_change_content(self, tsp8_test):
        one = benchmark("random_insertion+2opt", tsp8_test, threads=1, seed=2)
        many = benchmark("random_insertion+2opt", tsp8_test, threads=8, seed=2)
        assert one.lengths == many.lengths and one.gaps == many.gaps
        assert one.threads == 1 and many.threads == 8

    def test_model_width_one_matches_greedy(self, tsp8_test, tiny_checkpoint):
        model = GcnModel.load(tiny_checkpoint)
        greedy = benchmark("model:greedy", tsp8_test, model=model)
        beam = benchmark("model:beam:1", tsp8_test, model=model)
        assert greedy.lengths == beam.lengths

    def test_model_on_other_size(self, tiny_checkpoint):
        other = generate_dataset(11, 4, seed=2, split="test")
        report = benchmark("model:beam-shortest:4", other, model=GcnModel.load(tiny_checkpoint))
        assert report.n == 11 and report.mean_gap_pct >= 0.0

    def test_model_method_needs_model(self, tsp8_test):
        with pytest.raises(InvalidArgumentError):
            benchmark("model:greedy", tsp8_test)

    def test_best_known_reference(self, tmp_path):
        dataset = generate_dataset(25, 3, seed=1, solver="heuristic", split="test")
        report = benchmark("nearest_neighbor", dataset)
        assert report.reference == "best_known"
        path = tmp_path / "report.csv"
        write_report_csv([report], path)
        assert "mean_gap_vs_best_known_pct" in read_csv(path)[0]

    def test_report_csv(self, tsp8_test, tmp_path):
        reports = [benchmark(method, tsp8_test) for method in ("exact", "farthest_insertion")]
        path = tmp_path / "report.csv"
        write_report_csv(reports, path)
        rows = read_csv(path)
        assert tuple(rows[0]) == REPORT_HEADER
        assert [row[0] for row in rows[1:]] == ["exact", "farthest_insertion"]
        assert rows[1][4] == "0.0000"

    @pytest.mark.slow
    def test_baseline_gap_table(self):
        dataset = generate_dataset(20, 200, seed=7, max_exact_n=20, split="test", threads=8)
        gaps = {
            method: benchmark(method, dataset, threads=8, max_exact_n=20).mean_gap_pct
            for method in ("nearest_neighbor", "nearest_insertion", "random_insertion", "farthest_insertion")
        }
        assert gaps["nearest_neighbor"] == pytest.approx(17.0, abs=3.0)
        assert gaps["nearest_insertion"] == pytest.approx(12.9, abs=3.0)
        assert gaps["random_insertion"] == pytest.approx(4.4, abs=2.0)
        assert gaps["farthest_insertion"] == pytest.approx(2.4, abs=1.5)
        assert gaps["nearest_neighbor"] > gaps["nearest_insertion"] > gaps["random_insertion"] > gaps["farthest_insertion"]


class TestSweep:
    def test_empty_values(self, tsp8_test, tiny_checkpoint):
        assert sweep("beam_width", [], tsp8_test, tiny_checkpoint) == []

    def test_beam_width_series(self, tsp8_test, tiny_checkpoint, tmp_path):
        rows = sweep("beam_width", [1, 4, 16], tsp8_test, tiny_checkpoint, decoder="beam-shortest")
        assert [value for _, value, _ in rows] == [1, 4, 16]
        greedy = benchmark("model:greedy", tsp8_test, model=GcnModel.load(tiny_checkpoint))
        assert rows[0][2].lengths == greedy.lengths
        path = tmp_path / "sweep.csv"
        write_sweep_csv(rows, path)
        assert read_csv(path)[0][:3] == ["axis", "value", "method"]

    def test_capacity_series(self, tsp8_test, tmp_path):
        for h in (8, 16):
            GcnModel(GcnConfig(l_conv=1, l_mlp=2, h=h, k=3), seed=0).save(tmp_path / f"h{h}.ckpt")
        rows = sweep("h", [8, 16], tsp8_test, str(tmp_path / "h{value}.ckpt"), decoder="greedy")
        assert [report.method for _, _, report in rows] == ["model:greedy", "model:greedy"]

    def test_capacity_needs_template(self, tsp8_test, tiny_checkpoint):
        with pytest.raises(InvalidArgumentError):
            sweep("l_conv", [1, 2], tsp8_test, tiny_checkpoint)

    def test_unknown_axis(self, tsp8_test, tiny_checkpoint):
        with pytest.raises(InvalidArgumentError):
            sweep("k", [3], tsp8_test, tiny_checkpoint)


class TestFigure:
    def _inputs(self, tsp8_test):
        instance, opt_tour = tsp8_test.records[0]
        probs = np.random.default_rng(0).uniform(size=(8, 8))
        return instance, probs, Tour(range(8)), opt_tour

    def test_well_formed(self, tsp8_test, tmp_path):
        path = tmp_path / "figure.svg"
        export_figure(*self._inputs(tsp8_test), path)
        root = etree.parse(str(path)).getroot()
        groups = root.findall(f"{SVG}g")
        assert [g.get("id") for g in groups] == ["panel-input", "panel-heatmap", "panel-prediction"]
        for group in groups:
            assert len(group.findall(f"{SVG}circle[@class='node']")) == 8
        assert len(groups[1].findall(f"{SVG}line")) == 28

    def test_zero_heatmap_has_no_strokes(self, tsp8_test, tmp_path):
        instance, _, pred, opt = self._inputs(tsp8_test)
        path = tmp_path / "zero.svg"
        export_figure(instance, np.zeros((8, 8)), pred, opt, path)
        heat_panel = etree.parse(str(path)).getroot().find(f"{SVG}g[@id='panel-heatmap']")
        assert heat_panel.findall(f"{SVG}line") == []

    def test_deterministic_bytes(self, tsp8_test, tmp_path):
        export_figure(*self._inputs(tsp8_test), tmp_path / "a.svg")
        export_figure(*self._inputs(tsp8_test), tmp_path / "b.svg")
        assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()

    def test_size_mismatch(self, tsp8_test, tmp_path):
        instance, probs, pred, opt = self._inputs(tsp8_test)
        with pytest.raises(InvalidArgumentError):
            export_figure(instance, probs[:5, :5], pred, opt, tmp_path / "x.svg")

    def test_io_error_names_path(self, tsp8_test, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        target = blocker / "figure.svg"
        with pytest.raises(OSError) as info:
            export_figure(*self._inputs(tsp8_test), target)
        assert str(target) in str(info.value)


@pytest.fixture(scope="module")
def trained(tmp_path_factory):
    out = tmp_path_factory.mktemp("e2e") / "tsp10.ckpt"
    train_set = generate_dataset(10, 10000, seed=1, threads=8)
    val_set = generate_dataset(10, 1000, seed=2, split="val", threads=8)
    config = TrainConfig(epochs=50, subset_per_epoch=10000, batch_size=20, val_interval_epochs=5, seed=1)
    fit(GcnModel(GcnConfig(), seed=1), train_set, val_set, config, str(out), threads=8)
    return GcnModel.load(out), val_set


@pytest.mark.slow
class TestEndToEnd:
    def test_learned_gaps(self, trained):
        model, val_set = trained
        heatmaps = model.heatmaps(val_set.instances)
        greedy = benchmark("model:greedy", val_set, threads=8, heatmaps=heatmaps)
        beam = benchmark("model:beam:128", val_set, threads=8, heatmaps=heatmaps)
        assert greedy.mean_gap_pct <= 5.0
        assert beam.mean_gap_pct <= 2.0
        assert beam.mean_gap_pct <= greedy.mean_gap_pct

    def test_generalization_degrades_off_size(self, trained):
        model, val_set = trained
        tsp20 = generate_dataset(20, 100, seed=3, split="test", max_exact_n=20, threads=8)
        on_size = benchmark("model:greedy", val_set, threads=8, model=model)
        off_size = benchmark("model:greedy", tsp20, threads=8, model=model, max_exact_n=20)
        assert off_size.mean_gap_pct > on_size.mean_gap_pct
