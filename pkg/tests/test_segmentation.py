import dataclasses
import importlib

import numpy as np
import pytest

from core.errors import SegmentationError
from Module_1_Grid import NoiseSpec, add_noise
from Module_1_Grid.differential import gradient
from Module_3_Convex.norms import mixed_norm
from Module_8_Segmentation import ChanVeseSegmenter, chan_vese, relaxed_energy, solve_relaxed, two_means
from Module_9_Metrics import dice, make_phantom, two_phase_disk_mask


def test_two_means_orders_constants():
    y = np.array([0.1, 0.12, 0.9, 0.88])
    c1, c2 = two_means(y)
    assert c1 == pytest.approx(0.89)
    assert c2 == pytest.approx(0.11)


def test_halves_are_segmented_exactly(logger):
    y = np.full((16, 16), 0.2)
    y[:, 8:] = 0.8
    result = ChanVeseSegmenter(logger).run(y, alpha=0.2, c_init=(0.2, 0.8))
    expected = np.zeros((16, 16), dtype=bool)
    expected[:, :8] = True
    assert dice(result.mask, expected) == 1.0
    assert not result.degenerate
    assert np.all(np.diff(result.energy_history) <= 1e-9 * max(1.0, result.energy_history[0]))
    assert result.energy_increases == []


@pytest.mark.slow
def test_noisy_two_phase_disk(logger):
    clean = make_phantom("two_phase_disk", 64).data
    y = add_noise(clean, NoiseSpec("gaussian", 0.1, 7))
    result = ChanVeseSegmenter(logger).run(y, alpha=0.2)
    assert dice(result.mask, two_phase_disk_mask(64)) >= 0.99
    assert result.c1 > result.c2
    assert np.all(np.diff(result.energy_history) <= 1e-9 * max(1.0, abs(result.energy_history[0])))


def test_constant_image_is_degenerate(logger):
    result = chan_vese(np.full((16, 16), 0.3), alpha=0.2, logger=logger)
    assert result.degenerate
    assert np.all(result.v == 0.5)


def test_relaxed_energy_of_exact_partition():
    y = np.zeros((4, 4))
    y[:, 2:] = 1.0
    v = y.copy()
    assert relaxed_energy(v, y, 1.0, 0.0, alpha=0.5) == pytest.approx(0.5 * 4)


def test_parameter_validation(logger):
    segmenter = ChanVeseSegmenter(logger)
    with pytest.raises(SegmentationError):
        segmenter.run(np.zeros((4, 4)), alpha=0.0)
    with pytest.raises(SegmentationError):
        segmenter.run(np.zeros((4, 4)), alpha=0.1, threshold=1.0)
    with pytest.raises(SegmentationError):
        segmenter.run(np.array([[np.nan, 0.0]]), alpha=0.1)


def noisy_halves(size=24, level=0.05, seed=3):
    y = np.full((size, size), 0.3)
    y[:, size // 2:] = 0.7
    return add_noise(y, NoiseSpec("gaussian", level, seed))


def test_constants_are_region_means_after_each_round(logger):
    y = noisy_halves()
    segmenter = ChanVeseSegmenter(logger)
    full = segmenter.run(y, alpha=0.2, outer_iters=4, c_init=(0.25, 0.75))
    assert len(full.constants_history) == full.rounds + 1
    for rounds in range(1, 4):
        result = segmenter.run(y, alpha=0.2, outer_iters=rounds, c_init=(0.25, 0.75))
        assert not result.degenerate
        assert result.c1 == float(np.mean(y[result.mask]))
        assert result.c2 == float(np.mean(y[~result.mask]))
        assert result.constants_history[-1] == (result.c1, result.c2)
        assert result.constants_history == full.constants_history[:len(result.constants_history)]


def test_energy_increase_is_reported(file_logger):
    segmenter = ChanVeseSegmenter(file_logger, run_id="cv")
    increases = []
    segmenter._check_energy("relaxed_solve", 2, 1.0, 1.0 + 1e-12, increases)
    assert increases == []
    segmenter._check_energy("constant_update", 3, 1.0, 1.5, increases)
    assert increases == [{'round': 3, 'step': 'constant_update', 'before': 1.0, 'after': 1.5}]
    event_log = file_logger.base_dir / "Solver_Logs" / "cv_events.log"
    assert "ENERGY_INCREASE EVENT" in event_log.read_text(encoding="utf-8")


@pytest.mark.parametrize("name", ["halves", "disk", "rectangles"])
def test_doubling_alpha_does_not_increase_tv(name, logger):
    if name == "halves":
        y = noisy_halves(size=16)
    else:
        y = add_noise(make_phantom(name, 16).data, NoiseSpec("gaussian", 0.05, 11))
    c1, c2 = two_means(y)
    values = []
    for alpha in (0.1, 0.2, 0.4):
        v, _ = solve_relaxed(y, c1, c2, alpha, logger=logger)
        values.append(mixed_norm(gradient(v), "iso"))
    for smaller, larger in zip(values, values[1:]):
        assert larger <= smaller + 1e-4 * max(1.0, smaller)


def test_relaxed_iterates_stay_in_unit_interval(logger, monkeypatch):
    module = importlib.import_module("Module_8_Segmentation.chan_vese")
    original = module._data_functional
    iterates = []

    def recording(f):
        H = original(f)
        prox = H.prox

        def recorded(w, tau):
            out = prox(w, tau)
            iterates.append(out)
            return out

        return dataclasses.replace(H, prox=recorded)

    monkeypatch.setattr(module, "_data_functional", recording)
    y = noisy_halves(size=16, level=0.2)
    chan_vese(y, alpha=0.1, outer_iters=2, logger=logger)
    assert len(iterates) > 2
    assert all(v.min() >= 0.0 and v.max() <= 1.0 for v in iterates)
