import numpy as np
import pytest

from core.errors import GridError, ShapeMismatch
from Module_9_Metrics import PHANTOM_KINDS, PSNR_CAP, dice, make_phantom, mse, psnr, rel_err


def test_psnr_known_value():
    ref = np.zeros((4, 4))
    assert psnr(np.full((4, 4), 0.1), ref) == pytest.approx(20.0)
    assert psnr(ref, ref) == PSNR_CAP


def test_psnr_is_symmetric(rng):
    a, b = rng.random((2, 8, 8))
    assert psnr(a, b) == psnr(b, a)
    with pytest.raises(GridError):
        psnr(a, b, peak=0.0)


def test_mse_and_relative_error():
    ref = np.array([[3.0, 4.0]])
    assert mse(ref, ref) == 0.0
    assert rel_err(np.zeros((1, 2)), ref) == pytest.approx(1.0)
    assert rel_err(np.zeros((1, 2)), np.zeros((1, 2))) == 0.0
    with pytest.raises(ShapeMismatch):
        mse(np.zeros((2, 2)), np.zeros((2, 3)))


def test_dice():
    a = np.array([[1, 1, 0, 0]])
    b = np.array([[1, 0, 0, 0]])
    assert dice(a, b) == pytest.approx(2 / 3)
    assert dice(a, b) == dice(b, a)
    assert dice(np.zeros((2, 2)), np.zeros((2, 2))) == 1.0
    with pytest.raises(GridError):
        dice(np.full((2, 2), 0.5), np.zeros((2, 2)))


def test_phantoms():
    for kind in PHANTOM_KINDS:
        image = make_phantom(kind, 32).data
        assert image.shape == (32, 32)
        assert np.all(np.isfinite(image))
    disk = make_phantom("disk", 64).data
    assert set(np.unique(disk)) == {0.0, 1.0}
    assert disk.mean() == pytest.approx(np.pi * 0.4 ** 2, abs=0.02)
    with pytest.raises(GridError):
        make_phantom("disk", 8)
    with pytest.raises(GridError):
        make_phantom("banana", 32)
