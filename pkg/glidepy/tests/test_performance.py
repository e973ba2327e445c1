import math

import hypothesis
import numpy as np
import pytest
from hypothesis import strategies as st

from glidepy.errors import InfiniteRadius
from glidepy.performance import CLEAN, DragConfig, PerformanceModel, glide_ratio, performance_table, refine_baseline, turn_radius

# Printed tables; some ratios differ from the truncated values in the last digit.
A320_RATIOS = [17.25, 16.98, 16.21, 14.92, 12.19, 8.62]
A320_RADII = [25430, 12319, 7766, 4484, 2588]
C172_RATIOS = [9., 8.86, 8.45, 7.79, 6.36, 4.5]
C172_RADII = [2122, 1028, 648, 374, 216]

def test_glide_ratio_examples():
	assert glide_ratio(PerformanceModel(17.25), 0) == 17.25
	assert glide_ratio(PerformanceModel(17.25), 45) == pytest.approx(12.19, abs=0.01)
	assert glide_ratio(PerformanceModel(9.), 30) == pytest.approx(7.79, abs=0.01)
	assert glide_ratio(PerformanceModel(17.25), 60) == pytest.approx(8.62, abs=0.01)

def test_turn_radius_examples():
	assert turn_radius(45, 225) == pytest.approx(4484, abs=1)
	assert turn_radius(30, 225) == pytest.approx(7766, abs=1)
	assert turn_radius(45, 65) == pytest.approx(374, abs=1)
	with pytest.raises(InfiniteRadius):
		turn_radius(0, 225)

def test_refine_examples():
	assert refine_baseline(12.19, 45) == pytest.approx(17.24, abs=0.02)
	assert refine_baseline(13.3, 0) == 13.3
	assert refine_baseline(4.5, 60) == pytest.approx(9.)

@pytest.mark.parametrize("profile, ratios, radii", [
	("a320", A320_RATIOS, A320_RADII),
	("c172", C172_RATIOS, C172_RADII),
	])
def test_tables(profile, ratios, radii, request):
	df = performance_table(request.getfixturevalue(profile))
	assert list(df["bank"]) == [0, 10, 20, 30, 45, 60]
	assert np.all(np.abs(df["glide_ratio"].to_numpy() - ratios) <= 0.01 + 1e-9)
	assert np.isinf(df["turn_radius"].iloc[0])
	assert np.all(np.abs(df["turn_radius"].to_numpy()[1:] - radii) <= 1)

def test_table_truncates():
	df = performance_table(PerformanceModel(17.25))
	assert df["glide_ratio"].iloc[4] == 12.19
	assert df["turn_radius"].iloc[3] == 7766

@hypothesis.given(st.floats(1.01, 59.99), st.floats(0, 80), st.floats(0.01, 1))
def test_refine_round_trip(g0, bank, delta):
	cfg = DragConfig("dirty", delta)
	m = PerformanceModel(g0, {"dirty": delta})
	assert refine_baseline(glide_ratio(m, bank, cfg), bank, cfg) == pytest.approx(g0, rel=1e-9)

@hypothesis.given(st.floats(1, 85), st.floats(1, 85), st.floats(30, 400))
def test_radius_decreases_with_bank(a, b, speed):
	hypothesis.assume(abs(a - b) > 1e-6)
	lo, hi = sorted([a, b])
	assert turn_radius(lo, speed) > turn_radius(hi, speed)
	assert turn_radius(lo, speed*1.1) > turn_radius(lo, speed)

def test_glide_ratio_decreases_with_bank():
	m = PerformanceModel(17.25)
	ratios = [glide_ratio(m, bank) for bank in np.linspace(0, 89, 50)]
	assert np.all(np.diff(ratios) < 0)

def test_model_validation():
	with pytest.raises(ValueError):
		PerformanceModel(0)
	with pytest.raises(ValueError):
		PerformanceModel(17.25, {"clean": 0.9})
	with pytest.raises(ValueError):
		PerformanceModel(17.25, {"dirty": 1.5})
	with pytest.raises(ValueError):
		glide_ratio(PerformanceModel(17.25), 90)
	with pytest.raises(KeyError):
		PerformanceModel(17.25).drag("flaps")

def test_model_is_not_mutated(a320):
	refined = a320.with_baseline(19.)
	assert a320.g0 == 17.25
	assert refined.g0 == 19.
	assert refined.drag("dirty").delta == a320.drag("dirty").delta
	assert a320.clean == CLEAN
	assert glide_ratio(a320, 0, a320.drag("dirty")) == pytest.approx(9.)
	assert math.isclose(a320.best_glide_speed, 225)
