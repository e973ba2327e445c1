import numpy as np
import pytest

from glidepy.dddas import LoopConfig, LoopEvent, format_event, replay, synthesize_stream
from glidepy.estimation import EstimatorConfig, GlideEstimate, SensorSample, estimate
from glidepy.geodesy import GeoPosition
from glidepy.metrics import CandidateSet
from glidepy.performance import CLEAN, glide_ratio, refine_baseline, turn_radius
from glidepy.planner import altitude_tolerance, generate

@pytest.fixture
def fast_glide(a320, lga, straight_in):
	"""Straight-in glide flown at 19:1 while the aircraft profile says 17.25:1."""
	model = a320.with_baseline(19.)
	result = generate(straight_in(lga["LGA22"], 60000, model))
	return synthesize_stream(result, model.best_glide_speed, model)

def test_synthesized_stream(a320, lga, straight_in):
	result = generate(straight_in(lga["LGA22"], 60000, a320))
	stream = synthesize_stream(result, 225., a320)
	t = np.array([i.t for i in stream])
	assert np.allclose(np.diff(t), 1.)
	assert len(stream) == int(60000 // (225*1.68781)) + 1
	true_alt = np.array([i.true_alt for i in stream])
	assert true_alt[0] == pytest.approx(result.trajectory.start_alt)
	assert np.all(np.diff(true_alt) < 0)
	assert all(i.true_alt - i.pressure_alt == pytest.approx(264.) for i in stream)
	assert all(i.bank == 0 and i.drag == CLEAN for i in stream)
	start = result.trajectory.segments[0].start
	assert all(abs((i.heading - start.heading + 180) % 360 - 180) < 1e-6 for i in stream)

def test_synthesized_spirals(a320, lga, straight_in):
	loss = 2*np.pi*turn_radius(45., 225.) / glide_ratio(a320, 45.)
	req = straight_in(lga["LGA22"], 30000, a320, extra=loss)
	result = generate(req)
	assert result.spirals == 1
	stream = synthesize_stream(result, 225., a320, pressure_offset=0., start_t=100.)
	assert stream[0].t == 100.
	assert {i.bank for i in stream} == {0., 45.}
	assert all(i.true_alt == i.pressure_alt for i in stream)
	assert stream[-1].true_alt >= req.runway.elevation - altitude_tolerance(req) - 1e-6

def test_estimate_recovers_glide_ratio(fast_glide):
	result = estimate(fast_glide, EstimatorConfig())
	assert result.g_hat == pytest.approx(19., rel=0.02)

def test_single_refine(a320, lga, fast_glide):
	events = replay(fast_glide, a320, LoopConfig(runways=(lga["LGA22"],), banks=(45.,)))
	kinds = [i.kind for i in events]
	assert kinds.count("refine") == 1
	ix = kinds.index("refine")
	refine, replan = events[ix], events[ix+1]
	assert replan.kind == "replan"
	assert refine.t == replan.t
	old, new = refine.payload
	assert old == 17.25
	assert new == pytest.approx(19., rel=0.02)
	assert [(result.runway.id, result.bank) for result, report in replan.payload] == [("LGA22", 45.)]
	assert np.all(np.diff([i.t for i in events]) >= 0)

	after = [i.payload for i in events[ix+2:] if i.kind == "estimate"]
	assert after
	for e in after:
		assert abs(refine_baseline(e.g_hat, e.bank, e.drag) - new) / new <= 0.05

def test_no_refine_at_the_planned_ratio(a320, lga, straight_in):
	result = generate(straight_in(lga["LGA22"], 60000, a320))
	events = replay(synthesize_stream(result, 225., a320), a320, LoopConfig(runways=(lga["LGA22"],)))
	assert events
	assert {i.kind for i in events} == {"estimate"}

def test_climb_has_no_events(a320):
	stream = [SensorSample(float(k), GeoPosition(40.8, -73.9), 2800. + 20*k, 3064. + 20*k, 0., 200.) for k in range(30)]
	assert replay(stream, a320, LoopConfig()) == []

def test_replan_without_runways(a320, fast_glide):
	events = replay(fast_glide, a320, LoopConfig())
	replans = [i for i in events if i.kind == "replan"]
	assert len(replans) == 1
	assert len(replans[0].payload) == 0

def test_replay_is_deterministic(a320, lga, fast_glide):
	cfg = LoopConfig(runways=(lga["LGA22"], lga["LGA13"]))
	first = [format_event(i) for i in replay(fast_glide, a320, cfg)]
	second = [format_event(i) for i in replay(fast_glide, a320, cfg, progress=True)]
	assert first == second
	threaded = [format_event(i) for i in replay(fast_glide, a320, LoopConfig(runways=cfg.runways, jobs=4))]
	assert first == threaded

def test_format_event():
	estimate = GlideEstimate(19., 0., CLEAN, (2., 12.))
	assert format_event(LoopEvent(12., "estimate", estimate)) == "t=12.0 estimate g_hat=19.00 bank=0.0 drag=clean window=[2.0, 12.0]"
	assert format_event(LoopEvent(12., "refine", (17.25, 19.))) == "t=12.0 refine g0=17.25 -> 19.00"
	assert format_event(LoopEvent(12., "replan", CandidateSet())) == "t=12.0 replan candidates=0"

def test_replan_line(a320, lga, fast_glide):
	events = replay(fast_glide, a320, LoopConfig(runways=(lga["LGA22"],), banks=(45.,)))
	line = format_event([i for i in events if i.kind == "replan"][0])
	assert line.endswith("replan candidates=1 LGA22@45 u=1.00 rank=1")

def test_loop_validation():
	with pytest.raises(ValueError):
		LoopConfig(replan_threshold=0)
	with pytest.raises(ValueError):
		LoopEvent(0., "land", None)
