"""Offline replay of the sense, refine and replan loop over a recorded stream."""
import logging
from dataclasses import dataclass, field

import numpy as np
from tqdm import tqdm

from glidepy.estimation import KT_TO_FPS, EstimatorConfig, SensorSample, resample, stable_windows
from glidepy.geodesy import GeoPosition, unproject_arrays
from glidepy.metrics import CandidateSet, rank
from glidepy.performance import glide_ratio, refine_baseline
from glidepy.planner import PLANNER_BANKS, generate_all

logger = logging.getLogger(__name__)

EVENT_KINDS = ("estimate", "refine", "replan")

@dataclass(frozen=True)
class LoopConfig:
	"""Replay settings.

	Parameters
	----------
	estimator : glidepy.estimation.EstimatorConfig
		Stable window detection.
	replan_threshold : float
		Relative deviation of the refined baseline glide ratio which triggers a replan.
	runways : tuple of glidepy.planner.RunwaySpec
		Candidate runways for replans.
	banks : tuple of float
		Candidate bank angles for replans.
	search_step, step : float
		Planner settings, see `glidepy.planner.PlanRequest`.
	dirty : glidepy.performance.DragConfig, optional
		Extended final configuration for replans.
	jobs : int
		Planning threads per replan.
	"""
	estimator: EstimatorConfig = field(default_factory=EstimatorConfig)
	replan_threshold: float = 0.05
	runways: tuple = ()
	banks: tuple = PLANNER_BANKS
	search_step: float = 50.
	step: float = 100.
	dirty: object = None
	jobs: int = 1

	def __post_init__(self):
		if not self.replan_threshold > 0:
			raise ValueError("Replan threshold must be positive, got {}.".format(self.replan_threshold))

@dataclass(frozen=True, eq=False)
class LoopEvent:
	t: float
	kind: str
	payload: object

	def __post_init__(self):
		if self.kind not in EVENT_KINDS:
			raise ValueError("Unknown event kind `{}`.".format(self.kind))

def _replan(df, t, model, cfg):
	if not cfg.runways:
		return CandidateSet(())
	row = df[np.isclose(df["t"], t)].iloc[-1]
	start = GeoPosition(float(row["lat"]), float(row["lon"]), float(row["true_alt"]))
	results = generate_all(start, float(row["heading"]), cfg.runways, cfg.banks, model,
		search_step=cfg.search_step,
		dirty=cfg.dirty,
		step=cfg.step,
		jobs=cfg.jobs,
		)
	return rank(results)

def replay(stream, initial, cfg,
	progress=False,
	):
	"""Replay a sensor stream through estimation, refinement and replanning.

	Parameters
	----------
	stream : list of glidepy.estimation.SensorSample or pandas.DataFrame
		Recorded samples in time order.
	initial : glidepy.performance.PerformanceModel
		Model at the start of the replay.
	cfg : LoopConfig
		Loop settings.
	progress : bool, optional
		Show a progress bar over the stable windows.

	Returns
	-------
	list of LoopEvent
		Time ordered timeline; every `refine` event is followed by a `replan` event at the same time.
	"""
	df = resample(stream)
	model = initial
	last_refine = -np.inf
	events = []
	windows = stable_windows(df, cfg.estimator)
	for estimate in tqdm(windows, disable=not progress, desc="stable windows"):
		t = estimate.window[1]
		events.append(LoopEvent(t, "estimate", estimate))
		refined = refine_baseline(estimate.g_hat, estimate.bank, estimate.drag)
		deviation = abs(refined - model.g0) / model.g0
		if deviation > cfg.replan_threshold and estimate.window[0] > last_refine:
			logger.info("Refining baseline glide ratio at t=%g: %.2f -> %.2f", t, model.g0, refined)
			events.append(LoopEvent(t, "refine", (model.g0, refined)))
			model = model.with_baseline(refined)
			last_refine = t
			events.append(LoopEvent(t, "replan", _replan(df, t, model, cfg)))
	return events

def synthesize_stream(result, airspeed, model,
	pressure_offset=264.,
	start_t=0.,
	rate=1.,
	):
	"""Fly a planned trajectory at constant airspeed and record it as a sensor stream.

	Parameters
	----------
	result : glidepy.planner.PlanResult
		Trajectory to fly.
	airspeed : float
		Airspeed in knots.
	model : glidepy.performance.PerformanceModel
		Model which sets the descent on every segment.
	pressure_offset : float, optional
		True altitude minus pressure altitude in feet.
	start_t : float, optional
		Time of the first sample in seconds.
	rate : float, optional
		Sampling rate in Hz.

	Returns
	-------
	list of glidepy.estimation.SensorSample
	"""
	segments = result.trajectory.segments
	if not segments:
		return []
	lengths = np.array([i.length for i in segments])
	bounds = np.concatenate([[0.], np.cumsum(lengths)])
	losses = np.array([i.length / glide_ratio(model, i.bank, i.drag) for i in segments])
	entry_alt = result.trajectory.start_alt - np.concatenate([[0.], np.cumsum(losses)])

	s = np.arange(0., bounds[-1] + 1e-9, airspeed * KT_TO_FPS / rate)
	owner = np.clip(np.searchsorted(bounds, s, side="right") - 1, 0, len(segments)-1)
	x, y, z, heading = (np.empty_like(s) for i in range(4))
	for ix, segment in enumerate(segments):
		mask = owner == ix
		local = s[mask] - bounds[ix]
		x[mask], y[mask], heading[mask] = segment.sample(local)
		z[mask] = entry_alt[ix] - local / glide_ratio(model, segment.bank, segment.drag)
	lat, lon = unproject_arrays(result.frame, x, y)

	stream = []
	for k in range(len(s)):
		segment = segments[owner[k]]
		stream.append(SensorSample(
			t=start_t + k/rate,
			position=GeoPosition(float(lat[k]), float(lon[k]), float(z[k])),
			pressure_alt=float(z[k]) - pressure_offset,
			true_alt=float(z[k]),
			heading=float(heading[k]),
			airspeed=float(airspeed),
			bank=segment.bank,
			drag=segment.drag,
			))
	return stream

def format_event(event):
	"""Render one event as a single deterministic line."""
	head = "t={:.1f} {}".format(event.t, event.kind)
	if event.kind == "estimate":
		estimate = event.payload
		return "{} g_hat={:.2f} bank={:.1f} drag={} window=[{:.1f}, {:.1f}]".format(
			head, estimate.g_hat, estimate.bank, estimate.drag.name, *estimate.window)
	if event.kind == "refine":
		return "{} g0={:.2f} -> {:.2f}".format(head, *event.payload)
	candidates = ["{}@{:g} u={:.2f} rank={}".format(result.runway.id, result.bank, report.utility, report.rank)
		for result, report in event.payload]
	return "{} candidates={} {}".format(head, len(candidates), "; ".join(candidates)).rstrip()
