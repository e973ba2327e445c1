"""Glide trajectory generation to one or many runways.

A trajectory is a Dubins airplane path, followed by an integral number of
spiral turns on the final Dubins circle, followed by an extended final approach
flown in the dirty configuration.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from scipy.optimize import brentq

from glidepy.dubins import Configuration2D, ExtendedFinal, glide_loss, lift_to_glide, make_spirals, shortest_csc
from glidepy.errors import NoCscPath, SearchExhausted, Unreachable
from glidepy.geodesy import GeoPosition, LocalFrame, project
from glidepy.performance import CLEAN, DragConfig, glide_ratio, turn_radius
from glidepy.utils import steps

logger = logging.getLogger(__name__)

PLANNER_BANKS = (20., 30., 45.)

@dataclass(frozen=True)
class RunwaySpec:
	id: str
	threshold: GeoPosition
	true_heading: float
	elevation: float

	def __post_init__(self):
		if not 0. <= self.true_heading < 360.:
			raise ValueError("Runway {} heading must lie in [0, 360), got {}.".format(self.id, self.true_heading))

	@property
	def frame(self):
		return LocalFrame(GeoPosition(self.threshold.lat, self.threshold.lon, self.elevation))

@dataclass(frozen=True, eq=False)
class PlanRequest:
	"""One planning problem: an aircraft state, a runway and a bank angle.

	Parameters
	----------
	start : glidepy.geodesy.GeoPosition
		Aircraft position, `alt` is the true altitude in feet.
	heading : float
		Aircraft heading in degrees, used as given.
	runway : RunwaySpec
		Target runway.
	bank : float
		Bank angle for all turns, one of 20, 30 and 45 degrees.
	model : glidepy.performance.PerformanceModel
		Aircraft model.
	search_step : float, optional
		Increment of the extended final search in feet.
	dirty : glidepy.performance.DragConfig, optional
		Configuration flown on the extended final. Defaults to the `dirty` entry of the model's drag table, or clean if there is none.
	step : float, optional
		Polyline discretization in feet.
	"""
	start: GeoPosition
	heading: float
	runway: RunwaySpec
	bank: float
	model: object
	search_step: float = 50.
	dirty: DragConfig = None
	step: float = 100.

	def __post_init__(self):
		if float(self.bank) not in PLANNER_BANKS:
			raise ValueError("Bank angle must be one of {}, got {}.".format(PLANNER_BANKS, self.bank))
		if not self.search_step > 0:
			raise ValueError("Search step must be positive, got {}.".format(self.search_step))
		if not self.step > 0:
			raise ValueError("Discretization step must be positive, got {}.".format(self.step))
		if self.dirty is None:
			dirty = self.model.drag("dirty") if "dirty" in self.model.drag_table else CLEAN
			object.__setattr__(self, "dirty", dirty)

@dataclass(frozen=True, eq=False)
class PlanResult:
	trajectory: object
	word: str
	spirals: int
	extended_final: float
	classification: str
	runway: RunwaySpec
	bank: float
	frame: LocalFrame

class _Budget:
	"""Radius, glide ratios and altitude bookkeeping shared by one request."""

	def __init__(self, req):
		self.req = req
		self.frame = req.runway.frame
		origin = project(self.frame, req.start)
		self.start = Configuration2D(origin.x, origin.y, req.heading)
		self.start_alt = req.start.alt
		self.radius = turn_radius(req.bank, req.model.best_glide_speed)
		self.clean_ratio = glide_ratio(req.model, req.bank, req.model.clean)
		self.straight_ratio = glide_ratio(req.model, 0, req.model.clean)
		self.dirty_ratio = glide_ratio(req.model, 0, req.dirty)
		self.loss_per_spiral = 2 * math.pi * self.radius / self.clean_ratio
		self.tolerance = req.search_step / (2 * self.dirty_ratio)
		self.bound = 2 * math.pi * self.radius * self.dirty_ratio / self.clean_ratio
		# Past this length even a straight glide from the start to the final approach fix ends below the field.
		height = self.start_alt - req.runway.elevation + self.tolerance
		offset = math.hypot(self.start.x, self.start.y)
		self.horizon = (height + offset/self.straight_ratio) / (1/self.straight_ratio + 1/self.dirty_ratio)

	def goal(self, e=0.):
		heading = self.req.runway.true_heading
		h = math.radians(heading)
		return Configuration2D(-e*math.sin(h), -e*math.cos(h), heading)

	def excess(self, segments, e=0.):
		"""Altitude left above the field after the Dubins path and an extended final of `e` feet."""
		loss = glide_loss(segments, self.req.model, self.req.bank, self.req.model.clean)
		return self.start_alt - loss - e/self.dirty_ratio - self.req.runway.elevation

	def spirals(self, excess):
		return max(0, int(math.floor((excess + self.tolerance) / self.loss_per_spiral)))

	def closes(self, excess):
		"""Whether whole spirals leave no more than the tolerance above or below the field."""
		return excess >= -self.tolerance and excess - self.spirals(excess)*self.loss_per_spiral <= self.tolerance

	def retarget(self, e):
		"""Dubins path to the point `e` feet before the threshold and the altitude left after it."""
		word, dubins = shortest_csc(self.start, self.goal(e), self.radius)
		return word, dubins, self.excess(dubins, e)

def altitude_tolerance(req):
	"""Half the altitude lost over one search step on the dirty glide."""
	return _Budget(req).tolerance

def extended_final_bound(req):
	"""One spiral's worth of altitude on the dirty glide, as an extended final length.

	Extended finals stay below this length whenever moving the final approach fix
	back does not shorten the Dubins path. Straight in, every foot of extended
	final also shortens the clean glide, and longer finals are needed.
	"""
	return _Budget(req).bound

def reachable(req):
	"""Whether the Dubins path alone reaches the threshold no lower than the altitude tolerance allows."""
	budget = _Budget(req)
	try:
		word, segments = shortest_csc(budget.start, budget.goal(), budget.radius)
	except NoCscPath:
		return False
	return budget.excess(segments) >= -budget.tolerance

def _compose(budget, word, dubins, spirals, e):
	req = budget.req
	goal = budget.goal(e)
	segments = list(dubins)
	if spirals:
		segments.append(make_spirals(goal, budget.radius, word[2], spirals))
	if e > 0:
		segments.append(ExtendedFinal(goal, e, drag=req.dirty))
	trajectory = lift_to_glide(segments, req.model, req.bank, req.model.clean, budget.start_alt, step=req.step)
	classification = "low" if spirals == 0 and e == 0 else "high"
	logger.debug("%s@%g: %s, %d spirals, extended final %.0f ft, end altitude %.1f ft",
		req.runway.id, req.bank, word, spirals, e, trajectory.end_alt)
	return PlanResult(trajectory, word, spirals, float(e), classification, req.runway, float(req.bank), budget.frame)

def _between(budget, before, after):
	"""Extended final between two search steps which jumped over a whole number of spirals.

	Returns `(e, word, dubins, excess)`, or None.
	"""
	(e0, excess0), (e1, excess1) = before, after
	lo, hi = sorted((excess0, excess1))
	first = max(0, int(math.ceil((lo - budget.tolerance) / budget.loss_per_spiral)))
	last = int(math.floor((hi + budget.tolerance) / budget.loss_per_spiral))
	# Nearest altitude target along the search first.
	for spirals in sorted(range(first, last+1), key=lambda k: abs(excess0 - k*budget.loss_per_spiral)):
		target = spirals * budget.loss_per_spiral
		if (excess0 - target) * (excess1 - target) >= 0:
			continue
		try:
			e = brentq(lambda e: budget.retarget(e)[2] - target, e0, e1, xtol=1e-3)
			word, dubins, excess = budget.retarget(e)
		except (ValueError, RuntimeError, NoCscPath):
			continue
		if abs(excess - target) <= budget.tolerance:
			return e, word, dubins, excess
	return None

def generate(req):
	"""Plan a glide trajectory to the runway threshold.

	The Dubins path to the threshold is tried first. Altitude left over is spent
	in full spirals, and what remains below one spiral's worth is absorbed by an
	extended final, searched in multiples of `req.search_step`. When the Dubins
	path changes so much between two steps that the altitude left jumps over the
	tolerance band, the length in between is found by root finding.

	Parameters
	----------
	req : PlanRequest

	Returns
	-------
	PlanResult

	Raises
	------
	Unreachable
		The Dubins path ends below the field.
	NoCscPath
		Degenerate start and goal geometry.
	SearchExhausted
		No extended final closes the altitude budget before even a straight glide would end below the field.
	"""
	budget = _Budget(req)
	word, dubins = shortest_csc(budget.start, budget.goal(), budget.radius)
	excess = budget.excess(dubins)
	if excess < -budget.tolerance:
		raise Unreachable("{}@{:g}: {:.0f} ft short of the field.".format(req.runway.id, req.bank, -excess))
	if budget.closes(excess):
		return _compose(budget, word, dubins, budget.spirals(excess), 0.)

	before = (0., excess)
	for e in steps(req.search_step, budget.horizon + req.search_step, req.search_step):
		try:
			word, dubins, excess = budget.retarget(e)
		except NoCscPath:
			continue
		if budget.closes(excess):
			return _compose(budget, word, dubins, budget.spirals(excess), e)
		found = _between(budget, before, (e, excess))
		if found is not None:
			e, word, dubins, excess = found
			return _compose(budget, word, dubins, budget.spirals(excess), e)
		before = (e, excess)
	raise SearchExhausted("{}@{:g}: no extended final up to {:.0f} ft closes the altitude budget.".format(
		req.runway.id, req.bank, budget.horizon))

def generate_all(start, heading, runways, banks, model,
	search_step=50.,
	dirty=None,
	step=100.,
	jobs=1,
	):
	"""Plan every runway and bank combination.

	Parameters
	----------
	start : glidepy.geodesy.GeoPosition
		Aircraft position and true altitude.
	heading : float
		Aircraft heading in degrees.
	runways : list of RunwaySpec
		Candidate runways.
	banks : list of float
		Candidate bank angles.
	model : glidepy.performance.PerformanceModel
		Aircraft model.
	search_step : float, optional
		Extended final search increment in feet.
	dirty : glidepy.performance.DragConfig, optional
		Extended final configuration, see `PlanRequest`.
	step : float, optional
		Polyline discretization in feet.
	jobs : int, optional
		Number of planning threads; results are returned in the same order for any value.

	Returns
	-------
	list of PlanResult
		Reachable candidates ordered by runway id, then bank angle.
	"""
	requests = [
		PlanRequest(start, heading, runway, bank, model, search_step=search_step, dirty=dirty, step=step)
		for runway in sorted(runways, key=lambda i: i.id)
		for bank in sorted(banks)
		]

	def attempt(req):
		try:
			return generate(req)
		except Unreachable as e:
			logger.debug("%s", e)
		except (SearchExhausted, NoCscPath) as e:
			logger.warning("Dropping candidate %s@%g: %s", req.runway.id, req.bank, e)
		return None

	if jobs > 1 and len(requests) > 1:
		with ThreadPoolExecutor(max_workers=jobs) as pool:
			outcomes = list(pool.map(attempt, requests))
	else:
		outcomes = [attempt(i) for i in requests]
	return [i for i in outcomes if i is not None]
