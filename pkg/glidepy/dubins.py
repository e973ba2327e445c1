"""Dubins airplane paths for gliding flight.

Headings are in degrees clockwise from north, positions in feet in a local
east-north frame. Only Circle-Straight-Circle words are generated.
"""
import math
from dataclasses import dataclass, replace

import numpy as np
import pandas as pd

from glidepy.errors import NoCscPath
from glidepy.performance import glide_ratio

WORDS = ("RSR", "RSL", "LSL", "LSR")
# Clockwise turns are positive.
DIRECTIONS = {"R": 1, "L": -1}
ZERO_ARC = 1e-6
POLYLINE_COLUMNS = ["x", "y", "z", "heading", "bank", "segment"]

@dataclass(frozen=True)
class Configuration2D:
	x: float
	y: float
	heading: float

	def __post_init__(self):
		object.__setattr__(self, "heading", float(self.heading) % 360.)

def _forward(heading):
	h = np.radians(heading)
	return np.sin(h), np.cos(h)

def _starboard(heading):
	h = np.radians(heading)
	return np.cos(h), -np.sin(h)

def turn_center(config, radius, direction):
	"""Center of the turn circle of radius `radius` to the left (`L`) or right (`R`) of `config`."""
	sign = DIRECTIONS[direction]
	sx, sy = _starboard(config.heading)
	return (config.x + sign*radius*sx, config.y + sign*radius*sy)

def _arc(heading_from, heading_to, direction):
	arc = DIRECTIONS[direction] * (heading_to - heading_from) % 360.
	if arc > 360. - 1e-9:
		arc = 0.
	return arc

class _Circular:
	"""Shared geometry of turn and spiral segments."""

	def sample(self, s):
		"""Positions and headings at arc lengths `s` from the segment start."""
		s = np.asarray(s, dtype=float)
		sign = DIRECTIONS[self.direction]
		heading = self.start.heading + sign*np.degrees(s / self.radius)
		sx, sy = _starboard(heading)
		x = self.center[0] - sign*self.radius*sx
		y = self.center[1] - sign*self.radius*sy
		return x, y, heading % 360.

class _Linear:

	def sample(self, s):
		s = np.asarray(s, dtype=float)
		fx, fy = _forward(self.start.heading)
		heading = np.full(s.shape, self.start.heading)
		return self.start.x + s*fx, self.start.y + s*fy, heading

	@property
	def end(self):
		fx, fy = _forward(self.start.heading)
		return Configuration2D(self.start.x + self.length*fx, self.start.y + self.length*fy, self.start.heading)

@dataclass(frozen=True)
class Turn(_Circular):
	start: Configuration2D
	center: tuple
	radius: float
	direction: str
	arc: float
	bank: float = 0.
	drag: object = None
	kind = "turn"

	def __post_init__(self):
		if not 0. < self.arc < 360.:
			raise ValueError("Turn arc must lie in (0, 360) degrees, got {}.".format(self.arc))

	@property
	def length(self):
		return self.radius * math.radians(self.arc)

	@property
	def end(self):
		x, y, heading = self.sample(self.length)
		return Configuration2D(float(x), float(y), float(heading))

@dataclass(frozen=True)
class Spiral(_Circular):
	start: Configuration2D
	center: tuple
	radius: float
	direction: str
	turns: int
	bank: float = 0.
	drag: object = None
	kind = "spiral"

	def __post_init__(self):
		if int(self.turns) != self.turns or self.turns < 1:
			raise ValueError("A spiral needs a positive integral number of turns, got {}.".format(self.turns))

	@property
	def length(self):
		return self.turns * 2 * math.pi * self.radius

	@property
	def end(self):
		return self.start

@dataclass(frozen=True)
class Straight(_Linear):
	start: Configuration2D
	length: float
	bank: float = 0.
	drag: object = None
	kind = "straight"

	@property
	def to(self):
		return self.end

@dataclass(frozen=True)
class ExtendedFinal(_Linear):
	start: Configuration2D
	length: float
	bank: float = 0.
	drag: object = None
	kind = "extended_final"

	def __post_init__(self):
		if self.length < 0:
			raise ValueError("Extended final length must be non-negative, got {}.".format(self.length))

@dataclass(frozen=True, eq=False)
class GlidePath:
	segments: tuple
	start_alt: float
	end_alt: float
	polyline: pd.DataFrame

	@property
	def length(self):
		return sum(i.length for i in self.segments)

	def __len__(self):
		return len(self.polyline)

def _csc_geometry(start, goal, radius, word):
	first, last = word[0], word[2]
	s1, s2 = DIRECTIONS[first], DIRECTIONS[last]
	c1 = turn_center(start, radius, first)
	c2 = turn_center(goal, radius, last)
	vx, vy = c2[0] - c1[0], c2[1] - c1[1]
	distance = math.hypot(vx, vy)
	heading_centers = math.degrees(math.atan2(vx, vy))
	if s1 == s2:
		# Coincident circles leave the straight undefined; the mixed word covers the pure arc.
		if distance < 1e-9 * radius:
			return None
		straight = distance
		heading = heading_centers
	else:
		if distance < 2 * radius * (1 - 1e-12):
			return None
		straight = math.sqrt(max(distance**2 - 4 * radius**2, 0.))
		heading = heading_centers - math.degrees(math.atan2(radius * (s2 - s1), straight))
	arc1 = _arc(start.heading, heading, first)
	arc2 = _arc(heading, goal.heading, last)
	return {
		"c1": c1,
		"c2": c2,
		"heading": heading % 360.,
		"straight": straight,
		"arc1": arc1,
		"arc2": arc2,
		"length": radius * math.radians(arc1 + arc2) + straight,
		}

def csc_length(start, goal, radius, word):
	"""Length of one CSC word between two configurations, or None if the word is infeasible."""
	geometry = _csc_geometry(start, goal, radius, word)
	if geometry is None:
		return None
	return geometry["length"]

def shortest_csc(start, goal, radius):
	"""Shortest Circle-Straight-Circle path between two configurations.

	Parameters
	----------
	start : Configuration2D
		Initial position and heading.
	goal : Configuration2D
		Final position and heading.
	radius : float
		Turn radius in feet.

	Returns
	-------
	word : str
		One of `RSR`, `RSL`, `LSL`, `LSR`; equal lengths resolve in that order.
	segments : list
		`Turn` and `Straight` segments; turns with a negligible arc are omitted.
	"""
	if not radius > 0:
		raise ValueError("Turn radius must be positive, got {}.".format(radius))
	candidates = []
	for word in WORDS:
		geometry = _csc_geometry(start, goal, radius, word)
		if geometry is not None:
			candidates.append((word, geometry))
	if not candidates:
		raise NoCscPath("No CSC path from {} to {} with radius {:.1f} ft.".format(start, goal, radius))
	shortest = min(geometry["length"] for word, geometry in candidates)
	word, geometry = next((w, g) for w, g in candidates if g["length"] <= shortest + 1e-9*max(1., shortest))

	segments = []
	config = start
	if geometry["arc1"] >= ZERO_ARC:
		turn = Turn(config, geometry["c1"], radius, word[0], geometry["arc1"])
		segments.append(turn)
	sx, sy = _starboard(geometry["heading"])
	sign = DIRECTIONS[word[0]]
	config = Configuration2D(geometry["c1"][0] - sign*radius*sx, geometry["c1"][1] - sign*radius*sy, geometry["heading"])
	if geometry["straight"] > 1e-9:
		segments.append(Straight(config, geometry["straight"]))
	sign = DIRECTIONS[word[2]]
	config = Configuration2D(geometry["c2"][0] - sign*radius*sx, geometry["c2"][1] - sign*radius*sy, geometry["heading"])
	if geometry["arc2"] >= ZERO_ARC:
		segments.append(Turn(config, geometry["c2"], radius, word[2], geometry["arc2"]))
	return word, segments

def make_spirals(at, radius, direction, turns):
	"""Full 360 degree turns entering and leaving at the configuration `at`."""
	return Spiral(at, turn_center(at, radius, direction), radius, direction, int(turns))

def _stamp(segment, bank, drag):
	if segment.kind in ("turn", "spiral"):
		return replace(segment, bank=float(bank), drag=segment.drag or drag)
	return replace(segment, bank=0., drag=segment.drag or drag)

def glide_loss(segments, model, bank, drag):
	"""Altitude lost along `segments` without discretizing them."""
	return sum(i.length / glide_ratio(model, i.bank, i.drag) for i in (_stamp(j, bank, drag) for j in segments))

def lift_to_glide(segments, model, bank, drag, start_alt,
	step=100.,
	):
	"""Lift a planar path to a gliding descent.

	Turns and spirals descend at the banked glide ratio, straight and extended final segments at the wings level ratio.
	Segments which already carry a drag configuration keep it.

	Parameters
	----------
	segments : list
		Planar segments, e.g. as returned by `shortest_csc`.
	model : glidepy.performance.PerformanceModel
		Aircraft model.
	bank : float
		Bank angle in degrees for turns and spirals.
	drag : glidepy.performance.DragConfig
		Default drag configuration.
	start_alt : float
		Altitude at the start of the first segment, feet.
	step : float, optional
		Maximal arc length between polyline points, feet.

	Returns
	-------
	GlidePath
	"""
	if not step > 0:
		raise ValueError("Discretization step must be positive, got {}.".format(step))
	stamped = tuple(_stamp(i, bank, drag) for i in segments)
	if not stamped:
		return GlidePath((), start_alt, start_alt, pd.DataFrame(columns=POLYLINE_COLUMNS))

	first = stamped[0]
	columns = {i: [] for i in POLYLINE_COLUMNS}
	columns["x"].append([first.start.x])
	columns["y"].append([first.start.y])
	columns["z"].append([start_alt])
	columns["heading"].append([first.start.heading])
	columns["bank"].append([first.bank])
	columns["segment"].append([first.kind])
	altitude = start_alt
	for segment in stamped:
		ratio = glide_ratio(model, segment.bank, segment.drag)
		n = max(1, int(math.ceil(segment.length / step - 1e-9)))
		s = segment.length * np.arange(1, n+1) / n
		x, y, heading = segment.sample(s)
		columns["x"].append(x)
		columns["y"].append(y)
		columns["z"].append(altitude - s/ratio)
		columns["heading"].append(heading)
		columns["bank"].append(np.full(n, segment.bank))
		columns["segment"].append([segment.kind]*n)
		altitude -= segment.length / ratio
	polyline = pd.DataFrame({i: np.concatenate([np.asarray(j) for j in columns[i]]) for i in POLYLINE_COLUMNS})
	return GlidePath(stamped, start_alt, altitude, polyline)
