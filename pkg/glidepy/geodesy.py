import math
from dataclasses import dataclass

import numpy as np

from glidepy.errors import OutOfFrameRange

# Feet per degree of latitude on a spherical earth (60.04 NM per degree).
FEET_PER_DEGREE = 364000.
# Flat-earth validity, degrees of latitude from the frame origin.
MAX_LATITUDE_OFFSET = 2.

@dataclass(frozen=True)
class GeoPosition:
	lat: float
	lon: float
	alt: float = 0.

	def __post_init__(self):
		if not -90. <= self.lat <= 90.:
			raise ValueError("Latitude {} is outside of [-90, 90].".format(self.lat))
		if not -180. <= self.lon <= 180.:
			raise ValueError("Longitude {} is outside of [-180, 180].".format(self.lon))

@dataclass(frozen=True)
class LocalPoint:
	x: float
	y: float
	z: float = 0.

	def __post_init__(self):
		if not all(math.isfinite(i) for i in (self.x, self.y, self.z)):
			raise ValueError("Local point components must be finite, got {}.".format((self.x, self.y, self.z)))

@dataclass(frozen=True)
class LocalFrame:
	"""East-north-up frame in feet, tangent at `origin` (normally a runway threshold)."""
	origin: GeoPosition

	@property
	def coslat(self):
		return math.cos(math.radians(self.origin.lat))

def project(frame, p):
	"""Project a geographic position into the local frame.

	Parameters
	----------
	frame : LocalFrame
		Projection center.
	p : GeoPosition
		Position to project; the altitude is carried through unchanged.

	Returns
	-------
	LocalPoint
		East (`x`), north (`y`) and altitude (`z`) in feet.
	"""
	if abs(p.lat - frame.origin.lat) >= MAX_LATITUDE_OFFSET:
		raise OutOfFrameRange("Latitude {} is {:.3f} degrees from the frame origin (limit {}).".format(
			p.lat, abs(p.lat - frame.origin.lat), MAX_LATITUDE_OFFSET))
	x = (p.lon - frame.origin.lon) * frame.coslat * FEET_PER_DEGREE
	y = (p.lat - frame.origin.lat) * FEET_PER_DEGREE
	return LocalPoint(x, y, p.alt)

def unproject(frame, p):
	"""Inverse of `project`."""
	lat = frame.origin.lat + p.y / FEET_PER_DEGREE
	lon = frame.origin.lon + p.x / (frame.coslat * FEET_PER_DEGREE)
	return GeoPosition(lat, lon, p.z)

def unproject_arrays(frame, x, y):
	"""Vectorized `unproject` for polyline exports, returns `(lat, lon)` arrays."""
	lat = frame.origin.lat + np.asarray(y, dtype=float) / FEET_PER_DEGREE
	lon = frame.origin.lon + np.asarray(x, dtype=float) / (frame.coslat * FEET_PER_DEGREE)
	return lat, lon

def distance3d(a, b):
	return math.sqrt((a.x-b.x)**2 + (a.y-b.y)**2 + (a.z-b.z)**2)
