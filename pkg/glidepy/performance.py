import math
from dataclasses import dataclass, field, replace

import numpy as np
import pandas as pd

from glidepy.errors import InfiniteRadius

# g in knots squared per foot, rounded to two decimals.
G = 11.29

TABLE_BANKS = (0, 10, 20, 30, 45, 60)

@dataclass(frozen=True)
class DragConfig:
	name: str
	delta: float = 1.

	def __post_init__(self):
		if not 0. < self.delta <= 1.:
			raise ValueError("Drag multiplier for `{}` must lie in (0, 1], got {}.".format(self.name, self.delta))

CLEAN = DragConfig("clean", 1.)

@dataclass(frozen=True)
class PerformanceModel:
	"""Damaged aircraft model, parameterized on the baseline glide ratio.

	Parameters
	----------
	g0 : float
		Glide ratio in clean configuration, wings level, at best glide speed.
	drag_table : dict
		Mapping of drag configuration names to drag multipliers (delta).
		A `clean` entry with delta 1 is always present.
	best_glide_speed : float
		Best glide airspeed in knots.
	name : str, optional
		Profile name, informational only.
	"""
	g0: float
	drag_table: dict = field(default_factory=lambda: {"clean": 1.})
	best_glide_speed: float = 225.
	name: str = ""

	def __post_init__(self):
		if not self.g0 > 0:
			raise ValueError("Baseline glide ratio must be positive, got {}.".format(self.g0))
		if not self.best_glide_speed > 0:
			raise ValueError("Best glide speed must be positive, got {}.".format(self.best_glide_speed))
		table = dict(self.drag_table)
		if table.setdefault("clean", 1.) != 1.:
			raise ValueError("The clean configuration must have a drag multiplier of 1.")
		for name, delta in table.items():
			DragConfig(name, delta)
		object.__setattr__(self, "drag_table", table)

	def drag(self, name):
		try:
			return DragConfig(name, self.drag_table[name])
		except KeyError:
			raise KeyError("Drag configuration `{}` is not in the drag table of {} (available: {}).".format(
				name, self.name or "the model", ", ".join(sorted(self.drag_table))))

	@property
	def clean(self):
		return self.drag("clean")

	def with_baseline(self, g0):
		"""Return a copy of the model with a new baseline glide ratio."""
		return replace(self, g0=g0)

	def with_drag(self, name, delta):
		return replace(self, drag_table=dict(self.drag_table, **{name: delta}))

def check_bank(bank):
	if not 0. <= bank < 90.:
		raise ValueError("Bank angle must lie in [0, 90) degrees, got {}.".format(bank))
	return float(bank)

def glide_ratio(m, bank, cfg=CLEAN):
	"""Glide ratio for a bank angle and drag configuration, g0 * delta * cos(bank)."""
	bank = check_bank(bank)
	return m.g0 * cfg.delta * math.cos(math.radians(bank))

def turn_radius(bank, speed):
	"""Radius of a coordinated turn in feet.

	Parameters
	----------
	bank : float
		Bank angle in degrees, strictly positive.
	speed : float
		Airspeed in knots.
	"""
	bank = check_bank(bank)
	if bank == 0:
		raise InfiniteRadius("Straight flight has no finite turn radius.")
	return speed**2 / (G * math.tan(math.radians(bank)))

def refine_baseline(observed, bank, cfg=CLEAN):
	"""Baseline glide ratio implied by a glide ratio observed at `bank` in configuration `cfg`.

	This assumes the aircraft holds its best glide airspeed.
	"""
	if not observed > 0:
		raise ValueError("Observed glide ratio must be positive, got {}.".format(observed))
	bank = check_bank(bank)
	return observed / (cfg.delta * math.cos(math.radians(bank)))

def _truncate(values, decimals):
	scale = 10.**decimals
	return np.trunc(np.asarray(values, dtype=float) * scale + 1e-9) / scale

def performance_table(m,
	banks=TABLE_BANKS,
	cfg=CLEAN,
	truncate=True,
	):
	"""Glide ratio and turn radius at best glide speed for a range of bank angles.

	Parameters
	----------
	m : PerformanceModel
		Aircraft model.
	banks : list of float, optional
		Bank angles in degrees.
	cfg : DragConfig, optional
		Drag configuration for the glide ratios.
	truncate : bool, optional
		Truncate ratios to two decimals and radii to whole feet.

	Returns
	-------
	pandas.DataFrame
		Columns `bank`, `glide_ratio`, `turn_radius` (infinite for wings level).
	"""
	ratios = [glide_ratio(m, bank, cfg) for bank in banks]
	radii = [turn_radius(bank, m.best_glide_speed) if bank > 0 else np.inf for bank in banks]
	if truncate:
		ratios = _truncate(ratios, 2)
		radii = np.where(np.isinf(radii), np.inf, _truncate(np.where(np.isinf(radii), 0, radii), 0))
	return pd.DataFrame({
		"bank": list(banks),
		"glide_ratio": ratios,
		"turn_radius": radii,
		})
