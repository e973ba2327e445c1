import logging
from dataclasses import dataclass, fields

import numpy as np
import pandas as pd

from glidepy.abbreviations import METRIC_ABBREV
from glidepy.errors import EmptyTrajectory

logger = logging.getLogger(__name__)

# Height above the field below which steep-turn penalties stop growing.
HEIGHT_FLOOR = 50.

SENSES = {
	"avg_altitude":"maximize",
	"avg_distance":"minimize",
	"bank_over_height":"minimize",
	"turns":"minimize",
	"length":"minimize",
	"extended_final":"maximize",
	}

@dataclass(frozen=True)
class RawMetrics:
	avg_altitude: float
	avg_distance: float
	bank_over_height: float
	turns: int
	length: float
	extended_final: float

	def values(self):
		return [getattr(self, i.name) for i in fields(self)]

@dataclass(frozen=True)
class SafetyReport:
	raw: RawMetrics
	normalized: dict
	utility: float
	rank: int

@dataclass(frozen=True, eq=False)
class CandidateSet:
	"""Ranked candidates as `(PlanResult, SafetyReport)` pairs, best first."""
	entries: tuple = ()

	def __len__(self):
		return len(self.entries)

	def __iter__(self):
		return iter(self.entries)

	def to_frame(self,
		normalized=True,
		):
		"""Report table with one row per candidate.

		Parameters
		----------
		normalized : bool, optional
			Whether to report the normalized metrics or the raw ones.

		Returns
		-------
		pandas.DataFrame
			Columns `Runway`, `Bank angle`, `d`, `z`, `l`, `n`, `theta/h`, `e`, `u`, `Rank`.
		"""
		rows = []
		for result, report in self.entries:
			row = {"Runway":result.runway.id, "Bank angle":result.bank}
			for metric, label in METRIC_ABBREV.items():
				row[label] = report.normalized[metric] if normalized else getattr(report.raw, metric)
			row["u"] = report.utility
			row["Rank"] = report.rank
			rows.append(row)
		columns = ["Runway", "Bank angle"] + list(METRIC_ABBREV.values()) + ["u", "Rank"]
		return pd.DataFrame(rows, columns=columns)

	def to_tsv(self,
		normalized=True,
		):
		"""Tab separated report with fixed two decimal formatting."""
		df = self.to_frame(normalized=normalized)
		df["Bank angle"] = df["Bank angle"].map("{:g}".format)
		return df.to_csv(sep="\t", index=False, float_format="%.2f", lineterminator="\n")

def compute_raw(t, runway):
	"""Six raw safety metrics of a trajectory planned in the frame of `runway`.

	Parameters
	----------
	t : glidepy.dubins.GlidePath
		Trajectory; the threshold lies at the frame origin.
	runway : glidepy.planner.RunwaySpec
		Target runway, supplies the field elevation.

	Returns
	-------
	RawMetrics
	"""
	polyline = t.polyline
	if polyline.empty:
		raise EmptyTrajectory("Metrics are undefined for an empty trajectory.")
	x = polyline["x"].to_numpy(dtype=float)
	y = polyline["y"].to_numpy(dtype=float)
	z = polyline["z"].to_numpy(dtype=float)
	bank = polyline["bank"].to_numpy(dtype=float)

	height = np.maximum(z - runway.elevation, HEIGHT_FLOOR)
	distance = np.sqrt(x**2 + y**2 + (z - runway.elevation)**2)
	steps = np.sqrt(np.diff(x)**2 + np.diff(y)**2 + np.diff(z)**2)
	turns = sum(1 for i in t.segments if i.kind == "turn")
	turns += sum(i.turns for i in t.segments if i.kind == "spiral")
	extended_final = sum(i.length for i in t.segments if i.kind == "extended_final")
	return RawMetrics(
		avg_altitude=float(z.mean()),
		avg_distance=float(distance.mean()),
		bank_over_height=float((bank / height).mean()),
		turns=int(turns),
		length=float(steps.sum()),
		extended_final=float(extended_final),
		)

def normalize(values, sense):
	"""Scale values to [0, 1] so that the best value maps to 1.

	Parameters
	----------
	values : list of float
		Raw metric values across a candidate set.
	sense : {"maximize", "minimize"}
		Whether larger or smaller values are safer.

	Returns
	-------
	numpy.ndarray
		Normalized values; a set of equal values normalizes to all ones.
	"""
	x = np.asarray(values, dtype=float)
	if x.size == 0:
		raise ValueError("Cannot normalize an empty list of values.")
	if sense not in ("maximize", "minimize"):
		raise ValueError("Sense must be `maximize` or `minimize`, got `{}`.".format(sense))
	lo, hi = x.min(), x.max()
	if hi - lo <= 1e-12 * np.abs(x).max():
		return np.ones_like(x)
	if sense == "maximize":
		return (x - lo) / (hi - lo)
	return (hi - x) / (hi - lo)

def score(raws):
	"""Normalized metrics and utilities for a list of `RawMetrics`.

	Returns
	-------
	normalized : list of dict
		Normalized value per metric name, one dictionary per candidate.
	utility : numpy.ndarray
		Mean of the six normalized values per candidate.
	"""
	table = {metric: normalize([getattr(i, metric) for i in raws], sense) for metric, sense in SENSES.items()}
	normalized = [{metric: float(table[metric][ix]) for metric in SENSES} for ix in range(len(raws))]
	utility = np.mean(np.column_stack([table[i] for i in SENSES]), axis=1)
	return normalized, utility

def rank(results):
	"""Score and rank planned trajectories.

	Parameters
	----------
	results : list of glidepy.planner.PlanResult
		Candidates, each carrying its runway.

	Returns
	-------
	CandidateSet
		Candidates ordered by descending utility; equal utilities are ordered by runway id and bank angle.
	"""
	if not results:
		return CandidateSet(())
	raws = [compute_raw(i.trajectory, i.runway) for i in results]
	normalized, utility = score(raws)
	order = sorted(range(len(results)), key=lambda i: (-round(utility[i], 12), results[i].runway.id, results[i].bank))
	entries = []
	for position, ix in enumerate(order):
		report = SafetyReport(raws[ix], normalized[ix], float(utility[ix]), position+1)
		entries.append((results[ix], report))
		logger.debug("Rank %d: %s@%g, u=%.3f", position+1, results[ix].runway.id, results[ix].bank, utility[ix])
	return CandidateSet(tuple(entries))
