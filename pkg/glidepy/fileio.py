import json
import logging
import os
import re
from dataclasses import dataclass

import numpy as np
import pandas as pd

from glidepy.abbreviations import FDR_COLUMNS, FDR_OPTIONAL_COLUMNS
from glidepy.errors import EmptyTrajectory, SchemaError, ScenarioError
from glidepy.estimation import SensorSample
from glidepy.geodesy import GeoPosition, unproject_arrays
from glidepy.performance import CLEAN, PerformanceModel
from glidepy.planner import PLANNER_BANKS, RunwaySpec
from glidepy.utils import get_data_path

logger = logging.getLogger(__name__)

RUNWAY_COLUMNS = ["id", "lat", "lon", "true_heading_deg", "elevation_ft"]
EXPORT_COLUMNS = ["t_index", "lat", "lon", "alt_ft", "bank_deg", "segment_kind"]
_SYMBOLIC_TIME = re.compile(r"t\s*(?:([+-])\s*(\d+(?:\.\d*)?))?")

@dataclass(frozen=True, eq=False)
class FdrTable:
	"""Flight data recorder rows in time order, one column per field of `glidepy.estimation.SensorSample`."""
	frame: pd.DataFrame

	def __len__(self):
		return len(self.frame)

@dataclass(frozen=True, eq=False)
class Scenario:
	name: str
	model: PerformanceModel
	runways: tuple
	banks: tuple
	start: GeoPosition = None
	heading: float = None
	search_step: float = 50.
	step: float = 100.

def _parse_time(value, epoch, row):
	match = _SYMBOLIC_TIME.fullmatch(value.strip())
	if match:
		sign, offset = match.groups()
		if offset is None:
			return float(epoch)
		return float(epoch) + (1. if sign == "+" else -1.)*float(offset)
	try:
		return float(value)
	except ValueError:
		raise ValueError("Row {}, column `Time Delay`: cannot parse time `{}`.".format(row, value))

def parse_fdr(file,
	epoch=0.,
	):
	"""Read a flight data recorder table.

	Parameters
	----------
	file : str
		Path to a CSV file with the columns of `glidepy.abbreviations.FDR_COLUMNS`, optionally also `Bank angle(degrees)` and `Drag configuration`.
	epoch : float, optional
		Time in seconds assigned to the symbolic time `t`; `t+K` maps to `epoch+K`.

	Returns
	-------
	FdrTable
		Rows sorted by time.
	"""
	file = os.path.abspath(os.path.expanduser(file))
	try:
		df = pd.read_csv(file, dtype=str, skipinitialspace=True)
	except pd.errors.EmptyDataError:
		raise SchemaError("FDR file {} is empty.".format(file))
	df.columns = [i.strip() for i in df.columns]
	missing = [i for i in FDR_COLUMNS if i not in df.columns]
	if missing:
		raise SchemaError("FDR file {} lacks the columns: {}.".format(file, ", ".join(missing)))
	df = df[[i for i in list(FDR_COLUMNS) + list(FDR_OPTIONAL_COLUMNS) if i in df.columns]]
	df = df.rename(columns=dict(FDR_COLUMNS, **FDR_OPTIONAL_COLUMNS))

	# Data rows start on line 2 of the file.
	df["t"] = [_parse_time(value, epoch, ix+2) for ix, value in enumerate(df["t"])]
	for column, header in list(zip(FDR_COLUMNS.values(), FDR_COLUMNS))[1:] + [("bank", "Bank angle(degrees)")]:
		if column not in df.columns:
			continue
		converted = pd.to_numeric(df[column].str.strip(), errors="coerce")
		bad = converted.isna()
		if bad.any():
			ix = int(np.flatnonzero(bad.to_numpy())[0])
			raise ValueError("Row {}, column `{}`: cannot parse `{}` as a number.".format(ix+2, header, df[column].iloc[ix]))
		df[column] = converted.astype(float)
	if "bank" not in df.columns:
		df["bank"] = 0.
	if "drag" not in df.columns:
		df["drag"] = "clean"
	df["drag"] = df["drag"].fillna("clean").str.strip()

	if not df["t"].is_monotonic_increasing:
		logger.warning("Rows of %s are not in time order and were re-sorted.", file)
		df = df.sort_values("t", kind="stable")
	if df["t"].duplicated().any():
		raise ValueError("FDR file {} has repeated times: {}.".format(file, sorted(set(df["t"][df["t"].duplicated()]))))
	return FdrTable(df.reset_index(drop=True))

def samples(table,
	model=None,
	):
	"""Convert an `FdrTable` into `SensorSample` objects.

	Drag configuration names are resolved in the drag table of `model`; without a model only `clean` is accepted.
	"""
	samples = []
	for row in table.frame.itertuples(index=False):
		if model is not None:
			drag = model.drag(row.drag)
		elif row.drag == "clean":
			drag = CLEAN
		else:
			raise ValueError("Drag configuration `{}` at t={} needs an aircraft profile to resolve.".format(row.drag, row.t))
		samples.append(SensorSample(
			t=row.t,
			position=GeoPosition(row.lat, row.lon, row.true_alt),
			pressure_alt=row.pressure_alt,
			true_alt=row.true_alt,
			heading=row.heading,
			airspeed=row.airspeed,
			bank=row.bank,
			drag=drag,
			))
	return samples

def _read_key_values(file):
	try:
		df = pd.read_csv(file,
			sep=r"\s*=\s*",
			engine="python",
			header=None,
			names=["key", "value"],
			comment="#",
			dtype=str,
			skipinitialspace=True,
			)
	except pd.errors.EmptyDataError:
		raise SchemaError("{} holds no `key = value` entries.".format(file))
	df = df.dropna(subset=["key"])
	df["key"] = df["key"].str.strip()
	df["value"] = df["value"].fillna("").str.strip()
	return dict(zip(df["key"], df["value"]))

def _number(entries, key, file):
	try:
		return float(entries[key])
	except KeyError:
		raise SchemaError("{} lacks the key `{}`.".format(file, key))
	except ValueError:
		raise ValueError("{}: `{}` is not a number (`{}`).".format(file, key, entries[key]))

def read_profile(name):
	"""Read an aircraft profile, either a path or a bundled name such as `a320`.

	Profiles define `g0` and `best_glide_speed_kn`; drag configurations are given as `drag_<name> = <delta>`, or for the dirty configuration as `dirty_glide_ratio`, which is divided by `g0`.

	Returns
	-------
	glidepy.performance.PerformanceModel
	"""
	file = get_data_path(name, "aircraft")
	entries = _read_key_values(file)
	g0 = _number(entries, "g0", file)
	drag_table = {"clean": 1.}
	for key in entries:
		if key.startswith("drag_"):
			drag_table[key[len("drag_"):]] = _number(entries, key, file)
	if "dirty_glide_ratio" in entries:
		drag_table["dirty"] = _number(entries, "dirty_glide_ratio", file) / g0
	return PerformanceModel(
		g0=g0,
		drag_table=drag_table,
		best_glide_speed=_number(entries, "best_glide_speed_kn", file),
		name=entries.get("name", os.path.splitext(os.path.basename(file))[0]),
		)

def read_runways(name):
	"""Read a whitespace separated runway table with the columns of `RUNWAY_COLUMNS`.

	Returns
	-------
	list of glidepy.planner.RunwaySpec
	"""
	file = get_data_path(name, "runways")
	try:
		df = pd.read_csv(file, sep=r"\s+", comment="#", dtype={"id": str})
	except pd.errors.EmptyDataError:
		raise SchemaError("Runway database {} is empty.".format(file))
	missing = [i for i in RUNWAY_COLUMNS if i not in df.columns]
	if missing:
		raise SchemaError("Runway database {} lacks the columns: {}.".format(file, ", ".join(missing)))
	return [RunwaySpec(
		id=row.id,
		threshold=GeoPosition(float(row.lat), float(row.lon), float(row.elevation_ft)),
		true_heading=float(row.true_heading_deg),
		elevation=float(row.elevation_ft),
		) for row in df.itertuples(index=False)]

def _resource(value, subdirectory, scenario_dir):
	local = os.path.join(scenario_dir, os.path.expanduser(value))
	if os.path.isfile(local):
		return local
	return get_data_path(value, subdirectory)

def _list(value):
	return [i.strip() for i in value.split(",") if i.strip()]

def read_scenario(name,
	require_start=False,
	):
	"""Read a scenario file.

	Parameters
	----------
	name : str
		Path to a `key = value` scenario file, or the name of a bundled scenario.
	require_start : bool, optional
		Whether the aircraft state (`lat`, `lon`, `alt_ft`, `heading_deg`) must be present.

	Returns
	-------
	Scenario
	"""
	file = get_data_path(name, "scenarios")
	scenario_dir = os.path.dirname(file)
	entries = _read_key_values(file)
	if "aircraft" not in entries:
		raise ScenarioError("Scenario {} names no aircraft profile.".format(file))
	try:
		model = read_profile(_resource(entries["aircraft"], "aircraft", scenario_dir))
		runways = read_runways(_resource(entries.get("runway_db", "lga"), "runways", scenario_dir))
	except FileNotFoundError as e:
		raise ScenarioError("Scenario {}: {}".format(file, e))
	if "g0" in entries:
		model = model.with_baseline(_number(entries, "g0", file))
	if "dirty_glide_ratio" in entries:
		model = model.with_drag("dirty", _number(entries, "dirty_glide_ratio", file) / model.g0)

	if "runways" in entries:
		known = {i.id: i for i in runways}
		unknown = [i for i in _list(entries["runways"]) if i not in known]
		if unknown:
			raise ScenarioError("Scenario {} names unknown runways: {}.".format(file, ", ".join(unknown)))
		runways = [known[i] for i in _list(entries["runways"])]
	banks = [float(i) for i in _list(entries.get("banks_deg", ",".join("{:g}".format(i) for i in PLANNER_BANKS)))]
	if not runways or not banks:
		raise ScenarioError("Scenario {} needs at least one runway and one bank angle.".format(file))

	state = ["lat", "lon", "alt_ft", "heading_deg"]
	start = heading = None
	if all(i in entries for i in state):
		start = GeoPosition(_number(entries, "lat", file), _number(entries, "lon", file), _number(entries, "alt_ft", file))
		heading = _number(entries, "heading_deg", file)
	elif require_start:
		raise ScenarioError("Scenario {} lacks the aircraft state keys: {}.".format(
			file, ", ".join(i for i in state if i not in entries)))
	return Scenario(
		name=os.path.splitext(os.path.basename(file))[0],
		model=model,
		runways=tuple(runways),
		banks=tuple(banks),
		start=start,
		heading=heading,
		search_step=_number(entries, "search_step_ft", file) if "search_step_ft" in entries else 50.,
		step=_number(entries, "step_ft", file) if "step_ft" in entries else 100.,
		)

def export_trajectory(t, frame, fmt, dest):
	"""Write a trajectory in geographic coordinates.

	Parameters
	----------
	t : glidepy.dubins.GlidePath
		Trajectory in the local frame `frame`.
	frame : glidepy.geodesy.LocalFrame
		Frame the trajectory was planned in.
	fmt : {"csv", "geojson"}
		Output format.
	dest : str
		Output path.

	Returns
	-------
	str
		Absolute output path.
	"""
	if t.polyline.empty:
		raise EmptyTrajectory("Refusing to export a trajectory without points.")
	dest = os.path.abspath(os.path.expanduser(dest))
	lat, lon = unproject_arrays(frame, t.polyline["x"], t.polyline["y"])
	df = pd.DataFrame({
		"t_index":np.arange(len(t.polyline)),
		"lat":lat,
		"lon":lon,
		"alt_ft":t.polyline["z"].to_numpy(dtype=float),
		"bank_deg":t.polyline["bank"].to_numpy(dtype=float),
		"segment_kind":t.polyline["segment"].to_numpy(),
		}, columns=EXPORT_COLUMNS)
	if fmt == "csv":
		df.to_csv(dest, index=False)
	elif fmt == "geojson":
		feature = {
			"type":"Feature",
			"geometry":{
				"type":"LineString",
				"coordinates":[[float(a), float(b), float(c)] for a, b, c in zip(df["lon"], df["lat"], df["alt_ft"])],
				},
			"properties":{
				"segments":[i.kind for i in t.segments],
				"segment_kind":list(df["segment_kind"]),
				"bank_deg":[float(i) for i in df["bank_deg"]],
				},
			}
		with open(dest, "w") as f:
			json.dump(feature, f)
	else:
		raise ValueError("Unknown export format `{}`, use `csv` or `geojson`.".format(fmt))
	return dest

def read_geojson_trajectory(file):
	"""Read back a GeoJSON trajectory written by `export_trajectory` as a DataFrame of `EXPORT_COLUMNS`."""
	with open(os.path.abspath(os.path.expanduser(file))) as f:
		feature = json.load(f)
	try:
		coordinates = np.asarray(feature["geometry"]["coordinates"], dtype=float)
		properties = feature["properties"]
	except (KeyError, TypeError):
		raise SchemaError("{} is not a GeoJSON LineString feature.".format(file))
	return pd.DataFrame({
		"t_index":np.arange(len(coordinates)),
		"lat":coordinates[:, 1],
		"lon":coordinates[:, 0],
		"alt_ft":coordinates[:, 2],
		"bank_deg":properties.get("bank_deg", [0.]*len(coordinates)),
		"segment_kind":properties.get("segment_kind", [""]*len(coordinates)),
		}, columns=EXPORT_COLUMNS)
