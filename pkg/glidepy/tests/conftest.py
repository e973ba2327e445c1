import math

import pytest

from glidepy.fileio import read_profile, read_runways
from glidepy.geodesy import GeoPosition, LocalPoint, unproject
from glidepy.planner import PlanRequest
from glidepy.utils import get_data_path

@pytest.fixture
def a320():
	return read_profile("a320")

@pytest.fixture
def c172():
	return read_profile("c172")

@pytest.fixture
def lga():
	return {i.id: i for i in read_runways("lga")}

@pytest.fixture
def us1549_fdr():
	return get_data_path("us1549_corrected", "fdr", extension=".csv")

def _straight_in_position(runway, distance, altitude):
	h = math.radians(runway.true_heading)
	p = unproject(runway.frame, LocalPoint(-distance*math.sin(h), -distance*math.cos(h), 0.))
	return GeoPosition(p.lat, p.lon, altitude)

@pytest.fixture
def straight_in():
	"""Factory of requests on the extended centerline, `distance` feet before the threshold.

	The aircraft is `extra` feet above the altitude a straight clean glide needs.
	"""
	def make(runway, distance, model,
		bank=45.,
		extra=0.,
		):
		altitude = runway.elevation + distance/model.g0 + extra
		return PlanRequest(_straight_in_position(runway, distance, altitude), runway.true_heading, runway, bank, model)
	return make

@pytest.fixture
def straight_in_scenario(tmp_path):
	"""Factory writing a scenario file for a straight-in approach to LGA22."""
	def make(distance, extra,
		bank=45.,
		):
		runway = {i.id: i for i in read_runways("lga")}["LGA22"]
		position = _straight_in_position(runway, distance, runway.elevation + distance/17.25 + extra)
		path = tmp_path / "straight_in.txt"
		path.write_text("\n".join([
			"aircraft = a320",
			"runways = LGA22",
			"banks_deg = {:g}".format(bank),
			"lat = {!r}".format(position.lat),
			"lon = {!r}".format(position.lon),
			"alt_ft = {!r}".format(position.alt),
			"heading_deg = {!r}".format(runway.true_heading),
			"",
			]))
		return str(path)
	return make
