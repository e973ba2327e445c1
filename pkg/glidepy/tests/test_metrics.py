import hypothesis
import numpy as np
import pandas as pd
import pytest
from hypothesis import strategies as st

from glidepy.dubins import POLYLINE_COLUMNS, Configuration2D, GlidePath, lift_to_glide, make_spirals, shortest_csc
from glidepy.errors import EmptyTrajectory
from glidepy.fileio import read_scenario
from glidepy.geodesy import GeoPosition
from glidepy.metrics import HEIGHT_FLOOR, SENSES, CandidateSet, RawMetrics, compute_raw, normalize, rank, score
from glidepy.performance import PerformanceModel
from glidepy.planner import RunwaySpec, generate, generate_all

FIELD = RunwaySpec("TEST9", GeoPosition(40.78, -73.87), 90., 0.)

def _path(points, bank=0.):
	df = pd.DataFrame(points, columns=["x", "y", "z"])
	df["heading"] = 0.
	df["bank"] = bank
	df["segment"] = "straight"
	return GlidePath((), float(df["z"].iloc[0]), float(df["z"].iloc[-1]), df[POLYLINE_COLUMNS])

def _raw(**values):
	defaults = dict(avg_altitude=1000., avg_distance=1000., bank_over_height=0.01, turns=2, length=1000., extended_final=0.)
	defaults.update(values)
	return RawMetrics(**defaults)

def test_average_altitude():
	raw = compute_raw(_path([(0, 0, 1000), (100, 0, 1000), (200, 0, 1000)]), FIELD)
	assert raw.avg_altitude == 1000

def test_length():
	raw = compute_raw(_path([(0, 0, 1000), (3000, 4000, 1000)]), FIELD)
	assert raw.length == pytest.approx(5000)
	assert raw.avg_distance == pytest.approx((np.hypot(0, 1000) + np.hypot(5000, 1000)) / 2)

def test_height_floor():
	raw = compute_raw(_path([(0, 0, 10), (0, 0, 0)], bank=30.), FIELD)
	assert raw.bank_over_height == pytest.approx(30. / HEIGHT_FLOOR)

def test_turn_count():
	m = PerformanceModel(17.25)
	radius = 1000.
	goal = Configuration2D(0, -20000, 270)
	word, segments = shortest_csc(Configuration2D(0, 0, 90), goal, radius)
	assert [i.kind for i in segments] == ["turn", "straight", "turn"]
	segments.append(make_spirals(goal, radius, word[2], 1))
	raw = compute_raw(lift_to_glide(segments, m, 30, m.clean, 5000), FIELD)
	assert raw.turns == 3

def test_empty_path():
	empty = GlidePath((), 1000., 1000., pd.DataFrame(columns=POLYLINE_COLUMNS))
	with pytest.raises(EmptyTrajectory):
		compute_raw(empty, FIELD)

def test_normalize_examples():
	assert list(normalize([10, 20], "minimize")) == [1, 0]
	assert list(normalize([5, 5, 5], "maximize")) == [1, 1, 1]
	assert list(normalize([0, 0, 0], "minimize")) == [1, 1, 1]
	assert list(normalize([0, 0.5, 1], "maximize")) == [0, 0.5, 1]
	assert not np.signbit(normalize([10, 20, 15], "minimize")).any()
	with pytest.raises(ValueError):
		normalize([], "maximize")
	with pytest.raises(ValueError):
		normalize([1, 2], "best")

values = st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=12)

@hypothesis.given(values, st.sampled_from(["maximize", "minimize"]))
def test_normalize_range(x, sense):
	y = normalize(x, sense)
	assert np.all((y >= 0) & (y <= 1))
	assert not np.signbit(y).any()
	best = np.argmax(x) if sense == "maximize" else np.argmin(x)
	assert y[best] == 1

@hypothesis.given(values, st.floats(0.01, 100), st.floats(-1e4, 1e4), st.sampled_from(["maximize", "minimize"]))
def test_normalize_affine_invariance(x, a, b, sense):
	x = np.asarray(x)
	hypothesis.assume(np.ptp(x) > 1e-3 * max(1., np.abs(x).max()))
	assert normalize(a*x + b, sense) == pytest.approx(normalize(x, sense), abs=1e-6)

def test_wins_ties_losses():
	# A is better on altitude and distance, tied on turns and worse on the rest.
	a = _raw(avg_altitude=2000, avg_distance=500, bank_over_height=0.02, length=2000, extended_final=0)
	b = _raw(avg_altitude=1000, avg_distance=900, bank_over_height=0.01, length=1000, extended_final=100)
	normalized, utility = score([a, b])
	assert utility[0] == pytest.approx(0.5)
	assert utility[1] == pytest.approx(4/6)
	for row in normalized:
		assert set(row.values()) <= {0., 1.}

def test_five_of_six():
	winner = _raw(avg_altitude=2000, avg_distance=500, bank_over_height=0.005, length=900, extended_final=0)
	loser = _raw(avg_altitude=1000, avg_distance=900, bank_over_height=0.01, length=1000, extended_final=100)
	normalized, utility = score([winner, loser])
	assert round(utility[0], 2) == 0.83
	assert round(utility[1], 2) == 0.33

@hypothesis.given(st.lists(st.tuples(*[st.floats(0, 1e5)]*6), min_size=1, max_size=8))
def test_score_ranges(rows):
	raws = [RawMetrics(a, b, c, int(d), e, f) for a, b, c, d, e, f in rows]
	normalized, utility = score(raws)
	assert np.all((utility >= 0) & (utility <= 1 + 1e-12))
	for metric in SENSES:
		assert max(i[metric] for i in normalized) == 1

def test_rank_ties_and_singleton(a320, lga, straight_in):
	results = [generate(straight_in(lga["LGA22"], 30000, a320, bank=bank)) for bank in (45., 20.)]
	candidates = rank(results)
	assert [(result.bank, report.rank) for result, report in candidates] == [(20., 1), (45., 2)]
	assert all(report.utility == 1 for result, report in candidates)

	single = rank(results[:1])
	assert len(single) == 1
	assert list(single)[0][1].rank == 1

def test_rank_orders_by_utility(a320, lga, straight_in):
	low = generate(straight_in(lga["LGA22"], 30000, a320, bank=30.))
	high = generate(straight_in(lga["LGA13"], 30000, a320, bank=45., extra=3000))
	candidates = rank([low, high])
	utilities = [report.utility for result, report in candidates]
	assert utilities == sorted(utilities, reverse=True)
	assert sorted(report.rank for result, report in candidates) == [1, 2]

def test_report_frame(a320, lga, straight_in):
	candidates = rank([generate(straight_in(lga["LGA22"], 30000, a320, bank=bank)) for bank in (30., 45.)])
	df = candidates.to_frame()
	assert list(df.columns) == ["Runway", "Bank angle", "d", "z", "l", "n", "theta/h", "e", "u", "Rank"]
	assert list(df["Rank"]) == [1, 2]
	tsv = candidates.to_tsv()
	assert tsv.splitlines()[0] == "Runway\tBank angle\td\tz\tl\tn\ttheta/h\te\tu\tRank"
	assert tsv.splitlines()[1].startswith("LGA22\t30\t1.00\t")
	raw = candidates.to_frame(normalized=False)
	assert raw["l"].iloc[0] == pytest.approx(np.hypot(30000, 30000/17.25), rel=1e-6)

def test_empty_candidate_set():
	assert len(rank([])) == 0
	assert CandidateSet().to_frame().empty

@pytest.mark.sensitivity
@pytest.mark.parametrize("seconds", [20, 24])
def test_us1549_pairs(seconds):
	scenario = read_scenario("us1549_t{:02d}_g1725".format(seconds), require_start=True)
	results = generate_all(scenario.start, scenario.heading, scenario.runways, scenario.banks, scenario.model)
	assert len(results) >= 2
	candidates = rank(results[:2])
	for result, report in candidates:
		values = list(report.normalized.values())
		assert set(values) <= {0., 1.}
		assert report.utility == pytest.approx(values.count(1.) / 6)
	utilities = [report.utility for result, report in candidates]
	assert utilities[0] >= utilities[1]
	assert "-0.00" not in candidates.to_tsv()
