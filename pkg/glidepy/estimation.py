"""Glide ratio estimation from recorded airspeed and pressure altitude.

Streams are resampled to 1 Hz; an instantaneous glide ratio is the distance
flown over the last `eta` seconds divided by the pressure altitude lost over
the same interval, and only stable windows of steady descent are trusted.
"""
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy.interpolate import interp1d

from glidepy.errors import InsufficientData, NonDescending
from glidepy.geodesy import GeoPosition
from glidepy.performance import CLEAN, DragConfig

logger = logging.getLogger(__name__)

KT_TO_FPS = 1.68781
STREAM_COLUMNS = ["t", "lat", "lon", "pressure_alt", "true_alt", "heading", "airspeed", "bank", "drag"]
_NUMERIC = ["lat", "lon", "pressure_alt", "true_alt", "heading", "airspeed", "bank"]

@dataclass(frozen=True)
class SensorSample:
	t: float
	position: GeoPosition
	pressure_alt: float
	true_alt: float
	heading: float
	airspeed: float
	bank: float = 0.
	drag: DragConfig = CLEAN

	def __post_init__(self):
		if self.airspeed < 0:
			raise ValueError("Airspeed must be non-negative, got {} at t={}.".format(self.airspeed, self.t))

@dataclass(frozen=True)
class EstimatorConfig:
	"""Stable window detection settings.

	Parameters
	----------
	eta : int
		Lookback of the instantaneous glide ratio, seconds.
	omega : int
		Stable window duration, seconds.
	sigma_tau : float
		Largest population standard deviation of the instantaneous ratios in a stable window.
	max_bank_range : float
		Largest bank angle spread in degrees within a stable window.
	"""
	eta: int = 4
	omega: int = 10
	sigma_tau: float = 5.
	max_bank_range: float = 5.

	def __post_init__(self):
		if not self.eta > 0:
			raise ValueError("eta must be positive, got {}.".format(self.eta))
		if not self.omega >= self.eta:
			raise ValueError("omega ({}) must not be shorter than eta ({}).".format(self.omega, self.eta))
		if not self.sigma_tau > 0:
			raise ValueError("sigma_tau must be positive, got {}.".format(self.sigma_tau))

@dataclass(frozen=True)
class GlideEstimate:
	g_hat: float
	bank: float
	drag: DragConfig
	window: tuple

	def __post_init__(self):
		if not self.g_hat > 0:
			raise ValueError("Glide ratio estimate must be positive, got {}.".format(self.g_hat))

def stream_frame(stream):
	"""Long-form DataFrame of a list of `SensorSample` objects."""
	return pd.DataFrame([{
		"t":i.t,
		"lat":i.position.lat,
		"lon":i.position.lon,
		"pressure_alt":i.pressure_alt,
		"true_alt":i.true_alt,
		"heading":i.heading,
		"airspeed":i.airspeed,
		"bank":i.bank,
		"drag":i.drag,
		} for i in stream], columns=STREAM_COLUMNS)

def resample(stream,
	rate=1.,
	):
	"""Linearly interpolate a sensor stream onto a uniform time grid.

	Parameters
	----------
	stream : list of SensorSample or pandas.DataFrame
		Samples with strictly increasing time.
	rate : float, optional
		Sampling rate of the output in Hz.

	Returns
	-------
	pandas.DataFrame
		Columns as in `STREAM_COLUMNS`, starting at the first sample time.
		Heading is interpolated on its unwrapped course and the drag configuration is carried forward from the last recorded sample.
	"""
	df = stream if isinstance(stream, pd.DataFrame) else stream_frame(stream)
	if df.empty:
		return pd.DataFrame(columns=STREAM_COLUMNS)
	t = df["t"].to_numpy(dtype=float)
	if np.any(np.diff(t) <= 0):
		raise ValueError("Sample times must be strictly increasing.")
	grid = t[0] + np.arange(int(np.floor((t[-1] - t[0]) * rate + 1e-9)) + 1) / rate
	values = df[_NUMERIC].to_numpy(dtype=float)
	values[:, _NUMERIC.index("heading")] = np.degrees(np.unwrap(np.radians(values[:, _NUMERIC.index("heading")])))
	if len(t) > 1:
		values = interp1d(t, values, axis=0)(grid)
	resampled = pd.DataFrame(values, columns=_NUMERIC)
	resampled["heading"] = resampled["heading"] % 360.
	resampled.insert(0, "t", grid)
	last = np.searchsorted(t, grid + 1e-9, side="right") - 1
	resampled["drag"] = df["drag"].to_numpy()[last]
	return resampled[STREAM_COLUMNS]

def _uniform(stream):
	if isinstance(stream, pd.DataFrame):
		return stream
	return resample(stream)

def _period(df):
	return float(df["t"].iloc[1] - df["t"].iloc[0]) if len(df) > 1 else 1.

def _samples(seconds, df):
	return max(1, int(round(seconds / _period(df))))

def _index(df, t_i):
	t = df["t"].to_numpy(dtype=float)
	ix = int(np.searchsorted(t, t_i - 1e-6))
	if ix >= len(t) or abs(t[ix] - t_i) > 1e-6:
		raise InsufficientData("No sample at t={}.".format(t_i))
	return ix

def instant_series(stream, eta):
	"""Instantaneous glide ratio at every sample, NaN where it is undefined.

	Parameters
	----------
	stream : list of SensorSample or pandas.DataFrame
		Sensor stream; lists are resampled to 1 Hz first.
	eta : int
		Lookback in seconds.

	Returns
	-------
	pandas.Series
		Ratios indexed like the resampled stream.
	"""
	df = _uniform(stream)
	n = _samples(eta, df)
	distance = df["airspeed"].astype(float).rolling(n).sum() * _period(df) * KT_TO_FPS
	loss = df["pressure_alt"].astype(float).shift(n) - df["pressure_alt"].astype(float)
	return (distance / loss).where(loss > 0)

def instant_glide(stream, t_i, eta):
	"""Distance flown over the `eta` samples ending at `t_i` divided by the pressure altitude lost since `t_i - eta`."""
	df = _uniform(stream)
	i = _index(df, t_i)
	n = _samples(eta, df)
	if i < n:
		raise InsufficientData("The stream starts less than {} s before t={}.".format(eta, t_i))
	distance = df["airspeed"].iloc[i-n+1:i+1].astype(float).sum() * _period(df) * KT_TO_FPS
	loss = float(df["pressure_alt"].iloc[i-n]) - float(df["pressure_alt"].iloc[i])
	if loss <= 0:
		raise NonDescending("No altitude was lost between t={} and t={}.".format(df["t"].iloc[i-n], t_i))
	return distance / loss

def _window(df, ratios, i, cfg):
	n = _samples(cfg.omega, df)
	if i < n:
		raise InsufficientData("The stream starts less than {} s before t={}.".format(cfg.omega, df["t"].iloc[i]))
	altitude = df["pressure_alt"].iloc[i-n:i+1].to_numpy(dtype=float)
	if np.any(np.diff(altitude) > 0):
		return None
	window = ratios.iloc[i-n+1:i+1].to_numpy(dtype=float)
	window = window[np.isfinite(window)]
	if window.size == 0 or np.std(window) > cfg.sigma_tau:
		return None
	bank = df["bank"].iloc[i-n+1:i+1].to_numpy(dtype=float)
	if bank.max() - bank.min() > cfg.max_bank_range:
		return None
	drag = df["drag"].iloc[i-n+1:i+1]
	# Most common configuration, ties go to the first name in alphabetical order.
	names = drag.map(lambda c: c.name)
	modal = drag[names == names.mode().iloc[0]].iloc[0]
	return window, float(bank.mean()), modal, (float(df["t"].iloc[i-n]), float(df["t"].iloc[i]))

def stable_window(stream, t_i, cfg):
	"""Whether the `cfg.omega` seconds ending at `t_i` are a stable window.

	A stable window has non-increasing pressure altitude throughout, instantaneous glide ratios with a population standard deviation of at most `cfg.sigma_tau` and a bank angle spread within `cfg.max_bank_range`. Estimates report the most common drag configuration of the window.
	"""
	df = _uniform(stream)
	i = _index(df, t_i)
	return _window(df, instant_series(df, cfg.eta), i, cfg) is not None

def stable_windows(stream, cfg):
	"""Estimates for every stable window of a stream, in time order.

	Parameters
	----------
	stream : list of SensorSample or pandas.DataFrame
		Sensor stream.
	cfg : EstimatorConfig
		Detection settings.

	Returns
	-------
	list of GlideEstimate
	"""
	df = _uniform(stream)
	if df.empty:
		return []
	ratios = instant_series(df, cfg.eta)
	estimates = []
	for i in range(_samples(cfg.omega, df), len(df)):
		window = _window(df, ratios, i, cfg)
		if window is None:
			continue
		values, bank, drag, span = window
		g_hat = float(values.mean())
		if g_hat <= 0:
			logger.debug("Skipping window %s without horizontal motion.", span)
			continue
		estimates.append(GlideEstimate(g_hat, bank, drag, span))
	return estimates

def estimate(stream, cfg):
	"""Glide ratio over the latest stable window, or None if the stream has none."""
	windows = stable_windows(stream, cfg)
	if not windows:
		return None
	return windows[-1]
