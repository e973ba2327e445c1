class GlidePyError(Exception):
	"""Base class for all GlidePy errors."""

class OutOfFrameRange(GlidePyError, ValueError):
	"""A position lies too far from the local frame origin for the flat-earth projection."""

class InfiniteRadius(GlidePyError, ValueError):
	"""Wings-level flight has no finite turn radius."""

class NoCscPath(GlidePyError):
	"""No Circle-Straight-Circle word connects the two configurations."""

class Unreachable(GlidePyError):
	"""The runway cannot be reached with the available altitude."""

class SearchExhausted(GlidePyError):
	"""The extended final search left its interval without closing the altitude budget."""

class NonDescending(GlidePyError, ValueError):
	"""No altitude was lost over the lookback, so the glide ratio is undefined."""

class InsufficientData(GlidePyError):
	"""The sensor stream does not cover the requested interval."""

class SchemaError(GlidePyError, ValueError):
	"""A data file is missing required columns or keys."""

class EmptyTrajectory(GlidePyError, ValueError):
	"""A trajectory without points was passed to an exporter."""

class ScenarioError(GlidePyError, ValueError):
	"""A scenario file cannot be resolved into a planning problem."""
