__author__="GlidePy developers"
from os import path

DATA_ROOT = path.join(path.dirname(path.abspath(__file__)), "data")

def get_data_path(name, subdirectory,
	extension=".txt",
	data_root_variants=None,
	):
	"""Get the absolute path of a data file, either given directly or bundled under a short name.

	Parameters
	----------

	name: str
		A path to an existing file (`~` is expanded), or the stem of a file in `subdirectory` of a data root, e.g. `a320`.

	subdirectory: str
		Which subdirectory of the data root holds the named resources, e.g. `aircraft`.

	extension: str, optional
		Extension appended to short names.

	data_root_variants: list of str, optional
		What data root directories to query (in the given order), defaults to the bundled data.
	"""

	candidate_path = path.abspath(path.expanduser(name))
	if path.isfile(candidate_path):
		return candidate_path
	for i in data_root_variants or [DATA_ROOT]:
		candidate_path = path.abspath(path.expanduser(path.join(i, subdirectory, name+extension)))
		if path.isfile(candidate_path):
			return candidate_path
	raise FileNotFoundError("No file `{}` and no bundled {} resource of that name was found.".format(name, subdirectory))

def steps(start, end, delta):
	"""Yield `start`, `start+delta`, ... below `end`, without accumulating rounding errors."""
	k = 0
	curr = start
	while curr < end:
		yield curr
		k += 1
		curr = start + k*delta
	return
