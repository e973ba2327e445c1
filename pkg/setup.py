from setuptools import setup

if __name__ == '__main__':
	setup(
		name="GlidePy",
		version="0.0.0",
		description = "Loss of thrust glide trajectory planning, safety ranking, and glide ratio refinement from flight data.",
		author = "GlidePy developers",
		url = "",
		keywords = ["aviation", "dubins", "trajectory planning", "flight data", "glide ratio", "science"],
		classifiers = [],
		install_requires = [
			"numpy>=1.17",
			"pandas>=1.5",
			"scipy>=1.3",
			"tqdm",
			],
		extras_require = {
			"test": ["pytest", "hypothesis"],
			},
		provides = ["glidepy"],
		packages = ["glidepy"],
		package_data = {"glidepy": [
			"data/aircraft/*.txt",
			"data/runways/*.txt",
			"data/fdr/*.csv",
			"data/scenarios/*.txt",
			]},
		entry_points = {"console_scripts": ["glidepy = glidepy.cli:main"]},
		)
