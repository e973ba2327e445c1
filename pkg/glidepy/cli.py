"""Command line interface, see `glidepy --help`."""
import argparse
import logging
import os
import sys

import numpy as np

from glidepy.dddas import LoopConfig, LoopEvent, format_event, replay
from glidepy.errors import GlidePyError
from glidepy.estimation import EstimatorConfig, stable_windows
from glidepy.fileio import export_trajectory, parse_fdr, read_profile, read_scenario, samples
from glidepy.metrics import rank
from glidepy.performance import performance_table
from glidepy.planner import generate_all

logger = logging.getLogger("glidepy")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNREACHABLE = 2
EXIT_USAGE = 64

class _Parser(argparse.ArgumentParser):

	def error(self, message):
		self.print_usage(sys.stderr)
		sys.stderr.write("{}: error: {}\n".format(self.prog, message))
		sys.exit(EXIT_USAGE)

def _tables(args):
	model = read_profile(args.profile)
	df = performance_table(model, cfg=model.drag(args.drag))
	print("bank glide_ratio turn_radius_ft")
	for row in df.itertuples(index=False):
		radius = "inf" if np.isinf(row.turn_radius) else "{:.0f}".format(row.turn_radius)
		print("{:g}° {:.2f} {}".format(row.bank, row.glide_ratio, radius))
	return EXIT_OK

def _plan_candidates(args):
	scenario = read_scenario(args.scenario, require_start=True)
	results = generate_all(scenario.start, scenario.heading, scenario.runways, scenario.banks, scenario.model,
		search_step=scenario.search_step,
		step=scenario.step,
		jobs=args.jobs,
		)
	return rank(results)

def _plan(args):
	candidates = _plan_candidates(args)
	if not len(candidates):
		logger.warning("No runway is reachable.")
		return EXIT_UNREACHABLE
	df = candidates.to_frame(normalized=False)
	df.insert(2, "word", [result.word for result, report in candidates])
	df.insert(3, "spirals", [result.spirals for result, report in candidates])
	df.insert(4, "classification", [result.classification for result, report in candidates])
	df["Bank angle"] = df["Bank angle"].map("{:g}".format)
	sys.stdout.write(df.to_csv(sep="\t", index=False, float_format="%.2f", lineterminator="\n"))
	if args.export_dir:
		os.makedirs(os.path.abspath(os.path.expanduser(args.export_dir)), exist_ok=True)
		formats = ["csv", "geojson"] if args.format == "both" else [args.format]
		for result, report in candidates:
			for fmt in formats:
				dest = os.path.join(args.export_dir, "{}_{:g}.{}".format(result.runway.id, result.bank, fmt))
				logger.info("Writing %s", export_trajectory(result.trajectory, result.frame, fmt, dest))
	return EXIT_OK

def _rank(args):
	candidates = _plan_candidates(args)
	if not len(candidates):
		logger.warning("No runway is reachable.")
		return EXIT_UNREACHABLE
	sys.stdout.write(candidates.to_tsv())
	return EXIT_OK

def _estimator(args):
	return EstimatorConfig(eta=args.eta, omega=args.omega, sigma_tau=args.sigma_tau)

def _estimate(args):
	model = read_profile(args.profile)
	stream = samples(parse_fdr(args.fdr, epoch=args.epoch), model=model)
	for estimate in stable_windows(stream, _estimator(args)):
		print(format_event(LoopEvent(estimate.window[1], "estimate", estimate)))
	return EXIT_OK

def _replay(args):
	scenario = read_scenario(args.scenario)
	stream = samples(parse_fdr(args.fdr, epoch=args.epoch), model=scenario.model)
	cfg = LoopConfig(
		estimator=_estimator(args),
		replan_threshold=args.threshold,
		runways=scenario.runways,
		banks=scenario.banks,
		search_step=scenario.search_step,
		step=scenario.step,
		jobs=args.jobs,
		)
	for event in replay(stream, scenario.model, cfg, progress=args.progress):
		print(format_event(event))
	return EXIT_OK

def _parser():
	parser = _Parser(prog="glidepy", description="Plan, rank and refine loss of thrust glide trajectories.")
	parser.add_argument("-v", "--verbose", action="store_true", help="Log debugging information.")
	parser.add_argument("-q", "--quiet", action="store_true", help="Only log errors.")
	commands = parser.add_subparsers(dest="command", metavar="command")
	commands.required = True

	tables = commands.add_parser("tables", help="Glide ratio and turn radius per bank angle.")
	tables.add_argument("profile", help="Aircraft profile name or path.")
	tables.add_argument("--drag", default="clean", help="Drag configuration.")
	tables.set_defaults(func=_tables)

	for name, func, description in (
		("plan", _plan, "Plan and rank trajectories to every runway of a scenario."),
		("rank", _rank, "Print the normalized ranking table of a scenario."),
		):
		command = commands.add_parser(name, help=description)
		command.add_argument("scenario", help="Scenario name or path.")
		command.add_argument("-j", "--jobs", type=int, default=1, help="Planning threads.")
		command.set_defaults(func=func)
		if name == "plan":
			command.add_argument("--export-dir", help="Directory to write one trajectory file per candidate to.")
			command.add_argument("--format", choices=["csv", "geojson", "both"], default="csv", help="Export format.")

	for name, func, description in (
		("estimate", _estimate, "Print the glide ratio estimate of every stable window."),
		("replay", _replay, "Replay a flight data recorder file through the refinement loop."),
		):
		command = commands.add_parser(name, help=description)
		command.add_argument("fdr", help="Flight data recorder CSV file.")
		command.add_argument("--epoch", type=float, default=0., help="Seconds assigned to the symbolic time `t`.")
		command.add_argument("--eta", type=int, default=4, help="Instantaneous glide ratio lookback, seconds.")
		command.add_argument("--omega", type=int, default=10, help="Stable window duration, seconds.")
		command.add_argument("--sigma-tau", type=float, default=5., help="Stable window standard deviation threshold.")
		command.set_defaults(func=func)
		if name == "estimate":
			command.add_argument("--profile", default="a320", help="Aircraft profile resolving drag configurations.")
		else:
			command.add_argument("scenario", help="Scenario name or path.")
			command.add_argument("--threshold", type=float, default=0.05, help="Relative deviation which triggers a replan.")
			command.add_argument("-j", "--jobs", type=int, default=1, help="Planning threads per replan.")
			command.add_argument("--progress", action="store_true", help="Show a progress bar.")
	return parser

def cli(argv=None):
	"""Run the command line interface and return its exit status."""
	args = _parser().parse_args(argv)
	level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else logging.WARNING
	logging.basicConfig(level=level, format="%(levelname)s: %(name)s: %(message)s", stream=sys.stderr)
	logging.getLogger("glidepy").setLevel(level)
	try:
		return args.func(args)
	except (GlidePyError, OSError, ValueError, KeyError) as e:
		logger.error("%s", e)
		return EXIT_ERROR

def main():
	sys.exit(cli())

if __name__ == "__main__":
	main()
