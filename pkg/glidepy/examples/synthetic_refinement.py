from glidepy.dddas import LoopConfig, format_event, replay, synthesize_stream
from glidepy.dubins import Configuration2D, glide_loss, shortest_csc
from glidepy.fileio import read_profile, read_runways
from glidepy.geodesy import LocalPoint, unproject
from glidepy.performance import turn_radius
from glidepy.planner import PlanRequest, generate

model = read_profile("a320")
runways = read_runways("lga")
runway = [i for i in runways if i.id == "LGA22"][0]

# The aircraft actually glides at 19:1, while the loop starts out assuming 17.25:1.
actual = model.with_baseline(19.)
start = Configuration2D(40000., 30000., 180.)
goal = Configuration2D(0., 0., runway.true_heading)
word, segments = shortest_csc(start, goal, turn_radius(30., actual.best_glide_speed))
altitude = runway.elevation + glide_loss(segments, actual, 30., actual.clean)
position = unproject(runway.frame, LocalPoint(start.x, start.y, altitude))

result = generate(PlanRequest(position, start.heading, runway, 30., actual))
stream = synthesize_stream(result, actual.best_glide_speed, actual)

cfg = LoopConfig(runways=tuple(runways), banks=(30., 45.))
for event in replay(stream, model, cfg):
	print(format_event(event))
