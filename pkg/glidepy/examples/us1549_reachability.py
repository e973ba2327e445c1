import pandas as pd

from glidepy.fileio import read_scenario
from glidepy.planner import generate_all

rows = []
for seconds in range(4, 44, 4):
	for g0 in ["1725", "19"]:
		scenario = read_scenario("us1549_t{:02d}_g{}".format(seconds, g0), require_start=True)
		results = generate_all(scenario.start, scenario.heading, scenario.runways, scenario.banks, scenario.model,
			jobs=4,
			)
		for result in results:
			rows.append({
				"t":seconds,
				"g0":scenario.model.g0,
				"runway":result.runway.id,
				"bank":result.bank,
				"spirals":result.spirals,
				"extended_final":result.extended_final,
				})

df = pd.DataFrame(rows)
df.to_csv("us1549_reachability.csv", index=False)
