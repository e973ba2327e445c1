from glidepy.fileio import read_profile
from glidepy.performance import performance_table

model = read_profile("a320")
df = performance_table(model)
df.to_csv("a320_table.csv", index=False)
