# The full-size experiment: n = 50, horizon 1e5, gaps 0..30.
#
# This is long (hundreds of millions of transitions in total); it uses every
# available core. The equivalent command line is
#
#   agegossip sweep --n 50 --gaps 0..30 --horizon 1e5 --seeds 5 --format csv --out fig3.csv
import sys

from agegossip import ExperimentConfig, emit, sweep

seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 5
config = ExperimentConfig(n=50, gap_values=tuple(range(31)), horizon=1e5,
                          seeds=tuple(range(seeds)), mode="compare", output_path="fig3.csv")
report = sweep(config)
emit(report, "csv", config.output_path)
print(f"wrote {config.output_path}")
