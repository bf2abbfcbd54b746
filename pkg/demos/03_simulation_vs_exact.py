# Checking the exact solution against Monte Carlo simulation.
#
# The simulator runs the full stochastic system: one superposed exponential
# clock drives event updates, both sources and all gossip links. Averages
# over [burn_in, horizon] are compared with the exact values. Standard errors
# are computed across independent seeds.
from agegossip import ExperimentConfig, emit, sweep

config = ExperimentConfig(
    n=10, gap_values=(0, 2, 4, 8, 16), horizon=5000.0, seeds=tuple(range(8)),
    mode="compare",
)
report = sweep(config)

for row in report.rows:
    print(f"gap={row.gap:2d}  F exact {row.analytic_F:.4f}  sim {row.sim_F_mean:.4f} "
          f"+/- {row.sim_F_se:.4f}   x1 exact {row.analytic_x1:.3f}  sim {row.sim_x1_mean:.3f} "
          f"+/- {row.sim_x1_se:.3f}")

# The same report as plot-ready CSV (gap vs F, gap vs x1, or F vs x1).
print()
print(emit(report, "csv"))
