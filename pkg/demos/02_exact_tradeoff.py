# The freshness-reliability trade-off, computed exactly.
#
# For the fully connected network with n = 50 nodes, event rate 2, reliable
# source rate 1, unreliable source rate 5 and gossip rate 0.1, sweep the gap
# and print the long-run fraction of nodes holding unreliable packets (F)
# and the mean version age at a node (x1). Larger gaps buy reliability with
# staleness.
from agegossip import Params, limit_age_g0, limit_age_ginf, solve

rates = dict(lambda_e=2.0, lambda_r=1.0, lambda_u=5.0, lambda_g=0.1)
n = 50

print(f"{'gap':>4} {'F':>10} {'x1':>10}")
for gap in range(0, 31, 2):
    r = solve(Params(n=n, gap=gap, **rates))
    print(f"{gap:4d} {r.fraction_unreliable:10.4f} {r.version_age:10.4f}")

# The two ends of the curve have simpler forms: at gap 0 the sources act as
# a single source of rate lambda_r + lambda_u; as the gap grows unreliable
# packets are never kept and only lambda_r matters.
p = Params(n=n, **rates)
print(f"x1 at gap 0          : {limit_age_g0(p):.4f}")
print(f"x1 as gap -> infinity: {limit_age_ginf(p):.4f}")
print(f"x1 at gap 200        : {solve(p.with_gap(200)).version_age:.4f}")

# The intermediate tables are available too: row k-1 describes a set of k nodes.
tables = solve(p.with_gap(5)).tables
print("threshold probabilities for the whole network:", tables.c[-1].round(4))
