# How a node chooses between packets.
#
# Every packet is a (reliability, age) pair: reliability 0 came from the
# reliable source, 1 from the unreliable one. A node holding one packet and
# receiving another keeps the fresher packet when both have the same origin.
# When origins differ it keeps the reliable packet as long as it is at most
# `gap` versions older than the unreliable one.
from agegossip import PacketState, merge, set_summary

reliable_stale = PacketState(0, 3)
unreliable_fresh = PacketState(1, 1)

for gap in range(4):
    kept = merge(unreliable_fresh, reliable_stale, gap)
    print(f"gap={gap}: holding {tuple(unreliable_fresh)}, offered {tuple(reliable_stale)} "
          f"-> keeps {tuple(kept)}")

# The same rule summarises a whole set of nodes: the "best" packet of the
# set is the one every member would converge to by exchanging packets.
nodes = [PacketState(0, 6), PacketState(1, 2), PacketState(0, 4), PacketState(1, 5)]
for gap in (0, 1, 2, 3):
    print(f"gap={gap}: best packet of {[tuple(p) for p in nodes]} is "
          f"{tuple(set_summary(nodes, gap))}")

# The empty set has no packet: its age is a distinguished infinity and its
# reliability is undefined.
print("empty set:", set_summary([], 2))
