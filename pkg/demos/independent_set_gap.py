"""The independent-set chain gadget on the path 0-1-2.

{0, 2} is independent, so the threshold 3n - k = 7 should be reachable. It is
not: once the leader buys the pairs of 0 and 2, the middle vertex of 1 is
still reachable through the two shortcuts, and the follower walks
0_2 -> 1_2 -> 2_2 for free. The leader's best is 8.
"""

from bilevel_sp import Graph
from bilevel_sp.follower import solve_follower_weak
from bilevel_sp.oracle import brute_force_bilevel, max_independent_set
from bilevel_sp.reductions import independent_set_to_weak

G = Graph(3, [(0, 1), (1, 2)])
inst, T = independent_set_to_weak(G, 2)
X = {e.id for e in inst.edges if e.is_leader and e.u // 3 in (0, 2)}
response = solve_follower_weak(inst, X)
print("alpha(G) =", max_independent_set(G), " threshold =", T)
print("buy pairs of 0 and 2 -> follower path", response.response.path.vertices,
      "leader pays", inst.cost(X) + response.value.secondary)
print("weak optimum over all X:", brute_force_bilevel(inst, "weak").leader_value)
