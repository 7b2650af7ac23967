"""Build each gadget on a tiny input and read the answer of the source problem back."""

from bilevel_sp import Graph
from bilevel_sp.follower import solve_follower_strong_exact
from bilevel_sp.kcycle import KCycleInstance, solve_kcycle_exact
from bilevel_sp.leader import solve_leader_strong_exact
from bilevel_sp.oracle import hamiltonian_st_path, solve_minmaxham_exact, two_disjoint_paths
from bilevel_sp.reductions import (
    MinMaxHamInstance,
    hampath_to_follower_strong,
    kcycle_to_strong_undir,
    minmaxham_to_strong_undir,
    vdp_to_strong_dir,
)

# Hamiltonian s-t path: the follower stays within eps exactly when one exists.
G = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 2)])
red = hampath_to_follower_strong(G, 0, 3)
f = solve_follower_strong_exact(red.instance, red.X)
print("hampath  follower value", f.value.primary, "<= eps:", f.value.primary <= red.threshold,
      "| direct:", hamiltonian_st_path(G, 0, 3))

# Two vertex-disjoint paths: leader optimum 0 exactly when they exist.
D = Graph(5, [(0, 4), (4, 1), (2, 4), (4, 3)], directed=True)
out = solve_leader_strong_exact(vdp_to_strong_dir(D, 0, 1, 2, 3))
print("vdp      leader optimum", out.leader_value, "| direct:", two_disjoint_paths(D, 0, 1, 2, 3))

# Shortest cycle through required vertices: decode the leader optimum.
kc = KCycleInstance(4, ((0, 1, 2), (1, 2, 1), (0, 2, 4), (2, 3, 1), (0, 3, 1)), {0, 1, 3})
red = kcycle_to_strong_undir(kc)
out = solve_leader_strong_exact(red.instance)
print("kcycle   decoded", red.decode(out.leader_value), "| direct:", solve_kcycle_exact(kc).weight)

# Min-Max-Ham: leader optimum 0 exactly on yes-instances.
mmh = MinMaxHamInstance(G, 0, 3, 2, 3, {0})
out = solve_leader_strong_exact(minmaxham_to_strong_undir(mmh))
print("minmax   leader optimum", out.leader_value, "| direct:", solve_minmaxham_exact(mmh))
