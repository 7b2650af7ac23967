"""Weak versus strong path completion on the smallest instance where they differ.

The leader owns a free edge s-v. Under weak completion the follower may ignore
it and take s-t (leader pays 5); under strong completion buying it forces the
follower through v (leader pays 0).
"""

from bilevel_sp import BilevelInstance, brute_force_bilevel, solve_leader_strong_exact, solve_leader_weak_enum

inst = BilevelInstance.from_edges(
    3,
    [(0, 1, "L", 0, 0), (0, 2, "F", 5, 0), (1, 2, "F", 0, 1)],
    s=0,
    t=2,
)

for name, solver, variant in (("weak", solve_leader_weak_enum, "weak"), ("strong", solve_leader_strong_exact, "strong")):
    out = solver(inst)
    check = brute_force_bilevel(inst, variant)
    print(f"{name:>6}: leader pays {out.leader_value}, X={sorted(out.X)}, path={out.Y.path.vertices}"
          f"  (brute force agrees: {check.leader_value == out.leader_value})")
