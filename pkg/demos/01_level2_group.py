"""The level-2 congruence group and the two surfaces it carries.

Run:  python demos/01_level2_group.py
"""
from modsurf import Mat, cusps, from_generators, invariants, parabolic_generator_system
from modsurf.fibers import enumerate_lifts, summarize_lifts
from modsurf.surface import hodge_invariants, models, real_topology_extremal

# The group is generated by T^2 and its transpose.
gens = [Mat(1, 2, 0, 1), Mat(1, 0, 2, 1)]
R = from_generators(gens)
print("coset action on", R.size, "cosets")
print("  s =", R.perm_s)
print("  t =", R.perm_t)

inv = invariants(R)
print(f"index {inv.index}, genus {inv.genus}, {inv.cusp_count} cusps, "
      f"torsion-free={inv.torsion_free}, stable under S={inv.s_stable}")
for c in cusps(R):
    print(f"  cusp {c.representative}: width {c.width}, real={c.is_real}")

# Loops around the three cusps; their product is +-1.
loops = parabolic_generator_system(R)
for g in loops:
    print(f"  loop at {g.point}: {g.matrix}")

# Each choice of signs on two of the loops gives a surface.
lifts = enumerate_lifts(loops)
for M in models(R):
    h = hodge_invariants(M)
    print(f"  signs {M.lift.assignment.signs}: fibres {M.config.to_json()}  chi={h.chi_O} h11={h.h11}")

print(summarize_lifts(lifts).to_json())

# The three-star surface is a real K3 surface whose real part is a genus-10 surface.
k3 = next(M for M in models(R) if M.config.nu_star == 3)
print(real_topology_extremal(k3))
