"""Subgroups that are not in the family: a congruence group and a random one.

Run:  python demos/04_other_subgroups.py
"""
import random

from modsurf import Mat, T, from_generators, invariants
from modsurf.cli import analyze_report
from modsurf.subgroup import from_permutations

# Gamma_0(4) is conjugate to the level-2 group by diag(2, 1), which is not in
# PSL(2,Z): index and cusp count agree, the widths become 1, 4, 1.
R = from_generators([T, Mat(1, 0, 4, 1), Mat(-1, 1, -4, 3)])
r = analyze_report(R)
print(r["subgroup"])
print([l["fibers"] for l in r["lifts"]])

# The full modular group has torsion; no surface is built from it.
print(analyze_report(from_permutations((0,), (0,)))["lifts_unavailable"])

# Random coset actions: keep only the torsion-free genus-0 ones.
rng = random.Random(1)
shown = 0
while shown < 3:
    n = 6 * rng.randint(1, 3)
    # an involution without fixed points and a t making (st)^3 = 1 hold
    ps = list(range(n))
    pairs = list(range(n))
    rng.shuffle(pairs)
    for i in range(0, n, 2):
        ps[pairs[i]], ps[pairs[i + 1]] = pairs[i + 1], pairs[i]
    # u = st of order 3 without fixed points
    tri = list(range(n))
    rng.shuffle(tri)
    u = list(range(n))
    for i in range(0, n, 3):
        a, b, c = tri[i:i + 3]
        u[a], u[b], u[c] = b, c, a
    pt = [u[ps[i]] for i in range(n)]  # t = s^-1 u = s u
    try:
        R = from_permutations(ps, pt)
    except ValueError:
        continue  # not transitive
    inv = invariants(R)
    if inv.genus != 0:
        continue
    rep = analyze_report(R)
    valid = sorted({tuple(sorted(l["fibers"])) for l in rep["lifts"] if l["chi_O"]})
    print(f"index {inv.index}, {inv.cusp_count} cusps, {rep['lift_summary']['raw_lifts']} lifts, "
          f"{len(valid)} fibre multisets, e.g. {list(valid[0])}")
    shown += 1
