"""The family G_k: surfaces with chi = k whose real part is as large as possible.

Run:  python demos/02_gamma_k_family.py [kmax] [svg-dir]
"""
import sys
import time
from pathlib import Path

from modsurf import build_gamma_k
from modsurf.gamma_family import fundamental_domain_svg
from modsurf.surface import all_star_model, hodge_invariants, ragsdale_viro_check, real_topology_extremal

kmax = int(sys.argv[1]) if len(sys.argv) > 1 else 8
svg_dir = Path(sys.argv[2]) if len(sys.argv) > 2 else None

print(f"{'k':>3} {'mu':>4} {'widths':<28} {'chi':>4} {'h11':>4} {'h1':>4} {'h1alg':>5}  type")
for k in range(2, kmax + 1):
    t0 = time.perf_counter()
    G = build_gamma_k(k)
    M = all_star_model(G.representation, k)
    h = hodge_invariants(M)
    r = real_topology_extremal(M)
    assert ragsdale_viro_check(r, h)
    widths = ",".join(str(c.width) for c in G.cusps())
    print(f"{k:>3} {G.index:>4} {widths:<28} {h.chi_O:>4} {h.h11:>4} {r.h1:>4} {r.h1_alg:>5}  "
          f"{r.type_tag}  ({time.perf_counter() - t0:.2f} s)")
    if svg_dir is not None:
        svg_dir.mkdir(parents=True, exist_ok=True)
        (svg_dir / f"gamma_{k}.svg").write_text(fundamental_domain_svg(G), encoding="utf-8")

# Generators of G_3: the translation T^4 and the two arc pairings.
for g in build_gamma_k(3).generators:
    print(g)
