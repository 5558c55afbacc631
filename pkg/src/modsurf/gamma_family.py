"""The level-2 congruence group and the genus-0 family G_k inside it.

G_k is cut out by the strip |Re z| <= k-1 minus the half-disks of radius
1/2 centred at the odd half-integers.  The vertical sides are paired by
T^(2(k-1)) and the arc over [-j, -(j-1)] is paired with the arc over
[j-1, j] by

    g_j = (2j-1, 2j(j-1); 2, 2j-1),   g_j(-j) = j,  g_j(-(j-1)) = j-1,

which is the unique level-2 matrix with those endpoint conditions.  Every
advertised property is re-checked when the group is built.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .psl2 import INF, Mat, T, mobius_act, s_involution
from .subgroup import (
    CosetRepresentation, CuspClass, SubgroupInvariants, cusps, from_generators,
    invariants, membership,
)


class FamilyCheckFailed(AssertionError):
    pass


@dataclass(frozen=True)
class GammaK:
    k: int
    generators: tuple[Mat, ...]
    representation: CosetRepresentation

    @property
    def index(self) -> int:
        return self.representation.size

    def invariants(self) -> SubgroupInvariants:
        return invariants(self.representation)

    def cusps(self) -> list[CuspClass]:
        return cusps(self.representation)


def gamma2_congruence_test(A: Mat) -> bool:
    """a = d = 1 and b = c = 0 mod 2 (automatically sign-insensitive)."""
    return A.a % 2 == 1 and A.d % 2 == 1 and A.b % 2 == 0 and A.c % 2 == 0


def arc_pairing(j: int) -> Mat:
    return Mat(2 * j - 1, 2 * j * (j - 1), 2, 2 * j - 1)


def gamma_k_generators(k: int) -> list[Mat]:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    return [T ** (2 * (k - 1))] + [arc_pairing(j) for j in range(1, k)]


def _check_generators(k: int, gens: list[Mat]) -> None:
    for j in range(1, k):
        g = gens[j]
        if g.a * g.d - g.b * g.c != 1:
            raise FamilyCheckFailed(f"g_{j} has determinant != 1")
        if mobius_act(g, Fraction(-j)) != j or mobius_act(g, Fraction(-(j - 1))) != j - 1:
            raise FamilyCheckFailed(f"g_{j} does not pair the arcs over [-{j}, -{j - 1}] and [{j - 1}, {j}]")
        if s_involution(g) != g.inv():
            raise FamilyCheckFailed(f"S(g_{j}) != g_{j}^-1")
    for g in gens:
        if not gamma2_congruence_test(g):
            raise FamilyCheckFailed(f"{g} is not congruent to 1 mod 2")


def build_gamma_k(k: int, budget: int | None = None) -> GammaK:
    gens = gamma_k_generators(k)
    _check_generators(k, gens)
    rep = from_generators(gens, budget=budget)
    G = GammaK(k, tuple(gens), rep)
    inv = G.invariants()
    cl = G.cusps()
    failures = []
    if inv.index != 6 * (k - 1):
        failures.append(f"index {inv.index} != {6 * (k - 1)}")
    if inv.genus != 0:
        failures.append(f"genus {inv.genus} != 0")
    if inv.cusp_count != k + 1:
        failures.append(f"{inv.cusp_count} cusps, expected {k + 1}")
    if any(c.width % 2 for c in cl):
        failures.append("odd cusp width")
    if not inv.torsion_free:
        failures.append("torsion present")
    if not inv.s_stable:
        failures.append("not stable under S")
    if not all(membership(rep, s_involution(g)) for g in gens):
        failures.append("S maps a generator outside the group")
    if failures:
        raise FamilyCheckFailed(f"G_{k}: " + "; ".join(failures))
    return G


def gamma2(budget: int | None = None) -> GammaK:
    """The principal congruence subgroup of level 2 (G_2 of the family)."""
    return build_gamma_k(2, budget=budget)


def expected_cusp_classes(k: int) -> list[set]:
    """Cusp classes {oo}, {0}, {j, -j} implied by the side pairings."""
    return [{INF}, {Fraction(0)}] + [{Fraction(j), Fraction(-j)} for j in range(1, k)]


# -- drawing -----------------------------------------------------------------

def fundamental_domain_svg(G: GammaK, scale: float = 120.0, height: float = 2.2) -> str:
    """SVG 1.1 drawing of the fundamental domain of G_k.

    Vertical sides carry beta (right) and its mirror (left); the arcs over
    [j-1, j] are gamma_j with mirrors over [-j, -(j-1)].  The real locus of
    the quotient (imaginary axis, right side, right arcs) is drawn in red.
    """
    k = G.k
    w = k - 1
    margin = 0.6
    x0, x1 = -w - margin, w + margin
    W = (x1 - x0) * scale
    H = (height + 0.4) * scale

    def px(x):
        return round((x - x0) * scale, 3)

    def py(y):
        return round((height - y) * scale + 0.2 * scale, 3)

    real_style = 'stroke="#c0392b" stroke-width="3" fill="none"'
    side_style = 'stroke="#1f3b73" stroke-width="2" fill="none"'
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W:.0f}" height="{H:.0f}" '
        f'viewBox="0 0 {W:.3f} {H:.3f}">',
        f'<title>Fundamental domain of Gamma_{k}</title>',
        f'<line x1="0" y1="{py(0)}" x2="{W:.3f}" y2="{py(0)}" stroke="#888" stroke-width="1"/>',
    ]
    # filled region: strip above the arcs
    path = [f"M {px(-w)} {py(height)}", f"L {px(-w)} {py(0)}"]
    for n in range(-w, w):
        path.append(f"A {scale / 2} {scale / 2} 0 0 1 {px(n + 1)} {py(0)}")
    path.append(f"L {px(w)} {py(height)} Z")
    out.append(f'<path class="domain" d="{" ".join(path)}" fill="#dde6f5" stroke="none"/>')
    out.append(f'<line class="side" x1="{px(-w)}" y1="{py(0)}" x2="{px(-w)}" y2="{py(height)}" {side_style}/>')
    out.append(f'<line class="side real" x1="{px(w)}" y1="{py(0)}" x2="{px(w)}" y2="{py(height)}" {real_style}/>')
    labels = [(px(w) + 6, py(height * 0.75), f"β{_sub(w)}"), (px(-w) - 30, py(height * 0.75), f"β̃{_sub(w)}")]
    for j in range(1, k):
        for sign in (1, -1):
            a, b = sorted((sign * (j - 1), sign * j))
            style = real_style if sign > 0 else side_style
            cls = "arc real" if sign > 0 else "arc"
            out.append(f'<path class="{cls}" d="M {px(a)} {py(0)} A {scale / 2} {scale / 2} 0 0 1 '
                       f'{px(b)} {py(0)}" {style}/>')
            name = "γ" if sign > 0 else "γ̃"
            labels.append((px((a + b) / 2) - 8, py(0.5) - 6, f"{name}{_sub(j)}"))
    out.append(f'<line class="axis real" x1="{px(0)}" y1="{py(0)}" x2="{px(0)}" y2="{py(height)}" '
               f'{real_style} stroke-dasharray="6,4"/>')
    for x, y, text in labels:
        out.append(f'<text x="{x}" y="{y}" font-family="serif" font-size="16">{text}</text>')
    for n in range(-w, w + 1):
        out.append(f'<text x="{px(n) - 4}" y="{py(0) + 18}" font-family="serif" font-size="12">{n}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _sub(n: int) -> str:
    return str(n).translate(str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉"))


__all__ = [
    "GammaK", "FamilyCheckFailed", "gamma2", "gamma2_congruence_test", "build_gamma_k",
    "gamma_k_generators", "arc_pairing", "expected_cusp_classes", "fundamental_domain_svg",
]
