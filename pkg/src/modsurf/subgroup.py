"""Finite-index subgroups of PSL(2,Z) as permutation actions on cosets.

A subgroup G of index mu is encoded by the right action of the two
generators S and T on the cosets G\\PSL(2,Z), numbered 0..mu-1 with coset 0
equal to G itself.  Coset ``i`` acted on by ``x`` is ``perm_x[i]``.  A matrix
lies in G exactly when its generator word sends coset 0 back to 0.

Useful dictionary with the Farey tessellation (for torsion-free G): cosets
are directed Farey edges modulo G, cycles of ``s`` are undirected edges,
cycles of ``s*t`` are ideal triangles, and cycles of ``t`` are cusps.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .psl2 import (
    INF, IDENTITY, LETTER_S, LETTER_T, LETTER_TI, S, T,
    ExtendedRational, GeneratorWord, Mat, format_cusp, is_parabolic,
    matrix_to_word, mobius_act, parabolic_fixed_point, parabolic_normal_form,
    s_involution,
)

DEFAULT_BUDGET = 10_000
BUDGET_ENV = "MODSURF_COSET_BUDGET"


class RelationViolation(ValueError):
    """A permutation pair that does not define an action of PSL(2,Z)."""


class IndexBoundExceeded(RuntimeError):
    """Coset enumeration ran out of budget before the table closed."""


class NotGenusZeroTorsionFree(ValueError):
    pass


def _budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


@dataclass(frozen=True)
class CosetRepresentation:
    perm_s: tuple[int, ...]
    perm_t: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.perm_s)

    @property
    def perm_t_inv(self) -> tuple[int, ...]:
        inv = [0] * self.size
        for i, j in enumerate(self.perm_t):
            inv[j] = i
        return tuple(inv)

    def to_json(self) -> dict:
        return {"size": self.size, "perm_s": list(self.perm_s), "perm_t": list(self.perm_t)}


@dataclass(frozen=True)
class CuspClass:
    representative: ExtendedRational
    width: int
    coset_cycle: tuple[int, ...]
    is_real: bool

    def to_json(self) -> dict:
        return {"representative": format_cusp(self.representative), "width": self.width,
                "cosets": list(self.coset_cycle), "real": self.is_real}


@dataclass(frozen=True)
class SubgroupInvariants:
    index: int
    cusp_count: int
    genus: int
    e2: int
    e3: int
    torsion_free: bool
    s_stable: bool

    def to_json(self) -> dict:
        return {"mu": self.index, "cusps": self.cusp_count, "genus": self.genus,
                "e2": self.e2, "e3": self.e3, "torsion_free": self.torsion_free,
                "s_stable": self.s_stable}


# -- validation --------------------------------------------------------------

def validate(perm_s: Sequence[int], perm_t: Sequence[int]) -> list[str]:
    """Return a list of human-readable violations (empty when valid)."""
    n = len(perm_s)
    problems = []
    if n == 0:
        return ["empty coset set"]
    if len(perm_t) != n:
        return [f"perm_s has {n} points but perm_t has {len(perm_t)}"]
    for name, p in (("perm_s", perm_s), ("perm_t", perm_t)):
        if sorted(p) != list(range(n)):
            problems.append(f"{name} is not a permutation of 0..{n - 1}")
    if problems:
        return problems
    for i in range(n):
        if perm_s[perm_s[i]] != i:
            problems.append(f"s^2 != 1 at coset {i}")
            break
    for i in range(n):
        j = i
        for _ in range(3):
            j = perm_t[perm_s[j]]
        if j != i:
            problems.append(f"(st)^3 != 1 at coset {i}")
            break
    seen = {0}
    todo = [0]
    while todo:
        i = todo.pop()
        for j in (perm_s[i], perm_t[i]):
            if j not in seen:
                seen.add(j)
                todo.append(j)
    if len(seen) != n:
        problems.append(f"action is not transitive ({len(seen)} of {n} cosets reachable from 0)")
    return problems


def from_permutations(perm_s: Sequence[int], perm_t: Sequence[int]) -> CosetRepresentation:
    problems = validate(perm_s, perm_t)
    if problems:
        raise RelationViolation("; ".join(problems))
    return CosetRepresentation(tuple(perm_s), tuple(perm_t))


def full_group() -> CosetRepresentation:
    return CosetRepresentation((0,), (0,))


# -- Todd-Coxeter ------------------------------------------------------------

# table columns: s (an involution, its own inverse), t, t^-1
_S, _T, _TI = 0, 1, 2
_INV = (0, 2, 1)
_LETTER_COL = {LETTER_S: _S, LETTER_T: _T, LETTER_TI: _TI}
_RELATORS = ((_S, _T, _S, _T, _S, _T),)


class _CosetTable:
    """HLT coset enumeration over <s, t | s^2, (st)^3>."""

    def __init__(self, budget: int):
        self.budget = budget
        self.table: list[list[int | None]] = [[None, None, None]]
        self.parent = [0]

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c: int, x: int) -> int:
        if len(self.table) >= self.budget:
            raise IndexBoundExceeded(f"coset enumeration exceeded {self.budget} cosets")
        d = len(self.table)
        self.table.append([None, None, None])
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][_INV[x]] = c
        return d

    def scan_and_fill(self, c: int, word: Sequence[int]) -> None:
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and self.table[f][word[i]] is not None:
                f = self.table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and self.table[b][_INV[word[j]]] is not None:
                b = self.table[b][_INV[word[j]]]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                self.table[f][word[i]] = b
                self.table[b][_INV[word[i]]] = f
                return
            self.define(f, word[i])

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        pos = 0
        while pos < len(queue):
            g = queue[pos]
            pos += 1
            for x in range(3):
                d = self.table[g][x]
                if d is None:
                    continue
                if self.table[d][_INV[x]] == g:
                    self.table[d][_INV[x]] = None
                mu, nu = self.rep(g), self.rep(d)
                if self.table[mu][x] is not None:
                    self._merge(nu, self.table[mu][x], queue)
                elif self.table[nu][_INV[x]] is not None:
                    self._merge(mu, self.table[nu][_INV[x]], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][_INV[x]] = mu

    def live(self, c: int) -> bool:
        return self.parent[c] == c

    def run(self, subgroup_words: Iterable[Sequence[int]]) -> None:
        for w in subgroup_words:
            if w:
                self.scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            for r in _RELATORS:
                if not self.live(c):
                    break
                self.scan_and_fill(c, r)
            if self.live(c):
                for x in range(3):
                    if self.table[c][x] is None:
                        self.define(c, x)
            c += 1

    def standardized(self) -> CosetRepresentation:
        # relabel live cosets in breadth-first order from 0 (columns s, t, t^-1)
        label = {0: 0}
        order = [0]
        pos = 0
        while pos < len(order):
            c = order[pos]
            pos += 1
            for x in range(3):
                d = self.rep(self.table[c][x])
                if d not in label:
                    label[d] = len(order)
                    order.append(d)
        perm_s = tuple(label[self.rep(self.table[c][_S])] for c in order)
        perm_t = tuple(label[self.rep(self.table[c][_T])] for c in order)
        return CosetRepresentation(perm_s, perm_t)


def word_columns(word: GeneratorWord) -> list[int]:
    return [_LETTER_COL[x] for x in word]


def from_generators(gens: Iterable[Mat], budget: int | None = None) -> CosetRepresentation:
    """Coset action of the subgroup of PSL(2,Z) generated by ``gens``.

    Raises :class:`IndexBoundExceeded` when more than ``budget`` cosets get
    defined (the subgroup may have infinite index).
    """
    words = [word_columns(matrix_to_word(g)) for g in gens]
    table = _CosetTable(_budget(budget))
    table.run(words)
    rep = table.standardized()
    problems = validate(rep.perm_s, rep.perm_t)
    if problems:
        raise AssertionError("coset enumeration produced an invalid table: " + "; ".join(problems))
    return rep


# -- basic queries ------------------------------------------------------------

def act(R: CosetRepresentation, word: GeneratorWord, start: int = 0) -> int:
    perms = {LETTER_S: R.perm_s, LETTER_T: R.perm_t, LETTER_TI: R.perm_t_inv}
    c = start
    for x in word:
        c = perms[x][c]
    return c


def membership(R: CosetRepresentation, A: Mat) -> bool:
    return act(R, matrix_to_word(A)) == 0


def coset_words(R: CosetRepresentation) -> list[GeneratorWord]:
    """Shortest words w_i (breadth first, letters S, T, T^-1) with 0 . w_i = i."""
    words: list[GeneratorWord | None] = [None] * R.size
    words[0] = GeneratorWord()
    queue = deque([0])
    perms = ((LETTER_S, R.perm_s), (LETTER_T, R.perm_t), (LETTER_TI, R.perm_t_inv))
    while queue:
        c = queue.popleft()
        for letter, p in perms:
            d = p[c]
            if words[d] is None:
                words[d] = GeneratorWord(words[c] + (letter,))
                queue.append(d)
    return words


def coset_matrices(R: CosetRepresentation) -> list[Mat]:
    return [w.evaluate() for w in coset_words(R)]


def _cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        out.append(tuple(cyc))
    return out


def pointed_isomorphism(perm_s1, perm_t1, perm_s2, perm_t2) -> list[int] | None:
    """The bijection phi with phi(0) = 0 intertwining both pairs, if any."""
    n = len(perm_s1)
    if len(perm_s2) != n:
        return None
    phi: list[int | None] = [None] * n
    used = [False] * n
    phi[0] = 0
    used[0] = True
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for p1, p2 in ((perm_s1, perm_s2), (perm_t1, perm_t2)):
            j, k = p1[i], p2[phi[i]]
            if phi[j] is None:
                if used[k]:
                    return None
                phi[j] = k
                used[k] = True
                queue.append(j)
            elif phi[j] != k:
                return None
    if any(x is None for x in phi):
        return None
    return phi


def same_subgroup(R1: CosetRepresentation, R2: CosetRepresentation) -> bool:
    return pointed_isomorphism(R1.perm_s, R1.perm_t, R2.perm_s, R2.perm_t) is not None


def s_conjugation_map(R: CosetRepresentation) -> list[int] | None:
    """Permutation of cosets induced by the involution S, or None if G is not S-stable.

    S fixes the generator S in PSL(2,Z) and inverts T, so G is S-stable
    exactly when (perm_s, perm_t) and (perm_s, perm_t^-1) are isomorphic as
    pointed actions.
    """
    return pointed_isomorphism(R.perm_s, R.perm_t, R.perm_s, R.perm_t_inv)


def is_s_stable(R: CosetRepresentation) -> bool:
    return s_conjugation_map(R) is not None


def cusps(R: CosetRepresentation) -> list[CuspClass]:
    """One cusp class per cycle of ``perm_t``, ordered by smallest coset index."""
    mats = coset_matrices(R)
    phi = s_conjugation_map(R)
    cycles = sorted((_rotate_to_min(c) for c in _cycles(R.perm_t)), key=lambda c: c[0])
    owner = {}
    for n, cyc in enumerate(cycles):
        for c in cyc:
            owner[c] = n
    out = []
    for n, cyc in enumerate(cycles):
        real = phi is not None and owner[phi[cyc[0]]] == n
        out.append(CuspClass(mobius_act(mats[cyc[0]], INF), len(cyc), cyc, real))
    return out


def _rotate_to_min(cyc: tuple[int, ...]) -> tuple[int, ...]:
    k = cyc.index(min(cyc))
    return cyc[k:] + cyc[:k]


def invariants(R: CosetRepresentation) -> SubgroupInvariants:
    mu = R.size
    t = len(_cycles(R.perm_t))
    e2 = sum(1 for i in range(mu) if R.perm_s[i] == i)
    e3 = sum(1 for i in range(mu) if R.perm_t[R.perm_s[i]] == i)
    g = 1 + Fraction(mu, 12) - Fraction(e2, 4) - Fraction(e3, 3) - Fraction(t, 2)
    if g.denominator != 1 or g < 0:
        raise AssertionError(f"non-integral genus {g} for a valid coset table")
    inv = SubgroupInvariants(mu, t, int(g), e2, e3, e2 == 0 and e3 == 0, is_s_stable(R))
    if inv.torsion_free:
        assert 6 * (2 * inv.genus - 2 + t) == mu
    return inv


def cusp_stabilizer(R: CosetRepresentation, cusp: CuspClass) -> Mat:
    """Generator g T^w g^-1 of the stabilizer of the cusp's representative."""
    g = coset_matrices(R)[cusp.coset_cycle[0]]
    return g @ T ** cusp.width @ g.inv()


# -- parabolic generators of a genus-0 torsion-free subgroup -------------------

@dataclass(frozen=True)
class LoopGenerator:
    """Image of a small positive loop around one cusp."""

    matrix: Mat
    cusp: int  # index into cusps(R)
    point: ExtendedRational  # the polygon vertex it fixes


@dataclass
class SpanningPolygon:
    """Ideal polygon glued from Farey triangles along a spanning tree.

    ``vertices`` are listed counterclockwise; side ``i`` joins ``vertices[i]``
    to ``vertices[i + 1]``.  ``pairing[i]`` is the partner side and
    ``side_maps[i]`` the element of G mapping the partner side onto side i.
    """

    vertices: list[ExtendedRational]
    pairing: list[int]
    side_maps: list[Mat]
    vertex_cusp: list[int] = field(default_factory=list)


def spanning_polygon(R: CosetRepresentation) -> SpanningPolygon:
    n_cos = R.size
    ps, pt = R.perm_s, R.perm_t

    def u(c):
        return pt[ps[c]]

    mats: list[Mat | None] = [None] * n_cos
    in_poly = [False] * n_cos
    interior = [False] * n_cos
    order: list[int] = []

    def add_triangle(c, g):
        for _ in range(3):
            mats[c] = g
            in_poly[c] = True
            order.append(c)
            g = g @ S @ T
            c = u(c)

    add_triangle(0, IDENTITY)
    pos = 0
    while pos < len(order):
        c = order[pos]
        pos += 1
        d = ps[c]
        if not in_poly[d]:
            interior[c] = interior[d] = True
            add_triangle(d, mats[c] @ S)
    boundary = [c for c in range(n_cos) if not interior[c]]
    if not boundary:
        raise NotGenusZeroTorsionFree("polygon has no free sides")

    start = 0 if not interior[0] else boundary[0]
    walk = [start]
    while True:
        x = u(walk[-1])
        while interior[x]:
            x = pt[x]
        if x == start:
            break
        walk.append(x)
    if len(walk) != len(boundary):
        raise AssertionError("boundary walk did not visit every free side")

    n = len(walk)
    # the walk runs clockwise; side i (counterclockwise) is coset walk[n-1-i]
    side_coset = [walk[n - 1 - i] for i in range(n)]
    index_of = {c: i for i, c in enumerate(side_coset)}
    cusp_owner = {}
    for k, cusp in enumerate(cusps(R)):
        for c in cusp.coset_cycle:
            cusp_owner[c] = k
    vertices, pairing, side_maps, vertex_cusp = [], [], [], []
    for i, c in enumerate(side_coset):
        partner = ps[c]
        pairing.append(index_of[partner])
        side_maps.append(mats[c] @ S @ mats[partner].inv())
        # directed edge of coset c runs from g.oo to g.0; counterclockwise side i
        # runs the other way, so it starts at g_c . 0
        vertices.append(mobius_act(mats[c], Fraction(0)))
        # the directed edge of coset s(c) leaves that vertex
        vertex_cusp.append(cusp_owner[ps[c]])
    for i in range(n):
        if mobius_act(mats[side_coset[i]], INF) != vertices[(i + 1) % n]:
            raise AssertionError(f"polygon sides {i} and {i + 1} do not meet")
    return SpanningPolygon(vertices, pairing, side_maps, vertex_cusp)


def parabolic_generator_system(R: CosetRepresentation) -> list[LoopGenerator]:
    """Parabolics P_1..P_t, one per cusp, with P_1 P_2 ... P_t = 1 in PSL(2,Z).

    The loops are read off the corners of the spanning polygon: leaving the
    corner at vertex i through side i-1 lands at the corner of the partner
    side, and the product of the side maps met along a full turn fixes the
    vertex.  Cycles are ordered by their first corner counterclockwise from
    the basepoint side and each product starts at that corner; for a
    non-crossing side pairing (genus 0) the ordered product telescopes to
    the identity, which is checked exactly.
    """
    inv = invariants(R)
    if not inv.torsion_free:
        raise NotGenusZeroTorsionFree(f"subgroup has torsion (e2={inv.e2}, e3={inv.e3})")
    if inv.genus != 0:
        raise NotGenusZeroTorsionFree(f"base curve has genus {inv.genus}")
    poly = spanning_polygon(R)
    n = len(poly.vertices)
    cl = cusps(R)
    seen = [False] * n
    gens = []
    for i in range(n):
        if seen[i]:
            continue
        P = IDENTITY
        j = i
        while not seen[j]:
            seen[j] = True
            P = P @ poly.side_maps[(j - 1) % n]
            j = poly.pairing[(j - 1) % n]
        if j != i:
            raise AssertionError("corner cycle did not close")
        gens.append(LoopGenerator(P, poly.vertex_cusp[i], poly.vertices[i]))
    _check_generator_system(gens, cl)
    return gens


def _check_generator_system(gens: list[LoopGenerator], cl: list[CuspClass]) -> None:
    if sorted(g.cusp for g in gens) != list(range(len(cl))):
        raise AssertionError("corner cycles do not match the cusp classes")
    prod = IDENTITY
    for g in gens:
        if not is_parabolic(g.matrix):
            raise AssertionError(f"loop generator {g.matrix} is not parabolic")
        if parabolic_fixed_point(g.matrix) != g.point:
            raise AssertionError(f"loop generator {g.matrix} does not fix {g.point}")
        if abs(parabolic_normal_form(g.matrix)[1]) != cl[g.cusp].width:
            raise AssertionError("loop generator is not primitive in the cusp stabilizer")
        prod = prod @ g.matrix
    if not prod.psl_eq(IDENTITY):
        raise AssertionError(f"product of loop generators is {prod}, not +-1")


def s_image_members(R: CosetRepresentation, gens: Iterable[Mat]) -> bool:
    return all(membership(R, s_involution(g)) for g in gens)
