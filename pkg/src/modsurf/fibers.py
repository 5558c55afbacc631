"""Singular fibres of type I_m and I*_m and the lifts of the monodromy.

For a torsion-free genus-0 subgroup the loops around the t cusps satisfy a
single relation P_1 ... P_t = 1, so homomorphic lifts to SL(2,Z) are given
by independent signs on P_1..P_{t-1}; the sign of the last loop is forced.
A lifted loop conjugate to (1, m; 0, 1) gives a fibre I_m, one conjugate to
(-1, -m; 0, -1) gives I*_m.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Literal, Sequence

from .psl2 import IDENTITY, Mat, parabolic_normal_form
from .subgroup import LoopGenerator

COUNT_NOTE = (
    "sign assignments on the t-1 free loop generators give 2^(t-1) distinct lifts; "
    "the stated count of t-1 lifts does not match this raw count and no "
    "equivalence relation reducing one to the other is assumed"
)


class InvalidConfiguration(ValueError):
    """Fibre data that cannot occur on a smooth elliptic surface."""


@dataclass(frozen=True, order=True)
class FiberType:
    star: bool
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"fibre multiplicity must be >= 1, got {self.m}")

    @classmethod
    def parse(cls, text: str) -> "FiberType":
        text = text.strip()
        if not text.startswith("I"):
            raise ValueError(f"cannot parse fibre type {text!r}")
        if text.startswith("I*"):
            return cls(True, int(text[2:]))
        return cls(False, int(text[1:]))

    def __str__(self):
        return f"I*{self.m}" if self.star else f"I{self.m}"


def I(m: int) -> FiberType:  # noqa: E743
    return FiberType(False, m)


def Istar(m: int) -> FiberType:
    return FiberType(True, m)


@dataclass(frozen=True)
class RealFiberForm:
    """One row of the real classification of I_m / I*_m fibres.

    ``nearby_components`` is the number of components of a nearby smooth
    real fibre, or ``"*"`` when that number changes across the singular
    fibre.  ``chi_real`` is the Euler characteristic of the real part.
    """

    type: FiberType
    nearby_components: int | Literal["*"]
    chi_real: int


def chi_complex(f: FiberType) -> int:
    return f.m + 6 if f.star else f.m


def components_off_section(f: FiberType) -> int:
    """Number of irreducible components of the fibre not meeting the zero section."""
    return f.m + 4 if f.star else f.m - 1


def real_forms(f: FiberType) -> list[RealFiberForm]:
    m = f.m
    if f.star:
        rows = [(2, -m - 4), (1, -m - 2)] if m % 2 == 0 else [("*", -m - 4), ("*", -m - 2)]
    elif m % 2 == 0:
        rows = [(2, -m), (2, 0), (1, -m), (1, 0)]
    else:
        rows = [("*", -m), ("*", 1)]
    return [RealFiberForm(f, n, chi) for n, chi in rows]


@dataclass(frozen=True)
class FiberConfiguration:
    fibers: tuple[FiberType, ...]

    @property
    def nu_star(self) -> int:
        return sum(1 for f in self.fibers if f.star)

    @property
    def degree(self) -> int:
        """Sum of the multiplicities, i.e. deg J = index of the subgroup."""
        return sum(f.m for f in self.fibers)

    def multiset(self) -> tuple[FiberType, ...]:
        return tuple(sorted(self.fibers))

    def to_json(self) -> list[str]:
        return [str(f) for f in self.fibers]


def chi_identity(config: FiberConfiguration) -> int:
    """Holomorphic Euler characteristic (mu + 6 nu(I*)) / 12."""
    total = config.degree + 6 * config.nu_star
    if total % 12:
        raise InvalidConfiguration(
            f"{config.to_json()}: mu + 6 nu(I*) = {total} is not divisible by 12; "
            "not a valid fibre configuration for a smooth elliptic surface")
    assert sum(chi_complex(f) for f in config.fibers) == total
    return total // 12


@dataclass(frozen=True)
class LiftAssignment:
    """Signs on the loop generators relative to their trace +2 representatives."""

    signs: tuple[int, ...]
    matrices: tuple[Mat, ...]

    def product(self) -> Mat:
        out = IDENTITY
        for M in self.matrices:
            out = out @ M
        return out


@dataclass(frozen=True)
class Lift:
    """A lift; ``config`` lists fibres by cusp index, ``loop_cusps[i]`` is the cusp of loop i."""

    assignment: LiftAssignment
    config: FiberConfiguration
    loop_cusps: tuple[int, ...]

    def to_json(self) -> dict:
        return {"signs": list(self.assignment.signs), "fibers": self.config.to_json(),
                "nu_star": self.config.nu_star}


def positive_lift(M: Mat) -> Mat:
    """The SL(2,Z) sign representative with trace +2."""
    return M if M.trace > 0 else -M


def fiber_of(L: Mat) -> FiberType:
    sign, shift = parabolic_normal_form(L)
    return FiberType(sign < 0, abs(shift))


def enumerate_lifts(loops: Sequence[LoopGenerator | Mat]) -> list[Lift]:
    """All 2^(t-1) lifts of the monodromy and their fibre configurations.

    ``loops`` must multiply to +-1 in SL(2,Z).  The returned lifts each
    multiply to exactly 1, and -1 never lies in their image because a
    section over a free group is injective; both facts are asserted.
    Results are sorted by sign vector (+1 before -1).
    """
    mats = [positive_lift(g.matrix if isinstance(g, LoopGenerator) else g) for g in loops]
    t = len(mats)
    loop_cusps = tuple(g.cusp if isinstance(g, LoopGenerator) else i for i, g in enumerate(loops))
    if sorted(loop_cusps) != list(range(t)):
        raise ValueError("loops must cover each cusp exactly once")
    if t == 0:
        raise ValueError("no loops given")
    base = IDENTITY
    for M in mats:
        base = base @ M
    if base == IDENTITY:
        closing = 1
    elif base == -IDENTITY:
        closing = -1
    else:
        raise ValueError(f"loop product is {base}, not +-1")
    out = []
    for signs in itertools.product((1, -1), repeat=t - 1):
        last = closing
        for e in signs:
            last *= e
        eps = signs + (last,)
        lifted = tuple(M if e > 0 else -M for M, e in zip(mats, eps))
        assignment = LiftAssignment(eps, lifted)
        assert assignment.product() == IDENTITY
        assert all(L != -IDENTITY for L in lifted)
        fibers: list[FiberType | None] = [None] * t
        for cusp, L in zip(loop_cusps, lifted):
            fibers[cusp] = fiber_of(L)
        out.append(Lift(assignment, FiberConfiguration(tuple(fibers)), loop_cusps))
    return out


@dataclass(frozen=True)
class LiftSummary:
    raw_count: int
    distinct_multisets: int
    stated_count: int
    note: str

    @property
    def discrepancy(self) -> bool:
        return self.raw_count != self.stated_count

    @property
    def relabeling_classes(self) -> int:
        # relabelings must preserve cusp widths, and the fibre type records the
        # width, so classes up to relabeling are exactly the multisets
        return self.distinct_multisets

    def to_json(self) -> dict:
        return {"raw_lifts": self.raw_count, "distinct_fiber_multisets": self.distinct_multisets,
                "distinct_up_to_cusp_relabeling": self.relabeling_classes,
                "stated_count_t_minus_1": self.stated_count, "discrepancy": self.discrepancy,
                "note": self.note if self.discrepancy else ""}


def summarize_lifts(lifts: Sequence[Lift]) -> LiftSummary:
    t = len(lifts[0].config.fibers)
    multisets = Counter(l.config.multiset() for l in lifts)
    return LiftSummary(len(lifts), len(multisets), t - 1, COUNT_NOTE)


def all_star_lift(lifts: Sequence[Lift]) -> Lift | None:
    for l in lifts:
        if all(f.star for f in l.config.fibers):
            return l
    return None
