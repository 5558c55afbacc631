"""Real elliptic modular surfaces over a genus-0 base.

A model is a coset representation of the base subgroup together with a
lift of its monodromy.  From it we read the Hodge data, and for the
extremal all-I* models also the topology of the real part.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .fibers import (
    FiberConfiguration, Lift, chi_complex, chi_identity, components_off_section,
    enumerate_lifts, real_forms,
)
from .subgroup import (
    CosetRepresentation, CuspClass, SubgroupInvariants, cusps, invariants,
    parabolic_generator_system,
)


class PreconditionFailed(ValueError):
    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


class InequalityViolated(AssertionError):
    pass


@dataclass(frozen=True)
class SurfaceModel:
    base: CosetRepresentation
    lift: Lift
    cusps: tuple[CuspClass, ...]
    genus: int
    has_real_section: bool = True
    multiple_fiber: bool = False
    k: int | None = None

    def __post_init__(self):
        if len(self.config.fibers) != len(self.cusps):
            raise ValueError("one fibre per cusp expected")
        if self.config.degree != self.base.size:
            raise ValueError(f"sum of multiplicities {self.config.degree} != index {self.base.size}")

    @property
    def config(self) -> FiberConfiguration:
        return self.lift.config

    @property
    def cusps_all_real(self) -> bool:
        return all(c.is_real for c in self.cusps)


def models(R: CosetRepresentation, k: int | None = None) -> list[SurfaceModel]:
    """One model per lift, in the order of :func:`fibers.enumerate_lifts`."""
    inv = invariants(R)
    cl = tuple(cusps(R))
    return [SurfaceModel(R, l, cl, inv.genus, k=k)
            for l in enumerate_lifts(parabolic_generator_system(R))]


def all_star_model(R: CosetRepresentation, k: int | None = None) -> SurfaceModel:
    for M in models(R, k):
        if all(f.star for f in M.config.fibers):
            return M
    raise LookupError("no lift with every fibre of type I*")


@dataclass(frozen=True)
class HodgeInvariants:
    q: int
    chi_O: int
    h11: int | None  # None for a non-regular surface
    e_topological: int

    @property
    def regular(self) -> bool:
        return self.q == 0

    def to_json(self) -> dict:
        return {"q": self.q, "chi_O": self.chi_O,
                "h11": self.h11 if self.regular else "non-regular",
                "e": self.e_topological}


def hodge_invariants(M: SurfaceModel) -> HodgeInvariants:
    chi = chi_identity(M.config)
    e = sum(chi_complex(f) for f in M.config.fibers)
    assert e == 12 * chi
    h11 = 10 * chi if M.genus == 0 else None
    return HodgeInvariants(M.genus, chi, h11, e)


def is_normalized(M: SurfaceModel) -> bool:
    # fibres I_m / I*_m with a section contain no (-1)-curve and are never multiple
    return not M.multiple_fiber and M.has_real_section


Orientability = Literal["orientable", "non-orientable", "undetermined"]


def orientability(chi_O: int, has_real_section: bool, nonempty: bool | None = None) -> Orientability:
    """Orientability of X(R) from the canonical class K = (chi - 2) F.

    A real section makes the real part nonempty.  For even chi, K is an even
    multiple of a fibre and X(R) is orientable; for odd chi the real section
    meets K(R) in an odd number of points, so X(R) is not orientable.
    """
    if nonempty is None:
        nonempty = has_real_section
    if chi_O % 2 == 0 and nonempty:
        return "orientable"
    if chi_O % 2 == 1 and has_real_section:
        return "non-orientable"
    return "undetermined"


def model_orientability(M: SurfaceModel) -> Orientability:
    if M.genus != 0 or not is_normalized(M):
        return "undetermined"
    return orientability(hodge_invariants(M).chi_O, M.has_real_section)


@dataclass(frozen=True)
class ConnectednessCertificate:
    bound: int
    certified: bool

    @property
    def components(self) -> int | None:
        return 1 if self.certified else None


def comessatti_connectedness(h1: int, h11: int, r_lower: int, nonempty: bool = True) -> ConnectednessCertificate:
    """Bound 2 #X(R) - h1 <= h11 - 2(r - 1), with r >= r_lower."""
    if r_lower > h11:
        raise ValueError(f"r_lower = {r_lower} exceeds h11 = {h11}")
    bound = (h1 + h11 - 2 * (r_lower - 1)) // 2
    return ConnectednessCertificate(bound, bound < 2 and nonempty)


@dataclass(frozen=True)
class RealTopologyReport:
    connected_components: int | None
    h1: int
    h1_alg: int
    orientable: bool | None
    type_tag: str | None

    def to_json(self) -> dict:
        return {"components": self.connected_components, "h1": self.h1, "h1_alg": self.h1_alg,
                "orientable": self.orientable, "type": self.type_tag}


def type_tag(h1: int, orientable: bool | None, components: int | None) -> str | None:
    """S_g (orientable, h1 = 2g) or V_q (non-orientable, h1 = q) for a connected real part."""
    if components != 1 or orientable is None:
        return None
    if orientable:
        if h1 % 2:
            raise ValueError(f"orientable surface with odd h1 = {h1}")
        return f"S_{h1 // 2}"
    return f"V_{h1}"


def real_topology_extremal(M: SurfaceModel) -> RealTopologyReport:
    """Topology of X(R) when every fibre is I*_m with m even over a real cusp.

    Along the real locus of the base J > 1, so every smooth real fibre has two
    components and every singular real fibre takes the real form with
    chi_real = -m - 4.  The real off-section components of the fibres, the
    section and a fibre give independent algebraic classes.
    """
    problems = []
    if M.genus != 0:
        problems.append(f"base genus {M.genus} != 0")
    if not M.cusps_all_real:
        problems.append("not every cusp is real")
    if not M.has_real_section:
        problems.append("no real section")
    for f in M.config.fibers:
        if not f.star or f.m % 2:
            problems.append(f"fibre {f} is not I* with even m")
    if problems:
        raise PreconditionFailed(problems)
    chi_real = []
    for f in M.config.fibers:
        row = next(r for r in real_forms(f) if r.nearby_components == 2)
        chi_real.append(row.chi_real)
    h1 = 2 - sum(chi_real)
    t = len(M.config.fibers)
    assert h1 == 2 + M.config.degree + 4 * t
    # 2 = section class + fibre class
    h1_alg = 2 + sum(components_off_section(f) for f in M.config.fibers)
    h = hodge_invariants(M)
    orient = model_orientability(M)
    cert = comessatti_connectedness(h1, h.h11, h1_alg, nonempty=M.has_real_section)
    o = {"orientable": True, "non-orientable": False}.get(orient)
    return RealTopologyReport(cert.components, h1, h1_alg, o, type_tag(h1, o, cert.components))


def ragsdale_viro_check(report: RealTopologyReport, h: HodgeInvariants) -> bool:
    """Check h1_alg <= h1 <= h11; return whether X(R) is extremal (h1 = h11)."""
    if not h.regular:
        raise ValueError("inequality is stated for regular surfaces")
    if not report.h1_alg <= report.h1:
        raise InequalityViolated(f"h1_alg = {report.h1_alg} > h1 = {report.h1}")
    if not report.h1 <= h.h11:
        raise InequalityViolated(f"h1 = {report.h1} > h11 = {h.h11}")
    return report.h1 == h.h11


def same_deformation_class(chi: int, chi2: int) -> bool:
    """Normalized regular elliptic surfaces deform into each other iff chi(O) agrees."""
    return chi == chi2


def report(M: SurfaceModel, inv: SubgroupInvariants | None = None) -> dict:
    inv = inv or invariants(M.base)
    h = hodge_invariants(M)
    out = {
        "k": M.k,
        "mu": inv.index,
        "cusps": [c.to_json() for c in M.cusps],
        "fibers": M.config.to_json(),
        "chi_O": h.chi_O,
        "h11": h.h11 if h.regular else "non-regular",
    }
    try:
        rt = real_topology_extremal(M)
    except PreconditionFailed:
        rt = None
    if rt is None:
        out.update({"h1": None, "h1_alg": None, "orientable": None, "components": None, "type": None})
    else:
        out.update({"h1": rt.h1, "h1_alg": rt.h1_alg, "orientable": rt.orientable,
                    "components": rt.connected_components, "type": rt.type_tag,
                    "extremal": ragsdale_viro_check(rt, h)})
    return out
