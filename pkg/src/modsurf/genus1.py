"""The modular j-function and the real forms of genus-1 curves C(tau) = C/(Z + tau Z).

``j_normalized`` is the classical invariant divided by 1728, so it equals 1
at tau = i and the threshold separating one and two real components is 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .psl2 import DPS, canonical_reduced_point, half_plane, reduce_to_fundamental_domain

TOL = 1e-8
SERIES_EPS = 1e-15
MAX_TERMS = 80


class InconsistentEquivalence(RuntimeError):
    """The matrix reduction and the j-values disagree about equivalence."""


@lru_cache(maxsize=None)
def j_coefficients(n_terms: int = MAX_TERMS) -> tuple[int, ...]:
    """Integers a_0, a_1, ... with j(tau) = sum a_n q^(n-1), q = exp(2 pi i tau).

    Computed exactly as E4^3 / Delta from the divisor-sum expansion of E4 and
    the product formula for Delta.
    """
    N = n_terms
    e4 = [1] + [240 * sum(d ** 3 for d in range(1, n + 1) if n % d == 0) for n in range(1, N)]
    e4_cubed = _mul(_mul(e4, e4, N), e4, N)
    # prod (1 - q^n)^24, truncated
    eta24 = [1] + [0] * (N - 1)
    for n in range(1, N):
        for _ in range(24):
            for i in range(N - 1, n - 1, -1):
                eta24[i] -= eta24[i - n]
    inv = [1] + [0] * (N - 1)
    for i in range(1, N):
        inv[i] = -sum(eta24[k] * inv[i - k] for k in range(1, i + 1))
    return tuple(_mul(e4_cubed, inv, N))


def _mul(a, b, N):
    out = [0] * N
    for i, x in enumerate(a[:N]):
        if x:
            for j in range(N - i):
                out[i + j] += x * b[j]
    return out


def j_classical(tau, eps: float = SERIES_EPS) -> mpmath.mpc:
    """Classical j with j(i) = 1728, by the q-expansion at the reduced point."""
    z, _ = reduce_to_fundamental_domain(tau)
    coeffs = j_coefficients()
    with mpmath.workdps(DPS):
        q = mpmath.exp(2j * mpmath.pi * z)
        total = mpmath.mpc(0)
        qn = 1 / q
        for n, a in enumerate(coeffs):
            term = a * qn
            total += term
            if n > 1 and abs(term) < eps * abs(total):
                return total
            qn *= q
        raise RuntimeError(f"q-series for j did not converge at {z}")


def j_normalized(tau, eps: float = SERIES_EPS) -> mpmath.mpc:
    with mpmath.workdps(DPS):
        return j_classical(tau, eps) / 1728


def _close(x, y, tol) -> bool:
    return abs(x - y) <= tol * max(1, abs(x), abs(y))


def equivalent(tau1, tau2, tol: float = TOL) -> bool:
    """True iff tau1 and tau2 lie in one PSL(2,Z)-orbit.

    Both the reduced points and the j-values are compared; disagreement
    between the two raises :class:`InconsistentEquivalence`.
    """
    z1, _ = canonical_reduced_point(tau1)
    z2, _ = canonical_reduced_point(tau2)
    with mpmath.workdps(DPS):
        # reduced points of low-precision input may sit on either side of a
        # boundary edge, so also try the edge identifications of z2
        images = (z2, z2 + 1, z2 - 1, -1 / z2)
        by_matrix = bool(min(abs(z1 - w) for w in images) <= tol)
    by_j = _close(j_normalized(tau1), j_normalized(tau2), tol)
    if by_matrix != by_j:
        raise InconsistentEquivalence(f"reduction says {by_matrix}, j-values say {by_j} for {tau1}, {tau2}")
    return by_matrix


def is_definable_over_R(tau, tol: float = TOL) -> bool:
    j = j_normalized(tau)
    return bool(abs(j.imag) <= tol * max(1, abs(j)))


def real_witness(tau, tol: float = TOL) -> tuple[int, mpmath.mpc] | None:
    """A point equivalent to tau with 2 Re integral, as ``(2 Re, point)``.

    Returns None when C(tau) has no real form.  The witness is found on the
    boundary of the standard fundamental domain: the imaginary axis, the
    line Re = 1/2, or the unit arc, which z -> z/(z+1) carries to Re = 1/2.
    """
    if not is_definable_over_R(tau, tol):
        return None
    z, _ = canonical_reduced_point(tau)
    with mpmath.workdps(DPS):
        x = z.real
        if abs(x) <= tol:
            return 0, mpmath.mpc(0, z.imag)
        if abs(x - mpmath.mpf(1) / 2) <= tol:
            return 1, mpmath.mpc(mpmath.mpf(1) / 2, z.imag)
        if abs(abs(z) - 1) <= tol:
            w = z / (z + 1)
            return 1, mpmath.mpc(mpmath.mpf(1) / 2, w.imag)
    raise InconsistentEquivalence(f"j({tau}) is real but the reduced point {z} is interior")


@dataclass(frozen=True)
class RealCurveClass:
    """Real form of C(tau) induced by complex conjugation when 2 Re(tau) is an integer.

    ``ambiguous_at_j_equals_1`` flags the lemniscatic case where both the
    one- and the two-component real forms exist; ``component_count`` is then
    the one fixed by the lattice shape (rectangular: 2, rhombic: 1).
    """

    definable_over_R: bool
    component_count: int
    ambiguous_at_j_equals_1: bool
    lattice: str
    j: complex

    def to_json(self) -> dict:
        return {"definable_over_R": self.definable_over_R, "components": self.component_count,
                "ambiguous_at_j_equals_1": self.ambiguous_at_j_equals_1,
                "lattice": self.lattice, "j_normalized": float(self.j.real)}


def real_component_count(re: Fraction | int, im, tol: float = TOL) -> RealCurveClass:
    """Number of components of C(tau)(R) for tau = re + i im, 2 re an integer.

    Re(tau) integral gives the rectangular lattice and two components,
    2 Re(tau) odd the rhombic lattice and one component.  The result is
    checked against the j-thresholds (j >= 1, resp. j <= 1).
    """
    re = Fraction(re)
    if (2 * re).denominator != 1:
        raise ValueError(f"2 Re(tau) = {2 * re} is not an integer")
    with mpmath.workdps(DPS):
        tau = half_plane(mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator, im))
    j = j_normalized(tau)
    jr = float(j.real)
    if re.denominator == 1:
        count, lattice = 2, "rectangular"
        if jr < 1 - tol:
            raise AssertionError(f"two real components but j = {jr} < 1")
    else:
        count, lattice = 1, "rhombic"
        if jr > 1 + tol:
            raise AssertionError(f"one real component but j = {jr} > 1")
    ambiguous = bool(abs(j - 1) <= tol)
    return RealCurveClass(True, count, ambiguous, lattice, complex(j))


def classify(tau, tol: float = TOL) -> dict:
    """Everything the command line reports about C(tau)."""
    jc = j_classical(tau)
    jn = jc / 1728
    out = {
        "tau": [float(mpmath.re(tau)), float(mpmath.im(tau))],
        "j_classical": [float(jc.real), float(jc.imag)],
        "j_normalized": [float(jn.real), float(jn.imag)],
        "definable_over_R": is_definable_over_R(tau, tol),
    }
    # tau itself is the witness when 2 Re(tau) is already integral; at j = 1
    # this keeps the lattice shape the caller asked about
    with mpmath.workdps(DPS):
        two_x = 2 * mpmath.re(tau)
        n = int(mpmath.nint(two_x))
        if out["definable_over_R"] and abs(two_x - n) <= tol:
            w = (n, mpmath.mpc(mpmath.mpf(n) / 2, mpmath.im(tau)))
        else:
            w = real_witness(tau, tol)
    if w is None:
        out["witness"] = None
        out["components"] = None
        return out
    two_re, point = w
    cls = real_component_count(Fraction(two_re, 2), point.imag, tol)
    out["witness"] = [two_re / 2, float(point.imag)]
    out.update({"components": cls.component_count, "lattice": cls.lattice,
                "ambiguous_at_j_equals_1": cls.ambiguous_at_j_equals_1})
    return out
