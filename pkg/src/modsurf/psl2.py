"""Exact arithmetic in SL(2,Z) and PSL(2,Z).

Matrices carry Python integers, so nothing overflows. The upper half-plane
side (Moebius action on points, reduction to the standard fundamental
domain) is evaluated with mpmath at ``DPS`` decimal digits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import mpmath

DPS = 40
TOL = 1e-10


class Infinity:
    """The point at infinity of P^1(Q)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "oo"

    def __str__(self):
        return "oo"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()
ExtendedRational = Union[Fraction, Infinity]


def format_cusp(x: ExtendedRational) -> str:
    if x is INF:
        return "oo"
    return str(x)


def parse_cusp(text: str) -> ExtendedRational:
    if text.strip() in ("oo", "inf", "infinity"):
        return INF
    return Fraction(text)


@dataclass(frozen=True)
class Mat:
    """A 2x2 integer matrix of determinant 1, written ``(a, b; c, d)``."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.tolist()} is not 1")

    def __matmul__(self, other: "Mat") -> "Mat":
        return Mat(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "Mat":
        return Mat(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, n: int) -> "Mat":
        base = self if n >= 0 else self.inv()
        n = abs(n)
        out = IDENTITY
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def inv(self) -> "Mat":
        return Mat(self.d, -self.b, -self.c, self.a)

    @property
    def trace(self) -> int:
        return self.a + self.d

    def tolist(self) -> list[int]:
        return [self.a, self.b, self.c, self.d]

    @classmethod
    def from_list(cls, entries: Iterable[int]) -> "Mat":
        a, b, c, d = (int(x) for x in entries)
        return cls(a, b, c, d)

    def canonical(self) -> "Mat":
        """Representative of the PSL class whose first nonzero entry is positive."""
        for x in (self.a, self.b, self.c, self.d):
            if x:
                return self if x > 0 else -self
        raise AssertionError("zero matrix cannot have determinant 1")

    def psl_eq(self, other: "Mat") -> bool:
        return self == other or self == -other

    def __str__(self):
        return f"({self.a},{self.b};{self.c},{self.d})"


IDENTITY = Mat(1, 0, 0, 1)
S = Mat(0, -1, 1, 0)
T = Mat(1, 1, 0, 1)
T_INV = Mat(1, -1, 0, 1)


@dataclass(frozen=True)
class ProjectiveClass:
    """An element of PSL(2,Z), stored through its canonical representative."""

    rep: Mat

    @classmethod
    def of(cls, m: Mat) -> "ProjectiveClass":
        return cls(m.canonical())

    def __matmul__(self, other: "ProjectiveClass") -> "ProjectiveClass":
        return ProjectiveClass.of(self.rep @ other.rep)

    def inv(self) -> "ProjectiveClass":
        return ProjectiveClass.of(self.rep.inv())


def compose(A: Mat, B: Mat) -> Mat:
    return A @ B


def s_involution(A: Mat) -> Mat:
    """Image under (a, b; c, d) -> (a, -b; -c, d), the conjugation by diag(1, -1)."""
    return Mat(A.a, -A.b, -A.c, A.d)


# -- generator words ---------------------------------------------------------

LETTER_S = "S"
LETTER_T = "T"
LETTER_TI = "T^-1"
_LETTER_MATS = {LETTER_S: S, LETTER_T: T, LETTER_TI: T_INV}
_PRETTY = {LETTER_S: "S", LETTER_T: "T", LETTER_TI: "T⁻¹"}


class GeneratorWord(tuple):
    """A word in S, T, T^-1; evaluates to a matrix equal up to sign to its source."""

    def __new__(cls, letters: Iterable[str] = ()):
        letters = tuple(letters)
        for x in letters:
            if x not in _LETTER_MATS:
                raise ValueError(f"unknown letter {x!r}")
        return super().__new__(cls, letters)

    def evaluate(self) -> Mat:
        out = IDENTITY
        for x in self:
            out = out @ _LETTER_MATS[x]
        return out

    def inverse(self) -> "GeneratorWord":
        flip = {LETTER_S: LETTER_S, LETTER_T: LETTER_TI, LETTER_TI: LETTER_T}
        return GeneratorWord(flip[x] for x in reversed(self))

    def __str__(self):
        return " ".join(_PRETTY[x] for x in self)


def _t_power(n: int) -> list[str]:
    return [LETTER_T] * n if n >= 0 else [LETTER_TI] * (-n)


def matrix_to_word(A: Mat) -> GeneratorWord:
    """Euclidean rewriting of ``A`` as a word in S and T^{+-1}.

    Each round translates so that |a| <= |c|/2 and then applies S, so the
    lower-left entry at least halves; the number of T-runs is logarithmic
    in the entries.
    """
    prefix: list[str] = []
    M = A
    while M.c != 0:
        if M.c < 0:
            M = -M
        q, r = divmod(M.a, M.c)
        n = -(q + 1) if 2 * r > M.c else -q  # leaves |a| <= c/2
        if n:
            M = T ** n @ M
            prefix.extend(_t_power(-n))
        M = S @ M
        prefix.append(LETTER_S)  # S^-1 = S in PSL
    if M.a < 0:
        M = -M
    # M = (1, b; 0, 1)
    return GeneratorWord(prefix + _t_power(M.b))


# -- parabolic elements ------------------------------------------------------

def is_parabolic(A: Mat) -> bool:
    # |trace| = 2 with b = c = 0 forces A = +-I
    return abs(A.trace) == 2 and (A.b != 0 or A.c != 0)


def parabolic_fixed_point(A: Mat) -> ExtendedRational:
    if not is_parabolic(A):
        raise ValueError(f"{A} is not parabolic")
    if A.c == 0:
        return INF
    return Fraction(A.a - A.d, 2 * A.c)


def complete_to_sl2(p: int, q: int) -> Mat:
    """A matrix (p, r; q, s) in SL(2,Z) for coprime (p, q).

    Among all completions the one minimizing |r| + |s| is returned (ties
    broken by (r, s)), which keeps the choice deterministic.
    """
    g, x, y = _egcd(p, q)
    if abs(g) != 1:
        raise ValueError(f"({p}, {q}) is not a primitive vector")
    # p*x + q*y = g  ->  p*s - r*q = 1 with s = x/g, r = -y/g
    s, r = x * g, -y * g
    cands = set()
    for num, den in ((-r, p), (-s, q)):
        if den:
            base = num // den
            cands.update((base - 1, base, base + 1))
    cands.add(0)
    best = min(cands, key=lambda n: (abs(r + n * p) + abs(s + n * q), r + n * p, s + n * q))
    return Mat(p, r + best * p, q, s + best * q)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


def cusp_matrix(x: ExtendedRational) -> Mat:
    """A matrix U in SL(2,Z) with U.oo = x."""
    if x is INF:
        return IDENTITY
    return complete_to_sl2(x.numerator, x.denominator)


def parabolic_normal_form(A: Mat) -> tuple[int, int]:
    """Return ``(sign, shift)`` with ``A`` SL(2,Z)-conjugate to sign * (1, shift; 0, 1).

    The pair is a complete conjugacy invariant of parabolic elements of
    SL(2,Z).  ``sign`` separates the two forms of a local monodromy: +1 for
    (1, m; 0, 1) and -1 for (-1, -m; 0, -1).  The shift is signed; flipping
    the orientation of the loop negates it.
    """
    p = parabolic_fixed_point(A)
    U = cusp_matrix(p)
    N = U.inv() @ A @ U
    assert N.c == 0 and N.a == N.d and abs(N.a) == 1, N
    sign = N.a
    return sign, sign * N.b


# -- action on P^1(Q) and on the upper half-plane --------------------------

def _mobius_exact(A: Mat, z: ExtendedRational) -> ExtendedRational:
    if z is INF:
        return INF if A.c == 0 else Fraction(A.a, A.c)
    den = A.c * z + A.d
    if den == 0:
        return INF
    return (A.a * z + A.b) / den


def half_plane(z) -> mpmath.mpc:
    """Convert to an mpmath point of the upper half-plane, checking Im > 0."""
    with mpmath.workdps(DPS):
        w = mpmath.mpc(z)
        if not w.imag > 0:
            raise ValueError(f"{z} is not in the upper half-plane")
        return w


def mobius_act(A: Mat, z):
    """``A.z = (a z + b) / (c z + d)``; exact on P^1(Q), mpmath on H."""
    if isinstance(A, ProjectiveClass):
        A = A.rep
    if z is INF or isinstance(z, (Fraction, int)):
        return _mobius_exact(A, Fraction(z) if isinstance(z, int) else z)
    with mpmath.workdps(DPS):
        w = mpmath.mpc(z)
        return (A.a * w + A.b) / (A.c * w + A.d)


def sigma_h(z):
    """The anti-holomorphic involution z -> -conj(z)."""
    with mpmath.workdps(DPS):
        w = mpmath.mpc(z)
        return mpmath.mpc(-w.real, w.imag)


def semilinear_identity_check(A: Mat, z, tol: float = TOL) -> bool:
    """Check sigma(A . sigma(z)) == S(A) . z numerically."""
    lhs = sigma_h(mobius_act(A, sigma_h(z)))
    rhs = mobius_act(s_involution(A), z)
    with mpmath.workdps(DPS):
        return bool(abs(lhs - rhs) <= tol * max(1, abs(rhs)))


def reduce_to_fundamental_domain(tau, max_steps: int = 10_000) -> tuple[mpmath.mpc, Mat]:
    """Map ``tau`` into {|Re z| <= 1/2, |z| >= 1}.

    Returns ``(tau_red, A)`` with ``tau_red = A . tau`` and ``A`` canonical
    in PSL(2,Z).
    """
    with mpmath.workdps(DPS):
        z = half_plane(tau)
        A = IDENTITY
        eps = mpmath.mpf(10) ** (-(DPS - 10))
        for _ in range(max_steps):
            n = int(mpmath.floor(z.real + mpmath.mpf(1) / 2))
            if n:
                z = z - n
                A = T ** (-n) @ A
            if abs(z) ** 2 < 1 - eps:
                z = -1 / z
                A = S @ A
            else:
                return z, A.canonical()
        raise RuntimeError(f"reduction of {tau} did not terminate")


def canonical_reduced_point(tau) -> tuple[mpmath.mpc, Mat]:
    """Like :func:`reduce_to_fundamental_domain` but with the boundary identified.

    Points on Re z = -1/2 are moved to Re z = +1/2 and points on the unit arc
    with Re z < 0 are reflected by S, so equivalent points land on the same
    representative.
    """
    z, A = reduce_to_fundamental_domain(tau)
    with mpmath.workdps(DPS):
        tol = mpmath.mpf(10) ** (-(DPS - 12))
        if abs(z.real + mpmath.mpf(1) / 2) <= tol:
            z, A = z + 1, T @ A
        if abs(abs(z) - 1) <= tol and z.real < -tol:
            z, A = -1 / z, S @ A
        return z, A.canonical()
