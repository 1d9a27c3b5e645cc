"""Exact arithmetic in Z[zeta_q], generalized Gauss sums and Poisson summation.

Elements are integer coordinate vectors on the basis {zeta, zeta^2, ..,
zeta^(q-1)}; the rational integer 1 is -(zeta + ... + zeta^(q-1)).  With
q = 1 (mod 4) the quadratic Gauss sum over F_q is exactly +sqrt(q), so the
q^(1/2) appearing in the odd-modulus Poisson formula is representable in the
ring and the whole identity can be checked as an exact integer statement.

The additive character is e(A*V/f) = zeta^a1 with a1 the 1/t-coefficient of
the Laurent expansion of A*V/f at infinity; since f is monic this is the
coefficient of x^(deg f - 1) in (A*V mod f).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (
    DomainError,
    ONE,
    Poly,
    ZERO,
    euler_phi,
    is_monic,
    legendre_table,
    pdeg,
    pmod,
    pmul,
)
from .characters import jacobi


@dataclass(frozen=True)
class CycElem:
    """Element of Z[zeta_q] with coordinates on {zeta, ..., zeta^(q-1)}."""

    coords: tuple[int, ...]
    q: int

    @staticmethod
    def zero(q: int) -> "CycElem":
        return CycElem((0,) * (q - 1), q)

    @staticmethod
    def from_int(n: int, q: int) -> "CycElem":
        return CycElem((-n,) * (q - 1), q)

    @staticmethod
    def zeta_power(k: int, q: int) -> "CycElem":
        k %= q
        if k == 0:
            return CycElem.from_int(1, q)
        coords = [0] * (q - 1)
        coords[k - 1] = 1
        return CycElem(tuple(coords), q)

    @staticmethod
    def from_zeta_counts(counts, q: int) -> "CycElem":
        """From integer multiplicities of zeta^0 .. zeta^(q-1)."""
        c0 = counts[0]
        return CycElem(tuple(int(counts[k]) - int(c0) for k in range(1, q)), q)

    def _check(self, other: "CycElem") -> None:
        if self.q != other.q:
            raise DomainError("mixing cyclotomic rings")

    def __add__(self, other: "CycElem") -> "CycElem":
        self._check(other)
        return CycElem(tuple(a + b for a, b in zip(self.coords, other.coords)), self.q)

    def __sub__(self, other: "CycElem") -> "CycElem":
        self._check(other)
        return CycElem(tuple(a - b for a, b in zip(self.coords, other.coords)), self.q)

    def __neg__(self) -> "CycElem":
        return CycElem(tuple(-a for a in self.coords), self.q)

    def scale(self, n: int) -> "CycElem":
        return CycElem(tuple(n * a for a in self.coords), self.q)

    def __mul__(self, other) -> "CycElem":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        q = self.q
        counts = [0] * q
        a, b = self.coords, other.coords
        for i in range(1, q):
            ai = a[i - 1]
            if ai:
                for j in range(1, q):
                    bj = b[j - 1]
                    if bj:
                        counts[(i + j) % q] += ai * bj
        c0 = counts[0]
        return CycElem(tuple(counts[k] - c0 for k in range(1, q)), q)

    __rmul__ = __mul__

    def embed(self) -> complex:
        q = self.q
        return sum(
            c * cmath.exp(2j * cmath.pi * k / q)
            for k, c in enumerate(self.coords, start=1)
        )

    def as_rational_integer(self) -> int | None:
        """The integer this element equals, or None if it is not rational."""
        first = self.coords[0]
        if all(c == first for c in self.coords):
            return -first
        return None


@lru_cache(maxsize=None)
def sqrt_q_elem(q: int) -> CycElem:
    """The exact square root of q: sum_a Legendre(a|q) zeta^a, positive for q=1(4)."""
    if q % 4 != 1:
        raise DomainError("sqrt(q) equals the quadratic Gauss sum only for q = 1 mod 4")
    leg = legendre_table(q)
    elem = CycElem(tuple(leg[a] for a in range(1, q)), q)
    square = elem * elem
    assert square.as_rational_integer() == q
    assert abs(elem.embed().real - q**0.5) < 1e-9
    return elem


# ---------------------------------------------------------------------------
# additive character and Gauss sums
# ---------------------------------------------------------------------------

def e_exponent(a_poly: Poly, v: Poly, f: Poly, q: int) -> int:
    """zeta-exponent of e(A*V/f): coefficient of x^(deg f - 1) in A*V mod f."""
    if not f:
        raise DomainError("zero modulus")
    r = pmod(pmul(a_poly, v, q), f, q)
    d = pdeg(f)
    return r[d - 1] if len(r) > d - 1 else 0


def e_of(a_poly: Poly, v: Poly, f: Poly, q: int) -> CycElem:
    return CycElem.zeta_power(e_exponent(a_poly, v, f, q), q)


@lru_cache(maxsize=None)
def _residue_coeffs(q: int, d: int) -> np.ndarray:
    """(q^d, d) int16 matrix of base-q digits: row c = coefficients of residue c."""
    codes = np.arange(q**d, dtype=np.int64)
    out = np.empty((q**d, max(d, 1)), dtype=np.int16)
    for i in range(max(d, 1)):
        out[:, i] = codes % q
        codes //= q
    return out


@lru_cache(maxsize=None)
def _modulus_tables(f: Poly, q: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Per-modulus tables: chi_f over residue codes, and the reduction row
    r_j = coeff of x^(d-1) in (x^j mod f) for 0 <= j <= 2d-2."""
    d = pdeg(f)
    chi = np.empty(q**d if d > 0 else 1, dtype=np.int8)
    if d == 0:
        chi[0] = 1  # trivial modulus: single residue, principal character
        return chi, (0,)
    coeffs = _residue_coeffs(q, d)
    for code in range(q**d):
        a = tuple(int(x) for x in coeffs[code])
        while a and a[-1] == 0:
            a = a[:-1]
        chi[code] = jacobi(a, f, q)
    rows = []
    for j in range(2 * d - 1):
        xj = pmod((0,) * j + (1,), f, q)
        rows.append(xj[d - 1] if len(xj) > d - 1 else 0)
    return chi, tuple(rows)


def _gauss_zeta_counts(v: Poly, f: Poly, q: int) -> np.ndarray:
    """Multiplicities of zeta^0..zeta^(q-1) in G(V, chi_f) = sum_A chi_f(A) e(AV/f)."""
    d = pdeg(f)
    chi, rows = _modulus_tables(f, q)
    if d == 0:
        counts = np.zeros(q, dtype=np.int64)
        counts[0] = 1  # G(V, chi_1) = 1
        return counts
    vr = pmod(v, f, q)
    s = np.array(
        [sum(vr[k] * rows[i + k] for k in range(len(vr))) % q for i in range(d)],
        dtype=np.int64,
    )
    ell = (_residue_coeffs(q, d).astype(np.int64) @ s) % q
    counts = np.bincount(ell[chi == 1], minlength=q) - np.bincount(
        ell[chi == -1], minlength=q
    )
    return counts.astype(np.int64)


def gauss_sum(v: Poly, f: Poly, q: int) -> CycElem:
    """G(V, chi_f) = sum over all residues A mod f of chi_f(A) e(AV/f), exact."""
    if not is_monic(f):
        raise DomainError("Gauss sum modulus must be monic nonzero")
    return CycElem.from_zeta_counts(_gauss_zeta_counts(v, f, q), q)


def gauss_sum_is_phi_or_zero(f: Poly, q: int) -> bool:
    """Check G(0, chi_f) = phi(f) for square f and 0 otherwise."""
    g0 = gauss_sum(ZERO, f, q)
    from .algebra import factor

    _, factors = factor(f, q)
    is_square = all(e % 2 == 0 for _, e in factors)
    expected = euler_phi(f, q) if is_square else 0
    return g0.as_rational_integer() == expected


# ---------------------------------------------------------------------------
# Poisson summation check
# ---------------------------------------------------------------------------

def _monic_range(q: int, degrees) -> list[Poly]:
    from .algebra import enumerate_monic

    out: list[Poly] = []
    for n in degrees:
        if n >= 0:
            out.extend(enumerate_monic(q, n))
    return out


def poisson_sides(f: Poly, m: int, q: int) -> tuple[CycElem, CycElem]:
    """Both sides of the Poisson summation identity, cleared of denominators.

    Returns (|f| * LHS, |f| * RHS) as exact ring elements, where
    LHS = sum over monic g of degree m of chi_f(g), and RHS is the Gauss-sum
    side of the identity for the parity of deg f (the odd case's q^(1/2) is
    realized by the exact Gauss-sum square root).
    """
    if pdeg(f) < 1:
        raise DomainError("modulus must have degree >= 1")
    if m < 1:
        raise DomainError("m must be a positive integer")
    d = pdeg(f)
    lhs_int = sum(jacobi(g, f, q) for g in _monic_range(q, [m]))
    lhs = CycElem.from_int(q**d * lhs_int, q)

    if d % 2 == 1:
        counts = np.zeros(q, dtype=np.int64)
        for v in _monic_range(q, [d - m - 1]):
            counts += _gauss_zeta_counts(v, f, q)
        rhs = CycElem.from_zeta_counts(counts, q) * sqrt_q_elem(q)
        rhs = rhs.scale(q**m)
    else:
        counts = _gauss_zeta_counts(ZERO, f, q).copy()
        mid = np.zeros(q, dtype=np.int64)
        for v in _monic_range(q, range(0, d - m - 1)):
            mid += _gauss_zeta_counts(v, f, q)
        last = np.zeros(q, dtype=np.int64)
        for v in _monic_range(q, [d - m - 1]):
            last += _gauss_zeta_counts(v, f, q)
        counts += (q - 1) * mid - last
        rhs = CycElem.from_zeta_counts(counts, q).scale(q**m)
    return lhs, rhs


def verify_poisson(f: Poly, m: int, q: int) -> bool:
    """Exact truth of the Poisson summation identity for (f, m)."""
    lhs, rhs = poisson_sides(f, m, q)
    return lhs == rhs
