"""L(u, chi_D): coefficients two independent ways, completed form, central value.

Route one sums the character chi_D over monic polynomials degree by degree.
Route two counts points on y^2 = D(x) over extension fields and converts the
power sums to completed coefficients through Newton's identities, using the
functional equation for the upper half.  The two routes share no code below
the field tables, which is what makes their exhaustive agreement a real test.

Point-count bookkeeping at infinity: D monic of even degree has two rational
points at infinity on the smooth model (the leading coefficient 1 is a square
in every extension), so the power sums are s_j = -S_j - 1 with
S_j = sum over F_{q^j} of the quadratic character of D(alpha); odd degree has
one point at infinity and s_j = -S_j.  The extra power sum s_(delta+1) is
computed and checked against the functional equation, which would catch a
wrong infinity correction immediately.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (
    DomainError,
    ONE,
    Poly,
    QSqrt,
    enumerate_ensemble,
    enumerate_monic,
    factor,
    is_monic,
    is_squarefree,
    irreducibles_up_to,
    monic_to_code,
    pdeg,
    pmod,
    pmul,
)
from .characters import jacobi


class InconsistencyError(RuntimeError):
    """An internal cross-check failed; signals a bug upstream, not bad input."""


@dataclass(frozen=True)
class LData:
    """Coefficients of L(u, chi_D) and of its completed form.

    c[n] = sum over monic f of degree n of chi_D(f) (length d(D), zero beyond);
    lam = 1 iff d(D) even (the trivial zero at u=1); 2*delta = d(D) - 1 - lam;
    a = completed coefficients with a[2*delta - i] = q^(delta - i) * a[i].
    """

    d_poly: Poly
    q: int
    c: tuple[int, ...]
    lam: int
    delta: int
    a: tuple[int, ...]


def _ldata_from_c(d_poly: Poly, c: list[int], q: int) -> LData:
    m = pdeg(d_poly)
    lam = 1 if m % 2 == 0 else 0
    delta = (m - 1 - lam) // 2
    if c[0] != 1:
        raise InconsistencyError(f"c_0 = {c[0]} != 1 for D={d_poly}")
    if lam:
        if sum(c) != 0:
            raise InconsistencyError(
                f"L(1) != 0 for even-degree D={d_poly}; division by (1-u) has remainder"
            )
        a = []
        acc = 0
        for i in range(2 * delta + 1):
            acc += c[i]
            a.append(acc)
    else:
        a = list(c)
    for i in range(2 * delta + 1):
        if a[2 * delta - i] != q ** (delta - i) * a[i]:
            raise InconsistencyError(f"functional equation fails for D={d_poly}")
    return LData(d_poly, q, tuple(c), lam, delta, tuple(a))


def _c_from_a(a: list[int], lam: int) -> list[int]:
    if not lam:
        return list(a)
    c = []
    prev = 0
    for ai in a:
        c.append(ai - prev)
        prev = ai
    c.append(-prev)
    return c


# ---------------------------------------------------------------------------
# route one: character sums
# ---------------------------------------------------------------------------

def coeff_charsum(d_poly: Poly, n: int, q: int) -> int:
    """c_n = sum over monic f of degree n of chi_D(f) = (D|f)."""
    return sum(jacobi(d_poly, f, q) for f in enumerate_monic(q, n))


def l_coeffs_charsum(d_poly: Poly, q: int, check_vanishing: bool = False) -> LData:
    """All coefficients of L(u, chi_D) by brute character summation."""
    if not is_monic(d_poly) or not is_squarefree(d_poly, q):
        raise DomainError(f"D={d_poly} must be monic square-free")
    m = pdeg(d_poly)
    if m < 1:
        raise DomainError("deg D must be >= 1")
    c = [coeff_charsum(d_poly, n, q) for n in range(m)]
    if check_vanishing and coeff_charsum(d_poly, m, q) != 0:
        raise InconsistencyError(f"c_{m} != 0 for D={d_poly}")
    return _ldata_from_c(d_poly, c, q)


# ---------------------------------------------------------------------------
# route two: point counts on y^2 = D(x)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def field_tables(q: int, j: int) -> tuple[np.ndarray, np.ndarray]:
    """(MUL, CHI) for F_{q^j} = F_q[t]/(m_j): MUL[a, b] is the product code and
    CHI is the quadratic character (0 at 0).  Codes are base-q digit packings."""
    if j == 1:
        mul = (np.arange(q)[:, None] * np.arange(q)[None, :]) % q
        from .algebra import legendre_table

        chi = np.array(legendre_table(q), dtype=np.int8)
        return mul.astype(np.int32), chi
    modulus = irreducibles_up_to(q, j)[j][0]
    size = q**j
    polys = []
    codes = np.arange(size)
    for code in range(size):
        digits = []
        x = code
        for _ in range(j):
            digits.append(x % q)
            x //= q
        while digits and digits[-1] == 0:
            digits.pop()
        polys.append(tuple(digits))
    mul = np.zeros((size, size), dtype=np.int32)
    for a in range(size):
        pa = polys[a]
        if not pa:
            continue
        for b in range(a, size):
            pb = polys[b]
            if not pb:
                continue
            r = pmod(pmul(pa, pb, q), modulus, q)
            code = 0
            for cc in reversed(r):
                code = code * q + cc
            mul[a, b] = code
            mul[b, a] = code
    chi = np.full(size, -1, dtype=np.int8)
    chi[0] = 0
    sq = mul[codes, codes]
    chi[sq[sq > 0]] = 1
    assert int((chi == 1).sum()) == (size - 1) // 2
    return mul, chi


def char_point_sum(d_poly: Poly, j: int, q: int) -> int:
    """S_j = sum over alpha in F_{q^j} of the quadratic character of D(alpha)."""
    mul, chi = field_tables(q, j)
    size = q**j
    acc = np.zeros(size, dtype=np.int32)
    alphas = np.arange(size)
    for coeff in reversed(d_poly):
        acc = mul[acc, alphas]
        if coeff:
            low = acc % q
            acc = acc - low + (low + coeff) % q
    return int(chi[acc].sum())


def newton_elementary(power_sums: list[int]) -> list[int]:
    """e_1..e_k from p_1..p_k; raises if a division is not exact."""
    e = [1]
    for k in range(1, len(power_sums) + 1):
        total = 0
        for i in range(1, k + 1):
            total += (-1) ** (i - 1) * e[k - i] * power_sums[i - 1]
        if total % k != 0:
            raise InconsistencyError("Newton identity division not exact")
        e.append(total // k)
    return e[1:]


def l_coeffs_pointcount(d_poly: Poly, q: int, validate: bool = True) -> LData:
    """Coefficients via zeta-function point counts and Newton's identities."""
    if not is_monic(d_poly) or not is_squarefree(d_poly, q):
        raise DomainError(f"D={d_poly} must be monic square-free")
    m = pdeg(d_poly)
    if m < 1:
        raise DomainError("deg D must be >= 1")
    lam = 1 if m % 2 == 0 else 0
    delta = (m - 1 - lam) // 2
    infinity = 1 if lam else 0
    depth = delta + 1 if validate else delta
    s = [-char_point_sum(d_poly, j, q) - infinity for j in range(1, depth + 1)]
    e = newton_elementary(s)
    a_low = [(-1) ** k * e[k - 1] for k in range(1, delta + 1)]
    a = [1] + a_low
    for i in range(delta - 1, -1, -1):
        a.append(q ** (delta - i) * a[i])
    a = a[: 2 * delta + 1]
    if validate:
        a_next = (-1) ** (delta + 1) * e[delta]
        expected = q * a[delta - 1] if delta >= 1 else 0
        if a_next != expected:
            raise InconsistencyError(
                f"point-count coefficient a_{delta+1}={a_next} disagrees with the "
                f"functional equation value {expected} for D={d_poly}"
            )
    return _ldata_from_c(d_poly, _c_from_a(a, lam), q)


# ---------------------------------------------------------------------------
# values at the central point
# ---------------------------------------------------------------------------

def central_from_coeffs(c, q: int) -> QSqrt:
    """L(1/2, chi_D) = sum_n c_n q^(-n/2), exactly in Q(sqrt q)."""
    total = QSqrt.from_int(0, q)
    for n, cn in enumerate(c):
        if cn:
            total = total + QSqrt.half_power(-n, q) * cn
    return total


def central_value(ldata: LData) -> QSqrt:
    return central_from_coeffs(ldata.c, ldata.q)


def afe_from_coeffs(c, g: int, q: int) -> QSqrt:
    """Approximate-functional-equation value from c_0..c_g (exact)."""
    s_a = QSqrt.from_int(0, q)
    for n in range(0, g + 1):
        s_a = s_a + QSqrt.half_power(-n, q) * c[n]
    s_b = QSqrt.half_power(-(g + 1), q) * sum(c[n] for n in range(0, g + 1))
    s_c = QSqrt.from_int(0, q)
    for n in range(0, g):
        s_c = s_c + QSqrt.half_power(-n, q) * c[n]
    s_d = QSqrt.half_power(-g, q) * sum(c[n] for n in range(0, g))
    return s_a - s_b + s_c - s_d


def afe_value(d_poly: Poly, q: int, coeffs=None) -> QSqrt:
    """Central value of chi_D for D in H_{2g+2} using only degrees <= g."""
    m = pdeg(d_poly)
    if m % 2 != 0 or m < 2:
        raise DomainError("the finite central-value formula needs even deg D >= 2")
    g = m // 2 - 1
    if coeffs is None:
        coeffs = [coeff_charsum(d_poly, n, q) for n in range(g + 1)]
    return afe_from_coeffs(coeffs, g, q)


def rh_check(ldata: LData, tol: float = 1e-6) -> bool:
    """All zeros of the completed polynomial lie on |u| = q^(-1/2), within tol."""
    if ldata.delta == 0:
        return True
    roots = np.roots(np.array(ldata.a[::-1], dtype=float))
    target = ldata.q**-0.5
    return bool(np.all(np.abs(np.abs(roots) - target) <= tol))


# ---------------------------------------------------------------------------
# the square-free character-sum identity (ensemble average of chi_D(f))
# ---------------------------------------------------------------------------

def _radical_divisor_degree_counts(f: Poly, q: int, max_deg: int) -> list[int]:
    """N[k] = number of monic C with d(C)=k whose prime factors all divide f."""
    counts = [0] * (max_deg + 1)
    counts[0] = 1
    if f != ONE:
        _, factors = factor(f, q)
        for p, _ in factors:
            d = pdeg(p)
            new = counts[:]
            for k in range(0, max_deg + 1):
                if counts[k]:
                    e = 1
                    while k + e * d <= max_deg:
                        new[k + e * d] += counts[k]
                        e += 1
            counts = new
    return counts


def _char_mod_degree_sum(f: Poly, n: int, q: int) -> int:
    """sum over monic h of degree n of chi_f(h) = (h|f); zero for n < 0."""
    if n < 0:
        return 0
    return sum(jacobi(h, f, q) for h in enumerate_monic(q, n))


def lemma_ensemble_charsum_sides(f: Poly, g: int, q: int) -> tuple[int, int]:
    """LHS: brute sum of chi_D(f) over the degree-(2g+2) ensemble.
    RHS: the double sum over C | f^infinity and full character sums over h."""
    if not is_monic(f):
        raise DomainError("f must be monic")
    lhs = sum(jacobi(d_poly, f, q) for d_poly in enumerate_ensemble(q, 2 * g + 2))
    n_by_deg = _radical_divisor_degree_counts(f, q, g + 1)
    rhs = 0
    for k in range(0, g + 2):
        if n_by_deg[k]:
            rhs += n_by_deg[k] * _char_mod_degree_sum(f, 2 * g + 2 - 2 * k, q)
    for k in range(0, g + 1):
        if n_by_deg[k]:
            rhs -= q * n_by_deg[k] * _char_mod_degree_sum(f, 2 * g - 2 * k, q)
    return lhs, rhs


def verify_lemma_ensemble_charsum(f: Poly, g: int, q: int) -> bool:
    lhs, rhs = lemma_ensemble_charsum_sides(f, g, q)
    return lhs == rhs
