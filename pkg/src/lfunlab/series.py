"""Truncated-series verification of the generating-function identities and the
formal cancellation behind the residue bookkeeping.

TruncSeries is Laurent in z over a bounded exponent window and polynomial in w
up to a bound; multiplication discards terms that leave the window.  The
window algebra used below: every non-1 term of a two-variable Euler factor
carries w-degree >= d(P) and z-degree in [-infinity, 2 d(P)], so inside a
w-budget of N_w the total positive z-degree across all factors is at most
2 N_w.  Carrying the internal window that much below the reported one makes
the reported coefficients exact (for the rational identity) or correct to the
stated tolerance (for the Gauss-sum identity, whose z-tails are exactly
geometric: the degree-m slice of the Gauss-sum generating series equals
q^(m - deg f) times the degree-(deg f) slice once m >= deg f).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import DomainError, Poly, ZERO, enumerate_monic, factor, pdeg, pnorm
from .cyclotomic import _gauss_zeta_counts, CycElem
from .euler import B_correction, C_eval, EulerContext, zeta_A_exact


class TruncSeries:
    """Sparse series sum c[(ze, we)] z^ze w^we on ze in [zmin, zmax], we in [0, wmax]."""

    __slots__ = ("terms", "zmin", "zmax", "wmax")

    def __init__(self, zmin: int, zmax: int, wmax: int, terms=None):
        self.zmin = zmin
        self.zmax = zmax
        self.wmax = wmax
        self.terms = {}
        if terms:
            for (ze, we), c in terms.items():
                self.add_term(ze, we, c)

    def add_term(self, ze: int, we: int, coeff) -> None:
        if coeff == 0 or not (self.zmin <= ze <= self.zmax and 0 <= we <= self.wmax):
            return
        key = (ze, we)
        new = self.terms.get(key, 0) + coeff
        if new == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def copy(self) -> "TruncSeries":
        out = TruncSeries(self.zmin, self.zmax, self.wmax)
        out.terms = dict(self.terms)
        return out

    @staticmethod
    def one(zmin: int, zmax: int, wmax: int, unit=1) -> "TruncSeries":
        return TruncSeries(zmin, zmax, wmax, {(0, 0): unit})

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        out = self.copy()
        for (ze, we), c in other.terms.items():
            out.add_term(ze, we, c)
        return out

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        out = TruncSeries(self.zmin, self.zmax, self.wmax)
        terms = out.terms
        zmin, zmax, wmax = self.zmin, self.zmax, self.wmax
        for (z1, w1), c1 in self.terms.items():
            for (z2, w2), c2 in other.terms.items():
                ze = z1 + z2
                we = w1 + w2
                if zmin <= ze <= zmax and we <= wmax:
                    key = (ze, we)
                    terms[key] = terms.get(key, 0) + c1 * c2
        out.terms = {k: v for k, v in terms.items() if v != 0}
        return out

    def pow(self, e: int) -> "TruncSeries":
        result = TruncSeries.one(self.zmin, self.zmax, self.wmax)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def coeff(self, ze: int, we: int):
        return self.terms.get((ze, we), 0)


# ---------------------------------------------------------------------------
# exact two-variable Euler factors as truncated series
# ---------------------------------------------------------------------------

def _geometric_z_exponents(d: int, q: int, zmin: int):
    """(exponent, coefficient) pairs of 1/(z^d q^(2d) - 1) = sum_j q^(-2jd) z^(-jd)."""
    j = 1
    while -j * d >= zmin - 2 * d:
        yield -j * d, Fraction(1, q ** (2 * j * d))
        j += 1


def b_factor_series(d: int, q: int, zmin: int, zmax: int, wmax: int) -> TruncSeries:
    """Euler factor of the Gauss-sum generating function, exact in the window."""
    qd = q**d
    monomials = [
        (0, d, Fraction(1)),
        (d, 2 * d, Fraction(qd - qd * qd)),
        (2 * d, d, Fraction(-qd * qd)),
        (2 * d, 3 * d, Fraction(qd * qd)),
        (d, 3 * d, Fraction(-qd)),
    ]
    out = TruncSeries.one(zmin, zmax, wmax, Fraction(1))
    for ze, we, c in monomials:
        if we > wmax:
            continue
        for je, jc in _geometric_z_exponents(d, q, zmin):
            out.add_term(ze + je, we, c * jc)
    return out


def d_factor_series(d: int, q: int, zmin: int, zmax: int, wmax: int) -> TruncSeries:
    """The factor left after extracting Z(w/(q^2 z)) Z(w^2)^(-1) from the B product."""
    qd = Fraction(q**d)
    monomials = [
        (0, 2 * d, Fraction(-1)),
        (0, 3 * d, -1 / qd),
        (-d, d, 1 / qd**2),
        (d, 2 * d, qd + 1),
        (2 * d, d, -(qd**2)),
        (d, 3 * d, Fraction(1)),
        (2 * d, 2 * d, -(qd**2)),
    ]
    out = TruncSeries.one(zmin, zmax, wmax, Fraction(1))
    for ze, we, c in monomials:
        for je, jc in _geometric_z_exponents(d, q, zmin):
            i = 0
            while we + i * d <= wmax:
                out.add_term(ze + je, we + i * d, c * jc * (-1) ** i)
                i += 1
    return out


def verify_lemma_euler_refactor(q: int, nw: int) -> tuple[bool, dict]:
    """Exact identity prod B_P = Z(w/(q^2 z)) Z(w^2)^(-1) prod D_P, compared as
    rational Laurent coefficients on z in [-nw, 2 nw], w in [0, nw]."""
    from .algebra import irreducible_count

    report_zmin, report_zmax = -nw, 2 * nw
    zmin, zmax = report_zmin - 2 * nw, report_zmax
    lhs = TruncSeries.one(zmin, zmax, nw, Fraction(1))
    rhs = TruncSeries.one(zmin, zmax, nw, Fraction(1))
    for d in range(1, nw + 1):
        pi_d = irreducible_count(q, d)
        lhs = lhs * b_factor_series(d, q, zmin, zmax, nw).pow(pi_d)
        rhs = rhs * d_factor_series(d, q, zmin, zmax, nw).pow(pi_d)
    zfac = TruncSeries(zmin, zmax, nw)
    k = 0
    while k <= nw:
        zfac.add_term(-k, k, Fraction(1, q**k))
        k += 1
    wfac = TruncSeries(zmin, zmax, nw, {(0, 0): Fraction(1), (0, 2): Fraction(-q)})
    rhs = rhs * zfac * wfac
    mismatches = []
    for ze in range(report_zmin, report_zmax + 1):
        for we in range(0, nw + 1):
            l, r = lhs.coeff(ze, we), rhs.coeff(ze, we)
            if l != r:
                mismatches.append((ze, we, l, r))
    return not mismatches, {"window": [report_zmin, report_zmax, nw], "mismatches": mismatches[:10]}


# ---------------------------------------------------------------------------
# the Gauss-sum generating function A_f and the full double series
# ---------------------------------------------------------------------------

def a_f_coefficient(f: Poly, m: int, q: int) -> float:
    """Coefficient of z^m: sum over monic l of degree m of G(l^2, chi_f)/sqrt|f|."""
    import numpy as np

    from .algebra import pmod, pmul

    counts = np.zeros(q, dtype=np.int64)
    for l in enumerate_monic(q, m):
        v = pmod(pmul(l, l, q), f, q) if pdeg(f) > 0 else ZERO
        counts += _gauss_zeta_counts(v, f, q)
    value = CycElem.from_zeta_counts(counts, q).embed()
    assert abs(value.imag) < 1e-9
    return value.real / math.sqrt(pnorm(f, q))


def a_f_series(f: Poly, q: int, order: int) -> list[float]:
    """Gauss-sum series coefficients of z^0..z^order for the modulus f."""
    return [a_f_coefficient(f, m, q) for m in range(order + 1)]


def _local_factor_z_coeffs(f: Poly, q: int, zlo: int, zhi: int, depth: int) -> dict[int, float]:
    """z-coefficients on [zlo, zhi] of A_f(z) * prod_{P|f} (1 - |P|^-2 z^-d(P))^-1.

    The Gauss-sum series is computed exactly through degree max(zhi, deg f) and
    extended by its exact geometric tail (ratio q per degree); the local-factor
    expansion in negative powers is summed until its geometrically decaying
    terms are negligible.
    """
    d = pdeg(f)
    m0 = max(zhi, d)
    a_coeffs = a_f_series(f, q, m0)

    def a_val(m: int) -> float:
        if m < 0:
            return 0.0
        if m <= m0:
            return a_coeffs[m]
        return a_coeffs[m0] * float(q) ** (m - m0)

    _, factors = factor(f, q) if d > 0 else (1, [])
    expansion = {0: 1.0}
    for p, _e in factors:
        dp = pdeg(p)
        w = float(q) ** (-2 * dp)
        new: dict[int, float] = {}
        for e0, c0 in expansion.items():
            j = 0
            term = c0
            while e0 + j * dp <= depth:
                new[e0 + j * dp] = new.get(e0 + j * dp, 0.0) + term
                term *= w
                j += 1
        expansion = new
    out = {}
    for b in range(zlo, zhi + 1):
        total = 0.0
        for e, ce in expansion.items():
            total += ce * a_val(b + e)
        out[b] = total
    return out


def verify_gauss_generating_identity(
    q: int, nz: int, nw: int, tol: float = 1e-8
) -> tuple[bool, dict]:
    """The factorization of the Gauss-sum double series, checked coefficientwise.

    LHS: sum over monic f with deg f <= nw of w^(deg f) times the local series.
    RHS: Z(z) Z(w) Z(q w^2 z) times the grouped Euler factors.
    Compared on z in [-nw*nz, nz], w in [0, nw] with tolerance
    |L - R| <= tol * max(1, |L|, |R|); cells computed outside that window are
    counted as skipped.
    """
    from .algebra import irreducible_count

    report_zmin, report_zmax = -nw * nz, nz
    zmax = report_zmax + 30
    zmin = report_zmin - zmax - 2 * nw
    depth = zmax - report_zmin + 25

    lhs: dict[tuple[int, int], float] = {}
    for n in range(0, nw + 1):
        for f in enumerate_monic(q, n):
            zc = _local_factor_z_coeffs(f, q, report_zmin, report_zmax, depth)
            for b, v in zc.items():
                key = (b, n)
                lhs[key] = lhs.get(key, 0.0) + v

    rhs_series = TruncSeries.one(zmin, zmax, nw, 1.0)
    for d in range(1, nw + 1):
        base = b_factor_series(d, q, zmin, zmax, nw)
        fbase = TruncSeries(zmin, zmax, nw)
        for key, c in base.terms.items():
            fbase.add_term(*key, float(c))
        rhs_series = rhs_series * fbase.pow(irreducible_count(q, d))
    zz = TruncSeries(zmin, zmax, nw)
    for k in range(0, zmax + 1):
        zz.add_term(k, 0, float(q) ** k)
    zw = TruncSeries(zmin, zmax, nw)
    for k in range(0, nw + 1):
        zw.add_term(0, k, float(q) ** k)
    zqwwz = TruncSeries(zmin, zmax, nw)
    k = 0
    while 2 * k <= nw:
        zqwwz.add_term(k, 2 * k, float(q) ** (2 * k))
        k += 1
    rhs_series = rhs_series * zz * zw * zqwwz

    mismatches = []
    max_err = 0.0
    for b in range(report_zmin, report_zmax + 1):
        for n in range(0, nw + 1):
            l = lhs.get((b, n), 0.0)
            r = rhs_series.coeff(b, n)
            err = abs(l - r) / max(1.0, abs(l), abs(r))
            max_err = max(max_err, err)
            if err > tol:
                mismatches.append((b, n, l, r))
    skipped = sum(
        1 for (ze, we) in rhs_series.terms if not (report_zmin <= ze <= report_zmax)
    )
    return not mismatches, {
        "window": [report_zmin, report_zmax, nw],
        "max_relative_error": max_err,
        "skipped_outside_window": skipped,
        "mismatches": mismatches[:10],
    }


def verify_c_closure(ctx: EulerContext, samples, tol: float = 1e-8) -> tuple[bool, dict]:
    """(1-u) prod_P B_P(1/(qu), 1/q) (1 - 1/(qu))^(-1) = C(u)/zeta_A(2) at real u."""
    q = ctx.q
    details = []
    ok = True
    for u in samples:
        if not (1.0 / q < abs(u) < q):
            raise DomainError(f"sample u={u} outside the convergence region")
        z = 1.0 / (q * u)
        log_prod = ctx.grouped_log_sum(
            lambda n, qn: math.log1p(B_correction(z, 1.0 / q, n, qn))
        )
        lhs = (1.0 - u) * math.exp(log_prod) / (1.0 - 1.0 / (q * u))
        rhs = C_eval(ctx, u) / float(zeta_A_exact(q, 2))
        err = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
        details.append({"u": u, "lhs": lhs, "rhs": rhs, "relative_error": err})
        ok = ok and err <= tol
    return ok, {"samples": details}


# ---------------------------------------------------------------------------
# formal polynomial identities in x = q^(1/2) and the Taylor symbols c_n
# ---------------------------------------------------------------------------

@dataclass
class FormalExpr:
    """Sparse polynomial sum of coeff * c_n * x^e terms (linear in the c's)."""

    terms: dict[tuple[int, int], int]

    @staticmethod
    def zero() -> "FormalExpr":
        return FormalExpr({})

    def add(self, c_index: int, x_exp: int, coeff: int = 1) -> None:
        key = (c_index, x_exp)
        new = self.terms.get(key, 0) + coeff
        if new == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def is_zero(self) -> bool:
        return not self.terms


def _add_block(expr, sign, x_base, n_hi, k_hi_fn, k_lo_fn=lambda n: 0, k_step=2):
    """sum_{n=0}^{n_hi} c_n x^x_base sum_{k=k_lo(n)}^{k_hi(n)} x^(k_step * k)."""
    for n in range(0, n_hi + 1):
        hi = k_hi_fn(n)
        lo = k_lo_fn(n)
        for k in range(lo, hi + 1):
            expr.add(n, x_base + k_step * k, sign)


def appendix_identity(t: int, parity: str) -> FormalExpr:
    """The nine-term residue-at-zero combination, as a formal polynomial.

    parity 'even' is the genus-2t case (t >= 1); parity 'odd' is genus 2t+1
    (t >= 0).  The combination is claimed to cancel identically; the caller
    asserts is_zero().
    """
    expr = FormalExpr.zero()
    if parity == "even":
        if t < 1:
            raise DomainError("even case needs t >= 1")
        for n in range(0, t + 1):
            expr.add(n, 6 * t + 3)
        _add_block(expr, +1, 6 * t + 2, t, lambda n: t - n)
        _add_block(expr, +1, 6 * t + 5, t - 1, lambda n: t - 1 - n)
        _add_block(expr, +1, 6 * t + 7, t - 1, lambda n: 2 * (t - 1 - n), lambda n: t - 1 - n)
        _add_block(expr, -1, 6 * t + 5, t - 1, lambda n: t - 1 - n, k_step=4)
        _add_block(expr, +1, 6 * t + 4, t, lambda n: 2 * (t - n), lambda n: t - n)
        _add_block(expr, -1, 6 * t + 2, t, lambda n: t - n, k_step=4)
        _add_block(expr, -1, 6 * t + 3, t, lambda n: t - n, k_step=4)
        _add_block(expr, -1, 6 * t + 4, t, lambda n: t - n, k_step=4)
    elif parity == "odd":
        if t < 0:
            raise DomainError("odd case needs t >= 0")
        for n in range(0, t + 2):
            expr.add(n, 6 * t + 5)
        _add_block(expr, +1, 6 * t + 7, t, lambda n: t - n)
        _add_block(expr, +1, 6 * t + 6, t, lambda n: t - n)
        _add_block(expr, +1, 6 * t + 8, t, lambda n: 2 * (t - n), lambda n: t - n)
        _add_block(expr, -1, 6 * t + 6, t, lambda n: t - n, k_step=4)
        _add_block(expr, +1, 6 * t + 9, t, lambda n: 2 * (t - n), lambda n: t - n)
        _add_block(expr, -1, 6 * t + 7, t, lambda n: t - n, k_step=4)
        _add_block(expr, -1, 6 * t + 8, t, lambda n: t - n, k_step=4)
        _add_block(expr, -1, 6 * t + 5, t + 1, lambda n: t + 1 - n, k_step=4)
    else:
        raise DomainError("parity must be 'even' or 'odd'")
    return expr


def verify_parity_identities(g_max: int) -> tuple[bool, dict]:
    """Two half-integer exponent identities used to merge the endpoint terms:
    1 + q^(1/2) = q^(-(g-1)/2 + [g/2]) + q^(-g/2 + [(g-1)/2] + 1)  and
    q^(g - [(g-1)/2]) = q^([g/2] + 1),  q^(g - [g/2]) = q^([(g-1)/2] + 1),
    all checked in exact doubled-exponent (x = q^(1/2)) arithmetic."""
    failures = []
    for g in range(1, g_max + 1):
        lhs = sorted([0, 1])
        rhs = sorted(
            [-(g - 1) + 2 * (g // 2), -g + 2 * ((g - 1) // 2) + 2]
        )
        if lhs != rhs:
            failures.append(("sum-split", g, lhs, rhs))
        if g - (g - 1) // 2 != g // 2 + 1:
            failures.append(("power-match-1", g))
        if g - g // 2 != (g - 1) // 2 + 1:
            failures.append(("power-match-2", g))
    return not failures, {"g_max": g_max, "failures": failures}
