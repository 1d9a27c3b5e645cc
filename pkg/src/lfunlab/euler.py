"""Infinite products over irreducibles, grouped by degree, and the four-term
asymptotic prediction for the even-degree ensemble's first moment.

Every Euler factor used here depends on the irreducible P only through
(d(P), |P|), so products are evaluated as sums over degrees n weighted by the
irreducible count pi_q(n); contributions decay geometrically (ratio between
q^-n and q^(-n/3) depending on the product), and the cutoff degree controls
the tail.  The grouped API takes factor functions of (n, q^n) only, which is
what makes the grouping valid by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import DomainError, QSqrt, irreducible_count


@dataclass(frozen=True)
class EulerContext:
    q: int
    cutoff: int
    pi_table: tuple[int, ...]  # pi_table[n] = number of monic irreducibles of degree n

    def grouped_log_sum(self, log_factor) -> float:
        """sum over degrees n <= cutoff of pi(n) * log_factor(n, q^n)."""
        return sum(
            float(self.pi_table[n]) * log_factor(n, self.q**n)
            for n in range(1, self.cutoff + 1)
        )

    def grouped_sum(self, term) -> float:
        return sum(
            float(self.pi_table[n]) * term(n, self.q**n)
            for n in range(1, self.cutoff + 1)
        )


def make_context(q: int, cutoff: int = 64) -> EulerContext:
    if cutoff < 1:
        raise DomainError("cutoff degree must be >= 1")
    table = (0,) + tuple(irreducible_count(q, n) for n in range(1, cutoff + 1))
    return EulerContext(q, cutoff, table)


# ---------------------------------------------------------------------------
# the affine zeta function
# ---------------------------------------------------------------------------

def zeta_A(q: int, s: float) -> float:
    """(1 - q^(1-s))^(-1); negative for s < 1 (in particular at s = 1/2)."""
    if s == 1:
        raise DomainError("zeta_A has its pole at s = 1")
    return 1.0 / (1.0 - q ** (1.0 - s))


def zeta_A_exact(q: int, s: int) -> Fraction:
    if s == 1:
        raise DomainError("zeta_A has its pole at s = 1")
    return 1 / (1 - Fraction(q) ** (1 - s))


def zeta_A_half(q: int) -> QSqrt:
    """1/(1 - sqrt(q)) = (1 + sqrt(q))/(1 - q), exactly in Q(sqrt q)."""
    return QSqrt(Fraction(1, 1 - q), Fraction(1, 1 - q), q)


# ---------------------------------------------------------------------------
# P(s) = prod (1 - 1/(|P|^s (|P|+1)))
# ---------------------------------------------------------------------------

def euler_P(ctx: EulerContext, s: float = 1.0) -> tuple[float, float]:
    """(P(s), (1/log q) * P'/P(s)); the log-derivative sign is pinned by a
    finite-difference test in the suite."""
    if s <= 0:
        raise DomainError("P(s) evaluated only for s > 0")
    q = ctx.q

    def log_factor(n, qn):
        return math.log1p(-(qn**-s) / (qn + 1.0))

    def deriv_term(n, qn):
        y = qn**-s / (qn + 1.0)
        return n * y / (1.0 - y)

    value = math.exp(ctx.grouped_log_sum(log_factor))
    logderiv_over_logq = ctx.grouped_sum(deriv_term)
    return value, logderiv_over_logq


# ---------------------------------------------------------------------------
# C(u) = prod (1 - u^d(P)/(|P|+1)) and its continuation past |u| = 1
# ---------------------------------------------------------------------------

def C_product(ctx: EulerContext, u: float) -> float:
    if abs(u) >= 1:
        raise DomainError("defining product for C(u) needs |u| < 1")
    return math.exp(ctx.grouped_log_sum(lambda n, qn: math.log1p(-(u**n) / (qn + 1.0))))


def C_continuation(ctx: EulerContext, u: float) -> float:
    """(1-u) * prod (1 + u^n/((1+|P|)(|P|-u^n))), valid for |u| < q; C(1) = 0."""
    if abs(u) >= ctx.q:
        raise DomainError("continuation of C(u) needs |u| < q")
    log_sum = ctx.grouped_log_sum(
        lambda n, qn: math.log1p(u**n / ((1.0 + qn) * (qn - u**n)))
    )
    return (1.0 - u) * math.exp(log_sum)


def C_eval(ctx: EulerContext, u: float) -> float:
    """C(u) via the continuation form (geometric tail ratio |u|/q everywhere in
    |u| < q; the defining product converges too slowly near |u| = 1)."""
    return C_continuation(ctx, u)


def C_taylor(ctx: EulerContext, order: int) -> list[Fraction]:
    """Exact rational Taylor coefficients of C at u = 0, through u^order."""
    coeffs = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        base = Fraction(-1, ctx.q**n + 1)
        factor = [Fraction(0)] * (order + 1)
        for k in range(order // n + 1):
            factor[n * k] = math.comb(ctx.pi_table[n], k) * base**k
        new = [Fraction(0)] * (order + 1)
        for i, ci in enumerate(coeffs):
            if ci:
                for j in range(0, order + 1 - i, n):
                    if factor[j]:
                        new[i + j] += ci * factor[j]
        coeffs = new
    return coeffs


# ---------------------------------------------------------------------------
# the two-variable Euler factors from the double Dirichlet series
# ---------------------------------------------------------------------------

def B_correction(z: float, w: float, n: int, qn: float) -> float:
    """B_P(z, w) - 1; kept separate so grouped logs can use log1p exactly."""
    num = (
        w**n
        - (z * w * w) ** n * qn * qn
        - (z * z * w) ** n * qn * qn
        + (z * z * w**3) ** n * qn * qn
        + (z * w * w) ** n * qn
        - (z * w**3) ** n * qn
    )
    den = z**n * qn * qn - 1.0
    return num / den


def B_factor(z: float, w: float, n: int, qn: float) -> float:
    """Euler factor of the Gauss-sum generating function B(z, w)."""
    return 1.0 + B_correction(z, w, n, qn)


def D_correction(z: float, w: float, n: int, qn: float) -> float:
    """D_P(z, w) - 1; see B_correction for why the -1 form is exposed."""
    num = (
        -(w ** (2 * n))
        - w ** (3 * n) / qn
        + w**n / (z**n * qn * qn)
        + (z * w * w) ** n * qn
        + (z * w * w) ** n
        - (z * z * w) ** n * qn * qn
        + (z * w**3) ** n
        - (z * z * w * w) ** n * qn * qn
    )
    den = (z**n * qn * qn - 1.0) * (1.0 + w**n)
    return num / den


def D_factor(z: float, w: float, n: int, qn: float) -> float:
    """Euler factor after pulling Z(w/(q^2 z)) Z(w^2)^(-1) out of prod B_P."""
    return 1.0 + D_correction(z, w, n, qn)


def D_special(ctx: EulerContext) -> tuple[float, float]:
    """The diagonal specialization of the D product and its log-derivative.

    Returns (prod_P D_P(q^(-4/3), q^(-1/3)),
             (1/q^(4/3)) d/dz log prod_P D_P(z, qz) at z = q^(-4/3)).

    On the diagonal w = qz each factor collapses, with t = |P|^(1/3) and
    y = z^(d(P)), to

        D_P(z, qz) = ((t^3 - 1)/t^3) (t^6 y + t^9 y^2 - 1 - t^12 y^4)
                     / ((t^6 y - 1)(1 + t^3 y)),

    and differentiating the log at y = t^(-4) gives the per-prime term

        (1/q^(4/3)) dlog D_P/dz
            = -d(P) (t^3 + t^2 + 4t + 3)
              / ((t^2 - 1)(t^5 + 2t^4 + t^3 + t^2 + t + 1)),

    which is what is summed here (all partial quantities positive, so no
    cancellation).  A finite-difference oracle against the general D_factor
    confirms it in the test suite.
    """
    def log_factor(n, qn):
        c = qn ** (1.0 / 3.0)
        return math.log1p(-(c**4 + c**2 + c + 1.0) / (c**4 + qn) ** 2)

    def deriv_term(n, qn):
        t = qn ** (1.0 / 3.0)
        num = t**3 + t**2 + 4.0 * t + 3.0
        den = (t**2 - 1.0) * (t**5 + 2.0 * t**4 + t**3 + t**2 + t + 1.0)
        return n * num / den

    prod = math.exp(ctx.grouped_log_sum(log_factor))
    logderiv = -ctx.grouped_sum(deriv_term)
    return prod, logderiv


def D_special_fd(ctx: EulerContext, h: float = 1e-7) -> float:
    """Finite-difference oracle for the D log-derivative term."""
    q = ctx.q
    z0 = float(q) ** (-4.0 / 3.0)

    def log_prod(z: float) -> float:
        return ctx.grouped_log_sum(
            lambda n, qn: math.log1p(D_correction(z, q * z, n, qn))
        )

    return (log_prod(z0 + h) - log_prod(z0 - h)) / (2.0 * h) / q ** (4.0 / 3.0)


# ---------------------------------------------------------------------------
# the prediction constants and the four terms
# ---------------------------------------------------------------------------

def tail_report(ctx: EulerContext) -> dict:
    """Magnitude of the last retained degree in each grouped sum, plus a flag
    when the cutoff looks too small for ~1e-9 work."""
    n = ctx.cutoff
    q = ctx.q
    qn = float(q) ** n
    pi_n = float(ctx.pi_table[n])
    c = qn ** (1.0 / 3.0)
    tails = {
        "P": pi_n * abs(math.log1p(-(qn**-1.0) / (qn + 1.0))),
        "D_product": pi_n * abs(math.log1p(-(c**4 + c**2 + c + 1.0) / (c**4 + qn) ** 2)),
        "D_logderiv": pi_n
        * n
        * (c**3 + c**2 + 4.0 * c + 3.0)
        / ((c**2 - 1.0) * (c**5 + 2.0 * c**4 + c**3 + c**2 + c + 1.0)),
    }
    return {
        "cutoff_degree": n,
        "last_term": tails,
        "cutoff_warning": any(t > 1e-9 for t in tails.values()),
    }


def constants(ctx: EulerContext) -> dict:
    q = ctx.q
    za = lambda s: zeta_A(q, s)  # noqa: E731
    c3 = 1.0 - q - q ** (7.0 / 6.0) + q ** (-1.0 / 6.0)
    c4 = (
        4.0 * c3 * za(4 / 3)
        - c3 * za(5 / 3)
        + 2.0 * (q - 1) * za(7 / 3) / q ** (4.0 / 3.0)
        + 4.0 * (q - 1)
        + 2.0 * q ** (1.0 / 6.0) * za(7 / 3) * (1.0 + q)
    )
    d_prod, d_logderiv = D_special(ctx)
    pref_r = za(5 / 3) * za(7 / 3) / (9.0 * q ** (4.0 / 3.0) * za(4 / 3))
    r1 = pref_r * d_prod * c3 / 2.0
    r0 = pref_r * d_prod * (-c4 - 2.0 * c3 * d_logderiv)
    pref_c = za(5 / 3) * za(7 / 3) * za(2) / za(4 / 3)
    c1 = pref_c * (q ** (-1 / 6) - q ** (-7 / 6) + q ** (-4 / 3) - 1.0) * d_prod
    c2 = pref_c * (q ** (1 / 3) - q ** (-2 / 3) + q ** (11 / 6) - q) * d_prod
    p1, plogp = euler_P(ctx)
    return {
        "P1": p1,
        "PlogP": plogp,
        "C1": c1,
        "C2": c2,
        "C3": c3,
        "C4": c4,
        "R0": r0,
        "R1": r1,
        "D_product": d_prod,
        "D_logderiv": d_logderiv,
        "convergence": tail_report(ctx),
    }


@dataclass(frozen=True)
class AsymptoticBreakdown:
    """The four predicted terms for genus g, with every constant behind them."""

    q: int
    g: int
    cutoff: int
    sign_toggle: int
    T1: float
    T2: float
    T3: float
    T4: float
    P1: float
    PlogP: float
    zetaA_half: QSqrt
    zetaA_2: Fraction
    C1: float
    C2: float
    C3: float
    C4: float
    R0: float
    R1: float
    T3_exponent: Fraction
    T4_exponent: Fraction

    @property
    def total(self) -> float:
        return self.T1 + self.T2 + self.T3 + self.T4


def predict_moment(ctx: EulerContext, g: int, sign_toggle: int = 1) -> AsymptoticBreakdown:
    if g < 0:
        raise DomainError("genus must be >= 0")
    if sign_toggle not in (1, -1):
        raise DomainError("sign_toggle must be +1 or -1")
    q = ctx.q
    cons = constants(ctx)
    zh = zeta_A_half(q)
    z2 = zeta_A_exact(q, 2)
    bracket = (2 * g + 2) + 4.0 * cons["PlogP"] + sign_toggle * 2.0 * zh.to_float()
    t1 = cons["P1"] / (2.0 * float(z2)) * float(q) ** (2 * g + 2) * bracket
    t2 = float(q) ** ((2 * g + 2) / 3.0) * (cons["R1"] * (2 * g + 2) + cons["R0"])
    t3_exp = Fraction(g, 6) + (g // 2)
    t4_exp = Fraction(g, 6) + ((g - 1) // 2)
    t3 = cons["C1"] * float(q) ** float(t3_exp)
    t4 = cons["C2"] * float(q) ** float(t4_exp)
    return AsymptoticBreakdown(
        q=q,
        g=g,
        cutoff=ctx.cutoff,
        sign_toggle=sign_toggle,
        T1=t1,
        T2=t2,
        T3=t3,
        T4=t4,
        P1=cons["P1"],
        PlogP=cons["PlogP"],
        zetaA_half=zh,
        zetaA_2=z2,
        C1=cons["C1"],
        C2=cons["C2"],
        C3=cons["C3"],
        C4=cons["C4"],
        R0=cons["R0"],
        R1=cons["R1"],
        T3_exponent=t3_exp,
        T4_exponent=t4_exp,
    )


def reference_main_term(ctx: EulerContext, g: int) -> float:
    """The older single-term asymptotic, written in its own variables:
    (P(1)/(2 zeta_A(2))) |D| [log_q|D| + (4/log q) P'/P(1) + 2 zeta_A(1/2)]."""
    q = ctx.q
    p1, plogp = euler_P(ctx)
    norm_d = float(q) ** (2 * g + 2)
    log_q_d = math.log(norm_d) / math.log(q)
    pprime_over_p = plogp * math.log(q)
    bracket = log_q_d + (4.0 / math.log(q)) * pprime_over_p + 2.0 * zeta_A(q, 0.5)
    return p1 / (2.0 * float(zeta_A_exact(q, 2))) * norm_d * bracket
