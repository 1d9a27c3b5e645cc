"""Quadratic residue and Jacobi symbols over F_q[x], and the character chi_D.

All symbols take values in {-1, 0, +1}, with 0 exactly when the two arguments
share an irreducible factor.  The fast Jacobi path runs a gcd-style reduction
using reciprocity (A|B) = (B|A), valid for monic coprime arguments because
q = 1 (mod 4); leading units are peeled off as constant symbols
(c|Q) = Legendre(c|q)^deg(Q).
"""

from __future__ import annotations

from .algebra import (
    DomainError,
    ONE,
    Poly,
    ZERO,
    factor,
    is_monic,
    is_squarefree,
    legendre_table,
    monic_part,
    pdeg,
    pmod,
    pmodpow,
)


def residue_symbol(f: Poly, p: Poly, q: int, validate: bool = True) -> int:
    """(f|P) for P irreducible monic: f^((|P|-1)/2) mod P, as -1, 0 or +1."""
    if validate:
        from .algebra import is_irreducible

        if not is_monic(p) or not is_irreducible(p, q):
            raise DomainError(f"{p} is not an irreducible monic polynomial")
    r = pmod(f, p, q)
    if r == ZERO:
        return 0
    s = pmodpow(r, (q ** pdeg(p) - 1) // 2, p, q)
    if s == ONE:
        return 1
    if s == (q - 1,):
        return -1
    raise DomainError(f"{p} is not irreducible (symbol power landed on {s})")


def jacobi(f: Poly, mod: Poly, q: int) -> int:
    """Jacobi symbol (f|mod) for monic nonzero mod, via the reciprocity loop.

    Zero iff gcd(f, mod) is nonconstant.  Constant numerators use
    (c|mod) = Legendre(c|q)^deg(mod), forced by multiplicativity.
    """
    if not is_monic(mod):
        raise DomainError(f"modulus {mod} must be monic and nonzero")
    leg = legendre_table(q)
    result = 1
    f = pmod(f, mod, q)
    while True:
        dq = len(mod) - 1
        if dq == 0:
            return result
        if not f:
            return 0
        if len(f) == 1:
            if dq % 2 == 1:
                result *= leg[f[0]]
            return result
        c = f[-1]
        if c != 1 and dq % 2 == 1:
            result *= leg[c]
        fm = monic_part(f, q)
        f, mod = pmod(mod, fm, q), fm


def jacobi_via_factorization(f: Poly, mod: Poly, q: int) -> int:
    """Slow oracle: (f|mod) as the product of residue symbols over mod's factors."""
    if not is_monic(mod):
        raise DomainError(f"modulus {mod} must be monic and nonzero")
    _, factors = factor(mod, q)
    result = 1
    for p, e in factors:
        s = residue_symbol(f, p, q, validate=False)
        if s == 0:
            return 0
        if e % 2 == 1:
            result *= s
    return result


def chi(d_poly: Poly, f: Poly, q: int, validate: bool = True) -> int:
    """chi_D(f) = (D|f), the quadratic character attached to square-free monic D."""
    if validate:
        if not is_monic(d_poly) or not is_squarefree(d_poly, q):
            raise DomainError(f"D={d_poly} must be monic square-free")
        if not is_monic(f):
            raise DomainError(f"f={f} must be monic nonzero")
    return jacobi(d_poly, f, q)


def chi_mod(f: Poly, a: Poly, q: int) -> int:
    """chi_f(A) = (A|f): the quadratic character modulo monic f, defined on all
    residues A mod f (it is what the Gauss sums and Poisson summation use)."""
    return jacobi(a, f, q)
