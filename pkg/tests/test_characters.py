import random

import pytest

from lfunlab.algebra import (
    DomainError,
    ONE,
    enumerate_monic,
    irreducibles_up_to,
    pgcd,
    pdeg,
    pmod,
    pmul,
)
from lfunlab.characters import chi, jacobi, jacobi_via_factorization, residue_symbol
from lfunlab.ensemble import _chi_table

Q = 5


def test_residue_symbol_examples():
    assert residue_symbol((0, 1), (1, 1), Q) == 1
    assert residue_symbol((1, 1), (1, 1), Q) == 0
    assert residue_symbol((2,), (0, 1), Q) == -1
    with pytest.raises(DomainError):
        residue_symbol((0, 1), (0, 0, 1), Q)  # x^2 not irreducible


def test_jacobi_trivial_modulus():
    for f in [(2,), (0, 1), (1, 2, 3)]:
        assert jacobi(f, ONE, Q) == 1


def _table_jacobi(f, mod):
    """Third route: residue-symbol lookup tables over the factorization."""
    from lfunlab.algebra import factor

    result = 1
    for p, e in factor(mod, Q)[1]:
        r = pmod(f, p, Q)
        code = sum(c * Q**i for i, c in enumerate(r))
        s = int(_chi_table(Q, p)[code])
        if s == 0:
            return 0
        if e % 2 == 1:
            result *= s
    return result


def test_jacobi_paths_exhaustive():
    """Reciprocity-loop == factorization path for all (f, Q) with deg <= 4."""
    mods = [m for n in range(0, 5) for m in enumerate_monic(Q, n)]
    tops = mods
    for mod in mods:
        if pdeg(mod) == 0:
            continue
        for f in tops:
            assert jacobi(f, mod, Q) == _table_jacobi(f, mod), (f, mod)


def test_jacobi_via_factorization_sample():
    rng = random.Random(3)
    for _ in range(4000):
        f = tuple(rng.randrange(Q) for _ in range(rng.randrange(0, 5)))
        f = tuple(f) + (rng.randrange(1, Q),)
        mod = tuple(rng.randrange(Q) for _ in range(rng.randrange(0, 5))) + (1,)
        assert jacobi(f, mod, Q) == jacobi_via_factorization(f, mod, Q)


def test_reciprocity_exhaustive():
    """(A|B) = (B|A) for all monic pairs, degrees <= 4 (zero cases included)."""
    monics = [m for n in range(1, 5) for m in enumerate_monic(Q, n)]
    for a in monics:
        for b in monics:
            assert jacobi(a, b, Q) == jacobi(b, a, Q), (a, b)


def test_jacobi_zero_iff_common_factor():
    rng = random.Random(11)
    for _ in range(3000):
        f = tuple(rng.randrange(Q) for _ in range(rng.randrange(0, 5))) + (1,)
        mod = tuple(rng.randrange(Q) for _ in range(rng.randrange(0, 5))) + (1,)
        is_zero = jacobi(f, mod, Q) == 0
        assert is_zero == (pdeg(pgcd(f, mod, Q)) > 0)


def test_chi_examples():
    d_poly = (2, 0, 1)
    assert chi(d_poly, (1, 1), Q) == -1
    assert chi(d_poly, d_poly, Q) == 0
    assert sum(chi(d_poly, (a, 1), Q) for a in range(Q)) == -1
    with pytest.raises(DomainError):
        chi((0, 0, 1), (1, 1), Q)  # not square-free


def test_chi_complete_multiplicativity():
    rng = random.Random(5)
    d_polys = [(2, 0, 1), (1, 1), (0, 1, 1, 0, 1)]
    monics = [m for n in range(1, 4) for m in enumerate_monic(Q, n)]
    for _ in range(10000):
        d_poly = rng.choice(d_polys)
        f, g = rng.choice(monics), rng.choice(monics)
        assert chi(d_poly, pmul(f, g, Q), Q, validate=False) == chi(
            d_poly, f, Q, validate=False
        ) * chi(d_poly, g, Q, validate=False)


def test_constant_numerator_rule():
    # (c|Q) = Legendre(c|q)^deg(Q), forced by multiplicativity
    for p in irreducibles_up_to(Q, 3)[3][:5]:
        assert jacobi((2,), p, Q) == residue_symbol((2,), p, Q, validate=False)
        assert jacobi((4,), p, Q) == residue_symbol((4,), p, Q, validate=False)
