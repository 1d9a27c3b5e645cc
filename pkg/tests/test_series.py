import random
from fractions import Fraction

from lfunlab.algebra import ONE, parse_poly
from lfunlab.cyclotomic import gauss_sum
from lfunlab.euler import make_context
from lfunlab.series import (
    FormalExpr,
    TruncSeries,
    a_f_series,
    appendix_identity,
    verify_c_closure,
    verify_gauss_generating_identity,
    verify_lemma_euler_refactor,
    verify_parity_identities,
)

Q = 5


def _random_series(rng, zmin, zmax, wmax, nterms=8):
    s = TruncSeries(zmin, zmax, wmax)
    for _ in range(nterms):
        s.add_term(
            rng.randrange(zmin, zmax + 1),
            rng.randrange(0, wmax + 1),
            Fraction(rng.randrange(-9, 10), rng.randrange(1, 7)),
        )
    return s


def test_trunc_series_ring_laws():
    rng = random.Random(4)
    for _ in range(60):
        # commutativity holds in any window
        a = _random_series(rng, -4, 4, 3)
        b = _random_series(rng, -4, 4, 3)
        assert (a * b).terms == (b * a).terms
        assert (a + b).terms == (b + a).terms
    for _ in range(60):
        # associativity needs the triple product to stay inside the window
        # (discarded overflow cells could otherwise re-enter via negative
        # exponents); supports in [-1,1] x [0,1] on a [-3,3] x [0,3] window
        # never leave it
        a = _random_series(rng, -1, 1, 1)
        b = _random_series(rng, -1, 1, 1)
        c = _random_series(rng, -1, 1, 1)
        for s in (a, b, c):
            s.zmin, s.zmax, s.wmax = -3, 3, 3
        assert ((a * b) * c).terms == (a * (b * c)).terms
    one = TruncSeries.one(-4, 4, 3, Fraction(1))
    s = _random_series(rng, -4, 4, 3)
    assert (s * one).terms == s.terms
    t = _random_series(rng, -1, 1, 1)
    t.zmin, t.zmax, t.wmax = -4, 4, 4
    assert (t.pow(3)).terms == ((t * t) * t).terms


def test_trunc_series_discards_out_of_window():
    s = TruncSeries(-1, 1, 2, {(1, 1): Fraction(1)})
    prod = s * s
    assert prod.terms == {}  # z-degree 2 exceeds the window


def test_a_f_series_basics():
    f = parse_poly("2,0,1", Q)
    coeffs = a_f_series(f, Q, 4)
    # z^0 coefficient is G(1, chi_f)/sqrt|f|
    g1 = gauss_sum(ONE, f, Q).embed().real
    assert abs(coeffs[0] - g1 / Q) < 1e-9
    # geometric tail: slices beyond deg f scale by q each degree
    assert abs(coeffs[3] - Q * coeffs[2]) < 1e-6
    assert abs(coeffs[4] - Q * coeffs[3]) < 1e-6
    # values are real
    sq = parse_poly("0,0,1", Q)
    assert abs(a_f_series(sq, Q, 0)[0]) < 1e-9  # G(1, chi_{x^2}) vanishes


def test_gauss_generating_identity_small():
    ok, det = verify_gauss_generating_identity(Q, 2, 2)
    assert ok, det
    assert det["max_relative_error"] < 1e-10
    # skip count is a deterministic function of the parameters
    ok2, det2 = verify_gauss_generating_identity(Q, 2, 2)
    assert det2["skipped_outside_window"] == det["skipped_outside_window"]


def test_euler_refactor_exact_small():
    ok3, det3 = verify_lemma_euler_refactor(Q, 3)
    assert ok3, det3
    # holding at a larger window implies the smaller restriction
    ok4, det4 = verify_lemma_euler_refactor(Q, 4)
    assert ok4, det4


def test_c_closure_samples():
    ctx = make_context(Q, 64)
    ok, det = verify_c_closure(ctx, [0.5, -0.4], 1e-8)
    assert ok, det
    # u -> 1: both sides tend to zero
    ok1, det1 = verify_c_closure(ctx, [0.999], 1e-4)
    assert abs(det1["samples"][0]["lhs"]) < 2e-3
    assert abs(det1["samples"][0]["rhs"]) < 2e-3


def test_formal_expr_zero_detection():
    e = FormalExpr.zero()
    e.add(0, 3, 1)
    assert not e.is_zero()
    e.add(0, 3, -1)
    assert e.is_zero()


def test_appendix_base_cases():
    assert appendix_identity(1, "even").is_zero()
    assert appendix_identity(0, "odd").is_zero()


def test_appendix_all_small_t():
    for t in range(1, 11):
        assert appendix_identity(t, "even").is_zero(), ("even", t)
    for t in range(0, 11):
        assert appendix_identity(t, "odd").is_zero(), ("odd", t)


def test_appendix_perturbation_is_caught():
    # the cancellation is structural: damaging one term must break it
    e = appendix_identity(2, "even")
    e.add(0, 15, 1)
    assert not e.is_zero()


def test_parity_identities():
    ok, det = verify_parity_identities(20)
    assert ok, det
    # g = 2 instance: exponent multiset {1/2, 0} on both sides
    assert sorted([-(2 - 1) + 2 * (2 // 2), -2 + 2 * ((2 - 1) // 2) + 2]) == [0, 1]
