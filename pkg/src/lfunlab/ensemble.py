"""Vectorized whole-ensemble sweeps for H_m = monic square-free of degree m.

These are batched forms of the per-D operations in lfun: identical formulas,
evaluated for every ensemble member at once so the exhaustive checks and the
exact moments fit in minutes.  chi_D(f) is evaluated as (f|D)'s mirror
(D|f) = prod over irreducible P | f of chi_P(D mod P)^e, with per-irreducible
residue maps and quadratic-character tables precomputed as numpy arrays; the
point-count engine only uses extension-field multiplication tables.  Both
engines are cross-checked exhaustively against the literal per-D routes in the
test suite.

Members are indexed by their monic odometer code (constant coefficient
fastest), and every function takes a [start, end) code range, so disjoint
ranges partition the ensemble exactly and worker counts cannot change results.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .algebra import (
    Poly,
    QSqrt,
    code_to_monic,
    enumerate_monic,
    factor,
    is_squarefree,
    irreducibles_up_to,
    pdeg,
    pmod,
)
from .lfun import InconsistencyError, field_tables


@lru_cache(maxsize=None)
def _low_coeffs(q: int, m: int) -> np.ndarray:
    """(q^m, m) int16 matrix: row c = base-q digits of c (coefficients below x^m)."""
    codes = np.arange(q**m, dtype=np.int64)
    out = np.empty((q**m, m), dtype=np.int16)
    for i in range(m):
        out[:, i] = codes % q
        codes //= q
    return out


@lru_cache(maxsize=None)
def ensemble_codes(q: int, m: int) -> np.ndarray:
    """Sorted odometer codes of the square-free members of H_m (int64)."""
    keep = [
        code
        for code in range(q**m)
        if is_squarefree(code_to_monic(code, m, q), q)
    ]
    arr = np.array(keep, dtype=np.int64)
    if m >= 2:
        assert len(arr) == (q - 1) * q ** (m - 1)
    return arr


def _codes_slice(q: int, m: int, start: int, end: int | None) -> np.ndarray:
    codes = ensemble_codes(q, m)
    if end is None:
        end = q**m
    lo = np.searchsorted(codes, start, side="left")
    hi = np.searchsorted(codes, end, side="left")
    return codes[lo:hi]


def _residue_row(k: int, p: Poly, q: int) -> list[int]:
    r = pmod((0,) * k + (1,), p, q)
    return list(r) + [0] * (pdeg(p) - len(r))


@lru_cache(maxsize=None)
def _chi_table(q: int, p: Poly) -> np.ndarray:
    """Quadratic character of F_q[x]/(p) on residue codes: int8, length q^deg(p)."""
    d = pdeg(p)
    size = q**d
    v = _low_coeffs(q, d).astype(np.int64)
    conv = np.zeros((size, 2 * d - 1), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            conv[:, i + j] += v[:, i] * v[:, j]
    red = np.array([_residue_row(k, p, q) for k in range(2 * d - 1)], dtype=np.float64)
    res = np.rint(conv.astype(np.float64) @ red).astype(np.int64) % q
    qpow = q ** np.arange(d, dtype=np.int64)
    sq_codes = res @ qpow
    chi = np.full(size, -1, dtype=np.int8)
    chi[sq_codes[1:]] = 1
    chi[0] = 0
    assert int((chi == 1).sum()) == (size - 1) // 2
    return chi


@lru_cache(maxsize=None)
def _chi_of_ensemble(q: int, m: int, p: Poly) -> np.ndarray:
    """chi_P(D mod P) for D = x^m + low, for every low code: int8, length q^m."""
    d = pdeg(p)
    red = np.array([_residue_row(k, p, q) for k in range(m)], dtype=np.float64)
    xm = np.array(_residue_row(m, p, q), dtype=np.float64)
    low = _low_coeffs(q, m).astype(np.float64)
    res = np.rint(low @ red + xm).astype(np.int64) % q
    qpow = q ** np.arange(d, dtype=np.int64)
    codes = res @ qpow
    return _chi_table(q, p)[codes]


@lru_cache(maxsize=None)
def _monic_factorizations(q: int, n: int) -> tuple[tuple[Poly, tuple[tuple[Poly, int], ...]], ...]:
    out = []
    for f in enumerate_monic(q, n):
        _, factors = factor(f, q)
        out.append((f, tuple(factors)))
    return tuple(out)


def charsum_matrix(
    q: int, m: int, nmax: int, start: int = 0, end: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """(codes, C) with C[i, n] = sum over monic f of degree n of chi_D(f),
    for the ensemble members of H_m with odometer code in [start, end)."""
    codes = _codes_slice(q, m, start, end)
    n_d = len(codes)
    cmat = np.zeros((n_d, nmax + 1), dtype=np.int64)
    cmat[:, 0] = 1
    cache: dict[Poly, np.ndarray] = {}
    for n in range(1, nmax + 1):
        col = np.zeros(n_d, dtype=np.int64)
        for f, factors in _monic_factorizations(q, n):
            sym: np.ndarray | None = None
            for p, e in factors:
                v = cache.get(p)
                if v is None:
                    v = _chi_of_ensemble(q, m, p)[codes]
                    cache[p] = v
                term = v if e % 2 == 1 else np.abs(v)
                sym = term if sym is None else sym * term
            col += sym
        cmat[:, n] = col
    return codes, cmat


def pointcount_a_matrix(
    q: int,
    m: int,
    start: int = 0,
    end: int | None = None,
    validate: bool = True,
    chunk: int = 32768,
) -> tuple[np.ndarray, np.ndarray]:
    """(codes, A) with A[i] = completed coefficients a_0..a_{2 delta} via point
    counts; the extra power sum is checked against the functional equation."""
    codes = _codes_slice(q, m, start, end)
    n_d = len(codes)
    lam = 1 if m % 2 == 0 else 0
    delta = (m - 1 - lam) // 2
    infinity = 1 if lam else 0
    depth = delta + 1 if validate else delta
    s = np.zeros((n_d, depth), dtype=np.int64)
    for j in range(1, depth + 1):
        mul, chi = field_tables(q, j)
        size = q**j
        alphas = np.arange(size)
        for lo in range(0, n_d, chunk):
            rows = codes[lo : lo + chunk]
            dg = np.empty((len(rows), m), dtype=np.int64)
            tmp = rows.copy()
            for i in range(m):
                dg[:, i] = tmp % q
                tmp //= q
            acc = np.ones((len(rows), size), dtype=np.int64)
            for k in range(m - 1, -1, -1):
                acc = mul[acc, alphas[None, :]]
                ck = dg[:, k : k + 1]
                low = acc % q
                acc = acc - low + (low + ck) % q
            s[lo : lo + chunk, j - 1] = chi[acc].sum(axis=1)
    s = -s - infinity
    e = [np.ones(n_d, dtype=np.int64)]
    for k in range(1, depth + 1):
        total = np.zeros(n_d, dtype=np.int64)
        for i in range(1, k + 1):
            total += (-1) ** (i - 1) * e[k - i] * s[:, i - 1]
        if np.any(total % k != 0):
            raise InconsistencyError("Newton identity division not exact (bulk)")
        e.append(total // k)
    a = np.empty((n_d, 2 * delta + 1), dtype=np.int64)
    a[:, 0] = 1
    for k in range(1, delta + 1):
        a[:, k] = (-1) ** k * e[k]
    for i in range(delta - 1, -1, -1):
        a[:, 2 * delta - i] = q ** (delta - i) * a[:, i]
    if validate:
        a_next = (-1) ** (delta + 1) * e[delta + 1]
        expected = q * a[:, delta - 1] if delta >= 1 else np.zeros(n_d, dtype=np.int64)
        if not np.array_equal(a_next, expected):
            raise InconsistencyError(
                "bulk point counts disagree with the functional equation"
            )
    return codes, a


def c_matrix_from_a(a_mat: np.ndarray, lam: int) -> np.ndarray:
    if not lam:
        return a_mat.copy()
    return np.concatenate(
        [a_mat[:, :1], np.diff(a_mat, axis=1), -a_mat[:, -1:]], axis=1
    )


def fe_symmetry_holds(a_mat: np.ndarray, q: int) -> bool:
    """a_{2 delta - i} = q^(delta - i) a_i for every row, exactly.

    i <= delta suffices (the i > delta cases are the same equalities read
    backwards) and keeps every power of q a nonnegative integer."""
    two_delta = a_mat.shape[1] - 1
    delta = two_delta // 2
    for i in range(delta + 1):
        if not np.array_equal(a_mat[:, two_delta - i], q ** (delta - i) * a_mat[:, i]):
            return False
    return True


# ---------------------------------------------------------------------------
# scaled-integer central values (everything multiplied by q^(g+1))
# ---------------------------------------------------------------------------

def central_scaled(cmat: np.ndarray, g: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    """q^(g+1) * L(1/2) as (rational part, sqrt(q) part), exact integers."""
    n_d, width = cmat.shape
    a_part = np.zeros(n_d, dtype=np.int64)
    b_part = np.zeros(n_d, dtype=np.int64)
    for n in range(width):
        if n % 2 == 0:
            a_part += cmat[:, n] * q ** ((2 * g + 2 - n) // 2)
        else:
            b_part += cmat[:, n] * q ** ((2 * g + 1 - n) // 2)
    return a_part, b_part


def afe_scaled(cmat: np.ndarray, g: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    """q^(g+1) * (finite central-value formula), exact integers; uses c_0..c_g."""
    n_d = cmat.shape[0]
    a_part = np.zeros(n_d, dtype=np.int64)
    b_part = np.zeros(n_d, dtype=np.int64)
    for n in range(0, g + 1):
        if n % 2 == 0:
            a_part += cmat[:, n] * q ** ((2 * g + 2 - n) // 2)
        else:
            b_part += cmat[:, n] * q ** ((2 * g + 1 - n) // 2)
        if n <= g - 1:
            if n % 2 == 0:
                a_part += cmat[:, n] * q ** ((2 * g + 2 - n) // 2)
            else:
                b_part += cmat[:, n] * q ** ((2 * g + 1 - n) // 2)
    head_g = cmat[:, : g + 1].sum(axis=1)
    if g % 2 == 1:
        a_part -= head_g * q ** ((g + 1) // 2)
    else:
        b_part -= head_g * q ** (g // 2)
    head_g1 = cmat[:, :g].sum(axis=1) if g >= 1 else np.zeros(n_d, dtype=np.int64)
    if g % 2 == 0:
        a_part -= head_g1 * q ** (g // 2 + 1)
    else:
        b_part -= head_g1 * q ** ((g + 1) // 2)
    return a_part, b_part


def moment_from_cmatrix(cmat: np.ndarray, q: int) -> QSqrt:
    """Exact sum of central values over the rows of cmat."""
    total = QSqrt.from_int(0, q)
    for n in range(cmat.shape[1]):
        colsum = int(cmat[:, n].sum())
        if colsum:
            total = total + QSqrt.half_power(-n, q) * colsum
    return total


def rh_holds_all(a_mat: np.ndarray, q: int, tol: float = 1e-6) -> bool:
    """Every row's completed polynomial has all roots within tol of |u|=q^(-1/2)."""
    two_delta = a_mat.shape[1] - 1
    delta = two_delta // 2
    if delta == 0:
        return True
    lead = float(q**delta)
    n_d = a_mat.shape[0]
    comp = np.zeros((n_d, two_delta, two_delta), dtype=np.float64)
    comp[:, np.arange(1, two_delta), np.arange(0, two_delta - 1)] = 1.0
    comp[:, :, -1] = -a_mat[:, :-1].astype(np.float64) / lead
    roots = np.linalg.eigvals(comp)
    target = q**-0.5
    return bool(np.all(np.abs(np.abs(roots) - target) <= tol))


def warm_tables(q: int, m: int, nmax: int, pointcount_depth: int) -> None:
    """Build the numpy tables in the current process (so forked workers share)."""
    ensemble_codes(q, m)
    for n in range(1, nmax + 1):
        _monic_factorizations(q, n)
    for d in range(1, nmax + 1):
        for p in irreducibles_up_to(q, nmax)[d]:
            _chi_of_ensemble(q, m, p)
    for j in range(1, pointcount_depth + 1):
        field_tables(q, j)
