"""Prime-field polynomial arithmetic over F_q[x] and exact Q(sqrt(q)) scalars.

Polynomials are plain tuples of ints in [0, q), ascending degree, with no
trailing zeros; () is the zero polynomial.  The degree of f is len(f) - 1 and
its norm is q**deg(f).  Keeping the representation primitive (tuples + module
functions taking q explicitly) keeps the enumeration/character inner loops
cheap; FieldParams carries the validated field size for API-level code.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldParams:
    """Validated field size q: prime and q = 1 (mod 4).

    The congruence condition makes polynomial quadratic reciprocity sign-free
    and the quadratic Gauss sum over F_q equal to +sqrt(q); everything in the
    character/Gauss-sum layer relies on it, so it is enforced at construction.
    """

    q: int
    legendre: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not is_prime(self.q):
            raise DomainError(f"q={self.q} is not prime")
        if self.q % 4 != 1:
            raise DomainError(
                f"q={self.q} is not 1 mod 4; quadratic reciprocity over F_q[x] "
                "is only sign-free (A|B)=(B|A) in that case"
            )
        object.__setattr__(self, "legendre", legendre_table(self.q))


@lru_cache(maxsize=None)
def legendre_table(q: int) -> tuple[int, ...]:
    """legendre_table(q)[a] = Legendre symbol (a|q) for 0 <= a < q."""
    t = [-1] * q
    t[0] = 0
    for a in range(1, q):
        t[a * a % q] = 1
    return tuple(t)


# ---------------------------------------------------------------------------
# basic polynomial operations (tuples, ascending coefficients)
# ---------------------------------------------------------------------------

Poly = tuple  # alias for readability in signatures

ZERO: Poly = ()
ONE: Poly = (1,)
X: Poly = (0, 1)


def pnormalize(coeffs) -> Poly:
    """Strip trailing zeros; coefficients must already be reduced mod q."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def pdeg(f: Poly) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(f) - 1


def pnorm(f: Poly, q: int) -> int:
    if not f:
        raise DomainError("norm of the zero polynomial")
    return q ** (len(f) - 1)


def is_monic(f: Poly) -> bool:
    return bool(f) and f[-1] == 1


def padd(a: Poly, b: Poly, q: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] = (c[i] + x) % q
    return pnormalize(c)


def psub(a: Poly, b: Poly, q: int) -> Poly:
    c = list(a) + [0] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        c[i] = (c[i] - x) % q
    return pnormalize(c)


def pscale(a: Poly, s: int, q: int) -> Poly:
    s %= q
    if s == 0:
        return ZERO
    return tuple((x * s) % q for x in a)


def pmul(a: Poly, b: Poly, q: int) -> Poly:
    if not a or not b:
        return ZERO
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return tuple(v % q for v in c)


def pdivmod(a: Poly, b: Poly, q: int) -> tuple[Poly, Poly]:
    """Quotient and remainder of a by b (b nonzero, not necessarily monic)."""
    if not b:
        raise DomainError("division by the zero polynomial")
    if len(a) < len(b):
        return ZERO, a
    inv = 1 if b[-1] == 1 else pow(b[-1], q - 2, q)
    r = list(a)
    db = len(b) - 1
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = c * inv % q
            quot[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % q
    return pnormalize(quot), pnormalize(r[:db])


def pmod(a: Poly, b: Poly, q: int) -> Poly:
    return pdivmod(a, b, q)[1]


def pgcd(a: Poly, b: Poly, q: int) -> Poly:
    """Monic gcd."""
    while b:
        a, b = b, pmod(a, b, q)
    if not a:
        return ZERO
    return monic_part(a, q)


def monic_part(f: Poly, q: int) -> Poly:
    """f divided by its leading coefficient (f nonzero)."""
    if not f:
        raise DomainError("monic part of zero")
    if f[-1] == 1:
        return f
    return pscale(f, pow(f[-1], q - 2, q), q)


def pderiv(f: Poly, q: int) -> Poly:
    return pnormalize([(i * c) % q for i, c in enumerate(f)][1:])


def peval(f: Poly, x: int, q: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % q
    return acc


def pmodpow(f: Poly, e: int, m: Poly, q: int) -> Poly:
    """f**e mod m."""
    result = ONE
    base = pmod(f, m, q)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, q), m, q)
        base = pmod(pmul(base, base, q), m, q)
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# text format: comma-separated coefficients, ascending degree ("2,0,1" = x^2+2)
# ---------------------------------------------------------------------------

def parse_poly(text: str, q: int) -> Poly:
    parts = [p.strip() for p in text.split(",")]
    try:
        coeffs = [int(p) for p in parts]
    except ValueError as exc:
        raise DomainError(f"malformed polynomial string {text!r}") from exc
    for c in coeffs:
        if not 0 <= c < q:
            raise DomainError(f"coefficient {c} out of range [0, {q}) in {text!r}")
    return pnormalize(coeffs)


def format_poly(f: Poly) -> str:
    if not f:
        return "0"
    return ",".join(str(c) for c in f)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def code_to_monic(code: int, n: int, q: int) -> Poly:
    """Monic degree-n polynomial from its odometer index (constant term fastest)."""
    coeffs = []
    for _ in range(n):
        coeffs.append(code % q)
        code //= q
    coeffs.append(1)
    return tuple(coeffs)


def monic_to_code(f: Poly, q: int) -> int:
    code = 0
    for c in reversed(f[:-1]):
        code = code * q + c
    return code


def enumerate_monic(q: int, n: int, start: int = 0, end: int | None = None) -> Iterator[Poly]:
    """All q^n monic polynomials of degree n, odometer order over [start, end)."""
    if n < 0:
        raise DomainError("negative degree")
    if n == 0:
        if start == 0 and (end is None or end > 0):
            yield ONE
        return
    total = q**n
    if end is None or end > total:
        end = total
    for code in range(start, end):
        yield code_to_monic(code, n, q)


def is_squarefree(f: Poly, q: int) -> bool:
    """True iff no irreducible divides f twice.

    gcd(f, f') is constant iff f is square-free, except when f' = 0: over a
    prime field that means f = g**q, a q-th power, hence not square-free for
    deg f >= 1.
    """
    if not f:
        raise DomainError("zero polynomial")
    d = pderiv(f, q)
    if not d:
        return len(f) == 1
    return pdeg(pgcd(f, d, q)) == 0


def enumerate_ensemble(q: int, n: int, start: int = 0, end: int | None = None) -> Iterator[Poly]:
    """Monic square-free polynomials of degree n, in odometer order.

    start/end index the q^n monic codes (not the square-free subsequence) so
    disjoint ranges partition the ensemble exactly.
    """
    for f in enumerate_monic(q, n, start, end):
        if is_squarefree(f, q):
            yield f


def mobius(n: int) -> int:
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return divs


def irreducible_count(q: int, n: int) -> int:
    """Number of monic irreducibles of degree n: (1/n) sum_{d|n} mu(d) q^(n/d)."""
    if n < 1:
        raise DomainError("degree must be >= 1")
    total = sum(mobius(d) * q ** (n // d) for d in divisors(n))
    assert total % n == 0
    return total // n


@lru_cache(maxsize=None)
def irreducibles_up_to(q: int, nmax: int) -> dict[int, tuple[Poly, ...]]:
    """Table degree -> tuple of all monic irreducibles of that degree, <= nmax.

    Sieve by trial division against lower-degree irreducibles; checked against
    the Moebius count.
    """
    table: dict[int, tuple[Poly, ...]] = {}
    for n in range(1, nmax + 1):
        found = []
        lower = [p for d in range(1, n // 2 + 1) for p in table[d]]
        for f in enumerate_monic(q, n):
            if not any(pmod(f, p, q) == ZERO for p in lower):
                found.append(f)
        assert len(found) == irreducible_count(q, n)
        table[n] = tuple(found)
    return table


def is_irreducible(f: Poly, q: int) -> bool:
    """Irreducibility via x^(q^d) = x (mod f) and proper-divisor degree checks."""
    n = pdeg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    xq = pmodpow(X, q**n, f, q)
    if psub(xq, X, q) != ZERO:
        return False
    for r in {n // p for p in range(2, n + 1) if n % p == 0 and is_prime(p)}:
        xqr = pmodpow(X, q**r, f, q)
        if pdeg(pgcd(psub(xqr, X, q), f, q)) > 0:
            return False
    return True


def _equal_degree_split(f: Poly, d: int, q: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus split of f = product of distinct irreducibles of degree d."""
    n = pdeg(f)
    if n == d:
        return [f]
    while True:
        r = pnormalize([rng.randrange(q) for _ in range(n)])
        if pdeg(r) < 1:
            continue
        g = pgcd(r, f, q)
        if 0 < pdeg(g) < n:
            pass
        else:
            h = pmodpow(r, (q**d - 1) // 2, f, q)
            g = pgcd(psub(h, ONE, q), f, q)
            if not 0 < pdeg(g) < n:
                continue
        left = _equal_degree_split(g, d, q, rng)
        right = _equal_degree_split(pdivmod(f, g, q)[0], d, q, rng)
        return left + right


def factor(f: Poly, q: int) -> tuple[int, list[tuple[Poly, int]]]:
    """Factor f as (unit, [(irreducible monic, exponent), ...]).

    Trial division by irreducibles of degree <= 6 covers everything up to
    degree 13; larger square-free-by-degree cofactors go through
    distinct-degree / equal-degree splitting seeded deterministically from f.
    Factors are sorted by (degree, coefficient tuple) so output order is
    reproducible.
    """
    if not f:
        raise DomainError("cannot factor the zero polynomial")
    unit = f[-1]
    g = monic_part(f, q)
    factors: dict[Poly, int] = {}
    table = irreducibles_up_to(q, min(6, max(1, pdeg(g) // 2)) if pdeg(g) >= 2 else 1)
    for d in sorted(table):
        if pdeg(g) < 2 * d:
            break
        for p in table[d]:
            while True:
                quo, rem = pdivmod(g, p, q)
                if rem == ZERO:
                    factors[p] = factors.get(p, 0) + 1
                    g = quo
                else:
                    break
            if pdeg(g) < 2 * d:
                break
    if pdeg(g) >= 1:
        if pdeg(g) <= 13 or is_irreducible(g, q):
            factors[g] = factors.get(g, 0) + 1
        else:
            rng = random.Random((q, g).__repr__())
            # distinct-degree: strip gcd with x^(q^d) - x for increasing d
            h = X
            d = 0
            rest = g
            while pdeg(rest) > 0:
                d += 1
                if 2 * d > pdeg(rest):
                    factors[rest] = factors.get(rest, 0) + 1
                    break
                h = pmodpow(h, q, rest, q)
                gd = pgcd(psub(h, X, q), rest, q)
                if pdeg(gd) > 0:
                    for p in _equal_degree_split(gd, d, q, rng):
                        factors[p] = factors.get(p, 0) + 1
                    rest = pdivmod(rest, gd, q)[0]
    result = sorted(factors.items(), key=lambda kv: (len(kv[0]), kv[0]))
    # exact reconstruction check: the factorization is used as an oracle elsewhere
    check: Poly = (unit,)
    for p, e in result:
        for _ in range(e):
            check = pmul(check, p, q)
    if check != f:
        raise AssertionError(f"factorization of {f} does not reconstruct")
    return unit, result


def euler_phi(f: Poly, q: int) -> int:
    """Order of (F_q[x]/f)^*: multiplicative, phi(P^e) = |P|^e - |P|^(e-1)."""
    if not f:
        raise DomainError("zero polynomial")
    _, factors = factor(f, q)
    phi = 1
    for p, e in factors:
        np = q ** pdeg(p)
        phi *= np**e - np ** (e - 1)
    return phi


# ---------------------------------------------------------------------------
# exact numbers a + b*sqrt(q)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QSqrt:
    """Exact element a + b*sqrt(q) of Q(sqrt(q)), q prime (so sqrt(q) irrational).

    Central values L(1/2, chi_D) and ensemble moments live here; equality is
    componentwise and arithmetic is closed and exact.
    """

    a: Fraction
    b: Fraction
    q: int

    @staticmethod
    def make(a, b, q: int) -> "QSqrt":
        return QSqrt(Fraction(a), Fraction(b), q)

    @staticmethod
    def from_int(n, q: int) -> "QSqrt":
        return QSqrt(Fraction(n), Fraction(0), q)

    @staticmethod
    def half_power(k: int, q: int) -> "QSqrt":
        """q**(k/2) for integer k (possibly negative)."""
        if k % 2 == 0:
            return QSqrt(Fraction(q) ** (k // 2), Fraction(0), q)
        return QSqrt(Fraction(0), Fraction(q) ** ((k - 1) // 2), q)

    def _check(self, other: "QSqrt") -> None:
        if self.q != other.q:
            raise DomainError("mixing different sqrt(q) fields")

    def __add__(self, other: "QSqrt") -> "QSqrt":
        self._check(other)
        return QSqrt(self.a + other.a, self.b + other.b, self.q)

    def __sub__(self, other: "QSqrt") -> "QSqrt":
        self._check(other)
        return QSqrt(self.a - other.a, self.b - other.b, self.q)

    def __mul__(self, other) -> "QSqrt":
        if isinstance(other, QSqrt):
            self._check(other)
            return QSqrt(
                self.a * other.a + self.b * other.b * self.q,
                self.a * other.b + self.b * other.a,
                self.q,
            )
        return QSqrt(self.a * other, self.b * other, self.q)

    __rmul__ = __mul__

    def __neg__(self) -> "QSqrt":
        return QSqrt(-self.a, -self.b, self.q)

    def conjugate(self) -> "QSqrt":
        return QSqrt(self.a, -self.b, self.q)

    def to_float(self) -> float:
        return float(self.a) + float(self.b) * self.q**0.5

    def __str__(self) -> str:
        return f"{self.a} + {self.b}*sqrt({self.q})"
