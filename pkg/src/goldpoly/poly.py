"""Exact dense polynomial arithmetic over the integers.

IntPolynomial stores an immutable tuple of Python ints (index = exponent),
canonical: empty tuple is the zero polynomial, otherwise the last entry is
nonzero.  All ring operations are exact; multiplication switches from
schoolbook to Karatsuba above a benchmarked cutoff.  Cyclotomic polynomials
are built by exact division and memoized behind a lock.

gcd_rational returns the primitive integer generator of the gcd ideal over
the rationals.  Small inputs go through the subresultant remainder sequence;
large ones through a modular gcd whose candidate is verified by exact trial
division, so the result is certified either way.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

import numpy as np

from . import modp

# Schoolbook/Karatsuba crossover in coefficients; see scripts/bench_karatsuba.py
KARATSUBA_CUTOFF = 32

# Degree at which gcd_rational switches from the subresultant remainder
# sequence to modular images (subresultant coefficient growth is quadratic
# in the degree and becomes the bottleneck well before degree 100).
_GCD_MODULAR_DEGREE = 48


class NonMonicDivisorError(ValueError):
    """divrem_exact requires a monic divisor."""


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = tuple(int(c) for c in coeffs)
        n = len(cs)
        while n and cs[n - 1] == 0:
            n -= 1
        object.__setattr__(self, "coeffs", cs[:n])

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "IntPolynomial":
        if coeff == 0:
            return cls(())
        return cls((0,) * exponent + (coeff,))

    # -- basic queries -----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "IntPolynomial(0)"
        terms = []
        for e in range(self.degree, -1, -1):
            c = self[e]
            if c:
                terms.append(f"{c}*z^{e}" if e else str(c))
        body = " + ".join(terms[:6])
        if len(terms) > 6:
            body += f" + ... ({len(terms)} terms)"
        return f"IntPolynomial({body})"

    # -- ring operations ----------------------------------------------------
    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = list(self.coeffs)
        b = other.coeffs
        if len(b) > len(out):
            out.extend([0] * (len(b) - len(out)))
        for i, c in enumerate(b):
            out[i] -= c
        return IntPolynomial(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    # -- structure ----------------------------------------------------------
    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
            if g == 1:
                break
        return g

    def primitive_part(self) -> "IntPolynomial":
        """Content-free copy with positive leading coefficient."""
        if self.is_zero:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def is_even(self) -> bool:
        """True when only even exponents carry nonzero coefficients."""
        return all(c == 0 for c in self.coeffs[1::2])

    def even_part(self) -> "IntPolynomial":
        """g with g(z**2) == self; raises if an odd exponent is present."""
        if not self.is_even():
            raise ValueError("polynomial has odd-exponent terms")
        return IntPolynomial(self.coeffs[0::2])

    # -- evaluation -----------------------------------------------------------
    def evaluate_at_one(self) -> int:
        return sum(self.coeffs)

    def evaluate_int(self, x: int) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def evaluate_complex(self, z: complex) -> complex:
        v = 0j
        for c in reversed(self.coeffs):
            v = v * z + c
        return v


# ---------------------------------------------------------------------------
# Multiplication
# ---------------------------------------------------------------------------

def _school_mul(a: tuple, b: tuple) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _tuple_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _kara_mul(a, b) -> list:
    if not a or not b:
        return []
    if min(len(a), len(b)) <= KARATSUBA_CUTOFF:
        return _school_mul(a, b)
    h = max(len(a), len(b)) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _kara_mul(a0, b0)
    z2 = _kara_mul(a1, b1)
    z1 = _kara_mul(tuple(_tuple_add(a0, a1)), tuple(_tuple_add(b0, b1)))
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] += c
    for i, c in enumerate(z1):
        out[i + h] += c
    for i, c in enumerate(z0):
        out[i + h] -= c
    for i, c in enumerate(z2):
        out[i + h] -= c
    for i, c in enumerate(z2):
        out[i + 2 * h] += c
    return out


def multiply(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    if a.is_zero or b.is_zero:
        return IntPolynomial.zero()
    return IntPolynomial(_kara_mul(a.coeffs, b.coeffs))


def add(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    return a + b


def subtract(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    return a - b


def square(a: IntPolynomial) -> IntPolynomial:
    """a*a, with a symmetric schoolbook fast path for short inputs."""
    if a.is_zero:
        return a
    cs = a.coeffs
    if len(cs) > KARATSUBA_CUTOFF:
        return multiply(a, a)
    out = [0] * (2 * len(cs) - 1)
    for i, ci in enumerate(cs):
        if ci:
            out[2 * i] += ci * ci
            for j in range(i + 1, len(cs)):
                if cs[j]:
                    out[i + j] += 2 * ci * cs[j]
    return IntPolynomial(out)


# ---------------------------------------------------------------------------
# Division by monic polynomials
# ---------------------------------------------------------------------------

def divrem_exact(a: IntPolynomial, b: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Exact (quotient, remainder) for monic b: a = q*b + r, deg r < deg b."""
    if b.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if b.lead != 1:
        raise NonMonicDivisorError("divisor must be monic")
    db = b.degree
    if db == 0:
        return a, IntPolynomial.zero()
    if a.degree < db:
        return IntPolynomial.zero(), a
    rem = list(a.coeffs)
    bq = b.coeffs[:-1]
    q = [0] * (len(rem) - db)
    for i in range(len(q) - 1, -1, -1):
        c = rem[i + db]
        if c:
            q[i] = c
            for j, bj in enumerate(bq):
                if bj:
                    rem[i + j] -= c * bj
            rem[i + db] = 0
    return IntPolynomial(q), IntPolynomial(rem[:db])


def divides(b: IntPolynomial, a: IntPolynomial) -> bool:
    """True iff monic b divides a exactly."""
    return divrem_exact(a, b)[1].is_zero


def exact_quotient_or_none(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial | None:
    """Quotient when b divides a exactly over the integers, else None.

    b need not be monic; every elimination step checks integer
    divisibility of the leading coefficient.
    """
    if b.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero:
        return a
    db, lead = b.degree, b.lead
    if a.degree < db:
        return None
    rem = list(a.coeffs)
    q = [0] * (len(rem) - db)
    for i in range(len(q) - 1, -1, -1):
        c = rem[i + db]
        if c % lead:
            return None
        c //= lead
        if c:
            q[i] = c
            for j, bj in enumerate(b.coeffs[:-1]):
                if bj:
                    rem[i + j] -= c * bj
        rem[i + db] = 0
    if any(rem):
        return None
    return IntPolynomial(q)


# ---------------------------------------------------------------------------
# Cyclotomic polynomials
# ---------------------------------------------------------------------------

_cyclo_memo: dict[int, IntPolynomial] = {}
_cyclo_lock = threading.RLock()


def _small_divisors(n: int) -> list[int]:
    divs = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            divs.append(d)
            if d != n // d:
                divs.append(n // d)
    return sorted(divs)


def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by exact division of z**n - 1."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    with _cyclo_lock:
        got = _cyclo_memo.get(n)
        if got is not None:
            return got
        num = IntPolynomial((-1,) + (0,) * (n - 1) + (1,))
        for d in _small_divisors(n)[:-1]:
            num, rem = divrem_exact(num, cyclotomic(d))
            if not rem.is_zero:
                raise AssertionError(f"cyclotomic division left a remainder at n={n}")
        _cyclo_memo[n] = num
        return num


def remainder_mod_cyclotomic(a: IntPolynomial, M: int) -> IntPolynomial:
    """a mod Phi_M, exact; degree < phi(M).

    Exponents are first folded mod z**M - 1 (a multiple of Phi_M), which
    keeps the cost linear in deg a even for large inputs.
    """
    if M < 1:
        raise ValueError("M must be positive")
    folded = [0] * M
    for e, c in enumerate(a.coeffs):
        if c:
            folded[e % M] += c
    return divrem_exact(IntPolynomial(folded), cyclotomic(M))[1]


# ---------------------------------------------------------------------------
# Reversal, symmetry, serialization
# ---------------------------------------------------------------------------

def reciprocal(a: IntPolynomial) -> IntPolynomial:
    """z**deg(a) * a(1/z): the coefficient sequence reversed."""
    if a.is_zero:
        raise ValueError("reciprocal of the zero polynomial is undefined")
    return IntPolynomial(a.coeffs[::-1])


def substitute_negate(a: IntPolynomial) -> IntPolynomial:
    """a(-z), exact."""
    return IntPolynomial(tuple(-c if (k & 1) else c for k, c in enumerate(a.coeffs)))


def to_text(a: IntPolynomial) -> str:
    """Canonical text form: space-separated coefficients, ascending exponent."""
    if a.is_zero:
        return "0"
    return " ".join(str(c) for c in a.coeffs)


def from_text(s: str) -> IntPolynomial:
    parts = s.split()
    if not parts:
        raise ValueError("empty polynomial text")
    return IntPolynomial(int(x) for x in parts)


# ---------------------------------------------------------------------------
# Compensated real evaluation
# ---------------------------------------------------------------------------

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant


def _two_sum(x: float, y: float) -> tuple[float, float]:
    s = x + y
    bv = s - x
    return s, (x - (s - bv)) + (y - bv)


def _two_prod(x: float, y: float) -> tuple[float, float]:
    p = x * y
    cx = _SPLITTER * x
    xh = cx - (cx - x)
    xl = x - xh
    cy = _SPLITTER * y
    yh = cy - (cy - y)
    yl = y - yh
    err = ((xh * yh - p) + xh * yl + xl * yh) + xl * yl
    return p, err


def evaluate_real(a: IntPolynomial, x: float) -> float:
    """a(x) by compensated Horner summation (error ~ eps, not n*eps)."""
    v = 0.0
    comp = 0.0
    for c in reversed(a.coeffs):
        p, pe = _two_prod(v, x)
        s, se = _two_sum(p, float(c))
        v = s
        comp = comp * x + (pe + se)
    return v + comp


def evaluate_at_one(a: IntPolynomial) -> int:
    return a.evaluate_at_one()


# ---------------------------------------------------------------------------
# GCD over the rationals (primitive integer generator)
# ---------------------------------------------------------------------------

def _pseudo_remainder(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """lc(b)**(deg a - deg b + 1) * a  reduced mod b (integer arithmetic)."""
    db, lcb = b.degree, b.lead
    r = a
    k = a.degree - db + 1
    while not r.is_zero and r.degree >= db:
        shift = r.degree - db
        lead = r.lead
        r = r * lcb - multiply(IntPolynomial.monomial(shift, lead), b)
        k -= 1
    if k > 0:
        r = r * (lcb ** k)
    return r


def _exact_poly_int_divide(a: IntPolynomial, c: int) -> IntPolynomial:
    return IntPolynomial(tuple(x // c for x in a.coeffs))


def _subresultant_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Last nonzero element of the subresultant remainder sequence."""
    r0, r1 = a, b
    g, h = 1, 1
    while not r1.is_zero:
        d = r0.degree - r1.degree
        rem = _pseudo_remainder(r0, r1)
        r0, r1 = r1, _exact_poly_int_divide(rem, g * h ** d)
        g = r0.lead
        if d >= 1:
            h = g ** d // h ** (d - 1) if d > 1 else g
        # d == 0 leaves h unchanged
    return r0


_MODGCD_PRIMES: list[int] = []


def _is_prime_u64(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _word_primes():
    """Deterministic descending primes just below 2**31 for modular images."""
    if not _MODGCD_PRIMES:
        n = 2 ** 31 - 1
        while len(_MODGCD_PRIMES) < 64:
            if _is_prime_u64(n):
                _MODGCD_PRIMES.append(n)
            n -= 2
    return _MODGCD_PRIMES


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    inv = pow(m1 % m2, m2 - 2, m2) if _is_prime_u64(m2) else pow(m1 % m2, -1, m2)
    t = ((r2 - r1) * inv) % m2
    return r1 + m1 * t, m1 * m2


def _modular_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Brown-style modular gcd; candidate verified by exact trial division."""
    lead_gcd = math.gcd(a.lead, b.lead)
    best_deg = None
    images: list[tuple[int, np.ndarray]] = []
    prev_candidate = None
    for p in _word_primes():
        if a.lead % p == 0 or b.lead % p == 0:
            continue
        ga = modp.from_coeffs(a.coeffs, p)
        gb = modp.from_coeffs(b.coeffs, p)
        gp = modp.gcd(ga, gb, p)
        dg = len(gp) - 1
        if dg == 0:
            return IntPolynomial.one()  # coprime over Q, proven by one prime
        if best_deg is None or dg < best_deg:
            best_deg = dg
            images = [(p, gp)]
            prev_candidate = None
        elif dg == best_deg:
            images.append((p, gp))
        else:
            continue  # unlucky prime, discard
        # combine current images scaled to leading coefficient lead_gcd
        residues = [0] * (best_deg + 1)
        modulus = 1
        for q, img in images:
            scaled = (img.astype(object) * (lead_gcd % q)) % q
            if modulus == 1:
                residues = list(scaled)
                modulus = q
            else:
                residues = [
                    _crt_pair(int(r1), modulus, int(r2), q)[0]
                    for r1, r2 in zip(residues, scaled)
                ]
                modulus *= q
        half = modulus // 2
        lifted = [r - modulus if r > half else r for r in residues]
        candidate = IntPolynomial(lifted).primitive_part()
        if candidate == prev_candidate:
            qa = exact_quotient_or_none(a, candidate)
            if qa is not None and exact_quotient_or_none(b, candidate) is not None:
                return candidate
        prev_candidate = candidate
    raise ArithmeticError("modular gcd failed to stabilize")  # pragma: no cover


def gcd_rational(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive integer generator of gcd(a, b) over the rationals.

    Normalized to positive leading coefficient.  gcd(a, 0) is the
    primitive part of a.
    """
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero:
        return b.primitive_part()
    if b.is_zero:
        return a.primitive_part()
    pa, pb = a.primitive_part(), b.primitive_part()
    if pa.degree == 0 or pb.degree == 0:
        return IntPolynomial.one()
    if pa.degree < pb.degree:
        pa, pb = pb, pa
    if pa.degree <= _GCD_MODULAR_DEGREE:
        return _subresultant_gcd(pa, pb).primitive_part()
    return _modular_gcd(pa, pb)
