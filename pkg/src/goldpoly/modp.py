"""Dense polynomial arithmetic over F_p on numpy int64 arrays.

Coefficient arrays are little-endian (index = exponent), trimmed (empty
array = zero polynomial), all entries in [0, p).  Multiplication goes
through a real FFT whenever a rigorous rounding bound certifies exact
recovery, otherwise through an exact Kronecker-packed big-integer product.
The modulus contexts precompute a Newton inverse of the reversed modulus
so that repeated reductions cost two multiplications.
"""

from __future__ import annotations

import numpy as np

try:
    import gmpy2
except ImportError:  # pragma: no cover
    gmpy2 = None

_EPS = 2.0 ** -52


def trim(a: np.ndarray) -> np.ndarray:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def from_coeffs(coeffs, p: int) -> np.ndarray:
    """Reduce arbitrary-size integer coefficients mod p into an array."""
    return trim(np.array([c % p for c in coeffs], dtype=np.int64))


def degree(a: np.ndarray) -> int:
    return len(a) - 1


def add(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] = (out[: len(b)] + b) % p
    return trim(out)


def sub(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] = a
    out[: len(b)] = (out[: len(b)] - b) % p
    return trim(out)


def scale(a: np.ndarray, c: int, p: int) -> np.ndarray:
    c %= p
    if c == 0:
        return a[:0]
    return (a * c) % p


def _mul_kronecker(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product via limb-packed big-integer multiplication (any p).

    Limb width is sized so convolution entries cannot carry across limbs:
    each entry is at most min(len) * (p-1)^2.
    """
    need = min(len(a), len(b)) * (p - 1) ** 2
    width = max(8, (need.bit_length() + 7) // 8)
    if width == 8:
        ia = int.from_bytes(a.astype("<u8").tobytes(), "little")
        ib = int.from_bytes(b.astype("<u8").tobytes(), "little")
    else:
        ia = int.from_bytes(
            b"".join(int(x).to_bytes(width, "little") for x in a), "little")
        ib = int.from_bytes(
            b"".join(int(x).to_bytes(width, "little") for x in b), "little")
    if gmpy2 is not None:
        prod = int(gmpy2.mpz(ia) * gmpy2.mpz(ib))
    else:  # pragma: no cover
        prod = ia * ib
    n = len(a) + len(b) - 1
    raw = prod.to_bytes(width * (n + 1), "little")
    if width == 8:
        conv = np.frombuffer(raw, dtype="<u8")[:n] % np.uint64(p)
        return trim(conv.astype(np.int64))
    vals = [int.from_bytes(raw[i * width:(i + 1) * width], "little") % p
            for i in range(n)]
    return trim(np.array(vals, dtype=np.int64))


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    n = len(a) + len(b) - 1
    if min(len(a), len(b)) < 32:
        # products bounded by min_len * p^2: guard int64 overflow
        if min(len(a), len(b)) * (p - 1) ** 2 < 2 ** 62:
            return trim(np.convolve(a, b) % p)
        return _mul_kronecker(a, b, p)
    length = 1 << int(n - 1).bit_length()
    # rigorous-by-margin FFT rounding bound; fall back to exact packing
    bound = 8.0 * _EPS * length * (np.log2(length) + 4.0) * float(p - 1) ** 2
    if bound >= 0.25:
        return _mul_kronecker(a, b, p)
    fa = np.fft.rfft(a.astype(np.float64), length)
    fb = np.fft.rfft(b.astype(np.float64), length)
    conv = np.fft.irfft(fa * fb, length)[:n]
    return trim(np.rint(conv).astype(np.int64) % p)


def monic(a: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0:
        return a
    lead = int(a[-1])
    if lead == 1:
        return a
    return scale(a, pow(lead, p - 2, p), p)


def divmod_poly(a: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """(quotient, remainder) of a by nonzero b over F_p."""
    b = trim(b)
    if len(b) == 0:
        raise ZeroDivisionError("division by zero polynomial")
    a = trim(a.copy())
    db = len(b) - 1
    if len(a) - 1 < db:
        return a[:0], a
    inv = pow(int(b[-1]), p - 2, p)
    q = np.zeros(len(a) - db, dtype=np.int64)
    while len(a) >= len(b):
        c = (int(a[-1]) * inv) % p
        sh = len(a) - len(b)
        q[sh] = c
        if c:
            a[sh:] = (a[sh:] - c * b) % p
        a = trim(a[:-1])
    return trim(q), a


def gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Monic gcd by vectorized Euclid."""
    a = trim(a.copy())
    b = trim(b.copy())
    while len(b):
        if len(a) < len(b):
            a, b = b, a
        inv = pow(int(b[-1]), p - 2, p)
        while len(a) >= len(b):
            c = (int(a[-1]) * inv) % p
            if c:
                sh = len(a) - len(b)
                a[sh:] = (a[sh:] - c * b) % p
            a = trim(a[:-1])
        a, b = b, a
    return monic(a, p)


def derivative(a: np.ndarray, p: int) -> np.ndarray:
    if len(a) <= 1:
        return a[:0]
    k = np.arange(1, len(a), dtype=np.int64)
    return trim((a[1:] * k) % p)


class ModulusContext:
    """Reduction context mod a monic polynomial f over F_p.

    Precomputes rev(f)^{-1} mod z^(deg f - 1) by Newton iteration so that
    each reduction of a product (degree <= 2 deg f - 2) costs two
    multiplications.
    """

    def __init__(self, f: np.ndarray, p: int):
        f = trim(f)
        if len(f) == 0 or int(f[-1]) != 1:
            raise ValueError("modulus must be monic and nonzero")
        self.p = p
        self.f = f
        self.n = len(f) - 1
        m = max(self.n - 1, 1)
        self._inv = self._newton_inverse(f[::-1].copy(), m)

    def _newton_inverse(self, g: np.ndarray, m: int) -> np.ndarray:
        # g[0] == 1 since f is monic
        p = self.p
        inv = np.array([1], dtype=np.int64)
        t = 1
        while t < m:
            t = min(2 * t, m)
            prod = mul(inv, trim(g[:t]), p)[:t]
            two_minus = sub(np.array([2], dtype=np.int64), prod, p)
            inv = mul(inv, two_minus, p)[:t]
        return trim(inv[:m])

    def reduce(self, a: np.ndarray) -> np.ndarray:
        """a mod f for deg a <= 2 deg f - 2."""
        a = trim(a)
        if len(a) <= self.n:
            return a
        p = self.p
        dq = len(a) - 1 - self.n
        ra = a[::-1]
        tmp = mul(ra[: dq + 1], self._inv[: dq + 1], p)
        # pad to exactly dq+1 before reversing: low-order quotient
        # coefficients may be zero and must not be trimmed away
        q_rev = np.zeros(dq + 1, dtype=np.int64)
        take = min(len(tmp), dq + 1)
        q_rev[:take] = tmp[:take]
        q = trim(q_rev[::-1].copy())
        low = mul(q, self.f, p)
        out = np.zeros(self.n, dtype=np.int64)
        out[: min(self.n, len(a))] = a[: self.n]
        if len(low):
            take = min(self.n, len(low))
            out[:take] = (out[:take] - low[:take]) % p
        return trim(out)

    def mulmod(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(mul(a, b, self.p))

    def powmod(self, h: np.ndarray, e: int) -> np.ndarray:
        """h**e mod f by binary exponentiation."""
        result = np.array([1], dtype=np.int64)
        base = self.reduce(h)
        while e:
            if e & 1:
                result = self.mulmod(result, base)
            e >>= 1
            if e:
                base = self.mulmod(base, base)
        return result
