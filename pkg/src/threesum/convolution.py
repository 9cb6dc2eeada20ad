"""Exact multiplicity vectors of (A + B) mod m.

Queries subtract stored false-positive counts from these vectors, so a
single off-by-one here flips answers rather than degrading them.  The
transform path therefore runs over word-sized NTT-friendly primes and is
exact by construction; no floating-point rounding is involved anywhere.
Tiny moduli use direct coefficient convolution instead, which doubles as an
internal cross-check path for the transform.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import integer_set
from .errors import DomainError, ResourceError

DIRECT_LIMIT = 64

# p = k * 2^e + 1 with primitive root g, as (p, g, e); transforms up to 2^e.
# All arithmetic stays below 2^63: operands are reduced below p < 2^31.
_NTT_PRIMES = ((2013265921, 31, 27), (469762049, 3, 26))


@dataclass(frozen=True)
class MultiplicityVector:
    """counts[i] = number of pairs (a, b) with (a + b) mod modulus == i."""

    modulus: int
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@lru_cache(maxsize=64)
def _bit_reverse(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    rev.setflags(write=False)
    return rev


def _root_powers(w: int, count: int, p: int) -> np.ndarray:
    ws = np.ones(1, dtype=np.int64)
    while ws.size < count:
        step = pow(int(w), int(ws.size), p)
        ws = np.concatenate((ws, (ws * step) % p))
    return ws[:count]


def _ntt(vec: np.ndarray, p: int, g: int, invert: bool = False) -> np.ndarray:
    n = vec.size
    a = vec[_bit_reverse(n)]
    length = 2
    while length <= n:
        half = length >> 1
        w = pow(g, (p - 1) // length, p)
        if invert:
            w = pow(w, p - 2, p)
        ws = _root_powers(w, half, p)
        blocks = a.reshape(-1, length)
        lo = blocks[:, :half].copy()
        hi = (blocks[:, half:] * ws) % p
        blocks[:, :half] = (lo + hi) % p
        blocks[:, half:] = (lo - hi) % p
        length <<= 1
    if invert:
        a = (a * pow(n, p - 2, p)) % p
    return a


def _pad(vec: np.ndarray, length: int) -> np.ndarray:
    out = np.zeros(length, dtype=np.int64)
    out[: vec.size] = vec
    return out


def _ntt_multiply(ca: np.ndarray, cb: np.ndarray, coeff_bound: int) -> np.ndarray:
    """Exact product of two polynomials with nonnegative integer coefficients.

    ``coeff_bound`` must upper-bound every output coefficient; it selects a
    single-modulus or CRT reconstruction accordingly.
    """
    out_len = ca.size + cb.size - 1
    need = 1 if out_len <= 1 else 1 << (out_len - 1).bit_length()
    use = [_NTT_PRIMES[0]]
    if coeff_bound >= _NTT_PRIMES[0][0]:
        use.append(_NTT_PRIMES[1])
        if coeff_bound >= _NTT_PRIMES[0][0] * _NTT_PRIMES[1][0]:
            raise ResourceError(f"coefficient bound {coeff_bound} exceeds CRT capacity")
    residues = []
    for p, g, two_adicity in use:
        if need > (1 << two_adicity):
            raise ResourceError(f"transform length {need} exceeds 2^{two_adicity} for modulus {p}")
        fa = _ntt(_pad(ca, need) % p, p, g)
        fb = _ntt(_pad(cb, need) % p, p, g)
        residues.append(_ntt((fa * fb) % p, p, g, invert=True)[:out_len])
    if len(use) == 1:
        return residues[0]
    p0, p1 = use[0][0], use[1][0]
    inv_p0 = pow(p0, p1 - 2, p1)
    t = ((residues[1] - residues[0]) * inv_p0) % p1
    return residues[0] + p0 * t


def modular_sumset_multiplicities(a, b, m) -> MultiplicityVector:
    """Exact counts of (a + b) mod m over all pairs of two integer sets.

    Inputs are canonicalized with :func:`integer_set`; the total of the
    returned counts is always |A| * |B|.
    """
    m = int(m)
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    a = integer_set(a)
    b = integer_set(b)
    if a.size == 0 or b.size == 0:
        counts = np.zeros(m, dtype=np.int64)
    else:
        ca = np.bincount(a % m, minlength=m)
        cb = np.bincount(b % m, minlength=m)
        if m < DIRECT_LIMIT:
            prod = np.convolve(ca, cb)
        else:
            prod = _ntt_multiply(ca, cb, coeff_bound=int(a.size) * int(b.size))
        counts = prod[:m].copy()
        if prod.size > m:
            # wrap x^(m+i) onto x^i
            counts[: prod.size - m] += prod[m:]
    counts.setflags(write=False)
    return MultiplicityVector(modulus=m, counts=counts)
