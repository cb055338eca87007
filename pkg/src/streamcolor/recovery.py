"""Deterministic k-sparse recovery of edge sets from signed streams.

Edges are encoded as integers 1..n(n-1)/2 (row-major upper triangle).
A sketch of budget k keeps the 2k power sums

    S_j = sum over updates of sign * x^j   (mod q),  j = 1..2k,

over a prime field with q above the square of the universe size.  If at
most k edges survive (each with net multiplicity one), the sequence
S_1..S_2k obeys a linear recurrence of order t = #survivors whose
connection polynomial has the survivor encodings as roots.  Decoding
finds that recurrence (Berlekamp-Massey), extracts the roots, and then
re-verifies every syndrome; any mismatch raises RecoveryFailedError
rather than returning an unverified answer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OutOfRangeError, RecoveryFailedError, StreamFormatError
from .graph import Edge, normalize_edge
from .hashfam import smallest_prime_above


def edge_universe(n: int) -> int:
    return n * (n - 1) // 2


def edge_encode(u: int, v: int, n: int) -> int:
    """Position of (u, v) in the row-major upper triangle, 1-based."""
    u, v = normalize_edge(u, v)
    if not 1 <= u <= n and v <= n:
        raise OutOfRangeError(f"edge ({u}, {v}) outside universe n={n}")
    if v > n:
        raise OutOfRangeError(f"edge ({u}, {v}) outside universe n={n}")
    return (u - 1) * (2 * n - u) // 2 + (v - u)


def edge_decode(x: int, n: int) -> Edge:
    """Inverse of edge_encode."""
    if not 1 <= x <= edge_universe(n):
        raise OutOfRangeError(f"encoding {x} outside [1, {edge_universe(n)}]")
    lo, hi = 1, n - 1
    # largest u with offset(u) < x, offset(u) = (u-1)(2n-u)/2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if (mid - 1) * (2 * n - mid) // 2 < x:
            lo = mid
        else:
            hi = mid - 1
    u = lo
    v = x - (u - 1) * (2 * n - u) // 2 + u
    return (u, v)


def field_modulus(n: int) -> int:
    """Smallest prime above the square of the edge-universe size."""
    u = edge_universe(n)
    return smallest_prime_above(max(1, u * u))


class _Fq:
    """Vectorized arithmetic mod q with an int64-safe split multiply.

    For q below 2^31 a plain product fits in int64.  Up to 41 bits the
    multiplier is split as b = hi * 2^shift + lo so both partial products
    stay under 2^62.  Beyond that, arrays fall back to Python integers.
    """

    def __init__(self, q: int):
        self.q = q
        bits = q.bit_length()
        if 2 * bits <= 62:
            self.shift = 0
            self.dtype: type | np.dtype = np.int64
        elif bits <= 41:
            self.shift = 2 * bits - 62
            self.dtype = np.int64
        else:
            self.shift = -1
            self.dtype = object

    def asarray(self, values) -> np.ndarray:
        return np.array(values, dtype=self.dtype)

    def zeros(self, size: int) -> np.ndarray:
        if self.dtype is object:
            return np.array([0] * size, dtype=object)
        return np.zeros(size, dtype=np.int64)

    def mul(self, a, b):
        q = self.q
        if self.shift <= 0:
            return a * b % q
        mask = (1 << self.shift) - 1
        hi = b >> self.shift
        lo = b & mask
        return ((a * hi % q << self.shift) + a * lo) % q

    def sumv(self, values) -> int:
        if self.dtype is object:
            return int(sum(values)) % self.q
        total = 0
        q = self.q
        step = 1 << 20  # chunked so partial sums stay inside int64
        for lo in range(0, values.size, step):
            total = (total + int(values[lo : lo + step].sum())) % q
        return total


def _berlekamp_massey(seq: np.ndarray, fq: _Fq) -> list[int]:
    """Shortest connection polynomial [1, c1..cL] with
    seq[i] + c1*seq[i-1] + ... + cL*seq[i-L] = 0 for all valid i."""
    q = fq.q
    c = fq.zeros(len(seq) + 1)
    b = fq.zeros(len(seq) + 1)
    c[0] = 1
    b[0] = 1
    L, m, bb = 0, 1, 1
    for i in range(len(seq)):
        d = int(seq[i])
        if L > 0:
            d = (d + fq.sumv(fq.mul(c[1 : L + 1], seq[i - L : i][::-1]))) % q
        if d == 0:
            m += 1
            continue
        coef = d * pow(bb, -1, q) % q
        # full-width update: b is zero beyond its degree, and the slice
        # stays shape-consistent even when the shift runs off the end
        if 2 * L <= i:
            t = c.copy()
            c[m:] = (c[m:] - fq.mul(coef, b[: len(c) - m])) % q
            L, b, bb, m = i + 1 - L, t, d, 1
        else:
            c[m:] = (c[m:] - fq.mul(coef, b[: len(c) - m])) % q
            m += 1
    return [int(x) for x in c[: L + 1]]


@dataclass
class SparseRecoverySketch:
    """Mergeable linear sketch recovering up to k surviving edges."""

    n: int
    k: int
    q: int
    syndromes: np.ndarray

    @classmethod
    def empty(cls, n: int, k: int) -> "SparseRecoverySketch":
        if k < 1:
            raise ValueError("sketch budget k must be at least 1")
        q = field_modulus(n)
        fq = _Fq(q)
        return cls(n, k, q, fq.zeros(2 * k))

    @property
    def size_field_elements(self) -> int:
        return 2 * self.k

    def _fq(self) -> _Fq:
        return _Fq(self.q)

    def update(self, sign: int, u: int, v: int) -> None:
        self.update_batch(
            np.array([sign], dtype=np.int64),
            np.array([u], dtype=np.int64),
            np.array([v], dtype=np.int64),
        )

    def update_batch(self, signs, us, vs) -> None:
        signs = np.asarray(signs, dtype=np.int64)
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        if us.size == 0:
            return
        lo = np.minimum(us, vs)
        hi = np.maximum(us, vs)
        enc = (lo - 1) * (2 * self.n - lo) // 2 + (hi - lo)
        fq = self._fq()
        x = fq.asarray(enc)
        term = fq.asarray(np.where(signs == 1, 1, self.q - 1))
        pw = x.copy()
        syn = self.syndromes
        for j in range(2 * self.k):
            syn[j] = (int(syn[j]) + fq.sumv(fq.mul(term, pw))) % self.q
            if j + 1 < 2 * self.k:
                pw = fq.mul(pw, x)

    def merge(self, other: "SparseRecoverySketch") -> "SparseRecoverySketch":
        if (self.n, self.k, self.q) != (other.n, other.k, other.q):
            raise ValueError("sketch shape mismatch")
        return SparseRecoverySketch(
            self.n, self.k, self.q, (self.syndromes + other.syndromes) % self.q
        )

    def decode(self, candidates=None) -> list[Edge]:
        """Recover the surviving edge set, sorted by encoding.

        `candidates` optionally restricts root extraction to the given
        vertex pairs (the caller's superset of possible survivors);
        default is the full universe.  Every returned set is re-verified
        against all 2k syndromes; RecoveryFailedError otherwise.
        """
        fq = self._fq()
        if all(int(s) == 0 for s in self.syndromes):
            return []
        conn = _berlekamp_massey(self.syndromes, fq)
        deg = len(conn) - 1
        if deg == 0:
            raise RecoveryFailedError("nonzero syndromes with empty recurrence")

        if candidates is None:
            cand_enc = np.arange(1, edge_universe(self.n) + 1, dtype=np.int64)
        else:
            seen = sorted(
                {edge_encode(u, v, self.n) for u, v in candidates}
            )
            cand_enc = np.asarray(seen, dtype=np.int64)
        if cand_enc.size:
            x = fq.asarray(cand_enc)
            # reversed connection polynomial has survivor encodings as roots
            acc = fq.asarray(np.ones(cand_enc.size, dtype=np.int64))
            for coef in conn[1:]:
                acc = (fq.mul(acc, x) + coef) % self.q
            roots = cand_enc[np.asarray(acc == 0)]
        else:
            roots = np.array([], dtype=np.int64)
        if roots.size != deg:
            raise RecoveryFailedError(
                f"recurrence of order {deg} but {roots.size} roots found"
            )

        # mandatory verification: power sums of the decoded set must
        # reproduce every stored syndrome
        x = fq.asarray(roots)
        pw = x.copy()
        for j in range(2 * self.k):
            if fq.sumv(pw) != int(self.syndromes[j]):
                raise RecoveryFailedError(f"syndrome {j + 1} mismatch after decode")
            if j + 1 < 2 * self.k:
                pw = fq.mul(pw, x)
        return [edge_decode(int(r), self.n) for r in sorted(roots.tolist())]

    def serialize(self) -> str:
        """Decimal text `k q S_1 ... S_2k`."""
        syn = " ".join(str(int(s)) for s in self.syndromes)
        return f"{self.k} {self.q} {syn}"


def deserialize_sketch(text: str, n: int) -> SparseRecoverySketch:
    parts = text.split()
    if len(parts) < 2:
        raise StreamFormatError("expected `k q S_1 ... S_2k`")
    try:
        k, q = int(parts[0]), int(parts[1])
        syn = [int(x) for x in parts[2:]]
    except ValueError as exc:
        raise StreamFormatError("cannot parse sketch") from exc
    if k < 1 or len(syn) != 2 * k:
        raise StreamFormatError(f"expected {2 * max(k, 1)} syndromes")
    if q != field_modulus(n):
        raise StreamFormatError(f"modulus {q} does not match universe for n={n}")
    if any(not 0 <= s < q for s in syn):
        raise StreamFormatError("syndrome outside field")
    return SparseRecoverySketch(n, k, q, _Fq(q).asarray(syn))


def sketch_update(sketch: SparseRecoverySketch, sign: int, u: int, v: int):
    """Pure-style single update: returns a new sketch."""
    out = SparseRecoverySketch(sketch.n, sketch.k, sketch.q, sketch.syndromes.copy())
    out.update(sign, u, v)
    return out
