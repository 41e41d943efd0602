"""Dense exact linear algebra over a prime field F_p.

Matrices are ``numpy`` int64 arrays with entries reduced into ``[0, p)``.
The prime is a process-wide setting (see :func:`set_prime`); every function
also accepts an explicit ``p``.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator, Optional

import numpy as np

DEFAULT_PRIME = 101
_PRIME = DEFAULT_PRIME


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def set_prime(p: int) -> None:
    global _PRIME
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    # products of two residues must fit in int64
    if p > 3_000_000_000:
        raise ValueError("prime too large for machine-word arithmetic")
    _PRIME = p


def get_prime() -> int:
    return _PRIME


@contextmanager
def prime_field(p: int) -> Iterator[int]:
    """Temporarily switch the working prime."""
    old = _PRIME
    set_prime(p)
    try:
        yield p
    finally:
        set_prime(old)


def _p(p: Optional[int]) -> int:
    return _PRIME if p is None else p


def mat(rows, p: Optional[int] = None, shape: Optional[tuple[int, int]] = None) -> np.ndarray:
    """Build a reduced int64 matrix from nested lists (or an array)."""
    a = np.array(rows, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    elif a.ndim == 1:
        a = a.reshape(1, -1) if a.size else np.zeros((0, 0), dtype=np.int64)
    return np.mod(a, _p(p))


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mul(a: np.ndarray, b: np.ndarray, p: Optional[int] = None) -> np.ndarray:
    p = _p(p)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.size == 0 or b.size == 0:
        return zeros(a.shape[0], b.shape[1])
    if p < 3_000_000 and a.shape[1] * (p - 1) ** 2 < 2**62:
        return (a @ b) % p
    # blockwise accumulation keeps intermediate sums below 2**63
    out = zeros(a.shape[0], b.shape[1])
    step = max(1, (2**62) // ((p - 1) ** 2))
    for s in range(0, a.shape[1], step):
        out = (out + (a[:, s:s + step] @ b[s:s + step, :]) % p) % p
    return out


def mul_chain(*ms: np.ndarray, p: Optional[int] = None) -> np.ndarray:
    out = ms[0]
    for m in ms[1:]:
        out = mul(out, m, p)
    return out


def inv_scalar(a: int, p: Optional[int] = None) -> int:
    p = _p(p)
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(int(a), p - 2, p)


def rref(m: np.ndarray, p: Optional[int] = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns (leftmost-nonzero pivoting)."""
    p = _p(p)
    a = np.mod(np.array(m, dtype=np.int64), p)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * inv_scalar(int(a[r, c]), p)) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, p: Optional[int] = None) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def kernel_basis(m: np.ndarray, p: Optional[int] = None) -> np.ndarray:
    """Columns spanning the right nullspace of ``m``."""
    p = _p(p)
    rows, cols = m.shape
    if rows == 0:
        return identity(cols)
    r, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    k = zeros(cols, len(free))
    for j, f in enumerate(free):
        k[f, j] = 1
        for i, pc in enumerate(pivots):
            k[pc, j] = (-r[i, f]) % p
    return k


def image_basis(m: np.ndarray, p: Optional[int] = None) -> np.ndarray:
    """The pivot columns of ``m``: a basis of its column space."""
    if m.size == 0:
        return zeros(m.shape[0], 0)
    _, pivots = rref(m, p)
    return np.mod(m[:, pivots], _p(p)).astype(np.int64)


def row_basis(m: np.ndarray, p: Optional[int] = None) -> np.ndarray:
    """Nonzero rows of the rref: a canonical basis of the row space."""
    if m.size == 0:
        return zeros(0, m.shape[1])
    r, pivots = rref(m, p)
    return r[: len(pivots)]


def solve(a: np.ndarray, b: np.ndarray, p: Optional[int] = None) -> Optional[np.ndarray]:
    """Some ``x`` with ``a @ x == b``, or ``None`` when ``b`` is not in the column space."""
    p = _p(p)
    if a.shape[0] != b.shape[0]:
        raise ValueError("row count mismatch")
    n = a.shape[1]
    if b.shape[1] == 0:
        return zeros(n, 0)
    if a.shape[0] == 0:
        return zeros(n, b.shape[1])
    r, pivots = rref(np.hstack([a, b]), p)
    if any(pc >= n for pc in pivots):
        return None
    x = zeros(n, b.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n:]
    return x


def inverse(a: np.ndarray, p: Optional[int] = None) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("not square")
    x = solve(a, identity(n), p)
    if x is None or rank(a, p) != n:
        raise ZeroDivisionError("matrix is singular")
    return x


def complement_basis(sub: np.ndarray, n: int, p: Optional[int] = None) -> np.ndarray:
    """Standard basis vectors completing the columns of ``sub`` to a basis of F_p^n."""
    chosen = []
    cur = sub
    base = rank(sub, p) if sub.size else 0
    for i in range(n):
        e = zeros(n, 1)
        e[i, 0] = 1
        trial = np.hstack([cur, e]) if cur.size else e
        if rank(trial, p) > base:
            cur = trial
            base += 1
            chosen.append(i)
    out = zeros(n, len(chosen))
    for j, i in enumerate(chosen):
        out[i, j] = 1
    return out


def in_span(basis: np.ndarray, v: np.ndarray, p: Optional[int] = None) -> bool:
    if basis.size == 0:
        return not np.any(np.mod(v, _p(p)))
    return solve(basis, v, p) is not None


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def random_matrix(rng: np.random.Generator, r: int, c: int, p: Optional[int] = None) -> np.ndarray:
    return rng.integers(0, _p(p), size=(r, c), dtype=np.int64)
