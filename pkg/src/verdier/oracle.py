"""Brute-force Hom in the homotopy category for bounded complexes.

Independent of :mod:`verdier.homotopy`: every entry of every component is an
unknown, A-linearity is imposed against each basis element explicitly, and
the chain-map and homotopy systems are solved with sympy's ``GF(p)`` matrices.
Only suitable for tiny complexes.
"""

from __future__ import annotations

import numpy as np
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from .complexes import Complex


def _dm(rows: list[list[int]], ncols: int, p: int) -> DomainMatrix:
    K = GF(p)
    if not rows:
        return DomainMatrix.zeros((0, ncols), K)
    return DomainMatrix([[K(int(v)) for v in r] for r in rows], (len(rows), ncols), K)


def _nullspace(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    if ncols == 0:
        return []
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    ns = _dm(rows, ncols, p).nullspace()
    return [[int(v) % p for v in r] for r in ns.to_Matrix().tolist()] if ns.shape[0] else []


def _rank(rows: list[list[int]], ncols: int, p: int) -> int:
    return _dm(rows, ncols, p).rank() if rows and ncols else 0


class _Unknowns:
    """Index bookkeeping for matrices ``X^n -> Y^{n+deg}``."""

    def __init__(self, X: Complex, Y: Complex, degrees: range, deg: int):
        self.X, self.Y, self.deg = X, Y, deg
        self.offset: dict[int, int] = {}
        total = 0
        for n in degrees:
            self.offset[n] = total
            total += Y.dim(n + deg) * X.dim(n)
        self.total = total

    def index(self, n: int, r: int, c: int) -> int:
        return self.offset[n] + r * self.X.dim(n) + c

    def block(self, vec: list[int], n: int) -> np.ndarray:
        if n not in self.offset:
            return np.zeros((self.Y.dim(n + self.deg), self.X.dim(n)), dtype=np.int64)
        r, c = self.Y.dim(n + self.deg), self.X.dim(n)
        s = self.offset[n]
        return np.array(vec[s:s + r * c], dtype=np.int64).reshape(r, c)


def _linearity_rows(U: _Unknowns, n: int) -> list[list[int]]:
    """``phi rho_X(b) - rho_Y(b) phi = 0`` for every basis element ``b``."""
    X, Y, deg = U.X, U.Y, U.deg
    A = X.algebra
    rx, ry = X.term(n).action, Y.term(n + deg).action
    r, c = Y.dim(n + deg), X.dim(n)
    rows = []
    for b in range(A.dim):
        for i in range(r):
            for j in range(c):
                row = [0] * U.total
                for k in range(c):
                    row[U.index(n, i, k)] += int(rx[b, k, j])
                for k in range(r):
                    row[U.index(n, k, j)] -= int(ry[b, i, k])
                rows.append(row)
    return rows


def _degrees(X: Complex, Y: Complex) -> range:
    return range(min(X.lo, Y.lo) - 1, max(X.hi, Y.hi) + 2)


def hom_k_dim_bruteforce(X: Complex, Y: Complex) -> int:
    """``dim Hom_K(X, Y)`` for bounded complexes by direct nullspace computation."""
    if X.left or X.right or Y.left or Y.right:
        raise ValueError("the oracle handles bounded complexes only")
    p = X.p
    degs = _degrees(X, Y)
    F = _Unknowns(X, Y, degs, 0)
    rows: list[list[int]] = []
    for n in degs:
        rows += _linearity_rows(F, n)
        # d_Y f^n - f^{n+1} d_X = 0
        if n + 1 in F.offset:
            dX, dY = X.diff(n), Y.diff(n)
            for i in range(Y.dim(n + 1)):
                for j in range(X.dim(n)):
                    row = [0] * F.total
                    for k in range(Y.dim(n)):
                        row[F.index(n, k, j)] += int(dY[i, k])
                    for k in range(X.dim(n + 1)):
                        row[F.index(n + 1, i, k)] -= int(dX[k, j])
                    rows.append(row)
    Z = _nullspace(rows, F.total, p)
    if not Z:
        return 0
    H = _Unknowns(X, Y, degs, -1)
    hrows: list[list[int]] = []
    for n in degs:
        hrows += _linearity_rows(H, n)
    hs = _nullspace(hrows, H.total, p)
    images = []
    for h in hs:
        vec = [0] * F.total
        for n in degs:
            # f^n = d_Y^{n-1} h^n + h^{n+1} d_X^n
            f = np.zeros((Y.dim(n), X.dim(n)), dtype=np.int64)
            if n in H.offset:
                f = f + Y.diff(n - 1) @ H.block(h, n)
            if n + 1 in H.offset:
                f = f + H.block(h, n + 1) @ X.diff(n)
            f = np.mod(f, p)
            s = F.offset[n]
            vec[s:s + f.size] = [int(v) for v in f.reshape(-1)]
        images.append(vec)
    return len(Z) - _rank(images, F.total, p)
