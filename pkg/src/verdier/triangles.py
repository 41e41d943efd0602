"""Truncation triangles with explicit homotopy-equivalence certificates.

A :class:`TriangleData` records ``U --u--> X --v--> V --w--> U[1]`` together
with maps ``F : cone(u) -> V`` and ``G : V -> cone(u)`` such that ``F G = id``
and ``id - G F = d H + H d``.  All three constructions below write these maps
down directly; nothing is searched for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg as la
from .complexes import (Complex, ComplexError, GradedMap, brutal_ge, brutal_ge_inclusion,
                        brutal_le, common_frame, compose, cone, cone_inclusion,
                        cone_projection, graded_map, identity_map, intelligent_ge,
                        intelligent_le, intelligent_le_inclusion, is_chain_map, is_homotopy,
                        maps_equal, shift)


@dataclass
class TriangleData:
    U: Complex
    X: Complex
    V: Complex
    u: GradedMap                 # U -> X
    v: GradedMap                 # X -> V
    w: GradedMap                 # V -> U[1]
    C: Complex                   # cone(u)
    F: GradedMap                 # C -> V
    G: GradedMap                 # V -> C
    H: GradedMap                 # degree -1 on C
    kind: str = ""
    n: Optional[int] = None
    failures: list[str] = field(default_factory=list)

    def verify(self) -> bool:
        """Check every chain map, ``F G = id``, the homotopy and the factorisations."""
        bad = []
        for name in ("u", "v", "w", "F", "G"):
            ok, deg = is_chain_map(getattr(self, name))
            if not ok:
                bad.append(f"{name} fails to commute in degree {deg}")
        if not maps_equal(compose(self.F, self.G), identity_map(self.V)):
            bad.append("F G != id")
        if not is_homotopy(identity_map(self.C), compose(self.G, self.F), self.H):
            bad.append("id - G F != dH + Hd")
        if not maps_equal(compose(self.F, cone_inclusion(self.u, self.C)), self.v):
            bad.append("v != F o (X -> cone)")
        self.failures = bad
        return not bad


def _blocks(rows: list[list[np.ndarray]]) -> np.ndarray:
    return np.vstack([np.hstack(r) for r in rows])


def stupid_triangle(X: Complex, n: int) -> TriangleData:
    """``tau_{>=n} X -> X -> tau_{<=n-1} X -> (tau_{>=n} X)[1]``."""
    p = X.p
    U, V = brutal_ge(X, n), brutal_le(X, n - 1)
    u = brutal_ge_inclusion(X, n, U)
    C = cone(u, check=False)
    fr = common_frame([C, V, X, U], margin=0)

    def F(k):
        if k > n - 1:
            return None
        return np.hstack([la.zeros(X.dim(k), U.dim(k + 1)), la.identity(X.dim(k))])

    def G(k):
        if k > n - 1:
            return None
        top = np.mod(-X.diff(k), p) if k == n - 1 else la.zeros(U.dim(k + 1), X.dim(k))
        return np.vstack([top, la.identity(X.dim(k))])

    def H(k):
        # (a, b) -> (b, 0) once X^k lies in U
        if k < n:
            return None
        return _blocks([[la.zeros(U.dim(k), U.dim(k + 1)), la.identity(X.dim(k))],
                        [la.zeros(X.dim(k - 1), U.dim(k + 1)), la.zeros(X.dim(k - 1), X.dim(k))]])

    Fm = graded_map(C, V, F, frame=fr)
    Gm = graded_map(V, C, G, frame=fr)
    Hm = graded_map(C, C, H, degree=-1, frame=fr)
    v = graded_map(X, V, lambda k: la.identity(X.dim(k)) if k <= n - 1 else None, frame=fr)
    w = compose(cone_projection(u, C), Gm)
    return TriangleData(U, X, V, u, v, w, C, Fm, Gm, Hm, "brutal", n)


def intelligent_triangle(X: Complex, n: int) -> TriangleData:
    """``sigma_{<=n} X -> X -> sigma_{>=n+1} X -> (sigma_{<=n} X)[1]``.

    The equivalence ``cone(u) -> sigma_{>=n+1} X`` is ``(1  d^n)`` in degree
    ``n`` and the projection onto ``X^k`` above; its inverse is the inclusion
    of ``Im d^n`` in degree ``n`` and of ``X^k`` above.
    """
    p = X.p
    S = intelligent_le(X, n)
    V = intelligent_ge(X, n + 1)
    u = intelligent_le_inclusion(X, n, S)
    C = cone(u, check=False)
    fr = common_frame([C, V, X, S], margin=0)
    B = la.image_basis(X.diff(n), p)
    r = B.shape[1]
    dn = la.solve(B, X.diff(n), p) if r else la.zeros(0, X.dim(n))

    def F(k):
        if k < n:
            return None
        if k == n:
            return np.hstack([la.identity(r), dn])
        return np.hstack([la.zeros(X.dim(k), S.dim(k + 1)), la.identity(X.dim(k))])

    def G(k):
        if k < n:
            return None
        if k == n:
            return np.vstack([la.identity(r), la.zeros(X.dim(n), r)])
        return np.vstack([la.zeros(S.dim(k + 1), X.dim(k)), la.identity(X.dim(k))])

    def H(k):
        if k > n:
            return None
        return _blocks([[la.zeros(S.dim(k), S.dim(k + 1)), la.identity(X.dim(k))],
                        [la.zeros(X.dim(k - 1), S.dim(k + 1)), la.zeros(X.dim(k - 1), X.dim(k))]])

    Fm = graded_map(C, V, F, frame=fr)
    Gm = graded_map(V, C, G, frame=fr)
    Hm = graded_map(C, C, H, degree=-1, frame=fr)

    def v(k):
        if k < n:
            return None
        if k == n:
            return dn
        return la.identity(X.dim(k))
    vm = graded_map(X, V, v, frame=fr)
    w = compose(cone_projection(u, C), Gm)
    return TriangleData(S, X, V, u, vm, w, C, Fm, Gm, Hm, "intelligent", n)


def fiber(q: GradedMap) -> Complex:
    """``cone(q)[-1]``: terms ``X^k (+) Y^{k-1}``, ``d(a, b) = (d a, -q a - d b)``."""
    return shift(cone(q, check=False), -1)


def compose_triangles(outer: TriangleData, inner: TriangleData) -> TriangleData:
    """Refine ``outer`` by a triangle ``U2 -> V1 -> V2`` on its third vertex.

    The result is ``F -> X -> V2`` with ``F`` the fiber of ``X -> V1 -> V2``;
    ``F`` is an extension of ``U1`` by ``U2``.
    """
    if inner.X is not outer.V:
        raise ComplexError("inner triangle must decompose the third vertex of the outer one")
    p = outer.X.p
    X, V2 = outer.X, inner.V
    q = compose(inner.v, outer.v)
    Fb = fiber(q)
    fr = common_frame([Fb, X, V2], margin=0)
    proj = graded_map(Fb, X, lambda k: np.hstack([la.identity(X.dim(k)),
                                                    la.zeros(X.dim(k), V2.dim(k - 1))]),
                      frame=fr)
    C = cone(proj, check=False)
    fr = common_frame([C, Fb, X, V2, q], margin=0)

    def phi(k):
        # (a, b, c) in X^{k+1} (+) V2^k (+) X^k  ->  -b + q c
        return np.hstack([la.zeros(V2.dim(k), X.dim(k + 1)), np.mod(-la.identity(V2.dim(k)), p),
                          q.component(k)])

    def psi(k):
        return np.vstack([la.zeros(X.dim(k + 1), V2.dim(k)), np.mod(-la.identity(V2.dim(k)), p),
                          la.zeros(X.dim(k), V2.dim(k))])

    def h(k):
        # (a, b, c) -> (c, 0, 0)
        out = la.zeros(C.dim(k - 1), C.dim(k))
        out[: X.dim(k), X.dim(k + 1) + V2.dim(k):] = la.identity(X.dim(k))
        return out

    Fm = graded_map(C, V2, phi, frame=fr)
    Gm = graded_map(V2, C, psi, frame=fr)
    Hm = graded_map(C, C, h, degree=-1, frame=fr)
    w = compose(cone_projection(proj, C), Gm)
    return TriangleData(Fb, X, V2, proj, q, w, C, Fm, Gm, Hm, "composite", None)
