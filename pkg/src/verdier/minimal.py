"""Minimal models of complexes of projectives.

Every complex of projectives splits as ``C (+) E`` where ``E`` is a sum of
two-term pieces ``Q --d--> Q'`` with ``d`` an isomorphism (so ``E`` is
contractible) and ``C`` has differentials with entries in the radical.
The splitting is chosen degree by degree:

* ``Q_k`` is generated by elements of ``X^k`` whose images under ``d`` stay
  independent modulo ``J X^{k+1}``; ``Q'_k = A d(Q_k)`` is then a summand;
* ``C^k = ker r'_{k-1}  ∩  ker(r'_k d^k)`` for retractions ``r'_k`` onto ``Q'_k``.

On tails the choices are replicated block-diagonally, so the model is again
eventually periodic with the same tails.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from . import linalg as la
from .algebra import (Module, UnsupportedAlgebraError, generated_submodule,
                      indecomposable_projective, is_projective, radical_basis, submodule)
from .complexes import (Complex, ComplexError, Frame, GradedMap, common_frame, graded_map,
                        replicate)


@dataclass
class _Split:
    gens: np.ndarray        # columns of X^k: generators of Q_k
    Qprime: np.ndarray      # basis of Q'_k inside X^{k+1}
    retract: np.ndarray     # r'_k : X^{k+1} -> Q'_k in Q'_k coordinates
    Q: np.ndarray           # basis of Q_k inside X^k


def _generator_basis(N: Module, gens: list[tuple[int, np.ndarray]]) -> np.ndarray:
    """Columns ``b_j g`` over a basis of ``A e_t`` for each generator ``(t, g)``."""
    A, p = N.algebra, N.algebra.p
    blocks = []
    for t, g in gens:
        _, basis = indecomposable_projective(A, t)
        orbit = np.stack([la.mul(N.action[j], g.reshape(-1, 1), p)[:, 0] for j in range(A.dim)],
                         axis=1)
        blocks.append(la.mul(orbit, basis, p))
    return np.hstack(blocks) if blocks else la.zeros(N.dim, 0)


def _cancellable(X: Complex, k: int) -> _Split:
    """Greedy maximal choice of generators whose boundaries split off.

    The boundaries are completed to a full set of top generators of the
    projective ``X^{k+1}``; the resulting basis gives the retraction onto
    ``Q'_k`` as a coordinate projection.
    """
    A, p = X.algebra, X.p
    M, N, d = X.term(k), X.term(k + 1), X.diff(k)
    JN = radical_basis(N)
    cur, r = JN, (la.rank(JN, p) if JN.size else 0)
    chosen, images = [], []
    for t, e in enumerate(A.idempotents):
        E = la.image_basis(M.act(e), p)
        for x in E.T:
            dx = la.mul(d, x.reshape(-1, 1), p)
            trial = np.hstack([cur, dx]) if cur.size else dx
            if la.rank(trial, p) > r:
                cur, r = trial, r + 1
                chosen.append(x)
                images.append((t, dx[:, 0]))
    rest = []
    for t, e in enumerate(A.idempotents):
        E = la.image_basis(N.act(e), p)
        for y in E.T:
            col = y.reshape(-1, 1)
            trial = np.hstack([cur, col]) if cur.size else col
            if la.rank(trial, p) > r:
                cur, r = trial, r + 1
                rest.append((t, y))
    gens = np.array(chosen, dtype=np.int64).T if chosen else la.zeros(M.dim, 0)
    Q = generated_submodule(M, gens)
    Qp = _generator_basis(N, images)
    full = np.hstack([Qp, _generator_basis(N, rest)])
    if full.shape[1] != N.dim or la.rank(full, p) != N.dim:
        raise UnsupportedAlgebraError(f"term in degree {k + 1} is not projective")
    ret = la.inverse(full, p)[: Qp.shape[1]]
    return _Split(gens, Qp, ret, Q)


def _replicated(s: _Split, r: int) -> _Split:
    return _Split(replicate(s.gens, r), replicate(s.Qprime, r), replicate(s.retract, r),
                  replicate(s.Q, r))


@dataclass
class MinimalModel:
    """``C`` with ``pi o iota = id_C`` and ``id_X - iota o pi = d h + h d``."""
    complex: Complex
    inclusion: GradedMap      # C -> X
    projection: GradedMap     # X -> C
    homotopy: GradedMap       # degree -1 on X
    source: Complex

    @property
    def cancelled(self) -> int:
        """Dimension removed over the source window."""
        X, C = self.source, self.complex
        return sum(X.dim(n) - C.dim(n) for n in range(X.lo, X.hi + 1))


def is_minimal(X: Complex) -> bool:
    """All differentials land in the radical."""
    p = X.p
    for n in X.check_range():
        d = X.diff(n)
        if not d.size or not d.any():
            continue
        J = radical_basis(X.term(n + 1))
        for col in d.T:
            if col.any() and not la.in_span(J, col.reshape(-1, 1), p):
                return False
    return True


def minimal_model(X: Complex, check_projective: bool = True) -> MinimalModel:
    """Split off the contractible part of a complex of projectives."""
    p, A = X.p, X.algebra
    if check_projective:
        for n in X.check_range():
            if not is_projective(X.term(n)):
                raise ComplexError(f"term in degree {n} is not projective")
    fr = common_frame([X], margin=2)
    a, b = fr.a, fr.b
    P = fr.left.period if fr.left else 0
    Rl = fr.left.growth if fr.left else 1
    Q_ = fr.right.period if fr.right else 0
    Rr = fr.right.growth if fr.right else 1
    splits: dict[int, _Split] = {}

    def split(k: int) -> _Split:
        if k in splits:
            return splits[k]
        if k < a and fr.left:
            s = _replicated(split(k + P), Rl)
        elif k > b and fr.right:
            s = _replicated(split(k - Q_), Rr)
        else:
            s = _cancellable(X, k)
        splits[k] = s
        return s

    lo, hi = a - 1, b + 1
    bases, proj = {}, {}
    for k in range(lo - 1, hi + 2):
        prev, cur = split(k - 1), split(k)
        rows = [prev.retract, la.mul(cur.retract, X.diff(k), p)]
        stack = np.vstack([r for r in rows if r.shape[0]]) if any(r.shape[0] for r in rows) \
            else la.zeros(0, X.dim(k))
        B = la.kernel_basis(stack, p) if stack.shape[0] else la.identity(X.dim(k))
        bases[k] = B
    # tail degrees copy the window choice, so the model keeps the tail rule
    if fr.left:
        for k in range(a - 1, lo - 2, -1):
            bases[k] = replicate(bases[k + P], Rl)
    if fr.right:
        for k in range(b + 1, hi + 2):
            bases[k] = replicate(bases[k - Q_], Rr)

    def coords(k: int) -> np.ndarray:
        """Projection ``X^k -> C^k`` along ``Q'_{k-1} (+) Q_k``."""
        if k in proj:
            return proj[k]
        B, prev, cur = bases[k], split(k - 1), split(k)
        full = np.hstack([B, prev.Qprime, cur.Q])
        inv = la.inverse(full, p)
        out = inv[: B.shape[1]]
        proj[k] = out
        return out

    terms = [submodule(X.term(k), bases[k]) for k in range(a, b + 1)]
    diffs = []
    for k in range(a, b):
        dk = la.mul(X.diff(k), bases[k], p)
        diffs.append(la.solve(bases[k + 1], dk, p) if bases[k + 1].shape[1]
                     else la.zeros(0, bases[k].shape[1]))
    C = Complex(A, a, terms, diffs, fr.left, fr.right, validate=False)

    mfr = Frame(a, b, fr.left, fr.right)
    inc = graded_map(C, X, lambda k: bases[k], frame=mfr)
    prj = graded_map(X, C, coords, frame=mfr)

    def hcomp(k: int) -> np.ndarray:
        # h^k : X^k -> X^{k-1}, inverse of d on the Q'_{k-1} component, zero elsewhere
        prev = split(k - 1)
        if prev.Q.shape[1] == 0:
            return la.zeros(X.dim(k - 1), X.dim(k))
        B, cur = bases[k], split(k)
        full = np.hstack([B, prev.Qprime, cur.Q])
        inv = la.inverse(full, p)
        nb, nq = B.shape[1], prev.Qprime.shape[1]
        qcoords = inv[nb:nb + nq]
        dQ = la.mul(X.diff(k - 1), prev.Q, p)
        # d restricted to Q_{k-1} is an isomorphism onto Q'_{k-1}
        lift = la.solve(dQ, prev.Qprime, p)
        return la.mul_chain(prev.Q, lift, qcoords, p=p)

    h = graded_map(X, X, hcomp, degree=-1, frame=mfr)
    return MinimalModel(C, inc, prj, h, X)
