"""Named fixtures and seeded random modules, complexes and chain maps.

Random complexes are assembled from three parts: an optional left tail block,
a random window, and an optional right tail block.  Tail blocks come in
kinds that fix which boundedness labels the result can carry:

``"exact"``
    non-split exact periodic piece, e.g. ``(A, x)`` over the dual numbers;
``"free"``
    zero differential, so every tail degree carries homology;
``"split"``
    split exact (contractible) piece ``A^2`` with ``(a, b) -> (0, a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg as la
from .algebra import (Algebra, Module, direct_sum as module_sum, free_module, generated_submodule,
                      hom_space, indecomposable_projective, power, quotient_module,
                      regular_module, simple_module)
from .complexes import (Complex, GradedMap, Tail, cone, direct_sum, identity_map,
                        intelligent_ge, intelligent_le, shift)
from .homotopy import chain_map_space

TAIL_KINDS = ("exact", "free", "split")


# -- fixtures ----------------------------------------------------------------

def _x(A: Algebra) -> np.ndarray:
    return A.left_mult[A.labels.index("x")]


def fixture_P(A: Algebra) -> Complex:
    """``... -x-> A -x-> A -> 0``, ending in degree 0 (resolution of the simple)."""
    R = regular_module(A)
    return Complex(A, -1, [R, R], [_x(A)], left=Tail(1))


def fixture_I(A: Algebra) -> Complex:
    """``0 -> A -x-> A -x-> ...``, starting in degree 0."""
    R = regular_module(A)
    return Complex(A, 0, [R, R], [_x(A)], right=Tail(1))


def fixture_PI(A: Algebra) -> Complex:
    """The complete resolution ``... -x-> A -x-> A -x-> ...``."""
    R = regular_module(A)
    return Complex(A, 0, [R, R], [_x(A)], left=Tail(1), right=Tail(1))


def fixture_zero_tail(A: Algebra, side: str = "left") -> Complex:
    """Copies of ``A`` with zero differential, unbounded on one side, ending in degree 0."""
    R = regular_module(A)
    z = la.zeros(A.dim, A.dim)
    if side == "left":
        return Complex(A, -1, [R, R], [z], left=Tail(1))
    return Complex(A, 0, [R, R], [z], right=Tail(1))


def string_resolution(A: Algebra) -> Complex:
    """Minimal resolution of the simple over ``K[x,y]/(x^2,y^2,xy)``: ``A^{2^k}`` in degree ``-k``."""
    R = regular_module(A)
    lx, ly = A.left_mult[A.labels.index("x")], A.left_mult[A.labels.index("y")]
    d = np.hstack([lx, ly])
    return Complex(A, -1, [power(R, 2), R], [d], left=Tail(1, 2))


def named_fixtures(A: Algebra) -> dict[str, Complex]:
    out: dict[str, Complex] = {}
    if A.name.startswith("dual_numbers"):
        out.update(P=fixture_P(A), I=fixture_I(A), PI=fixture_PI(A),
                   Z=fixture_zero_tail(A, "left"), Zplus=fixture_zero_tail(A, "right"))
    if A.name.startswith("string_algebra"):
        out["res"] = string_resolution(A)
    return out


# -- random modules ----------------------------------------------------------

def random_projective(A: Algebra, rng: np.random.Generator, max_mult: int = 2,
                      nonzero: bool = True) -> Module:
    mods = []
    for t in range(len(A.idempotents)):
        P, _ = indecomposable_projective(A, t)
        mods += [P] * int(rng.integers(0, max_mult + 1))
    if not mods and nonzero:
        t = int(rng.integers(0, len(A.idempotents)))
        mods = [indecomposable_projective(A, t)[0]]
    return module_sum(*mods) if mods else free_module(A, 0)


def random_module(A: Algebra, rng: np.random.Generator, max_rank: int = 2) -> Module:
    """A projective, a simple, or a quotient of a free module by a random cyclic submodule."""
    kind = int(rng.integers(0, 3))
    if kind == 0:
        return random_projective(A, rng, max_rank)
    if kind == 1:
        return simple_module(A, int(rng.integers(0, len(A.idempotents))))
    F = free_module(A, int(rng.integers(1, max_rank + 1)))
    v = la.random_matrix(rng, F.dim, 1, A.p)
    Q, _ = quotient_module(F, generated_submodule(F, v))
    return Q if Q.dim else simple_module(A, 0)


def random_nonprojective(A: Algebra, rng: np.random.Generator, max_rank: int = 2,
                         tries: int = 50) -> Module:
    from .algebra import is_projective
    for _ in range(tries):
        M = random_module(A, rng, max_rank)
        if M.dim and not is_projective(M):
            return M
    return simple_module(A, 0)


# -- tail blocks ---------------------------------------------------------------

@dataclass(frozen=True)
class TailBlock:
    """Left block: ``M^r -delta-> M``; right block: ``M -delta-> M^r``."""
    module: Module
    delta: np.ndarray
    growth: int = 1


def tail_block(A: Algebra, kind: str, side: str) -> Optional[TailBlock]:
    """The tail block of a kind, or ``None`` when the algebra has none of that kind."""
    R = regular_module(A)
    if kind == "free":
        return TailBlock(R, la.zeros(A.dim, A.dim))
    if kind == "split":
        e = la.zeros(2 * A.dim, 2 * A.dim)
        e[A.dim:, : A.dim] = la.identity(A.dim)
        return TailBlock(power(R, 2), e)
    if kind == "exact":
        if A.name.startswith("dual_numbers"):
            return TailBlock(R, _x(A))
        if A.name.startswith("string_algebra") and side == "left":
            lx, ly = A.left_mult[A.labels.index("x")], A.left_mult[A.labels.index("y")]
            return TailBlock(R, np.hstack([lx, ly]), 2)
        return None
    raise ValueError(f"unknown tail kind {kind!r}")


def available_kinds(A: Algebra, side: str) -> list[str]:
    return [k for k in TAIL_KINDS if tail_block(A, k, side) is not None]


# -- random complexes ----------------------------------------------------------

def _random_constrained(M: Module, N: Module, before: Optional[np.ndarray],
                        after: Optional[np.ndarray], rng: np.random.Generator) -> np.ndarray:
    """Random module map ``M -> N`` with ``d before = 0`` and ``after d = 0``."""
    p = M.algebra.p
    H = hom_space(M, N)
    if len(H) == 0:
        return la.zeros(N.dim, M.dim)
    eqs = []
    for h in H:
        parts = []
        if before is not None and before.shape[1]:
            parts.append(la.mul(h, before, p).reshape(-1))
        if after is not None and after.shape[0]:
            parts.append(la.mul(after, h, p).reshape(-1))
        eqs.append(np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64))
    E = np.array(eqs, dtype=np.int64).T
    K = la.kernel_basis(E, p) if E.shape[0] else la.identity(len(H))
    if K.shape[1] == 0:
        return la.zeros(N.dim, M.dim)
    c = la.mul(K, la.random_matrix(rng, K.shape[1], 1, p), p)[:, 0]
    return np.mod(np.tensordot(c, H, axes=1), p)


def random_complex(A: Algebra, rng: np.random.Generator, length: int = 4, lo: int = 0,
                   left: Optional[str] = None, right: Optional[str] = None,
                   terms: str = "projective", max_mult: int = 2) -> Complex:
    """Random complex: optional tail blocks around ``length`` random window terms.

    ``terms`` is ``"projective"`` or ``"modules"`` and governs the window only;
    tail blocks are always made of projectives.
    """
    mods: list[Module] = []
    fixed: dict[int, np.ndarray] = {}
    lb = tail_block(A, left, "left") if left else None
    rb = tail_block(A, right, "right") if right else None
    if left and lb is None:
        raise ValueError(f"{A.name} has no {left!r} left tail")
    if right and rb is None:
        raise ValueError(f"{A.name} has no {right!r} right tail")
    if lb:
        mods += [power(lb.module, lb.growth), lb.module]
        fixed[0] = lb.delta
    pick = random_projective if terms == "projective" else random_module
    for _ in range(length):
        mods.append(pick(A, rng, max_mult))
    if rb:
        fixed[len(mods)] = rb.delta
        mods += [rb.module, power(rb.module, rb.growth)]
    diffs: list[Optional[np.ndarray]] = [None] * (len(mods) - 1)
    for i, d in fixed.items():
        diffs[i] = d
    for i in range(len(diffs)):
        if diffs[i] is not None:
            continue
        before = diffs[i - 1] if i > 0 else None
        after = diffs[i + 1] if i + 1 < len(diffs) else None
        diffs[i] = _random_constrained(mods[i], mods[i + 1], before, after, rng)
    start = lo - (2 if lb else 0)
    X = Complex(A, start, mods, diffs,
                left=Tail(1, lb.growth) if lb else None,
                right=Tail(1, rb.growth) if rb else None)
    return X


def random_contractible(A: Algebra, rng: np.random.Generator, length: int = 2, lo: int = 0,
                        terms: str = "projective") -> Complex:
    Y = random_complex(A, rng, length, lo, terms=terms)
    return cone(identity_map(Y))


def random_exact(A: Algebra, rng: np.random.Generator, shape: str = "bounded",
                 terms: str = "modules") -> Complex:
    """Exact complexes of a given shape: ``bounded``, ``left`` (left bounded),
    ``right`` (right bounded) or ``both`` (unbounded both ways).

    Unbounded shapes need the complete resolution, so they exist over the
    dual numbers only.
    """
    C = random_contractible(A, rng, int(rng.integers(1, 3)), int(rng.integers(-2, 2)), terms)
    if shape == "bounded":
        return C
    if not A.name.startswith("dual_numbers"):
        raise ValueError("unbounded exact fixtures need the dual numbers")
    PI = fixture_PI(A)
    k = int(rng.integers(-2, 3))
    if shape == "left":
        piece = intelligent_ge(PI, k)
    elif shape == "right":
        piece = intelligent_le(PI, k)
    else:
        piece = shift(PI, k)
    return direct_sum(piece, C)


def random_chain_map(X: Complex, Y: Complex, rng: np.random.Generator) -> GradedMap:
    """A random element of the (eventually periodic) chain map space."""
    S, Z = chain_map_space(X, Y)
    p = X.p
    if Z.shape[1] == 0:
        return S.to_map(np.zeros(S.nvars, dtype=np.int64))
    c = la.mul(Z, la.random_matrix(rng, Z.shape[1], 1, p), p)[:, 0]
    return S.to_map(c)


def random_quasi_isomorphism(X: Complex, rng: np.random.Generator,
                             terms: str = "modules") -> GradedMap:
    """``X -> X (+) C`` with ``C`` contractible and a random second component."""
    from .complexes import graded_map, common_frame
    A = X.algebra
    C = random_contractible(A, rng, int(rng.integers(1, 3)), X.lo, terms)
    g = random_chain_map(X, C, rng)
    Y = direct_sum(X, C)
    fr = common_frame([X, Y, g], margin=0)

    def comp(n):
        return np.vstack([la.identity(X.dim(n)), g.component(n)])
    return graded_map(X, Y, comp, frame=fr)


def seeded(seed: int, *salt: int) -> np.random.Generator:
    return np.random.default_rng([seed, *salt])
