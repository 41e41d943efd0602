"""Finite-dimensional algebras over F_p, their modules, covers and syzygies.

An algebra is given by structure constants ``c[i, j, k]`` with
``b_i b_j = sum_k c[i, j, k] b_k``.  A module stores one action matrix per
basis element; vectors are columns, so ``action[i] @ m`` is ``b_i . m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import linalg as la


class AlgebraError(ValueError):
    """Invalid algebra presentation."""


class ModuleError(ValueError):
    """Invalid module data or non-module-map."""


class UnsupportedAlgebraError(RuntimeError):
    """Raised when a computation needs idempotent data the algebra lacks."""


@dataclass(eq=False)
class Algebra:
    name: str
    dim: int
    labels: tuple[str, ...]
    consts: np.ndarray                # shape (dim, dim, dim)
    unit: np.ndarray                  # shape (dim,)
    radical: np.ndarray               # shape (r, dim), rows span J
    idempotents: np.ndarray           # shape (m, dim), complete orthogonal primitive set
    p: int = field(default_factory=la.get_prime)

    def __post_init__(self):
        self.consts = np.mod(np.asarray(self.consts, dtype=np.int64), self.p).reshape(
            self.dim, self.dim, self.dim)
        self.unit = np.mod(np.asarray(self.unit, dtype=np.int64), self.p).reshape(self.dim)
        self.radical = np.mod(np.asarray(self.radical, dtype=np.int64), self.p).reshape(-1, self.dim)
        self.idempotents = np.mod(np.asarray(self.idempotents, dtype=np.int64),
                                  self.p).reshape(-1, self.dim)
        self.labels = tuple(self.labels)
        if len(self.labels) != self.dim:
            raise AlgebraError("need one label per basis element")

    # -- arithmetic -------------------------------------------------------
    def mult(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.mod(np.einsum("i,j,ijk->k", u, v, self.consts), self.p)

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    def element(self, **coeffs: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for lab, c in coeffs.items():
            v[self.labels.index(lab)] = c
        return np.mod(v, self.p)

    @cached_property
    def left_mult(self) -> np.ndarray:
        """``left_mult[i]`` is the matrix of ``v -> b_i v`` (regular representation)."""
        return np.transpose(self.consts, (0, 2, 1)).copy()

    def right_mult(self, v: np.ndarray) -> np.ndarray:
        """Matrix of ``a -> a v``."""
        return np.mod(np.einsum("ijk,j->ki", self.consts, v), self.p)

    def left_mult_by(self, v: np.ndarray) -> np.ndarray:
        return np.mod(np.einsum("i,ikj->kj", v, self.left_mult), self.p)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Basis indices generating the algebra (with the unit) under products."""
        gens: list[int] = []
        cand = [int(np.flatnonzero(r)[0]) for r in self.radical if r.any()]
        # basis indices supporting radical and idempotent vectors come first
        order = []
        for v in list(self.radical) + list(self.idempotents):
            order.extend(int(i) for i in np.flatnonzero(v))
        order.extend(range(self.dim))
        del cand
        span = self._closure([])
        for i in dict.fromkeys(order):
            if span.shape[1] == self.dim:
                break
            if not la.in_span(span, self.basis_vector(i).reshape(-1, 1), self.p):
                gens.append(i)
                span = self._closure(gens)
        return tuple(gens)

    def _closure(self, gens: Sequence[int]) -> np.ndarray:
        vecs = [self.unit] + [self.basis_vector(i) for i in gens]
        span = la.image_basis(np.array(vecs, dtype=np.int64).T, self.p)
        while True:
            prods = [self.mult(span[:, a], self.basis_vector(g)) for a in range(span.shape[1])
                     for g in gens]
            if not prods:
                return span
            new = la.image_basis(np.hstack([span, np.array(prods).T]), self.p)
            if new.shape[1] == span.shape[1]:
                return span
            span = new

    # -- validation -------------------------------------------------------
    def validate(self) -> "Algebra":
        p = self.p
        c = self.consts
        lhs = np.mod(np.einsum("ijl,lkm->ijkm", c, c), p)
        rhs = np.mod(np.einsum("jkl,ilm->ijkm", c, c), p)
        bad = np.argwhere(np.any(lhs != rhs, axis=3))
        if bad.size:
            i, j, k = (int(t) for t in bad[0])
            raise AlgebraError(
                f"not associative on basis triple ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")
        eye = la.identity(self.dim)
        if not np.array_equal(np.mod(np.einsum("i,ijk->jk", self.unit, c), p), eye) or \
                not np.array_equal(np.mod(np.einsum("i,jik->jk", self.unit, c), p), eye):
            raise AlgebraError("unit vector is not a two-sided identity")
        self._validate_idempotents()
        self._validate_radical()
        return self

    def _validate_idempotents(self) -> None:
        if len(self.idempotents) == 0:
            raise AlgebraError("at least one primitive idempotent is required")
        total = np.mod(self.idempotents.sum(axis=0), self.p)
        if not np.array_equal(total, self.unit):
            raise AlgebraError("idempotents do not sum to the unit")
        for s, es in enumerate(self.idempotents):
            for t, et in enumerate(self.idempotents):
                prod = self.mult(es, et)
                want = es if s == t else np.zeros_like(es)
                if not np.array_equal(prod, want):
                    raise AlgebraError(f"idempotents {s},{t} are not orthogonal idempotents")

    def _validate_radical(self) -> None:
        p = self.p
        J = la.image_basis(self.radical.T, p) if len(self.radical) else la.zeros(self.dim, 0)
        for r in J.T:
            for i in range(self.dim):
                b = self.basis_vector(i)
                for prod in (self.mult(b, r), self.mult(r, b)):
                    if not la.in_span(J, prod.reshape(-1, 1), p):
                        raise AlgebraError("radical basis does not span a two-sided ideal")
        power = J
        for _ in range(self.dim + 1):
            if power.shape[1] == 0:
                break
            prods = [self.mult(r, v) for r in J.T for v in power.T]
            power = la.image_basis(np.array(prods).T, p) if prods else la.zeros(self.dim, 0)
        else:
            raise AlgebraError("radical is not nilpotent")
        if power.shape[1]:
            raise AlgebraError("radical is not nilpotent")
        # A/J semisimple: split local corners and nondegenerate corner pairings
        corners = {}
        for s, es in enumerate(self.idempotents):
            for t, et in enumerate(self.idempotents):
                vecs = [self.mult(self.mult(es, self.basis_vector(i)), et) for i in range(self.dim)]
                space = la.image_basis(np.array(vecs).T, p)
                corners[s, t] = _quotient_reps(space, J, p)
        for s in range(len(self.idempotents)):
            if corners[s, s].shape[1] != 1:
                raise AlgebraError(
                    f"idempotent {s} is not primitive with split endomorphism ring modulo J")
        m = len(self.idempotents)
        for s in range(m):
            for t in range(m):
                if s == t:
                    continue
                X, Y = corners[s, t], corners[t, s]
                if X.shape[1] == 0:
                    continue
                pairing = np.array([[0 if la.in_span(J, self.mult(x, y).reshape(-1, 1), p) else 1
                                     for y in Y.T] for x in X.T])
                if Y.shape[1] == 0 or not pairing.any(axis=1).all():
                    raise AlgebraError("quotient by the declared radical is not semisimple")


def _quotient_reps(space: np.ndarray, J: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``space`` independent modulo the span of ``J``."""
    chosen = []
    cur = J
    for v in space.T:
        col = v.reshape(-1, 1)
        if not la.in_span(cur, col, p):
            chosen.append(v)
            cur = np.hstack([cur, col]) if cur.size else col
    return np.array(chosen, dtype=np.int64).T if chosen else la.zeros(space.shape[0], 0)


def opposite_algebra(A: Algebra) -> Algebra:
    return Algebra(name=A.name + "^op", dim=A.dim, labels=A.labels,
                   consts=np.transpose(A.consts, (1, 0, 2)), unit=A.unit,
                   radical=A.radical, idempotents=A.idempotents, p=A.p)


# -- built-in algebras -------------------------------------------------------

def semisimple(n: int = 1, p: Optional[int] = None) -> Algebra:
    """The product of ``n`` copies of the field."""
    p = p or la.get_prime()
    c = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        c[i, i, i] = 1
    return Algebra(name=f"semisimple{n}", dim=n, labels=tuple(f"e{i + 1}" for i in range(n)),
                   consts=c, unit=np.ones(n, dtype=np.int64), radical=np.zeros((0, n)),
                   idempotents=np.eye(n, dtype=np.int64), p=p)


def dual_numbers(p: Optional[int] = None) -> Algebra:
    """K[x]/(x^2)."""
    p = p or la.get_prime()
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = 1
    return Algebra(name="dual_numbers", dim=2, labels=("1", "x"), consts=c, unit=[1, 0],
                   radical=[[0, 1]], idempotents=[[1, 0]], p=p)


def string_algebra(p: Optional[int] = None) -> Algebra:
    """K[x, y]/(x^2, y^2, xy): local, radical square zero, not Gorenstein."""
    p = p or la.get_prime()
    c = np.zeros((3, 3, 3), dtype=np.int64)
    c[0, 0, 0] = 1
    for i in (1, 2):
        c[0, i, i] = c[i, 0, i] = 1
    return Algebra(name="string_algebra", dim=3, labels=("1", "x", "y"), consts=c,
                   unit=[1, 0, 0], radical=[[0, 1, 0], [0, 0, 1]], idempotents=[[1, 0, 0]], p=p)


def a2_path(p: Optional[int] = None) -> Algebra:
    """Path algebra of 1 -> 2 (hereditary, two simples)."""
    p = p or la.get_prime()
    c = np.zeros((3, 3, 3), dtype=np.int64)
    c[0, 0, 0] = 1      # e1 e1 = e1
    c[1, 1, 1] = 1      # e2 e2 = e2
    c[1, 2, 2] = 1      # e2 a = a
    c[2, 0, 2] = 1      # a e1 = a
    return Algebra(name="a2_path", dim=3, labels=("e1", "e2", "a"), consts=c, unit=[1, 1, 0],
                   radical=[[0, 0, 1]], idempotents=[[1, 0, 0], [0, 1, 0]], p=p)


BUILTIN_ALGEBRAS = {
    "dual_numbers": dual_numbers,
    "string_algebra": string_algebra,
    "a2_path": a2_path,
    "semisimple": semisimple,
}


def builtin(name: str, **params) -> Algebra:
    if name.startswith("semisimple") and name[len("semisimple"):].isdigit():
        return semisimple(int(name[len("semisimple"):]), **params)
    try:
        return BUILTIN_ALGEBRAS[name](**params)
    except KeyError:
        raise KeyError(f"unknown built-in algebra {name!r}") from None


# -- modules ---------------------------------------------------------------

@dataclass(eq=False)
class Module:
    algebra: Algebra
    dim: int
    action: np.ndarray       # shape (algebra.dim, dim, dim)

    def __post_init__(self):
        self.action = np.mod(np.asarray(self.action, dtype=np.int64),
                             self.algebra.p).reshape(self.algebra.dim, self.dim, self.dim)

    @cached_property
    def key(self) -> tuple:
        return (id(self.algebra), self.dim, self.action.tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, Module) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Module(dim={self.dim}, algebra={self.algebra.name})"

    def act(self, a: np.ndarray) -> np.ndarray:
        """Matrix of the algebra element ``a`` (coefficient vector)."""
        return np.mod(np.einsum("i,ijk->jk", a, self.action), self.algebra.p)

    def validate(self) -> "Module":
        A, p = self.algebra, self.algebra.p
        if not np.array_equal(self.act(A.unit), la.identity(self.dim)):
            raise ModuleError("unit does not act as the identity")
        lhs = np.mod(np.einsum("iab,jbc->ijac", self.action, self.action), p)
        rhs = np.mod(np.einsum("ijk,kac->ijac", A.consts, self.action), p)
        bad = np.argwhere(np.any(lhs != rhs, axis=(2, 3)))
        if bad.size:
            i, j = (int(t) for t in bad[0])
            raise ModuleError(f"action not multiplicative on ({A.labels[i]}, {A.labels[j]})")
        return self

    def is_zero(self) -> bool:
        return self.dim == 0


@dataclass(eq=False)
class ModuleMorphism:
    source: Module
    target: Module
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.int64).reshape(self.target.dim, self.source.dim)

    def is_valid(self) -> bool:
        return is_module_map(self.source, self.target, self.matrix)


def is_module_map(M: Module, N: Module, f: np.ndarray) -> bool:
    p = M.algebra.p
    if f.shape != (N.dim, M.dim):
        return False
    for i in M.algebra.generators:
        if not np.array_equal(la.mul(f, M.action[i], p), la.mul(N.action[i], f, p)):
            return False
    return True


def zero_module(A: Algebra) -> Module:
    return Module(A, 0, np.zeros((A.dim, 0, 0), dtype=np.int64))


def regular_module(A: Algebra) -> Module:
    return Module(A, A.dim, A.left_mult)


def free_module(A: Algebra, rank: int) -> Module:
    return power(regular_module(A), rank)


def direct_sum(*mods: Module) -> Module:
    if not mods:
        raise ValueError("need at least one summand")
    A = mods[0].algebra
    acts = [la.block_diag(*(m.action[i] for m in mods)) for i in range(A.dim)]
    dim = sum(m.dim for m in mods)
    return Module(A, dim, np.array(acts).reshape(A.dim, dim, dim))


def power(M: Module, r: int) -> Module:
    if r == 1:
        return M
    if r == 0:
        return zero_module(M.algebra)
    return direct_sum(*([M] * r))


def submodule(M: Module, basis: np.ndarray) -> Module:
    """The submodule spanned by the (independent) columns of ``basis``."""
    A, p = M.algebra, M.algebra.p
    k = basis.shape[1]
    if k == 0:
        return zero_module(A)
    acts = []
    for i in range(A.dim):
        x = la.solve(basis, la.mul(M.action[i], basis, p), p)
        if x is None:
            raise ModuleError("span is not a submodule")
        acts.append(x)
    return Module(A, k, np.array(acts))


def quotient_module(M: Module, basis: np.ndarray) -> tuple[Module, np.ndarray]:
    """``M / span(basis)`` and the projection matrix onto it."""
    A, p = M.algebra, M.algebra.p
    comp = la.complement_basis(basis, M.dim, p)
    full = np.hstack([basis, comp]) if basis.size else comp
    inv = la.inverse(full, p)
    proj = inv[basis.shape[1]:, :]
    acts = [la.mul_chain(proj, M.action[i], comp, p=p) for i in range(A.dim)]
    return Module(A, comp.shape[1], np.array(acts).reshape(A.dim, comp.shape[1], comp.shape[1])), proj


def generated_submodule(M: Module, vecs: np.ndarray) -> np.ndarray:
    """Basis of ``A . span(vecs)``."""
    p = M.algebra.p
    if vecs.size == 0:
        return la.zeros(M.dim, 0)
    cols = [la.mul(M.action[i], vecs, p) for i in range(M.algebra.dim)]
    return la.image_basis(np.hstack(cols), p)


def radical_basis(M: Module) -> np.ndarray:
    """Basis (columns) of ``J M``."""
    A, p = M.algebra, M.algebra.p
    if M.dim == 0 or len(A.radical) == 0:
        return la.zeros(M.dim, 0)
    mats = [M.act(r) for r in A.radical]
    return la.image_basis(np.hstack(mats), p)


def radical_of_module(M: Module) -> tuple[Module, ModuleMorphism]:
    """``J M`` together with its inclusion into ``M``."""
    B = radical_basis(M)
    R = submodule(M, B)
    return R, ModuleMorphism(R, M, B)


def is_semisimple_module(M: Module) -> bool:
    return radical_basis(M).shape[1] == 0


def dual_module(M: Module, Aop: Optional[Algebra] = None) -> Module:
    """``Hom_K(M, K)`` as a left module over the opposite algebra."""
    Aop = Aop or opposite_algebra(M.algebra)
    return Module(Aop, M.dim, np.transpose(M.action, (0, 2, 1)))


# -- projectives -----------------------------------------------------------

_PROJ_CACHE: dict = {}


def indecomposable_projective(A: Algebra, t: int) -> tuple[Module, np.ndarray]:
    """``A e_t`` and its basis inside the regular module."""
    key = (id(A), t)
    if key not in _PROJ_CACHE:
        if t >= len(A.idempotents):
            raise UnsupportedAlgebraError(f"no idempotent with index {t}")
        basis = la.image_basis(A.right_mult(A.idempotents[t]), A.p)
        _PROJ_CACHE[key] = (submodule(regular_module(A), basis), basis, A)
    P, basis, _ = _PROJ_CACHE[key]
    return P, basis


def simple_module(A: Algebra, t: int) -> Module:
    P, _ = indecomposable_projective(A, t)
    S, _ = quotient_module(P, radical_basis(P))
    return S


@dataclass(eq=False)
class ProjectiveCover:
    """``map: P -> M`` with ``P`` the direct sum of ``A e_t`` for ``t`` in ``summands``."""
    source: Module
    target: Module
    matrix: np.ndarray
    summands: tuple[int, ...]
    generators: np.ndarray      # column i generates the i-th summand's image

    @property
    def morphism(self) -> ModuleMorphism:
        return ModuleMorphism(self.source, self.target, self.matrix)


def projective_cover(M: Module) -> ProjectiveCover:
    A, p = M.algebra, M.algebra.p
    if len(A.idempotents) == 0:
        raise UnsupportedAlgebraError("algebra has no idempotent decomposition")
    W = radical_basis(M)
    summands: list[int] = []
    gens: list[np.ndarray] = []
    for t, e in enumerate(A.idempotents):
        cand = la.image_basis(M.act(e), p)
        for v in cand.T:
            col = v.reshape(-1, 1)
            if la.in_span(W, col, p):
                continue
            summands.append(t)
            gens.append(v)
            W = la.image_basis(np.hstack([W, generated_submodule(M, col)]), p) if W.size \
                else generated_submodule(M, col)
    if W.shape[1] != M.dim:
        raise UnsupportedAlgebraError("idempotents are not complete: top not covered")
    blocks, mods = [], []
    for t, v in zip(summands, gens):
        Pt, basis = indecomposable_projective(A, t)
        orbit = np.stack([la.mul(M.action[j], v.reshape(-1, 1), p)[:, 0] for j in range(A.dim)], axis=1)
        blocks.append(la.mul(orbit, basis, p))
        mods.append(Pt)
    if mods:
        P = direct_sum(*mods)
        matrix = np.hstack(blocks)
    else:
        P = zero_module(A)
        matrix = la.zeros(M.dim, 0)
    G = np.array(gens, dtype=np.int64).T if gens else la.zeros(M.dim, 0)
    return ProjectiveCover(P, M, matrix, tuple(summands), G)


def is_projective(M: Module) -> bool:
    return projective_cover(M).source.dim == M.dim


def syzygy(M: Module, n: int = 1) -> Module:
    if n < 0:
        raise ValueError("n must be non-negative")
    for _ in range(n):
        cov = projective_cover(M)
        K = la.kernel_basis(cov.matrix, M.algebra.p)
        M = submodule(cov.source, K)
    return M


# -- Hom spaces --------------------------------------------------------------

_HOM_CACHE: dict = {}


def hom_space(M: Module, N: Module) -> np.ndarray:
    """Basis of ``Hom_A(M, N)`` as an array of shape ``(k, N.dim, M.dim)``."""
    key = (M.key, N.key)
    hit = _HOM_CACHE.get(key)
    if hit is not None:
        return hit
    A, p = M.algebra, M.algebra.p
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        out = np.zeros((0, n, m), dtype=np.int64)
    else:
        eqs = []
        for i in A.generators:
            eqs.append(np.kron(la.identity(n), M.action[i].T) - np.kron(N.action[i], la.identity(m)))
        K = la.kernel_basis(np.mod(np.vstack(eqs), p), p) if eqs else la.identity(n * m)
        out = np.ascontiguousarray(K.T.reshape(-1, n, m))
    if len(_HOM_CACHE) > 20000:
        _HOM_CACHE.clear()
    _HOM_CACHE[key] = out
    return out


@dataclass
class StableHom:
    dim: int
    representatives: np.ndarray     # shape (dim, N.dim, M.dim)
    hom_dim: int
    projective_dim: int


def factoring_through_projectives(M: Module, N: Module) -> np.ndarray:
    """Spanning set (flattened rows) of maps ``M -> N`` factoring through a projective."""
    p = M.algebra.p
    cov = projective_cover(N)
    G = hom_space(M, cov.source)
    if len(G) == 0:
        return la.zeros(0, N.dim * M.dim)
    comps = np.array([la.mul(cov.matrix, g, p).reshape(-1) for g in G])
    return la.row_basis(comps, p)


def stable_hom(M: Module, N: Module) -> StableHom:
    """``Hom_A(M, N)`` modulo maps factoring through projectives."""
    p = M.algebra.p
    H = hom_space(M, N)
    F = factoring_through_projectives(M, N)
    reps = []
    cur = F
    r = cur.shape[0]
    for h in H:
        row = h.reshape(1, -1)
        trial = np.vstack([cur, row]) if cur.size else row
        rk = la.rank(trial, p)
        if rk > r:
            reps.append(h)
            cur, r = trial, rk
    rep_arr = np.array(reps, dtype=np.int64) if reps else np.zeros((0, N.dim, M.dim), dtype=np.int64)
    return StableHom(len(reps), rep_arr, len(H), F.shape[0])


def retraction(M: Module, basis: np.ndarray) -> Optional[np.ndarray]:
    """Module map ``r: M -> S`` (S = span(basis), in basis coordinates) with ``r|_S = id``.

    Returns ``None`` when the submodule is not a direct summand.
    """
    p = M.algebra.p
    S = submodule(M, basis)
    H = hom_space(M, S)
    k = basis.shape[1]
    if k == 0:
        return la.zeros(0, M.dim)
    if len(H) == 0:
        return None
    cols = np.array([la.mul(h, basis, p).reshape(-1) for h in H]).T
    target = la.identity(k).reshape(-1, 1)
    c = la.solve(cols, target, p)
    if c is None:
        return None
    return np.mod(np.tensordot(c[:, 0], H, axes=1), p)
