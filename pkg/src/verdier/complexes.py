"""Cochain complexes of modules with eventually periodic tails.

A complex is stored on a finite window ``[lo, hi]``.  Below the window an
optional left tail repeats the terms with a period ``p`` and a growth factor
``r``::

    X^n = (X^{n+p})^{(+)r},   d^n = (d^{n+p})^{(+)r}     for n < lo

and symmetrically above the window.  A missing tail means the complex is zero
outside the window.  Graded maps (chain maps, homotopies) use the same rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .algebra import (Algebra, Module, direct_sum as module_sum, dual_module, is_module_map,
                      opposite_algebra, power, submodule, zero_module)


class ComplexError(ValueError):
    """Invalid complex or chain map data (reports the failing degree)."""


class UnsupportedTailError(RuntimeError):
    """Tails whose growth factors cannot be combined degreewise."""


@dataclass(frozen=True)
class Tail:
    period: int
    growth: int = 1

    def __post_init__(self):
        if self.period < 1 or self.growth < 1:
            raise ValueError("tail period and growth must be positive")


def replicate(m: np.ndarray, r: int) -> np.ndarray:
    return m if r == 1 else la.block_diag(*([m] * r))


class _Presented:
    """Shared window/tail bookkeeping for complexes and graded maps."""

    lo: int
    hi: int
    left: Optional[Tail]
    right: Optional[Tail]

    def periodic_below(self, a: int, P: int, R: int) -> bool:
        """True when ``obj^n = (obj^{n+P})^R`` for every ``n <= a``."""
        if self.left is None:
            return a + P < self._first_nonzero()
        p, r = self.left.period, self.left.growth
        if P % p:
            return False
        return R == r ** (P // p) and a <= self.lo - P + p

    def periodic_above(self, b: int, Q: int, R: int) -> bool:
        if self.right is None:
            return b - Q > self._last_nonzero()
        q, r = self.right.period, self.right.growth
        if Q % q:
            return False
        return R == r ** (Q // q) and b >= self.hi + Q - q

    def _first_nonzero(self) -> int:
        return self.lo

    def _last_nonzero(self) -> int:
        return self.hi


@dataclass(frozen=True)
class Frame:
    """A common window with common tails for several presented objects."""
    a: int
    b: int
    left: Optional[Tail]
    right: Optional[Tail]

    def check_range(self) -> range:
        P = self.left.period if self.left else 0
        Q = self.right.period if self.right else 0
        return range(self.a - P - 1, self.b + Q + 2)


def _side_tail(tails: list[Tail], shared_growth_ok: bool) -> Tail:
    L = lcm(*(t.period for t in tails))
    growths = {t.growth ** (L // t.period) for t in tails}
    if len(growths) == 1 and (growths == {1} or len(tails) == 1 or shared_growth_ok):
        return Tail(L, growths.pop())
    raise UnsupportedTailError("cannot combine tails with growth factor > 1")


def common_frame(objs: Sequence[_Presented], margin: int = 0,
                 shared_growth_ok: bool = True) -> Frame:
    """Window and tails under which every object follows the tail rule.

    The rule holds up to and including the frame ends, so a complex or map
    built on ``[a, b]`` inherits it.  ``margin`` extra periods are added on
    each tailed side.
    """
    lefts = [o.left for o in objs if o.left is not None]
    rights = [o.right for o in objs if o.right is not None]
    left = _side_tail(lefts, shared_growth_ok) if lefts else None
    right = _side_tail(rights, shared_growth_ok) if rights else None
    if left:
        P = left.period
        a = min(o.lo - P + o.left.period if o.left else o._first_nonzero() - P - 1 for o in objs)
        a -= margin * P
    else:
        a = min(o.lo for o in objs)
    if right:
        Q = right.period
        b = max(o.hi + Q - o.right.period if o.right else o._last_nonzero() + Q + 1 for o in objs)
        b += margin * Q
    else:
        b = max(o.hi for o in objs)
    if left and b < a + left.period:
        b = a + left.period
    if right and a > b - right.period:
        a = b - right.period
    return Frame(a, b, left, right)


# -- complexes ---------------------------------------------------------------

class Complex(_Presented):
    def __init__(self, algebra: Algebra, lo: int, terms: Sequence[Module],
                 diffs: Sequence[np.ndarray], left: Optional[Tail] = None,
                 right: Optional[Tail] = None, validate: bool = True):
        if not terms:
            raise ComplexError("a complex needs at least one term in its window")
        if len(diffs) != len(terms) - 1:
            raise ComplexError("need one differential between consecutive window terms")
        self.algebra = algebra
        self.lo = lo
        self.hi = lo + len(terms) - 1
        self.terms = list(terms)
        self.diffs = [np.mod(np.asarray(d, dtype=np.int64), algebra.p) for d in diffs]
        self.left = left
        self.right = right
        self._term_cache: dict[int, Module] = {}
        self._diff_cache: dict[int, np.ndarray] = {}
        if validate:
            self.validate()

    # -- access ---------------------------------------------------------
    def term(self, n: int) -> Module:
        if self.lo <= n <= self.hi:
            return self.terms[n - self.lo]
        hit = self._term_cache.get(n)
        if hit is not None:
            return hit
        if n < self.lo:
            out = power(self.term(n + self.left.period), self.left.growth) if self.left \
                else zero_module(self.algebra)
        else:
            out = power(self.term(n - self.right.period), self.right.growth) if self.right \
                else zero_module(self.algebra)
        self._term_cache[n] = out
        return out

    def dim(self, n: int) -> int:
        return self.term(n).dim

    def diff(self, n: int) -> np.ndarray:
        """``d^n : X^n -> X^{n+1}``."""
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        hit = self._diff_cache.get(n)
        if hit is not None:
            return hit
        if n < self.lo and self.left:
            out = replicate(self.diff(n + self.left.period), self.left.growth)
        elif n >= self.hi and self.right:
            out = replicate(self.diff(n - self.right.period), self.right.growth)
        else:
            out = la.zeros(self.dim(n + 1), self.dim(n))
        self._diff_cache[n] = out
        return out

    @property
    def p(self) -> int:
        return self.algebra.p

    def _first_nonzero(self) -> int:
        if self.left:
            return self.lo
        for n in range(self.lo, self.hi + 1):
            if self.terms[n - self.lo].dim:
                return n
        return self.hi + 1

    def _last_nonzero(self) -> int:
        if self.right:
            return self.hi
        for n in range(self.hi, self.lo - 1, -1):
            if self.terms[n - self.lo].dim:
                return n
        return self.lo - 1

    def check_range(self) -> range:
        P = self.left.period if self.left else 0
        Q = self.right.period if self.right else 0
        return range(self.lo - P - 1, self.hi + Q + 2)

    def window(self) -> range:
        return range(self.lo, self.hi + 1)

    def total_dim(self) -> int:
        """Sum of the window dimensions (tails are not counted)."""
        return sum(m.dim for m in self.terms)

    def __repr__(self) -> str:
        dims = [m.dim for m in self.terms]
        tails = ""
        if self.left:
            tails += f", left={self.left.period}x{self.left.growth}"
        if self.right:
            tails += f", right={self.right.period}x{self.right.growth}"
        return f"Complex(lo={self.lo}, dims={dims}{tails})"

    # -- validation -------------------------------------------------------
    def validate(self) -> "Complex":
        p = self.p
        for n in range(self.lo, self.hi):
            d = self.diffs[n - self.lo]
            if d.shape != (self.dim(n + 1), self.dim(n)):
                raise ComplexError(f"differential in degree {n} has shape {d.shape}")
            if not is_module_map(self.term(n), self.term(n + 1), d):
                raise ComplexError(f"differential in degree {n} is not a module map")
        if self.left:
            p_, r = self.left.period, self.left.growth
            if self.hi < self.lo + p_:
                raise ComplexError("window shorter than the left tail period")
            if self.term(self.lo) != power(self.term(self.lo + p_), r):
                raise ComplexError(f"left seam mismatch at degree {self.lo}")
        if self.right:
            q, r = self.right.period, self.right.growth
            if self.hi - q < self.lo:
                raise ComplexError("window shorter than the right tail period")
            if self.term(self.hi) != power(self.term(self.hi - q), r):
                raise ComplexError(f"right seam mismatch at degree {self.hi}")
        for n in self.check_range():
            dd = la.mul(self.diff(n + 1), self.diff(n), p)
            if dd.any():
                raise ComplexError(f"d^{n + 1} d^{n} != 0")
        return self

    # -- re-presentation ----------------------------------------------------
    def unrolled(self, a: int, b: int) -> "Complex":
        """Same complex on the window ``[min(a, lo), max(b, hi)]``."""
        a, b = min(a, self.lo), max(b, self.hi)
        if (a, b) == (self.lo, self.hi):
            return self
        terms = [self.term(n) for n in range(a, b + 1)]
        diffs = [self.diff(n) for n in range(a, b)]
        return Complex(self.algebra, a, terms, diffs, self.left, self.right, validate=False)

    def reframed(self, fr: Frame) -> "Complex":
        """Present on the frame window with the frame's tails."""
        for side, tail in (("left", fr.left), ("right", fr.right)):
            if tail is None and getattr(self, side) is not None:
                raise ComplexError(f"frame drops the {side} tail")
        if fr.left and not self.periodic_below(fr.a, fr.left.period, fr.left.growth):
            raise ComplexError("frame incompatible with left tail")
        if fr.right and not self.periodic_above(fr.b, fr.right.period, fr.right.growth):
            raise ComplexError("frame incompatible with right tail")
        terms = [self.term(n) for n in range(fr.a, fr.b + 1)]
        diffs = [self.diff(n) for n in range(fr.a, fr.b)]
        return Complex(self.algebra, fr.a, terms, diffs, fr.left, fr.right, validate=False)

    def tightened(self) -> "Complex":
        """Shrink the window into the tails as far as the presented complex stays the same."""
        X = self.compact()

        def same(Y: "Complex") -> bool:
            rng = range(X.check_range().start - 1, X.check_range().stop + 1)
            return all(Y.dim(n) == X.dim(n)
                       and np.array_equal(Y.term(n).action, X.term(n).action)
                       and np.array_equal(Y.diff(n), X.diff(n)) for n in rng)

        def window(lo: int, hi: int) -> "Complex":
            return Complex(X.algebra, lo, [X.term(n) for n in range(lo, hi + 1)],
                           [X.diff(n) for n in range(lo, hi)], X.left, X.right, validate=False)

        # the window must keep a full period of differentials for the tail rules
        need = max(X.left.period if X.left else 0, X.right.period if X.right else 0)
        lo, hi = X.lo, X.hi
        while X.left and hi - lo - 1 >= need and same(window(lo + 1, hi)):
            lo += 1
        while X.right and hi - lo - 1 >= need and same(window(lo, hi - 1)):
            hi -= 1
        return X if (lo, hi) == (X.lo, X.hi) else window(lo, hi)

    def compact(self) -> "Complex":
        """Drop tails that are identically zero and trim zero ends of tailless sides."""
        X = self
        if X.left and all(X.dim(n) == 0 for n in range(X.lo - X.left.period, X.lo)):
            X = Complex(X.algebra, X.lo, X.terms, X.diffs, None, X.right, validate=False)
        if X.right and all(X.dim(n) == 0 for n in range(X.hi + 1, X.hi + X.right.period + 1)):
            X = Complex(X.algebra, X.lo, X.terms, X.diffs, X.left, None, validate=False)
        lo, hi = X.lo, X.hi
        if X.left is None:
            while lo < hi and X.dim(lo) == 0:
                lo += 1
        if X.right is None:
            while hi > lo and X.dim(hi) == 0:
                hi -= 1
        if X.left is not None and X.right is None and hi < lo + X.left.period:
            hi = lo + X.left.period
        if X.right is not None and X.left is None and lo > hi - X.right.period:
            lo = hi - X.right.period
        if (lo, hi) == (X.lo, X.hi):
            return X
        terms = [X.term(n) for n in range(lo, hi + 1)]
        diffs = [X.diff(n) for n in range(lo, hi)]
        return Complex(X.algebra, lo, terms, diffs, X.left, X.right, validate=False)

    def is_zero(self) -> bool:
        X = self.compact()
        return X.left is None and X.right is None and all(m.dim == 0 for m in X.terms)

    def is_bounded(self) -> bool:
        X = self.compact()
        return X.left is None and X.right is None


def zero_complex(A: Algebra) -> Complex:
    return Complex(A, 0, [zero_module(A)], [])


def stalk(M: Module, n: int = 0) -> Complex:
    """``M`` concentrated in degree ``n``."""
    return Complex(M.algebra, n, [M], [])


def from_terms(A: Algebra, lo: int, terms: Sequence[Module], diffs: Sequence[np.ndarray],
               left: Optional[Tail] = None, right: Optional[Tail] = None) -> Complex:
    return Complex(A, lo, terms, diffs, left, right)


def shift(X: Complex, k: int) -> Complex:
    """``X[k]``: ``(X[k])^n = X^{n+k}`` with differential ``(-1)^k d``."""
    if k == 0:
        return X
    sign = -1 if k % 2 else 1
    return Complex(X.algebra, X.lo - k, X.terms, [np.mod(sign * d, X.p) for d in X.diffs],
                   X.left, X.right, validate=False)


def direct_sum(*cs: Complex) -> Complex:
    if len(cs) == 1:
        return cs[0]
    A = cs[0].algebra
    fr = common_frame(cs, margin=0, shared_growth_ok=False)
    terms = [module_sum(*(c.term(n) for c in cs)) for n in range(fr.a, fr.b + 1)]
    diffs = [la.block_diag(*(c.diff(n) for c in cs)) for n in range(fr.a, fr.b)]
    return Complex(A, fr.a, terms, diffs, fr.left, fr.right, validate=False)


def dual_complex(X: Complex, Aop: Optional[Algebra] = None) -> Complex:
    """K-dual over the opposite algebra: ``(DX)^n = D(X^{-n})``, ``d^n = (d^{-n-1})^T``."""
    Aop = Aop or opposite_algebra(X.algebra)
    terms = [dual_module(X.term(n), Aop) for n in range(X.hi, X.lo - 1, -1)]
    diffs = [X.diff(n).T.copy() for n in range(X.hi - 1, X.lo - 1, -1)]
    return Complex(Aop, -X.hi, terms, diffs, X.right, X.left, validate=False)


# -- graded maps ---------------------------------------------------------------

class GradedMap(_Presented):
    """Components ``f^n : X^n -> Y^{n+degree}`` on a window with tail rules."""

    def __init__(self, source: Complex, target: Complex, lo: int, comps: Sequence[np.ndarray],
                 left: Optional[Tail] = None, right: Optional[Tail] = None, degree: int = 0):
        self.source = source
        self.target = target
        self.degree = degree
        self.lo = lo
        self.hi = lo + len(comps) - 1
        self.comps = [np.mod(np.asarray(c, dtype=np.int64), source.p) for c in comps]
        self.left = left
        self.right = right
        self._cache: dict[int, np.ndarray] = {}
        for n, c in zip(range(self.lo, self.hi + 1), self.comps):
            want = (target.dim(n + degree), source.dim(n))
            if c.shape != want:
                raise ComplexError(f"component in degree {n} has shape {c.shape}, expected {want}")

    def component(self, n: int) -> np.ndarray:
        if self.lo <= n <= self.hi:
            return self.comps[n - self.lo]
        hit = self._cache.get(n)
        if hit is not None:
            return hit
        if n < self.lo and self.left:
            out = replicate(self.component(n + self.left.period), self.left.growth)
        elif n > self.hi and self.right:
            out = replicate(self.component(n - self.right.period), self.right.growth)
        else:
            out = la.zeros(self.target.dim(n + self.degree), self.source.dim(n))
        self._cache[n] = out
        return out

    def __getitem__(self, n: int) -> np.ndarray:
        return self.component(n)

    @property
    def p(self) -> int:
        return self.source.p

    def frame(self) -> Frame:
        return common_frame([self.source, self.target, self], margin=0)

    def check_range(self) -> range:
        return self.frame().check_range()

    def __repr__(self) -> str:
        return f"GradedMap(degree={self.degree}, lo={self.lo}, hi={self.hi})"


ChainMap = GradedMap


def graded_map(source: Complex, target: Complex, fn, degree: int = 0,
               frame: Optional[Frame] = None) -> GradedMap:
    """Build a graded map from a per-degree function on a frame covering both ends."""
    fr = frame or common_frame([source, target], margin=0)
    lo, hi = fr.a, fr.b
    comps = []
    for n in range(lo, hi + 1):
        c = fn(n)
        if c is None:
            c = la.zeros(target.dim(n + degree), source.dim(n))
        comps.append(c)
    return GradedMap(source, target, lo, comps, fr.left, fr.right, degree)


def identity_map(X: Complex) -> GradedMap:
    return GradedMap(X, X, X.lo, [la.identity(m.dim) for m in X.terms], X.left, X.right)


def zero_map(X: Complex, Y: Complex, degree: int = 0) -> GradedMap:
    return graded_map(X, Y, lambda n: None, degree)


def _combine(maps: Sequence[GradedMap], fn, source: Complex, target: Complex,
             degree: int, extra: Sequence[_Presented] = ()) -> GradedMap:
    fr = common_frame(list(maps) + [source, target] + list(extra), margin=0)
    lo, hi = fr.a, fr.b
    comps = [fn(n) for n in range(lo, hi + 1)]
    return GradedMap(source, target, lo, comps, fr.left, fr.right, degree)


def compose(g: GradedMap, f: GradedMap) -> GradedMap:
    """``g o f``."""
    p = f.p
    return _combine([f, g], lambda n: la.mul(g.component(n + f.degree), f.component(n), p),
                    f.source, g.target, f.degree + g.degree)


def add(*fs: GradedMap, coeffs: Optional[Sequence[int]] = None) -> GradedMap:
    p = fs[0].p
    coeffs = coeffs or [1] * len(fs)

    def comp(n):
        out = la.zeros(fs[0].target.dim(n + fs[0].degree), fs[0].source.dim(n))
        for c, f in zip(coeffs, fs):
            out = out + c * f.component(n)
        return np.mod(out, p)
    return _combine(fs, comp, fs[0].source, fs[0].target, fs[0].degree)


def subtract(f: GradedMap, g: GradedMap) -> GradedMap:
    return add(f, g, coeffs=[1, -1])


def scale(f: GradedMap, c: int) -> GradedMap:
    return add(f, coeffs=[c])


def differential_of(h: GradedMap) -> GradedMap:
    """``d_Y h + (-1)^{|h|+1} h d_X`` for homogeneous ``h``; for ``|h| = -1`` this is ``dh + hd``."""
    X, Y, k = h.source, h.target, h.degree
    p = h.p
    sign = 1 if k % 2 else -1

    def comp(n):
        a = la.mul(Y.diff(n + k), h.component(n), p)
        b = la.mul(h.component(n + 1), X.diff(n), p)
        return np.mod(a + sign * b, p)
    return _combine([h], comp, X, Y, k + 1)


def is_chain_map(f: GradedMap) -> tuple[bool, Optional[int]]:
    """Whether all squares commute; also returns the first failing degree."""
    X, Y, p = f.source, f.target, f.p
    for n in f.check_range():
        lhs = la.mul(Y.diff(n + f.degree), f.component(n), p)
        rhs = la.mul(f.component(n + 1), X.diff(n), p)
        if f.degree % 2:
            rhs = np.mod(-rhs, p)
        if not np.array_equal(lhs, rhs):
            return False, n
    return True, None


def is_homotopy(f: GradedMap, g: GradedMap, h: GradedMap) -> bool:
    """``f - g = d h + h d`` in every degree of the check range."""
    p = f.p
    X, Y = f.source, f.target
    fr = common_frame([f, g, h, X, Y], margin=0)
    for n in fr.check_range():
        lhs = np.mod(f.component(n) - g.component(n), p)
        rhs = np.mod(la.mul(Y.diff(n - 1), h.component(n), p)
                     + la.mul(h.component(n + 1), X.diff(n), p), p)
        if not np.array_equal(lhs, rhs):
            return False
    return True


def maps_equal(f: GradedMap, g: GradedMap) -> bool:
    fr = common_frame([f, g, f.source, f.target], margin=0)
    return all(np.array_equal(f.component(n), g.component(n)) for n in fr.check_range())


def shift_map(f: GradedMap, k: int) -> GradedMap:
    """``f[k]`` between the shifted complexes (no sign on components)."""
    return GradedMap(shift(f.source, k), shift(f.target, k), f.lo - k, f.comps,
                     f.left, f.right, f.degree)


# -- cones ----------------------------------------------------------------------

def cone(f: GradedMap, check: bool = True) -> Complex:
    """``C^k = X^{k+1} (+) Y^k`` with ``d = [[-d_X, 0], [f, d_Y]]``."""
    if f.degree != 0:
        raise ComplexError("cone needs a degree-0 map")
    if check:
        ok, bad = is_chain_map(f)
        if not ok:
            raise ComplexError(f"not a chain map (degree {bad})")
    X, Y, p = f.source, f.target, f.p
    common_frame([X, Y], shared_growth_ok=False)
    fr = common_frame([X, Y, f])
    lo, hi = fr.a - 1, fr.b + 1
    terms = [module_sum(X.term(k + 1), Y.term(k)) for k in range(lo, hi + 1)]
    diffs = []
    for k in range(lo, hi):
        top = np.hstack([np.mod(-X.diff(k + 1), p), la.zeros(X.dim(k + 2), Y.dim(k))])
        bot = np.hstack([f.component(k + 1), Y.diff(k)])
        diffs.append(np.vstack([top, bot]))
    return Complex(X.algebra, lo, terms, diffs, fr.left, fr.right, validate=False)


def cone_inclusion(f: GradedMap, C: Optional[Complex] = None) -> GradedMap:
    """``Y -> cone(f)``, ``b -> (0, b)``."""
    X, Y = f.source, f.target
    C = C or cone(f, check=False)
    return graded_map(Y, C, lambda n: np.vstack([la.zeros(X.dim(n + 1), Y.dim(n)),
                                                   la.identity(Y.dim(n))]),
                      frame=common_frame([X, Y, f, C], margin=0))


def cone_projection(f: GradedMap, C: Optional[Complex] = None) -> GradedMap:
    """``cone(f) -> X[1]``, ``(a, b) -> a``."""
    X, Y = f.source, f.target
    C = C or cone(f, check=False)
    X1 = shift(X, 1)
    return graded_map(C, X1, lambda n: np.hstack([la.identity(X.dim(n + 1)),
                                                   la.zeros(X.dim(n + 1), Y.dim(n))]),
                      frame=common_frame([X, Y, f, C, X1], margin=0))


# -- homology --------------------------------------------------------------------

def homology_dim(X: Complex, n: int) -> int:
    p = X.p
    return X.dim(n) - la.rank(X.diff(n), p) - la.rank(X.diff(n - 1), p)


def cycles(X: Complex, n: int) -> np.ndarray:
    return la.kernel_basis(X.diff(n), X.p)


def boundaries(X: Complex, n: int) -> np.ndarray:
    return la.image_basis(X.diff(n - 1), X.p)


def homology(X: Complex, n: int) -> tuple[int, np.ndarray]:
    """Dimension of ``H^n`` and cycle representatives of a basis."""
    p = X.p
    Z = cycles(X, n)
    B = boundaries(X, n)
    reps = []
    cur = B
    for z in Z.T:
        col = z.reshape(-1, 1)
        if not la.in_span(cur, col, p):
            reps.append(z)
            cur = np.hstack([cur, col]) if cur.size else col
    R = np.array(reps, dtype=np.int64).T if reps else la.zeros(X.dim(n), 0)
    return R.shape[1], R



def induced_on_homology(f: GradedMap, n: int) -> np.ndarray:
    """Matrix of ``H^n(f)`` in the representative bases returned by :func:`homology`."""
    X, Y, p = f.source, f.target, f.p
    _, RX = homology(X, n)
    kY, RY = homology(Y, n)
    if RX.shape[1] == 0 or kY == 0:
        return la.zeros(kY, RX.shape[1])
    B = boundaries(Y, n)
    img = la.mul(f.component(n), RX, p)
    coeffs = la.solve(np.hstack([RY, B]) if B.size else RY, img, p)
    if coeffs is None:
        raise ComplexError(f"image of a cycle is not a cycle in degree {n}")
    return coeffs[:kY]


def is_quasi_isomorphism(f: GradedMap) -> bool:
    """``H^n(f)`` invertible in every degree of the check range."""
    for n in f.check_range():
        M = induced_on_homology(f, n)
        if M.shape[0] != M.shape[1] or (M.size and la.rank(M, f.p) != M.shape[0]):
            return False
    return True


@dataclass
class HomologyProfile:
    lo: int
    hi: int
    dims: list[int]
    left_tail: list[int]          # degrees lo-P .. lo-1
    right_tail: list[int]         # degrees hi+1 .. hi+Q

    @property
    def left_bounded(self) -> bool:
        return not any(self.left_tail)

    @property
    def right_bounded(self) -> bool:
        return not any(self.right_tail)

    @property
    def bounded(self) -> bool:
        return self.left_bounded and self.right_bounded

    @property
    def exact(self) -> bool:
        return self.bounded and not any(self.dims)

    def support(self) -> Optional[tuple[int, int]]:
        """Lowest and highest degree with nonzero homology, when bounded and nonzero."""
        if not self.bounded:
            return None
        nz = [self.lo + i for i, d in enumerate(self.dims) if d]
        return (min(nz), max(nz)) if nz else None

    def as_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "dims": self.dims,
                "left_tail_per_period": self.left_tail, "right_tail_per_period": self.right_tail}


def homology_profile(X: Complex) -> HomologyProfile:
    dims = [homology_dim(X, n) for n in range(X.lo, X.hi + 1)]
    left = [homology_dim(X, n) for n in range(X.lo - X.left.period, X.lo)] if X.left else []
    right = [homology_dim(X, n) for n in range(X.hi + 1, X.hi + 1 + X.right.period)] \
        if X.right else []
    return HomologyProfile(X.lo, X.hi, dims, left, right)


def profiles_match(X: Complex, Y: Complex) -> bool:
    """Same homology dimension in every degree (compared over a common frame)."""
    try:
        fr = common_frame([X, Y], margin=0)
    except UnsupportedTailError:
        fr = Frame(min(X.lo, Y.lo) - 8, max(X.hi, Y.hi) + 8, None, None)
    return all(homology_dim(X, n) == homology_dim(Y, n) for n in fr.check_range())


# -- truncations ------------------------------------------------------------------

def brutal_ge(X: Complex, n: int) -> Complex:
    """``tau_{>=n} X``: terms below ``n`` replaced by zero."""
    A = X.algebra
    hi = X.hi
    if X.right:
        hi = max(hi, n + X.right.period)
    elif n > X.hi:
        return zero_complex(A)
    lo = n
    if X.left is None and lo < X.lo:
        lo = X.lo
    terms = [X.term(k) for k in range(lo, hi + 1)]
    diffs = [X.diff(k) for k in range(lo, hi)]
    return Complex(A, lo, terms, diffs, None, X.right, validate=False)


def brutal_le(X: Complex, n: int) -> Complex:
    """``tau_{<=n} X``: terms above ``n`` replaced by zero."""
    A = X.algebra
    lo = X.lo
    if X.left:
        lo = min(lo, n - X.left.period)
    elif n < X.lo:
        return zero_complex(A)
    hi = n
    if X.right is None and hi > X.hi:
        hi = X.hi
    terms = [X.term(k) for k in range(lo, hi + 1)]
    diffs = [X.diff(k) for k in range(lo, hi)]
    return Complex(A, lo, terms, diffs, X.left, None, validate=False)


def image_submodule(X: Complex, n: int) -> tuple[Module, np.ndarray]:
    """``Im d^n`` as a submodule of ``X^{n+1}`` with its basis."""
    B = la.image_basis(X.diff(n), X.p)
    return submodule(X.term(n + 1), B), B


def intelligent_le(X: Complex, n: int) -> Complex:
    """``sigma_{<=n} X = (... -> X^{n-1} -> X^n -> Im d^n -> 0)``."""
    A, p = X.algebra, X.p
    lo = min(X.lo, n - X.left.period) if X.left else min(X.lo, n + 1)
    Im, B = image_submodule(X, n)
    terms = [X.term(k) for k in range(lo, n + 1)] + [Im]
    diffs = [X.diff(k) for k in range(lo, n)]
    if lo <= n:
        diffs.append(la.solve(B, X.diff(n), p) if B.shape[1] else la.zeros(0, X.dim(n)))
    return Complex(A, lo, terms, diffs, X.left, None, validate=False)


def intelligent_ge(X: Complex, n: int) -> Complex:
    """``sigma_{>=n} X = (0 -> Im d^{n-1} -> X^n -> X^{n+1} -> ...)``."""
    A = X.algebra
    hi = max(X.hi, n + X.right.period) if X.right else max(X.hi, n - 1)
    Im, B = image_submodule(X, n - 1)
    terms = [Im] + [X.term(k) for k in range(n, hi + 1)]
    diffs = ([B] if hi >= n else []) + [X.diff(k) for k in range(n, hi)]
    return Complex(A, n - 1, terms, diffs, None, X.right, validate=False)


def intelligent_le_inclusion(X: Complex, n: int, S: Optional[Complex] = None) -> GradedMap:
    """``sigma_{<=n} X -> X``: identities up to ``n``, the image inclusion in ``n+1``."""
    S = S or intelligent_le(X, n)
    B = la.image_basis(X.diff(n), X.p)

    def comp(k):
        if k <= n:
            return la.identity(X.dim(k))
        if k == n + 1:
            return B
        return None
    return graded_map(S, X, comp, frame=common_frame([S, X], margin=0))


def intelligent_ge_projection(X: Complex, n: int, S: Optional[Complex] = None) -> GradedMap:
    """``X -> sigma_{>=n} X``: identities from ``n`` on, ``d^{n-1}`` corestricted in ``n-1``."""
    S = S or intelligent_ge(X, n)
    p = X.p
    B = la.image_basis(X.diff(n - 1), p)

    def comp(k):
        if k >= n:
            return la.identity(X.dim(k))
        if k == n - 1:
            return la.solve(B, X.diff(n - 1), p) if B.shape[1] else la.zeros(0, X.dim(k))
        return None
    return graded_map(X, S, comp, frame=common_frame([S, X], margin=0))


def brutal_ge_inclusion(X: Complex, n: int, U: Optional[Complex] = None) -> GradedMap:
    U = U or brutal_ge(X, n)
    return graded_map(U, X, lambda k: la.identity(X.dim(k)) if k >= n else None,
                      frame=common_frame([U, X], margin=0))


def brutal_le_projection(X: Complex, n: int, V: Optional[Complex] = None) -> GradedMap:
    V = V or brutal_le(X, n)
    return graded_map(X, V, lambda k: la.identity(X.dim(k)) if k <= n else None,
                      frame=common_frame([V, X], margin=0))


def truncate_map_le(f: GradedMap, n: int) -> GradedMap:
    """``sigma_{<=n} f`` induced on intelligent truncations."""
    X, Y, p = f.source, f.target, f.p
    SX, SY = intelligent_le(X, n), intelligent_le(Y, n)
    BX = la.image_basis(X.diff(n), p)
    BY = la.image_basis(Y.diff(n), p)

    def comp(k):
        if k <= n:
            return f.component(k)
        if k == n + 1:
            if BX.shape[1] == 0 or BY.shape[1] == 0:
                return la.zeros(BY.shape[1], BX.shape[1])
            return la.solve(BY, la.mul(f.component(k), BX, p), p)
        return None
    return graded_map(SX, SY, comp, frame=common_frame([SX, SY, f], margin=0))


def terms_satisfy(X: Complex, pred) -> bool:
    """Whether ``pred`` holds for every term in the window and one tail period each side."""
    return all(pred(X.term(n)) for n in X.check_range())
