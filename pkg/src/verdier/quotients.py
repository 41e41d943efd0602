"""Membership in the boundedness classes, truncation witnesses and quotient Hom spaces.

Classes of complexes are named by :class:`HasseLabel`.  The ``∞`` classes are
homological conditions (left/right bounded or vanishing homology); the
others ask for a homotopy equivalent complex that is bounded on a side.  A
periodic tail can be removed up to homotopy exactly when it is split exact,
which is what :func:`classify` tests (on the minimal model for complexes of
projectives).

Quotient Hom spaces are computed as stabilising sequences:

* ``hom_sg``: stable Homs between syzygies, ``n -> Hom(Ω^n M, Ω^{n-k} N)``;
* ``hom_dminus_infty``: derived Homs between intelligent truncations
  ``sigma_{<=n}`` for decreasing ``n``;
* ``hom_dplus_infty``: the same over the opposite algebra after K-duality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Optional

import numpy as np

from . import linalg as la
from .algebra import (Module, direct_sum as module_sum, is_projective, opposite_algebra,
                      dual_module, projective_cover, retraction, stable_hom, submodule, syzygy)
from .complexes import (Complex, ComplexError, GradedMap, common_frame, compose, cone,
                        cone_inclusion, cone_projection, dual_complex, graded_map, homology_dim,
                        homology_profile, identity_map, induced_on_homology, intelligent_le,
                        is_chain_map, is_quasi_isomorphism, truncate_map_le, zero_map)
from .homotopy import hom_restriction_schedule
from .minimal import minimal_model
from .triangles import TriangleData, compose_triangles, intelligent_triangle, stupid_triangle

AMBIENTS = ("modules", "projectives", "injectives")


class WitnessError(ValueError):
    """A decomposition cannot be produced for this complex."""


# -- labels -------------------------------------------------------------------------

class HasseLabel(str, Enum):
    K = "K"
    INF_PLUS = "K∞+"
    INF_MINUS = "K∞−"
    INF_B = "K∞b"
    PLUS = "K+"
    MINUS = "K−"
    PLUS_B = "K+b"
    MINUS_B = "K−b"
    INF_EXACT = "K∞∅"
    B = "Kb"
    PLUS_EXACT = "K+∅"
    MINUS_EXACT = "K−∅"
    B_EXACT = "Kb∅"

    @property
    def ascii(self) -> str:
        return (self.value.replace("∞", "inf").replace("−", "-").replace("∅", "0"))

    @classmethod
    def parse(cls, text: str) -> "HasseLabel":
        t = text.strip().replace("−", "-")
        for lab in cls:
            if t in (lab.value.replace("−", "-"), lab.ascii, lab.name):
                return lab
        raise ValueError(f"unknown class label {text!r}")

    def __str__(self) -> str:
        return self.value


L = HasseLabel

# immediate successors in the inclusion diagram (smaller class -> larger classes)
COVERS: dict[HasseLabel, tuple[HasseLabel, ...]] = {
    L.B_EXACT: (L.B, L.PLUS_EXACT, L.MINUS_EXACT),
    L.PLUS_EXACT: (L.PLUS_B, L.INF_EXACT),
    L.MINUS_EXACT: (L.MINUS_B, L.INF_EXACT),
    L.B: (L.PLUS_B, L.MINUS_B),
    L.PLUS_B: (L.PLUS, L.INF_B),
    L.MINUS_B: (L.MINUS, L.INF_B),
    L.INF_EXACT: (L.INF_B,),
    L.PLUS: (L.INF_PLUS,),
    L.MINUS: (L.INF_MINUS,),
    L.INF_B: (L.INF_PLUS, L.INF_MINUS),
    L.INF_PLUS: (L.K,),
    L.INF_MINUS: (L.K,),
    L.K: (),
}


def supersets(label: HasseLabel) -> frozenset[HasseLabel]:
    """All classes containing ``label`` (including itself)."""
    out, todo = {label}, [label]
    while todo:
        for up in COVERS[todo.pop()]:
            if up not in out:
                out.add(up)
                todo.append(up)
    return frozenset(out)


def is_upward_closed(labels: Iterable[HasseLabel]) -> bool:
    labs = set(labels)
    return all(supersets(l) <= labs for l in labs)


def label_order() -> list[HasseLabel]:
    """Labels listed from the largest class down."""
    return sorted(HasseLabel, key=lambda l: (len(supersets(l)), list(HasseLabel).index(l)))


# -- classification -----------------------------------------------------------------

@dataclass
class Classification:
    labels: frozenset[HasseLabel]
    ambient: str
    homology_left_bounded: bool
    homology_right_bounded: bool
    exact: bool
    left_split: bool
    right_split: bool
    minimal: Optional[Complex] = None

    def __contains__(self, lab: HasseLabel) -> bool:
        return lab in self.labels

    def sorted(self) -> list[HasseLabel]:
        return [l for l in label_order() if l in self.labels]


def _labels_from(hl: bool, hr: bool, ex: bool, sl: bool, sr: bool) -> frozenset[HasseLabel]:
    hb = hl and hr
    out = {L.K}
    rules = [(L.INF_PLUS, hl), (L.INF_MINUS, hr), (L.INF_B, hb), (L.INF_EXACT, ex),
             (L.PLUS, sl), (L.MINUS, sr), (L.PLUS_B, sl and hb), (L.MINUS_B, sr and hb),
             (L.PLUS_EXACT, sl and ex), (L.MINUS_EXACT, sr and ex), (L.B, sl and sr),
             (L.B_EXACT, sl and sr and ex)]
    out.update(l for l, ok in rules if ok)
    return frozenset(out)


def _tail_split(X: Complex, side: str) -> bool:
    """Whether one period of the tail (hence all of it) is split exact."""
    tail = X.left if side == "left" else X.right
    if tail is None:
        return True
    degs = range(X.lo - tail.period, X.lo) if side == "left" else \
        range(X.hi + 1, X.hi + 1 + tail.period)
    p = X.p
    for k in degs:
        if homology_dim(X, k):
            return False
        Z = la.kernel_basis(X.diff(k), p)
        if 0 < Z.shape[1] < X.dim(k) and retraction(X.term(k), Z) is None:
            return False
    return True


def is_injective_module(M: Module) -> bool:
    return is_projective(dual_module(M))


def classify(X: Complex, ambient: str = "modules") -> Classification:
    """Class labels of ``X`` in ``K(modules)``, ``K(projectives)`` or ``K(injectives)``."""
    if ambient not in AMBIENTS:
        raise ValueError(f"ambient must be one of {AMBIENTS}")
    if ambient == "injectives":
        for n in X.check_range():
            if not is_injective_module(X.term(n)):
                raise ComplexError(f"term in degree {n} is not injective")
        Aop = opposite_algebra(X.algebra)
        c = classify(dual_complex(X, Aop), "projectives")
        flip = {L.INF_PLUS: L.INF_MINUS, L.INF_MINUS: L.INF_PLUS, L.PLUS: L.MINUS,
                L.MINUS: L.PLUS, L.PLUS_B: L.MINUS_B, L.MINUS_B: L.PLUS_B,
                L.PLUS_EXACT: L.MINUS_EXACT, L.MINUS_EXACT: L.PLUS_EXACT}
        return Classification(frozenset(flip.get(l, l) for l in c.labels), ambient,
                              c.homology_right_bounded, c.homology_left_bounded, c.exact,
                              c.right_split, c.left_split, None)
    prof = homology_profile(X)
    hl, hr = prof.left_bounded, prof.right_bounded
    ex = prof.exact
    mm = None
    if ambient == "projectives":
        mm = minimal_model(X).complex.compact()
        sl, sr = mm.left is None, mm.right is None
    else:
        sl, sr = _tail_split(X, "left"), _tail_split(X, "right")
    return Classification(_labels_from(hl, hr, ex, sl, sr), ambient, hl, hr, ex, sl, sr, mm)


# -- decompositions -----------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """One truncation recipe: ``U -> X -> V`` with ``U`` in ``first``, ``V`` in ``second``.

    ``degree`` is ``"one"`` (brutal, ``n = 1``), ``"zero"``, ``"below"``
    (just under the lowest homology) or ``"above"`` (the highest homology).
    """
    id: str
    kind: str
    ambient: str
    whole: HasseLabel
    first: HasseLabel
    second: HasseLabel
    degree: str
    piece_ambient: str

    @property
    def factors(self) -> tuple[HasseLabel, HasseLabel]:
        return self.first, self.second


_T21 = {
    "1": (L.INF_PLUS, L.PLUS, L.INF_B), "2": (L.INF_MINUS, L.INF_B, L.MINUS),
    "3": (L.INF_B, L.PLUS_B, L.MINUS_B), "4": (L.K, L.INF_PLUS, L.INF_MINUS),
    "5": (L.INF_PLUS, L.PLUS, L.MINUS_B), "6": (L.K, L.INF_PLUS, L.MINUS),
    "7": (L.INF_MINUS, L.PLUS_B, L.MINUS), "8": (L.K, L.PLUS, L.INF_MINUS),
    "9": (L.K, L.PLUS, L.MINUS),
}

# (whole, X-class, Y-class); brutal pieces land in (X, Y), intelligent ones in (Y, X)
_T22 = {
    "1": (L.INF_PLUS, L.PLUS, L.INF_B), "2": (L.INF_MINUS, L.INF_B, L.MINUS),
    "3": (L.INF_B, L.PLUS_B, L.MINUS_B), "4": (L.K, L.INF_PLUS, L.INF_MINUS),
    "5": (L.INF_PLUS, L.PLUS, L.MINUS_B), "6": (L.INF_MINUS, L.PLUS_B, L.MINUS),
    "7": (L.K, L.INF_PLUS, L.MINUS), "8": (L.K, L.PLUS, L.INF_MINUS),
    "9": (L.K, L.PLUS, L.MINUS),
}

_T22_EXACT = {
    "a": (L.INF_EXACT, L.MINUS_EXACT, L.PLUS_EXACT, "zero"),
    "b": (L.INF_B, L.INF_EXACT, L.PLUS_B, "below"),
    "c": (L.INF_B, L.MINUS_B, L.INF_EXACT, "above"),
    "d": (L.PLUS_B, L.B, L.PLUS_EXACT, "above"),
    "e": (L.MINUS_B, L.MINUS_EXACT, L.B, "below"),
}


def _build_table() -> dict[str, Decomposition]:
    out = {}
    for k, (t, x, y) in _T21.items():
        out[f"thm2.1-{k}"] = Decomposition(f"thm2.1-{k}", "brutal", "projectives", t, x, y,
                                           "one", "projectives")
    for k, (t, x, y) in _T22.items():
        # the truncation below the homology makes the lower piece exact in case (1)
        first, deg = (L.MINUS_EXACT, "below") if k == "1" else (y, "zero")
        out[f"thm2.2-{k}"] = Decomposition(f"thm2.2-{k}", "intelligent", "modules", t, first, x,
                                           deg, "modules")
        out[f"thm2.2-{k}/brutal"] = Decomposition(f"thm2.2-{k}/brutal", "brutal", "modules", t,
                                                  x, y, "one", "modules")
    for k, (t, u, v, deg) in _T22_EXACT.items():
        out[f"thm2.2-{k}"] = Decomposition(f"thm2.2-{k}", "intelligent", "modules", t, u, v,
                                           deg, "modules")
    out["lemma3.1"] = Decomposition("lemma3.1", "intelligent", "injectives", L.INF_PLUS,
                                    L.INF_EXACT, L.PLUS, "below", "modules")
    return out


DECOMPOSITIONS: dict[str, Decomposition] = _build_table()
PUBLIC_IDS = [k for k in DECOMPOSITIONS if "/" not in k]
SPLIT_IDS = [f"thm2.2-{k}" for k in _T22]


def _homology_degrees(X: Complex) -> tuple[Optional[int], Optional[int]]:
    """Lowest and highest degree carrying homology (``None`` when unbounded that way)."""
    prof = homology_profile(X)
    P = X.left.period if X.left else 0
    Q = X.right.period if X.right else 0
    nz = [n for n in range(X.lo - P, X.hi + Q + 1) if homology_dim(X, n)]
    lo = None if not prof.left_bounded else (min(nz) if nz else 0)
    hi = None if not prof.right_bounded else (max(nz) if nz else 0)
    return lo, hi


def truncation_degree(X: Complex, rule: str) -> int:
    if rule == "one":
        return 1
    if rule == "zero":
        return 0
    lo, hi = _homology_degrees(X)
    exact = homology_profile(X).exact
    if rule == "below":
        if lo is None:
            raise WitnessError("homology is not bounded below; no truncation degree exists")
        return 0 if exact else lo - 1
    if rule == "above":
        if hi is None:
            raise WitnessError("homology is not bounded above; no truncation degree exists")
        return 0 if exact else hi
    raise ValueError(f"unknown degree rule {rule!r}")


@dataclass
class TriangleWitness:
    decomposition: str
    triangle: TriangleData
    claims: tuple[HasseLabel, HasseLabel]
    labels: tuple[frozenset, frozenset]
    ambient: str
    certificate_ok: bool
    failures: list[str] = field(default_factory=list)

    @property
    def X(self) -> Complex:
        return self.triangle.X

    @property
    def U(self) -> Complex:
        return self.triangle.U

    @property
    def V(self) -> Complex:
        return self.triangle.V

    @property
    def n(self) -> Optional[int]:
        return self.triangle.n

    @property
    def verified(self) -> bool:
        return self.certificate_ok and self.claims[0] in self.labels[0] \
            and self.claims[1] in self.labels[1]

    def summary(self) -> dict:
        order = label_order()
        return {
            "decomposition": self.decomposition,
            "kind": self.triangle.kind,
            "n": self.n,
            "ambient": self.ambient,
            "U": repr(self.U.compact()),
            "V": repr(self.V.compact()),
            "claims": [str(c) for c in self.claims],
            "U_labels": [str(l) for l in order if l in self.labels[0]],
            "V_labels": [str(l) for l in order if l in self.labels[1]],
            "certificate": self.certificate_ok,
            "verified": self.verified,
            "failures": list(self.failures),
        }


def _finish(dec_id: str, T: TriangleData, claims, ambient: str) -> TriangleWitness:
    ok = T.verify()
    labs = (classify(T.U, ambient).labels, classify(T.V, ambient).labels)
    fails = list(T.failures)
    for name, c, lab in (("U", claims[0], labs[0]), ("V", claims[1], labs[1])):
        if c not in lab:
            fails.append(f"{name} is not in {c}")
    return TriangleWitness(dec_id, T, tuple(claims), labs, ambient, ok, fails)


def _check_ambient(X: Complex, dec: Decomposition) -> None:
    if dec.ambient == "projectives":
        for k in X.check_range():
            if not is_projective(X.term(k)):
                raise WitnessError(f"{dec.id} needs projective terms (degree {k})")
    c = classify(X, dec.ambient)
    if dec.whole not in c.labels:
        raise WitnessError(f"{dec.id} needs X in {dec.whole}; X has {sorted(map(str, c.labels))}")


def star_witness(X: Complex, decomposition_id: str, n: Optional[int] = None,
                 check: bool = True) -> TriangleWitness:
    """Truncation triangle for ``X`` with piece labels and certificate checked."""
    dec = DECOMPOSITIONS.get(decomposition_id)
    if dec is None:
        raise WitnessError(f"unknown decomposition {decomposition_id!r}")
    if check:
        _check_ambient(X, dec)
    deg = truncation_degree(X, dec.degree) if n is None else n
    T = stupid_triangle(X, deg) if dec.kind == "brutal" else intelligent_triangle(X, deg)
    return _finish(dec.id, T, dec.factors, dec.piece_ambient)


def split_witness(X: Complex, decomposition_id: str) -> tuple[TriangleWitness, TriangleWitness]:
    """Both orders: the intelligent witness (lower piece first) and the brutal one."""
    if decomposition_id not in SPLIT_IDS:
        raise WitnessError(f"split witnesses exist for {SPLIT_IDS}")
    return (star_witness(X, decomposition_id),
            star_witness(X, decomposition_id + "/brutal"))


def compose_tstructures(outer: TriangleWitness, inner: TriangleWitness,
                        claims: Optional[tuple[HasseLabel, HasseLabel]] = None) -> TriangleWitness:
    """Refine ``outer`` by ``inner`` where ``inner`` decomposes one of its pieces.

    If ``inner.X`` is ``outer.V`` the result is ``F -> X -> inner.V`` with
    ``F`` the fiber of ``X -> outer.V -> inner.V``; if it is ``outer.U`` the
    result is ``inner.U -> X -> cone``.  Default claims keep the outer label on
    the untouched side and the inner label on the refined one.
    """
    if inner.X is outer.V:
        T = compose_triangles(outer.triangle, inner.triangle)
        default = (outer.claims[0], inner.claims[1])
    elif inner.X is outer.U:
        u = compose(outer.triangle.u, inner.triangle.u)
        C = cone(u, check=False)
        I = identity_map(C)
        T = TriangleData(inner.U, outer.X, C, u, cone_inclusion(u, C),
                         cone_projection(u, C), C, I, I, zero_map(C, C, -1), "composite", None)
        default = (inner.claims[0], outer.claims[1])
    else:
        raise WitnessError("inner witness must decompose a piece of the outer one")
    name = f"{outer.decomposition}∘{inner.decomposition}"
    return _finish(name, T, claims or default, outer.ambient)


# -- quotient Hom spaces ----------------------------------------------------------------

@dataclass
class QuotientHomResult:
    dimension: Optional[int]
    stabilized_at: Optional[int]
    schedule: list[int]
    stabilized: bool
    steps: list[int] = field(default_factory=list)
    window: int = 3
    note: str = ""

    def as_dict(self) -> dict:
        return {"dimension": self.dimension, "stabilized": self.stabilized,
                "stabilized_at": self.stabilized_at, "schedule": self.schedule,
                "steps": self.steps, "window": self.window, "note": self.note}

    def describe(self) -> str:
        if self.stabilized:
            return f"dim {self.dimension}, stabilized at n={self.stabilized_at}"
        return f"no stabilization within {len(self.schedule)} steps: {self.schedule}" + \
            (f" ({self.note})" if self.note else "")


def stabilize(value: Callable[[int], int], steps: Iterable[int], s: int = 3,
              cap: int = 24) -> QuotientHomResult:
    """Evaluate ``value`` along ``steps`` until ``s`` consecutive values agree."""
    if s < 1 or cap < s:
        raise ValueError("need s >= 1 and cap >= s")
    sched, seen = [], []
    note = ""
    for i, n in enumerate(steps):
        if i >= cap:
            break
        try:
            v = value(n)
        except _TooLarge as exc:
            note = str(exc)
            break
        sched.append(v)
        seen.append(n)
        if len(sched) >= s and len(set(sched[-s:])) == 1:
            return QuotientHomResult(v, n, sched, True, seen, s)
    return QuotientHomResult(None, None, sched, False, seen, s, note)


class _TooLarge(RuntimeError):
    pass


def hom_sg(M: Module, N: Module, k: int = 0, s: int = 3, cap: int = 24,
           size_limit: int = 400) -> QuotientHomResult:
    """``Hom(M, N[k])`` in the singularity category from stable Homs of syzygies."""
    omegas: dict[tuple[int, int], Module] = {}

    def omega(which: int, n: int) -> Module:
        key = (which, n)
        if key not in omegas:
            base = M if which == 0 else N
            mod = base if n == 0 else syzygy(omega(which, n - 1))
            if mod.dim > size_limit:
                raise _TooLarge(f"syzygy of dimension {mod.dim} exceeds the size limit")
            omegas[key] = mod
        return omegas[key]

    def value(n: int) -> int:
        return stable_hom(omega(0, n), omega(1, n - k)).dim

    n0 = max(0, k)
    return stabilize(value, range(n0, n0 + cap), s, cap)


@dataclass
class ProjectiveModel:
    """``eps: Q -> W`` with ``Q`` projective and ``cone(eps)`` exact above ``depth``."""
    complex: Complex
    eps: GradedMap
    depth: int


def projective_model(W: Complex, depth: int) -> ProjectiveModel:
    """Projective complex mapping quasi-isomorphically onto ``W`` in degrees above ``depth``.

    Built top-down: ``Q^k`` covers the cycles of ``cone(eps)`` in degree ``k``,
    i.e. pairs ``(q, w)`` with ``d q = 0`` and ``eps q + d w = 0``.
    """
    if W.right is not None:
        raise ComplexError("projective models need a right bounded complex")
    A, p = W.algebra, W.p
    top = W.hi
    while top > W.lo and W.dim(top) == 0 and W.left is None:
        top -= 1
    depth = min(depth, top)
    Q: dict[int, Module] = {}
    dQ: dict[int, np.ndarray] = {}
    eps: dict[int, np.ndarray] = {}
    for k in range(top, depth - 1, -1):
        Qn = Q.get(k + 1)
        qd = Qn.dim if Qn is not None else 0
        wd = W.dim(k)
        rows = []
        if qd:
            rows.append(np.hstack([dQ.get(k + 1, la.zeros(0, qd)), la.zeros(
                dQ.get(k + 1, la.zeros(0, qd)).shape[0], wd)]))
            rows.append(np.hstack([eps[k + 1], W.diff(k)]))
        else:
            rows.append(W.diff(k))
        Mx = np.vstack([r for r in rows if r.shape[0]]) if any(r.shape[0] for r in rows) \
            else la.zeros(0, qd + wd)
        basis = la.kernel_basis(Mx, p) if Mx.shape[0] else la.identity(qd + wd)
        amb = module_sum(Qn, W.term(k)) if Qn is not None else W.term(k)
        Nk = submodule(amb, basis)
        cov = projective_cover(Nk)
        pi = la.mul(basis, cov.matrix, p)
        Q[k] = cov.source
        if Qn is not None:
            dQ[k] = np.mod(-pi[:qd], p)
        eps[k] = pi[qd:]
    lo = depth
    terms = [Q[k] for k in range(lo, top + 1)]
    diffs = [dQ[k] for k in range(lo, top)]
    Qc = Complex(A, lo, terms, diffs, validate=False)
    e = GradedMap(Qc, W, lo, [eps[k] for k in range(lo, top + 1)], None, None)
    return ProjectiveModel(Qc, e, depth)


def _derived_hom_le(X: Complex, Y: Complex, n: int, margin: int) -> int:
    """``dim Hom_D(sigma_{<=n} X, sigma_{<=n} Y)`` through a truncated projective model."""
    W = intelligent_le(X, n)
    V = intelligent_le(Y, n)
    if W.is_zero() or V.is_zero():
        return 0
    model = projective_model(W, n - 2 * margin)
    return hom_restriction_schedule(model.complex, V, [n - margin])[0]


def _right_bounded(X: Complex) -> Complex:
    X = X.compact()
    if X.right is not None:
        raise ComplexError("expected a right bounded complex (no right tail)")
    return X


def hom_dminus_infty(X: Complex, Y: Complex, step: int = 1, s: int = 3, cap: int = 24,
                     margin: int = 6) -> QuotientHomResult:
    """Hom in right bounded complexes modulo bounded homology, for right bounded ``X, Y``.

    The schedule is ``dim Hom_D(sigma_{<=n} X, sigma_{<=n} Y)`` for
    ``n = n0, n0 - step, ...``; each value uses a projective model of the
    source down to ``margin`` degrees below ``n``.
    """
    X, Y = _right_bounded(X), _right_bounded(Y)
    if X.is_zero() or Y.is_zero():
        return QuotientHomResult(0, None, [0] * s, True, [], s, "zero object")
    n0 = min(X.lo, Y.lo)
    res = stabilize(lambda n: _derived_hom_le(X, Y, n, margin),
                    (n0 - i * step for i in range(cap)), s, cap)
    return res


def hom_dplus_infty(X: Complex, Y: Complex, step: int = 1, s: int = 3, cap: int = 24,
                    margin: int = 6) -> QuotientHomResult:
    """Mirror of :func:`hom_dminus_infty` for left bounded complexes via K-duality."""
    X, Y = X.compact(), Y.compact()
    if X.left is not None or Y.left is not None:
        raise ComplexError("expected a left bounded complex (no left tail)")
    Aop = opposite_algebra(X.algebra)
    res = hom_dminus_infty(dual_complex(Y, Aop), dual_complex(X, Aop), step, s, cap, margin)
    res.steps = [-n for n in res.steps]
    if res.stabilized_at is not None:
        res.stabilized_at = -res.stabilized_at
    return res


# -- truncation of cones ------------------------------------------------------------------

def cone_comparison(f: GradedMap, n: int) -> GradedMap:
    """``cone(sigma_{<=n} f) -> sigma_{<=n} cone(f)``."""
    X, Y, p = f.source, f.target, f.p
    tf = truncate_map_le(f, n)
    C1 = cone(tf, check=False)
    Cf = cone(f, check=False)
    C2 = intelligent_le(Cf, n)
    BX = la.image_basis(X.diff(n), p)
    BY = la.image_basis(Y.diff(n), p)
    Bc = la.image_basis(Cf.diff(n), p)

    def comp(k):
        if k <= n - 1:
            return la.identity(X.dim(k + 1) + Y.dim(k))
        if k == n:
            return la.block_diag(BX, la.identity(Y.dim(n)))
        if k == n + 1:
            rY = BY.shape[1]
            if rY == 0 or Bc.shape[1] == 0:
                return la.zeros(Bc.shape[1], rY)
            vec = np.vstack([la.zeros(X.dim(n + 2), rY), BY])
            return la.solve(Bc, vec, p)
        return None
    return graded_map(C1, C2, comp, frame=common_frame([C1, C2, tf]))


def check_cone_comparison(f: GradedMap, n: int) -> bool:
    """Whether the comparison map is a quasi-isomorphism (it need not be)."""
    g = cone_comparison(f, n)
    return is_chain_map(g)[0] and is_quasi_isomorphism(g)


@dataclass
class ConeComparisonReport:
    chain_map: bool
    quasi_isomorphism: bool
    degree_n_cokernel: int        # dim coker of H^n of the comparison map
    kernel_above: int             # dim ker H^{n+1}(f)
    other_degrees_iso: bool
    injective_at_n: bool

    @property
    def defect_explained(self) -> bool:
        """Isomorphism away from ``n``; in degree ``n`` injective with cokernel ``ker H^{n+1}(f)``."""
        return self.chain_map and self.other_degrees_iso and self.injective_at_n \
            and self.degree_n_cokernel == self.kernel_above


def cone_comparison_report(f: GradedMap, n: int) -> ConeComparisonReport:
    g = cone_comparison(f, n)
    p = f.p
    others, inj, coker = True, True, 0
    for k in g.check_range():
        M = induced_on_homology(g, k)
        r = la.rank(M, p) if M.size else 0
        if k == n:
            inj = r == M.shape[1]
            coker = M.shape[0] - r
        elif not (M.shape[0] == M.shape[1] == r):
            others = False
    F = induced_on_homology(f, n + 1)
    ker = F.shape[1] - (la.rank(F, p) if F.size else 0)
    return ConeComparisonReport(is_chain_map(g)[0], is_quasi_isomorphism(g), coker, ker,
                                others, inj)


__all__ = [
    "HasseLabel", "COVERS", "supersets", "is_upward_closed", "label_order", "Classification",
    "classify", "Decomposition", "DECOMPOSITIONS", "PUBLIC_IDS", "SPLIT_IDS", "TriangleWitness",
    "WitnessError", "star_witness", "split_witness", "compose_tstructures", "truncation_degree",
    "QuotientHomResult", "stabilize", "hom_sg", "ProjectiveModel", "projective_model",
    "hom_dminus_infty", "hom_dplus_infty", "cone_comparison", "check_cone_comparison",
    "ConeComparisonReport", "cone_comparison_report",
    "is_injective_module", "AMBIENTS",
]
