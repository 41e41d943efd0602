"""Linear systems for chain maps and homotopies between eventually periodic complexes.

Unknown graded maps are written in coordinates of degreewise ``Hom_A`` bases.
Inside a window the coordinates are free; outside it they follow the tail rule
of the common frame (the eventually periodic ansatz).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg as la
from .algebra import hom_space
from .complexes import (Complex, ComplexError, Frame, GradedMap, Tail, UnsupportedTailError,
                        common_frame, compose, cone, homology_dim, identity_map, is_chain_map,
                        is_homotopy, profiles_match, replicate, zero_map)

DEFAULT_MARGIN = 4
# homotopies may alternate in sign along a tail, so their period is a multiple of the frame's
HOMOTOPY_PERIOD_FACTOR = 2


class MapSpace:
    """Graded maps ``X -> Y`` of a fixed degree with free components on ``[lo, hi]``."""

    def __init__(self, X: Complex, Y: Complex, degree: int, lo: int, hi: int,
                 left: Optional[Tail], right: Optional[Tail]):
        self.X, self.Y, self.degree = X, Y, degree
        self.lo, self.hi = lo, hi
        self.left, self.right = left, right
        self.bases: dict[int, np.ndarray] = {}
        self.offsets: dict[int, int] = {}
        off = 0
        for n in range(lo, hi + 1):
            H = hom_space(X.term(n), Y.term(n + degree))
            self.bases[n] = H
            self.offsets[n] = off
            off += len(H)
        self.nvars = off
        self._rep_cache: dict[int, tuple[int, np.ndarray]] = {}

    def basis_at(self, n: int) -> tuple[int, np.ndarray]:
        """Offset of the window degree governing ``n`` and the (replicated) basis there."""
        hit = self._rep_cache.get(n)
        if hit is not None:
            return hit
        if self.lo <= n <= self.hi:
            out = (self.offsets[n], self.bases[n])
        elif n < self.lo and self.left is not None:
            off, H = self.basis_at(n + self.left.period)
            out = (off, np.array([replicate(h, self.left.growth) for h in H])
                   .reshape(len(H), self.Y.dim(n + self.degree), self.X.dim(n)))
        elif n > self.hi and self.right is not None:
            off, H = self.basis_at(n - self.right.period)
            out = (off, np.array([replicate(h, self.right.growth) for h in H])
                   .reshape(len(H), self.Y.dim(n + self.degree), self.X.dim(n)))
        else:
            out = (0, np.zeros((0, self.Y.dim(n + self.degree), self.X.dim(n)), dtype=np.int64))
        self._rep_cache[n] = out
        return out

    def to_map(self, coeffs: np.ndarray) -> GradedMap:
        p = self.X.p
        comps = []
        for n in range(self.lo, self.hi + 1):
            H = self.bases[n]
            c = coeffs[self.offsets[n]:self.offsets[n] + len(H)]
            if len(H):
                comps.append(np.mod(np.tensordot(c, H, axes=1), p))
            else:
                comps.append(la.zeros(self.Y.dim(n + self.degree), self.X.dim(n)))
        return GradedMap(self.X, self.Y, self.lo, comps, self.left, self.right, self.degree)

    def term_block(self, n: int, L: Optional[np.ndarray], R: Optional[np.ndarray]) -> np.ndarray:
        """Matrix (rows: flattened ``L comp(n) R``; columns: all unknowns)."""
        p = self.X.p
        off, H = self.basis_at(n)
        rows = (L.shape[0] if L is not None else H.shape[1]) * (R.shape[1] if R is not None else H.shape[2])
        out = la.zeros(rows, self.nvars)
        for j, h in enumerate(H):
            v = h
            if L is not None:
                v = la.mul(L, v, p)
            if R is not None:
                v = la.mul(v, R, p)
            out[:, off + j] = (out[:, off + j] + v.reshape(-1)) % p
        return out


def _solve_frame(X: Complex, Y: Complex, extra=(), margin: int = DEFAULT_MARGIN) -> Frame:
    return common_frame([X, Y, *extra], margin=max(margin, 1))


def _multiplied(t: Optional[Tail], mult: int) -> Optional[Tail]:
    return None if t is None else Tail(t.period * mult, t.growth ** mult)


def _homotopy_space(X: Complex, Y: Complex, fr: Frame, degree: int = -1,
                    extend: int = 0) -> MapSpace:
    """Degree ``degree`` maps whose tails repeat with ``HOMOTOPY_PERIOD_FACTOR`` times the period.

    ``extend`` pushes the free window that many (multiplied) periods past the frame.
    """
    left = _multiplied(fr.left, HOMOTOPY_PERIOD_FACTOR)
    right = _multiplied(fr.right, HOMOTOPY_PERIOD_FACTOR)
    lo = fr.a - (extend * left.period if left else 0)
    hi = fr.b + (extend * right.period if right else 1)
    return MapSpace(X, Y, degree, lo, hi, left, right)


def _padded_range(S: MapSpace) -> range:
    P = S.left.period if S.left else 0
    Q = S.right.period if S.right else 0
    return range(S.lo - P - 2, S.hi + Q + 3)


def _homotopy_equations(S: MapSpace, f: Optional[GradedMap], eq_range: range):
    """Rows of ``d h + h d`` and the right-hand side ``f`` for each degree."""
    X, Y, p = S.X, S.Y, S.X.p
    blocks, rhs = [], []
    for n in eq_range:
        # (d_Y h + h d_X)^n  with h of degree -1
        blk = (S.term_block(n, Y.diff(n - 1), None) + S.term_block(n + 1, None, X.diff(n))) % p
        blocks.append(blk)
        if f is not None:
            rhs.append(f.component(n).reshape(-1, 1))
        else:
            rhs.append(la.zeros(blk.shape[0], 1))
    M = np.vstack(blocks) if blocks else la.zeros(0, S.nvars)
    b = np.vstack(rhs) if rhs else la.zeros(0, 1)
    return M, b


def null_homotopy(f: GradedMap, margin: int = DEFAULT_MARGIN) -> Optional[GradedMap]:
    """Some ``h`` with ``f = d h + h d`` (eventually periodic ansatz), or ``None``."""
    X, Y = f.source, f.target
    fr = _solve_frame(X, Y, [f], margin)
    S = _homotopy_space(X, Y, fr)
    M, b = _homotopy_equations(S, f, _padded_range(S))
    if S.nvars == 0:
        return S.to_map(np.zeros(0, dtype=np.int64)) if not b.any() else None
    sol = la.solve(M, b, X.p)
    if sol is None:
        return None
    h = S.to_map(sol[:, 0])
    if not is_homotopy(f, zero_map(X, Y), h):
        raise ComplexError("homotopy solver produced an invalid certificate")
    return h


@dataclass
class ContractibilityResult:
    contractible: bool
    homotopy: Optional[GradedMap] = None
    reason: str = ""


def is_contractible(X: Complex, margin: int = DEFAULT_MARGIN) -> ContractibilityResult:
    """Search for ``s`` with ``id = d s + s d``."""
    if X.is_zero():
        return ContractibilityResult(True, zero_map(X, X, -1), "zero complex")
    for n in X.check_range():
        if homology_dim(X, n):
            return ContractibilityResult(False, None, f"nonzero homology in degree {n}")
    h = null_homotopy(identity_map(X), margin)
    if h is None:
        return ContractibilityResult(False, None, "no periodic contracting homotopy")
    return ContractibilityResult(True, h, "contracting homotopy found")


# -- Hom in the homotopy category ----------------------------------------------------

@dataclass
class HomKResult:
    dim: int
    chain_map_dim: int
    null_dim: int
    frame: Frame
    basis: list[GradedMap] = field(default_factory=list)
    method: str = "direct"
    schedule: list[int] = field(default_factory=list)
    stabilized: bool = True


def chain_map_space(X: Complex, Y: Complex, margin: int = DEFAULT_MARGIN,
                    frame: Optional[Frame] = None) -> tuple[MapSpace, np.ndarray]:
    """The map space and a coefficient basis (columns) of its chain maps."""
    fr = frame or _solve_frame(X, Y, (), margin)
    S = MapSpace(X, Y, 0, fr.a, fr.b, fr.left, fr.right)
    p = X.p
    blocks = []
    for n in fr.check_range():
        blocks.append((S.term_block(n, Y.diff(n), None) - S.term_block(n + 1, None, X.diff(n))) % p)
    M = np.vstack(blocks) if blocks else la.zeros(0, S.nvars)
    Z = la.kernel_basis(M, p) if S.nvars else la.zeros(0, 0)
    return S, Z


def _hom_raw(X: Complex, Y: Complex, margin: int, window: Optional[range] = None,
             layout: Optional[tuple[Complex, Complex]] = None):
    """Chain maps and null-homotopic maps as raw component vectors over ``window``.

    ``layout`` gives a pair of complexes whose term dimensions fix the vector
    layout (used when ``X``, ``Y`` are truncations of them).
    """
    p = X.p
    LX, LY = layout or (X, Y)

    def flat(m, n):
        out = np.zeros((LY.dim(n), LX.dim(n)), dtype=np.int64)
        out[: m.shape[0], : m.shape[1]] = m
        return out.reshape(-1)

    fr = _solve_frame(X, Y, (), margin)
    S, Z = chain_map_space(X, Y, frame=fr)
    H = _homotopy_space(X, Y, fr, extend=1)
    window = window if window is not None else _padded_range(H)
    maps = [S.to_map(z) for z in Z.T]
    width = sum(LY.dim(n) * LX.dim(n) for n in window)
    zraw = np.array([np.concatenate([flat(f.component(n), n) for n in window])
                     for f in maps], dtype=np.int64).reshape(len(maps), width)
    nraw = []
    for j in range(H.nvars):
        e = np.zeros(H.nvars, dtype=np.int64)
        e[j] = 1
        h = H.to_map(e)
        comps = [flat(np.mod(la.mul(Y.diff(n - 1), h.component(n), p)
                             + la.mul(h.component(n + 1), X.diff(n), p), p), n)
                 for n in window]
        nraw.append(np.concatenate(comps))
    nraw = np.array(nraw, dtype=np.int64).reshape(len(nraw), width)
    return fr, maps, zraw, nraw


def _quotient_dim(zraw: np.ndarray, nraw: np.ndarray, p: int) -> int:
    rn = la.rank(nraw, p) if nraw.size else 0
    stacked = np.vstack([zraw, nraw]) if nraw.size else zraw
    rz = la.rank(stacked, p) if stacked.size else 0
    return rz - rn


def homotopy_hom(X: Complex, Y: Complex, margin: int = DEFAULT_MARGIN,
                 want_basis: bool = False, levels: int = 6) -> HomKResult:
    """``Hom_K(X, Y)``: chain maps modulo null-homotopic ones.

    When a tail of ``X`` faces a tail of ``Y`` on the same side, maps there are
    not determined by finitely many components; the value is then computed as
    the inverse limit of ``Hom_K(tau_{>=-N} X, tau_{<=N} Y)``, i.e. from the
    stable images of the restriction maps between truncation levels.
    """
    p = X.p
    cut_left = X.left is not None and Y.left is not None
    cut_right = X.right is not None and Y.right is not None
    if not (cut_left or cut_right):
        fr, maps, zraw, nraw = _hom_raw(X, Y, margin)
        if not maps:
            return HomKResult(0, 0, 0, fr)
        dim = _quotient_dim(zraw, nraw, p)
        basis = _pick_basis(maps, zraw, nraw, p) if want_basis else []
        return HomKResult(dim, len(maps), len(maps) - dim, fr, basis)
    return _homotopy_hom_limit(X, Y, margin, levels, cut_left, cut_right, want_basis)


def _pick_basis(maps, zraw, nraw, p):
    cur = la.row_basis(nraw, p) if nraw.size else np.zeros((0, zraw.shape[1]), dtype=np.int64)
    r = cur.shape[0]
    out = []
    for f, row in zip(maps, zraw):
        trial = np.vstack([cur, row]) if cur.size else row.reshape(1, -1)
        if la.rank(trial, p) > r:
            cur, r = trial, r + 1
            out.append(f)
    return out


def _homotopy_hom_limit(X: Complex, Y: Complex, margin: int, levels: int,
                        cut_left: bool, cut_right: bool, want_basis: bool = False) -> HomKResult:
    from .complexes import brutal_ge, brutal_le
    p = X.p
    L = 1
    for t in (X.left, Y.left) if cut_left else ():
        L = L * t.period // np.gcd(L, t.period)
    R = 1
    for t in (X.right, Y.right) if cut_right else ():
        R = R * t.period // np.gcd(R, t.period)
    lo0, hi0 = min(X.lo, Y.lo), max(X.hi, Y.hi)
    lo_u = lo0 - levels * L - 1 if cut_left else lo0 - 2
    hi_u = hi0 + levels * R + 1 if cut_right else hi0 + 2
    window = range(lo_u, hi_u + 1)
    offsets, off = {}, 0
    for n in window:
        offsets[n] = (off, off + Y.dim(n) * X.dim(n))
        off += Y.dim(n) * X.dim(n)

    def bounds(k):
        return (lo0 - k * L if cut_left else lo_u, hi0 + k * R if cut_right else hi_u)

    def mask(k):
        lo, hi = bounds(k)
        m = np.zeros(off, dtype=bool)
        for n in window:
            if lo <= n <= hi:
                a, b = offsets[n]
                m[a:b] = True
        return m

    data = []
    for k in range(levels + 1):
        lo, hi = bounds(k)
        Xk = brutal_ge(X, lo) if cut_left else X
        Yk = brutal_le(Y, hi) if cut_right else Y
        fr, maps, zraw, nraw = _hom_raw(Xk, Yk, margin, window, (X, Y))
        data.append((fr, maps, zraw, nraw))
    top = data[-1][2]
    schedule = []
    for k in range(levels - 1):
        _, _, _, nraw = data[k]
        restricted = top * mask(k)
        schedule.append(_quotient_dim(restricted, nraw, p) if restricted.size else 0)
    tail = schedule[-3:]
    stabilized = len(tail) == 3 and len(set(tail)) == 1
    fr = data[-1][0]
    dim = schedule[-1] if schedule else 0
    basis, method = [], "inverse-limit"
    if want_basis and dim:
        # periodic chain maps X -> Y, kept if they span the limit
        S, Z = chain_map_space(X, Y, margin)
        maps = [S.to_map(z) for z in Z.T]
        if maps:
            raw = np.array([np.concatenate([f.component(n).reshape(-1) for n in window])
                            for f in maps], dtype=np.int64) * mask(levels - 2)
            basis = _pick_basis(maps, raw, data[levels - 2][3], p)
        if len(basis) != dim:
            basis, method = [], "inverse-limit (no periodic representatives)"
    return HomKResult(dim, len(data[-1][1]), 0, fr, basis, method, schedule, stabilized)


def hom_restriction_schedule(X: Complex, Y: Complex, cuts: list[int],
                             margin: int = DEFAULT_MARGIN) -> list[int]:
    """For each cut ``c``: dim of the image of ``Hom_K(X, Y) -> Hom_K(tau_{>=c} X, Y)``.

    ``X`` must be bounded (no tails).  When ``X`` is a truncated
    projective resolution, the images for cuts well above its bottom no
    longer see the truncation.
    """
    from .complexes import brutal_ge
    if X.left is not None or X.right is not None:
        raise UnsupportedTailError("restriction schedule needs a bounded source")
    p = X.p
    window = range(X.lo - 1, X.hi + 2)
    _, maps, zraw, _ = _hom_raw(X, Y, margin, window)
    out = []
    for c in cuts:
        m = np.concatenate([np.full(Y.dim(n) * X.dim(n), n >= c) for n in window])
        _, _, _, nraw = _hom_raw(brutal_ge(X, c), Y, margin, window, (X, Y))
        out.append(_quotient_dim(zraw * m, nraw, p) if maps else 0)
    return out


def homotopy_hom_dim(X: Complex, Y: Complex, margin: int = DEFAULT_MARGIN) -> int:
    return homotopy_hom(X, Y, margin).dim


# -- homotopy equivalences -------------------------------------------------------------

@dataclass
class HomotopyEquivalence:
    """``forward: X -> Y`` and ``backward: Y -> X`` with
    ``backward o forward - id = d hx + hx d`` and ``forward o backward - id = d hy + hy d``."""
    forward: GradedMap
    backward: GradedMap
    hx: GradedMap
    hy: GradedMap

    def verify(self) -> bool:
        f, g = self.forward, self.backward
        X, Y = f.source, f.target
        if not (is_chain_map(f)[0] and is_chain_map(g)[0]):
            return False
        return is_homotopy(compose(g, f), identity_map(X), self.hx) and \
            is_homotopy(compose(f, g), identity_map(Y), self.hy)


def equivalence_from_contraction(f: GradedMap, C: Complex, s: GradedMap) -> HomotopyEquivalence:
    """Read off an inverse of ``f`` from a contraction ``s`` of ``C = cone(f)``."""
    X, Y, p = f.source, f.target, f.p
    fr = common_frame([X, Y, f, C, s], margin=0)

    def block(n, rows, cols):
        m = s.component(n)
        return m[rows, :][:, cols]

    def g_comp(n):
        # s^n : X^{n+1} (+) Y^n -> X^n (+) Y^{n-1}; g^n is its (X^n, Y^n) block
        a1 = X.dim(n + 1)
        return block(n, slice(0, X.dim(n)), slice(a1, a1 + Y.dim(n)))

    def hx_comp(n):
        # H^n = a^{n-1}: X^n -> X^{n-1}
        return block(n - 1, slice(0, X.dim(n - 1)), slice(0, X.dim(n)))

    def hy_comp(n):
        a1 = X.dim(n + 1)
        c = block(n, slice(X.dim(n), X.dim(n) + Y.dim(n - 1)), slice(a1, a1 + Y.dim(n)))
        return np.mod(-c, p)

    lo, hi = fr.a - 1, fr.b + 1
    g = GradedMap(Y, X, lo, [g_comp(n) for n in range(lo, hi + 1)], fr.left, fr.right)
    hx = GradedMap(X, X, lo, [hx_comp(n) for n in range(lo, hi + 1)], fr.left, fr.right, -1)
    hy = GradedMap(Y, Y, lo, [hy_comp(n) for n in range(lo, hi + 1)], fr.left, fr.right, -1)
    return HomotopyEquivalence(f, g, hx, hy)


@dataclass
class EquivalenceSearch:
    status: str                       # "equivalent" | "not-equivalent" | "not-found"
    equivalence: Optional[HomotopyEquivalence] = None
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.status == "equivalent"


def try_equivalence(f: GradedMap, margin: int = DEFAULT_MARGIN) -> Optional[HomotopyEquivalence]:
    """If ``cone(f)`` is contractible, return ``f`` completed to a homotopy equivalence."""
    C = cone(f)
    res = is_contractible(C, margin)
    if not res.contractible:
        return None
    eq = equivalence_from_contraction(f, C, res.homotopy)
    if not eq.verify():
        raise ComplexError("extracted homotopy inverse failed verification")
    return eq


def homotopy_equivalent(X: Complex, Y: Complex, attempts: int = 8, seed: int = 0,
                        margin: int = DEFAULT_MARGIN,
                        candidates: Optional[list[GradedMap]] = None) -> EquivalenceSearch:
    """Semi-decision for ``X ~ Y`` in the homotopy category.

    Candidate chain maps (given ones first, then random elements of the
    periodic chain-map space) are tested for a contractible cone.  Differing
    homology or differing class labels give a definite negative answer;
    otherwise failure is "not found".
    """
    if not profiles_match(X, Y):
        return EquivalenceSearch("not-equivalent", None, "homology differs")
    from .quotients import classify
    try:
        if classify(X).labels != classify(Y).labels:
            return EquivalenceSearch("not-equivalent", None, "class labels differ")
    except UnsupportedTailError:
        pass
    try:
        for f in candidates or []:
            eq = try_equivalence(f, margin)
            if eq is not None:
                return EquivalenceSearch("equivalent", eq, "given candidate")
        S, Z = chain_map_space(X, Y, margin)
        rng = np.random.default_rng(seed)
        tries = [np.zeros(Z.shape[1], dtype=np.int64)] if Z.shape[1] == 0 else []
        for _ in range(attempts):
            tries.append(rng.integers(0, X.p, size=Z.shape[1]))
        for c in tries:
            coeffs = la.mul(Z, c.reshape(-1, 1), X.p)[:, 0] if Z.shape[1] else \
                np.zeros(S.nvars, dtype=np.int64)
            eq = try_equivalence(S.to_map(coeffs), margin)
            if eq is not None:
                return EquivalenceSearch("equivalent", eq, "random chain map")
    except UnsupportedTailError as exc:
        return EquivalenceSearch("not-found", None, str(exc))
    return EquivalenceSearch("not-found", None, f"{attempts} random chain maps tried")


def identity_equivalence(X: Complex) -> HomotopyEquivalence:
    i = identity_map(X)
    z = zero_map(X, X, -1)
    return HomotopyEquivalence(i, i, z, z)


__all__ = [
    "MapSpace", "null_homotopy", "is_contractible", "ContractibilityResult", "homotopy_hom",
    "homotopy_hom_dim", "hom_restriction_schedule", "chain_map_space", "HomotopyEquivalence",
    "homotopy_equivalent", "EquivalenceSearch", "try_equivalence", "equivalence_from_contraction",
    "identity_equivalence",
]
