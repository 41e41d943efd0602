"""Plain-text format for algebras and complexes.

A file starts with the header line ``verdier-format 1`` and contains blocks
closed by ``end``.  ``#`` starts a comment.  Matrices are written row by row,
one row per line, entries as integers (reduced mod ``p``).

Algebra block::

    algebra NAME
      p 101
      dim 2
      labels 1 x
      unit 1 0
      const I J K VALUE        # e_I e_J has coefficient VALUE on e_K (repeatable)
      radical v_1 ... v_dim    # one basis vector of the radical per line
      idempotent v_1 ... v_dim # complete set of primitive orthogonal idempotents
    end

or a one-liner for the built-ins: ``algebra builtin dual_numbers`` (also
``string_algebra``, ``a2_path``, ``semisimple n=2``; an optional ``p=5``).

Module block (explicit action of every algebra basis element)::

    module NAME dim D
      act 0
        <D rows of D entries>
      act 1
        ...
    end

or a one-liner: ``module NAME regular | free R | projective T | simple T | zero``.

Complex block::

    complex NAME
      term N MODULE            # one line per window degree, consecutive
      diff N                   # d^N : X^N -> X^{N+1}, followed by its rows
        <rows>
      tail left PERIOD [GROWTH]
      tail right PERIOD [GROWTH]
    end

Missing differentials are zero.  A complex block with no terms is the zero
complex.

Map block between two complexes defined earlier in the file::

    map NAME SOURCE TARGET [degree D]
      comp N                   # f^N : SOURCE^N -> TARGET^{N+D}, followed by its rows
        <rows>
      tail left PERIOD [GROWTH]
    end

Components between the first and last listed degree that are not given are
zero; tails extend the map periodically like those of a complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .algebra import (Algebra, AlgebraError, Module, builtin, free_module,
                      indecomposable_projective, regular_module, simple_module, zero_module)
from .complexes import Complex, GradedMap, Tail, zero_complex

HEADER = "verdier-format 1"


class FormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class Document:
    algebra: Optional[Algebra] = None
    modules: dict[str, Module] = field(default_factory=dict)
    complexes: dict[str, Complex] = field(default_factory=dict)
    maps: dict[str, GradedMap] = field(default_factory=dict)


class _Lines:
    def __init__(self, text: str):
        self.items: list[tuple[int, list[str]]] = []
        for no, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].strip()
            if body:
                self.items.append((no, body.split()))
        self.pos = 0

    def peek(self) -> Optional[tuple[int, list[str]]]:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self) -> tuple[int, list[str]]:
        if self.pos >= len(self.items):
            last = self.items[-1][0] if self.items else 0
            raise FormatError("unexpected end of file (missing 'end'?)", last)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def ints(self, count: int, what: str) -> tuple[int, list[int]]:
        no, toks = self.next()
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise FormatError(f"{what}: expected integers, got {' '.join(toks)!r}", no) from None
        if len(vals) != count:
            raise FormatError(f"{what}: expected {count} entries, got {len(vals)}", no)
        return no, vals

    def matrix(self, rows: int, cols: int, what: str) -> np.ndarray:
        out = np.zeros((rows, cols), dtype=np.int64)
        if cols == 0:
            return out
        for r in range(rows):
            _, vals = self.ints(cols, f"{what}, row {r}")
            out[r] = vals
        return out


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"{what}: expected an integer, got {tok!r}", no) from None


def _kv(toks: list[str], no: int) -> dict[str, int]:
    out = {}
    for t in toks:
        if "=" not in t:
            raise FormatError(f"expected key=value, got {t!r}", no)
        k, v = t.split("=", 1)
        out[k] = _int(v, no, k)
    return out


# -- parsing ---------------------------------------------------------------------

def _parse_algebra_block(lines: _Lines, no: int, toks: list[str]) -> Algebra:
    if len(toks) < 2:
        raise FormatError("algebra needs a name", no)
    if toks[1] == "builtin":
        if len(toks) < 3:
            raise FormatError("builtin algebra needs a name", no)
        params = _kv(toks[3:], no)
        try:
            A = builtin(toks[2], **params)
        except (KeyError, TypeError) as exc:
            raise FormatError(str(exc).strip("'\""), no) from None
        return A.validate()
    name = toks[1]
    fields: dict[str, object] = {"consts": [], "radical": [], "idempotents": []}
    while True:
        ln, t = lines.next()
        key = t[0]
        if key == "end":
            break
        if key == "p":
            fields["p"] = _int(t[1], ln, "p")
        elif key == "dim":
            fields["dim"] = _int(t[1], ln, "dim")
        elif key == "labels":
            fields["labels"] = t[1:]
        elif key == "unit":
            fields["unit"] = [_int(x, ln, "unit") for x in t[1:]]
        elif key == "const":
            if len(t) != 5:
                raise FormatError("const needs I J K VALUE", ln)
            fields["consts"].append(tuple(_int(x, ln, "const") for x in t[1:]))
        elif key == "radical":
            fields["radical"].append([_int(x, ln, "radical") for x in t[1:]])
        elif key == "idempotent":
            fields["idempotents"].append([_int(x, ln, "idempotent") for x in t[1:]])
        else:
            raise FormatError(f"unknown algebra field {key!r}", ln)
    for req in ("dim", "unit"):
        if req not in fields:
            raise FormatError(f"algebra {name}: missing field {req!r}", no)
    d = int(fields["dim"])
    consts = np.zeros((d, d, d), dtype=np.int64)
    for i, j, k, v in fields["consts"]:
        if not (0 <= i < d and 0 <= j < d and 0 <= k < d):
            raise FormatError(f"const index out of range: {(i, j, k)}", no)
        consts[i, j, k] = v
    for vec in [fields["unit"], *fields["radical"], *fields["idempotents"]]:
        if len(vec) != d:
            raise FormatError(f"vector of length {len(vec)} in a {d}-dimensional algebra", no)
    labels = fields.get("labels") or [f"b{i}" for i in range(d)]
    kwargs = {"p": fields["p"]} if "p" in fields else {}
    A = Algebra(name=name, dim=d, labels=tuple(labels), consts=consts, unit=fields["unit"],
                radical=np.array(fields["radical"], dtype=np.int64).reshape(-1, d),
                idempotents=np.array(fields["idempotents"], dtype=np.int64).reshape(-1, d),
                **kwargs)
    return A.validate()


def _parse_module_block(lines: _Lines, no: int, toks: list[str], A: Algebra) -> tuple[str, Module]:
    if len(toks) < 3:
        raise FormatError("module needs a name and a kind", no)
    name, kind = toks[1], toks[2]
    if kind == "regular":
        return name, regular_module(A)
    if kind == "zero":
        return name, zero_module(A)
    if kind in ("free", "projective", "simple"):
        if len(toks) < 4:
            raise FormatError(f"module kind {kind!r} needs an integer argument", no)
        k = _int(toks[3], no, kind)
        if kind == "free":
            return name, free_module(A, k)
        if not 0 <= k < len(A.idempotents):
            raise FormatError(f"idempotent index {k} out of range", no)
        return name, indecomposable_projective(A, k)[0] if kind == "projective" else \
            simple_module(A, k)
    if kind != "dim":
        raise FormatError(f"unknown module kind {kind!r}", no)
    d = _int(toks[3], no, "dim") if len(toks) > 3 else 0
    action = np.zeros((A.dim, d, d), dtype=np.int64)
    seen = set()
    while True:
        ln, t = lines.next()
        if t[0] == "end":
            break
        if t[0] != "act" or len(t) != 2:
            raise FormatError("expected 'act I' or 'end'", ln)
        i = _int(t[1], ln, "act")
        if not 0 <= i < A.dim:
            raise FormatError(f"basis index {i} out of range", ln)
        action[i] = lines.matrix(d, d, f"module {name}, act {i}")
        seen.add(i)
    if d and len(seen) != A.dim:
        raise FormatError(f"module {name}: action of every basis element is required", no)
    try:
        return name, Module(A, d, action).validate()
    except ValueError as exc:
        raise FormatError(f"module {name}: {exc}", no) from None


def _parse_complex_block(lines: _Lines, no: int, toks: list[str], A: Algebra,
                         modules: dict[str, Module]) -> tuple[str, Complex]:
    name = toks[1] if len(toks) > 1 else "X"
    terms: list[tuple[int, Module]] = []
    diffs: dict[int, np.ndarray] = {}
    tails: dict[str, Tail] = {}
    while True:
        ln, t = lines.next()
        key = t[0]
        if key == "end":
            break
        if key == "term":
            if len(t) != 3:
                raise FormatError("term needs a degree and a module name", ln)
            n = _int(t[1], ln, "term")
            if t[2] not in modules:
                raise FormatError(f"unknown module {t[2]!r}", ln)
            if terms and n != terms[-1][0] + 1:
                raise FormatError("terms must be listed in consecutive degrees", ln)
            terms.append((n, modules[t[2]]))
        elif key == "diff":
            n = _int(t[1], ln, "diff")
            degs = {m: M for m, M in terms}
            if n not in degs or n + 1 not in degs:
                raise FormatError(f"diff {n} needs terms in degrees {n} and {n + 1} first", ln)
            diffs[n] = lines.matrix(degs[n + 1].dim, degs[n].dim, f"diff {n}")
        elif key == "tail":
            side, tail = _parse_tail(t, ln)
            tails[side] = tail
        else:
            raise FormatError(f"unknown complex field {key!r}", ln)
    if not terms:
        if tails:
            raise FormatError("a complex with tails needs window terms", no)
        return name, zero_complex(A)
    lo = terms[0][0]
    mods = [M for _, M in terms]
    ds = [diffs.get(n, np.zeros((mods[i + 1].dim, mods[i].dim), dtype=np.int64))
          for i, n in enumerate(range(lo, lo + len(mods) - 1))]
    return name, Complex(A, lo, mods, ds, tails.get("left"), tails.get("right"))


def _parse_tail(t: list[str], ln: int) -> tuple[str, Tail]:
    if len(t) not in (3, 4) or t[1] not in ("left", "right"):
        raise FormatError("tail needs 'left|right PERIOD [GROWTH]'", ln)
    period = _int(t[2], ln, "period")
    growth = _int(t[3], ln, "growth") if len(t) == 4 else 1
    try:
        return t[1], Tail(period, growth)
    except ValueError as exc:
        raise FormatError(str(exc), ln) from None


def _parse_map_block(lines: _Lines, no: int, toks: list[str],
                     complexes: dict[str, Complex]) -> tuple[str, GradedMap]:
    if len(toks) not in (4, 6) or (len(toks) == 6 and toks[4] != "degree"):
        raise FormatError("map needs 'NAME SOURCE TARGET [degree D]'", no)
    name = toks[1]
    for c in toks[2:4]:
        if c not in complexes:
            raise FormatError(f"unknown complex {c!r}", no)
    X, Y = complexes[toks[2]], complexes[toks[3]]
    deg = _int(toks[5], no, "degree") if len(toks) == 6 else 0
    comps: dict[int, np.ndarray] = {}
    tails: dict[str, Tail] = {}
    while True:
        ln, t = lines.next()
        if t[0] == "end":
            break
        if t[0] == "comp" and len(t) == 2:
            n = _int(t[1], ln, "comp")
            comps[n] = lines.matrix(Y.dim(n + deg), X.dim(n), f"comp {n}")
        elif t[0] == "tail":
            side, tail = _parse_tail(t, ln)
            tails[side] = tail
        else:
            raise FormatError(f"unknown map field {t[0]!r}", ln)
    lo = min(comps) if comps else X.lo
    hi = max(comps) if comps else X.lo
    mats = [comps.get(n, np.zeros((Y.dim(n + deg), X.dim(n)), dtype=np.int64))
            for n in range(lo, hi + 1)]
    return name, GradedMap(X, Y, lo, mats, tails.get("left"), tails.get("right"), deg)


def parse_document(text: str, algebra: Optional[Algebra] = None) -> Document:
    lines = _Lines(text)
    first = lines.peek()
    if first is None or " ".join(first[1]) != HEADER:
        raise FormatError(f"missing header line {HEADER!r}", first[0] if first else 1)
    lines.next()
    doc = Document(algebra=algebra)
    while lines.peek() is not None:
        no, toks = lines.next()
        key = toks[0]
        if key == "algebra":
            A = _parse_algebra_block(lines, no, toks)
            if algebra is None:
                doc.algebra = A
        elif key == "module":
            if doc.algebra is None:
                raise FormatError("module defined before any algebra", no)
            name, M = _parse_module_block(lines, no, toks, doc.algebra)
            doc.modules[name] = M
        elif key == "complex":
            if doc.algebra is None:
                raise FormatError("complex defined before any algebra", no)
            name, X = _parse_complex_block(lines, no, toks, doc.algebra, doc.modules)
            doc.complexes[name] = X
        elif key == "map":
            name, f = _parse_map_block(lines, no, toks, doc.complexes)
            doc.maps[name] = f
        else:
            raise FormatError(f"unknown block {key!r}", no)
    return doc


def _read(src: Union[str, Path]) -> str:
    p = Path(src)
    try:
        return p.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {src}: {exc.strerror}") from None


def parse_algebra(src: Union[str, Path], text: Optional[str] = None) -> Algebra:
    doc = parse_document(text if text is not None else _read(src))
    if doc.algebra is None:
        raise FormatError("no algebra block")
    return doc.algebra


def parse_complex(src: Union[str, Path], algebra: Optional[Algebra] = None,
                  text: Optional[str] = None, name: Optional[str] = None) -> Complex:
    doc = parse_document(text if text is not None else _read(src), algebra)
    if not doc.complexes:
        raise FormatError("no complex block")
    if name is not None:
        if name not in doc.complexes:
            raise FormatError(f"no complex named {name!r}")
        return doc.complexes[name]
    return next(iter(doc.complexes.values()))


def algebra_from_spec(spec: str) -> Algebra:
    """A built-in name (``dual_numbers``, ``semisimple2``, ``semisimple:n=2,p=5``) or a file."""
    if Path(spec).is_file():
        return parse_algebra(spec)
    name, _, rest = spec.partition(":")
    params = _kv([t for t in rest.split(",") if t], 0) if rest else {}
    try:
        return builtin(name, **params).validate()
    except (KeyError, TypeError) as exc:
        raise FormatError(f"unknown algebra {spec!r}: {exc}") from None


def module_from_spec(spec: str, A: Algebra) -> Module:
    """``K``/``simple[:t]``, ``A``/``regular``, ``free:r``, ``projective:t`` or ``zero``."""
    kind, _, arg = spec.partition(":")
    toks = ["module", "M", {"K": "simple", "A": "regular"}.get(kind, kind)]
    if toks[2] == "simple" and not arg:
        arg = "0"
    if arg:
        toks.append(arg)
    lines = _Lines("")
    return _parse_module_block(lines, 0, toks, A)[1]


# -- emission -----------------------------------------------------------------------

def _rows(m: np.ndarray, indent: str) -> list[str]:
    if m.shape[1] == 0:
        return []
    return [indent + " ".join(str(int(v)) for v in row) for row in m]


def emit_algebra(A: Algebra) -> str:
    out = [f"algebra {A.name}", f"  p {A.p}", f"  dim {A.dim}",
           "  labels " + " ".join(A.labels), "  unit " + " ".join(map(str, A.unit))]
    for i, j, k in zip(*np.nonzero(A.consts)):
        out.append(f"  const {i} {j} {k} {int(A.consts[i, j, k])}")
    for r in A.radical:
        out.append("  radical " + " ".join(map(str, r)))
    for e in A.idempotents:
        out.append("  idempotent " + " ".join(map(str, e)))
    out.append("end")
    return "\n".join(out)


def emit_module(M: Module, name: str) -> str:
    out = [f"module {name} dim {M.dim}"]
    if M.dim:
        for i in range(M.algebra.dim):
            out.append(f"  act {i}")
            out += _rows(M.action[i], "    ")
    out.append("end")
    return "\n".join(out)


def emit_complex(X: Complex, name: str = "X", with_algebra: bool = True) -> str:
    parts = [HEADER]
    if with_algebra:
        parts.append(emit_algebra(X.algebra))
    names: list[tuple[Module, str]] = []

    def name_of(M: Module) -> str:
        for N, nm in names:
            if N == M:
                return nm
        nm = f"M{len(names)}"
        names.append((M, nm))
        parts.append(emit_module(M, nm))
        return nm

    body = [f"complex {name}"]
    if not X.is_zero():
        for n in range(X.lo, X.hi + 1):
            body.append(f"  term {n} {name_of(X.term(n))}")
        for n in range(X.lo, X.hi):
            d = X.diff(n)
            if d.any():
                body.append(f"  diff {n}")
                body += _rows(d, "    ")
        for side in ("left", "right"):
            t = getattr(X, side)
            if t is not None:
                body.append(f"  tail {side} {t.period} {t.growth}")
    body.append("end")
    parts.append("\n".join(body))
    return "\n".join(parts) + "\n"


def emit_map(f: GradedMap, name: str, source: str, target: str) -> str:
    head = f"map {name} {source} {target}" + (f" degree {f.degree}" if f.degree else "")
    out = [head]
    for n in range(f.lo, f.hi + 1):
        c = f.component(n)
        if c.any():
            out.append(f"  comp {n}")
            out += _rows(c, "    ")
    for side in ("left", "right"):
        t = getattr(f, side)
        if t is not None:
            out.append(f"  tail {side} {t.period} {t.growth}")
    out.append("end")
    return "\n".join(out) + "\n"


def emit_algebra_document(A: Algebra) -> str:
    return HEADER + "\n" + emit_algebra(A) + "\n"


def algebras_equal(A: Algebra, B: Algebra) -> bool:
    return (A.dim == B.dim and A.p == B.p and tuple(A.labels) == tuple(B.labels)
            and np.array_equal(A.consts, B.consts) and np.array_equal(A.unit, B.unit)
            and np.array_equal(A.radical, B.radical)
            and np.array_equal(A.idempotents, B.idempotents))


def complexes_equal(X: Complex, Y: Complex) -> bool:
    """Identical presentation: window, tails, term actions and differentials."""
    if (X.lo, X.hi, X.left, X.right) != (Y.lo, Y.hi, Y.left, Y.right):
        return X.is_zero() and Y.is_zero()
    for n in range(X.lo, X.hi + 1):
        if X.dim(n) != Y.dim(n) or not np.array_equal(X.term(n).action, Y.term(n).action):
            return False
    return all(np.array_equal(X.diff(n), Y.diff(n)) for n in range(X.lo, X.hi))


__all__ = [
    "HEADER", "FormatError", "Document", "parse_document", "parse_algebra", "parse_complex",
    "algebra_from_spec", "module_from_spec", "emit_algebra", "emit_module", "emit_complex",
    "emit_map", "emit_algebra_document", "algebras_equal", "complexes_equal", "AlgebraError",
]
