"""Command line interface: ``verdier <verb> ...``.

Complex arguments are a path to a ``.cplx`` file (``path:NAME`` picks one of
several complexes) or the name of a bundled fixture (``P``, ``I``, ``PI``,
``Z``, ``Zplus``, ``string_res``).  Exit status is 0 on success, 1 when a
computation fails (no stabilization, an unverified witness, a failing suite)
and 2 for bad input.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Optional

import numpy as np

from . import linalg as la
from .algebra import AlgebraError, ModuleError, UnsupportedAlgebraError
from .complexes import (Complex, ComplexError, GradedMap, UnsupportedTailError, brutal_ge,
                        brutal_le, cone, homology_dim, homology_profile, identity_map,
                        intelligent_ge, intelligent_le, is_chain_map)
from .config import ConfigError, SessionConfig
from .formats import (FormatError, algebra_from_spec, emit_complex, module_from_spec,
                      parse_document)
from .homotopy import homotopy_hom, is_contractible, null_homotopy
from .minimal import minimal_model
from .quotients import (AMBIENTS, PUBLIC_IDS, SPLIT_IDS, WitnessError, classify,
                        hom_dminus_infty, hom_dplus_infty, hom_sg, split_witness, star_witness)
from .suites import SUITES, run_suite


class InputError(Exception):
    pass


class ComputationFailure(Exception):
    def __init__(self, payload: Any, text: str):
        super().__init__(text)
        self.payload = payload
        self.text = text


# -- argument resolution -------------------------------------------------------------

def fixture_path(name: str) -> Optional[Path]:
    p = resources.files("verdier") / "data" / f"{name}.cplx"
    return Path(str(p)) if p.is_file() else None


def _document(spec: str, algebra_spec: Optional[str]):
    path, _, name = spec.partition(":") if not Path(spec).is_file() else (spec, "", "")
    file = Path(path)
    if not file.is_file():
        fx = fixture_path(path)
        if fx is None:
            raise InputError(f"no such file or fixture: {path}")
        file = fx
    A = algebra_from_spec(algebra_spec) if algebra_spec else None
    doc = parse_document(file.read_text(), A)
    return doc, name


def load_complex(spec: str, algebra_spec: Optional[str] = None) -> Complex:
    doc, name = _document(spec, algebra_spec)
    if not doc.complexes:
        raise InputError(f"{spec}: no complex defined")
    if name:
        if name not in doc.complexes:
            raise InputError(f"{spec}: no complex named {name!r}")
        return doc.complexes[name]
    return next(iter(doc.complexes.values()))


def load_map(spec: str, name: Optional[str], algebra_spec: Optional[str] = None) -> GradedMap:
    doc, _ = _document(spec, algebra_spec)
    if not doc.maps:
        raise InputError(f"{spec}: no map defined")
    if name:
        if name not in doc.maps:
            raise InputError(f"{spec}: no map named {name!r}")
        return doc.maps[name]
    return next(iter(doc.maps.values()))


def _matrix(m: np.ndarray) -> list[list[int]]:
    return [[int(v) for v in row] for row in m]


def _map_components(f: GradedMap) -> dict[str, list[list[int]]]:
    return {str(n): _matrix(f.component(n)) for n in f.check_range()
            if f.component(n).size}


def _profile(X: Complex) -> dict:
    prof = homology_profile(X)
    degs = list(X.check_range())
    return {"degrees": {str(n): homology_dim(X, n) for n in degs},
            "left_bounded": prof.left_bounded, "right_bounded": prof.right_bounded,
            "exact": prof.exact}


# -- verbs ------------------------------------------------------------------------------
# each returns (payload, text); ComputationFailure signals exit status 1

def cmd_homology(args, cfg):
    X = load_complex(args.complex, args.algebra)
    out = _profile(X)
    lines = [f"H^{n} = {d}" for n, d in out["degrees"].items()]
    lines.append(f"homology bounded left: {out['left_bounded']}, right: {out['right_bounded']}, "
                 f"exact: {out['exact']}")
    return out, "\n".join(lines)


def cmd_classify(args, cfg):
    X = load_complex(args.complex, args.algebra)
    c = classify(X, args.ambient)
    labels = [str(l) for l in c.sorted()]
    out = {"ambient": args.ambient, "labels": labels,
           "ascii": [l.ascii for l in c.sorted()],
           "homology_left_bounded": c.homology_left_bounded,
           "homology_right_bounded": c.homology_right_bounded, "exact": c.exact,
           "left_split": c.left_split, "right_split": c.right_split}
    return out, f"{args.ambient}: " + " ".join(labels)


def cmd_truncate(args, cfg):
    X = load_complex(args.complex, args.algebra)
    ops = {("brutal", "le"): brutal_le, ("brutal", "ge"): brutal_ge,
           ("intelligent", "le"): intelligent_le, ("intelligent", "ge"): intelligent_ge}
    side, n = ("le", args.le) if args.le is not None else ("ge", args.ge)
    Y = ops[(args.kind, side)](X, n)
    text = emit_complex(Y, f"{args.kind}_{side}_{n}")
    return {"complex": text, "repr": repr(Y)}, text.rstrip()


def _map_for(args) -> GradedMap:
    if args.map_file:
        return load_map(args.map_file, args.map, args.algebra)
    X = load_complex(args.complex, args.algebra)
    return identity_map(X)


def cmd_cone(args, cfg):
    f = _map_for(args)
    ok, deg = is_chain_map(f)
    if not ok:
        raise InputError(f"not a chain map (fails in degree {deg})")
    C = cone(f)
    text = emit_complex(C, "cone")
    return {"complex": text, "repr": repr(C)}, text.rstrip()


def cmd_nullhomotopy(args, cfg):
    f = _map_for(args)
    h = null_homotopy(f, cfg.margin)
    out = {"null_homotopic": h is not None}
    text = "null-homotopic" if h is not None else \
        "no null-homotopy found within the periodic ansatz"
    if h is not None and args.certificate:
        out["homotopy"] = _map_components(h)
        text += "\n" + json.dumps(out["homotopy"])
    return out, text


def cmd_contractible(args, cfg):
    X = load_complex(args.complex, args.algebra)
    r = is_contractible(X, cfg.margin)
    out = {"contractible": r.contractible, "reason": r.reason}
    text = ("contractible" if r.contractible else "not contractible") + f" ({r.reason})"
    if r.homotopy is not None and args.certificate:
        out["homotopy"] = _map_components(r.homotopy)
        text += "\n" + json.dumps(out["homotopy"])
    return out, text


def cmd_homk(args, cfg):
    X = load_complex(args.source, args.algebra)
    Y = load_complex(args.target, args.algebra)
    r = homotopy_hom(X, Y, cfg.margin, want_basis=args.certificate)
    out = {"dimension": r.dim, "chain_maps": r.chain_map_dim, "null_homotopic": r.null_dim,
           "method": r.method}
    if args.certificate:
        out["basis"] = [_map_components(b) for b in r.basis]
    text = f"dim Hom_K = {r.dim} (chain maps {r.chain_map_dim}, null-homotopic {r.null_dim}, " \
           f"{r.method})"
    if args.certificate:
        text += f"\n  basis: {len(r.basis)} chain maps (components with --json)"
    return out, text


def _witness_text(w) -> str:
    s = w.summary()
    return "\n".join([
        f"{s['decomposition']} ({s['kind']}, n={s['n']}, ambient {s['ambient']})",
        f"  U = {s['U']}  claim {s['claims'][0]}: {' '.join(s['U_labels'])}",
        f"  V = {s['V']}  claim {s['claims'][1]}: {' '.join(s['V_labels'])}",
        f"  certificate {'ok' if s['certificate'] else 'FAILED'}; "
        f"{'verified' if s['verified'] else 'NOT verified: ' + '; '.join(s['failures'])}",
    ])


def _witness_payload(w, certificate: bool) -> dict:
    out = w.summary()
    if certificate:
        T = w.triangle
        out["certificate_maps"] = {k: _map_components(getattr(T, k))
                                   for k in ("u", "v", "w", "F", "G", "H")}
    return out


def cmd_witness(args, cfg):
    X = load_complex(args.complex, args.algebra)
    w = star_witness(X, args.id, args.n)
    out, text = _witness_payload(w, args.certificate), _witness_text(w)
    if not w.verified:
        raise ComputationFailure(out, text)
    return out, text


def cmd_split_witness(args, cfg):
    X = load_complex(args.complex, args.algebra)
    a, b = split_witness(X, args.id)
    out = {"intelligent": _witness_payload(a, args.certificate),
           "brutal": _witness_payload(b, args.certificate)}
    text = _witness_text(a) + "\n" + _witness_text(b)
    if not (a.verified and b.verified):
        raise ComputationFailure(out, text)
    return out, text


def _module(spec: str, A):
    try:
        return module_from_spec(spec, A)
    except FormatError as exc:
        raise InputError(f"module {spec!r}: {exc}") from None


def cmd_homsg(args, cfg):
    A = algebra_from_spec(args.algebra or "dual_numbers")
    M, N = _module(args.M, A), _module(args.N, A)
    r = hom_sg(M, N, args.k, cfg.s, cfg.cap)
    out = r.as_dict()
    if not r.stabilized:
        raise ComputationFailure(out, r.describe())
    return out, r.describe()


def cmd_hominfty(args, cfg):
    X = load_complex(args.source, args.algebra)
    Y = load_complex(args.target, args.algebra)
    fn = hom_dplus_infty if args.plus else hom_dminus_infty
    r = fn(X, Y, args.step, cfg.s, cfg.cap, cfg.dminus_margin)
    out = r.as_dict()
    text = r.describe() + f"\nschedule {r.schedule} at n = {r.steps}"
    if not r.stabilized:
        raise ComputationFailure(out, text)
    return out, text


def cmd_minimal(args, cfg):
    X = load_complex(args.complex, args.algebra)
    mm = minimal_model(X)
    C = mm.complex.tightened()
    text = emit_complex(C, "minimal")
    return {"complex": text, "repr": repr(C), "cancelled": mm.cancelled}, \
        text.rstrip() + f"\n# cancelled {mm.cancelled} dimensions"


def cmd_verify(args, cfg):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        params = inspect.signature(SUITES[name]).parameters
        kwargs = {}
        if args.cases is not None and "cases" in params:
            kwargs["cases"] = args.cases
        if args.seed is not None and "seed" in params:
            kwargs["seed"] = args.seed
        results.append(run_suite(name, **kwargs))
    out = {"suites": [r.as_dict() for r in results]}
    lines = []
    for r in results:
        lines.append(r.line())
        lines += [f"  note: {n}" for n in r.notes]
        lines += [f"  failed: {f}" for f in r.failures[:10]]
    text = "\n".join(lines)
    if not all(r.ok for r in results):
        raise ComputationFailure(out, text)
    return out, text


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="JSON session config (default: $VERDIER_CONFIG)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    for flag, help_ in (("--p", "prime for built-in algebras"), ("--s", "stabilization window"),
                        ("--cap", "largest truncation depth tried"),
                        ("--margin", "settling margin"), ("--seed", "random seed")):
        common.add_argument(flag, type=int, default=argparse.SUPPRESS, help=help_)
    ap = argparse.ArgumentParser(prog="verdier", description=__doc__.split("\n\n")[0],
                                 parents=[common])
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(fn=fn)
        sp.add_argument("--algebra", help="algebra override: built-in name or .alg file")
        sp.add_argument("--certificate", action="store_true", help="include certificates")
        return sp

    verb("homology", cmd_homology, "homology dimensions").add_argument("complex")
    sp = verb("classify", cmd_classify, "class labels")
    sp.add_argument("complex")
    sp.add_argument("--ambient", choices=AMBIENTS, default="modules")
    sp = verb("truncate", cmd_truncate, "brutal or intelligent truncation")
    sp.add_argument("complex")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--brutal", dest="kind", action="store_const", const="brutal")
    g.add_argument("--intelligent", dest="kind", action="store_const", const="intelligent")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--le", type=int, metavar="N", help="keep degrees <= N")
    g.add_argument("--ge", type=int, metavar="N", help="keep degrees >= N")
    for name, fn, help_ in (("cone", cmd_cone, "mapping cone"),
                            ("nullhomotopy", cmd_nullhomotopy, "search for a null-homotopy")):
        sp = verb(name, fn, help_)
        sp.add_argument("complex", nargs="?", help="complex whose identity map is used")
        sp.add_argument("--map-file", help="file containing the map")
        sp.add_argument("--map", help="name of the map in the file")
    verb("contractible", cmd_contractible, "contractibility test").add_argument("complex")
    sp = verb("homk", cmd_homk, "Hom in the homotopy category")
    sp.add_argument("source")
    sp.add_argument("target")
    sp = verb("witness", cmd_witness, "truncation triangle witness")
    sp.add_argument("id", choices=PUBLIC_IDS)
    sp.add_argument("complex")
    sp.add_argument("--n", type=int, help="override the truncation degree")
    sp = verb("split-witness", cmd_split_witness, "witnesses in both orders")
    sp.add_argument("id", choices=SPLIT_IDS)
    sp.add_argument("complex")
    sp = verb("homsg", cmd_homsg, "Hom in the singularity category")
    sp.add_argument("M", help="K, A, simple:t, projective:t, free:r, zero")
    sp.add_argument("N")
    sp.add_argument("k", type=int)
    sp = verb("hominfty", cmd_hominfty, "Hom modulo bounded homology")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--minus", action="store_true")
    g.add_argument("--plus", action="store_true")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--step", type=int, default=1)
    verb("minimal", cmd_minimal, "minimal model").add_argument("complex")
    sp = verb("verify", cmd_verify, "run a seeded verification suite")
    sp.add_argument("suite", choices=[*SUITES, "all"])
    sp.add_argument("--cases", type=int)
    sp.add_argument("--suite-seed", dest="seed", type=int)
    return ap


def _emit(payload: Any, text: str, as_json: bool, status: str, stream) -> None:
    if as_json:
        print(json.dumps({"status": status, "result": payload}, sort_keys=True, default=str),
              file=stream)
    else:
        print(text, file=stream)


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    opt = {k: getattr(args, k, None) for k in ("p", "s", "cap", "margin", "seed")}
    try:
        cfg = SessionConfig.default(getattr(args, "config", None)).updated(**opt)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    as_json = getattr(args, "json", False) or cfg.output == "json"
    la.set_prime(cfg.p)
    if args.verb in ("cone", "nullhomotopy") and not (args.complex or args.map_file):
        print("error: give a complex or --map-file", file=sys.stderr)
        return 2
    try:
        payload, text = args.fn(args, cfg)
    except ComputationFailure as exc:
        _emit(exc.payload, exc.text, as_json, "failed", sys.stdout)
        return 1
    except (InputError, FormatError, AlgebraError, ModuleError, ComplexError, WitnessError,
            KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        if as_json:
            _emit({"error": msg, "kind": type(exc).__name__}, msg, True, "input-error",
                  sys.stdout)
        print(f"error: {msg}", file=sys.stderr)
        return 2
    except (UnsupportedTailError, UnsupportedAlgebraError, RuntimeError) as exc:
        if as_json:
            _emit({"error": str(exc), "kind": type(exc).__name__}, str(exc), True, "failed",
                  sys.stdout)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(payload, text, as_json, "ok", sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
