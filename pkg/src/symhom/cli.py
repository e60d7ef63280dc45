"""Command-line front end: ``symhom <subcommand> ...``.

Exit codes: 0 success, 2 usage error, 3 invalid input, 4 failed internal
verification (a bug, never expected).  ``--machine`` switches every
subcommand to compact, stable output.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from . import chessboard, delta_s, hs_low, sym_complex
from .algebra import AlgebraError, AlgebraZ, act, parse_algebra, simple_tensor
from .linalg import ComplexError, HomologyResult

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_VERIFY = 4


class VerifyFailed(RuntimeError):
    pass


@dataclass
class CliConfig:
    subcommand: str
    machine: bool
    args: argparse.Namespace


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _algebra(args) -> AlgebraZ:
    return parse_algebra(args.algebra)


def _group(h: HomologyResult, machine: bool) -> str:
    return _dump(h.machine()) if machine else str(h)


def _parse_tensor(A: AlgebraZ, text: str):
    factors = []
    for tok in text.split(";"):
        tok = tok.strip()
        if tok in A.labels:
            factors.append(A.basis(A.labels.index(tok)))
            continue
        try:
            factors.append([int(x) for x in tok.split(",")])
        except ValueError:
            raise AlgebraError(f"tensor factor {tok!r} is neither a basis label nor a coordinate list") from None
    return simple_tensor(A, factors)


def _format_vector(A: AlgebraZ, vec: Sequence[int]) -> str:
    parts = []
    for i, c in enumerate(vec):
        if c:
            parts.append(A.labels[i] if c == 1 else f"{c}*{A.labels[i]}")
    return " + ".join(parts) if parts else "0"


# -- subcommands ---------------------------------------------------------------

def cmd_enumerate(cfg: CliConfig) -> list[str]:
    a = cfg.args
    if a.n < 0 or a.m < 0:
        raise ValueError("n and m must be >= 0")
    kind = "epi" if a.epi else "mono" if a.mono else "all"
    maps = delta_s.enumerate_morphisms(a.n, a.m, kind)
    if cfg.machine:
        return [str(len(maps))] if a.count else [delta_s.format_morphism(f) for f in maps]
    out = [] if a.count else [delta_s.format_morphism(f) for f in maps]
    line = f"{kind} morphisms [{a.n}] -> [{a.m}]: {len(maps)}"
    if kind == "all":
        line += f" (closed form {delta_s.count(a.n, a.m)})"
    return out + [line]


def cmd_compose(cfg: CliConfig) -> list[str]:
    f = delta_s.parse_morphism(cfg.args.f)
    g = delta_s.parse_morphism(cfg.args.g)
    return [delta_s.format_morphism(delta_s.compose(f, g))]


def cmd_act(cfg: CliConfig) -> list[str]:
    A = _algebra(cfg.args)
    f = delta_s.parse_morphism(cfg.args.f)
    t = act(A, f, _parse_tensor(A, cfg.args.tensor))
    if cfg.machine:
        return [_dump([list(x) for x in t.factors])]
    return [" (x) ".join(f"({_format_vector(A, x)})" for x in t.factors)]


def cmd_hs(cfg: CliConfig) -> list[str]:
    a = cfg.args
    A = _algebra(a)
    if a.layer is not None:
        h = hs_low.hs_layered(A, a.layer, a.degree)
    else:
        h = hs_low.hs(A, a.degree, split=False if a.no_split else None)
    if a.verify_extra and a.layer is None:
        other = hs_low.hs(A, a.degree, split=False)
        if other != h:
            raise VerifyFailed(f"layered and unlayered computations disagree: {h} vs {other}")
        if a.degree == 0 and hs_low.commutator_quotient(A) != h:
            raise VerifyFailed("degree-0 result differs from the commutator quotient")
    if cfg.machine:
        return [_group(h, True)]
    where = f", layer {a.layer}" if a.layer is not None else ""
    return [f"HS_{a.degree}({A.name or a.algebra}{where}) = {h}"]


def cmd_layers(cfg: CliConfig) -> list[str]:
    a = cfg.args
    A = _algebra(a)
    rows = hs_low.all_layers(A, a.degree, include_zero=True)
    if cfg.machine:
        return [f"{u}\t{_group(h, True)}" for u, h in rows]
    width = max(len(u) for u, _ in rows)
    return [f"{u.ljust(width)}  {h}" for u, h in rows]


def cmd_poly_layers(cfg: CliConfig) -> list[str]:
    a = cfg.args
    if a.max_m < 0 or a.min_m < 0 or a.min_m > a.max_m:
        raise ValueError("need 0 <= min-m <= max-m")
    out = []
    for m in range(a.min_m, a.max_m + 1):
        h = hs_low.hs1_polynomial_layer(m)
        out.append(f"{m}\t{_group(h, True)}" if cfg.machine else f"t^{m}: {h}")
    return out


def cmd_sym(cfg: CliConfig) -> list[str]:
    a = cfg.args
    h = sym_complex.homology(a.p, large_p=a.large_p, max_degree=a.max_degree)
    if not h.torsion_free:
        logging.getLogger(__name__).warning("torsion found in Sym^(%d)", a.p)
    if cfg.machine:
        out = [_dump(h.betti)]
        if not h.torsion_free:
            out.append(_dump([list(g.torsion) for g in h.groups]))
        return out
    out = [sym_complex.format_poincare(h.poincare)]
    if a.max_degree is not None and a.max_degree < a.p:
        out[0] += f"  (degrees 0..{a.max_degree} only)"
    out.append("torsion-free" if h.torsion_free else "torsion: " + ", ".join(
        f"H_{i} = {g}" for i, g in enumerate(h.groups) if g.torsion))
    return out


def cmd_chess(cfg: CliConfig) -> list[str]:
    n = cfg.args.n
    if n < 1:
        raise ValueError("board size must be >= 1")
    cx = chessboard.chessboard_complex(n)
    groups = cx.homology()
    if cfg.machine:
        return [_dump(cx.dims), _dump([g.machine() for g in groups])]
    out = [f"rank C_{k} = {d}" for k, d in enumerate(cx.dims)]
    out += [f"H_{k} = {g}" for k, g in enumerate(groups)]
    return out


def cmd_omega_check(cfg: CliConfig) -> list[str]:
    rep = chessboard.omega_iso(cfg.args.p)
    if not rep.ok:
        raise VerifyFailed("; ".join(rep.failures) or "omega check failed")
    if cfg.machine:
        return [_dump({"p": rep.p, "dims": rep.dims, "bijective": rep.bijective,
                       "chain_map": rep.chain_map})]
    return [f"p = {rep.p}: ranks {rep.dims}", "bijective on generators: yes",
            "commutes with boundaries: yes"]


def cmd_hc_map(cfg: CliConfig) -> list[str]:
    A = _algebra(cfg.args)
    rep = hs_low.gamma_induced_map(A)
    if not (rep.gamma1_cycles and rep.gamma1_boundaries):
        raise VerifyFailed("gamma1 does not induce a map on homology")
    if cfg.machine:
        return [_dump({"hc1": rep.hc1, "hs1": rep.hs1, "image": rep.image,
                       "matrix": rep.matrix, "gamma2_chain_map": rep.gamma2.holds})]
    hc1 = HomologyResult.from_diagonal(rep.hc1.count(0), rep.hc1)
    hs1 = HomologyResult.from_diagonal(rep.hs1.count(0), rep.hs1)
    im = HomologyResult.from_diagonal(rep.image.count(0), rep.image)
    out = [f"HC_1 = {hc1}", f"HS_1 = {hs1}", f"image = {im}"]
    out += [f"  HC_1 generator: {g}" for g in rep.hc1_generators]
    out.append("matrix (rows: HS_1 generators):")
    out += ["  " + " ".join(str(x) for x in row) for row in rep.matrix]
    out.append(f"gamma2 chain map: {'yes' if rep.gamma2.holds else 'no'}"
               f" ({rep.gamma2.failing_columns}/{rep.gamma2.total_columns} columns differ)")
    return out


def cmd_resolution_check(cfg: CliConfig) -> list[str]:
    st = hs_low.resolution_stage_matrices(cfg.args.n)
    checks = st.certify()
    if not all(checks.values()):
        raise VerifyFailed("resolution stage check failed: " + ", ".join(
            k for k, v in checks.items() if not v))
    if cfg.machine:
        return [_dump({"sizes": list(st.sizes), **checks})]
    return [f"[{st.n}]: sizes {' <- '.join(map(str, st.sizes))}"] + [
        f"{k}: ok" for k in checks]


COMMANDS: dict[str, tuple[Callable[[CliConfig], list[str]], str]] = {
    "enumerate": (cmd_enumerate, "List or count the morphisms [n] -> [m] of the category Delta S, "
                                 "in tensor notation."),
    "compose": (cmd_compose, "Compose two Delta S morphisms given in tensor notation (f after g)."),
    "act": (cmd_act, "Apply a Delta S morphism to a simple tensor through the symmetric "
                     "bar construction of an algebra."),
    "hs": (cmd_hs, "Symmetric homology HS_0 or HS_1 of an algebra over Z, from the partial "
                   "resolution complex A <- A^(x)3 <- A^(x)4 + A."),
    "layers": (cmd_layers, "Symmetric homology of every grade layer of a commutative "
                           "monoid algebra."),
    "poly-layers": (cmd_poly_layers, "The t^m layers of HS_1(Z[t]) for a range of m."),
    "sym": (cmd_sym, "Integral homology and Poincare polynomial of the complex Sym_*^(p)."),
    "chess": (cmd_chess, "Homology of the suspended augmented cycle-free n x n chessboard complex."),
    "omega-check": (cmd_omega_check, "Verify the chain isomorphism from the suspended "
                                     "cycle-free chessboard complex onto Sym_*^(p)."),
    "hc-map": (cmd_hc_map, "The map HC_1(A) -> HS_1(A) induced by the comparison of the cyclic "
                           "and symmetric low-degree complexes."),
    "resolution-check": (cmd_resolution_check, "Certify exactness of the first stages of the "
                                               "projective resolution of the trivial Delta S "
                                               "module, evaluated at [n]."),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a flag given before the subcommand from being reset
    common.add_argument("--machine", action="store_true", default=argparse.SUPPRESS,
                        help="compact machine-readable output")
    parser = argparse.ArgumentParser(
        prog="symhom", description="Exact computations of symmetric homology over the integers.",
    )
    parser.add_argument("--machine", action="store_true", help="compact machine-readable output")
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")

    def add(name):
        _, text = COMMANDS[name]
        return sub.add_parser(name, help=text, description=text, parents=[common])

    p = add("enumerate")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--epi", action="store_true", help="epimorphisms only")
    g.add_argument("--mono", action="store_true", help="monomorphisms only")
    p.add_argument("--count", action="store_true", help="print only the number")

    p = add("compose")
    p.add_argument("f", help="outer morphism, e.g. '[[1,0],[2]]' or 'n=2:[[],[0,1,2]]'")
    p.add_argument("g", help="inner morphism")

    p = add("act")
    p.add_argument("f", help="morphism in tensor notation")
    p.add_argument("tensor", help="factors separated by ';', each a basis label or coordinates "
                                  "'c0,c1,...'")
    p.add_argument("--algebra", required=True, help="algebra spec, e.g. trunc:3 or group:S3")

    p = add("hs")
    p.add_argument("--algebra", required=True,
                   help="trunc:a,b | group:Cn | group:C2xC2 | group:S3 | group:Q8 | quat | "
                        "monoid:p,q | matrix:n | Z | file:PATH")
    p.add_argument("--degree", type=int, choices=(0, 1), default=1)
    p.add_argument("--layer", help="restrict to one grade layer (commutative gradings)")
    p.add_argument("--no-split", action="store_true",
                   help="do not split into layers even when possible")
    p.add_argument("--verify-extra", action="store_true",
                   help="cross-check against the unsplit complex and, in degree 0, "
                        "the commutator quotient")

    p = add("layers")
    p.add_argument("--algebra", required=True)
    p.add_argument("--degree", type=int, choices=(0, 1), default=1)

    p = add("poly-layers")
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--min-m", type=int, default=0)

    p = add("sym")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--large-p", action="store_true",
                   help=f"allow p > {sym_complex.DEFAULT_MAX_P} (p = 7 needs about 1.5 GB and "
                        f"is only feasible with --max-degree; cap with {sym_complex.MEMORY_ENV})")
    p.add_argument("--max-degree", type=int, metavar="K",
                   help="compute H_0..H_K only, finishing just the maps they need")

    p = add("chess")
    p.add_argument("--n", type=int, required=True)

    p = add("omega-check")
    p.add_argument("--p", type=int, required=True)

    p = add("hc-map")
    p.add_argument("--algebra", required=True)

    p = add("resolution-check")
    p.add_argument("--n", type=int, required=True, choices=range(0, 5), metavar="N",
                   help="0 <= N <= 4")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cfg = CliConfig(args.subcommand, args.machine, args)
    func, _ = COMMANDS[args.subcommand]
    try:
        lines = func(cfg)
    except (VerifyFailed, hs_low.VerificationError, ComplexError) as exc:
        print(f"symhom: verification failed: {exc}", file=err)
        return EXIT_VERIFY
    except (AlgebraError, delta_s.MorphismError, sym_complex.SymError, ValueError,
            OSError, MemoryError) as exc:
        print(f"symhom: {exc}", file=err)
        return EXIT_INPUT
    for line in lines:
        print(line, file=out)
    return EXIT_OK


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
