"""Command line: load workspace files, run a construction, write results and a report.

Exit codes::

    0  success
    1  usage error, or a request the chosen method cannot serve
    2  validation failure (an axiom, morphism or well-definedness check failed)
    3  order undecided at the coset limit (the presentation is still written)
    4  input error (syntax or unresolved reference)
"""

from __future__ import annotations

import argparse
import sys
import time

from .errors import CrossedModError, UndecidedAtLimit, ValidationFailure
from .fp import DEFAULT_COSET_LIMIT
from .induced import (
    Strategy,
    compare_relator_variants,
    induced_x2_universal,
    induced_x2mod,
    induced_xmod,
    induced_xmod_universal,
)
from .pullback import pullback_x2_universal, pullback_x2mod, pullback_xmod, pullback_xmod_universal
from .pushout import cokernel_x2, pushout_x2
from .textformat import ParseError, UnresolvedReference, ValidationError, Workspace, parse_files, serialize
from .x2mod import from_precrossed_peiffer, reflect_to_xmod, trivial_lifting_report
from .xmod import PreCrossedModule, XModMorphism, as_crossed, cm2_witness

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_UNDECIDED = 3
EXIT_INPUT = 4

COMMANDS = ("check", "pullback", "pullback2", "induce", "induce2", "pushout2", "peiffer", "reflect", "universal", "universal2")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="crossedmods", description="Check and construct crossed and 2-crossed modules over finite groups.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("files", nargs="+", help="workspace files in the block text format")
    p.add_argument("--out", help="write constructed objects here (text format)")
    p.add_argument("--report", help="write the report here instead of stdout")
    p.add_argument("--strategy", default="auto", choices=[s.value for s in Strategy])
    p.add_argument("--coset-limit", type=int, default=DEFAULT_COSET_LIMIT)
    p.add_argument("--compare-relators", action="store_true", help="also enumerate the alternative relator set (induce2)")
    p.add_argument("--name", help="name for the constructed object")
    for flag in ("xmod", "x2mod", "precrossed", "phi", "theta", "morph", "left", "right"):
        p.add_argument(f"--{flag}", help=f"name of the {flag} to use (optional when unambiguous)")
    p.add_argument("--via", choices=("induced", "pullback"), default="induced", help="universal property to check")
    return p


class _Run:
    def __init__(self, args):
        self.args = args
        self.lines: list[str] = []
        self.out = Workspace()

    def say(self, s=""):
        self.lines.append(s)

    def emit(self, name, obj, kind=None):
        return self.out.put(name, obj, kind=kind)


def _summary_xmod(X) -> str:
    crossed = cm2_witness(X.M, X.act, X.boundary) is None
    return f"|M|={X.M.order} |P|={X.P.order} CM1: pass CM2: {'pass' if crossed else 'fail'}"


def _summary_x2(X) -> str:
    return f"|L|={X.L.order} |M|={X.M.order} |P|={X.P.order} PL1-PL5: pass"


def _cmd_check(r: _Run, ws: Workspace):
    for name, (kind, obj) in sorted(ws.objects.items(), key=lambda kv: (kv[1][0], kv[0])):
        if kind == "group":
            r.say(f"group {name}: order {obj.order}")
        elif kind == "hom":
            r.say(f"hom {name}: homomorphism ok")
        elif kind == "action":
            r.say(f"action {name}: action ok")
        elif kind == "presentation":
            r.say(f"presentation {name}: {len(obj.generators)} generators, {len(obj.relators)} relators")
        elif kind in ("precrossed", "xmod"):
            r.say(f"{kind} {name}: {_summary_xmod(obj)}")
        elif kind == "x2mod":
            r.say(f"x2mod {name}: {_summary_x2(obj)}")
            if obj.lifting_is_trivial:
                for line in trivial_lifting_report(obj).lines():
                    r.say(f"  {line}")
        else:
            r.say(f"{kind} {name}: morphism ok")


def _cmd_pullback(r: _Run, ws: Workspace):
    xn, X = ws.pick("xmod", r.args.xmod)
    pn, phi = ws.pick("hom", r.args.phi)
    res = pullback_xmod(X, phi)
    name = r.args.name or f"{xn}_pb"
    r.emit(name, res.module)
    r.emit(f"{name}_proj", res.proj_to_N)
    r.say(f"pullback of {xn} along {pn}: {_summary_xmod(res.module)}")
    r.say("legend: " + " ".join(f"({X.M.label(n)},{phi.src.label(p)})" for n, p in res.legend))


def _cmd_pullback2(r: _Run, ws: Workspace):
    xn, X = ws.pick("x2mod", r.args.x2mod)
    pn, phi = ws.pick("hom", r.args.phi)
    res = pullback_x2mod(X, phi)
    name = r.args.name or f"{xn}_pb"
    r.emit(name, res.module)
    r.emit(f"{name}_proj", res.proj)
    r.say(f"pullback of {xn} along {pn}: {_summary_x2(res.module)}")
    r.say("legend: " + " ".join(f"({X.M.label(n)},{phi.src.label(p)})" for n, p in res.legend))


def _undecided(r: _Run, name, res):
    r.emit(f"{name}_presentation", res.presentation)
    r.say(f"status: UndecidedAtLimit (coset limit {r.args.coset_limit})")
    r.say(f"presentation written: {len(res.presentation.generators)} generators, {len(res.presentation.relators)} relators")
    raise UndecidedAtLimit("order undecided at coset limit", res.presentation, r.args.coset_limit)


def _cmd_induce(r: _Run, ws: Workspace):
    xn, X = ws.pick("xmod", r.args.xmod)
    pn, phi = ws.pick("hom", r.args.phi)
    res = induced_xmod(X, phi, r.args.strategy, r.args.coset_limit)
    name = r.args.name or f"{xn}_ind"
    r.say(f"induced module of {xn} along {pn}")
    r.say(f"strategy: {res.strategy_used.value}")
    r.say(f"presentation: {len(res.presentation.generators)} generators, {len(res.presentation.relators)} relators")
    if not res.decided:
        _undecided(r, name, res)
    r.say(f"order: {res.module.M.order}")
    r.say(f"status: Decided; {_summary_xmod(res.module)}")
    r.emit(name, res.module)
    r.emit(f"{name}_canonical", res.morphism)


def _cmd_induce2(r: _Run, ws: Workspace):
    xn, X = ws.pick("x2mod", r.args.x2mod)
    tn, theta = ws.pick("xmorph", r.args.theta)
    res = induced_x2mod(theta, X, r.args.strategy, r.args.coset_limit)
    name = r.args.name or f"{xn}_ind"
    r.say(f"induced 2-crossed module of {xn} along {tn}")
    r.say(f"strategy: {res.strategy_used.value}")
    if res.note:
        r.say(f"note: {res.note}")
    r.say(f"presentation: {len(res.presentation.generators)} generators, {len(res.presentation.relators)} relators")
    if r.args.compare_relators:
        for variant, info in compare_relator_variants(theta, X, r.args.coset_limit).items():
            r.say(f"relator set {variant}: order {info['order']}, {info['detail']}")
    if not res.decided:
        _undecided(r, name, res)
    r.say(f"order: {res.module.L.order}")
    r.say(f"status: Decided; {_summary_x2(res.module)}")
    r.emit(name, res.module)
    r.emit(f"{name}_canonical", res.morphism)


def _cmd_pushout2(r: _Run, ws: Workspace):
    ln, left = ws.pick("x2morph", r.args.left)
    if r.args.right is None:
        res = cokernel_x2(left, r.args.coset_limit)
        r.say(f"cokernel of {ln}")
    else:
        rn, right = ws.pick("x2morph", r.args.right)
        res = pushout_x2(left, right, r.args.coset_limit)
        r.say(f"push-out of {ln} and {rn}")
    name = r.args.name or "pushout"
    if not res.decided:
        r.say(f"stage: {res.stage}")
        _undecided(r, name, res)
    r.say(f"base: |M|={res.base.M.order} |P|={res.base.P.order}")
    r.say(f"status: Decided; {_summary_x2(res.module)}")
    r.emit(name, res.module)
    r.emit(f"{name}_left", res.into1)
    r.emit(f"{name}_right", res.into2)


def _cmd_peiffer(r: _Run, ws: Workspace):
    xn, X = ws.pick(("precrossed", "xmod"), r.args.precrossed or r.args.xmod)
    Z = from_precrossed_peiffer(X)
    name = r.args.name or f"{xn}_peiffer"
    r.emit(name, Z)
    r.say(f"Peiffer 2-crossed module of {xn}: {_summary_x2(Z)}")


def _cmd_reflect(r: _Run, ws: Workspace):
    xn, X = ws.pick("x2mod", r.args.x2mod)
    Y, proj = reflect_to_xmod(X)
    name = r.args.name or f"{xn}_reflect"
    r.emit(name, Y)
    r.emit(f"{name}_proj", proj)
    r.say(f"reflection of {xn}: {_summary_xmod(Y)}")


def _cmd_universal(r: _Run, ws: Workspace):
    mn, h = ws.pick("xmorph", r.args.morph)
    name = r.args.name or f"{mn}_factor"
    if r.args.via == "pullback":
        pb = pullback_xmod(as_crossed(h.dst), h.eta)
        fac = pullback_xmod_universal(as_crossed(h.src), h, pb)
        r.say(f"factorization of {mn} through the pullback: {fac.uniqueness}")
    else:
        res = induced_xmod(as_crossed(h.src), h.eta, r.args.strategy, r.args.coset_limit)
        if not res.decided:
            _undecided(r, name, res)
        fac = induced_xmod_universal(res, XModMorphism(h.mu, h.eta, res.source, as_crossed(h.dst)))
        r.say(f"factorization of {mn} through the induced module: {fac.uniqueness}")
    r.emit(name, fac.hom)


def _cmd_universal2(r: _Run, ws: Workspace):
    mn, f = ws.pick("x2morph", r.args.morph)
    name = r.args.name or f"{mn}_factor"
    if r.args.via == "pullback":
        pb = pullback_x2mod(f.dst, f.f0)
        fac = pullback_x2_universal(f.src, f, pb)
        r.say(f"factorization of {mn} through the pullback: {fac.uniqueness}")
        r.emit(f"{name}_f2", fac.f2)
        r.emit(f"{name}_f1", fac.f1)
        return
    Nmod = PreCrossedModule(f.dst.M, f.dst.P, f.dst.actM, f.dst.d1)
    theta = XModMorphism(f.f1, f.f0, f.src.lower, Nmod)
    res = induced_x2mod(theta, f.src, r.args.strategy, r.args.coset_limit)
    if not res.decided:
        _undecided(r, name, res)
    fac = induced_x2_universal(res, f)
    r.say(f"factorization of {mn} through the induced module: {fac.uniqueness}")
    r.emit(name, fac.hom)


_DISPATCH = {
    "check": _cmd_check,
    "pullback": _cmd_pullback,
    "pullback2": _cmd_pullback2,
    "induce": _cmd_induce,
    "induce2": _cmd_induce2,
    "pushout2": _cmd_pushout2,
    "peiffer": _cmd_peiffer,
    "reflect": _cmd_reflect,
    "universal": _cmd_universal,
    "universal2": _cmd_universal2,
}


def _finish(r: _Run, code: int, started: float) -> int:
    r.say(f"time: {time.perf_counter() - started:.3f}s")
    text = "\n".join(r.lines) + "\n"
    if r.args.report:
        with open(r.args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if r.args.out:
        with open(r.args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize(r.out))
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    r = _Run(args)
    started = time.perf_counter()
    try:
        ws = parse_files(args.files)
    except (ParseError, UnresolvedReference, OSError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as e:
        print(f"validation failure: {e}", file=sys.stderr)
        if e.witness is not None:
            print(f"witness: {e.witness}", file=sys.stderr)
        return EXIT_VALIDATION
    # outputs are self-contained: inputs keep their names, results are added
    r.out = Workspace(dict(ws.objects))
    try:
        _DISPATCH[args.command](r, ws)
    except UndecidedAtLimit:
        return _finish(r, EXIT_UNDECIDED, started)
    except UnresolvedReference as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationFailure as e:
        r.say(f"validation failure: {type(e).__name__}: {e}")
        if e.witness is not None:
            r.say(f"witness: {e.witness}")
        return _finish(r, EXIT_VALIDATION, started)
    except CrossedModError as e:
        r.say(f"error: {type(e).__name__}: {e}")
        return _finish(r, EXIT_USAGE, started)
    except ValueError as e:
        r.say(f"error: {e}")
        return _finish(r, EXIT_USAGE, started)
    return _finish(r, EXIT_OK, started)


if __name__ == "__main__":
    sys.exit(main())
