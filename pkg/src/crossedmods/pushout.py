"""Push-outs and cokernels of 2-crossed modules.

For a span ``X1 <- X0 -> X2`` the base ``M -> P`` is the push-out of the
lower pre-crossed modules. Each ``L_i`` is induced up to ``B_i`` over
``M -> P``, the maps ``B0 -> B_i`` come from the universal property of
``B0``, and the top group is the group push-out of ``B1 <- B0 -> B2`` with
lifting brackets adjoined, divided by the PL2, PL3, PL4 and equivariance
instances. Everything is built by presentation and enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._qgroups import QPresentation, close_and_build, enumerate_group, extend_or_fail
from .errors import UndecidedAtLimit
from .fp import DEFAULT_COSET_LIMIT, CosetTable, Presentation, Word, free_reduce
from .groups import ActionTable, GroupHom, trivial_action, trivial_group, trivial_hom
from .induced import (
    DECIDED,
    DEFINITION,
    MAX_RELATORS,
    UNDECIDED,
    InducedX2Result,
    _build_x2,
    _cap,
    _Families,
    _repair_x2,
    induced_x2_universal,
    induced_x2mod,
)
from .x2mod import TwoCrossedModule, X2Morphism
from .xmod import PreCrossedModule, XModMorphism


@dataclass
class PushoutX2Result:
    status: str
    presentation: Presentation | None
    base: PreCrossedModule | None = None
    module: TwoCrossedModule | None = None
    into1: X2Morphism | None = None
    into2: X2Morphism | None = None
    induced: list[InducedX2Result] = field(default_factory=list)
    coset_table: CosetTable | None = None
    coset_limit: int | None = None
    stage: str = ""

    @property
    def decided(self) -> bool:
        return self.status == DECIDED

    def require(self) -> "PushoutX2Result":
        if not self.decided:
            raise UndecidedAtLimit(f"undecided at coset limit ({self.stage})", self.presentation, self.coset_limit)
        return self


def trivial_x2mod() -> TwoCrossedModule:
    one = trivial_group()
    h = trivial_hom(one, one)
    a = trivial_action(one, one)
    return TwoCrossedModule(one, one, one, h, h, a, a, ((0,),))


def _undecided(stage, pres, table, limit, **kw) -> PushoutX2Result:
    return PushoutX2Result(UNDECIDED, pres, coset_table=table, coset_limit=limit, stage=stage, **kw)


def _group_pushout(f1: GroupHom, f2: GroupHom, limit: int):
    """Push-out of groups ``A <- C -> B`` on generators ``A`` then ``B``."""
    A, B, C = f1.dst, f2.dst, f1.src
    na = A.order
    names = [f"a{x}" for x in A.elements] + [f"b{x}" for x in B.elements]
    rels: list[Word] = []
    for G, off in ((A, 0), (B, na)):
        for x in G.elements:
            for y in G.elements:
                rels.append(free_reduce((off + x + 1, off + y + 1, -(off + G.mul[x][y] + 1))))
    for c in C.elements:
        rels.append(free_reduce((f1.map[c] + 1, -(na + f2.map[c] + 1))))
    pres = Presentation(tuple(names), tuple(rels))
    en = enumerate_group(pres, limit)
    if isinstance(en, CosetTable):
        return pres, en, None, None
    g = en.gen_elems
    i1 = GroupHom(A, en.group, tuple(g[:na]))
    i2 = GroupHom(B, en.group, tuple(g[na:]))
    return pres, en, i1, i2


def precrossed_pushout(g1: XModMorphism, g2: XModMorphism, coset_limit: int = DEFAULT_COSET_LIMIT):
    """Push-out of pre-crossed modules; returns ``(base, theta1, theta2)`` or an undecided result."""
    X1, X2 = g1.dst, g2.dst
    ppres, pen, i1, i2 = _group_pushout(g1.eta, g2.eta, coset_limit)
    if i1 is None:
        return _undecided("base group", ppres, pen, coset_limit)
    P = pen.group
    # M: P-translates of M1 and M2, amalgamated along M0
    mods = [(X1, i1), (X2, i2)]
    offs = [0, P.order * X1.M.order]
    ngen = offs[1] + P.order * X2.M.order
    _cap(sum(P.order * X.M.order * (X.M.order + X.P.order) for X, _ in mods) + P.order * g1.src.M.order, MAX_RELATORS)

    def gen(i, p, m):
        return offs[i] + p * mods[i][0].M.order + m

    names, boundary = [], []
    for i, (X, inc) in enumerate(mods):
        for p in P.elements:
            for m in X.M.elements:
                names.append(f"m{i + 1}_{p}_{m}")
                boundary.append(P.conj(p, inc.map[X.boundary.map[m]]))
    qperm = []
    for q in P.elements:
        row = [0] * ngen
        for i, (X, _) in enumerate(mods):
            for p in P.elements:
                for m in X.M.elements:
                    row[gen(i, p, m)] = gen(i, P.mul[q][p], m)
        qperm.append(row)
    qp = QPresentation(Presentation(tuple(names), ()), P, P, qperm, boundary)
    rels: list[Word] = []
    for i, (X, inc) in enumerate(mods):
        M = X.M
        for p in P.elements:
            for a in M.elements:
                for b in M.elements:
                    rels.append((gen(i, p, a) + 1, gen(i, p, b) + 1, -(gen(i, p, M.mul[a][b]) + 1)))
            for pi in X.P.elements:
                for m in M.elements:
                    rels.append((gen(i, P.mul[p][inc.map[pi]], m) + 1, -(gen(i, p, X.act.act[pi][m]) + 1)))
    rels.extend(qp.q_closure([(gen(0, 0, g1.mu.map[m]) + 1, -(gen(1, 0, g2.mu.map[m]) + 1)) for m in g1.src.M.elements]))
    pres = Presentation(tuple(names), tuple(rels))
    en = enumerate_group(pres, coset_limit)
    if isinstance(en, CosetTable):
        return _undecided("base module", pres, en, coset_limit)
    G, gens = en.group, en.gen_elems
    d = extend_or_fail(G, P, gens, boundary, "base boundary")
    rows = [extend_or_fail(G, G, gens, [gens[x] for x in qperm[q]], "base action").map for q in P.elements]
    base = PreCrossedModule(G, P, ActionTable(P, G, tuple(rows)), d)
    thetas = []
    for i, (X, inc) in enumerate(mods):
        mu = GroupHom(X.M, G, tuple(gens[gen(i, 0, m)] for m in X.M.elements))
        thetas.append(XModMorphism(mu, inc, X, base))
    return base, thetas[0], thetas[1]


def pushout_x2(g1: X2Morphism, g2: X2Morphism, coset_limit: int = DEFAULT_COSET_LIMIT) -> PushoutX2Result:
    if g1.src != g2.src:
        raise ValueError("span legs must share a source")
    X0, X1, X2 = g1.src, g1.dst, g2.dst
    low = lambda f: XModMorphism(f.f1, f.f0, f.src.lower, f.dst.lower)  # noqa: E731
    base = precrossed_pushout(low(g1), low(g2), coset_limit)
    if isinstance(base, PushoutX2Result):
        return base
    Nmod, th1, th2 = base
    th0 = th1.compose(low(g1))
    res = [induced_x2mod(th0, X0, coset_limit=coset_limit)]
    for th, X in ((th1, X1), (th2, X2)):
        res.append(induced_x2mod(th, X, coset_limit=coset_limit))
    for r in res:
        if not r.decided:
            return _undecided("induced module", r.presentation, r.coset_table, coset_limit, base=Nmod, induced=res)
    betas = []
    for g, r in ((g1, res[1]), (g2, res[2])):
        f = X2Morphism(r.canonical.compose(g.f2), th0.mu, th0.eta, X0, r.module)
        betas.append(induced_x2_universal(res[0], f).hom)

    B1, B2 = res[1].module, res[2].module
    M, P = Nmod.M, Nmod.P
    n1, n2, nm = B1.L.order, B2.L.order, M.order
    ngen = n1 + n2 + nm * nm
    _cap(n1 * n1 + n2 * n2 + res[0].module.L.order + 2 * nm * nm + ngen * ngen + 2 * nm**3 + 2 * nm * ngen, MAX_RELATORS)
    names = [f"b1_{x}" for x in range(n1)] + [f"b2_{x}" for x in range(n2)]
    names += [f"y{a}_{b}" for a in M.elements for b in M.elements]
    boundary = list(B1.d2.map) + list(B2.d2.map)
    bracket = {}
    for a in M.elements:
        for b in M.elements:
            bracket[(a, b)] = len(boundary)
            boundary.append(B1.d2.map[B1.lifting[a][b]])
    qperm = []
    for p in P.elements:
        row = list(B1.actL.act[p]) + [n1 + x for x in B2.actL.act[p]]
        row += [bracket[(Nmod.act.act[p][a], Nmod.act.act[p][b])] for a in M.elements for b in M.elements]
        qperm.append(row)
    qp = QPresentation(Presentation(tuple(names), ()), P, M, qperm, boundary, bracket)
    rels: list[Word] = []
    for G, off in ((B1.L, 0), (B2.L, n1)):
        for x in G.elements:
            for y in G.elements:
                rels.append(free_reduce((off + x + 1, off + y + 1, -(off + G.mul[x][y] + 1))))
    for b in res[0].module.L.elements:
        rels.append(free_reduce((betas[0].map[b] + 1, -(n1 + betas[1].map[b] + 1))))
    for a in M.elements:
        for b in M.elements:
            y = bracket[(a, b)] + 1
            rels.append((y, -(B1.lifting[a][b] + 1)))
            rels.append((y, -(n1 + B2.lifting[a][b] + 1)))
    fam = _Families(qp, Nmod)
    rels.extend(fam.s_relators(DEFINITION))
    qp.pres = Presentation(tuple(names), tuple(rels))
    out = close_and_build(qp, lambda en: _build_x2(qp, Nmod, en), _repair_x2(qp, fam, DEFINITION), coset_limit)
    if out.module is None:
        return _undecided("top group", out.presentation, out.table, coset_limit, base=Nmod, induced=res)
    L = out.module
    gens = out.enumerated.gen_elems
    legs = []
    for r, off, th, X in ((res[1], 0, th1, X1), (res[2], n1, th2, X2)):
        into = GroupHom(r.module.L, L.L, tuple(gens[off + x] for x in r.module.L.elements))
        legs.append(X2Morphism(into.compose(r.canonical), th.mu, th.eta, X, L))
    return PushoutX2Result(
        DECIDED, out.presentation, Nmod, L, legs[0], legs[1], res, out.table, coset_limit, "done"
    )


def cokernel_x2(f: X2Morphism, coset_limit: int = DEFAULT_COSET_LIMIT) -> PushoutX2Result:
    """Push-out of ``f`` against the map to the trivial 2-crossed module."""
    T = trivial_x2mod()
    X0 = f.src
    g2 = X2Morphism(trivial_hom(X0.L, T.L), trivial_hom(X0.M, T.M), trivial_hom(X0.P, T.P), X0, T)
    return pushout_x2(f, g2, coset_limit)
