"""Induced crossed modules and induced 2-crossed modules.

Dimension 1: ``phi*(M)`` for a crossed P-module ``M`` and ``phi: P -> Q``,
generated by pairs ``(q, m)``. Dimension 2: ``theta*(L)`` for a 2-crossed
module ``L -> M -> P`` and a pre-crossed morphism ``theta = (phi', phi)`` to
``N -> Q``, generated by pairs ``(q, l)`` and brackets ``{n1, n2}``.

Three routes are available. ``epi`` builds the quotient of the source by the
action commutator subgroup directly (needs surjective maps), ``mono`` uses the
transversal presentation (needs ``phi`` injective), and ``general`` enumerates
the full presentation. Every decided result is run through the validators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from ._qgroups import (
    Enumerated,
    QPresentation,
    close_and_build,
    commutator_word,
    enumerate_group,
    extend_or_fail,
)
from .errors import (
    CM2Violation,
    NotUnique,
    NotWellDefined,
    PL2Violation,
    PL3Violation,
    PL4Violation,
    PresentationTooLarge,
    StrategyMismatch,
    UndecidedAtLimit,
    ValidationFailure,
)
from .fp import DEFAULT_COSET_LIMIT, CosetTable, Presentation, Word, free_reduce, inverse_word
from .groups import (
    HOM_ENUM_BOUND,
    ActionTable,
    FiniteGroup,
    GroupHom,
    action_commutator_subgroup,
    identity_hom,
    iter_homs,
    left_transversal,
    quotient,
)
from .pullback import NOT_CHECKED, UNIQUE, Factorization
from .x2mod import TwoCrossedModule, X2Morphism
from .xmod import CrossedModule, PreCrossedModule, XModMorphism, minimal_section, peiffer_commutator

MAX_RELATORS = 20_000

DECIDED = "Decided"
UNDECIDED = "UndecidedAtLimit"

DEFINITION = "definition"
DISPLAY = "display"


class Strategy(str, Enum):
    AUTO = "auto"
    EPI = "epi"
    MONO = "mono"
    GENERAL = "general"


def _cap(count: int, cap: int):
    if count > cap:
        raise PresentationTooLarge(f"presentation would have {count} relators (cap {cap})", witness=count)


def _relator(*parts: Sequence[int]) -> Word:
    w: list[int] = []
    for p in parts:
        w.extend(p)
    return free_reduce(w)


def _inv(w: Sequence[int]) -> Word:
    return inverse_word(w)


# ---------------------------------------------------------------------------
# dimension 1


@dataclass
class InducedXModResult:
    source: CrossedModule
    phi: GroupHom
    presentation: Presentation
    strategy_used: Strategy
    status: str
    module: CrossedModule | None = None
    canonical: GroupHom | None = None
    morphism: XModMorphism | None = None
    pair_element: dict[tuple[int, int], int] = field(default_factory=dict)
    semantics: list[tuple] = field(default_factory=list)
    coset_table: CosetTable | None = None
    closure_rounds: int = 0
    coset_limit: int | None = None

    @property
    def decided(self) -> bool:
        return self.status == DECIDED

    def require(self) -> "InducedXModResult":
        if not self.decided:
            raise UndecidedAtLimit("order undecided at coset limit", self.presentation, self.coset_limit)
        return self


def _general_qpres_1(Mmod: CrossedModule, phi: GroupHom, max_relators: int) -> tuple[QPresentation, list[tuple]]:
    M, P, Q = Mmod.M, Mmod.P, phi.dst
    nm = M.order
    _cap(Q.order * nm * nm + Q.order * P.order * nm + (Q.order * nm) ** 2, max_relators)

    def g(q, m):
        return q * nm + m + 1

    names, legend, boundary, semantics = [], [], [], []
    for q in Q.elements:
        for m in M.elements:
            names.append(f"x{q}_{m}")
            legend.append(f"({Q.label(q)},{M.label(m)})")
            boundary.append(Q.conj(q, phi.map[Mmod.boundary.map[m]]))
            semantics.append(("M", q, m))
    qperm = [[Q.mul[a][q] * nm + m for q in Q.elements for m in M.elements] for a in Q.elements]
    rels: list[Word] = []
    for q in Q.elements:
        for m1 in M.elements:
            for m2 in M.elements:
                rels.append((g(q, m1), g(q, m2), -g(q, M.mul[m1][m2])))
    for q in Q.elements:
        for p in P.elements:
            for m in M.elements:
                rels.append((g(q, Mmod.act.act[p][m]), -g(Q.mul[q][phi.map[p]], m)))
    for q1 in Q.elements:
        for m1 in M.elements:
            c = Q.conj(q1, phi.map[Mmod.boundary.map[m1]])
            for q2 in Q.elements:
                for m2 in M.elements:
                    rels.append((g(q1, m1), g(q2, m2), -g(q1, m1), -g(Q.mul[c][q2], m2)))
    pres = Presentation(tuple(names), tuple(rels), tuple(legend))
    return QPresentation(pres, Q, Q, qperm, boundary), semantics


def induced_xmod_presentation(Mmod: CrossedModule, phi: GroupHom, *, max_relators: int = MAX_RELATORS) -> Presentation:
    """Generators ``Q x M``; relators for the free Q-group, the P-action identification and Peiffer."""
    return _general_qpres_1(Mmod, phi, max_relators)[0].pres


def _mono_qpres_1(Mmod: CrossedModule, phi: GroupHom, max_relators: int):
    M, Q = Mmod.M, phi.dst
    nm = M.order
    T = left_transversal(Q, phi.image())
    tindex = {t: i for i, t in enumerate(T)}
    coset = {}
    for t in T:
        for h in phi.image().elements:
            coset[Q.mul[t][h]] = t
    pre = {v: p for p, v in enumerate(phi.map)}
    nt = len(T)
    _cap(nt * nm * nm + (nt * nm) ** 2, max_relators)

    def split(x):
        # x = u phi(p)
        u = coset[x]
        return u, pre[Q.mul[Q.inv[u]][x]]

    names, legend, boundary, semantics = [], [], [], []
    for t in T:
        for m in M.elements:
            names.append(f"t{tindex[t]}_{m}")
            legend.append(f"_{Q.label(t)}{M.label(m)}")
            boundary.append(Q.conj(t, phi.map[Mmod.boundary.map[m]]))
            semantics.append(("M", t, m))
    qperm = []
    for q in Q.elements:
        row = []
        for t in T:
            u, p = split(Q.mul[q][t])
            for m in M.elements:
                row.append(tindex[u] * nm + Mmod.act.act[p][m])
        qperm.append(row)
    qp = QPresentation(Presentation(tuple(names), (), tuple(legend)), Q, Q, qperm, boundary)
    rels: list[Word] = []
    for ti in range(nt):
        for m1 in M.elements:
            for m2 in M.elements:
                rels.append((ti * nm + m1 + 1, ti * nm + m2 + 1, -(ti * nm + M.mul[m1][m2] + 1)))
    ng = nt * nm
    for b in range(ng):
        for c in range(ng):
            rels.append((b + 1, c + 1, -(b + 1), -(qperm[boundary[b]][c] + 1)))
    qp.pres = Presentation(tuple(names), tuple(rels), tuple(legend))
    pair = {}
    for q in Q.elements:
        for m in M.elements:
            pair[(q, m)] = qperm[q][m]  # q . (_1 m)
    return qp, semantics, pair


def _build_xmod_1(qp: QPresentation, en: Enumerated) -> CrossedModule:
    G, Q = en.group, qp.Q
    gens = en.gen_elems
    d = extend_or_fail(G, Q, gens, qp.boundary, "boundary")
    rows = []
    for q in Q.elements:
        rows.append(extend_or_fail(G, G, gens, [gens[x] for x in qp.qperm[q]], f"action of {q}").map)
    return CrossedModule(G, Q, ActionTable(Q, G, tuple(rows)), d)


def _repair_xmod_1(qp: QPresentation):
    def repair(e: ValidationFailure, en: Enumerated):
        if isinstance(e, CM2Violation):
            m, n = e.witness
            wm, wn = en.words[m], en.words[n]
            return [_relator(wm, wn, _inv(wm), _inv(qp.translate(wn, qp.bd(wm))))]
        return None

    return repair


def _epi_1(Mmod: CrossedModule, phi: GroupHom):
    M, P, Q = Mmod.M, Mmod.P, phi.dst
    K = phi.kernel()
    C = action_commutator_subgroup(K, Mmod.act)
    G, proj = quotient(M, C)
    s = minimal_section(phi)
    for p in P.elements:
        sp = s[phi.map[p]]
        for m in M.elements:
            if proj.map[Mmod.act.act[p][m]] != proj.map[Mmod.act.act[sp][m]]:
                raise NotWellDefined("Q-action depends on the chosen preimage", witness=(p, sp, m))
    rows = [[-1] * G.order for _ in Q.elements]
    dmap = [-1] * G.order
    for m in M.elements:
        c = proj.map[m]
        dv = phi.map[Mmod.boundary.map[m]]
        if dmap[c] not in (-1, dv):
            raise NotWellDefined("boundary does not descend to the quotient", witness=(m,))
        dmap[c] = dv
        for q in Q.elements:
            v = proj.map[Mmod.act.act[s[q]][m]]
            if rows[q][c] not in (-1, v):
                raise NotWellDefined("Q-action does not descend to the quotient", witness=(q, m))
            rows[q][c] = v
    module = CrossedModule(G, Q, ActionTable(Q, G, tuple(map(tuple, rows))), GroupHom(G, Q, tuple(dmap)))
    pair = {(q, m): rows[q][proj.map[m]] for q in Q.elements for m in M.elements}
    return module, pair


def _finish_1(res: InducedXModResult) -> InducedXModResult:
    M = res.source.M
    res.canonical = GroupHom(M, res.module.M, tuple(res.pair_element[(0, m)] for m in M.elements))
    res.morphism = XModMorphism(res.canonical, res.phi, res.source, res.module)
    # generators (q, m) are sent to q.phi(mu(m)).q^-1
    Q = res.phi.dst
    for (q, m), x in res.pair_element.items():
        if res.module.boundary.map[x] != Q.conj(q, res.phi.map[res.source.boundary.map[m]]):
            raise NotWellDefined("boundary disagrees on a generator", witness=(q, m))
    return res


def _resolve_1(strategy: Strategy, phi: GroupHom) -> Strategy:
    strategy = Strategy(strategy)
    if strategy is Strategy.AUTO:
        if phi.is_surjective:
            return Strategy.EPI
        if phi.is_injective:
            return Strategy.MONO
        return Strategy.GENERAL
    if strategy is Strategy.EPI and not phi.is_surjective:
        raise StrategyMismatch("epi strategy needs a surjective phi")
    if strategy is Strategy.MONO and not phi.is_injective:
        raise StrategyMismatch("mono strategy needs an injective phi")
    return strategy


def induced_xmod(
    Mmod: CrossedModule,
    phi: GroupHom,
    strategy: Strategy | str = Strategy.AUTO,
    coset_limit: int = DEFAULT_COSET_LIMIT,
    *,
    max_relators: int = MAX_RELATORS,
) -> InducedXModResult:
    if phi.src != Mmod.P:
        raise ValueError("phi must start at the base of the module")
    used = _resolve_1(strategy, phi)
    qp, semantics = _general_qpres_1(Mmod, phi, max_relators)
    if used is Strategy.EPI:
        module, pair = _epi_1(Mmod, phi)
        res = InducedXModResult(Mmod, phi, qp.pres, used, DECIDED, module, pair_element=pair, semantics=semantics)
        return _finish_1(res)
    if used is Strategy.MONO:
        qp, semantics, pair_gen = _mono_qpres_1(Mmod, phi, max_relators)
    else:
        pair_gen = {(q, m): q * Mmod.M.order + m for q in phi.dst.elements for m in Mmod.M.elements}
    out = close_and_build(qp, lambda en: _build_xmod_1(qp, en), _repair_xmod_1(qp), coset_limit)
    if out.module is None:
        return InducedXModResult(
            Mmod, phi, out.presentation, used, UNDECIDED, semantics=semantics,
            coset_table=out.table, coset_limit=coset_limit,
        )
    gens = out.enumerated.gen_elems
    pair = {k: gens[g] for k, g in pair_gen.items()}
    res = InducedXModResult(
        Mmod, phi, out.presentation, used, DECIDED, out.module, pair_element=pair,
        semantics=semantics, coset_table=out.table, closure_rounds=out.rounds, coset_limit=coset_limit,
    )
    return _finish_1(res)


def _relators_vanish(pres: Presentation, images: Sequence[int], G: FiniteGroup):
    for i, r in enumerate(pres.relators):
        x = 0
        for a in r:
            v = images[abs(a) - 1]
            x = G.mul[x][v if a > 0 else G.inv[v]]
        if x != 0:
            raise NotWellDefined(f"relator {pres.format_word(r)} does not vanish", witness=(i,))


def induced_xmod_universal(res: InducedXModResult, h_phi: XModMorphism, *, bound: int = HOM_ENUM_BOUND) -> Factorization:
    """``h'(q, m) = q.h(m)``, checked well defined, a morphism over Q, and unique."""
    res.require()
    Nmod = h_phi.dst
    if h_phi.eta != res.phi or h_phi.src != res.source:
        raise ValueError("morphism must start at the source module and lie over phi")
    N = Nmod.M
    images = [Nmod.act.act[q][h_phi.mu.map[m]] for _, q, m in res.semantics]
    _relators_vanish(res.presentation, images, N)
    keys = list(res.pair_element)
    G = res.module.M
    hp = extend_or_fail(G, N, [res.pair_element[k] for k in keys], [Nmod.act.act[q][h_phi.mu.map[m]] for q, m in keys], "h'")
    idQ = identity_hom(res.phi.dst)
    XModMorphism(hp, idQ, res.module, Nmod)
    if hp.compose(res.canonical) != h_phi.mu:
        raise NotWellDefined("h' does not extend h")
    if G.order > bound:
        return Factorization(hp, NOT_CHECKED)
    count = 0
    can = res.canonical.map
    for g in iter_homs(G, N, bound=bound):
        if tuple(g.map[v] for v in can) != h_phi.mu.map:
            continue
        try:
            XModMorphism(g, idQ, res.module, Nmod)
        except ValidationFailure:
            continue
        count += 1
    if count != 1:
        raise NotUnique(f"{count} factorizations found", witness=count)
    return Factorization(hp, UNIQUE, count)


# ---------------------------------------------------------------------------
# dimension 2


@dataclass
class InducedX2Result:
    source: TwoCrossedModule
    theta: XModMorphism
    presentation: Presentation
    strategy_used: Strategy
    status: str
    module: TwoCrossedModule | None = None
    canonical: GroupHom | None = None
    morphism: X2Morphism | None = None
    pair_element: dict[tuple[int, int], int] = field(default_factory=dict)
    bracket_element: dict[tuple[int, int], int] = field(default_factory=dict)
    semantics: list[tuple] = field(default_factory=list)
    coset_table: CosetTable | None = None
    closure_rounds: int = 0
    coset_limit: int | None = None
    variant: str = DEFINITION
    note: str = ""

    @property
    def decided(self) -> bool:
        return self.status == DECIDED

    def require(self) -> "InducedX2Result":
        if not self.decided:
            raise UndecidedAtLimit("order undecided at coset limit", self.presentation, self.coset_limit)
        return self


def check_theta(theta: XModMorphism, X2: TwoCrossedModule) -> PreCrossedModule:
    src = theta.src
    if (src.M, src.P, src.act, src.boundary) != (X2.M, X2.P, X2.actM, X2.d1):
        raise ValueError("theta must start at the lower pre-crossed module of X2")
    return theta.dst


class _Families:
    """Axiom instances as relator words over a dimension-2 Q-presentation."""

    def __init__(self, qp: QPresentation, Nmod: PreCrossedModule):
        self.qp = qp
        self.N = Nmod.M
        self.beta = Nmod.boundary

    def act(self, n: int, w: Word) -> Word:
        # n.x = x {d(x)^-1, n}
        return w + self.qp.br(self.N.inv[self.qp.bd(w)], n)

    def pl2(self, x: Word, y: Word) -> Word:
        qp = self.qp
        return _relator(qp.br(qp.bd(x), qp.bd(y)), _inv(commutator_word(x, y)))

    def pl3a(self, n0, n1, n2) -> Word:
        N, br = self.N, self.qp.br
        rhs = self.act(N.conj(n0, n1), br(n0, n2)) + br(n0, n1)
        return _relator(br(n0, N.mul[n1][n2]), _inv(rhs))

    def pl3b(self, n0, n1, n2) -> Word:
        N, br = self.N, self.qp.br
        rhs = br(n0, N.conj(n1, n2)) + self.qp.translate(br(n1, n2), self.beta.map[n0])
        return _relator(br(N.mul[n0][n1], n2), _inv(rhs))

    def pl3b_display(self, n0, n1, n2) -> Word:
        N, br = self.N, self.qp.br
        rhs = br(n0, N.m(n1, N.inv[n2], n1)) + br(n0, n1)
        return _relator(br(N.mul[n0][n1], n2), _inv(rhs))

    def pl4a(self, n, x: Word) -> Word:
        return _relator(self.qp.br(self.qp.bd(x), n), _inv(x + self.act(n, _inv(x))))

    def pl4a_display(self, n, x: Word) -> Word:
        return _relator(self.qp.br(self.qp.bd(x), n), _inv(x + _inv(self.act(n, x))))

    def pl4b(self, n, x: Word) -> Word:
        rhs = self.act(n, x) + self.qp.translate(_inv(x), self.beta.map[n])
        return _relator(self.qp.br(n, self.qp.bd(x)), _inv(rhs))

    def s_relators(self, variant: str) -> list[Word]:
        qp, N = self.qp, self.N
        gens = [(g + 1,) for g in range(len(qp.boundary))]
        rels = [self.pl2(x, y) for x in gens for y in gens]
        third = self.pl3b_display if variant == DISPLAY else self.pl3b
        for n0 in N.elements:
            for n1 in N.elements:
                for n2 in N.elements:
                    rels.append(self.pl3a(n0, n1, n2))
                    rels.append(third(n0, n1, n2))
        fourth = self.pl4a_display if variant == DISPLAY else self.pl4a
        for n in N.elements:
            for x in gens:
                rels.append(fourth(n, x))
                rels.append(self.pl4b(n, x))
        return rels


def _x2_qpres(theta: XModMorphism, X2: TwoCrossedModule, *, transversal: bool, variant: str, max_relators: int):
    """Returns (QPresentation, semantics, pair generator map, bracket generator map)."""
    Nmod = check_theta(theta, X2)
    phi1, phi = theta.mu, theta.eta
    L, M, P = X2.L, X2.M, X2.P
    N, Q = Nmod.M, Nmod.P
    nl, nn = L.order, N.order
    if transversal:
        if not phi.is_injective:
            raise StrategyMismatch("transversal presentation needs an injective phi")
        T = left_transversal(Q, phi.image())
    else:
        T = list(Q.elements)
    nt = len(T)
    ng = nt * nl + nn * nn
    _cap(
        nt * nl * nl + (0 if transversal else Q.order * P.order * nl) + Q.order * M.order**2
        + ng * ng + 2 * nn**3 + 2 * nn * ng,
        max_relators,
    )
    tindex = {t: i for i, t in enumerate(T)}
    coset, pre = {}, {}
    if transversal:
        for t in T:
            for h in phi.image().elements:
                coset[Q.mul[t][h]] = t
        pre = {v: p for p, v in enumerate(phi.map)}

    def lgen(ti, l):
        return ti * nl + l

    def bgen(n1, n2):
        return nt * nl + n1 * nn + n2

    names, legend, boundary, semantics = [], [], [], []
    for t in T:
        for l in L.elements:
            names.append(f"{'t' if transversal else 'x'}{tindex[t]}_{l}")
            legend.append(f"_{Q.label(t)}{L.label(l)}" if transversal else f"({Q.label(t)},{L.label(l)})")
            boundary.append(Nmod.act.act[t][phi1.map[X2.d2.map[l]]])
            semantics.append(("L", t, l))
    for n1 in N.elements:
        for n2 in N.elements:
            names.append(f"y{n1}_{n2}")
            legend.append(f"{{{N.label(n1)},{N.label(n2)}}}")
            boundary.append(peiffer_commutator(Nmod, n1, n2))
            semantics.append(("B", n1, n2))
    qperm = []
    for q in Q.elements:
        row = []
        for t in T:
            if transversal:
                x = Q.mul[q][t]
                u = coset[x]
                p = pre[Q.mul[Q.inv[u]][x]]
                row.extend(lgen(tindex[u], X2.actL.act[p][l]) for l in L.elements)
            else:
                row.extend(lgen(Q.mul[q][t], l) for l in L.elements)
        for n1 in N.elements:
            for n2 in N.elements:
                row.append(bgen(Nmod.act.act[q][n1], Nmod.act.act[q][n2]))
        qperm.append(row)
    bracket = {(n1, n2): bgen(n1, n2) for n1 in N.elements for n2 in N.elements}
    qp = QPresentation(Presentation(tuple(names), (), tuple(legend)), Q, N, qperm, boundary, bracket)

    rels: list[Word] = []
    for ti in range(nt):
        for l1 in L.elements:
            for l2 in L.elements:
                rels.append((lgen(ti, l1) + 1, lgen(ti, l2) + 1, -(lgen(ti, L.mul[l1][l2]) + 1)))
    if not transversal:
        for q in Q.elements:
            for p in P.elements:
                for l in L.elements:
                    rels.append((lgen(Q.mul[q][phi.map[p]], l) + 1, -(lgen(q, X2.actL.act[p][l]) + 1)))
    # lifting identification {m1, m2} = {phi'(m1), phi'(m2)}, with its Q-translates
    ident = []
    for m1 in M.elements:
        for m2 in M.elements:
            ident.append(_relator((lgen(0, X2.lifting[m1][m2]) + 1,), _inv(qp.br(phi1.map[m1], phi1.map[m2]))))
    rels.extend(qp.q_closure(ident))
    rels.extend(_Families(qp, Nmod).s_relators(variant))
    qp.pres = Presentation(tuple(names), tuple(rels), tuple(legend))
    if transversal:
        pair_gen = {(q, l): qperm[q][lgen(0, l)] for q in Q.elements for l in L.elements}
    else:
        pair_gen = {(q, l): lgen(q, l) for q in Q.elements for l in L.elements}
    return qp, semantics, pair_gen, bracket


def induced_x2mod_presentation(
    theta: XModMorphism,
    X2: TwoCrossedModule,
    *,
    transversal: bool = False,
    variant: str = DEFINITION,
    max_relators: int = MAX_RELATORS,
) -> Presentation:
    """Generators ``(q, l)`` (or transversal copies ``_t l``) and brackets ``{n1, n2}``."""
    return _x2_qpres(theta, X2, transversal=transversal, variant=variant, max_relators=max_relators)[0].pres


def _build_x2(qp: QPresentation, Nmod: PreCrossedModule, en: Enumerated) -> TwoCrossedModule:
    G, Q, N = en.group, qp.Q, qp.target
    gens = en.gen_elems
    d = extend_or_fail(G, N, gens, qp.boundary, "boundary")
    rows = []
    for q in Q.elements:
        rows.append(extend_or_fail(G, G, gens, [gens[x] for x in qp.qperm[q]], f"action of {q}").map)
    lifting = tuple(tuple(gens[qp.bracket[(a, b)]] for b in N.elements) for a in N.elements)
    return TwoCrossedModule(G, N, Q, d, Nmod.boundary, ActionTable(Q, G, tuple(rows)), Nmod.act, lifting)


def _repair_x2(qp: QPresentation, fam: _Families, variant: str):
    def repair(e: ValidationFailure, en: Enumerated):
        w = e.witness
        words = en.words
        if isinstance(e, PL2Violation):
            return [fam.pl2(words[w[0]], words[w[1]])]
        if isinstance(e, PL4Violation):
            kind, l, n = w
            if kind == "a":
                f = fam.pl4a_display if variant == DISPLAY else fam.pl4a
                return [f(n, words[l])]
            return [fam.pl4b(n, words[l])]
        if isinstance(e, PL3Violation):
            kind, n0, n1, n2 = w
            if kind == "a":
                return [fam.pl3a(n0, n1, n2)]
            return [fam.pl3b(n0, n1, n2)]
        return None

    return repair


def _epi_2(theta: XModMorphism, X2: TwoCrossedModule):
    Nmod = theta.dst
    phi1, phi = theta.mu, theta.eta
    L, M, P = X2.L, X2.M, X2.P
    N, Q = Nmod.M, Nmod.P
    K = phi.kernel()
    C = action_commutator_subgroup(K, X2.actL)
    G, proj = quotient(L, C)
    sP = minimal_section(phi)
    sM = minimal_section(phi1)
    for p in P.elements:
        sp = sP[phi.map[p]]
        for l in L.elements:
            if proj.map[X2.actL.act[p][l]] != proj.map[X2.actL.act[sp][l]]:
                raise NotWellDefined("Q-action depends on the chosen preimage", witness=(p, sp, l))
    rows = [[-1] * G.order for _ in Q.elements]
    dmap = [-1] * G.order
    for l in L.elements:
        c = proj.map[l]
        dv = phi1.map[X2.d2.map[l]]
        if dmap[c] not in (-1, dv):
            raise NotWellDefined("boundary does not descend to the quotient", witness=(l,))
        dmap[c] = dv
        for q in Q.elements:
            v = proj.map[X2.actL.act[sP[q]][l]]
            if rows[q][c] not in (-1, v):
                raise NotWellDefined("Q-action does not descend to the quotient", witness=(q, l))
            rows[q][c] = v
    lifting = [[proj.map[X2.lifting[sM[a]][sM[b]]] for b in N.elements] for a in N.elements]
    for m1 in M.elements:
        for m2 in M.elements:
            if proj.map[X2.lifting[m1][m2]] != lifting[phi1.map[m1]][phi1.map[m2]]:
                raise NotWellDefined(
                    "lifting does not descend along phi' (it depends on the Ker phi' coset)",
                    witness=(m1, m2),
                )
    module = TwoCrossedModule(
        G, N, Q, GroupHom(G, N, tuple(dmap)), Nmod.boundary,
        ActionTable(Q, G, tuple(map(tuple, rows))), Nmod.act, tuple(map(tuple, lifting)),
    )
    pair = {(q, l): rows[q][proj.map[l]] for q in Q.elements for l in L.elements}
    brackets = {(a, b): lifting[a][b] for a in N.elements for b in N.elements}
    return module, pair, brackets


def _finish_2(res: InducedX2Result) -> InducedX2Result:
    L = res.source.L
    phi1, phi = res.theta.mu, res.theta.eta
    res.canonical = GroupHom(L, res.module.L, tuple(res.pair_element[(0, l)] for l in L.elements))
    res.morphism = X2Morphism(res.canonical, phi1, phi, res.source, res.module)
    # boundary on generators: (q,l) -> q.phi'(d l), {n1,n2} -> <n1,n2>
    Nmod = res.theta.dst
    d = res.module.d2.map
    for (q, l), x in res.pair_element.items():
        if d[x] != Nmod.act.act[q][phi1.map[res.source.d2.map[l]]]:
            raise NotWellDefined("boundary disagrees on a generator", witness=("L", q, l))
    for (a, b), x in res.bracket_element.items():
        if d[x] != peiffer_commutator(Nmod, a, b):
            raise NotWellDefined("boundary disagrees on a bracket", witness=("B", a, b))
    return res


def induced_x2mod(
    theta: XModMorphism,
    X2: TwoCrossedModule,
    strategy: Strategy | str = Strategy.AUTO,
    coset_limit: int = DEFAULT_COSET_LIMIT,
    *,
    variant: str = DEFINITION,
    max_relators: int = MAX_RELATORS,
) -> InducedX2Result:
    """``theta*(L)`` over ``N -> Q``.

    ``auto`` takes the quotient route when both maps are onto and the lifting
    descends, otherwise enumerates. ``mono`` selects the transversal
    presentation (``phi`` injective) and enumerates it.
    """
    Nmod = check_theta(theta, X2)
    phi1, phi = theta.mu, theta.eta
    strategy = Strategy(strategy)
    surj = phi.is_surjective and phi1.is_surjective
    note = ""
    if strategy is Strategy.EPI and not surj:
        raise StrategyMismatch("epi strategy needs phi and phi' surjective")
    if strategy is Strategy.MONO and not phi.is_injective:
        raise StrategyMismatch("mono strategy needs an injective phi")
    qp, semantics, pair_gen, bracket = _x2_qpres(
        theta, X2, transversal=strategy is Strategy.MONO, variant=variant, max_relators=max_relators
    )
    if strategy in (Strategy.EPI, Strategy.AUTO) and surj and variant == DEFINITION:
        try:
            module, pair, brackets = _epi_2(theta, X2)
        except NotWellDefined as e:
            if strategy is Strategy.EPI:
                raise
            note = f"quotient route not applicable ({e}); enumerated instead"
        else:
            res = InducedX2Result(
                X2, theta, qp.pres, Strategy.EPI, DECIDED, module,
                pair_element=pair, bracket_element=brackets, semantics=semantics,
            )
            return _finish_2(res)
    used = Strategy.MONO if strategy is Strategy.MONO else Strategy.GENERAL
    fam = _Families(qp, Nmod)
    out = close_and_build(qp, lambda en: _build_x2(qp, Nmod, en), _repair_x2(qp, fam, variant), coset_limit)
    if out.module is None:
        return InducedX2Result(
            X2, theta, out.presentation, used, UNDECIDED, semantics=semantics,
            coset_table=out.table, coset_limit=coset_limit, variant=variant, note=note,
        )
    gens = out.enumerated.gen_elems
    res = InducedX2Result(
        X2, theta, out.presentation, used, DECIDED, out.module,
        pair_element={k: gens[g] for k, g in pair_gen.items()},
        bracket_element={k: gens[g] for k, g in bracket.items()},
        semantics=semantics, coset_table=out.table, closure_rounds=out.rounds,
        coset_limit=coset_limit, variant=variant, note=note,
    )
    return _finish_2(res)


def compare_relator_variants(theta: XModMorphism, X2: TwoCrossedModule, coset_limit: int = DEFAULT_COSET_LIMIT) -> dict:
    """Enumerate both relator sets once, without the closure loop, and report what each gives."""
    Nmod = check_theta(theta, X2)
    report = {}
    for variant in (DEFINITION, DISPLAY):
        qp = _x2_qpres(theta, X2, transversal=False, variant=variant, max_relators=MAX_RELATORS)[0]
        en = enumerate_group(qp.pres, coset_limit)
        if isinstance(en, CosetTable):
            report[variant] = {"order": None, "valid": None, "detail": "undecided at limit"}
            continue
        try:
            _build_x2(qp, Nmod, en)
            report[variant] = {"order": en.group.order, "valid": True, "detail": "PL1-PL5 pass"}
        except ValidationFailure as e:
            report[variant] = {"order": en.group.order, "valid": False, "detail": f"{type(e).__name__}: {e}"}
    return report


def induced_x2_universal(res: InducedX2Result, f: X2Morphism, *, bound: int = HOM_ENUM_BOUND) -> Factorization:
    """``f*((q,l){n1,n2}) = q.f(l) {n1,n2}``, checked well defined, a morphism, and unique."""
    res.require()
    tgt = f.dst
    Nmod = res.theta.dst
    if f.src != res.source or f.f1 != res.theta.mu or f.f0 != res.theta.eta:
        raise ValueError("f must start at the source and lie over theta")
    if (tgt.M, tgt.P, tgt.actM, tgt.d1) != (Nmod.M, Nmod.P, Nmod.act, Nmod.boundary):
        raise ValueError("target must be a 2-crossed module over the same N -> Q")
    B = tgt.L

    def image(sem):
        kind, a, b = sem
        if kind == "L":
            return tgt.actL.act[a][f.f2.map[b]]
        return tgt.lifting[a][b]

    _relators_vanish(res.presentation, [image(s) for s in res.semantics], B)
    G = res.module.L
    gens, imgs = [], []
    for (q, l), x in res.pair_element.items():
        gens.append(x)
        imgs.append(image(("L", q, l)))
    for (a, b), x in res.bracket_element.items():
        gens.append(x)
        imgs.append(image(("B", a, b)))
    fs = extend_or_fail(G, B, gens, imgs, "f*")
    idN, idQ = identity_hom(Nmod.M), identity_hom(Nmod.P)
    X2Morphism(fs, idN, idQ, res.module, tgt)
    if fs.compose(res.canonical) != f.f2:
        raise NotWellDefined("f* does not extend f")
    if G.order > bound:
        return Factorization(fs, NOT_CHECKED)
    count = 0
    can = res.canonical.map
    for g in iter_homs(G, B, bound=bound):
        if tuple(g.map[v] for v in can) != f.f2.map:
            continue
        try:
            X2Morphism(g, idN, idQ, res.module, tgt)
        except ValidationFailure:
            continue
        count += 1
    if count != 1:
        raise NotUnique(f"{count} factorizations found", witness=count)
    return Factorization(fs, UNIQUE, count)
