"""Pullback (co-induced) crossed and 2-crossed modules along ``phi: P -> Q``."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LiftingEscapesKernel, NoFactorization, NotUnique, ValidationFailure
from .groups import (
    HOM_ENUM_BOUND,
    ActionTable,
    FiniteGroup,
    GroupHom,
    Subgroup,
    identity_hom,
    iter_homs,
)
from .x2mod import TwoCrossedModule, X2Morphism
from .xmod import CrossedModule, XModMorphism

UNIQUE = "unique"
NOT_CHECKED = "not checked"


def fiber_product(f: GroupHom, g: GroupHom) -> tuple[FiniteGroup, list[tuple[int, int]]]:
    """``{(a, b) : f(a) = g(b)}`` ordered lexicographically, ``a`` major."""
    if f.dst != g.dst:
        raise ValueError("maps must share a codomain")
    A, B = f.src, g.src
    pairs = [(a, b) for a in A.elements for b in B.elements if f.map[a] == g.map[b]]
    pos = {pr: i for i, pr in enumerate(pairs)}
    mul = tuple(
        tuple(pos[(A.mul[a1][a2], B.mul[b1][b2])] for a2, b2 in pairs) for a1, b1 in pairs
    )
    inv = tuple(pos[(A.inv[a], B.inv[b])] for a, b in pairs)
    labels = tuple(f"({A.label(a)},{B.label(b)})" for a, b in pairs)
    return FiniteGroup(mul, inv, labels), pairs


@dataclass(frozen=True)
class PullbackXModResult:
    module: CrossedModule
    proj_to_N: XModMorphism
    legend: tuple[tuple[int, int], ...]
    phi: GroupHom


def pullback_xmod(Nmod: CrossedModule, phi: GroupHom) -> PullbackXModResult:
    """``phi*(N) = {(n, p) : v(n) = phi(p)}`` as a crossed P-module."""
    if phi.dst != Nmod.P:
        raise ValueError("phi must land in the base of the module")
    v = Nmod.boundary
    P = phi.src
    G, pairs = fiber_product(v, phi)
    pos = {pr: i for i, pr in enumerate(pairs)}
    act = ActionTable(
        P,
        G,
        tuple(
            tuple(pos[(Nmod.act.act[phi.map[q]][n], P.conj(q, p))] for n, p in pairs)
            for q in P.elements
        ),
    )
    d = GroupHom(G, P, tuple(p for _, p in pairs))
    module = CrossedModule(G, P, act, d)
    proj = XModMorphism(GroupHom(G, Nmod.M, tuple(n for n, _ in pairs)), phi, module, Nmod)
    return PullbackXModResult(module, proj, tuple(pairs), phi)


@dataclass(frozen=True)
class Factorization:
    hom: GroupHom
    uniqueness: str
    candidates: int | None = None


def pullback_xmod_universal(Mmod: CrossedModule, h_phi: XModMorphism, pb: PullbackXModResult, *, bound: int = HOM_ENUM_BOUND) -> Factorization:
    """The unique ``h': M -> phi*(N)``, ``m -> (h(m), d(m))``, with ``proj o h' = h``."""
    if h_phi.eta != pb.phi or h_phi.src != Mmod or h_phi.dst != pb.proj_to_N.dst:
        raise ValueError("morphism must be over the pullback's phi, from Mmod to the pulled-back module")
    pos = {pr: i for i, pr in enumerate(pb.legend)}
    M = Mmod.M
    try:
        hp = GroupHom(M, pb.module.M, tuple(pos[(h_phi.mu.map[m], Mmod.boundary.map[m])] for m in M.elements))
        XModMorphism(hp, identity_hom(Mmod.P), Mmod, pb.module)
    except (KeyError, ValidationFailure) as e:
        raise NoFactorization(f"candidate factorization is not a morphism: {e}") from e
    if pb.proj_to_N.mu.compose(hp) != h_phi.mu:
        raise NoFactorization("triangle does not commute")
    if M.order > bound:
        return Factorization(hp, NOT_CHECKED)
    count = 0
    pm, target = pb.proj_to_N.mu.map, h_phi.mu.map
    for g in iter_homs(M, pb.module.M, bound=bound):
        if tuple(pm[v] for v in g.map) != target:
            continue
        try:
            XModMorphism(g, identity_hom(Mmod.P), Mmod, pb.module)
        except ValidationFailure:
            continue
        count += 1
    if count != 1:
        raise NotUnique(f"{count} factorizations found", witness=count)
    return Factorization(hp, UNIQUE, count)


# ---------------------------------------------------------------------------
# dimension 2


@dataclass(frozen=True)
class PullbackX2Result:
    module: TwoCrossedModule
    proj: X2Morphism
    top_legend: tuple[int, ...]
    legend: tuple[tuple[int, int], ...]
    phi: GroupHom


def pullback_x2mod(X2: TwoCrossedModule, phi: GroupHom) -> PullbackX2Result:
    """Pull ``H -> N -> Q`` back along ``phi: P -> Q``."""
    if phi.dst != X2.P:
        raise ValueError("phi must land in the base of the 2-crossed module")
    H, N = X2.L, X2.M
    P = phi.src
    # d2^-1(Ker d1)
    top_mask = tuple(X2.d1.map[X2.d2.map[h]] == 0 for h in H.elements)
    T, emb = Subgroup(H, top_mask).as_group()
    tpos = {h: i for i, h in enumerate(emb.map)}
    G, pairs = fiber_product(X2.d1, phi)
    pos = {pr: i for i, pr in enumerate(pairs)}
    for n0, _ in pairs:
        for n1, _ in pairs:
            v = X2.lifting[n0][n1]
            if v not in tpos:
                raise LiftingEscapesKernel("lifting value outside d2^-1(Ker d1)", witness=(n0, n1, v))
    d2 = GroupHom(T, G, tuple(pos[(X2.d2.map[h], 0)] for h in emb.map))
    d1 = GroupHom(G, P, tuple(p for _, p in pairs))
    actM = ActionTable(
        P,
        G,
        tuple(
            tuple(pos[(X2.actM.act[phi.map[q]][n], P.conj(q, p))] for n, p in pairs)
            for q in P.elements
        ),
    )
    actL = ActionTable(
        P, T, tuple(tuple(tpos[X2.actL.act[phi.map[q]][h]] for h in emb.map) for q in P.elements)
    )
    lifting = tuple(tuple(tpos[X2.lifting[n0][n1]] for n1, _ in pairs) for n0, _ in pairs)
    module = TwoCrossedModule(T, G, P, d2, d1, actL, actM, lifting)
    proj = X2Morphism(emb, GroupHom(G, N, tuple(n for n, _ in pairs)), phi, module, X2)
    return PullbackX2Result(module, proj, tuple(emb.map), tuple(pairs), phi)


@dataclass(frozen=True)
class Factorization2:
    f2: GroupHom
    f1: GroupHom
    uniqueness: str
    candidates: int | None = None


def pullback_x2_universal(src: TwoCrossedModule, f: X2Morphism, pb: PullbackX2Result, *, bound: int = HOM_ENUM_BOUND) -> Factorization2:
    """Factor ``f`` through the pullback: ``f2* = f2``, ``f1*(b) = (f1(b), d1(b))``."""
    if f.f0 != pb.phi or f.src != src or f.dst != pb.proj.dst:
        raise ValueError("morphism must be over the pullback's phi into the pulled-back module")
    tgt = pb.module
    tpos = {h: i for i, h in enumerate(pb.top_legend)}
    pos = {pr: i for i, pr in enumerate(pb.legend)}
    idP = identity_hom(src.P)
    try:
        f2s = GroupHom(src.L, tgt.L, tuple(tpos[f.f2.map[b]] for b in src.L.elements))
        f1s = GroupHom(src.M, tgt.M, tuple(pos[(f.f1.map[b], src.d1.map[b])] for b in src.M.elements))
        X2Morphism(f2s, f1s, idP, src, tgt)
    except (KeyError, ValidationFailure) as e:
        raise NoFactorization(f"candidate factorization is not a morphism: {e}") from e
    if pb.proj.f2.compose(f2s) != f.f2 or pb.proj.f1.compose(f1s) != f.f1:
        raise NoFactorization("factorization does not recover f")
    if max(src.L.order, src.M.order) > bound:
        return Factorization2(f2s, f1s, NOT_CHECKED)
    p1, p2 = pb.proj.f1.map, pb.proj.f2.map
    g1s = [g for g in iter_homs(src.M, tgt.M, bound=bound) if tuple(p1[v] for v in g.map) == f.f1.map]
    g2s = [g for g in iter_homs(src.L, tgt.L, bound=bound) if tuple(p2[v] for v in g.map) == f.f2.map]
    count = 0
    for g1 in g1s:
        for g2 in g2s:
            try:
                X2Morphism(g2, g1, idP, src, tgt)
            except ValidationFailure:
                continue
            count += 1
    if count != 1:
        raise NotUnique(f"{count} factorizations found", witness=count)
    return Factorization2(f2s, f1s, UNIQUE, count)
