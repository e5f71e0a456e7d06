"""Pre-crossed and crossed modules, their morphisms, and Peiffer commutators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .errors import (
    BoundExceeded,
    CM1Violation,
    CM2Violation,
    KernelNotCentral,
    NotAnAction,
    NotEpi,
    NotEquivariant,
    NotNormal,
    SquareNotCommuting,
)
from .groups import (
    ActionTable,
    FiniteGroup,
    GroupHom,
    Subgroup,
    automorphism_tables,
    conjugation_action,
    identity_hom,
    iter_homs,
    subgroup_generated,
    trivial_action,
    trivial_group,
    trivial_hom,
)

AUT_BOUND = 24


def _check_shapes(M, P, act, boundary):
    if act.actor != P or act.space != M:
        raise NotAnAction("action must be of P on M")
    if boundary.src != M or boundary.dst != P:
        raise ValueError("boundary must be a homomorphism M -> P")


def cm1_witness(M, P, act, boundary) -> tuple[int, int] | None:
    d = np.asarray(boundary.map)
    lhs = d[act.table]  # [p, m] -> d(p.m)
    pt, pinv = P.table, np.asarray(P.inv)
    rhs = pt[pt[:, d], pinv[:, None]]  # p d(m) p^-1
    bad = np.argwhere(lhs != rhs)
    return tuple(map(int, bad[0])) if bad.size else None


def cm2_witness(M, act, boundary) -> tuple[int, int] | None:
    d = np.asarray(boundary.map)
    lhs = act.table[d]  # [m, n] -> d(m).n
    mt, minv = M.table, np.asarray(M.inv)
    rhs = mt[mt, minv[:, None]]  # m n m^-1
    bad = np.argwhere(lhs != rhs)
    return tuple(map(int, bad[0])) if bad.size else None


@dataclass(frozen=True, eq=True)
class PreCrossedModule:
    M: FiniteGroup
    P: FiniteGroup
    act: ActionTable
    boundary: GroupHom

    def __post_init__(self):
        _check_shapes(self.M, self.P, self.act, self.boundary)
        w = cm1_witness(self.M, self.P, self.act, self.boundary)
        if w is not None:
            raise CM1Violation(f"d(p.m) != p d(m) p^-1 at (p, m) = {w}", witness=w)

    def __repr__(self):
        return f"{type(self).__name__}(|M|={self.M.order}, |P|={self.P.order})"

    @property
    def d(self) -> GroupHom:
        return self.boundary

    @cached_property
    def is_crossed(self) -> bool:
        return cm2_witness(self.M, self.act, self.boundary) is None


@dataclass(frozen=True, eq=True, repr=False)
class CrossedModule(PreCrossedModule):
    def __post_init__(self):
        super().__post_init__()
        w = cm2_witness(self.M, self.act, self.boundary)
        if w is not None:
            raise CM2Violation(f"d(m).n != m n m^-1 at (m, n) = {w}", witness=w)


def precrossed(M, P, act, boundary) -> PreCrossedModule:
    return PreCrossedModule(M, P, act, boundary)


def crossed(M, P, act, boundary) -> CrossedModule:
    return CrossedModule(M, P, act, boundary)


def as_crossed(X: PreCrossedModule) -> CrossedModule:
    return X if isinstance(X, CrossedModule) else CrossedModule(X.M, X.P, X.act, X.boundary)


# ---------------------------------------------------------------------------
# standard constructions


def normal_inclusion(P: FiniteGroup, N: Subgroup) -> CrossedModule:
    if N.parent != P:
        raise ValueError("N must be a subgroup of P")
    if not N.is_normal:
        raise NotNormal("subgroup is not normal")
    M, inc = N.as_group()
    act = ActionTable(
        P,
        M,
        tuple(tuple(inc.map.index(P.conj(p, inc.map[m])) for m in M.elements) for p in P.elements),
    )
    return CrossedModule(M, P, act, inc)


def automorphism_xmod(M: FiniteGroup, *, bound: int = AUT_BOUND) -> CrossedModule:
    """``M -> Aut(M)``, ``m`` going to conjugation by ``m``."""
    if M.order > bound:
        raise BoundExceeded(f"|M| = {M.order} exceeds Aut bound {bound}")
    auts = automorphism_tables(M, bound=bound)
    pos = {a: i for i, a in enumerate(auts)}
    mul = tuple(tuple(pos[tuple(a[x] for x in b)] for b in auts) for a in auts)
    inv = []
    for a in auts:
        ai = [0] * M.order
        for x, y in enumerate(a):
            ai[y] = x
        inv.append(pos[tuple(ai)])
    labels = tuple("aut" + "".join(f".{v}" for v in a) if i else "id" for i, a in enumerate(auts))
    A = FiniteGroup(mul, tuple(inv), labels)
    act = ActionTable(A, M, tuple(auts))
    chi = GroupHom(M, A, tuple(pos[tuple(M.conj(m, x) for x in M.elements)] for m in M.elements))
    return CrossedModule(M, A, act, chi)


def minimal_section(f: GroupHom) -> list[int]:
    """Minimal-index preimage of each element of ``f.dst``."""
    s = [-1] * f.dst.order
    for x, y in enumerate(f.map):
        if s[y] < 0:
            s[y] = x
    return s


def central_extension_xmod(boundary: GroupHom, section: Callable[[int], int] | list[int] | None = None) -> CrossedModule:
    """Crossed module from an epimorphism with central kernel; ``P`` acts through a section."""
    M, P = boundary.src, boundary.dst
    if not boundary.is_surjective:
        missing = next(p for p in P.elements if p not in set(boundary.map))
        raise NotEpi("boundary is not surjective", witness=(missing,))
    for k in boundary.kernel().elements:
        for g in M.elements:
            if M.mul[k][g] != M.mul[g][k]:
                raise KernelNotCentral("kernel is not central", witness=(k, g))
    if section is None:
        section = minimal_section(boundary)
    s = section if callable(section) else section.__getitem__
    for p in P.elements:
        if boundary.map[s(p)] != p:
            raise ValueError(f"section value at {p} is not a preimage")
    act = ActionTable(P, M, tuple(tuple(M.conj(s(p), m) for m in M.elements) for p in P.elements))
    return CrossedModule(M, P, act, boundary)


def module_xmod(M: FiniteGroup, P: FiniteGroup, act: ActionTable) -> CrossedModule:
    """The zero map from a ``P``-module ``M``; CM2 forces ``M`` abelian."""
    return CrossedModule(M, P, act, trivial_hom(M, P))


def identity_xmod(G: FiniteGroup) -> CrossedModule:
    return CrossedModule(G, G, conjugation_action(G), identity_hom(G))


def trivial_xmod(P: FiniteGroup | None = None) -> CrossedModule:
    P = P or trivial_group()
    one = trivial_group()
    return CrossedModule(one, P, trivial_action(P, one), trivial_hom(one, P))


# ---------------------------------------------------------------------------
# Peiffer commutators


def peiffer_commutator(X: PreCrossedModule, m: int, m2: int) -> int:
    """``m m2 m^-1 (d(m).m2^-1)``."""
    M = X.M
    return M.m(m, m2, M.inv[m], X.act.act[X.boundary.map[m]][M.inv[m2]])


def peiffer_table(X: PreCrossedModule) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(peiffer_commutator(X, a, b) for b in X.M.elements) for a in X.M.elements)


def peiffer_subgroup(X: PreCrossedModule) -> Subgroup:
    vals = {v for row in peiffer_table(X) for v in row}
    S = subgroup_generated(X.M, vals)
    assert S.is_normal, "Peiffer subgroup must be normal"
    return S


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, eq=True)
class XModMorphism:
    mu: GroupHom
    eta: GroupHom
    src: PreCrossedModule
    dst: PreCrossedModule

    def __post_init__(self):
        S, D = self.src, self.dst
        if self.mu.src != S.M or self.mu.dst != D.M or self.eta.src != S.P or self.eta.dst != D.P:
            raise ValueError("morphism components do not match source and target")
        for m in S.M.elements:
            if self.eta.map[S.boundary.map[m]] != D.boundary.map[self.mu.map[m]]:
                raise SquareNotCommuting(f"eta d != d' mu at m = {m}", witness=(m,))
        mu = np.asarray(self.mu.map)
        eta = np.asarray(self.eta.map)
        lhs = mu[S.act.table]
        rhs = D.act.table[eta[:, None], mu[None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            w = tuple(map(int, bad[0]))
            raise NotEquivariant(f"mu(p.m) != eta(p).mu(m) at (p, m) = {w}", witness=w)

    def __repr__(self):
        return f"XModMorphism({self.src!r} -> {self.dst!r})"

    def compose(self, first: "XModMorphism") -> "XModMorphism":
        """``self o first``."""
        return XModMorphism(self.mu.compose(first.mu), self.eta.compose(first.eta), first.src, self.dst)


def xmod_morphism(mu, eta, src, dst) -> XModMorphism:
    return XModMorphism(mu, eta, src, dst)


def identity_morphism(X: PreCrossedModule) -> XModMorphism:
    return XModMorphism(identity_hom(X.M), identity_hom(X.P), X, X)


def iter_xmod_morphisms(X: PreCrossedModule, Y: PreCrossedModule, *, eta: GroupHom | None = None, injective=False):
    """All morphisms ``X -> Y``, optionally over a fixed base map."""
    etas = [eta] if eta is not None else list(iter_homs(X.P, Y.P, injective=injective))
    mus = list(iter_homs(X.M, Y.M, injective=injective))
    for e in etas:
        for mu in mus:
            try:
                yield XModMorphism(mu, e, X, Y)
            except (SquareNotCommuting, NotEquivariant):
                continue


def find_xmod_isomorphism(X: PreCrossedModule, Y: PreCrossedModule, *, eta: GroupHom | None = None) -> XModMorphism | None:
    if X.M.order != Y.M.order or X.P.order != Y.P.order:
        return None
    return next(iter_xmod_morphisms(X, Y, eta=eta, injective=True), None)
