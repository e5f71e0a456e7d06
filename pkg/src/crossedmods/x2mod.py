"""2-crossed modules ``L -> M -> P`` with an explicit Peiffer lifting table.

Axioms (``{-,-}`` the lifting, M acting on L through ``m.l = l {d2 l^-1, m}``)::

    PL1  d2{m0,m1} = m0 m1 m0^-1 (d1(m0).m1^-1)
    PL2  {d2 l0, d2 l1} = [l0, l1]
    PL3  {m0, m1 m2} = (m0 m1 m0^-1).{m0,m2} . {m0,m1}
         {m0 m1, m2} = {m0, m1 m2 m1^-1} . (d1(m0).{m1,m2})
    PL4  {d2 l, m} = l (m.l^-1),   {m, d2 l} = (m.l)(d1(m).l^-1)
    PL5  p.{m0,m1} = {p.m0, p.m1}
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    EquivarianceViolation,
    LiftingNotTrivial,
    LiftingViolation,
    NormalComplexViolation,
    NotAnAction,
    NotEquivariant,
    PL1Violation,
    PL2Violation,
    PL3Violation,
    PL4Violation,
    PL5Violation,
    SquareNotCommuting,
)
from .groups import (
    ActionTable,
    FiniteGroup,
    GroupHom,
    identity_hom,
    iter_homs,
    quotient,
    trivial_action,
    trivial_group,
    trivial_hom,
)
from .xmod import CrossedModule, PreCrossedModule, XModMorphism, peiffer_subgroup, peiffer_table

Table = tuple[tuple[int, ...], ...]


def _first(mask: np.ndarray):
    bad = np.argwhere(mask)
    return tuple(int(v) for v in bad[0]) if bad.size else None


@dataclass(frozen=True)
class TwoCrossedModule:
    L: FiniteGroup
    M: FiniteGroup
    P: FiniteGroup
    d2: GroupHom
    d1: GroupHom
    actL: ActionTable
    actM: ActionTable
    lifting: Table

    def __post_init__(self):
        L, M, P = self.L, self.M, self.P
        if self.d2.src != L or self.d2.dst != M or self.d1.src != M or self.d1.dst != P:
            raise ValueError("boundaries do not match L -> M -> P")
        if self.actL.actor != P or self.actL.space != L or self.actM.actor != P or self.actM.space != M:
            raise NotAnAction("actions must be of P on L and on M")
        lift = self.lift
        if lift.shape != (M.order, M.order) or lift.min() < 0 or lift.max() >= L.order:
            raise ValueError("lifting must be an |M| x |M| table of L elements")
        self._check_normal_complex()
        self._check_equivariance()
        self._check_pl1()
        self._check_pl2()
        self._check_pl4()
        self._check_pl3()
        self._check_pl5()

    def __repr__(self):
        return f"TwoCrossedModule(|L|={self.L.order}, |M|={self.M.order}, |P|={self.P.order})"

    # -- tables

    @cached_property
    def lift(self) -> np.ndarray:
        arr = np.array(self.lifting, dtype=np.int32).reshape(self.M.order, self.M.order)
        arr.setflags(write=False)
        return arr

    @cached_property
    def m_action(self) -> np.ndarray:
        """``[m, l] -> m.l = l {d2 l^-1, m}``."""
        L = self.L
        d2 = np.asarray(self.d2.map)
        linv = np.asarray(L.inv)
        t = self.lift[d2[linv]].T  # [m, l] -> {d2 l^-1, m}
        return L.table[np.arange(L.order)[None, :], t]

    def bracket(self, m0: int, m1: int) -> int:
        return self.lifting[m0][m1]

    # -- axioms

    def _check_normal_complex(self):
        L, M, P = self.L, self.M, self.P
        for l in L.elements:
            if self.d1.map[self.d2.map[l]] != 0:
                raise NormalComplexViolation(f"d1 d2 is not trivial at l = {l}", witness=(l,))
        im2 = self.d2.image()
        for m in M.elements:
            for x in im2.elements:
                if not im2.member[M.conj(m, x)]:
                    raise NormalComplexViolation("image of d2 is not normal in M", witness=(m, x))
        im1 = self.d1.image()
        for p in P.elements:
            for x in im1.elements:
                if not im1.member[P.conj(p, x)]:
                    raise NormalComplexViolation("image of d1 is not normal in P", witness=(p, x))

    def _check_equivariance(self):
        P = self.P
        d1 = np.asarray(self.d1.map)
        d2 = np.asarray(self.d2.map)
        pt, pinv = P.table, np.asarray(P.inv)
        w = _first(d1[self.actM.table] != pt[pt[:, d1], pinv[:, None]])
        if w is not None:
            raise EquivarianceViolation(f"d1(p.m) != p d1(m) p^-1 at (p, m) = {w}", witness=w)
        w = _first(d2[self.actL.table] != self.actM.table[:, d2])
        if w is not None:
            raise EquivarianceViolation(f"d2(p.l) != p.d2(l) at (p, l) = {w}", witness=w)

    def _check_pl1(self):
        M = self.M
        peiffer = np.array(
            [
                [M.m(a, b, M.inv[a], self.actM.act[self.d1.map[a]][M.inv[b]]) for b in M.elements]
                for a in M.elements
            ]
        )
        w = _first(np.asarray(self.d2.map)[self.lift] != peiffer)
        if w is not None:
            raise PL1Violation(f"d2{{m0,m1}} is not the Peiffer commutator at {w}", witness=w)

    def _check_pl2(self):
        L = self.L
        d2 = np.asarray(self.d2.map)
        lhs = self.lift[d2[:, None], d2[None, :]]
        lt, linv = L.table, np.asarray(L.inv)
        comm = lt[lt[lt, linv[:, None]], linv[None, :]]  # l0 l1 l0^-1 l1^-1
        w = _first(lhs != comm)
        if w is not None:
            raise PL2Violation(f"{{d2 l0, d2 l1}} != [l0, l1] at {w}", witness=w)

    def _check_pl4(self):
        L = self.L
        lt, linv = L.table, np.asarray(L.inv)
        d1 = np.asarray(self.d1.map)
        d2 = np.asarray(self.d2.map)
        ma = self.m_action  # [m, l]
        nl, nm = L.order, self.M.order
        ls = np.arange(nl)[:, None]
        ms = np.arange(nm)[None, :]
        # a) {d2 l, m} = l (m.l^-1)
        lhs = self.lift[d2[ls], ms]
        rhs = lt[ls, ma[ms, linv[ls]]]
        w = _first(lhs != rhs)
        if w is not None:
            raise PL4Violation(f"{{d2 l, m}} != l (m.l^-1) at (l, m) = {w}", witness=("a",) + w)
        # b) {m, d2 l} = (m.l)(d1(m).l^-1)
        lhs = self.lift[ms, d2[ls]]
        rhs = lt[ma[ms, ls], self.actL.table[d1[ms], linv[ls]]]
        w = _first(lhs != rhs)
        if w is not None:
            raise PL4Violation(f"{{m, d2 l}} != (m.l)(d1(m).l^-1) at (l, m) = {w}", witness=("b",) + w)

    def _check_pl3(self):
        M, L = self.M, self.L
        mt, minv = M.table, np.asarray(M.inv)
        lt = L.table
        lam = self.lift
        ma = self.m_action
        d1 = np.asarray(self.d1.map)
        n = M.order
        ar = np.arange(n)
        conj = mt[mt, minv[:, None]]  # [a, b] -> a b a^-1
        # {m0, m1 m2} = (m0 m1 m0^-1).{m0,m2} . {m0,m1}
        lhs = lam[ar[:, None, None], mt[None, :, :]]
        rhs = lt[ma[conj[:, :, None], lam[:, None, :]], lam[:, :, None]]
        w = _first(lhs != rhs)
        if w is not None:
            raise PL3Violation(f"first PL3 identity fails at (m0, m1, m2) = {w}", witness=("a",) + w)
        # {m0 m1, m2} = {m0, m1 m2 m1^-1} . (d1(m0).{m1,m2})
        lhs = lam[mt[:, :, None], ar[None, None, :]]
        rhs = lt[lam[ar[:, None, None], conj[None, :, :]], self.actL.table[d1[:, None, None], lam[None, :, :]]]
        w = _first(lhs != rhs)
        if w is not None:
            raise PL3Violation(f"second PL3 identity fails at (m0, m1, m2) = {w}", witness=("b",) + w)

    def _check_pl5(self):
        am = self.actM.table
        lhs = self.actL.table[:, self.lift]  # [p, m0, m1]
        rhs = self.lift[am[:, :, None], am[:, None, :]]
        w = _first(lhs != rhs)
        if w is not None:
            raise PL5Violation(f"p.{{m0,m1}} != {{p.m0, p.m1}} at (p, m0, m1) = {w}", witness=w)

    # -- derived structure

    @property
    def lower(self) -> PreCrossedModule:
        """The pre-crossed module ``d1: M -> P``."""
        return PreCrossedModule(self.M, self.P, self.actM, self.d1)

    def upper_xmod(self) -> CrossedModule:
        """``d2: L -> M`` under the induced M-action; raises if it is not crossed."""
        act = ActionTable(self.M, self.L, tuple(map(tuple, self.m_action.tolist())))
        return CrossedModule(self.L, self.M, act, self.d2)

    @property
    def lifting_is_trivial(self) -> bool:
        return not self.lift.any()


def two_crossed(L, M, P, d2, d1, actL, actM, lifting) -> TwoCrossedModule:
    lifting = tuple(tuple(int(v) for v in row) for row in lifting)
    return TwoCrossedModule(L, M, P, d2, d1, actL, actM, lifting)


def induced_m_action(X2: TwoCrossedModule, m: int, l: int) -> int:
    """``m.l = l {d2 l^-1, m}``."""
    L = X2.L
    return L.mul[l][X2.lifting[X2.d2.map[L.inv[l]]][m]]


def from_crossed(X: CrossedModule) -> TwoCrossedModule:
    one = trivial_group()
    n = X.M.order
    return TwoCrossedModule(
        one,
        X.M,
        X.P,
        trivial_hom(one, X.M),
        X.boundary,
        trivial_action(X.P, one),
        X.act,
        ((0,) * n,) * n,
    )


def from_precrossed_peiffer(X: PreCrossedModule) -> TwoCrossedModule:
    """``<M,M> -> M -> P`` with lifting the Peiffer commutator."""
    S = peiffer_subgroup(X)
    L, inc = S.as_group()
    pos = {x: i for i, x in enumerate(inc.map)}
    actL = ActionTable(
        X.P, L, tuple(tuple(pos[X.act.act[p][x]] for x in inc.map) for p in X.P.elements)
    )
    lifting = tuple(tuple(pos[v] for v in row) for row in peiffer_table(X))
    return TwoCrossedModule(L, X.M, X.P, inc, X.boundary, actL, X.act, lifting)


def reflect_to_xmod(X2: TwoCrossedModule) -> tuple[CrossedModule, GroupHom]:
    """``M/Im d2 -> P`` with the inherited boundary and action, plus the projection of M."""
    Q, proj = quotient(X2.M, X2.d2.image())
    reps = [proj.map.index(c) for c in Q.elements]
    d = GroupHom(Q, X2.P, tuple(X2.d1.map[r] for r in reps))
    act = ActionTable(
        X2.P, Q, tuple(tuple(proj.map[X2.actM.act[p][r]] for r in reps) for p in X2.P.elements)
    )
    return CrossedModule(Q, X2.P, act, d), proj


# ---------------------------------------------------------------------------
# trivial-lifting diagnostics


@dataclass
class Claim:
    name: str
    passed: bool
    witness: tuple | None = None


@dataclass
class TrivialLiftingReport:
    claims: list[Claim] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def lines(self) -> list[str]:
        out = []
        for c in self.claims:
            s = f"{c.name}: {'pass' if c.passed else 'FAIL'}"
            if c.witness is not None:
                s += f" witness={c.witness}"
            out.append(s)
        return out


def trivial_lifting_report(X2: TwoCrossedModule) -> TrivialLiftingReport:
    """Check what a constant lifting forces: M -> P crossed, L abelian, Im d1 acting trivially on L."""
    nz = np.argwhere(X2.lift != 0)
    if nz.size:
        raise LiftingNotTrivial("lifting is not constant", witness=tuple(int(v) for v in nz[0]))
    from .xmod import cm2_witness

    rep = TrivialLiftingReport()
    w = cm2_witness(X2.M, X2.actM, X2.d1)
    rep.claims.append(Claim("Peiffer identity holds for M -> P", w is None, w))
    L = X2.L
    w = next(((a, b) for a in L.elements for b in L.elements if L.mul[a][b] != L.mul[b][a]), None)
    rep.claims.append(Claim("L is abelian", w is None, w))
    im = sorted(set(X2.d1.map))
    w = next(((p, l) for p in im for l in L.elements if X2.actL.act[p][l] != l), None)
    rep.claims.append(Claim("Im d1 acts trivially on L", w is None, w))
    return rep


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class X2Morphism:
    f2: GroupHom
    f1: GroupHom
    f0: GroupHom
    src: TwoCrossedModule
    dst: TwoCrossedModule

    def __post_init__(self):
        S, D = self.src, self.dst
        f2, f1, f0 = self.f2, self.f1, self.f0
        if (f2.src, f2.dst, f1.src, f1.dst, f0.src, f0.dst) != (S.L, D.L, S.M, D.M, S.P, D.P):
            raise ValueError("morphism components do not match source and target")
        a2, a1, a0 = (np.asarray(f.map) for f in (f2, f1, f0))
        w = _first(a0[np.asarray(S.d1.map)] != np.asarray(D.d1.map)[a1])
        if w is not None:
            raise SquareNotCommuting(f"f0 d1 != d1' f1 at m = {w}", witness=("f0d1",) + w)
        w = _first(a1[np.asarray(S.d2.map)] != np.asarray(D.d2.map)[a2])
        if w is not None:
            raise SquareNotCommuting(f"f1 d2 != d2' f2 at l = {w}", witness=("f1d2",) + w)
        w = _first(a1[S.actM.table] != D.actM.table[a0[:, None], a1[None, :]])
        if w is not None:
            raise NotEquivariant(f"f1(p.m) != f0(p).f1(m) at {w}", witness=("M",) + w)
        w = _first(a2[S.actL.table] != D.actL.table[a0[:, None], a2[None, :]])
        if w is not None:
            raise NotEquivariant(f"f2(p.l) != f0(p).f2(l) at {w}", witness=("L",) + w)
        w = _first(D.lift[a1[:, None], a1[None, :]] != a2[S.lift])
        if w is not None:
            raise LiftingViolation(f"{{f1 m0, f1 m1}} != f2{{m0, m1}} at {w}", witness=w)

    def __repr__(self):
        return f"X2Morphism({self.src!r} -> {self.dst!r})"

    def compose(self, first: "X2Morphism") -> "X2Morphism":
        return X2Morphism(
            self.f2.compose(first.f2), self.f1.compose(first.f1), self.f0.compose(first.f0), first.src, self.dst
        )


def x2_morphism(f2, f1, f0, src, dst) -> X2Morphism:
    return X2Morphism(f2, f1, f0, src, dst)


def identity_x2morphism(X2: TwoCrossedModule) -> X2Morphism:
    return X2Morphism(identity_hom(X2.L), identity_hom(X2.M), identity_hom(X2.P), X2, X2)


def from_crossed_morphism(F: XModMorphism) -> X2Morphism:
    src = from_crossed(F.src)
    dst = from_crossed(F.dst)
    return X2Morphism(identity_hom(src.L), F.mu, F.eta, src, dst)


_MORPHISM_ERRORS = (SquareNotCommuting, NotEquivariant, LiftingViolation)


def iter_x2_morphisms(src: TwoCrossedModule, dst: TwoCrossedModule, *, f0: GroupHom | None = None, injective=False):
    """All 2-crossed morphisms ``src -> dst``, filtered level by level."""
    f0s = [f0] if f0 is not None else list(iter_homs(src.P, dst.P, injective=injective))
    f1s = list(iter_homs(src.M, dst.M, injective=injective))
    f2s = list(iter_homs(src.L, dst.L, injective=injective))
    for g0 in f0s:
        for g1 in f1s:
            try:
                XModMorphism(g1, g0, src.lower, dst.lower)
            except (SquareNotCommuting, NotEquivariant):
                continue
            for g2 in f2s:
                try:
                    yield X2Morphism(g2, g1, g0, src, dst)
                except _MORPHISM_ERRORS:
                    continue


def find_x2_isomorphism(X: TwoCrossedModule, Y: TwoCrossedModule, *, f0: GroupHom | None = None) -> X2Morphism | None:
    if (X.L.order, X.M.order, X.P.order) != (Y.L.order, Y.M.order, Y.P.order):
        return None
    return next(iter_x2_morphisms(X, Y, f0=f0, injective=True), None)
