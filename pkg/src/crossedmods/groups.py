"""Finite groups as multiplication tables over dense indices.

Element ``0`` is always the identity. Homomorphisms and actions are total
tables, so every axiom check is an exhaustive scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BoundExceeded, NotAGroup, NotAHom, NotAnAction, NotNormal

MAX_CHECK_ORDER = 256
HOM_ENUM_BOUND = 64

Table = tuple[tuple[int, ...], ...]


def _assoc_witness(mul: np.ndarray) -> tuple[int, int, int] | None:
    n = mul.shape[0]
    idx = np.arange(n)
    # chunk over the first factor to keep memory bounded at order 256
    step = max(1, 2**20 // (n * n))
    for lo in range(0, n, step):
        xs = idx[lo : lo + step]
        lhs = mul[mul[xs][:, :, None], idx[None, None, :]]
        rhs = mul[xs[:, None, None], mul[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            x, y, z = bad[0]
            return int(xs[x]), int(y), int(z)
    return None


@dataclass(frozen=True)
class FiniteGroup:
    """A validated finite group; construct through :func:`group_from_table`."""

    mul: Table
    inv: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n = len(self.mul)
        if n == 0:
            raise NotAGroup("empty table")
        if n > MAX_CHECK_ORDER:
            raise BoundExceeded(f"order {n} exceeds exhaustive-check bound {MAX_CHECK_ORDER}")
        if any(len(row) != n for row in self.mul) or len(self.inv) != n:
            raise NotAGroup("table is not square")
        arr = self.table
        if arr.min() < 0 or arr.max() >= n:
            raise NotAGroup("table entry out of range")
        ident = np.arange(n)
        if not (np.array_equal(arr[0], ident) and np.array_equal(arr[:, 0], ident)):
            raise NotAGroup("element 0 is not the identity", witness=(0,))
        inv = np.asarray(self.inv)
        bad = np.flatnonzero((arr[ident, inv] != 0) | (arr[inv, ident] != 0))
        if bad.size:
            raise NotAGroup("inverse table is wrong", witness=(int(bad[0]),))
        w = _assoc_witness(arr)
        if w is not None:
            raise NotAGroup(f"not associative at {w}", witness=w)
        if self.labels is not None:
            if len(self.labels) != n:
                raise NotAGroup("label count does not match order")
            if len(set(self.labels)) != n:
                raise NotAGroup("labels are not unique")

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self):
        return len(self.mul)

    @property
    def elements(self) -> range:
        return range(len(self.mul))

    @cached_property
    def table(self) -> np.ndarray:
        arr = np.array(self.mul, dtype=np.int32)
        arr.setflags(write=False)
        return arr

    def m(self, *xs: int) -> int:
        """Product of the given elements, left to right."""
        r = 0
        for x in xs:
            r = self.mul[r][x]
        return r

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def commutator(self, x: int, y: int) -> int:
        """``x y x^-1 y^-1``."""
        return self.m(x, y, self.inv[x], self.inv[y])

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mul[y][x]
            k += 1
        return k

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def center(self) -> "Subgroup":
        t = self.table
        return Subgroup(self, tuple(bool(np.array_equal(t[x], t[:, x])) for x in self.elements))

    def whole(self) -> "Subgroup":
        return Subgroup(self, (True,) * self.order)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (True,) + (False,) * (self.order - 1))


def group_from_table(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> FiniteGroup:
    """Validate a Cayley table and return the group, identity moved to index 0."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise NotAGroup("table is not square")
    arr = np.array(table, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= n:
        raise NotAGroup("table entry out of range")
    if n > MAX_CHECK_ORDER:
        raise BoundExceeded(f"order {n} exceeds exhaustive-check bound {MAX_CHECK_ORDER}")
    ident = np.arange(n)
    e = next(
        (i for i in range(n) if np.array_equal(arr[i], ident) and np.array_equal(arr[:, i], ident)),
        None,
    )
    if e is None:
        # witness: a cell (x, y) where the best identity candidate x fails
        rows = [i for i in range(n) if np.array_equal(arr[i], ident)]
        x = rows[0] if rows else 0
        bad = np.flatnonzero(arr[:, x] != ident) if rows else np.flatnonzero(arr[0] != ident)
        w = (int(bad[0]), x) if rows else (0, int(bad[0]))
        raise NotAGroup("no two-sided identity", witness=w)
    inv = []
    for i in range(n):
        js = np.flatnonzero((arr[i] == e) & (arr[:, i] == e))
        if js.size == 0:
            raise NotAGroup(f"element {i} has no inverse", witness=(i,))
        inv.append(int(js[0]))
    w = _assoc_witness(arr)
    if w is not None:
        raise NotAGroup(f"not associative at {w}", witness=w)
    # relocate identity to 0 by swapping indices e <-> 0
    perm = list(range(n))
    perm[0], perm[e] = e, 0
    new = [[perm[int(arr[perm[i], perm[j]])] for j in range(n)] for i in range(n)]
    new_inv = [perm[inv[perm[i]]] for i in range(n)]
    new_labels = None if labels is None else tuple(labels[perm[i]] for i in range(n))
    return FiniteGroup(tuple(map(tuple, new)), tuple(new_inv), new_labels)


def trivial_group() -> FiniteGroup:
    return FiniteGroup(((0,),), (0,), ("1",))


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class GroupHom:
    src: FiniteGroup
    dst: FiniteGroup
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.src.order:
            raise NotAHom("map is not total over the source")
        if any(not (0 <= v < self.dst.order) for v in self.map):
            raise NotAHom("map value out of range")
        if self.map[0] != 0:
            raise NotAHom("identity not sent to identity", witness=(0, 0))
        f = np.asarray(self.map)
        lhs = f[self.src.table]
        rhs = self.dst.table[f[:, None], f[None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            x, y = map(int, bad[0])
            raise NotAHom(f"f({x}*{y}) != f({x})f({y})", witness=(x, y))

    @classmethod
    def _trusted(cls, src, dst, mapping) -> "GroupHom":
        """Skip validation for maps already known to be homomorphisms."""
        h = object.__new__(cls)
        object.__setattr__(h, "src", src)
        object.__setattr__(h, "dst", dst)
        object.__setattr__(h, "map", mapping)
        return h

    def __repr__(self):
        return f"GroupHom({self.src.order}->{self.dst.order}, {list(self.map)})"

    def __call__(self, x: int) -> int:
        return self.map[x]

    def compose(self, first: "GroupHom") -> "GroupHom":
        """``self o first``."""
        if first.dst != self.src:
            raise ValueError("maps are not composable")
        return GroupHom._trusted(first.src, self.dst, tuple(self.map[v] for v in first.map))

    def kernel(self) -> "Subgroup":
        return Subgroup(self.src, tuple(v == 0 for v in self.map))

    def image(self) -> "Subgroup":
        img = set(self.map)
        return Subgroup(self.dst, tuple(x in img for x in self.dst.elements))

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == self.src.order

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.dst.order

    @property
    def is_trivial(self) -> bool:
        return not any(self.map)


def hom(src: FiniteGroup, dst: FiniteGroup, mapping: Sequence[int]) -> GroupHom:
    return GroupHom(src, dst, tuple(int(v) for v in mapping))


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(G.elements))


def trivial_hom(G: FiniteGroup, H: FiniteGroup) -> GroupHom:
    return GroupHom(G, H, (0,) * G.order)


def extend_to_hom(
    src: FiniteGroup, dst: FiniteGroup, gens: Sequence[int], images: Sequence[int]
) -> tuple[int, ...] | None:
    """Extend ``gens[i] -> images[i]`` to a homomorphism table.

    Returns ``None`` when the assignment is inconsistent or ``gens`` do not
    generate ``src``. Consistency along every edge ``x -> x*g`` of the Cayley
    graph is exactly the homomorphism property.
    """
    smul, dmul = src.mul, dst.mul
    out = [-1] * src.order
    out[0] = 0
    queue = [0]
    pairs = list(zip(gens, images))
    for x in queue:
        fx = out[x]
        row = smul[x]
        drow = dmul[fx]
        for g, h in pairs:
            y = row[g]
            v = drow[h]
            if out[y] < 0:
                out[y] = v
                queue.append(y)
            elif out[y] != v:
                return None
    if len(queue) != src.order:
        return None
    return tuple(out)


# ---------------------------------------------------------------------------
# actions


@dataclass(frozen=True)
class ActionTable:
    """Left action of ``actor`` on ``space`` by automorphisms."""

    actor: FiniteGroup
    space: FiniteGroup
    act: Table

    def __post_init__(self):
        A, S = self.actor, self.space
        if len(self.act) != A.order or any(len(r) != S.order for r in self.act):
            raise NotAnAction("action table has wrong dimensions")
        arr = self.table
        if arr.min() < 0 or arr.max() >= S.order:
            raise NotAnAction("action entry out of range")
        if not np.array_equal(arr[0], np.arange(S.order)):
            bad = int(np.flatnonzero(arr[0] != np.arange(S.order))[0])
            raise NotAnAction("identity does not act trivially", witness=(0, bad))
        for p in A.elements:
            row = arr[p]
            if len(set(row.tolist())) != S.order:
                raise NotAnAction(f"row {p} is not a bijection", witness=(p,))
            bad = np.argwhere(row[S.table] != S.table[row[:, None], row[None, :]])
            if bad.size:
                x, y = map(int, bad[0])
                raise NotAnAction(f"row {p} is not a homomorphism", witness=(p, x, y))
        # act[pq] = act[p] o act[q]
        lhs = arr[A.table]  # [p, q, m] -> act[pq][m]
        rhs = arr[np.arange(A.order)[:, None, None], arr[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            p, q, m = map(int, bad[0])
            raise NotAnAction("action does not compose", witness=(p, q, m))

    def __repr__(self):
        return f"ActionTable({self.actor.order} on {self.space.order})"

    @cached_property
    def table(self) -> np.ndarray:
        arr = np.array(self.act, dtype=np.int32)
        arr.setflags(write=False)
        return arr

    def __call__(self, p: int, m: int) -> int:
        return self.act[p][m]

    @property
    def is_trivial(self) -> bool:
        return bool(np.all(self.table == np.arange(self.space.order)))

    def pull(self, f: GroupHom) -> "ActionTable":
        """Action of ``f.src`` through ``f``: ``p . m = f(p) . m``."""
        return ActionTable(f.src, self.space, tuple(self.act[f.map[p]] for p in f.src.elements))


def action_from_table(actor: FiniteGroup, space: FiniteGroup, act: Sequence[Sequence[int]]) -> ActionTable:
    return ActionTable(actor, space, tuple(tuple(int(v) for v in row) for row in act))


def conjugation_action(G: FiniteGroup) -> ActionTable:
    return ActionTable(G, G, tuple(tuple(G.conj(p, m) for m in G.elements) for p in G.elements))


def trivial_action(actor: FiniteGroup, space: FiniteGroup) -> ActionTable:
    row = tuple(space.elements)
    return ActionTable(actor, space, (row,) * actor.order)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    member: tuple[bool, ...]

    def __post_init__(self):
        G = self.parent
        if len(self.member) != G.order or not self.member[0]:
            raise ValueError("subgroup mask must have parent order and contain the identity")
        els = self.elements
        for x in els:
            if not self.member[G.inv[x]]:
                raise ValueError(f"subgroup not closed under inverse at {x}")
            row = G.mul[x]
            for y in els:
                if not self.member[row[y]]:
                    raise ValueError(f"subgroup not closed at ({x}, {y})")

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.order})"

    def __contains__(self, x: int) -> bool:
        return self.member[x]

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.member) if b)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @cached_property
    def is_normal(self) -> bool:
        G = self.parent
        return all(self.member[G.conj(g, x)] for g in G.elements for x in self.elements)

    @cached_property
    def _as_group(self) -> tuple[FiniteGroup, GroupHom]:
        G = self.parent
        els = self.elements
        pos = {x: i for i, x in enumerate(els)}
        mul = tuple(tuple(pos[G.mul[x][y]] for y in els) for x in els)
        inv = tuple(pos[G.inv[x]] for x in els)
        labels = None if G.labels is None else tuple(G.labels[x] for x in els)
        H = FiniteGroup(mul, inv, labels)
        return H, GroupHom(H, G, els)

    def as_group(self) -> tuple[FiniteGroup, GroupHom]:
        """The subgroup as a group in its own right, with its embedding."""
        return self._as_group


def _closure(G: FiniteGroup, start: Iterable[int]) -> list[bool]:
    member = [False] * G.order
    member[0] = True
    gens = [g for g in dict.fromkeys(start) if g != 0]
    queue = [0]
    for x in queue:
        row = G.mul[x]
        for g in gens:
            y = row[g]
            if not member[y]:
                member[y] = True
                queue.append(y)
    return member


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(G, tuple(_closure(G, gens)))


def normal_closure(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    conj = {G.conj(g, x) for x in gens for g in G.elements}
    return Subgroup(G, tuple(_closure(G, conj)))


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """``G/N`` with cosets represented by their minimal element index."""
    if N.parent is not G and N.parent != G:
        raise ValueError("subgroup belongs to a different group")
    if not N.is_normal:
        raise NotNormal("cannot form a quotient by a non-normal subgroup")
    coset_of = [-1] * G.order
    reps: list[int] = []
    for g in G.elements:
        if coset_of[g] < 0:
            k = len(reps)
            reps.append(g)
            for x in N.elements:
                coset_of[G.mul[g][x]] = k
    mul = tuple(tuple(coset_of[G.mul[a][b]] for b in reps) for a in reps)
    inv = tuple(coset_of[G.inv[a]] for a in reps)
    labels = None if G.labels is None else tuple(f"[{G.labels[r]}]" for r in reps)
    Q = FiniteGroup(mul, inv, labels)
    return Q, GroupHom(G, Q, tuple(coset_of))


def left_transversal(G: FiniteGroup, H: Subgroup) -> list[int]:
    """Minimal-index representative of each left coset ``gH``, in increasing order."""
    seen = [False] * G.order
    reps = []
    for g in G.elements:
        if not seen[g]:
            reps.append(g)
            for h in H.elements:
                seen[G.mul[g][h]] = True
    return reps


def action_commutator_subgroup(K: Subgroup, act: ActionTable) -> Subgroup:
    """Subgroup of ``act.space`` generated by ``k.m * m^-1`` for k in K."""
    if K.parent != act.actor:
        raise ValueError("K must be a subgroup of the acting group")
    M = act.space
    gens = {M.mul[act.act[k][m]][M.inv[m]] for k in K.elements for m in M.elements}
    return subgroup_generated(M, gens)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """``G x H`` with element ``(g, h)`` at index ``g*|H| + h``."""
    nh = H.order
    pairs = [(g, h) for g in G.elements for h in H.elements]
    mul = tuple(
        tuple(G.mul[g1][g2] * nh + H.mul[h1][h2] for g2, h2 in pairs) for g1, h1 in pairs
    )
    inv = tuple(G.inv[g] * nh + H.inv[h] for g, h in pairs)
    labels = tuple(f"({G.label(g)},{H.label(h)})" for g, h in pairs)
    return FiniteGroup(mul, inv, labels)


# ---------------------------------------------------------------------------
# homomorphism enumeration


def generating_set(G: FiniteGroup) -> list[int]:
    """A small generating set, grown greedily by largest subgroup gained."""
    gens: list[int] = []
    current = _closure(G, gens)
    while not all(current):
        best, best_size = -1, -1
        for x in G.elements:
            if current[x]:
                continue
            size = sum(_closure(G, gens + [x]))
            if size > best_size:
                best, best_size = x, size
        gens.append(best)
        current = _closure(G, gens)
    return gens


def iter_homs(
    G: FiniteGroup, H: FiniteGroup, *, injective: bool = False, bound: int = HOM_ENUM_BOUND
) -> Iterator[GroupHom]:
    """Lazily enumerate homomorphisms ``G -> H`` by generator-image search."""
    if G.order > bound:
        raise BoundExceeded(f"|G| = {G.order} exceeds enumeration bound {bound}")
    gens = generating_set(G)
    h_orders = [H.element_order(y) for y in H.elements]
    cands = []
    for g in gens:
        k = G.element_order(g)
        if injective:
            cands.append([y for y in H.elements if h_orders[y] == k])
        else:
            cands.append([y for y in H.elements if k % h_orders[y] == 0])
    for imgs in itertools.product(*cands):
        m = extend_to_hom(G, H, gens, imgs)
        if m is None:
            continue
        if injective and len(set(m)) != G.order:
            continue
        yield GroupHom._trusted(G, H, m)  # extend_to_hom checked every Cayley edge


def enumerate_homs(
    G: FiniteGroup, H: FiniteGroup, max_count: int | None = None, *, bound: int = HOM_ENUM_BOUND
) -> list[GroupHom]:
    it = iter_homs(G, H, bound=bound)
    if max_count is not None:
        it = itertools.islice(it, max_count)
    return list(it)


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, *, bound: int = HOM_ENUM_BOUND) -> GroupHom | None:
    if G.order != H.order:
        return None
    return next(iter_homs(G, H, injective=True, bound=bound), None)


def automorphism_tables(G: FiniteGroup, *, bound: int = HOM_ENUM_BOUND) -> list[tuple[int, ...]]:
    """All automorphisms of ``G`` as maps, identity first then lexicographic."""
    maps = sorted(f.map for f in iter_homs(G, G, injective=True, bound=bound))
    ident = tuple(G.elements)
    maps.remove(ident)
    return [ident] + maps
