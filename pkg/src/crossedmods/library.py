"""Small standard groups."""

from __future__ import annotations

from typing import Sequence

from .groups import FiniteGroup, direct_product, trivial_group

__all__ = [
    "cyclic",
    "dihedral",
    "symmetric3",
    "klein_four",
    "quaternion",
    "permutation_group",
    "direct_product",
    "trivial_group",
]


def _power_label(sym: str, k: int) -> str:
    if k == 0:
        return "1"
    return sym if k == 1 else f"{sym}^{k}"


def cyclic(n: int, sym: str = "a") -> FiniteGroup:
    """``C_n`` with element ``k`` equal to ``a^k``."""
    if n < 1:
        raise ValueError("n must be positive")
    mul = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    return FiniteGroup(mul, inv, tuple(_power_label(sym, k) for k in range(n)))


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``: element ``(k, s)`` is ``r^k t^s`` at index ``k + n*s``."""
    if n < 1:
        raise ValueError("n must be positive")

    def idx(k, s):
        return k % n + n * s

    def prod(x, y):
        k1, s1 = x % n, x // n
        k2, s2 = y % n, y // n
        # r^k1 t^s1 r^k2 t^s2 = r^(k1 +- k2) t^(s1+s2)
        return idx(k1 + (k2 if s1 == 0 else -k2), (s1 + s2) % 2)

    N = 2 * n
    mul = tuple(tuple(prod(x, y) for y in range(N)) for x in range(N))
    inv = tuple(next(y for y in range(N) if mul[x][y] == 0) for x in range(N))
    labels = []
    for x in range(N):
        k, s = x % n, x // n
        lab = _power_label("r", k)
        if s:
            lab = "t" if k == 0 else lab + "t"
        labels.append(lab)
    return FiniteGroup(mul, inv, tuple(labels))


def permutation_group(gens: Sequence[Sequence[int]], degree: int | None = None) -> FiniteGroup:
    """Group generated by permutations (images of ``0..d-1``), elements in BFS order."""
    if degree is None:
        degree = len(gens[0]) if gens else 1
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    elems = [ident]
    pos = {ident: 0}
    for x in elems:
        for g in gens:
            y = tuple(x[g[i]] for i in range(degree))  # x o g
            if y not in pos:
                pos[y] = len(elems)
                elems.append(y)
    mul = tuple(tuple(pos[tuple(x[y[i]] for i in range(degree))] for y in elems) for x in elems)
    inv = []
    for x in elems:
        xi = [0] * degree
        for i, v in enumerate(x):
            xi[v] = i
        inv.append(pos[tuple(xi)])
    labels = tuple("".join(map(str, x)) for x in elems)
    return FiniteGroup(mul, tuple(inv), labels)


def symmetric3() -> FiniteGroup:
    return permutation_group([(1, 0, 2), (0, 2, 1)])


def klein_four() -> FiniteGroup:
    return direct_product(cyclic(2, "a"), cyclic(2, "b"))


def quaternion() -> FiniteGroup:
    """``Q8`` on indices: ``i^k`` at ``k`` (k<4) and ``i^k j`` at ``4+k``."""

    def prod(x, y):
        k1, s1 = x % 4, x // 4
        k2, s2 = y % 4, y // 4
        if s1 == 0:
            return (k1 + k2) % 4 + 4 * s2
        # i^k1 j i^k2 = i^(k1-k2) j ; j j = i^2
        k = (k1 - k2) % 4
        if s2 == 0:
            return k + 4
        return (k + 2) % 4

    mul = tuple(tuple(prod(x, y) for y in range(8)) for x in range(8))
    inv = tuple(next(y for y in range(8) if mul[x][y] == 0) for x in range(8))
    labels = ("1", "i", "-1", "-i", "j", "ij", "-j", "-ij")
    return FiniteGroup(mul, inv, labels)
