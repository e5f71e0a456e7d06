"""Finitely presented groups and bounded Todd-Coxeter coset enumeration.

Words are tuples of nonzero ints: ``k`` is generator ``k-1`` and ``-k`` its
inverse. Enumeration is over cosets of the trivial subgroup, so a complete
table is the right regular representation of the presented group.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import UndeclaredSymbol, UndecidedAtLimit
from .groups import MAX_CHECK_ORDER, FiniteGroup, group_from_table

DEFAULT_COSET_LIMIT = 100_000

Word = tuple[int, ...]

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_.']*)(?:\^(-?\d+))?$")


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> Word:
    w = free_reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i : j + 1]


def inverse_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def power_word(word: Sequence[int], k: int) -> Word:
    if k < 0:
        return tuple(inverse_word(word)) * (-k)
    return tuple(word) * k


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    legend: tuple[str, ...] | None = None

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generator names")
        n = len(gens)
        rels = []
        seen = set()
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > n:
                    raise UndeclaredSymbol(f"relator uses undeclared generator index {x}", witness=tuple(r))
            w = free_reduce(r)
            if w and w not in seen:
                seen.add(w)
                rels.append(w)
        if self.legend is not None and len(self.legend) != n:
            raise ValueError("legend length does not match generators")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))
        if self.legend is not None:
            object.__setattr__(self, "legend", tuple(self.legend))

    def __repr__(self):
        return f"Presentation({len(self.generators)} generators, {len(self.relators)} relators)"

    def parse_word(self, text: str) -> Word:
        return parse_word(self.generators, text)

    def format_word(self, word: Sequence[int]) -> str:
        return format_word(self.generators, word)


def parse_word(generators: Sequence[str], text: str) -> Word:
    """Parse ``"a b^-1 c^3"``; ``"1"`` or ``""`` is the empty word."""
    index = {g: i + 1 for i, g in enumerate(generators)}
    out: list[int] = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m or m.group(1) not in index:
            raise UndeclaredSymbol(f"undeclared symbol in word: {tok!r}", witness=tok)
        k = int(m.group(2)) if m.group(2) is not None else 1
        out.extend(power_word((index[m.group(1)],), k))
    return tuple(out)


def format_word(generators: Sequence[str], word: Sequence[int]) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name = generators[abs(word[i]) - 1]
        k = (j - i) * (1 if word[i] > 0 else -1)
        parts.append(name if k == 1 else f"{name}^{k}")
        i = j
    return " ".join(parts)


def presentation(generators: Sequence[str], relators: Iterable[str | Sequence[int]], legend=None) -> Presentation:
    gens = tuple(generators)
    words = [parse_word(gens, r) if isinstance(r, str) else tuple(r) for r in relators]
    return Presentation(gens, tuple(words), legend)


def free_product(p1: Presentation, p2: Presentation) -> Presentation:
    """Disjoint union of generators and relators; clashing names in ``p2`` get a suffix."""
    names = list(p1.generators)
    taken = set(names)
    for g in p2.generators:
        new = g
        k = 2
        while new in taken:
            new = f"{g}_{k}"
            k += 1
        taken.add(new)
        names.append(new)
    shift = len(p1.generators)
    rels = list(p1.relators) + [tuple(x + shift if x > 0 else x - shift for x in r) for r in p2.relators]
    legend = None
    if p1.legend is not None or p2.legend is not None:
        legend = (p1.legend or p1.generators) + (p2.legend or p2.generators)
    return Presentation(tuple(names), tuple(rels), legend)


def quotient_by(p: Presentation, extra: Iterable[str | Sequence[int]]) -> Presentation:
    words = [parse_word(p.generators, r) if isinstance(r, str) else tuple(r) for r in extra]
    return Presentation(p.generators, p.relators + tuple(words), p.legend)


# ---------------------------------------------------------------------------
# coset enumeration


class Status(Enum):
    COMPLETE = "Complete"
    LIMIT_EXCEEDED = "LimitExceeded"


@dataclass(frozen=True)
class CosetTable:
    """Outcome of an enumeration.

    On ``COMPLETE`` the rows are standardized (cosets numbered in BFS order,
    columns ``2i`` / ``2i+1`` for generator ``i`` and its inverse) and
    ``group`` is the reconstructed group, whose element ``c`` is coset ``c``.
    """

    status: Status
    coset_limit: int
    rows: tuple[tuple[int, ...], ...] = ()
    group: FiniteGroup | None = None
    generator_images: tuple[int, ...] = ()
    cosets_defined: int = 0

    @property
    def complete(self) -> bool:
        return self.status is Status.COMPLETE

    @property
    def order(self) -> int | None:
        return len(self.rows) if self.complete else None

    def __repr__(self):
        if self.complete:
            return f"CosetTable(Complete, order={len(self.rows)})"
        return f"CosetTable(LimitExceeded, limit={self.coset_limit})"


def _col(x: int) -> int:
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


class _Enumerator:
    def __init__(self, pres: Presentation, limit: int):
        self.ncols = 2 * len(pres.generators)
        self.limit = limit
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.deductions: list[tuple[int, int]] = []
        rels = [cyclic_reduce(r) for r in pres.relators]
        rels = [tuple(_col(x) for x in r) for r in rels if r]
        self.relators = rels
        # cyclic conjugates of relators and their inverses, grouped by first column
        by_first: dict[int, list[tuple[int, ...]]] = {c: [] for c in range(self.ncols)}
        seen = set()
        for r in rels:
            inv = tuple(c ^ 1 for c in reversed(r))
            for w in (r, inv):
                for i in range(len(w)):
                    cw = w[i:] + w[:i]
                    if cw not in seen:
                        seen.add(cw)
                        by_first[cw[0]].append(cw)
        self.conj = by_first

    def rep(self, c: int) -> int:
        p = self.parent
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def merge(self, a: int, b: int, queue: list[int]):
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = (a, b) if a < b else (b, a)
            self.parent[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int):
        T = self.table
        queue: list[int] = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = T[g]
            for x in range(self.ncols):
                d = row[x]
                if d < 0:
                    continue
                xi = x ^ 1
                if T[d][xi] == g:
                    T[d][xi] = -1
                mu, nu = self.rep(g), self.rep(d)
                if T[mu][x] >= 0:
                    self.merge(nu, T[mu][x], queue)
                elif T[nu][xi] >= 0:
                    self.merge(mu, T[nu][xi], queue)
                else:
                    T[mu][x] = nu
                    T[nu][xi] = mu
                    self.deductions.append((mu, x))

    def define(self, c: int, x: int) -> bool:
        if len(self.table) >= self.limit:
            return False
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        self.deductions.append((c, x))
        return True

    def scan(self, a: int, w: tuple[int, ...]):
        T = self.table
        f, i, j = a, 0, len(w) - 1
        while i <= j:
            nxt = T[f][w[i]]
            if nxt < 0:
                break
            f = nxt
            i += 1
        if i > j:
            if f != a:
                self.coincidence(f, a)
            return
        b = a
        while j >= i:
            nxt = T[b][w[j] ^ 1]
            if nxt < 0:
                break
            b = nxt
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif i == j:
            T[f][w[i]] = b
            T[b][w[i] ^ 1] = f
            self.deductions.append((f, w[i]))

    def process_deductions(self):
        p = self.parent
        stack = self.deductions
        while stack:
            a, x = stack.pop()
            if p[a] != a:
                continue
            for w in self.conj[x]:
                self.scan(a, w)
                if p[a] != a:
                    break
            else:
                b = self.table[a][x]
                if b >= 0 and p[b] == b:
                    for w in self.conj[x ^ 1]:
                        self.scan(b, w)
                        if p[b] != b:
                            break

    def run(self) -> bool:
        p = self.parent
        while True:
            a = 0
            while a < len(self.table):
                if p[a] == a:
                    row = self.table[a]
                    for x in range(self.ncols):
                        if p[a] != a:
                            break
                        if row[x] < 0:
                            if not self.define(a, x):
                                return False
                            self.process_deductions()
                a += 1
            if not self._repair():
                return True

    def _repair(self) -> bool:
        """Trace every relator at every live coset; merge on any failure."""
        T, p = self.table, self.parent
        for a in range(len(T)):
            if p[a] != a:
                continue
            for r in self.relators:
                c = a
                for x in r:
                    c = T[c][x]
                if c != a:
                    self.coincidence(a, c)
                    self.process_deductions()
                    return True
        return False

    def standardize(self) -> list[list[int]]:
        T, p = self.table, self.parent
        order = [0]
        new = {0: 0}
        for c in order:
            for x in range(self.ncols):
                d = T[c][x]
                if d not in new:
                    new[d] = len(order)
                    order.append(d)
        assert all(p[c] == c for c in order)
        return [[new[T[c][x]] for x in range(self.ncols)] for c in order]


def todd_coxeter(pres: Presentation, coset_limit: int = DEFAULT_COSET_LIMIT, *, build_group: bool = True) -> CosetTable:
    """Enumerate cosets of the trivial subgroup; never raises on hitting the limit."""
    if coset_limit < 1:
        raise ValueError("coset_limit must be positive")
    e = _Enumerator(pres, coset_limit)
    if not e.run():
        return CosetTable(Status.LIMIT_EXCEEDED, coset_limit, cosets_defined=len(e.table))
    rows = e.standardize()
    n = len(rows)
    group = None
    if build_group and n <= MAX_CHECK_ORDER:
        group = _reconstruct(pres, rows)
    gens = tuple(rows[0][2 * i] for i in range(len(pres.generators)))
    return CosetTable(
        Status.COMPLETE,
        coset_limit,
        tuple(map(tuple, rows)),
        group,
        gens,
        cosets_defined=len(e.table),
    )


def _spanning_tree(rows) -> tuple[list[int], list[tuple[int, int]]]:
    n = len(rows)
    ncols = len(rows[0]) if rows else 0
    tree: list[tuple[int, int]] = [(-1, -1)] * n
    seen = [False] * n
    seen[0] = True
    order = [0]
    for c in order:
        for x in range(ncols):
            d = rows[c][x]
            if not seen[d]:
                seen[d] = True
                tree[d] = (c, x)
                order.append(d)
    return order, tree


def _letter(col: int) -> int:
    return col // 2 + 1 if col % 2 == 0 else -(col // 2 + 1)


def element_words(table: CosetTable) -> list[Word]:
    """A shortest-in-BFS word for each element of a complete enumeration."""
    order, tree = _spanning_tree(table.rows)
    words: list[Word] = [()] * len(table.rows)
    for c in order[1:]:
        par, x = tree[c]
        words[c] = words[par] + (_letter(x),)
    return words


def _reconstruct(pres: Presentation, rows: list[list[int]]) -> FiniteGroup:
    n = len(rows)
    order, tree = _spanning_tree(rows)
    labels = ["1"] * n
    words: list[Word] = [()] * n
    for c in order[1:]:
        par, x = tree[c]
        words[c] = words[par] + (_letter(x),)
        labels[c] = pres.format_word(words[c])
    # element a times element c: trace the word of c from coset a
    mul = [[0] * n for _ in range(n)]
    for a in range(n):
        ma = mul[a]
        ma[0] = a
        for c in order[1:]:
            par, x = tree[c]
            ma[c] = rows[ma[par]][x]
    return group_from_table(mul, labels)


def trace(table: CosetTable, word: Sequence[int], start: int = 0) -> int:
    rows = table.rows
    c = start
    for x in word:
        c = rows[c][_col(x)]
    return c


def word_image(pres: Presentation, table: CosetTable, word: Sequence[int] | str) -> int:
    """Element of the enumerated group represented by ``word``."""
    if not table.complete:
        raise UndecidedAtLimit("enumeration did not complete", pres, table.coset_limit)
    if isinstance(word, str):
        word = pres.parse_word(word)
    n = len(pres.generators)
    for x in word:
        if x == 0 or abs(x) > n:
            raise UndeclaredSymbol(f"undeclared generator index {x}", witness=x)
    return trace(table, word)


def enumerate_or_raise(pres: Presentation, coset_limit: int = DEFAULT_COSET_LIMIT) -> CosetTable:
    t = todd_coxeter(pres, coset_limit)
    if not t.complete:
        raise UndecidedAtLimit(
            f"coset enumeration exceeded {coset_limit} cosets; order undecided at limit",
            pres,
            coset_limit,
        )
    return t
