"""Presentations of Q-groups whose generators are permuted by Q.

Shared by the induced constructions. A presentation here carries, per
generator, its boundary value in a target group and its image under each
element of Q. The relator sets are kept closed under Q so that the action
descends to the enumerated group.

``close_and_build`` enumerates, builds the candidate module, and when the
validator reports a violated axiom instance it adds that instance (and its
Q-translates) as a relator and enumerates again. Each round strictly shrinks
the group, so the loop ends; the result is the quotient by every instance of
the imposed axiom families.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import BoundExceeded, NotWellDefined, ValidationFailure
from .fp import (
    DEFAULT_COSET_LIMIT,
    CosetTable,
    Presentation,
    Word,
    element_words,
    free_reduce,
    inverse_word,
    quotient_by,
    todd_coxeter,
)
from .groups import FiniteGroup, GroupHom, extend_to_hom

MAX_CLOSURE_ROUNDS = 200


@dataclass
class QPresentation:
    pres: Presentation
    Q: FiniteGroup
    target: FiniteGroup
    qperm: list[list[int]]  # qperm[q][g]: 0-based generator index of q.g
    boundary: list[int]  # target element per generator
    bracket: dict[tuple[int, int], int] = field(default_factory=dict)  # (n1, n2) -> generator

    def translate(self, word: Sequence[int], q: int) -> Word:
        perm = self.qperm[q]
        return tuple(perm[x - 1] + 1 if x > 0 else -(perm[-x - 1] + 1) for x in word)

    def q_closure(self, words: Sequence[Sequence[int]]) -> list[Word]:
        out = []
        for w in words:
            for q in self.Q.elements:
                out.append(free_reduce(self.translate(w, q)))
        return out

    def bd(self, word: Sequence[int]) -> int:
        T = self.target
        r = 0
        for x in word:
            v = self.boundary[abs(x) - 1]
            r = T.mul[r][v if x > 0 else T.inv[v]]
        return r

    def gen(self, g: int) -> Word:
        return (g + 1,)

    def br(self, n1: int, n2: int) -> Word:
        return (self.bracket[(n1, n2)] + 1,)


@dataclass
class Enumerated:
    table: CosetTable
    group: FiniteGroup
    gen_elems: tuple[int, ...]
    words: list[Word]
    presentation: Presentation


def enumerate_group(pres: Presentation, coset_limit: int) -> Enumerated | CosetTable:
    t = todd_coxeter(pres, coset_limit)
    if not t.complete:
        return t
    if t.group is None:
        raise BoundExceeded(f"enumerated group has order {t.order}, above the exhaustive-check bound")
    return Enumerated(t, t.group, t.generator_images, element_words(t), pres)


def extend_or_fail(src: FiniteGroup, dst: FiniteGroup, gens: Sequence[int], images: Sequence[int], what: str) -> GroupHom:
    m = extend_to_hom(src, dst, gens, images)
    if m is None:
        raise NotWellDefined(f"{what} does not extend to a homomorphism")
    return GroupHom(src, dst, m)


@dataclass
class ClosureOutcome:
    enumerated: Enumerated | None
    module: object
    presentation: Presentation
    table: CosetTable
    rounds: int
    added: list[Word]


def close_and_build(
    qp: QPresentation,
    build: Callable[[Enumerated], object],
    repair: Callable[[ValidationFailure, Enumerated], list[Word] | None],
    coset_limit: int = DEFAULT_COSET_LIMIT,
) -> ClosureOutcome:
    added: list[Word] = []
    pres = qp.pres
    for rounds in range(MAX_CLOSURE_ROUNDS):
        res = enumerate_group(pres, coset_limit)
        if isinstance(res, CosetTable):
            return ClosureOutcome(None, None, pres, res, rounds, added)
        try:
            module = build(res)
        except ValidationFailure as e:
            new = repair(e, res)
            if not new:
                raise
            new = qp.q_closure(new)
            added.extend(new)
            pres = quotient_by(pres, new)
            continue
        return ClosureOutcome(res, module, pres, res.table, rounds, added)
    raise RuntimeError("closure loop did not settle")


def element_word(en: Enumerated, x: int) -> Word:
    return en.words[x]


def commutator_word(a: Word, b: Word) -> Word:
    return free_reduce(a + b + inverse_word(a) + inverse_word(b))
