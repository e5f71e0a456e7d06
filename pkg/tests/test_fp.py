import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossedmods.errors import UndecidedAtLimit, UndeclaredSymbol
from crossedmods.fp import (
    Presentation,
    Status,
    cyclic_reduce,
    element_words,
    enumerate_or_raise,
    format_word,
    free_product,
    free_reduce,
    inverse_word,
    parse_word,
    presentation,
    quotient_by,
    todd_coxeter,
    trace,
    word_image,
)
from crossedmods.groups import find_isomorphism
from crossedmods.library import cyclic, dihedral, klein_four, quaternion, symmetric3

KNOWN = {
    "S3": (presentation(["a", "b"], ["a^2", "b^3", "a b a^-1 b"]), 6),
    "S3 (Coxeter)": (presentation(["s", "t"], ["s^2", "t^2", "s t s t s t"]), 6),
    "V4": (presentation(["a", "b"], ["a^2", "b^2", "a b a^-1 b^-1"]), 4),
    "D4": (presentation(["r", "s"], ["r^4", "s^2", "s r s r"]), 8),
    "Q8": (presentation(["i", "j"], ["i^4", "i^2 j^-2", "j i j^-1 i"]), 8),
    "A4": (presentation(["a", "b"], ["a^2", "b^3", "a b a b a b"]), 12),
    "S4": (presentation(["a", "b"], ["a^2", "b^3", "a b a b a b a b"]), 24),
    "A5": (presentation(["a", "b"], ["a^2", "b^3", "a b a b a b a b a b"]), 60),
    "PSL(2,7)": (presentation(["a", "b"], ["a^2", "b^3", " ".join(["a b"] * 7), "a b a b^-1 a b a b^-1 a b a b^-1 a b a b^-1"]), 168),
    "trivial": (presentation(["a"], ["a"]), 1),
    "empty": (Presentation((), ()), 1),
}


@pytest.mark.parametrize("n", range(1, 13))
def test_cyclic_orders(n):
    t = todd_coxeter(presentation(["a"], ["a^%d" % n]))
    assert t.complete and t.order == n
    assert find_isomorphism(t.group, cyclic(n)) is not None


@pytest.mark.parametrize("name", sorted(KNOWN))
def test_known_orders(name):
    pres, order = KNOWN[name]
    t = todd_coxeter(pres)
    assert t.status is Status.COMPLETE
    assert t.order == order


@pytest.mark.parametrize("name,ref", [("S3", symmetric3), ("V4", klein_four), ("D4", lambda: dihedral(4)), ("Q8", quaternion)])
def test_reconstructed_group_isomorphic(name, ref):
    t = todd_coxeter(KNOWN[name][0])
    assert find_isomorphism(t.group, ref()) is not None


@pytest.mark.parametrize("name", sorted(KNOWN))
def test_complete_tables_trace_relators(name):
    pres, _ = KNOWN[name]
    t = todd_coxeter(pres)
    for c in range(t.order):
        for r in pres.relators:
            assert trace(t, r, c) == c


def test_every_coset_word_reaches_its_coset():
    pres = KNOWN["D4"][0]
    t = todd_coxeter(pres)
    for c, w in enumerate(element_words(t)):
        assert trace(t, w) == c


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "A5"])
def test_deterministic(name):
    pres = KNOWN[name][0]
    a, b = todd_coxeter(pres), todd_coxeter(pres)
    assert repr(a.rows).encode() == repr(b.rows).encode()
    assert a.group == b.group


def test_limit_exceeded_is_status_not_exception():
    pres = presentation(["a", "b"], ["a^2", "b^2"])  # infinite dihedral
    t = todd_coxeter(pres, coset_limit=200)
    assert t.status is Status.LIMIT_EXCEEDED and t.order is None
    with pytest.raises(UndecidedAtLimit) as e:
        enumerate_or_raise(pres, 200)
    assert e.value.presentation == pres and e.value.coset_limit == 200
    with pytest.raises(UndecidedAtLimit):
        word_image(pres, t, "a")


def test_small_limit_on_finite_group():
    t = todd_coxeter(KNOWN["A5"][0], coset_limit=30)
    assert not t.complete


def test_word_image():
    pres = KNOWN["S3"][0]
    t = todd_coxeter(pres)
    assert word_image(pres, t, "a a") == 0
    assert word_image(pres, t, "b^3") == 0
    assert word_image(pres, t, "a b") == t.group.m(word_image(pres, t, "a"), word_image(pres, t, "b"))
    with pytest.raises(UndeclaredSymbol):
        word_image(pres, t, "c")


def test_undeclared_symbol_in_relator():
    with pytest.raises(UndeclaredSymbol):
        presentation(["a"], ["a b"])
    with pytest.raises(UndeclaredSymbol):
        Presentation(("a",), ((1, 2),))


def test_free_product_and_quotient():
    p = free_product(presentation(["a"], ["a^2"]), presentation(["a"], ["a^3"]))
    assert p.generators == ("a", "a_2")
    q = quotient_by(p, ["a a_2 a^-1 a_2^-1"])
    assert todd_coxeter(q).order == 6


def test_presentation_dedupes_and_reduces():
    p = Presentation(("a",), ((1, -1, 1, 1), (1, 1), ()))
    assert p.relators == ((1, 1),)


words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12).map(tuple)


@settings(max_examples=100, deadline=None)
@given(words)
def test_free_reduce_properties(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))
    assert free_reduce(w + inverse_word(w)) == ()
    c = cyclic_reduce(w)
    assert not c or c[0] != -c[-1]


@settings(max_examples=100, deadline=None)
@given(words)
def test_parse_format_roundtrip(w):
    gens = ("x", "y", "z")
    r = free_reduce(w)
    assert parse_word(gens, format_word(gens, r)) == r


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 7), st.integers(1, 7))
def test_abelian_two_generator_orders(m, n):
    pres = presentation(["a", "b"], [f"a^{m}", f"b^{n}", "a b a^-1 b^-1"])
    assert todd_coxeter(pres).order == m * n
