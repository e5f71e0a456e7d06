import pytest

from crossedmods.fixtures import CROSSED, PEIFFER, TWO_CROSSED, c3_by_c2_module, mod_hom, sign_hom
from crossedmods.groups import GroupHom, identity_hom, iter_homs, trivial_hom
from crossedmods.library import cyclic, symmetric3
from crossedmods.pullback import (
    UNIQUE,
    fiber_product,
    pullback_x2_universal,
    pullback_x2mod,
    pullback_xmod,
    pullback_xmod_universal,
)
from crossedmods.x2mod import find_x2_isomorphism, from_crossed, iter_x2_morphisms
from crossedmods.xmod import XModMorphism, find_xmod_isomorphism, identity_xmod, iter_xmod_morphisms, trivial_xmod

import oracles


def maps_into(Q, orders=(1, 2, 3, 4, 6)):
    """A few homomorphisms from small cyclic groups and S3 into ``Q``."""
    srcs = [cyclic(n) for n in orders] + [symmetric3()]
    out = []
    for P in srcs:
        out.extend(list(iter_homs(P, Q))[:3])
    return out


@pytest.mark.parametrize("name", sorted(CROSSED))
def test_pullback_validates_and_matches_oracle(crossed, name):
    N = crossed[name]
    for phi in maps_into(N.P):
        pb = pullback_xmod(N, phi)
        X = pb.module
        assert oracles.cm1_holds(X) and oracles.cm2_holds(X)
        assert list(pb.legend) == oracles.pullback_pairs(N.boundary.map, phi.map)


@pytest.mark.parametrize("name", sorted(CROSSED))
def test_pullback_along_identity(crossed, name):
    N = crossed[name]
    pb = pullback_xmod(N, identity_hom(N.P))
    assert find_xmod_isomorphism(pb.module, N, eta=identity_hom(N.P)) is not None
    assert pb.proj_to_N.mu.is_injective and pb.proj_to_N.mu.is_surjective


def test_c4_to_c2_dimension_one():
    C4, C2 = cyclic(4), cyclic(2)
    phi = mod_hom(C4, C2, 2)
    pb = pullback_xmod(identity_xmod(C2), phi)
    assert pb.module.M.order == 4 == len(oracles.pullback_pairs((0, 1), phi.map))


def test_c4_to_c2_dimension_two():
    X = PEIFFER["peiffer_c4_inversion"]()
    phi = mod_hom(cyclic(4), cyclic(2), 2)
    pb = pullback_x2mod(X, phi)
    assert pb.module.M.order == 8 == len(oracles.pullback_pairs(X.d1.map, phi.map))
    assert oracles.two_crossed_holds(pb.module) is None


def test_pullback_of_trivial_is_kernel():
    # non-injective phi, so the kernel is not trivial
    phi = sign_hom()
    pb = pullback_xmod(trivial_xmod(phi.dst), phi)
    assert pb.module.M.order == phi.kernel().order == 3


def test_pullback_of_zero_boundary_module():
    N = c3_by_c2_module()  # zero boundary C3 -> C2
    for phi in iter_homs(cyclic(4), N.P):
        pb = pullback_xmod(N, phi)
        assert pb.module.M.order == N.M.order * phi.kernel().order
        assert all(N.boundary.map[n] == 0 and phi.map[p] == 0 for n, p in pb.legend)


def test_pullback_composes():
    C2, C4 = cyclic(2), cyclic(4)
    N = identity_xmod(C2)
    phi = mod_hom(C4, C2, 2)
    psi = GroupHom(C2, C4, (0, 2))
    once = pullback_xmod(N, phi.compose(psi)).module
    twice = pullback_xmod(pullback_xmod(N, phi).module, psi).module
    assert find_xmod_isomorphism(once, twice, eta=identity_hom(C2)) is not None


def test_fiber_product_requires_common_codomain():
    with pytest.raises(ValueError):
        fiber_product(identity_hom(cyclic(2)), identity_hom(cyclic(3)))
    G, pairs = fiber_product(identity_hom(cyclic(3)), trivial_hom(cyclic(2), cyclic(3)))
    assert G.order == 2 and pairs == [(0, 0), (0, 1)]


def _xmod_sources(P):
    return [identity_xmod(P), trivial_xmod(P)]


@pytest.mark.parametrize("name", sorted(CROSSED))
def test_universal_factorization_unique(crossed, name):
    N = crossed[name]
    checked = 0
    for phi in maps_into(N.P, orders=(1, 2, 4)):
        pb = pullback_xmod(N, phi)
        for S in _xmod_sources(phi.src) + [pb.module]:
            if S.M.order > 16:
                continue
            for h in iter_xmod_morphisms(S, N, eta=phi):
                f = pullback_xmod_universal(S, h, pb)
                assert f.uniqueness == UNIQUE and f.candidates == 1
                assert pb.proj_to_N.mu.compose(f.hom) == h.mu
                checked += 1
    assert checked > 0


def test_universal_rejects_wrong_base():
    C2 = cyclic(2)
    N = identity_xmod(C2)
    pb = pullback_xmod(N, identity_hom(C2))
    h = XModMorphism(identity_hom(C2), identity_hom(C2), N, N)
    other = pullback_xmod(N, trivial_hom(C2, C2))
    with pytest.raises(ValueError):
        pullback_xmod_universal(N, h, other)
    assert pullback_xmod_universal(N, h, pb).uniqueness == UNIQUE


@pytest.mark.parametrize("name", sorted(TWO_CROSSED))
def test_pullback_x2_validates(two_crossed, name):
    X = two_crossed[name]
    for phi in maps_into(X.P, orders=(1, 2, 4)):
        pb = pullback_x2mod(X, phi)
        assert oracles.two_crossed_holds(pb.module) is None
        assert list(pb.legend) == oracles.pullback_pairs(X.d1.map, phi.map)


@pytest.mark.parametrize("name", sorted(TWO_CROSSED))
def test_pullback_x2_along_identity(two_crossed, name):
    X = two_crossed[name]
    pb = pullback_x2mod(X, identity_hom(X.P))
    assert find_x2_isomorphism(pb.module, X, f0=identity_hom(X.P)) is not None


@pytest.mark.parametrize("name", sorted(TWO_CROSSED))
def test_universal_x2_unique(two_crossed, name):
    X = two_crossed[name]
    checked = 0
    for phi in maps_into(X.P, orders=(1, 2, 4)):
        pb = pullback_x2mod(X, phi)
        for S in [from_crossed(identity_xmod(phi.src)), from_crossed(trivial_xmod(phi.src)), pb.module]:
            if max(S.L.order, S.M.order) > 16:
                continue
            for f in iter_x2_morphisms(S, X, f0=phi):
                fac = pullback_x2_universal(S, f, pb)
                assert fac.uniqueness == UNIQUE
                assert pb.proj.f1.compose(fac.f1) == f.f1 and pb.proj.f2.compose(fac.f2) == f.f2
                checked += 1
    assert checked > 0
