"""Named small examples used by the tests, the CLI samples and the docs.

Every builder returns a freshly validated object. Groups have order at most 16.
"""

from __future__ import annotations

from .groups import (
    ActionTable,
    GroupHom,
    Subgroup,
    conjugation_action,
    identity_hom,
    subgroup_generated,
    trivial_action,
    trivial_group,
    trivial_hom,
)
from .library import cyclic, dihedral, klein_four, quaternion, symmetric3
from .xmod import (
    CrossedModule,
    PreCrossedModule,
    XModMorphism,
    automorphism_xmod,
    central_extension_xmod,
    identity_xmod,
    module_xmod,
    normal_inclusion,
    trivial_xmod,
)
from .x2mod import TwoCrossedModule, from_crossed, from_precrossed_peiffer


def mod_hom(G, H, n):
    """``C_m -> C_n`` (or any cyclic-indexed pair) sending index ``k`` to ``k mod n``."""
    return GroupHom(G, H, tuple(k % n for k in G.elements))


def sign_hom():
    S3 = symmetric3()
    return GroupHom(S3, cyclic(2), tuple(0 if S3.element_order(x) != 2 else 1 for x in S3.elements))


def inversion_action(n: int) -> ActionTable:
    """``C2`` acting on ``C_n`` by inversion."""
    Cn = cyclic(n)
    return ActionTable(cyclic(2), Cn, (tuple(Cn.elements), tuple(Cn.inv)))


def c3_by_c2_module() -> CrossedModule:
    return module_xmod(cyclic(3), cyclic(2), inversion_action(3))


def klein_by_c3_module() -> CrossedModule:
    V, C3 = klein_four(), cyclic(3)
    # V indexed a*2+b; the order-3 automorphism cycles the three involutions 1 -> 3 -> 2 -> 1
    rot = (0, 3, 1, 2)
    rot2 = tuple(rot[rot[x]] for x in range(4))
    return module_xmod(V, C3, ActionTable(C3, V, ((0, 1, 2, 3), rot, rot2)))


def a3_in_s3() -> CrossedModule:
    S3 = symmetric3()
    return normal_inclusion(S3, Subgroup(S3, tuple(S3.element_order(x) != 2 for x in S3.elements)))


def center_in_d4() -> CrossedModule:
    D4 = dihedral(4)
    return normal_inclusion(D4, subgroup_generated(D4, [2]))


def square_in_c4() -> CrossedModule:
    C4 = cyclic(4)
    return normal_inclusion(C4, subgroup_generated(C4, [2]))


def central_quotient_xmod(G) -> CrossedModule:
    from .groups import quotient

    Q, proj = quotient(G, G.center())
    return central_extension_xmod(proj)


def c4_inversion_precrossed() -> PreCrossedModule:
    """``C4 -> C2`` reducing mod 2, with ``C2`` inverting: pre-crossed but not crossed."""
    C4, C2 = cyclic(4), cyclic(2)
    return PreCrossedModule(C4, C2, inversion_action(4), mod_hom(C4, C2, 2))


def trivial_precrossed(G) -> PreCrossedModule:
    one = trivial_group()
    return PreCrossedModule(G, one, trivial_action(one, G), trivial_hom(G, one))


def sign_precrossed() -> PreCrossedModule:
    """``S3 -> C2`` by sign with ``C2`` acting trivially (CM1 holds as C2 is abelian)."""
    sgn = sign_hom()
    return PreCrossedModule(sgn.src, sgn.dst, trivial_action(sgn.dst, sgn.src), sgn)


def c6_inversion_trivial_lifting(n: int = 6) -> TwoCrossedModule:
    """``C_n -> 1 -> C2`` with ``C2`` inverting ``C_n`` and the constant lifting."""
    Cn, C2, one = cyclic(n), cyclic(2), trivial_group()
    return TwoCrossedModule(
        Cn, one, C2, trivial_hom(Cn, one), trivial_hom(one, C2),
        inversion_action(n), trivial_action(C2, one), ((0,),),
    )


CROSSED = {
    "square_in_c4": square_in_c4,
    "a3_in_s3": a3_in_s3,
    "center_in_d4": center_in_d4,
    "trivial_in_s3": lambda: normal_inclusion(symmetric3(), subgroup_generated(symmetric3(), [])),
    "aut_c3": lambda: automorphism_xmod(cyclic(3)),
    "aut_s3": lambda: automorphism_xmod(symmetric3()),
    "aut_klein": lambda: automorphism_xmod(klein_four()),
    "module_c3_c2": c3_by_c2_module,
    "module_klein_c3": klein_by_c3_module,
    "central_c4_c2": lambda: central_extension_xmod(mod_hom(cyclic(4), cyclic(2), 2)),
    "central_q8": lambda: central_quotient_xmod(quaternion()),
    "central_d4": lambda: central_quotient_xmod(dihedral(4)),
    "identity_c4": lambda: identity_xmod(cyclic(4)),
    "identity_s3": lambda: identity_xmod(symmetric3()),
    "trivial_c2": lambda: trivial_xmod(cyclic(2)),
}

PEIFFER = {
    "peiffer_c4_inversion": lambda: from_precrossed_peiffer(c4_inversion_precrossed()),
    "peiffer_s3_trivial": lambda: from_precrossed_peiffer(trivial_precrossed(symmetric3())),
    "peiffer_q8_trivial": lambda: from_precrossed_peiffer(trivial_precrossed(quaternion())),
    "peiffer_s3_sign": lambda: from_precrossed_peiffer(sign_precrossed()),
}

FROM_CROSSED = {f"lift_{k}": (lambda k=k: from_crossed(CROSSED[k]())) for k in (
    "square_in_c4", "a3_in_s3", "aut_c3", "module_c3_c2", "central_q8", "identity_c4",
)}

TWO_CROSSED = {**PEIFFER, **FROM_CROSSED, "c6_inversion_trivial": c6_inversion_trivial_lifting}

# trivial-lifting fixtures: the three derived claims must hold on each
TRIVIAL_LIFTING = {**FROM_CROSSED, "c6_inversion_trivial": c6_inversion_trivial_lifting}


def crossed_fixtures() -> dict[str, CrossedModule]:
    return {k: f() for k, f in CROSSED.items()}


def two_crossed_fixtures() -> dict[str, TwoCrossedModule]:
    return {k: f() for k, f in TWO_CROSSED.items()}


# ---------------------------------------------------------------------------
# induced-module inputs


def surjective_xmod_inputs() -> dict[str, tuple[CrossedModule, GroupHom]]:
    """``(M -> P, phi: P ->> Q)`` pairs with ``|Q| <= 8``."""
    C1, C2, C4 = trivial_group(), cyclic(2), cyclic(4)
    S3 = symmetric3()
    sgn = sign_hom()
    aut3 = automorphism_xmod(cyclic(3))
    return {
        "c2_to_trivial": (identity_xmod(C2), trivial_hom(C2, C1)),
        "square_in_c4_mod2": (square_in_c4(), mod_hom(C4, C2, 2)),
        "a3_in_s3_sign": (a3_in_s3(), sgn),
        "identity_s3_sign": (identity_xmod(S3), sgn),
        "aut_c3_to_trivial": (aut3, trivial_hom(aut3.P, C1)),
        "central_c4_c2_to_trivial": (central_extension_xmod(mod_hom(C4, C2, 2)), trivial_hom(C2, C1)),
        "module_c3_c2_to_trivial": (c3_by_c2_module(), trivial_hom(C2, C1)),
        "identity_c4_mod2": (identity_xmod(C4), mod_hom(C4, C2, 2)),
    }


def injective_xmod_inputs() -> dict[str, tuple[CrossedModule, GroupHom]]:
    C2, C4 = cyclic(2), cyclic(4)
    S3 = symmetric3()
    t = next(x for x in S3.elements if S3.element_order(x) == 2)
    return {
        "c2_into_c4": (identity_xmod(C2), GroupHom(C2, C4, (0, 2))),
        "c2_into_s3": (identity_xmod(C2), GroupHom(C2, S3, (0, t))),
    }


def surjective_theta_inputs() -> dict[str, tuple[XModMorphism, TwoCrossedModule]]:
    """``(theta, X2)`` with both components of ``theta`` onto."""
    C1, C2, C4 = trivial_group(), cyclic(2), cyclic(4)
    out = {}
    # Peiffer fixture pushed along C4 -> C2 and C2 -> 1
    X = from_precrossed_peiffer(c4_inversion_precrossed())
    N = trivial_precrossed(C2)
    out["peiffer_c4_to_c2_over_trivial"] = (XModMorphism(mod_hom(C4, C2, 2), trivial_hom(C2, C1), X.lower, N), X)
    # the same fixture along the identity
    out["peiffer_c4_identity"] = (XModMorphism(identity_hom(C4), identity_hom(C2), X.lower, X.lower), X)
    # C6 inversion fixture along C2 -> 1
    Y = c6_inversion_trivial_lifting()
    one = trivial_xmod()
    out["c6_inversion_to_trivial"] = (XModMorphism(identity_hom(Y.M), trivial_hom(C2, C1), Y.lower, one), Y)
    # a lifted crossed module along its base epimorphism
    Z = from_crossed(identity_xmod(C4))
    W = identity_xmod(C2)
    out["lift_identity_c4_mod2"] = (XModMorphism(mod_hom(C4, C2, 2), mod_hom(C4, C2, 2), Z.lower, W), Z)
    return out


def conjugation_on(G):
    return conjugation_action(G)
