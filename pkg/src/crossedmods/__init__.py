"""Crossed modules and 2-crossed modules over finite groups.

Groups are dense multiplication tables, every structure is validated
exhaustively on construction, and the constructions (pullbacks, induced
modules, push-outs) are computed and then re-checked.
"""

from .errors import *  # noqa: F401,F403
from .fp import Presentation, parse_word, presentation, todd_coxeter
from .groups import (
    ActionTable,
    FiniteGroup,
    GroupHom,
    Subgroup,
    action_commutator_subgroup,
    direct_product,
    find_isomorphism,
    group_from_table,
    identity_hom,
    iter_homs,
    quotient,
    subgroup_generated,
    trivial_group,
    trivial_hom,
)
from .induced import (
    Strategy,
    induced_x2_universal,
    induced_x2mod,
    induced_x2mod_presentation,
    induced_xmod,
    induced_xmod_presentation,
    induced_xmod_universal,
)
from .library import cyclic, dihedral, klein_four, quaternion, symmetric3
from .pullback import pullback_x2_universal, pullback_x2mod, pullback_xmod, pullback_xmod_universal
from .pushout import cokernel_x2, pushout_x2
from .textformat import Workspace, parse_files, parse_text, serialize
from .x2mod import (
    TwoCrossedModule,
    X2Morphism,
    from_crossed,
    from_precrossed_peiffer,
    reflect_to_xmod,
    trivial_lifting_report,
)
from .xmod import (
    CrossedModule,
    PreCrossedModule,
    XModMorphism,
    automorphism_xmod,
    central_extension_xmod,
    identity_xmod,
    module_xmod,
    normal_inclusion,
    peiffer_subgroup,
)

__version__ = "0.1.0"
