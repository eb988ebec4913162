"""Graph products of finite groups: word problem, special-amalgam splittings,
pro-C closedness, separating quotients and almost-homomorphisms."""

from .algebra import (
    FINITE,
    ClassTag,
    FiniteGroup,
    Homomorphism,
    Subgroup,
    class_membership,
    cyclic_group,
    direct_product,
    enumerate_homs,
    normal_subgroups,
    quotient,
    symmetric_group,
    validate_group,
)
from .amalgam import amalgam_form, amalgam_split, extend_hom_pair, retract
from .catalog import by_name, catalog
from .graph import GraphProduct, SimplicialGraph, complete, cycle, edgeless, full_subgraph, link, path
from .lec import GroupChart, AlmostHom, assemble_almost_hom, derive_k_sets, finitize, integer_chart
from .proc import co_c_family, hall_open_check, is_c_closed, retract_closure_witness
from .separation import (
    SearchBudget,
    amalgam_obstruction,
    base_separate_amalgam,
    check_certificate,
    non_separability_witness,
    separate,
)
from .words import (
    Syllable,
    bfs_oracle_trivial,
    can_join,
    is_reduced_product,
    normal_form,
    rewrite_step,
    word_ops,
)

__version__ = "0.1.0"
