"""Topological spin invariants of doubled lattice phases.

Three independent routes to the same quantity -- a weighted twist sum over
modular data, a brute-force contraction of permuted wavefunction copies,
and constrained / string-net sums -- plus a normalization-free ratio, a
minimal-copy-count search and a small CLI (``topospin``).
"""

from .analytic import (
    ladder_scale,
    phi_ratio_stringnet,
    phi_stringnet,
    phi_zn_constrained,
)
from .brute import (
    DEFAULT_BUDGET,
    PhiReport,
    RatioReport,
    VertexCircuit,
    amplitude,
    phi_brute,
    phi_ratio_brute,
    random_vertex_circuit,
)
from .category import (
    FusionCategory,
    LadderSpec,
    fibonacci,
    ising,
    load_category,
    pentagon_residual,
    save_category,
    theta_ladder,
    zn_strings,
)
from .errors import BudgetExceeded, DivisionByZero, ValidationError, ZeroPhi
from .modular import (
    ModularData,
    doubled,
    higher_central_charge,
    lens_partition,
    phi_closed_form_zn,
    phi_invariant,
    twisted_zn,
)
from .optimality import (
    SearchResult,
    WitnessPair,
    canonical_witness,
    min_replica_search,
    verify_witness,
)
from .replica import (
    EDGES,
    ReplicaPermutation,
    Triple,
    alpha,
    beta,
    canonical_triple,
    conjugate_triple,
    edge_orbits,
    gamma,
    identity,
    identity_triple,
    reflection_triple,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "DivisionByZero",
    "EDGES",
    "FusionCategory",
    "LadderSpec",
    "ModularData",
    "PhiReport",
    "RatioReport",
    "ReplicaPermutation",
    "SearchResult",
    "Triple",
    "ValidationError",
    "VertexCircuit",
    "WitnessPair",
    "ZeroPhi",
    "alpha",
    "amplitude",
    "beta",
    "canonical_triple",
    "canonical_witness",
    "conjugate_triple",
    "doubled",
    "edge_orbits",
    "fibonacci",
    "gamma",
    "higher_central_charge",
    "identity",
    "identity_triple",
    "ising",
    "ladder_scale",
    "lens_partition",
    "load_category",
    "min_replica_search",
    "pentagon_residual",
    "phi_brute",
    "phi_closed_form_zn",
    "phi_invariant",
    "phi_ratio_brute",
    "phi_ratio_stringnet",
    "phi_stringnet",
    "phi_zn_constrained",
    "random_vertex_circuit",
    "reflection_triple",
    "save_category",
    "theta_ladder",
    "twisted_zn",
    "verify_witness",
    "zn_strings",
]
