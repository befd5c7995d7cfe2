"""Finite Stone duality workbench.

Finite distributive lattices in Birkhoff normal form, finite spectral
spaces as posets/preorders, the duality dictionary between them, split-fork
decision procedures, and coequalizer comparison machinery, every piece
cross-checked against an independent brute-force oracle.
"""

from . import bits, descent, dlat, finposet, fork, gen, stone, topology
from .descent import (
    CoeqProblem,
    ComparisonReport,
    DescentDiagram,
    GroupAction,
    comparison,
    group_coequalizer,
    spectral_coequalizer,
    spectral_quotient,
    verify_split_descent,
)
from .dlat import (
    DistLattice,
    Ideal,
    LatticeMap,
    PrimeIdeal,
    equalizer,
    from_birkhoff,
    from_tables,
    prime_ideals,
    prime_ideals_bruteforce,
    validate_lattice_map,
)
from .errors import (
    BoundsViolated,
    CycleError,
    HypothesisFailed,
    InternalError,
    InvariantViolation,
    MissingSplitting,
    NotALattice,
    NotAutomorphism,
    NotDistributive,
    NotEqualizerImage,
    NotJoinPreserving,
    NotMeetPreserving,
    NotMonotone,
    NotT0,
    OracleMismatch,
    SizeError,
    SplitEquationFailed,
    StonekitError,
)
from .finposet import FinPoset, MonotoneMap, downsets, is_isomorphic, validate_poset
from .fork import (
    ForkDiagram,
    LadderDiagram,
    is_equalizer,
    is_split_fork,
    lemma_injective_decide,
    lemma_retraction_decide,
)
from .stone import (
    hochster_dual,
    omega,
    omega_of_map,
    omega_opens,
    round_trip_lattice,
    round_trip_space,
    spec_of_lattice,
    spec_of_map,
)
from .topology import (
    EquivRelation,
    FinSpace,
    SpectralMap,
    check_quotient_criterion,
    closure,
    is_closed_map,
    is_t1_subspace,
    kq,
    quotient,
    saturation,
    spectral_reflection,
    topological_coequalizer,
    validate_space,
)

__version__ = "0.1.0"
