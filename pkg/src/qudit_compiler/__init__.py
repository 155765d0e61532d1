"""M-count compiler for circuits of prime-dimension qudits (d > 3)."""

from .circuit import (
    Circuit,
    DimensionTooLarge,
    Gate,
    PhaseProfile,
    build_ccz_family,
    circuits_equal,
    decompose_linear,
    extract,
    random_circuit,
    simulate_all,
    simulate_basis,
    synthesize,
    synthesize_clifford_diagonal,
    synthesize_cubic,
)
from .field import FieldScalar, PrimeField, fraction_mod, inv_mod
from .optimize import (
    LEGACY,
    MS,
    DamConfig,
    PrototypeSet,
    ResourceLimitExceeded,
    SearchExhausted,
    best_of_n,
    brute_force,
    build_merge_system,
    dam,
    merge_columns,
    repetitions_needed,
    solve_merge,
    substitute,
)
from .phasepoly import (
    Implementation,
    Monomial,
    SignatureTensor,
    evaluate,
    evaluate_tensor,
    monomials_of,
    random_implementation,
    random_signature,
    signature_of,
)

__version__ = "0.1.0"
