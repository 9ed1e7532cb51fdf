"""Dense-statevector simulation and closed-form prediction for multi-match quantum search."""
from .algorithms import (
    PreparedSearchState,
    RunResult,
    diffusion,
    grover,
    run_and_verify,
    sample_shots,
    success_probability,
    younes_iterated,
    younes_once,
)
from .hybrid import HybridPolicy, dispatch_known, grover_iteration_count, search
from .oracle import (
    CountingOracle,
    OracleSpec,
    apply_bit_oracle,
    apply_phase_oracle,
    evaluate,
    parse_marked_spec,
    random_oracle,
)
from .state import (
    StateVector,
    apply_controlled_not,
    apply_hadamard,
    apply_hadamard_range,
    apply_unitary_dense,
    apply_x,
    marginal_probabilities,
    measure_first_n,
    new_zero,
)

__version__ = "0.1.0"
