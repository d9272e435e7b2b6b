"""Two-qutrit turnover identities, mirror-angle optimization, Trotter
circuit compression, and return-probability dynamics for the spin-1 XY
chain.

Everything lives in the compiled extension; this package re-exports it.
"""

from qturn._core import (  # noqa: F401
    Circuit,
    CompressionReport,
    Gate,
    OptResult,
    RETURN_STATE,
    algebra_report,
    apply_circuit,
    block_offdiagonal_mass,
    circuit_from_json,
    circuit_to_json,
    circuit_unitary,
    compress,
    compressed_return_curve,
    embed,
    exact_propagator,
    exact_return_curve,
    gate_matrix,
    hamiltonian_xy,
    infidelity,
    lower_bound,
    m_matrix,
    merge_pass,
    minimize,
    multi_step_infidelity,
    optimize_reflection,
    param_count,
    predicted_reduced_gates,
    qubit_subspace_blocks,
    return_probability,
    rewrite_turnover,
    spin_operator,
    theta_step,
    time_grid,
    trotter_circuit,
    trotter_return_curve,
    turnover_residual,
    weighted_generator,
    wl_circuit,
    wr_circuit,
    xy_pair_gate,
)

__version__ = "0.1.0"
