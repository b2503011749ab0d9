"""Lee-Yang tensors: generating polynomials, zero-free radii, and the
spin-Hamiltonian constructions built on them."""

from ._kernels import BACKEND as kernel_backend
from .barvinok import (
    AmplitudeEstimate,
    ResourceRecord,
    TaylorLog,
    estimate_x_amplitude,
    grover_rudolph_emulate,
    interpolate_estimate,
    interpolation_bound,
    log_derivs,
    xbasis_coeffs,
)
from .experiments import (
    StudyConfig,
    StudyRecord,
    all_pass,
    enum_connected,
    enum_trees,
    family_graphs,
    graph_id,
    prufer_decode,
    run_gap_study,
    run_ly_radius_study,
    run_phase_shifted_study,
    run_study,
    write_records,
    write_root_rows,
)
from .hamiltonians import (
    DenseHermitian,
    Graph,
    HamiltonianSpec,
    SpectralData,
    build_epr_like,
    build_phase_shifted,
    build_sf,
    build_xxz,
    gibbs,
    gibbs_radius_n2,
    sf_radius_particle_preserving,
    spectral_data,
    star_spectrum_analytic,
)
from .ly import (
    EquatorialScan,
    LYVerdict,
    Witness,
    apply_pauli_channel,
    check_pauli_channel,
    check_sf_sufficient,
    check_single_qubit,
    check_two_qubit_ly1,
    equatorial_poly,
    equatorial_root_scan,
    falsification_tolerance,
    falsify_ly,
    min_equatorial_root_modulus,
    robustness_bound,
    schur_projector,
    two_qubit_condition,
    weight_class_matrix,
)
from .polys import RootSet, UnivariatePoly, batched_roots, poly_roots
from .sixvertex import (
    EdgeOrderedGraph,
    SixVertexParams,
    TrotterCircuit,
    circuit_to_six_vertex,
    eulerian_partition,
    gate_matrix,
    trotter_trace,
    trotterize,
)
from .tensor import (
    MultiRadius,
    OperatorTensor,
    StateTensor,
    apply_to_state,
    bit_weights,
    contract_pair,
    diag_scale,
    equatorial_postselect,
    eval_gen_poly,
    eval_gen_poly_batch,
    hadamard_all,
    op_matmul,
    op_trace,
    parse_bits,
    tensor_product,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeEstimate", "DenseHermitian", "EdgeOrderedGraph",
    "EquatorialScan", "Graph", "HamiltonianSpec", "LYVerdict", "MultiRadius",
    "OperatorTensor", "ResourceRecord", "RootSet", "SixVertexParams",
    "SpectralData", "StateTensor", "StudyConfig", "StudyRecord", "TaylorLog",
    "TrotterCircuit", "UnivariatePoly", "Witness", "all_pass",
    "apply_pauli_channel", "apply_to_state", "batched_roots", "bit_weights",
    "build_epr_like", "build_phase_shifted", "build_sf", "build_xxz",
    "check_pauli_channel", "check_sf_sufficient", "check_single_qubit",
    "check_two_qubit_ly1", "circuit_to_six_vertex", "contract_pair",
    "diag_scale", "enum_connected", "enum_trees", "equatorial_poly",
    "equatorial_postselect", "equatorial_root_scan", "estimate_x_amplitude",
    "eulerian_partition", "eval_gen_poly", "eval_gen_poly_batch",
    "falsification_tolerance", "falsify_ly", "family_graphs", "gate_matrix",
    "gibbs", "gibbs_radius_n2", "graph_id", "grover_rudolph_emulate",
    "hadamard_all", "interpolate_estimate", "interpolation_bound",
    "kernel_backend", "log_derivs", "min_equatorial_root_modulus",
    "op_matmul", "op_trace", "parse_bits", "poly_roots", "prufer_decode",
    "robustness_bound", "run_gap_study", "run_ly_radius_study",
    "run_phase_shifted_study", "run_study", "schur_projector",
    "sf_radius_particle_preserving", "spectral_data",
    "star_spectrum_analytic", "tensor_product", "trotter_trace",
    "trotterize", "two_qubit_condition", "weight_class_matrix",
    "write_records", "write_root_rows", "xbasis_coeffs",
]
