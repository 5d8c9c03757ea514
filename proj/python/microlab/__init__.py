"""Computational microlocal analysis on periodic grids.

The package wraps the C++ core: dyadic Littlewood-Paley partitions, rough
function spaces and field synthesis, polynomial-in-the-fiber symbols with a
shell-smoothing decomposition, bicharacteristic flows and non-uniqueness
funnels, wavefront-set estimation, and a rough-coefficient wave lab.
Fields move across the boundary as numpy arrays.
"""

from ._core import (
    # grid and fields
    Grid,
    SampledField,
    Spectrum,
    torus_distance,
    # transforms
    forward_transform,
    inverse_transform,
    fourier_multiplier,
    spectral_derivative,
    bessel_power,
    quadrature_l2,
    spectral_l2,
    # dyadic partition
    DyadicPartition,
    block,
    low_pass,
    # function spaces and synthesis
    zygmund_norm,
    sobolev_norm,
    bmo_norm,
    hr_infty_norm,
    SynthKind,
    synthesize_regular,
    # symbols
    CoefficientSymbol,
    PhasePoint,
    HomogeneousSymbol,
    principal_symbol,
    characteristic_points,
    null_project,
    SymbolSpace,
    SymbolClass,
    SeminormEntry,
    SymbolClassReport,
    # paradifferential decomposition
    ShellSmoothedSymbol,
    BonyDecomposition,
    decompose,
    quantize,
    quantize_dense,
    symbol_seminorm,
    colored_noise,
    MappingProbeReport,
    mapping_norm_probe,
    FlatEndpointReport,
    flat_endpoint_check,
    # bicharacteristic flows
    FlowStatus,
    TrajectorySample,
    Trajectory,
    HamiltonianSystem,
    hamiltonian_system,
    mechanical_power_law,
    mechanical_power_law_mollified,
    IntegrateOptions,
    integrate,
    FunnelSpec,
    Funnel,
    funnel_mechanical,
    power_law_envelope,
    ray_trace_wave,
    trajectory_csv,
    funnel_json,
    # wavefront estimation
    WfClass,
    MicrolocalProbe,
    microlocal_energies,
    ProbeVerdict,
    wf_classify,
    ProbeLatticeSpec,
    WavefrontEntry,
    WavefrontEstimate,
    wf_scan,
    SingularCluster,
    singular_clusters,
    wavefront_json,
    wavefront_svg,
    # wave lab
    WaveInitSpec,
    WaveCoeffSpec,
    WaveScenario,
    scenario_from_json,
    scenario_to_json,
    WaveInputs,
    build_inputs,
    WaveSnapshot,
    wave_solve,
    ClusterRecord,
    SnapshotRecord,
    PropagationReport,
    experiment_propagation,
    report_json,
    report_csv,
    report_svg,
    emit_report,
    # file formats
    save_field,
    load_field,
    field_csv,
    save_symbol,
    load_symbol,
    partition_csv,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
