"""Python bindings for the ddsim dynamical decoupling simulator."""

from ddsim._core import (
    ConfigError,
    Group,
    check_decoupling,
    commutant_basis,
    design_report,
    expm_hermitian,
    fidelity,
    full_pauli_group,
    group_from_words,
    minimal_group_search,
    parse_config,
    partial_trace_bath,
    pauli_group,
    pauli_word,
    preset_config,
    preset_names,
    project_commutant,
    run_scenario,
    run_sweep,
    simulate,
    trivial_group,
)

__all__ = [
    "ConfigError",
    "Group",
    "check_decoupling",
    "commutant_basis",
    "design_report",
    "expm_hermitian",
    "fidelity",
    "full_pauli_group",
    "group_from_words",
    "minimal_group_search",
    "parse_config",
    "partial_trace_bath",
    "pauli_group",
    "pauli_word",
    "preset_config",
    "preset_names",
    "project_commutant",
    "run_scenario",
    "run_sweep",
    "simulate",
    "trivial_group",
]
