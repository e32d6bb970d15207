"""Certified subdivision extraction from graphs of bounded minimum degree."""

from .graphs import (CheckResult, Graph, PatternGraph, SubdivisionCertificate,
                     VertexPath, induced_delete, verify_certificate, verify_path)
from .joins import (JoinWitness, detach, lift_through_add_single,
                    lift_through_delete, validate_witness)
from .patterns import (EliminationOrder, are_isomorphic, build_named,
                       enumerate_maximal_3_degenerate, is_maximal_3_degenerate,
                       path_cube)
from .reduction import (AddStep, DeleteStep, PairState, ReductionTrace,
                        apply_step, run_trace)
from .engine import (ConfigId, Configuration, ContainmentWitness, ExtractionError,
                     MinDegreeError, SeedEdge, config_members, extract,
                     extract_target, find_k4_seed, find_seed_edge)
from .oracle import (BudgetExceeded, GoodnessReport, SearchBudget, SearchOutcome,
                     find_subdivision, is_planar_small, probe_goodness,
                     random_min_degree_graph)

__version__ = "0.1.0"

__all__ = [
    "AddStep", "BudgetExceeded", "CheckResult", "ConfigId", "Configuration",
    "ContainmentWitness", "DeleteStep", "EliminationOrder", "ExtractionError",
    "GoodnessReport", "Graph", "JoinWitness", "MinDegreeError", "PairState",
    "PatternGraph", "ReductionTrace", "SearchBudget", "SearchOutcome",
    "SeedEdge", "SubdivisionCertificate", "VertexPath", "apply_step",
    "are_isomorphic", "build_named", "config_members", "detach",
    "enumerate_maximal_3_degenerate", "extract", "extract_target",
    "find_k4_seed", "find_seed_edge", "find_subdivision", "induced_delete",
    "is_maximal_3_degenerate", "is_planar_small", "lift_through_add_single",
    "lift_through_delete", "path_cube", "probe_goodness",
    "random_min_degree_graph", "run_trace", "validate_witness",
    "verify_certificate", "verify_path",
]
