"""(k,l)-sparsity recognizers and the planarizing-gadget lab."""

from .errors import CapacityError, InputError, PreconditionError
from .fixtures import Fixture, all_fixtures, fixture_set
from .flow import (FlowArc, FlowInstance, FlowResult, build_flow_instance,
                   check_sparse_via_flow, max_flow, verify_structure_preservation)
from .gadgets import (AuditReport, GadgetCandidate, SearchReport, apply_gadget,
                      audit_gadget, derive_contradiction, enumerate_candidates,
                      refute_behaviorally, replace_edge, search_gadgets)
from .graph import MultiGraph, union_identify
from .planar import (RotationSystem, has_disjoint_terminal_paths, has_terminal_face,
                     is_planar, rotation_system)
from .sparsity import (SparsityParams, SparsityVerdict, ViolationWitness,
                       check_sparse_bruteforce, check_sparse_pebble, check_spanning)

__all__ = [
    "AuditReport", "CapacityError", "Fixture", "FlowArc", "FlowInstance",
    "FlowResult", "GadgetCandidate", "InputError", "MultiGraph",
    "PreconditionError", "RotationSystem", "SearchReport", "SparsityParams",
    "SparsityVerdict", "ViolationWitness", "all_fixtures", "apply_gadget",
    "audit_gadget", "build_flow_instance", "check_sparse_bruteforce",
    "check_sparse_pebble", "check_sparse_via_flow", "check_spanning",
    "derive_contradiction", "enumerate_candidates", "fixture_set",
    "has_disjoint_terminal_paths", "has_terminal_face", "is_planar",
    "max_flow", "refute_behaviorally", "replace_edge", "rotation_system",
    "search_gadgets", "union_identify", "verify_structure_preservation",
]

__version__ = "0.1.0"
