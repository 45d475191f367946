"""Decompose a directed input-output network into homeostasis
subnetworks, build the homeostasis pattern network, and compute which
nodes each homeostasis type forces to be homeostatic, with exact
determinant and numeric ODE verification."""

from .classify import (
    NodeClassification,
    PreceqVerdict,
    classify_nodes,
    enumerate_io_simple_paths,
    fast_super_appendage,
    preceq,
)
from .induction import (
    Analysis,
    analyze,
    all_patterns,
    compare_engines,
    homeostasis_pattern,
    induces_reposition,
    induces_theorem,
    reposition,
    shared_super_simple_violations,
    sigma_element,
    source_node_of,
    theorem_pattern,
)
from .network import (
    CoreReport,
    InputIsOutputError,
    InvariantError,
    IONetwork,
    NetworkError,
    NonCoreError,
    PathExplosion,
    SchemaError,
    network_to_dot,
    parse_network,
    serialize_network,
    validate_core,
)
from .odesim import (
    AdmissibleODE,
    Branch,
    HomeostasisEvent,
    NewtonDivergence,
    SimulationError,
    ToleranceConfig,
    continue_equilibrium,
    detect_homeostasis,
    synthesize_ode,
    tune_self_gain,
    with_self_gain,
)
from .oracle import (
    DegenerateSampling,
    OracleError,
    RationalJacobian,
    SingularJacobian,
    SymbolicFactorization,
    block_det,
    block_product_sign,
    det_exact,
    force_block_singular,
    homeostasis_det,
    linearized_response,
    numeric_pattern,
    sample_jacobian,
    symbolic_factorization,
)
from .pattern import (
    AppendageComponentNode,
    BackboneNode,
    PatternNetwork,
    SuperSimpleNode,
    build_pattern_network,
    pattern_to_dot,
)
from .randomnet import core_corpus, random_network
from .subnetworks import (
    AppendageSubnetwork,
    BlockIndexSets,
    StructuralSubnetwork,
    appendage_subnetworks,
    block_index_sets,
    decompose,
    structural_subnetworks,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleODE",
    "Analysis",
    "AppendageComponentNode",
    "AppendageSubnetwork",
    "BackboneNode",
    "BlockIndexSets",
    "Branch",
    "CoreReport",
    "DegenerateSampling",
    "HomeostasisEvent",
    "InputIsOutputError",
    "InvariantError",
    "IONetwork",
    "NetworkError",
    "NewtonDivergence",
    "NodeClassification",
    "NonCoreError",
    "OracleError",
    "PathExplosion",
    "PatternNetwork",
    "PreceqVerdict",
    "RationalJacobian",
    "SchemaError",
    "SimulationError",
    "SingularJacobian",
    "StructuralSubnetwork",
    "SuperSimpleNode",
    "SymbolicFactorization",
    "ToleranceConfig",
    "all_patterns",
    "analyze",
    "appendage_subnetworks",
    "block_det",
    "block_index_sets",
    "block_product_sign",
    "build_pattern_network",
    "classify_nodes",
    "compare_engines",
    "continue_equilibrium",
    "core_corpus",
    "decompose",
    "det_exact",
    "detect_homeostasis",
    "enumerate_io_simple_paths",
    "fast_super_appendage",
    "force_block_singular",
    "homeostasis_det",
    "homeostasis_pattern",
    "induces_reposition",
    "induces_theorem",
    "linearized_response",
    "network_to_dot",
    "numeric_pattern",
    "parse_network",
    "pattern_to_dot",
    "preceq",
    "random_network",
    "reposition",
    "sample_jacobian",
    "serialize_network",
    "shared_super_simple_violations",
    "source_node_of",
    "sigma_element",
    "structural_subnetworks",
    "symbolic_factorization",
    "synthesize_ode",
    "theorem_pattern",
    "tune_self_gain",
    "validate_core",
    "with_self_gain",
]
