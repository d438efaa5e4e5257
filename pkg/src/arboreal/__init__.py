"""Arboreal phylogenetic networks: triplet and duet encodings, reconstruction, distance."""
from .buildtree import IncompatibleTripletsError, build
from .encoding import Duet, Triplet, induced_duets, induced_triplets
from .generate import GenConfig, GenerationError, random_network
from .io import ParseError, emit_dot, parse_constraints, parse_net, serialize_constraints, serialize_net
from .kernels import BACKEND
from .metric import duet_triplet_distance, is_isomorphic
from .network import (
    Network,
    NetworkError,
    NotArborealError,
    is_arboreal,
    is_banyan,
    is_stack_free,
    validate_m_network,
)
from .reconstruct import ara, component_graph_of, dr_partition, refine_and_assemble, scaffold
from .tree import RootedTree

__all__ = [
    "BACKEND",
    "Duet",
    "GenConfig",
    "GenerationError",
    "IncompatibleTripletsError",
    "Network",
    "NetworkError",
    "NotArborealError",
    "ParseError",
    "RootedTree",
    "Triplet",
    "ara",
    "build",
    "component_graph_of",
    "dr_partition",
    "duet_triplet_distance",
    "emit_dot",
    "induced_duets",
    "induced_triplets",
    "is_arboreal",
    "is_banyan",
    "is_isomorphic",
    "is_stack_free",
    "parse_constraints",
    "parse_net",
    "random_network",
    "refine_and_assemble",
    "scaffold",
    "serialize_constraints",
    "serialize_net",
    "validate_m_network",
]
