from .architecture import ArchKey, Architecture, format_key, parse_key
from .operations import count_neighbors_k, edit_distance, enumerate_space, mean_edit_distance, neighbors_k, \
    random_architecture, random_neighbor, space_size_exact, space_size_paper
from .spec import PRESETS, SearchSpaceSpec, SpaceKind, SpecRecord, preset

__all__ = ("ArchKey", "Architecture", "format_key", "parse_key", "count_neighbors_k", "edit_distance",
           "enumerate_space", "mean_edit_distance", "neighbors_k", "random_architecture", "random_neighbor",
           "space_size_exact", "space_size_paper", "PRESETS", "SearchSpaceSpec", "SpaceKind", "SpecRecord", "preset")
