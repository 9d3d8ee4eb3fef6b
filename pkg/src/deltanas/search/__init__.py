from .baselines import random_search, regularized_evolution
from .compare import Comparison, MethodSummary, SearchRunner, compare_searchers, queries_to_epsilon, write_comparison
from .config import Convergence, EvolutionConfig, NeighborBudget, SearchConfig
from .delta_nas import TrueDeltaPredictor, delta_nas_search
from .trace import Mutation, SearchResult, SearchTrace, TraceStep, parse_trace_csv, read_trace_csv, write_trace_csv

__all__ = ("random_search", "regularized_evolution", "Comparison", "MethodSummary", "SearchRunner",
           "compare_searchers", "queries_to_epsilon", "write_comparison", "Convergence", "EvolutionConfig",
           "NeighborBudget", "SearchConfig", "TrueDeltaPredictor", "delta_nas_search", "Mutation", "SearchResult",
           "SearchTrace", "TraceStep", "parse_trace_csv", "read_trace_csv", "write_trace_csv")
