from .base import CountingOracle, Oracle, best_in_space
from .proxy import NoisyProxy
from .synthetic import SyntheticLandscape, hash_uniform
from .tabular import TabularBenchmark, dump_landscape, load_tabular, parse_tabular, save_tabular

__all__ = ("CountingOracle", "Oracle", "best_in_space", "NoisyProxy", "SyntheticLandscape", "hash_uniform",
           "TabularBenchmark", "dump_landscape", "load_tabular", "parse_tabular", "save_tabular")
