from .doa import DoADataset, DoASample, FeatureMode, aggregate_by_encoding, build_features, check_sample, \
    feature_width, generate_doa_dataset, make_sample, measure_neighborhoods, split
from .files import DatasetRecord, format_dataset, load_dataset, parse_dataset, save_dataset

__all__ = ("DoADataset", "DoASample", "FeatureMode", "aggregate_by_encoding", "build_features", "check_sample",
           "feature_width", "generate_doa_dataset", "make_sample", "measure_neighborhoods", "split", "DatasetRecord",
           "format_dataset", "load_dataset", "parse_dataset", "save_dataset")
