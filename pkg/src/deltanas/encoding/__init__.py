from .cardinality import dk_size_brute_force, dk_size_closed_form, dk_size_exact, dk_size_paper
from .difference import DiffEncoding, DiffFeature, Edit, apply_diff, diff, diff_to_feature, format_diff, parse_diff, \
    reverse_diff
from .onehot import OneHotEncoding, decode_onehot, encode_onehot

__all__ = ("dk_size_brute_force", "dk_size_closed_form", "dk_size_exact", "dk_size_paper", "DiffEncoding",
           "DiffFeature", "Edit", "apply_diff", "diff", "diff_to_feature", "format_diff", "parse_diff",
           "reverse_diff", "OneHotEncoding", "decode_onehot", "encode_onehot")
