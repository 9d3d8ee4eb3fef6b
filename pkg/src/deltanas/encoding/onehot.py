from typing import TypeAlias

import numpy as np

from ..exceptions import DimensionMismatchError, InvalidArchitectureError
from ..space.architecture import Architecture
from ..space.spec import SearchSpaceSpec

# A real vector of length n*r (+ n(n-1)/2 adjacency slots for cell spaces)
OneHotEncoding: TypeAlias = np.ndarray


def encode_onehot(architecture: Architecture) -> OneHotEncoding:
    """
    Encodes an architecture as one r-slice one-hot block per node, followed by its adjacency bits.
    :param architecture: an Architecture instance
    :return: the dense encoding
    """
    spec: SearchSpaceSpec = architecture.spec
    values: OneHotEncoding = np.zeros(spec.onehot_dim, dtype=np.float64)
    values[np.arange(spec.n) * spec.r + np.asarray(architecture.ops)] = 1.0
    if architecture.adj is not None:
        values[spec.n * spec.r:] = architecture.adj
    return values


def decode_onehot(spec: SearchSpaceSpec, values: OneHotEncoding) -> Architecture:
    """
    Decodes a one-hot encoding back into its architecture.
    :param spec: the search space of the encoding
    :param values: a vector produced by encode_onehot
    :return: the encoded Architecture
    :raises DimensionMismatchError: if the vector has the wrong length
    :raises InvalidArchitectureError: if a node slice isn't one-hot or an adjacency slot isn't a bit
    """
    if values.shape != (spec.onehot_dim,):
        raise DimensionMismatchError(f"Expected a vector of length {spec.onehot_dim}, got shape {values.shape}.")

    op_block: np.ndarray = values[:spec.n * spec.r].reshape(spec.n, spec.r)
    if not (np.all((op_block == 0) | (op_block == 1)) and np.all(op_block.sum(axis=1) == 1)):
        raise InvalidArchitectureError("Every node slice must be one-hot.")

    adj_block: np.ndarray = values[spec.n * spec.r:]
    return Architecture.from_values(spec, [int(op) for op in op_block.argmax(axis=1)] + [int(bit) for bit in adj_block])
