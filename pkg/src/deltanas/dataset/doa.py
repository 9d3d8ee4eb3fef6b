from __future__ import annotations

import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import StrEnum
from typing import Hashable, Sequence

import numpy as np

from ..encoding.difference import DiffEncoding, DiffFeature, apply_diff, diff, diff_to_feature, reverse_diff
from ..encoding.onehot import OneHotEncoding, encode_onehot
from ..exceptions import DimensionMismatchError, InsufficientGroupsError, SpecMismatchError
from ..oracle.proxy import NoisyProxy
from ..seeding import make_rng
from ..space.architecture import ArchKey, Architecture
from ..space.operations import count_neighbors_k, neighbors_k, random_architecture, random_neighbor
from ..space.spec import SearchSpaceSpec


class FeatureMode(StrEnum):
    # The predictor sees the difference only
    DIFF_ONLY = "diff_only"
    # The predictor sees the difference concatenated with the anchor's one-hot encoding
    DIFF_PLUS_ANCHOR = "diff_plus_anchor"
    # The predictor sees the difference and its outer product with the anchor's encoding of the untouched slots
    DIFF_IN_CONTEXT = "diff_in_context"


def feature_width(spec: SearchSpaceSpec, mode: FeatureMode) -> int:
    match mode:
        case FeatureMode.DIFF_ONLY:
            return spec.onehot_dim
        case FeatureMode.DIFF_PLUS_ANCHOR:
            return 2 * spec.onehot_dim
        case FeatureMode.DIFF_IN_CONTEXT:
            return spec.onehot_dim * (spec.onehot_dim + 1)
    raise ValueError(f"Unknown feature mode {mode!r}.")  # pragma: no cover


def build_features(feature: DiffFeature, anchor_feature: OneHotEncoding | None, mode: FeatureMode) -> np.ndarray:
    """
    Lays out the predictor input of one difference.
    In DIFF_IN_CONTEXT mode the context is the anchor encoding with every slot the difference edits cleared, so
      a difference and its reverse share their context and get exactly opposite features.
    :param feature: the difference feature
    :param anchor_feature: the one-hot encoding of the architecture the difference starts from
    :param mode: the feature mode
    :return: a vector of feature_width entries
    :raises DimensionMismatchError: if the anchor encoding is needed but missing or of the wrong shape
    """
    if mode is FeatureMode.DIFF_ONLY:
        return feature
    if anchor_feature is None or anchor_feature.shape != feature.shape:
        raise DimensionMismatchError(f"A {mode} feature needs the anchor encoding of the same length.")
    if mode is FeatureMode.DIFF_PLUS_ANCHOR:
        return np.concatenate((feature, anchor_feature))
    context: np.ndarray = np.where(feature == 0, anchor_feature, 0.0)
    return np.concatenate((feature, np.outer(feature, context).ravel()))


@dataclass(frozen=True)
class DoASample:
    diff: DiffEncoding
    delta_acc: float
    anchor_key: ArchKey
    feature: DiffFeature = field(compare=False, repr=False)
    anchor_feature: OneHotEncoding | None = field(default=None, compare=False, repr=False)

    def features(self, mode: FeatureMode) -> np.ndarray:
        """
        The predictor input of the sample, laid out by build_features.
        :raises DimensionMismatchError: if the anchor encoding is needed but missing
        """
        return build_features(self.feature, self.anchor_feature, mode)


@dataclass(frozen=True)
class DoADataset:
    spec: SearchSpaceSpec
    k: int
    samples_per_encoding: int
    generation_seed: int
    samples: tuple[DoASample, ...] = ()

    def __len__(self) -> int:
        return len(self.samples)

    def with_samples(self, samples: tuple[DoASample, ...]) -> DoADataset:
        return replace(self, samples=samples)

    def feature_matrix(self, mode: FeatureMode) -> np.ndarray:
        width: int = feature_width(self.spec, mode)
        if not self.samples:
            return np.zeros((0, width), dtype=np.float64)
        return np.stack([sample.features(mode) for sample in self.samples])

    def targets(self) -> np.ndarray:
        return np.array([sample.delta_acc for sample in self.samples], dtype=np.float64)


def make_sample(anchor: Architecture, difference: DiffEncoding, delta_acc: float) -> DoASample:
    """
    Builds a sample with its features.
    :param anchor: the architecture the difference starts from
    :param difference: the difference encoding
    :param delta_acc: the measured accuracy difference (neighbor minus anchor)
    :return: a DoASample instance
    """
    return DoASample(difference, delta_acc, anchor.key,
                     feature=diff_to_feature(difference, anchor.spec), anchor_feature=encode_onehot(anchor))


def _pair_samples(proxy: NoisyProxy, anchor: Architecture, neighbor: Architecture, first_call: int,
                  samples_per_encoding: int, symmetrize: bool) -> list[DoASample]:
    difference: DiffEncoding = diff(anchor, neighbor)
    samples: list[DoASample] = []
    for repeat in range(samples_per_encoding):
        delta_acc: float = proxy.score(neighbor, first_call + repeat) - proxy.score(anchor, first_call + repeat)
        samples.append(make_sample(anchor, difference, delta_acc))
        if symmetrize:
            samples.append(make_sample(neighbor, reverse_diff(difference), -delta_acc))
    return samples


def _anchor_samples(proxy: NoisyProxy, anchor: Architecture, anchor_index: int, k: int, samples_per_encoding: int,
                    rng: np.random.Generator, all_neighbors: bool, symmetrize: bool) -> list[DoASample]:
    """All the samples contributed by one anchor; every pair gets its own block of proxy call indices."""
    neighbors: list[Architecture] = list(neighbors_k(anchor, k)) if all_neighbors else [random_neighbor(anchor, k, rng)]
    pairs_per_anchor: int = count_neighbors_k(anchor.spec, k) if all_neighbors else 1
    samples: list[DoASample] = []
    for ordinal, neighbor in enumerate(neighbors):
        first_call: int = (anchor_index * pairs_per_anchor + ordinal) * samples_per_encoding
        samples.extend(_pair_samples(proxy, anchor, neighbor, first_call, samples_per_encoding, symmetrize))
    return samples


def _check_generation(spec: SearchSpaceSpec, proxy: NoisyProxy, k: int, samples_per_encoding: int) -> None:
    count_neighbors_k(spec, k)
    if samples_per_encoding < 1:
        raise ValueError(f"samples_per_encoding must be at least 1, got {samples_per_encoding}.")
    if proxy.spec != spec:
        raise SpecMismatchError("The proxy scores a different search space.")


def generate_doa_dataset(spec: SearchSpaceSpec, proxy: NoisyProxy, num_anchors: int, k: int,
                         samples_per_encoding: int, seed: int, symmetrize: bool = False,
                         workers: int = 1, all_neighbors: bool = False) -> DoADataset:
    """
    Samples anchors uniformly, pairs each with one uniform k-edit neighbor (or with every k-edit neighbor) and
      records samples_per_encoding independent proxy measurements of each pair's accuracy difference.
    :param spec: the search space
    :param proxy: the noisy accuracy estimator
    :param num_anchors: the number of anchor architectures
    :param k: the edit distance between anchor and neighbor
    :param samples_per_encoding: the number of repeated measurements of each pair
    :param seed: the generation seed
    :param symmetrize: also add the reversed (neighbor to anchor) sample with the negated delta
    :param workers: the number of threads generating anchors; results don't depend on it
    :param all_neighbors: pair every anchor with all of its k-edit neighbors
    :return: a DoADataset with samples_per_encoding samples per pair (twice that when symmetrized)
    :raises InvalidKeyError: if k is out of range
    :raises SpecMismatchError: if the proxy scores another space
    """
    _check_generation(spec, proxy, k, samples_per_encoding)
    if num_anchors < 0:
        raise ValueError(f"num_anchors must be non-negative, got {num_anchors}.")

    def _generate(anchor_index: int) -> list[DoASample]:
        # Keyed by (seed, anchor index) only
        rng: np.random.Generator = make_rng(seed, anchor_index)
        anchor: Architecture = random_architecture(spec, rng)
        return _anchor_samples(proxy, anchor, anchor_index, k, samples_per_encoding, rng, all_neighbors, symmetrize)

    per_anchor: list[list[DoASample]]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            per_anchor = list(executor.map(_generate, range(num_anchors)))
    else:
        per_anchor = [_generate(anchor_index) for anchor_index in range(num_anchors)]

    samples: tuple[DoASample, ...] = tuple(sample for anchor_samples in per_anchor for sample in anchor_samples)
    return DoADataset(spec, k, samples_per_encoding, seed, samples)


def measure_neighborhoods(spec: SearchSpaceSpec, proxy: NoisyProxy, anchors: Sequence[Architecture], k: int,
                          samples_per_encoding: int, seed: int) -> DoADataset:
    """
    Builds a dataset around given anchors, pairing each with every one of its k-edit neighbors.
    :param spec: the search space
    :param proxy: the noisy accuracy estimator
    :param anchors: the anchors, in order (their position keys the proxy calls)
    :param k: the edit distance between anchor and neighbor
    :param samples_per_encoding: the number of repeated measurements of each pair
    :param seed: recorded as the dataset's generation seed
    :return: a DoADataset with samples_per_encoding samples per (anchor, neighbor) pair
    :raises InvalidKeyError: if k is out of range
    :raises SpecMismatchError: if the proxy or an anchor belongs to another space
    """
    _check_generation(spec, proxy, k, samples_per_encoding)
    if any(anchor.spec != spec for anchor in anchors):
        raise SpecMismatchError("An anchor belongs to a different search space.")

    rng: np.random.Generator = make_rng(seed)
    samples: tuple[DoASample, ...] = tuple(
        sample for anchor_index, anchor in enumerate(anchors)
        for sample in _anchor_samples(proxy, anchor, anchor_index, k, samples_per_encoding, rng, True, False))
    return DoADataset(spec, k, samples_per_encoding, seed, samples)


def _group_key(sample: DoASample, mode: FeatureMode) -> Hashable:
    return sample.diff if mode is FeatureMode.DIFF_ONLY else (sample.anchor_key, sample.diff)


def aggregate_by_encoding(dataset: DoADataset, mode: FeatureMode = FeatureMode.DIFF_ONLY) -> DoADataset:
    """
    Collapses samples that share an encoding into one sample carrying the mean delta.
    In DIFF_ONLY mode every pair with the same difference is averaged (across anchors); in the modes that see the
      anchor only repeated measurements of the same (anchor, difference) pair are.
    The kept sample is the group member with the smallest anchor key; groups keep first-appearance order.
    :param dataset: the dataset to aggregate
    :param mode: the feature mode that decides the grouping
    :return: a dataset with one sample per group
    """
    groups: dict[Hashable, list[DoASample]] = {}
    for sample in dataset.samples:
        groups.setdefault(_group_key(sample, mode), []).append(sample)

    aggregated: list[DoASample] = []
    for members in groups.values():
        representative: DoASample = min(members, key=lambda member: member.anchor_key)
        aggregated.append(replace(representative,
                                  delta_acc=statistics.fmean(member.delta_acc for member in members)))
    return dataset.with_samples(tuple(aggregated))


def split(dataset: DoADataset, train_fraction: float, seed: int) -> tuple[DoADataset, DoADataset]:
    """
    Splits a dataset so that no difference encoding appears on both sides.
    :param dataset: the dataset to split
    :param train_fraction: the share of encoding groups on the training side (floored)
    :param seed: the shuffling seed
    :return: the training and the hold-out datasets
    :raises InsufficientGroupsError: if either side would be empty
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must lie in (0, 1), got {train_fraction}.")

    encodings: list[DiffEncoding] = list(dict.fromkeys(sample.diff for sample in dataset.samples))
    train_groups: int = math.floor(len(encodings) * train_fraction + 1e-9)
    if train_groups == 0 or train_groups == len(encodings):
        raise InsufficientGroupsError(f"Can't split {len(encodings)} encoding group(s) at {train_fraction} "
                                      "without leaving a side empty.")

    order: np.ndarray = make_rng(seed).permutation(len(encodings))
    train_encodings: set[DiffEncoding] = {encodings[index] for index in order[:train_groups]}
    train: tuple[DoASample, ...] = tuple(sample for sample in dataset.samples if sample.diff in train_encodings)
    test: tuple[DoASample, ...] = tuple(sample for sample in dataset.samples if sample.diff not in train_encodings)
    return dataset.with_samples(train), dataset.with_samples(test)


def check_sample(dataset: DoADataset, anchor: Architecture, difference: DiffEncoding) -> Architecture:
    """
    Applies a difference to its anchor and checks the result is k edits away.
    :param dataset: the dataset the difference belongs to
    :param anchor: the anchor architecture
    :param difference: the difference to check
    :return: the neighbor architecture
    :raises StaleDiffError: if the difference doesn't fit the anchor
    :raises ValueError: if the difference doesn't have exactly k edits
    """
    if len(difference) != dataset.k:
        raise ValueError(f"Difference {difference} from {anchor.key} has {len(difference)} edit(s), "
                         f"expected {dataset.k}.")
    return apply_diff(anchor, difference)
