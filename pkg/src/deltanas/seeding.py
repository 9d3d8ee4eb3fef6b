import numpy as np

SeedLike = int | np.random.Generator


def make_rng(seed: SeedLike, *keys: int) -> np.random.Generator:
    """
    Creates a random generator keyed by a seed and any number of extra indices,
      so that independent pieces of work (anchors, members, runs) draw from
      independent streams regardless of scheduling.
    :param seed: a non-negative seed, or an existing generator (returned as is when no keys are given)
    :param keys: non-negative integers identifying the piece of work
    :return: a numpy Generator
    """
    if isinstance(seed, np.random.Generator):
        if not keys:
            return seed
        # Derive a child stream from the parent generator's next draw
        seed = int(seed.integers(0, 2 ** 63))
    if seed < 0 or any(key < 0 for key in keys):
        raise ValueError("Seeds and keys must be non-negative.")
    # Distinct key tuples give distinct streams, (seed,) and (seed, 0) included
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=keys))
