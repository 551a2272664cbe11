import numpy as np


def derive_seed(base_seed: int, index: int) -> int:
    """Deterministic per-point seed from (base_seed, index)."""
    return int(np.random.SeedSequence([base_seed, index]).generate_state(1, dtype=np.uint64)[0])
