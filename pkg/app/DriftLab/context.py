import numpy as np


class RunContext:
    """Seeded random substreams keyed by (seed, *keys), independent of call order."""

    def __init__(self, seed: int):
        self.seed = int(seed)

    def rng(self, *keys: int) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([self.seed, *[int(k) for k in keys]]))

    def child_seed(self, *keys: int) -> int:
        seq = np.random.SeedSequence([self.seed, *[int(k) for k in keys]])
        return int(seq.generate_state(1, dtype=np.uint64)[0])
