"""Boolean tasks, seeded samplers and per-iteration training logs."""

from dataclasses import dataclass, field

import numpy as np

# Independent generator streams derived from one experiment seed.
INIT_STREAM = 0
TRAIN_STREAM = 1


def rng_for(seed, stream):
    return np.random.default_rng([stream, seed])


@dataclass(frozen=True)
class TruthTableSampler:
    """Uniform sampler over the rows of a two-input boolean truth table."""

    name: str
    table: tuple  # ((bits, label), ...)

    @classmethod
    def from_function(cls, name, fn):
        rows = tuple(((a, b), int(fn(a, b))) for a in (0, 1) for b in (0, 1))
        return cls(name, rows)

    def draw(self, rng):
        return self.table[int(rng.integers(len(self.table)))]

    def support(self):
        return self.table


XOR = TruthTableSampler.from_function("xor", lambda a, b: a ^ b)
AND = TruthTableSampler.from_function("and", lambda a, b: a & b)
OR = TruthTableSampler.from_function("or", lambda a, b: a | b)
TASKS = {s.name: s for s in (XOR, AND, OR)}


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    train_error: float
    test_error: float
    loss: float
    accuracy: int


@dataclass
class IterationLog:
    records: list = field(default_factory=list)

    def append(self, train_error, test_error, loss, accuracy):
        self.records.append(
            IterationRecord(len(self.records) + 1, float(train_error), float(test_error), float(loss), int(accuracy))
        )

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def column(self, name):
        return np.array([getattr(r, name) for r in self.records])
