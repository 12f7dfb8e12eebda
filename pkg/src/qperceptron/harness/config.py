"""Experiment configuration.

Configs are flat JSON objects. Every key has a default, so ``{}`` is a valid
config and ``--print-config`` shows exactly what a run will use.
"""

import json
from dataclasses import asdict, dataclass, field, fields

from ..dfree import INTERPRETATIONS, OPERATOR_MODES
from ..errors import ConfigError
from ..tasks import TASKS
from ..unitarize import MODES

METHODS = ("dfree", "backprop", "both")


@dataclass(frozen=True)
class ExperimentConfig:
    method: str = "both"
    task: str = "xor"
    iters: int = 100
    seeds: tuple = tuple(range(1, 22))
    unitarize_mode: str = "uv"
    eq3_interpretation: str = "A"
    operator_mode: str = "sigmoid"
    lr: float = 0.5
    width: int = 3
    depth: int = 2
    hidden: int = 2
    sustain_window: int = 5
    plateau_tol: float = 1e-2
    normalize_inputs: bool = True
    jobs: int = 1
    out_csv: str = "results.csv"
    out_summary: str = "summary.json"

    def __post_init__(self):
        object.__setattr__(self, "seeds", tuple(self.seeds))
        self.validate()

    def validate(self):
        def choice(name, options):
            if getattr(self, name) not in options:
                raise ConfigError(name, f"{getattr(self, name)!r} is not one of {tuple(options)}")

        choice("method", METHODS)
        choice("task", TASKS)
        choice("unitarize_mode", MODES)
        choice("eq3_interpretation", INTERPRETATIONS)
        choice("operator_mode", ("sigmoid", "projective"))
        for name, lo in (("iters", 0), ("width", 3), ("depth", 1), ("hidden", 1), ("sustain_window", 1), ("jobs", 1)):
            val = getattr(self, name)
            if not isinstance(val, int) or isinstance(val, bool) or val < lo:
                raise ConfigError(name, f"must be an integer >= {lo}, got {val!r}")
        if not self.seeds:
            raise ConfigError("seeds", "at least one seed is required")
        if not all(isinstance(s, int) and not isinstance(s, bool) and s >= 0 for s in self.seeds):
            raise ConfigError("seeds", "seeds must be nonnegative integers")
        if not isinstance(self.lr, (int, float)) or not self.lr > 0:
            raise ConfigError("lr", f"must be positive, got {self.lr!r}")
        if not isinstance(self.plateau_tol, (int, float)) or not self.plateau_tol > 0:
            raise ConfigError("plateau_tol", "must be positive")
        if not isinstance(self.normalize_inputs, bool):
            raise ConfigError("normalize_inputs", "must be true or false")

    def methods(self):
        return ("dfree", "backprop") if self.method == "both" else (self.method,)

    def to_dict(self):
        d = asdict(self)
        d["seeds"] = list(self.seeds)
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("<root>", "config must be a JSON object")
        known = {f.name for f in fields(cls)}
        for key in data:
            if key not in known:
                raise ConfigError(key, "unknown config key")
        return cls(**data)

    @classmethod
    def from_file(cls, path):
        try:
            with open(path) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError("<file>", f"not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    def replace(self, **changes):
        data = self.to_dict()
        data.update({k: v for k, v in changes.items() if v is not None})
        return ExperimentConfig.from_dict(data)
