"""
Analysis settings shared by the spectral, classification and rule modules.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class AnalysisConfig:
    """Sampling and precision settings; every report records them."""

    samples: int = 8
    precision: int = 256
    max_precision: int = 1024
    height_bound: int = 10**6
    seed: int = 0
    supersoluble_samples: int = 5
    derivation_samples: int = 5
    sample_box: int = 1000
    strict: bool = False

    def with_overrides(self, **overrides) -> "AnalysisConfig":
        """
        Copy with the given fields replaced; None values are ignored so CLI
        flags that were not passed keep the defaults.
        """
        changes = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {
            "samples": self.samples,
            "precision": self.precision,
            "max_precision": self.max_precision,
            "height_bound": self.height_bound,
            "seed": self.seed,
            "supersoluble_samples": self.supersoluble_samples,
            "derivation_samples": self.derivation_samples,
            "sample_box": self.sample_box,
            "strict": self.strict,
        }


DEFAULT_CONFIG = AnalysisConfig()
