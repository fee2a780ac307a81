import os
from dataclasses import dataclass
from pathlib import Path
from typing import List

_DEFAULT_CATALOG = str(Path(__file__).resolve().parent.parent / "matroids" / "catalog.yaml")


@dataclass
class Config:
    # Exhaustive Search Bounds
    max_ground_set: int = int(os.getenv("MATROID_MAX_E", "16"))
    max_extension_ground_set: int = int(os.getenv("MATROID_MAX_EXTENSION_E", "9"))

    # Representation Enumeration Bounds
    rep_max_ground_set: int = int(os.getenv("MATROID_REP_MAX_E", "12"))
    rep_max_rank: int = int(os.getenv("MATROID_REP_MAX_RANK", "6"))
    rep_max_prime: int = int(os.getenv("MATROID_REP_MAX_PRIME", "7"))

    # Field Configuration
    max_prime: int = int(os.getenv("MATROID_MAX_PRIME", "65536"))

    # Spike Census
    census_max_legs: int = 20

    # Document Configuration
    schema_version: int = int(os.getenv("MATROID_SCHEMA_VERSION", "1"))
    catalog_path: str = os.getenv("MATROID_CATALOG_PATH", _DEFAULT_CATALOG)

    # Logging Configuration
    log_level: str = os.getenv("MATROID_LOG_LEVEL", "INFO").upper()

    def __post_init__(self):
        # Validate bounds as soon as the settings are read
        self._validate_config()

    def _validate_config(self):
        problems: List[str] = []

        positive_settings = [
            ("MATROID_MAX_E", self.max_ground_set),
            ("MATROID_MAX_EXTENSION_E", self.max_extension_ground_set),
            ("MATROID_REP_MAX_E", self.rep_max_ground_set),
            ("MATROID_REP_MAX_RANK", self.rep_max_rank),
        ]
        problems.extend(f"{name} must be positive" for name, value in positive_settings if value <= 0)

        if self.max_prime < 2:
            problems.append("MATROID_MAX_PRIME must be at least 2")
        if self.rep_max_prime < 2 or self.rep_max_prime > self.max_prime:
            problems.append("MATROID_REP_MAX_PRIME must lie in [2, MATROID_MAX_PRIME]")
        if self.schema_version < 1:
            problems.append("MATROID_SCHEMA_VERSION must be at least 1")
        if self.log_level not in ("DEBUG", "INFO", "WARNING", "ERROR"):
            problems.append(f"MATROID_LOG_LEVEL {self.log_level!r} is not a logging level")

        if problems:
            raise ValueError(f"Invalid configuration: {'; '.join(problems)}")


# Create global config instance
config = Config()
