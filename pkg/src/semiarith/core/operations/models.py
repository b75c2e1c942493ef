# src/semiarith/core/operations/models.py
from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[4] / "config" / "default.yaml"


class EnumerationConfig(BaseModel):
    """Caps for every enumerative claim."""

    psl_closure_cap: int = Field(
        1_000_000, description="Largest PSL(2,q) order enumerated by closure"
    )
    local_unramified_cap: int = Field(
        10_000_000, description="Largest SL(2, o/p^r) order enumerated element-wise"
    )
    local_ramified_cap: int = Field(
        1_000_000, description="Largest number of (a, b) pairs in the ramified model"
    )
    residue_field_cap: int = Field(
        1_000_000, description="Largest residue field handled by table arithmetic"
    )
    crt_cap: int = Field(
        1_000_000, description="Largest N^4 enumerated for SL(2, Z/N)"
    )

    @field_validator(
        "psl_closure_cap",
        "local_unramified_cap",
        "local_ramified_cap",
        "residue_field_cap",
        "crt_cap",
    )
    def validate_cap(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("Enumeration caps must be positive")
        return v


class SearchConfig(BaseModel):
    """Word-length budgets for bounded searches."""

    trace_word_length: int = Field(3, description="Word length for trace generation")
    symbol_word_length: int = Field(4, description="Search length for (a, b) symbol")
    hyperbolic_word_length: int = Field(4, description="Search length for a hyperbolic generating pair")
    order_word_length: int = Field(6, description="Stabilization rounds for orders")
    max_square_generators: int = Field(
        8, description="Largest generator count accepted by squares_subgroup"
    )
    max_sign_generators: int = Field(
        8, description="Largest generator count for the sign-assignment search"
    )
    repair_power_limit: int = Field(
        64, description="Largest power T^N tried when repairing a generator"
    )

    @field_validator(
        "trace_word_length",
        "symbol_word_length",
        "hyperbolic_word_length",
        "order_word_length",
    )
    def validate_length(cls, v: int) -> int:
        if not 1 <= v <= 12:
            raise ValueError("Word lengths must be between 1 and 12")
        return v


class SamplingConfig(BaseModel):
    """Randomized cross-checks."""

    seed: int = Field(20240601, description="Seed for every randomized check")
    stabilization_words: int = Field(
        200, description="Random words checked against the computed trace field"
    )
    stabilization_word_length: int = Field(
        8, description="Maximum length of the random stabilization words"
    )
    obstruction_word_length: int = Field(
        3, description="Word length sampled by the modular embedding check"
    )

    @field_validator("stabilization_words")
    def validate_sample(cls, v: int) -> int:
        if v < 0:
            raise ValueError("Sample sizes must be non-negative")
        return v


class RuntimeConfig(BaseModel):
    """Process-level settings."""

    progress: bool = Field(True, description="Show tqdm progress bars")
    log_level: str = Field("WARNING", description="Root log level for the CLI")

    @field_validator("log_level")
    def validate_level(cls, v: str) -> str:
        levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        if v.upper() not in levels:
            raise ValueError(f"Unknown log level: {v}")
        return v.upper()


class SemiarithConfig(BaseModel):
    """Main configuration."""

    enumeration: EnumerationConfig = Field(default_factory=EnumerationConfig)
    search: SearchConfig = Field(default_factory=SearchConfig)
    sampling: SamplingConfig = Field(default_factory=SamplingConfig)
    runtime: RuntimeConfig = Field(default_factory=RuntimeConfig)

    @model_validator(mode="after")
    def validate_budgets(self) -> SemiarithConfig:
        if self.search.symbol_word_length < self.search.trace_word_length:
            raise ValueError(
                "symbol_word_length must not be shorter than trace_word_length"
            )
        return self

    @classmethod
    def from_yaml(cls, path: str | Path | None = None) -> SemiarithConfig:
        """Load a configuration file; missing keys keep their defaults."""
        path = Path(path) if path is not None else DEFAULT_CONFIG_PATH
        if not path.exists():
            if path == DEFAULT_CONFIG_PATH:
                return cls()
            raise FileNotFoundError(f"Config file not found: {path}")
        raw: dict[str, Any] = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        return cls.model_validate(raw.get("semiarith", raw))


_default_config: SemiarithConfig | None = None


def default_config() -> SemiarithConfig:
    """Process-wide default configuration, read once from config/default.yaml."""
    global _default_config
    if _default_config is None:
        _default_config = SemiarithConfig.from_yaml()
    return _default_config
