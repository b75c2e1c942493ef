# src/semiarith/synthetic/base.py
from __future__ import annotations

import random
from abc import ABC, abstractmethod
from typing import Any

from pydantic import BaseModel, Field


class SyntheticConfig(BaseModel):
    """Base configuration for synthetic data generation."""

    seed: int = Field(20240601, description="Seed of the generator's random source")
    name: str | None = Field(None, description="Label attached to generated objects")


class SyntheticGenerator(ABC):
    """Base class for synthetic data generators."""

    def __init__(self, config: SyntheticConfig) -> None:
        """Initialize generator with configuration and a seeded random source."""
        self.config = config
        self.rng = random.Random(config.seed)

    @abstractmethod
    def generate(self) -> Any:
        """Generate one synthetic object."""
        pass
