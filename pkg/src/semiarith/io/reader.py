# src/semiarith/io/reader.py
from __future__ import annotations

import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any

from pydantic import BaseModel, BeforeValidator, Field, ValidationError, field_validator, model_validator

from ..core.errors import DocumentError
from ..core.numfield import field_create
from ..fuchsian.group import FuchsianRep, load_group
from ..fuchsian.words import parse_word

logger = logging.getLogger(__name__)


def canonical_rational(value: Any) -> str:
    """Exact rational from an int or a "p/q" string, as its canonical string."""
    if isinstance(value, bool) or not isinstance(value, int | str | Fraction):
        raise ValueError(f"{value!r} is not an exact rational; decimal floats are not accepted")
    if isinstance(value, str) and any(ch in value for ch in ".eE"):
        raise ValueError(f"{value!r} is not an exact rational; write p/q")
    try:
        return str(Fraction(value))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"{value!r} is not a rational number") from e


RationalText = Annotated[str, BeforeValidator(canonical_rational)]
Entry = list[RationalText]


class FieldBlock(BaseModel):
    """Entry field: minimal polynomial and an interval isolating the distinguished root."""

    minpoly: list[int] = Field(..., description="Integer coefficients, leading first")
    root_selector: tuple[RationalText, RationalText] = Field(
        ..., description="Rational interval containing exactly one real root"
    )

    @field_validator("minpoly", mode="before")
    def validate_minpoly(cls, v: Any) -> Any:
        if not isinstance(v, list) or any(isinstance(c, bool) or not isinstance(c, int) for c in v):
            raise ValueError("minpoly must be a list of integers")
        if len(v) < 2:
            raise ValueError("minpoly must have positive degree")
        return v

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1


class GroupDocument(BaseModel):
    """A group as exact generator matrices over a number field."""

    label: str | None = None
    field: FieldBlock
    labels: list[str] | None = Field(None, description="Generator names used by relators")
    generators: list[list[list[Entry]]] = Field(
        ..., description="2x2 matrices of power-basis coordinate vectors"
    )
    relators: list[str] = Field(default_factory=list)

    @field_validator("generators")
    def validate_shape(cls, v: list[list[list[Entry]]]) -> list[list[list[Entry]]]:
        if not v:
            raise ValueError("at least one generator is required")
        for m in v:
            if len(m) != 2 or any(len(row) != 2 for row in m):
                raise ValueError("generators must be 2x2 matrices")
        return v

    @model_validator(mode="after")
    def validate_consistency(self) -> GroupDocument:
        d = self.field.degree
        for i, m in enumerate(self.generators):
            if any(len(entry) > d for row in m for entry in row):
                raise ValueError(f"generator {i} has an entry with more than {d} coordinates")
        if self.labels is not None and len(self.labels) != len(self.generators):
            raise ValueError("labels must name every generator")
        return self

    def generator_labels(self) -> list[str]:
        return self.labels or [f"g{i}" for i in range(len(self.generators))]

    def to_group(self) -> FuchsianRep:
        """Build and validate the group; relators are checked on construction."""
        field = field_create(
            self.field.minpoly,
            (Fraction(self.field.root_selector[0]), Fraction(self.field.root_selector[1])),
        )
        labels = self.generator_labels()
        relators = [parse_word(r, labels) for r in self.relators]
        matrices = [
            [[[Fraction(c) for c in entry] for entry in row] for row in m] for m in self.generators
        ]
        return load_group(field, matrices, labels, relators, self.label)


def _location(error: ValidationError) -> str:
    first = error.errors()[0]
    path = ".".join(str(x) for x in first["loc"]) or "document"
    return f"{path}: {first['msg']}"


def parse_document(text: str) -> GroupDocument:
    """Parse UTF-8 JSON text into a GroupDocument.

    Raises:
        DocumentError: malformed JSON (with line and column) or invalid content
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"malformed JSON: {e.msg}", e.lineno, e.colno) from e
    if not isinstance(data, dict):
        raise DocumentError("a group document must be a JSON object", 1, 1)
    try:
        return GroupDocument.model_validate(data)
    except ValidationError as e:
        raise DocumentError(f"invalid group document at {_location(e)}") from e


def read_document(source: str | Path) -> GroupDocument:
    """Read a document from a file path, or standard input for "-"."""
    if str(source) == "-":
        text = sys.stdin.read()
    else:
        path = Path(source)
        if not path.exists():
            raise DocumentError(f"no such document: {path}")
        text = path.read_text(encoding="utf-8")
    doc = parse_document(text)
    logger.debug(f"Read group document {doc.label or source}")
    return doc


def load_document(source: str | Path) -> FuchsianRep:
    return read_document(source).to_group()
