# src/semiarith/io/writer.py
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from ..core.numfield import NumberField
from ..fuchsian.group import FuchsianRep
from .reader import FieldBlock, GroupDocument

logger = logging.getLogger(__name__)


def _root_selector(field: NumberField) -> tuple[str, str]:
    """Isolating interval from a fresh isolation, independent of earlier refinements."""
    roots = [(s, t) for (s, t), _ in field.poly.intervals()]
    lo, hi = roots[field.distinguished_root]
    return str(lo), str(hi)


def document_from_group(rep: FuchsianRep) -> GroupDocument:
    """Canonical document of a group: trailing zero coordinates dropped, words reformatted."""

    def entry(x: Any) -> list[str]:
        coords = list(x.coords)
        while coords and coords[-1] == 0:
            coords.pop()
        return [str(c) for c in coords]

    return GroupDocument(
        label=rep.name,
        field=FieldBlock(minpoly=list(rep.field.coeffs), root_selector=_root_selector(rep.field)),
        labels=list(rep.labels),
        generators=[[[entry(g.a), entry(g.b)], [entry(g.c), entry(g.d)]] for g in rep.generators],
        relators=[rep.format_word(r) for r in rep.relators],
    )


def dumps(data: BaseModel | dict[str, Any] | list[Any]) -> str:
    """Deterministic JSON: model field order, two-space indent, trailing newline."""
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json")
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def write_json(data: BaseModel | dict[str, Any] | list[Any], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def write_document(rep: FuchsianRep, path: str | Path) -> Path:
    return write_json(document_from_group(rep), path)
