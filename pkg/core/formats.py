# core/formats.py
"""
JSON file formats. Every file is described by a pydantic model that rejects
unknown keys; rationals travel as "num/den" strings and tuple keys as
"(i,j,k)". Writers are deterministic: sorted keys where order is free,
indent=2 and a trailing newline.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from .algebra import AlgebraElement
from .chains import Bimodule, Chain, validate_bimodule
from .config import Caps
from .errors import FormatError
from .semilattice import Morphism, SemigroupTable, validate_morphism, validate_table
from .sparse import format_fraction, format_key, parse_fraction, parse_key

logger = logging.getLogger(__name__)

Rational = Union[int, str]
RationalMatrixRows = List[List[Rational]]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class TableFile(_Strict):
    elements: List[str]
    table: List[List[int]]
    unit: Optional[int] = None


class MorphismFile(_Strict):
    source: Union[str, TableFile]
    target: Union[str, TableFile]
    map: List[int]


class AlgebraElementFile(_Strict):
    base: Union[str, TableFile]
    coeffs: Dict[str, Rational]


class BimoduleFile(_Strict):
    dim: int
    left: Dict[str, RationalMatrixRows]
    right: Dict[str, RationalMatrixRows]
    symmetric: bool


class ChainFile(_Strict):
    base: Union[str, TableFile]
    degree: int
    coeffs: Dict[str, Rational]
    module: Optional[BimoduleFile] = None


# --- Raw I/O ------------------------------------------------------------------


def read_json(path: Union[str, Path]) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def write_json(path: Union[str, Path], data: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data), encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path


def parse_model(model, data: Any, where: str):
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(p) for p in first["loc"]) or "<root>"
        raise FormatError(f"{where}: {loc}: {first['msg']}") from exc


# --- Tables and morphisms -----------------------------------------------------


def table_from_model(model: TableFile, caps: Optional[Caps] = None) -> SemigroupTable:
    return validate_table(model.elements, model.table, model.unit, caps)


def load_table(path: Union[str, Path], caps: Optional[Caps] = None) -> SemigroupTable:
    model = parse_model(TableFile, read_json(path), str(path))
    table = table_from_model(model, caps)
    logger.info(f"Loaded {table.describe()} from {path}")
    return table


def table_to_dict(table: SemigroupTable) -> dict:
    return {
        "elements": list(table.elements),
        "table": [list(row) for row in table.product],
        "unit": table.unit,
    }


def dump_table(table: SemigroupTable, path: Union[str, Path]) -> Path:
    return write_json(path, table_to_dict(table))


def _resolve_base(base: Union[str, TableFile], relative_to: Path, caps: Optional[Caps]) -> SemigroupTable:
    if isinstance(base, TableFile):
        return table_from_model(base, caps)
    path = Path(base)
    if not path.is_absolute():
        path = relative_to / path
    return load_table(path, caps)


def load_morphism(path: Union[str, Path], caps: Optional[Caps] = None) -> Morphism:
    """Source and target paths are resolved relative to the morphism file."""
    path = Path(path)
    model = parse_model(MorphismFile, read_json(path), str(path))
    source = _resolve_base(model.source, path.parent, caps)
    target = _resolve_base(model.target, path.parent, caps)
    return validate_morphism(source, target, model.map)


def morphism_to_dict(theta: Morphism, source_ref=None, target_ref=None) -> dict:
    return {
        "source": source_ref if source_ref is not None else table_to_dict(theta.source),
        "target": target_ref if target_ref is not None else table_to_dict(theta.target),
        "map": list(theta.map),
    }


def dump_morphism(theta: Morphism, path: Union[str, Path]) -> Path:
    return write_json(path, morphism_to_dict(theta))


# --- Algebra elements ---------------------------------------------------------


def algebra_element_from_dict(
    data: Any, relative_to: Path = Path("."), caps: Optional[Caps] = None
) -> AlgebraElement:
    model = parse_model(AlgebraElementFile, data, "algebra element")
    base = _resolve_base(model.base, relative_to, caps)
    coeffs = {}
    for label, value in model.coeffs.items():
        if label not in base.elements:
            raise FormatError(f"unknown element label {label!r}")
        coeffs[base.elements.index(label)] = parse_fraction(value)
    return AlgebraElement(base, coeffs)


def algebra_element_to_dict(a: AlgebraElement) -> dict:
    return {
        "base": table_to_dict(a.base),
        "coeffs": {a.base.elements[s]: format_fraction(c) for s, c in a.items()},
    }


# --- Bimodules ----------------------------------------------------------------


def bimodule_from_model(model: BimoduleFile, table: SemigroupTable) -> Bimodule:
    labels = set(table.elements)
    for side, mats in (("left", model.left), ("right", model.right)):
        if set(mats) != labels:
            raise FormatError(f"{side} actions must be given for exactly the elements {sorted(labels)}")

    def matrices(mats):
        return [[[parse_fraction(v) for v in row] for row in mats[label]] for label in table.elements]

    module = validate_bimodule(table, model.dim, matrices(model.left), matrices(model.right))
    if module.symmetric != model.symmetric:
        raise FormatError(f"file declares symmetric={model.symmetric}, actions say {module.symmetric}")
    return module


def load_bimodule(path: Union[str, Path], table: SemigroupTable) -> Bimodule:
    path = Path(path)
    module = bimodule_from_model(parse_model(BimoduleFile, read_json(path), str(path)), table)
    module = Bimodule(module.base, module.dim, module.left, module.right, name=path.stem)
    logger.info(f"Loaded bimodule {module.name} (dim {module.dim}) from {path}")
    return module


def bimodule_to_dict(module: Bimodule) -> dict:
    def matrices(mats):
        return {
            module.base.elements[s]: [[format_fraction(v) for v in row] for row in mat]
            for s, mat in enumerate(mats)
        }

    return {
        "dim": module.dim,
        "left": matrices(module.left),
        "right": matrices(module.right),
        "symmetric": module.symmetric,
    }


# --- Chains -------------------------------------------------------------------


def chain_from_dict(data: Any, relative_to: Path = Path("."), caps: Optional[Caps] = None) -> Chain:
    model = parse_model(ChainFile, data, "chain")
    base = _resolve_base(model.base, relative_to, caps)
    module = bimodule_from_model(model.module, base) if model.module is not None else None
    coeffs = {parse_key(k): parse_fraction(v) for k, v in model.coeffs.items()}
    return Chain(base, model.degree, coeffs, module)


def load_chain(path: Union[str, Path], caps: Optional[Caps] = None) -> Chain:
    path = Path(path)
    return chain_from_dict(read_json(path), path.parent, caps)


def chain_to_dict(c: Chain, base_ref: Optional[str] = None) -> dict:
    data = {
        "base": base_ref if base_ref is not None else table_to_dict(c.base),
        "degree": c.degree,
        "coeffs": {format_key(k): format_fraction(v) for k, v in c.items()},
    }
    if c.module is not None:
        data["module"] = bimodule_to_dict(c.module)
    return data
