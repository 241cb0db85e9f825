"""Model files: JSON serialization of a weight matrix plus its family.

The format is versioned and bit-exact: floats are written with Python's
shortest round-trip representation, so save -> load -> save is stable.
"""

from __future__ import annotations

import json
from os import PathLike

from .core import Pdnf, WeightMatrix
from .families import ProbabilityFamily, SoftmaxFamily, ThresholdFamily

FORMAT_VERSION = 1


class ModelFormatError(ValueError):
    """A model file violates the documented JSON layout."""


def family_to_spec(family: ProbabilityFamily) -> dict:
    spec = family.spec()
    if spec.get("kind") not in ("softmax", "threshold"):
        raise ModelFormatError(f"family kind {spec.get('kind')!r} has no file form")
    return spec


def family_from_spec(spec) -> ProbabilityFamily:
    if not isinstance(spec, dict):
        raise ModelFormatError(f"field 'family' must be an object, got {type(spec).__name__}")
    kind = spec.get("kind")
    try:
        if kind == "softmax":
            return SoftmaxFamily(spec["alpha"])
        if kind == "threshold":
            return ThresholdFamily(spec["low"], spec["high"])
    except KeyError as exc:
        raise ModelFormatError(f"family spec is missing field {exc.args[0]!r}") from None
    except ValueError as exc:
        raise ModelFormatError(f"bad family spec: {exc}") from None
    raise ModelFormatError(f"unknown family kind {kind!r} (expected 'softmax' or 'threshold')")


def to_dict(pdnf: Pdnf) -> dict:
    return {
        "version": FORMAT_VERSION,
        "n": pdnf.n,
        "m": pdnf.m,
        "weights": pdnf.weights.xi.tolist(),
        "family": family_to_spec(pdnf.family),
    }


def from_dict(doc) -> Pdnf:
    if not isinstance(doc, dict):
        raise ModelFormatError(f"model document must be an object, got {type(doc).__name__}")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model version {version!r} (this reader handles {FORMAT_VERSION})")
    for key in ("n", "m", "weights", "family"):
        if key not in doc:
            raise ModelFormatError(f"model document is missing field {key!r}")
    try:
        weights = WeightMatrix(doc["weights"])
    except ValueError as exc:
        raise ModelFormatError(f"bad field 'weights': {exc}") from None
    if weights.n != doc["n"] or weights.m != doc["m"]:
        raise ModelFormatError(
            f"declared shape ({doc['n']}, {doc['m']}) does not match weights shape {weights.shape}"
        )
    family = family_from_spec(doc["family"])
    try:
        return Pdnf(weights, family)
    except ValueError as exc:
        raise ModelFormatError(str(exc)) from None


def dumps(pdnf: Pdnf) -> str:
    return json.dumps(to_dict(pdnf), indent=2) + "\n"


def loads(text: str) -> Pdnf:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(doc)


def save_model(pdnf: Pdnf, path: str | PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(pdnf))


def load_model(path: str | PathLike) -> Pdnf:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return loads(text)
    except ModelFormatError as exc:
        raise ModelFormatError(f"{path}: {exc}") from None
