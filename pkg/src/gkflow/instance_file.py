"""Instance files.

YAML (so plain JSON also works)::

    elements: [a, b, c, d, e]
    covers: [[a, b], [b, d], [c, d], [d, e]]
    h: {a: 1, b: 3, c: 5, d: 4, e: 2}     # or: auto
    cp: [[a, e], [a, b], [a, d], [e, b], [e, d], [b, d], [a, c]]

``covers`` may be any generating relation; the order is its transitive
closure.  ``h: auto`` picks the default linear extension.  ``cp`` is
``minimal`` (the forced pairs), ``full`` (every h-increasing pair) or an
explicit pair list, which is validated as given.
"""

from __future__ import annotations

from typing import Any

import yaml

from .corollaries import default_linear_extension
from .errors import LabelingError, ParseError, PosetError
from .poset import Instance, Labeling, forced_pairs, h_increasing_pairs, transitive_closure, validate_instance


def _pairs(raw: Any, what: str) -> list[tuple[str, str]]:
    if not isinstance(raw, list):
        raise ParseError(f"{what} must be a list of pairs")
    out = []
    for item in raw:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise ParseError(f"{what}: {item!r} is not a pair")
        out.append((str(item[0]), str(item[1])))
    return out


def load_instance_data(text: str) -> dict:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed instance file: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError("instance file must be a mapping")
    unknown = set(data) - {"elements", "covers", "h", "cp"}
    if unknown:
        raise ParseError(f"unknown keys: {sorted(unknown)}")
    if not isinstance(data.get("elements"), list):
        raise ParseError("'elements' must be a list")
    return data


def parse_poset(data: dict):
    elements = [str(e) for e in data["elements"]]
    if len(set(elements)) != len(elements):
        raise ParseError("duplicate element names")
    try:
        return transitive_closure(_pairs(data.get("covers", []), "covers"), elements)
    except PosetError as exc:
        raise ParseError(str(exc)) from exc


def parse_labeling(data: dict, poset) -> Labeling | None:
    """The file's labeling, or ``None`` for ``auto``."""
    raw = data.get("h", "auto")
    if raw == "auto":
        return None
    if not isinstance(raw, dict):
        raise ParseError("'h' must be a mapping or 'auto'")
    h = {}
    for k, v in raw.items():
        if isinstance(v, bool) or not isinstance(v, int):
            raise ParseError(f"h({k}) must be an integer")
        h[str(k)] = v
    try:
        return Labeling.from_mapping(h, poset.elements)
    except LabelingError as exc:
        raise ParseError(str(exc)) from exc


def parse_instance(text: str) -> Instance:
    data = load_instance_data(text)
    poset = parse_poset(data)
    labeling = parse_labeling(data, poset) or default_linear_extension(poset)
    cp_raw = data.get("cp", "minimal")
    if cp_raw == "minimal":
        cp = forced_pairs(poset, labeling)
    elif cp_raw == "full":
        cp = h_increasing_pairs(labeling)
    else:
        cp = _pairs(cp_raw, "cp")
    try:
        return validate_instance(poset, labeling, cp)
    except PosetError as exc:
        raise ParseError(str(exc)) from exc


def render_instance(inst: Instance) -> str:
    """Inverse of :func:`parse_instance` (explicit h and cp)."""
    poset = inst.poset
    idx = poset.index
    data = {
        "elements": list(poset.elements),
        "covers": [list(p) for p in poset.covers()],
        "h": {e: inst.h(e) for e in poset.elements},
        "cp": [list(p) for p in sorted(inst.cp.pairs, key=lambda p: (idx(p[0]), idx(p[1])))],
    }
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=None)
