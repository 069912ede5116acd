"""Algebra description files (YAML) and the ``--algebra`` resolver.

A file looks like::

    name: W2
    n: 2
    minpoly: ["-1", "1"]        # ascending; omitted means Q
    q:
      - {i: 1, j: 2, value: "-1"}
    a:
      - {i: 1, j: 2, value: "1"}
    degrees: [1, 1]             # optional
    center_powers: [2, 2]       # optional

Indices are 1-based with i < j.  Values use the coefficient text form.
"""

from __future__ import annotations

import os
from fractions import Fraction

import yaml

from .algebra import AlgebraSpec
from .center import CenterSpec, validate_center
from .errors import EngineError, ParseError, RelationIndexError
from .field import QQ, NumberField, format_scalar
from .parsing import parse_scalar
from .presets import preset

_KEYS = {"name", "n", "minpoly", "q", "a", "degrees", "center_powers"}


def _where(node, path):
    if node is None:
        return path
    return f"{path}, line {node.start_mark.line + 1}"


def _child(mapping_node, key):
    if mapping_node is None:
        return None
    for k, v in mapping_node.value:
        if k.value == key:
            return v
    return None


def _int(value, node, path, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", _where(node, path))
    if minimum is not None and value < minimum:
        raise ParseError(f"expected an integer >= {minimum}", _where(node, path))
    return value


def _literal(value, node, path, field):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"expected a coefficient literal, got {value!r}", _where(node, path))
    try:
        return parse_scalar(str(value), field)
    except ParseError as exc:
        raise ParseError(str(exc), _where(node, path)) from None


def _int_list(value, node, path, n):
    if not isinstance(value, list) or len(value) != n:
        raise ParseError(f"expected a list of {n} integers", _where(node, path))
    items = node.value if node is not None else [None] * n
    return tuple(_int(v, items[k], f"{path}[{k}]", 1) for k, v in enumerate(value))


def _minpoly(value, node):
    if value is None:
        return QQ
    if not isinstance(value, list) or len(value) < 2:
        raise ParseError("minpoly must list at least two ascending coefficients", _where(node, "minpoly"))
    coeffs = []
    for k, v in enumerate(value):
        sub = node.value[k] if node is not None else None
        c = _literal(v, sub, f"minpoly[{k}]", QQ)
        coeffs.append(Fraction(c))
    try:
        return NumberField(coeffs)
    except ValueError as exc:
        raise ParseError(str(exc), _where(node, "minpoly")) from None


def _relations(value, node, key, n, field):
    if value is None:
        return {}
    if not isinstance(value, list):
        raise ParseError(f"{key} must be a list of {{i, j, value}} entries", _where(node, key))
    out = {}
    for k, entry in enumerate(value):
        sub = node.value[k] if node is not None else None
        path = f"{key}[{k}]"
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "value"}:
            raise ParseError("entry must have exactly the keys i, j, value", _where(sub, path))
        i = _int(entry["i"], _child(sub, "i"), f"{path}.i")
        j = _int(entry["j"], _child(sub, "j"), f"{path}.j")
        if not (1 <= i < j <= n):
            raise RelationIndexError(f"{path}: need 1 <= i < j <= {n}, got i={i}, j={j}")
        if (i - 1, j - 1) in out:
            raise ParseError(f"duplicate entry for ({i}, {j})", _where(sub, path))
        out[(i - 1, j - 1)] = _literal(entry["value"], _child(sub, "value"), f"{path}.value", field)
    return out


def parse_algebra_file(text: str) -> tuple[AlgebraSpec, CenterSpec | None]:
    try:
        root = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        loc = f"line {mark.line + 1}" if mark is not None else None
        raise ParseError(f"malformed document: {getattr(exc, 'problem', exc)}", loc) from None
    if not isinstance(data, dict):
        raise ParseError("expected a key-value document", "top level")
    unknown = set(data) - _KEYS
    if unknown:
        raise ParseError(f"unknown keys {sorted(map(str, unknown))}", "top level")
    if "n" not in data:
        raise ParseError("missing required key 'n'", "top level")
    n = _int(data["n"], _child(root, "n"), "n", 0)
    field = _minpoly(data.get("minpoly"), _child(root, "minpoly"))
    q = _relations(data.get("q"), _child(root, "q"), "q", n, field)
    a = _relations(data.get("a"), _child(root, "a"), "a", n, field)
    degrees = None
    if data.get("degrees") is not None:
        degrees = _int_list(data["degrees"], _child(root, "degrees"), "degrees", n)
    name = data.get("name") or ""
    try:
        spec = AlgebraSpec(n, q=q, a=a, degrees=degrees, field=field, name=str(name))
    except EngineError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), "top level") from None
    center = None
    if data.get("center_powers") is not None:
        powers = _int_list(data["center_powers"], _child(root, "center_powers"), "center_powers", n)
        center = validate_center(spec, powers)
    return spec, center


def dump_algebra_file(spec: AlgebraSpec, center: CenterSpec | None = None) -> str:
    """Inverse of :func:`parse_algebra_file` (up to entries equal to their defaults)."""
    doc = {"name": spec.name or "", "n": spec.n}
    if spec.field != QQ:
        doc["minpoly"] = [format_scalar(c) for c in spec.field.coefficients]
    for key, table, default in (("q", spec.q, 1), ("a", spec.a, 0)):
        entries = [
            {"i": i + 1, "j": j + 1, "value": format_scalar(table[i][j])}
            for i in range(spec.n)
            for j in range(i + 1, spec.n)
            if table[i][j] != default
        ]
        if entries:
            doc[key] = entries
    if set(spec.degrees) - {1}:
        doc["degrees"] = list(spec.degrees)
    if center is not None:
        doc["center_powers"] = list(center.powers)
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True)


def load_algebra(ref: str) -> tuple[AlgebraSpec, CenterSpec | None]:
    """Resolve a preset name or a path to an algebra file."""
    if os.path.exists(ref):
        with open(ref, encoding="utf-8") as fh:
            return parse_algebra_file(fh.read())
    try:
        return preset(ref)
    except KeyError:
        raise ParseError(f"{ref!r} is neither a preset nor a readable file", "--algebra") from None
