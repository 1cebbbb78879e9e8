"""Flat `key = value` text shared by the report and manifest files."""

import math
from typing import Any, Mapping

import yaml

from src.core.errors import FormatError

SEPARATOR = " = "


def _format_float(value: float) -> str:
    # PyYAML only resolves floats written with a dot and a signed exponent
    if math.isnan(value):
        return ".nan"
    if math.isinf(value):
        return ".inf" if value > 0 else "-.inf"
    text = repr(value)
    mantissa, e, exponent = text.partition("e")
    if "." not in mantissa:
        mantissa += ".0"
    return f"{mantissa}{e}{exponent}"


def format_value(value: Any) -> str:
    """YAML scalar spelling of a value, so `parse_key_values` gives back the same type."""
    if isinstance(value, float):
        return _format_float(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(format_value(v) for v in value) + "]"
    text = yaml.safe_dump(value, default_flow_style=True, width=1 << 16).strip()
    return text.removesuffix("\n...").strip()


def format_key_values(values: Mapping[str, Any]) -> str:
    """One `key = value` line per item, in mapping order."""
    lines = []
    for key, value in values.items():
        if not key or key.strip() != key or SEPARATOR in key:
            raise FormatError(f"Invalid key {key!r}.")
        lines.append(f"{key}{SEPARATOR}{format_value(value)}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_key_values(text: str) -> dict[str, Any]:
    """
    Parse `key = value` lines; values are read as YAML scalars or flow lists.

    Raises:
        FormatError: On a line without separator, an unreadable value or a repeated key.
    """
    values: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        key, sep, raw = line.partition(SEPARATOR)
        if not sep or not key:
            raise FormatError(f"Expected 'key = value', got '{line}'.", lineno)
        if key in values:
            raise FormatError(f"Key '{key}' is repeated.", lineno)
        try:
            values[key] = yaml.safe_load(raw)
        except yaml.YAMLError as e:
            raise FormatError(f"Unreadable value for '{key}': {raw}", lineno) from e
    return values
