"""Flat key=value configuration files with typed, typo-safe validation.

Format: one ``key = value`` per line, ``#`` comments, blank lines ignored.
Lists are comma-separated.  Unknown keys are rejected (with the offending
line number), as are missing required keys; every experiment has about a
dozen scalar knobs, so nesting would add nothing.
"""

from dataclasses import dataclass

from .errors import ConfigError


@dataclass(frozen=True)
class Field:
    name: str
    type: str  # int | float | str | bool | int_list | float_list
    required: bool = False
    default: object = None


def parse_kv_text(text: str):
    """Parse key=value lines; returns (dict, line-number map)."""
    values = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
        lines[key] = lineno
    return values, lines


def _convert(field: Field, raw: str, lineno):
    where = f"line {lineno}: " if lineno is not None else ""
    try:
        if field.type == "int":
            return int(raw)
        if field.type == "float":
            return float(raw)
        if field.type == "str":
            return raw
        if field.type == "bool":
            low = raw.lower()
            if low in ("true", "1", "yes"):
                return True
            if low in ("false", "0", "no"):
                return False
            raise ValueError(f"not a boolean: {raw!r}")
        if field.type == "int_list":
            return tuple(int(part.strip()) for part in raw.split(",") if part.strip())
        if field.type == "float_list":
            return tuple(float(part.strip()) for part in raw.split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"{where}field {field.name!r}: {exc}") from exc
    raise ConfigError(f"field {field.name!r} has unknown schema type {field.type!r}")


def resolve(schema, text: str, overrides=None):
    """Validate ``text`` against a list of Fields; returns a plain dict.

    ``overrides`` (e.g. CLI flags) take precedence over file values and are
    applied after validation, keyed by field name.
    """
    raw, lines = parse_kv_text(text)
    by_name = {f.name: f for f in schema}
    unknown = [k for k in raw if k not in by_name]
    if unknown:
        locs = ", ".join(f"{k!r} (line {lines[k]})" for k in unknown)
        raise ConfigError(f"unknown config keys: {locs}")
    resolved = {}
    for field in schema:
        if field.name in raw:
            resolved[field.name] = _convert(field, raw[field.name], lines[field.name])
        elif field.required and not (overrides and field.name in overrides):
            raise ConfigError(f"missing required config key {field.name!r}")
        else:
            resolved[field.name] = field.default
    for key, val in (overrides or {}).items():
        if val is not None:
            if key not in by_name:
                raise ConfigError(f"unknown override {key!r}")
            resolved[key] = val
    return resolved


def format_kv(values: dict) -> str:
    """Canonical key=value rendering (full float round-trip via repr)."""
    out = []
    for key in sorted(values):
        val = values[key]
        if isinstance(val, (tuple, list)):
            rendered = ",".join(repr(v) if isinstance(v, float) else str(v) for v in val)
        elif isinstance(val, float):
            rendered = repr(val)
        elif isinstance(val, bool):
            rendered = "true" if val else "false"
        else:
            rendered = str(val)
        out.append(f"{key} = {rendered}")
    return "\n".join(out) + "\n"
