"""RCode descriptor files: one `key=value` per line.

    ring=R(3; 2)
    n=2
    g1=x+1
    g2=x+2
    g3=1

A `field=GF(q; modulus)` line is written only for a non-default field presentation.
"""

import logging
from pathlib import Path
from typing import Union

import jsonschema

from algebra.gf import FieldSpec
from algebra.polyring import Poly
from algebra.ring_r import RingSpec
from codes.cyclic import CyclicCode
from codes.rcode import RCode, build
from utils.common import MixedParameters, ParseError

logger = logging.getLogger(__name__)

DESCRIPTOR_SCHEMA = {
    "type": "object",
    "properties": {
        "ring": {"type": "string", "pattern": r"^R\(\s*\d+\s*;\s*\d+\s*(;[^)]*)?\)$"},
        "field": {"type": "string", "pattern": r"^GF\(\s*\d+\s*(;[^)]*)?\)$"},
        "n": {"type": "string", "pattern": r"^[1-9][0-9]*$"},
        "g1": {"type": "string", "minLength": 1},
        "g2": {"type": "string", "minLength": 1},
        "g3": {"type": "string", "minLength": 1},
    },
    "required": ["ring", "n", "g1", "g2", "g3"],
    "additionalProperties": False,
}


def parse_descriptor_fields(text: str) -> dict[str, str]:
    """Split descriptor text into validated key/value strings."""
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"Line {lineno}: expected key=value, got {raw!r}")
        key = key.strip()
        if key in fields:
            raise ParseError(f"Line {lineno}: duplicate key {key!r}")
        fields[key] = value.strip()
    try:
        jsonschema.validate(instance=fields, schema=DESCRIPTOR_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ParseError(f"Invalid descriptor: {exc.message}")
    return fields


def parse_descriptor(text: str) -> RCode:
    fields = parse_descriptor_fields(text)
    ring = RingSpec.parse(fields["ring"])
    if "field" in fields:
        field = FieldSpec.parse(fields["field"])
        if field.order != ring.field.order:
            raise MixedParameters(f"field={field} does not match ring={ring}")
        ring = RingSpec(field, ring.r)
    n = int(fields["n"])
    components = [
        CyclicCode.from_generator(Poly.parse(ring.field, fields[key], max_degree=n), n)
        for key in ("g1", "g2", "g3")
    ]
    code = build(ring, *components)
    logger.debug(f"Parsed descriptor: {code}")
    return code


def format_descriptor(code: RCode) -> str:
    """Canonical descriptor text; parse_descriptor(format_descriptor(C)) == C."""
    ring = RingSpec(FieldSpec.create(code.field.p, code.field.k), code.ring.r)
    lines = [f"ring={ring}"]
    if not code.field.has_default_modulus:
        lines.append(f"field={code.field}")
    lines.append(f"n={code.n}")
    for i, component in enumerate(code.components, start=1):
        lines.append(f"g{i}={component.generator}")
    return "\n".join(lines) + "\n"


def read_descriptor(path: Union[str, Path]) -> RCode:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"Cannot read descriptor {path}: {exc}")
    return parse_descriptor(text)


def write_descriptor(code: RCode, path: Union[str, Path]) -> None:
    Path(path).write_text(format_descriptor(code), encoding="utf-8")
