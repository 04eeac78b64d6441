"""JSON group and graph specs, canonical serialization, and float formatting.

Group specs::

    {"type": "abelian", "orders": [4, 4]}
    {"type": "perm", "degree": 4, "generators": ["(1 2)(3 4)", "(1 2 3)"]}
    {"type": "named", "name": "A5"}

Graph specs add connection sets, each a list of elements: residue lists (a
bare integer is fine for a cyclic group) or cycle strings for permutations.
"""
from __future__ import annotations

import json
import math

from .errors import InvalidGroupSpec, InvalidSpec, ParseError
from .groups import AbelianGroup, make_group
from .permgroups import (
    PermGroup,
    alternating_group,
    c7_rtimes_c3,
    format_cycles,
    group_from_generators,
    symmetric_group,
)
from .spectra import Group, MixedCayleySpec, make_spec

NAMED_GROUPS = {
    "A4": lambda: alternating_group(4),
    "A5": lambda: alternating_group(5),
    "S3": lambda: symmetric_group(3),
    "S4": lambda: symmetric_group(4),
    "C7:C3": c7_rtimes_c3,
}

SPEC_FIELDS = ("c_i", "c_plus", "c_minus")


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def parse_group(obj) -> Group:
    if isinstance(obj, str):
        obj = load_json(obj)
    if not isinstance(obj, dict):
        raise InvalidGroupSpec("group spec must be a JSON object")
    kind = obj.get("type")
    if kind == "abelian":
        orders = obj.get("orders")
        if not isinstance(orders, list) or not all(isinstance(n, int) for n in orders):
            raise InvalidGroupSpec("abelian group needs an integer list 'orders'")
        return make_group(orders)
    if kind == "perm":
        degree = obj.get("degree")
        gens = obj.get("generators", [])
        if not isinstance(degree, int) or degree < 1:
            raise InvalidGroupSpec("perm group needs a positive integer 'degree'")
        if not isinstance(gens, list):
            raise InvalidGroupSpec("'generators' must be a list")
        return group_from_generators(degree, gens, bound=obj.get("bound", 25000))
    if kind == "named":
        name = obj.get("name")
        if name not in NAMED_GROUPS:
            raise InvalidGroupSpec(f"unknown group name {name!r}; known: {sorted(NAMED_GROUPS)}")
        return NAMED_GROUPS[name]()
    raise InvalidGroupSpec(f"unknown group type {kind!r}")


def serialize_group(G: Group) -> dict:
    if isinstance(G, AbelianGroup):
        return {"type": "abelian", "orders": list(G.orders)}
    return {"type": "perm", "degree": G.degree, "generators": [format_cycles(g) for g in G.generators]}


def parse_graph_spec(obj) -> MixedCayleySpec:
    if isinstance(obj, str):
        obj = load_json(obj)
    if not isinstance(obj, dict) or "group" not in obj:
        raise ParseError("graph spec must be an object with a 'group' field")
    unknown = set(obj) - {"group", "normal_cayley", *SPEC_FIELDS}
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}")
    G = parse_group(obj["group"])
    sets = {}
    for name in SPEC_FIELDS:
        raw = obj.get(name, [])
        if not isinstance(raw, list):
            raise InvalidSpec(name, "must be a list of elements")
        try:
            sets[name] = [G.element(x) for x in raw]
        except Exception as exc:
            raise InvalidSpec(name, str(exc)) from None
        if len(set(sets[name])) != len(sets[name]):
            raise InvalidSpec(name, "repeated element")
    spec = make_spec(G, **sets)
    if obj.get("normal_cayley") and not spec.is_normal:
        raise InvalidSpec("normal_cayley", "a connection set is not a union of conjugacy classes")
    return spec


def format_element(G: Group, g):
    if isinstance(G, AbelianGroup):
        return list(g)
    return format_cycles(g)


def serialize_spec(spec: MixedCayleySpec) -> dict:
    G = spec.group
    out = {"group": serialize_group(G)}
    for name in SPEC_FIELDS:
        s = getattr(spec, name)
        out[name] = [format_element(G, g) for g in sorted(s, key=G.index)]
    return out


def round_floats(obj, digits: int = 15):
    """Recursively round floats to `digits` significant digits; non-finite become None."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, complex):
        return [round_floats(obj.real, digits), round_floats(obj.imag, digits)]
    if isinstance(obj, dict):
        return {k: round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, digits) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return round_floats(obj.item(), digits)
    return obj


def dumps(obj) -> str:
    return json.dumps(round_floats(obj), sort_keys=False)
