"""JSON Schemas (draft 2020-12) for ``--json`` output of the command line."""

ELEMENT = {
    "oneOf": [
        {"type": "string"},
        {"$ref": "#/$defs/matrix"},
    ]
}

MATRIX = {
    "type": "object",
    "required": ["size", "rows"],
    "properties": {
        "size": {"type": "integer", "minimum": 1},
        "rows": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
    },
    "additionalProperties": False,
}

FRACTION = {
    "type": "object",
    "required": ["num", "den", "side"],
    "properties": {
        "num": {"$ref": "#/$defs/element"},
        "den": {"$ref": "#/$defs/element"},
        "side": {"enum": ["left", "right"]},
    },
}

MODULE_ELEMENT = {
    "oneOf": [
        {"type": "string"},
        {"type": "array", "items": {"type": "string"}},
    ]
}

DEFS = {
    "element": ELEMENT,
    "matrix": MATRIX,
    "fraction": FRACTION,
    "module_element": MODULE_ELEMENT,
}


def _obj(required: list[str], **props) -> dict:
    return {"type": "object", "required": required, "properties": props}


_E = {"$ref": "#/$defs/element"}
_M = {"$ref": "#/$defs/module_element"}

RESULTS = {
    "gcd": _obj(["d", "u", "v", "a1", "b1", "side"], d=_E, u=_E, v=_E, a1=_E, b1=_E,
                side={"enum": ["left", "right"]}),
    "bezout": _obj(["d", "u", "v", "identity", "verified"], d=_E, u=_E, v=_E,
                   identity={"type": "string"}, verified={"const": True}),
    "lcm": _obj(["m", "a1", "b1", "side"], m=_E, a1=_E, b1=_E, side={"enum": ["left", "right"]}),
    "divide": _obj(["quotient", "remainder", "side"], quotient={"type": "string"},
                   remainder={"type": "string"}, side={"enum": ["left", "right"]}),
    "adjoint": _obj(["adjoint"], adjoint=_E),
    "minfrac": _obj(["side", "num", "den", "gcd_stripped", "bezout"], side={"enum": ["left", "right"]},
                    num=_E, den=_E, gcd_stripped=_E, bezout=_obj(["u", "v"], u=_E, v=_E)),
    "convert": _obj(["fraction"], fraction={"$ref": "#/$defs/fraction"}),
    "equal": _obj(["equal"], equal={"type": "boolean"}),
    "ddet-deg": _obj(["ddet_degree"], ddet_degree={"type": ["integer", "null"]}),
    "hermite": _obj(["H", "U", "pivots", "ddet_degree"], H={"$ref": "#/$defs/matrix"},
                    U={"$ref": "#/$defs/matrix"},
                    pivots={"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                    ddet_degree={"type": ["integer", "null"]}),
    "regularize": _obj(["q", "sum", "side"], q=_E, sum=_E, side={"enum": ["left", "right"]}),
    "witness-thm33": _obj(
        ["z", "trace"], z=_M,
        trace=_obj(["a", "b", "a1", "b1", "m", "u", "v", "p", "q", "u_regular", "v_regular",
                    "shift", "a1_original", "identities"],
                   identities={"type": "object", "additionalProperties": {"const": True}})),
    "witness-cor34": _obj(["z"], z=_M),
    "isotropy": _obj(["skew", "module_action"], skew={"type": "boolean"},
                     module_action={"type": ["boolean", "null"]}, z=_M),
    "kernel-poly": _obj(["basis", "degree_bound"], basis={"type": "array", "items": {"type": "string"}},
                        degree_bound={"type": "integer"}),
    "selftest": _obj(
        ["seed", "ok", "suites"], seed={"type": "integer"}, ok={"type": "boolean"},
        suites={"type": "array", "items": _obj(["name", "trials", "passes", "failures", "seconds"])}),
}

STATUSES = ["ok", "precondition-violated", "parse-error", "search-failure", "check-failed"]


def envelope(command: str) -> dict:
    """Schema of the full ``--json`` document printed by ``command``."""
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$defs": DEFS,
        "type": "object",
        "required": ["command", "status"],
        "properties": {"command": {"const": command}, "status": {"enum": STATUSES}},
        "if": {"properties": {"status": {"const": "ok"}}},
        "then": {"required": ["result"], "properties": {"result": RESULTS[command]}},
        "else": {"required": ["error"], "properties": {"error": {"type": "string"}}},
    }
