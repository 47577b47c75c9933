"""JSON Schemas (draft 2020-12) of the documents written by the CLI.

Non-finite floats are encoded as ``null`` (nan) or the strings ``"inf"`` /
``"-inf"``; complex numbers as ``[re, im]`` pairs.
"""

SCHEMA_VERSION = 1

_real = {"anyOf": [{"type": "number"}, {"type": "null"}, {"enum": ["inf", "-inf"]}]}
_complex = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}


def _doc(command, properties, required):
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "command": {"const": command},
            **properties,
        },
        "required": ["schema_version", "command", *required],
    }


NORM_ESTIMATE = {
    "type": "object",
    "properties": {
        "value": {"type": "number", "minimum": 0},
        "argmax": _complex,
        "r_max": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "grid": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "refined": {"type": "boolean"},
        "lower_bound": {"const": True},
        "extrapolated": _real,
    },
    "required": ["value", "argmax", "r_max", "grid", "refined", "lower_bound"],
}

MEMBERSHIP_REPORT = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["starlike", "V", "subordination"]},
        "direction": {"enum": ["forward", "inverse"]},
        "alpha": {"type": "number"},
        "empirical_min_re": {"type": "number"},
        "witness": _complex,
        "grid": {"type": "array", "minItems": 3, "maxItems": 3},
        "inverse_domain_radius": {"type": ["number", "null"]},
        "verdict": {"enum": ["member", "non_member", "indeterminate"]},
    },
    "required": ["kind", "direction", "alpha", "empirical_min_re", "witness", "grid", "verdict"],
}

BOUND_PROFILE = {
    "type": "object",
    "properties": {name: _real for name in (
        "alpha", "yamashita", "theorem1_stated", "derivation_phi", "derivation_case2",
        "majorant_sup", "majorant_argmax", "rahmatan_A", "rahmatan_B")},
    "required": ["alpha", "yamashita", "theorem1_stated", "derivation_phi", "derivation_case2",
                 "majorant_sup", "rahmatan_A", "rahmatan_B"],
}

SCHEMAS = {
    "norm": _doc("norm", {"function": {"type": "string"}, **NORM_ESTIMATE["properties"]},
                 ["function", *NORM_ESTIMATE["required"]]),
    "member": _doc("member", {"function": {"type": "string"},
                              "reports": {"type": "array", "items": MEMBERSHIP_REPORT}},
                   ["function", "reports"]),
    "generate": _doc("generate", {
        "class": {"enum": ["starlike", "inv-starlike", "v"]},
        "alpha": {"type": "number"},
        "phi": {"type": "string"},
        "order": {"type": "integer", "minimum": 8},
        "coefficients": {"type": "array", "items": _complex},
        "validity": {"type": "object", "required": ["schwarz", "verdict"]},
    }, ["class", "alpha", "phi", "order", "coefficients", "validity"]),
    "audit": _doc("audit", {"rows": {"type": "array", "items": {
        "type": "object",
        "properties": {
            "function": {"type": "string"},
            "alpha": {"type": "number"},
            "class": {"enum": ["starlike", "V"]},
            "forward": {"anyOf": [MEMBERSHIP_REPORT, {"type": "null"}]},
            "inverse": {"anyOf": [MEMBERSHIP_REPORT, {"type": "null"}]},
            "norm": {"anyOf": [NORM_ESTIMATE, {"type": "null"}]},
            "bounds": BOUND_PROFILE,
            "violations": {"type": "array", "items": {"type": "string"}},
            "derivation_flags": {"type": "array", "items": {"type": "string"}},
            "error": {"type": ["string", "null"]},
        },
        "required": ["function", "alpha", "class", "bounds", "violations", "derivation_flags"],
    }}}, ["rows"]),
    "bounds": _doc("bounds", {"rows": {"type": "array", "items": BOUND_PROFILE}}, ["rows"]),
    "series revert": _doc("series revert", {"coefficients": {"type": "array", "items": _complex}},
                          ["coefficients"]),
}
