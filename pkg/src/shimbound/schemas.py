"""JSON schemas for field cards, exceptional-set reports and certificates."""

from __future__ import annotations

import jsonschema

from .field import CARD_SCHEMA_VERSION, CardError

REPORT_SCHEMA_VERSION = "shimbound.report/1"
CERTIFICATE_SCHEMA_VERSION = "shimbound.certificate/1"

_int_str = {"type": "string", "pattern": r"^-?[0-9]+$"}
_dec_str = {"type": "string", "pattern": r"^-?[0-9.]+(e[-+]?[0-9]+)?$"}
_interval = {"type": "object", "required": ["mid", "rad"], "properties": {"mid": _dec_str, "rad": _dec_str}}
_vector = {"type": "array", "items": _int_str}
_pm = {"type": "string", "pattern": r"^-?[0-9.e+-]+ ± [0-9.e+-]+$"}

CARD_SCHEMA = {
    "type": "object",
    "required": [
        "schema", "name", "degree", "discriminant", "class_number", "unit_rank", "regulator",
        "ramified_primes", "mult_table", "galois_group", "places", "fundamental_units", "delta_k",
        "is_galois_asserted", "hcf_free_asserted",
    ],
    "properties": {
        "schema": {"const": CARD_SCHEMA_VERSION},
        "name": {"type": "string"},
        "degree": {"type": "integer", "minimum": 1},
        "discriminant": _int_str,
        "class_number": {"type": "integer", "minimum": 1},
        "unit_rank": {"type": "integer", "minimum": 0},
        "regulator": _interval,
        "ramified_primes": _vector,
        "integral_basis": {"type": "array", "items": {"type": "string"}},
        "mult_table": {"type": "array", "items": {"type": "array", "items": _vector}},
        "galois_group": {"type": "array", "items": {"type": "array", "items": _vector}},
        "places": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["kind", "basis"],
                "properties": {
                    "kind": {"enum": ["real", "complex"]},
                    "basis": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["re", "im"],
                            "properties": {"re": _interval, "im": _interval},
                        },
                    },
                },
            },
        },
        "fundamental_units": {"type": "array", "items": _vector},
        "delta_k": _dec_str,
        "is_galois_asserted": {"type": "boolean"},
        "hcf_free_asserted": {"type": "boolean"},
        "distinguished_place": {"type": "integer", "minimum": 0},
        "torsion_order": {"type": "integer", "minimum": 2},
        "torsion_generator": _vector,
        "imag_quadratic_subfields": {
            "type": "array",
            "items": {"type": "object", "required": ["D", "sqrt"], "properties": {"D": _int_str, "sqrt": _vector}},
        },
        "snew": {
            "type": "array",
            "items": {"type": "object", "required": ["q", "alpha"], "properties": {"q": _int_str, "alpha": _vector}},
        },
        "quadratic_D": {"oneOf": [{"type": "null"}, _int_str]},
    },
}

_big_int = {
    "oneOf": [
        _int_str,
        {
            "type": "object",
            "required": ["digits", "sign", "leading", "trailing", "sha256"],
            "properties": {
                "digits": {"type": "integer"},
                "sign": {"enum": [-1, 1]},
                "leading": {"type": "string"},
                "trailing": {"type": "string"},
                "sha256": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
            },
        },
    ]
}

_exponent_map = {"type": "object", "additionalProperties": {"enum": [0, 8, 12, 16, 24]}}

BOUNDS_SCHEMA = {
    "type": "object",
    "required": ["A1", "delta_k", "C1", "C2", "log10_a", "log10_bound", "bound_leading_digits"],
    "properties": {
        "A1": _dec_str,
        "delta_k": _dec_str,
        "C1": {"type": "string"},
        "C2": _pm,
        "log10_a": _pm,
        "log10_bound": _dec_str,
        "bound_leading_digits": _dec_str,
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "field", "config", "snew", "entries", "sets", "bounds", "checks"],
    "properties": {
        "schema": {"const": REPORT_SCHEMA_VERSION},
        "field": {"type": "object"},
        "config": {"type": "object"},
        "snew": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["q", "ideal_hnf", "alpha", "alpha_norm", "class", "within_prime_bound"],
                "properties": {"q": _int_str, "alpha": _vector, "alpha_norm": _int_str},
            },
        },
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["q", "eps", "a", "n", "roots", "m", "factorization"],
                "properties": {
                    "q": _int_str,
                    "eps": _exponent_map,
                    "a": _int_str,
                    "n": _int_str,
                    "roots": {"type": "array", "items": {"enum": ["upper", "lower"]}},
                    "m": _big_int,
                    "factorization": {"type": "object", "required": ["status"]},
                },
            },
        },
        "zero_cases": {"type": "array"},
        "sets": {
            "type": "object",
            "required": ["N0_listed", "T", "Ram", "N1_listed", "list_limit", "unresolved_cofactors"],
            "properties": {
                "N0_listed": _vector,
                "T": _vector,
                "Ram": _vector,
                "N1_listed": _vector,
                "unresolved_cofactors": {"type": "array", "items": _big_int},
            },
        },
        "membership": {"type": "array"},
        "bounds": BOUNDS_SCHEMA,
        "checks": {"type": "object"},
    },
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["schema", "status", "field", "quaternion", "hypotheses", "branch", "excluded", "bound", "text"],
    "properties": {
        "schema": {"const": CERTIFICATE_SCHEMA_VERSION},
        "status": {"enum": ["certified", "refused"]},
        "refusal_reasons": {"type": "array", "items": {"type": "string"}},
        "field": {"type": "object"},
        "quaternion": {
            "type": "object",
            "required": ["d", "ramified_primes"],
            "properties": {"d": _int_str, "ramified_primes": _vector},
        },
        "hypotheses": {"type": "object"},
        "branch": {"enum": [1, 2]},
        "conclusion": {"type": "string"},
        "excluded": {
            "type": "object",
            "required": ["explicit", "rule"],
            "properties": {
                "explicit": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["p", "reason"],
                        "properties": {
                            "p": _int_str,
                            "reason": {"enum": ["p<=4q", "p<11", "p=13", "p|d", "p in N1"]},
                        },
                    },
                },
            },
        },
        "bound": {"type": "object"},
        "text": {"type": "string"},
    },
}


def _validate(data: dict, schema: dict, what: str) -> None:
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        loc = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise CardError(f"{what} failed schema validation at {loc}: {exc.message}") from exc


def validate_card_json(data: dict) -> None:
    _validate(data, CARD_SCHEMA, "field card")


def validate_report_json(data: dict) -> None:
    _validate(data, REPORT_SCHEMA, "report")


def validate_certificate_json(data: dict) -> None:
    _validate(data, CERTIFICATE_SCHEMA, "certificate")
