"""JSON Schemas for everything the CLI prints as JSON."""

from __future__ import annotations

_CLASSES = {
    "type": "object",
    "properties": {name: {"type": "integer", "minimum": 0} for name in ("both_yes", "both_no", "oracle_only", "paper_only")},
    "required": ["both_yes", "both_no", "oracle_only", "paper_only"],
    "additionalProperties": False,
}

SOLVE = {
    "type": "object",
    "properties": {
        "solvable": {"type": "boolean"},
        "x": {"oneOf": [{"type": "null"}, {"type": "array", "items": {"enum": [0, 1]}}]},
        "rank": {"type": "integer", "minimum": 0},
        "rank_aug": {"type": "integer", "minimum": 0},
    },
    "required": ["solvable", "x", "rank", "rank_aug"],
    "additionalProperties": False,
}

CANDIDATE = {
    "type": "object",
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "l": {"type": "integer", "minimum": 1},
        "q": {"type": "integer", "minimum": 1},
        "subcase": {"type": "string"},
        "choices": {"type": "object", "additionalProperties": {"type": "integer"}},
    },
    "required": ["k", "l", "subcase", "choices"],
    "additionalProperties": False,
}

CANDIDATES = {"type": "array", "items": CANDIDATE}

DISCREPANCY = {
    "type": "object",
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "l": {"type": "integer", "minimum": 1},
        "q": {"type": ["integer", "null"]},
        "oracle": {"type": "boolean"},
        "restated": {"type": "boolean"},
        "enumerated": {"type": "boolean"},
        "subcases": {"type": "array", "items": {"type": "string"}},
        "rank": {"type": "integer"},
        "rank_aug": {"type": "integer"},
        "kinds": {"type": "array", "items": {"type": "string"}, "minItems": 1},
    },
    "required": ["k", "l", "q", "oracle", "restated", "enumerated", "subcases", "rank", "rank_aug", "kinds"],
}

AUDIT = {
    "type": "object",
    "properties": {
        "M": {"type": "integer", "minimum": 1},
        "fact1": {"type": "boolean"},
        "fact2": {"type": "boolean"},
        "fact3": {"type": "boolean"},
        "counterexamples": {"type": "object"},
    },
    "required": ["M", "fact1", "fact2", "fact3", "counterexamples"],
}

REPORT = {
    "type": "object",
    "properties": {
        "instance": {
            "type": "object",
            "properties": {"problem": {"enum": ["I", "II"]}, "j": {"type": "integer"}, "version": {"type": "string"}},
            "required": ["problem", "M", "j", "version"],
        },
        "bounds": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 1}},
        "grid_size": {"type": "integer", "minimum": 0},
        "classes": _CLASSES,
        "enumerated_classes": _CLASSES,
        "discrepancies": {"type": "array", "items": DISCREPANCY},
        "discrepancy_counts": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 1}},
        "all_discrepancies": {"type": "array", "items": DISCREPANCY},
        "readings": {"type": "object", "additionalProperties": {"type": "integer"}},
        "closed_form_star": {
            "type": "object",
            "properties": {
                "agree": {"type": "integer"},
                "disagree": {"type": "integer"},
                "disagreements": {"type": "array"},
            },
            "required": ["agree", "disagree", "disagreements"],
        },
        "audit": AUDIT,
    },
    "required": [
        "instance", "bounds", "grid_size", "classes", "enumerated_classes", "discrepancies", "discrepancy_counts",
        "all_discrepancies", "readings", "audit",
    ],
}

REPORT_SET = {
    "type": "object",
    "properties": {
        "problem": {"enum": ["I", "II"]},
        "version": {"type": "string"},
        "bounds": {"type": "object"},
        "totals": {
            "type": "object",
            "properties": {"classes": _CLASSES, "enumerated_classes": _CLASSES},
            "required": ["instances", "grid_points", "classes", "enumerated_classes"],
        },
        "reports": {"type": "array", "items": REPORT},
    },
    "required": ["problem", "version", "bounds", "totals", "reports"],
}

ODD_POSITIONS = {
    "type": "object",
    "properties": {
        "M": {"type": "integer", "minimum": 1},
        "count": {"type": "integer", "minimum": 1},
        "positions": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "tuples": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    },
    "required": ["M", "count", "positions", "tuples"],
}

AUDIT_SUMMARY = {
    "type": "object",
    "properties": {
        "Mmax": {"type": "integer", "minimum": 1},
        "passes": {"type": "object", "additionalProperties": {"type": "integer"}},
        "violation_counts": {"type": "object", "additionalProperties": {"type": "integer"}},
        "violations": {"type": "object"},
        "total_odd_positions": {"type": "integer"},
    },
    "required": ["Mmax", "passes", "violation_counts", "violations", "total_odd_positions"],
}
