from ._uast_taint import (
    RulesetError,
    UastFormatError,
    UastSyntaxError,
    analyze,
    analyze_sarif,
    to_uast_json,
    validate_uast_json,
)

__all__ = [
    "RulesetError",
    "UastFormatError",
    "UastSyntaxError",
    "analyze",
    "analyze_sarif",
    "to_uast_json",
    "validate_uast_json",
]
