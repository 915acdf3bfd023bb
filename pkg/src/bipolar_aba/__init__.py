"""Bipolar assumption-based argumentation with rule aggregation.

Frameworks with single-assumption rule bodies, their extension semantics,
quota and oligarchic aggregation of agents' rule sets, and checks of whether
aggregation preserves a property.
"""

from __future__ import annotations

from .aggregation import (
    NamedQuota,
    Oligarchy,
    Profile,
    Quota,
    aggregate,
    aggregate_rules,
    parse_spec,
    resolve_quota,
)
from .core import (
    Framework,
    Rule,
    Signature,
    SignatureError,
    ValidationError,
    attacks,
    closure,
    defends,
    derives,
    is_closed,
    is_conflict_free,
    validate,
)
from .preservation import (
    PreservationVerdict,
    Verdict,
    check_disjunctive,
    check_implicative,
    check_k_exclusive,
    check_preservation,
    holds,
    parse_property,
)
from .semantics import (
    EnumerationLimitError,
    ExtensionReport,
    Semantics,
    enumerate_extensions,
    is_acceptable,
    is_acyclic,
    is_coherent,
    is_extension,
    well_founded_nonempty,
)

__all__ = [
    "EnumerationLimitError",
    "ExtensionReport",
    "Framework",
    "NamedQuota",
    "Oligarchy",
    "PreservationVerdict",
    "Profile",
    "Quota",
    "Rule",
    "Semantics",
    "Signature",
    "SignatureError",
    "ValidationError",
    "Verdict",
    "aggregate",
    "aggregate_rules",
    "attacks",
    "check_disjunctive",
    "check_implicative",
    "check_k_exclusive",
    "check_preservation",
    "closure",
    "defends",
    "derives",
    "enumerate_extensions",
    "holds",
    "is_acceptable",
    "is_acyclic",
    "is_closed",
    "is_coherent",
    "is_conflict_free",
    "is_extension",
    "parse_property",
    "parse_spec",
    "resolve_quota",
    "validate",
    "well_founded_nonempty",
]
