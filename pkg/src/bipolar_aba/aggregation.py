"""Profiles of agents' rule sets and the quota and oligarchic aggregation rules.

Agents are numbered from 1, as in the usual ``N = {1, ..., n}`` notation;
veto sets and dictators refer to these numbers.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Union

from .core import Framework, Rule, Signature, ValidationError, validate_rules

QUOTA_KINDS = ("nomination", "weak-majority", "strict-majority", "unanimity")


@dataclass(frozen=True)
class Profile:
    """The rule sets of ``n >= 2`` agents over one shared signature."""

    signature: Signature
    agent_rules: tuple[frozenset[Rule], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "agent_rules", tuple(frozenset(r) for r in self.agent_rules))
        if len(self.agent_rules) < 2:
            raise ValidationError([f"a profile needs at least 2 agents, got {len(self.agent_rules)}"])

    @classmethod
    def build(
        cls, signature: Signature, agent_rules: Iterable[Iterable[Rule]], strict: bool = False
    ) -> Profile:
        profile = cls(signature, tuple(frozenset(r) for r in agent_rules))
        violations = []
        for i, rules in enumerate(profile.agent_rules, start=1):
            violations += [f"agent {i}: {v}" for v in validate_rules(signature, rules, strict)]
        if violations:
            raise ValidationError(violations)
        return profile

    @property
    def n(self) -> int:
        return len(self.agent_rules)

    @property
    def universe(self) -> frozenset[Rule]:
        return frozenset().union(*self.agent_rules)

    def framework(self, agent: int) -> Framework:
        """The framework of agent ``agent`` (1-based)."""
        return Framework(self.signature, self.agent_rules[agent - 1])

    def frameworks(self) -> list[Framework]:
        return [Framework(self.signature, r) for r in self.agent_rules]


@dataclass(frozen=True)
class Quota:
    q: int

    def __str__(self) -> str:
        return f"quota:{self.q}"


@dataclass(frozen=True)
class NamedQuota:
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in QUOTA_KINDS:
            raise ValueError(f"unknown quota kind {self.kind!r}; expected one of {QUOTA_KINDS}")

    def __str__(self) -> str:
        return self.kind


@dataclass(frozen=True)
class Oligarchy:
    veto: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "veto", frozenset(self.veto))
        if not self.veto:
            raise ValueError("an oligarchy needs at least one veto agent")

    @property
    def is_dictatorship(self) -> bool:
        return len(self.veto) == 1

    def __str__(self) -> str:
        agents = ",".join(str(i) for i in sorted(self.veto))
        return f"dictator:{agents}" if self.is_dictatorship else f"oligarchy:{agents}"


AggregationSpec = Union[Quota, NamedQuota, Oligarchy]


def resolve_quota(kind: str, n: int) -> int:
    if n <= 1:
        raise ValueError(f"quota rules need n > 1 agents, got {n}")
    if kind == "nomination":
        return 1
    if kind == "weak-majority":
        return n // 2
    if kind == "strict-majority":
        return math.ceil(n / 2)
    if kind == "unanimity":
        return n
    raise ValueError(f"unknown quota kind {kind!r}")


def quota_rule(agent_rules: Iterable[frozenset[Rule]], q: int) -> frozenset[Rule]:
    """Rules held by at least ``q`` agents."""
    counts = Counter(r for rules in agent_rules for r in rules)
    return frozenset(r for r, c in counts.items() if c >= q)


def oligarchic_rule(agent_rules: tuple[frozenset[Rule], ...], veto: Iterable[int]) -> frozenset[Rule]:
    """Rules held by every veto agent (1-based)."""
    sets = [agent_rules[i - 1] for i in sorted(veto)]
    return frozenset.intersection(*sets)


def aggregate_rules(profile: Profile, spec: AggregationSpec) -> frozenset[Rule]:
    n = profile.n
    if isinstance(spec, Oligarchy):
        bad = sorted(i for i in spec.veto if not 1 <= i <= n)
        if bad:
            raise ValueError(f"veto agents {bad} out of range 1..{n}")
        return oligarchic_rule(profile.agent_rules, spec.veto)
    q = resolve_quota(spec.kind, n) if isinstance(spec, NamedQuota) else spec.q
    if not 1 <= q <= n:
        raise ValueError(f"quota {q} out of range 1..{n}")
    return quota_rule(profile.agent_rules, q)


def aggregate(profile: Profile, spec: AggregationSpec) -> Framework:
    """The aggregated framework; it shares the profile's signature."""
    return Framework(profile.signature, aggregate_rules(profile, spec))


def parse_spec(text: str) -> AggregationSpec:
    """Parse ``quota:<q>``, a named quota, ``oligarchy:<i,j,...>`` or ``dictator:<i>``."""
    text = text.strip()
    if text in QUOTA_KINDS:
        return NamedQuota(text)
    kind, sep, arg = text.partition(":")
    if not sep:
        raise ValueError(f"unknown aggregation rule {text!r}")
    try:
        if kind == "quota":
            return Quota(int(arg))
        if kind == "oligarchy":
            return Oligarchy(frozenset(int(a) for a in arg.split(",")))
        if kind == "dictator":
            return Oligarchy(frozenset([int(arg)]))
    except ValueError as exc:
        raise ValueError(f"bad aggregation rule {text!r}: {exc}") from None
    raise ValueError(f"unknown aggregation rule {text!r}")
