"""Properties of frameworks, the preservation check, and the implicative,
disjunctive and k-exclusive meta-properties."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Union

from .aggregation import AggregationSpec, Profile, aggregate
from .core import Framework, Rule, Signature, is_closed, is_conflict_free
from .semantics import (
    Semantics,
    is_acceptable,
    is_acyclic,
    is_coherent,
    is_extension,
    well_founded_nonempty,
)


@dataclass(frozen=True)
class ConflictFree:
    members: frozenset[str]

    def __str__(self) -> str:
        return f"conflict-free:{','.join(sorted(self.members))}"


@dataclass(frozen=True)
class Closed:
    members: frozenset[str]

    def __str__(self) -> str:
        return f"closed:{','.join(sorted(self.members))}"


@dataclass(frozen=True)
class Extension:
    semantics: Semantics
    members: frozenset[str]

    def __str__(self) -> str:
        return f"extension:{self.semantics}:{','.join(sorted(self.members))}"


@dataclass(frozen=True)
class Acceptable:
    assumption: str
    semantics: Semantics

    def __str__(self) -> str:
        return f"acceptable:{self.assumption}:{self.semantics}"


@dataclass(frozen=True)
class Acyclic:
    def __str__(self) -> str:
        return "acyclic"


@dataclass(frozen=True)
class WellFoundedNonempty:
    def __str__(self) -> str:
        return "wf-nonempty"


@dataclass(frozen=True)
class Coherent:
    def __str__(self) -> str:
        return "coherent"


Property = Union[ConflictFree, Closed, Extension, Acceptable, Acyclic, WellFoundedNonempty, Coherent]


def conflict_free(*names: str) -> ConflictFree:
    return ConflictFree(frozenset(names))


def closed(*names: str) -> Closed:
    return Closed(frozenset(names))


def extension(semantics: Semantics | str, *names: str) -> Extension:
    return Extension(Semantics(semantics), frozenset(names))


def acceptable(assumption: str, semantics: Semantics | str) -> Acceptable:
    return Acceptable(assumption, Semantics(semantics))


def parse_property(text: str) -> Property:
    """Parse the command-line property grammar (see the README)."""
    text = text.strip()
    simple = {"acyclic": Acyclic(), "wf-nonempty": WellFoundedNonempty(), "coherent": Coherent()}
    if text in simple:
        return simple[text]
    kind, _, rest = text.partition(":")

    def members(s: str) -> frozenset[str]:
        return frozenset(x.strip() for x in s.split(",") if x.strip())

    try:
        if kind == "conflict-free":
            return ConflictFree(members(rest))
        if kind == "closed":
            return Closed(members(rest))
        if kind == "extension":
            sem, _, delta = rest.partition(":")
            return Extension(Semantics(sem), members(delta))
        if kind == "acceptable":
            alpha, _, sem = rest.partition(":")
            if not alpha:
                raise ValueError("missing assumption")
            return Acceptable(alpha, Semantics(sem))
    except ValueError as exc:
        raise ValueError(f"bad property {text!r}: {exc}") from None
    raise ValueError(f"unknown property {text!r}")


def holds(framework: Framework, prop: Property) -> bool:
    sig = framework.signature
    if isinstance(prop, ConflictFree):
        return is_conflict_free(framework, sig.mask(prop.members))
    if isinstance(prop, Closed):
        return is_closed(framework, sig.mask(prop.members))
    if isinstance(prop, Extension):
        return is_extension(framework, sig.mask(prop.members), prop.semantics)
    if isinstance(prop, Acceptable):
        return is_acceptable(framework, sig.index(prop.assumption), prop.semantics)
    if isinstance(prop, Acyclic):
        return is_acyclic(framework)
    if isinstance(prop, WellFoundedNonempty):
        return well_founded_nonempty(framework)
    if isinstance(prop, Coherent):
        return is_coherent(framework)
    raise TypeError(f"unknown property {prop!r}")


class Verdict(enum.Enum):
    NOT_APPLICABLE = "not-applicable"
    PRESERVED = "preserved"
    VIOLATED = "violated"


@dataclass(frozen=True)
class PreservationVerdict:
    verdict: Verdict
    witness: str | None = None

    def __str__(self) -> str:
        return self.verdict.value if self.witness is None else f"{self.verdict.value}: {self.witness}"


def check_preservation(profile: Profile, spec: AggregationSpec, prop: Property) -> PreservationVerdict:
    for i, fw in enumerate(profile.frameworks(), start=1):
        if not holds(fw, prop):
            return PreservationVerdict(Verdict.NOT_APPLICABLE, f"agent {i} does not satisfy {prop}")
    aggregated = aggregate(profile, spec)
    if holds(aggregated, prop):
        return PreservationVerdict(Verdict.PRESERVED)
    return PreservationVerdict(
        Verdict.VIOLATED, f"{prop} holds for every agent but fails after {spec}"
    )


def _check_extra_rules(base: frozenset[Rule], extra: list[Rule]) -> None:
    if len(set(extra)) != len(extra):
        raise ValueError("the added rules must be pairwise distinct")
    clash = [str(r) for r in extra if r in base]
    if clash:
        raise ValueError(f"added rules already in the base rule set: {clash}")


def truth_table(
    signature: Signature, base_rules: Iterable[Rule], extra: list[Rule], prop: Property
) -> dict[frozenset[Rule], bool]:
    """Whether ``prop`` holds on ``base + S`` for every subset ``S`` of ``extra``."""
    base = frozenset(base_rules)
    table = {}
    for k in range(len(extra) + 1):
        for subset in combinations(extra, k):
            s = frozenset(subset)
            table[s] = holds(Framework(signature, base | s), prop)
    return table


def check_implicative(
    signature: Signature, base_rules: Iterable[Rule], r1: Rule, r2: Rule, r3: Rule, prop: Property
) -> bool:
    """``prop`` fails with exactly ``{r1, r2}`` added and holds for the other seven subsets."""
    base = frozenset(base_rules)
    _check_extra_rules(base, [r1, r2, r3])
    table = truth_table(signature, base, [r1, r2, r3], prop)
    exception = frozenset([r1, r2])
    return all(value == (s != exception) for s, value in table.items())


def check_disjunctive(
    signature: Signature, base_rules: Iterable[Rule], r1: Rule, r2: Rule, prop: Property
) -> bool:
    """``prop`` fails with nothing added and holds once ``r1`` or ``r2`` is added."""
    base = frozenset(base_rules)
    _check_extra_rules(base, [r1, r2])
    table = truth_table(signature, base, [r1, r2], prop)
    return all(value == bool(s) for s, value in table.items())


MAX_EXCLUSIVE_RULES = 16


def rule_universe(
    signature: Signature, self_attack: bool = False, self_support: bool = False
) -> list[Rule]:
    """Every attack rule ``contrary(t) <- b`` and support rule ``t <- b``, sorted."""
    rules = set()
    for body in signature.assumptions:
        for target in signature.assumptions:
            if target != body or self_attack:
                rules.add(Rule(signature.contrary(target), body))
            if target != body or self_support:
                rules.add(Rule(target, body))
    return sorted(rules)


def check_k_exclusive(
    signature: Signature,
    rules: Iterable[Rule],
    prop: Property,
    superset_samples: int = 64,
    seed: int = 0,
) -> bool:
    """``prop`` fails on ``S`` and on sampled supersets, and holds on every proper subset.

    Supersets add a random selection of the other rules of
    :func:`rule_universe` (no self-attacks, no self-supports).
    """
    s = frozenset(rules)
    if not s:
        raise ValueError("k-exclusivity needs at least one rule")
    if len(s) > MAX_EXCLUSIVE_RULES:
        raise ValueError(f"{len(s)} rules exceed the limit of {MAX_EXCLUSIVE_RULES}")
    ordered = sorted(s)
    for k in range(len(ordered)):
        for subset in combinations(ordered, k):
            if not holds(Framework(signature, frozenset(subset)), prop):
                return False
    if holds(Framework(signature, s), prop):
        return False
    rng = random.Random(seed)
    others = [r for r in rule_universe(signature) if r not in s]
    for _ in range(superset_samples):
        extra = [r for r in others if rng.random() < 0.5]
        if holds(Framework(signature, s | frozenset(extra)), prop):
            return False
    return True
