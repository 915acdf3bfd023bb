"""Bipolar ABA frameworks: signatures, rules, closure, attack and defence.

Sets of assumptions are plain ``int`` bitmasks over the signature's canonical
(lexicographic) assumption order: bit ``i`` stands for ``signature.assumptions[i]``.
Use :meth:`Signature.mask` and :meth:`Signature.names` to convert.

Every rule body is a single assumption, so every deduction is a chain with one
leaf. Two consequences drive the implementation:

* closure distributes over union, ``Cl(A) = OR of Cl({a}) for a in A``;
* ``A`` attacks ``b`` iff some single member of ``A`` does.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

MAX_ASSUMPTIONS = 20
CONTRARY_PREFIX = "~"

AssumptionSet = int


class SignatureError(ValueError):
    """Raised when a signature cannot be constructed."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _check_name(name: str) -> None:
    if not isinstance(name, str) or not name or any(c.isspace() for c in name):
        raise SignatureError(f"invalid sentence name {name!r}")


@dataclass(frozen=True)
class Signature:
    """The language, assumptions and contrary map shared by all agents.

    Build it with :meth:`create`; the raw constructor expects already
    canonical (sorted) assumptions and aligned contraries.
    """

    assumptions: tuple[str, ...]
    contraries: tuple[str, ...]
    language: frozenset[str]

    def __post_init__(self) -> None:
        if not self.assumptions:
            raise SignatureError("the assumption set must be nonempty")
        if len(self.assumptions) > MAX_ASSUMPTIONS:
            raise SignatureError(
                f"{len(self.assumptions)} assumptions exceed the cap of {MAX_ASSUMPTIONS}"
            )
        if len(set(self.assumptions)) != len(self.assumptions):
            raise SignatureError("duplicate assumption names")
        if list(self.assumptions) != sorted(self.assumptions):
            raise SignatureError("assumptions must be in canonical (sorted) order")
        if len(self.contraries) != len(self.assumptions):
            raise SignatureError("the contrary map must be total")
        for name in self.language:
            _check_name(name)
        missing = (set(self.assumptions) | set(self.contraries)) - self.language
        if missing:
            raise SignatureError(f"sentences outside the language: {sorted(missing)}")

    @classmethod
    def create(
        cls,
        assumptions: Iterable[str],
        contraries: Mapping[str, str] | None = None,
        extra_sentences: Iterable[str] = (),
    ) -> Signature:
        """Build a signature; missing contraries default to ``"~" + name``."""
        names = sorted(assumptions)
        for name in names:
            _check_name(name)
        contraries = dict(contraries or {})
        unknown = set(contraries) - set(names)
        if unknown:
            raise SignatureError(f"contraries given for non-assumptions: {sorted(unknown)}")
        contrary_tuple = tuple(contraries.get(a, CONTRARY_PREFIX + a) for a in names)
        for c in contrary_tuple:
            _check_name(c)
        language = frozenset(names) | frozenset(contrary_tuple) | frozenset(extra_sentences)
        return cls(tuple(names), contrary_tuple, language)

    @property
    def size(self) -> int:
        return len(self.assumptions)

    @property
    def full(self) -> AssumptionSet:
        return (1 << len(self.assumptions)) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.assumptions)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not an assumption") from None

    def is_assumption(self, sentence: str) -> bool:
        return sentence in self._index

    def contrary(self, assumption: str | int) -> str:
        i = assumption if isinstance(assumption, int) else self.index(assumption)
        return self.contraries[i]

    @cached_property
    def contrary_map(self) -> dict[str, str]:
        return dict(zip(self.assumptions, self.contraries))

    @cached_property
    def contrary_sentences(self) -> frozenset[str]:
        return frozenset(self.contraries)

    def mask(self, names: Iterable[str]) -> AssumptionSet:
        m = 0
        for name in names:
            m |= 1 << self.index(name)
        return m

    def names(self, mask: AssumptionSet) -> tuple[str, ...]:
        return tuple(self.assumptions[i] for i in bits(mask))

    def format_set(self, mask: AssumptionSet) -> str:
        return "{" + ",".join(self.names(mask)) + "}"


@dataclass(frozen=True, order=True)
class Rule:
    """``head <- body`` with a single assumption as body."""

    head: str
    body: str

    def __str__(self) -> str:
        return f"{self.head} <- {self.body}"

    @classmethod
    def parse(cls, text: str) -> Rule:
        head, sep, body = text.partition("<-")
        if not sep or not head.strip() or not body.strip():
            raise ValueError(f"cannot parse rule {text!r}; expected 'head <- body'")
        return cls(head.strip(), body.strip())


def attack(signature: Signature, target: str, attacker: str) -> Rule:
    """The rule ``contrary(target) <- attacker``."""
    return Rule(signature.contrary(target), attacker)


def support(supported: str, supporter: str) -> Rule:
    """The rule ``supported <- supporter``."""
    return Rule(supported, supporter)


def sort_rules(rules: Iterable[Rule]) -> list[Rule]:
    return sorted(set(rules))


def validate_rules(signature: Signature, rules: Iterable[Rule], strict: bool = False) -> list[str]:
    """Well-formedness violations of ``rules`` over ``signature``.

    Each violation is a string starting with a short tag: ``bad body``,
    ``bad head``, ``self-attack`` or ``self-support`` (the last two only
    in strict mode).
    """
    violations = []
    for rule in sort_rules(rules):
        if not signature.is_assumption(rule.body):
            violations.append(f"bad body: {rule} (body is not an assumption)")
            continue
        if not (signature.is_assumption(rule.head) or rule.head in signature.contrary_sentences):
            violations.append(f"bad head: {rule} (head is neither an assumption nor a contrary)")
            continue
        if strict:
            if rule.head == signature.contrary(rule.body):
                violations.append(f"self-attack: {rule}")
            elif rule.head == rule.body:
                violations.append(f"self-support: {rule}")
    return violations


class ValidationError(ValueError):
    """Raised when a framework or profile violates well-formedness."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class Framework:
    """A signature plus a set of rules.

    The constructor does not validate (see :func:`validate`); use
    :meth:`build` to construct and validate in one go. Ill-formed rules are
    ignored by the reasoning operations.
    """

    signature: Signature
    rules: frozenset[Rule] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.rules, frozenset):
            object.__setattr__(self, "rules", frozenset(self.rules))

    @classmethod
    def build(cls, signature: Signature, rules: Iterable[Rule] = (), strict: bool = False) -> Framework:
        fw = cls(signature, frozenset(rules))
        violations = validate(fw, strict=strict)
        if violations:
            raise ValidationError(violations)
        return fw

    def with_rules(self, rules: Iterable[Rule]) -> Framework:
        return Framework(self.signature, frozenset(rules))

    @property
    def sorted_rules(self) -> list[Rule]:
        return sorted(self.rules)

    # Precomputed tables. Indexed by assumption position.

    @cached_property
    def _bodies_by_head(self) -> dict[str, int]:
        sig = self.signature
        table: dict[str, int] = {}
        for rule in self.rules:
            if sig.is_assumption(rule.body):
                table[rule.head] = table.get(rule.head, 0) | (1 << sig.index(rule.body))
        return table

    @cached_property
    def singleton_closures(self) -> tuple[int, ...]:
        """``Cl({a})`` for every assumption ``a``."""
        sig = self.signature
        succ = [0] * sig.size
        for rule in self.rules:
            if sig.is_assumption(rule.body) and sig.is_assumption(rule.head):
                succ[sig.index(rule.body)] |= 1 << sig.index(rule.head)
        closures = []
        for i in range(sig.size):
            reached = 1 << i
            frontier = reached
            while frontier:
                step = 0
                for j in bits(frontier):
                    step |= succ[j]
                frontier = step & ~reached
                reached |= step
            closures.append(reached)
        return tuple(closures)

    @cached_property
    def singleton_attacks(self) -> tuple[int, ...]:
        """Mask of assumptions attacked by ``{a}``, for every assumption ``a``."""
        sig = self.signature
        # carriers[t]: assumptions whose closure yields a deduction of contrary(t)
        carriers = []
        for t in range(sig.size):
            c = sig.contraries[t]
            if sig.is_assumption(c):
                carriers.append(1 << sig.index(c))
            else:
                carriers.append(self._bodies_by_head.get(c, 0))
        out = []
        for cl in self.singleton_closures:
            m = 0
            for t in range(sig.size):
                if cl & carriers[t]:
                    m |= 1 << t
            out.append(m)
        return tuple(out)

    @cached_property
    def attackers(self) -> tuple[int, ...]:
        """Mask of single attackers of every assumption."""
        sig = self.signature
        out = [0] * sig.size
        for a, targets in enumerate(self.singleton_attacks):
            for t in bits(targets):
                out[t] |= 1 << a
        return tuple(out)

    @cached_property
    def defence_needs(self) -> tuple[tuple[int, ...], ...]:
        """For each assumption, the closures of its attackers (each must be hit)."""
        cl = self.singleton_closures
        return tuple(tuple(sorted({cl[b] for b in bits(att)})) for att in self.attackers)


def validate(framework: Framework, strict: bool = False) -> list[str]:
    """Violations of well-formedness; strict mode adds the rationality checks."""
    return validate_rules(framework.signature, framework.rules, strict=strict)


def closure(framework: Framework, assumptions: AssumptionSet) -> AssumptionSet:
    cl = framework.singleton_closures
    out = 0
    for i in bits(assumptions):
        out |= cl[i]
    return out


def attacked_by(framework: Framework, assumptions: AssumptionSet) -> AssumptionSet:
    """Mask of every assumption attacked by ``assumptions``."""
    att = framework.singleton_attacks
    out = 0
    for i in bits(assumptions):
        out |= att[i]
    return out


def derives(framework: Framework, assumptions: AssumptionSet, sentence: str) -> bool:
    sig = framework.signature
    if sentence not in sig.language:
        raise ValueError(f"{sentence!r} is not in the language")
    cl = closure(framework, assumptions)
    if sig.is_assumption(sentence):
        return bool(cl >> sig.index(sentence) & 1)
    return bool(cl & framework._bodies_by_head.get(sentence, 0))


def attacks(framework: Framework, attacker: AssumptionSet, target: int) -> bool:
    return bool(attacked_by(framework, attacker) >> target & 1)


def attacks_set(framework: Framework, attacker: AssumptionSet, target: AssumptionSet) -> bool:
    return bool(attacked_by(framework, attacker) & target)


def is_conflict_free(framework: Framework, assumptions: AssumptionSet) -> bool:
    return not attacks_set(framework, assumptions, assumptions)


def is_closed(framework: Framework, assumptions: AssumptionSet) -> bool:
    return closure(framework, assumptions) == assumptions


def defends(framework: Framework, assumptions: AssumptionSet, target: int) -> bool:
    hit = attacked_by(framework, assumptions)
    return all(hit & need for need in framework.defence_needs[target])


def defended(framework: Framework, assumptions: AssumptionSet) -> AssumptionSet:
    """Mask of every assumption defended by ``assumptions``."""
    hit = attacked_by(framework, assumptions)
    out = 0
    for i, needs in enumerate(framework.defence_needs):
        if all(hit & need for need in needs):
            out |= 1 << i
    return out
