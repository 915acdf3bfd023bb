"""Definitional reference implementations, used as test oracles.

Nothing here shares code with :mod:`bipolar_aba.core` or
:mod:`bipolar_aba.semantics` beyond the data types. Sets are frozensets of
assumption names, deductions are enumerated explicitly as rule chains, and
every quantifier of the semantics table ranges over all subsets. It is
exponential and meant for four or five assumptions.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .core import Framework, Rule

Names = frozenset


def subsets(items) -> list[frozenset[str]]:
    items = sorted(items)
    return [frozenset(c) for k in range(len(items) + 1) for c in combinations(items, k)]


@lru_cache(maxsize=4096)
def deductions(framework: Framework) -> dict[str, frozenset[frozenset[str]]]:
    """For every sentence, the leaf sets of all its deductions.

    A deduction of ``phi`` is a chain ``phi <- g1, g1 <- g2, ...`` ending at a
    leaf assumption; the trivial one-node tree deduces an assumption from
    itself. Chains never repeat a rule (a repeat adds no new leaf set).
    """
    sig = framework.signature
    rules = sorted(r for r in framework.rules if r.body in sig.assumptions)
    out: dict[str, set[frozenset[str]]] = {s: set() for s in sig.language}

    def walk(sentence: str, used: frozenset[Rule], root: str) -> None:
        if sentence in sig.assumptions:
            out[root].add(frozenset([sentence]))
        for rule in rules:
            if rule.head == sentence and rule not in used:
                walk(rule.body, used | {rule}, root)

    for sentence in sig.language:
        walk(sentence, frozenset(), sentence)
    return {s: frozenset(v) for s, v in out.items()}


def derives(framework: Framework, assumptions: frozenset[str], sentence: str) -> bool:
    return any(leaves <= assumptions for leaves in deductions(framework)[sentence])


def closure(framework: Framework, assumptions: frozenset[str]) -> frozenset[str]:
    return frozenset(a for a in framework.signature.assumptions if derives(framework, assumptions, a))


def closure_fixpoint(framework: Framework, assumptions: frozenset[str]) -> frozenset[str]:
    """Closure by naive forward chaining over the rule list."""
    sig = framework.signature
    current = set(assumptions)
    changed = True
    while changed:
        changed = False
        for rule in framework.rules:
            if rule.body in current and rule.head in sig.assumptions and rule.head not in current:
                current.add(rule.head)
                changed = True
    return frozenset(current)


def attacks(framework: Framework, attacker: frozenset[str], target: str) -> bool:
    return derives(framework, attacker, framework.signature.contrary(target))


def attacks_set(framework: Framework, attacker: frozenset[str], target: frozenset[str]) -> bool:
    return any(attacks(framework, attacker, b) for b in target)


def is_conflict_free(framework: Framework, s: frozenset[str]) -> bool:
    return not attacks_set(framework, s, s)


def is_closed(framework: Framework, s: frozenset[str]) -> bool:
    return closure(framework, s) == s


def closed_sets(framework: Framework) -> list[frozenset[str]]:
    return [s for s in subsets(framework.signature.assumptions) if is_closed(framework, s)]


def defends(framework: Framework, s: frozenset[str], alpha: str) -> bool:
    return all(
        attacks_set(framework, s, b)
        for b in closed_sets(framework)
        if attacks(framework, b, alpha)
    )


def is_admissible(framework: Framework, s: frozenset[str]) -> bool:
    if not (is_closed(framework, s) and is_conflict_free(framework, s)):
        return False
    return all(
        attacks_set(framework, s, b)
        for b in closed_sets(framework)
        if attacks_set(framework, b, s)
    )


def is_complete(framework: Framework, s: frozenset[str]) -> bool:
    defended = frozenset(a for a in framework.signature.assumptions if defends(framework, s, a))
    return is_admissible(framework, s) and s == defended


def is_set_stable(framework: Framework, s: frozenset[str]) -> bool:
    if not (is_closed(framework, s) and is_conflict_free(framework, s)):
        return False
    rest = set(framework.signature.assumptions) - s
    return all(attacks_set(framework, s, closure(framework, frozenset([b]))) for b in rest)


def _maximal(family: list[frozenset[str]]) -> list[frozenset[str]]:
    return [s for s in family if not any(s < t for t in family)]


def extensions(framework: Framework, semantics: str) -> list[frozenset[str]] | None:
    """Extensions under ``semantics``; ``None`` when a well-founded one does not exist."""
    every = subsets(framework.signature.assumptions)
    admissible = [s for s in every if is_admissible(framework, s)]
    if semantics == "admissible":
        return admissible
    if semantics == "preferred":
        return _maximal(admissible)
    if semantics == "complete":
        return [s for s in every if is_complete(framework, s)]
    if semantics == "set-stable":
        return [s for s in every if is_set_stable(framework, s)]
    if semantics == "well-founded":
        complete = [s for s in every if is_complete(framework, s)]
        if not complete:
            return None
        return [frozenset.intersection(*complete)]
    if semantics == "ideal":
        preferred = _maximal(admissible)
        inside = [s for s in admissible if all(s <= p for p in preferred)]
        return _maximal(inside)
    raise ValueError(semantics)


def evaluate(framework: Framework) -> tuple[dict, dict, set]:
    """Tabulate attack, defence and admissibility over every subset.

    Returns ``(attacks, defends, admissible)``: ``attacks[(S, b)]`` and
    ``defends[(S, a)]`` are booleans and ``admissible`` is the set of
    admissible ``S``. Attacks come from enumerated deductions; defence
    quantifies over every closed set, exactly as in :func:`defends`.
    """
    sig = framework.signature
    every = subsets(sig.assumptions)
    leafsets = deductions(framework)
    att = {
        (s, b): any(leaves <= s for leaves in leafsets[sig.contrary(b)])
        for s in every
        for b in sig.assumptions
    }
    closed = [s for s in every if closure(framework, s) == s]

    def hits(s: frozenset[str], target: frozenset[str]) -> bool:
        return any(att[(s, b)] for b in target)

    defends_table = {
        (s, a): all(hits(s, b) for b in closed if att[(b, a)])
        for s in every
        for a in sig.assumptions
    }
    admissible = {
        s
        for s in closed
        if not hits(s, s) and all(hits(s, b) for b in closed if hits(b, s))
    }
    return att, defends_table, admissible
