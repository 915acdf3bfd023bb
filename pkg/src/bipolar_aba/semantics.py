"""Extension semantics: admissible, preferred, complete, set-stable,
well-founded and ideal; plus acceptability, coherence, acyclicity and
non-emptiness of the well-founded extension.

Enumeration scans every subset of the assumptions, so it is refused above a
cap (default 16, at most 20). The ``BIPOLAR_ABA_ENUM_CAP`` environment
variable overrides the default.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from functools import lru_cache

import networkx as nx

from .core import (
    MAX_ASSUMPTIONS,
    AssumptionSet,
    Framework,
    attacked_by,
    bits,
    defended,
    is_closed,
    is_conflict_free,
    popcount,
)

DEFAULT_ENUM_CAP = 16
ENUM_CAP_ENV = "BIPOLAR_ABA_ENUM_CAP"


class Semantics(str, enum.Enum):
    ADMISSIBLE = "admissible"
    PREFERRED = "preferred"
    COMPLETE = "complete"
    SET_STABLE = "set-stable"
    WELL_FOUNDED = "well-founded"
    IDEAL = "ideal"

    def __str__(self) -> str:
        return self.value


ACCEPTABILITY_SEMANTICS = (
    Semantics.PREFERRED,
    Semantics.COMPLETE,
    Semantics.SET_STABLE,
    Semantics.WELL_FOUNDED,
    Semantics.IDEAL,
)

_ALWAYS_EXIST = {Semantics.ADMISSIBLE, Semantics.PREFERRED, Semantics.IDEAL}


class EnumerationLimitError(RuntimeError):
    """Raised when a framework has too many assumptions to enumerate."""


def enumeration_cap() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{ENUM_CAP_ENV}={raw!r} is not an integer") from None
    if not 1 <= cap <= MAX_ASSUMPTIONS:
        raise ValueError(f"{ENUM_CAP_ENV} must lie in 1..{MAX_ASSUMPTIONS}, got {cap}")
    return cap


def canonical_key(mask: AssumptionSet) -> tuple[int, ...]:
    """Sort key for extensions: the ascending tuple of member indices."""
    return tuple(bits(mask))


def sort_extensions(masks) -> list[AssumptionSet]:
    return sorted(set(masks), key=canonical_key)


@dataclass(frozen=True)
class ExtensionReport:
    semantics: Semantics
    extensions: tuple[AssumptionSet, ...]
    exists: bool

    def named(self, framework: Framework) -> list[tuple[str, ...]]:
        return [framework.signature.names(m) for m in self.extensions]


@dataclass(frozen=True)
class _Families:
    admissible: tuple[int, ...]
    complete: tuple[int, ...]
    set_stable: tuple[int, ...]
    preferred: tuple[int, ...]
    ideal: tuple[int, ...]
    well_founded: int | None


def _maximal(masks: list[int]) -> list[int]:
    by_size = sorted(set(masks), key=popcount, reverse=True)
    kept: list[int] = []
    for m in by_size:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


@lru_cache(maxsize=8192)
def _families(framework: Framework) -> _Families:
    n = framework.signature.size
    cl1 = framework.singleton_closures
    att1 = framework.singleton_attacks
    needs = framework.defence_needs
    full = framework.signature.full

    size = 1 << n
    clo = [0] * size
    att = [0] * size
    admissible, complete, set_stable = [], [], []
    for m in range(size):
        if m:
            low = m & -m
            i = low.bit_length() - 1
            clo[m] = clo[m ^ low] | cl1[i]
            att[m] = att[m ^ low] | att1[i]
        if clo[m] != m or att[m] & m:
            continue
        hit = att[m]
        defended_mask = 0
        for i in range(n):
            if all(hit & need for need in needs[i]):
                defended_mask |= 1 << i
        if defended_mask & m == m:
            admissible.append(m)
            if defended_mask == m:
                complete.append(m)
        outside = full & ~m
        if all(hit & cl1[b] for b in bits(outside)):
            set_stable.append(m)

    preferred = _maximal(admissible)
    common = full
    for p in preferred:
        common &= p
    ideal = _maximal([a for a in admissible if a & common == a])
    well_founded = None
    if complete:
        well_founded = full
        for c in complete:
            well_founded &= c
    return _Families(
        admissible=tuple(sort_extensions(admissible)),
        complete=tuple(sort_extensions(complete)),
        set_stable=tuple(sort_extensions(set_stable)),
        preferred=tuple(sort_extensions(preferred)),
        ideal=tuple(sort_extensions(ideal)),
        well_founded=well_founded,
    )


def _check_cap(framework: Framework, cap: int | None) -> None:
    limit = enumeration_cap() if cap is None else cap
    if framework.signature.size > min(limit, MAX_ASSUMPTIONS):
        raise EnumerationLimitError(
            f"{framework.signature.size} assumptions exceed the enumeration cap of {limit}"
        )


def enumerate_extensions(
    framework: Framework, semantics: Semantics | str, cap: int | None = None
) -> ExtensionReport:
    """All extensions of ``framework`` under ``semantics``, canonically sorted."""
    semantics = Semantics(semantics)
    _check_cap(framework, cap)
    fam = _families(framework)
    if semantics is Semantics.WELL_FOUNDED:
        if fam.well_founded is None:
            return ExtensionReport(semantics, (), False)
        return ExtensionReport(semantics, (fam.well_founded,), True)
    extensions = {
        Semantics.ADMISSIBLE: fam.admissible,
        Semantics.PREFERRED: fam.preferred,
        Semantics.COMPLETE: fam.complete,
        Semantics.SET_STABLE: fam.set_stable,
        Semantics.IDEAL: fam.ideal,
    }[semantics]
    return ExtensionReport(semantics, extensions, semantics in _ALWAYS_EXIST or bool(extensions))


def is_admissible(framework: Framework, assumptions: AssumptionSet) -> bool:
    if not is_closed(framework, assumptions) or not is_conflict_free(framework, assumptions):
        return False
    return defended(framework, assumptions) & assumptions == assumptions


def is_complete(framework: Framework, assumptions: AssumptionSet) -> bool:
    if not is_closed(framework, assumptions) or not is_conflict_free(framework, assumptions):
        return False
    return defended(framework, assumptions) == assumptions


def is_set_stable(framework: Framework, assumptions: AssumptionSet) -> bool:
    if not is_closed(framework, assumptions) or not is_conflict_free(framework, assumptions):
        return False
    hit = attacked_by(framework, assumptions)
    cl1 = framework.singleton_closures
    outside = framework.signature.full & ~assumptions
    return all(hit & cl1[b] for b in bits(outside))


def is_extension(
    framework: Framework, assumptions: AssumptionSet, semantics: Semantics | str, cap: int | None = None
) -> bool:
    semantics = Semantics(semantics)
    if semantics is Semantics.ADMISSIBLE:
        return is_admissible(framework, assumptions)
    if semantics is Semantics.COMPLETE:
        return is_complete(framework, assumptions)
    if semantics is Semantics.SET_STABLE:
        return is_set_stable(framework, assumptions)
    return assumptions in enumerate_extensions(framework, semantics, cap).extensions


def is_acceptable(
    framework: Framework, assumption: int, semantics: Semantics | str, cap: int | None = None
) -> bool:
    """Whether some extension under ``semantics`` contains ``assumption``."""
    semantics = Semantics(semantics)
    if semantics not in ACCEPTABILITY_SEMANTICS:
        raise ValueError(f"acceptability is not defined for {semantics} semantics")
    if not 0 <= assumption < framework.signature.size:
        raise IndexError(f"assumption index {assumption} out of range")
    report = enumerate_extensions(framework, semantics, cap)
    return any(ext >> assumption & 1 for ext in report.extensions)


def is_coherent(framework: Framework, cap: int | None = None) -> bool:
    """Preferred and set-stable extensions coincide."""
    preferred = enumerate_extensions(framework, Semantics.PREFERRED, cap).extensions
    return preferred == enumerate_extensions(framework, Semantics.SET_STABLE, cap).extensions


def attack_graph(framework: Framework) -> dict[int, set[int]]:
    """Direct attack edges ``body -> target`` from rules ``contrary(target) <- body``."""
    sig = framework.signature
    targets_of: dict[str, list[int]] = {}
    for i, c in enumerate(sig.contraries):
        targets_of.setdefault(c, []).append(i)
    graph: dict[int, set[int]] = {i: set() for i in range(sig.size)}
    for rule in framework.rules:
        if not sig.is_assumption(rule.body):
            continue
        body = sig.index(rule.body)
        for target in targets_of.get(rule.head, ()):
            graph[body].add(target)
    return graph


def is_acyclic(framework: Framework) -> bool:
    """No directed cycle through two or more assumptions in the attack graph.

    Self-loops (``contrary(a) <- a``) are not counted as cycles.
    """
    graph = nx.DiGraph(attack_graph(framework))
    return all(len(c) < 2 for c in nx.strongly_connected_components(graph))


def well_founded_nonempty(framework: Framework, cap: int | None = None) -> bool:
    report = enumerate_extensions(framework, Semantics.WELL_FOUNDED, cap)
    return report.exists and report.extensions[0] != 0

