"""Built-in scenarios, random profile generators and theorem falsification.

Each :class:`Scenario` bundles a framework or profile with a list of
:class:`Check` objects. A check's ``expected`` value is what the engine must
produce; where a previously claimed value differs, it is kept in
``claimed`` so reports can show both.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Callable, Iterable, Iterator

from .aggregation import (
    AggregationSpec,
    NamedQuota,
    Oligarchy,
    Profile,
    Quota,
    QUOTA_KINDS,
    aggregate,
    aggregate_rules,
)
from .core import (
    MAX_ASSUMPTIONS,
    Framework,
    Rule,
    Signature,
    attacks,
    closure,
    defends,
    is_closed,
    is_conflict_free,
)
from .preservation import (
    Acceptable,
    Acyclic,
    Closed,
    Coherent,
    ConflictFree,
    Extension,
    Property,
    Verdict,
    WellFoundedNonempty,
    acceptable,
    check_disjunctive,
    check_implicative,
    check_k_exclusive,
    check_preservation,
    extension,
    holds,
    rule_universe,
)
from .semantics import (
    ACCEPTABILITY_SEMANTICS,
    Semantics,
    enumerate_extensions,
    is_acyclic,
    is_admissible,
    is_closed,
    is_coherent,
    is_conflict_free,
    is_extension,
    well_founded_nonempty,
)
from .core import attacks, closure, defends

LETTERS = "ABCDEFGHIJKLMNOPQRST"


# --------------------------------------------------------------------------
# Scenarios


@dataclass(frozen=True)
class Check:
    label: str
    compute: Callable[[], Any]
    expected: Any
    claimed: Any = None


@dataclass(frozen=True)
class CheckResult:
    label: str
    passed: bool
    expected: Any
    actual: Any
    claimed: Any = None


@dataclass(frozen=True)
class Scenario:
    id: str
    title: str
    checks: tuple[Check, ...]
    framework: Framework | None = None
    profile: Profile | None = None

    def run(self) -> list[CheckResult]:
        results = []
        for check in self.checks:
            actual = check.compute()
            results.append(
                CheckResult(check.label, actual == check.expected, check.expected, actual, check.claimed)
            )
        return results


def _rules(*texts: str) -> frozenset[Rule]:
    return frozenset(Rule.parse(t) for t in texts)


def _profile(signature: Signature, *agents: Iterable[str]) -> Profile:
    return Profile.build(signature, [_rules(*a) for a in agents], strict=True)


def _rule_strs(rules: Iterable[Rule]) -> list[str]:
    return [str(r) for r in sorted(rules)]


def _ext(framework: Framework, semantics: str) -> list[str]:
    """Extensions rendered as strings such as ``{A,C}``, canonically sorted."""
    report = enumerate_extensions(framework, semantics)
    return [framework.signature.format_set(m) for m in report.extensions]


def _verdict(profile: Profile, spec: AggregationSpec, prop: Property) -> str:
    return check_preservation(profile, spec, prop).verdict.value


def _quota_example() -> Scenario:
    sig = Signature.create("ABCD")
    p = _profile(sig, ["~A <- B"], ["A <- C"], ["~A <- B", "A <- D"])
    union = ["A <- C", "A <- D", "~A <- B"]
    checks = [
        Check(f"{kind} aggregate", lambda k=kind: _rule_strs(aggregate_rules(p, NamedQuota(k))), expected)
        for kind, expected in [
            ("weak-majority", union),
            ("nomination", union),
            ("strict-majority", ["~A <- B"]),
            ("unanimity", []),
        ]
    ]
    return Scenario("S1", "quota rules on a three-agent profile", tuple(checks), profile=p)


def _oligarchy_example() -> Scenario:
    sig = Signature.create("ABCD")
    p = _profile(sig, ["~A <- B"], ["A <- C"], ["~A <- B", "A <- D"])
    checks = (
        Check("veto {1,3}", lambda: _rule_strs(aggregate_rules(p, Oligarchy(frozenset({1, 3})))), ["~A <- B"]),
        Check("veto {1,2,3}", lambda: _rule_strs(aggregate_rules(p, Oligarchy(frozenset({1, 2, 3})))), []),
        Check(
            "veto N equals unanimity",
            lambda: aggregate_rules(p, Oligarchy(frozenset({1, 2, 3})))
            == aggregate_rules(p, NamedQuota("unanimity")),
            True,
        ),
    )
    return Scenario("S2", "oligarchic rules on a three-agent profile", checks, profile=p)


def admissibility_counterexample(n: int, q: int) -> Profile:
    """``n - q`` empty agents, ``q - 1`` agents with two attacks, one agent with a supported attack."""
    sig = Signature.create("ABCD")
    agents = [[]] * (n - q) + [["~D <- B", "~C <- D"]] * (q - 1) + [["~D <- A", "~C <- D", "A <- B"]]
    return _profile(sig, *agents)


def _admissibility_scenario() -> Scenario:
    p = admissibility_counterexample(3, 2)
    delta = extension("admissible", "A", "B", "C")
    checks = [
        Check(f"agent {i} admissible {{A,B,C}}", lambda i=i: holds(p.framework(i), delta), True)
        for i in (1, 2, 3)
    ]
    checks += [
        Check("quota 2 aggregate", lambda: _rule_strs(aggregate_rules(p, Quota(2))), ["~C <- D"]),
        Check("quota 2 verdict", lambda: _verdict(p, Quota(2), delta), "violated"),
        Check("nomination verdict", lambda: _verdict(p, NamedQuota("nomination"), delta), "preserved"),
        Check(
            "quota 2 defends C",
            lambda: defends(aggregate(p, Quota(2)), p.signature.mask("ABC"), p.signature.index("C")),
            False,
        ),
    ]
    for n in range(2, 6):
        for q in range(2, n + 1):
            checks.append(
                Check(
                    f"n={n} q={q} verdict",
                    lambda n=n, q=q: _verdict(admissibility_counterexample(n, q), Quota(q), delta),
                    "violated",
                )
            )
    return Scenario("S3", "admissibility is broken by every quota above one", tuple(checks), profile=p)


def _set_stable_scenario() -> Scenario:
    sig = Signature.create("ABCD")
    p = _profile(sig, ["~D <- B", "B <- A"], ["~D <- C"], ["~D <- A", "~C <- D", "A <- B"])
    delta = extension("set-stable", "A", "B", "C")
    checks = [
        Check(f"agent {i} set-stable {{A,B,C}}", lambda i=i: holds(p.framework(i), delta), True)
        for i in (1, 2, 3)
    ]
    checks += [
        Check("quota 2 aggregate", lambda: _rule_strs(aggregate_rules(p, Quota(2))), []),
        Check("quota 2 set-stable {A,B,C}", lambda: holds(aggregate(p, Quota(2)), delta), False),
        Check("quota 2 closure of D", lambda: _names(aggregate(p, Quota(2)), closure(aggregate(p, Quota(2)), sig.mask("D"))), "{D}"),
        Check("quota 2 verdict", lambda: _verdict(p, Quota(2), delta), "violated"),
        Check("nomination verdict", lambda: _verdict(p, NamedQuota("nomination"), delta), "preserved"),
    ]
    return Scenario("S4", "set-stable extensions are broken by quota two", tuple(checks), profile=p)


def _names(framework: Framework, mask: int) -> str:
    return framework.signature.format_set(mask)


ACCEPTABILITY_IMPLICATIVE = (
    ("~C <- A", "D <- A"),
    ("~B <- C", "~A <- B", "~C <- D"),
)
ACCEPTABILITY_DISJUNCTIVE = (("~B <- A", "D <- C"), ("~A <- C", "~A <- D"))
EXTENSION_IMPLICATIVE = (("~C <- D", "~A <- B", "E <- D"), ("~B <- C", "~D <- A", "~A <- E"))
EXTENSION_DISJUNCTIVE = (
    ("~C <- D", "~B <- C", "~A <- B", "~D <- A", "D <- E"),
    ("~C <- E", "~A <- E"),
)
COHERENCE_IMPLICATIVE = ACCEPTABILITY_IMPLICATIVE
COHERENCE_DISJUNCTIVE = (("~A <- D", "~B <- A", "~D <- B", "C <- A"), ("~D <- C", "~B <- C"))


def _implicative(sig: Signature, tup, prop: Property) -> bool:
    base, extra = tup
    return check_implicative(sig, _rules(*base), *[Rule.parse(r) for r in extra], prop)


def _disjunctive(sig: Signature, tup, prop: Property) -> bool:
    base, extra = tup
    return check_disjunctive(sig, _rules(*base), *[Rule.parse(r) for r in extra], prop)


def _acceptability_constructions() -> list[Scenario]:
    sig = Signature.create("ABCD")
    imp = tuple(
        Check(f"implicative acceptable:B:{s}", lambda s=s: _implicative(sig, ACCEPTABILITY_IMPLICATIVE, acceptable("B", s)), True)
        for s in ACCEPTABILITY_SEMANTICS
    )
    dis = tuple(
        Check(f"disjunctive acceptable:B:{s}", lambda s=s: _disjunctive(sig, ACCEPTABILITY_DISJUNCTIVE, acceptable("B", s)), True)
        for s in ACCEPTABILITY_SEMANTICS
    )
    return [
        Scenario("S5", "acceptability of B is implicative", imp, framework=Framework(sig, _rules(*ACCEPTABILITY_IMPLICATIVE[0]))),
        Scenario("S6", "acceptability of B is disjunctive", dis, framework=Framework(sig, _rules(*ACCEPTABILITY_DISJUNCTIVE[0]))),
    ]


def _acceptability_three() -> Scenario:
    sig = Signature.create("ABC")
    p = _profile(sig, ["~A <- C", "~B <- C"], ["~B <- A", "~C <- B"], ["~C <- A", "~A <- B"])
    nom = aggregate(p, NamedQuota("nomination"))
    una = aggregate(p, NamedQuota("unanimity"))
    agent_ext = {1: "{C}", 2: "{A,C}", 3: "{B,C}"}
    checks = []
    for i, ext in agent_ext.items():
        for s in ACCEPTABILITY_SEMANTICS:
            checks.append(Check(f"agent {i} {s}", lambda i=i, s=s: _ext(p.framework(i), s), [ext]))
    checks += [
        Check("nomination preferred", lambda: _ext(nom, "preferred"), ["{A}", "{B}", "{C}"]),
        Check("nomination set-stable", lambda: _ext(nom, "set-stable"), ["{A}", "{B}", "{C}"]),
        Check(
            "nomination complete",
            lambda: _ext(nom, "complete"),
            ["{}", "{A}", "{B}", "{C}"],
            claimed=["{A}", "{B}", "{C}"],
        ),
        Check("nomination well-founded", lambda: _ext(nom, "well-founded"), ["{}"]),
        Check("nomination ideal", lambda: _ext(nom, "ideal"), ["{}"]),
        Check("unanimity aggregate", lambda: _rule_strs(una.rules), []),
    ]
    for s in ACCEPTABILITY_SEMANTICS:
        prop = acceptable("C", s)
        # {C} survives as a preferred, complete and set-stable extension.
        lost = s in (Semantics.WELL_FOUNDED, Semantics.IDEAL)
        expected = "violated" if lost else "preserved"
        checks.append(
            Check(
                f"nomination verdict {prop}",
                lambda prop=prop: _verdict(p, NamedQuota("nomination"), prop),
                expected,
                claimed=None if lost else "violated",
            )
        )
        checks.append(Check(f"unanimity verdict {prop}", lambda prop=prop: _verdict(p, NamedQuota("unanimity"), prop), "preserved"))
    return Scenario("S7", "nomination breaks acceptability with three assumptions", tuple(checks), profile=p)


def _extension_constructions() -> list[Scenario]:
    sig = Signature.create("ABCDE")
    # Delta = {B,D,E} stays one of two preferred (and complete) extensions when
    # {~B <- C, ~D <- A} is added, and E's support of D keeps it admissible
    # in the disjunctive base.
    imp_truth = {"preferred": False, "complete": False, "well-founded": True, "ideal": True}
    dis_truth = {"preferred": False, "complete": False, "well-founded": False, "ideal": False}
    imp = tuple(
        Check(
            f"implicative extension:{s}:B,D,E",
            lambda s=s: _implicative(sig, EXTENSION_IMPLICATIVE, extension(s, "B", "D", "E")),
            imp_truth[s],
            claimed=True if not imp_truth[s] else None,
        )
        for s in imp_truth
    )
    dis = tuple(
        Check(
            f"disjunctive extension:{s}:B,D,E",
            lambda s=s: _disjunctive(sig, EXTENSION_DISJUNCTIVE, extension(s, "B", "D", "E")),
            dis_truth[s],
            claimed=True,
        )
        for s in dis_truth
    )
    both = Framework(sig, _rules(*EXTENSION_IMPLICATIVE[0], "~B <- C", "~D <- A"))
    imp += (
        Check("base + {~B <- C, ~D <- A} preferred", lambda: _ext(both, "preferred"), ["{A,C,E}", "{B,D,E}"]),
        Check("base + {~B <- C, ~D <- A} well-founded", lambda: _ext(both, "well-founded"), ["{E}"]),
    )
    bare = Framework(sig, _rules(*EXTENSION_DISJUNCTIVE[0]))
    dis += (
        Check("bare base preferred", lambda: _ext(bare, "preferred"), ["{A,C}", "{B,D,E}"]),
        Check("bare base complete", lambda: _ext(bare, "complete"), ["{B,D,E}"]),
    )
    return [
        Scenario("S8", "extension {B,D,E}: implicative construction", imp, framework=Framework(sig, _rules(*EXTENSION_IMPLICATIVE[0]))),
        Scenario("S9", "extension {B,D,E}: disjunctive construction", dis, framework=bare),
    ]


def _small_extension_profiles() -> list[Scenario]:
    sig3 = Signature.create("ABC")
    p3 = _profile(sig3, ["~B <- A", "~C <- B"], ["~B <- A", "~C <- B"], ["~A <- B", "~B <- C"], ["~A <- B", "~B <- C"])
    checks3 = [
        Check(f"agent {i} {s}", lambda i=i, s=s: _ext(p3.framework(i), s), ["{A,C}"])
        for i in range(1, 5)
        for s in ("preferred", "complete", "well-founded", "ideal")
    ]
    una = aggregate(p3, NamedQuota("unanimity"))
    checks3 += [Check(f"unanimity {s}", lambda s=s: _ext(una, s), ["{A,B,C}"]) for s in ("preferred", "complete", "well-founded", "ideal")]
    for kind in ("nomination", "weak-majority", "strict-majority"):
        fw = aggregate(p3, NamedQuota(kind))
        checks3 += [
            Check(f"{kind} aggregate", lambda fw=fw: _rule_strs(fw.rules), ["~A <- B", "~B <- A", "~B <- C", "~C <- B"]),
            Check(f"{kind} preferred", lambda fw=fw: _ext(fw, "preferred"), ["{A,C}", "{B}"]),
            Check(f"{kind} complete", lambda fw=fw: _ext(fw, "complete"), ["{}", "{A,C}", "{B}"]),
            Check(f"{kind} well-founded", lambda fw=fw: _ext(fw, "well-founded"), ["{}"]),
            Check(f"{kind} ideal", lambda fw=fw: _ext(fw, "ideal"), ["{}"]),
        ]

    sig4 = Signature.create("ABCD")
    p4 = _profile(sig4, ["~A <- D", "~D <- B", "~C <- D"], ["~A <- D", "~B <- D", "~D <- C"], ["D <- A"])
    delta = extension("preferred", "A", "B", "C")
    checks4 = [
        Check("agent 1 preferred {A,B,C}", lambda: holds(p4.framework(1), delta), True),
        Check("agent 2 preferred {A,B,C}", lambda: holds(p4.framework(2), delta), True),
        # D <- A makes {A,B,C} unclosed for agent 3.
        Check("agent 3 preferred {A,B,C}", lambda: holds(p4.framework(3), delta), False, claimed=True),
    ]
    una4 = aggregate(p4, NamedQuota("unanimity"))
    checks4 += [Check(f"unanimity {s}", lambda s=s: _ext(una4, s), ["{A,B,C,D}"]) for s in ("preferred", "complete", "well-founded", "ideal")]
    maj = aggregate(p4, Quota(2))
    checks4 += [
        # Only ~A <- D is held by two agents.
        Check("quota 2 aggregate", lambda: _rule_strs(maj.rules), ["~A <- D"], claimed=["~D <- A"]),
    ]
    checks4 += [Check(f"quota 2 {s}", lambda s=s: _ext(maj, s), ["{B,C,D}"]) for s in ("preferred", "complete", "well-founded", "ideal")]
    nom = aggregate(p4, NamedQuota("nomination"))
    checks4 += [
        # D <- A together with ~A <- D makes every set containing A self-attacking.
        Check("nomination preferred", lambda: _ext(nom, "preferred"), ["{B,C}", "{D}"], claimed=["{A,B,C}", "{D}"]),
        Check("nomination complete", lambda: _ext(nom, "complete"), ["{}", "{D}"], claimed=["{}", "{A,B,C}", "{D}"]),
        Check("nomination well-founded", lambda: _ext(nom, "well-founded"), ["{}"]),
        Check("nomination ideal", lambda: _ext(nom, "ideal"), ["{}"]),
    ]
    return [
        Scenario("S10", "whole extensions over three assumptions, four agents", tuple(checks3), profile=p3),
        Scenario("S11", "whole extensions over four assumptions, three agents", tuple(checks4), profile=p4),
    ]


def _coherence_constructions() -> list[Scenario]:
    sig = Signature.create("ABCD")
    base, extra = COHERENCE_IMPLICATIVE
    r1, r2, r3 = extra
    expected_pref = {
        (): ["{A,B,D}"],
        (r1,): ["{A,B,D}"],
        (r3,): ["{A,B,D}"],
        (r1, r3): ["{A,B,D}"],
        (r2,): ["{B,C,D}"],
        (r2, r3): ["{B,D}"],
        (r1, r2, r3): ["{B,D}"],
        (r1, r2): ["{D}"],
    }
    imp = [Check("implicative coherent", lambda: _implicative(sig, COHERENCE_IMPLICATIVE, Coherent()), True)]
    for added, pref in expected_pref.items():
        fw = Framework(sig, _rules(*base, *added))
        label = "{" + ", ".join(added) + "}"
        imp.append(Check(f"S={label} preferred", lambda fw=fw: _ext(fw, "preferred"), pref))
        imp.append(Check(f"S={label} set-stable", lambda fw=fw: _ext(fw, "set-stable"), [] if added == (r1, r2) else pref))

    dbase, (d1, d2) = COHERENCE_DISJUNCTIVE
    expected_dis = {(d1,): ["{A,C}"], (d1, d2): ["{A,C}"], (d2,): ["{C,D}"], (): ["{C}"]}
    dis = [Check("disjunctive coherent", lambda: _disjunctive(sig, COHERENCE_DISJUNCTIVE, Coherent()), True)]
    for added, pref in expected_dis.items():
        fw = Framework(sig, _rules(*dbase, *added))
        label = "{" + ", ".join(added) + "}"
        dis.append(Check(f"S={label} preferred", lambda fw=fw: _ext(fw, "preferred"), pref))
        dis.append(Check(f"S={label} set-stable", lambda fw=fw: _ext(fw, "set-stable"), [] if not added else pref))
    return [
        Scenario("S12", "coherence is implicative", tuple(imp), framework=Framework(sig, _rules(*base))),
        Scenario("S13", "coherence is disjunctive", tuple(dis), framework=Framework(sig, _rules(*dbase))),
    ]


def attack_ring(k: int) -> tuple[Signature, frozenset[Rule]]:
    """``k`` assumptions ``A1..Ak`` with ``contrary(A(i+1)) <- Ai`` and ``contrary(A1) <- Ak``."""
    sig = Signature.create([f"A{i}" for i in range(1, k + 1)])
    rules = frozenset(
        Rule(sig.contrary(f"A{i % k + 1}"), f"A{i}") for i in range(1, k + 1)
    )
    return sig, rules


def _ring_scenario(seed: int = 0) -> Scenario:
    checks = []
    for k in range(2, 7):
        sig, ring = attack_ring(k)
        minus_one = ring - {min(ring)}
        checks += [
            Check(f"k={k} ring acyclic", lambda sig=sig, ring=ring: is_acyclic(Framework(sig, ring)), False),
            Check(f"k={k} ring minus one acyclic", lambda sig=sig, r=minus_one: is_acyclic(Framework(sig, r)), True),
            Check(f"k={k} ring wf-nonempty", lambda sig=sig, ring=ring: well_founded_nonempty(Framework(sig, ring)), False),
            Check(f"k={k} ring minus one wf-nonempty", lambda sig=sig, r=minus_one: well_founded_nonempty(Framework(sig, r)), True),
            Check(
                f"k={k} wf-nonempty k-exclusive",
                lambda sig=sig, ring=ring: check_k_exclusive(sig, ring, WellFoundedNonempty(), 64, seed),
                True,
            ),
            Check(
                f"k={k} acyclic k-exclusive",
                lambda sig=sig, ring=ring: check_k_exclusive(sig, ring, Acyclic(), 64, seed),
                True,
            ),
        ]
    return Scenario("S14", "attack rings are k-exclusive", tuple(checks))


def _illustration() -> Scenario:
    sig = Signature.create(["alpha", "beta", "gamma"])
    fw = Framework.build(sig, _rules("~beta <- gamma", "gamma <- alpha"), strict=True)
    m = sig.mask
    checks = (
        Check("closure {alpha}", lambda: _names(fw, closure(fw, m(["alpha"]))), "{alpha,gamma}"),
        Check("{alpha} closed", lambda: is_closed(fw, m(["alpha"])), False),
        Check("{alpha,beta} closed", lambda: is_closed(fw, m(["alpha", "beta"])), False),
        Check("{beta} closed", lambda: is_closed(fw, m(["beta"])), True),
        Check("{beta} conflict-free", lambda: is_conflict_free(fw, m(["beta"])), True),
        Check("{beta} admissible", lambda: is_admissible(fw, m(["beta"])), False),
        Check("{alpha,gamma} conflict-free", lambda: is_conflict_free(fw, m(["alpha", "gamma"])), True),
        Check("{alpha,gamma} admissible", lambda: is_admissible(fw, m(["alpha", "gamma"])), True),
        Check("{alpha} attacks beta", lambda: attacks(fw, m(["alpha"]), sig.index("beta")), True),
        Check("preferred", lambda: _ext(fw, "preferred"), ["{alpha,gamma}"]),
    )
    return Scenario("S15", "three-assumption illustration with a supported attack", checks, framework=fw)


def brexit_frameworks() -> tuple[Framework, Framework]:
    sig = Signature.create("ABCDE")
    deductive = Framework.build(sig, _rules("~A <- B", "~A <- E", "A <- C", "A <- D"), strict=True)
    necessary = Framework.build(sig, _rules("~A <- B", "~A <- E", "C <- A", "D <- A"), strict=True)
    return deductive, necessary


def _brexit() -> Scenario:
    ded, nec = brexit_frameworks()
    sig = ded.signature
    m = sig.mask
    checks = (
        Check("deductive: B attacks A", lambda: attacks(ded, m("B"), sig.index("A")), True),
        Check("deductive: E attacks A", lambda: attacks(ded, m("E"), sig.index("A")), True),
        Check("deductive: C attacks A", lambda: attacks(ded, m("C"), sig.index("A")), False),
        Check("deductive: closure {C}", lambda: _names(ded, closure(ded, m("C"))), "{A,C}"),
        Check("deductive preferred", lambda: _ext(ded, "preferred"), ["{B,E}"]),
        # C and D are undefeated yet drag in the attacked A, so nothing is complete.
        Check("deductive complete", lambda: _ext(ded, "complete"), []),
        Check("deductive well-founded exists", lambda: enumerate_extensions(ded, "well-founded").exists, False),
        Check("deductive set-stable", lambda: _ext(ded, "set-stable"), ["{B,E}"]),
        Check("necessary: closure {A}", lambda: _names(nec, closure(nec, m("A"))), "{A,C,D}"),
        Check("necessary preferred", lambda: _ext(nec, "preferred"), ["{B,C,D,E}"]),
        Check("necessary well-founded", lambda: _ext(nec, "well-founded"), ["{B,C,D,E}"]),
    )
    return Scenario("S16", "Brexit debate under deductive and necessary support", checks, framework=ded)


def builtin_scenarios() -> list[Scenario]:
    return [
        _quota_example(),
        _oligarchy_example(),
        _admissibility_scenario(),
        _set_stable_scenario(),
        *_acceptability_constructions(),
        _acceptability_three(),
        *_extension_constructions(),
        *_small_extension_profiles(),
        *_coherence_constructions(),
        _ring_scenario(),
        _illustration(),
        _brexit(),
    ]


# --------------------------------------------------------------------------
# Generators


@dataclass(frozen=True)
class GenParams:
    assumption_count: int
    agent_count: int
    rule_density: float = 0.3
    support_fraction: float = 0.5
    exclude_self_attack: bool = True
    exclude_self_support: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.assumption_count <= MAX_ASSUMPTIONS:
            raise ValueError(f"assumption_count must lie in 1..{MAX_ASSUMPTIONS}")
        if self.agent_count < 2:
            raise ValueError("agent_count must be at least 2")
        for name in ("rule_density", "support_fraction"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


def letters_signature(count: int) -> Signature:
    return Signature.create(LETTERS[:count])


def random_profile(params: GenParams) -> Profile:
    """A seeded random profile.

    Every attack rule is held by each agent with probability ``rule_density``
    and every support rule with probability ``rule_density * support_fraction``.
    """
    rng = random.Random(params.seed)
    sig = letters_signature(params.assumption_count)
    universe = rule_universe(
        sig, self_attack=not params.exclude_self_attack, self_support=not params.exclude_self_support
    )
    support_p = params.rule_density * params.support_fraction
    agents = []
    for _ in range(params.agent_count):
        agents.append(
            frozenset(
                r
                for r in universe
                if rng.random() < (support_p if sig.is_assumption(r.head) else params.rule_density)
            )
        )
    return Profile(sig, tuple(agents))


def exhaustive_profiles(assumption_count: int = 2, agent_count: int = 2) -> Iterator[Profile]:
    """Every profile over the self-free rule universe; offered for two assumptions and two agents."""
    if (assumption_count, agent_count) != (2, 2):
        raise ValueError("exhaustive enumeration is offered only for 2 assumptions and 2 agents")
    sig = letters_signature(assumption_count)
    universe = rule_universe(sig)
    rule_sets = [frozenset(c) for k in range(len(universe) + 1) for c in combinations(universe, k)]
    for agents in product(rule_sets, repeat=agent_count):
        yield Profile(sig, agents)


def all_specs(n: int, rng: random.Random | None = None, veto_sets: int = 20) -> list[AggregationSpec]:
    """Named quotas, every quota value and up to ``veto_sets`` veto sets."""
    specs: list[AggregationSpec] = [NamedQuota(k) for k in QUOTA_KINDS]
    specs += [Quota(q) for q in range(1, n + 1)]
    vetoes = [frozenset(c) for k in range(1, n + 1) for c in combinations(range(1, n + 1), k)]
    if len(vetoes) > veto_sets:
        rng = rng or random.Random(0)
        vetoes = rng.sample(vetoes, veto_sets)
    specs += [Oligarchy(v) for v in vetoes]
    return specs


# --------------------------------------------------------------------------
# Theorem falsification


@dataclass(frozen=True)
class Violation:
    theorem: str
    spec: str
    prop: str
    agent_rules: tuple[tuple[str, ...], ...]
    assumptions: tuple[str, ...]

    def __str__(self) -> str:
        agents = "; ".join("{" + ", ".join(r) + "}" for r in self.agent_rules)
        return f"{self.theorem}: {self.prop} under {self.spec} with assumptions {','.join(self.assumptions)} and agents {agents}"


@dataclass
class TheoremReport:
    theorem: str
    profiles_checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _names_of(sig: Signature, mask: int) -> frozenset[str]:
    return frozenset(sig.names(mask))


class _Claim:
    """A preservation claim: which profiles, which rules, which properties."""

    id: str = ""
    description: str = ""
    sizes: tuple[int, ...] = (1, 2, 3, 4, 5)

    def applies(self, profile: Profile) -> bool:
        return profile.signature.size in self.sizes

    def specs(self, profile: Profile, rng: random.Random) -> list[AggregationSpec]:
        return all_specs(profile.n, rng)

    def properties(self, signature: Signature) -> list[Property]:
        raise NotImplementedError

    def extra_checks(self, seed: int) -> list[Violation]:
        return []


DeltaPredicate = Callable[[Framework, int], bool]
DeltaProperty = Callable[[Signature, int], Property]


class _DeltaClaim(_Claim):
    """Claims about every set Delta, evaluated with bitmask predicates for speed."""

    def groups(self) -> list[tuple[DeltaPredicate, DeltaProperty]]:
        raise NotImplementedError


class _ConflictFreeClaim(_DeltaClaim):
    id = "T-CF"
    description = "every quota and oligarchic rule preserves conflict-freeness"

    def groups(self):
        return [(is_conflict_free, lambda sig, m: ConflictFree(_names_of(sig, m)))]


class _ClosedClaim(_DeltaClaim):
    id = "T-CLOSED"
    description = "every quota and oligarchic rule preserves closedness"

    def groups(self):
        return [(is_closed, lambda sig, m: Closed(_names_of(sig, m)))]


class _ExtensionClaim(_DeltaClaim):
    semantics: tuple[Semantics, ...] = ()
    nomination_only = False

    def specs(self, profile, rng):
        if self.nomination_only:
            return [NamedQuota("nomination")]
        return all_specs(profile.n, rng)

    def groups(self):
        return [
            (
                lambda fw, m, s=s: is_extension(fw, m, s),
                lambda sig, m, s=s: Extension(s, _names_of(sig, m)),
            )
            for s in self.semantics
        ]


class _AdmissibleNomination(_ExtensionClaim):
    id = "T-ADM-NOM"
    description = "nomination preserves admissibility"
    semantics = (Semantics.ADMISSIBLE,)
    nomination_only = True


class _AdmissibleSmall(_ExtensionClaim):
    id = "T-ADM-SMALL"
    description = "with at most three assumptions every quota and oligarchic rule preserves admissibility"
    semantics = (Semantics.ADMISSIBLE,)
    sizes = (1, 2, 3)


class _SetStableNomination(_ExtensionClaim):
    id = "T-SETSTABLE-NOM"
    description = "nomination preserves set-stable extensions"
    semantics = (Semantics.SET_STABLE,)
    nomination_only = True


class _ExtensionSmall(_ExtensionClaim):
    id = "T-EXT-SMALL"
    description = (
        "with at most two assumptions every quota and oligarchic rule preserves "
        "preferred, complete, well-founded and ideal extensions"
    )
    semantics = (Semantics.PREFERRED, Semantics.COMPLETE, Semantics.WELL_FOUNDED, Semantics.IDEAL)
    sizes = (1, 2)


class _AcceptabilitySmall(_Claim):
    id = "T-ACC-SMALL"
    description = "with at most two assumptions every quota and oligarchic rule preserves acceptability"
    sizes = (1, 2)

    def properties(self, signature):
        return [Acceptable(a, s) for a in signature.assumptions for s in ACCEPTABILITY_SEMANTICS]


class _VetoClaim(_Claim):
    """Oligarchic rules preserve the property; the ring profile defeats every quota below n."""

    prop: Property

    def applies(self, profile):
        return profile.signature.size >= max(2, profile.n)

    def specs(self, profile, rng):
        vetoes = [
            Oligarchy(frozenset(c))
            for k in range(1, profile.n + 1)
            for c in combinations(range(1, profile.n + 1), k)
        ]
        return [NamedQuota("unanimity"), *vetoes]

    def properties(self, signature):
        return [self.prop]

    def extra_checks(self, seed):
        out = []
        for k in range(2, 6):
            for n in range(2, k + 1):
                profile = ring_veto_profile(k, n)
                for q in range(1, n + 1):
                    verdict = check_preservation(profile, Quota(q), self.prop).verdict
                    expected = Verdict.VIOLATED if q < n else Verdict.PRESERVED
                    if verdict is not expected:
                        out.append(_violation(self.id, profile, Quota(q), self.prop))
        return out


class _WellFoundedVeto(_VetoClaim):
    id = "T-WF-VETO"
    description = "non-emptiness of the well-founded extension needs a veto agent"
    prop = WellFoundedNonempty()


class _AcyclicVeto(_VetoClaim):
    id = "T-ACYCLIC-VETO"
    description = "acyclicity needs a veto agent"
    prop = Acyclic()


class _CoherenceUnanimity(_Claim):
    id = "T-COHERENCE-UNANIMITY-SMALL"
    description = "with two or three assumptions unanimity preserves coherence"
    sizes = (2, 3)

    def specs(self, profile, rng):
        return [NamedQuota("unanimity")]

    def properties(self, signature):
        return [Coherent()]


def ring_veto_profile(k: int, n: int) -> Profile:
    """Agent ``i`` holds the ``k``-ring minus its ``i``-th rule (``n <= k``)."""
    sig, ring = attack_ring(k)
    ordered = sorted(ring)
    return Profile(sig, tuple(ring - {ordered[i]} for i in range(n)))


THEOREMS: dict[str, _Claim] = {
    c.id: c
    for c in (
        _ConflictFreeClaim(),
        _ClosedClaim(),
        _AdmissibleNomination(),
        _AdmissibleSmall(),
        _SetStableNomination(),
        _AcceptabilitySmall(),
        _ExtensionSmall(),
        _WellFoundedVeto(),
        _AcyclicVeto(),
        _CoherenceUnanimity(),
    )
}


def _violation(theorem: str, profile: Profile, spec: AggregationSpec, prop: Property) -> Violation:
    return Violation(
        theorem,
        str(spec),
        str(prop),
        tuple(tuple(_rule_strs(r)) for r in profile.agent_rules),
        profile.signature.assumptions,
    )


def _distinct_aggregates(profile: Profile, specs: list[AggregationSpec]) -> dict[frozenset[Rule], AggregationSpec]:
    out: dict[frozenset[Rule], AggregationSpec] = {}
    for spec in specs:
        out.setdefault(aggregate_rules(profile, spec), spec)
    return out


def check_profile(claim: _Claim, profile: Profile, rng: random.Random) -> tuple[bool, list[Violation]]:
    """Check one profile against ``claim``.

    Returns whether the claim's premise applied to at least one property, and
    the violations found. Violations are confirmed through
    :func:`check_preservation`.
    """
    sig = profile.signature
    agents = profile.frameworks()
    aggregates = _distinct_aggregates(profile, claim.specs(profile, rng))
    found: list[Violation] = []
    applied = False

    def confirm(spec: AggregationSpec, prop: Property) -> None:
        if check_preservation(profile, spec, prop).verdict is Verdict.VIOLATED:
            found.append(_violation(claim.id, profile, spec, prop))

    if isinstance(claim, _DeltaClaim):
        frameworks = [Framework(sig, rules) for rules in aggregates]
        specs = list(aggregates.values())
        for predicate, make_property in claim.groups():
            for mask in range(1 << sig.size):
                if not all(predicate(fw, mask) for fw in agents):
                    continue
                applied = True
                for fw, spec in zip(frameworks, specs):
                    if not predicate(fw, mask):
                        confirm(spec, make_property(sig, mask))
        return applied, found

    for prop in claim.properties(sig):
        if not all(holds(fw, prop) for fw in agents):
            continue
        applied = True
        for rules, spec in aggregates.items():
            if not holds(Framework(sig, rules), prop):
                confirm(spec, prop)
    return applied, found


def _sample_params(rng: random.Random, sizes: tuple[int, ...], max_agents: int = 4) -> GenParams:
    return GenParams(
        assumption_count=rng.choice(sizes),
        agent_count=rng.randint(2, max_agents),
        rule_density=rng.uniform(0.1, 0.6),
        support_fraction=0.5,
        seed=rng.getrandbits(32),
    )


def check_theorem(
    theorem_id: str, budget: int = 10_000, seed: int = 0, only_applicable: bool = False
) -> TheoremReport:
    """Sample ``budget`` random profiles and look for counterexamples to a claim.

    With ``only_applicable`` the budget counts profiles on which the claim's
    premise held for at least one property (sampling stops after ``50 *
    budget`` attempts).
    """
    try:
        claim = THEOREMS[theorem_id]
    except KeyError:
        raise KeyError(f"unknown theorem {theorem_id!r}; known: {sorted(THEOREMS)}") from None
    rng = random.Random(seed)
    report = TheoremReport(theorem_id)
    attempts = 0
    while report.profiles_checked < budget and attempts < 50 * max(budget, 1):
        attempts += 1
        profile = random_profile(_sample_params(rng, claim.sizes))
        if not claim.applies(profile):
            continue
        applied, found = check_profile(claim, profile, rng)
        if only_applicable and not applied:
            continue
        report.profiles_checked += 1
        report.violations += found
    if theorem_id in ("T-ACC-SMALL", "T-EXT-SMALL"):
        for profile in exhaustive_profiles(2, 2):
            _, found = check_profile(claim, profile, rng)
            report.profiles_checked += 1
            report.violations += found
    report.violations += claim.extra_checks(seed)
    return report


FUZZ_SUITE = ("T-CF", "T-CLOSED", "T-ADM-NOM", "T-SETSTABLE-NOM", "T-ADM-SMALL", "T-ACC-SMALL")


def run_fuzz_suite(budget: int = 10_000, seed: int = 0, theorems: Iterable[str] = FUZZ_SUITE) -> dict[str, TheoremReport]:
    """One stream of random profiles (1..5 assumptions, 2..4 agents) checked
    against several claims; each claim only sees profiles of its sizes."""
    rng = random.Random(seed)
    claims = [THEOREMS[t] for t in theorems]
    reports = {c.id: TheoremReport(c.id) for c in claims}
    for _ in range(budget):
        profile = random_profile(_sample_params(rng, (1, 2, 3, 4, 5)))
        spec_rng = random.Random(rng.getrandbits(32))
        for claim in claims:
            if not claim.applies(profile):
                continue
            _, found = check_profile(claim, profile, spec_rng)
            reports[claim.id].profiles_checked += 1
            reports[claim.id].violations += found
    return reports


# --------------------------------------------------------------------------
# Suites


@dataclass
class SuiteResult:
    scenarios: list[tuple[Scenario, list[CheckResult]]] = field(default_factory=list)
    theorems: list[TheoremReport] = field(default_factory=list)

    @property
    def failures(self) -> int:
        bad = sum(1 for _, results in self.scenarios for r in results if not r.passed)
        return bad + sum(1 for t in self.theorems if not t.ok)


def run_suite(suite: str = "paper", seed: int = 0, budget: int = 10_000) -> SuiteResult:
    if suite not in ("paper", "theorems", "all"):
        raise ValueError(f"unknown suite {suite!r}")
    result = SuiteResult()
    if suite in ("paper", "all"):
        for scenario in builtin_scenarios():
            result.scenarios.append((scenario, scenario.run()))
    if suite in ("theorems", "all"):
        for theorem_id in THEOREMS:
            only = theorem_id == "T-COHERENCE-UNANIMITY-SMALL"
            result.theorems.append(check_theorem(theorem_id, budget, seed, only_applicable=only))
    return result
