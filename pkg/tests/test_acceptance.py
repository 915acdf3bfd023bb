"""Acceptance criteria, one test per criterion.

Each criterion is evaluated exactly as stated, timed on a cold run, and
reported as one PASS/FAIL line. Run directly (``python3
tests/test_acceptance.py``) for the summary alone.
"""

from __future__ import annotations

import sys
import time
from itertools import combinations, permutations

import pytest

from bipolar_aba import naive
from bipolar_aba.aggregation import NamedQuota, Oligarchy, Profile, Quota, aggregate, aggregate_rules
from bipolar_aba.core import (
    Framework,
    Rule,
    Signature,
    attacks,
    closure,
    defends,
)
from bipolar_aba.preservation import (
    Coherent,
    Verdict,
    WellFoundedNonempty,
    Acyclic,
    acceptable,
    check_disjunctive,
    check_implicative,
    check_k_exclusive,
    check_preservation,
    extension,
    holds,
    rule_universe,
)
from bipolar_aba.semantics import ACCEPTABILITY_SEMANTICS, enumerate_extensions, is_admissible
from bipolar_aba.verify import attack_ring, check_theorem, run_fuzz_suite, letters_signature


def rules(*texts: str) -> frozenset[Rule]:
    return frozenset(Rule.parse(t) for t in texts)


def profile(names: str, *agents) -> Profile:
    return Profile(Signature.create(names), tuple(rules(*a) for a in agents))


def ext(fw: Framework, sem: str) -> list[str]:
    return [fw.signature.format_set(m) for m in enumerate_extensions(fw, sem).extensions]


class Outcome:
    def __init__(self) -> None:
        self.failures: list[str] = []
        self.count = 0

    def expect(self, label: str, actual, expected) -> None:
        self.count += 1
        if actual != expected:
            self.failures.append(f"{label}: expected {expected!r}, got {actual!r}")


def criterion_1(out: Outcome) -> None:
    p = profile("ABCD", ["~A <- B"], ["A <- C"], ["~A <- B", "A <- D"])
    union = rules("~A <- B", "A <- C", "A <- D")
    out.expect("weak-majority", aggregate_rules(p, NamedQuota("weak-majority")), union)
    out.expect("nomination", aggregate_rules(p, NamedQuota("nomination")), union)
    out.expect("strict-majority", aggregate_rules(p, NamedQuota("strict-majority")), rules("~A <- B"))
    out.expect("unanimity", aggregate_rules(p, NamedQuota("unanimity")), frozenset())
    out.expect("oligarchy {1,3}", aggregate_rules(p, Oligarchy(frozenset({1, 3}))), rules("~A <- B"))
    out.expect("oligarchy {1,2,3}", aggregate_rules(p, Oligarchy(frozenset({1, 2, 3}))), frozenset())


def criterion_2(out: Outcome) -> None:
    p = profile("ABCD", [], ["~D <- B", "~C <- D"], ["~D <- A", "~C <- D", "A <- B"])
    delta = extension("admissible", "A", "B", "C")
    for i in (1, 2, 3):
        out.expect(f"agent {i} admissible", holds(p.framework(i), delta), True)
    out.expect("quota 2", check_preservation(p, Quota(2), delta).verdict, Verdict.VIOLATED)
    out.expect("nomination", check_preservation(p, NamedQuota("nomination"), delta).verdict, Verdict.PRESERVED)


def criterion_3(out: Outcome) -> None:
    p = profile("ABCD", ["~D <- B", "B <- A"], ["~D <- C"], ["~D <- A", "~C <- D", "A <- B"])
    delta = extension("set-stable", "A", "B", "C")
    for i in (1, 2, 3):
        out.expect(f"agent {i} set-stable", holds(p.framework(i), delta), True)
    agg = aggregate(p, Quota(2))
    out.expect("quota 2 rules", agg.rules, frozenset())
    out.expect("quota 2 set-stable", holds(agg, delta), False)


def criterion_4(out: Outcome) -> None:
    sig = Signature.create("ABCD")
    imp = [Rule.parse(t) for t in ("~B <- C", "~A <- B", "~C <- D")]
    dis = [Rule.parse(t) for t in ("~A <- C", "~A <- D")]
    for sem in ACCEPTABILITY_SEMANTICS:
        prop = acceptable("B", sem)
        out.expect(f"implicative {prop}", check_implicative(sig, rules("~C <- A", "D <- A"), *imp, prop), True)
        out.expect(f"disjunctive {prop}", check_disjunctive(sig, rules("~B <- A", "D <- C"), *dis, prop), True)


def criterion_5(out: Outcome) -> None:
    sig = Signature.create("ABCDE")
    imp_base = rules("~C <- D", "~A <- B", "E <- D")
    imp = [Rule.parse(t) for t in ("~B <- C", "~D <- A", "~A <- E")]
    dis_base = rules("~C <- D", "~B <- C", "~A <- B", "~D <- A", "D <- E")
    dis = [Rule.parse(t) for t in ("~C <- E", "~A <- E")]
    for sem in ("preferred", "complete", "well-founded", "ideal"):
        prop = extension(sem, "B", "D", "E")
        out.expect(f"implicative {prop}", check_implicative(sig, imp_base, *imp, prop), True)
        out.expect(f"disjunctive {prop}", check_disjunctive(sig, dis_base, *dis, prop), True)


def criterion_6(out: Outcome) -> None:
    p3 = profile(
        "ABC",
        ["~B <- A", "~C <- B"],
        ["~B <- A", "~C <- B"],
        ["~A <- B", "~B <- C"],
        ["~A <- B", "~B <- C"],
    )
    out.expect("|A|=3 unanimity preferred", ext(aggregate(p3, NamedQuota("unanimity")), "preferred"), ["{A,B,C}"])
    for kind in ("nomination", "weak-majority", "strict-majority"):
        fw = aggregate(p3, NamedQuota(kind))
        out.expect(f"|A|=3 {kind} preferred", ext(fw, "preferred"), ["{A,C}", "{B}"])
        out.expect(f"|A|=3 {kind} complete", ext(fw, "complete"), ["{}", "{A,C}", "{B}"])
        out.expect(f"|A|=3 {kind} well-founded", ext(fw, "well-founded"), ["{}"])

    p4 = profile(
        "ABCD",
        ["~A <- D", "~D <- B", "~C <- D"],
        ["~A <- D", "~B <- D", "~D <- C"],
        ["D <- A"],
    )
    maj = aggregate(p4, Quota(2))
    out.expect("|A|=4 quota 2 rules", maj.rules, rules("~D <- A"))
    out.expect("|A|=4 quota 2 preferred", ext(maj, "preferred"), ["{B,C,D}"])
    nom = aggregate(p4, NamedQuota("nomination"))
    out.expect("|A|=4 nomination preferred", ext(nom, "preferred"), ["{A,B,C}", "{D}"])
    out.expect("|A|=4 nomination well-founded", ext(nom, "well-founded"), ["{}"])


def criterion_7(out: Outcome) -> None:
    sig = Signature.create("ABCD")
    imp = [Rule.parse(t) for t in ("~B <- C", "~A <- B", "~C <- D")]
    out.expect("implicative coherent", check_implicative(sig, rules("~C <- A", "D <- A"), *imp, Coherent()), True)
    dis = [Rule.parse(t) for t in ("~D <- C", "~B <- C")]
    dis_base = rules("~A <- D", "~B <- A", "~D <- B", "C <- A")
    out.expect("disjunctive coherent", check_disjunctive(sig, dis_base, *dis, Coherent()), True)
    report = check_theorem("T-COHERENCE-UNANIMITY-SMALL", budget=1000, seed=0, only_applicable=True)
    out.expect("unanimity profiles checked", report.profiles_checked, 1000)
    out.expect("unanimity violations", [str(v) for v in report.violations], [])


def criterion_8(out: Outcome) -> None:
    for k in range(2, 7):
        sig, ring = attack_ring(k)
        for prop in (WellFoundedNonempty(), Acyclic()):
            out.expect(f"k={k} {prop}", check_k_exclusive(sig, ring, prop, superset_samples=64, seed=0), True)


def criterion_9(out: Outcome) -> None:
    reports = run_fuzz_suite(budget=10_000, seed=0)
    for tid, report in reports.items():
        out.expect(f"{tid} profiles checked > 0", report.profiles_checked > 0, True)
        first = str(report.violations[0]) if report.violations else None
        out.expect(f"{tid} violations", (len(report.violations), first), (0, None))


def _orbit_representatives(sig: Signature, universe: list[Rule], max_rules: int):
    """One rule set per orbit under permutations of the assumptions."""
    index = {r: i for i, r in enumerate(universe)}
    contrary_of = dict(zip(sig.contraries, sig.assumptions))
    images = []
    for perm in permutations(sig.assumptions):
        mapping = dict(zip(sig.assumptions, perm))

        def move(s: str) -> str:
            if s in mapping:
                return mapping[s]
            return sig.contrary(mapping[contrary_of[s]])

        images.append([index[Rule(move(r.head), move(r.body))] for r in universe])
    images = images[1:]
    for k in range(max_rules + 1):
        for combo in combinations(range(len(universe)), k):
            if all(tuple(sorted(img[i] for i in combo)) >= combo for img in images):
                yield frozenset(universe[i] for i in combo)


def criterion_10(out: Outcome) -> None:
    checked = 0
    for size in range(1, 5):
        sig = letters_signature(size)
        universe = rule_universe(sig, self_attack=True)
        subsets = naive.subsets(sig.assumptions)
        for rule_set in _orbit_representatives(sig, universe, 6):
            fw = Framework(sig, rule_set)
            att, dfd, adm = naive.evaluate(fw)
            for s in subsets:
                m = sig.mask(s)
                if frozenset(sig.names(closure(fw, m))) != naive.closure(fw, s):
                    out.expect(f"closure {s} in {sorted(rule_set)}", False, True)
                for a in sig.assumptions:
                    i = sig.index(a)
                    if attacks(fw, m, i) != att[(s, a)] or defends(fw, m, i) != dfd[(s, a)]:
                        out.expect(f"attack/defence {s},{a} in {sorted(rule_set)}", False, True)
                if is_admissible(fw, m) != (s in adm):
                    out.expect(f"admissible {s} in {sorted(rule_set)}", False, True)
            checked += 1
    out.expect("frameworks checked", checked > 0, True)


CRITERIA = [
    (1, "quota and oligarchy example", criterion_1, 0.001),
    (2, "admissibility counterexample", criterion_2, 0.010),
    (3, "set-stable counterexample", criterion_3, 0.010),
    (4, "acceptability constructions", criterion_4, 0.050),
    (5, "extension constructions over five assumptions", criterion_5, 0.200),
    (6, "counterexample profiles over three and four assumptions", criterion_6, 0.050),
    (7, "coherence constructions and unanimity", criterion_7, 5.0),
    (8, "k-exclusive attack rings", criterion_8, 2.0),
    (9, "theorem fuzz suite", criterion_9, 120.0),
    (10, "optimised reasoning equals definitional oracle", criterion_10, 60.0),
]


def evaluate(number: int) -> tuple[bool, str]:
    _, title, fn, budget = next(c for c in CRITERIA if c[0] == number)
    out = Outcome()
    start = time.perf_counter()
    fn(out)
    elapsed = time.perf_counter() - start
    ok = not out.failures and elapsed < budget
    status = "PASS" if ok else "FAIL"
    line = f"{status} criterion {number:>2}: {title} ({out.count - len(out.failures)}/{out.count} checks, {elapsed:.4f}s of {budget}s)"
    details = out.failures[:]
    if elapsed >= budget:
        details.append(f"took {elapsed:.4f}s, budget {budget}s")
    if details:
        line += "\n" + "\n".join(f"    {d}" for d in details)
    return ok, line


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, capsys):
    ok, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(c[0]) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
