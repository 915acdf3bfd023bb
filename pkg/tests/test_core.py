from __future__ import annotations

import pytest
from hypothesis import given, settings

from bipolar_aba import naive
from bipolar_aba.core import (
    Framework,
    Rule,
    Signature,
    SignatureError,
    ValidationError,
    attacks,
    attacks_set,
    closure,
    defended,
    defends,
    derives,
    is_closed,
    is_conflict_free,
    validate,
)

from strategies import frameworks


def fw(assumptions, *rules, **contraries) -> Framework:
    sig = Signature.create(assumptions, contraries or None)
    return Framework(sig, frozenset(Rule.parse(r) for r in rules))


class TestSignature:
    def test_canonical_order_and_default_contraries(self):
        sig = Signature.create(["C", "A", "B"])
        assert sig.assumptions == ("A", "B", "C")
        assert sig.contraries == ("~A", "~B", "~C")
        assert sig.contrary("B") == "~B"

    def test_explicit_contrary(self):
        sig = Signature.create("AB", {"A": "notA"})
        assert sig.contrary("A") == "notA"
        assert "notA" in sig.language

    def test_mask_roundtrip(self):
        sig = Signature.create("ABCD")
        m = sig.mask(["D", "A"])
        assert m == 0b1001
        assert sig.names(m) == ("A", "D")
        assert sig.format_set(m) == "{A,D}"
        assert sig.format_set(0) == "{}"

    @pytest.mark.parametrize(
        "assumptions",
        [[], ["A", "A"], ["A B"], [f"x{i}" for i in range(21)]],
    )
    def test_rejects_bad_assumptions(self, assumptions):
        with pytest.raises(SignatureError):
            Signature.create(assumptions)

    def test_contrary_for_unknown_assumption(self):
        with pytest.raises(SignatureError):
            Signature.create("AB", {"Z": "notZ"})

    def test_twenty_assumptions_allowed(self):
        assert Signature.create([f"x{i:02d}" for i in range(20)]).size == 20


class TestRule:
    def test_parse_and_format(self):
        r = Rule.parse("~A<-B")
        assert r == Rule("~A", "B")
        assert str(r) == "~A <- B"

    @pytest.mark.parametrize("text", ["A", "<- B", "A <-", "A -> B"])
    def test_parse_errors(self, text):
        with pytest.raises(ValueError):
            Rule.parse(text)


class TestValidation:
    def test_lenient_accepts_self_rules(self):
        f = fw("AB", "~A <- A", "B <- B")
        assert validate(f) == []

    def test_strict_tags(self):
        f = fw("AB", "~A <- A", "B <- B")
        tags = sorted(v.split(":")[0] for v in validate(f, strict=True))
        assert tags == ["self-attack", "self-support"]

    def test_bad_body_and_head(self):
        f = fw("AB", "~A <- ~B", "X <- A")
        tags = sorted(v.split(":")[0] for v in validate(f))
        assert tags == ["bad body", "bad head"]

    def test_build_collects_every_violation(self):
        sig = Signature.create("AB")
        with pytest.raises(ValidationError) as info:
            Framework.build(sig, [Rule("~A", "A"), Rule("~B", "B")], strict=True)
        assert len(info.value.violations) == 2


class TestReasoning:
    def test_support_chain_closure(self):
        f = fw("ABC", "B <- A", "C <- B")
        assert f.signature.format_set(closure(f, 0b001)) == "{A,B,C}"
        assert is_closed(f, 0b111)
        assert not is_closed(f, 0b011)

    def test_attack_through_support(self):
        # A supports B, and B attacks C, so A attacks C.
        f = fw("ABC", "B <- A", "~C <- B")
        assert attacks(f, 0b001, 2)
        assert not is_conflict_free(f, 0b101)

    def test_derives_contrary(self):
        f = fw("AB", "~A <- B")
        assert derives(f, 0b10, "~A")
        assert not derives(f, 0b01, "~A")
        with pytest.raises(ValueError):
            derives(f, 0, "nope")

    def test_contrary_that_is_an_assumption(self):
        # contrary(A) = B, so anything deriving B attacks A.
        f = fw("ABC", "B <- C", A="B")
        assert attacks(f, 0b100, 0)
        assert attacks(f, 0b010, 0)
        assert not attacks(f, 0b001, 0)

    def test_defence_needs_attack_on_closure(self):
        # B attacks A; B is supported by nothing but supports C.
        # Attacking C alone defends A, since Cl({B}) contains C.
        f = fw("ABCD", "~A <- B", "C <- B", "~C <- D")
        assert defends(f, 0b1000, 0)
        assert not defends(f, 0, 0)


@settings(max_examples=300, deadline=None)
@given(frameworks())
def test_closure_matches_deduction_enumeration(f):
    for s in naive.subsets(f.signature.assumptions):
        m = f.signature.mask(s)
        expected = naive.closure(f, s)
        assert f.signature.names(closure(f, m)) == tuple(sorted(expected))
        assert naive.closure_fixpoint(f, s) == expected


@settings(max_examples=300, deadline=None)
@given(frameworks())
def test_attacks_and_defence_match_definitions(f):
    sig = f.signature
    for s in naive.subsets(sig.assumptions):
        m = sig.mask(s)
        for a in sig.assumptions:
            i = sig.index(a)
            assert attacks(f, m, i) == naive.attacks(f, s, a)
            assert defends(f, m, i) == naive.defends(f, s, a)
        assert is_conflict_free(f, m) == naive.is_conflict_free(f, s)
        assert attacks_set(f, m, m) == naive.attacks_set(f, s, s)
        expected = sig.mask(a for a in sig.assumptions if naive.defends(f, s, a))
        assert defended(f, m) == expected
