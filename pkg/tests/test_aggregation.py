from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from bipolar_aba.aggregation import (
    NamedQuota,
    Oligarchy,
    Profile,
    Quota,
    aggregate,
    aggregate_rules,
    parse_spec,
    resolve_quota,
)
from bipolar_aba.core import Rule, Signature, ValidationError

from strategies import profiles


def rules(*texts):
    return frozenset(Rule.parse(t) for t in texts)


@pytest.fixture
def quota_profile():
    sig = Signature.create("ABCD")
    return Profile(sig, (rules("~A <- B"), rules("A <- C"), rules("~A <- B", "A <- D")))


@pytest.mark.parametrize(
    "kind,n,q",
    [
        ("nomination", 5, 1),
        ("weak-majority", 3, 1),
        ("weak-majority", 4, 2),
        ("strict-majority", 3, 2),
        ("strict-majority", 4, 2),
        ("strict-majority", 5, 3),
        ("unanimity", 4, 4),
    ],
)
def test_resolve_quota(kind, n, q):
    assert resolve_quota(kind, n) == q


def test_resolve_quota_needs_two_agents():
    with pytest.raises(ValueError):
        resolve_quota("unanimity", 1)


def test_profile_needs_two_agents():
    with pytest.raises(ValidationError):
        Profile(Signature.create("AB"), (frozenset(),))


def test_profile_build_labels_agents():
    sig = Signature.create("AB")
    with pytest.raises(ValidationError) as info:
        Profile.build(sig, [rules("~A <- B"), rules("~B <- B")], strict=True)
    assert info.value.violations == ["agent 2: self-attack: ~B <- B"]


def test_framework_is_one_based(quota_profile):
    assert quota_profile.framework(1).rules == rules("~A <- B")
    assert quota_profile.framework(3).rules == rules("~A <- B", "A <- D")


def test_named_quotas(quota_profile):
    union = rules("~A <- B", "A <- C", "A <- D")
    assert aggregate_rules(quota_profile, NamedQuota("nomination")) == union
    assert aggregate_rules(quota_profile, NamedQuota("weak-majority")) == union
    assert aggregate_rules(quota_profile, NamedQuota("strict-majority")) == rules("~A <- B")
    assert aggregate_rules(quota_profile, NamedQuota("unanimity")) == frozenset()


def test_oligarchies(quota_profile):
    assert aggregate_rules(quota_profile, Oligarchy(frozenset({1, 3}))) == rules("~A <- B")
    assert aggregate_rules(quota_profile, Oligarchy(frozenset({2}))) == rules("A <- C")


def test_aggregate_keeps_signature(quota_profile):
    assert aggregate(quota_profile, Quota(1)).signature is quota_profile.signature


@pytest.mark.parametrize("spec", [Quota(0), Quota(4), Oligarchy(frozenset({0})), Oligarchy(frozenset({4}))])
def test_out_of_range_specs(quota_profile, spec):
    with pytest.raises(ValueError):
        aggregate_rules(quota_profile, spec)


@pytest.mark.parametrize(
    "text,spec",
    [
        ("quota:2", Quota(2)),
        ("nomination", NamedQuota("nomination")),
        ("unanimity", NamedQuota("unanimity")),
        ("oligarchy:3,1", Oligarchy(frozenset({1, 3}))),
        ("dictator:2", Oligarchy(frozenset({2}))),
    ],
)
def test_parse_spec(text, spec):
    assert parse_spec(text) == spec


def test_spec_strings_round_trip():
    for text in ["quota:2", "strict-majority", "oligarchy:1,3", "dictator:2"]:
        assert str(parse_spec(text)) == text


@pytest.mark.parametrize("text", ["quota", "quota:x", "oligarchy:", "majority", "dictator:1,x"])
def test_parse_spec_errors(text):
    with pytest.raises(ValueError):
        parse_spec(text)


@settings(max_examples=200, deadline=None)
@given(profiles(max_size=3), st.data())
def test_quota_counts_agents(profile, data):
    q = data.draw(st.integers(1, profile.n))
    counts = Counter(r for agent in profile.agent_rules for r in agent)
    expected = frozenset(r for r, c in counts.items() if c >= q)
    assert aggregate_rules(profile, Quota(q)) == expected


@settings(max_examples=200, deadline=None)
@given(profiles(max_size=3))
def test_quota_rules_shrink_as_q_grows(profile):
    previous = profile.universe
    assert aggregate_rules(profile, Quota(1)) == previous
    for q in range(2, profile.n + 1):
        current = aggregate_rules(profile, Quota(q))
        assert current <= previous
        previous = current
    assert previous == frozenset.intersection(*profile.agent_rules)


@settings(max_examples=200, deadline=None)
@given(profiles(max_size=3))
def test_dictator_returns_own_rules_and_full_veto_is_unanimity(profile):
    for i in range(1, profile.n + 1):
        assert aggregate_rules(profile, Oligarchy(frozenset({i}))) == profile.agent_rules[i - 1]
    everyone = Oligarchy(frozenset(range(1, profile.n + 1)))
    assert aggregate_rules(profile, everyone) == aggregate_rules(profile, NamedQuota("unanimity"))
