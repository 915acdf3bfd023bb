"""Command-line interface and the JSON document format.

A document is a JSON object::

    {
      "assumptions": ["A", "B", "C"],
      "contraries": {"A": "notA"},          # optional, defaults to "~X"
      "rules": [["~A", "B"], ["A", "C"]]    # a single framework
    }

or, for a profile, ``"agents": [{"rules": [...]}, ...]`` instead of
``"rules"``. A one-agent ``agents`` list also yields a single framework.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .aggregation import Profile, aggregate, parse_spec
from .core import Framework, Rule, Signature, SignatureError, ValidationError
from .preservation import Verdict, check_preservation, parse_property
from .semantics import EnumerationLimitError, Semantics, enumerate_extensions
from .verify import run_suite

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_VIOLATED = 2
EXIT_NOT_APPLICABLE = 3
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NOINPUT = 66

_TOP_KEYS = {"assumptions", "contraries", "rules", "agents"}
_AGENT_KEYS = {"rules"}


class DocumentError(ValueError):
    """Malformed document text or structure."""


class UsageError(Exception):
    pass


def _parse_rules(raw: Any, where: str) -> list[Rule]:
    if not isinstance(raw, list):
        raise DocumentError(f"{where}: 'rules' must be a list of [head, body] pairs")
    rules = []
    for k, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, str) for x in pair)
        ):
            raise DocumentError(f"{where}: rule {k} must be a [head, body] pair of strings, got {pair!r}")
        rules.append(Rule(pair[0], pair[1]))
    return rules


def parse_document(data: bytes | str, strict: bool = False) -> Framework | Profile:
    """Parse a framework or profile document.

    Raises :class:`DocumentError` for malformed text (with line and column)
    or structure, and :class:`ValidationError` for ill-formed rules.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentError(f"not UTF-8: byte {exc.start}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("the document must be a JSON object")
    unknown = sorted(set(doc) - _TOP_KEYS)
    if unknown:
        raise DocumentError(f"unknown keys: {unknown}")
    assumptions = doc.get("assumptions")
    if not isinstance(assumptions, list) or not all(isinstance(a, str) for a in assumptions):
        raise DocumentError("'assumptions' must be a list of strings")
    if len(set(assumptions)) != len(assumptions):
        raise DocumentError("'assumptions' contains duplicates")
    contraries = doc.get("contraries", {})
    if not isinstance(contraries, dict) or not all(isinstance(v, str) for v in contraries.values()):
        raise DocumentError("'contraries' must map assumption names to strings")
    try:
        signature = Signature.create(assumptions, contraries)
    except SignatureError as exc:
        raise ValidationError([f"signature: {exc}"]) from None

    if ("rules" in doc) == ("agents" in doc):
        raise DocumentError("exactly one of 'rules' and 'agents' must be present")
    if "rules" in doc:
        return Framework.build(signature, _parse_rules(doc["rules"], "framework"), strict=strict)

    agents = doc["agents"]
    if not isinstance(agents, list):
        raise DocumentError("'agents' must be a list")
    agent_rules = []
    for i, agent in enumerate(agents, start=1):
        if not isinstance(agent, dict):
            raise DocumentError(f"agent {i}: must be an object")
        bad = sorted(set(agent) - _AGENT_KEYS)
        if bad:
            raise DocumentError(f"agent {i}: unknown keys: {bad}")
        agent_rules.append(_parse_rules(agent.get("rules", []), f"agent {i}"))
    if len(agent_rules) == 1:
        return Framework.build(signature, agent_rules[0], strict=strict)
    return Profile.build(signature, agent_rules, strict=strict)


def _rule_pairs(rules) -> list[list[str]]:
    return [[r.head, r.body] for r in sorted(rules)]


def to_document(obj: Framework | Profile) -> dict[str, Any]:
    sig = obj.signature
    doc: dict[str, Any] = {
        "assumptions": list(sig.assumptions),
        "contraries": dict(zip(sig.assumptions, sig.contraries)),
    }
    if isinstance(obj, Framework):
        doc["rules"] = _rule_pairs(obj.rules)
    else:
        doc["agents"] = [{"rules": _rule_pairs(r)} for r in obj.agent_rules]
    return doc


def serialize_document(obj: Framework | Profile) -> str:
    """Canonical text: sorted assumptions and rules, two-space indentation."""
    return json.dumps(to_document(obj), indent=2) + "\n"


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bipolar-aba", description="Aggregate and reason over bipolar ABA frameworks.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--strict", action="store_true", help="reject self-attacks and self-supports")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("semantics", parents=[common], help="enumerate extensions")
    p.add_argument("file")
    p.add_argument("--semantics", required=True, choices=[s.value for s in Semantics])
    p.add_argument("--agent", type=int, help="pick one agent (1-based) from a profile")

    p = sub.add_parser("aggregate", parents=[common], help="aggregate a profile")
    p.add_argument("file")
    p.add_argument("--rule", required=True)

    p = sub.add_parser("preserve", parents=[common], help="check preservation of a property")
    p.add_argument("file")
    p.add_argument("--rule", required=True)
    p.add_argument("--property", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the built-in scenarios and theorem checks")
    p.add_argument("--suite", choices=("paper", "theorems", "all"), default="paper")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10_000)
    return parser


def _load(path: str, strict: bool) -> Framework | Profile:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise FileNotFoundError(f"{path}: {exc.strerror}") from None
    try:
        return parse_document(data, strict=strict)
    except DocumentError as exc:
        raise DocumentError(f"{path}: {exc}") from None


def _require_profile(obj: Framework | Profile) -> Profile:
    if not isinstance(obj, Profile):
        raise UsageError("this command needs a profile document with at least two agents")
    return obj


def _emit(args, payload: dict[str, Any], lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def cmd_semantics(args) -> int:
    obj = _load(args.file, args.strict)
    if isinstance(obj, Profile):
        if args.agent is None:
            raise UsageError("the document is a profile; pick an agent with --agent")
        if not 1 <= args.agent <= obj.n:
            raise UsageError(f"--agent must lie in 1..{obj.n}")
        obj = obj.framework(args.agent)
    report = enumerate_extensions(obj, args.semantics)
    named = report.named(obj)
    payload = {
        "semantics": report.semantics.value,
        "exists": report.exists,
        "extensions": [list(e) for e in named],
    }
    lines = [f"semantics   {report.semantics.value}", f"exists      {'yes' if report.exists else 'no'}"]
    lines += [f"extension   {obj.signature.format_set(m)}" for m in report.extensions]
    _emit(args, payload, lines)
    return EXIT_OK


def _spec(text: str):
    try:
        return parse_spec(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_aggregate(args) -> int:
    profile = _require_profile(_load(args.file, args.strict))
    spec = _spec(args.rule)
    try:
        fw = aggregate(profile, spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"rule": str(spec), "rules": _rule_pairs(fw.rules)}
    _emit(args, payload, [str(r) for r in fw.sorted_rules])
    return EXIT_OK


def cmd_preserve(args) -> int:
    profile = _require_profile(_load(args.file, args.strict))
    spec = _spec(args.rule)
    try:
        prop = parse_property(args.property)
        verdict = check_preservation(profile, spec, prop)
    except KeyError as exc:
        raise UsageError(f"property {args.property!r}: {exc.args[0]}") from None
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from None
    payload = {
        "rule": str(spec),
        "property": str(prop),
        "verdict": verdict.verdict.value,
        "witness": verdict.witness,
    }
    _emit(args, payload, [str(verdict)])
    return {
        Verdict.PRESERVED: EXIT_OK,
        Verdict.VIOLATED: EXIT_VIOLATED,
        Verdict.NOT_APPLICABLE: EXIT_NOT_APPLICABLE,
    }[verdict.verdict]


def _show(value: Any) -> str:
    return json.dumps(value) if not isinstance(value, str) else value


def cmd_verify(args) -> int:
    if args.budget < 0:
        raise UsageError("--budget must be non-negative")
    result = run_suite(args.suite, seed=args.seed, budget=args.budget)
    lines: list[str] = []
    scenarios = []
    for scenario, results in result.scenarios:
        checks = []
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status}  {scenario.id:<4} {r.label}"
            if not r.passed:
                line += f"  expected {_show(r.expected)}, got {_show(r.actual)}"
            if r.claimed is not None:
                line += f"  (claimed value {_show(r.claimed)})"
            lines.append(line)
            checks.append(
                {"label": r.label, "passed": r.passed, "expected": r.expected, "actual": r.actual, "claimed": r.claimed}
            )
        scenarios.append({"id": scenario.id, "title": scenario.title, "checks": checks})
    theorems = []
    for t in result.theorems:
        status = "PASS" if t.ok else "FAIL"
        lines.append(f"{status}  {t.theorem}  profiles={t.profiles_checked} violations={len(t.violations)}")
        for v in t.violations[:3]:
            lines.append(f"      {v}")
        theorems.append(
            {
                "id": t.theorem,
                "profiles_checked": t.profiles_checked,
                "violations": [str(v) for v in t.violations],
            }
        )
    lines.append(f"failures: {result.failures}")
    _emit(args, {"scenarios": scenarios, "theorems": theorems, "failures": result.failures}, lines)
    return EXIT_OK if result.failures == 0 else EXIT_FAILURES


COMMANDS = {
    "semantics": cmd_semantics,
    "aggregate": cmd_aggregate,
    "preserve": cmd_preserve,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DocumentError, ValidationError, EnumerationLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOINPUT


if __name__ == "__main__":
    sys.exit(main())
