"""Tests for the scenario language."""

from pathlib import Path

import pytest

from src.core.errors import ScenarioParseError
from src.scenario.dsl import (
    Ident,
    LabelRef,
    bind_and_validate,
    format_script,
    load_scenario,
    parse,
)
from src.scenario.events import CommunityRef, EventKind, LabelOf


@pytest.fixture(name="script_text")
def fixture_script_text() -> str:
    """A script using every argument form."""
    return "\n".join(
        [
            "# two communities",
            '[A, B] = INITIALIZE([3, 4], ["A", "B"])',
            "",
            "M = MERGE([A, B], B.label(), delay=2)",
            '(X, Y) = SPLIT(M, ["X", "Y"], [5, 2], triggers=[M])',
            "scenario.DEATH(Y, delay=1)",
        ]
    )


def test_parse_statements(script_text: str):
    """Comments and blank lines are skipped; targets, qualifiers and kwargs are read."""
    script = parse(script_text)
    assert len(script) == 4
    first, second, third, fourth = script.statements
    assert first.targets == ("A", "B")
    assert first.args == ((3, 4), ("A", "B"))
    assert second.args == ((Ident("A"), Ident("B")), LabelRef("B"))
    assert second.kwargs == (("delay", 2),)
    assert third.targets == ("X", "Y")
    assert fourth.event == "DEATH"
    assert fourth.targets == ()
    assert second.line == 4


def test_bind_resolves_references(script_text: str):
    """Identifiers become references to the outputs of earlier declarations."""
    decls = bind_and_validate(parse(script_text))
    assert [d.kind for d in decls] == [
        EventKind.INITIALIZE,
        EventKind.MERGE,
        EventKind.SPLIT,
        EventKind.DEATH,
    ]
    assert decls[1].params["communities"] == [CommunityRef(0, 0), CommunityRef(0, 1)]
    assert decls[1].params["label"] == LabelOf(CommunityRef(0, 1))
    assert decls[1].delay == 2
    assert decls[2].triggers == (CommunityRef(1, 0),)
    assert decls[3].params["community"] == CommunityRef(2, 1)


def test_rebinding_uses_latest_binding():
    """A rebound name refers to its most recent definition."""
    decls = bind_and_validate(
        parse('[C] = INITIALIZE([6], ["C"])\n(C, D) = SPLIT(C, ["C", "D"], [4, 2])\nDEATH(C)')
    )
    assert decls[2].params["community"] == CommunityRef(1, 0)


def test_birth_name_alias_and_optional_args():
    """BIRTH takes its label as `name=`; MERGE label and THESEUS size are optional."""
    decls = bind_and_validate(
        parse(
            'R = BIRTH(5, name="R")\n'
            'S = BIRTH(3, "S")\n'
            "M = MERGE([R, S])\n"
            "(T, U) = THESEUS(M)"
        )
    )
    assert decls[0].params == {"nb_nodes": 5, "label": "R"}
    assert decls[2].params.get("label") is None
    assert "nb_nodes" not in decls[3].params


def test_assign_with_node_lists():
    """ASSIGN takes explicit node-id lists."""
    decls = bind_and_validate(
        parse('[A, B] = INITIALIZE([2, 2], ["A", "B"])\n(C, D) = ASSIGN([A, B], [[0, 1, 2], [3]], ["C", "D"])')
    )
    assert decls[1].params["after_nodes"] == [[0, 1, 2], [3]]


@pytest.mark.parametrize(
    ("text", "line", "column"),
    [
        ("X = FOO(3)", 1, 5),
        ('A = BIRTH(3, "A")\nDEATH(B)', 2, 7),
        ('A = BIRTH("3", "A")', 1, 1),
        ("A = BIRTH(3)", 1, 1),
        ('A = BIRTH(3, "A", 4)', 1, 1),
        ('A = BIRTH(3, "A"', 1, 17),
        ('A = BIRTH(3, "A) ', 1, 14),
        ('A = BIRTH(3, "A", delay=-1)', 1, 1),
        ('A = BIRTH(3, "A") extra', 1, 19),
        ("[A] = MERGE([A], \"A\")", 1, 1),
    ],
)
def test_parse_errors_locate_problem(text: str, line: int, column: int):
    """Every error names the line and column of the problem."""
    with pytest.raises(ScenarioParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"{line}:{column}: ")


@pytest.mark.parametrize(
    "text",
    [
        'R = BIRTH(3, "my com")',
        '[A, B] = INITIALIZE([2, 2], ["A", "B\\t1"])',
        'A = BIRTH(3, " ")',
    ],
)
def test_labels_with_whitespace_rejected(text: str):
    """Labels are single tokens so that partition files can hold them."""
    with pytest.raises(ScenarioParseError, match="without whitespace") as info:
        parse(text)
    assert info.value.line == 1


def test_numbers_are_ascii_digits():
    """Digits from other scripts are not numbers."""
    with pytest.raises(ScenarioParseError, match="Unexpected character") as info:
        parse('A = BIRTH(٣, "A")')
    assert (info.value.line, info.value.column) == (1, 11)


def test_target_count_must_match_outputs():
    """A statement binds exactly the communities its event yields."""
    with pytest.raises(ScenarioParseError, match="yields 2"):
        bind_and_validate(parse('[A] = INITIALIZE([2, 2], ["A", "B"])'))


def test_format_round_trip(script_text: str):
    """Printing a script and parsing it back gives an equal script."""
    script = parse(script_text)
    assert parse(format_script(script)) == script


def test_load_scenario(tmp_path: Path):
    """Scenario files are parsed and bound."""
    path = tmp_path / "static.dcs"
    path.write_text('[A, B] = INITIALIZE([3, 3], ["A", "B"])\n', encoding="utf-8")
    (decl,) = load_scenario(path)
    assert decl.params == {"sizes": [3, 3], "labels": ["A", "B"]}
