"""
Line-oriented scenario language (`.dcs` files).

    # comment
    [A, B, C, T] = INITIALIZE([5, 8, 20, 8], ["A", "B", "C", "T"])
    (T, U) = THESEUS(T, delay=20)
    B = MERGE([A, B], B.label(), delay=30)
    DEATH(B, delay=10, triggers=[T])

One statement per line. Targets are optional and may be parenthesized or bracketed. An
optional `name.` qualifier before the event name is accepted and ignored.
"""

import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from src.core.errors import ScenarioParseError
from src.scenario.events import CommunityRef, EventDecl, EventKind, LabelOf, output_count


@dataclass(frozen=True)
class Ident:
    """A community identifier in an argument."""

    name: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class LabelRef:
    """`IDENT.label()`: the label of a bound community."""

    name: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


Value = Union[int, float, str, Ident, LabelRef, tuple]


@dataclass(frozen=True)
class Statement:
    """`targets = EVENT(args, key=value)`."""

    targets: tuple[str, ...]
    event: str
    args: tuple[Value, ...] = ()
    kwargs: tuple[tuple[str, Value], ...] = ()
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ScenarioScript:
    """Parsed statements, in source order."""

    statements: tuple[Statement, ...] = ()

    def __len__(self) -> int:
        return len(self.statements)


@dataclass(frozen=True)
class _Param:
    name: str
    shape: str
    required: bool = True
    aliases: tuple[str, ...] = ()
    min_items: int = 0


_COMMUNITY = "community"
_COMMUNITIES = "communities"
_INT = "int"
_INTS = "ints"
_LABEL = "label"
_LABELS = "labels"
_NODE_LISTS = "node_lists"

SIGNATURES: dict[EventKind, tuple[_Param, ...]] = {
    EventKind.ASSIGN: (
        _Param("before", _COMMUNITIES),
        _Param("after_nodes", _NODE_LISTS),
        _Param("after_labels", _LABELS),
    ),
    EventKind.INITIALIZE: (_Param("sizes", _INTS, min_items=1), _Param("labels", _LABELS)),
    EventKind.BIRTH: (_Param("nb_nodes", _INT), _Param("label", _LABEL, aliases=("name",))),
    EventKind.DEATH: (_Param("community", _COMMUNITY),),
    EventKind.MERGE: (
        _Param("communities", _COMMUNITIES, min_items=2),
        _Param("label", _LABEL, required=False, aliases=("name",)),
    ),
    EventKind.SPLIT: (
        _Param("community", _COMMUNITY),
        _Param("labels", _LABELS, min_items=1),
        _Param("sizes", _INTS, min_items=1),
    ),
    EventKind.THESEUS: (_Param("community", _COMMUNITY), _Param("nb_nodes", _INT, required=False)),
    EventKind.RESURGENCE: (_Param("community", _COMMUNITY), _Param("gap", _INT, required=False)),
    EventKind.CONTINUE: (_Param("community", _COMMUNITY), _Param("steps", _INT)),
    EventKind.GROW_ITERATIVE: (_Param("community", _COMMUNITY), _Param("nb_nodes", _INT)),
    EventKind.SHRINK_ITERATIVE: (_Param("community", _COMMUNITY), _Param("nb_nodes", _INT)),
    EventKind.MIGRATE_ITERATIVE: (
        _Param("source", _COMMUNITY),
        _Param("destination", _COMMUNITY),
        _Param("nb_nodes", _INT),
    ),
}

_SCHEDULING = ("delay", "triggers")

_TOKEN_RE = re.compile(
    r"""
    (?P<space>[ \t\r]+)
  | (?P<comment>\#.*)
  | (?P<number>-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()\[\],=.])
    """,
    re.VERBOSE | re.ASCII,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    column: int


def _tokenize(line: str, lineno: int) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(line):
        match = _TOKEN_RE.match(line, pos)
        if match is None:
            if line[pos] == '"':
                raise ScenarioParseError("Unterminated string literal.", lineno, pos + 1)
            raise ScenarioParseError(f"Unexpected character {line[pos]!r}.", lineno, pos + 1)
        kind = match.lastgroup
        if kind not in ("space", "comment"):
            tokens.append(_Token(kind, match.group(), pos + 1))
        pos = match.end()
    return tokens


class _LineParser:
    """Recursive-descent parser over the tokens of one line."""

    def __init__(self, tokens: list[_Token], lineno: int, width: int):
        self.tokens = tokens
        self.lineno = lineno
        self.width = width
        self.pos = 0

    def error(self, message: str, token: Optional[_Token] = None):
        token = token if token is not None else self.peek()
        column = token.column if token is not None else self.width + 1
        raise ScenarioParseError(message, self.lineno, column)

    def peek(self, offset: int = 0) -> Optional[_Token]:
        index = self.pos + offset
        return self.tokens[index] if index < len(self.tokens) else None

    def next(self) -> _Token:
        token = self.peek()
        if token is None:
            self.error("Unexpected end of line.")
        self.pos += 1
        return token

    def at(self, text: str, offset: int = 0) -> bool:
        token = self.peek(offset)
        return token is not None and token.kind == "punct" and token.text == text

    def expect(self, text: str) -> _Token:
        token = self.peek()
        if token is None or token.kind != "punct" or token.text != text:
            self.error(f"Expected '{text}'.")
        return self.next()

    def ident(self) -> _Token:
        token = self.peek()
        if token is None or token.kind != "ident":
            self.error("Expected an identifier.")
        return self.next()

    def statement(self) -> Statement:
        targets: tuple[str, ...] = ()
        if self._has_targets():
            targets = self.targets()
            self.expect("=")
        name = self.ident()
        if self.at("."):
            self.next()
            name = self.ident()
        if name.text not in EventKind.__members__:
            self.error(f"Unknown event '{name.text}'.", name)
        self.expect("(")
        args, kwargs = self.arguments()
        self.expect(")")
        if self.peek() is not None:
            self.error("Unexpected token after the statement.")
        return Statement(targets, name.text, tuple(args), tuple(kwargs), self.lineno)

    def _has_targets(self) -> bool:
        if self.at("(") or self.at("["):
            return True
        return self.peek() is not None and self.peek().kind == "ident" and (
            self.at(",", 1) or self.at("=", 1)
        )

    def targets(self) -> tuple[str, ...]:
        closing = None
        if self.at("(") or self.at("["):
            closing = ")" if self.next().text == "(" else "]"
        names = [self.ident().text]
        while self.at(","):
            self.next()
            names.append(self.ident().text)
        if closing:
            self.expect(closing)
        return tuple(names)

    def arguments(self) -> tuple[list[Value], list[tuple[str, Value]]]:
        args: list[Value] = []
        kwargs: list[tuple[str, Value]] = []
        if self.at(")"):
            return args, kwargs
        while True:
            token = self.peek()
            if token is not None and token.kind == "ident" and self.at("=", 1):
                self.next()
                self.next()
                if any(key == token.text for key, _ in kwargs):
                    self.error(f"Keyword '{token.text}' given twice.", token)
                kwargs.append((token.text, self.value()))
            else:
                if kwargs:
                    self.error("Positional argument after keyword arguments.")
                args.append(self.value())
            if not self.at(","):
                return args, kwargs
            self.next()

    def value(self) -> Value:
        token = self.peek()
        if token is None:
            self.error("Expected a value.")
        if token.kind == "number":
            self.next()
            try:
                return int(token.text)
            except ValueError:
                return float(token.text)
        if token.kind == "string":
            self.next()
            try:
                return json.loads(token.text)
            except json.JSONDecodeError:
                self.error("Malformed string literal.", token)
        if token.kind == "ident":
            self.next()
            if self.at("."):
                self.next()
                method = self.ident()
                if method.text != "label":
                    self.error(f"Unknown method '{method.text}'.", method)
                self.expect("(")
                self.expect(")")
                return LabelRef(token.text, self.lineno, token.column)
            return Ident(token.text, self.lineno, token.column)
        if self.at("["):
            self.next()
            items: list[Value] = []
            if not self.at("]"):
                items.append(self.value())
                while self.at(","):
                    self.next()
                    items.append(self.value())
            self.expect("]")
            return tuple(items)
        self.error(f"Unexpected '{token.text}'.", token)
        raise AssertionError("unreachable")


def _where(value, statement: Statement) -> tuple[int, int]:
    if isinstance(value, (Ident, LabelRef)) and value.line:
        return value.line, value.column
    return statement.line, 1


def _check_shape(param: _Param, value: Value, statement: Statement):
    """Raise if `value` cannot fill `param`."""

    def fail(message):
        raise ScenarioParseError(
            f"{statement.event}: '{param.name}' {message}.", *_where(value, statement)
        )

    def is_int(v):
        return isinstance(v, int) and not isinstance(v, bool)

    def is_label(v):
        return (isinstance(v, str) and v.split() == [v]) or isinstance(v, LabelRef)

    match param.shape:
        case "community":
            if not isinstance(value, Ident):
                fail("must be a community identifier")
        case "communities":
            if not isinstance(value, tuple) or not all(isinstance(v, Ident) for v in value):
                fail("must be a list of communities")
        case "int":
            if not is_int(value) or value < 0:
                fail("must be a non-negative integer")
        case "ints":
            if not isinstance(value, tuple) or not all(is_int(v) for v in value):
                fail("must be a list of integers")
        case "label":
            if not is_label(value):
                fail('must be a non-empty "string" without whitespace or IDENT.label()')
        case "labels":
            if not isinstance(value, tuple) or not all(is_label(v) for v in value):
                fail("must be a list of labels without whitespace")
        case "node_lists":
            if not isinstance(value, tuple) or not all(
                isinstance(group, tuple) and all(is_int(n) and n >= 0 for n in group)
                for group in value
            ):
                fail("must be a list of node-id lists")
    if isinstance(value, tuple) and len(value) < param.min_items:
        fail(f"needs at least {param.min_items} items")


def _arguments(statement: Statement) -> dict[str, Value]:
    """Map positional and keyword arguments to parameter names, checking arity and shapes."""
    kind = EventKind[statement.event]
    signature = SIGNATURES[kind]
    if len(statement.args) > len(signature):
        raise ScenarioParseError(
            f"{statement.event} takes at most {len(signature)} positional arguments, "
            f"got {len(statement.args)}.",
            statement.line,
            1,
        )
    values: dict[str, Value] = {p.name: v for p, v in zip(signature, statement.args)}
    names = {alias: p.name for p in signature for alias in (p.name, *p.aliases)}
    for key, value in statement.kwargs:
        if key in _SCHEDULING:
            continue
        if key not in names:
            raise ScenarioParseError(
                f"{statement.event} has no parameter '{key}'.", *_where(value, statement)
            )
        if names[key] in values:
            raise ScenarioParseError(
                f"{statement.event}: '{names[key]}' given twice.", *_where(value, statement)
            )
        values[names[key]] = value
    for param in signature:
        if param.name not in values:
            if param.required:
                raise ScenarioParseError(
                    f"{statement.event} misses argument '{param.name}'.", statement.line, 1
                )
            continue
        _check_shape(param, values[param.name], statement)
    kwargs = dict(statement.kwargs)
    if "delay" in kwargs:
        delay = kwargs["delay"]
        if not isinstance(delay, int) or isinstance(delay, bool) or delay < 0:
            raise ScenarioParseError("delay must be a non-negative integer.", statement.line, 1)
    if "triggers" in kwargs:
        triggers = kwargs["triggers"]
        if not isinstance(triggers, tuple) or not all(isinstance(v, Ident) for v in triggers):
            raise ScenarioParseError("triggers must be a list of identifiers.", statement.line, 1)
    return values


def _identifiers(value: Value) -> list[Union[Ident, LabelRef]]:
    if isinstance(value, (Ident, LabelRef)):
        return [value]
    if isinstance(value, tuple):
        return [i for v in value for i in _identifiers(v)]
    return []


def parse(text: str) -> ScenarioScript:
    """
    Parse scenario source text.

    Raises:
        ScenarioParseError: On unknown events, unbound identifiers, arity mismatches or
            malformed literals, with the line and column of the problem.
    """
    statements = []
    bound: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(line, lineno)
        if not tokens:
            continue
        statement = _LineParser(tokens, lineno, len(line)).statement()
        _arguments(statement)
        _check_bound(statement, bound)
        bound.update(statement.targets)
        statements.append(statement)
    return ScenarioScript(tuple(statements))


def _check_bound(statement: Statement, bound: set[str]):
    values = list(statement.args) + [v for _, v in statement.kwargs]
    for ident in (i for v in values for i in _identifiers(v)):
        if ident.name not in bound:
            raise ScenarioParseError(
                f"Identifier '{ident.name}' is used before being bound.",
                *_where(ident, statement),
            )


def _convert(value: Value, env: dict[str, CommunityRef], statement: Statement):
    if isinstance(value, Ident):
        if value.name not in env:
            raise ScenarioParseError(
                f"Identifier '{value.name}' is used before being bound.", *_where(value, statement)
            )
        return env[value.name]
    if isinstance(value, LabelRef):
        if value.name not in env:
            raise ScenarioParseError(
                f"Identifier '{value.name}' is used before being bound.", *_where(value, statement)
            )
        return LabelOf(env[value.name])
    if isinstance(value, tuple):
        return [_convert(v, env, statement) for v in value]
    return value


def bind_and_validate(script: ScenarioScript) -> list[EventDecl]:
    """
    Resolve identifiers to community references and build the declarations.

    Identifiers may be rebound; each statement sees the latest binding, and its arguments
    are resolved before its own targets are bound.
    """
    env: dict[str, CommunityRef] = {}
    decls: list[EventDecl] = []
    for index, statement in enumerate(script.statements):
        if statement.event not in EventKind.__members__:
            raise ScenarioParseError(f"Unknown event '{statement.event}'.", statement.line, 1)
        values = _arguments(statement)
        params = {name: _convert(v, env, statement) for name, v in values.items()}
        kind = EventKind[statement.event]
        if kind is EventKind.ASSIGN:
            params["after_nodes"] = [list(group) for group in params["after_nodes"]]
        kwargs = dict(statement.kwargs)
        triggers = None
        if "triggers" in kwargs:
            triggers = tuple(_convert(v, env, statement) for v in kwargs["triggers"])
        decl = EventDecl(kind, params, triggers, kwargs.get("delay", 0))

        outputs = output_count(decl)
        if statement.targets and len(statement.targets) != outputs:
            raise ScenarioParseError(
                f"{statement.event} yields {outputs} communities but "
                f"{len(statement.targets)} targets are given.",
                statement.line,
                1,
            )
        for position, name in enumerate(statement.targets):
            env[name] = CommunityRef(index, position)
        decls.append(decl)
    return decls


def _format_value(value: Value) -> str:
    if isinstance(value, Ident):
        return value.name
    if isinstance(value, LabelRef):
        return f"{value.name}.label()"
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, tuple):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    return repr(value)


def format_script(script: ScenarioScript) -> str:
    """Pretty-print a script; parsing the result gives back an equal script."""
    lines = []
    for statement in script.statements:
        arguments = [_format_value(v) for v in statement.args]
        arguments += [f"{key}={_format_value(v)}" for key, v in statement.kwargs]
        call = f"{statement.event}({', '.join(arguments)})"
        if statement.targets:
            call = f"({', '.join(statement.targets)}) = {call}"
        lines.append(call)
    return "\n".join(lines) + ("\n" if lines else "")


def load_scenario(path: str | os.PathLike) -> list[EventDecl]:
    """Parse and bind a `.dcs` file."""
    return bind_and_validate(parse(Path(path).read_text(encoding="utf-8")))
