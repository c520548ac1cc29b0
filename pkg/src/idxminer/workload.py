"""SQL workload parsing and indexable-attribute extraction.

A workload file is UTF-8 text holding SQL statements separated by
semicolons. ``--`` line comments and ``/* */`` block comments may appear
anywhere; they are stripped while splitting, so a statement's stored text
is comment-free.

The statement grammar is a deliberate subset of SQL aimed at
decision-support query logs:

* single-block ``SELECT`` with comma joins and ``INNER``/``LEFT JOIN .. ON``,
  ``WHERE`` (AND/OR/NOT, comparisons, ``BETWEEN``/``IN``/``LIKE``,
  ``IS [NOT] NULL``), ``GROUP BY``, ``HAVING``, ``ORDER BY``;
* ``UPDATE .. SET .. WHERE`` and ``DELETE FROM .. WHERE``;
* ``INSERT`` (body accepted opaquely, it never yields items);
* ``CREATE INDEX name ON table (col, ..)`` so emitted DDL re-parses.

Subqueries are parsed as nested blocks wherever an expression or a FROM
source may appear, and each nested block is harvested with its own scope.
Statements outside the subset are kept (kind ``OTHER``, per-statement
diagnostic) so workload counts stay stable.

A schema file declares tables in blank-line-separated stanzas; ``#``
starts a comment line::

    TABLE customer
        c_custkey
        c_name

    TABLE orders
        o_orderkey

Column lines may be indented or not. All names are canonicalized the same
way identifiers in queries are: lower-cased, with quoted identifiers kept
verbatim when they contain characters outside the identifier alphabet.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Union

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def canonical_identifier(text: str, quoted: bool = False) -> str:
    """Canonical form of an identifier: lower case, quoted oddities verbatim."""
    if quoted and not _IDENT_RE.match(text):
        return text
    return text.lower()


class SchemaError(ValueError):
    """Raised when a schema file cannot be parsed."""


class SqlParseError(ValueError):
    """Raised when a statement falls outside the supported SQL subset."""

    def __init__(self, message: str, pos: int = -1):
        super().__init__(message)
        self.pos = pos


@dataclass(frozen=True)
class SchemaMap:
    """Table name to ordered column list, both canonicalized."""

    tables: dict[str, tuple[str, ...]]

    def has_table(self, table: str) -> bool:
        return table in self.tables

    def columns_of(self, table: str) -> tuple[str, ...]:
        return self.tables.get(table, ())

    def has_column(self, table: str, column: str) -> bool:
        return column in self.tables.get(table, ())


def parse_schema(schema_text: str) -> SchemaMap:
    """Parse the stanza-based schema format described in the module docstring."""
    tables: dict[str, list[str]] = {}
    current: Optional[str] = None
    for lineno, raw in enumerate(schema_text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            current = None
            continue
        words = line.split()
        if words[0].upper() == "TABLE":
            if len(words) != 2:
                raise SchemaError(f"line {lineno}: expected 'TABLE <name>'")
            name = canonical_identifier(words[1])
            if name in tables:
                raise SchemaError(f"line {lineno}: duplicate table '{name}'")
            tables[name] = []
            current = name
            continue
        if current is None:
            raise SchemaError(f"line {lineno}: column outside a TABLE stanza")
        if len(words) != 1:
            raise SchemaError(f"line {lineno}: expected a single column name")
        column = canonical_identifier(words[0])
        if column in tables[current]:
            raise SchemaError(
                f"line {lineno}: duplicate column '{column}' in table '{current}'"
            )
        tables[current].append(column)
    return SchemaMap({t: tuple(cols) for t, cols in tables.items()})


# ---------------------------------------------------------------------------
# Statement splitting
# ---------------------------------------------------------------------------


def _scan_string(text: str, start: int) -> int:
    """Return the index just past a quoted literal, honoring doubled quotes."""
    quote = text[start]
    i = start + 1
    n = len(text)
    while i < n:
        if text[i] == quote:
            if i + 1 < n and text[i + 1] == quote:
                i += 2
                continue
            return i + 1
        i += 1
    return n


def split_statements(text: str) -> list[str]:
    """Split workload text on semicolons, stripping comments.

    Comments are replaced by a single space so token boundaries survive;
    semicolons inside string literals or quoted identifiers do not split.
    Empty statements (including comment-only ones) are dropped.
    """
    statements: list[str] = []
    buf: list[str] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "-" and text.startswith("--", i):
            end = text.find("\n", i)
            i = n if end < 0 else end
            buf.append(" ")
            continue
        if ch == "/" and text.startswith("/*", i):
            end = text.find("*/", i + 2)
            i = n if end < 0 else end + 2
            buf.append(" ")
            continue
        if ch in ("'", '"'):
            end = _scan_string(text, i)
            buf.append(text[i:end])
            i = end
            continue
        if ch == ";":
            statements.append("".join(buf))
            buf = []
            i += 1
            continue
        buf.append(ch)
        i += 1
    statements.append("".join(buf))
    return [s.strip() for s in statements if s.strip()]


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_TWO_CHAR_OPS = ("<=", ">=", "<>", "!=", "||")
_ONE_CHAR_OPS = "=<>+-*/%"


@dataclass(frozen=True)
class Token:
    kind: str  # ident | qident | number | string | op | punct | end
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "'":
            end = _scan_string(text, i)
            if end == n and not text.endswith("'"):
                raise SqlParseError("unterminated string literal", i)
            tokens.append(Token("string", text[i + 1 : end - 1], i))
            i = end
            continue
        if ch == '"':
            end = _scan_string(text, i)
            if end == n and not text.endswith('"'):
                raise SqlParseError("unterminated quoted identifier", i)
            inner = text[i + 1 : end - 1].replace('""', '"')
            tokens.append(Token("qident", inner, i))
            i = end
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            m = re.match(r"\d*\.?\d+([eE][+-]?\d+)?", text[i:])
            tokens.append(Token("number", m.group(0), i))
            i += m.end()
            continue
        if ch.isalpha() or ch == "_":
            m = re.match(r"[A-Za-z_][A-Za-z0-9_]*", text[i:])
            tokens.append(Token("ident", m.group(0), i))
            i += m.end()
            continue
        two = text[i : i + 2]
        if two in _TWO_CHAR_OPS:
            tokens.append(Token("op", two, i))
            i += 2
            continue
        if ch in _ONE_CHAR_OPS:
            tokens.append(Token("op", ch, i))
            i += 1
            continue
        if ch in "(),.":
            tokens.append(Token("punct", ch, i))
            i += 1
            continue
        raise SqlParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token("end", "", n))
    return tokens


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class ColumnRef:
    qualifier: Optional[str]
    column: str


@dataclass(frozen=True)
class FuncCall:
    name: str
    args: tuple


@dataclass(frozen=True)
class Unary:
    op: str
    operand: object


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Between:
    operand: object
    low: object
    high: object
    negated: bool


@dataclass(frozen=True)
class InList:
    operand: object
    items: tuple
    negated: bool


@dataclass(frozen=True)
class InSelect:
    operand: object
    query: "SelectBlock"
    negated: bool


@dataclass(frozen=True)
class Exists:
    query: "SelectBlock"


@dataclass(frozen=True)
class SubSelect:
    query: "SelectBlock"


@dataclass(frozen=True)
class TableRef:
    table: str
    alias: Optional[str]


@dataclass(frozen=True)
class DerivedTable:
    query: "SelectBlock"
    alias: str


@dataclass(frozen=True)
class Join:
    kind: str  # inner | left
    source: Union[TableRef, DerivedTable]
    condition: object


@dataclass(frozen=True)
class SelectBlock:
    select_items: tuple
    select_aliases: tuple
    sources: tuple
    joins: tuple
    where: Optional[object]
    group_by: tuple
    having: Optional[object]
    order_by: tuple


@dataclass(frozen=True)
class UpdateStatement:
    table: TableRef
    assignments: tuple
    where: Optional[object]


@dataclass(frozen=True)
class DeleteStatement:
    table: TableRef
    where: Optional[object]


@dataclass(frozen=True)
class InsertStatement:
    table: str


@dataclass(frozen=True)
class CreateIndexStatement:
    name: str
    table: str
    columns: tuple


Statement = Union[
    SelectBlock, UpdateStatement, DeleteStatement, InsertStatement, CreateIndexStatement
]

# Words that terminate an implicit alias after a table reference.
_RESERVED = {
    "where", "group", "order", "having", "on", "inner", "left", "right",
    "full", "cross", "outer", "join", "union", "set", "and", "or", "not",
    "as", "limit", "from", "select",
}

_TYPED_LITERAL_PREFIXES = {"date", "time", "timestamp"}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    # -- token helpers -----------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def at_kw(self, *words: str) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and tok.value.lower() in words

    def accept_kw(self, *words: str) -> bool:
        if self.at_kw(*words):
            self.advance()
            return True
        return False

    def expect_kw(self, word: str) -> None:
        if not self.accept_kw(word):
            tok = self.peek()
            raise SqlParseError(f"expected {word.upper()}, found {tok.value!r}", tok.pos)

    def accept_punct(self, value: str) -> bool:
        tok = self.peek()
        if tok.kind == "punct" and tok.value == value:
            self.advance()
            return True
        return False

    def expect_punct(self, value: str) -> None:
        if not self.accept_punct(value):
            tok = self.peek()
            raise SqlParseError(f"expected {value!r}, found {tok.value!r}", tok.pos)

    def expect_name(self) -> str:
        tok = self.peek()
        if tok.kind == "ident":
            self.advance()
            return canonical_identifier(tok.value)
        if tok.kind == "qident":
            self.advance()
            return canonical_identifier(tok.value, quoted=True)
        raise SqlParseError(f"expected identifier, found {tok.value!r}", tok.pos)

    def expect_end(self) -> None:
        tok = self.peek()
        if tok.kind != "end":
            raise SqlParseError(f"unexpected trailing input {tok.value!r}", tok.pos)

    # -- statements ---------------------------------------------------------

    def parse_statement(self) -> Statement:
        if self.at_kw("select"):
            stmt = self.parse_select_block()
            self.expect_end()
            return stmt
        if self.at_kw("update"):
            stmt = self.parse_update()
            self.expect_end()
            return stmt
        if self.at_kw("delete"):
            stmt = self.parse_delete()
            self.expect_end()
            return stmt
        if self.at_kw("insert"):
            return self.parse_insert()
        if self.at_kw("create"):
            stmt = self.parse_create_index()
            self.expect_end()
            return stmt
        tok = self.peek()
        raise SqlParseError(f"unsupported statement start {tok.value!r}", tok.pos)

    def parse_select_block(self) -> SelectBlock:
        self.expect_kw("select")
        self.accept_kw("distinct")
        items = [self.parse_select_item()]
        while self.accept_punct(","):
            items.append(self.parse_select_item())
        aliases = tuple(alias for _, alias in items if alias is not None)
        exprs = tuple(expr for expr, _ in items)
        self.expect_kw("from")
        sources = [self.parse_table_source()]
        joins: list[Join] = []
        while True:
            if self.accept_punct(","):
                sources.append(self.parse_table_source())
                continue
            if self.at_kw("inner", "left", "join"):
                joins.append(self.parse_join())
                continue
            break
        where = self.parse_expr() if self.accept_kw("where") else None
        group_by: list = []
        having = None
        if self.accept_kw("group"):
            self.expect_kw("by")
            group_by.append(self.parse_expr())
            while self.accept_punct(","):
                group_by.append(self.parse_expr())
            if self.accept_kw("having"):
                having = self.parse_expr()
        order_by: list = []
        if self.accept_kw("order"):
            self.expect_kw("by")
            order_by.append(self.parse_order_item())
            while self.accept_punct(","):
                order_by.append(self.parse_order_item())
        return SelectBlock(
            select_items=exprs,
            select_aliases=aliases,
            sources=tuple(sources),
            joins=tuple(joins),
            where=where,
            group_by=tuple(group_by),
            having=having,
            order_by=tuple(order_by),
        )

    def parse_select_item(self) -> tuple:
        tok = self.peek()
        if tok.kind == "op" and tok.value == "*":
            self.advance()
            return (Literal("*"), None)
        expr = self.parse_expr()
        alias = None
        if self.accept_kw("as"):
            alias = self.expect_name()
        elif self.peek().kind in ("ident", "qident") and not self.at_kw(*_RESERVED):
            alias = self.expect_name()
        return (expr, alias)

    def parse_order_item(self):
        expr = self.parse_expr()
        if self.at_kw("asc", "desc"):
            self.advance()
        return expr

    def parse_table_source(self) -> Union[TableRef, DerivedTable]:
        if self.accept_punct("("):
            query = self.parse_select_block()
            self.expect_punct(")")
            self.accept_kw("as")
            alias = self.expect_name()
            return DerivedTable(query=query, alias=alias)
        table = self.expect_name()
        alias = None
        if self.accept_kw("as"):
            alias = self.expect_name()
        elif self.peek().kind in ("ident", "qident") and not self.at_kw(*_RESERVED):
            alias = self.expect_name()
        return TableRef(table=table, alias=alias)

    def parse_join(self) -> Join:
        kind = "inner"
        if self.accept_kw("left"):
            kind = "left"
            self.accept_kw("outer")
        else:
            self.accept_kw("inner")
        self.expect_kw("join")
        source = self.parse_table_source()
        self.expect_kw("on")
        condition = self.parse_expr()
        return Join(kind=kind, source=source, condition=condition)

    def parse_update(self) -> UpdateStatement:
        self.expect_kw("update")
        table = TableRef(table=self.expect_name(), alias=None)
        self.expect_kw("set")
        assignments = [self.parse_assignment()]
        while self.accept_punct(","):
            assignments.append(self.parse_assignment())
        where = self.parse_expr() if self.accept_kw("where") else None
        return UpdateStatement(table=table, assignments=tuple(assignments), where=where)

    def parse_assignment(self) -> tuple:
        column = self.expect_name()
        tok = self.peek()
        if not (tok.kind == "op" and tok.value == "="):
            raise SqlParseError(f"expected '=' in SET clause, found {tok.value!r}", tok.pos)
        self.advance()
        return (column, self.parse_expr())

    def parse_delete(self) -> DeleteStatement:
        self.expect_kw("delete")
        self.expect_kw("from")
        table = TableRef(table=self.expect_name(), alias=None)
        where = self.parse_expr() if self.accept_kw("where") else None
        return DeleteStatement(table=table, where=where)

    def parse_insert(self) -> InsertStatement:
        self.expect_kw("insert")
        self.expect_kw("into")
        table = self.expect_name()
        # The remainder (column list, VALUES, SELECT) carries no indexable
        # positions; accept it opaquely but insist on balanced parentheses.
        depth = 0
        while self.peek().kind != "end":
            tok = self.advance()
            if tok.kind == "punct" and tok.value == "(":
                depth += 1
            elif tok.kind == "punct" and tok.value == ")":
                depth -= 1
                if depth < 0:
                    raise SqlParseError("unbalanced ')' in INSERT body", tok.pos)
        if depth != 0:
            raise SqlParseError("unbalanced '(' in INSERT body", self.peek().pos)
        return InsertStatement(table=table)

    def parse_create_index(self) -> CreateIndexStatement:
        self.expect_kw("create")
        self.expect_kw("index")
        name = self.expect_name()
        self.expect_kw("on")
        table = self.expect_name()
        self.expect_punct("(")
        columns = [self.expect_name()]
        while self.accept_punct(","):
            columns.append(self.expect_name())
        self.expect_punct(")")
        return CreateIndexStatement(name=name, table=table, columns=tuple(columns))

    # -- expressions ----------------------------------------------------------

    def parse_expr(self):
        return self.parse_or()

    def parse_or(self):
        left = self.parse_and()
        while self.accept_kw("or"):
            left = Binary("or", left, self.parse_and())
        return left

    def parse_and(self):
        left = self.parse_not()
        while self.accept_kw("and"):
            left = Binary("and", left, self.parse_not())
        return left

    def parse_not(self):
        if self.accept_kw("not"):
            return Unary("not", self.parse_not())
        return self.parse_predicate()

    def parse_predicate(self):
        left = self.parse_additive()
        tok = self.peek()
        if tok.kind == "op" and tok.value in ("=", "<>", "!=", "<", "<=", ">", ">="):
            self.advance()
            return Binary(tok.value, left, self.parse_additive())
        negated = False
        if self.at_kw("not") and self.peek(1).kind == "ident" and \
                self.peek(1).value.lower() in ("between", "in", "like"):
            self.advance()
            negated = True
        if self.accept_kw("between"):
            low = self.parse_additive()
            self.expect_kw("and")
            high = self.parse_additive()
            return Between(left, low, high, negated)
        if self.accept_kw("in"):
            self.expect_punct("(")
            if self.at_kw("select"):
                query = self.parse_select_block()
                self.expect_punct(")")
                return InSelect(left, query, negated)
            items = [self.parse_expr()]
            while self.accept_punct(","):
                items.append(self.parse_expr())
            self.expect_punct(")")
            return InList(left, tuple(items), negated)
        if self.accept_kw("like"):
            return Binary("not like" if negated else "like", left, self.parse_additive())
        if negated:
            raise SqlParseError("dangling NOT in predicate", tok.pos)
        if self.accept_kw("is"):
            neg = self.accept_kw("not")
            self.expect_kw("null")
            return Unary("is not null" if neg else "is null", left)
        return left

    def parse_additive(self):
        left = self.parse_term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in ("+", "-", "||"):
                self.advance()
                left = Binary(tok.value, left, self.parse_term())
            else:
                return left

    def parse_term(self):
        left = self.parse_factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in ("*", "/", "%"):
                self.advance()
                left = Binary(tok.value, left, self.parse_factor())
            else:
                return left

    def parse_factor(self):
        tok = self.peek()
        if tok.kind == "op" and tok.value in ("+", "-"):
            self.advance()
            return Unary(tok.value, self.parse_factor())
        return self.parse_primary()

    def parse_primary(self):
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return Literal(tok.value)
        if tok.kind == "string":
            self.advance()
            return Literal(tok.value)
        if tok.kind == "punct" and tok.value == "(":
            self.advance()
            if self.at_kw("select"):
                query = self.parse_select_block()
                self.expect_punct(")")
                return SubSelect(query)
            expr = self.parse_expr()
            self.expect_punct(")")
            return expr
        if tok.kind in ("ident", "qident"):
            word = tok.value.lower() if tok.kind == "ident" else ""
            if word == "null":
                self.advance()
                return Literal("null")
            if word == "exists":
                self.advance()
                self.expect_punct("(")
                query = self.parse_select_block()
                self.expect_punct(")")
                return Exists(query)
            if word in _TYPED_LITERAL_PREFIXES and self.peek(1).kind == "string":
                self.advance()
                lit = self.advance()
                return Literal(f"{word} '{lit.value}'")
            if word == "interval" and self.peek(1).kind == "string":
                self.advance()
                lit = self.advance()
                unit = ""
                if self.peek().kind == "ident" and self.peek().value.lower() in (
                    "year", "month", "day", "hour", "minute", "second",
                ):
                    unit = " " + self.advance().value.lower()
                return Literal(f"interval '{lit.value}'{unit}")
            name = self.expect_name()
            if self.accept_punct("("):
                return self.parse_func_args(name)
            if self.accept_punct("."):
                nxt = self.peek()
                if nxt.kind == "op" and nxt.value == "*":
                    self.advance()
                    return Literal("*")
                return ColumnRef(qualifier=name, column=self.expect_name())
            return ColumnRef(qualifier=None, column=name)
        raise SqlParseError(f"unexpected token {tok.value!r}", tok.pos)

    def parse_func_args(self, name: str) -> FuncCall:
        self.accept_kw("distinct")
        args: list = []
        tok = self.peek()
        if tok.kind == "op" and tok.value == "*":
            self.advance()
            args.append(Literal("*"))
        elif not (tok.kind == "punct" and tok.value == ")"):
            args.append(self.parse_expr())
            while self.accept_punct(","):
                args.append(self.parse_expr())
        self.expect_punct(")")
        return FuncCall(name=name, args=tuple(args))


def parse_statement(text: str) -> Statement:
    """Parse one semicolon-free statement; raises SqlParseError outside the subset."""
    return _Parser(tokenize(text)).parse_statement()


# ---------------------------------------------------------------------------
# Workload-level parsing
# ---------------------------------------------------------------------------


class QueryKind(str, Enum):
    SELECT = "SELECT"
    UPDATE = "UPDATE"
    DELETE = "DELETE"
    INSERT = "INSERT"
    OTHER = "OTHER"


@dataclass(frozen=True)
class WorkloadQuery:
    ordinal: int
    raw_text: str
    kind: QueryKind
    parse_error: Optional[str] = None


def parse_workload(
    workload_text: str, schema: Optional[SchemaMap] = None
) -> list[WorkloadQuery]:
    """Split workload text into classified statements.

    Statements come back in file order with contiguous ordinals. A statement
    outside the supported subset is kept with kind OTHER and a diagnostic in
    ``parse_error`` rather than dropped, so downstream frequency denominators
    stay stable. Name resolution happens later, at extraction; the schema is
    accepted here only so callers can drive parse and extract uniformly.
    """
    del schema  # statement-level parsing needs no name resolution
    queries: list[WorkloadQuery] = []
    for ordinal, text in enumerate(split_statements(workload_text)):
        lead = re.match(r"[A-Za-z_][A-Za-z0-9_]*", text)
        first = lead.group(0).lower() if lead else ""
        kind = {
            "select": QueryKind.SELECT,
            "update": QueryKind.UPDATE,
            "delete": QueryKind.DELETE,
            "insert": QueryKind.INSERT,
        }.get(first, QueryKind.OTHER)
        error: Optional[str] = None
        if first in ("select", "update", "delete", "insert", "create"):
            try:
                parse_statement(text)
            except SqlParseError as exc:
                kind = QueryKind.OTHER
                error = str(exc)
        else:
            error = f"unsupported statement kind {first!r}"
        queries.append(WorkloadQuery(ordinal=ordinal, raw_text=text, kind=kind,
                                     parse_error=error))
    return queries


# ---------------------------------------------------------------------------
# Item extraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class AttributeItem:
    """A (table, column) pair; ordering is lexicographic by both fields."""

    table: str
    column: str

    def __str__(self) -> str:
        return f"{self.table}.{self.column}"


@dataclass(frozen=True)
class TransactionContext:
    query_ordinal: int
    items: frozenset[AttributeItem]


@dataclass(frozen=True)
class ExtractionPolicy:
    """Which syntactic positions yield items.

    Valid position names: where, join, group_by, order_by, having, select.
    The default covers every position where an index can change the access
    path and leaves projection-only columns out.
    """

    positions: frozenset[str]

    VALID_POSITIONS = frozenset({"where", "join", "group_by", "order_by",
                                 "having", "select"})

    def __post_init__(self):
        unknown = self.positions - self.VALID_POSITIONS
        if unknown:
            raise ValueError(f"unknown extraction positions: {sorted(unknown)}")

    @classmethod
    def from_names(cls, names: list[str]) -> "ExtractionPolicy":
        cleaned = frozenset(n.strip().lower().replace("-", "_") for n in names if n.strip())
        return cls(positions=cleaned)

    def wants(self, position: str) -> bool:
        return position in self.positions


DEFAULT_POLICY = ExtractionPolicy(
    positions=frozenset({"where", "join", "group_by", "order_by", "having"})
)

_DERIVED = None  # scope marker: alias bound to a derived table, not a base table


def _own_refs(node) -> Iterator[ColumnRef]:
    """Column references of an expression, not descending into subqueries."""
    if isinstance(node, ColumnRef):
        yield node
    elif isinstance(node, FuncCall):
        for arg in node.args:
            yield from _own_refs(arg)
    elif isinstance(node, Unary):
        yield from _own_refs(node.operand)
    elif isinstance(node, Binary):
        yield from _own_refs(node.left)
        yield from _own_refs(node.right)
    elif isinstance(node, Between):
        yield from _own_refs(node.operand)
        yield from _own_refs(node.low)
        yield from _own_refs(node.high)
    elif isinstance(node, InList):
        yield from _own_refs(node.operand)
        for item in node.items:
            yield from _own_refs(item)
    elif isinstance(node, InSelect):
        yield from _own_refs(node.operand)


def _nested_queries(node) -> Iterator[SelectBlock]:
    """Subquery blocks appearing anywhere inside an expression."""
    if isinstance(node, (SubSelect, Exists)):
        yield node.query
    elif isinstance(node, InSelect):
        yield node.query
        yield from _nested_queries(node.operand)
    elif isinstance(node, FuncCall):
        for arg in node.args:
            yield from _nested_queries(arg)
    elif isinstance(node, Unary):
        yield from _nested_queries(node.operand)
    elif isinstance(node, Binary):
        yield from _nested_queries(node.left)
        yield from _nested_queries(node.right)
    elif isinstance(node, Between):
        for child in (node.operand, node.low, node.high):
            yield from _nested_queries(child)
    elif isinstance(node, InList):
        yield from _nested_queries(node.operand)
        for item in node.items:
            yield from _nested_queries(item)


class _Extractor:
    def __init__(self, schema: SchemaMap, policy: ExtractionPolicy,
                 ordinal: int, diagnostics: Optional[list[str]]):
        self.schema = schema
        self.policy = policy
        self.ordinal = ordinal
        self.diagnostics = diagnostics
        self.items: set[AttributeItem] = set()

    def diag(self, message: str) -> None:
        if self.diagnostics is not None:
            self.diagnostics.append(f"statement {self.ordinal}: {message}")

    def block_scope(self, block: SelectBlock) -> dict[str, Optional[str]]:
        scope: dict[str, Optional[str]] = {}
        sources = list(block.sources) + [j.source for j in block.joins]
        for src in sources:
            if isinstance(src, TableRef):
                key = src.alias or src.table
                value: Optional[str] = src.table
            else:
                key, value = src.alias, _DERIVED
            if key in scope:
                self.diag(f"duplicate alias '{key}' in FROM; first binding kept")
                continue
            scope[key] = value
        return scope

    def resolve(self, ref: ColumnRef, scopes: list[dict[str, Optional[str]]],
                select_aliases: frozenset[str] = frozenset()) -> None:
        if ref.qualifier is None and ref.column in select_aliases:
            # GROUP BY/ORDER BY/HAVING may name a select-list alias; the
            # aliased expression is projection, so it yields no item.
            return
        if ref.qualifier is not None:
            for scope in scopes:
                if ref.qualifier in scope:
                    table = scope[ref.qualifier]
                    if table is _DERIVED:
                        self.diag(
                            f"column '{ref.qualifier}.{ref.column}' belongs to a "
                            "derived table; skipped"
                        )
                        return
                    if not self.schema.has_column(table, ref.column):
                        self.diag(
                            f"column '{ref.qualifier}.{ref.column}' not found in "
                            f"table '{table}'; skipped"
                        )
                        return
                    self.items.add(AttributeItem(table=table, column=ref.column))
                    return
            self.diag(f"unknown table or alias '{ref.qualifier}'; skipped")
            return
        for scope in scopes:
            tables = sorted({t for t in scope.values() if t is not _DERIVED})
            matches = [t for t in tables if self.schema.has_column(t, ref.column)]
            if len(matches) == 1:
                self.items.add(AttributeItem(table=matches[0], column=ref.column))
                return
            if len(matches) > 1:
                self.diag(
                    f"ambiguous column '{ref.column}' (in tables "
                    f"{', '.join(matches)}); skipped"
                )
                return
        self.diag(f"unresolvable column '{ref.column}'; skipped")

    def harvest_exprs(self, exprs, scopes, position: str,
                      select_aliases: frozenset[str] = frozenset()) -> None:
        for expr in exprs:
            if expr is None:
                continue
            if self.policy.wants(position):
                for ref in _own_refs(expr):
                    self.resolve(ref, scopes, select_aliases)
            for sub in _nested_queries(expr):
                self.walk_block(sub, scopes)

    def walk_block(self, block: SelectBlock, outer_scopes) -> None:
        scopes = [self.block_scope(block)] + outer_scopes
        aliases = frozenset(block.select_aliases)
        self.harvest_exprs(block.select_items, scopes, "select")
        self.harvest_exprs([j.condition for j in block.joins], scopes, "join")
        self.harvest_exprs([block.where], scopes, "where")
        self.harvest_exprs(block.group_by, scopes, "group_by", aliases)
        self.harvest_exprs([block.having], scopes, "having", aliases)
        self.harvest_exprs(block.order_by, scopes, "order_by", aliases)
        # Derived tables in FROM are their own blocks; they see only scopes
        # enclosing this block, not its sibling FROM entries.
        for src in list(block.sources) + [j.source for j in block.joins]:
            if isinstance(src, DerivedTable):
                self.walk_block(src.query, outer_scopes)

    def walk_update(self, stmt: UpdateStatement) -> None:
        scopes = [{stmt.table.table: stmt.table.table}]
        self.harvest_exprs([stmt.where], scopes, "where")

    def walk_delete(self, stmt: DeleteStatement) -> None:
        scopes = [{stmt.table.table: stmt.table.table}]
        self.harvest_exprs([stmt.where], scopes, "where")


def extract_items(
    query: WorkloadQuery,
    schema: SchemaMap,
    policy: ExtractionPolicy = DEFAULT_POLICY,
    diagnostics: Optional[list[str]] = None,
) -> TransactionContext:
    """Extract the indexable attribute items of one parsed statement.

    INSERT statements yield an empty item set. Unresolvable or ambiguous
    columns are skipped with a diagnostic appended to ``diagnostics`` when a
    sink list is given; they never abort extraction.
    """
    if query.kind is QueryKind.OTHER:
        raise ValueError("cannot extract items from an unparsed (OTHER) statement")
    if query.kind is QueryKind.INSERT:
        return TransactionContext(query_ordinal=query.ordinal, items=frozenset())
    stmt = parse_statement(query.raw_text)
    extractor = _Extractor(schema, policy, query.ordinal, diagnostics)
    if isinstance(stmt, SelectBlock):
        extractor.walk_block(stmt, [])
    elif isinstance(stmt, UpdateStatement):
        extractor.walk_update(stmt)
    elif isinstance(stmt, DeleteStatement):
        extractor.walk_delete(stmt)
    return TransactionContext(query_ordinal=query.ordinal,
                              items=frozenset(extractor.items))


def extract_workload(
    queries: list[WorkloadQuery],
    schema: SchemaMap,
    policy: ExtractionPolicy = DEFAULT_POLICY,
    diagnostics: Optional[list[str]] = None,
) -> list[TransactionContext]:
    """One transaction context per statement, in workload order.

    Every statement becomes a transaction: OTHER and INSERT statements get
    empty item sets, which keeps support denominators equal to the workload
    size.
    """
    contexts: list[TransactionContext] = []
    for query in queries:
        if query.kind is QueryKind.OTHER:
            contexts.append(TransactionContext(query_ordinal=query.ordinal,
                                               items=frozenset()))
            continue
        contexts.append(extract_items(query, schema, policy, diagnostics))
    return contexts
