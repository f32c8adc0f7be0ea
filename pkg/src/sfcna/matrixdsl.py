"""Transactions-matrix DSL and its three equivalent views.

A transactions matrix lays out who pays whom: rows are transaction
categories, columns are sectors, entries are signed symbols (minus for
the payer, plus for the receiver). The same matrix can be read as a
system of per-sector balance equations, as per-sector T-accounts, or as
a money-flow digraph; the three views carry identical information and
the emitters here keep them consistent by construction.

Grammar (line oriented, UTF-8, ``#`` starts a comment):

    matrix "<name>"
    sectors: A, B, C
    row "<label>": A=-C, B=+C
    row "<label>": B=[Y]

A sign may be omitted (defaults to ``+``). Entries in square brackets
are memo entries; a row whose entries are all memos is excluded from
balancing, the equations, the T-accounts, and the graph. Symbols are
opaque identifiers (spell a stock change ``dH``, not with a delta);
there is no arithmetic on symbols beyond sign, and no numbers: values
live in the ledger modules.

Every non-memo row must balance symbolically: each symbol must appear
as many times with ``+`` as with ``-``. Column sums are not a parse
check; a column's symbolic zero sum *is* the sector's balance equation
and only becomes checkable once values are assigned outside the DSL.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from collections import Counter
from typing import Iterable

from .ledger import AccountNode


class DslError(ValueError):
    """Base class for transactions-matrix errors."""


class DslSyntaxError(DslError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class RowBalanceError(DslError):
    def __init__(self, label: str, detail: str):
        super().__init__(f"row {label!r} does not balance: {detail}")
        self.label = label


class ColumnError(DslError):
    """An entry references a sector column that does not exist."""

    def __init__(self, sector: str, line: int):
        super().__init__(f"line {line}: unknown sector column {sector!r}")
        self.sector = sector


class GraphShapeError(DslError):
    """A transaction row that is not bilateral cannot become one edge."""


@dataclass(frozen=True)
class MatrixEntry:
    sector: str
    sign: int        # +1 or -1
    symbol: str
    memo: bool = False


@dataclass(frozen=True)
class MatrixRow:
    label: str
    entries: tuple[MatrixEntry, ...]

    @property
    def memo(self) -> bool:
        return bool(self.entries) and all(e.memo for e in self.entries)


@dataclass(frozen=True)
class TransactionsMatrix:
    name: str
    sectors: tuple[str, ...]
    rows: tuple[MatrixRow, ...]        # balancing transaction rows
    memo_rows: tuple[MatrixRow, ...]   # bracketed rows, excluded from balance

    def column(self, sector: str) -> list[MatrixEntry]:
        if sector not in self.sectors:
            raise ColumnError(sector, 0)
        return [e for row in self.rows for e in row.entries if e.sector == sector]


_NAME_RE = re.compile(r'^matrix\s+"([^"]*)"\s*$')
_SECTORS_RE = re.compile(r"^sectors\s*:\s*(.+)$")
_ROW_RE = re.compile(r'^row\s+"([^"]*)"\s*:\s*(.*)$')
_IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_ENTRY_RE = re.compile(
    r"^(?P<sector>[A-Za-z_][A-Za-z0-9_]*)\s*=\s*"
    r"(?:(?P<sign>[+-])?(?P<symbol>[A-Za-z_][A-Za-z0-9_]*)"
    r"|\[(?P<memosign>[+-])?(?P<memosymbol>[A-Za-z_][A-Za-z0-9_]*)\])$"
)


def _check_row_balance(row: MatrixRow) -> None:
    counts: Counter[str] = Counter()
    for entry in row.entries:
        counts[entry.symbol] += entry.sign
    unbalanced = {sym: n for sym, n in counts.items() if n != 0}
    if unbalanced:
        detail = ", ".join(
            f"{sym} has net sign {n:+d}" for sym, n in sorted(unbalanced.items())
        )
        raise RowBalanceError(row.label, detail)


def parse(text: str) -> TransactionsMatrix:
    """Parse DSL source into a validated transactions matrix."""
    name = ""
    sectors: tuple[str, ...] | None = None
    rows: list[MatrixRow] = []
    memo_rows: list[MatrixRow] = []
    saw_name = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _NAME_RE.match(line):
            if saw_name:
                raise DslSyntaxError("duplicate matrix declaration", lineno)
            name = m.group(1)
            saw_name = True
            continue
        if m := _SECTORS_RE.match(line):
            if sectors is not None:
                raise DslSyntaxError("duplicate sectors declaration", lineno)
            labels = tuple(s.strip() for s in m.group(1).split(","))
            for label in labels:
                if not _IDENT_RE.match(label):
                    raise DslSyntaxError(f"bad sector label {label!r}", lineno, raw.find(label) + 1)
            if len(set(labels)) != len(labels):
                raise DslSyntaxError("duplicate sector label", lineno)
            sectors = labels
            continue
        if m := _ROW_RE.match(line):
            if sectors is None:
                raise DslSyntaxError("row before sectors declaration", lineno)
            label, body = m.group(1), m.group(2)
            entries: list[MatrixEntry] = []
            if body.strip():
                for part in body.split(","):
                    part = part.strip()
                    em = _ENTRY_RE.match(part)
                    if not em:
                        raise DslSyntaxError(
                            f"bad entry {part!r}", lineno, raw.find(part) + 1
                        )
                    sector = em.group("sector")
                    if sector not in sectors:
                        raise ColumnError(sector, lineno)
                    memo = em.group("memosymbol") is not None
                    symbol = em.group("memosymbol") if memo else em.group("symbol")
                    sign_text = em.group("memosign") if memo else em.group("sign")
                    sign = -1 if sign_text == "-" else 1
                    entries.append(MatrixEntry(sector, sign, symbol, memo))
            row = MatrixRow(label, tuple(entries))
            memo_count = sum(1 for e in entries if e.memo)
            if memo_count and memo_count != len(entries):
                raise DslSyntaxError(
                    f"row {label!r} mixes memo and transaction entries", lineno
                )
            if row.memo:
                memo_rows.append(row)
            else:
                _check_row_balance(row)
                rows.append(row)
            continue
        raise DslSyntaxError(f"unrecognized line: {line!r}", lineno)

    if sectors is None:
        raise DslSyntaxError("missing sectors declaration", max(1, text.count("\n") + 1))
    return TransactionsMatrix(name, sectors, tuple(rows), tuple(memo_rows))


@dataclass(frozen=True)
class Equation:
    """One sector's balance: inflow symbols equal outflow symbols."""

    sector: str
    inflows: tuple[str, ...]
    outflows: tuple[str, ...]

    def __str__(self) -> str:
        lhs = " + ".join(self.inflows) if self.inflows else "0"
        rhs = " + ".join(self.outflows) if self.outflows else "0"
        return f"{self.sector}: {lhs} = {rhs}"


def to_equations(matrix: TransactionsMatrix) -> list[Equation]:
    """One inflows-equal-outflows equation per sector, in column order."""
    equations = []
    for sector in matrix.sectors:
        inflows = []
        outflows = []
        for row in matrix.rows:
            for entry in row.entries:
                if entry.sector != sector:
                    continue
                (inflows if entry.sign > 0 else outflows).append(entry.symbol)
        equations.append(Equation(sector, tuple(inflows), tuple(outflows)))
    return equations


def to_taccounts(matrix: TransactionsMatrix) -> dict[str, AccountNode]:
    """Per-sector T-accounts; symbolic, so every entry carries value zero.

    The closed node of each account sums to zero by construction; the
    symbol lists carry the information.
    """
    accounts = {}
    for equation in to_equations(matrix):
        accounts[equation.sector] = AccountNode(
            equation.sector,
            [(symbol, 0) for symbol in equation.inflows],
            [(symbol, 0) for symbol in equation.outflows],
            "balance",
        )
    return accounts


def render_taccounts(matrix: TransactionsMatrix) -> str:
    """Aligned text tables, inflows on the left and outflows on the right."""
    blocks = []
    for equation in to_equations(matrix):
        left = list(equation.inflows)
        right = list(equation.outflows)
        width_left = max([len(s) for s in left] + [len(equation.sector), 1])
        width_right = max([len(s) for s in right] + [1])
        lines = [equation.sector.ljust(width_left + 2) ]
        lines.append("-" * (width_left + 2) + "+" + "-" * (width_right + 2))
        for i in range(max(len(left), len(right), 1)):
            l = left[i] if i < len(left) else ""
            r = right[i] if i < len(right) else ""
            lines.append(f" {l.ljust(width_left)} | {r}")
        blocks.append("\n".join(line.rstrip() for line in lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


@dataclass(frozen=True)
class FlowEdge:
    payer: str
    receiver: str
    symbol: str


@dataclass(frozen=True)
class FlowGraph:
    name: str
    nodes: tuple[str, ...]
    edges: tuple[FlowEdge, ...]

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name or "transactions"}" {{']
        for node in self.nodes:
            lines.append(f'  "{node}";')
        for edge in self.edges:
            lines.append(f'  "{edge.payer}" -> "{edge.receiver}" [label="{edge.symbol}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def to_flow_graph(matrix: TransactionsMatrix) -> FlowGraph:
    """One edge per transaction row, payer to receiver.

    Rows must be bilateral: exactly one payer and one receiver. Memo
    rows carry no money and are excluded.
    """
    edges = []
    for row in matrix.rows:
        payers = [e for e in row.entries if e.sign < 0]
        receivers = [e for e in row.entries if e.sign > 0]
        if len(payers) != 1 or len(receivers) != 1:
            raise GraphShapeError(
                f"row {row.label!r} has {len(payers)} payer(s) and "
                f"{len(receivers)} receiver(s); only bilateral rows map to edges"
            )
        edges.append(FlowEdge(payers[0].sector, receivers[0].sector, payers[0].symbol))
    return FlowGraph(matrix.name, matrix.sectors, tuple(edges))
