"""Atomic ledger types and operations.

Everything downstream (sector chains, market conservation checks, the
simulator) is built from three primitives defined here: a signed money
flow tagged with a transaction code, a stock at a point in time, and a
balancing account node that obeys the current law of flow networks
(inflows equal outflows once the balancing item is attached).

All arithmetic is exact. Values are held as `fractions.Fraction`; data
enters as integers or decimal strings with 0.01 M EUR resolution and no
binary floating point ever touches the ledger path, so conservation
identities can be asserted with strict equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Numeric = Union[int, str, Decimal, Fraction]

SECTORS = ("NFS", "FFS", "HS", "GS", "RS")

RECEIVED = "received"
PAID = "paid"
NET = "net"
DIRECTIONS = (RECEIVED, PAID, NET)


class LedgerError(ValueError):
    """Invalid ledger data (unknown code, bad sign, malformed value)."""


def exact(value: Numeric) -> Fraction:
    """Convert a value to an exact rational.

    Accepts int, Fraction, Decimal, or a decimal string. Floats are
    rejected: they carry binary rounding error into a path that must
    support exact conservation checks.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise LedgerError(f"not a monetary value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise LedgerError(
            f"binary float {value!r} not allowed in the ledger path; "
            "pass an int, Decimal, or decimal string"
        )
    if isinstance(value, str):
        try:
            value = Decimal(value)
        except InvalidOperation as exc:
            raise LedgerError(f"malformed numeric literal: {value!r}") from exc
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise LedgerError(f"non-finite value: {value}")
        return Fraction(value)
    raise LedgerError(f"unsupported numeric type: {type(value).__name__}")


def render(value: Numeric, places: int = 2) -> str:
    """Fixed-point decimal rendering (no scientific notation).

    Non-terminating rationals are rounded half-even at `places`; every
    report and CSV emitted by the toolchain goes through here so reruns
    are byte-identical.
    """
    frac = exact(value) if not isinstance(value, Fraction) else value
    q = Decimal(1).scaleb(-places)
    dec = (Decimal(frac.numerator) / Decimal(frac.denominator)) if frac.denominator != 1 else Decimal(frac.numerator)
    return str(dec.quantize(q))


@dataclass(frozen=True)
class ItemCode:
    """One entry of the closed transaction-code list."""

    code: str
    label: str
    signed: bool = False       # value may be negative; stored with direction "net"
    balancing: bool = False    # a reported account balance, not a transaction


_ITEM_CODES = (
    # Production and expenditure
    ItemCode("P1", "output (value of production, net of imports resold)"),
    ItemCode("P2", "intermediate goods (use when paid, sales when received)"),
    ItemCode("P31", "individual final consumption expenditure"),
    ItemCode("P32", "collective final consumption expenditure"),
    ItemCode("P5", "gross fixed capital formation and inventory changes"),
    ItemCode("P6", "exports of goods and services"),
    ItemCode("P7", "imports of goods and services"),
    ItemCode("K1", "consumption of fixed capital"),
    ItemCode("K2", "net acquisitions of non-produced non-financial assets", signed=True),
    # Distributive transactions
    ItemCode("D11", "gross wages and salaries"),
    ItemCode("D12", "employers' social contributions"),
    ItemCode("D21", "taxes on products"),
    ItemCode("D29", "other taxes on production"),
    ItemCode("D31", "subsidies on products"),
    ItemCode("D39", "other subsidies on production"),
    ItemCode("D4", "property income"),
    ItemCode("D5", "current taxes on income and wealth"),
    ItemCode("D61D62", "social contributions and benefits (not in kind)"),
    ItemCode("D7", "other current transfers"),
    ItemCode("D8", "adjustment for the change in pension entitlements", signed=True),
    ItemCode("D9", "capital transfers"),
    # Financial-account flows
    ItemCode("dA", "net acquisition of financial assets", signed=True),
    ItemCode("dPsi", "net incurrence of financial liabilities", signed=True),
    # Reported balancing items
    ItemCode("B1G", "gross value added", signed=True, balancing=True),
    ItemCode("B1N", "net value added", signed=True, balancing=True),
    ItemCode("B13N", "operating surplus and mixed income, net", signed=True, balancing=True),
    ItemCode("B5NT", "balance of primary incomes, net", signed=True, balancing=True),
    ItemCode("B6N", "disposable income, net", signed=True, balancing=True),
    ItemCode("B8N", "net saving", signed=True, balancing=True),
    ItemCode("B9", "net lending (+) / net borrowing (-)", signed=True, balancing=True),
    ItemCode("B11", "external balance of goods and services", signed=True, balancing=True),
    ItemCode("B12", "current external balance (balance of payments)", signed=True, balancing=True),
)

ITEM_CODES: Mapping[str, ItemCode] = {item.code: item for item in _ITEM_CODES}
SIGNED_ITEMS = frozenset(item.code for item in _ITEM_CODES if item.signed)
BALANCING_ITEMS = frozenset(item.code for item in _ITEM_CODES if item.balancing)


def require_item(code: str) -> ItemCode:
    """Look up a transaction code; unknown codes are hard errors."""
    try:
        return ITEM_CODES[code]
    except KeyError:
        raise LedgerError(f"unknown item code: {code!r}") from None


def require_sector(sector: str) -> str:
    if sector not in SECTORS:
        raise LedgerError(f"unknown sector: {sector!r} (expected one of {', '.join(SECTORS)})")
    return sector


@dataclass(frozen=True)
class Flow:
    """A signed money flow in million EUR per year.

    `value` must be non-negative unless the direction is "net"; offsets
    between gross directions are never netted implicitly.
    """

    item: str
    sector: str
    direction: str
    value: Fraction

    def __init__(self, item: str, sector: str, direction: str, value: Numeric):
        require_item(item)
        require_sector(sector)
        if direction not in DIRECTIONS:
            raise LedgerError(f"unknown direction: {direction!r}")
        amount = exact(value)
        if direction != NET and amount < 0:
            raise LedgerError(
                f"negative value {render(amount)} for {item} {direction}; "
                "gross flows are stored as magnitudes"
            )
        object.__setattr__(self, "item", item)
        object.__setattr__(self, "sector", sector)
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "value", amount)


@dataclass(frozen=True)
class Stock:
    """A stock in million EUR at a point in time (assets, liabilities, net worth)."""

    value: Fraction
    label: str

    def __init__(self, value: Numeric, label: str):
        object.__setattr__(self, "value", exact(value))
        object.__setattr__(self, "label", label)


@dataclass(frozen=True)
class BalanceSheet:
    """Assets and liabilities of one unit; net worth is their difference."""

    assets: Fraction
    liabilities: Fraction

    def __init__(self, assets: Numeric, liabilities: Numeric):
        object.__setattr__(self, "assets", exact(assets))
        object.__setattr__(self, "liabilities", exact(liabilities))

    @property
    def net_worth(self) -> Fraction:
        return self.assets - self.liabilities


Entry = tuple[str, Fraction]


def _entries(pairs: Iterable[tuple[str, Numeric]]) -> tuple[Entry, ...]:
    return tuple((symbol, exact(value)) for symbol, value in pairs)


@dataclass(frozen=True)
class AccountNode:
    """A named account treated as a node in a money-flow network.

    The balancing item is never stored: it is always computed as the
    difference between inflows and outflows, so an account cannot drift
    out of balance.
    """

    name: str
    inflows: tuple[Entry, ...]
    outflows: tuple[Entry, ...]
    balancing_symbol: str

    def __init__(
        self,
        name: str,
        inflows: Iterable[tuple[str, Numeric]] = (),
        outflows: Iterable[tuple[str, Numeric]] = (),
        balancing_symbol: str = "B",
    ):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "inflows", _entries(inflows))
        object.__setattr__(self, "outflows", _entries(outflows))
        object.__setattr__(self, "balancing_symbol", balancing_symbol)

    def balance(self) -> Fraction:
        return balance(self)

    def closed(self) -> "AccountNode":
        """Return the node with its balancing item attached.

        A positive balance is appended to the outflows, a negative one
        (as a magnitude) to the inflows; the closed node sums to zero.
        """
        b = self.balance()
        if b >= 0:
            return AccountNode(
                self.name,
                self.inflows,
                self.outflows + ((self.balancing_symbol, b),),
                self.balancing_symbol,
            )
        return AccountNode(
            self.name,
            self.inflows + ((self.balancing_symbol, -b),),
            self.outflows,
            self.balancing_symbol,
        )


def balance(node: AccountNode) -> Fraction:
    """Balancing item of an account: sum of inflows minus sum of outflows.

    Empty sides count as zero, so an empty node balances to zero.
    """
    total_in = sum((value for _, value in node.inflows), Fraction(0))
    total_out = sum((value for _, value in node.outflows), Fraction(0))
    return total_in - total_out


def accumulate(stock0: Numeric, net_flows: Sequence[Numeric], dt: Numeric = 1) -> Fraction:
    """Integrate net flows onto an opening stock over steps of length dt years."""
    step = exact(dt)
    if step <= 0:
        raise LedgerError(f"dt must be positive, got {render(step)}")
    total = exact(stock0)
    for flow in net_flows:
        total += exact(flow) * step
    return total
