"""Inter-sector payment systems and their conservation checks.

Each transfer category is modelled as a pool: sectors pay in, sectors
draw out. For most categories the pool must clear exactly (economy-wide
payments equal receipts, the flow-network conservation law with the
external sector included). Two product-linked categories are open by
construction: taxes on products are skimmed off sales without an
attributed payer, and subsidies on products reach producers without an
attributed recipient. Those carry an explicit unattributed bucket so
totals are still preserved.

Net lending is included as a checkable system even though it is a
balancing item, not a payment: its economy-wide zero sum is the
headline conservation statement of the whole ledger.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .dataset import EconomyYear
from .ledger import LedgerError, Numeric, SECTORS, exact, render
from . import sectors as _sectors

UNATTRIBUTED = "UNATTRIBUTED"

ZERO_SUM_KINDS = (
    "D11",      # wages and salaries
    "D12",      # employers' social contributions
    "D5",       # current taxes on income and wealth
    "D4",       # property income
    "D61D62",   # social contributions and benefits
    "D39",      # other subsidies on production
    "D29",      # other taxes on production
    "D7",       # other current transfers
    "D9",       # capital transfers
    "K2",       # net acquisitions of non-produced assets (signed)
    "B9",       # net lending / net borrowing (signed)
)
OPEN_KINDS = (
    "D21",      # taxes on products: payer unattributed
    "D31",      # subsidies on products: recipient unattributed
)
MARKET_KINDS = ZERO_SUM_KINDS + OPEN_KINDS

_SIGNED_KINDS = frozenset({"K2", "B9"})


@dataclass(frozen=True)
class MarketSystem:
    """One payment system: per-sector payments and receipts for a year."""

    kind: str
    payments: Mapping[str, Fraction]
    receipts: Mapping[str, Fraction]

    def __init__(self, kind: str, payments: Mapping[str, Numeric], receipts: Mapping[str, Numeric]):
        if kind not in MARKET_KINDS:
            raise LedgerError(f"unknown market kind: {kind!r}")
        for key in list(payments) + list(receipts):
            if key not in SECTORS and key != UNATTRIBUTED:
                raise LedgerError(f"unknown sector {key!r} in market {kind}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "payments", {k: exact(v) for k, v in payments.items()})
        object.__setattr__(self, "receipts", {k: exact(v) for k, v in receipts.items()})

    @property
    def zero_sum(self) -> bool:
        return self.kind in ZERO_SUM_KINDS

    def total_paid(self) -> Fraction:
        return sum(self.payments.values(), Fraction(0))

    def total_received(self) -> Fraction:
        return sum(self.receipts.values(), Fraction(0))


@dataclass(frozen=True)
class ConservationViolation:
    """A zero-sum system that failed to clear."""

    kind: str
    residual: Fraction
    payments: Mapping[str, Fraction]
    receipts: Mapping[str, Fraction]

    def __str__(self) -> str:
        def fmt(entries: Mapping[str, Fraction]) -> str:
            return ", ".join(f"{k}={render(v)}" for k, v in sorted(entries.items()))

        return (
            f"{self.kind}: residual {render(self.residual)} "
            f"(paid: {fmt(self.payments)}; received: {fmt(self.receipts)})"
        )


def clear(system: MarketSystem) -> Fraction:
    """Residual of a payment system.

    Zero-sum kinds must return zero (payments minus receipts over all
    five sectors); open kinds return their attributed one-sided total.
    """
    if system.zero_sum:
        return system.total_paid() - system.total_received()
    if system.kind == "D21":
        return sum(
            (v for k, v in system.receipts.items() if k != UNATTRIBUTED), Fraction(0)
        )
    return sum(
        (v for k, v in system.payments.items() if k != UNATTRIBUTED), Fraction(0)
    )


def from_year(year: EconomyYear, kind: str, recompute: bool = False) -> MarketSystem:
    """Populate one market system from a year's sector ledgers.

    The net-lending system reads the reported balancing items unless
    `recompute` is set (or a sector has no reported value), in which
    case the chains are re-evaluated.
    """
    if kind == "B9":
        payments = {}
        for sector in SECTORS:
            ledger = year.sector(sector)
            if not recompute and ledger.has("B9", "net"):
                payments[sector] = ledger.net("B9")
            else:
                payments[sector] = _sectors.compute_results(year, sector).net_lending
        return MarketSystem("B9", payments, {})
    if kind == "K2":
        payments = {s: year.sector(s).net("K2") for s in SECTORS}
        return MarketSystem("K2", payments, {})
    payments = {}
    receipts = {}
    for sector in SECTORS:
        ledger = year.sector(sector)
        paid = ledger.paid(kind)
        received = ledger.received(kind)
        if paid != 0 or ledger.has(kind, "paid"):
            payments[sector] = paid
        if received != 0 or ledger.has(kind, "received"):
            receipts[sector] = received
    if kind == "D21":
        payments = {UNATTRIBUTED: sum(receipts.values(), Fraction(0))}
    elif kind == "D31":
        receipts = {UNATTRIBUTED: sum(payments.values(), Fraction(0))}
    return MarketSystem(kind, payments, receipts)


def all_systems(year: EconomyYear, recompute: bool = False) -> dict[str, MarketSystem]:
    return {kind: from_year(year, kind, recompute=recompute) for kind in MARKET_KINDS}


def check_all(year: EconomyYear, recompute: bool = False) -> list[ConservationViolation]:
    """Check every zero-sum system of a year; violations are data, not errors."""
    violations = []
    for kind in ZERO_SUM_KINDS:
        system = from_year(year, kind, recompute=recompute)
        residual = clear(system)
        if residual != 0:
            violations.append(
                ConservationViolation(kind, residual, system.payments, system.receipts)
            )
    return violations
