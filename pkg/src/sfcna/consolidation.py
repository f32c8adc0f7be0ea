"""Aggregation of micro units into sector ledgers.

When units of the same sector are merged, money flows between them are
removed from both sides: the merged entity neither pays nor receives
anything from itself. Pairing of intra-sector flows uses explicit
counterparty unit ids, never value matching, because value matching is
ambiguous when amounts repeat.

Also provides the merged income view of a chain result: the allocation,
secondary-distribution, and use-of-income accounts collapsed into one
account whose balance is the sector's net saving.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .dataset import SectorLedger
from .ledger import AccountNode, Flow, LedgerError
from .sectors import ALLOCATION, SECONDARY, USE_OF_INCOME, SectorResult


class PairingError(LedgerError):
    """An intra-sector flow without its mirror at the counterparty."""


@dataclass(frozen=True)
class FlowEntry:
    """One flow of a micro unit, optionally tagged with a counterparty unit."""

    flow: Flow
    counterparty: Optional[str] = None


@dataclass(frozen=True)
class MicroUnit:
    """A single economic unit before aggregation."""

    id: str
    sector: str
    flows: tuple[FlowEntry, ...] = field(default=())

    def __init__(self, id: str, sector: str, flows: Iterable[FlowEntry | tuple] = ()):
        object.__setattr__(self, "id", id)
        object.__setattr__(self, "sector", sector)
        normalized = []
        for entry in flows:
            if isinstance(entry, FlowEntry):
                normalized.append(entry)
            else:
                flow, counterparty = entry
                normalized.append(FlowEntry(flow, counterparty))
        object.__setattr__(self, "flows", tuple(normalized))

    def net_balance(self) -> Fraction:
        """Inflows minus outflows over all of the unit's gross flows."""
        total = Fraction(0)
        for entry in self.flows:
            if entry.flow.direction == "received":
                total += entry.flow.value
            elif entry.flow.direction == "paid":
                total -= entry.flow.value
            else:
                total += entry.flow.value
        return total


_OPPOSITE = {"received": "paid", "paid": "received"}


def consolidate(units: Sequence[MicroUnit]) -> SectorLedger:
    """Merge micro units of one sector, cancelling mutual flows.

    Every flow tagged with a counterparty must be mirrored by an
    opposite-direction flow of the same item and value at that
    counterparty; the paired flows drop out of the merged ledger.
    """
    if not units:
        raise LedgerError("cannot consolidate an empty unit list")
    sector = units[0].sector
    for unit in units:
        if unit.sector != sector:
            raise LedgerError(
                f"unit {unit.id!r} belongs to sector {unit.sector}, expected {sector}"
            )

    ids = {unit.id for unit in units}
    if len(ids) != len(units):
        raise LedgerError("duplicate unit ids in consolidation input")

    # Tagged flows pair up as (item, value, payer-unit, receiver-unit).
    tagged: Counter[tuple[str, Fraction, str, str]] = Counter()
    untagged: Counter[tuple[str, str]] = Counter()
    totals: dict[tuple[str, str], Fraction] = {}

    def _add(key: tuple[str, str], value: Fraction) -> None:
        totals[key] = totals.get(key, Fraction(0)) + value

    for unit in units:
        for entry in unit.flows:
            flow = entry.flow
            if entry.counterparty is None:
                _add((flow.item, flow.direction), flow.value)
                untagged[(flow.item, flow.direction)] += 1
                continue
            if entry.counterparty not in ids:
                raise PairingError(
                    f"unit {unit.id!r} references counterparty {entry.counterparty!r} "
                    "which is not part of the consolidation"
                )
            if flow.direction == "net":
                raise PairingError(
                    f"unit {unit.id!r}: net flows cannot carry a counterparty tag"
                )
            if flow.direction == "paid":
                pair = (flow.item, flow.value, unit.id, entry.counterparty)
            else:
                pair = (flow.item, flow.value, entry.counterparty, unit.id)
            tagged[pair] += 1
            _add((flow.item, flow.direction), flow.value)

    # Each (item value payer receiver) tuple must be seen an even number
    # of times: once from the payer's side and once from the receiver's.
    for (item, value, payer, receiver), count in tagged.items():
        if count % 2 != 0:
            raise PairingError(
                f"unpaired intra-sector flow: item {item} value {value} "
                f"between units {payer!r} and {receiver!r}"
            )
        cancelled = Fraction(count, 2) * value
        _add((item, "paid"), -cancelled)
        _add((item, "received"), -cancelled)

    values = {key: value for key, value in totals.items() if value != 0}
    return SectorLedger(sector, values)


def consolidate_asua(result: SectorResult) -> AccountNode:
    """Collapse the income accounts of a chain result into one node.

    The hand-offs between the three accounts (the balancing item of one
    feeding the next) are internal and removed; what remains is the
    sector's external income and outlay, balancing to its net saving.
    """
    names = [n for n in (ALLOCATION, SECONDARY, USE_OF_INCOME) if n in result.accounts]
    internal = {result.accounts[prior].balancing_symbol for prior in names[:-1]}
    inflows: list = []
    outflows: list = []
    for name in names:
        node = result.accounts[name]
        inflows.extend((s, v) for s, v in node.inflows if s not in internal)
        outflows.extend(node.outflows)
    return AccountNode("income-consolidated", inflows, outflows, "saving")
