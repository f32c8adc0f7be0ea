"""Per-sector account chains.

Each domestic sector runs the same cascade of balancing flow accounts:
production (value added), generation of income (operating surplus),
allocation of primary income, secondary distribution (disposable
income), use of disposable income (saving), capital (net lending), and
financial (asset acquisition). The rest of the world runs a shortened
chain (external balance, balance of payments, net lending).

Every balancing item is computed twice by construction: once by the
closed-form equation and once as the balance of the corresponding
account node. The two views agree identically; tests lean on that.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Optional

from .dataset import EconomyYear, SectorLedger
from .ledger import AccountNode, LedgerError, Numeric, balance, exact, render

# Canonical account names, in chain order.
PRODUCTION = "production"
GENERATION = "generation-of-income"
ALLOCATION = "primary-income-allocation"
SECONDARY = "secondary-distribution"
USE_OF_INCOME = "use-of-income"
CAPITAL = "capital"
FINANCIAL = "financial"

CHAIN_ORDER = (PRODUCTION, GENERATION, ALLOCATION, SECONDARY, USE_OF_INCOME, CAPITAL, FINANCIAL)


def _coerce(obj) -> None:
    """Normalize all numeric dataclass fields to exact rationals."""
    for spec in fields(obj):
        value = getattr(obj, spec.name)
        if value is None or isinstance(value, (OutputComposite, dict, str)):
            continue
        object.__setattr__(obj, spec.name, exact(value))


_NET_FIELDS = frozenset({"pension_adjustment", "nonproduced_assets_net", "liabilities_issued_net"})


def _check_nonnegative(obj) -> None:
    for spec in fields(obj):
        if spec.name in _NET_FIELDS:
            continue
        value = getattr(obj, spec.name)
        if isinstance(value, Fraction) and value < 0:
            raise LedgerError(f"{type(obj).__name__}.{spec.name} must be >= 0, got {render(value)}")


@dataclass(frozen=True)
class OutputComposite:
    """Net sales value of a sector's production.

    Either the single composite number or its six components (final
    consumption, government consumption, investment sales, intermediate
    sales, exports, imports resold) may be given. If both are given they
    must agree exactly.
    """

    total: Optional[Fraction] = None
    final_consumption: Optional[Fraction] = None
    government_consumption: Optional[Fraction] = None
    investment_sales: Optional[Fraction] = None
    intermediate_sales: Optional[Fraction] = None
    exports: Optional[Fraction] = None
    imports: Optional[Fraction] = None

    def __post_init__(self):
        for spec in fields(self):
            value = getattr(self, spec.name)
            if value is not None:
                value = exact(value)
                if spec.name != "total" and value < 0:
                    raise LedgerError(f"output component {spec.name} must be >= 0")
                object.__setattr__(self, spec.name, value)

    def resolve(self) -> Fraction:
        parts = (
            self.final_consumption,
            self.government_consumption,
            self.investment_sales,
            self.intermediate_sales,
            self.exports,
            self.imports,
        )
        have_parts = any(p is not None for p in parts)
        component_sum = None
        if have_parts:
            c, g, i, z, x, m = (p if p is not None else Fraction(0) for p in parts)
            component_sum = c + g + i + z + x - m
        if self.total is not None and component_sum is not None:
            if self.total != component_sum:
                raise LedgerError(
                    f"output composite {render(self.total)} disagrees with its "
                    f"components, which sum to {render(component_sum)}"
                )
            return self.total
        if self.total is not None:
            return self.total
        if component_sum is not None:
            return component_sum
        return Fraction(0)


def composite(value: Numeric) -> OutputComposite:
    return OutputComposite(total=exact(value))


@dataclass(frozen=True)
class FirmSectorInputs:
    """Money flows faced by a corporate sector in one year."""

    output_value: OutputComposite = field(default_factory=OutputComposite)
    intermediate_use: Numeric = 0              # purchases of intermediate goods
    capital_consumption: Numeric = 0           # K1
    wages_paid: Numeric = 0                    # D11
    employer_contributions_paid: Numeric = 0   # D12
    product_taxes_paid: Numeric = 0            # D21 (zero when embedded in prices)
    production_taxes_paid: Numeric = 0         # D29
    product_subsidies_received: Numeric = 0    # D31 (zero when embedded in prices)
    production_subsidies_received: Numeric = 0  # D39
    property_income_received: Numeric = 0      # D4
    property_income_paid: Numeric = 0
    social_transfers_received: Numeric = 0     # D61+D62
    social_transfers_paid: Numeric = 0
    other_transfers_received: Numeric = 0      # D7
    other_transfers_paid: Numeric = 0
    income_taxes_paid: Numeric = 0             # D5
    pension_adjustment: Numeric = 0            # D8, signed
    capital_transfers_received: Numeric = 0    # D9
    capital_transfers_paid: Numeric = 0
    own_investment: Numeric = 0                # P5
    nonproduced_assets_net: Numeric = 0        # K2, signed
    liabilities_issued_net: Numeric = 0        # dPsi, signed

    def __post_init__(self):
        _coerce(self)
        _check_nonnegative(self)


@dataclass(frozen=True)
class HouseholdSectorInputs(FirmSectorInputs):
    """Firm inputs plus wage income, contribution refunds, and consumption."""

    wages_received: Numeric = 0                  # D11 received as employees
    employer_contributions_received: Numeric = 0  # D12 received
    final_consumption: Numeric = 0               # P31 spent


@dataclass(frozen=True)
class GovernmentSectorInputs(FirmSectorInputs):
    """Firm inputs plus tax receipts, subsidy payments, and public consumption."""

    production_taxes_received: Numeric = 0   # D21 + D29 received
    income_taxes_received: Numeric = 0       # D5 received
    subsidies_paid: Numeric = 0              # D31 + D39 paid
    individual_consumption: Numeric = 0      # P31 spent on behalf of households
    collective_consumption: Numeric = 0      # P32


@dataclass(frozen=True)
class RestOfWorldInputs:
    """Cross-border flows, from the external sector's point of view."""

    imports: Numeric = 0     # home-country imports = external revenue
    exports: Numeric = 0     # home-country exports = external expenditure
    wages_received: Numeric = 0
    wages_paid: Numeric = 0
    employer_contributions_received: Numeric = 0
    employer_contributions_paid: Numeric = 0
    production_taxes_received: Numeric = 0   # D21 + D29 received abroad
    subsidies_paid: Numeric = 0              # D31 + D39 paid to the home country
    property_income_received: Numeric = 0
    property_income_paid: Numeric = 0
    social_transfers_received: Numeric = 0
    social_transfers_paid: Numeric = 0
    other_transfers_received: Numeric = 0
    other_transfers_paid: Numeric = 0
    capital_transfers_received: Numeric = 0
    capital_transfers_paid: Numeric = 0
    nonproduced_assets_net: Numeric = 0
    liabilities_issued_net: Numeric = 0

    def __post_init__(self):
        _coerce(self)
        _check_nonnegative(self)


@dataclass(frozen=True)
class SectorResult:
    """Balancing items of one sector chain, each signed, million EUR/year.

    For the external sector `operating_surplus` holds the external
    balance of goods and services and `disposable_income`/`net_saving`
    both hold the current external balance; value added is undefined
    there and left as None.
    """

    gross_value_added: Optional[Fraction]
    net_value_added: Optional[Fraction]
    operating_surplus: Fraction
    primary_income_balance: Optional[Fraction]
    disposable_income: Fraction
    net_saving: Fraction
    net_lending: Fraction
    financial_assets_net: Fraction
    accounts: dict[str, AccountNode]

    def account(self, name: str) -> AccountNode:
        return self.accounts[name]


def production_account(output_value: Numeric, intermediate_use: Numeric, capital_consumption: Numeric):
    """Gross and net value added from output and input use."""
    out = exact(output_value)
    gva = out - exact(intermediate_use)
    nva = gva - exact(capital_consumption)
    return gva, nva


def _entries(pairs) -> list:
    """Drop zero-valued entries so account views stay readable."""
    return [(symbol, value) for symbol, value in pairs if value != 0]


def firm_chain(inputs: FirmSectorInputs) -> SectorResult:
    """Evaluate the full corporate-sector chain.

    Corporations do not consume, so disposable income flows to saving in
    full (after the optional pension-entitlement adjustment).
    """
    output_value = inputs.output_value.resolve()
    gva, nva = production_account(output_value, inputs.intermediate_use, inputs.capital_consumption)

    production = AccountNode(
        PRODUCTION,
        _entries([("output", output_value)]),
        _entries([("intermediates", inputs.intermediate_use)]),
        "GVA",
    )
    generation = AccountNode(
        GENERATION,
        _entries([
            ("GVA", gva),
            ("product-subsidies", inputs.product_subsidies_received),
            ("production-subsidies", inputs.production_subsidies_received),
        ]),
        _entries([
            ("wages", inputs.wages_paid),
            ("employer-contributions", inputs.employer_contributions_paid),
            ("product-taxes", inputs.product_taxes_paid),
            ("production-taxes", inputs.production_taxes_paid),
            ("capital-consumption", inputs.capital_consumption),
        ]),
        "operating-surplus",
    )
    operating_surplus = balance(generation)

    allocation = AccountNode(
        ALLOCATION,
        _entries([
            ("operating-surplus", operating_surplus),
            ("property-income", inputs.property_income_received),
        ]),
        _entries([("property-charges", inputs.property_income_paid)]),
        "primary-income",
    )
    primary_income = balance(allocation)

    secondary = AccountNode(
        SECONDARY,
        _entries([
            ("primary-income", primary_income),
            ("social-transfers", inputs.social_transfers_received),
            ("other-transfers", inputs.other_transfers_received),
        ]),
        _entries([
            ("social-transfers", inputs.social_transfers_paid),
            ("other-transfers", inputs.other_transfers_paid),
            ("income-taxes", inputs.income_taxes_paid),
        ]),
        "disposable-income",
    )
    disposable_income = balance(secondary)

    use_of_income = AccountNode(
        USE_OF_INCOME,
        _entries([
            ("disposable-income", disposable_income),
            ("pension-adjustment", inputs.pension_adjustment),
        ]),
        (),
        "saving",
    )
    saving = balance(use_of_income)

    capital = AccountNode(
        CAPITAL,
        _entries([
            ("saving", saving),
            ("capital-consumption", inputs.capital_consumption),
            ("capital-transfers", inputs.capital_transfers_received),
        ]),
        _entries([
            ("capital-transfers", inputs.capital_transfers_paid),
            ("investment", inputs.own_investment),
            ("nonproduced-assets", inputs.nonproduced_assets_net),
        ]),
        "net-lending",
    )
    net_lending = balance(capital)

    financial = AccountNode(
        FINANCIAL,
        _entries([
            ("net-lending", net_lending),
            ("liabilities-issued", inputs.liabilities_issued_net),
        ]),
        (),
        "assets-acquired",
    )
    assets_acquired = balance(financial)

    return SectorResult(
        gross_value_added=gva,
        net_value_added=nva,
        operating_surplus=operating_surplus,
        primary_income_balance=primary_income,
        disposable_income=disposable_income,
        net_saving=saving,
        net_lending=net_lending,
        financial_assets_net=assets_acquired,
        accounts={
            node.name: node
            for node in (production, generation, allocation, secondary, use_of_income, capital, financial)
        },
    )


def household_chain(inputs: HouseholdSectorInputs) -> SectorResult:
    """Evaluate the household (plus NPISH) chain.

    Households differ from corporations in three ways: wages and
    refunded employer contributions enter at the primary-income stage,
    the pension adjustment lands in disposable income, and final
    consumption is spent before saving.
    """
    base = firm_chain(
        FirmSectorInputs(
            output_value=inputs.output_value,
            intermediate_use=inputs.intermediate_use,
            capital_consumption=inputs.capital_consumption,
            wages_paid=inputs.wages_paid,
            employer_contributions_paid=inputs.employer_contributions_paid,
            product_taxes_paid=inputs.product_taxes_paid,
            production_taxes_paid=inputs.production_taxes_paid,
            product_subsidies_received=inputs.product_subsidies_received,
            production_subsidies_received=inputs.production_subsidies_received,
        )
    )
    operating_surplus = base.operating_surplus

    allocation = AccountNode(
        ALLOCATION,
        _entries([
            ("operating-surplus", operating_surplus),
            ("wages", inputs.wages_received),
            ("employer-contributions", inputs.employer_contributions_received),
            ("property-income", inputs.property_income_received),
        ]),
        _entries([("property-charges", inputs.property_income_paid)]),
        "primary-income",
    )
    primary_income = balance(allocation)

    secondary = AccountNode(
        SECONDARY,
        _entries([
            ("primary-income", primary_income),
            ("social-transfers", inputs.social_transfers_received),
            ("other-transfers", inputs.other_transfers_received),
            ("pension-adjustment", inputs.pension_adjustment),
        ]),
        _entries([
            ("social-transfers", inputs.social_transfers_paid),
            ("other-transfers", inputs.other_transfers_paid),
            ("income-taxes", inputs.income_taxes_paid),
        ]),
        "disposable-income",
    )
    disposable_income = balance(secondary)

    use_of_income = AccountNode(
        USE_OF_INCOME,
        _entries([("disposable-income", disposable_income)]),
        _entries([("consumption", inputs.final_consumption)]),
        "saving",
    )
    saving = balance(use_of_income)

    capital = AccountNode(
        CAPITAL,
        _entries([
            ("saving", saving),
            ("capital-consumption", inputs.capital_consumption),
            ("capital-transfers", inputs.capital_transfers_received),
        ]),
        _entries([
            ("capital-transfers", inputs.capital_transfers_paid),
            ("investment", inputs.own_investment),
            ("nonproduced-assets", inputs.nonproduced_assets_net),
        ]),
        "net-lending",
    )
    net_lending = balance(capital)

    financial = AccountNode(
        FINANCIAL,
        _entries([
            ("net-lending", net_lending),
            ("liabilities-issued", inputs.liabilities_issued_net),
        ]),
        (),
        "assets-acquired",
    )

    return SectorResult(
        gross_value_added=base.gross_value_added,
        net_value_added=base.net_value_added,
        operating_surplus=operating_surplus,
        primary_income_balance=primary_income,
        disposable_income=disposable_income,
        net_saving=saving,
        net_lending=net_lending,
        financial_assets_net=balance(financial),
        accounts={
            PRODUCTION: base.accounts[PRODUCTION],
            GENERATION: base.accounts[GENERATION],
            ALLOCATION: allocation,
            SECONDARY: secondary,
            USE_OF_INCOME: use_of_income,
            CAPITAL: capital,
            FINANCIAL: financial,
        },
    )


def government_chain(inputs: GovernmentSectorInputs) -> SectorResult:
    """Evaluate the government chain.

    Production taxes received and subsidies paid enter the
    primary-income stage; individual and collective consumption are
    spent out of disposable income.
    """
    base = firm_chain(
        FirmSectorInputs(
            output_value=inputs.output_value,
            intermediate_use=inputs.intermediate_use,
            capital_consumption=inputs.capital_consumption,
            wages_paid=inputs.wages_paid,
            employer_contributions_paid=inputs.employer_contributions_paid,
            product_taxes_paid=inputs.product_taxes_paid,
            production_taxes_paid=inputs.production_taxes_paid,
            product_subsidies_received=inputs.product_subsidies_received,
            production_subsidies_received=inputs.production_subsidies_received,
        )
    )
    operating_surplus = base.operating_surplus

    allocation = AccountNode(
        ALLOCATION,
        _entries([
            ("operating-surplus", operating_surplus),
            ("production-taxes", inputs.production_taxes_received),
            ("property-income", inputs.property_income_received),
        ]),
        _entries([
            ("subsidies", inputs.subsidies_paid),
            ("property-charges", inputs.property_income_paid),
        ]),
        "primary-income",
    )
    primary_income = balance(allocation)

    secondary = AccountNode(
        SECONDARY,
        _entries([
            ("primary-income", primary_income),
            ("income-taxes", inputs.income_taxes_received),
            ("social-transfers", inputs.social_transfers_received),
            ("other-transfers", inputs.other_transfers_received),
        ]),
        _entries([
            ("income-taxes", inputs.income_taxes_paid),
            ("social-transfers", inputs.social_transfers_paid),
            ("other-transfers", inputs.other_transfers_paid),
        ]),
        "disposable-income",
    )
    disposable_income = balance(secondary)

    use_of_income = AccountNode(
        USE_OF_INCOME,
        _entries([
            ("disposable-income", disposable_income),
            ("pension-adjustment", inputs.pension_adjustment),
        ]),
        _entries([
            ("individual-consumption", inputs.individual_consumption),
            ("collective-consumption", inputs.collective_consumption),
        ]),
        "saving",
    )
    saving = balance(use_of_income)

    capital = AccountNode(
        CAPITAL,
        _entries([
            ("saving", saving),
            ("capital-consumption", inputs.capital_consumption),
            ("capital-transfers", inputs.capital_transfers_received),
        ]),
        _entries([
            ("capital-transfers", inputs.capital_transfers_paid),
            ("investment", inputs.own_investment),
            ("nonproduced-assets", inputs.nonproduced_assets_net),
        ]),
        "net-lending",
    )
    net_lending = balance(capital)

    financial = AccountNode(
        FINANCIAL,
        _entries([
            ("net-lending", net_lending),
            ("liabilities-issued", inputs.liabilities_issued_net),
        ]),
        (),
        "assets-acquired",
    )

    return SectorResult(
        gross_value_added=base.gross_value_added,
        net_value_added=base.net_value_added,
        operating_surplus=operating_surplus,
        primary_income_balance=primary_income,
        disposable_income=disposable_income,
        net_saving=saving,
        net_lending=net_lending,
        financial_assets_net=balance(financial),
        accounts={
            PRODUCTION: base.accounts[PRODUCTION],
            GENERATION: base.accounts[GENERATION],
            ALLOCATION: allocation,
            SECONDARY: secondary,
            USE_OF_INCOME: use_of_income,
            CAPITAL: capital,
            FINANCIAL: financial,
        },
    )


def rest_of_world_chain(inputs: RestOfWorldInputs) -> SectorResult:
    """Evaluate the external-sector chain.

    The goods account balances to the external balance of goods and
    services; the single consolidated income account balances to the
    current external balance, which doubles as the sector's disposable
    income and saving.
    """
    generation = AccountNode(
        GENERATION,
        _entries([("imports", inputs.imports)]),
        _entries([("exports", inputs.exports)]),
        "external-balance",
    )
    external_balance = balance(generation)

    income = AccountNode(
        SECONDARY,
        _entries([
            ("external-balance", external_balance),
            ("wages", inputs.wages_received),
            ("employer-contributions", inputs.employer_contributions_received),
            ("production-taxes", inputs.production_taxes_received),
            ("property-income", inputs.property_income_received),
            ("social-transfers", inputs.social_transfers_received),
            ("other-transfers", inputs.other_transfers_received),
        ]),
        _entries([
            ("wages", inputs.wages_paid),
            ("employer-contributions", inputs.employer_contributions_paid),
            ("subsidies", inputs.subsidies_paid),
            ("property-charges", inputs.property_income_paid),
            ("social-transfers", inputs.social_transfers_paid),
            ("other-transfers", inputs.other_transfers_paid),
        ]),
        "current-external-balance",
    )
    payments_balance = balance(income)

    capital = AccountNode(
        CAPITAL,
        _entries([
            ("current-external-balance", payments_balance),
            ("capital-transfers", inputs.capital_transfers_received),
        ]),
        _entries([
            ("capital-transfers", inputs.capital_transfers_paid),
            ("nonproduced-assets", inputs.nonproduced_assets_net),
        ]),
        "net-lending",
    )
    net_lending = balance(capital)

    financial = AccountNode(
        FINANCIAL,
        _entries([
            ("net-lending", net_lending),
            ("liabilities-issued", inputs.liabilities_issued_net),
        ]),
        (),
        "assets-acquired",
    )

    return SectorResult(
        gross_value_added=None,
        net_value_added=None,
        operating_surplus=external_balance,
        primary_income_balance=None,
        disposable_income=payments_balance,
        net_saving=payments_balance,
        net_lending=net_lending,
        financial_assets_net=balance(financial),
        accounts={
            GENERATION: generation,
            SECONDARY: income,
            CAPITAL: capital,
            FINANCIAL: financial,
        },
    )


# --- Building chain inputs from a year's ledgers -----------------------


def firm_inputs(ledger: SectorLedger) -> FirmSectorInputs:
    return FirmSectorInputs(
        output_value=composite(ledger.received("P1")),
        intermediate_use=ledger.paid("P2"),
        capital_consumption=ledger.paid("K1"),
        wages_paid=ledger.paid("D11"),
        employer_contributions_paid=ledger.paid("D12"),
        product_taxes_paid=ledger.paid("D21"),
        production_taxes_paid=ledger.paid("D29"),
        product_subsidies_received=ledger.received("D31"),
        production_subsidies_received=ledger.received("D39"),
        property_income_received=ledger.received("D4"),
        property_income_paid=ledger.paid("D4"),
        social_transfers_received=ledger.received("D61D62"),
        social_transfers_paid=ledger.paid("D61D62"),
        other_transfers_received=ledger.received("D7"),
        other_transfers_paid=ledger.paid("D7"),
        income_taxes_paid=ledger.paid("D5"),
        pension_adjustment=ledger.net("D8"),
        capital_transfers_received=ledger.received("D9"),
        capital_transfers_paid=ledger.paid("D9"),
        own_investment=ledger.paid("P5"),
        nonproduced_assets_net=ledger.net("K2"),
        liabilities_issued_net=ledger.net("dPsi"),
    )


def household_inputs(ledger: SectorLedger) -> HouseholdSectorInputs:
    base = firm_inputs(ledger)
    return HouseholdSectorInputs(
        **{spec.name: getattr(base, spec.name) for spec in fields(FirmSectorInputs)},
        wages_received=ledger.received("D11"),
        employer_contributions_received=ledger.received("D12"),
        final_consumption=ledger.paid("P31"),
    )


def government_inputs(ledger: SectorLedger) -> GovernmentSectorInputs:
    base = firm_inputs(ledger)
    return GovernmentSectorInputs(
        **{spec.name: getattr(base, spec.name) for spec in fields(FirmSectorInputs)},
        production_taxes_received=ledger.received("D21") + ledger.received("D29"),
        income_taxes_received=ledger.received("D5"),
        subsidies_paid=ledger.paid("D31") + ledger.paid("D39"),
        individual_consumption=ledger.paid("P31"),
        collective_consumption=ledger.paid("P32"),
    )


def rest_of_world_inputs(ledger: SectorLedger) -> RestOfWorldInputs:
    return RestOfWorldInputs(
        imports=ledger.received("P7"),
        exports=ledger.paid("P6"),
        wages_received=ledger.received("D11"),
        wages_paid=ledger.paid("D11"),
        employer_contributions_received=ledger.received("D12"),
        employer_contributions_paid=ledger.paid("D12"),
        production_taxes_received=ledger.received("D21") + ledger.received("D29"),
        subsidies_paid=ledger.paid("D31") + ledger.paid("D39"),
        property_income_received=ledger.received("D4"),
        property_income_paid=ledger.paid("D4"),
        social_transfers_received=ledger.received("D61D62"),
        social_transfers_paid=ledger.paid("D61D62"),
        other_transfers_received=ledger.received("D7"),
        other_transfers_paid=ledger.paid("D7"),
        capital_transfers_received=ledger.received("D9"),
        capital_transfers_paid=ledger.paid("D9"),
        nonproduced_assets_net=ledger.net("K2"),
        liabilities_issued_net=ledger.net("dPsi"),
    )


_CHAIN_BY_SECTOR = {
    "NFS": (firm_inputs, firm_chain),
    "FFS": (firm_inputs, firm_chain),
    "HS": (household_inputs, household_chain),
    "GS": (government_inputs, government_chain),
    "RS": (rest_of_world_inputs, rest_of_world_chain),
}


def compute_results(year: EconomyYear, sector: str) -> SectorResult:
    """Rebuild a sector's balancing items from its component flows."""
    build, chain = _CHAIN_BY_SECTOR[sector]
    return chain(build(year.sector(sector)))


# Reported balancing-item codes in SectorResult order. For the external
# sector the first two roles are carried by B11/B12 instead.
_REPORTED_CODES = {
    "operating_surplus": "B13N",
    "primary_income_balance": "B5NT",
    "disposable_income": "B6N",
    "net_saving": "B8N",
    "net_lending": "B9",
}
_REPORTED_CODES_RS = {
    "operating_surplus": "B11",
    "disposable_income": "B12",
    "net_saving": "B8N",
    "net_lending": "B9",
}


def reported_results(year: EconomyYear, sector: str) -> dict[str, Fraction]:
    """Reported balancing items present in the ledger, by result field name."""
    codes = _REPORTED_CODES_RS if sector == "RS" else _REPORTED_CODES
    ledger = year.sector(sector)
    out = {}
    for name, code in codes.items():
        if ledger.has(code, "net"):
            out[name] = ledger.net(code)
    return out


@dataclass(frozen=True)
class ChainResidual:
    """Recomputed-minus-reported difference for one balancing item."""

    sector: str
    item: str
    reported: Fraction
    recomputed: Fraction

    @property
    def residual(self) -> Fraction:
        return self.recomputed - self.reported


def chain_residuals(year: EconomyYear) -> list[ChainResidual]:
    """Compare every reported balancing item against its recomputation."""
    out = []
    for sector in ("NFS", "FFS", "HS", "GS", "RS"):
        result = compute_results(year, sector)
        for name, reported in reported_results(year, sector).items():
            recomputed = getattr(result, name)
            out.append(ChainResidual(sector, name, reported, recomputed))
    return out
