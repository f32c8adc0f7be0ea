"""Economy-wide identities.

Gross domestic product is computed three ways (expenditure, income, and
value added) and disposable national income is checked as the statement
that money does not vanish: total disposable income equals final
consumption plus saving. Identity checks report signed residuals, never
bare booleans, so a failing dataset can be diagnosed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .dataset import EconomyYear
from .ledger import LedgerError, Numeric, exact
from . import sectors as _sectors

DOMESTIC = ("NFS", "FFS", "HS", "GS")


@dataclass(frozen=True)
class GdpBreakdown:
    """Aggregates for the three product routes, million EUR/year.

    Expenditure side: final consumption, investment, collective
    consumption, exports, imports. Income side: operating surplus,
    domestic wages paid, domestic employer contributions paid, domestic
    production taxes paid, capital consumption, and product/production
    subsidies received by domestic producers. Value-added side: the
    aggregate output value (including intermediate sales at purchaser
    prices) against intermediate use; intermediate sales must equal
    intermediate use at the aggregate level.
    """

    consumption: Fraction
    investment: Fraction
    government: Fraction
    exports: Fraction
    imports: Fraction
    operating_surplus: Fraction
    wages_domestic: Fraction
    employer_contributions_domestic: Fraction
    production_taxes_domestic: Fraction
    capital_consumption: Fraction
    subsidies_domestic: Fraction
    output_value: Fraction
    intermediate_use: Fraction
    intermediate_sales: Fraction

    def __init__(self, **values: Numeric):
        converted = {name: exact(value) for name, value in values.items()}
        if converted["intermediate_sales"] != converted["intermediate_use"]:
            raise LedgerError(
                "aggregate intermediate sales must equal aggregate intermediate use"
            )
        for name, value in converted.items():
            object.__setattr__(self, name, value)


def gdp_expenditure(b: GdpBreakdown) -> Fraction:
    """C + I + G + (X - M)."""
    return b.consumption + b.investment + b.government + (b.exports - b.imports)


def gdp_income(b: GdpBreakdown) -> Fraction:
    """Incomes generated in production, net of producer subsidies."""
    return (
        b.operating_surplus
        + b.wages_domestic
        + b.employer_contributions_domestic
        + b.production_taxes_domestic
        + b.capital_consumption
        - b.subsidies_domestic
    )


def gdp_value_added(b: GdpBreakdown) -> Fraction:
    """Aggregate output value less intermediate use."""
    return b.output_value - b.intermediate_use


def breakdown_from_year(year: EconomyYear, recompute: bool = False) -> GdpBreakdown:
    """Assemble the GDP aggregates from a year's ledgers.

    The operating surplus uses the reported balancing items when present
    (recompute=False); everything else is a sum of component flows.
    """
    consumption = sum((year.sector(s).paid("P31") for s in DOMESTIC), Fraction(0))
    investment = sum((year.sector(s).paid("P5") for s in DOMESTIC), Fraction(0))
    government = sum((year.sector(s).paid("P32") for s in DOMESTIC), Fraction(0))
    exports = year.sector("RS").paid("P6")
    imports = year.sector("RS").received("P7")

    operating_surplus = Fraction(0)
    for sector in DOMESTIC:
        ledger = year.sector(sector)
        if not recompute and ledger.has("B13N", "net"):
            operating_surplus += ledger.net("B13N")
        else:
            operating_surplus += _sectors.compute_results(year, sector).operating_surplus

    wages = sum((year.sector(s).paid("D11") for s in DOMESTIC), Fraction(0))
    contributions = sum((year.sector(s).paid("D12") for s in DOMESTIC), Fraction(0))
    # Product taxes are reported at the receiving end (payer unattributed);
    # other production taxes are reported at the paying end.
    production_taxes = (
        year.sector("GS").received("D21")
        + year.sector("RS").received("D21")
        + sum((year.sector(s).paid("D29") for s in DOMESTIC), Fraction(0))
    )
    capital_consumption = sum((year.sector(s).paid("K1") for s in DOMESTIC), Fraction(0))
    # Product subsidies are reported at the paying end (recipient
    # unattributed); other production subsidies at the receiving end.
    subsidies = (
        year.sector("GS").paid("D31")
        + year.sector("RS").paid("D31")
        + sum((year.sector(s).received("D39") for s in DOMESTIC), Fraction(0))
    )

    intermediate_use = sum((year.sector(s).paid("P2") for s in DOMESTIC), Fraction(0))
    output_value = (
        consumption + investment + government + (exports - imports) + intermediate_use
    )

    return GdpBreakdown(
        consumption=consumption,
        investment=investment,
        government=government,
        exports=exports,
        imports=imports,
        operating_surplus=operating_surplus,
        wages_domestic=wages,
        employer_contributions_domestic=contributions,
        production_taxes_domestic=production_taxes,
        capital_consumption=capital_consumption,
        subsidies_domestic=subsidies,
        output_value=output_value,
        intermediate_use=intermediate_use,
        intermediate_sales=intermediate_use,
    )


@dataclass(frozen=True)
class NationalIncomeSides:
    """Both sides of the disposable-national-income identity."""

    lhs: Fraction   # total disposable income of the domestic sectors
    rhs: Fraction   # final consumption plus domestic saving

    @property
    def residual(self) -> Fraction:
        return self.rhs - self.lhs


def national_income_identity(year: EconomyYear, recompute: bool = False) -> NationalIncomeSides:
    """Disposable national income, both ways.

    Left side: operating surplus plus household wage and contribution
    income, government production-tax receipts, and the domestic net
    transfer aggregates, less government subsidy payments. Right side:
    final consumption plus the saving of the domestic sectors. Income
    taxes appear identically on both sides and are cancelled.
    """
    operating_surplus = Fraction(0)
    saving = Fraction(0)
    for sector in DOMESTIC:
        ledger = year.sector(sector)
        if not recompute and ledger.has("B13N", "net"):
            operating_surplus += ledger.net("B13N")
        else:
            operating_surplus += _sectors.compute_results(year, sector).operating_surplus
        if not recompute and ledger.has("B8N", "net"):
            saving += ledger.net("B8N")
        else:
            saving += _sectors.compute_results(year, sector).net_saving

    def net_domestic(item: str) -> Fraction:
        return sum(
            (year.sector(s).received(item) - year.sector(s).paid(item) for s in DOMESTIC),
            Fraction(0),
        )

    wages_hh = year.sector("HS").received("D11")
    contributions_hh = year.sector("HS").received("D12")
    production_taxes_gov = year.sector("GS").received("D21") + year.sector("GS").received("D29")
    subsidies_gov = year.sector("GS").paid("D31") + year.sector("GS").paid("D39")

    lhs = (
        operating_surplus
        + wages_hh
        + contributions_hh
        + production_taxes_gov
        + net_domestic("D7")
        + net_domestic("D61D62")
        + net_domestic("D4")
        - subsidies_gov
    )
    consumption = sum((year.sector(s).paid("P31") for s in DOMESTIC), Fraction(0))
    government = sum((year.sector(s).paid("P32") for s in DOMESTIC), Fraction(0))
    rhs = consumption + government + saving
    return NationalIncomeSides(lhs, rhs)


def real_gdp(nominal: Numeric, average_price: Numeric) -> Fraction:
    """Deflate nominal GDP by an average unit price (million kg/year)."""
    price = exact(average_price)
    if price <= 0:
        raise LedgerError("average price must be positive")
    return exact(nominal) / price


@dataclass(frozen=True)
class IdentityReport:
    """GDP routes and the national-income identity for one year."""

    gdp_expenditure: Fraction
    gdp_income: Fraction
    gdp_value_added: Fraction
    national_income: NationalIncomeSides

    @property
    def gdp_residual(self) -> Fraction:
        return self.gdp_expenditure - self.gdp_income

    @property
    def clean(self) -> bool:
        return (
            self.gdp_expenditure == self.gdp_income == self.gdp_value_added
            and self.national_income.residual == 0
        )


def report(year: EconomyYear, recompute: bool = False) -> IdentityReport:
    b = breakdown_from_year(year, recompute=recompute)
    return IdentityReport(
        gdp_expenditure=gdp_expenditure(b),
        gdp_income=gdp_income(b),
        gdp_value_added=gdp_value_added(b),
        national_income=national_income_identity(year, recompute=recompute),
    )
