"""Forward simulation of the money-flow system.

The closure is pool-and-allocate: each period, every payment into a
transfer system is generated from a calibrated rate, the system pools
what it collected and redistributes the full amount by calibrated
receiver shares, and the production account of the home country does
the same with goods spending. Money received is always used forward,
so every conservation identity holds exactly in every period, shocked
or not.

Calibration is deliberately minimal: payment rates are historical
fractions of the aggregate output value (the single exogenous driver),
receiver shares are historical fractions of each pool, household
consumption is a fraction of current disposable income, and sector
investment is a fraction of sector output. With rates and shares taken
from a single base year and a zero growth driver, the simulation
reproduces that year exactly.

Two consequences of the closure are worth knowing:

* Goods-market consistency under shocks is kept by an unplanned
  inventory term: if spending deviates from the exogenously scaled
  output value, producers book the difference as inventory investment
  in proportion to their output shares. Under pure calibrated rates the
  term is identically zero.
* Because consumption responds to disposable income within the period,
  a transfer shock moves household saving by the unconsumed part of the
  income change, while non-consuming sectors move one for one.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .dataset import Dataset, EconomyYear, SectorLedger
from .ledger import LedgerError, Numeric, SECTORS, accumulate, exact, render
from .markets import MARKET_KINDS, UNATTRIBUTED, clear, from_year
from . import identities, sectors

log = logging.getLogger(__name__)

DOMESTIC = ("NFS", "FFS", "HS", "GS")

# Transfer systems whose receipts are derived by pool allocation.
POOLED_KINDS = ("D11", "D12", "D4", "D5", "D61D62", "D39", "D29", "D7", "D9", "D21")

# Signed per-sector rates that must keep their economy-wide zero sum.
_ZERO_SUM_RATES = ("K2", "D8")

RateKey = tuple[str, str, str]  # (sector, item, direction)


class CalibrationError(LedgerError):
    """History unusable for calibration."""


class ConfigError(LedgerError):
    """Invalid scenario configuration."""


@dataclass(frozen=True)
class AllocationRule:
    """Receiver shares of one payment pool; non-negative, summing to one."""

    kind: str
    shares: Mapping[str, Fraction]

    def __init__(self, kind: str, shares: Mapping[str, Numeric]):
        converted = {key: exact(value) for key, value in shares.items()}
        for key, value in converted.items():
            if value < 0:
                raise ConfigError(f"{kind}: share for {key} is negative ({render(value)})")
        total = sum(converted.values(), Fraction(0))
        if total != 1:
            raise ConfigError(f"{kind}: shares sum to {render(total, 6)}, expected exactly 1")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "shares", dict(converted))


@dataclass(frozen=True)
class CalibratedRules:
    """Everything the stepper needs, estimated from history."""

    base_scale: Fraction                       # aggregate output value of the base
    output_shares: Mapping[str, Fraction]      # per domestic sector, sums to 1
    allocations: Mapping[str, AllocationRule]  # receiver shares per pooled kind
    payment_rates: Mapping[RateKey, Fraction]  # flow per unit of scale
    consumption_rate: Fraction                 # household consumption / disposable income
    investment_rates: Mapping[str, Fraction]   # sector investment / sector output
    product_tax_rate: Fraction                 # unattributed sales skim per unit of scale

    def describe(self) -> str:
        lines = [f"base scale: {render(self.base_scale)}"]
        lines.append("output shares: " + ", ".join(
            f"{s}={render(v, 6)}" for s, v in sorted(self.output_shares.items())))
        lines.append(f"consumption rate: {render(self.consumption_rate, 6)}")
        lines.append(f"product tax rate: {render(self.product_tax_rate, 6)}")
        for sector, rate in sorted(self.investment_rates.items()):
            lines.append(f"investment rate {sector}: {render(rate, 6)}")
        for kind in sorted(self.allocations):
            rule = self.allocations[kind]
            lines.append(f"allocation {kind}: " + ", ".join(
                f"{s}={render(v, 6)}" for s, v in sorted(rule.shares.items())))
        for (sector, item, direction), rate in sorted(self.payment_rates.items()):
            lines.append(f"rate {sector}.{item}.{direction}: {render(rate, 8)}")
        return "\n".join(lines)


@dataclass(frozen=True)
class SectorStocks:
    assets: Fraction = Fraction(0)
    liabilities: Fraction = Fraction(0)
    fixed_capital: Fraction = Fraction(0)

    @property
    def net_worth(self) -> Fraction:
        return self.assets - self.liabilities


@dataclass(frozen=True)
class SimulationState:
    period: int
    flows: EconomyYear
    stocks: Mapping[str, SectorStocks]
    scale: Fraction

    @staticmethod
    def initial(year: EconomyYear, stocks: Mapping[str, SectorStocks] | None = None) -> "SimulationState":
        scale = sum((year.sector(s).received("P1") for s in DOMESTIC), Fraction(0))
        base_stocks = dict(stocks or {})
        for sector in SECTORS:
            base_stocks.setdefault(sector, SectorStocks())
        return SimulationState(0, year, base_stocks, scale)


@dataclass(frozen=True)
class Shock:
    """Multiplicative override of one named share or rate in one period."""

    period: int
    target: str      # "share" or "rate"
    kind: str        # market kind (share) or item code (rate)
    sector: str
    factor: Fraction


@dataclass(frozen=True)
class ScenarioConfig:
    horizon: int
    driver: Fraction = Fraction(0)
    shocks: tuple[Shock, ...] = ()

    def __post_init__(self):
        if self.horizon < 1:
            raise ConfigError(f"horizon must be >= 1, got {self.horizon}")


_CONFIG_SHOCK_RE = re.compile(
    r"^shock\.(?P<period>\d+)\.(?P<target>share|rate)\.(?P<kind>[A-Za-z0-9]+)\.(?P<sector>[A-Z]+)$"
)


def parse_config(text: str) -> ScenarioConfig:
    """Parse a scenario from plain key-value text.

    Recognized keys: ``horizon``, ``driver``, and shock overrides of the
    form ``shock.<period>.<share|rate>.<kind>.<sector> = <factor>``.
    Lines starting with ``#`` are comments.
    """
    horizon = None
    driver = Fraction(0)
    shocks: list[Shock] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {line!r}")
        key, _, value = (part.strip() for part in line.partition("="))
        if key == "horizon":
            try:
                horizon = int(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: bad horizon {value!r}") from None
        elif key == "driver":
            driver = exact(value)
        elif m := _CONFIG_SHOCK_RE.match(key):
            shocks.append(
                Shock(
                    period=int(m.group("period")),
                    target=m.group("target"),
                    kind=m.group("kind"),
                    sector=m.group("sector"),
                    factor=exact(value),
                )
            )
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    if horizon is None:
        raise ConfigError("missing horizon")
    return ScenarioConfig(horizon=horizon, driver=driver, shocks=tuple(shocks))


def _mean(values: Sequence[Fraction]) -> Fraction:
    return sum(values, Fraction(0)) / len(values)


def calibrate(history: Dataset | EconomyYear) -> CalibratedRules:
    """Estimate allocation shares and behavioral rates from history.

    Shares and rates are historical means; with a single year of history
    they are that year's fractions, which makes the zero-growth
    simulation from that year an exact fixed point.
    """
    if isinstance(history, EconomyYear):
        years = [history]
    else:
        years = [history[key] for key in sorted(history)]
    if not years:
        raise CalibrationError("empty history: need at least one complete year")

    scales = []
    for year in years:
        scale = sum((year.sector(s).received("P1") for s in DOMESTIC), Fraction(0))
        if scale <= 0:
            raise CalibrationError(f"{year.year}: aggregate output value must be positive")
        scales.append(scale)

    output_shares = {
        sector: _mean([
            year.sector(sector).received("P1") / scale
            for year, scale in zip(years, scales)
        ])
        for sector in DOMESTIC
    }

    allocations = {}
    for kind in POOLED_KINDS:
        per_year: list[dict[str, Fraction]] = []
        for year in years:
            system = from_year(year, kind)
            pool = system.total_received()
            if pool == 0:
                continue
            per_year.append({
                sector: value / pool
                for sector, value in system.receipts.items()
                if sector != UNATTRIBUTED
            })
        if not per_year:
            log.warning("%s: pool empty in every year; using uniform shares", kind)
            uniform = Fraction(1, len(SECTORS))
            allocations[kind] = AllocationRule(kind, {s: uniform for s in SECTORS})
            continue
        receivers = sorted({sector for shares in per_year for sector in shares})
        allocations[kind] = AllocationRule(
            kind,
            {
                sector: _mean([shares.get(sector, Fraction(0)) for shares in per_year])
                for sector in receivers
            },
        )

    consumption_samples = []
    for year in years:
        result = sectors.compute_results(year, "HS")
        if result.disposable_income != 0:
            consumption_samples.append(
                year.sector("HS").paid("P31") / result.disposable_income
            )
    consumption_rate = _mean(consumption_samples) if consumption_samples else Fraction(0)

    investment_rates = {}
    for sector in DOMESTIC:
        samples = []
        for year in years:
            output = year.sector(sector).received("P1")
            if output > 0:
                samples.append(year.sector(sector).paid("P5") / output)
        investment_rates[sector] = _mean(samples) if samples else Fraction(0)

    # Product taxes reach the state as a skim off sales with no
    # attributed payer; the skim is calibrated as a fraction of the
    # scale, net of any payments a dataset does attribute.
    product_tax_samples = []
    for year, scale in zip(years, scales):
        received = sum((year.sector(s).received("D21") for s in SECTORS), Fraction(0))
        attributed = sum((year.sector(s).paid("D21") for s in SECTORS), Fraction(0))
        product_tax_samples.append((received - attributed) / scale)
    product_tax_rate = _mean(product_tax_samples)

    # Everything else is a payment rate against the aggregate scale:
    # intermediate use, capital consumption, wages, contributions,
    # taxes, subsidies, transfers, exports and imports, and the signed
    # net items. Receipts of pooled kinds, output, household
    # consumption, and sector investment are derived, so they are
    # excluded; so are reported balancing items.
    derived: set[RateKey] = set()
    for sector in DOMESTIC:
        derived.add((sector, "P1", "received"))
        derived.add((sector, "P5", "paid"))
    derived.add(("HS", "P31", "paid"))
    for kind in POOLED_KINDS:
        for sector in SECTORS:
            derived.add((sector, kind, "received"))

    rate_keys: set[RateKey] = set()
    for year in years:
        for sector in SECTORS:
            for (item, direction), value in year.sector(sector).items():
                key = (sector, item, direction)
                if key in derived:
                    continue
                if item.startswith("B"):
                    continue  # reported balancing items are outputs, not drivers
                rate_keys.add(key)

    payment_rates = {
        key: _mean([
            year.sector(key[0]).get(key[1], key[2]) / scale
            for year, scale in zip(years, scales)
        ])
        for key in sorted(rate_keys)
    }

    return CalibratedRules(
        base_scale=scales[-1],
        output_shares=output_shares,
        allocations=allocations,
        payment_rates=payment_rates,
        consumption_rate=consumption_rate,
        investment_rates=investment_rates,
        product_tax_rate=product_tax_rate,
    )


def _apply_shocks(rules: CalibratedRules, shocks: Iterable[Shock]) -> CalibratedRules:
    shocks = list(shocks)
    if not shocks:
        return rules
    allocations = {kind: dict(rule.shares) for kind, rule in rules.allocations.items()}
    payment_rates = dict(rules.payment_rates)
    for shock in shocks:
        if shock.target == "share":
            if shock.kind not in allocations:
                raise ConfigError(f"shock names unknown pool {shock.kind!r}")
            shares = allocations[shock.kind]
            if shock.sector not in shares:
                raise ConfigError(
                    f"shock names {shock.sector!r}, not a receiver in pool {shock.kind}"
                )
            shares[shock.sector] = shares[shock.sector] * shock.factor
        else:
            candidates = [
                (shock.sector, shock.kind, direction)
                for direction in ("paid", "net", "received")
                if (shock.sector, shock.kind, direction) in payment_rates
            ]
            if not candidates:
                raise ConfigError(
                    f"shock names unknown rate {shock.sector}.{shock.kind}"
                )
            key = candidates[0]
            payment_rates[key] = payment_rates[key] * shock.factor
    rebuilt = {}
    for kind, shares in allocations.items():
        total = sum(shares.values(), Fraction(0))
        if total != 1:
            raise ConfigError(
                f"{kind}: shares sum to {render(total, 6)} after shock overrides; "
                "must sum to exactly 1"
            )
        rebuilt[kind] = AllocationRule(kind, shares)
    for item in _ZERO_SUM_RATES:
        total = sum(
            (rate for (sector, code, _), rate in payment_rates.items() if code == item),
            Fraction(0),
        )
        if total != 0:
            raise ConfigError(
                f"{item}: signed rates sum to {render(total, 8)} after shock overrides; "
                "must sum to exactly 0"
            )
    return replace(rules, allocations=rebuilt, payment_rates=payment_rates)


def step(state: SimulationState, rules: CalibratedRules, config: ScenarioConfig) -> SimulationState:
    """Advance the system one period.

    The aggregate output value grows by the driver; payments are
    generated from rates, pools redistribute in full, household
    consumption follows current disposable income, and the goods-market
    gap (zero under pure rates) is absorbed into producer inventories.
    Stocks then accumulate the period's financial and capital flows.
    """
    period = state.period + 1
    shocked = _apply_shocks(
        rules, (s for s in config.shocks if s.period == period)
    )
    scale = state.scale * (1 + config.driver)
    if scale <= 0:
        raise ConfigError(f"period {period}: driver drove the scale to {render(scale)}")

    flows: dict[str, dict[tuple[str, str], Fraction]] = {s: {} for s in SECTORS}

    def put(sector: str, item: str, direction: str, value: Fraction) -> None:
        if value != 0:
            flows[sector][(item, direction)] = value

    for (sector, item, direction), rate in shocked.payment_rates.items():
        put(sector, item, direction, rate * scale)

    # Output allocation and planned investment.
    for sector in DOMESTIC:
        put(sector, "P1", "received", shocked.output_shares[sector] * scale)
    investment = {
        sector: shocked.investment_rates[sector] * flows[sector].get(("P1", "received"), Fraction(0))
        for sector in DOMESTIC
    }

    # Pool-and-allocate the transfer systems.
    pools: dict[str, Fraction] = {}
    for kind in POOLED_KINDS:
        pool = sum(
            (flows[s].get((kind, "paid"), Fraction(0)) for s in SECTORS), Fraction(0)
        )
        if kind == "D21":
            # The unattributed sales skim joins any attributed payments.
            pool += shocked.product_tax_rate * scale
        pools[kind] = pool
        rule = shocked.allocations.get(kind)
        if pool == 0:
            continue
        if rule is None:
            raise ConfigError(f"no allocation rule for pool {kind}")
        for sector, share in rule.shares.items():
            put(sector, kind, "received", share * pool)

    # Household consumption out of current disposable income.
    hs_ledger = SectorLedger("HS", flows["HS"])
    hs_result = sectors.household_chain(sectors.household_inputs(hs_ledger))
    consumption = shocked.consumption_rate * hs_result.disposable_income
    put("HS", "P31", "paid", consumption)

    # Goods-market closure: collect spending, skim product taxes, add
    # product subsidies, pay for imports; whatever misses the scaled
    # output value becomes unplanned producer inventories.
    collected = (
        consumption
        + sum((flows[s].get(("P31", "paid"), Fraction(0)) for s in SECTORS if s != "HS"), Fraction(0))
        + sum((flows[s].get(("P32", "paid"), Fraction(0)) for s in SECTORS), Fraction(0))
        + sum(investment.values(), Fraction(0))
        + sum((flows[s].get(("P2", "paid"), Fraction(0)) for s in SECTORS), Fraction(0))
        + flows["RS"].get(("P6", "paid"), Fraction(0))
    )
    net_pool = (
        collected
        - flows["RS"].get(("P7", "received"), Fraction(0))
        - shocked.product_tax_rate * scale
        + sum((flows[s].get(("D31", "paid"), Fraction(0)) for s in SECTORS), Fraction(0))
    )
    gap = scale - net_pool
    for sector in DOMESTIC:
        total_investment = investment[sector] + shocked.output_shares[sector] * gap
        put(sector, "P5", "paid", total_investment)

    year = EconomyYear(state.flows.year + 1, {
        sector: SectorLedger(sector, flows[sector]) for sector in SECTORS
    })

    # Evaluate the chains and write the balancing items back into the
    # ledgers, so the emitted year carries reported values that match
    # its components identically.
    results = {}
    stocks = {}
    for sector in SECTORS:
        result = sectors.compute_results(year, sector)
        results[sector] = result
        ledger_flows = dict(flows[sector])
        if sector == "RS":
            ledger_flows[("B11", "net")] = result.operating_surplus
            ledger_flows[("B12", "net")] = result.disposable_income
        else:
            ledger_flows[("B1G", "net")] = result.gross_value_added
            ledger_flows[("B1N", "net")] = result.net_value_added
            ledger_flows[("B13N", "net")] = result.operating_surplus
            ledger_flows[("B5NT", "net")] = result.primary_income_balance
            ledger_flows[("B6N", "net")] = result.disposable_income
        ledger_flows[("B8N", "net")] = result.net_saving
        ledger_flows[("B9", "net")] = result.net_lending
        year.ledgers[sector] = SectorLedger(sector, ledger_flows)

        prior = state.stocks.get(sector, SectorStocks())
        capital_consumption = year.sector(sector).paid("K1")
        own_investment = year.sector(sector).paid("P5")
        stocks[sector] = SectorStocks(
            assets=accumulate(prior.assets, [result.financial_assets_net]),
            liabilities=accumulate(prior.liabilities, [year.sector(sector).net("dPsi")]),
            fixed_capital=accumulate(
                prior.fixed_capital, [own_investment - capital_consumption]
            ),
        )

    return SimulationState(period, year, stocks, scale)


QUANTITY_FIELDS = (
    ("gross_value_added", "gva"),
    ("net_value_added", "nva"),
    ("operating_surplus", "operating_surplus"),
    ("primary_income_balance", "primary_income"),
    ("disposable_income", "disposable_income"),
    ("net_saving", "saving"),
    ("net_lending", "net_lending"),
    ("financial_assets_net", "assets_acquired"),
)
RS_QUANTITY_FIELDS = (
    ("operating_surplus", "external_balance"),
    ("disposable_income", "payments_balance"),
    ("net_saving", "saving"),
    ("net_lending", "net_lending"),
    ("financial_assets_net", "assets_acquired"),
)


def quantities(state: SimulationState) -> dict[str, Fraction]:
    """The named quantity set for one period: sector balancing items,
    market totals, product aggregates, and stocks."""
    year = state.flows
    out: dict[str, Fraction] = {}
    for sector in DOMESTIC:
        result = sectors.compute_results(year, sector)
        for attr, name in QUANTITY_FIELDS:
            out[f"{sector}.{name}"] = getattr(result, attr)
    rs = sectors.compute_results(year, "RS")
    for attr, name in RS_QUANTITY_FIELDS:
        out[f"RS.{name}"] = getattr(rs, attr)
    for kind in MARKET_KINDS:
        system = from_year(year, kind)
        if not system.zero_sum:
            total = clear(system)           # attributed one-sided total
        elif system.receipts:
            total = system.total_received()
        else:
            total = system.total_paid()     # signed systems: the zero sum itself
        out[f"market.{kind}.total"] = total
    report = identities.report(year)
    out["gdp.expenditure"] = report.gdp_expenditure
    out["gdp.income"] = report.gdp_income
    out["gdp.value_added"] = report.gdp_value_added
    out["national_income.lhs"] = report.national_income.lhs
    out["national_income.rhs"] = report.national_income.rhs
    for sector in SECTORS:
        stocks = state.stocks[sector]
        out[f"stock.{sector}.assets"] = stocks.assets
        out[f"stock.{sector}.liabilities"] = stocks.liabilities
        out[f"stock.{sector}.net_worth"] = stocks.net_worth
        if sector != "RS":
            out[f"stock.{sector}.fixed_capital"] = stocks.fixed_capital
    return out


@dataclass(frozen=True)
class SimulationRun:
    states: tuple[SimulationState, ...]   # period 1..horizon

    def series(self) -> list[tuple[int, str, Fraction]]:
        rows = []
        for state in self.states:
            for name, value in quantities(state).items():
                rows.append((state.period, name, value))
        return rows

    def to_csv(self) -> str:
        lines = ["period,quantity,value"]
        for period, name, value in self.series():
            lines.append(f"{period},{name},{render(value)}")
        return "\n".join(lines) + "\n"


def run(initial: SimulationState, rules: CalibratedRules, config: ScenarioConfig) -> SimulationRun:
    """Run a scenario to its horizon; deterministic for identical inputs."""
    states = []
    state = initial
    for _ in range(config.horizon):
        state = step(state, rules, config)
        states.append(state)
    return SimulationRun(tuple(states))
