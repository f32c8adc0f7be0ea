"""Stock-flow-consistent national accounts.

Macro sectors are chains of balancing flow accounts; every inter-sector
transfer category is a conserved payment system; a transactions matrix
compiles to equations, T-accounts, or a money-flow digraph; and a
pool-and-allocate simulator rolls the whole system forward without ever
creating or destroying money.
"""

from .ledger import (
    AccountNode,
    BalanceSheet,
    Flow,
    ITEM_CODES,
    LedgerError,
    SECTORS,
    Stock,
    accumulate,
    balance,
    exact,
    render,
)
from .dataset import (
    Dataset,
    DatasetError,
    DatasetRow,
    EconomyYear,
    SectorLedger,
    load,
    load_json,
    save,
    save_json,
)
from .finland2011 import fixture_2011
from .sectors import (
    FirmSectorInputs,
    GovernmentSectorInputs,
    HouseholdSectorInputs,
    OutputComposite,
    RestOfWorldInputs,
    SectorResult,
    firm_chain,
    government_chain,
    household_chain,
    production_account,
    rest_of_world_chain,
)
from .consolidation import FlowEntry, MicroUnit, PairingError, consolidate, consolidate_asua
from .markets import (
    ConservationViolation,
    MARKET_KINDS,
    MarketSystem,
    OPEN_KINDS,
    ZERO_SUM_KINDS,
    check_all,
    clear,
)
from .identities import (
    GdpBreakdown,
    IdentityReport,
    gdp_expenditure,
    gdp_income,
    gdp_value_added,
    national_income_identity,
    real_gdp,
)
from .matrixdsl import (
    DslError,
    TransactionsMatrix,
    parse,
    to_equations,
    to_flow_graph,
    to_taccounts,
)
from .simulate import (
    AllocationRule,
    CalibratedRules,
    ScenarioConfig,
    SimulationRun,
    SimulationState,
    calibrate,
    run,
    step,
)

__version__ = "0.1.0"
