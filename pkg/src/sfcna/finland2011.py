"""Embedded Finnish national-accounts data for 2011, million EUR/year.

The values come from the published 2011 accounts (household figures
consolidated with non-profit institutions serving households). Three
groups of entries cannot be read off the published tables directly and
are flagged with provenance "derived":

* K2 signs for NFS, FFS, and GS. The tables report magnitudes only for
  those sectors; the signs below are the unique assignment consistent
  with the reported net-lending values and with the economy-wide zero
  sum of the K2 system. (The HS and RS entries carry signs in the
  published figures and are flagged "reported".)
* D8 pension-entitlement adjustments (+68 for FFS, -68 for HS). Needed
  to reconcile reported saving with the transfer components.
* A 12 M EUR addition to household social contributions paid (25265
  published for households proper + 12 for the NPISH component, which
  the published sub-tables omit). The 12 is forced three ways: the
  social-contributions system totals 60976 on the receipts side, the
  domestic net social-transfer aggregate is 11, and household
  disposable income is reported as 107191. Without it all three are
  off by exactly 12.

Everything else is flagged "reported".
"""

from __future__ import annotations

from .dataset import (
    EconomyYear,
    SectorLedger,
    SOURCE_DERIVED,
    SOURCE_REPORTED,
)
from .ledger import NET, PAID, RECEIVED, SECTORS

YEAR = 2011

# Published household social contributions paid, and the NPISH residual
# that closes the D61D62 system (see module docstring).
HS_SOCIAL_PAID_PUBLISHED = 25265
HS_SOCIAL_PAID_RECONCILIATION = 12

# (sector, item, direction, value, provenance)
_ROWS: tuple[tuple[str, str, str, int, str], ...] = (
    # --- Non-financial corporations -----------------------------------
    ("NFS", "P1", RECEIVED, 271298, SOURCE_REPORTED),
    ("NFS", "P2", PAID, 166990, SOURCE_REPORTED),
    ("NFS", "K1", PAID, 21651, SOURCE_REPORTED),
    ("NFS", "D11", PAID, 50565, SOURCE_REPORTED),
    ("NFS", "D12", PAID, 10875, SOURCE_REPORTED),
    ("NFS", "D29", PAID, 240, SOURCE_REPORTED),
    ("NFS", "D39", RECEIVED, 1222, SOURCE_REPORTED),
    ("NFS", "D4", RECEIVED, 11430, SOURCE_REPORTED),
    ("NFS", "D4", PAID, 22912, SOURCE_REPORTED),
    ("NFS", "D7", RECEIVED, 1666, SOURCE_REPORTED),
    ("NFS", "D7", PAID, 1018, SOURCE_REPORTED),
    ("NFS", "D5", PAID, 4969, SOURCE_REPORTED),
    ("NFS", "D9", RECEIVED, 255, SOURCE_REPORTED),
    ("NFS", "D9", PAID, 30, SOURCE_REPORTED),
    ("NFS", "P5", PAID, 25016, SOURCE_REPORTED),
    ("NFS", "K2", NET, -111, SOURCE_DERIVED),
    ("NFS", "B13N", NET, 22199, SOURCE_REPORTED),
    ("NFS", "B5NT", NET, 10717, SOURCE_REPORTED),
    ("NFS", "B6N", NET, 6396, SOURCE_REPORTED),
    ("NFS", "B8N", NET, 6396, SOURCE_REPORTED),
    ("NFS", "B9", NET, 3367, SOURCE_REPORTED),
    # --- Financial corporations ---------------------------------------
    ("FFS", "P1", RECEIVED, 9250, SOURCE_REPORTED),
    ("FFS", "P2", PAID, 4617, SOURCE_REPORTED),
    ("FFS", "K1", PAID, 450, SOURCE_REPORTED),
    ("FFS", "D11", PAID, 2295, SOURCE_REPORTED),
    ("FFS", "D12", PAID, 473, SOURCE_REPORTED),
    ("FFS", "D29", PAID, 1, SOURCE_REPORTED),
    ("FFS", "D39", RECEIVED, 1, SOURCE_REPORTED),
    ("FFS", "D4", RECEIVED, 11618, SOURCE_REPORTED),
    ("FFS", "D4", PAID, 11977, SOURCE_REPORTED),
    ("FFS", "D61D62", RECEIVED, 1252, SOURCE_REPORTED),
    ("FFS", "D61D62", PAID, 1461, SOURCE_REPORTED),
    ("FFS", "D7", RECEIVED, 2245, SOURCE_REPORTED),
    ("FFS", "D7", PAID, 2430, SOURCE_REPORTED),
    ("FFS", "D5", PAID, 638, SOURCE_REPORTED),
    ("FFS", "D8", NET, 68, SOURCE_DERIVED),
    ("FFS", "D9", RECEIVED, 49, SOURCE_REPORTED),
    ("FFS", "D9", PAID, 3, SOURCE_REPORTED),
    ("FFS", "P5", PAID, 356, SOURCE_REPORTED),
    ("FFS", "K2", NET, -2, SOURCE_DERIVED),
    ("FFS", "B13N", NET, 1415, SOURCE_REPORTED),
    ("FFS", "B5NT", NET, 1056, SOURCE_REPORTED),
    ("FFS", "B6N", NET, 24, SOURCE_REPORTED),
    ("FFS", "B8N", NET, 92, SOURCE_REPORTED),
    ("FFS", "B9", NET, 234, SOURCE_REPORTED),
    # --- Households incl. NPISH ---------------------------------------
    ("HS", "P1", RECEIVED, 44006, SOURCE_REPORTED),
    ("HS", "P2", PAID, 16891, SOURCE_REPORTED),
    ("HS", "K1", PAID, 7948, SOURCE_REPORTED),
    ("HS", "D11", PAID, 4176, SOURCE_REPORTED),
    ("HS", "D11", RECEIVED, 78677, SOURCE_REPORTED),
    ("HS", "D12", PAID, 995, SOURCE_REPORTED),
    ("HS", "D12", RECEIVED, 18224, SOURCE_REPORTED),
    ("HS", "D29", PAID, 3, SOURCE_REPORTED),
    ("HS", "D39", RECEIVED, 1565, SOURCE_REPORTED),
    ("HS", "D4", RECEIVED, 10162, SOURCE_REPORTED),
    ("HS", "D4", PAID, 2267, SOURCE_REPORTED),
    ("HS", "D61D62", RECEIVED, 35336, SOURCE_REPORTED),
    ("HS", "D61D62", PAID, HS_SOCIAL_PAID_PUBLISHED + HS_SOCIAL_PAID_RECONCILIATION, SOURCE_DERIVED),
    ("HS", "D7", RECEIVED, 6307, SOURCE_REPORTED),
    ("HS", "D7", PAID, 3968, SOURCE_REPORTED),
    ("HS", "D5", PAID, 25493, SOURCE_REPORTED),
    ("HS", "D8", NET, -68, SOURCE_DERIVED),
    ("HS", "P31", PAID, 105771, SOURCE_REPORTED),
    ("HS", "D9", RECEIVED, 465, SOURCE_REPORTED),
    ("HS", "D9", PAID, 524, SOURCE_REPORTED),
    ("HS", "P5", PAID, 13424, SOURCE_REPORTED),
    ("HS", "K2", NET, 104, SOURCE_REPORTED),
    ("HS", "B13N", NET, 15558, SOURCE_REPORTED),
    ("HS", "B5NT", NET, 120354, SOURCE_REPORTED),
    ("HS", "B6N", NET, 107191, SOURCE_REPORTED),
    ("HS", "B8N", NET, 1420, SOURCE_REPORTED),
    ("HS", "B9", NET, -4219, SOURCE_REPORTED),
    # --- General government --------------------------------------------
    ("GS", "P1", RECEIVED, 55816, SOURCE_REPORTED),
    ("GS", "P2", PAID, 21418, SOURCE_REPORTED),
    ("GS", "K1", PAID, 6532, SOURCE_REPORTED),
    ("GS", "D11", PAID, 21544, SOURCE_REPORTED),
    ("GS", "D12", PAID, 5905, SOURCE_REPORTED),
    ("GS", "D29", PAID, 4, SOURCE_REPORTED),
    ("GS", "D21", RECEIVED, 26932, SOURCE_REPORTED),
    ("GS", "D29", RECEIVED, 248, SOURCE_REPORTED),
    ("GS", "D31", PAID, 657, SOURCE_REPORTED),
    ("GS", "D39", PAID, 2067, SOURCE_REPORTED),
    ("GS", "D4", RECEIVED, 7080, SOURCE_REPORTED),
    ("GS", "D4", PAID, 2896, SOURCE_REPORTED),
    ("GS", "D61D62", RECEIVED, 24037, SOURCE_REPORTED),
    ("GS", "D61D62", PAID, 33876, SOURCE_REPORTED),
    ("GS", "D7", RECEIVED, 27261, SOURCE_REPORTED),
    ("GS", "D7", PAID, 32173, SOURCE_REPORTED),
    ("GS", "D5", RECEIVED, 31209, SOURCE_REPORTED),
    ("GS", "D5", PAID, 109, SOURCE_REPORTED),
    ("GS", "P31", PAID, 31229, SOURCE_REPORTED),
    ("GS", "P32", PAID, 15262, SOURCE_REPORTED),
    ("GS", "D9", RECEIVED, 835, SOURCE_REPORTED),
    ("GS", "D9", PAID, 851, SOURCE_REPORTED),
    ("GS", "P5", PAID, 7486, SOURCE_REPORTED),
    ("GS", "K2", NET, -3, SOURCE_DERIVED),
    ("GS", "B13N", NET, 413, SOURCE_REPORTED),
    ("GS", "B5NT", NET, 29053, SOURCE_REPORTED),
    ("GS", "B6N", NET, 45402, SOURCE_REPORTED),
    ("GS", "B8N", NET, -1089, SOURCE_REPORTED),
    ("GS", "B9", NET, -2056, SOURCE_REPORTED),
    # --- Rest of the world (its own point of view) ----------------------
    ("RS", "P7", RECEIVED, 78768, SOURCE_REPORTED),   # home-country imports
    ("RS", "P6", PAID, 77093, SOURCE_REPORTED),       # home-country exports
    ("RS", "D11", RECEIVED, 472, SOURCE_REPORTED),
    ("RS", "D11", PAID, 569, SOURCE_REPORTED),
    ("RS", "D12", RECEIVED, 116, SOURCE_REPORTED),
    ("RS", "D12", PAID, 92, SOURCE_REPORTED),
    ("RS", "D21", RECEIVED, 191, SOURCE_REPORTED),
    ("RS", "D31", PAID, 51, SOURCE_REPORTED),
    ("RS", "D39", PAID, 721, SOURCE_REPORTED),
    ("RS", "D4", RECEIVED, 13613, SOURCE_REPORTED),
    ("RS", "D4", PAID, 13851, SOURCE_REPORTED),
    ("RS", "D61D62", RECEIVED, 351, SOURCE_REPORTED),
    ("RS", "D61D62", PAID, 362, SOURCE_REPORTED),
    ("RS", "D7", RECEIVED, 3163, SOURCE_REPORTED),
    ("RS", "D7", PAID, 1053, SOURCE_REPORTED),
    ("RS", "D9", RECEIVED, 10, SOURCE_REPORTED),
    ("RS", "D9", PAID, 206, SOURCE_REPORTED),
    ("RS", "K2", NET, 12, SOURCE_REPORTED),
    ("RS", "B11", NET, 1675, SOURCE_REPORTED),
    ("RS", "B12", NET, 2882, SOURCE_REPORTED),
    ("RS", "B8N", NET, 2882, SOURCE_REPORTED),
    ("RS", "B9", NET, 2674, SOURCE_REPORTED),
)


def fixture_2011() -> EconomyYear:
    """The embedded 2011 reference year, provenance-flagged."""
    staging: dict[str, dict[tuple[str, str], int]] = {s: {} for s in SECTORS}
    provenance: dict[tuple[str, str, str], str] = {}
    for sector, item, direction, value, source in _ROWS:
        staging[sector][(item, direction)] = value
        provenance[(sector, item, direction)] = source
    ledgers = {sector: SectorLedger(sector, values) for sector, values in staging.items()}
    return EconomyYear(YEAR, ledgers, provenance)
