from hfroots.obstruction.bounds import (
    INCONCLUSIVE,
    OBSTRUCTED,
    ObstructionQuery,
    Verdict,
    five_fiber_case,
    genus_bound_min_fibers,
    kcond_max_k,
    obstruct,
)
from hfroots.obstruction.catalog import CATALOG, TABLE_IDS
from hfroots.obstruction.probes import TableProbeSpec
from hfroots.obstruction.scan import scan_families
from hfroots.obstruction.verify import NotApplicable, verify_row, verify_table, verify_tables
