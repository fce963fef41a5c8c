from hfroots.cone.cone import (
    SurgeryHomology,
    TruncatedCone,
    build_truncated_cone,
    genus1_check,
    pm_one_surgery_red,
    surgery,
    surgery_homology,
)
from hfroots.cone.knot import (
    GradedModuleSpec,
    KnotFloerInput,
    ReducedSummand,
    bundled,
    load_input,
    random_genus1_input,
    validate_input,
)
