"""qident: exact coefficientwise verification of q-series and overpartition identities."""

from .borel import borel_apply
from .identities import (
    OrderBudgetExceeded,
    UnknownIdentity,
    named_series,
    registry_ids,
    verify,
    verify_all,
)
from .lpi import (
    F_series,
    G_series,
    LinkingViolation,
    LpiError,
    LpiSpec,
    NotInLanguage,
    UnknownBlock,
    compose,
    decompose,
    gap4_ideal,
    g_vector,
    language,
    matrices,
)
from .multisum import (
    MultiSumSpec,
    NonTerminatingSum,
    SumNode,
    eval_sum,
    expand_tree,
    node_value,
    quinvariate_spec,
    rec_step,
    shift_beta_for_x,
    verify_matrix_relation,
)
from .partitions import (
    Overpartition,
    PartStats,
    SET_IDS,
    count_A,
    count_A1,
    count_A2,
    count_B,
    count_B1,
    count_B2,
    enum_overpartitions,
    enum_set,
    in_A,
    in_A_S,
    in_Avee,
    stats,
    weighted_gf,
)
from .products import (
    DivergentProduct,
    PochSpec,
    euler1,
    euler2,
    inv_qpoch,
    poch,
    poch_finite,
    poch_inf,
    qbinom,
)
from .report import IdentityReport
from .series import (
    ArityMismatch,
    Mismatch,
    NotInvertible,
    Q_VARS,
    QUIN_VARS,
    QX_VARS,
    QXY_VARS,
    Series,
    SeriesError,
    TruncationExceeded,
    VarSet,
    VarSetMismatch,
    make,
    varset,
)

__version__ = "0.1.0"
