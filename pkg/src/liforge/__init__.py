"""High-precision Li coefficients, zero counting and zero location for zeta."""

__version__ = "0.1.0"


from .context import PrecisionCtx, default_ctx
from .errors import *  # noqa: F401,F403
from .hpcore import (
    gamma,
    hardy_z,
    im_log_xi_critical,
    ln_gamma,
    theta_avg,
    xi,
    zeta,
    zeta_times_sm1,
)
from .li import (
    BSeries,
    LiResult,
    StieltjesSet,
    Truncation,
    a_coeffs,
    b_coeffs,
    kn_from_b,
    li_by_a_recursion,
    li_by_expansion,
    li_by_integral,
    li_by_sum,
    li_closed_form,
    polygamma,
    stieltjes,
)
from .verify import (
    CheckReport,
    check_cos_identities,
    check_fermi_dirac,
    check_hadamard,
    check_integral_identity,
    check_kn_li_equiv,
    partition_function,
    run_all,
)
from .zeros import (
    ZeroRecord,
    ZeroTable,
    count_zeros,
    ingest_zero_table,
    load_table,
    locate_zeros,
    n_smooth,
    reference_zeros,
    save_table,
)
