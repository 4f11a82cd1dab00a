"""Orders of quadratic-field integers mod odd primes and conductor indices.

The package splits into arithmetic primitives (modarith), the adapted
polynomial recurrences (cheby), quadratic integers and their matrix
embedding (quadint), the order bounds themselves (ordersolver), the
conductor index machinery (conductor), fundamental units (units), naive
cross-checking scans (oracle), and the command line front end (cli).
"""

from .cheby import (
    ChebyPair,
    ChebyParams,
    compose_t,
    compose_u,
    eval_fast,
    t_exact,
    t_seq,
    u_odd_closed_form,
    u_prev_exact,
    u_seq,
)
from .conductor import (
    DEFAULT_CEILING,
    ConductorReport,
    MultiplicativeBound,
    PrimeBound,
    PrimePowerBound,
    bound_full,
    bound_multiplicative,
    bound_prime_power,
    n_of_f,
    reduce_f,
)
from .modarith import (
    DEFAULT_TRIAL_BOUND,
    TRIAL_BOUND_ENV,
    Factorization,
    factorize,
    gcd,
    is_prime,
    legendre,
    require_odd_prime,
    sqrt_mod,
    trial_bound,
)
from .oracle import (
    DEFAULT_CAP,
    OracleResult,
    oracle_n_of_f,
    oracle_order_mod_p,
    oracle_q_of_p,
)
from .ordersolver import (
    FAIL,
    NA,
    PASS,
    ChainResult,
    Check,
    DivisorBound,
    OrderReport,
    analyze,
    bound_norm1,
    bound_norm_minus1,
    build_chain_s1,
    build_chain_s_minus1,
    divisor_bound,
    ell_symbol,
    q_of_p,
    table_check,
)
from .quadint import Mat2, QuadInt
from .units import CFState, fundamental_unit, is_unit

__version__ = "0.1.0"

__all__ = [
    "ChebyPair",
    "ChebyParams",
    "compose_t",
    "compose_u",
    "eval_fast",
    "t_exact",
    "t_seq",
    "u_odd_closed_form",
    "u_prev_exact",
    "u_seq",
    "DEFAULT_CEILING",
    "ConductorReport",
    "MultiplicativeBound",
    "PrimeBound",
    "PrimePowerBound",
    "bound_full",
    "bound_multiplicative",
    "bound_prime_power",
    "n_of_f",
    "reduce_f",
    "DEFAULT_TRIAL_BOUND",
    "TRIAL_BOUND_ENV",
    "Factorization",
    "factorize",
    "gcd",
    "is_prime",
    "legendre",
    "require_odd_prime",
    "sqrt_mod",
    "trial_bound",
    "DEFAULT_CAP",
    "OracleResult",
    "oracle_n_of_f",
    "oracle_order_mod_p",
    "oracle_q_of_p",
    "FAIL",
    "NA",
    "PASS",
    "ChainResult",
    "Check",
    "DivisorBound",
    "OrderReport",
    "analyze",
    "bound_norm1",
    "bound_norm_minus1",
    "build_chain_s1",
    "build_chain_s_minus1",
    "divisor_bound",
    "ell_symbol",
    "q_of_p",
    "table_check",
    "Mat2",
    "QuadInt",
    "CFState",
    "fundamental_unit",
    "is_unit",
    "__version__",
]
