"""Generalized Fibonacci divisor iteration, Zeckendorf digits and Cunningham chains."""

from ._validation import AlphaError, DomainError, PrecisionError
from .analytic import (
    BkEstimate, DensityPrediction, DirichletCheck, bk_truncated, compare_density,
    density_integral, dirichlet_check, mult_order, prop16_bracket, w_of_p,
)
from .chains import (
    ChainOrderCheck, ChainRecord, ScanResult, chain, chain_length, check_record, scan_chains,
    verify_cor34, verify_remark15,
)
from .fib_core import (
    FibTable, PhiAlpha, fib_at, fib_closed_form, fib_pair, fib_range, fib_table_count,
    fib_table_upto, ind, ind_upper_bound, phi_alpha,
)
from .primes import DEFAULT_CONFIG, PrimalityConfig, factorint, is_prime, prime_count, primes_upto
from .sigma_ord import (
    DivisorSet, Scanner, SigmaTrace, divisor_set, ord_of_fib, ord_range, ord_trace, order,
    sigma, sigma_iterate, sigma_of_fib, sigma_range, sigma_shifted, sigma_wing, sum_identity,
    verify_thm35,
)
from .zeckendorf import InvalidRepresentationError, ZeckRep, zeck_decode, zeck_encode, zeck_validate

__version__ = "0.1.0"
