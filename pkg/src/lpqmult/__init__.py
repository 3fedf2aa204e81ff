"""Numerical bounds for Lp -> Lq Fourier multiplier operators on R and Z.

The toolkit computes, for a multiplier symbol given as a windowed sequence or
as a function on the line:

* dyadic-block Lorentz quasi-norms and the block sufficient upper bound,
* the classical global Lorentz comparator (with divergence evidence),
* derivative/difference-variation upper bounds and their pointwise-decay
  comparators,
* the interval-average (net-norm) necessary lower bound,
* interval-average monotonicity certificates and the resulting boundedness
  verdict,
* empirical lower estimates of the discretized operator norm,

and assembles them into a sandwich report with machine-readable output.
"""

from .symbols import (
    DyadicBlock,
    ExponentTriple,
    FunSymbol,
    SeqSymbol,
    Singularity,
    block_members,
    block_pools,
    make_exponents,
    restrict_to_block,
)
from .rearrange import (
    StepRearrangement,
    distribution_seq,
    lorentz_fun_norm,
    lorentz_seq_norm,
    rearrangement_fun,
    rearrangement_seq,
)
from .netspace import (
    AveragedProfile,
    IntervalFamily,
    averaged_profile,
    dyadic_profile_seq,
    interval_avg_sup_seq,
    net_norm_fun,
    net_norm_seq,
)
from .bounds import (
    BoundValue,
    SandwichReport,
    hoermander_classic_fun,
    hoermander_classic_seq,
    hoermander_upper_fun,
    hoermander_upper_seq,
    lizorkin_classic_fun,
    lizorkin_classic_seq,
    lizorkin_upper_fun,
    lizorkin_upper_seq,
    marcinkiewicz_variation,
    necessary_lower_fun,
    necessary_lower_seq,
    sandwich,
    tau_to_tau_upper,
)
from .monotone import MonotoneCertificate, criteria_verdict, monotone_constant_fun, monotone_constant_seq
from .opnorm import (
    DiscreteMultiplier,
    OpNormEstimate,
    apply_multiplier,
    estimate_opnorm,
    lp_norm_periodic,
    make_line_multiplier,
    make_periodic_multiplier,
    witness_ratio,
)
from . import catalog

__version__ = "0.1.0"
