from .angular import (
    AngularFactor,
    ConstantAngular,
    CosPower,
    OnePlusCos,
    ProductAngular,
    SeparableFunction,
    as_separable,
    ball_volume,
    radialize,
    sphere_area,
    sphere_lp_norm,
)
from .kernels import (
    BilinearKernel,
    BumpKernel,
    ExpPowerKernel,
    ExpRadialBilinear,
    FunctionBilinear,
    FunctionKernel,
    KernelProfile,
    LinearKernel,
    PowerCutoffKernel,
    ScaledKernel,
    SeparableBilinear,
)
from .profiles import (
    Combination,
    Dilated,
    FunctionProfile,
    PowerCutoff,
    RadialProfile,
    Scaled,
    Tabulated,
    ZeroProfile,
    make_extremizer,
    power_cutoff_inner,
    power_cutoff_outer,
)
from .special import beta_fn, gamma_fn, lgamma_fn, lower_incomplete_gamma
