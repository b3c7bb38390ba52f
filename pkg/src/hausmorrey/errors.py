"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can map it
to an exit status without string matching.
"""


class HausmorreyError(Exception):
    code = "error"


# admissibility: the request itself is outside the supported mathematics
class AdmissibilityError(HausmorreyError):
    code = "admissibility"


class ParamError(AdmissibilityError, ValueError):
    code = "param"


class NontrivialityViolation(AdmissibilityError):
    code = "nontriviality"


class SplitMismatch(AdmissibilityError):
    code = "split_mismatch"


class DimensionError(AdmissibilityError):
    code = "dimension"


class DomainError(AdmissibilityError, ValueError):
    code = "domain"


class EpsTooLarge(AdmissibilityError):
    code = "eps_too_large"


class ArityMismatch(AdmissibilityError):
    code = "arity"


class UnsupportedArity(AdmissibilityError):
    code = "unsupported_arity"


class DivergentIntegral(AdmissibilityError):
    code = "divergent_integral"


class DivergentConstant(DivergentIntegral):
    """The finiteness hypothesis of a sharp constant fails.

    This is the "only if" direction of the boundedness statements, so it is
    a definite answer rather than a numerical failure.
    """

    code = "divergent_constant"


class InfiniteNorm(DivergentIntegral):
    code = "infinite_norm"


class CorpusError(AdmissibilityError):
    code = "corpus"


# numerical: the mathematics is fine but the computation did not settle
class NumericalError(HausmorreyError):
    code = "numerical"


class NonConvergence(NumericalError):
    code = "nonconvergence"


class SupAtBoundary(NumericalError):
    code = "sup_at_boundary"


class RepresentationMismatch(NumericalError):
    code = "representation_mismatch"


class FloorViolation(NumericalError):
    code = "floor_violation"


class IoError(HausmorreyError, OSError):
    code = "io"
