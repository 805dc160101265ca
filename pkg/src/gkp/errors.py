"""Exception hierarchy for the GKP recurrence engine."""


class GkpError(Exception):
    """Base class for all engine errors."""


class NotTypeI(GkpError):
    """Raised when a Type-I-only operation receives beta*beta' = 0."""


class NotTypeIV(GkpError):
    """Raised when a Type-IV-only operation receives beta or beta' nonzero."""


class DivByNonUnit(GkpError):
    """Series division by a series with zero constant term."""


class BadConstantTerm(GkpError):
    """Series exp/log/pow/compose precondition on the constant term failed."""


class NotReversible(GkpError):
    """Series reversion needs f(0) = 0 and f'(0) != 0."""


class NotApplicable(GkpError):
    """Operation does not apply to the given parameter regime."""


class CaseMismatch(GkpError):
    """Closed-form case does not match the supplied parameters."""


class DomainError(GkpError):
    """Evaluation point outside the validity domain of a formula."""


class PrecisionLoss(GkpError):
    """Estimated numerical error exceeds the requested tolerance."""


class NotDegenerate(GkpError):
    """Closed-form degenerate value requested for a NonDegenerate class."""


class MalformedLine(GkpError):
    """A b-file line is not 'index value'."""


class NonConsecutiveIndex(GkpError):
    """b-file indices must increase by one."""


class NotInFixtures(GkpError):
    """Offline fetch miss: no cached or packaged copy of the sequence."""


class NetworkError(GkpError):
    """HTTP fetch of a b-file failed."""


class MalformedResponse(GkpError):
    """Fetched b-file did not parse."""


class Infeasible(GkpError):
    """No parameter tuple reproduces the given triangle prefix."""


class PrefixTooShallow(GkpError):
    """Identification rank still growing at the last row; need more rows."""
