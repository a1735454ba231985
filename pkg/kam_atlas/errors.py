class KamAtlasError(Exception):
    pass


class DomainError(KamAtlasError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class NotPrimitiveError(DomainError):
    pass


class NotMorseError(KamAtlasError):
    pass


class TurningPointError(KamAtlasError):
    pass


class IllConditionedFitError(KamAtlasError):
    pass


class DerivativeNoiseError(KamAtlasError):
    pass


class CertificateNotFoundError(KamAtlasError):
    pass


class NotAMinimumError(DomainError):
    pass


class LogRingOverflowError(KamAtlasError):
    pass


class CoveringHypothesisError(DomainError):
    """Covering parameters violate the hypotheses of the zone construction (e.g. α ≥ 1)."""


class ConfigError(KamAtlasError):
    pass
