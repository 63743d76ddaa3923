"""Exception hierarchy for pathgauge."""


class PathGaugeError(Exception):
    """Base class for all errors raised by the package."""


class SingularFieldError(PathGaugeError):
    """A field was evaluated inside the guard zone of a singular locus."""


class QuadratureError(PathGaugeError):
    """Adaptive quadrature did not reach its tolerance."""


class PathError(PathGaugeError):
    """Invalid path construction or evaluation (junctions, endpoints, clearance)."""


class IntegrationError(PathGaugeError):
    """The world-line integrator failed (step-size underflow, singular field)."""


class ShootingError(PathGaugeError):
    """A boundary-value solve did not converge or is not locally unique."""


class ConfigError(PathGaugeError):
    """Scenario configuration failed validation."""
