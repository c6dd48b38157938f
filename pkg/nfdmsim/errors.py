class NfdmError(Exception):
    """Base class for all errors raised by nfdmsim."""


class ConfigError(NfdmError, ValueError):
    def __init__(self, diagnostics: list[str]) -> None:
        self.diagnostics = list(diagnostics)
        super().__init__("invalid configuration:\n" + "\n".join(f"  - {d}" for d in self.diagnostics))


class InvalidInputError(NfdmError, ValueError):
    pass


class UsageError(NfdmError, ValueError):
    pass


class FramingError(NfdmError, ValueError):
    pass


class UnmeasurableError(NfdmError, ValueError):
    pass


class SingularSpectrumError(NfdmError, ArithmeticError):
    def __init__(self, lam: float, abs_a: float) -> None:
        self.lam = lam
        self.abs_a = abs_a
        super().__init__(f"|a(lambda)| = {abs_a:.3e} at lambda = {lam:.6g}, reflection coefficient undefined")


class NumericalFailureError(NfdmError, ArithmeticError):
    def __init__(self, t: float, reason: str) -> None:
        self.t = t
        self.reason = reason
        super().__init__(f"GLM solve failed at t = {t:.6g}: {reason}")


class GuardViolationError(NfdmError, RuntimeError):
    def __init__(self, edge_ratio: float, limit: float) -> None:
        self.edge_ratio = edge_ratio
        self.limit = limit
        super().__init__(f"signal energy at grid edges is {edge_ratio:.3e} of total (limit {limit:.0e}): dispersion wraps around")
