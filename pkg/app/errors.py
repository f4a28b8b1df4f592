class DriftLabError(Exception):
    pass


class UnsupportedOrderError(DriftLabError, ValueError):
    pass


class DimensionError(DriftLabError, ValueError):
    pass


class NumericFailure(DriftLabError, ArithmeticError):
    def __init__(self, message: str, t: int = None):
        super().__init__(message if t is None else f"t={t}: {message}")
        self.t = t


class GenerationError(DriftLabError):
    def __init__(self, message: str, t: int = None):
        super().__init__(message if t is None else f"t={t}: {message}")
        self.t = t


class UndefinedGroundTruth(DriftLabError, ValueError):
    pass


class DegenerateGroundTruth(DriftLabError, ValueError):
    pass


class DetectorConfigError(DriftLabError, ValueError):
    pass


class TrainingFailure(DriftLabError, ArithmeticError):
    pass


class UndefinedCorrelation(DriftLabError, ValueError):
    pass


class EmptyResultError(DriftLabError, ValueError):
    pass


class UnknownPresetError(DriftLabError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown preset"
