"""Error hierarchy. Each class carries the CLI exit code it maps to."""


class SingordError(Exception):
    exit_code = 2


# ── input errors (exit 2) ─────────────────────────────────────────

class ParseError(SingordError):
    pass


class ZeroInput(SingordError):
    pass


class OddOrder(SingordError):
    pass


class ExtensionDepth(SingordError):
    pass


class NotReduced(SingordError):
    pass


class ProximityViolation(SingordError):
    pass


class NonInvertible(SingordError):
    pass


class ModeUnsupported(SingordError):
    pass


class OverlappingSupport(SingordError):
    pass


class SymbolicPosition(SingordError):
    pass


class CommonComponent(SingordError):
    pass


# ── sampling and resource ceilings ────────────────────────────────

class GenericityFailure(SingordError):
    exit_code = 3


class NonFiniteColength(SingordError):
    exit_code = 4


# ── failed checks (exit 1) ────────────────────────────────────────

class InvariantBreach(SingordError):
    exit_code = 1


class ConditionFailed(SingordError):
    exit_code = 1


class VerificationFailure(SingordError):
    exit_code = 1
