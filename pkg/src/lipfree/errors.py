"""Structured domain errors.

Every error carries a JSON-friendly ``payload`` so the command line can
forward it verbatim.
"""


class LipFreeError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    def __init__(self, message="", **payload):
        super().__init__(message or type(self).__name__)
        self.payload = payload

    @property
    def name(self):
        return type(self).__name__

    def to_json(self):
        return {"error": self.name, "message": str(self), "details": _jsonable(self.payload)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return str(obj)


class FormatError(ValueError):
    """Malformed input data (CLI exit code 2)."""


# metric axioms

class MetricError(LipFreeError):
    pass


class NotSquare(MetricError):
    pass


class NonFiniteDistance(MetricError):
    def __init__(self, a, b):
        super().__init__(f"distance ({a},{b}) is not finite", a=a, b=b)


class NonzeroDiagonal(MetricError):
    def __init__(self, a):
        super().__init__(f"d({a},{a}) != 0", a=a)


class Asymmetric(MetricError):
    def __init__(self, a, b):
        super().__init__(f"d({a},{b}) != d({b},{a})", a=a, b=b)


class NonpositiveOffDiagonal(MetricError):
    def __init__(self, a, b):
        super().__init__(f"d({a},{b}) <= 0 for distinct points", a=a, b=b)


class TriangleViolation(MetricError):
    def __init__(self, a, b, c):
        super().__init__(f"d({a},{c}) > d({a},{b}) + d({b},{c})", a=a, b=b, c=c)


class BadBase(MetricError):
    def __init__(self, base, n):
        super().__init__(f"base {base} out of range for {n} points", base=base, n=n)


# constructions

class NonpositiveScale(LipFreeError):
    def __init__(self, s):
        super().__init__(f"scale factor {s} is not positive", scale=s)


class BaseNotInSubset(LipFreeError):
    def __init__(self, base):
        super().__init__(f"base point {base} missing from subset", base=base)


class InvalidSubset(LipFreeError):
    def __init__(self, reason, **payload):
        super().__init__(reason, **payload)


class ModeMismatch(LipFreeError):
    def __init__(self, m1, m2):
        super().__init__(f"cannot combine {m1} and {m2} spaces", modes=[m1, m2])


class TooFewPoints(LipFreeError):
    def __init__(self, have, need):
        super().__init__(f"need at least {need} points, got {have}", have=have, need=need)


# transport / extension

class NotLipschitzOnSubset(LipFreeError):
    def __init__(self, L, pair, ratio):
        super().__init__(
            f"function exceeds Lipschitz bound {L} on pair {pair}", L=L, pair=list(pair), ratio=ratio
        )


class BaseValueNonzero(LipFreeError):
    def __init__(self, value):
        super().__init__(f"f(base) = {value}, expected 0", value=value)


class WitnessInSubset(LipFreeError):
    def __init__(self, point):
        super().__init__(f"witness point {point} lies in the subset", point=point)


class EqualWitnesses(LipFreeError):
    def __init__(self, u):
        super().__init__(f"witness pair must be distinct, got ({u},{u})", u=u)


# ltp

class HypothesisFails(LipFreeError):
    def __init__(self, u, v):
        super().__init__(f"pair ({u},{v}) satisfies every trapezoid inequality", u=u, v=v)


# octahedrality / differentiability

class EmptyFamily(LipFreeError):
    pass


class ZeroMeasure(LipFreeError):
    def __init__(self, position):
        super().__init__(f"measure #{position} is zero", position=position)


class InvalidCombination(LipFreeError):
    def __init__(self, reason, **payload):
        super().__init__(reason, **payload)


class BetweennessHolds(LipFreeError):
    def __init__(self, z, i):
        super().__init__(f"point {z} lies between x_{i} and the apex", z=z, i=i)


# gallery

class InvalidParameter(LipFreeError):
    def __init__(self, reason, **payload):
        super().__init__(reason, **payload)


class ZeroCount(InvalidParameter):
    def __init__(self, k, need=1):
        super().__init__(f"count {k} below minimum {need}", k=k, need=need)


class BadExponent(InvalidParameter):
    def __init__(self, p):
        super().__init__(f"exponent p={p} must satisfy 1 < p < inf", p=p)


class SizeMismatch(LipFreeError):
    def __init__(self, n1, n2):
        super().__init__(f"spaces have {n1} and {n2} points", sizes=[n1, n2])


class NotABijection(LipFreeError):
    def __init__(self, reason):
        super().__init__(reason)
