"""Slopes on the Farey graph and paths from 0/1 to 1/0."""
from dataclasses import dataclass
from functools import total_ordering
from math import gcd

from .errors import CapExceeded, LensringError

DEFAULT_PATH_CAP = 12


class SlopeError(LensringError, ValueError):
    pass


class PathError(LensringError, ValueError):
    pass


class EndpointError(PathError):
    pass


class MonotonicityError(PathError):
    pass


class DistanceError(PathError):
    pass


class EmptyPathError(PathError):
    pass


@total_ordering
@dataclass(frozen=True)
class Slope:
    """A reduced nonnegative rational num/den; 1/0 is the point at infinity."""

    num: int
    den: int

    def __post_init__(self):
        if not isinstance(self.num, int) or not isinstance(self.den, int):
            raise SlopeError(f"slope entries must be integers, got {self.num!r}/{self.den!r}")
        if self.num < 0 or self.den < 0:
            raise SlopeError(f"slopes are nonnegative, got {self.num}/{self.den}")
        if (self.num, self.den) == (0, 0):
            raise SlopeError("0/0 is not a slope")
        if gcd(self.num, self.den) != 1:
            raise SlopeError(f"{self.num}/{self.den} is not reduced")

    @classmethod
    def parse(cls, text):
        try:
            p, q = text.strip().split("/")
            return cls(int(p), int(q))
        except ValueError as exc:
            if isinstance(exc, SlopeError):
                raise
            raise SlopeError(f"cannot parse slope {text!r}") from None

    def __lt__(self, other):
        if not isinstance(other, Slope):
            return NotImplemented
        return self.num * other.den < other.num * self.den

    def __str__(self):
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"Slope({self.num}/{self.den})"

    def mediant(self, other):
        return Slope(self.num + other.num, self.den + other.den)


ZERO = Slope(0, 1)
INFINITY = Slope(1, 0)


def distance(a, b):
    return abs(a.num * b.den - a.den * b.num)


def precedes(a, b):
    """a < b and the two are Farey neighbours."""
    return a < b and distance(a, b) == 1


def parents(s):
    """Left and right parents of ``s``, found by Stern-Brocot descent."""
    if s == ZERO or s == INFINITY:
        raise SlopeError(f"{s} has no parents")
    left, right = ZERO, INFINITY
    while True:
        m = left.mediant(right)
        if m == s:
            return left, right
        if s < m:
            right = m
        else:
            left = m


@dataclass(frozen=True)
class FareyPath:
    slopes: tuple

    @property
    def n(self):
        return len(self.slopes) - 2

    def __len__(self):
        return len(self.slopes)

    def __getitem__(self, i):
        return self.slopes[i]

    def __iter__(self):
        return iter(self.slopes)

    def __str__(self):
        return format_path(self.slopes)


def format_path(slopes):
    return ",".join(str(s) for s in slopes)


def parse_path(text):
    return validate_path([Slope.parse(t) for t in text.split(",") if t.strip()])


def validate_path(slopes):
    slopes = tuple(slopes)
    if len(slopes) < 2 or slopes[0] != ZERO or slopes[-1] != INFINITY:
        raise EndpointError(f"path must run from 0/1 to 1/0: {format_path(slopes)}")
    if len(slopes) == 2:
        raise EmptyPathError("a path needs at least one interior slope")
    pairs = list(zip(slopes, slopes[1:]))
    for a, b in pairs:
        if not a < b:
            raise MonotonicityError(f"{a} does not lie below {b}")
    for a, b in pairs:
        if distance(a, b) != 1:
            raise DistanceError(f"distance({a}, {b}) = {distance(a, b)}, expected 1")
    return FareyPath(slopes)


def _interiors(a, b, m):
    # Every Farey path strictly between neighbours a < b passes through their
    # mediant, so paths with m interior slopes split as left + mediant + right.
    if m == 0:
        yield ()
        return
    c = a.mediant(b)
    for k in range(m):
        for left in _interiors(a, c, k):
            for right in _interiors(c, b, m - 1 - k):
                yield left + (c,) + right


def enumerate_paths(n, cap=DEFAULT_PATH_CAP):
    """All Farey paths with exactly ``n`` interior slopes, in lexicographic order."""
    if n < 1:
        raise EmptyPathError("n must be at least 1")
    if n > cap:
        raise CapExceeded(f"n = {n} exceeds the path enumeration cap {cap}")
    paths = {FareyPath((ZERO,) + mid + (INFINITY,)) for mid in _interiors(ZERO, INFINITY, n)}
    # Slope is totally ordered, so tuples of slopes sort lexicographically.
    return sorted(paths, key=lambda p: p.slopes)


def insert_mediant(path, pos):
    """Insert the mediant of slopes ``pos`` and ``pos + 1``."""
    s = path.slopes
    return FareyPath(s[: pos + 1] + (s[pos].mediant(s[pos + 1]),) + s[pos + 1 :])
