"""Minus (Hirzebruch-Jung) continued fractions, lens spaces and linear lattices."""
import re
from dataclasses import dataclass
from math import gcd

from .errors import LensringError


class ChainError(LensringError, ValueError):
    pass


class ZeroDenominatorError(LensringError, ArithmeticError):
    pass


class LensError(LensringError, ValueError):
    pass


class HypothesisError(LensringError, ValueError):
    pass


def parse_chain(text):
    try:
        entries = tuple(int(t) for t in text.replace(" ", "").split(","))
    except ValueError:
        raise ChainError(f"cannot parse chain {text!r}") from None
    return check_chain(entries)


def format_chain(chain):
    return ",".join(str(c) for c in chain)


def check_chain(entries):
    entries = tuple(entries)
    if not entries:
        raise ChainError("empty chain")
    if any(not isinstance(c, int) or c < 1 for c in entries):
        raise ChainError(f"chain entries must be positive integers: {entries}")
    return entries


def cf_evaluate(chain):
    """Evaluate c1 - 1/(c2 - 1/(... - 1/cm)) as a reduced pair (p, q) with q > 0."""
    chain = check_chain(chain)
    num, den = chain[-1], 1
    for c in reversed(chain[:-1]):
        if num == 0:
            raise ZeroDenominatorError(f"chain {format_chain(chain)} hits a zero denominator")
        num, den = c * num - den, num
    if den < 0:
        num, den = -num, -den
    # Consecutive continuants are coprime, so (num, den) is already reduced.
    return num, den


def cf_expand(p, q):
    """The unique minus continued fraction of p/q with all entries >= 2."""
    if not (isinstance(p, int) and isinstance(q, int)) or not p > q >= 1 or gcd(p, q) != 1:
        raise LensError(f"cf_expand needs p > q >= 1 coprime, got ({p}, {q})")
    chain = []
    while q:
        c = -(-p // q)
        chain.append(c)
        p, q = q, c * q - p
    return tuple(chain)


def modinv(q, p):
    return pow(q, -1, p)


@dataclass(frozen=True)
class LensSpace:
    """L(p, q) up to the identification q ~ q^-1 mod p; orientation is kept."""

    p: int
    q: int

    @property
    def q_inv(self):
        return modinv(self.q, self.p)

    @property
    def q_set(self):
        return frozenset((self.q, self.q_inv))

    @property
    def canonical_q(self):
        return min(self.q, self.q_inv)

    def __eq__(self, other):
        if not isinstance(other, LensSpace):
            return NotImplemented
        return self.p == other.p and self.canonical_q == other.canonical_q

    def __hash__(self):
        return hash((self.p, self.canonical_q))

    def reverse(self):
        """The orientation-reversed lens space L(p, p - q)."""
        return LensSpace(self.p, self.p - self.q)

    def chains(self):
        """Linear chains for q and q^-1 (one is the reverse of the other)."""
        return tuple(cf_expand(self.p, q) for q in sorted(self.q_set))

    def __str__(self):
        return f"L({self.p},{self.q})"


def lens_canonical(p, q):
    if not (isinstance(p, int) and isinstance(q, int)) or p < 2 or not 1 <= q < p or gcd(p, q) != 1:
        raise LensError(f"L({p},{q}) is not a valid lens space")
    return LensSpace(p, q)


_LENS_RE = re.compile(r"^\s*L\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


def parse_lens(text):
    m = _LENS_RE.match(text)
    if not m:
        raise LensError(f"cannot parse lens space {text!r}")
    return lens_canonical(int(m.group(1)), int(m.group(2)))


def family_lens(n, k):
    """Closed-form (p, q) for the k/1 family with smoothings at (k-1, k) and (n-1, n)."""
    if not 1 < k < n:
        raise HypothesisError(f"need 1 < k < n, got n={n}, k={k}")
    if gcd(2 * k - 1, 2 * n - 1) != 1:
        raise HypothesisError(f"gcd(2k-1, 2n-1) = gcd({2 * k - 1}, {2 * n - 1}) != 1")
    p = 16 * n * n * k - 16 * n * k * k - 12 * n * n + 4 * k * k + 8 * n - 2
    q = 16 * n * k - 16 * k * k - 12 * n + 4 * k + 5
    return p, q


def chain_gram(chain, off=-1):
    m = len(chain)
    return tuple(
        tuple(chain[a] if a == b else (off if abs(a - b) == 1 else 0) for b in range(m))
        for a in range(m)
    )


def bareiss_det(matrix):
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    a = [list(row) for row in matrix]
    m = len(a)
    if m == 0:
        return 1
    sign, prev = 1, 1
    for k in range(m - 1):
        if a[k][k] == 0:
            for r in range(k + 1, m):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[m - 1][m - 1]


@dataclass(frozen=True)
class LinearLattice:
    """Positive-definite lattice of a linear plumbing chain."""

    chain: tuple

    @classmethod
    def from_lens(cls, p, q):
        return cls(cf_expand(p, q))

    @property
    def rank(self):
        return len(self.chain)

    @property
    def gram(self):
        return chain_gram(self.chain)

    @property
    def det(self):
        # continuant recurrence for a tridiagonal matrix with -1 off the diagonal
        prev, cur = 0, 1
        for c in self.chain:
            prev, cur = cur, c * cur - prev
        return cur
