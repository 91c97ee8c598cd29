"""Delete Sigma_0 from a ring configuration and smooth two intersection points.

What is left after deleting Sigma_0 is the linear chain Sigma_1, ..., Sigma_{n+1}.
Smoothing the point between Sigma_i and Sigma_{i+1}, after orienting so that
its sign is eps, replaces both by a sphere in the class
[Sigma_i] - eps [Sigma_{i+1}] whose square is their squares plus 2 eps.
"""
from dataclasses import dataclass
from math import gcd

from .configuration import add, dot, scale
from .errors import LensringError


class SmoothingError(LensringError, ValueError):
    pass


class DegenerateChainError(SmoothingError):
    pass


@dataclass(frozen=True)
class SmoothingSpec:
    i: int
    eps_i: int
    j: int
    eps_j: int

    def to_dict(self):
        return {"i": self.i, "eps_i": self.eps_i, "j": self.j, "eps_j": self.eps_j}

    def __str__(self):
        s = lambda e: "+" if e > 0 else "-"
        return f"({self.i}{s(self.eps_i)},{self.j}{s(self.eps_j)})"


def check_spec(spec, n):
    if spec.eps_i not in (1, -1) or spec.eps_j not in (1, -1):
        raise SmoothingError(f"signs must be +1 or -1: {spec}")
    if not (1 <= spec.i and spec.i + 1 < spec.j and spec.j + 1 <= n + 1):
        raise SmoothingError(f"need 1 <= i, i + 1 < j, j + 1 <= n + 1; got i={spec.i}, j={spec.j}, n={n}")


@dataclass(frozen=True)
class SmoothedChain:
    chain: tuple
    sigma: tuple
    a: int
    b: int
    simply_connected: bool
    classes: tuple

    def to_dict(self):
        return {
            "chain": list(self.chain),
            "sigma": list(self.sigma),
            "a": self.a,
            "b": self.b,
            "simply_connected": self.simply_connected,
        }


def smooth(config, spec):
    n = config.n
    check_spec(spec, n)
    i, j = spec.i, spec.j
    sq, cl = config.squares, config.classes
    p = [s.num for s in config.path]

    chain, classes = [], []
    k = 1
    while k <= n + 1:
        if k in (i, j):
            eps = spec.eps_i if k == i else spec.eps_j
            merged = sq[k] + sq[k + 1] + 2 * eps
            if merged <= 0:
                raise DegenerateChainError(f"smoothing Sigma_{k}, Sigma_{k + 1} with sign {eps:+d} gives square {merged}")
            chain.append(merged)
            classes.append(add(cl[k], scale(-eps, cl[k + 1])))
            k += 2
        else:
            chain.append(sq[k])
            classes.append(cl[k])
            k += 1

    a = p[i] + spec.eps_i * p[i + 1]
    b = p[j] + spec.eps_j * p[j + 1]
    w = config.w
    sigma = add(
        scale(b, add(w[i], scale(spec.eps_i, w[i + 1]))),
        scale(-a, add(w[j], scale(spec.eps_j, w[j + 1]))),
    )
    return SmoothedChain(tuple(chain), sigma, a, b, gcd(abs(a), abs(b)) == 1, tuple(classes))


def smooth_adjacent(config, i, eps_i, eps_j):
    """Smooth both intersection points of Sigma_i, Sigma_{i+1}, Sigma_{i+2}.

    The three spheres merge into one of class
    [Sigma_i] - eps_i [Sigma_{i+1}] + eps_i eps_j [Sigma_{i+2}], so the chain
    still has n - 1 entries. sigma uses the disjoint-pair formula with
    j = i + 1; that it stays orthogonal to every chain class with
    sigma.sigma = p is checked by the test suite rather than assumed.
    """
    n = config.n
    if eps_i not in (1, -1) or eps_j not in (1, -1):
        raise SmoothingError(f"signs must be +1 or -1: {eps_i}, {eps_j}")
    if not (1 <= i and i + 2 <= n + 1):
        raise SmoothingError(f"need 1 <= i and i + 2 <= n + 1; got i={i}, n={n}")
    sq, cl, w = config.squares, config.classes, config.w
    p = [s.num for s in config.path]
    merged = sq[i] + sq[i + 1] + sq[i + 2] + 2 * (eps_i + eps_j)
    if merged <= 0:
        raise DegenerateChainError(f"smoothing Sigma_{i}..Sigma_{i + 2} gives square {merged}")
    chain = list(sq[1:i]) + [merged] + list(sq[i + 3:])
    merged_class = add(add(cl[i], scale(-eps_i, cl[i + 1])), scale(eps_i * eps_j, cl[i + 2]))
    classes = list(cl[1:i]) + [merged_class] + list(cl[i + 3:])
    a = p[i] + eps_i * p[i + 1]
    b = p[i + 1] + eps_j * p[i + 2]
    sigma = add(
        scale(b, add(w[i], scale(eps_i, w[i + 1]))),
        scale(-a, add(w[i + 1], scale(eps_j, w[i + 2]))),
    )
    return SmoothedChain(tuple(chain), sigma, a, b, gcd(abs(a), abs(b)) == 1, tuple(classes))


def enumerate_smoothings(config):
    n = config.n
    specs = []
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            for eps_i in (1, -1):
                for eps_j in (1, -1):
                    specs.append(SmoothingSpec(i, eps_i, j, eps_j))
    return specs


def chain_classes_consistent(result):
    """The chain classes realize the chain's squares, consecutive pairings are
    +-1, other pairings vanish, and sigma is orthogonal to every class."""
    cls = result.classes
    for a in range(len(cls)):
        if dot(cls[a], result.sigma) != 0:
            return False
        for b in range(a, len(cls)):
            g = dot(cls[a], cls[b])
            if a == b and g != result.chain[a]:
                return False
            if b == a + 1 and abs(g) != 1:
                return False
            if b > a + 1 and g != 0:
                return False
    return True
