"""Homology of the ring of n+2 spheres attached to a Farey path.

Coordinates are taken in an orthonormal basis e_1..e_n of H_2 of the
n-fold connected sum of CP^2; e_i belongs to the i-th interior slope.
Vectors are plain tuples of ints of length n (index 0 holds e_1).
"""
from dataclasses import dataclass

from .errors import ConfigurationDefect
from .farey import FareyPath, distance, format_path, parents, validate_path


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def scale(k, u):
    return tuple(k * a for a in u)


def unit(n, i):
    """e_i as a tuple, 1-indexed."""
    return tuple(1 if k == i - 1 else 0 for k in range(n))


@dataclass(frozen=True)
class RingConfiguration:
    path: FareyPath
    squares: tuple
    pairing: tuple  # pairing[i - 1][j] = e_i . [Sigma_j]
    classes: tuple
    w: tuple
    parent_index: tuple  # parent_index[i] = (left, right) for interior i; None at the ends

    @property
    def n(self):
        return self.path.n

    @property
    def meridian_coeffs(self):
        # gamma_i = q_i gamma_0 + p_i gamma_{n+1}
        return tuple((s.den, s.num) for s in self.path)

    def gram(self):
        return tuple(tuple(dot(a, b) for b in self.classes) for a in self.classes)

    def to_dict(self):
        return {
            "path": format_path(self.path),
            "n": self.n,
            "squares": list(self.squares),
            "pairing": [list(row) for row in self.pairing],
            "classes": [list(c) for c in self.classes],
            "w": [list(v) for v in self.w],
            "meridian_coeffs": [list(c) for c in self.meridian_coeffs],
        }


def build(path):
    """Construct the ring configuration for a Farey path and check it.

    Classes come from the e-basis pairing table alone; the Gram matrix,
    w-vector pairings and square total are then verified against the
    geometric predictions, so any inconsistency raises ConfigurationDefect.
    """
    if not isinstance(path, FareyPath):
        path = validate_path(path)
    slopes = path.slopes
    n = path.n
    size = n + 2
    index = {s: k for k, s in enumerate(slopes)}

    parent_index = [None] * size
    for i in range(1, n + 1):
        left, right = parents(slopes[i])
        if left not in index or right not in index:
            raise ConfigurationDefect(f"parents of {slopes[i]} missing from path {path}")
        parent_index[i] = (index[left], index[right])

    squares = tuple(distance(slopes[(k - 1) % size], slopes[(k + 1) % size]) for k in range(size))

    pairing = []
    for i in range(1, n + 1):
        row = [0] * size
        row[i] = -1
        for j in parent_index[i]:
            row[j] = 1
        pairing.append(tuple(row))
    pairing = tuple(pairing)
    classes = tuple(tuple(pairing[i][j] for i in range(n)) for j in range(size))

    zero = (0,) * n
    w = [None] * size
    w[0] = w[n + 1] = zero
    # Parents have strictly smaller num + den, so that order is topological.
    for i in sorted(range(1, n + 1), key=lambda k: slopes[k].num + slopes[k].den):
        left, right = parent_index[i]
        w[i] = add(add(w[left], w[right]), unit(n, i))

    config = RingConfiguration(path, squares, pairing, classes, tuple(w), tuple(parent_index))
    problems = check_invariants(config)
    if problems:
        raise ConfigurationDefect("; ".join(problems))
    return config


def expected_gram_entry(n, j, k, squares):
    if j == k:
        return squares[j]
    a, b = min(j, k), max(j, k)
    if b == a + 1:
        return -1
    if (a, b) == (0, n + 1):
        return 1
    return 0


def check_invariants(config):
    """Return a list of violated invariants (empty when all hold)."""
    problems = []
    n = config.n
    size = n + 2
    slopes = config.path.slopes
    for k in range(size):
        want = distance(slopes[(k - 1) % size], slopes[(k + 1) % size])
        if config.squares[k] != want:
            problems.append(f"square of Sigma_{k} is {config.squares[k]}, expected {want}")
    for j in range(size):
        for k in range(size):
            got = dot(config.classes[j], config.classes[k])
            want = expected_gram_entry(n, j, k, config.squares)
            if got != want:
                problems.append(f"Sigma_{j}.Sigma_{k} = {got}, expected {want}")
    for i in range(1, n + 1):
        for j in range(size):
            got = dot(config.w[i], config.classes[j])
            if i == j:
                want = -1
            elif j == 0:
                want = slopes[i].den
            elif j == n + 1:
                want = slopes[i].num
            else:
                want = 0
            if got != want:
                problems.append(f"w_{i}.Sigma_{j} = {got}, expected {want}")
    if sum(config.squares) != 3 * n:
        problems.append(f"total square {sum(config.squares)} != 3n = {3 * n}")
    if 1 not in config.squares:
        problems.append("no sphere of square 1")
    return problems


def weight_components(config, i):
    """Nonzero entries of w_i in increasing order."""
    if not 1 <= i <= config.n:
        raise IndexError(f"weight index {i} outside 1..{config.n}")
    return tuple(sorted(a for a in config.w[i] if a))
