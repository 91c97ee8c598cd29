"""Large-square spheres: smoothing a whole ring, twist-knot concordances,
characteristic classes, and induced paths in the subdivided Petersen graph."""
from dataclasses import dataclass
from itertools import combinations

from .configuration import add, dot, scale
from .errors import ConfigurationDefect
from .kernels import norm_vectors


def smoothed_square_from_squares(config, removed):
    """Square of the sphere left after deleting Sigma_removed and smoothing
    every remaining intersection with positive sign."""
    size = config.n + 2
    rest = [k for k in range(size) if k != removed]
    gram = config.gram()
    points = sum(1 for a, b in combinations(rest, 2) if gram[a][b] != 0)
    return sum(config.squares[k] for k in rest) + 2 * points


def smoothed_class(config, removed):
    """Class of the smoothed sphere: the remaining ring is a linear chain, and
    signs are propagated along it so every intersection becomes positive."""
    size = config.n + 2
    order = [(removed + s) % size for s in range(1, size)]
    total = config.classes[order[0]]
    prev, sign = order[0], 1
    for k in order[1:]:
        sign = sign if dot(config.classes[prev], config.classes[k]) > 0 else -sign
        total = add(total, scale(sign, config.classes[k]))
        prev = k
    return total


def max_smoothed_square(config):
    for k, s in enumerate(config.squares):
        if s == 1:
            return smoothed_square_from_squares(config, k)
    raise ConfigurationDefect(f"no sphere of square 1 in {config.path}")


def smoothed_squares(config):
    """{index: square} for every removable square-1 sphere."""
    return {k: smoothed_square_from_squares(config, k) for k, s in enumerate(config.squares) if s == 1}


def twist_concordance_square(n):
    # K_m -> K_{m-1} crosses one punctured CP^2 in 1x or 3x a generator.
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(1 if m % 2 == 0 else 9 for m in range(1, n + 1))


def is_characteristic(v):
    return all(a % 2 for a in v)


def pairing_bound_check(S, t):
    """True when no nonzero x has x.x < |x.S| <= t.

    Any such x has x.x < t, so it suffices to enumerate norms 1..t-1.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    dim = len(S)
    for norm in range(1, t):
        for x in norm_vectors(norm, dim=dim):
            pair = abs(int(dot(x, S)))
            if norm < pair <= t:
                return False
    return True


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2:
                raise ValueError(f"bad edge {tuple(e)}")
            for v in e:
                if not 0 <= v < self.n:
                    raise ValueError(f"vertex {v} out of range")

    @classmethod
    def from_pairs(cls, n, pairs):
        edges = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"loop at {u}")
            e = frozenset((u, v))
            if e in edges:
                raise ValueError(f"repeated edge {u}-{v}")
            edges.add(e)
        return cls(n, frozenset(edges))

    def sorted_edges(self):
        return sorted(tuple(sorted(e)) for e in self.edges)

    def adjacency(self):
        adj = [set() for _ in range(self.n)]
        for u, v in self.sorted_edges():
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self):
        return [len(a) for a in self.adjacency()]

    def is_bipartite(self):
        adj = self.adjacency()
        color = [None] * self.n
        for s in range(self.n):
            if color[s] is not None:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for v in adj[u]:
                    if color[v] is None:
                        color[v] = 1 - color[u]
                        stack.append(v)
                    elif color[v] == color[u]:
                        return False
        return True

    def to_edge_list(self):
        lines = [f"vertices {self.n}"]
        lines += [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text):
        n = None
        pairs = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "vertices":
                n = int(parts[1])
            else:
                u, v = map(int, parts)
                pairs.append((u, v))
        if n is None:
            raise ValueError("edge list is missing its 'vertices N' header")
        return cls.from_pairs(n, pairs)


def petersen_edges():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return sorted(tuple(sorted(e)) for e in outer + spokes + inner)


def subdivided_petersen():
    """Petersen graph with a new vertex on every edge; the new vertices are
    10..24 in sorted edge order."""
    pairs = []
    for k, (u, v) in enumerate(petersen_edges()):
        s = 10 + k
        pairs += [(u, s), (s, v)]
    return SimpleGraph.from_pairs(25, pairs)


def is_induced_path(g, seq):
    if len(set(seq)) != len(seq) or any(not 0 <= v < g.n for v in seq):
        return False
    adj = g.adjacency()
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if (seq[b] in adj[seq[a]]) != (b == a + 1):
                return False
    return True


def _induced_paths(g, length):
    # Extend from the last vertex; a new vertex must avoid the path and every
    # neighbour of the path except the current endpoint.
    adj = [sorted(a) for a in g.adjacency()]
    path = []
    blocked = [0] * g.n

    def rec():
        if len(path) == length:
            yield list(path)
            return
        last = path[-1]
        for v in adj[last]:
            if blocked[v]:
                continue
            for u in adj[last]:
                blocked[u] += 1
            blocked[last] += 1
            path.append(v)
            yield from rec()
            path.pop()
            for u in adj[last]:
                blocked[u] -= 1
            blocked[last] -= 1

    for start in range(g.n):
        path.append(start)
        yield from rec()
        path.pop()


def find_induced_path(g, length):
    """First induced path on ``length`` vertices in canonical order, or None."""
    if length < 1:
        raise ValueError("length must be at least 1")
    for seq in _induced_paths(g, length):
        return seq
    return None


def count_induced_paths(g, length):
    """Number of induced paths on ``length`` vertices, each counted once
    (not once per direction)."""
    total = sum(1 for _ in _induced_paths(g, length))
    return total if length == 1 else total // 2
