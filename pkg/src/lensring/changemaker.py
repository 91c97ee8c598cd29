"""Changemaker vectors and the search for linear lattices as their complements.

A linear lattice embeds as the orthogonal complement of a changemaker
sigma in Z^N (N = rank + 1, sigma.sigma = det) exactly when vectors
v_1..v_m in sigma-perp realize its Gram matrix: the v's then span a
sublattice of sigma-perp with the same determinant, hence all of it.
"""
from dataclasses import dataclass, field
from math import gcd, isqrt

import numpy as np

from .errors import CapExceeded, LensringError
from .kernels import embed_search
from .lens import LinearLattice, cf_evaluate, cf_expand, check_chain, lens_canonical

DEFAULT_MAX_P = 600
DEFAULT_NODE_CAP = 2_000_000


class SearchError(LensringError, ValueError):
    pass


def changemaker_violation(v):
    """Index (into the sorted absolute values) of the first failure, or None."""
    total = 0
    for idx, x in enumerate(sorted(abs(a) for a in v)):
        if x > total + 1:
            return idx
        total += x
    return None


def is_changemaker(v):
    return changemaker_violation(v) is None


def family_sigma(n, k):
    """Closed-form sigma for the k/1 family, smoothed at (k-1, k) and (n-1, n)."""
    return (
        (4 * (n - k),) * (k - 1)
        + (2 * n - 4 * k + 1,)
        + (-(4 * k - 2),) * (n - k - 1)
        + (-(2 * k - 1),)
    )


def family_not_changemaker(n, k):
    """(True, index) when the family sigma fails the changemaker test at that
    sorted position; (False, None) would contradict the claim."""
    if not 1 < k < n:
        raise ValueError(f"need 1 < k < n, got n={n}, k={k}")
    idx = changemaker_violation(family_sigma(n, k))
    return idx is not None, idx


def enumerate_changemakers(p, N, cap=DEFAULT_MAX_P):
    """Nondecreasing changemakers in Z^N with square sum p, lexicographic."""
    if p < 1 or N < 1:
        raise ValueError(f"need p >= 1 and N >= 1, got p={p}, N={N}")
    if p > cap:
        raise CapExceeded(f"p = {p} exceeds the changemaker cap {cap}")
    out = []
    entries = []

    def rec(pos, lo, total, rem):
        if pos == N:
            if rem == 0:
                out.append(tuple(entries))
            return
        slots = N - pos
        for x in range(lo, min(total + 1, isqrt(rem)) + 1):
            # the remaining slots all hold at least x
            if slots * x * x > rem:
                break
            entries.append(x)
            rec(pos + 1, x, total + x, rem - x * x)
            entries.pop()

    rec(0, 0, 0, p)
    return out


def _kernel_basis(sigma):
    """Integral basis of sigma-perp for any primitive sigma, via column
    operations that reduce sigma to (1, 0, ..., 0)."""
    N = len(sigma)
    row = list(sigma)
    cols = [[1 if r == c else 0 for r in range(N)] for c in range(N)]
    while True:
        nz = [c for c in range(N) if row[c]]
        if len(nz) == 1:
            break
        piv = min(nz, key=lambda c: abs(row[c]))
        for c in nz:
            if c != piv:
                qt = row[c] // row[piv]
                row[c] -= qt * row[piv]
                cols[c] = [a - qt * b for a, b in zip(cols[c], cols[piv])]
    piv = nz[0]
    return [tuple(cols[c]) for c in range(N) if c != piv]


def standard_basis(sigma):
    """Basis of sigma-perp for a changemaker, with the coordinates of sigma
    taken in the given order (entries may be permuted or signed).

    Working in sorted absolute values: zero entries contribute e_i; every
    later nonzero entry s_j contributes -e_j plus a greedy subset of earlier
    entries summing to s_j, or 2 e_t plus all earlier nonzero entries when
    s_j exceeds their total (t is the first entry equal to 1).
    """
    if not is_changemaker(sigma):
        raise SearchError(f"{sigma} is not a changemaker")
    N = len(sigma)
    order = sorted(range(N), key=lambda c: (abs(sigma[c]), c))
    sign = [1 if a >= 0 else -1 for a in sigma]
    vals = [abs(sigma[c]) for c in order]
    basis = []
    first = None
    for pos, s in enumerate(vals):
        vec = [0] * N
        if s == 0:
            vec[pos] = 1
        elif first is None:
            first = pos
            continue
        else:
            vec[pos] = -1
            earlier = [r for r in range(first, pos) if vals[r]]
            if s > sum(vals[r] for r in earlier):
                vec[first] += 2
                for r in earlier[1:]:
                    vec[r] += 1
            else:
                target = s
                for r in reversed(earlier):
                    if vals[r] <= target:
                        vec[r] += 1
                        target -= vals[r]
                if target:
                    raise SearchError(f"greedy subset sum failed for {sigma}")
        basis.append(vec)
    # back to the caller's coordinates
    out = []
    for vec in basis:
        full = [0] * N
        for pos, c in enumerate(order):
            full[c] = vec[pos] * sign[c]
        out.append(tuple(full))
    return out


def complement_basis(sigma):
    sigma = tuple(sigma)
    if not any(sigma):
        raise SearchError("sigma must be nonzero")
    g = 0
    for a in sigma:
        g = gcd(g, a)
    if g != 1:
        raise SearchError(f"{sigma} is not primitive (gcd {g})")
    if is_changemaker(sigma):
        return standard_basis(sigma)
    return _kernel_basis(sigma)


def complement_gram(sigma):
    basis = complement_basis(sigma)
    return tuple(tuple(sum(a * b for a, b in zip(u, v)) for v in basis) for u in basis)


@dataclass(frozen=True)
class EmbeddingCertificate:
    sigma: tuple
    vectors: tuple

    def to_dict(self):
        return {"sigma": list(self.sigma), "vectors": [list(v) for v in self.vectors]}


def validate_certificate(cert, gram):
    """Independent re-check: orthogonality to sigma and exact Gram match."""
    vs = cert.vectors
    if len(vs) != len(gram) or any(len(v) != len(cert.sigma) for v in vs):
        return False
    if not is_changemaker(cert.sigma):
        return False
    for v in vs:
        if sum(a * b for a, b in zip(v, cert.sigma)) != 0:
            return False
    for r, u in enumerate(vs):
        for c, v in enumerate(vs):
            if sum(a * b for a, b in zip(u, v)) != gram[r][c]:
                return False
    return True


@dataclass
class EmbeddingSearch:
    """Outcome of a changemaker-complement search.

    ``exhausted`` means every candidate sigma was ruled out, so a missing
    certificate is a proof of non-embedding. ``reason`` says why a search
    without a certificate stopped early.
    """

    chain: tuple
    p: int
    certificate: EmbeddingCertificate = None
    exhausted: bool = False
    reason: str = ""
    sigmas: int = 0
    filtered: int = 0
    nodes: int = 0

    @property
    def verdict(self):
        if self.certificate is not None:
            return "embeds"
        return "no-embedding" if self.exhausted else "inconclusive"

    def to_dict(self):
        return {
            "chain": list(self.chain),
            "p": self.p,
            "verdict": self.verdict,
            "exhausted": self.exhausted,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "sigmas": self.sigmas,
            "filtered": self.filtered,
            "nodes": self.nodes,
            "reason": self.reason,
        }


def placement_order(chain):
    """Order in which chain vertices receive vectors.

    Start at the smallest norm (fewest candidates in sigma-perp) and keep the
    placed vertices an interval, extending toward the smaller neighbour, so
    each new vector is pinned by a -1 pairing.
    """
    m = len(chain)
    s = min(range(m), key=lambda i: (chain[i], i))
    lo = hi = s
    order = [s]
    while len(order) < m:
        left = chain[lo - 1] if lo > 0 else None
        right = chain[hi + 1] if hi < m - 1 else None
        if right is None or (left is not None and left <= right):
            lo -= 1
            order.append(lo)
        else:
            hi += 1
            order.append(hi)
    return order


def _blocks(sigma):
    # sigma is sorted; -1 marks the zero block
    ids, current = [], -1
    for i, a in enumerate(sigma):
        if a != 0 and (i == 0 or a != sigma[i - 1]):
            current += 1
        ids.append(-1 if a == 0 else current)
    return ids


def _search_sigma(chain, sigma, order, node_cap):
    m = len(chain)
    norms = [chain[k] for k in order]
    rel = np.zeros((m, m), dtype=np.int64)
    for t in range(m):
        for s in range(t):
            if abs(order[t] - order[s]) == 1:
                rel[t, s] = -1
    status, nodes, chosen = embed_search(norms, rel, sigma, _blocks(sigma), node_cap)
    if status != 1:
        return status, nodes, None
    vectors = [None] * m
    for t, k in enumerate(order):
        vectors[k] = tuple(int(a) for a in chosen[t])
    return status, nodes, EmbeddingCertificate(tuple(sigma), tuple(vectors))


def embeds_as_changemaker_complement(target, p, max_p=DEFAULT_MAX_P, node_cap=DEFAULT_NODE_CAP):
    """Search all changemakers sigma in Z^(rank+1) with sigma.sigma = p for a
    realization of ``target`` inside sigma-perp.

    Candidates are tried in lexicographic order and the first certificate wins.
    Exceeding ``max_p`` or ``node_cap`` yields an inconclusive result, never a
    negative one.
    """
    if not isinstance(target, LinearLattice):
        target = LinearLattice(check_chain(target))
    chain = target.chain
    if cf_evaluate(chain)[0] != p or target.det != p:
        raise SearchError(f"det of chain {chain} is not {p}")
    result = EmbeddingSearch(chain, p)
    if p > max_p:
        result.reason = f"p = {p} exceeds max_p = {max_p}"
        return result
    N = len(chain) + 1
    # A linear chain with entries >= 2 has minimum norm >= 2, while sigma-perp
    # contains e_i whenever sigma_i = 0.
    no_unit_vectors = min(chain) >= 2
    order = placement_order(chain)
    for sigma in enumerate_changemakers(p, N, cap=max_p):
        result.sigmas += 1
        if no_unit_vectors and sigma[0] == 0:
            result.filtered += 1
            continue
        status, nodes, cert = _search_sigma(chain, sigma, order, node_cap - result.nodes)
        result.nodes += nodes
        if status == -1:
            result.reason = f"node cap {node_cap} reached at sigma {sigma}"
            return result
        if cert is not None:
            result.certificate = cert
            return result
    result.exhausted = True
    return result


@dataclass
class SurgeryVerdict:
    """``verdict`` is realizable, obstructed or inconclusive.

    ``searches`` holds the search for each presentation q in the canonical
    q-set; ``reversed_searches`` (only when requested) does the same for the
    orientation reverse and never influences ``verdict``.
    """

    chain: tuple
    p: int
    q: int
    verdict: str
    searches: dict
    reversed_searches: dict = field(default_factory=dict)

    @property
    def certificate(self):
        for q in sorted(self.searches):
            if self.searches[q].certificate is not None:
                return self.searches[q].certificate
        return None

    def to_dict(self):
        out = {
            "chain": list(self.chain),
            "lens": f"L({self.p},{self.q})",
            "verdict": self.verdict,
            "searches": {str(q): s.to_dict() for q, s in sorted(self.searches.items())},
        }
        if self.reversed_searches:
            out["reversed_searches"] = {str(q): s.to_dict() for q, s in sorted(self.reversed_searches.items())}
        return out


def _presentation_searches(lens, max_p, node_cap):
    return {
        q: embeds_as_changemaker_complement(LinearLattice(cf_expand(lens.p, q)), lens.p, max_p, node_cap)
        for q in sorted(lens.q_set)
    }


def _combine(searches):
    if any(s.certificate is not None for s in searches.values()):
        return "realizable"
    if all(s.exhausted for s in searches.values()):
        return "obstructed"
    return "inconclusive"


def surgery_obstruction(chain, max_p=DEFAULT_MAX_P, node_cap=DEFAULT_NODE_CAP, include_reverse=False):
    """Decide whether the chain's boundary lens space bounds a changemaker complement.

    The chain is evaluated to L(p, q); both q and q^-1 are searched, and the
    result is "obstructed" only when both searches are exhaustive failures.
    """
    chain = check_chain(chain)
    p, q = cf_evaluate(chain)
    if p < 2:
        raise SearchError(f"chain {chain} evaluates to {p}/{q}; not a lens space boundary")
    q %= p
    lens = lens_canonical(p, q)
    searches = _presentation_searches(lens, max_p, node_cap)
    verdict = SurgeryVerdict(chain, p, q, _combine(searches), searches)
    if include_reverse:
        verdict.reversed_searches = _presentation_searches(lens.reverse(), max_p, node_cap)
    return verdict
