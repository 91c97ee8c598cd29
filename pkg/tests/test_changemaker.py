from itertools import product

import pytest
from hypothesis import given, strategies as st

from lensring.changemaker import (
    SearchError,
    complement_basis,
    complement_gram,
    embeds_as_changemaker_complement,
    enumerate_changemakers,
    family_not_changemaker,
    family_sigma,
    is_changemaker,
    placement_order,
    surgery_obstruction,
    validate_certificate,
)
from lensring.errors import CapExceeded
from lensring.lens import LinearLattice, bareiss_det, chain_gram
from oracles import changemakers_brute, det_fraction


def test_is_changemaker_examples():
    assert is_changemaker((1, 1, 2, 4))
    assert not is_changemaker((8, 1, -6, -3))
    assert not is_changemaker((2,))
    assert is_changemaker((0, 0, 1, 2))
    assert is_changemaker(())


@given(st.lists(st.integers(-20, 20), max_size=8), st.randoms())
def test_changemaker_invariant_under_signed_permutation(v, rnd):
    w = [a * rnd.choice((1, -1)) for a in v]
    rnd.shuffle(w)
    assert is_changemaker(v) == is_changemaker(w)


@pytest.mark.parametrize("n, k, idx", [(4, 2, 1), (12, 5, 0), (6, 3, 1)])
def test_family_not_changemaker(n, k, idx):
    # sorted |sigma|: (4,2) -> (1,3,6,8); (12,5) starts at 3; (6,3) -> (1,5,...)
    assert family_not_changemaker(n, k) == (True, idx)


def test_family_sigma_every_row():
    for n in range(3, 30):
        for k in range(2, n):
            assert family_not_changemaker(n, k)[0]
            assert len(family_sigma(n, k)) == n


def test_enumerate_examples():
    assert (1, 1, 1, 1, 1) in enumerate_changemakers(5, 5)
    assert enumerate_changemakers(2, 1) == []
    assert enumerate_changemakers(110, 4) == changemakers_brute(110, 4) == []
    with pytest.raises(CapExceeded):
        enumerate_changemakers(700, 3, cap=600)


@pytest.mark.parametrize("N", range(1, 7))
def test_enumerate_matches_brute_force(N):
    for p in range(1, 61):
        assert enumerate_changemakers(p, N) == changemakers_brute(p, N), (p, N)


def test_complement_gram_examples():
    assert complement_gram((1, 1)) == ((2,),)
    for p in range(2, 10):
        assert complement_gram((1,) * p) == chain_gram((2,) * (p - 1))
    assert complement_gram((1, 2)) == ((5,),)


def test_complement_det_for_every_small_changemaker():
    for N in range(2, 7):
        for p in range(1, 61):
            for sigma in enumerate_changemakers(p, N):
                basis = complement_basis(sigma)
                for v in basis:
                    assert sum(a * b for a, b in zip(v, sigma)) == 0
                g = complement_gram(sigma)
                assert bareiss_det(g) == det_fraction(g) == p


def test_complement_of_general_primitive_vectors():
    for sigma in [(2, 3), (3, 5, 7), (-4, 6, 9), (0, 5, 7)]:
        g = complement_gram(sigma)
        assert det_fraction(g) == sum(a * a for a in sigma)
    with pytest.raises(SearchError):
        complement_gram((2, 4))
    with pytest.raises(SearchError):
        complement_gram((0, 0))


def test_unknot_control():
    res = embeds_as_changemaker_complement(LinearLattice((2, 2, 2, 2)), 5)
    assert res.certificate.sigma == (1, 1, 1, 1, 1)
    assert validate_certificate(res.certificate, chain_gram((2, 2, 2, 2)))


@pytest.mark.parametrize("q", [19, 29])
def test_no_embedding_at_110(q):
    from lensring.lens import cf_expand

    res = embeds_as_changemaker_complement(LinearLattice(cf_expand(110, q)), 110)
    assert res.certificate is None
    assert res.exhausted
    assert res.verdict == "no-embedding"


@pytest.mark.parametrize("p", range(2, 13))
def test_unknot_family(p):
    res = embeds_as_changemaker_complement(LinearLattice((2,) * (p - 1)), p)
    assert res.certificate.sigma == (1,) * p
    assert validate_certificate(res.certificate, chain_gram((2,) * (p - 1)))


def test_surgery_obstruction_examples():
    assert surgery_obstruction((6, 5, 4)).verdict == "obstructed"
    v = surgery_obstruction((2, 2, 2, 2))
    assert v.verdict == "realizable" and v.certificate.sigma == (1, 1, 1, 1, 1)
    v = surgery_obstruction((5,))
    assert v.verdict == "realizable"
    assert v.certificate.sigma == (1, 2) and v.certificate.vectors == ((2, -1),)


def test_search_errors_and_caps():
    with pytest.raises(SearchError):
        embeds_as_changemaker_complement(LinearLattice((6, 5, 4)), 111)
    res = embeds_as_changemaker_complement(LinearLattice((6, 5, 4)), 110, max_p=100)
    assert res.verdict == "inconclusive" and not res.exhausted and "max_p" in res.reason
    res = embeds_as_changemaker_complement(LinearLattice((2,) * 7), 8, node_cap=1)
    assert res.verdict == "inconclusive" and "node cap" in res.reason
    assert surgery_obstruction((6, 5, 4), max_p=100).verdict == "inconclusive"


def test_reverse_orientation_reported_separately():
    v = surgery_obstruction((6, 5, 4), include_reverse=True)
    assert v.verdict == "obstructed"
    assert sorted(v.reversed_searches) == [81, 91]
    assert all(s.exhausted and s.certificate is None for s in v.reversed_searches.values())


def test_certificates_revalidate_independently():
    # every certificate found for small lens spaces is re-checked by brute Gram arithmetic;
    # long chains of 2s are skipped since their sigma-perp searches are huge
    from math import gcd

    from lensring.lens import cf_expand

    found = 0
    for p in range(2, 40):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            chain = cf_expand(p, q)
            if len(chain) > 8:
                continue
            res = embeds_as_changemaker_complement(LinearLattice(chain), p)
            assert res.verdict != "inconclusive"
            if res.certificate:
                found += 1
                vs, s = res.certificate.vectors, res.certificate.sigma
                assert all(sum(a * b for a, b in zip(v, s)) == 0 for v in vs)
                gram = [[sum(a * b for a, b in zip(u, v)) for v in vs] for u in vs]
                assert tuple(map(tuple, gram)) == chain_gram(chain)
    assert found > 0


def test_search_agrees_with_exhaustive_gram_matching_for_tiny_cases():
    # brute force: all vectors in a box, pick m of them realizing the Gram
    from lensring.lens import cf_expand

    def brute(chain, p):
        N = len(chain) + 1
        for sigma in changemakers_brute(p, N):
            box = range(-3, 4)
            cands = {c: [v for v in product(box, repeat=N) if sum(a * a for a in v) == c and sum(a * b for a, b in zip(v, sigma)) == 0] for c in set(chain)}

            def rec(chosen):
                k = len(chosen)
                if k == len(chain):
                    return True
                for v in cands[chain[k]]:
                    if all(sum(a * b for a, b in zip(v, u)) == (-1 if j == k - 1 else 0) for j, u in enumerate(chosen)):
                        if rec(chosen + [v]):
                            return True
                return False

            if rec([]):
                return True
        return False

    for p, q in [(5, 1), (5, 2), (5, 3), (7, 2), (7, 3), (8, 3), (9, 2), (10, 3), (11, 3), (13, 5)]:
        chain = cf_expand(p, q)
        if len(chain) > 3:
            continue
        res = embeds_as_changemaker_complement(LinearLattice(chain), p)
        assert (res.certificate is not None) == brute(chain, p), (p, q)


def test_placement_order_is_interval_growth():
    for chain in [(2, 2, 6, 2, 5, 8), (6, 5, 4), (3,), (5, 2, 2, 2, 9)]:
        order = placement_order(chain)
        assert sorted(order) == list(range(len(chain)))
        for t in range(1, len(order)):
            placed = order[:t]
            assert min(abs(order[t] - s) for s in placed) == 1
