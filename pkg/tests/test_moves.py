import pytest
from hypothesis import given, settings, strategies as st

from ktor.cli import knot_invariants
from ktor.cube import build_cube
from ktor.diagram import NonKnotError, derive_symmetry, parse_pd, pd_from_crossings
from ktor.homology import homology
from ktor.moves import (
    KINK_FORMS,
    add_kink,
    clasp_candidates,
    count_faces,
    is_planar,
    kink_variants,
    plat_pd,
    symmetric_kink_pairs,
    words,
)

from conftest import SEVEN_7B, TREFOIL
from oracle import summary_as_oracle

TWO_STRAND = {3: 4, 4: 3}
VIRTUAL_TREFOIL = [(1, 3, 2, 4), (2, 1, 3, 4)]


def test_planarity():
    assert is_planar(parse_pd(TREFOIL)) and is_planar(parse_pd(SEVEN_7B))
    assert count_faces(parse_pd(TREFOIL)) == 5
    assert not is_planar(pd_from_crossings(VIRTUAL_TREFOIL))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_two_strand_plats_are_unknots(n):
    """A twisted band closed by two caps: only kinks."""
    pd = plat_pd([("A", 1)] * n, TWO_STRAND)
    assert pd.n == n and is_planar(pd)
    derive_symmetry(pd)
    assert knot_invariants(pd) == {"s": 0, "ord": 0, "eqord": 0}


def test_plat_link_rejected():
    with pytest.raises(NonKnotError):
        plat_pd([("B", 1), ("B", 1)])


def test_plat_unknot():
    assert plat_pd([]).n == 0


def test_words_are_reduced():
    ws = list(words(6))
    assert ws and all(w[0][0] == "B" and w[-1][0] == "B" for w in ws)
    assert all(w[k] != (w[k + 1][0], -w[k + 1][1]) for w in ws for k in range(len(w) - 1))


@pytest.mark.parametrize("form", KINK_FORMS)
def test_kink_on_trefoil(form):
    pd = parse_pd(TREFOIL)
    k = add_kink(pd, 2, form)
    assert k.n == 4 and is_planar(k)


def test_kinks_preserve_bn():
    pd = parse_pd(TREFOIL)
    base = summary_as_oracle(homology(build_cube(pd))[0])
    vs = list(kink_variants(pd))
    assert len(vs) >= pd.n_edges * 2
    for k in vs:
        assert summary_as_oracle(homology(build_cube(k))[0]) == base


def test_symmetric_kink_pairs_preserve_eqord():
    pd = parse_pd(TREFOIL)
    want = knot_invariants(pd)
    pairs = list(symmetric_kink_pairs(pd))
    assert pairs
    for k in pairs:
        assert k.n == 5
        assert knot_invariants(k) == want


def test_clasp_candidates_from_unknot():
    base = plat_pd([("A", 1), ("A", 1)], TWO_STRAND)
    found = list(clasp_candidates(base))
    assert found
    for k, l, r in found:
        sym = derive_symmetry(k)
        assert sym.crossing_involution[l] == r and k.n == base.n + 2


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 6), st.sampled_from(KINK_FORMS))
def test_kinked_trefoil_invariants(e, form):
    k = add_kink(parse_pd(TREFOIL), e, form)
    assert is_planar(k)
    s, _ = homology(build_cube(k))
    assert sorted(s.degree(0).free_q) == [-3, -1]
