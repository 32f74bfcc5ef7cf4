import random

import pytest
from hypothesis import given, settings, strategies as st

from ktor.cube import GradedComplex, Generator, build_cone, build_cube, build_itau
from ktor.diagram import derive_symmetry, parse_pd
from ktor.homology import (
    HomologySummary,
    StructureError,
    homology,
    max_torsion_order,
    reduce_units,
    s_invariant,
    snf_homology,
)

from conftest import SEVEN_7B, TREFOIL
from oracle import complex_as_oracle, oracle_homology, summary_as_oracle


def _from_pieces(free, pairs, n_moves, seed):
    """A complex with known homology, scrambled by homogeneous basis changes.

    free: [(i, q)]; pairs: [(i, q, k)] meaning x in (i, q) with d x = H^k y.
    Conjugating by P = 1 + H^e E_ab (which squares to 1 over F2) keeps d^2 = 0.
    """
    gens, d = [], []
    for i, q in free:
        gens.append((i, q))
        d.append({})
    for i, q, k in pairs:
        gens.append((i, q))
        gens.append((i + 1, q + 2 * k))
        d.append({len(gens) - 1: k})
        d.append({})
    n = len(gens)
    # dense row matrix rows[a][b] = exponent of entry (a <- b) or None
    M = [[None] * n for _ in range(n)]
    for b, col in enumerate(d):
        for a, e in col.items():
            M[a][b] = e
    rng = random.Random(seed)

    def toggle(a, b, e):
        M[a][b] = None if M[a][b] is not None else e

    for _ in range(n_moves if n else 0):
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b or gens[a][0] != gens[b][0] or gens[a][1] < gens[b][1] or (gens[a][1] - gens[b][1]) % 2:
            continue
        e = (gens[a][1] - gens[b][1]) // 2
        # basis change: M -> P M P with P = 1 + H^e E_ab
        # column op: col_b += H^e col_a ; row op: row_a += H^e row_b
        for r in range(n):
            if M[r][a] is not None:
                toggle(r, b, M[r][a] + e)
        for c in range(n):
            if M[b][c] is not None:
                toggle(a, c, M[b][c] + e)
    out = [dict() for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if M[a][b] is not None:
                out[b][a] = M[a][b]
    perm = list(range(n))
    rng.shuffle(perm)
    inv = {p: k for k, p in enumerate(perm)}
    g2 = [None] * n
    d2 = [None] * n
    for k, p in enumerate(perm):
        g2[k] = Generator(0, k, *gens[p])
        d2[k] = {inv[t]: e for t, e in out[p].items()}
    return GradedComplex(g2, d2)


def _expected(free, pairs):
    exp = {}
    for i, q in free:
        exp.setdefault(i, ([], []))[0].append(q)
    for i, q, k in pairs:
        if k:
            exp.setdefault(i + 1, ([], []))[1].append((q + 2 * k, k))
    return {i: (sorted(f), sorted(t)) for i, (f, t) in exp.items()}


pieces = st.tuples(
    st.lists(st.tuples(st.integers(-2, 2), st.integers(-3, 3).map(lambda x: 2 * x + 1)), max_size=4),
    st.lists(st.tuples(st.integers(-2, 2), st.integers(-3, 3).map(lambda x: 2 * x + 1), st.integers(0, 3)),
             max_size=6),
    st.integers(0, 200),
    st.integers(0, 10 ** 6),
)


@settings(max_examples=120, deadline=None)
@given(pieces)
def test_random_complexes(data):
    free, pairs, moves, seed = data
    cx = _from_pieces(free, pairs, moves, seed)
    cx.check()
    want = _expected(free, pairs)
    raw = summary_as_oracle(snf_homology(cx))
    red, _ = reduce_units(cx)
    red.check()
    assert raw == want
    assert summary_as_oracle(snf_homology(red)) == want
    assert oracle_homology(*complex_as_oracle(cx)) == want


def test_empty_complex():
    s = snf_homology(GradedComplex([], []))
    assert s.degrees == () or list(s.degrees) == []
    assert max_torsion_order(s) == 0


def test_trefoil_bn():
    s, trace = homology(build_cube(parse_pd(TREFOIL)))
    assert s_invariant(s) == -2
    assert max_torsion_order(s) == 1
    assert s.free_rank == 2
    assert trace.size_before == 30 and trace.size_after < 30


@pytest.mark.parametrize("text", [TREFOIL, SEVEN_7B])
def test_reduced_agrees_with_oracle(text):
    pd = parse_pd(text)
    cx = build_cube(pd)
    red, trace = reduce_units(cx)
    assert trace.size_after == len(red)
    want = oracle_homology(*complex_as_oracle(cx))
    assert summary_as_oracle(snf_homology(red)) == want
    assert summary_as_oracle(snf_homology(cx)) == want


def test_generator_order_does_not_matter():
    pd = parse_pd(SEVEN_7B)
    cx = build_cone(build_itau(pd, derive_symmetry(pd), build_cube(pd)))
    base = summary_as_oracle(homology(cx)[0])
    rng = random.Random(7)
    for _ in range(3):
        perm = list(range(len(cx)))
        rng.shuffle(perm)
        inv = {p: k for k, p in enumerate(perm)}
        shuffled = GradedComplex([cx.gens[p] for p in perm],
                                 [{inv[t]: e for t, e in cx.d[p].items()} for p in perm])
        assert summary_as_oracle(homology(shuffled)[0]) == base


def test_s_invariant_structure_errors():
    with pytest.raises(StructureError):
        s_invariant(HomologySummary.from_parts({0: [1]}, {}))
    with pytest.raises(StructureError):
        s_invariant(HomologySummary.from_parts({0: [1, 5]}, {}))
    assert s_invariant(HomologySummary.from_parts({0: [-1, 1]}, {})) == 0


def test_summary_json_roundtrip():
    s, _ = homology(build_cube(parse_pd(TREFOIL)))
    d = s.to_dict(s_invariant(s))
    assert d["s"] == -2 and d["ord"] == 1
    assert all(set(x) == {"i", "free_q", "torsion"} for x in d["degrees"])
