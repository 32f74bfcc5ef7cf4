import pytest

from ktor.ccmaps import (
    IDENTITY_NAMES,
    ChangeSite,
    IdentityFailed,
    Space,
    SiteInvalid,
    apply_change,
    build_package,
    local_dot,
    local_saddle,
    verify_package,
)
from ktor.cube import build_cube
from ktor.diagram import derive_symmetry, parse_pd
from ktor.sparse import SparseMatrix

from conftest import FIG8_CLASP, SEVEN_7B, TREFOIL


def _setup(text):
    pd = parse_pd(text)
    return pd, derive_symmetry(pd)


@pytest.fixture(scope="module")
def trefoil_space():
    pd = parse_pd(TREFOIL)
    cx = build_cube(pd)
    return pd, cx, Space.from_complex(cx)


def test_neck_cutting_on_saddles(trefoil_space):
    """Saddle there and back at crossing c equals D_c + H on the vertices it starts from."""
    pd, cx, sp = trefoil_space
    for c in range(pd.n):
        there = local_saddle(sp, c, 0)
        back = local_saddle(sp, c, 1)
        q = pd.crossings[c]
        D = local_dot(sp, (q[0], q[2]), [v for v in sp.circles if not (v >> c) & 1])
        proj = SparseMatrix(sp.size, sp.size)
        for v in sp.circles:
            if not (v >> c) & 1:
                for j in range(sp.offset[v], sp.offset[v] + (1 << len(sp.circles[v]))):
                    proj.cols[j] = {j: 0b10}
        assert back @ there == D + proj


def test_dots_commute_with_d(trefoil_space):
    pd, cx, sp = trefoil_space
    d = cx.differential()
    for e in range(1, pd.n_edges + 1):
        D = local_dot(sp, (e,))
        assert d @ D == D @ d
        assert D @ D == D.scale(0b10)


def test_saddles_sum_to_d(trefoil_space):
    pd, cx, sp = trefoil_space
    total = SparseMatrix(sp.size, sp.size)
    for c in range(pd.n):
        total = total + local_saddle(sp, c, 0)
    assert total == cx.differential()


@pytest.mark.parametrize("text,site", [
    (SEVEN_7B, ChangeSite("A", (0, 2))),
    (SEVEN_7B, ChangeSite("B", (4,))),
    (TREFOIL, ChangeSite("A", (0, 1))),
    (TREFOIL, ChangeSite("B", (2,))),
    (FIG8_CLASP, ChangeSite("C", (2, 3))),
])
def test_packages_verify(text, site):
    pd, sym = _setup(text)
    p = build_package(pd, sym, site)
    rep = verify_package(p, strict=True)
    assert [n for n, _ in rep.identities] == list(IDENTITY_NAMES)
    assert rep.ok
    assert rep.t == {"A": 2, "B": 1, "C": 1}[site.kind]
    assert abs(rep.eqord_K - rep.eqord_Kprime) <= rep.t


def test_changed_diagrams_are_symmetric():
    pd, sym = _setup(SEVEN_7B)
    ch = apply_change(pd, sym, ChangeSite("A", (0, 2)))
    assert ch.pd.n == 7
    assert ch.sym.on_axis_crossings == sym.on_axis_crossings


def test_type_c_changes_fig8_to_unknot():
    pd, sym = _setup(FIG8_CLASP)
    p = build_package(pd, sym, ChangeSite("C", (2, 3)))
    assert p.Kp.pd.n == 2
    rep = verify_package(p)
    assert (rep.eqord_K, rep.eqord_Kprime) == (1, 0)
    assert rep.auxiliary and all(ok for _, ok in rep.auxiliary)


@pytest.mark.parametrize("text,site", [
    (SEVEN_7B, ChangeSite("B", (0,))),      # off-axis crossing
    (SEVEN_7B, ChangeSite("A", (0, 1))),    # not a tau pair
    (SEVEN_7B, ChangeSite("A", (4, 4))),
    (SEVEN_7B, ChangeSite("C", (0, 2))),    # not a clasp on the axis
    (SEVEN_7B, ChangeSite("B", (9,))),
    (TREFOIL, ChangeSite("Z", (0,))),
])
def test_invalid_sites(text, site):
    pd, sym = _setup(text)
    with pytest.raises(SiteInvalid):
        build_package(pd, sym, site)


def test_broken_homotopy_is_reported():
    pd, sym = _setup(TREFOIL)
    p = build_package(pd, sym, ChangeSite("B", (2,)))
    # a single diagonal entry at a generator with nonzero differential
    j = next(j for j, col in p.K.d.cols.items() if col)
    p.h = p.h + SparseMatrix.from_entries(p.h.nrows, p.h.ncols, [(j, j, 1)])
    rep = verify_package(p)
    assert not rep.ok
    bad = {n for n, ok in rep.identities if not ok}
    assert "gf + H^t = dh + hd" in bad and bad <= set(IDENTITY_NAMES)
    assert rep.witnesses["gf + H^t = dh + hd"] is not None
    with pytest.raises(IdentityFailed):
        verify_package(p, strict=True)


def test_report_json():
    pd, sym = _setup(SEVEN_7B)
    rep = verify_package(build_package(pd, sym, ChangeSite("A", (0, 2))))
    d = rep.to_dict()
    assert set(d) == {"kind", "t", "identities", "eqord_K", "eqord_Kprime"}
    assert d["eqord_K"] == 2 and d["kind"] == "A" and d["t"] == 2
