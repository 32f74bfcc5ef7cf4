"""Homology over F2[H]: unit elimination followed by valuation pivoting.

Every differential entry of a homogeneous complex is a single monomial
H^e with e fixed by the gradings, so matrices are stored as
``{index: exponent}`` dictionaries and addition of two entries in the same
position always cancels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cube import ConsistencyError, GradedComplex


class StructureError(RuntimeError):
    """The free part does not look like the homology of a knot."""


@dataclass(frozen=True)
class DegreeSummary:
    i: int
    free_q: tuple[int, ...]
    torsion: tuple[tuple[int, int], ...]  # (q, k): a summand F2[H]/(H^k)


@dataclass(frozen=True)
class HomologySummary:
    degrees: tuple[DegreeSummary, ...] = ()

    @classmethod
    def from_parts(cls, free: dict[int, list[int]], torsion: dict[int, list[tuple[int, int]]]):
        out = []
        for i in sorted(set(free) | set(torsion)):
            f = tuple(sorted(free.get(i, ()), reverse=True))
            t = tuple(sorted(torsion.get(i, ()), key=lambda p: (-p[0], p[1])))
            if f or t:
                out.append(DegreeSummary(i, f, t))
        return cls(tuple(out))

    def degree(self, i: int) -> DegreeSummary:
        for d in self.degrees:
            if d.i == i:
                return d
        return DegreeSummary(i, (), ())

    @property
    def free_rank(self) -> int:
        return sum(len(d.free_q) for d in self.degrees)

    def to_dict(self, s: int | None = None, ord_key: str = "ord") -> dict:
        return {
            "degrees": [
                {"i": d.i, "free_q": list(d.free_q),
                 "torsion": [{"q": q, "k": k} for q, k in d.torsion]}
                for d in self.degrees
            ],
            ord_key: max_torsion_order(self),
            "s": s,
        }

    def to_json(self, s: int | None = None) -> str:
        return json.dumps(self.to_dict(s), sort_keys=False, separators=(",", ":"))


def max_torsion_order(summary: HomologySummary) -> int:
    return max((k for d in summary.degrees for _, k in d.torsion), default=0)


def s_invariant(summary: HomologySummary) -> int:
    free = [(d.i, q) for d in summary.degrees for q in d.free_q]
    if len(free) != 2 or any(i != 0 for i, _ in free):
        raise StructureError(f"expected two free generators in degree 0, got {free}")
    q1, q2 = sorted(q for _, q in free)
    if q2 - q1 != 2:
        raise StructureError(f"free generators at q = {q1}, {q2} are not 2 apart")
    return q1 + 1


# ---------------------------------------------------------------------------
# unit elimination


@dataclass
class ReductionTrace:
    pivots: int = 0
    size_before: int = 0
    size_after: int = 0
    nnz_after: int = 0
    sizes_by_degree: dict[int, int] = field(default_factory=dict)


def reduce_units(cx: GradedComplex) -> tuple[GradedComplex, ReductionTrace]:
    """Cancel every H^0 entry.  Returns a smaller homotopy equivalent complex.

    Columns are visited in generator order; in column x the unit entry whose
    row is sparsest is used (fill-in is (|row| - 1) * (|col| - 1) and the
    column factor is common).
    """
    n = len(cx.gens)
    cols: list[dict[int, int] | None] = [dict(c) for c in cx.d]
    rows: list[dict[int, int] | None] = [dict() for _ in range(n)]
    for j, col in enumerate(cols):
        for k, e in col.items():
            rows[k][j] = e
    alive = [True] * n
    queue = list(range(n - 1, -1, -1))  # a stack; pops in increasing order
    queued = [True] * n
    pivots = 0
    while queue:
        x = queue.pop()
        queued[x] = False
        if not alive[x]:
            continue
        col_x = cols[x]
        best = None
        for y, e in col_x.items():
            if e == 0:
                cost = len(rows[y])
                if best is None or cost < best[0] or (cost == best[0] and y < best[1]):
                    best = (cost, y)
        if best is None:
            continue
        y = best[1]
        pivots += 1
        row_y = rows[y]
        targets = [(w, ew) for w, ew in col_x.items() if w != y]
        for z, ez in row_y.items():
            if z == x:
                continue
            col_z = cols[z]
            fresh_unit = False
            for w, ew in targets:
                if w in col_z:
                    del col_z[w]
                    del rows[w][z]
                else:
                    e = ez + ew
                    col_z[w] = e
                    rows[w][z] = e
                    if e == 0:
                        fresh_unit = True
            if fresh_unit and not queued[z]:
                queued[z] = True
                queue.append(z)
        # drop x and y together with every entry touching them
        for g in (x, y):
            for w in cols[g]:
                if rows[w] is not None:
                    rows[w].pop(g, None)
            for z in rows[g]:
                if cols[z] is not None:
                    cols[z].pop(g, None)
            cols[g] = None
            rows[g] = None
            alive[g] = False

    keep = [j for j in range(n) if alive[j]]
    new_index = {j: k for k, j in enumerate(keep)}
    gens = [cx.gens[j] for j in keep]
    d = [{new_index[k]: e for k, e in cols[j].items()} for j in keep]
    out = GradedComplex(gens, d, cx.n_plus, cx.n_minus, cx.pd, cx.resolutions)
    sizes: dict[int, int] = {}
    for g in gens:
        sizes[g.i] = sizes.get(g.i, 0) + 1
    trace = ReductionTrace(pivots, n, len(gens), sum(len(c) for c in d), sizes)
    return out, trace


# ---------------------------------------------------------------------------
# valuation pivoting


class _Matrix:
    """Mutable sparse matrix with exponent entries and mirrored rows."""

    def __init__(self):
        self.cols: dict[int, dict[int, int]] = {}
        self.rows: dict[int, dict[int, int]] = {}

    def toggle(self, r: int, c: int, e: int) -> None:
        col = self.cols.setdefault(c, {})
        if r in col:
            if col[r] != e:
                raise ConsistencyError(
                    f"entries H^{col[r]} and H^{e} meet at ({r}, {c}); complex is not homogeneous"
                )
            del col[r]
            del self.rows[r][c]
            if not col:
                del self.cols[c]
            if not self.rows[r]:
                del self.rows[r]
        else:
            col[r] = e
            self.rows.setdefault(r, {})[c] = e

    def drop_row(self, r: int) -> None:
        for c in list(self.rows.get(r, ())):
            self.toggle(r, c, self.cols[c][r])

    def drop_col(self, c: int) -> None:
        for r in list(self.cols.get(c, ())):
            self.toggle(r, c, self.cols[c][r])

    def add_col(self, src: int, dst: int, shift: int) -> None:
        """col_dst += H^shift col_src."""
        for r, e in list(self.cols.get(src, {}).items()):
            self.toggle(r, dst, e + shift)

    def add_row(self, src: int, dst: int, shift: int) -> None:
        """row_dst += H^shift row_src."""
        for c, e in list(self.rows.get(src, {}).items()):
            self.toggle(dst, c, e + shift)

    def min_pivot(self, rows: set[int] | None = None, cols: set[int] | None = None):
        """Minimal-exponent entry; ties by fill (row x column), then index."""
        best = None
        for c, col in self.cols.items():
            if cols is not None and c not in cols:
                continue
            for r, e in col.items():
                if rows is not None and r not in rows:
                    continue
                if best is not None and e > best[0]:
                    continue
                key = (e, len(self.rows[r]) * len(col), r, c)
                if best is None or key < best:
                    best = key
        return best


def _degree_matrices(cx: GradedComplex) -> dict[int, _Matrix]:
    mats: dict[int, _Matrix] = {}
    for j, col in enumerate(cx.d):
        i = cx.gens[j].i
        for k, e in col.items():
            if cx.gens[k].i != i + 1:
                raise ConsistencyError("differential does not raise the homological degree by one")
            if cx.gens[k].q - 2 * e != cx.gens[j].q:
                raise ConsistencyError(f"entry {j}->{k} is not homogeneous")
            mats.setdefault(i, _Matrix()).toggle(k, j, e)
    return mats


def snf_homology(cx: GradedComplex) -> HomologySummary:
    """ker d_i / im d_{i-1} for every degree i."""
    qs = {j: g.q for j, g in enumerate(cx.gens)}
    by_degree: dict[int, list[int]] = {}
    for j, g in enumerate(cx.gens):
        by_degree.setdefault(g.i, []).append(j)
    mats = _degree_matrices(cx)
    free: dict[int, list[int]] = {}
    torsion: dict[int, list[tuple[int, int]]] = {}
    for i, members in sorted(by_degree.items()):
        # (1) column-reduce d_i; column operations on d_i are basis changes
        # of C_i, i.e. row operations on a copy of d_{i-1}
        di = _copy(mats.get(i))
        prev = _copy(mats.get(i - 1))
        active_rows = set(di.rows)
        active_cols = set(members)
        while True:
            piv = di.min_pivot(active_rows, active_cols)
            if piv is None:
                break
            k, _, r, c = piv
            for z, a in list(di.rows[r].items()):
                if z == c or z not in active_cols:
                    continue
                shift = a - k
                di.add_col(c, z, shift)
                # e'_z = e_z + H^shift e_c  => row_c(prev) += H^shift row_z(prev)
                prev.add_row(z, c, shift)
            active_rows.discard(r)
            active_cols.discard(c)
        kernel = active_cols
        for c in members:
            if c not in kernel and prev.rows.get(c):
                raise ConsistencyError(f"d^2 != 0 detected in degree {i}")
        # (2) image of d_{i-1} inside the kernel basis
        rows_left = set(kernel)
        cols_left = set(prev.cols)
        tors = []
        while True:
            piv = prev.min_pivot(rows_left, cols_left)
            if piv is None:
                break
            k, _, r, c = piv
            for z, a in list(prev.rows[r].items()):
                if z != c and z in cols_left:
                    prev.add_col(c, z, a - k)
            for z, a in list(prev.cols.get(c, {}).items()):
                if z != r and z in rows_left:
                    prev.add_row(r, z, a - k)
            if k > 0:
                tors.append((qs[r], k))
            rows_left.discard(r)
            cols_left.discard(c)
        free[i] = [qs[r] for r in rows_left]
        torsion[i] = tors
    return HomologySummary.from_parts(free, torsion)


def _copy(m: _Matrix | None) -> _Matrix:
    out = _Matrix()
    if m is not None:
        out.cols = {c: dict(v) for c, v in m.cols.items()}
        out.rows = {r: dict(v) for r, v in m.rows.items()}
    return out


def homology(cx: GradedComplex) -> tuple[HomologySummary, ReductionTrace]:
    reduced, trace = reduce_units(cx)
    return snf_homology(reduced), trace
