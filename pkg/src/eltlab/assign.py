"""Max-plus assignment layer: criticality, Hungarian row scaling, the
scalar lift, and a maximum-mean-cycle oracle.

A tropical matrix is a rectangular grid of rationals and -inf, usually
obtained from a scalar matrix by the tangible projection.  An entry is
column-critical when it is finite and maximal within its column; a
square matrix is critical when some permutation picks a column-critical
entry from every row.  The Hungarian scaling produces exact rational
row offsets (from dual potentials of the max-weight assignment) that
make any feasible matrix critical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from ._markers import BOTTOM, Bottom
from .core import ELTScalar, parse_rational
from .errors import InfeasibleAssignment, NotSquare, ParseError
from .matrix import ELTMatrix

Entry = Union[Fraction, Bottom]
TropicalMatrix = Tuple[Tuple[Entry, ...], ...]


def tropical_matrix(rows: Sequence[Sequence[object]]) -> TropicalMatrix:
    """Normalise a grid of rationals / -inf markers into a tropical
    matrix."""
    grid = tuple(
        tuple(x if isinstance(x, Bottom) else Fraction(x) for x in row)
        for row in rows
    )
    if not grid or not grid[0]:
        raise ValueError("matrix must have at least one row and one column")
    width = len(grid[0])
    if any(len(row) != width for row in grid):
        raise ValueError("matrix rows must all have the same length")
    return grid


def tangible_matrix(a: ELTMatrix) -> TropicalMatrix:
    """Entrywise tangible projection of a scalar matrix."""
    return tuple(tuple(x.tangible for x in row) for row in a.rows)


def _require_square_grid(t: TropicalMatrix) -> int:
    if len(t) != len(t[0]):
        raise NotSquare(f"expected a square matrix, got {len(t)}x{len(t[0])}")
    return len(t)


# ---------------------------------------------------------------------------
# criticality


def column_critical_positions(t: TropicalMatrix) -> Tuple[Tuple[bool, ...], ...]:
    """Mask of finite entries that are maximal within their column."""
    n_rows = len(t)
    n_cols = len(t[0])
    mask = [[False] * n_cols for _ in range(n_rows)]
    for j in range(n_cols):
        col_max: Entry = BOTTOM
        for i in range(n_rows):
            if t[i][j] > col_max:
                col_max = t[i][j]
        if isinstance(col_max, Bottom):
            continue
        for i in range(n_rows):
            if t[i][j] == col_max:
                mask[i][j] = True
    return tuple(tuple(row) for row in mask)


def is_critical(t: TropicalMatrix) -> Tuple[bool, Optional[Tuple[int, ...]]]:
    """Perfect matching over column-critical positions.

    Returns (True, sigma) with sigma mapping rows to columns, or
    (False, None).  Ties resolve toward lower column indices.
    """
    n = _require_square_grid(t)
    mask = column_critical_positions(t)
    match_col: List[Optional[int]] = [None] * n

    def augment(i: int, banned: set) -> bool:
        for j in range(n):
            if mask[i][j] and j not in banned:
                banned.add(j)
                if match_col[j] is None or augment(match_col[j], banned):
                    match_col[j] = i
                    return True
        return False

    for i in range(n):
        if not augment(i, set()):
            return False, None
    sigma = [0] * n
    for j, i in enumerate(match_col):
        assert i is not None
        sigma[i] = j
    return True, tuple(sigma)


# ---------------------------------------------------------------------------
# Hungarian scaling


@dataclass(frozen=True)
class HungarianResult:
    """Row offsets alpha_i = -u_i plus the certifying data: the
    optimal assignment sigma, the dual potentials (u, v) with
    u_i + v_j >= t_ij everywhere finite and equality on sigma, and the
    assignment value."""

    alphas: Tuple[Fraction, ...]
    sigma: Tuple[int, ...]
    row_duals: Tuple[Fraction, ...]
    col_duals: Tuple[Fraction, ...]
    value: Fraction


def hungarian_scaling(t: TropicalMatrix) -> HungarianResult:
    """Exact max-weight assignment by augmenting paths on the equality
    graph of dual potentials.

    Raises InfeasibleAssignment when no permutation avoids -inf.  The
    returned alphas make the row-scaled matrix critical: adding
    alpha_i to row i turns every sigma entry into a column maximum.
    """
    n = _require_square_grid(t)
    u: List[Fraction] = []
    for i in range(n):
        finite = [x for x in t[i] if not isinstance(x, Bottom)]
        if not finite:
            raise InfeasibleAssignment(f"row {i} has no finite entry")
        u.append(max(finite))
    v: List[Fraction] = [Fraction(0)] * n
    match_col: List[Optional[int]] = [None] * n
    match_row: List[Optional[int]] = [None] * n

    for r in range(n):
        tree_rows = {r}
        tree_cols: set[int] = set()
        slack: List[Optional[Fraction]] = [None] * n
        way: List[int] = [0] * n
        for j in range(n):
            if not isinstance(t[r][j], Bottom):
                slack[j] = u[r] + v[j] - t[r][j]
                way[j] = r
        while True:
            delta: Optional[Fraction] = None
            for j in range(n):
                if j not in tree_cols and slack[j] is not None:
                    if delta is None or slack[j] < delta:
                        delta = slack[j]
            if delta is None:
                raise InfeasibleAssignment(
                    "no finite-weight permutation exists"
                )
            if delta > 0:
                for i in tree_rows:
                    u[i] -= delta
                for j in tree_cols:
                    v[j] += delta
                for j in range(n):
                    if j not in tree_cols and slack[j] is not None:
                        slack[j] -= delta
            j_next = next(
                j for j in range(n)
                if j not in tree_cols and slack[j] == 0
            )
            if match_col[j_next] is None:
                j = j_next
                while True:
                    i = way[j]
                    match_col[j] = i
                    match_row[i], j = j, match_row[i]
                    if j is None:
                        break
                break
            tree_cols.add(j_next)
            i_next = match_col[j_next]
            tree_rows.add(i_next)
            for j in range(n):
                if j in tree_cols or isinstance(t[i_next][j], Bottom):
                    continue
                cand = u[i_next] + v[j] - t[i_next][j]
                if slack[j] is None or cand < slack[j]:
                    slack[j] = cand
                    way[j] = i_next

    sigma = tuple(match_row[i] for i in range(n))
    value = sum((t[i][sigma[i]] for i in range(n)), Fraction(0))
    return HungarianResult(
        tuple(-u[i] for i in range(n)),
        sigma,
        tuple(u),
        tuple(v),
        value,
    )


def scale_rows(t: TropicalMatrix, alphas: Sequence[Fraction]) -> TropicalMatrix:
    """Add alpha_i to every finite entry of row i."""
    return tuple(
        tuple(x if isinstance(x, Bottom) else x + a for x in row)
        for row, a in zip(t, alphas)
    )


def critical_scaling_elt(a: ELTMatrix) -> ELTMatrix:
    """Invertible diagonal D with unit layers such that t(DA) is
    critical; the diagonal lifts the Hungarian row offsets."""
    result = hungarian_scaling(tangible_matrix(a))
    return ELTMatrix.diagonal(
        tuple(ELTScalar(alpha, 1) for alpha in result.alphas)
    )


# ---------------------------------------------------------------------------
# maximum mean cycle


def _strongly_connected_components(
    n: int, adj: Sequence[Sequence[int]]
) -> List[List[int]]:
    order: List[int] = []
    seen = [False] * n

    def forward(v: int) -> None:
        seen[v] = True
        for w in adj[v]:
            if not seen[w]:
                forward(w)
        order.append(v)

    for v in range(n):
        if not seen[v]:
            forward(v)
    radj: List[List[int]] = [[] for _ in range(n)]
    for v in range(n):
        for w in adj[v]:
            radj[w].append(v)
    comp = [-1] * n
    comps: List[List[int]] = []

    def backward(v: int, c: int) -> None:
        comp[v] = c
        comps[c].append(v)
        for w in radj[v]:
            if comp[w] < 0:
                backward(w, c)

    for v in reversed(order):
        if comp[v] < 0:
            comps.append([])
            backward(v, len(comps) - 1)
    return comps


def karp_max_mean_cycle(t: TropicalMatrix) -> Optional[Fraction]:
    """Maximum mean over directed cycles of finite entries, None when
    the digraph is acyclic.

    Runs the Karp recurrence from a fixed source within each strongly
    connected component and takes max over min over walk lengths.
    """
    n = _require_square_grid(t)
    adj = [
        [j for j in range(n) if not isinstance(t[i][j], Bottom)]
        for i in range(n)
    ]
    best: Optional[Fraction] = None
    for verts in _strongly_connected_components(n, adj):
        if len(verts) == 1:
            v = verts[0]
            if isinstance(t[v][v], Bottom):
                continue
        index = {v: k for k, v in enumerate(verts)}
        edges = [
            (index[a], index[b], t[a][b])
            for a in verts
            for b in adj[a]
            if b in index
        ]
        m = len(verts)
        dist: List[List[Optional[Fraction]]] = [
            [None] * m for _ in range(m + 1)
        ]
        dist[0][0] = Fraction(0)
        for k in range(1, m + 1):
            row_prev = dist[k - 1]
            row = dist[k]
            for a, b, w in edges:
                if row_prev[a] is not None:
                    cand = row_prev[a] + w
                    if row[b] is None or cand > row[b]:
                        row[b] = cand
        for vtx in range(m):
            full = dist[m][vtx]
            if full is None:
                continue
            worst: Optional[Fraction] = None
            for k in range(m):
                part = dist[k][vtx]
                if part is None:
                    continue
                ratio = (full - part) / (m - k)
                if worst is None or ratio < worst:
                    worst = ratio
            if worst is not None and (best is None or worst > best):
                best = worst
    return best


# ---------------------------------------------------------------------------
# plain text format: rational entries or -inf, same layout as the
# scalar matrix format.


def parse_tropical_matrix(text: str) -> TropicalMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty matrix text")
    rows = []
    for ln in lines:
        row: List[Entry] = []
        for tok in ln.split(","):
            tok = tok.strip()
            row.append(BOTTOM if tok == "-inf" else parse_rational(tok))
        rows.append(row)
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ParseError("matrix rows have inconsistent lengths")
    return tropical_matrix(rows)


def format_tropical_matrix(t: TropicalMatrix) -> str:
    return "\n".join(
        ", ".join("-inf" if isinstance(x, Bottom) else str(x) for x in row)
        for row in t
    )
