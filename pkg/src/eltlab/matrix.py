"""Matrices over layered scalars.

Because tangibles never cancel, matrix sums and products keep
``t(x + y) = max(t(x), t(y))``; all the usual identities that fail in
plain max-plus are recovered here up to layers, and the functions in
this module report those layers exactly.

Highlights: a permanent-style determinant split into even and odd
permutation sums, the adjoint and the quasi-inverse (inverse up to
quasi-identities), two independent characteristic polynomial routes,
a Cayley-Hamilton check up to layer-zero slack, eigenpair
verification, the essential trace with its spectral-dominance report,
nilpotency of index at most n^2, and cycle utilities used as oracles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

from ._markers import BOTTOM, Bottom
from .core import (
    ELTScalar,
    LayerRing,
    NEG_INF,
    ONE,
    Q_RING,
    format_scalar,
    invert,
    parse_scalar,
)
from .errors import (
    DimensionMismatch,
    NotSquare,
    ParseError,
    SingularDeterminant,
    ZeroVector,
)
from .poly import ELTPolynomial, MonomialStatus, RootDescription, elt_roots

MINUS_ONE = ELTScalar(0, -1)

Vector = Tuple[ELTScalar, ...]


class ELTMatrix:
    """Immutable rectangular matrix of scalars."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[ELTScalar]]):
        grid = tuple(tuple(row) for row in rows)
        if not grid or not grid[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(grid[0])
        for row in grid:
            if len(row) != width:
                raise ValueError("matrix rows must all have the same length")
            for x in row:
                if not isinstance(x, ELTScalar):
                    raise TypeError(f"matrix entry must be a scalar, got {type(x).__name__}")
        self._rows = grid

    @classmethod
    def identity(cls, n: int) -> "ELTMatrix":
        return cls(
            [[ONE if i == j else NEG_INF for j in range(n)] for i in range(n)]
        )

    @classmethod
    def filled(cls, nrows: int, ncols: int, value: ELTScalar) -> "ELTMatrix":
        return cls([[value] * ncols for _ in range(nrows)])

    @classmethod
    def diagonal(cls, entries: Sequence[ELTScalar]) -> "ELTMatrix":
        n = len(entries)
        return cls(
            [[entries[i] if i == j else NEG_INF for j in range(n)] for i in range(n)]
        )

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0])

    @property
    def rows(self) -> Tuple[Tuple[ELTScalar, ...], ...]:
        return self._rows

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, i: int, j: int) -> ELTScalar:
        return self._rows[i][j]

    def transpose(self) -> "ELTMatrix":
        return ELTMatrix(zip(*self._rows))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ELTMatrix":
        return ELTMatrix([[self._rows[i][j] for j in cols] for i in rows])

    def __add__(self, other: "ELTMatrix") -> "ELTMatrix":
        if not isinstance(other, ELTMatrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch(
                f"cannot add {self.nrows}x{self.ncols} and {other.nrows}x{other.ncols}"
            )
        return ELTMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self._rows, other._rows)
            ]
        )

    def __mul__(self, other: "ELTMatrix") -> "ELTMatrix":
        if not isinstance(other, ELTMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        cols = other.transpose().rows
        out = []
        for row in self._rows:
            out.append(
                [_dot(row, col) for col in cols]
            )
        return ELTMatrix(out)

    def scale(self, c: ELTScalar) -> "ELTMatrix":
        """Entrywise product with the scalar c."""
        return ELTMatrix([[c * x for x in row] for row in self._rows])

    def apply(self, v: Sequence[ELTScalar]) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.ncols:
            raise DimensionMismatch(
                f"cannot apply {self.nrows}x{self.ncols} to a vector of length {len(v)}"
            )
        return tuple(_dot(row, v) for row in self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ELTMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        body = "; ".join(
            ", ".join(format_scalar(x) for x in row) for row in self._rows
        )
        return f"ELTMatrix[{body}]"

    # text format: one row per line, entries separated by commas.  The
    # structured variant prefixes explicit "rows:"/"cols:" header lines.

    def to_text(self, structured: bool = False) -> str:
        body = "\n".join(
            ", ".join(format_scalar(x) for x in row) for row in self._rows
        )
        if structured:
            return f"rows: {self.nrows}\ncols: {self.ncols}\n{body}"
        return body

    @classmethod
    def from_text(cls, text: str) -> "ELTMatrix":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty matrix text")
        expected: Optional[Tuple[int, int]] = None
        if lines[0].startswith("rows:"):
            if len(lines) < 2 or not lines[1].startswith("cols:"):
                raise ParseError("structured matrix header needs a cols: line")
            expected = (_parse_dim(lines[0], "rows"), _parse_dim(lines[1], "cols"))
            lines = lines[2:]
        grid = [[parse_scalar(tok) for tok in ln.split(",")] for ln in lines]
        if not grid:
            raise ParseError("matrix text has no entry rows")
        width = len(grid[0])
        for row in grid:
            if len(row) != width:
                raise ParseError("matrix rows have inconsistent lengths")
        if expected is not None and expected != (len(grid), width):
            raise ParseError(
                f"matrix body is {len(grid)}x{width}, header says {expected[0]}x{expected[1]}"
            )
        return cls(grid)


def _dot(xs: Sequence[ELTScalar], ys: Sequence[ELTScalar]) -> ELTScalar:
    acc = NEG_INF
    for x, y in zip(xs, ys):
        acc = acc + x * y
    return acc


def _parse_dim(line: str, label: str) -> int:
    value = line.partition(":")[2].strip()
    if not value.isdigit() or int(value) <= 0:
        raise ParseError(f"malformed {label}: header {line!r}")
    return int(value)


def parse_vector(text: str) -> Vector:
    toks = text.split(",")
    if not any(tok.strip() for tok in toks):
        raise ParseError("empty vector text")
    return tuple(parse_scalar(tok) for tok in toks)


def format_vector(v: Sequence[ELTScalar]) -> str:
    return ", ".join(format_scalar(x) for x in v)


def _require_square(a: ELTMatrix) -> int:
    if not a.is_square:
        raise NotSquare(f"expected a square matrix, got {a.nrows}x{a.ncols}")
    return a.nrows


# ---------------------------------------------------------------------------
# determinant and adjoint


def _parity(perm: Sequence[int]) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return inv & 1


def det_pair(a: ELTMatrix) -> Tuple[ELTScalar, ELTScalar]:
    """Sums of permutation products over even and odd permutations.

    The determinant is ``plus + (-)minus``; the pair itself is what
    symbolic identities are checked against.
    """
    n = _require_square(a)
    plus = NEG_INF
    minus = NEG_INF
    rows = a.rows
    for perm in itertools.permutations(range(n)):
        prod = ONE
        for i, j in enumerate(perm):
            x = rows[i][j]
            if x.is_neg_inf:
                prod = NEG_INF
                break
            prod = prod * x
        if prod.is_neg_inf:
            continue
        if _parity(perm):
            minus = minus + prod
        else:
            plus = plus + prod
    return plus, minus


def det(a: ELTMatrix) -> ELTScalar:
    plus, minus = det_pair(a)
    return plus + (-minus)


def minor(a: ELTMatrix, i: int, j: int) -> ELTMatrix:
    """Submatrix with row i and column j removed (0-based)."""
    n = _require_square(a)
    if n == 1:
        raise ValueError("a 1x1 matrix has no minors")
    keep_r = [r for r in range(n) if r != i]
    keep_c = [c for c in range(n) if c != j]
    return a.submatrix(keep_r, keep_c)


def adjoint(a: ELTMatrix) -> ELTMatrix:
    """Signed transposed cofactor matrix; for 1x1 it is [[0^[1]]]."""
    n = _require_square(a)
    if n == 1:
        return ELTMatrix([[ONE]])
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            cof = det(minor(a, j, i))
            row.append(cof if (i + j) % 2 == 0 else -cof)
        out.append(row)
    return ELTMatrix(out)


# ---------------------------------------------------------------------------
# quasi-identities and the quasi-inverse


@dataclass(frozen=True)
class QuasiIdentityReport:
    """Checks that a matrix is a quasi-identity: ones on the diagonal,
    layer-zero entries off it, idempotent, and nonsingular in the sense
    that its determinant has nonzero layer."""

    diagonal_ok: bool
    offdiagonal_ok: bool
    idempotent: bool
    determinant: ELTScalar
    nonsingular: bool

    @property
    def ok(self) -> bool:
        return (
            self.diagonal_ok
            and self.offdiagonal_ok
            and self.idempotent
            and self.nonsingular
        )

    def __bool__(self) -> bool:
        return self.ok


def quasi_identity_check(m: ELTMatrix) -> QuasiIdentityReport:
    n = _require_square(m)
    diagonal_ok = all(m.entry(i, i) == ONE for i in range(n))
    offdiagonal_ok = all(
        m.entry(i, j).layer == 0
        for i in range(n)
        for j in range(n)
        if i != j
    )
    idempotent = m * m == m
    d = det(m)
    return QuasiIdentityReport(diagonal_ok, offdiagonal_ok, idempotent, d, d.layer != 0)


@dataclass(frozen=True)
class QuasiInverseResult:
    inverse: ELTMatrix
    left: QuasiIdentityReport
    right: QuasiIdentityReport


def quasi_inverse(a: ELTMatrix, ring: LayerRing = Q_RING) -> QuasiInverseResult:
    """Inverse up to quasi-identities: det(A)^(-1) times the adjoint.

    Raises SingularDeterminant unless the determinant is finite with a
    unit layer.  The left and right reports certify that both products
    with A are quasi-identities.
    """
    _require_square(a)
    d = det(a)
    if d.is_neg_inf or not ring.is_unit(d.layer):
        raise SingularDeterminant(
            f"determinant {d} has no unit layer in {ring.name}"
        )
    qi = adjoint(a).scale(invert(d, ring))
    return QuasiInverseResult(
        qi,
        quasi_identity_check(qi * a),
        quasi_identity_check(a * qi),
    )


# ---------------------------------------------------------------------------
# characteristic polynomial, two routes


def charpoly(a: ELTMatrix) -> ELTPolynomial:
    """det(L*I + (-)A) via sums of principal minors.

    The coefficient of L^(n-k) is the k-th signed principal minor sum;
    the leading coefficient is 0^[1].
    """
    n = _require_square(a)
    coeffs: Dict[int, ELTScalar] = {n: ONE}
    indices = range(n)
    for k in range(1, n + 1):
        acc = NEG_INF
        for subset in itertools.combinations(indices, k):
            acc = acc + det(a.submatrix(subset, subset))
        if k % 2 == 1:
            acc = -acc
        if not acc.is_neg_inf:
            coeffs[n - k] = acc
    return ELTPolynomial(coeffs)


def charpoly_symbolic(a: ELTMatrix) -> ELTPolynomial:
    """det(L*I + (-)A) expanded with polynomial entries.

    An independent route kept for cross-checking: the permutation sum
    is evaluated over single-variable polynomials instead of scalars.
    """
    n = _require_square(a)
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            cells: Dict[int, ELTScalar] = {}
            neg = -a.entry(i, j)
            if not neg.is_neg_inf:
                cells[0] = neg
            if i == j:
                cells[1] = cells[1] + ONE if 1 in cells else ONE
            row.append(ELTPolynomial(cells))
        entries.append(row)
    total = ELTPolynomial.zero()
    for perm in itertools.permutations(range(n)):
        prod = ELTPolynomial.constant(ONE)
        for i, j in enumerate(perm):
            prod = prod * entries[i][j]
            if prod.is_zero:
                break
        if _parity(perm):
            prod = -prod
        total = total + prod
    return total


def poly_at_matrix(p: ELTPolynomial, a: ELTMatrix) -> ELTMatrix:
    """Evaluate a polynomial at a square matrix (constant term times
    the identity)."""
    n = _require_square(a)
    acc = ELTMatrix.filled(n, n, NEG_INF)
    power = ELTMatrix.identity(n)
    deg = 0
    for d in sorted(p.degrees):
        while deg < d:
            power = power * a
            deg += 1
        acc = acc + power.scale(p.coeff(d))
    return acc


def cayley_hamilton_check(a: ELTMatrix) -> bool:
    """Whether the matrix annihilates its characteristic polynomial up
    to layers: every entry of p(A) has layer zero."""
    value = poly_at_matrix(charpoly(a), a)
    return all(x.layer == 0 for row in value.rows for x in row)


# ---------------------------------------------------------------------------
# traces and eigenpairs


def trace(a: ELTMatrix) -> ELTScalar:
    n = _require_square(a)
    acc = NEG_INF
    for i in range(n):
        acc = acc + a.entry(i, i)
    return acc


class EigenStatus(Enum):
    STRICT = "strict"
    ELT_ONLY = "elt-only"
    NO = "no"

    def __str__(self) -> str:
        return self.value


def eigen_verify(a: ELTMatrix, value: ELTScalar, vector: Sequence[ELTScalar]) -> EigenStatus:
    """Grade a claimed eigenpair.

    STRICT means A v equals value * v exactly; ELT_ONLY means every
    component only balances (the difference has layer zero); NO
    otherwise.  Vectors whose entries all have layer zero are rejected,
    they satisfy the balance trivially.
    """
    n = _require_square(a)
    v = tuple(vector)
    if len(v) != n:
        raise DimensionMismatch(f"vector length {len(v)} does not match {n}x{n}")
    if all(x.layer == 0 for x in v):
        raise ZeroVector("eigenvector needs an entry with nonzero layer")
    left = a.apply(v)
    right = tuple(value * x for x in v)
    if left == right:
        return EigenStatus.STRICT
    if all(x.nabla(y) for x, y in zip(left, right)):
        return EigenStatus.ELT_ONLY
    return EigenStatus.NO


def eigen_candidates(a: ELTMatrix, ring: LayerRing = Q_RING) -> RootDescription:
    """Root description of the characteristic polynomial."""
    return elt_roots(charpoly(a), ring)


# ---------------------------------------------------------------------------
# cycles


@dataclass(frozen=True)
class CycleInfo:
    """A simple cycle through finite entries, listed from its smallest
    vertex; ``mean`` is the tangible weight divided by the length."""

    vertices: Tuple[int, ...]
    weight: ELTScalar
    mean: Fraction

    @property
    def length(self) -> int:
        return len(self.vertices)


def simple_cycles(a: ELTMatrix) -> Tuple[CycleInfo, ...]:
    """All simple cycles of the digraph of finite entries."""
    n = _require_square(a)
    adj = [
        [j for j in range(n) if not a.entry(i, j).is_neg_inf] for i in range(n)
    ]
    found: list[CycleInfo] = []

    def visit(start: int, path: list[int], used: set[int]) -> None:
        v = path[-1]
        for w in adj[v]:
            if w == start:
                weight = ONE
                for x, y in zip(path, path[1:] + [start]):
                    weight = weight * a.entry(x, y)
                found.append(
                    CycleInfo(tuple(path), weight, Fraction(weight.tangible, len(path)))
                )
            elif w > start and w not in used:
                used.add(w)
                path.append(w)
                visit(start, path, used)
                path.pop()
                used.discard(w)

    for s in range(n):
        visit(s, [s], {s})
    return tuple(found)


def power_entry_paths(a: ELTMatrix, k: int, i: int, j: int) -> ELTScalar:
    """Entry (i, j) of A^k as an explicit sum over length-k paths."""
    n = _require_square(a)
    if k < 0:
        raise ValueError("path length must be nonnegative")
    if k == 0:
        return ONE if i == j else NEG_INF
    acc = NEG_INF
    for mids in itertools.product(range(n), repeat=k - 1):
        walk = (i,) + mids + (j,)
        prod = ONE
        for x, y in zip(walk, walk[1:]):
            prod = prod * a.entry(x, y)
            if prod.is_neg_inf:
                break
        acc = acc + prod
    return acc


# ---------------------------------------------------------------------------
# essential trace


Bound = Union[Fraction, Bottom]


@dataclass(frozen=True)
class EtrReport:
    """Essential trace with its supporting spectral data.

    ``coefficients`` maps k to the coefficient of L^(n-k) in the
    characteristic polynomial (finite ones only); ``l_set`` collects
    the k maximising t(c_k)/k and ``mu`` is its minimum.  The status
    grades the trace monomial: essential when the trace tangible beats
    every simple cycle of length at least two, quasi-essential on a
    tie, inessential when it is beaten or absent.  The value is the
    trace itself in the essential case and (t(c_mu)/mu)^[0] otherwise.
    """

    trace: ELTScalar
    coefficients: Dict[int, ELTScalar]
    l_set: frozenset
    mu: Optional[int]
    dominant: ELTScalar
    long_cycle_bound: Bound
    status: MonomialStatus
    value: ELTScalar


def essential_trace(a: ELTMatrix) -> EtrReport:
    n = _require_square(a)
    p = charpoly(a)
    coefficients = {
        k: p.coeff(n - k) for k in range(1, n + 1) if not p.coeff(n - k).is_neg_inf
    }
    tr = trace(a)
    long_bound: Bound = BOTTOM
    for cyc in simple_cycles(a):
        if cyc.length >= 2 and cyc.mean > long_bound:
            long_bound = cyc.mean
    if not coefficients:
        return EtrReport(
            tr, {}, frozenset(), None, NEG_INF, long_bound,
            MonomialStatus.INESSENTIAL, NEG_INF,
        )
    ratios = {k: Fraction(c.tangible, k) for k, c in coefficients.items()}
    best = max(ratios.values())
    l_set = frozenset(k for k, r in ratios.items() if r == best)
    mu = min(l_set)
    dominant = coefficients[mu]
    if tr.is_neg_inf:
        status = MonomialStatus.INESSENTIAL
    elif tr.tangible > long_bound:
        status = MonomialStatus.ESSENTIAL
    elif tr.tangible == long_bound:
        status = MonomialStatus.QUASI_ESSENTIAL
    else:
        status = MonomialStatus.INESSENTIAL
    value = tr if status is MonomialStatus.ESSENTIAL else ELTScalar(best, 0)
    return EtrReport(
        tr, coefficients, l_set, mu, dominant, long_bound, status, value
    )


def essential_trace_value(a: ELTMatrix) -> ELTScalar:
    return essential_trace(a).value


# ---------------------------------------------------------------------------
# nilpotency


def is_nilpotent(a: ELTMatrix, bound: Optional[int] = None) -> Tuple[bool, Optional[int]]:
    """First power index at which every entry of A^m has layer zero.

    Returns (True, m) for the least such m up to the bound (default
    n^2), else (False, None).
    """
    n = _require_square(a)
    if bound is None:
        bound = n * n
    power = a
    for m in range(1, bound + 1):
        if all(x.layer == 0 for row in power.rows for x in row):
            return True, m
        if m < bound:
            power = power * a
    return False, None
