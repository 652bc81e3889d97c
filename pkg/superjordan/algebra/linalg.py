"""
Exact Linear Algebra.
Rational scalars, sparse matrices and canonical (reduced echelon) subspaces
over QQ, backed by sympy's DomainMatrix.
"""
import numbers
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from superjordan.errors import NotContained

Rational = QQ.dtype
Vector = Dict[int, "Rational"]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def to_rational(value) -> Rational:
    """Coerce ints, numpy ints, Fractions, QQ elements and "p/q" strings to QQ."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, numbers.Integral):
        return QQ(int(value))
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, numbers.Rational):
        return QQ(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def parse_rational(text: str) -> Rational:
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ValueError(f"not a rational literal: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return QQ(numerator, denominator)


def format_rational(value: Rational) -> str:
    """Canonical text form: "p" for integers, "p/q" otherwise."""
    if value.denominator == 1:
        return str(int(value.numerator))
    return f"{int(value.numerator)}/{int(value.denominator)}"


def bipartite_blocks(positions: Iterable[Tuple[int, int]]) -> List[Tuple[List[int], List[int]]]:
    """
    Split the support of a matrix into independent row/column blocks.

    Rows and columns are the two node sets of a bipartite graph with an edge per
    nonzero position. Rank is additive over the connected components.

    Returns:
        List of (sorted rows, sorted cols), ordered by smallest row index.
    """
    parent: Dict[Tuple[str, int], Tuple[str, int]] = {}

    def find(node):
        root = node
        while parent[root] != root:
            root = parent[root]
        while parent[node] != root:
            parent[node], node = root, parent[node]
        return root

    for i, j in positions:
        r, c = ("r", i), ("c", j)
        parent.setdefault(r, r)
        parent.setdefault(c, c)
        ra, rb = find(r), find(c)
        if ra != rb:
            parent[rb] = ra

    groups: Dict[Tuple[str, int], Tuple[List[int], List[int]]] = {}
    for node in parent:
        rows, cols = groups.setdefault(find(node), ([], []))
        (rows if node[0] == "r" else cols).append(node[1])
    blocks = [(sorted(rows), sorted(cols)) for rows, cols in groups.values()]
    blocks.sort(key=lambda block: (block[0][0] if block[0] else -1, block[1][0] if block[1] else -1))
    return blocks


class SparseMatrix:
    """
    Immutable sparse rational matrix.

    Stored as a sympy sparse DomainMatrix over QQ, which never keeps explicit
    zeros. Matrices act on coordinate columns from the left.
    """

    __slots__ = ("rows", "cols", "_dm")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], object]] = None):
        if rows < 0 or cols < 0:
            raise ValueError(f"invalid shape {rows}x{cols}")
        data: Dict[int, Dict[int, Rational]] = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            q = to_rational(value)
            if q:
                data.setdefault(i, {})[j] = q
        self.rows = rows
        self.cols = cols
        self._dm = DomainMatrix(data, (rows, cols), QQ)

    @classmethod
    def _wrap(cls, dm: DomainMatrix) -> "SparseMatrix":
        obj = cls.__new__(cls)
        obj.rows, obj.cols = dm.shape
        obj._dm = dm.to_sparse()
        return obj

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable[Tuple[int, int, object]]) -> "SparseMatrix":
        entries: Dict[Tuple[int, int], object] = {}
        for i, j, value in triplets:
            if (i, j) in entries:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            entries[(i, j)] = value
        return cls(rows, cols, entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row)}
        return cls(nrows, ncols, entries)

    @classmethod
    def zero(cls, rows: int, cols: Optional[int] = None) -> "SparseMatrix":
        return cls(rows, rows if cols is None else cols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def diagonal(cls, values: Sequence[object]) -> "SparseMatrix":
        return cls(len(values), len(values), {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def block_diagonal(cls, blocks: Sequence["SparseMatrix"]) -> "SparseMatrix":
        entries: Dict[Tuple[int, int], Rational] = {}
        r0 = c0 = 0
        for block in blocks:
            for i, j, v in block.entries():
                entries[(r0 + i, c0 + j)] = v
            r0 += block.rows
            c0 += block.cols
        return cls(r0, c0, entries)

    # -- inspection -------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def row_dicts(self) -> Dict[int, Dict[int, Rational]]:
        return {i: dict(row) for i, row in self._dm.rep.items() if row}

    def entries(self) -> Iterator[Tuple[int, int, Rational]]:
        """Nonzero entries in row-major order."""
        rep = self._dm.rep
        for i in sorted(rep):
            row = rep[i]
            for j in sorted(row):
                yield i, j, row[j]

    def to_dict(self) -> Dict[Tuple[int, int], Rational]:
        return {(i, j): v for i, j, v in self.entries()}

    def nnz(self) -> int:
        return sum(len(row) for row in self._dm.rep.values())

    def is_zero(self) -> bool:
        return self.nnz() == 0

    def __getitem__(self, key: Tuple[int, int]) -> Rational:
        i, j = key
        return self._dm.rep.get(i, {}).get(j, QQ.zero)

    def to_domain_matrix(self) -> DomainMatrix:
        return self._dm

    def to_dense(self) -> List[List[Rational]]:
        dense = [[QQ.zero] * self.cols for _ in range(self.rows)]
        for i, j, v in self.entries():
            dense[i][j] = v
        return dense

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.to_dict() == other.to_dict()

    __hash__ = None

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return SparseMatrix._wrap(self._dm + other._dm)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return SparseMatrix._wrap(self._dm - other._dm)

    def __neg__(self) -> "SparseMatrix":
        return SparseMatrix._wrap(-self._dm)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatrix._wrap(self._dm.matmul(other._dm))

    def scale(self, c) -> "SparseMatrix":
        q = to_rational(c)
        if not q:
            return SparseMatrix.zero(self.rows, self.cols)
        return SparseMatrix._wrap(self._dm * q)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix._wrap(self._dm.transpose())

    @property
    def T(self) -> "SparseMatrix":
        return self.transpose()

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        """Kronecker product; basis e_i (x) f_j sits at index i*other.rows + j."""
        entries: Dict[Tuple[int, int], Rational] = {}
        other_entries = list(other.entries())
        for i, j, v in self.entries():
            for k, l, w in other_entries:
                entries[(i * other.rows + k, j * other.cols + l)] = v * w
        return SparseMatrix(self.rows * other.rows, self.cols * other.cols, entries)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseMatrix":
        row_pos = {r: a for a, r in enumerate(rows)}
        col_pos = {c: b for b, c in enumerate(cols)}
        entries = {}
        for i, j, v in self.entries():
            if i in row_pos and j in col_pos:
                entries[(row_pos[i], col_pos[j])] = v
        return SparseMatrix(len(rows), len(cols), entries)

    def apply(self, vector: Mapping[int, Rational]) -> Vector:
        """Matrix times a sparse column vector."""
        out: Vector = {}
        for i, row in self._dm.rep.items():
            acc = QQ.zero
            for j, v in row.items():
                x = vector.get(j)
                if x:
                    acc += v * x
            if acc:
                out[i] = acc
        return out

    def column(self, j: int) -> Vector:
        return {i: row[j] for i, row in self._dm.rep.items() if j in row}

    def trace(self) -> Rational:
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), QQ.zero)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def _rref_rows(data: Mapping[int, Mapping[int, Rational]], nrows: int, ncols: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    """Reduced echelon rows (leftmost pivots, first nonzero row first) and pivot columns."""
    data = {i: dict(row) for i, row in data.items() if row}
    if not data or ncols == 0:
        return [], ()
    reduced, pivots = DomainMatrix(data, (nrows, ncols), QQ).rref()
    rep = reduced.to_sparse().rep
    pivots = tuple(pivots)
    return [dict(rep.get(k, {})) for k in range(len(pivots))], pivots


def _block_rank(m: SparseMatrix) -> int:
    if m.rows == 0 or m.cols == 0 or m.is_zero():
        return 0
    return int(m.to_domain_matrix().rank())


def rank(m: SparseMatrix) -> int:
    """Dimension of the column space, summed over independent support blocks."""
    if m.is_zero():
        return 0
    positions = [(i, j) for i, j, _ in m.entries()]
    return sum(_block_rank(m.submatrix(rows, cols)) for rows, cols in bipartite_blocks(positions))


def column_rank(m: SparseMatrix) -> int:
    """Rank computed by reducing the transpose; agrees with rank()."""
    return len(_rref_rows(m.transpose().row_dicts(), m.cols, m.rows)[1])


@dataclass(frozen=True)
class Subspace:
    """
    Subspace of QQ^ambient stored by its reduced echelon basis.

    Two equal subspaces have identical stored bases, so equality is syntactic.
    """
    ambient: int
    basis: Tuple[Tuple[Tuple[int, Rational], ...], ...]
    pivots: Tuple[int, ...]

    @classmethod
    def span(cls, ambient: int, vectors: Iterable[Mapping[int, object]]) -> "Subspace":
        data = {}
        for k, vec in enumerate(vectors):
            row = {}
            for j, v in vec.items():
                if not 0 <= j < ambient:
                    raise IndexError(f"coordinate {j} outside ambient dimension {ambient}")
                q = to_rational(v)
                if q:
                    row[j] = q
            if row:
                data[k] = row
        nrows = max(data) + 1 if data else 0
        rows, pivots = _rref_rows(data, nrows, ambient)
        basis = tuple(tuple(sorted(row.items())) for row in rows)
        return cls(ambient, basis, pivots)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, (), ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, tuple(((i, QQ.one),) for i in range(ambient)), tuple(range(ambient)))

    @classmethod
    def coordinate(cls, ambient: int, indices: Iterable[int]) -> "Subspace":
        return cls.span(ambient, [{i: 1} for i in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> List[Vector]:
        return [dict(row) for row in self.basis]

    def as_matrix(self) -> SparseMatrix:
        """Basis vectors as the rows of a dim x ambient matrix."""
        return SparseMatrix(self.dim, self.ambient, {(k, j): v for k, row in enumerate(self.basis) for j, v in row})

    def reduce(self, vector: Mapping[int, Rational]) -> Vector:
        """Canonical representative modulo this subspace (zero at every pivot)."""
        out = {j: to_rational(v) for j, v in vector.items() if v}
        for pivot, row in zip(self.pivots, self.basis):
            c = out.get(pivot)
            if c:
                for j, v in row:
                    w = out.get(j, QQ.zero) - c * v
                    if w:
                        out[j] = w
                    else:
                        out.pop(j, None)
        return out

    def contains(self, vector: Mapping[int, Rational]) -> bool:
        return not self.reduce(vector)

    def coordinates(self, vector: Mapping[int, Rational]) -> List[Rational]:
        """Coefficients of vector in the stored basis."""
        if not self.contains(vector):
            raise NotContained("vector is not in the subspace")
        return [to_rational(vector.get(p, 0)) for p in self.pivots]

    def is_subspace_of(self, other: "Subspace") -> bool:
        if self.ambient != other.ambient:
            return False
        return all(other.contains(dict(row)) for row in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ")
        return Subspace.span(self.ambient, self.vectors() + other.vectors())

    def annihilator(self) -> "Subspace":
        """Vectors orthogonal to this subspace under the standard pairing."""
        return kernel(self.as_matrix())

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ")
        return (self.annihilator() + other.annihilator()).annihilator()

    def complement_coordinates(self) -> List[int]:
        """Coordinates that are not pivots; their unit vectors span a complement."""
        pivots = set(self.pivots)
        return [i for i in range(self.ambient) if i not in pivots]

    def graded_dims(self, parity: Sequence[int]) -> Tuple[int, int]:
        """(even, odd) dimensions, valid when the subspace is spanned by homogeneous vectors."""
        odd = sum(1 for p in self.pivots if parity[p])
        return self.dim - odd, odd


def kernel(m: SparseMatrix) -> Subspace:
    """Null space of m as a subspace of the domain."""
    rows, pivots = _rref_rows(m.row_dicts(), m.rows, m.cols)
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec: Vector = {free: QQ.one}
        for pivot, row in zip(pivots, rows):
            v = row.get(free)
            if v:
                vec[pivot] = -v
        vectors.append(vec)
    return Subspace.span(m.cols, vectors)


def image(m: SparseMatrix) -> Subspace:
    """Column space of m."""
    return Subspace.span(m.rows, m.transpose().row_dicts().values())


def quotient_dims(outer: Subspace, inner: Subspace) -> int:
    if not inner.is_subspace_of(outer):
        raise NotContained("inner subspace is not contained in outer subspace")
    return outer.dim - inner.dim
