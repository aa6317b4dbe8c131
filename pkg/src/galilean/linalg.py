"""Exact sparse linear algebra over :class:`~galilean.exactnum.Scalar`."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exactnum import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "SparseMatrix",
    "Subspace",
    "kernel_basis",
    "rank",
    "in_span",
    "span",
    "vstack",
]


class SparseMatrix:
    """Immutable sparse matrix stored column-wise as ``{col: {row: value}}``."""

    __slots__ = ("n_rows", "n_cols", "_cols")

    def __init__(self, n_rows: int, n_cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        cols: dict[int, dict[int, Scalar]] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < n_rows and 0 <= c < n_cols):
                raise IndexError(f"entry ({r}, {c}) outside {n_rows}x{n_cols}")
            v = as_scalar(v)
            if v:
                cols.setdefault(c, {})[r] = v
        self._cols = cols

    @classmethod
    def _from_cols(cls, n_rows: int, n_cols: int, cols: dict[int, dict[int, Scalar]]) -> SparseMatrix:
        m = object.__new__(cls)
        m.n_rows, m.n_cols = n_rows, n_cols
        m._cols = {c: col for c, col in cols.items() if col}
        return m

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> SparseMatrix:
        return cls._from_cols(n_rows, n_cols, {})

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        return cls._from_cols(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> SparseMatrix:
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        return cls(n_rows, n_cols, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row)})

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def entries(self) -> dict[tuple[int, int], Scalar]:
        return {(r, c): v for c, col in self._cols.items() for r, v in col.items()}

    def nnz(self) -> int:
        return sum(len(col) for col in self._cols.values())

    def column(self, c: int) -> dict[int, Scalar]:
        return self._cols.get(c, {})

    def __getitem__(self, rc: tuple[int, int]) -> Scalar:
        r, c = rc
        return self._cols.get(c, {}).get(r, ZERO)

    def is_zero(self) -> bool:
        return not self._cols

    def to_dense(self) -> list[list[Scalar]]:
        out = [[ZERO] * self.n_cols for _ in range(self.n_rows)]
        for c, col in self._cols.items():
            for r, v in col.items():
                out[r][c] = v
        return out

    def transpose(self) -> SparseMatrix:
        cols: dict[int, dict[int, Scalar]] = {}
        for c, col in self._cols.items():
            for r, v in col.items():
                cols.setdefault(r, {})[c] = v
        return SparseMatrix._from_cols(self.n_cols, self.n_rows, cols)

    def scale(self, k: Scalar | int) -> SparseMatrix:
        k = as_scalar(k)
        if not k:
            return SparseMatrix.zeros(self.n_rows, self.n_cols)
        return SparseMatrix._from_cols(
            self.n_rows, self.n_cols, {c: {r: v * k for r, v in col.items()} for c, col in self._cols.items()}
        )

    def __neg__(self) -> SparseMatrix:
        return self.scale(-1)

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        cols = {c: dict(col) for c, col in self._cols.items()}
        for c, col in other._cols.items():
            tgt = cols.setdefault(c, {})
            for r, v in col.items():
                w = tgt.get(r)
                if w is None:
                    tgt[r] = v
                else:
                    w = w + v
                    if w:
                        tgt[r] = w
                    else:
                        del tgt[r]
        return SparseMatrix._from_cols(self.n_rows, self.n_cols, cols)

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        return self + (-other)

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self.n_cols != other.n_rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols: dict[int, dict[int, Scalar]] = {}
        for c, ocol in other._cols.items():
            acc: dict[int, Scalar] = {}
            for k, b in ocol.items():
                for r, a in self._cols.get(k, {}).items():
                    w = acc.get(r)
                    acc[r] = a * b if w is None else w + a * b
            acc = {r: v for r, v in acc.items() if v}
            if acc:
                cols[c] = acc
        return SparseMatrix._from_cols(self.n_rows, other.n_cols, cols)

    def apply(self, vec: Sequence[Scalar] | Mapping[int, Scalar]) -> dict[int, Scalar]:
        """Sparse matrix-vector product; the result is a sparse ``{row: value}`` map."""
        items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
        acc: dict[int, Scalar] = {}
        for k, b in items:
            if not b:
                continue
            for r, a in self._cols.get(k, {}).items():
                w = acc.get(r)
                acc[r] = a * b if w is None else w + a * b
        return {r: v for r, v in acc.items() if v}

    def submatrix(self, rows: Sequence[int] | None, cols: Sequence[int]) -> SparseMatrix:
        """Restrict to the given columns (and rows, when given), renumbering both."""
        if rows is None:
            out = {j: dict(self._cols.get(c, {})) for j, c in enumerate(cols)}
            return SparseMatrix._from_cols(self.n_rows, len(cols), out)
        rpos = {r: i for i, r in enumerate(rows)}
        out = {}
        for j, c in enumerate(cols):
            col = {rpos[r]: v for r, v in self._cols.get(c, {}).items() if r in rpos}
            if col:
                out[j] = col
        return SparseMatrix._from_cols(len(rows), len(cols), out)

    def with_entry(self, r: int, c: int, value: Scalar | int) -> SparseMatrix:
        cols = {k: dict(col) for k, col in self._cols.items()}
        value = as_scalar(value)
        col = cols.setdefault(c, {})
        if value:
            col[r] = value
        else:
            col.pop(r, None)
        return SparseMatrix._from_cols(self.n_rows, self.n_cols, cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __hash__(self):
        return hash((self.shape, frozenset((c, frozenset(col.items())) for c, col in self._cols.items())))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz()})"

    def rows(self) -> list[dict[int, Scalar]]:
        out: list[dict[int, Scalar]] = [{} for _ in range(self.n_rows)]
        for c, col in self._cols.items():
            for r, v in col.items():
                out[r][c] = v
        return out


def vstack(mats: Sequence[SparseMatrix]) -> SparseMatrix:
    if not mats:
        raise ValueError("vstack of nothing")
    n_cols = mats[0].n_cols
    cols: dict[int, dict[int, Scalar]] = {}
    off = 0
    for m in mats:
        if m.n_cols != n_cols:
            raise ValueError("vstack column mismatch")
        for c, col in m._cols.items():
            tgt = cols.setdefault(c, {})
            for r, v in col.items():
                tgt[r + off] = v
        off += m.n_rows
    return SparseMatrix._from_cols(off, n_cols, cols)


# elimination


def _pivot_cost(v: Scalar, row: dict) -> tuple[int, int]:
    return (len(v), len(row))


def _eliminate(rows: list[dict[int, Scalar]], col_order: Iterable[int]) -> list[tuple[int, dict[int, Scalar]]]:
    """Gauss-Jordan elimination on sparse rows.

    Returns ``(pivot_col, row)`` pairs of the reduced row echelon form with
    respect to ``col_order``; each returned row has a 1 at its pivot and the
    pivot columns are cleared in every other returned row.
    """
    active = [dict(r) for r in rows if r]
    done: list[tuple[int, dict[int, Scalar]]] = []
    for c in col_order:
        best = None
        best_cost = None
        for idx, row in enumerate(active):
            v = row.get(c)
            if v is not None:
                cost = _pivot_cost(v, row)
                if best is None or cost < best_cost:
                    best, best_cost = idx, cost
        if best is None:
            continue
        prow = active.pop(best)
        inv = prow[c].inverse()
        prow = {k: (v * inv if k != c else ONE) for k, v in prow.items()}
        for target in (active, [r for _, r in done]):
            for row in target:
                f = row.get(c)
                if f is None:
                    continue
                for k, v in prow.items():
                    if k == c:
                        continue
                    w = row.get(k)
                    nv = -(f * v) if w is None else w - f * v
                    if nv:
                        row[k] = nv
                    elif w is not None:
                        del row[k]
                del row[c]
        active = [r for r in active if r]
        done.append((c, prow))
        if not active:
            break
    return done


def _bareiss_rank(rows: list[list[Scalar]]) -> int:
    """Fraction-free (Bareiss) rank; every division is exact by the previous pivot."""
    a = [list(r) for r in rows]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    prev = ONE
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        inv_prev = prev.inverse()
        for i in range(r + 1, n_rows):
            f = a[i][c]
            for j in range(c, n_cols):
                a[i][j] = (p * a[i][j] - f * a[r][j]) * inv_prev
        prev = p
        r += 1
        if r == n_rows:
            break
    return r


def _single_family(m: SparseMatrix) -> bool:
    rads: set[int] = set()
    for col in m._cols.values():
        for v in col.values():
            rads.update(v.radicands)
            if len(rads - {1}) > 1:
                return False
    return True


@dataclass(frozen=True)
class Subspace:
    """Span of vectors in reduced echelon form.

    Pivots are taken from the last coordinate backwards: each basis vector
    has a 1 at its pivot coordinate, every other basis vector is 0 there,
    and all coordinates after the pivot vanish.
    """

    ambient_dim: int
    basis: tuple[tuple[Scalar, ...], ...] = ()
    pivots: tuple[int, ...] = field(default=())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Sequence[Scalar]) -> tuple[Scalar, ...] | None:
        ok, coords = in_span(self, v)
        return coords if ok else None


def span(vectors: Iterable[Sequence[object]], ambient_dim: int) -> Subspace:
    rows = []
    for v in vectors:
        if len(v) != ambient_dim:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        rows.append({i: as_scalar(x) for i, x in enumerate(v) if as_scalar(x)})
    red = _eliminate(rows, range(ambient_dim - 1, -1, -1))
    red.sort(key=lambda pr: pr[0])
    basis = tuple(tuple(row.get(i, ZERO) for i in range(ambient_dim)) for _, row in red)
    return Subspace(ambient_dim, basis, tuple(p for p, _ in red))


def kernel_basis(m: SparseMatrix) -> Subspace:
    """Null space ``{v : M v = 0}`` as a canonical :class:`Subspace`."""
    red = _eliminate(m.rows(), range(m.n_cols))
    pivot_cols = {c for c, _ in red}
    vecs = []
    for f in range(m.n_cols):
        if f in pivot_cols:
            continue
        v = [ZERO] * m.n_cols
        v[f] = ONE
        for c, row in red:
            x = row.get(f)
            if x is not None:
                v[c] = -x
        vecs.append(v)
    return span(vecs, m.n_cols)


def rank(m: SparseMatrix, method: str = "gauss") -> int:
    """Exact rank.  ``method="bareiss"`` uses fraction-free elimination and is
    only accepted when every entry lies in a single field Q(sqrt(r))."""
    if method == "gauss":
        return len(_eliminate(m.rows(), range(m.n_cols)))
    if method == "bareiss":
        if not _single_family(m):
            raise ValueError("bareiss rank requires entries from a single radicand family")
        return _bareiss_rank(m.to_dense()) if m.n_rows and m.n_cols else 0
    raise ValueError(f"unknown elimination method {method!r}")


def in_span(s: Subspace, v: Sequence[object]) -> tuple[bool, tuple[Scalar, ...] | None]:
    """Membership test; on success also returns the coordinates in ``s.basis``."""
    if len(v) != s.ambient_dim:
        raise ValueError(f"vector of length {len(v)} in ambient dimension {s.ambient_dim}")
    v = [as_scalar(x) for x in v]
    coords = tuple(v[p] for p in s.pivots)
    resid = list(v)
    for c, b in zip(coords, s.basis):
        if c:
            for i, x in enumerate(b):
                if x:
                    resid[i] = resid[i] - c * x
    if any(resid):
        return False, None
    return True, coords
