"""Weight-space bookkeeping shared by the module, tensor and hom code."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping, Sequence

from .exactnum import ONE, ZERO, Scalar
from .linalg import SparseMatrix, Subspace, kernel_basis, span

Vector = dict  # sparse {index: Scalar}


class IrrepMultiset:
    """Multiset of sl(2) highest weights, e.g. V(5) + V(3) + V(1)."""

    __slots__ = ("_mult",)

    def __init__(self, mult: Mapping[int, int] | None = None):
        clean = {}
        for mu, k in (mult or {}).items():
            if mu < 0:
                raise ValueError(f"highest weight must be non-negative, got {mu}")
            if k < 0:
                raise ValueError(f"negative multiplicity {k} for V({mu})")
            if k:
                clean[int(mu)] = int(k)
        self._mult = dict(sorted(clean.items(), reverse=True))

    @classmethod
    def of(cls, *weights: int) -> IrrepMultiset:
        acc: dict[int, int] = defaultdict(int)
        for w in weights:
            acc[w] += 1
        return cls(acc)

    def items(self):
        return self._mult.items()

    def multiplicity(self, mu: int) -> int:
        return self._mult.get(mu, 0)

    def weights(self) -> list[int]:
        return [mu for mu, k in self._mult.items() for _ in range(k)]

    @property
    def total_dim(self) -> int:
        return sum(k * (mu + 1) for mu, k in self._mult.items())

    def count(self) -> int:
        return sum(self._mult.values())

    def __len__(self) -> int:
        return self.count()

    def __bool__(self) -> bool:
        return bool(self._mult)

    def __eq__(self, other) -> bool:
        if isinstance(other, IrrepMultiset):
            return self._mult == other._mult
        if isinstance(other, Mapping):
            return self == IrrepMultiset(other)
        if isinstance(other, (list, tuple, set, frozenset)):
            return self == IrrepMultiset.of(*other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._mult.items()))

    def __add__(self, other: IrrepMultiset) -> IrrepMultiset:
        acc = dict(self._mult)
        for mu, k in other.items():
            acc[mu] = acc.get(mu, 0) + k
        return IrrepMultiset(acc)

    def to_json(self) -> list[dict]:
        return [{"mu": mu, "mult": k} for mu, k in self._mult.items()]

    def __str__(self) -> str:
        if not self._mult:
            return "0"
        return " + ".join(f"V({mu})" if k == 1 else f"{k}V({mu})" for mu, k in self._mult.items())

    def __repr__(self) -> str:
        return f"IrrepMultiset({str(self)})"


def weights_of(h: SparseMatrix) -> list[int]:
    """Diagonal of H as ints (every basis in this package is a weight basis)."""
    out = []
    for i in range(h.n_rows):
        v = h[i, i]
        out.append(int(v.to_fraction()) if v else 0)
    if h.nnz() != sum(1 for w in out if w):
        raise ValueError("H is not diagonal in this basis")
    return out


def group_by_weight(weights: Sequence[int], indices: Iterable[int] | None = None) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = defaultdict(list)
    for i in indices if indices is not None else range(len(weights)):
        groups[weights[i]].append(i)
    return dict(groups)


def characters_to_multiset(char: Mapping[int, int]) -> IrrepMultiset:
    """Recover the irreducible decomposition from weight multiplicities."""
    mult = {}
    for mu in sorted({w for w in char if w >= 0}):
        k = char.get(mu, 0) - char.get(mu + 2, 0)
        if k < 0:
            raise ValueError(f"weight multiplicities {dict(char)} are not an sl(2) character")
        if k:
            mult[mu] = k
    return IrrepMultiset(mult)


def joint_kernel(mats: Sequence[SparseMatrix], cols: Sequence[int]) -> list[Vector]:
    """Vectors supported on ``cols`` that every matrix in ``mats`` kills.

    Returned as sparse ambient vectors; the basis is the canonical echelon
    basis of the local kernel.
    """
    if not cols:
        return []
    row_ids: dict[tuple[int, int], int] = {}
    entries: dict[tuple[int, int], Scalar] = {}
    for gi, mat in enumerate(mats):
        for j, c in enumerate(cols):
            for r, v in mat.column(c).items():
                key = (gi, r)
                rid = row_ids.get(key)
                if rid is None:
                    rid = row_ids[key] = len(row_ids)
                entries[(rid, j)] = v
    local = SparseMatrix(len(row_ids), len(cols), entries)
    ker = kernel_basis(local)
    return [{cols[j]: x for j, x in enumerate(b) if x} for b in ker.basis]


def annihilator(sub: Subspace) -> SparseMatrix:
    """Matrix whose kernel is exactly ``sub`` (rows span its annihilator)."""
    n = sub.ambient_dim
    if sub.dim == 0:
        return SparseMatrix.identity(n)
    rows = SparseMatrix.from_dense([list(b) for b in sub.basis])
    ann = kernel_basis(rows)
    return SparseMatrix(len(ann.basis), n, {(i, j): x for i, b in enumerate(ann.basis) for j, x in enumerate(b) if x})


def unit(n: int, i: int) -> list[Scalar]:
    v = [ZERO] * n
    v[i] = ONE
    return v


def dense(vec: Mapping[int, Scalar], n: int) -> list[Scalar]:
    out = [ZERO] * n
    for i, x in vec.items():
        out[i] = x
    return out


def local_span(vectors: Iterable[Mapping[int, Scalar]], cols: Sequence[int]) -> Subspace:
    pos = {c: j for j, c in enumerate(cols)}
    vecs = []
    for v in vectors:
        d = [ZERO] * len(cols)
        for i, x in v.items():
            d[pos[i]] = x
        vecs.append(d)
    return span(vecs, len(cols))
