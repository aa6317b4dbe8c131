"""Tensor products, graded invariants S_t and socles.

For layered modules V = V(a_0)+...+V(a_l) and W = V(b_0)+...+V(b_l'), the
degree-t part of V (x) W is the sum of the blocks V(a_i) (x) V(b_j) with
i + j = t, and S_t is the subspace of it killed by the whole nilradical.
All kernels are computed one weight space at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from .exactnum import Scalar
from .liealg import E, H
from .linalg import SparseMatrix, Subspace, rank
from .uniserial import Representation
from .weights import IrrepMultiset, group_by_weight, joint_kernel, weights_of

__all__ = [
    "GradedModule",
    "SocleReport",
    "tensor",
    "kron_action",
    "graded_invariants",
    "graded_invariant_space",
    "highest_weight_vectors",
    "socle",
    "sl2_decompose",
    "joint_nil_kernel_dim",
]


@dataclass(frozen=True, eq=False)
class GradedModule:
    left: Representation
    right: Representation
    total: Representation
    grading: tuple[tuple[int, int], ...]

    @property
    def max_degree(self) -> int:
        return len(self.left.layers) + len(self.right.layers) - 2

    def index(self, p: int, q: int) -> int:
        return p * self.right.dim + q

    def split(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.right.dim)

    def degree_indices(self, t: int) -> list[int]:
        return [k for k, (i, j) in enumerate(self.grading) if i + j == t]

    def block_indices(self, i: int, j: int) -> list[int]:
        return [k for k, g in enumerate(self.grading) if g == (i, j)]


def kron_action(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Leibniz action a (x) 1 + 1 (x) b on the tensor product."""
    na, nb = a.n_rows, b.n_rows
    n = na * nb
    cols: dict[int, dict[int, Scalar]] = {}
    for p in range(na):
        acol = a.column(p)
        for q in range(nb):
            col: dict[int, Scalar] = {}
            for r, v in acol.items():
                col[r * nb + q] = v
            for r, v in b.column(q).items():
                k = p * nb + r
                w = col.get(k)
                if w is None:
                    col[k] = v
                else:
                    w = w + v
                    if w:
                        col[k] = w
                    else:
                        del col[k]
            if col:
                cols[p * nb + q] = col
    return SparseMatrix._from_cols(n, n, cols)


def tensor(a: Representation, b: Representation) -> GradedModule:
    if a.structure is not b.structure:
        if (a.structure.m, a.structure.mode) != (b.structure.m, b.structure.mode):
            raise ValueError(
                f"cannot tensor modules over different algebras: {a.structure.describe()} vs {b.structure.describe()}"
            )
    if a.layers is None or b.layers is None:
        raise ValueError("tensor needs layered factors")
    actions = {g: kron_action(a.actions[g], b.actions[g]) for g in a.structure.generators}
    la, lb = a.layer_of(), b.layer_of()
    grading = tuple((la[p], lb[q]) for p in range(a.dim) for q in range(b.dim))
    label = f"{a.label} (x) {b.label}"
    total = Representation(a.structure, a.dim * b.dim, actions, None, label)
    return GradedModule(a, b, total, grading)


def _check_degree(g: GradedModule, t: int) -> None:
    if not 0 <= t <= g.max_degree:
        raise ValueError(f"degree t={t} outside 0..{g.max_degree}")


def _weights(g: GradedModule) -> list[int]:
    return weights_of(g.total.actions[H])


def highest_weight_vectors(g: GradedModule, t: int, mu: int) -> list[dict[int, Scalar]]:
    """Basis of the highest-weight vectors of weight ``mu`` in S_t."""
    _check_degree(g, t)
    w = _weights(g)
    cols = [k for k in g.degree_indices(t) if w[k] == mu]
    mats = g.total.nil_matrices() + [g.total.actions[E]]
    return joint_kernel(mats, cols)


def graded_invariants(g: GradedModule, t: int) -> IrrepMultiset:
    """S_t as a multiset of sl(2) highest weights.

    Multiplicity of V(mu) is the dimension of the weight-mu vectors of the
    degree-t block killed by the nilradical and by E.
    """
    _check_degree(g, t)
    w = _weights(g)
    groups = group_by_weight(w, g.degree_indices(t))
    mats = g.total.nil_matrices() + [g.total.actions[E]]
    mult = {}
    for mu in sorted(groups):
        if mu < 0:
            continue
        k = len(joint_kernel(mats, groups[mu]))
        if k:
            mult[mu] = k
    return IrrepMultiset(mult)


def graded_invariant_space(g: GradedModule, t: int) -> dict[int, list[dict[int, Scalar]]]:
    """All of S_t (not only highest-weight vectors), as a basis per weight."""
    _check_degree(g, t)
    w = _weights(g)
    groups = group_by_weight(w, g.degree_indices(t))
    mats = g.total.nil_matrices()
    return {wt: joint_kernel(mats, cols) for wt, cols in sorted(groups.items())}


def joint_nil_kernel_dim(rep: Representation) -> int:
    """dim of the vectors killed by the nilradical, computed over the whole space."""
    groups = group_by_weight(rep.weights())
    mats = rep.nil_matrices()
    return sum(len(joint_kernel(mats, cols)) for cols in groups.values())


@dataclass
class SocleReport:
    m: int
    mode: str
    left: str
    right: str
    per_degree: list[IrrepMultiset]
    status: str = "computed"
    notes: list[str] = field(default_factory=list)

    def __getitem__(self, t: int) -> IrrepMultiset:
        return self.per_degree[t] if t < len(self.per_degree) else IrrepMultiset()

    @property
    def total(self) -> IrrepMultiset:
        out = IrrepMultiset()
        for s in self.per_degree:
            out = out + s
        return out

    @property
    def dim(self) -> int:
        return sum(s.total_dim for s in self.per_degree)

    def to_json(self) -> dict:
        out = {
            "m": self.m,
            "mode": self.mode,
            "left": self.left,
            "right": self.right,
            "socle": [{"t": t, "components": s.to_json()} for t, s in enumerate(self.per_degree)],
        }
        if self.status:
            out["status"] = self.status
        return out

    def to_text(self) -> str:
        lines = [f"soc({self.left} (x) {self.right})  m={self.m} mode={self.mode}  [{self.status}]"]
        for t, s in enumerate(self.per_degree):
            lines.append(f"  S_{t:<3d} {s}")
        return "\n".join(lines)


def socle(g: GradedModule) -> SocleReport:
    """S_0, ..., S_{l+l'} of a tensor product."""
    ls = g.total.structure
    per = [graded_invariants(g, t) for t in range(g.max_degree + 1)]
    return SocleReport(ls.m, ls.mode, g.left.label, g.right.label, per)


def sl2_decompose(rep: Representation, space: Subspace) -> IrrepMultiset:
    """Highest weights of an H-stable subspace: V(mu) counted by dim(ker E on its weight-mu part)."""
    if space.ambient_dim != rep.dim:
        raise ValueError("subspace does not live in this representation")
    w = rep.weights()
    by_weight: dict[int, list[dict[int, Scalar]]] = {}
    for b in space.basis:
        parts: dict[int, dict[int, Scalar]] = {}
        for i, x in enumerate(b):
            if x:
                parts.setdefault(w[i], {})[i] = x
        if len(parts) > 1:
            raise ValueError("subspace is not spanned by weight vectors (not H-stable)")
        for wt, v in parts.items():
            by_weight.setdefault(wt, []).append(v)
    e = rep.actions[E]
    mult = {}
    for mu, vecs in by_weight.items():
        if mu < 0:
            continue
        # kernel of E on span(vecs): solve sum c_k E v_k = 0
        entries = {}
        for k, v in enumerate(vecs):
            for r, x in e.apply(v).items():
                entries[(r, k)] = x
        dim_ker = len(vecs) - rank(SparseMatrix(rep.dim, len(vecs), entries))
        if dim_ker:
            mult[mu] = dim_ker
    return IrrepMultiset(mult)
