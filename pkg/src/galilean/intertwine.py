"""Intertwining operators Hom_g(V, W).

A g-map V -> W is the same thing as a g-invariant vector of V* (x) W, and
g-invariants are the weight-0 highest-weight vectors of the nilradical
invariants.  Each such vector is turned back into a dim(W) x dim(V)
matrix and the identity T rho_V(x) = rho_W(x) T is re-checked for every
generator before it is reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactnum import ZERO, Scalar
from .linalg import SparseMatrix, rank, span
from .uniserial import Representation, dual
from .tensorsocle import GradedModule, highest_weight_vectors, tensor

__all__ = ["HomReport", "hom_space", "vector_to_matrix", "intertwines", "find_isomorphism"]


@dataclass
class HomReport:
    source: str
    target: str
    dimension: int
    basis: list[SparseMatrix]
    degrees: list[int]
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, matrices: bool = False) -> dict:
        out: dict = {"dim": self.dimension}
        if matrices:
            out["basis"] = [[[str(x) for x in row] for row in t.to_dense()] for t in self.basis]
            out["degrees"] = list(self.degrees)
        return out

    def to_text(self, matrices: bool = False) -> str:
        lines = [f"dim Hom({self.source}, {self.target}) = {self.dimension}"]
        if self.dimension:
            lines.append("  degrees: " + ", ".join(f"S_{t}" for t in self.degrees))
        if matrices:
            for k, t in enumerate(self.basis):
                lines.append(f"  T_{k}  (rank {rank(t)})")
                for row in t.to_dense():
                    lines.append("    [" + ", ".join(str(x) for x in row) + "]")
        for f in self.failures:
            lines.append(f"  FAILED: {f}")
        return "\n".join(lines)


def vector_to_matrix(g: GradedModule, vec: dict[int, Scalar]) -> SparseMatrix:
    """Matrix of the map V -> W encoded by ``vec`` in dual(V) (x) W.

    The dual basis vector p is ``sign * (v_k)^*`` with ``(k, sign) = pairing[p]``.
    """
    vd, w = g.left, g.right
    if vd.pairing is None:
        raise ValueError("left factor must be a dual module")
    entries: dict[tuple[int, int], Scalar] = {}
    for idx, c in vec.items():
        p, q = g.split(idx)
        k, sign = vd.pairing[p]
        key = (q, k)
        entries[key] = entries.get(key, ZERO) + (c if sign > 0 else -c)
    return SparseMatrix(w.dim, vd.dim, entries)


def intertwines(t: SparseMatrix, v: Representation, w: Representation) -> list[str]:
    """Generators x with T rho_V(x) != rho_W(x) T."""
    bad = []
    for x in v.structure.generators:
        if not (t @ v.actions[x] - w.actions[x] @ t).is_zero():
            bad.append(str(x))
    return bad


def hom_space(v: Representation, w: Representation) -> HomReport:
    """Basis of Hom_g(v, w), one degree t at a time."""
    if (v.structure.m, v.structure.mode) != (w.structure.m, w.structure.mode):
        raise ValueError("hom_space needs modules over the same algebra")
    g = tensor(dual(v), w)
    basis, degrees, failures = [], [], []
    for t in range(g.max_degree + 1):
        for vec in highest_weight_vectors(g, t, 0):
            mat = vector_to_matrix(g, vec)
            bad = intertwines(mat, v, w)
            if bad:
                failures.append(f"degree {t} basis element does not commute with {', '.join(bad)}")
            basis.append(mat)
            degrees.append(t)
    if basis:
        flat = span([[x for row in m.to_dense() for x in row] for m in basis], v.dim * w.dim)
        if flat.dim != len(basis):
            failures.append("basis matrices are linearly dependent")
    return HomReport(v.label, w.label, len(basis), basis, degrees, failures)


def find_isomorphism(v: Representation, w: Representation, report: HomReport | None = None) -> SparseMatrix | None:
    """An invertible element of Hom_g(v, w), or None.

    Tries the basis elements and then small integer combinations, which is
    enough for the low-dimensional hom spaces that occur here.
    """
    if v.dim != w.dim:
        return None
    rep = report or hom_space(v, w)
    if not rep.basis:
        return None
    candidates = list(rep.basis)
    n = len(rep.basis)
    for shift in range(1, n + 2):
        acc = SparseMatrix.zeros(w.dim, v.dim)
        for k, t in enumerate(rep.basis):
            acc = acc + t.scale(shift ** k)
        candidates.append(acc)
    for t in candidates:
        if rank(t) == v.dim:
            return t
    return None
