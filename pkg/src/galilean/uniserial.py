"""Uniserial modules of sl(2) x| h_n and sl(2) x| a_m.

Every module is built on an ordered list of sl(2)-irreducible layers
V(a_0) + ... + V(a_l) (socle first).  The nilradical acts by the
Clebsch-Gordan "arrows" V(b) -> V(a) between layers, and in faithful
modules the centre maps the top layer onto the socle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .clebsch import cg_doubled
from .exactnum import ONE, ZERO, Scalar, as_scalar, sqrt_rational
from .linalg import SparseMatrix, Subspace, kernel_basis
from .liealg import (
    HEISENBERG,
    SL2,
    Gen,
    H,
    LieStructure,
    Z,
    nil,
    sl2_irrep_action,
    structure,
)
from .weights import IrrepMultiset, annihilator, characters_to_multiset, group_by_weight, weights_of

__all__ = [
    "SpecError",
    "ModuleSpec",
    "Representation",
    "parse_spec",
    "build",
    "dual",
    "direct_sum",
    "socle_series",
    "verify_uniserial",
    "arrow_matrix",
    "center_scalar",
    "allowed_faithful_triples",
]


class SpecError(ValueError):
    """A module descriptor violates the constraints of the classification."""


KINDS = ("V", "E", "Z", "Zd", "E3", "E4", "FU+", "FU-", "FU")
FAITHFUL_KINDS = ("FU+", "FU-", "FU")


def allowed_faithful_triples(m: int) -> list[tuple[int, int, int]]:
    """Layer triples of faithful uniserials for m = 2n-1 >= 3 (n = 1 is an infinite family)."""
    if m == 3:
        return [(0, 3, 0), (1, 4, 1), (1, 2, 1), (4, 3, 4)]
    if m >= 5:
        return [(0, m, 0), (1, m + 1, 1), (1, m - 1, 1)]
    raise ValueError("for m = 1 the faithful modules are FU+(a) and FU-(a)")


@dataclass(frozen=True)
class ModuleSpec:
    """Symbolic descriptor of a classified uniserial module over a fixed algebra."""

    kind: str
    params: tuple
    m: int
    mode: str = HEISENBERG

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"unknown module kind {self.kind!r}")
        self.validate()

    @property
    def n(self) -> int | None:
        return (self.m + 1) // 2 if self.mode == HEISENBERG else None

    @property
    def faithful(self) -> bool:
        return self.kind in FAITHFUL_KINDS

    @property
    def standard_faithful(self) -> bool:
        return self.faithful and self.layers() != (4, 3, 4)

    @property
    def type_z(self) -> bool:
        return self.kind in ("V", "Z", "Zd")

    def layers(self) -> tuple[int, ...]:
        k, p, m = self.kind, self.params, self.m
        if k == "V":
            return (p[0],)
        if k == "E":
            return (p[0], p[1])
        if k == "Z":
            return tuple(p[0] + i * m for i in range(p[1] + 1))
        if k == "Zd":
            return tuple(p[0] + i * m for i in range(p[1], -1, -1))
        if k == "E3":
            return (0, m, p[0])
        if k == "E4":
            return (0, m, m, 0)
        if k == "FU+":
            return (p[0], p[0] + 1, p[0])
        if k == "FU-":
            return (p[0], p[0] - 1, p[0])
        return tuple(p)

    @property
    def length(self) -> int:
        return len(self.layers())

    def validate(self) -> None:
        k, p, m = self.kind, self.params, self.m
        where = f"{self.render()} with m={m}"
        if m < 1:
            raise SpecError(f"{where}: m >= 1 violated")
        if self.mode == HEISENBERG and m % 2 == 0:
            raise SpecError(f"{where}: heisenberg mode needs m = 2n-1 odd")
        if k not in ("E4",) and any((not isinstance(x, int)) or x < 0 for x in p):
            raise SpecError(f"{where}: parameters must be non-negative integers")
        arity = {"V": 1, "E": 2, "Z": 2, "Zd": 2, "E3": 1, "E4": 1, "FU+": 1, "FU-": 1, "FU": 3}[k]
        if len(p) != arity:
            raise SpecError(f"{where}: expected {arity} parameter(s)")
        if k == "E":
            a, b = p
            if (a + b - m) % 2:
                raise SpecError(f"{where}: a+b = m (mod 2) violated")
            if abs(a - b) > m:
                raise SpecError(f"{where}: |a-b| <= m violated")
            if m > a + b:
                raise SpecError(f"{where}: m <= a+b violated")
        elif k == "E3":
            c = p[0]
            if (c - 2 * m) % 4:
                raise SpecError(f"{where}: c = 2m (mod 4) violated")
            if not 0 <= c < 2 * m:
                raise SpecError(f"{where}: 0 <= c < 2m violated")
        elif k == "E4":
            if m % 4:
                raise SpecError(f"{where}: E4 exists only for m = 0 (mod 4)")
            if not isinstance(p[0], Fraction):
                raise SpecError(f"{where}: E4 parameter must be a rational")
            if p[0] == 0:
                raise SpecError(f"{where}: E4(t) is a family over non-zero scalars t; t = 0 is excluded")
        elif k in FAITHFUL_KINDS:
            if self.mode != HEISENBERG:
                raise SpecError(f"{where}: faithful modules need the heisenberg algebra (use --n)")
            if k in ("FU+", "FU-"):
                if m != 1:
                    raise SpecError(f"{where}: FU+/FU- exist only for n = 1; use FU(a0,a1,a2)")
                if k == "FU-" and p[0] < 1:
                    raise SpecError(f"{where}: FU-(a) needs a >= 1")
            else:
                if m == 1:
                    raise SpecError(f"{where}: for n = 1 write FU+(a) or FU-(a)")
                if tuple(p) not in allowed_faithful_triples(m):
                    allowed = ", ".join(str(t) for t in allowed_faithful_triples(m))
                    raise SpecError(f"{where}: triple not in the classification for n={self.n} ({allowed})")

    def render(self) -> str:
        k, p = self.kind, self.params
        if k == "E4":
            return f"E4({p[0]})"
        return f"{k}({','.join(str(x) for x in p)})"

    def __str__(self) -> str:
        return self.render()

    def dual_spec(self) -> ModuleSpec | None:
        """Spec of the dual module when it is again in the list (None for E3, E4)."""
        k, p = self.kind, self.params
        if k == "V" or k in FAITHFUL_KINDS:
            return self
        if k == "E":
            return ModuleSpec("E", (p[1], p[0]), self.m, self.mode)
        if k == "Z":
            return ModuleSpec("Zd", p, self.m, self.mode)
        if k == "Zd":
            return ModuleSpec("Z", p, self.m, self.mode)
        return None


_SPEC_RE = re.compile(r"^\s*(V|E3|E4|E|Zd|Z|FU\+|FU-|FU)\s*\(\s*([^)]*)\)\s*$")


def parse_spec(text: str, m: int, mode: str = HEISENBERG) -> ModuleSpec:
    """Parse ``"V(a)"``, ``"E(a,b)"``, ``"Z(a,l)"``, ``"Zd(a,l)"``, ``"E3(c)"``,
    ``"E4(p/q)"``, ``"FU+(a)"``, ``"FU-(a)"`` or ``"FU(a0,a1,a2)"``."""
    mt = _SPEC_RE.match(text)
    if not mt:
        raise SpecError(f"cannot parse module expression {text!r}")
    kind, body = mt.group(1), mt.group(2)
    parts = [s.strip() for s in body.split(",")] if body.strip() else []
    try:
        if kind == "E4":
            if len(parts) != 1:
                raise SpecError(f"{text!r}: E4 takes one rational parameter")
            params: tuple = (Fraction(parts[0]),)
        else:
            params = tuple(int(s) for s in parts)
    except ValueError as exc:
        raise SpecError(f"{text!r}: bad parameter ({exc})") from None
    if kind == "FU" and m == 1 and len(params) == 3:
        a0, a1, a2 = params
        if a0 == a2 and a1 == a0 + 1:
            kind, params = "FU+", (a0,)
        elif a0 == a2 and a1 == a0 - 1:
            kind, params = "FU-", (a0,)
    return ModuleSpec(kind, params, m, mode)


@dataclass(frozen=True, eq=False)
class Representation:
    """A finite-dimensional module: one action matrix per generator.

    ``layers`` lists the highest weights of the socle decomposition when the
    basis is layered (v_0^{a_i}, ..., v_{a_i}^{a_i} concatenated, socle first);
    it is ``None`` for modules without such a basis (e.g. tensor products).
    ``pairing`` is set on duals: entry p is ``(k, sign)`` meaning the p-th
    basis vector equals ``sign`` times the dual functional of basis vector k
    of the original module.
    """

    structure: LieStructure
    dim: int
    actions: Mapping[Gen, SparseMatrix]
    layers: tuple[int, ...] | None = None
    label: str = ""
    pairing: tuple[tuple[int, int], ...] | None = field(default=None, repr=False)

    def action(self, g: Gen) -> SparseMatrix:
        return self.actions[g]

    @property
    def offsets(self) -> tuple[int, ...]:
        if self.layers is None:
            raise ValueError("representation has no layered basis")
        out, acc = [], 0
        for a in self.layers:
            out.append(acc)
            acc += a + 1
        return tuple(out)

    def layer_slice(self, i: int) -> range:
        off = self.offsets[i]
        return range(off, off + self.layers[i] + 1)

    def layer_of(self) -> list[int]:
        out = []
        for i, a in enumerate(self.layers or ()):
            out.extend([i] * (a + 1))
        return out

    def weights(self) -> list[int]:
        return weights_of(self.actions[H])

    def nil_matrices(self) -> list[SparseMatrix]:
        return [self.actions[g] for g in self.structure.nil_generators]

    def __repr__(self) -> str:
        return f"Representation({self.label or '?'}, dim={self.dim}, layers={self.layers})"


# construction


def arrow_matrix(a: int, b: int, m: int, s: int) -> dict[tuple[int, int], Scalar]:
    """Block of Nil(s) mapping V(b) -> V(a), keyed by (i, j) meaning v_j^b -> v_i^a.

    e_s v_j^b = (-1)^j CG(a/2, a/2-i; b/2, -b/2+j | m/2, m/2-s) v_i^a with
    i = j + s + (a-b-m)/2 (at most one summand).
    """
    out = {}
    shift = a - b - m
    if shift % 2:
        return out
    for j in range(b + 1):
        i = j + s + shift // 2
        if 0 <= i <= a:
            v = cg_doubled(a, a - 2 * i, b, -b + 2 * j, m, m - 2 * s)
            if v:
                out[(i, j)] = -v if j % 2 else v
    return out


def center_scalar(spec: ModuleSpec) -> Scalar:
    """Scalar by which Z maps the top layer onto the socle (v_j^{a_2} -> lambda v_j^{a_0})."""
    if not spec.faithful:
        return ZERO
    m = spec.m
    a0, a1, _ = spec.layers()
    if (a0, a1) == (4, 3) and m == 3:
        return as_scalar(Fraction(-4, 5))
    mag = sqrt_rational(m + 1) * Fraction(2, a0 + 1)
    if a1 == a0 + m:
        return -mag
    if a1 == a0 - m or (m >= 3 and (a0, a1) == (1, m - 1)):
        return mag
    raise SpecError(f"no centre action known for {spec}")


def _arrows(spec: ModuleSpec) -> list[tuple[int, int, Scalar]]:
    """(source layer, target layer, scale) for every nilradical arrow."""
    k, length = spec.kind, spec.length
    if k == "E4":
        return [(1, 0, ONE), (2, 1, ONE), (3, 2, ONE), (3, 1, as_scalar(spec.params[0]))]
    return [(i, i - 1, ONE) for i in range(1, length)]


def _assemble(ls: LieStructure, layers: Sequence[int], nil_blocks, center_blocks, label: str) -> Representation:
    offs, acc = [], 0
    for a in layers:
        offs.append(acc)
        acc += a + 1
    dim = acc
    actions: dict[Gen, SparseMatrix] = {}
    for g in SL2:
        entries = {}
        for a, off in zip(layers, offs):
            for (r, c), v in sl2_irrep_action(a, g).entries.items():
                entries[(off + r, off + c)] = v
        actions[g] = SparseMatrix(dim, dim, entries)
    for s in range(ls.m + 1):
        entries = {}
        for src, tgt, scale in nil_blocks:
            a, b = layers[tgt], layers[src]
            for (i, j), v in arrow_matrix(a, b, ls.m, s).items():
                key = (offs[tgt] + i, offs[src] + j)
                entries[key] = entries.get(key, ZERO) + scale * v
        actions[nil(s)] = SparseMatrix(dim, dim, entries)
    if ls.has_center:
        entries = {}
        for src, tgt, lam in center_blocks:
            for j in range(layers[src] + 1):
                entries[(offs[tgt] + j, offs[src] + j)] = lam
        actions[Z] = SparseMatrix(dim, dim, entries)
    return Representation(ls, dim, actions, tuple(layers), label)


def build(spec: ModuleSpec) -> Representation:
    """Explicit representative of the isomorphism class described by ``spec``."""
    ls = structure(spec.m, spec.mode)
    center = []
    if spec.faithful:
        center = [(2, 0, center_scalar(spec))]
    return _assemble(ls, spec.layers(), _arrows(spec), center, spec.render())


def direct_sum(*reps: Representation) -> Representation:
    """Block-diagonal direct sum; layers are not tracked."""
    ls = reps[0].structure
    if any(r.structure is not ls for r in reps):
        raise ValueError("direct sum needs a common Lie structure")
    dim = sum(r.dim for r in reps)
    actions = {}
    for g in ls.generators:
        entries = {}
        off = 0
        for r in reps:
            for (i, j), v in r.actions[g].entries.items():
                entries[(off + i, off + j)] = v
            off += r.dim
        actions[g] = SparseMatrix(dim, dim, entries)
    return Representation(ls, dim, actions, None, " + ".join(r.label for r in reps))


def dual(rep: Representation) -> Representation:
    """Contragredient module, re-expressed in a layered v_k^a basis when possible.

    x acts on functionals by (x.phi)(v) = -phi(x.v).  For layered modules the
    basis vector v_k^a of a dual layer is (-1)^(a-k) times the functional
    dual to v_{a-k}^a, and the layer list is reversed.
    """
    if rep.layers is None:
        perm = [(k, 1) for k in range(rep.dim)]
        new_layers = None
    else:
        perm = []
        offs = rep.offsets
        for i in range(len(rep.layers) - 1, -1, -1):
            a, off = rep.layers[i], offs[i]
            for k in range(a + 1):
                perm.append((off + a - k, -1 if (a - k) % 2 else 1))
        new_layers = tuple(reversed(rep.layers))
    inv = {old: (new, sign) for new, (old, sign) in enumerate(perm)}
    actions = {}
    for g, mat in rep.actions.items():
        entries = {}
        # new[p, q] = -s_p s_q rho[pi(q), pi(p)]
        for (r, c), v in mat.entries.items():
            col, s_col = inv[r]
            row, s_row = inv[c]
            entries[(row, col)] = -v if s_row * s_col > 0 else v
        actions[g] = SparseMatrix(rep.dim, rep.dim, entries)
    label = f"({rep.label})*" if rep.label else ""
    return Representation(rep.structure, rep.dim, actions, new_layers, label, tuple(perm))


# socle series


def _filtration_step(
    rep: Representation, groups: dict[int, list[int]], current: dict[int, Subspace]
) -> dict[int, Subspace]:
    """Next term {v : x v in current for every nilradical x}, per weight space."""
    weights = rep.weights()
    mats = rep.nil_matrices()
    ann = {w: annihilator(sub) for w, sub in current.items()}
    pos = {w: {c: j for j, c in enumerate(cols)} for w, cols in groups.items()}
    out = {}
    for w, cols in groups.items():
        nrow = 0
        entries: dict[tuple[int, int], Scalar] = {}
        for mat in mats:
            # image of each column, expressed in the target weight space coordinates
            images: dict[int, dict[int, dict[int, Scalar]]] = {}
            for j, c in enumerate(cols):
                for r, v in mat.column(c).items():
                    wt = weights[r]
                    images.setdefault(wt, {}).setdefault(j, {})[pos[wt][r]] = v
            for wt, cols_img in images.items():
                q = ann[wt]
                for qi in range(q.n_rows):
                    for j, img in cols_img.items():
                        acc = ZERO
                        for li, v in img.items():
                            y = q[qi, li]
                            if y:
                                acc = acc + y * v
                        if acc:
                            entries[(nrow, j)] = acc
                    nrow += 1
        out[w] = kernel_basis(SparseMatrix(nrow, len(cols), entries))
    return out


def socle_series(rep: Representation) -> list[IrrepMultiset]:
    """sl(2)-decomposition of each socle factor soc^k / soc^(k-1)."""
    weights = rep.weights()
    groups = group_by_weight(weights)
    current = {w: Subspace(len(cols)) for w, cols in groups.items()}
    steps = []
    total = 0
    while total < rep.dim:
        nxt = _filtration_step(rep, groups, current)
        char = {w: nxt[w].dim - current[w].dim for w in groups}
        gained = sum(char.values())
        if gained == 0:
            raise RuntimeError("socle filtration stalled; nilradical does not act nilpotently")
        steps.append(characters_to_multiset(char))
        total += gained
        current = nxt
    return steps


def verify_uniserial(rep: Representation) -> bool:
    """True iff every socle factor is a single irreducible sl(2)-module."""
    return all(step.count() == 1 for step in socle_series(rep))
