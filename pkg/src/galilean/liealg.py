"""Structure constants of sl(2) x| h_n and sl(2) x| a_m, and sl(2) irreps.

The nilradical is spanned by ``Nil(0), ..., Nil(m)`` (a copy of the basis
v_0^m..v_m^m of V(m)) plus the central element ``Z`` in Heisenberg mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from .exactnum import ZERO, Scalar, as_scalar, sqrt_rational
from .linalg import SparseMatrix

HEISENBERG = "heisenberg"
ABELIAN = "abelian"
MODES = (HEISENBERG, ABELIAN)


class Gen(NamedTuple):
    kind: str  # "E", "H", "F", "N" or "Z"
    index: int = 0

    def __str__(self) -> str:
        return f"Nil({self.index})" if self.kind == "N" else self.kind

    @property
    def is_nil(self) -> bool:
        return self.kind in ("N", "Z")


E = Gen("E")
H = Gen("H")
F = Gen("F")
Z = Gen("Z")
SL2 = (E, H, F)


def nil(s: int) -> Gen:
    return Gen("N", s)


@lru_cache(maxsize=None)
def sl2_irrep_action(a: int, g: str | Gen) -> SparseMatrix:
    """Matrix of ``g`` in {E, H, F} on V(a) in the basis v_0^a, ..., v_a^a.

    E v_k = sqrt(k(a-k+1)) v_{k-1},  F v_k = sqrt((k+1)(a-k)) v_{k+1},
    H v_k = (a-2k) v_k.
    """
    if a < 0:
        raise ValueError(f"highest weight must be non-negative, got {a}")
    kind = g.kind if isinstance(g, Gen) else g
    n = a + 1
    entries: dict[tuple[int, int], Scalar] = {}
    if kind == "E":
        for k in range(1, n):
            entries[(k - 1, k)] = sqrt_rational(k * (a - k + 1))
    elif kind == "F":
        for k in range(n - 1):
            entries[(k + 1, k)] = sqrt_rational((k + 1) * (a - k))
    elif kind == "H":
        for k in range(n):
            entries[(k, k)] = as_scalar(a - 2 * k)
    else:
        raise ValueError(f"not an sl(2) generator: {g}")
    return SparseMatrix(n, n, entries)


LinComb = dict  # Gen -> Scalar


@dataclass(frozen=True)
class LieStructure:
    """Bracket table of sl(2) x| h_n (``heisenberg``, m = 2n-1) or sl(2) x| a_m."""

    m: int
    mode: str
    generators: tuple[Gen, ...]
    table: dict = field(repr=False, compare=False)

    @property
    def n(self) -> int | None:
        return (self.m + 1) // 2 if self.mode == HEISENBERG else None

    @property
    def nil_generators(self) -> tuple[Gen, ...]:
        return tuple(g for g in self.generators if g.is_nil)

    @property
    def has_center(self) -> bool:
        return self.mode == HEISENBERG

    def bracket(self, x: Gen, y: Gen) -> dict[Gen, Scalar]:
        return dict(self.table.get((x, y), {}))

    def describe(self) -> str:
        if self.mode == HEISENBERG:
            return f"sl(2) x| h_{self.n} (m={self.m})"
        return f"sl(2) x| a_{self.m} (nilradical V({self.m}))"


@lru_cache(maxsize=None)
def structure(m: int, mode: str = HEISENBERG) -> LieStructure:
    """Full bracket table; ``[x, y]`` is stored for every ordered pair with a nonzero value."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if mode == HEISENBERG and m % 2 == 0:
        raise ValueError(f"heisenberg mode needs odd m = 2n-1, got m={m}")
    gens = [E, H, F] + [nil(s) for s in range(m + 1)]
    if mode == HEISENBERG:
        gens.append(Z)
    table: dict[tuple[Gen, Gen], dict[Gen, Scalar]] = {}

    def put(x: Gen, y: Gen, comb: dict[Gen, Scalar]) -> None:
        comb = {g: c for g, c in comb.items() if c}
        if comb:
            table[(x, y)] = comb
            table[(y, x)] = {g: -c for g, c in comb.items()}

    put(E, F, {H: as_scalar(1)})
    put(H, E, {E: as_scalar(2)})
    put(H, F, {F: as_scalar(-2)})
    for x in SL2:
        mat = sl2_irrep_action(m, x)
        for s in range(m + 1):
            put(x, nil(s), {nil(r): v for r, v in mat.column(s).items()})
    if mode == HEISENBERG:
        c = sqrt_rational(Fraction(1, m + 1))
        for i in range((m + 1) // 2):
            put(nil(i), nil(m - i), {Z: c if i % 2 == 0 else -c})
    return LieStructure(m, mode, tuple(gens), table)


def _combine(comb: dict[Gen, Scalar], coeff: Scalar, out: dict[Gen, Scalar]) -> None:
    for g, c in comb.items():
        v = out.get(g, ZERO) + coeff * c
        if v:
            out[g] = v
        else:
            out.pop(g, None)


def check_jacobi(ls: LieStructure) -> list[str]:
    """Antisymmetry and Jacobi identity over all generator triples; returns violations."""
    bad = []
    for x in ls.generators:
        if ls.bracket(x, x):
            bad.append(f"[{x},{x}] != 0")
        for y in ls.generators:
            a, b = ls.bracket(x, y), ls.bracket(y, x)
            if {g: -c for g, c in b.items()} != a:
                bad.append(f"[{x},{y}] not antisymmetric")

    def br(comb: dict[Gen, Scalar], z: Gen) -> dict[Gen, Scalar]:
        out: dict[Gen, Scalar] = {}
        for g, c in comb.items():
            _combine(ls.bracket(g, z), c, out)
        return out

    for x, y, z in combinations(ls.generators, 3):
        total: dict[Gen, Scalar] = {}
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            _combine(br(ls.bracket(p, q), r), as_scalar(1), total)
        if total:
            bad.append(f"Jacobi fails on ({x},{y},{z})")
    return bad


@dataclass
class AxiomReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def check_module_axioms(rep) -> AxiomReport:
    """Check rho([x,y]) == rho(x) rho(y) - rho(y) rho(x) for every generator pair.

    ``rep`` needs ``structure`` (a :class:`LieStructure`), ``dim`` and an
    ``actions`` mapping from :class:`Gen` to :class:`SparseMatrix`.
    """
    ls: LieStructure = rep.structure
    violations = []
    mats = {}
    for g in ls.generators:
        mat = rep.actions.get(g)
        if mat is None:
            violations.append(f"missing action for {g}")
            mat = SparseMatrix.zeros(rep.dim, rep.dim)
        elif mat.shape != (rep.dim, rep.dim):
            violations.append(f"action of {g} has shape {mat.shape}, expected {(rep.dim, rep.dim)}")
        mats[g] = mat
    for x, y in combinations(ls.generators, 2):
        comm = mats[x] @ mats[y] - mats[y] @ mats[x]
        expected = SparseMatrix.zeros(rep.dim, rep.dim)
        for g, c in ls.bracket(x, y).items():
            expected = expected + mats[g].scale(c)
        diff = comm - expected
        if not diff.is_zero():
            violations.append(f"[{x},{y}]: {diff.nnz()} mismatched entries")
    return AxiomReport(violations)
