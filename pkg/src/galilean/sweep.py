"""Sweep over pairs of length-two modules E(a,b), E(c,d) comparing S_1 and
S_2 with the predicted case list.

Pairs are put in canonical order (a < c, or a = c and b <= d).  Every point
also records the computation with the factors exchanged; agreement there is
reported as an observation and never treated as a discrepancy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .tensorsocle import GradedModule, graded_invariants, highest_weight_vectors, tensor
from .uniserial import ModuleSpec, build
from .weights import IrrepMultiset

__all__ = [
    "SweepPoint",
    "length_two_params",
    "canonical_pairs",
    "predicted_cases",
    "theorem_backing",
    "sweep_point",
    "witness",
]


def length_two_params(m: int, slack: int = 4, max_weight: int | None = None) -> list[tuple[int, int]]:
    """All (a, b) with E(a, b) valid and a + b <= m + slack."""
    out = []
    for total in range(m, m + slack + 1, 2):
        for a in range(total + 1):
            b = total - a
            if abs(a - b) > m:
                continue
            if max_weight is not None and max(a, b) > max_weight:
                continue
            out.append((a, b))
    return out


def canonical_pairs(params: list[tuple[int, int]]) -> list[tuple[int, int, int, int]]:
    out = []
    for a, b in params:
        for c, d in params:
            if a < c or (a == c and b <= d):
                out.append((a, b, c, d))
    return sorted(out)


def predicted_cases(a: int, b: int, c: int, d: int, m: int) -> list[tuple[str, int]]:
    """(case name, predicted highest weight of S_1) for every case that applies."""
    cases = []
    if (a, b) == (0, m):
        cases.append(("1", d))
    if a > 0:
        if a + b == m and c + d == m and d - a == b - c >= 0:
            cases.append(("2.1", d - a))
        if b - a == m and d - c == m:
            cases.append(("2.2", d + a))
        if b - a == m and c - d == m and d - a == c - b >= 0:
            cases.append(("2.3", d - a))
    if (c, d) == (b, a):
        cases.append(("3", 0))
    return cases


def theorem_backing(a: int, b: int, c: int, d: int, m: int) -> str | None:
    """Name of a proved statement that covers this point (in either factor order), or None."""
    z1, z2 = abs(a - b) == m, abs(c - d) == m
    if z1 and z2:
        return "typez-typez"
    for (p, q), (r, s) in (((a, b), (c, d)), ((c, d), (a, b))):
        if p + q == m and p and q:
            if r + s == m and 0 < p <= r < m:
                return "length-two"
            if abs(r - s) == m:
                return "length-two"
    return None


def witness(g: GradedModule, t: int, mu: int) -> list[dict]:
    """Highest-weight kernel vectors of weight mu in S_t, written out in the
    tensor basis: each entry is ((layer, k) of the left factor, (layer, k) of
    the right factor, coefficient)."""
    lo, ro = g.left.offsets, g.right.offsets
    out = []
    for vec in highest_weight_vectors(g, t, mu):
        terms = []
        for idx in sorted(vec):
            p, q = g.split(idx)
            i, j = g.grading[idx]
            terms.append({"left": [i, p - lo[i]], "right": [j, q - ro[j]], "coeff": str(vec[idx])})
        out.append({"t": t, "mu": mu, "terms": terms})
    return out


@dataclass
class SweepPoint:
    m: int
    a: int
    b: int
    c: int
    d: int
    s1: IrrepMultiset
    s2: IrrepMultiset
    cases: list[tuple[str, int]]
    backing: str | None
    swapped_s1: IrrepMultiset
    swapped_s2: IrrepMultiset
    discrepancies: list[str] = field(default_factory=list)
    witnesses: list[dict] = field(default_factory=list)

    @property
    def predicted(self) -> IrrepMultiset:
        if not self.cases:
            return IrrepMultiset()
        return IrrepMultiset.of(self.cases[0][1])

    @property
    def symmetric(self) -> bool:
        return self.s1 == self.swapped_s1 and self.s2 == self.swapped_s2

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def label(self) -> str:
        return f"m={self.m} E({self.a},{self.b}) (x) E({self.c},{self.d})"

    def case_name(self) -> str:
        return "+".join(name for name, _ in self.cases) or "none"

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "left": f"E({self.a},{self.b})",
            "right": f"E({self.c},{self.d})",
            "case": self.case_name(),
            "predicted_S1": self.predicted.to_json(),
            "S1": self.s1.to_json(),
            "S2": self.s2.to_json(),
            "support": f"theorem:{self.backing}" if self.backing else "empirical",
            "swap_symmetric": self.symmetric,
            "status": "pass" if self.ok else "fail",
            "discrepancies": self.discrepancies,
            "witnesses": self.witnesses,
        }


def sweep_point(args: tuple[int, str, int, int, int, int]) -> SweepPoint:
    """Compute one point; ``args`` is (m, mode, a, b, c, d) so it pickles cheaply."""
    m, mode, a, b, c, d = args
    v = build(ModuleSpec("E", (a, b), m, mode))
    w = build(ModuleSpec("E", (c, d), m, mode))
    g = tensor(v, w)
    s1, s2 = graded_invariants(g, 1), graded_invariants(g, 2)
    gs = tensor(w, v)
    sw1, sw2 = graded_invariants(gs, 1), graded_invariants(gs, 2)
    cases = predicted_cases(a, b, c, d, m)
    pt = SweepPoint(m, a, b, c, d, s1, s2, cases, theorem_backing(a, b, c, d, m), sw1, sw2)
    predictions = {mu for _, mu in cases}
    if len(predictions) > 1:
        pt.discrepancies.append(f"overlapping cases {pt.case_name()} predict different weights {sorted(predictions)}")
    if s2:
        pt.discrepancies.append(f"S_2 = {s2}, expected 0")
        for mu, _ in s2.items():
            pt.witnesses.extend(witness(g, 2, mu))
    if s1 != pt.predicted:
        pt.discrepancies.append(f"S_1 = {s1}, predicted {pt.predicted} (case {pt.case_name()})")
        for mu, _ in s1.items():
            if pt.predicted.multiplicity(mu) < s1.multiplicity(mu):
                pt.witnesses.extend(witness(g, 1, mu))
    return pt

