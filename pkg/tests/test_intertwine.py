from __future__ import annotations

from itertools import product

import pytest

from galilean.intertwine import find_isomorphism, hom_space, intertwines, vector_to_matrix
from galilean.linalg import SparseMatrix, rank
from galilean.liealg import ABELIAN, HEISENBERG
from galilean.tensorsocle import socle, tensor
from galilean.uniserial import ModuleSpec, build, dual
from galilean.theorems import standard_faithful_specs

from specs import all_specs


def mod(kind, params, m, mode=HEISENBERG):
    return build(ModuleSpec(kind, params, m, mode))


def test_fu_plus_endomorphisms():
    fu = mod("FU+", (0,), 1)
    r = hom_space(fu, fu)
    assert r.dimension == 2 and r.ok
    assert sorted(rank(t) for t in r.basis) == [1, 4]


@pytest.mark.parametrize("a,b", list(product(range(5), repeat=2)))
def test_schur(a, b):
    assert hom_space(mod("V", (a,), 1), mod("V", (b,), 1)).dimension == (a == b)


def test_no_maps_between_distinct_faithful():
    assert hom_space(mod("FU", (1, 4, 1), 5), mod("FU", (0, 5, 0), 5)).dimension == 0


@pytest.mark.parametrize("a0,ell", [(a, ell) for a in range(1, 4) for ell in (1, 2)])
def test_faithful_to_type_z(a0, ell):
    # FU-(a0) has layers (a0, a0-1, a0); Z(a0-1, l) starts at a0-1 = a_1
    r = hom_space(mod("FU-", (a0,), 1), mod("Z", (a0 - 1, ell), 1))
    assert r.dimension == 1 and r.ok


def test_structure_mismatch():
    with pytest.raises(ValueError):
        hom_space(mod("V", (1,), 1), mod("V", (1,), 3))


def test_vector_to_matrix_needs_dual():
    g = tensor(mod("V", (1,), 1), mod("V", (1,), 1))
    with pytest.raises(ValueError):
        vector_to_matrix(g, {0: 1})


def test_intertwines_detects_non_map():
    v = mod("E", (1, 2), 3)
    t = SparseMatrix.identity(v.dim).with_entry(0, 1, 1)
    assert intertwines(t, v, v)
    assert intertwines(SparseMatrix.identity(v.dim), v, v) == []


def _pairs():
    out = []
    for m, mode in [(1, HEISENBERG), (3, HEISENBERG), (3, ABELIAN)]:
        specs = all_specs(m, mode, max_weight=3, max_length=2)
        for a in specs:
            for b in specs:
                if a.layers()[0] == b.layers()[0] or a.layers()[-1] == b.layers()[-1] or a.dual_spec() == b:
                    out.append((a, b))
    return out[::3]


@pytest.mark.parametrize("left,right", _pairs(), ids=lambda s: f"{s.render()}m{s.m}{s.mode[0]}")
def test_dimension_matches_invariant_count(left, right):
    v, w = build(left), build(right)
    r = hom_space(v, w)
    assert r.ok
    assert r.dimension == socle(tensor(dual(v), w)).total.multiplicity(0)
    for t in r.basis:
        assert not intertwines(t, v, w)


STANDARD = standard_faithful_specs(1, 4) + standard_faithful_specs(3, 4) + standard_faithful_specs(5, 4)


@pytest.mark.parametrize("spec", STANDARD, ids=str)
def test_standard_faithful_endomorphisms(spec):
    v = build(spec)
    r = hom_space(v, v)
    assert r.dimension == 2 and r.ok
    ranks = sorted(rank(t) for t in r.basis)
    assert ranks == [spec.layers()[0] + 1, v.dim]
    assert find_isomorphism(v, v) is not None
