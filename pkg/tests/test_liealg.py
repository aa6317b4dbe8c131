from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from galilean.exactnum import ONE, as_scalar, sqrt_int, sqrt_rational
from galilean.liealg import (
    ABELIAN,
    E,
    F,
    H,
    HEISENBERG,
    Z,
    check_jacobi,
    check_module_axioms,
    nil,
    sl2_irrep_action,
    structure,
)
from galilean.linalg import SparseMatrix
from galilean.uniserial import ModuleSpec, build


def comm(x: SparseMatrix, y: SparseMatrix) -> SparseMatrix:
    return x @ y - y @ x


def test_irrep_a1():
    assert sl2_irrep_action(1, E) == SparseMatrix.from_dense([[0, 1], [0, 0]])
    assert sl2_irrep_action(1, F) == SparseMatrix.from_dense([[0, 0], [1, 0]])
    assert sl2_irrep_action(1, H) == SparseMatrix.from_dense([[1, 0], [0, -1]])


def test_irrep_a2_raising():
    r2 = sqrt_int(2)
    assert sl2_irrep_action(2, E) == SparseMatrix.from_dense([[0, r2, 0], [0, 0, r2], [0, 0, 0]])


@pytest.mark.parametrize("g", [E, H, F])
def test_irrep_trivial(g):
    mat = sl2_irrep_action(0, g)
    assert mat.shape == (1, 1) and mat.is_zero()


def test_irrep_negative_weight():
    with pytest.raises(ValueError):
        sl2_irrep_action(-1, E)


@pytest.mark.parametrize("a", range(21))
def test_sl2_relations(a):
    e, h, f = (sl2_irrep_action(a, g) for g in (E, H, F))
    assert comm(e, f) == h
    assert comm(h, e) == e.scale(2)
    assert comm(h, f) == f.scale(-2)


def test_heisenberg_bracket_m1():
    ls = structure(1)
    assert ls.bracket(nil(0), nil(1)) == {Z: sqrt_rational(Fraction(1, 2))}
    assert ls.bracket(nil(1), nil(0)) == {Z: -sqrt_rational(Fraction(1, 2))}


def test_heisenberg_bracket_signs_m5():
    ls = structure(5)
    c = sqrt_rational(Fraction(1, 6))
    for i in range(6):
        for j in range(6):
            got = ls.bracket(nil(i), nil(j))
            if i + j == 5:
                assert got == {Z: c * (-1) ** i}
            else:
                assert got == {}


def test_h_on_nil():
    assert structure(3).bracket(H, nil(1)) == {nil(1): ONE}
    assert structure(3, ABELIAN).bracket(H, nil(3)) == {nil(3): as_scalar(-3)}


@pytest.mark.parametrize("m", [1, 3, 5])
def test_center_is_central(m):
    ls = structure(m)
    for x in ls.generators:
        assert ls.bracket(Z, x) == {}
        assert ls.bracket(x, Z) == {}


def test_abelian_has_no_center_and_commuting_nil():
    ls = structure(4, ABELIAN)
    assert Z not in ls.generators and not ls.has_center
    for x in ls.nil_generators:
        for y in ls.nil_generators:
            assert ls.bracket(x, y) == {}


def test_even_heisenberg_rejected():
    with pytest.raises(ValueError):
        structure(2, HEISENBERG)


def test_bad_m_rejected():
    with pytest.raises(ValueError):
        structure(0, ABELIAN)


@pytest.mark.parametrize("m,mode", [(m, ABELIAN) for m in range(1, 10)] + [(m, HEISENBERG) for m in (1, 3, 5, 7, 9)])
def test_jacobi_and_antisymmetry(m, mode):
    assert check_jacobi(structure(m, mode)) == []


@pytest.mark.parametrize("m,mode", [(3, ABELIAN), (4, ABELIAN), (5, HEISENBERG)])
def test_nil_transforms_as_vm(m, mode):
    ls = structure(m, mode)
    for g in (E, H, F):
        mat = sl2_irrep_action(m, g)
        for s in range(m + 1):
            expected = {nil(r): v for r, v in mat.column(s).items()}
            assert ls.bracket(g, nil(s)) == expected


def test_axioms_small_modules():
    assert check_module_axioms(build(ModuleSpec("E", (1, 2), 3, ABELIAN))).ok
    assert check_module_axioms(build(ModuleSpec("FU+", (0,), 1, HEISENBERG))).ok


@given(st.data())
def test_axioms_detect_perturbation(data):
    rep = build(ModuleSpec("E", (1, 2), 3, ABELIAN))
    g = data.draw(st.sampled_from(rep.structure.generators))
    r = data.draw(st.integers(0, rep.dim - 1))
    c = data.draw(st.integers(0, rep.dim - 1))
    actions = dict(rep.actions)
    actions[g] = actions[g].with_entry(r, c, actions[g][r, c] + 1)
    report = check_module_axioms(replace(rep, actions=actions))
    assert not report.ok
    assert report.violations


def test_axioms_report_missing_action():
    rep = build(ModuleSpec("V", (2,), 1, HEISENBERG))
    actions = {g: m for g, m in rep.actions.items() if g != Z}
    assert not check_module_axioms(replace(rep, actions=actions)).ok
