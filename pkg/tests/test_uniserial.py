from __future__ import annotations

from fractions import Fraction

import pytest

from galilean.exactnum import ONE, ZERO, as_scalar, sqrt_int
from galilean.intertwine import find_isomorphism, hom_space
from galilean.liealg import ABELIAN, HEISENBERG, Z, check_module_axioms, nil
from galilean.tensorsocle import tensor
from galilean.uniserial import (
    ModuleSpec,
    SpecError,
    build,
    center_scalar,
    direct_sum,
    dual,
    parse_spec,
    socle_series,
    verify_uniserial,
)
from galilean.weights import IrrepMultiset

from specs import all_specs, sweep_ambients

SWEEP = [s for m, mode in sweep_ambients(7) for s in all_specs(m, mode)]


def ident(s: ModuleSpec) -> str:
    return f"{s.render()}-m{s.m}-{s.mode[0]}"


def test_e01_nil_action():
    rep = build(ModuleSpec("E", (0, 1), 1, HEISENBERG))
    # basis: v_0^0 | v_0^1, v_1^1
    e0, e1 = rep.actions[nil(0)], rep.actions[nil(1)]
    assert e1[0, 1] == ONE
    assert e0[0, 2] == -ONE
    assert e0.nnz() == 1 and e1.nnz() == 1
    assert rep.actions[Z].is_zero()


def test_fu_plus_zero_center():
    rep = build(ModuleSpec("FU+", (0,), 1))
    z = rep.actions[Z]
    # layers (0, 1, 0): v_0^{a_2} is index 3, v_0^{a_0} is index 0
    assert z[0, 3] == -2 * sqrt_int(2)
    assert z.nnz() == 1


def test_fu434_center_scalar():
    spec = ModuleSpec("FU", (4, 3, 4), 3)
    assert center_scalar(spec) == as_scalar(Fraction(-4, 5))
    z = build(spec).actions[Z]
    assert z.nnz() == 5
    assert all(v == as_scalar(Fraction(-4, 5)) for v in z.entries.values())


def test_e01_m3_rejected():
    with pytest.raises(SpecError, match=r"m <= a\+b violated"):
        ModuleSpec("E", (0, 1), 3)


@pytest.mark.parametrize(
    "kind,params,m,mode,msg",
    [
        ("E", (0, 2), 3, HEISENBERG, "mod 2"),
        ("E", (0, 5), 3, HEISENBERG, r"\|a-b\| <= m"),
        ("E3", (1,), 3, HEISENBERG, "mod 4"),
        ("E4", (Fraction(1),), 3, HEISENBERG, "m = 0 \\(mod 4\\)"),
        ("E4", (Fraction(0),), 4, ABELIAN, "t = 0"),
        ("FU-", (0,), 1, HEISENBERG, "a >= 1"),
        ("FU", (2, 3, 2), 3, HEISENBERG, "classification"),
        ("FU+", (0,), 3, HEISENBERG, "n = 1"),
        ("FU+", (0,), 1, ABELIAN, "heisenberg"),
        ("V", (-1,), 1, HEISENBERG, "non-negative"),
    ],
)
def test_spec_errors(kind, params, m, mode, msg):
    with pytest.raises(SpecError, match=msg):
        ModuleSpec(kind, params, m, mode)


@pytest.mark.parametrize("spec", SWEEP, ids=ident)
def test_render_parse_roundtrip(spec):
    assert parse_spec(spec.render(), spec.m, spec.mode) == spec


def test_parse_errors():
    with pytest.raises(SpecError):
        parse_spec("Q(1)", 1)
    with pytest.raises(SpecError):
        parse_spec("E(1,x)", 1)


def test_parse_fu_triple_at_n1():
    assert parse_spec("FU(2,3,2)", 1) == ModuleSpec("FU+", (2,), 1)
    assert parse_spec("FU(2,1,2)", 1) == ModuleSpec("FU-", (2,), 1)


@pytest.mark.parametrize("spec", SWEEP, ids=ident)
def test_axioms_uniserial_layers(spec):
    rep = build(spec)
    assert check_module_axioms(rep).ok
    series = socle_series(rep)
    assert [s.weights() for s in series] == [[a] for a in spec.layers()]
    assert verify_uniserial(rep)


@pytest.mark.parametrize("spec", [s for s in SWEEP if s.mode == HEISENBERG], ids=ident)
def test_center_faithfulness(spec):
    assert build(spec).actions[Z].is_zero() != spec.faithful


def test_nil_lowers_layers():
    rep = build(ModuleSpec("Z", (1, 3), 3))
    layer = rep.layer_of()
    for g in rep.structure.nil_generators:
        for (r, c) in rep.actions[g].entries:
            assert layer[r] < layer[c]


def test_socle_series_examples():
    assert socle_series(build(ModuleSpec("Z", (1, 2), 3))) == [IrrepMultiset.of(1), IrrepMultiset.of(4), IrrepMultiset.of(7)]
    assert socle_series(build(ModuleSpec("V", (5,), 3))) == [IrrepMultiset.of(5)]
    fu = build(ModuleSpec("FU+", (0,), 1))
    assert socle_series(tensor(fu, fu).total)[0].count() > 1


def test_verify_uniserial_negative():
    v0 = build(ModuleSpec("V", (0,), 1))
    assert not verify_uniserial(direct_sum(v0, v0))
    g = tensor(build(ModuleSpec("FU+", (1,), 1)), build(ModuleSpec("FU-", (1,), 1)))
    assert not verify_uniserial(g.total)


@pytest.mark.parametrize(
    "spec",
    [ModuleSpec("E", (1, 2), 3), ModuleSpec("V", (3,), 1), ModuleSpec("FU+", (0,), 1), ModuleSpec("Z", (0, 2), 1)],
    ids=ident,
)
def test_dual_examples(spec):
    d = dual(build(spec))
    target = build(spec.dual_spec())
    assert d.layers == target.layers
    assert hom_space(d, target).dimension >= 1
    assert find_isomorphism(d, target) is not None


def test_dual_reverses_layers_and_is_module():
    rep = build(ModuleSpec("E3", (2,), 3))
    d = dual(rep)
    assert d.layers == tuple(reversed(rep.layers))
    assert check_module_axioms(d).ok
    assert verify_uniserial(d)


@pytest.mark.parametrize("spec", SWEEP, ids=ident)
def test_double_dual(spec):
    rep = build(spec)
    assert find_isomorphism(dual(dual(rep)), rep) is not None


def test_center_scalar_zero_for_nonfaithful():
    assert center_scalar(ModuleSpec("E", (1, 2), 3)) == ZERO
