from __future__ import annotations

import json
from itertools import product

import pytest

from galilean.exactnum import ZERO
from galilean.liealg import ABELIAN, E, HEISENBERG, Z, check_module_axioms
from galilean.linalg import Subspace, span
from galilean.tensorsocle import (
    graded_invariant_space,
    graded_invariants,
    highest_weight_vectors,
    joint_nil_kernel_dim,
    kron_action,
    sl2_decompose,
    socle,
    tensor,
)
from galilean.uniserial import ModuleSpec, build
from galilean.weights import IrrepMultiset, joint_kernel, unit

from specs import all_specs

V = IrrepMultiset.of


def mod(text_kind, params, m, mode=HEISENBERG):
    return build(ModuleSpec(text_kind, params, m, mode))


def test_tensor_dimension():
    g = tensor(mod("E", (1, 2), 3), mod("E", (0, 3), 3))
    assert g.left.dim == 5 and g.right.dim == 5
    assert g.total.dim == 25


def test_tensor_axioms():
    for left, right in [
        (mod("E", (1, 2), 3), mod("Z", (0, 1), 3)),
        (mod("FU+", (0,), 1), mod("Zd", (1, 2), 1)),
        (mod("FU", (4, 3, 4), 3), mod("FU", (1, 2, 1), 3)),
    ]:
        assert check_module_axioms(tensor(left, right).total).ok


def test_grading_pairs():
    fu = mod("FU+", (0,), 1)
    g = tensor(fu, fu)
    assert set(g.grading) == set(product(range(3), range(3)))
    assert g.max_degree == 4


def test_leibniz():
    a, b = mod("E", (0, 1), 1), mod("V", (2,), 1)
    g = tensor(a, b)
    for x in a.structure.generators:
        assert g.total.actions[x] == kron_action(a.actions[x], b.actions[x])
        for p, q in product(range(a.dim), range(b.dim)):
            got = g.total.actions[x].apply(unit(g.total.dim, g.index(p, q)))
            want: dict = {}
            for r, v in a.actions[x].column(p).items():
                want[g.index(r, q)] = want.get(g.index(r, q), ZERO) + v
            for r, v in b.actions[x].column(q).items():
                want[g.index(p, r)] = want.get(g.index(p, r), ZERO) + v
            assert got == {k: v for k, v in want.items() if v}


def test_structure_mismatch():
    with pytest.raises(ValueError):
        tensor(mod("V", (1,), 1), mod("V", (1,), 3))
    with pytest.raises(ValueError):
        tensor(mod("V", (1,), 3, ABELIAN), mod("V", (1,), 3, HEISENBERG))


def test_unlayered_factor_rejected():
    g = tensor(mod("V", (1,), 1), mod("V", (1,), 1))
    with pytest.raises(ValueError):
        tensor(g.total, mod("V", (1,), 1))


@pytest.mark.parametrize(
    "left,right,m,t,expected",
    [
        (("Z", (0, 1)), ("Z", (0, 1)), 1, 1, V(1)),
        (("E", (1, 2)), ("E", (0, 3)), 3, 1, V(2)),
        (("FU+", (0,)), ("FU+", (0,)), 1, 2, V(0)),
        (("E", (1, 2)), ("E", (2, 1)), 3, 1, V(0)),
    ],
)
def test_graded_invariants_examples(left, right, m, t, expected):
    g = tensor(mod(*left, m), mod(*right, m))
    assert graded_invariants(g, t) == expected


def test_degree_out_of_range():
    g = tensor(mod("Z", (0, 1), 1), mod("Z", (0, 1), 1))
    with pytest.raises(ValueError):
        graded_invariants(g, 3)
    with pytest.raises(ValueError):
        highest_weight_vectors(g, -1, 0)


def test_socle_examples():
    r = socle(tensor(mod("Z", (1, 1), 1), mod("Z", (1, 1), 1)))
    assert r.per_degree[:2] == [V(2, 0), V(3)]
    fu = mod("FU+", (0,), 1)
    assert socle(tensor(fu, fu)).per_degree == [V(0), V(1), V(0), V(), V()]
    for m in (1, 3):
        assert socle(tensor(mod("V", (2,), m), mod("V", (3,), m)))[0] == V(5, 3, 1)


def test_socle_json_shape():
    r = socle(tensor(mod("Z", (1, 1), 1), mod("Z", (1, 1), 1)))
    data = json.loads(json.dumps(r.to_json()))
    assert data["m"] == 1 and data["mode"] == "heisenberg"
    assert data["socle"][0] == {"t": 0, "components": [{"mu": 2, "mult": 1}, {"mu": 0, "mult": 1}]}


def _pairs():
    out = []
    for m, mode in [(1, HEISENBERG), (3, HEISENBERG), (3, ABELIAN), (4, ABELIAN)]:
        specs = all_specs(m, mode, max_weight=2, max_length=2)
        out.extend((a, b) for a in specs for b in specs[:: max(1, len(specs) // 8)])
    return out


PAIRS = _pairs()


@pytest.mark.parametrize("left,right", PAIRS, ids=lambda s: f"{s.render()}m{s.m}{s.mode[0]}")
def test_socle_is_joint_kernel(left, right):
    g = tensor(build(left), build(right))
    r = socle(g)
    assert r.dim == joint_nil_kernel_dim(g.total)
    assert r[0] == _cg(left.layers()[0], right.layers()[0])


def _cg(a, b):
    return IrrepMultiset.of(*range(abs(a - b), a + b + 1, 2))


@pytest.mark.parametrize("left,right", PAIRS[::5], ids=lambda s: f"{s.render()}m{s.m}{s.mode[0]}")
def test_weight_multiplicity_conservation(left, right):
    g = tensor(build(left), build(right))
    nil = g.total.nil_matrices()
    for t in range(g.max_degree + 1):
        s = graded_invariants(g, t)
        for w, basis in graded_invariant_space(g, t).items():
            assert len(basis) == sum(k for mu, k in s.items() if mu >= abs(w) and (mu - w) % 2 == 0)
            for vec in basis:
                assert all(not mat.apply(vec) for mat in nil)


FAITHFUL_N1 = [ModuleSpec(k, (a,), 1) for k in ("FU+", "FU-") for a in range(4) if (k, a) != ("FU-", 0)]


@pytest.mark.parametrize("left,right", list(product(FAITHFUL_N1, FAITHFUL_N1)), ids=str)
def test_highest_weight_support(left, right):
    g = tensor(build(left), build(right))
    for t in range(g.max_degree + 1):
        blocks = {(i, t - i) for i in range(3) if 0 <= t - i < 3}
        for mu in graded_invariants(g, t).weights():
            for vec in highest_weight_vectors(g, t, mu):
                assert {g.grading[k] for k in vec} == blocks


@pytest.mark.parametrize(
    "left,right",
    [
        (ModuleSpec("FU+", (0,), 1), ModuleSpec("Z", (1, 1), 1)),
        (ModuleSpec("FU-", (2,), 1), ModuleSpec("FU+", (1,), 1)),
        (ModuleSpec("FU", (1, 4, 1), 3), ModuleSpec("E", (1, 2), 3)),
    ],
    ids=str,
)
def test_center_hits_two_layers_down_only_from_top(left, right):
    g = tensor(build(left), build(right))
    z = g.total.actions[Z]
    w = g.total.weights()
    for i0, j0 in sorted(set(g.grading)):
        cols = g.block_indices(i0, j0)
        for mu in sorted({w[k] for k in cols}):
            for vec in joint_kernel([g.total.actions[E]], [k for k in cols if w[k] == mu]):
                image = z.apply(vec)
                down = {k: x for k, x in image.items() if g.grading[k] == (i0 - 2, j0)}
                assert bool(down) == (i0 == 2)


def test_sl2_decompose_examples():
    v1 = mod("V", (1,), 1)
    g = tensor(v1, v1).total
    full = span([unit(4, i) for i in range(4)], 4)
    assert sl2_decompose(g, full) == V(2, 0)
    assert sl2_decompose(g, Subspace(4)) == V()
    assert sl2_decompose(g, span([unit(4, 0)], 4)) == V(2)


def test_sl2_decompose_errors():
    v1 = mod("V", (1,), 1)
    g = tensor(v1, v1).total
    with pytest.raises(ValueError):
        sl2_decompose(g, span([[1, 0, 0, 1]], 4))
    with pytest.raises(ValueError):
        sl2_decompose(g, Subspace(3))
