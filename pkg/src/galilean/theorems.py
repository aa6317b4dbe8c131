"""Expected-value tables and the regression harness behind ``verify-theorems``.

Each table in ``tables/`` lists rules of the form
``{"t": "lo..hi", "when": <predicate>, "expect": <expression>}``; the
expressions are evaluated by :func:`evaluate`, a small whitelisted subset of
Python expressions over the parameters of a point (layer weights, kinds,
lengths, m and n).  Socle rules must agree wherever they overlap; hom rules
add up.
"""

from __future__ import annotations

import ast
import copy
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any, Callable, Iterable

from .liealg import HEISENBERG
from .uniserial import ModuleSpec, Representation, allowed_faithful_triples, build, parse_spec
from .weights import IrrepMultiset

__all__ = [
    "SCOPES",
    "TableError",
    "Point",
    "PointResult",
    "evaluate",
    "load_table",
    "mutate_table",
    "module_env",
    "expected_socle",
    "expected_hom",
    "points_for",
    "check_point",
    "covering_scope",
    "standard_faithful_specs",
    "type_z_specs",
]

SCOPES = ("typez-typez", "length-two", "faithful-typez", "faithful-faithful", "intertwiners")


class TableError(ValueError):
    """An expected-value table is malformed or contradicts itself."""


# expression evaluation

_BINOPS: dict[type, Callable[[Any, Any], Any]] = {
    ast.Add: lambda x, y: _add(x, y),
    ast.Sub: lambda x, y: x - y,
    ast.Mult: lambda x, y: x * y,
    ast.FloorDiv: lambda x, y: x // y,
    ast.Mod: lambda x, y: x % y,
}
_CMPOPS: dict[type, Callable[[Any, Any], bool]] = {
    ast.Eq: lambda x, y: x == y,
    ast.NotEq: lambda x, y: x != y,
    ast.Lt: lambda x, y: x < y,
    ast.LtE: lambda x, y: x <= y,
    ast.Gt: lambda x, y: x > y,
    ast.GtE: lambda x, y: x >= y,
    ast.In: lambda x, y: x in y,
    ast.NotIn: lambda x, y: x not in y,
}


def _add(x, y):
    if isinstance(x, IrrepMultiset) or isinstance(y, IrrepMultiset):
        return _as_multiset(x) + _as_multiset(y)
    return x + y


def _as_multiset(x) -> IrrepMultiset:
    if isinstance(x, IrrepMultiset):
        return x
    if x == 0:
        return IrrepMultiset()
    raise TableError(f"expected a module expression, got {x!r}")


def _irrep(mu: int) -> IrrepMultiset:
    if mu < 0:
        raise TableError(f"V({mu}) has negative highest weight")
    return IrrepMultiset.of(mu)


def _cg(a: int, b: int) -> IrrepMultiset:
    return IrrepMultiset.of(*(a + b - 2 * k for k in range(min(a, b) + 1)))


_FUNCS = {"V": _irrep, "cg": _cg, "min": min, "max": max, "abs": abs}


def evaluate(expr: str, env: dict[str, Any]) -> Any:
    """Evaluate a table expression; only arithmetic, comparisons, boolean
    logic, conditional expressions, tuples and the helpers V, cg, min, max,
    abs are allowed."""
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise TableError(f"bad expression {expr!r}: {exc.msg}") from None
    return _eval(tree.body, env, expr)


def _eval(node: ast.AST, env: dict[str, Any], src: str) -> Any:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, str)):
        return node.value
    if isinstance(node, ast.Name):
        if node.id in env:
            return env[node.id]
        raise TableError(f"unknown name {node.id!r} in {src!r}")
    if isinstance(node, ast.Tuple):
        return tuple(_eval(e, env, src) for e in node.elts)
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left, env, src), _eval(node.right, env, src))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.Not)):
        v = _eval(node.operand, env, src)
        return -v if isinstance(node.op, ast.USub) else not v
    if isinstance(node, ast.BoolOp):
        if isinstance(node.op, ast.And):
            for v in node.values:
                if not _eval(v, env, src):
                    return False
            return True
        for v in node.values:
            if _eval(v, env, src):
                return True
        return False
    if isinstance(node, ast.Compare):
        left = _eval(node.left, env, src)
        for op, comp in zip(node.ops, node.comparators):
            if type(op) not in _CMPOPS:
                break
            right = _eval(comp, env, src)
            if not _CMPOPS[type(op)](left, right):
                return False
            left = right
        else:
            return True
    if isinstance(node, ast.IfExp):
        return _eval(node.body if _eval(node.test, env, src) else node.orelse, env, src)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS and not node.keywords:
        return _FUNCS[node.func.id](*(_eval(a, env, src) for a in node.args))
    raise TableError(f"unsupported construct {type(node).__name__} in {src!r}")


# tables


@lru_cache(maxsize=None)
def _load_raw(scope: str) -> str:
    if scope not in SCOPES:
        raise TableError(f"unknown scope {scope!r}; choose from {', '.join(SCOPES)}")
    return resources.files(__package__).joinpath("tables").joinpath(f"{scope}.json").read_text(encoding="utf-8")


def load_table(scope: str) -> dict:
    table = json.loads(_load_raw(scope))
    if table.get("id") != scope:
        raise TableError(f"table file for {scope!r} declares id {table.get('id')!r}")
    return table


def mutate_table(table: dict) -> dict:
    """Deliberately wrong copy of a table: the first rule's expectation is
    changed (an extra V(0) for socle tables, one extra dimension for hom
    tables).  Used to check that the harness notices a bad table."""
    bad = copy.deepcopy(table)
    rule = bad["rules"][0]
    if bad["kind"] == "socle":
        rule["expect"] = f"({rule['expect']}) + V(0)"
    else:
        rule["expect"] = f"({rule['expect']}) + 1"
    bad["mutated"] = True
    return bad


def module_env(spec: ModuleSpec, side: str) -> dict[str, Any]:
    """Variables describing one factor: kind, layer weights a0, a1, ... (or
    b0, b1, ...), its length l (or lp), and for the right factor the top two
    layers bl = b_l and bl1 = b_(l-1)."""
    letter = "a" if side == "left" else "b"
    layers = spec.layers()
    kind = spec.kind
    if kind == "E" and abs(layers[0] - layers[1]) == spec.m:
        # E(c, c+m) and E(d+m, d) are the length-one Z and Zd modules
        kind = "Z" if layers[1] > layers[0] else "Zd"
    env: dict[str, Any] = {side: kind, f"standard_{side}": spec.standard_faithful}
    for i, w in enumerate(layers):
        env[f"{letter}{i}"] = w
    env["l" if side == "left" else "lp"] = len(layers) - 1
    env[f"{letter}l"] = layers[-1]
    env[f"{letter}l1"] = layers[-2] if len(layers) > 1 else None
    return env


def point_env(left: ModuleSpec, right: ModuleSpec) -> dict[str, Any]:
    env = {"m": left.m, "n": left.n if left.n is not None else 0}
    env.update(module_env(left, "left"))
    env.update(module_env(right, "right"))
    env["same"] = left.layers() == right.layers() and left.kind == right.kind and left.params == right.params
    return env


def _t_range(spec: str, env: dict[str, Any]) -> range:
    lo, sep, hi = spec.partition("..")
    a = evaluate(lo, env)
    b = evaluate(hi, env) if sep else a
    return range(a, b + 1)


def applies(table: dict, env: dict[str, Any]) -> bool:
    return bool(evaluate(table.get("hypothesis", "True"), {**env, "True": True}))


def expected_socle(table: dict, env: dict[str, Any], max_degree: int) -> dict[int, IrrepMultiset]:
    """Claimed S_t for every degree some rule speaks about."""
    out: dict[int, IrrepMultiset] = {}
    for rule in table["rules"]:
        if "when" in rule and not evaluate(rule["when"], env):
            continue
        for t in _t_range(rule.get("t", "0"), env):
            if t > max_degree:
                continue
            value = _as_multiset(evaluate(rule["expect"], {**env, "t": t}))
            if t in out and out[t] != value:
                raise TableError(f"{table['id']}: rules disagree at t={t} ({out[t]} vs {value})")
            out[t] = value
    return out


def expected_hom(table: dict, env: dict[str, Any], direction: str) -> tuple[int, list[str]]:
    """(dimension, labels of contributing rules) for Hom(left, right)
    (``forward``) or Hom(right, left) (``backward``)."""
    dim, labels = 0, []
    for rule in table["rules"]:
        if rule["direction"] != direction:
            continue
        if "when" in rule and not evaluate(rule["when"], env):
            continue
        k = evaluate(rule["expect"], env)
        if k:
            dim += k
            labels.append(rule.get("label", ""))
    return dim, labels


# parameter points


def standard_faithful_specs(m: int, max_weight: int) -> list[ModuleSpec]:
    if m == 1:
        plus = [ModuleSpec("FU+", (a,), 1) for a in range(max_weight + 1)]
        minus = [ModuleSpec("FU-", (a,), 1) for a in range(1, max_weight + 1)]
        return plus + minus
    return [ModuleSpec("FU", t, m) for t in allowed_faithful_triples(m) if t != (4, 3, 4)]


def type_z_specs(m: int, mode: str, max_weight: int, lengths: Iterable[int]) -> list[ModuleSpec]:
    out = []
    for length in lengths:
        for alpha in range(max_weight + 1):
            if length == 0:
                out.append(ModuleSpec("V", (alpha,), m, mode))
            else:
                out.append(ModuleSpec("Z", (alpha, length), m, mode))
                out.append(ModuleSpec("Zd", (alpha, length), m, mode))
    return out


@dataclass(frozen=True)
class Point:
    scope: str
    m: int
    mode: str
    left: str
    right: str
    direction: str = ""

    def specs(self) -> tuple[ModuleSpec, ModuleSpec]:
        return parse_spec(self.left, self.m, self.mode), parse_spec(self.right, self.m, self.mode)

    def describe(self) -> str:
        arrow = {"forward": " -> ", "backward": " <- "}.get(self.direction, " (x) ")
        return f"m={self.m} {self.left}{arrow}{self.right}"


@dataclass
class PointResult:
    point: Point
    passed: bool
    expected: dict = field(default_factory=dict)
    computed: dict = field(default_factory=dict)
    mismatches: list[str] = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        p = self.point
        out = {
            "scope": p.scope,
            "m": p.m,
            "left": p.left,
            "right": p.right,
            "status": "pass" if self.passed else "fail",
            "expected": self.expected,
            "computed": self.computed,
        }
        if p.direction:
            out["direction"] = p.direction
        if self.mismatches:
            out["mismatches"] = self.mismatches
        if self.note:
            out["note"] = self.note
        return out


def _pairs(lefts, rights, scope, m, mode, directions=("",)) -> list[Point]:
    return [Point(scope, m, mode, a.render(), b.render(), d) for a in lefts for b in rights for d in directions]


def points_for(scope: str, m: int, mode: str, max_weight: int = 3, max_length: int = 2) -> list[Point]:
    """Parameter points of a scope at a fixed m.  Scopes that need the
    Heisenberg centre yield nothing in abelian mode; length-two needs m >= 3."""
    if scope == "typez-typez":
        zs = type_z_specs(m, mode, max_weight, range(max_length + 1))
        return _pairs(zs, zs, scope, m, mode)
    if scope == "length-two":
        if m < 3:
            return []
        lefts = [ModuleSpec("E", (a, m - a), m, mode) for a in range(1, m)]
        rights = [ModuleSpec("E", (c, m - c), m, mode) for c in range(1, m)]
        rights += [ModuleSpec("Z", (c, 1), m, mode) for c in range(max_weight + 1)]
        rights += [ModuleSpec("Zd", (d, 1), m, mode) for d in range(max_weight + 1)]
        pts = []
        for a in lefts:
            for b in rights:
                if b.kind == "E" and b.params[0] < a.params[0]:
                    continue
                pts.append(Point(scope, m, mode, a.render(), b.render()))
        return pts
    if mode != HEISENBERG:
        return []
    faithful = standard_faithful_specs(m, max_weight)
    if scope == "faithful-typez":
        zs = type_z_specs(m, mode, max_weight, range(1, max_length + 1))
        return _pairs(faithful, zs, scope, m, mode)
    if scope == "faithful-faithful":
        return _pairs(faithful, faithful, scope, m, mode)
    if scope == "intertwiners":
        zs = type_z_specs(m, mode, max_weight, range(1, max_length + 1))
        return _pairs(faithful, zs, scope, m, mode, ("forward", "backward")) + _pairs(
            faithful, faithful, scope, m, mode, ("forward",)
        )
    raise TableError(f"unknown scope {scope!r}")


@lru_cache(maxsize=512)
def _built(text: str, m: int, mode: str) -> Representation:
    return build(parse_spec(text, m, mode))


def check_point(point: Point, mutate: bool = False) -> PointResult:
    """Compute the socle (or hom space) at ``point`` and compare with its table."""
    from .intertwine import hom_space
    from .tensorsocle import socle, tensor

    table = load_table(point.scope)
    if mutate:
        table = mutate_table(table)
    left, right = point.specs()
    env = point_env(left, right)
    if not applies(table, env):
        raise TableError(f"{point.describe()} is outside the hypotheses of {point.scope}")
    v, w = _built(point.left, point.m, point.mode), _built(point.right, point.m, point.mode)
    if table["kind"] == "hom":
        exp, labels = expected_hom(table, env, point.direction)
        rep = hom_space(v, w) if point.direction == "forward" else hom_space(w, v)
        ok = rep.dimension == exp and rep.ok
        mism = [] if rep.dimension == exp else [f"dim {rep.dimension} != expected {exp}"]
        mism += rep.failures
        return PointResult(point, ok, {"dim": exp, "cases": labels}, {"dim": rep.dimension, "degrees": rep.degrees}, mism)
    rep = socle(tensor(v, w))
    claimed = expected_socle(table, env, len(rep.per_degree) - 1)
    mism = []
    expected_json, computed_json = {}, {}
    for t, exp in sorted(claimed.items()):
        got = rep[t]
        expected_json[str(t)] = str(exp)
        computed_json[str(t)] = str(got)
        if got != exp:
            mism.append(f"S_{t}: computed {got}, expected {exp}")
    return PointResult(point, not mism, expected_json, computed_json, mism)


def covering_scope(left: ModuleSpec, right: ModuleSpec) -> str | None:
    """First scope whose hypotheses cover the pair, or None."""
    env = point_env(left, right)
    for scope in SCOPES:
        table = load_table(scope)
        if table["kind"] != "socle":
            continue
        try:
            if applies(table, env):
                return scope
        except TableError:
            continue
    return None

