"""Bundled example algebras, definition files, and mutation generators.

Every builder returns a freshly constructed ColorAlgebra.  The graded
structures carry auxiliary gradings with a trivial braiding where the
algebra itself is an ordinary one; those gradings are compatible with the
products and cost nothing semantically, while letting the degree-blocked
solvers split their work.

The same algebras ship as TOML definition files next to this module, one
per builder, regenerated verbatim by ``definition_text``.  A definition
file has four tables::

    [group]     moduli = [...]
    [color]     root_order = N (optional), emat = [[...], ...]
    [algebra]   basis = [[name, [degree]], ...], order = [...] (optional),
                plus [algebra.products] with "left,right" = { result = scalar }
    [params]    optional check parameters (d, b, rank, trunc)

Scalars are exact literals ("1", "-2/3", "1*z^3"); ints are accepted on
input.  Parsing reports the offending field on any defect, so the files
double as documentation that cannot drift from the code.
"""

from __future__ import annotations

import json
import random
import sys
from dataclasses import dataclass, field
from importlib import resources

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from ..algebras import (
    ColorAlgebra,
    m7_algebra,
    octonion_algebra,
    sedenion_algebra,
)
from ..colors import AbelianGroup, Bicharacter, Color, check_skew, _sign_of
from ..errors import DefinitionError
from ..linalg import GradedBasis, GradedVector
from ..scalars import CycScalar, format_scalar, parse_scalar


def _trivial_color(moduli, N: int | None = None) -> Color:
    group = AbelianGroup(moduli)
    emat = [[0] * group.rank for _ in range(group.rank)]
    return Color(group, Bicharacter(group, emat, N=N))


def sl2_algebra() -> ColorAlgebra:
    """The three-dimensional simple Lie algebra with [e,f]=h, [h,e]=2e, [h,f]=-2f.

    Graded over Z_4 with e at 1, f at 3, h at 0 and trivial braiding.
    """
    color = _trivial_color((4,))
    basis = GradedBasis(color, [("e", (1,)), ("f", (3,)), ("h", (0,))])
    return ColorAlgebra.from_table(
        basis,
        {
            ("e", "f"): {"h": 1},
            ("f", "e"): {"h": -1},
            ("h", "e"): {"e": 2},
            ("e", "h"): {"e": -2},
            ("h", "f"): {"f": -2},
            ("f", "h"): {"f": 2},
        },
    )


def abelian_algebra(k: int) -> ColorAlgebra:
    """k-dimensional algebra with all products zero, graded over Z_2^k."""
    color = _trivial_color((2,) * k)
    entries = [
        (f"a{t + 1}", tuple(1 if u == t else 0 for u in range(k))) for t in range(k)
    ]
    return ColorAlgebra(GradedBasis(color, entries), {})


def super2_algebra() -> ColorAlgebra:
    """Two-dimensional Lie superalgebra: a even, u odd, [a,u] = u = -[u,a]."""
    group = AbelianGroup((2,))
    color = Color(group, Bicharacter(group, [[1]]))
    basis = GradedBasis(color, [("a", (0,)), ("u", (1,))])
    return ColorAlgebra.from_table(
        basis, {("a", "u"): {"u": 1}, ("u", "a"): {"u": -1}}
    )


def rw22_algebra() -> ColorAlgebra:
    """Three-dimensional algebra over Z_2 x Z_2 with a genuinely non-trivial
    braiding: chi of two distinct non-identity degrees is -1, so the bracket
    is symmetric on them.  [e1,e2] = [e2,e1] = e3 and cyclically.
    """
    group = AbelianGroup((2, 2))
    color = Color(group, Bicharacter(group, [[0, 1], [1, 0]]))
    basis = GradedBasis(color, [("e1", (0, 1)), ("e2", (1, 0)), ("e3", (1, 1))])
    return ColorAlgebra.from_table(
        basis,
        {
            ("e1", "e2"): {"e3": 1},
            ("e2", "e1"): {"e3": 1},
            ("e2", "e3"): {"e1": 1},
            ("e3", "e2"): {"e1": 1},
            ("e3", "e1"): {"e2": 1},
            ("e1", "e3"): {"e2": 1},
        },
    )


MUTATION_SEED = 20260822


def m7_mutations(count: int = 20, seed: int = MUTATION_SEED) -> list[ColorAlgebra]:
    """Randomly perturbed copies of the seven-dimensional Malcev algebra.

    Each draw picks an ordered pair of distinct basis units and adds 1 to the
    coefficient of the unique grading-compatible target of their product.
    Even-numbered draws bump one side only (breaking antisymmetry); odd draws
    apply the opposite bump to the swapped pair as well, preserving
    antisymmetry so any failure must come from the four-variable identity.
    """
    base = m7_algebra()
    b = base.basis
    rng = random.Random(seed)
    out = []
    for t in range(count):
        i, j = rng.sample(range(1, 8), 2)
        k = i ^ j
        ii, jj, kk = b.index(f"e{i}"), b.index(f"e{j}"), b.index(f"e{k}")
        bump = b.unit(kk, base.color.scalar(1))
        sc = dict(base.sc)
        sc[(ii, jj)] = sc.get((ii, jj), b.zero()) + bump
        if t % 2 == 1:
            sc[(jj, ii)] = sc.get((jj, ii), b.zero()) - bump
        out.append(ColorAlgebra(b, {key: v for key, v in sc.items() if v}))
    return out


BUILDERS = {
    "sl2": sl2_algebra,
    "m7": m7_algebra,
    "octonions": octonion_algebra,
    "sedenions": sedenion_algebra,
    "abelian1": lambda: abelian_algebra(1),
    "abelian2": lambda: abelian_algebra(2),
    "abelian3": lambda: abelian_algebra(3),
    "super2": super2_algebra,
    "rw22": rw22_algebra,
}


# Check parameters bundled with a fixture's definition file.  Only fixtures
# whose sensible envelope degree differs from the dimension-derived default
# carry any: the seven-dimensional algebras stay at d=2 (their degree-3
# word quotients would need half-million-column eliminations), sedenions
# at d=1.
FIXTURE_PARAMS: dict[str, dict[str, int]] = {
    "m7": {"d": 2},
    "octonions": {"d": 2},
    "sedenions": {"d": 1},
}

# Saturation-stability configurations: fixture -> kind -> (d, b), meaning
# the graded dimensions of the degree-d quotient are asserted equal between
# buffers b and b+1.  Both quotient kinds are covered for every Malcev
# fixture; b starts at 1 where the b=3 window would be beyond desk scale
# (the seven-dimensional word quotient).
STABILITY: dict[str, dict[str, tuple[int, int]]] = {
    "sl2": {"word": (3, 2), "tree": (3, 2)},
    "m7": {"word": (2, 1), "tree": (2, 2)},
    "abelian1": {"word": (3, 2), "tree": (3, 2)},
    "abelian2": {"word": (3, 2), "tree": (3, 2)},
    "abelian3": {"word": (3, 2), "tree": (3, 2)},
    "super2": {"word": (3, 2), "tree": (3, 2)},
    "rw22": {"word": (3, 2), "tree": (3, 2)},
}


PARAM_KEYS = ("d", "b", "rank", "trunc")


@dataclass
class Definition:
    """A parsed definition file: the algebra plus optional check parameters."""

    algebra: ColorAlgebra
    params: dict[str, int] = field(default_factory=dict)


_BARE_KEY = frozenset(
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_-"
)


def _toml_key(name: str) -> str:
    if name and set(name) <= _BARE_KEY:
        return name
    return json.dumps(name)


def definition_text(alg: ColorAlgebra, params: dict[str, int] | None = None) -> str:
    """Serialize an algebra (and optional check parameters) as a definition file.

    The output is deterministic: fixed table order, basis order as stored,
    products sorted by basis index, scalars in canonical literal form.
    """
    color = alg.color
    g = color.group
    b = alg.basis
    lines = ["[group]", f"moduli = {list(g.moduli)}", "", "[color]"]
    lines.append(f"root_order = {color.N}")
    lines.append(f"emat = {[list(row) for row in color.chi.emat]}")
    lines.extend(["", "[algebra]"])
    entries = ", ".join(
        f"[{json.dumps(b.name(i))}, {list(b.degree(i))}]" for i in range(len(b))
    )
    lines.append(f"basis = [{entries}]")
    if alg.sc:
        lines.extend(["", "[algebra.products]"])
        for i, j in sorted(alg.sc):
            v = alg.sc[(i, j)]
            terms = ", ".join(
                f"{_toml_key(b.name(k))} = {json.dumps(format_scalar(c))}"
                for k, c in sorted(v.coords.items())
            )
            key = json.dumps(f"{b.name(i)},{b.name(j)}")
            lines.append(f"{key} = {{ {terms} }}")
    if params:
        lines.extend(["", "[params]"])
        for k in PARAM_KEYS:
            if k in params:
                lines.append(f"{k} = {int(params[k])}")
    lines.append("")
    return "\n".join(lines)


def _table(data: dict, key: str, required: bool = True) -> dict:
    t = data.get(key)
    if t is None:
        if required:
            raise DefinitionError(f"{key}: required table is missing")
        return {}
    if not isinstance(t, dict):
        raise DefinitionError(f"{key}: expected a table")
    return t


def _reject_unknown(t: dict, allowed, where: str) -> None:
    for k in t:
        if k not in allowed:
            raise DefinitionError(f"{where}.{k}: unknown key")


def _int_list(value, where: str, minimum: int) -> list[int]:
    if (
        not isinstance(value, list)
        or not value
        or any(isinstance(x, bool) or not isinstance(x, int) for x in value)
        or any(x < minimum for x in value)
    ):
        raise DefinitionError(f"{where}: expected a nonempty array of integers >= {minimum}")
    return list(value)


def parse_toml(text: str) -> dict:
    """TOML syntax layer; syntax errors surface as DefinitionError."""
    try:
        return _toml.loads(text)
    except _toml.TOMLDecodeError as e:
        raise DefinitionError(f"syntax: {e}") from None


def group_and_bichar(data: dict) -> tuple[AbelianGroup, Bicharacter]:
    """The [group] and [color] tables as raw objects, without requiring
    skew-symmetry — the color checker wants to examine invalid ones."""
    gt = _table(data, "group")
    _reject_unknown(gt, ("moduli",), "group")
    if "moduli" not in gt:
        raise DefinitionError("group.moduli: required")
    moduli = _int_list(gt["moduli"], "group.moduli", 1)
    group = AbelianGroup(tuple(moduli))
    ct = _table(data, "color")
    _reject_unknown(ct, ("root_order", "emat"), "color")
    N = ct.get("root_order")
    if N is not None and (isinstance(N, bool) or not isinstance(N, int) or N < 1):
        raise DefinitionError("color.root_order: expected a positive integer")
    if "emat" not in ct:
        raise DefinitionError("color.emat: required")
    emat = ct["emat"]
    if not isinstance(emat, list) or len(emat) != group.rank:
        raise DefinitionError(f"color.emat: expected {group.rank} rows")
    rows = []
    for r, row in enumerate(emat):
        if (
            not isinstance(row, list)
            or len(row) != group.rank
            or any(isinstance(x, bool) or not isinstance(x, int) for x in row)
        ):
            raise DefinitionError(
                f"color.emat row {r}: expected {group.rank} integers"
            )
        rows.append(list(row))
    try:
        bichar = Bicharacter(group, rows, N=N)
    except ValueError as e:
        raise DefinitionError(f"color.emat: {e}") from None
    return group, bichar


def parse_definition(text: str) -> Definition:
    """Parse a full definition file into an algebra plus check parameters.

    Every defect is reported as a DefinitionError naming the offending
    field; nothing is silently defaulted except genuinely optional keys.
    """
    data = parse_toml(text)
    _reject_unknown(data, ("group", "color", "algebra", "params"), "file")
    group, bichar = group_and_bichar(data)
    if not check_skew(bichar):
        raise DefinitionError("color.emat: bicharacter is not skew-symmetric")
    for g in group.elements():
        if _sign_of(bichar.chi(g, g)) is None:
            raise DefinitionError(
                f"color.emat: chi(g, g) is not +-1 at g={tuple(g)}"
            )
    color = Color(group, bichar)

    at = _table(data, "algebra")
    _reject_unknown(at, ("basis", "order", "products"), "algebra")
    if "basis" not in at:
        raise DefinitionError("algebra.basis: required")
    raw = at["basis"]
    if not isinstance(raw, list) or not raw:
        raise DefinitionError("algebra.basis: expected a nonempty array")
    entries: list[tuple[str, tuple[int, ...]]] = []
    for idx, item in enumerate(raw):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not isinstance(item[0], str)
            or not item[0]
        ):
            raise DefinitionError(
                f"algebra.basis[{idx}]: expected [name, [degree components]]"
            )
        name, deg = item
        comps = deg if isinstance(deg, list) else None
        if comps is None or len(comps) != group.rank or any(
            isinstance(x, bool) or not isinstance(x, int) for x in comps
        ):
            raise DefinitionError(
                f"algebra.basis[{idx}] ({name}): degree needs {group.rank} integers"
            )
        entries.append(
            (name, tuple(x % m for x, m in zip(comps, group.moduli)))
        )
    names = [name for name, _ in entries]
    if len(set(names)) != len(names):
        raise DefinitionError("algebra.basis: duplicate names")

    order = at.get("order")
    if order is not None:
        if not isinstance(order, list) or sorted(order) != sorted(names):
            raise DefinitionError(
                "algebra.order: expected a permutation of the basis names"
            )
        by_name = dict(entries)
        entries = [(n, by_name[n]) for n in order]
        names = list(order)
    basis = GradedBasis(color, entries)

    products: dict[tuple[str, str], dict[str, CycScalar]] = {}
    pt = at.get("products", {})
    if not isinstance(pt, dict):
        raise DefinitionError("algebra.products: expected a table")
    known = set(names)
    for key, terms in pt.items():
        parts = key.split(",")
        if len(parts) != 2 or parts[0] not in known or parts[1] not in known:
            raise DefinitionError(
                f'algebra.products."{key}": key must be "left,right" with known names'
            )
        if not isinstance(terms, dict):
            raise DefinitionError(f'algebra.products."{key}": expected a table')
        coeffs: dict[str, CycScalar] = {}
        for target, value in terms.items():
            if target not in known:
                raise DefinitionError(
                    f'algebra.products."{key}".{target}: unknown basis name'
                )
            if isinstance(value, bool):
                raise DefinitionError(
                    f'algebra.products."{key}".{target}: expected an integer or scalar literal'
                )
            if isinstance(value, int):
                coeffs[target] = color.scalar(value)
            elif isinstance(value, str):
                try:
                    coeffs[target] = parse_scalar(value, color.N)
                except ValueError as e:
                    raise DefinitionError(
                        f'algebra.products."{key}".{target}: {e}'
                    ) from None
            else:
                raise DefinitionError(
                    f'algebra.products."{key}".{target}: expected an integer or scalar literal'
                )
        products[(parts[0], parts[1])] = coeffs
    try:
        algebra = ColorAlgebra.from_table(basis, products)
    except ValueError as e:
        raise DefinitionError(f"algebra.products: {e}") from None

    params: dict[str, int] = {}
    ptab = _table(data, "params", required=False)
    _reject_unknown(ptab, PARAM_KEYS, "params")
    for k, v in ptab.items():
        if isinstance(v, bool) or not isinstance(v, int) or v < 0 or (v == 0 and k != "b"):
            raise DefinitionError(f"params.{k}: expected a positive integer")
        params[k] = v
    return Definition(algebra, params)


def load_definition(path) -> Definition:
    """Read and parse a definition file from disk."""
    with open(path, "rb") as fh:
        text = fh.read().decode("utf-8")
    return parse_definition(text)


def fixture_names() -> list[str]:
    return sorted(BUILDERS)


def fixture_text(name: str) -> str:
    """The bundled definition file for a named fixture, verbatim."""
    if name not in BUILDERS:
        raise KeyError(f"unknown fixture {name!r}; have {fixture_names()}")
    return (resources.files(__package__) / f"{name}.toml").read_text("utf-8")


def fixture_algebra(name: str) -> ColorAlgebra:
    """Parse the bundled definition file for a named fixture."""
    return parse_definition(fixture_text(name)).algebra


def write_fixture_files(dirpath) -> list[str]:
    """Regenerate every bundled definition file under dirpath; returns paths."""
    import os

    written = []
    for name in fixture_names():
        text = definition_text(BUILDERS[name](), FIXTURE_PARAMS.get(name))
        path = os.path.join(os.fspath(dirpath), f"{name}.toml")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        written.append(path)
    return written
