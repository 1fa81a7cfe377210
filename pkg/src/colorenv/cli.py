"""Batch front end: parse definition files, run checks, report for CI.

Every subcommand reads an algebra-definition file (TOML; see the fixtures
package) except enum-bichar, which takes the group moduli directly.  Exit
codes follow one contract everywhere: 0 when every check passed, 1 when a
check evaluated and failed, 2 when the input could not be used at all
(parse error, unknown names, resource limits).  Reports go to stdout,
diagnostics to stderr, and output bytes are a deterministic function of
the input file and flags.  --json renders the same records as structured
data: tool version, input digest, per-check records, overall status.

The environment variable COLORENV_MAX_DEGREE overrides the default cap on
the envelope truncation degree (a resource guard: word counts grow as
(2n)^d).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from .algebras import (
    check_color_alternative,
    check_color_antisymmetry,
    check_color_jacobi,
    check_malcev_color,
    color_nucleus,
    identity_transfer_check,
)
from .colors import check_skew, enumerate_bicharacters, AbelianGroup
from .envelopes import (
    build_ULM,
    build_UM,
    check_hopf_triality,
    check_moufang,
    mh_basis,
    phi_map,
    primitives,
)
from .errors import ColorEnvError, DefinitionError
from .fixtures import group_and_bichar, parse_definition, parse_toml
from .linalg import RowSpace
from .report import CheckReport, term_list
from .scalars import format_scalar

DEFAULT_DEGREE_CAP = 6
DEFAULT_BUFFER = 2
ENUM_ORDER_BOUND = 64

IDENTITY_CHECKERS = {
    "antisym": check_color_antisymmetry,
    "jacobi": check_color_jacobi,
    "malcev": check_malcev_color,
    "alternative": check_color_alternative,
}

TRANSFER_DIRECT = {
    "malcev": check_malcev_color,
    "jacobi": check_color_jacobi,
    "alternative": check_color_alternative,
}


class _Outcome:
    """Accumulates one command's report: text lines, check records, extras."""

    def __init__(self, command: str, params: dict) -> None:
        self.command = command
        self.params = params
        self.lines: list[str] = []
        self.checks: list[CheckReport] = []
        self.extras: dict = {}
        self.input: dict = {}

    def say(self, text: str = "") -> None:
        self.lines.append(text)

    def check(self, rep: CheckReport) -> None:
        self.checks.append(rep)
        self.lines.append(rep.to_text())

    @property
    def passed(self) -> bool:
        return all(rep.passed for rep in self.checks)

    def emit(self, as_json: bool) -> int:
        status = "pass" if self.passed else "fail"
        if as_json:
            doc = {
                "version": __version__,
                "command": self.command,
                "input": self.input,
                "params": self.params,
                "checks": [rep.to_dict() for rep in self.checks],
                "extras": self.extras,
                "status": status,
            }
            sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        else:
            for line in self.lines:
                sys.stdout.write(line + "\n")
            sys.stdout.write(f"status: {status}\n")
        return 0 if self.passed else 1


def _read_definition_file(path: str) -> tuple[str, dict]:
    """File text plus input-identity record (path basename and sha256)."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise DefinitionError(f"{path}: {e.strerror or e}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise DefinitionError(f"{path}: not valid UTF-8 ({e.reason})") from None
    return text, {
        "file": os.path.basename(path),
        "sha256": hashlib.sha256(raw).hexdigest(),
    }


def _degree_cap() -> int:
    raw = os.environ.get("COLORENV_MAX_DEGREE")
    if raw is None:
        return DEFAULT_DEGREE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise DefinitionError(
            f"COLORENV_MAX_DEGREE: expected an integer, got {raw!r}"
        ) from None
    if cap < 1:
        raise DefinitionError("COLORENV_MAX_DEGREE: must be at least 1")
    return cap


def _effective_degree(args, params: dict, dim: int) -> int:
    if args.degree is not None:
        d = args.degree
    elif "d" in params:
        d = params["d"]
    else:
        d = 4 if dim <= 3 else 3
    cap = _degree_cap()
    if d > cap:
        raise DefinitionError(
            f"degree {d} exceeds the cap {cap}"
            " (set COLORENV_MAX_DEGREE to raise it)"
        )
    if d < 1:
        raise DefinitionError("degree must be at least 1")
    return d


def _effective_buffer(args, params: dict) -> int:
    b = args.buffer if args.buffer is not None else params.get("b", DEFAULT_BUFFER)
    if b < 0:
        raise DefinitionError("buffer must be nonnegative")
    return b


def cmd_check_color(args) -> int:
    text, source = _read_definition_file(args.file)
    group, bichar = group_and_bichar(parse_toml(text))
    out = _Outcome(
        "check-color", {"moduli": list(group.moduli), "root_order": bichar.N}
    )
    out.input = source
    rep = CheckReport(
        "color-axioms", {"order": group.order, "root_order": bichar.N}
    )
    elements = list(group.elements())
    for a in elements:
        for b in elements:
            if (bichar.value_exponent(a, b) + bichar.value_exponent(b, a)) % bichar.N == 0:
                rep.tick()
            else:
                rep.violation(
                    ("skew", str(tuple(a)), str(tuple(b))),
                    (("chi(a,b)*chi(b,a)", format_scalar(bichar.chi(a, b) * bichar.chi(b, a))),),
                    (("required", "1"),),
                )
    parities = []
    for g in elements:
        val = bichar.chi(g, g)
        if val == 1:
            parities.append((tuple(g), "+1"))
            rep.tick()
        elif val == -1:
            parities.append((tuple(g), "-1"))
            rep.tick()
        else:
            parities.append((tuple(g), format_scalar(val)))
            rep.violation(
                ("parity", str(tuple(g))),
                (("chi(g,g)", format_scalar(val)),),
                (("required", "+1 or -1"),),
            )
    out.say(f"group Z{list(group.moduli)} with root order {bichar.N}")
    out.say("parity table:")
    for g, p in parities:
        out.say(f"  {g}: {p}")
    out.extras["parity"] = [[list(g), p] for g, p in parities]
    out.check(rep)
    return out.emit(args.json)


def cmd_enum_bichar(args) -> int:
    try:
        moduli = tuple(int(p) for p in args.moduli.split(","))
    except ValueError:
        raise DefinitionError(
            f"moduli: expected comma-separated integers, got {args.moduli!r}"
        ) from None
    if not moduli or any(m < 1 for m in moduli):
        raise DefinitionError("moduli: all entries must be positive")
    group = AbelianGroup(moduli)
    found = enumerate_bicharacters(group, skew_only=args.skew, bound=ENUM_ORDER_BOUND)
    kind = "skew-symmetric bicharacters" if args.skew else "bicharacters"
    out = _Outcome(
        "enum-bichar", {"moduli": list(moduli), "skew": bool(args.skew)}
    )
    out.input = {"moduli": list(moduli)}
    out.say(f"group Z{list(moduli)}: {len(found)} {kind}")
    table = []
    for i, b in enumerate(found):
        emat = [list(row) for row in b.emat]
        skew = check_skew(b)
        out.say(f"  #{i}: root_order={b.N} emat={emat} skew={'yes' if skew else 'no'}")
        table.append({"emat": emat, "root_order": b.N, "skew": skew})
    out.extras["count"] = len(found)
    out.extras["bicharacters"] = table
    return out.emit(args.json)


def cmd_check_identities(args) -> int:
    text, source = _read_definition_file(args.file)
    alg = parse_definition(text).algebra
    out = _Outcome(
        "check-identities", {"identity": args.identity, "dim": alg.dim()}
    )
    out.input = source
    out.check(IDENTITY_CHECKERS[args.identity](alg))
    return out.emit(args.json)


def cmd_nucleus(args) -> int:
    text, source = _read_definition_file(args.file)
    alg = parse_definition(text).algebra
    basis = color_nucleus(alg)
    out = _Outcome("nucleus", {"dim": alg.dim()})
    out.input = source
    by_degree: dict = {}
    for v in basis:
        by_degree.setdefault(v.degree(), []).append(v)
    out.say(f"alternative nucleus: dimension {len(basis)} of {alg.dim()}")
    dims_rows = []
    for deg in sorted(by_degree):
        out.say(f"  degree {tuple(deg)}: dimension {len(by_degree[deg])}")
        dims_rows.append([list(deg), len(by_degree[deg])])
    out.say("basis:")
    vec_rows = []
    for v in basis:
        terms = term_list(
            (alg.basis.name(i), c) for i, c in v.coords.items()
        )
        out.say("  " + " + ".join(f"({lit})*{label}" for label, lit in terms))
        vec_rows.append([[label, lit] for label, lit in terms])
    out.extras["graded_dims"] = dims_rows
    out.extras["basis"] = vec_rows
    out.extras["full"] = len(basis) == alg.dim()
    return out.emit(args.json)


def cmd_verify_main(args) -> int:
    text, source = _read_definition_file(args.file)
    definition = parse_definition(text)
    alg = definition.algebra
    d = _effective_degree(args, definition.params, alg.dim())
    b = _effective_buffer(args, definition.params)
    out = _Outcome("verify-main", {"d": d, "b": b, "dim": alg.dim()})
    out.input = source

    precondition = check_malcev_color(alg)
    out.check(precondition)
    if not precondition.passed:
        out.say("precondition failed: not a Malcev color algebra; "
                "envelope construction skipped")
        return out.emit(args.json)

    um = build_UM(alg, d, b)
    h = build_ULM(alg, d, b)
    mh = mh_basis(h)
    um_dims = um.graded_dims()
    out.say("graded dimensions (word degree 0.." + str(d) + "):")
    out.say(f"  U(M)          : {list(um_dims)}")
    out.say(f"  MH(U(L(M)))   : {list(mh.dims)}")
    out.extras["um_dims"] = list(um_dims)
    out.extras["mh_dims"] = list(mh.dims)

    gmap, rep_phi = phi_map(um, mh)
    ranks = []
    space = RowSpace(len(mh.gb), um.color.N)
    col = 0
    for k in range(d + 1):
        for _ in um.basis_by_degree[k]:
            space.insert(gmap.columns[col])
            col += 1
        ranks.append(space.rank)
    out.say("phi cumulative rank by degree: " + str(ranks))
    out.extras["phi_ranks"] = ranks
    out.check(rep_phi)

    prims = primitives(um, d)
    rep_prim = CheckReport("primitives", {"d": d, "dim": alg.dim()})
    if len(prims) == alg.dim():
        rep_prim.tick()
    else:
        rep_prim.violation(
            ("dimension",),
            (("primitives", str(len(prims))),),
            (("base algebra", str(alg.dim())),),
        )
    out.extras["primitive_dim"] = len(prims)
    out.check(rep_prim)

    out.check(check_moufang(mh))
    out.check(check_hopf_triality(h))
    return out.emit(args.json)


def cmd_transfer(args) -> int:
    text, source = _read_definition_file(args.file)
    definition = parse_definition(text)
    alg = definition.algebra
    rank = args.rank if args.rank is not None else definition.params.get("rank", 4)
    trunc = args.trunc if args.trunc is not None else definition.params.get("trunc", 4)
    out = _Outcome(
        "transfer",
        {"identity": args.identity, "rank": rank, "trunc": trunc, "dim": alg.dim()},
    )
    out.input = source
    transferred = identity_transfer_check(alg, args.identity, rank, trunc)
    direct = TRANSFER_DIRECT[args.identity](alg)
    agree = transferred.passed == direct.passed
    rep = CheckReport(
        "transfer-agreement",
        {"identity": args.identity, "rank": rank, "trunc": trunc},
    )
    if agree:
        rep.tick()
    else:
        rep.violation(
            ("verdict",),
            (("transferred", "pass" if transferred.passed else "fail"),),
            (("direct", "pass" if direct.passed else "fail"),),
        )
    out.check(transferred)
    out.check(direct)
    out.say(
        "verdicts agree: both "
        + ("pass" if direct.passed else "fail")
        if agree
        else "verdicts disagree"
    )
    out.check(rep)
    return out.emit(args.json)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="colorenv",
        description="Exact checks for color algebras and their truncated envelopes.",
    )
    parser.add_argument(
        "--version", action="version", version=f"colorenv {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="structured report")

    p = sub.add_parser("check-color", help="validate bicharacter axioms, print parity table")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_check_color)

    p = sub.add_parser("enum-bichar", help="enumerate bicharacters of an abelian group")
    p.add_argument("moduli", help="comma-separated cyclic factors, e.g. 2,2")
    p.add_argument("--skew", action="store_true", help="skew-symmetric only")
    common(p)
    p.set_defaults(func=cmd_enum_bichar)

    p = sub.add_parser("check-identities", help="run one identity checker")
    p.add_argument("file")
    p.add_argument(
        "--identity",
        required=True,
        choices=sorted(IDENTITY_CHECKERS),
    )
    common(p)
    p.set_defaults(func=cmd_check_identities)

    p = sub.add_parser("nucleus", help="graded dimensions and basis of the alternative nucleus")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_nucleus)

    p = sub.add_parser(
        "verify-main",
        help="envelope dimensions, phi ranks, Moufang and triality checks",
    )
    p.add_argument("file")
    p.add_argument("--degree", type=int, default=None, help="truncation degree")
    p.add_argument("--buffer", type=int, default=None, help="saturation buffer")
    common(p)
    p.set_defaults(func=cmd_verify_main)

    p = sub.add_parser("transfer", help="compare transferred and direct identity verdicts")
    p.add_argument("file")
    p.add_argument(
        "--identity", default="malcev", choices=sorted(TRANSFER_DIRECT)
    )
    p.add_argument("--rank", type=int, default=None, help="envelope generators per degree")
    p.add_argument("--trunc", type=int, default=None, help="envelope truncation")
    common(p)
    p.set_defaults(func=cmd_transfer)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ColorEnvError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except RecursionError:
        sys.stderr.write("error: input exceeds the recursion capacity\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
