# coding: utf-8

# # Definition files and the command line
#
# Algebras travel as small TOML files: the grading group, the bicharacter's
# exponent matrix, the graded basis, and the nonzero products.  The same
# files drive the `colorenv` command line, whose exit code is the verdict:
# 0 when every check passes, 1 when a check fails, 2 when the input cannot
# be read.  All output is deterministic.

import tempfile
from pathlib import Path

from colorenv.cli import main
from colorenv.fixtures import definition_text, fixture_text, parse_definition
from colorenv.fixtures import BUILDERS

# # A definition file is plain TOML

print(fixture_text("super2"))

# # Writer and parser are inverse to each other

alg = BUILDERS["super2"]()
text = definition_text(alg)
assert parse_definition(text).algebra.dim() == alg.dim()
assert definition_text(parse_definition(text).algebra) == text
print("definition text round-trips byte for byte")

# # Driving the command line in-process
#
# `main` takes an argv list and returns the exit code; the bundled fixture
# files live inside the package, so we regenerate one into a temp directory
# and point the tool at it.

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "super2.toml"
    path.write_text(fixture_text("super2"), "utf-8")

    print("\n$ colorenv check-color super2.toml")
    code = main(["check-color", str(path)])
    print(f"(exit code {code})")

    print("\n$ colorenv enum-bichar 6 --skew")
    code = main(["enum-bichar", "6", "--skew"])
    print(f"(exit code {code})")

    print("\n$ colorenv verify-main super2.toml --degree 3")
    code = main(["verify-main", str(path), "--degree", "3"])
    print(f"(exit code {code})")

    print("\n$ colorenv check-color broken.toml")
    broken = Path(tmp) / "broken.toml"
    broken.write_text("this is [not toml", "utf-8")
    code = main(["check-color", str(broken)])
    print(f"(exit code {code})")
