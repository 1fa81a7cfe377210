"""Session-scoped cache for the expensive truncated-envelope builds."""

import pytest

from colorenv.envelopes import build_ULM, build_UM, mh_basis
from colorenv.fixtures import BUILDERS


@pytest.fixture(scope="session")
def built():
    """Accessor ``built(name, kind, d, b=2)`` backed by a session-wide cache.

    ``kind`` selects what to build for the named fixture algebra:
    ``"word"`` the associative translation envelope with its Hopf structure,
    ``"tree"`` the nonassociative universal envelope, and ``"mh"`` the
    bullet-closed image extracted from the ``"word"`` build with the same
    parameters.
    """
    cache = {}

    def get(name, kind, d, b=2):
        key = (name, kind, d, b)
        if key not in cache:
            if kind == "mh":
                cache[key] = mh_basis(get(name, "word", d, b))
            else:
                builder = build_ULM if kind == "word" else build_UM
                cache[key] = builder(BUILDERS[name](), d, b)
        return cache[key]

    return get
