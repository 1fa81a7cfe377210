"""Finite abelian groups, bicharacters, parity, and braiding permutation scalars.

A group element is a plain tuple of componentwise-reduced exponents; the group
object owns the moduli and does all reduction.  A bicharacter is stored as an
integer exponent matrix E relative to the canonical generators, with
chi(a, b) = zeta_N^(a^T E b).
"""

from __future__ import annotations

import itertools
import math
from functools import reduce

from .errors import ElementGroupMismatch, GroupTooLarge, SizeMismatch
from .scalars import CycScalar, root_of_unity

__all__ = [
    "GroupElement",
    "AbelianGroup",
    "Bicharacter",
    "Color",
    "chi_eval",
    "parity",
    "check_skew",
    "enumerate_bicharacters",
    "perm_scalar",
]

GroupElement = tuple  # exponent vector, componentwise reduced


class AbelianGroup:
    """Z_{m_1} x ... x Z_{m_r} with elements as reduced exponent tuples."""

    __slots__ = ("moduli", "exponent")

    def __init__(self, moduli) -> None:
        ms = tuple(int(m) for m in moduli)
        assert all(m >= 1 for m in ms), "moduli must be >= 1"
        self.moduli = ms
        self.exponent = reduce(math.lcm, ms, 1)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    def element(self, exps) -> GroupElement:
        exps = tuple(int(e) for e in exps)
        if len(exps) != len(self.moduli):
            raise ElementGroupMismatch(
                f"element length {len(exps)} != group rank {len(self.moduli)}"
            )
        return tuple(e % m for e, m in zip(exps, self.moduli))

    def identity(self) -> GroupElement:
        return (0,) * len(self.moduli)

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._check(a), self._check(b)
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: GroupElement) -> GroupElement:
        self._check(a)
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def elements(self):
        """All elements in row-major (lexicographic) order."""
        return (tuple(t) for t in itertools.product(*(range(m) for m in self.moduli)))

    def _check(self, a: GroupElement) -> None:
        if len(a) != len(self.moduli) or any(
            not (0 <= x < m) for x, m in zip(a, self.moduli)
        ):
            raise ElementGroupMismatch(f"{a!r} is not an element of Z_{self.moduli}")

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.moduli == other.moduli

    def __hash__(self):
        return hash(self.moduli)

    def __repr__(self):
        return f"AbelianGroup({list(self.moduli)})"


class Bicharacter:
    """chi(a, b) = zeta_N^(a^T E b) for an integer matrix E on the generators.

    N defaults to lcm(exponent(G), 2) so that -1 always exists in the value
    field.  Well-definedness (m_i * E_ij = m_j * E_ij = 0 mod N) is enforced
    at construction; entries are stored reduced into [0, N).
    """

    __slots__ = ("group", "N", "emat")

    def __init__(self, group: AbelianGroup, emat, N: int | None = None) -> None:
        self.group = group
        self.N = math.lcm(group.exponent, 2) if N is None else int(N)
        rows = tuple(tuple(int(x) % self.N for x in row) for row in emat)
        r = group.rank
        if len(rows) != r or any(len(row) != r for row in rows):
            raise ValueError(f"emat must be {r}x{r}")
        for i in range(r):
            for j in range(r):
                if (group.moduli[i] * rows[i][j]) % self.N or (
                    group.moduli[j] * rows[i][j]
                ) % self.N:
                    raise ValueError(
                        f"emat[{i}][{j}]={rows[i][j]} is not well-defined mod N={self.N}"
                    )
        self.emat = rows

    def value_exponent(self, a: GroupElement, b: GroupElement) -> int:
        """The exponent k with chi(a, b) = zeta_N^k, reduced mod N."""
        self.group._check(a), self.group._check(b)
        total = 0
        for i, ai in enumerate(a):
            if ai:
                row = self.emat[i]
                total += ai * sum(e * bj for e, bj in zip(row, b))
        return total % self.N

    def chi(self, a: GroupElement, b: GroupElement) -> CycScalar:
        return root_of_unity(self.N, self.value_exponent(a, b))

    def value_table(self) -> tuple:
        """Full chi-exponent table over all element pairs, the identity key for dedup."""
        els = list(self.group.elements())
        return tuple(self.value_exponent(a, b) for a in els for b in els)

    def __eq__(self, other):
        return (
            isinstance(other, Bicharacter)
            and self.group == other.group
            and self.N == other.N
            and self.emat == other.emat
        )

    def __hash__(self):
        return hash((self.group, self.N, self.emat))

    def __repr__(self):
        return f"Bicharacter({self.group!r}, {[list(r) for r in self.emat]}, N={self.N})"


def check_skew(b: Bicharacter) -> bool:
    """True iff E_ij + E_ji = 0 mod N for all i, j (well-definedness holds by construction)."""
    r = b.group.rank
    return all((b.emat[i][j] + b.emat[j][i]) % b.N == 0 for i in range(r) for j in range(r))


class Color:
    """A group together with a skew-symmetric bicharacter fixing the braiding."""

    __slots__ = ("group", "chi")

    def __init__(self, group: AbelianGroup, chi: Bicharacter) -> None:
        assert chi.group == group, "bicharacter is over a different group"
        assert check_skew(chi), "bicharacter is not skew-symmetric"
        self.group = group
        self.chi = chi
        for g in group.elements():
            assert _sign_of(chi.chi(g, g)) is not None, "chi(g, g) must be +-1"

    @classmethod
    def trivial(cls, moduli=(1,)) -> "Color":
        g = AbelianGroup(moduli)
        zero = [[0] * g.rank for _ in range(g.rank)]
        return cls(g, Bicharacter(g, zero))

    @classmethod
    def super_color(cls) -> "Color":
        g = AbelianGroup([2])
        return cls(g, Bicharacter(g, [[1]], N=2))

    @property
    def N(self) -> int:
        return self.chi.N

    def one(self) -> CycScalar:
        return CycScalar.one(self.N)

    def scalar(self, q) -> CycScalar:
        return CycScalar.from_rational(self.N, q)

    def __eq__(self, other):
        return isinstance(other, Color) and self.chi == other.chi

    def __hash__(self):
        return hash(self.chi)

    def __repr__(self):
        return f"Color({self.group!r}, {self.chi!r})"


def _sign_of(s: CycScalar):
    if s == 1:
        return 1
    if s == -1:
        return -1
    return None


def chi_eval(c: Color, a: GroupElement, b: GroupElement) -> CycScalar:
    """The braiding scalar chi(a, b) as an exact root of unity."""
    return c.chi.chi(a, b)


def parity(c: Color, g: GroupElement) -> int:
    """chi(g, g) coerced to +-1; +1 splits off the even degrees."""
    sign = _sign_of(c.chi.chi(g, g))
    assert sign is not None, "skew-symmetric chi always has chi(g, g) = +-1"
    return sign


def enumerate_bicharacters(
    g: AbelianGroup, skew_only: bool = False, bound: int = 64
) -> list[Bicharacter]:
    """All bicharacters of g (up to equal value tables), optionally skew-symmetric only.

    Entries E_ij range over the multiples of N/gcd(N, m_i, m_j) in [0, N); the
    list is deduplicated by full value table and sorted by it, so the output
    order is canonical.
    """
    if g.order > bound:
        raise GroupTooLarge(f"group order {g.order} exceeds bound {bound}")
    N = math.lcm(g.exponent, 2)
    r = g.rank
    choices = []
    for i in range(r):
        for j in range(r):
            step = N // math.gcd(N, g.moduli[i], g.moduli[j])
            choices.append(range(0, N, step))
    seen: dict[tuple, Bicharacter] = {}
    for flat in itertools.product(*choices):
        emat = [list(flat[i * r : (i + 1) * r]) for i in range(r)]
        b = Bicharacter(g, emat, N=N)
        if skew_only and not check_skew(b):
            continue
        key = b.value_table()
        if key not in seen:
            seen[key] = b
    return [seen[k] for k in sorted(seen)]


def perm_scalar(c: Color, degrees: list, sigma) -> CycScalar:
    """Braiding scalar for permuting homogeneous tensor factors.

    sigma is a sequence with sigma[i] = image of position i; the permuted
    tensor has the factor of original position sigma^-1(i) at position i, and
    each adjacent swap of factors with degrees (a, b) contributes chi(a, b).
    The result is independent of the decomposition into adjacent swaps.
    """
    sigma = tuple(sigma)
    n = len(sigma)
    if len(degrees) != n:
        raise SizeMismatch(f"{len(degrees)} degrees vs permutation of size {n}")
    assert sorted(sigma) == list(range(n)), "sigma must be a permutation of 0..n-1"
    target = [0] * n
    for i, s in enumerate(sigma):
        target[s] = i  # target[i] = sigma^-1(i): original index landing at slot i
    current = list(range(n))
    exponent = 0
    for slot in range(n):
        pos = current.index(target[slot])
        while pos > slot:
            left, right = current[pos - 1], current[pos]
            exponent += c.chi.value_exponent(degrees[left], degrees[right])
            current[pos - 1], current[pos] = right, left
            pos -= 1
    return root_of_unity(c.N, exponent)
