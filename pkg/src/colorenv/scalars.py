"""Exact arithmetic in the cyclotomic field Q(zeta_N).

A scalar is a vector of rationals in the power basis {zeta^0, ..., zeta^{phi(N)-1}}
reduced modulo the N-th cyclotomic polynomial.  N = 1 or 2 gives plain rationals.
All operations are pure and exact; there is no floating point anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, RootOrderMismatch

__all__ = [
    "CycScalar",
    "cyc_add",
    "cyc_mul",
    "cyc_inv",
    "root_of_unity",
    "cyclotomic_polynomial",
    "euler_phi",
    "parse_scalar",
    "format_scalar",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    assert n >= 1
    return sum(1 for k in range(n) if _gcd(k, n) == 1) if n > 1 else 1


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    quot = [_ZERO] * max(1, len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / lead
        if c:
            quot[k] = c
            for i, dc in enumerate(den):
                num[k + i] -= c * dc
    return _poly_trim(quot), _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial.

    Computed by the recursive divisibility construction: divide x^n - 1 by the
    cyclotomic polynomials of all proper divisors of n.
    """
    assert n >= 1
    num = [_ZERO] * (n + 1)
    num[0], num[n] = Fraction(-1), _ONE
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not rem, f"cyclotomic division left a remainder at n={n}, d={d}"
    return tuple(num)


def _reduce_mod_cyclotomic(n: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    """Reduce an arbitrary-degree polynomial in zeta_N to the power basis."""
    phi = euler_phi(n)
    cyc = list(cyclotomic_polynomial(n))
    coeffs = _poly_trim(list(coeffs))
    if len(coeffs) >= len(cyc):
        _, coeffs = _poly_divmod(coeffs, cyc)
    coeffs += [_ZERO] * (phi - len(coeffs))
    return tuple(coeffs[:phi])


class CycScalar:
    """An element of Q(zeta_N), immutable and canonical by construction.

    root_order is N; coeffs has length phi(N).  Scalars of different root
    orders never mix: operations raise RootOrderMismatch.  Python ints and
    Fractions promote into any root order via the arithmetic dunders.
    """

    __slots__ = ("root_order", "coeffs", "_hash")

    def __init__(self, root_order: int, coeffs) -> None:
        assert root_order >= 1
        object.__setattr__(self, "root_order", root_order)
        cs = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
        phi = euler_phi(root_order)
        if len(cs) != phi:
            cs = list(_reduce_mod_cyclotomic(root_order, cs))
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # pragma: no cover - guards immutability
        raise AttributeError("CycScalar is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "CycScalar":
        return cls(n, [_ZERO] * euler_phi(n))

    @classmethod
    def one(cls, n: int) -> "CycScalar":
        return cls.from_rational(n, _ONE)

    @classmethod
    def from_rational(cls, n: int, q) -> "CycScalar":
        cs = [_ZERO] * euler_phi(n)
        cs[0] = Fraction(q)
        return cls(n, cs)

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "CycScalar":
        if isinstance(other, CycScalar):
            if other.root_order != self.root_order:
                raise RootOrderMismatch(
                    f"root orders {self.root_order} and {other.root_order} differ"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycScalar.from_rational(self.root_order, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycScalar(self.root_order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.root_order, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycScalar(self.root_order, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = self.root_order
        # rational factors scale coefficientwise; no convolution needed
        if not any(o.coeffs[1:]):
            b = o.coeffs[0]
            return CycScalar(n, [a * b for a in self.coeffs])
        if not any(self.coeffs[1:]):
            a = self.coeffs[0]
            return CycScalar(n, [a * b for b in o.coeffs])
        prod = [_ZERO] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycScalar(n, _reduce_mod_cyclotomic(n, prod))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * cyc_inv(o)

    def __rtruediv__(self, other):
        return cyc_inv(self) * other

    def __pow__(self, k: int):
        if k < 0:
            return cyc_inv(self) ** (-k)
        out = CycScalar.one(self.root_order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.root_order == other.root_order and self.coeffs == other.coeffs

    def __bool__(self):
        return not self.is_zero()

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.root_order, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"CycScalar({self.root_order}, {format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


# -- spec-named operations ----------------------------------------------


def cyc_add(a: CycScalar, b: CycScalar) -> CycScalar:
    """a + b in Q(zeta_N); raises RootOrderMismatch when orders differ."""
    return a + b


def cyc_mul(a: CycScalar, b: CycScalar) -> CycScalar:
    """a * b reduced modulo the N-th cyclotomic polynomial."""
    return a * b


def cyc_inv(a: CycScalar) -> CycScalar:
    """Multiplicative inverse via extended Euclid against the cyclotomic polynomial."""
    if a.is_zero():
        raise DivisionByZero("inverse of zero")
    if a.is_rational():
        return CycScalar.from_rational(a.root_order, 1 / a.coeffs[0])
    n = a.root_order
    # extended gcd of a (as polynomial) and Phi_N over Q: u*a + v*Phi = gcd = const
    r0, r1 = list(cyclotomic_polynomial(n)), _poly_trim(list(a.coeffs))
    s0, s1 = [_ZERO], [_ONE]  # Bezout coefficients for a
    while r1:
        q, r = _poly_divmod(r0, r1)
        # s_new = s0 - q*s1
        qs = [_ZERO] * (len(q) + len(s1) - 1) if q and s1 else []
        for i, qc in enumerate(q):
            if qc:
                for j, sc in enumerate(s1):
                    qs[i + j] += qc * sc
        s_new = [x - y for x, y in zip(s0 + [_ZERO] * max(0, len(qs) - len(s0)),
                                       qs + [_ZERO] * max(0, len(s0) - len(qs)))]
        r0, r1 = r1, r
        s0, s1 = s1, _poly_trim(s_new)
    assert len(r0) == 1, "gcd with the cyclotomic polynomial must be a unit"
    inv_const = 1 / r0[0]
    return CycScalar(n, _reduce_mod_cyclotomic(n, [c * inv_const for c in s0]))


def root_of_unity(n: int, k: int) -> CycScalar:
    """zeta_n^(k mod n) in canonical reduced form; root_of_unity(n, 0) = 1."""
    assert n >= 1
    k %= n
    mono = [_ZERO] * (k + 1)
    mono[k] = _ONE
    return CycScalar(n, _reduce_mod_cyclotomic(n, mono))


# -- literal syntax ------------------------------------------------------

_TERM_RE = re.compile(
    r"""^\s*(?:
        (?P<coef>[+-]?\d+(?:/\d+)?)\s*\*\s*z\^(?P<exp>[+-]?\d+)   # c*z^k
      | z\^(?P<exp2>[+-]?\d+)                                     # z^k
      | (?P<rat>[+-]?\d+(?:/\d+)?)                                # plain rational
    )\s*$""",
    re.VERBOSE,
)


def parse_scalar(text: str, root_order: int) -> CycScalar:
    """Parse the exact literal syntax: "p/q" or " + "-joined terms "c*z^k".

    z denotes zeta with the given root order.  Parsing is exact; malformed
    input raises ValueError with the offending term.
    """
    total = CycScalar.zero(root_order)
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ValueError(f"empty term in scalar literal {text!r}")
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"bad scalar term {term!r} in {text!r}")
        if m.group("rat") is not None:
            total = total + Fraction(m.group("rat"))
        else:
            coef = Fraction(m.group("coef")) if m.group("coef") is not None else _ONE
            exp = int(m.group("exp") if m.group("exp") is not None else m.group("exp2"))
            total = total + coef * root_of_unity(root_order, exp)
    return total


def format_scalar(a: CycScalar) -> str:
    """Canonical literal for a scalar: "p" / "p/q", or " + "-joined "c*z^k" terms."""
    if a.is_rational():
        q = a.coeffs[0]
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    terms = []
    for k, c in enumerate(a.coeffs):
        if not c:
            continue
        cs = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        terms.append(cs if k == 0 else f"{cs}*z^{k}")
    return " + ".join(terms)
