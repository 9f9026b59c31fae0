"""Exact arithmetic in a quadratic imaginary number field, default Q(i).

Elements are pairs of rationals a + b*w with w^2 = -d (w = i for d = 1).
Everything is immutable and exact; complex embeddings are evaluated with
mpmath at a requested precision.  Multiplicative structure (factorization
into Gaussian primes, canonicalized to the first quadrant) is fully
supported for Q(i) only, which is the field all worked examples live in.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath as mp
import sympy

__all__ = [
    "FieldSpec",
    "FieldElement",
    "GaussianFactorization",
    "QI",
    "Fe",
    "FactorBoundExceeded",
    "embed",
    "factor",
    "is_log_kernel",
    "parse_element",
]

DEFAULT_FACTOR_BOUND = 10**12


class FactorBoundExceeded(ValueError):
    """Norm of the element exceeds the configured factoring bound."""

    def __init__(self, norm):
        self.norm = norm
        super().__init__(f"norm {norm} exceeds the factoring bound")


@dataclass(frozen=True)
class FieldSpec:
    """A quadratic imaginary field Q(sqrt(-d)), d > 0 squarefree.

    r1/r2 are the numbers of real and non-conjugate complex embeddings;
    for any quadratic imaginary field r1 = 0 and r2 = 1.
    """

    d: int = 1

    def __post_init__(self):
        if self.d <= 0:
            raise ValueError("d must be positive (quadratic imaginary)")

    @property
    def r1(self) -> int:
        return 0

    @property
    def r2(self) -> int:
        return 1

    @property
    def degree(self) -> int:
        return self.r1 + 2 * self.r2

    @property
    def embeddings(self):
        """Labels of all complex embeddings, conjugate ones adjacent."""
        return ("sigma", "sigma_bar")

    def __repr__(self):
        return f"FieldSpec(Q(sqrt(-{self.d})))"


QI = FieldSpec(1)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class FieldElement:
    """a + b*w with w = sqrt(-d); exact rational coordinates."""

    a: Fraction
    b: Fraction
    field: FieldSpec = QI

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(_as_fraction(other), Fraction(0), self.field)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.a, -self.b, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.field.d
        return FieldElement(
            self.a * o.a - d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.field,
        )

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("0 has no inverse")
        c = self.conj()
        return FieldElement(c.a / n, c.b / n, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = FieldElement(Fraction(1), Fraction(0), self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- involution and norm ------------------------------------------------

    def conj(self) -> "FieldElement":
        return FieldElement(self.a, -self.b, self.field)

    def norm(self) -> Fraction:
        """N(x) = x * conj(x), a nonnegative rational."""
        return self.a * self.a + self.field.d * self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    # -- printing / parsing --------------------------------------------------

    def __str__(self):
        sym = "i" if self.field.d == 1 else f"sqrt(-{self.field.d})"

        def q(f: Fraction) -> str:
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

        if self.b == 0:
            return q(self.a)
        bs = f"{q(abs(self.b))}*{sym}" if abs(self.b) != 1 else sym
        if self.a == 0:
            return bs if self.b > 0 else f"-{bs}"
        sign = "+" if self.b > 0 else "-"
        return f"{q(self.a)} {sign} {bs}"

    def __repr__(self):
        return f"Fe({self})"


def Fe(a, b=0, field: FieldSpec = QI) -> FieldElement:
    """Shorthand constructor: Fe(2, 3) is 2 + 3i."""
    return FieldElement(_as_fraction(a), _as_fraction(b), field)


_TOKEN = re.compile(r"\s*(?:(\d+)|([+\-*/^()])|([a-zA-Z]\w*))")


def parse_element(text: str, field: FieldSpec = QI) -> FieldElement:
    """Parse the grammar ``a/b + c/d*i`` (whitespace-insensitive).

    Accepts any +-*/^ combination of rational literals and the literal
    ``i``; exact round-trip with str() is guaranteed.

    >>> parse_element("3/5 + 4/5*i")
    Fe(3/5 + 4/5*i)
    >>> parse_element(str(Fe(-1, -3))) == Fe(-1, -3)
    True
    """
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"parse error at position {pos}: {text[pos:]!r}")
        toks.append((m.group(1) or m.group(2) or m.group(3), pos))
        pos = m.end()
    toks.append((None, len(text)))
    idx = 0

    def peek():
        return toks[idx][0]

    def take(expected=None):
        nonlocal idx
        tok, p = toks[idx]
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r} at position {p}, got {tok!r}")
        idx += 1
        return tok

    def atom() -> FieldElement:
        tok = peek()
        if tok == "(":
            take("(")
            v = expr()
            take(")")
            return v
        if tok == "-":
            take("-")
            return -atom()
        if tok == "+":
            take("+")
            return atom()
        if tok == "i" and field.d == 1:
            take()
            return Fe(0, 1, field)
        if tok is not None and tok.isdigit():
            take()
            return Fe(int(tok), 0, field)
        raise ValueError(f"unexpected token {tok!r} at position {toks[idx][1]}")

    def power() -> FieldElement:
        v = atom()
        while peek() == "^":
            take("^")
            neg = False
            if peek() == "-":
                take("-")
                neg = True
            e = take()
            if not e or not e.isdigit():
                raise ValueError("exponent must be an integer literal")
            v = v ** (-int(e) if neg else int(e))
        return v

    def term() -> FieldElement:
        v = power()
        while peek() in ("*", "/"):
            op = take()
            w = power()
            v = v * w if op == "*" else v / w
        return v

    def expr() -> FieldElement:
        v = term()
        while peek() in ("+", "-"):
            op = take()
            w = term()
            v = v + w if op == "+" else v - w
        return v

    out = expr()
    if peek() is not None:
        raise ValueError(f"trailing input at position {toks[idx][1]}")
    return out


# -- embeddings --------------------------------------------------------------


def _mpf_fraction(f: Fraction) -> mp.mpf:
    return mp.mpf(f.numerator) / mp.mpf(f.denominator)


def embed(x: FieldElement, precision: int = 256):
    """Complex values of x under all embeddings, conjugates adjacent.

    Values are correctly rounded at ``precision`` bits; the two returned
    values are exact conjugates of each other.
    """
    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    with mp.workprec(precision):
        re = _mpf_fraction(x.a)
        im = _mpf_fraction(x.b) * mp.sqrt(x.field.d)
        return (mp.mpc(re, im), mp.mpc(re, -im))


def embed_principal(x: FieldElement, precision: int = 256):
    """The distinguished (non-conjugate) embedding only."""
    return embed(x, precision)[0]


# -- Gaussian integers and factorization --------------------------------------

# Gaussian integers are plain (a, b) int pairs in this section; they only
# ever appear inside the factorization routines.


def _g_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _g_norm(x):
    return x[0] * x[0] + x[1] * x[1]


def _g_divmod(x, y):
    """Euclidean division in Z[i] (nearest-integer quotient)."""
    n = _g_norm(y)
    num = _g_mul(x, (y[0], -y[1]))

    def nearest(a, b):
        # round a/b to the nearest integer, ties toward +inf
        return (2 * a + b) // (2 * b)

    q = (nearest(num[0], n), nearest(num[1], n))
    r = (x[0] - (q[0] * y[0] - q[1] * y[1]), x[1] - (q[0] * y[1] + q[1] * y[0]))
    return q, r


def _g_gcd(x, y):
    while y != (0, 0):
        _, r = _g_divmod(x, y)
        x, y = y, r
    return x


def _first_quadrant(p):
    """The unique associate with Re > 0, Im >= 0."""
    a, b = p
    for _ in range(4):
        if a > 0 and b >= 0:
            return (a, b)
        a, b = -b, a  # multiply by i
    raise ValueError("zero has no canonical associate")


def _split_prime(p: int):
    """A Gaussian prime above a rational prime p = 1 mod 4 (or p = 2)."""
    if p == 2:
        return (1, 1)
    # find c with c^2 = -1 mod p, then gcd(p, c + i)
    for a in range(2, p):
        c = pow(a, (p - 1) // 4, p)
        if (c * c) % p == p - 1:
            return _first_quadrant(_g_gcd((p, 0), (c, 1)))
    raise ArithmeticError(f"no square root of -1 mod {p}")  # pragma: no cover


@dataclass(frozen=True)
class GaussianFactorization:
    """unit * prod(prime^exp) with first-quadrant canonical primes.

    The unit is i^unit_pow (unit_pow mod 4); primes are FieldElements with
    integer coordinates, sorted canonically; exponents are nonzero ints.
    """

    unit_pow: int
    primes: tuple  # tuple[(FieldElement, int), ...]

    def unit(self) -> FieldElement:
        return Fe(0, 1) ** (self.unit_pow % 4)

    def value(self) -> FieldElement:
        """Reassemble unit * prod p^e; exact round-trip."""
        out = self.unit()
        for p, e in self.primes:
            out = out * p**e
        return out

    def support(self):
        return tuple(p for p, _ in self.primes)

    def __str__(self):
        parts = []
        u = self.unit_pow % 4
        if u:
            parts.append({1: "i", 2: "-1", 3: "-i"}[u])
        for p, e in self.primes:
            parts.append(f"({p})" + (f"^{e}" if e != 1 else ""))
        return " * ".join(parts) if parts else "1"


def _prime_key(p: FieldElement):
    return (p.norm(), p.a, p.b)


def _factor_gaussian_integer(g, bound):
    """Factor a nonzero Gaussian integer (int pair) over canonical primes."""
    n = _g_norm(g)
    if n > bound * bound:
        raise FactorBoundExceeded(n)
    out = {}
    if n > 1:
        for p, e in sympy.factorint(n).items():
            p = int(p)
            if p == 2:
                pi = (1, 1)
                k = 0
                while True:
                    q, r = _g_divmod(g, pi)
                    if r != (0, 0):
                        break
                    g, k = q, k + 1
                if k:
                    out[(1, 1)] = out.get((1, 1), 0) + k
            elif p % 4 == 3:
                # inert: p^(e/2) divides g
                k = e // 2
                for _ in range(k):
                    q, r = _g_divmod(g, (p, 0))
                    assert r == (0, 0)
                    g = q
                out[(p, 0)] = out.get((p, 0), 0) + k
            else:
                pi = _split_prime(p)
                pib = _first_quadrant((pi[0], -pi[1]))
                for cand in (pi, pib):
                    while True:
                        q, r = _g_divmod(g, cand)
                        if r != (0, 0):
                            break
                        g = q
                        out[cand] = out.get(cand, 0) + 1
    # leftover must be a unit i^k
    assert _g_norm(g) == 1, "incomplete factorization"
    unit_pow = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}[g]
    return unit_pow, out


def factor(x: FieldElement, bound: int = DEFAULT_FACTOR_BOUND) -> GaussianFactorization:
    """Exact factorization of x in Q(i) over first-quadrant Gaussian primes.

    >>> str(factor(Fe(2)))
    '-1 * (1 + i)^2'
    >>> factor(Fe(1, 8)).support()
    (Fe(2 + i), Fe(2 + 3*i))
    """
    if x.field.d != 1:
        raise NotImplementedError("factorization is implemented for Q(i) only")
    if x.is_zero():
        raise ZeroDivisionError("cannot factor 0")
    den = x.a.denominator * x.b.denominator // gcd(x.a.denominator, x.b.denominator)
    num = (int(x.a * den), int(x.b * den))
    u_num, f_num = _factor_gaussian_integer(num, bound)
    u_den, f_den = _factor_gaussian_integer((den, 0), bound)
    for p, e in f_den.items():
        f_num[p] = f_num.get(p, 0) - e
    primes = tuple(
        sorted(
            ((Fe(p[0], p[1]), e) for p, e in f_num.items() if e != 0),
            key=lambda pe: _prime_key(pe[0]),
        )
    )
    fz = GaussianFactorization((u_num - u_den) % 4, primes)
    assert fz.value() == x, "factorization does not reassemble"
    return fz


def is_log_kernel(x: FieldElement) -> bool:
    """True iff x lies in the kernel of the logarithm map, i.e. N(x) = 1.

    For a quadratic imaginary field all archimedean absolute values of x
    equal 1 exactly when the norm is 1 (Pythagorean triplets in Q(i)).
    """
    if x.is_zero():
        raise ZeroDivisionError("0 is not in F^x")
    return x.norm() == 1


ZERO = Fe(0)
ONE = Fe(1)
I = Fe(0, 1)
