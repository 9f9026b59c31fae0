"""Cycle literals for the command line.

Grammar: a formal sum of generators ``(expr; expr; ...) * mult`` with
integer multiplicities (``* mult`` optional); each ``expr`` is built from
rational literals, ``i``, the parameters ``z``/``z1``/``z2`` and the
operators + - * / ^.  Coordinates must reduce to the supported factored
class: a constant, or c * prod of (z_k - a) and (z1 - z2) factors.

Exact round-trip with the printed forms of Const/Rat is guaranteed for
the supported class.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .cubical import DIAG, BoxPoint, Const, FormalCycle, Precycle, Rat
from .field import Fe, FieldElement

__all__ = ["ParseError", "parse_cycle", "parse_coordinate"]


class ParseError(ValueError):
    def __init__(self, message, pos=None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} (at position {pos})")


_TOKEN = re.compile(r"\s*(?:(\d+)|(z1|z2|z|i)\b|([+\-*/^();])|$)")


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok is None:
            break
        toks.append((tok, pos))
        pos = m.end()
    toks.append((None, len(text)))
    return toks


# -- bivariate polynomials over Q(i) -----------------------------------------
# dense-enough dict representation {(e1, e2): FieldElement}


def _p_const(c: FieldElement):
    return {} if c.is_zero() else {(0, 0): c}


def _p_add(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, Fe(0)) + v
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def _p_neg(a):
    return {k: -v for k, v in a.items()}


def _p_mul(a, b):
    out = {}
    for (e1, f1), v1 in a.items():
        for (e2, f2), v2 in b.items():
            k = (e1 + e2, f1 + f2)
            s = out.get(k, Fe(0)) + v1 * v2
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
    return out


class _RatFn:
    """num/den, both bivariate polynomials over Q(i)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num
        self.den = den if den is not None else _p_const(Fe(1))
        if not self.den:
            raise ParseError("division by zero")

    @classmethod
    def const(cls, c):
        return cls(_p_const(c))

    def __add__(self, o):
        return _RatFn(
            _p_add(_p_mul(self.num, o.den), _p_mul(o.num, self.den)),
            _p_mul(self.den, o.den),
        )

    def __neg__(self):
        return _RatFn(_p_neg(self.num), self.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        return _RatFn(_p_mul(self.num, o.num), _p_mul(self.den, o.den))

    def __truediv__(self, o):
        if not o.num:
            raise ParseError("division by zero")
        return _RatFn(_p_mul(self.num, o.den), _p_mul(self.den, o.num))

    def __pow__(self, k: int):
        if k < 0:
            return _RatFn(self.den, self.num) ** (-k)
        out = _RatFn.const(Fe(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def _expr_parser(toks):
    idx = 0

    def peek():
        return toks[idx][0]

    def take(expected=None):
        nonlocal idx
        tok, p = toks[idx]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, got {tok!r}", p)
        idx += 1
        return tok, p

    def atom():
        tok, p = toks[idx]
        if tok == "(":
            take("(")
            v = expr()
            take(")")
            return v
        if tok == "-":
            take()
            return -atom()
        if tok == "+":
            take()
            return atom()
        if tok == "i":
            take()
            return _RatFn.const(Fe(0, 1))
        if tok == "z" or tok == "z1":
            take()
            return _RatFn({(1, 0): Fe(1)})
        if tok == "z2":
            take()
            return _RatFn({(0, 1): Fe(1)})
        if tok is not None and tok.isdigit():
            take()
            return _RatFn.const(Fe(int(tok)))
        raise ParseError(f"unexpected token {tok!r}", p)

    def power():
        v = atom()
        while peek() == "^":
            take("^")
            neg = peek() == "-"
            if neg:
                take("-")
            e, p = take()
            if not e or not e.isdigit():
                raise ParseError("exponent must be an integer literal", p)
            v = v ** (-int(e) if neg else int(e))
        return v

    def term():
        v = power()
        while peek() in ("*", "/"):
            op, _ = take()
            w = power()
            v = v * w if op == "*" else v / w
        return v

    def expr():
        v = term()
        while peek() in ("+", "-"):
            op, _ = take()
            w = term()
            v = v + w if op == "+" else v - w
        return v

    return expr, take, peek


# -- factoring into the supported class ---------------------------------------


def _divisor_candidates(c: FieldElement):
    """All Gaussian-integer divisors of a nonzero element's numerator ideal,
    up to units (for rational root extraction)."""
    from .field import factor

    fz = factor(c)
    divs = [Fe(1)]
    for p, e in fz.primes:
        divs = [d * p**k for d in divs for k in range(abs(e) + 1)]
    return divs


def _univariate_roots(coeffs):
    """Roots in Q(i) of a univariate polynomial given low-to-high; raises
    ParseError unless it splits into linear factors."""
    cs = list(coeffs)
    while cs and cs[-1].is_zero():
        cs.pop()
    if not cs:
        raise ParseError("zero polynomial has no factored form")
    roots = []
    # strip roots at 0
    while cs[0].is_zero():
        roots.append(Fe(0))
        cs.pop(0)
    while len(cs) > 2:
        root = _find_root(cs)
        if root is None:
            raise ParseError("coordinate does not factor into F-linear factors")
        roots.append(root)
        cs = _deflate(cs, root)
    if len(cs) == 2:
        roots.append(-cs[0] / cs[1])
    return roots, cs[-1]


def _find_root(cs):
    # rational root theorem over Z[i]: clear denominators first
    den = Fe(1)
    for c in cs:
        den = den * Fe(c.a.denominator * c.b.denominator)
    ics = [c * den for c in cs]
    lead, const = ics[-1], ics[0]
    if const.is_zero():
        return Fe(0)
    units = [Fe(1), Fe(0, 1), Fe(-1), Fe(0, -1)]
    for p in _divisor_candidates(const):
        for q in _divisor_candidates(lead):
            for u in units:
                cand = u * p / q
                val = Fe(0)
                for c in reversed(cs):
                    val = val * cand + c
                if val.is_zero():
                    return cand
    return None


def _deflate(cs, root):
    """Synthetic division by (x - root); the remainder must vanish."""
    out = []
    acc = cs[-1]
    for k in range(len(cs) - 2, -1, -1):
        out.append(acc)
        acc = cs[k] + acc * root
    if not acc.is_zero():
        raise ParseError("internal deflation error")
    return list(reversed(out))


def _factor_bivariate(poly):
    """Factor into (constant, [(kind, root, exp)]) or raise ParseError."""
    if not poly:
        raise ParseError("coordinate is identically zero")
    factors = {}
    # monomial content
    m1 = min(e1 for (e1, _) in poly)
    m2 = min(e2 for (_, e2) in poly)
    if m1:
        factors[(1, Fe(0))] = m1
    if m2:
        factors[(2, Fe(0))] = m2
    poly = {(e1 - m1, e2 - m2): v for (e1, e2), v in poly.items()}
    # repeated division by (z1 - z2)
    while True:
        q = _divide_diag(poly)
        if q is None:
            break
        poly = q
        factors[(DIAG, None)] = factors.get((DIAG, None), 0) + 1
    only1 = all(e2 == 0 for (_, e2) in poly)
    only2 = all(e1 == 0 for (e1, _) in poly)
    if not (only1 or only2):
        raise ParseError("coordinate mixes parameters beyond the supported class")
    var = 1 if only1 else 2
    deg = max((e1 + e2) for (e1, e2) in poly)
    coeffs = [Fe(0)] * (deg + 1)
    for (e1, e2), v in poly.items():
        coeffs[e1 + e2] = v
    if deg == 0:
        const = coeffs[0]
    else:
        roots, lead = _univariate_roots(coeffs)
        const = lead
        for r in roots:
            key = (var, r)
            factors[key] = factors.get(key, 0) + 1
    return const, factors


def _divide_diag(poly):
    """Divide by (z1 - z2) if possible, else None."""
    rem = dict(poly)
    quot = {}
    # eliminate terms ordered by total degree, treating z1 as the lead
    while rem:
        (e1, e2) = max(rem, key=lambda k: (k[0], k[1]))
        if e1 == 0:
            return None
        c = rem[(e1, e2)]
        k = (e1 - 1, e2)
        quot[k] = quot.get(k, Fe(0)) + c
        # subtract c * z1^(e1-1) z2^e2 * (z1 - z2)
        for kk, vv in (((e1, e2), c), ((e1 - 1, e2 + 1), -c)):
            s = rem.get(kk, Fe(0)) - vv
            if s.is_zero():
                rem.pop(kk, None)
            else:
                rem[kk] = s
    return quot


def parse_coordinate(text: str):
    """Parse one coordinate expression to Const or Rat."""
    toks = _tokenize(text)
    expr, take, peek = _expr_parser(toks)
    v = expr()
    tok, p = toks[0] if False else (peek(), None)
    if tok is not None:
        raise ParseError(f"trailing input {tok!r}")
    return _to_coordinate(v)


def _to_coordinate(v: _RatFn):
    cn, fn = _factor_bivariate(v.num)
    cd, fd = _factor_bivariate(v.den)
    c = cn / cd
    factors = dict(fn)
    for k, e in fd.items():
        factors[k] = factors.get(k, 0) - e
    factors = {k: e for k, e in factors.items() if e}
    if not factors:
        if c.is_one():
            raise ParseError("coordinate is identically 1 (outside box)")
        return Const(c)
    return Rat(c, tuple((k[0], k[1], e) for k, e in factors.items()))


def parse_cycle(text: str) -> FormalCycle:
    """Parse a formal combination of generators.

    ``(z; 1 - (2+3*i)*(z)^-1; 1 - z)`` is the Totaro curve at 2+3i;
    multiplicities attach as ``* mult`` and generators combine with +/-.
    """
    toks = _tokenize(text)
    idx = 0

    def peek():
        return toks[idx][0]

    def take(expected=None):
        nonlocal idx
        tok, p = toks[idx]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, got {tok!r}", p)
        idx += 1
        return tok, p

    def generator():
        # capture the parenthesized coordinate list by token slicing
        nonlocal idx
        take("(")
        depth = 1
        parts = [[]]
        while depth > 0:
            tok, p = toks[idx]
            if tok is None:
                raise ParseError("unterminated generator", p)
            if tok == "(":
                depth += 1
            elif tok == ")":
                depth -= 1
                if depth == 0:
                    idx += 1
                    break
            elif tok == ";" and depth == 1:
                parts.append([])
                idx += 1
                continue
            parts[-1].append((tok, p))
            idx += 1
        coords = []
        for part in parts:
            sub = part + [(None, 0)]
            expr, _, speek = _expr_parser(sub)
            v = expr()
            if speek() is not None:
                raise ParseError("trailing input in coordinate")
            coords.append(_to_coordinate(v))
        mult = 1
        if peek() == "*":
            take("*")
            sign = 1
            if peek() == "-":
                take("-")
                sign = -1
            tok, p = take()
            if not tok or not tok.isdigit():
                raise ParseError("multiplicity must be an integer", p)
            mult = sign * int(tok)
        if all(isinstance(c, Const) for c in coords):
            gen = BoxPoint(tuple(c.value for c in coords))
        else:
            gen = Precycle(tuple(coords))
        return gen, mult

    total = None
    sign = 1
    while True:
        tok = peek()
        if tok == "+":
            take()
            sign = 1
            continue
        if tok == "-":
            take()
            sign = -1
            continue
        if tok == "(":
            gen, mult = generator()
            fc = FormalCycle.of(gen, sign * mult)
            total = fc if total is None else total + fc
            sign = 1
            continue
        if tok is None:
            break
        raise ParseError(f"unexpected token {tok!r}")
    if total is None:
        raise ParseError("empty cycle literal")
    return total
