"""Symbolic Wang forms: W_n = prod_a lambda_a in the basis
{(eps+1), (eps-1), d(eps)} tensor {dt_a/t_a, dtbar_a/tbar_a, log t_a tbar_a}.

Each one-slot form is

    lambda = -1/2 [ (eps+1) w + (eps-1) wb + d(eps) l ],

with w = dt/t, wb = dtbar/tbar odd and l = log t tbar even.  The algebra
is exact: eps-polynomials have Fraction coefficients and products carry
Koszul signs (d(eps) and the one-forms anticommute).

Restricting to a parametrized curve maps w_a to g_a(z) dz and wb_a to
conj(g_a(z)) dzbar with g_a = f_a'/f_a, so only words with exactly one w
and one wb survive as two-forms; the builder below emits the resulting
integrand terms for the numerical regulator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["EPoly", "Term", "wang_form", "de_coefficient", "two_form_terms"]

W, WB, L = "w", "wb", "l"
_ODD = {W: 1, WB: 1, L: 0}
_RANK = {W: 0, WB: 1, L: 2}


@dataclass(frozen=True)
class EPoly:
    """Exact polynomial in eps with Fraction coefficients."""

    coeffs: tuple

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return EPoly(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other):
        if isinstance(other, EPoly):
            if not self.coeffs or not other.coeffs:
                return EPoly(())
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for k, a in enumerate(self.coeffs):
                for m, b in enumerate(other.coeffs):
                    out[k + m] += a * b
            return EPoly(tuple(out))
        return EPoly(tuple(Fraction(other) * c for c in self.coeffs))

    __rmul__ = __mul__

    def __neg__(self):
        return EPoly(tuple(-c for c in self.coeffs))

    def is_zero(self):
        return not self.coeffs

    def integral01(self) -> Fraction:
        return sum((c / (k + 1) for k, c in enumerate(self.coeffs)), Fraction(0))

    def eval(self, x: Fraction) -> Fraction:
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out


def _canonical(word):
    """Sort letters by (slot, rank), tracking the Koszul sign.

    Returns (sign, tuple) or (0, ()) when an odd letter repeats.
    """
    letters = list(word)
    sign = 1
    # insertion sort, counting transpositions of odd pairs
    for k in range(1, len(letters)):
        m = k
        while m > 0 and (letters[m - 1][0], _RANK[letters[m - 1][1]]) > (
            letters[m][0],
            _RANK[letters[m][1]],
        ):
            if _ODD[letters[m - 1][1]] and _ODD[letters[m][1]]:
                sign = -sign
            letters[m - 1], letters[m] = letters[m], letters[m - 1]
            m -= 1
    for a, b in zip(letters, letters[1:]):
        if a == b and _ODD[a[1]]:
            return 0, ()
    return sign, tuple(letters)


@dataclass(frozen=True)
class Term:
    """eps-polynomial times d(eps)^de times a word of one-slot symbols."""

    poly: EPoly
    de: bool
    word: tuple  # tuple[(slot, symbol)]

    def form_degree(self) -> int:
        return sum(_ODD[s] for _, s in self.word)


def _merge(terms):
    acc = {}
    for t in terms:
        key = (t.de, t.word)
        acc[key] = acc.get(key, EPoly(())) + t.poly
    return [Term(p, de, w) for (de, w), p in acc.items() if not p.is_zero()]


def multiply(a, b):
    """Product of two term lists with Koszul signs."""
    out = []
    for t1 in a:
        d1 = t1.form_degree()
        for t2 in b:
            if t1.de and t2.de:
                continue
            # move t2's d(eps) past t1's word (degree d1)
            sign = -1 if (t2.de and d1 % 2) else 1
            csign, word = _canonical(t1.word + t2.word)
            if csign == 0:
                continue
            out.append(
                Term(csign * sign * (t1.poly * t2.poly), t1.de or t2.de, word)
            )
    return _merge(out)


def lam(slot: int):
    """The one-slot form lambda at the given slot, as a term list."""
    half = Fraction(-1, 2)
    return [
        Term(EPoly((half, half)), False, ((slot, W),)),       # -1/2 (eps+1) w
        Term(EPoly((-half, half)), False, ((slot, WB),)),     # -1/2 (eps-1) wb
        Term(EPoly((half,)), True, ((slot, L),)),             # -1/2 d(eps) l
    ]


def wang_form(n: int):
    """W_n = lambda_1 ... lambda_n as an exact term list."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    terms = [Term(EPoly((Fraction(1),)), False, ())]
    for slot in range(1, n + 1):
        terms = multiply(terms, lam(slot))
    return terms


def de_coefficient(terms):
    """The d(eps)-part, as a term list with the d(eps) stripped."""
    return [Term(t.poly, False, t.word) for t in terms if t.de]


def two_form_terms(terms, de: bool):
    """Terms of form degree two with the requested d(eps) flag, decomposed.

    Yields (epoly, log_slots, w_slot, wb_slot, sign) where the word is
    sign * w_(w_slot) wb_(wb_slot) * prod log_(k): exactly the terms that
    survive restriction to a one-parameter curve (words with two
    holomorphic or two antiholomorphic letters die there).
    """
    out = []
    for t in terms:
        if t.de != de or t.form_degree() != 2:
            continue
        ws = [slot for slot, s in t.word if s == W]
        wbs = [slot for slot, s in t.word if s == WB]
        if len(ws) != 1 or len(wbs) != 1:
            continue
        logs = tuple(slot for slot, s in t.word if s == L)
        # reorder the stored word to w first, wb second
        stored = [(slot, s) for slot, s in t.word if s != L]
        sign = 1
        if stored[0][1] == WB:
            sign = -1
        out.append((t.poly, logs, ws[0], wbs[0], sign))
    return out
