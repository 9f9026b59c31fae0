"""Steinberg decomposition in Lambda^2(F^x tensor Q) for F = Q(i).

The pairing (alpha, beta)_{1,1} factors through the wedge class of
alpha tensor beta: multilinearity, the symmetric relations and the
alpha ^ (-alpha) relations all map to zero under the regulator, so the
engine works directly in Lambda^2 of the free Q-vector space on the
first-quadrant Gaussian primes (units are torsion and vanish).

``decompose`` expresses alpha ^ beta as a rational combination of
Steinberg atoms gamma ^ (1 - gamma) harvested from S-unit-like pairs;
it is a semi-decision procedure: no completeness is claimed, a rank
deficit is reported honestly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .field import DEFAULT_FACTOR_BOUND, Fe, FieldElement, factor

__all__ = [
    "MultSupportVector",
    "WedgeClass",
    "SteinbergDecomposition",
    "DecompositionError",
    "support_vector",
    "wedge",
    "harvest",
    "decompose",
]


class DecompositionError(ValueError):
    """The wedge class is not in the span of the harvested atoms."""

    def __init__(self, message, rank=None, unknowns=None):
        super().__init__(message)
        self.rank = rank
        self.unknowns = unknowns


@dataclass(frozen=True)
class MultSupportVector:
    """x in F^x tensor Q as a sparse rational vector over canonical primes."""

    entries: tuple  # tuple[(FieldElement prime, Fraction exp)], sorted

    @classmethod
    def of(cls, x: FieldElement, bound=DEFAULT_FACTOR_BOUND) -> "MultSupportVector":
        fz = factor(x, bound)
        return cls(tuple((p, Fraction(e)) for p, e in fz.primes))

    def as_dict(self):
        return dict(self.entries)

    def __add__(self, other):
        out = self.as_dict()
        for p, e in other.entries:
            out[p] = out.get(p, Fraction(0)) + e
        return MultSupportVector(_sorted_entries(out))

    def support(self):
        return tuple(p for p, _ in self.entries)


def _prime_key(p: FieldElement):
    return (p.norm(), p.a, p.b)


def _sorted_entries(d):
    return tuple(sorted(((p, e) for p, e in d.items() if e != 0), key=lambda t: _prime_key(t[0])))


def support_vector(x: FieldElement, bound=DEFAULT_FACTOR_BOUND) -> MultSupportVector:
    return MultSupportVector.of(x, bound)


@dataclass(frozen=True)
class WedgeClass:
    """Element of Lambda^2(F^x tensor Q): sparse over unordered prime pairs.

    Keys are ordered pairs (p, q) with p < q in the canonical prime order;
    antisymmetry is built into the indexing.
    """

    entries: tuple  # tuple[((p, q), Fraction)], sorted

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def from_vectors(cls, v: MultSupportVector, w: MultSupportVector) -> "WedgeClass":
        acc = {}
        for p, e in v.entries:
            for q, f in w.entries:
                kp, kq = _prime_key(p), _prime_key(q)
                if kp == kq:
                    continue
                if kp < kq:
                    key, c = (p, q), e * f
                else:
                    key, c = (q, p), -e * f
                acc[key] = acc.get(key, Fraction(0)) + c
        return cls(_sorted_pairs(acc))

    def as_dict(self):
        return dict(self.entries)

    def __add__(self, other):
        out = self.as_dict()
        for k, c in other.entries:
            out[k] = out.get(k, Fraction(0)) + c
        return WedgeClass(_sorted_pairs(out))

    def __neg__(self):
        return WedgeClass(tuple((k, -c) for k, c in self.entries))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "WedgeClass":
        c = Fraction(c)
        if c == 0:
            return WedgeClass.zero()
        return WedgeClass(tuple((k, c * e) for k, e in self.entries))

    def is_zero(self):
        return not self.entries

    def __str__(self):
        if not self.entries:
            return "0"
        return " + ".join(f"({c})*({p})^({q})" for (p, q), c in self.entries)


def _sorted_pairs(d):
    return tuple(
        sorted(
            ((k, c) for k, c in d.items() if c != 0),
            key=lambda t: (_prime_key(t[0][0]), _prime_key(t[0][1])),
        )
    )


def wedge(alpha: FieldElement, beta: FieldElement, bound=DEFAULT_FACTOR_BOUND) -> WedgeClass:
    """The class of alpha ^ beta; units and torsion drop out exactly."""
    if alpha.is_zero() or beta.is_zero():
        raise ZeroDivisionError("wedge needs nonzero elements")
    return WedgeClass.from_vectors(support_vector(alpha, bound), support_vector(beta, bound))


# ---------------------------------------------------------------------------
# harvesting Steinberg atoms


def _prime_complex(p: FieldElement):
    return complex(int(p.a), int(p.b))


def _smooth_integers(primes, height):
    """All unit * prod p^e in Z[i] with |Re|, |Im| <= height (e >= 0)."""
    units = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    seen = {(1, 0): None}
    frontier = [(1, 0)]
    pvals = [(int(p.a), int(p.b)) for p in primes]
    while frontier:
        new = []
        for g in frontier:
            for pa, pb in pvals:
                h = (g[0] * pa - g[1] * pb, g[0] * pb + g[1] * pa)
                if abs(h[0]) > 2 * height or abs(h[1]) > 2 * height:
                    continue
                if h not in seen:
                    seen[h] = None
                    new.append(h)
        frontier = new
    out = set()
    for g in seen:
        for u in units:
            h = (g[0] * u[0] - g[1] * u[1], g[0] * u[1] + g[1] * u[0])
            if abs(h[0]) <= height and abs(h[1]) <= height:
                out.add(h)
    return sorted(out)


def harvest(S, height: int, bound=DEFAULT_FACTOR_BOUND):
    """All gamma with supp(gamma), supp(1 - gamma) inside S and numerator /
    denominator coordinates bounded by ``height``.

    S is an iterable of canonical Gaussian primes.  The output is sorted
    and deduplicated; it is conjugation-closed whenever S is.
    """
    S = tuple(sorted(set(S), key=_prime_key))
    smooth = _smooth_integers(S, height)
    sset = set(smooth)
    out = set()
    for num in smooth:
        if num == (0, 0):
            continue
        for den in smooth:
            if den == (0, 0):
                continue
            # gamma = num/den; 1 - gamma = (den - num)/den
            diff = (den[0] - num[0], den[1] - num[1])
            if diff == (0, 0):
                continue
            if diff not in sset:
                # the difference may exceed the height box yet still be
                # S-smooth; check by factoring
                try:
                    fz = factor(Fe(diff[0], diff[1]), bound)
                except Exception:
                    continue
                if any(p not in S for p, _ in fz.primes):
                    continue
            g = Fe(num[0], num[1]) / Fe(den[0], den[1])
            if g.is_zero() or g.is_one():
                continue
            out.add(g)
    return sorted(out, key=lambda g: (g.norm(), g.a, g.b))


# ---------------------------------------------------------------------------
# exact linear solve (fraction-free elimination)


def _solve_exact(columns, rhs, keys):
    """Solve sum_j c_j columns[j] = rhs over Q.

    ``columns`` and ``rhs`` are dicts key -> Fraction over the row index
    set ``keys`` (a sorted list).  Returns {j: Fraction} with free
    unknowns fixed at zero, or raises DecompositionError.  Elimination is
    fraction-free (Bareiss-style on the integer-cleared matrix) with
    lexicographic pivoting, so the result is deterministic.
    """
    rowidx = {k: r for r, k in enumerate(keys)}
    m, n = len(keys), len(columns)
    den = 1
    for col in list(columns) + [rhs]:
        for v in col.values():
            den = den * v.denominator // gcd(den, v.denominator)
    A = [[0] * (n + 1) for _ in range(m)]
    for j, col in enumerate(columns):
        for k, v in col.items():
            A[rowidx[k]][j] = int(v * den)
    for k, v in rhs.items():
        A[rowidx[k]][n] = int(v * den)

    piv_rows = []
    piv_cols = []
    r = 0
    for c in range(n):
        sel = next((rr for rr in range(r, m) if A[rr][c] != 0), None)
        if sel is None:
            continue
        A[r], A[sel] = A[sel], A[r]
        ar = A[r]
        p = ar[c]
        for rr in range(m):
            if rr == r:
                continue
            arr = A[rr]
            f = arr[c]
            if f == 0:
                continue
            for cc in range(n + 1):
                arr[cc] = arr[cc] * p - f * ar[cc]
            g = 0
            for cc in range(n + 1):
                g = gcd(g, arr[cc])
            if g > 1:
                for cc in range(n + 1):
                    arr[cc] //= g
        piv_rows.append(r)
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    # rows beyond the pivot block must have zero RHS
    for rr in range(r, m):
        if any(A[rr][cc] != 0 for cc in range(n)):
            continue
        if A[rr][n] != 0:
            raise DecompositionError(
                "wedge class outside the span of the harvested atoms "
                "(enlarge the prime set or the height bound)",
                rank=r,
                unknowns=n,
            )
    sol = {}
    for r_, c_ in reversed(list(zip(piv_rows, piv_cols))):
        acc = Fraction(A[r_][n])
        for c2 in range(c_ + 1, n):
            if A[r_][c2] and c2 in sol:
                acc -= A[r_][c2] * sol[c2]
        sol[c_] = acc / A[r_][c_]
    for rr in range(r, m):
        lhs = sum((Fraction(A[rr][c2]) * sol.get(c2, Fraction(0)) for c2 in range(n)), Fraction(0))
        if lhs != A[rr][n]:
            raise DecompositionError(
                "wedge class outside the span of the harvested atoms "
                "(enlarge the prime set or the height bound)",
                rank=r,
                unknowns=n,
            )
    return {j: v for j, v in sol.items() if v != 0}


@dataclass(frozen=True)
class SteinbergDecomposition:
    """N * (alpha ^ beta) = sum N c_gamma (gamma ^ (1 - gamma)), exactly."""

    alpha: FieldElement
    beta: FieldElement
    denominator: int
    atoms: tuple  # tuple[(gamma, Fraction c_gamma)]

    def verify(self, bound=DEFAULT_FACTOR_BOUND) -> bool:
        """Re-verify the certificate from fresh factorizations."""
        total = WedgeClass.zero()
        for g, c in self.atoms:
            total = total + wedge(g, Fe(1) - g, bound).scale(c)
        return total.as_dict() == wedge(self.alpha, self.beta, bound).as_dict()

    def __str__(self):
        body = " + ".join(f"({c})*[{g} ^ 1-({g})]" for g, c in self.atoms)
        return f"({self.alpha}) ^ ({self.beta}) = {body}  [N = {self.denominator}]"


def decompose(
    alpha: FieldElement,
    beta: FieldElement,
    S=None,
    height: int = 20,
    bound=DEFAULT_FACTOR_BOUND,
    allow_shortcut: bool = True,
) -> SteinbergDecomposition:
    """Express alpha ^ beta as a rational combination of Steinberg atoms.

    S defaults to the union of the supports of alpha, beta, 1 - alpha
    (conjugation-closed closure); atoms are harvested below the height
    bound and the sparse system is solved exactly.  The returned
    certificate has been re-verified before returning.
    """
    if allow_shortcut and Fe(1) - alpha == beta:
        dec = SteinbergDecomposition(alpha, beta, 1, ((alpha, Fraction(1)),))
        assert dec.verify(bound)
        return dec
    target = wedge(alpha, beta, bound)
    if S is None:
        S = set()
        for x in (alpha, beta, Fe(1) - alpha):
            if not x.is_zero():
                S.update(factor(x, bound).support())
        S = _conjugation_closure(S)
    S = tuple(sorted(set(S), key=_prime_key))
    if any(_pair_outside(k, S) for k, _ in target.entries):
        raise DecompositionError("wedge(alpha, beta) has support outside S")
    gammas = harvest(S, height, bound)
    atoms = []
    cols = []
    for g in gammas:
        w = wedge(g, Fe(1) - g, bound)
        if w.is_zero():
            continue  # unit-like atoms span the regulator direction only
        atoms.append(g)
        cols.append(w.as_dict())
    keys = sorted(
        {k for col in cols for k in col} | set(target.as_dict()),
        key=lambda t: (_prime_key(t[0]), _prime_key(t[1])),
    )
    sol = _solve_exact(cols, target.as_dict(), keys)
    coeffs = tuple((atoms[j], c) for j, c in sorted(sol.items()))
    N = 1
    for _, c in coeffs:
        N = N * c.denominator // gcd(N, c.denominator)
    dec = SteinbergDecomposition(alpha, beta, N, coeffs)
    if not dec.verify(bound):
        raise DecompositionError("certificate failed re-verification")  # pragma: no cover
    return dec


def _conjugation_closure(S):
    out = set(S)
    for p in list(out):
        q = p.conj()
        fz = factor(q)
        out.update(fz.support())
    return out


def _pair_outside(key, S):
    p, q = key
    return p not in S or q not in S
