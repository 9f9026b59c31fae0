"""The cubical Bloch complex over Spec F at desk scale.

Cube coordinates live in box = P^1 \\ {1}; faces sit at 0 and infinity.
Pre-cycles are parametrized loci (points, curves, surfaces) whose
coordinates are constants or factored rational functions of one of at
most two parameters, plus the diagonal factor (z1 - z2) needed by the
weight-three Totaro-type surfaces.  Faces, boundaries, normalization
tests, products, the h_j pullbacks and the commutativity homotopy are
all exact symbolic operations.

Sign conventions: the chain differential is sum_{i,j} (-1)^(i+j) d_i^j;
on normalized cycles (all infinity-faces zero) this reduces to
sum_i (-1)^i d_i^0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import Fe, FieldElement

__all__ = [
    "INF",
    "DIAG",
    "AdmissibilityError",
    "UnsupportedShapeError",
    "BoxPoint",
    "Const",
    "Rat",
    "rat1",
    "Precycle",
    "curve",
    "FormalCycle",
    "face",
    "boundary",
    "is_normalized",
    "is_refined_normalized",
    "h_pullback",
    "product",
    "commutativity_homotopy",
    "is_degenerate",
    "conj_cycle",
    "totaro_curve",
    "multilinearity_curve",
    "quartic_curve",
    "z_generator",
    "weight3_surfaces",
    "coface",
    "codegeneracy",
    "h_coord",
]

DIAG = 0  # factor kind for (z1 - z2); kinds 1, 2 are the parameters


class _Infinity:
    """The point at infinity of P^1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"


INF = _Infinity()


class AdmissibilityError(ValueError):
    """The cycle fails a properness requirement for this operation."""


class UnsupportedShapeError(ValueError):
    """The result does not stay inside the supported symbolic class."""


def _is_one(v) -> bool:
    return v is not INF and v.is_one()


class _Marker:
    """Internal marker: a coordinate restricting to a constant 1, 0 or inf."""

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


_ONE_MARKER = _Marker("ONE")
_FACE_MARKER = _Marker("FACE")  # restriction is identically 0 or infinity


# ---------------------------------------------------------------------------
# coordinates


@dataclass(frozen=True)
class Const:
    """A constant coordinate; any value of box (never 1)."""

    value: object  # FieldElement | INF

    def __post_init__(self):
        if _is_one(self.value):
            raise ValueError("coordinate constantly 1 lies outside box")

    def params(self):
        return frozenset()

    def conj(self):
        return Const(self.value if self.value is INF else self.value.conj())

    def __str__(self):
        return str(self.value)


def _root_key(kind, root):
    if kind == DIAG:
        return (0, Fraction(0), Fraction(0))
    return (kind, root.a, root.b)


@dataclass(frozen=True)
class Rat:
    """c * prod(factor^exp) with factors (z_k - a) or (z1 - z2).

    ``factors`` is a sorted tuple of (kind, root, exp): kind 1 or 2 names
    the parameter (root a FieldElement), kind DIAG is (z1 - z2) with root
    None.  Exponents are nonzero; roots are distinct per kind.
    """

    c: FieldElement
    factors: tuple

    def __post_init__(self):
        if self.c.is_zero():
            raise ValueError("constant part must be nonzero")
        if not self.factors:
            raise ValueError("use Const for factor-free coordinates")
        seen = set()
        for kind, root, exp in self.factors:
            if exp == 0:
                raise ValueError("zero exponent")
            key = _root_key(kind, root)
            if key in seen:
                raise ValueError("duplicate factor")
            seen.add(key)
        object.__setattr__(
            self,
            "factors",
            tuple(sorted(self.factors, key=lambda f: _root_key(f[0], f[1]))),
        )

    def params(self):
        out = set()
        for kind, _, _ in self.factors:
            out.update((1, 2) if kind == DIAG else (kind,))
        return frozenset(out)

    def degree(self, param: int) -> int:
        """Total degree in the given parameter (order of pole at infinity)."""
        return sum(e for k, _, e in self.factors if k == param or k == DIAG)

    # -- curve evaluation ---------------------------------------------------

    def eval_at(self, v):
        """Value at parameter = v for a one-parameter coordinate."""
        assert self.params() <= {1}
        if v is INF:
            d = self.degree(1)
            if d > 0:
                return INF
            if d < 0:
                return Fe(0)
            return self.c
        vanish = sum(e for _, a, e in self.factors if a == v)
        if vanish > 0:
            return Fe(0)
        if vanish < 0:
            return INF
        out = self.c
        for _, a, e in self.factors:
            out = out * (v - a) ** e
        return out

    def zeros_and_poles(self):
        """Divisor on P^1 for a one-parameter coordinate: [(place, order)]."""
        assert self.params() <= {1}
        div = [(a, e) for _, a, e in self.factors]
        d = self.degree(1)
        if d != 0:
            div.append((INF, -d))
        return div

    # -- substitution (surface cuts) ------------------------------------------

    def substitute(self, param: int, v):
        """Restrict to the line {z_param = v}; returns Const/Rat in z1,
        or ONE / FACE markers when the restriction is constantly 1 resp.
        constantly 0/infinity.

        The surviving parameter is relabeled to 1.  v may be INF.
        """
        diag_sign = 1 if param == 1 else -1  # (z1-z2) ~ +z1 resp. -z2 at infinity
        if v is INF:
            if self.degree(param) != 0:
                return _FACE_MARKER
            c = self.c
            new = []
            for kind, a, e in self.factors:
                if kind == param:
                    continue  # leading coefficient 1
                if kind == DIAG:
                    if diag_sign < 0 and e % 2:
                        c = -c
                    continue  # leading coefficient +-1, no root survives
                new.append((1, a, e))
            return _merge_coord(c, new)
        # finite cut value: fold param-factors into the constant, turn the
        # diagonal into the linear factor (z - v)
        c = self.c
        new = []
        for kind, a, e in self.factors:
            if kind == param:
                t = v - a
                if t.is_zero():
                    return _FACE_MARKER
                c = c * t**e
            elif kind == DIAG:
                if param == 1 and e % 2:
                    c = -c  # (v - z2) = -(z2 - v)
                new.append((1, v, e))
            else:
                new.append((1, a, e))
        return _merge_coord(c, new)

    def substitute_diagonal(self):
        """Restrict to {z1 = z2}, relabeling to parameter 1."""
        for kind, _, _ in self.factors:
            if kind == DIAG:
                return _FACE_MARKER
        return _merge_coord(self.c, [(1, a, e) for _, a, e in self.factors])

    def conj(self):
        return Rat(
            self.c.conj(),
            tuple((k, None if k == DIAG else a.conj(), e) for k, a, e in self.factors),
        )

    def __str__(self):
        parts = [] if self.c.is_one() else [f"({self.c})"]
        one_param = self.params() <= {1}
        for kind, a, e in self.factors:
            if kind == DIAG:
                base = "(z1 - z2)"
            else:
                var = "z" if one_param else f"z{kind}"
                if a.is_zero():
                    base = var
                else:
                    astr = str(a)
                    if any(s in astr[1:] for s in "+-"):
                        astr = f"({astr})"
                    base = f"({var} - {astr})"
            parts.append(base + (f"^{e}" if e != 1 else ""))
        return "*".join(parts) if parts else str(self.c)


def _merge_coord(c: FieldElement, factors):
    """Combine repeated roots, drop zero exponents, demote to Const/ONE."""
    merged = {}
    order = []
    for kind, a, e in factors:
        key = (kind, a.a, a.b)
        if key not in merged:
            order.append(key)
            merged[key] = [kind, a, 0]
        merged[key][2] += e
    out = tuple(tuple(merged[k]) for k in order if merged[k][2] != 0)
    if not out:
        return _ONE_MARKER if _is_one(c) else Const(c)
    return Rat(c, out)


def rat1(c, *factors) -> Rat:
    """One-parameter coordinate c * prod (z - a)^m; factors are (a, m)."""
    return Rat(
        c if isinstance(c, FieldElement) else Fe(c),
        tuple((1, a if isinstance(a, FieldElement) else Fe(a), m) for a, m in factors),
    )


# ---------------------------------------------------------------------------
# generators


@dataclass(frozen=True)
class BoxPoint:
    """A closed point of box^n; coordinates never equal 1."""

    coords: tuple  # tuple[FieldElement | INF]

    def __post_init__(self):
        for v in self.coords:
            if _is_one(v):
                raise ValueError("box excludes the point 1")

    @property
    def n(self):
        return len(self.coords)

    @property
    def codim(self):
        return len(self.coords)

    def on_any_face(self) -> bool:
        return any(v is INF or v.is_zero() for v in self.coords)

    def conj(self):
        return BoxPoint(tuple(v if v is INF else v.conj() for v in self.coords))

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.coords) + ")"


def box_point(*values) -> BoxPoint:
    return BoxPoint(tuple(v if v is INF or isinstance(v, FieldElement) else Fe(v) for v in values))


@dataclass(frozen=True)
class Precycle:
    """A parametrized irreducible pre-cycle in box^n (arity 1 or 2)."""

    coords: tuple  # tuple[Const | Rat]
    multiplicity: int = 1

    @property
    def n(self):
        return len(self.coords)

    @property
    def arity(self):
        return len(self.params_used())

    @property
    def codim(self):
        return self.n - self.arity

    def params_used(self):
        out = set()
        for c in self.coords:
            out |= c.params()
        return out

    def unit(self) -> "Precycle":
        return Precycle(self.coords, 1) if self.multiplicity != 1 else self

    def conj(self):
        return Precycle(tuple(c.conj() for c in self.coords), self.multiplicity)

    def __str__(self):
        body = "(" + "; ".join(str(c) for c in self.coords) + ")"
        return body if self.multiplicity == 1 else f"{body}*{self.multiplicity}"


def curve(*coords) -> Precycle:
    """Build an arity-1 pre-cycle; coords are Const/Rat or constants."""
    out = []
    for c in coords:
        if isinstance(c, (Const, Rat)):
            out.append(c)
        elif isinstance(c, FieldElement) or c is INF:
            out.append(Const(c))
        else:
            out.append(Const(Fe(c)))
    return Precycle(tuple(out))


# ---------------------------------------------------------------------------
# formal cycles


class FormalCycle:
    """Exact integer combination of generators of fixed (dimension, codim)."""

    __slots__ = ("n", "p", "terms")

    def __init__(self, n: int, p: int, terms=None):
        self.n = n
        self.p = p
        self.terms = {}
        if terms:
            for g, m in terms.items() if isinstance(terms, dict) else terms:
                self._add(g, m)

    def _add(self, gen, mult: int):
        if isinstance(gen, Precycle):
            mult *= gen.multiplicity
            gen = gen.unit()
        elif not isinstance(gen, BoxPoint):
            raise TypeError(f"not a generator: {gen!r}")
        if gen.n != self.n or gen.codim != self.p:
            raise ValueError(
                f"generator grading ({gen.n},{gen.codim}) does not match "
                f"cycle grading ({self.n},{self.p})"
            )
        if mult == 0:
            return
        new = self.terms.get(gen, 0) + mult
        if new:
            self.terms[gen] = new
        else:
            del self.terms[gen]

    @classmethod
    def zero(cls, n: int, p: int) -> "FormalCycle":
        return cls(n, p)

    @classmethod
    def of(cls, gen, mult: int = 1) -> "FormalCycle":
        return cls(gen.n, gen.codim, [(gen, mult)])

    def __add__(self, other):
        if not isinstance(other, FormalCycle):
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        if (self.n, self.p) != (other.n, other.p):
            raise ValueError("grading mismatch")
        out = FormalCycle(self.n, self.p, dict(self.terms))
        for g, m in other.terms.items():
            out._add(g, m)
        return out

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return FormalCycle(self.n, self.p)
        return FormalCycle(self.n, self.p, {g: k * m for g, m in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, FormalCycle):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return (self.n, self.p) == (other.n, other.p) and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.p, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def generators(self):
        return sorted(self.terms, key=str)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for g in self.generators():
            m = self.terms[g]
            bits.append(str(g) if m == 1 else f"{m}*{g}")
        return " + ".join(bits).replace("+ -", "- ")

    __repr__ = __str__


# ---------------------------------------------------------------------------
# faces and boundary


def _face_of_point(pt: BoxPoint, i: int, j: int):
    v = pt.coords[i - 1]
    on = (v is INF) if j == 1 else (v is not INF and v.is_zero())
    if on:
        raise AdmissibilityError(f"point {pt} lies on the face ({i},{j})")
    return []


def _face_of_curve(pc: Precycle, i: int, j: int):
    coord = pc.coords[i - 1]
    rest = pc.coords[: i - 1] + pc.coords[i:]
    if isinstance(coord, Const):
        hit = (coord.value is INF) if j == 1 else (coord.value is not INF and coord.value.is_zero())
        if hit:
            # the whole curve lies inside the face: honest set-theoretic
            # intersection (occurs only for improper pre-cycles)
            return [(Precycle(rest, 1), 1)]
        return []
    out = []
    fiber = [(place, o) for place, o in coord.zeros_and_poles() if (o > 0) == (j == 0)]
    for place, o in fiber:
        vals = []
        discard = False
        for c in rest:
            if isinstance(c, Const):
                vals.append(c.value)
            else:
                v = c.eval_at(place)
                if _is_one(v):
                    discard = True
                    break
                vals.append(v)
        if discard:
            continue
        out.append((BoxPoint(tuple(vals)), abs(o)))
    return out


def _surface_cut_loci(coord: Rat, j: int):
    """Components of {coord = 0} (j=0) / {coord = inf} (j=1): (locus, order).

    A locus is ('line', param, value-or-INF) or ('diag',).
    """
    want_pos = j == 0
    loci = []
    diag_e = 0
    for kind, a, e in coord.factors:
        if kind == DIAG:
            diag_e += e
        elif (e > 0) == want_pos:
            loci.append((("line", kind, a), abs(e)))
    if diag_e and (diag_e > 0) == want_pos:
        loci.append((("diag",), abs(diag_e)))
    for param in (1, 2):
        o = -coord.degree(param)  # order of vanishing at z_param = inf
        if o and (o > 0) == want_pos:
            loci.append((("line", param, INF), abs(o)))
    return loci


def _relabel_to_param1(c: Rat) -> Rat:
    return Rat(c.c, tuple((1, a, e) for _, a, e in c.factors))


def _restrict_surface(pc: Precycle, drop: int, locus):
    """Cut the surface along the locus, dropping slot ``drop`` (1-based).

    Returns the resulting curve generator, or None when the curve escapes
    box (a coordinate restricts to 1).
    """
    new = []
    improper = False
    for idx, c in enumerate(pc.coords, start=1):
        if idx == drop:
            continue
        if isinstance(c, Const):
            new.append(c)
            continue
        if locus[0] == "diag":
            r = c.substitute_diagonal()
        else:
            _, param, v = locus
            r = c.substitute(param, v) if param in c.params() else _relabel_to_param1(c)
        if r is _ONE_MARKER:
            return None  # the cut escapes box: no face component
        if r is _FACE_MARKER:
            improper = True
            continue
        new.append(r)
    if improper:
        raise AdmissibilityError(
            "surface face lies inside a face of the smaller cube (improper)"
        )
    if all(isinstance(c, Const) for c in new):
        raise AdmissibilityError("surface face collapses to a point (improper cut)")
    return Precycle(tuple(new), 1)


def _face_of_surface(pc: Precycle, i: int, j: int):
    coord = pc.coords[i - 1]
    if isinstance(coord, Const):
        hit = (coord.value is INF) if j == 1 else (coord.value is not INF and coord.value.is_zero())
        if hit:
            rest = pc.coords[: i - 1] + pc.coords[i:]
            return [(Precycle(rest, 1), 1)]
        return []
    out = []
    for locus, order in _surface_cut_loci(coord, j):
        res = _restrict_surface(pc, i, locus)
        if res is not None:
            out.append((res, order))
    return out


def face(fc: FormalCycle, i: int, j: int) -> FormalCycle:
    """The face d_i^j: set coordinate i to 0 (j=0) or infinity (j=1)."""
    if not 1 <= i <= fc.n:
        raise ValueError(f"face index {i} out of range 1..{fc.n}")
    if j not in (0, 1):
        raise ValueError("face side must be 0 or 1")
    pieces = []
    for gen, mult in fc.terms.items():
        if isinstance(gen, BoxPoint):
            got = _face_of_point(gen, i, j)
        elif gen.arity == 1:
            got = _face_of_curve(gen, i, j)
        else:
            got = _face_of_surface(gen, i, j)
        pieces.extend((g, mult * m) for g, m in got)
    if not pieces:
        return FormalCycle.zero(fc.n - 1, fc.p)
    # grading is inferred from the content: faces of improper pre-cycles may
    # drop codimension (they are honest intersections, never proper cycles)
    codims = {g.codim for g, _ in pieces}
    if len(codims) != 1:
        raise AdmissibilityError("face has components of mixed codimension")
    return FormalCycle(fc.n - 1, codims.pop(), pieces)


def boundary(fc: FormalCycle) -> FormalCycle:
    """The cubical differential sum_{i,j} (-1)^(i+j) d_i^j."""
    out = FormalCycle.zero(fc.n - 1, fc.p)
    for i in range(1, fc.n + 1):
        for j in (0, 1):
            sign = -1 if (i + j) % 2 else 1
            out = out + sign * face(fc, i, j)
    return out


def is_normalized(fc: FormalCycle) -> bool:
    """All infinity-faces d_i^1 vanish."""
    return all(face(fc, i, 1).is_zero() for i in range(1, fc.n + 1))


def is_refined_normalized(fc: FormalCycle) -> bool:
    """All d_i^1 vanish and d_i^0 vanish for i >= 2."""
    if not is_normalized(fc):
        return False
    return all(face(fc, i, 0).is_zero() for i in range(2, fc.n + 1))


# ---------------------------------------------------------------------------
# h_j pullbacks, products, and the commutativity homotopy


def _h_curve(pt: BoxPoint, j: int) -> Precycle:
    """Preimage curve of a point under h^j (slot j gets the parameter s,
    slot j+1 the function (s - q)/(s - 1))."""
    q = pt.coords[j - 1]
    if q is INF or q.is_zero():
        raise UnsupportedShapeError(
            "h-pullback of a point on a face leaves the supported class"
        )
    coords = [Const(v) for v in pt.coords]
    coords[j - 1 : j] = [
        rat1(1, (Fe(0), 1)),
        rat1(1, (q, 1), (Fe(1), -1)),
    ]
    return Precycle(tuple(coords), 1)


def h_pullback(fc: FormalCycle, j: int) -> FormalCycle:
    """h_j: point cycles in box^n to curves in box^(n+1)."""
    if fc.n < 1 or not 1 <= j <= fc.n:
        raise ValueError("need 1 <= j <= n, n >= 1")
    out = FormalCycle.zero(fc.n + 1, fc.p)
    for gen, mult in fc.terms.items():
        if not isinstance(gen, BoxPoint):
            raise UnsupportedShapeError("h-pullback supports point cycles only")
        out._add(_h_curve(gen, j), mult)
    return out


def _shift_params(c, by: int):
    if isinstance(c, Const):
        return c
    return Rat(c.c, tuple((k if k == DIAG else k + by, a, e) for k, a, e in c.factors))


def _as_coords(gen):
    if isinstance(gen, BoxPoint):
        return tuple(Const(v) for v in gen.coords), 0
    return gen.coords, gen.arity


def _product_gens(g1, g2):
    c1, a1 = _as_coords(g1)
    c2, a2 = _as_coords(g2)
    if a1 + a2 > 2:
        raise UnsupportedShapeError("products of arity > 2 are out of scope")
    if a1 + a2 == 0:
        return BoxPoint(tuple(c.value for c in c1 + c2))
    shifted = tuple(_shift_params(c, a1) for c in c2)
    return Precycle(c1 + shifted, 1)


def product(z: FormalCycle, w: FormalCycle) -> FormalCycle:
    """Coordinate concatenation z x w with independent parameters."""
    out = FormalCycle.zero(z.n + w.n, z.p + w.p)
    for g1, m1 in z.terms.items():
        for g2, m2 in w.terms.items():
            out._add(_product_gens(g1, g2), m1 * m2)
    return out


def _tau_inverse(pt: BoxPoint) -> BoxPoint:
    """Pullback along the cyclic shift tau: rotate coordinates right."""
    c = pt.coords
    return BoxPoint((c[-1],) + c[:-1])


def commutativity_homotopy(fc: FormalCycle, n: int, m: int) -> FormalCycle:
    """H_{n,m} on refined-normalized point cycles in box^(n+m).

    H_{n,m}(Z) = sum_{i=0}^{n-1} (-1)^((m+i)(n+m-1)) h*_{n+m}((tau*)^(m+i) Z),
    with H_{0,m} = 0; tau* is the inverse cyclic coordinate permutation and
    h*_{n+m} puts the parameter in the first slot and (s - q_last)/(s - 1)
    in the new last slot.
    """
    if fc.n != n + m:
        raise ValueError("cycle dimension must equal n + m")
    if n == 0:
        return FormalCycle.zero(fc.n + 1, fc.p)
    out = FormalCycle.zero(fc.n + 1, fc.p)
    N = n + m
    for gen, mult in fc.terms.items():
        if not isinstance(gen, BoxPoint):
            raise UnsupportedShapeError("homotopy supports point cycles only")
        for i in range(n):
            q = gen
            for _ in range((m + i) % N):
                q = _tau_inverse(q)
            sign = -1 if ((m + i) * (N - 1)) % 2 else 1
            last = q.coords[-1]
            if last is INF or last.is_zero():
                raise UnsupportedShapeError("homotopy needs points off the faces")
            coords = [rat1(1, (Fe(0), 1))]
            coords += [Const(v) for v in q.coords[:-1]]
            coords.append(rat1(1, (last, 1), (Fe(1), -1)))
            out._add(Precycle(tuple(coords), 1), sign * mult)
    return out


# ---------------------------------------------------------------------------
# degeneracy and conjugation


def is_degenerate(gen) -> bool:
    """True iff the generator is a pullback along a codegeneracy.

    A parametrized generator is independent of one box factor exactly when
    some parameter occurs in a single (non-constant) slot; the variety is
    then V' x box in that slot.  The zero cycle counts as degenerate.
    """
    if isinstance(gen, FormalCycle):
        return all(is_degenerate(g) for g in gen.terms)
    if isinstance(gen, BoxPoint):
        return False
    slots_by_param = {}
    for idx, c in enumerate(gen.coords):
        for p in c.params():
            slots_by_param.setdefault(p, []).append(idx)
    return any(len(slots) == 1 for slots in slots_by_param.values())


def conj_cycle(fc: FormalCycle) -> FormalCycle:
    """Coordinate-wise action of the conjugation F_infinity."""
    out = FormalCycle.zero(fc.n, fc.p)
    for g, m in fc.terms.items():
        out._add(g.conj(), m)
    return out


# ---------------------------------------------------------------------------
# cocubical coordinate maps (for the functional identities of the h^j maps)


def coface(pt: BoxPoint, i: int, j: int) -> BoxPoint:
    """delta^i_j: insert 0 (j=0) or infinity (j=1) at slot i."""
    v = Fe(0) if j == 0 else INF
    c = pt.coords
    return BoxPoint(c[: i - 1] + (v,) + c[i - 1 :])


def codegeneracy(pt: BoxPoint, i: int) -> BoxPoint:
    """sigma^i: drop slot i."""
    c = pt.coords
    return BoxPoint(c[: i - 1] + c[i:])


def _h_value(x, y):
    """1 - (x - 1)(y - 1) with projective conventions (x, y never 1)."""
    if x is INF or y is INF:
        return INF
    return Fe(1) - (x - Fe(1)) * (y - Fe(1))


def h_coord(pt: BoxPoint, j: int) -> BoxPoint:
    """h^j: box^(n+1) -> box^n, combining slots j and j+1."""
    c = pt.coords
    return BoxPoint(c[: j - 1] + (_h_value(c[j - 1], c[j]),) + c[j + 1 :])


# ---------------------------------------------------------------------------
# the standard cycles of the worked examples


def totaro_curve(alpha: FieldElement) -> Precycle:
    """C_alpha = (z, 1 - alpha/z, 1 - z), with boundary {alpha} x {1-alpha}."""
    if alpha.is_zero() or alpha.is_one():
        raise ValueError("alpha must avoid 0 and 1")
    return curve(
        rat1(1, (Fe(0), 1)),                   # z
        rat1(1, (alpha, 1), (Fe(0), -1)),      # (z - alpha)/z
        rat1(-1, (Fe(1), 1)),                  # 1 - z
    )


def multilinearity_curve(alpha: FieldElement, beta: FieldElement) -> Precycle:
    """(t, (t - alpha)(t - beta)/(t - 1)^2); boundary {a} + {b} - {ab}."""
    if alpha == beta:
        raise ValueError("roots must be distinct")
    return curve(
        rat1(1, (Fe(0), 1)),
        rat1(1, (alpha, 1), (beta, 1), (Fe(1), -2)),
    )


def quartic_curve(a: FieldElement) -> Precycle:
    """(z, (z - a)^4/(z - 1)^4, 1 - z)."""
    return curve(
        rat1(1, (Fe(0), 1)),
        rat1(1, (a, 4), (Fe(1), -4)),
        rat1(-1, (Fe(1), 1)),
    )


def z_generator(a: FieldElement) -> FormalCycle:
    """Z_a = 4*(z, 1 - a/z, 1 - z) - (z, (z-a)^4/(z-1)^4, 1 - z)."""
    return 4 * FormalCycle.of(totaro_curve(a)) - FormalCycle.of(quartic_curve(a))


def weight3_surfaces(a: FieldElement):
    """The box^5 surfaces C'_a, C''_a, Xi_a of the weight-3 example."""
    z1 = Rat(Fe(1), ((1, Fe(0), 1),))
    z2 = Rat(Fe(1), ((2, Fe(0), 1),))
    one_minus_a_over_z2 = Rat(Fe(1), ((2, a, 1), (2, Fe(0), -1)))
    one_minus_z2_over_z1 = Rat(Fe(1), ((DIAG, None, 1), (1, Fe(0), -1)))
    one_minus_z1 = Rat(Fe(-1), ((1, Fe(1), 1),))
    one_minus_z2 = Rat(Fe(-1), ((2, Fe(1), 1),))
    quartic_z1 = Rat(Fe(1), ((1, a, 4), (1, Fe(1), -4)))

    c_prime = Precycle((z2, one_minus_a_over_z2, z1, one_minus_z2_over_z1, one_minus_z1))
    c_dblprime = Precycle((z1, one_minus_a_over_z2, z2, one_minus_z2_over_z1, one_minus_z1))
    xi = Precycle((z2, one_minus_a_over_z2, z1, quartic_z1, one_minus_z2))
    return c_prime, c_dblprime, xi
