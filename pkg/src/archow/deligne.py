"""The dimension-zero Thom-Whitney Deligne complex D_TW(F, p).

Over Spec F the complex collapses to pairs of epsilon-polynomials per
complex embedding: degree-0 elements are g(eps) with g(0) in R(p) and
g(1) in F^p A^0 (zero for p >= 1), degree-1 elements are h(eps) d(eps),
and everything in degree >= 2 vanishes.  Cohomology classes in degree 1
are extracted by integrating the d(eps)-part over [0,1] and projecting
to R(p-1).

All coefficients are mpmath complex numbers at the ambient working
precision (set it with mpmath.mp.prec or a workprec context; the policy
default is 256 bits).
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .field import FieldSpec, QI

__all__ = [
    "EpsPoly",
    "TWElement",
    "DeligneClass",
    "differential",
    "tw_product",
    "class_of",
    "fixed_part_check",
]

DEFAULT_PRECISION = 256


def _mpc(x):
    return x if isinstance(x, mp.mpc) else mp.mpc(x)


@dataclass(frozen=True)
class EpsPoly:
    """Polynomial in the homotopy variable eps, complex coefficients."""

    coeffs: tuple  # ascending powers, trailing zeros trimmed

    def __post_init__(self):
        cs = [_mpc(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c) -> "EpsPoly":
        return cls((c,))

    @classmethod
    def zero(cls) -> "EpsPoly":
        return cls(())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [mp.mpc(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [mp.mpc(0)] * (n - len(other.coeffs))
        return EpsPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self):
        return EpsPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, EpsPoly):
            if self.is_zero() or other.is_zero():
                return EpsPoly.zero()
            out = [mp.mpc(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for k, a in enumerate(self.coeffs):
                for l, b in enumerate(other.coeffs):
                    out[k + l] += a * b
            return EpsPoly(tuple(out))
        return EpsPoly(tuple(_mpc(other) * c for c in self.coeffs))

    __rmul__ = __mul__

    def derivative(self) -> "EpsPoly":
        return EpsPoly(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def integral01(self):
        """Exact integral over [0, 1] (polynomial arithmetic)."""
        return sum((c / (k + 1) for k, c in enumerate(self.coeffs)), mp.mpc(0))

    def eval(self, x):
        out = mp.mpc(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def conj(self) -> "EpsPoly":
        return EpsPoly(tuple(mp.conj(c) for c in self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "1" if k == 0 else ("eps" if k == 1 else f"eps^{k}")
            bits.append(f"({mp.nstr(c, 8)})*{mono}")
        return " + ".join(bits)


def pi_projection(x, p: int):
    """pi_p(x) = (x + (-1)^p conj(x))/2, the projection onto R(p)."""
    x = _mpc(x)
    return (x + (-1) ** (p % 2) * mp.conj(x)) / 2


def _tolerance():
    return mp.mpf(2) ** (-(mp.mp.prec - 12))


@dataclass(frozen=True)
class TWElement:
    """Element of D_TW^degree(F, p): one eps-polynomial per embedding.

    ``polys`` lists one EpsPoly for every complex embedding of F in the
    order of FieldSpec.embeddings (conjugate embeddings adjacent).  In
    degree 0 the polynomial is g(eps); in degree 1 it is the coefficient
    h(eps) of d(eps).
    """

    twist: int
    degree: int
    polys: tuple  # tuple[EpsPoly], one per embedding
    field: FieldSpec = QI

    def __post_init__(self):
        if self.degree not in (0, 1):
            raise ValueError("degree must be 0 or 1 over Spec F")
        if len(self.polys) != self.field.degree:
            raise ValueError("one polynomial per complex embedding required")

    @classmethod
    def zero(cls, twist: int, degree: int, field: FieldSpec = QI) -> "TWElement":
        return cls(twist, degree, tuple(EpsPoly.zero() for _ in range(field.degree)))

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.polys)

    def validate(self) -> bool:
        """Check the boundary conditions of the Thom-Whitney complex.

        Degree 0: g(0) in R(p) = (2 pi i)^p R and g(1) in F^p A^0, which is
        {0} for p >= 1 and everything for p <= 0.  Degree 1 carries no
        condition (A^1 of a point vanishes, so only the d(eps)-part exists).
        """
        if self.degree != 0:
            return True
        tol = _tolerance()
        for g in self.polys:
            v0 = g.eval(0)
            # v0 must lie in i^p * R
            twisted = v0 / mp.mpc(0, 1) ** (self.twist % 4)
            if abs(mp.im(twisted)) > tol * (1 + abs(twisted)):
                return False
            if self.twist >= 1 and abs(g.eval(1)) > tol * (1 + abs(v0)):
                return False
        return True

    def __add__(self, other):
        if (self.twist, self.degree, self.field) != (other.twist, other.degree, other.field):
            raise ValueError("grading mismatch")
        return TWElement(
            self.twist,
            self.degree,
            tuple(a + b for a, b in zip(self.polys, other.polys)),
            self.field,
        )

    def __neg__(self):
        return TWElement(self.twist, self.degree, tuple(-g for g in self.polys), self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TWElement":
        return TWElement(self.twist, self.degree, tuple(c * g for g in self.polys), self.field)

    def __str__(self):
        tail = "*deps" if self.degree == 1 else ""
        body = ", ".join(f"{lbl}: {g}{tail}" for lbl, g in zip(self.field.embeddings, self.polys))
        return f"TW(p={self.twist}, deg={self.degree}; {body})"


def differential(x: TWElement) -> TWElement:
    """d(g) = g'(eps) d(eps); the degree-1 differential is zero."""
    if x.degree == 1:
        return TWElement.zero(x.twist, 1, x.field)
    return TWElement(x.twist, 1, tuple(g.derivative() for g in x.polys), x.field)


def tw_product(x: TWElement, y: TWElement) -> TWElement:
    """(g1 + h1 deps)(g2 + h2 deps) with deps^2 = 0.

    Degree-2 results collapse to zero (the space vanishes over Spec F).
    """
    if x.field != y.field:
        raise ValueError("mixed fields")
    deg = x.degree + y.degree
    twist = x.twist + y.twist
    if deg >= 2:
        return TWElement.zero(twist, 1, x.field)
    polys = tuple(a * b for a, b in zip(x.polys, y.polys))
    return TWElement(twist, deg, polys, x.field)


@dataclass(frozen=True)
class DeligneClass:
    """A class in H^1_D(F, R(p)) = R(p-1)^(r2): one value per embedding.

    Values are stored for all embeddings (conjugates adjacent) and lie in
    R(p-1), i.e. real multiples of i^(p-1); conjugate embeddings carry
    conjugate values (the F-infinity fixed-part condition).
    """

    twist: int
    values: tuple  # tuple[mpc], one per embedding
    field: FieldSpec = QI

    @classmethod
    def zero(cls, twist: int, field: FieldSpec = QI) -> "DeligneClass":
        return cls(twist, tuple(mp.mpc(0) for _ in range(field.degree)), field)

    @classmethod
    def from_principal(cls, twist: int, value, field: FieldSpec = QI) -> "DeligneClass":
        """Build from the value at the distinguished embedding (conjugate
        embedding gets the conjugate value)."""
        v = _mpc(value)
        return cls(twist, (v, mp.conj(v)), field)

    @property
    def principal(self):
        return self.values[0]

    def real_scalar(self):
        """The real number r with principal value r * i^(p-1)."""
        v = self.values[0] / mp.mpc(0, 1) ** ((self.twist - 1) % 4)
        return mp.re(v)

    def __add__(self, other):
        if (self.twist, self.field) != (other.twist, other.field):
            raise ValueError("twist mismatch")
        return DeligneClass(
            self.twist, tuple(a + b for a, b in zip(self.values, other.values)), self.field
        )

    def __neg__(self):
        return DeligneClass(self.twist, tuple(-v for v in self.values), self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DeligneClass":
        return DeligneClass(self.twist, tuple(_mpc(c) * v for v in self.values), self.field)

    def norm(self):
        return max(abs(v) for v in self.values)

    def __str__(self):
        body = ", ".join(
            f"{lbl}: {mp.nstr(v, 12)}" for lbl, v in zip(self.field.embeddings, self.values)
        )
        return f"DeligneClass(R({self.twist}); {body})"


def class_of(x: TWElement, twist: int | None = None) -> DeligneClass:
    """Cohomology class of a degree-1 element: per embedding, integrate the
    d(eps)-coefficient over [0,1] and project by pi_(p-1) onto R(p-1).

    The global sign is the one forced by class_of(P({alpha}), 1) being
    -log|sigma(alpha)| (kernel-of-log consistency).
    """
    if x.degree != 1:
        raise ValueError("class extraction needs a degree-1 element")
    p = x.twist if twist is None else twist
    vals = tuple(pi_projection(g.integral01(), p - 1) for g in x.polys)
    return DeligneClass(p, vals, x.field)


def fixed_part_check(x: TWElement) -> bool:
    """True iff x is fixed by sigma_F_infinity (conjugate coefficients and
    swap conjugate embeddings)."""
    tol = _tolerance()
    polys = x.polys
    scale = 1 + max((max(abs(c) for c in g.coeffs) for g in polys if g.coeffs), default=0)
    for k in range(0, len(polys) - 1, 2):
        a, b = polys[k], polys[k + 1]
        diff = a.conj() - b
        if any(abs(c) > tol * scale for c in diff.coeffs):
            return False
    return True
