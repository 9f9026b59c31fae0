"""The cubical Goncharov regulator over Spec F.

Closed forms are used wherever the worked examples pin them down:

  * weight 1 (point cycles in box^1):   -log|sigma(x)| per embedding;
  * weight 2, Totaro curves C_alpha:    -(1/2pi) i L2(sigma(alpha));
  * weight 3, the C'/C'' combination:   -4 P(C'_a - C''_a) = (2/pi^2) L3(sigma(a)).

A numerical-integration oracle evaluates the weight-2 regulator of an
arbitrary admissible curve in box^3 by integrating the d(eps)-part of
the Wang form W_3 restricted to the curve over the parameter plane, and
the vanishing of p_*[W_2|_C] for curves in box^2 (the lemma behind the
multilinearity and Xi arguments) is checked the same way.

Normalization: the current integral carries the 1/(2 pi i) pushforward
factor; expressing the resulting class in H^1_D(F, R(p)) on the scale of
the closed dilogarithm formula requires one further factor 1/(2 pi) per
complex fiber dimension of the pushforward.  That constant is pinned by
the numeric/closed-form cross-check on Totaro curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np

from . import wang
from .cubical import (
    INF,
    AdmissibilityError,
    Const,
    FormalCycle,
    Precycle,
    Rat,
    UnsupportedShapeError,
    boundary,
    is_degenerate,
    totaro_curve,
    weight3_surfaces,
)
from .deligne import DeligneClass, EpsPoly, TWElement, class_of
from .field import Fe, FieldElement, embed_principal
from .polylog import DEFAULT_POLICY, PrecisionPolicy, bloch_wigner, trilog_sv
from .quadrature import QuadratureParams, integrate_sphere

__all__ = [
    "RegulatorValue",
    "regulator_points",
    "regulator_totaro",
    "regulator_curve_numeric",
    "lemma19_check",
    "regulator_goncharov_weight3",
    "is_certified_regulator_null",
]


@dataclass(frozen=True)
class RegulatorValue:
    """A Deligne class with provenance: closed-form | numeric | exact-zero."""

    klass: DeligneClass
    provenance: str
    error: float = 0.0


# ---------------------------------------------------------------------------
# closed forms


def regulator_points(fc: FormalCycle, policy: PrecisionPolicy = DEFAULT_POLICY) -> RegulatorValue:
    """P of a normalized point cycle in box^1: -sum m log|sigma(x)|."""
    if fc.n != 1 or fc.p != 1:
        raise ValueError("expected a point cycle of dimension 1")
    with mp.workprec(policy.bits):
        total = mp.mpf(0)
        for g, m in fc.terms.items():
            v = g.coords[0]
            if v is INF or v.is_zero():
                raise AdmissibilityError("coordinate 0 or infinity has no finite log")
            total += -m * mp.log(abs(embed_principal(v, policy.bits)))
        return RegulatorValue(DeligneClass.from_principal(1, mp.mpc(total)), "closed-form")


def regulator_totaro(alpha: FieldElement, policy: PrecisionPolicy = DEFAULT_POLICY) -> RegulatorValue:
    """P(C_alpha) = -(1/2pi) i L2(sigma(alpha)) per embedding (twist 2)."""
    if alpha.is_zero() or alpha.is_one():
        raise ValueError("alpha must avoid 0 and 1")
    with mp.workprec(policy.bits):
        z = embed_principal(alpha, policy.bits)
        val = -mp.mpc(0, 1) * bloch_wigner(z, policy) / (2 * mp.pi)
        return RegulatorValue(DeligneClass.from_principal(2, val), "closed-form")


def regulator_goncharov_weight3(
    c_prime: Precycle,
    c_dblprime: Precycle,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> RegulatorValue:
    """The class of -4 P(C'_a - C''_a) = (2/pi^2) L3(sigma(a)) (twist 3).

    The generators must match the standard weight-3 shapes exactly; the
    parameter a is read off the second coordinate.  The calibration of the
    single-valued trilogarithm needs no extra rational factor.
    """
    a = _extract_weight3_parameter(c_prime)
    want_p, want_pp, _ = weight3_surfaces(a)
    if c_prime.unit() != want_p or c_dblprime.unit() != want_pp:
        raise UnsupportedShapeError("unrecognized weight-3 generator shape")
    with mp.workprec(policy.bits):
        z = embed_principal(a, policy.bits)
        val = mp.mpf(2) / mp.pi**2 * trilog_sv(z, policy)
        # values lie in R(2): real, equal at conjugate embeddings
        return RegulatorValue(DeligneClass(3, (mp.mpc(val), mp.mpc(val))), "closed-form")


def _extract_weight3_parameter(c_prime: Precycle) -> FieldElement:
    if c_prime.n != 5 or c_prime.arity != 2:
        raise UnsupportedShapeError("unrecognized weight-3 generator shape")
    second = c_prime.coords[1]
    if not isinstance(second, Rat):
        raise UnsupportedShapeError("unrecognized weight-3 generator shape")
    roots = [a for _, a, e in second.factors if e > 0 and a is not None and not a.is_zero()]
    if len(roots) != 1:
        raise UnsupportedShapeError("unrecognized weight-3 generator shape")
    return roots[0]


# ---------------------------------------------------------------------------
# numeric oracle: restriction of Wang forms to a curve


def _coordinate_data(coord, emb_prec=64):
    """(is_const, log|c|^2 or value, [(root complex, m)], degree)."""
    if isinstance(coord, Const):
        v = coord.value
        if v is INF or v.is_zero():
            raise AdmissibilityError("constant coordinate 0/infinity is not integrable")
        z = complex(embed_principal(v, max(emb_prec, 53)))
        return True, z, [], 0
    c = complex(embed_principal(coord.c, max(emb_prec, 53)))
    roots = [
        (complex(embed_principal(a, max(emb_prec, 53))), e) for _, a, e in coord.factors
    ]
    return False, c, roots, coord.degree(1)


class _CurveFunctions:
    """Vectorized log-derivatives and log|f|^2 per chart for one curve."""

    def __init__(self, coords):
        self.data = [_coordinate_data(c) for c in coords]
        self.n = len(coords)

    def singular_points(self):
        pts = set()
        for is_const, _, roots, _ in self.data:
            if not is_const:
                for r, _ in roots:
                    pts.add(r)
        return sorted(pts, key=lambda z: (z.real, z.imag))

    def g(self, slot, Z, chart):
        is_const, c, roots, deg = self.data[slot - 1]
        if is_const:
            return np.zeros_like(Z)
        out = np.zeros_like(Z)
        if chart == "z":
            for r, m in roots:
                out += m / (Z - r)
        else:
            # z = 1/w: d/dw log f(1/w) = sum m * (-1)/(w (1 - r w))
            for r, m in roots:
                out += m * (-1.0) / (Z * (1.0 - r * Z))
        return out

    def L(self, slot, Z, chart):
        is_const, c, roots, deg = self.data[slot - 1]
        if is_const:
            return np.full(Z.shape, 2.0 * math.log(abs(c)))
        out = np.full(Z.shape, 2.0 * math.log(abs(c)))
        if chart == "z":
            for r, m in roots:
                out = out + m * np.log(np.abs(Z - r) ** 2)
        else:
            logw2 = np.log(np.abs(Z) ** 2)
            for r, m in roots:
                out = out + m * (np.log(np.abs(1.0 - r * Z) ** 2) - logw2)
        return out


def _integrate_terms(curve_fns, terms, params: QuadratureParams):
    """Integrate prod(L) * g_w * conj(g_wb) dxdy for each decomposed term."""

    def make(chart):
        def f(Z):
            rows = []
            cache_g = {}
            cache_L = {}
            for _, logs, iw, jwb, _ in terms:
                row = np.ones_like(Z)
                for k in logs:
                    if k not in cache_L:
                        cache_L[k] = curve_fns.L(k, Z, chart)
                    row = row * cache_L[k]
                for s in (iw, jwb):
                    if s not in cache_g:
                        cache_g[s] = curve_fns.g(s, Z, chart)
                row = row * cache_g[iw] * np.conjugate(cache_g[jwb])
                rows.append(row)
            return np.stack(rows)

        return f

    return integrate_sphere(make, curve_fns.singular_points(), params)


def _eps_poly_from_terms(terms, integrals):
    """sum_t sign * EPoly_t * (-1/pi) * I_t as complex coefficients."""
    coeffs = {}
    for (epoly, _, _, _, sign), val in zip(terms, integrals):
        factor = sign * (-1.0 / math.pi) * complex(val)
        for k, c in enumerate(epoly.coeffs):
            coeffs[k] = coeffs.get(k, 0j) + float(c) * factor
    if not coeffs:
        return EpsPoly(())
    out = [0j] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return EpsPoly(tuple(out))


# expressing the pushforward current as an H^1-class on the dilogarithm
# scale costs 1/(2 pi) per complex fiber dimension; pinned by the Totaro
# cross-check (see module docstring)
CLASS_CALIBRATION_W2 = 0.5 / math.pi


def regulator_curve_numeric(
    gen: Precycle | FormalCycle,
    params: QuadratureParams = QuadratureParams(),
) -> RegulatorValue:
    """Numeric P of an admissible codimension-2 curve (combination) in box^3.

    Returns the twist-2 Deligne class; degenerate generators contribute
    exactly zero.  Point cycles in box^n, n >= 2, are exactly zero by
    degree collapse and are accepted for convenience.
    """
    if isinstance(gen, Precycle):
        fc = FormalCycle.of(gen)
    else:
        fc = gen
    if fc.n == fc.p:  # point cycles: all form-degree terms die
        return RegulatorValue(DeligneClass.zero(fc.p), "exact-zero")
    if fc.n != 3 or fc.p != 2:
        raise UnsupportedShapeError("numeric regulator supports curves in box^3")

    terms3 = wang.two_form_terms(wang.wang_form(3), de=True)
    total = DeligneClass.zero(2)
    err = 0.0
    for g, mult in fc.terms.items():
        if is_degenerate(g):
            continue
        fns = _CurveFunctions(g.coords)
        integrals, e = _integrate_terms(fns, terms3, params)
        h = _eps_poly_from_terms(terms3, integrals)
        tw = TWElement(2, 1, (h, h.conj()))
        cls = class_of(tw).scale(CLASS_CALIBRATION_W2)
        total = total + cls.scale(mult)
        err += e / math.pi * CLASS_CALIBRATION_W2
    prov = "numeric" if err else "exact-zero"
    return RegulatorValue(total, prov, err)


def lemma19_check(gen: Precycle, params: QuadratureParams = QuadratureParams()) -> dict:
    """Verify that p_*[W_2|_C] vanishes for an admissible curve C in box^2.

    Returns {"total": |numeric P(C)|, "residue_check": residue-formula
    defect, "error_estimate": quadrature estimate}.  The residue check
    compares (1/2 pi i) int d(f dy/y), with f = log x xbar, against the
    exact -f(Div y) from the symbolic divisors.
    """
    if gen.n != 2 or gen.codim != 1:
        raise ValueError("expected a curve in box^2")
    x, y = gen.coords
    if not (isinstance(x, Rat) and isinstance(y, Rat)):
        raise AdmissibilityError("both coordinates must be non-constant")
    div_x = dict(x.zeros_and_poles())
    div_y = dict(y.zeros_and_poles())
    collision = set(map(_place_key, div_x)) & set(map(_place_key, div_y))
    if collision:
        raise AdmissibilityError("divisor collision: Div x meets Div y")

    terms2 = wang.two_form_terms(wang.wang_form(2), de=False)
    fns = _CurveFunctions(gen.coords)

    def make(chart):
        base = _make_rows = None

        def f(Z):
            g1 = fns.g(1, Z, chart)
            g2 = fns.g(2, Z, chart)
            rows = []
            for _, logs, iw, jwb, _ in terms2:
                gw = g1 if iw == 1 else g2
                gb = g1 if jwb == 1 else g2
                rows.append(gw * np.conjugate(gb))
            rows.append(np.conjugate(g1) * g2)  # residue-formula integrand
            return np.stack(rows)

        return f

    integrals, e = integrate_sphere(make, fns.singular_points(), params)
    gpoly = _eps_poly_from_terms(terms2, integrals[:-1])
    total = float(sum(abs(c) for c in gpoly.coeffs))

    # exact f(Div y) at 256 bits
    with mp.workprec(256):
        fdiv = mp.mpf(0)
        for place, order in div_y.items():
            val = x.eval_at(place)
            if val is INF or val.is_zero():
                raise AdmissibilityError("divisor collision at infinity")
            fdiv += order * 2 * mp.log(abs(embed_principal(val, 256)))
        numeric = complex(integrals[-1]) / math.pi
        residue_check = float(abs(numeric + float(fdiv)))
    return {
        "total": total,
        "residue_check": residue_check,
        "error_estimate": float(e / math.pi),
    }


def _place_key(place):
    return "inf" if place is INF else (place.a, place.b)


# ---------------------------------------------------------------------------
# structural vanishing certificates


def is_certified_regulator_null(gen: Precycle) -> bool:
    """True when P(gen) = 0 follows structurally, without integration.

    Degenerate generators vanish outright.  A surface whose coordinates
    split by parameter (no entangled coordinate) is a shuffle of two
    curve factors and constants; if either parameter group has exactly
    two slots and forms an admissible curve in box^2, the vanishing
    lemma for p_*[W_2|_C] plus Thom-Whitney multiplicativity kills the
    whole product.
    """
    if is_degenerate(gen):
        return True
    if gen.arity != 2:
        return False
    slots = {1: [], 2: []}
    for idx, c in enumerate(gen.coords):
        ps = c.params()
        if len(ps) > 1:
            return False  # entangled coordinate: not a product
        for p in ps:
            slots[p].append(idx)
    for p in (1, 2):
        if len(slots[p]) != 2:
            continue
        coords = []
        for idx in slots[p]:
            c = gen.coords[idx]
            coords.append(Rat(c.c, tuple((1, a, e) for _, a, e in c.factors)))
        try:
            k = Precycle(tuple(coords))
            b = boundary(FormalCycle.of(k))
        except (AdmissibilityError, ValueError):
            continue
        if all(not pt.on_any_face() for pt in b.terms):
            return True
    return False
