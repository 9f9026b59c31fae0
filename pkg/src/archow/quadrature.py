"""Adaptive quadrature over the complex projective line.

Integrands here are smooth away from finitely many points where they
blow up no worse than (log r)^2 / r (the locally integrable combinations
produced by Wang forms on admissible curves).  The plane is covered by
two polar charts split at a radius R0 chosen away from all finite
singular points: the z-chart disk |z| <= R0 and the w-chart disk
|w| <= 1/R0 with z = 1/w (the point at infinity becomes w = 0).

Each chart disk is integrated in (r, theta) space by an adaptive tensor
Gauss-Legendre quadtree (embedded 8/12 point rules for the error
estimate).  Panels containing a singular point are refined by a fixed
dyadic grading toward the point; the innermost box is dropped, which for
integrable singularities contributes below the target tolerances.

Everything is deterministic: panels are processed in creation order and
contributions are summed in sorted panel order, so a given parameter set
reproduces bit-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["QuadratureError", "QuadratureParams", "integrate_sphere"]


class QuadratureError(RuntimeError):
    """The requested tolerance was not reached within the budget."""


@dataclass(frozen=True)
class QuadratureParams:
    tol: float = 1e-6
    max_depth: int = 26
    grading_levels: int = 48
    max_panels: int = 200_000

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")


_nodes_lo, _weights_lo = np.polynomial.legendre.leggauss(8)
_nodes_hi, _weights_hi = np.polynomial.legendre.leggauss(12)


def _panel_nodes(panels, nodes):
    """Tensor nodes for a batch of (r0, r1, t0, t1) panels."""
    p = np.asarray(panels)
    r0, r1, t0, t1 = p[:, 0], p[:, 1], p[:, 2], p[:, 3]
    rr = 0.5 * (r1 - r0)[:, None] * (nodes[None, :] + 1) + r0[:, None]
    tt = 0.5 * (t1 - t0)[:, None] * (nodes[None, :] + 1) + t0[:, None]
    return rr, tt


def _eval_batch(f, panels, nodes, weights):
    """Integrate f(z) r dr dtheta over each panel with a tensor rule.

    f maps a complex array to a (ncomp, ...) float/complex array.
    Returns (npanels, ncomp) complex contributions.
    """
    rr, tt = _panel_nodes(panels, nodes)
    z = rr[:, :, None] * np.exp(1j * tt[:, None, :])  # (np, nr, nt)
    vals = f(z.reshape(len(panels), -1))
    ncomp = vals.shape[0]
    vals = vals.reshape(ncomp, len(panels), len(nodes), len(nodes))
    vals = vals * rr[None, :, :, None]  # polar jacobian
    w2 = weights[:, None] * weights[None, :]
    out = np.einsum("cprt,rt->pc", vals, w2)
    p = np.asarray(panels)
    scale = 0.25 * (p[:, 1] - p[:, 0]) * (p[:, 3] - p[:, 2])
    return out * scale[:, None]


def _contains(panel, pt):
    r0, r1, t0, t1 = panel
    r, t = pt
    return r0 <= r <= r1 and t0 <= t <= t1


def _split(panel):
    r0, r1, t0, t1 = panel
    rm, tm = 0.5 * (r0 + r1), 0.5 * (t0 + t1)
    return [
        (r0, rm, t0, tm),
        (r0, rm, tm, t1),
        (rm, r1, t0, tm),
        (rm, r1, tm, t1),
    ]


def _graded_panels(panel, pt, levels):
    """Dyadic grading toward pt: at each level keep shrinking the quadrant
    containing the point, and emit the three sibling quadrants."""
    out = []
    cur = panel
    for _ in range(levels):
        kids = _split(cur)
        inner = next((k for k in kids if _contains(k, pt)), kids[0])
        out.extend(k for k in kids if k is not inner)
        cur = inner
    return out  # the innermost box is dropped


def _integrate_chart(f, radius, singular, params):
    """Integrate f over the disk of the given radius about 0.

    ``singular`` lists complex singular locations strictly inside the
    disk (the origin may be among them).
    """
    # rotate the seam away from singular angles
    args = sorted(float(np.angle(s)) % (2 * np.pi) for s in singular if abs(s) > 0)
    seam = 0.5
    if args:
        gaps = [(b - a, a) for a, b in zip(args, args[1:] + [args[0] + 2 * np.pi])]
        width, start = max(gaps)
        seam = start + width / 2
    origin_singular = any(abs(s) == 0 for s in singular)
    pts = [
        (abs(s), (float(np.angle(s)) - seam) % (2 * np.pi))
        for s in singular
        if abs(s) > 0
    ]

    def g(zflat):
        return f(zflat * np.exp(1j * seam))

    # initial radial breakpoints: geometric toward 0 when 0 is singular
    if origin_singular:
        k0 = params.grading_levels
        radii = [radius * 2.0 ** (-k) for k in range(k0, -1, -1)]
    else:
        radii = [0.0, radius / 2, radius]
    thetas = np.linspace(0.0, 2 * np.pi, 9)
    work = []
    for a, b in zip(radii, radii[1:]):
        for t0, t1 in zip(thetas, thetas[1:]):
            work.append((a, b, t0, t1))

    total = None
    err_total = 0.0
    done = []  # (panel, contribution row)
    depth = {p: 0 for p in work}
    n_panels = 0

    while work:
        batch = work[: 2048 // 2]
        work = work[len(batch):]
        n_panels += len(batch)
        if n_panels > params.max_panels:
            raise QuadratureError("panel budget exhausted before tolerance")
        lo = _eval_batch(g, batch, _nodes_lo, _weights_lo)
        hi = _eval_batch(g, batch, _nodes_hi, _weights_hi)
        err = np.abs(hi - lo).sum(axis=1)
        for k, panel in enumerate(batch):
            d = depth.get(panel, 0)
            area = (panel[1] - panel[0]) * (panel[3] - panel[2]) * max(panel[1], 1e-300)
            budget = params.tol * max(area / (2 * np.pi * radius * radius), 2.0 ** (-d) * 1e-4)
            inside = [p for p in pts if _contains(panel, p)]
            if err[k] <= budget or (not inside and d >= params.max_depth):
                done.append((panel, hi[k]))
                err_total += err[k]
                continue
            if inside and (panel[1] - panel[0]) < 1e-3 * radius:
                # isolate the singularity by fixed dyadic grading
                sub = _graded_panels(panel, inside[0], params.grading_levels)
                glo = _eval_batch(g, sub, _nodes_lo, _weights_lo)
                ghi = _eval_batch(g, sub, _nodes_hi, _weights_hi)
                for kk, sp in enumerate(sub):
                    done.append((sp, ghi[kk]))
                err_total += float(np.abs(ghi - glo).sum())
                continue
            if d >= params.max_depth and inside:
                raise QuadratureError("refinement limit hit at a singular point")
            for child in _split(panel):
                depth[child] = d + 1
                work.append(child)

    done.sort(key=lambda item: item[0])
    total = np.zeros(done[0][1].shape, dtype=complex)
    for _, row in done:
        total = total + row
    return total, err_total


def integrate_sphere(make_integrand, singular_z, params: QuadratureParams):
    """Integrate a vector of integrands over C union {infinity}.

    ``make_integrand(chart)`` with chart in {"z", "w"} must return a
    callable mapping a flat complex array of chart coordinates to an
    (ncomp, N) array; the w-chart integrand must already include the
    z = 1/w substitution (the polar jacobian is handled here).

    ``singular_z`` lists finite singular points in the z coordinate; the
    point at infinity is always treated as potentially singular.

    Returns (values, error_estimate): the componentwise integrals
    sum over dxdy (not the form normalization, which callers apply).
    """
    finite = [complex(s) for s in singular_z]
    R0 = 2.0 * max([1.0] + [abs(s) for s in finite])
    fz = make_integrand("z")
    fw = make_integrand("w")
    vz, ez = _integrate_chart(fz, R0, [s for s in finite if abs(s) < R0], params)
    vw, ew = _integrate_chart(fw, 1.0 / R0, [0.0], params)
    return vz + vw, ez + ew
