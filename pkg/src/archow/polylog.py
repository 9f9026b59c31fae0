"""High-precision classical and single-valued polylogarithms.

The classical Li_n are delegated to mpmath (principal branch, arbitrary
precision, inversion/reflection handled internally); the single-valued
combinations used by the regulator are assembled here:

    L2(z) = Im Li2(z) + arg(1 - z) log|z|          (Bloch-Wigner)
    L3(z) = Re(Li3(z) - log|z| Li2(z) + (1/3) log^2|z| Li1(z))

The L3 normalization matches Goncharov's single-valued trilogarithm as
calibrated by the weight-3 worked example; no rational rescaling turned
out to be necessary (calibration constant 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

__all__ = ["PrecisionPolicy", "li", "bloch_wigner", "trilog_sv"]


@dataclass(frozen=True)
class PrecisionPolicy:
    """Evaluation policy: target precision and the guard around z = 1.

    Outside the guard disk |z - 1| >= guard_radius (needed only for the
    logarithmic singularity of Li_1) values are correctly rounded to the
    target precision; claimed_digits is the matching decimal count.
    """

    bits: int = 256
    guard_radius: float = 1e-30

    def __post_init__(self):
        if self.bits < 53:
            raise ValueError("precision must be at least 53 bits")
        if self.guard_radius <= 0:
            raise ValueError("guard radius must be positive")

    @property
    def claimed_digits(self) -> int:
        return int(self.bits * 0.30103) - 2


DEFAULT_POLICY = PrecisionPolicy()


def _to_mpc(z):
    return z if isinstance(z, mp.mpc) else mp.mpc(z)


def li(n: int, z, policy: PrecisionPolicy = DEFAULT_POLICY):
    """Classical polylogarithm Li_n(z), n in {1, 2, 3}, principal branch."""
    if n not in (1, 2, 3):
        raise ValueError("only weights 1, 2, 3 are supported")
    with mp.workprec(policy.bits + 20):
        z = _to_mpc(z)
        if n == 1:
            if abs(z - 1) < policy.guard_radius:
                raise ValueError("Li_1 has a logarithmic singularity at z = 1")
            val = -mp.log(1 - z)
        else:
            if z == 1:
                val = mp.zeta(n)
            else:
                val = mp.polylog(n, z)
    with mp.workprec(policy.bits):
        return mp.mpc(val)


def bloch_wigner(z, policy: PrecisionPolicy = DEFAULT_POLICY):
    """The Bloch-Wigner dilogarithm L2(z), real-valued and single-valued.

    L2(z) = Im Li2(z) + arg(1 - z) log|z|; the closure values at 0 and 1
    are 0.  Vanishes identically on the real line.
    """
    with mp.workprec(policy.bits + 20):
        z = _to_mpc(z)
        if z == 0 or z == 1:
            return mp.mpf(0)
        if mp.im(z) == 0:
            return mp.mpf(0)
        val = mp.im(mp.polylog(2, z)) + mp.arg(1 - z) * mp.log(abs(z))
    with mp.workprec(policy.bits):
        return mp.mpf(val)


def trilog_sv(z, policy: PrecisionPolicy = DEFAULT_POLICY):
    """The single-valued trilogarithm L3(z), real-valued.

    L3(z) = Re(Li3(z) - log|z| Li2(z) + (1/3) log^2|z| Li1(z)); satisfies
    L3(1/z) = L3(z) and L3(conj z) = L3(z).
    """
    with mp.workprec(policy.bits + 20):
        z = _to_mpc(z)
        if z == 0:
            raise ValueError("L3 is singular at z = 0")
        if z == 1:
            return mp.mpf(mp.zeta(3))
        r = mp.log(abs(z))
        val = mp.re(mp.polylog(3, z))
        if r != 0:
            if abs(z - 1) < policy.guard_radius:
                raise ValueError("inside the guard disk around z = 1")
            val -= r * mp.re(mp.polylog(2, z))
            val += r**2 * mp.re(-mp.log(1 - z)) / 3
    with mp.workprec(policy.bits):
        return mp.mpf(val)
