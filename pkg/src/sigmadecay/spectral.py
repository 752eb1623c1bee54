"""Fourier-symbol side of the structurally damped sigma-evolution model.

The model couples a fractional elastic operator of order ``2*sigma`` with
one or two fractional damping operators of orders ``2*delta1`` (below
``sigma``, "parabolic like") and ``2*delta2`` (above ``sigma``,
"wave like").  After a Fourier transform the Cauchy problem reduces, at
each radial frequency ``r = |xi|``, to the scalar ODE

    v'' + (a r^(2 delta1) + b r^(2 delta2)) v' + r^(2 sigma) v = 0,

with v(0) = v0, v'(0) = v1.  Everything in this package is driven by the
two characteristic roots of that quadratic,

    lambda_{1,2}(r) = (-d(r) +- sqrt(d(r)^2 - 4 r^(2 sigma))) / 2,
    d(r) = a r^(2 delta1) + b r^(2 delta2),

and by the two solution kernels

    K0(t, r) = (lambda1 e^(lambda2 t) - lambda2 e^(lambda1 t)) / (lambda1 - lambda2),
    K1(t, r) = (e^(lambda1 t) - e^(lambda2 t)) / (lambda1 - lambda2),

so that v(t) = K0 v0 + K1 v1.  Near root confluence both kernels are
evaluated through phi1(z) = (e^z - 1)/z to avoid cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError

__all__ = [
    "ModelParams",
    "RootPair",
    "KernelSet",
    "ProfileKind",
    "validate_params",
    "damping_symbol",
    "char_roots",
    "root_arrays",
    "phi1",
    "kernel_eval",
    "kernel_arrays",
    "profile_hat",
    "profile_arrays",
    "profile_kind_for",
    "lambda1_low_freq_expansion",
    "discriminant_radii",
]

# |lambda1 - lambda2| * t below this switches kernels to the phi1 form.
CONFLUENCE_CUT = 1e-3

# phi1 uses its Taylor series below this |z|; 10 terms leave a remainder
# of order |z|^10 / 11!, far below double precision at the cut.
_PHI1_SERIES_CUT = 1e-3
_PHI1_COEFFS = tuple(1.0 / math.factorial(k + 1) for k in range(10))


@dataclass(frozen=True)
class ModelParams:
    """Admissible coefficient set for the damped model.

    sigma  : elastic order / 2, sigma >= 1
    delta1 : lower damping order / 2, 0 < delta1 < sigma / 2
    delta2 : upper damping order / 2, sigma / 2 < delta2 < sigma
    a, b   : damping switches, (a, b) in {(1, 0), (0, 1), (1, 1)}
    n      : space dimension, positive integer
    """

    sigma: float
    delta1: float
    delta2: float
    a: int
    b: int
    n: int

    def __post_init__(self) -> None:
        validate_params(self)

    @property
    def case(self) -> str:
        return {(1, 0): "A1B0", (0, 1): "A0B1", (1, 1): "A1B1"}[(self.a, self.b)]


def validate_params(p: ModelParams) -> None:
    """Raise DomainError unless ``p`` satisfies the structural constraints."""
    if not (p.sigma >= 1.0):
        raise DomainError(f"sigma must satisfy sigma >= 1, got {p.sigma}")
    if not (0.0 < p.delta1 < 0.5 * p.sigma):
        raise DomainError(
            f"delta1 must satisfy 0 < delta1 < sigma/2, got delta1={p.delta1}, sigma={p.sigma}"
        )
    if not (0.5 * p.sigma < p.delta2 < p.sigma):
        raise DomainError(
            f"delta2 must satisfy sigma/2 < delta2 < sigma, got delta2={p.delta2}, sigma={p.sigma}"
        )
    if (p.a, p.b) not in ((1, 0), (0, 1), (1, 1)):
        raise DomainError(f"(a, b) must be one of (1,0), (0,1), (1,1), got ({p.a}, {p.b})")
    if not (isinstance(p.n, (int, np.integer)) and p.n >= 1):
        raise DomainError(f"n must be a positive integer, got {p.n!r}")


def damping_symbol(p: ModelParams, r):
    """d(r) = a r^(2 delta1) + b r^(2 delta2).  Accepts scalars or arrays."""
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    if p.a:
        out = out + r ** (2.0 * p.delta1)
    if p.b:
        out = out + r ** (2.0 * p.delta2)
    return out


@dataclass(frozen=True)
class RootPair:
    """Characteristic roots at one radial frequency.

    lambda1 carries the larger real part when the roots are real, and the
    +i sqrt(|disc|) branch when they are complex conjugate.
    """

    lambda1: complex
    lambda2: complex
    discriminant: float
    confluent: bool


def root_arrays(p: ModelParams, r: np.ndarray):
    """Vectorized characteristic roots.  Returns (lambda1, lambda2, disc)."""
    r = np.asarray(r, dtype=float)
    d = damping_symbol(p, r)
    disc = d * d - 4.0 * r ** (2.0 * p.sigma)
    sq = np.sqrt(np.abs(disc))
    half = np.where(disc >= 0.0, sq, 0.0) + 1j * np.where(disc < 0.0, sq, 0.0)
    lam1 = 0.5 * (-d + half)
    lam2 = 0.5 * (-d - half)
    return lam1, lam2, disc


def char_roots(p: ModelParams, r: float) -> RootPair:
    """Roots of lambda^2 + d(r) lambda + r^(2 sigma) = 0 at a single r >= 0."""
    if r < 0.0:
        raise DomainError(f"r must be nonnegative, got {r}")
    lam1, lam2, disc = root_arrays(p, np.array([float(r)]))
    l1 = complex(lam1[0])
    l2 = complex(lam2[0])
    confluent = abs(l1 - l2) <= CONFLUENCE_CUT * (abs(l1) + abs(l2))
    return RootPair(l1, l2, float(disc[0]), bool(confluent))


def phi1(z):
    """phi1(z) = (e^z - 1) / z, entire, with phi1(0) = 1.

    Series evaluation below |z| = 1e-3 keeps the relative error at the
    machine level on both branches.  Accepts complex scalars or arrays.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    small = np.abs(z) < _PHI1_SERIES_CUT
    safe = np.where(small, 1.0, z)
    with np.errstate(over="ignore"):  # Re z > 709 honestly yields inf
        direct = (np.exp(safe) - 1.0) / safe
    series = np.zeros_like(z)
    for c in reversed(_PHI1_COEFFS):
        series = series * z + c
    out = np.where(small, series, direct)
    return complex(out[0]) if scalar else out


@dataclass(frozen=True)
class KernelSet:
    """Both solution kernels and their time derivatives at one (t, r).

    The derivatives satisfy the first order system exactly by construction:
    dt_k0 = -r^(2 sigma) k1 and dt_k1 = k0 - d(r) k1, which together imply
    that each kernel solves the second order model ODE.
    """

    k0: complex
    k1: complex
    dt_k0: complex
    dt_k1: complex


def kernel_arrays(p: ModelParams, t: float, r: np.ndarray):
    """Vectorized kernels.  Returns (k0, k1, dt_k0, dt_k1) complex arrays.

    Imaginary parts are roundoff residue: the kernels are real for real
    data because complex roots only occur in conjugate pairs.
    """
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    r = np.asarray(r, dtype=float)
    lam1, lam2, _ = root_arrays(p, r)
    w = (lam1 - lam2) * t
    small = np.abs(w) < CONFLUENCE_CUT
    e1 = np.exp(lam1 * t)  # Re lambda <= 0, never overflows
    e2 = np.exp(lam2 * t)
    denom = np.where(small, 1.0, lam1 - lam2)
    k0_direct = (lam1 * e2 - lam2 * e1) / denom
    k1_direct = (e1 - e2) / denom
    # lanes outside the confluent region discard phi1, so clamp their
    # argument to keep the discarded branch from overflowing
    ph = phi1(np.where(small, w, 0.0))
    k1_conf = t * e2 * ph
    k0_conf = e2 * (1.0 - lam2 * t * ph)
    k0 = np.where(small, k0_conf, k0_direct)
    k1 = np.where(small, k1_conf, k1_direct)
    dt_k0 = -(r ** (2.0 * p.sigma)) * k1
    dt_k1 = k0 - damping_symbol(p, r) * k1
    return k0, k1, dt_k0, dt_k1


def kernel_eval(p: ModelParams, t: float, r: float) -> KernelSet:
    """Evaluate K0, K1 and their time derivatives at a single (t, r)."""
    if r < 0.0:
        raise DomainError(f"r must be nonnegative, got {r}")
    k0, k1, dt_k0, dt_k1 = kernel_arrays(p, float(t), np.array([float(r)]))
    return KernelSet(complex(k0[0]), complex(k1[0]), complex(dt_k0[0]), complex(dt_k1[0]))


class ProfileKind(Enum):
    """Asymptotic profile multipliers the solution kernels converge to.

    The diffusion pair belongs to the cases with the lower damping active
    (a = 1); the oscillatory pair to the purely upper-damped case
    (a, b) = (0, 1).  The J0/SIN members are the profiles for the solution
    itself (j = 0), the J1/COS members for its time derivative (j = 1).
    """

    DIFFUSION_J0 = "diffusion_j0"
    DIFFUSION_J1 = "diffusion_j1"
    OSC_SIN = "osc_sin"
    OSC_COS = "osc_cos"

    @property
    def derivative_order(self) -> int:
        return 1 if self in (ProfileKind.DIFFUSION_J1, ProfileKind.OSC_COS) else 0

    @property
    def oscillatory(self) -> bool:
        return self in (ProfileKind.OSC_SIN, ProfileKind.OSC_COS)


def profile_kind_for(p: ModelParams, j: int) -> ProfileKind:
    """Profile matching derivative order j for the case selected by (a, b)."""
    if j not in (0, 1):
        raise DomainError(f"j must be 0 or 1, got {j}")
    if p.a == 1:
        return ProfileKind.DIFFUSION_J1 if j else ProfileKind.DIFFUSION_J0
    return ProfileKind.OSC_COS if j else ProfileKind.OSC_SIN


def _check_profile_compat(p: ModelParams, kind: ProfileKind) -> None:
    if kind.oscillatory and (p.a, p.b) != (0, 1):
        raise DomainError(f"{kind.value} profile requires (a, b) = (0, 1)")
    if not kind.oscillatory and p.a != 1:
        raise DomainError(f"{kind.value} profile requires a = 1")


def profile_arrays(p: ModelParams, kind: ProfileKind, t: float, r: np.ndarray) -> np.ndarray:
    """Vectorized profile multiplier.  r = 0 is admissible only for the
    oscillatory kinds, where the removable singularity is filled in."""
    _check_profile_compat(p, kind)
    if t <= 0.0:
        raise DomainError(f"profile requires t > 0, got {t}")
    r = np.asarray(r, dtype=float)
    if kind.oscillatory:
        damp = np.exp(-0.5 * t * r ** (2.0 * p.delta2))
        phase = t * r**p.sigma
        if kind is ProfileKind.OSC_COS:
            return damp * np.cos(phase)
        # sin(t r^sigma) / r^sigma -> t as r -> 0
        rs = np.where(r > 0.0, r**p.sigma, 1.0)
        core = np.where(r > 0.0, np.sin(phase) / rs, t)
        return damp * core
    if np.any(r <= 0.0):
        raise DomainError("diffusion profiles are singular at r = 0; require r > 0")
    beta = 2.0 * (p.sigma - p.delta1)
    base = np.exp(-t * r**beta) / r ** (2.0 * p.delta1)
    if kind is ProfileKind.DIFFUSION_J1:
        return -(r**beta) * base
    return base


def profile_hat(p: ModelParams, kind: ProfileKind, t: float, r: float) -> float:
    """Profile multiplier at a single (t, r)."""
    return float(profile_arrays(p, kind, float(t), np.array([float(r)]))[0])


def lambda1_low_freq_expansion(p: ModelParams, r: float) -> float:
    """Two-term small-r expansion of -lambda1 (the slow decay rate).

    Case a = 1, b = 0:
        -lambda1 ~ r^(2(sigma - delta1)) + r^(2(2 sigma - 3 delta1)),
    case a = 1, b = 1:
        -lambda1 ~ r^(2 sigma) / (r^(2 delta1) + r^(2 delta2))
                   + r^(4 sigma) / (r^(2 delta1) + r^(2 delta2))^3.

    Only defined for a = 1 below the first discriminant radius, where the
    roots are real and lambda1 is the slowly decaying branch.
    """
    if p.a != 1:
        raise DomainError("low frequency expansion requires a = 1")
    radii = discriminant_radii(p)
    if not radii or not (0.0 < r < radii[0]):
        raise DomainError(
            f"r must lie in the low frequency zone (0, {radii[0] if radii else 'n/a'}), got {r}"
        )
    if p.b == 0:
        return r ** (2.0 * (p.sigma - p.delta1)) + r ** (2.0 * (2.0 * p.sigma - 3.0 * p.delta1))
    den = r ** (2.0 * p.delta1) + r ** (2.0 * p.delta2)
    return r ** (2.0 * p.sigma) / den + r ** (4.0 * p.sigma) / den**3


def _normalized_damping(p: ModelParams, x: float) -> float:
    """u(r) = d(r) / r^sigma evaluated at r = e^x; discriminant zeros solve u = 2."""
    r = math.exp(x)
    out = 0.0
    if p.a:
        out += r ** (2.0 * p.delta1 - p.sigma)
    if p.b:
        out += r ** (2.0 * p.delta2 - p.sigma)
    return out


def _bisect_log(p: ModelParams, x_lo: float, x_hi: float) -> float:
    """Bisection for u(e^x) = 2 on [x_lo, x_hi]; the bracket must straddle."""
    f_lo = _normalized_damping(p, x_lo) - 2.0
    for _ in range(200):
        if x_hi - x_lo <= 1e-14:
            break
        x_mid = 0.5 * (x_lo + x_hi)
        f_mid = _normalized_damping(p, x_mid) - 2.0
        if f_mid == 0.0:
            return math.exp(x_mid)
        if (f_lo > 0.0) == (f_mid > 0.0):
            x_lo, f_lo = x_mid, f_mid
        else:
            x_hi = x_mid
    return math.exp(0.5 * (x_lo + x_hi))


def discriminant_radii(p: ModelParams) -> list[float]:
    """Radii where d(r)^2 = 4 r^(2 sigma), i.e. where the roots collide.

    Writing u(r) = d(r)/r^sigma, the zeros solve u(r) = 2.  For a single
    damping term u is monotone in r, giving exactly one radius.  For
    a = b = 1, u is strictly convex in log r, giving two radii, or one at
    tangency (which happens exactly when delta1 + delta2 = sigma).
    Each radius is located by bisection on log r to 1e-12 relative.
    """
    if (p.a, p.b) == (1, 0):
        # u = r^(2 delta1 - sigma), decreasing; crosses 2 once
        x = math.log(4.0) / (4.0 * p.delta1 - 2.0 * p.sigma)  # analytic seed
        return [_bisect_log(p, x - 1.0, x + 1.0)]
    if (p.a, p.b) == (0, 1):
        x = math.log(4.0) / (4.0 * p.delta2 - 2.0 * p.sigma)
        return [_bisect_log(p, x - 1.0, x + 1.0)]
    # a = b = 1: u = r^(-phat) + r^(qhat) with phat, qhat > 0
    phat = p.sigma - 2.0 * p.delta1
    qhat = 2.0 * p.delta2 - p.sigma
    x_min = math.log(phat / qhat) / (2.0 * (p.delta2 - p.delta1))
    u_min = _normalized_damping(p, x_min)
    if u_min > 2.0 + 1e-12:
        return []
    if u_min > 2.0 - 1e-12:
        return [math.exp(x_min)]
    x_lo = x_min - 1.0
    while _normalized_damping(p, x_lo) <= 2.0:
        x_lo -= 1.0
    x_hi = x_min + 1.0
    while _normalized_damping(p, x_hi) <= 2.0:
        x_hi += 1.0
    return [_bisect_log(p, x_lo, x_min), _bisect_log(p, x_min, x_hi)]
