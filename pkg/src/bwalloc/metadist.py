"""Distribution of the conditional success probability over point patterns.

Given the interferer positions, the success probability of a type-k link
(averaged over fading and everyone's chunk draws) is a product over
interferers. Its moments of any complex order come out of the planar
probability generating functional as a single radial integral; inverting the
imaginary-order moments recovers the full distribution, and matching two
real moments to a beta law gives a cheap approximation.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np
from scipy import integrate
from scipy.special import betainc as _betainc

from .allocation import _check_type, type_averaged_overlap
from .errors import DomainError, IntegrationError, OscillatoryIntegrationError
from .params import BandwidthConfig, NetworkParams

#: Inversion integral settings: panel width, cutoff, and the tail size at
#: which panel accumulation stops.
_PANEL_WIDTH = 2.0
_U_MAX = 200.0
_PANEL_TAIL = 1e-7
_MIN_U_BEFORE_STOP = 8.0

#: Variance below this is treated as a degenerate (point-mass) distribution.
_DEGENERATE_VAR = 1e-14


def _check_x(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or not 0.0 <= x <= 1.0:
        raise DomainError(f"reliability threshold x must be in [0, 1], got {x}")
    return x


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not math.isfinite(theta) or theta <= 0.0:
        raise DomainError(f"theta must be finite and > 0, got {theta}")
    return theta


def _overlap_weights(ba: BandwidthConfig, k: int) -> np.ndarray:
    return type_averaged_overlap(ba, k)


def _interference_discount(net, ba, k, theta, r, q=None):
    """h(r) = sum_{t>=1} q_t (1 - 1/(1 + theta (t/k) l(r)/l(R))), in [0, 1).

    The per-interferer factor of the conditional success probability is
    1 - h(r). Writing it through the discount keeps the far tail structurally
    exact: rounding in the overlap weights must not leave a constant residue
    in log(1 - h), where the compactified radial weights would amplify it.
    """
    if q is None:
        q = _overlap_weights(ba, k)
    ts = np.arange(1, k + 1, dtype=float)
    ratio = np.atleast_1d(
        np.asarray(net.pathloss.attenuation(r), dtype=float) / net.signal_attenuation()
    )
    scaled = theta * (ts / k)[:, None] * ratio[None, :]
    # 1 - 1/(1+s) stays exact at s = inf (power law toward the origin)
    frac = 1.0 - 1.0 / (1.0 + scaled)
    return (q[1:, None] * frac).sum(axis=0)


def _interferer_factor(net, ba, k, theta, r, q=None):
    """Per-interferer mean attenuation factor of the conditional success
    probability, at distance(s) r: sum_t q_t / (1 + theta (t/k) l(r)/l(R))."""
    return 1.0 - _interference_discount(net, ba, k, theta, r, q=q)


class _RadialProfile:
    """Gauss-Legendre discretization of the moment exponent's radial integral.

    The half-line is compactified with r = R tan(v); nodes are doubled until
    the exponent stabilizes on real and imaginary probe orders, so one grid
    serves every moment order requested afterwards.
    """

    _PROBES = (1.0, 7.0j, 31.0j)

    def __init__(self, net: NetworkParams, ba: BandwidthConfig, k: int, theta: float):
        self.net = net
        self.prefactor = 2.0 * math.pi * net.intensity
        r_link = net.link_distance
        q = _overlap_weights(ba, k)
        prev = None
        for n_nodes in (256, 512, 1024, 2048, 4096):
            nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
            v = (nodes + 1.0) * (math.pi / 4.0)
            w = weights * (math.pi / 4.0)
            r = r_link * np.tan(v)
            jac = r_link / np.cos(v) ** 2
            discount = _interference_discount(net, ba, k, theta, r, q=q)
            self._log_factor = np.log1p(-discount)
            self._weight = w * r * jac
            probes = np.array([self.log_moment(b) for b in self._PROBES])
            if prev is not None and np.all(np.abs(probes - prev) < 5e-8 * (1 + np.abs(probes))):
                return
            prev = probes
        raise IntegrationError(
            "radial moment integral did not converge on the node ladder"
        )

    def log_moment(self, b: complex) -> complex:
        """Exponent of the order-b moment."""
        if b == 0:
            return 0.0
        return -self.prefactor * np.sum((1.0 - np.exp(b * self._log_factor)) * self._weight)

    def moment(self, b: complex) -> complex:
        return np.exp(self.log_moment(b))

    def log_slope_at_zero(self) -> float:
        """d/db of the moment exponent at b = 0 (a nonpositive real)."""
        return float(self.prefactor * np.sum(self._log_factor * self._weight))


@lru_cache(maxsize=64)
def _profile(net: NetworkParams, ba: BandwidthConfig, k: int, theta: float) -> _RadialProfile:
    # parameter records are frozen, so one converged grid serves all the
    # moment orders and reliability thresholds evaluated against it
    return _RadialProfile(net, ba, k, theta)


def moment_b_k(
    net: NetworkParams, ba: BandwidthConfig, k: int, theta: float, b: complex
) -> complex:
    """Order-b moment of the conditional success probability of a type-k link.

    Real orders are integrated adaptively on the compactified half-line;
    complex orders go through the converged radial grid, which tolerates the
    oscillation that defeats generic adaptive rules. Returns a float for real
    orders and a complex number otherwise.
    """
    theta = _check_theta(theta)
    k = _check_type(ba.n_chunks, k, "k")
    b = complex(b)
    if b == 0:
        return 1.0
    if b.imag != 0.0:
        return complex(_profile(net, ba, k, theta).moment(b))

    b_real = b.real
    r_link = net.link_distance
    q = _overlap_weights(ba, k)

    def integrand(v: float) -> float:
        r = r_link * math.tan(v)
        jac = r_link / math.cos(v) ** 2
        h = float(_interference_discount(net, ba, k, theta, r, q=q)[0])
        # 1 - (1 - h)^b without cancellation on the far tail
        return -math.expm1(b_real * math.log1p(-h)) * r * jac

    out = integrate.quad(integrand, 0.0, math.pi / 2.0, epsabs=1e-12, limit=200, full_output=1)
    if len(out) > 3:
        raise IntegrationError(f"moment quadrature failed: {out[3]}")
    return float(np.exp(-2.0 * math.pi * net.intensity * out[0]))


def meta_ccdf_gilpelaez(
    net: NetworkParams, ba: BandwidthConfig, k: int, theta: float, x: float
) -> float:
    """P(conditional success probability > x) by inversion of the
    imaginary-order moments: 1/2 + (1/pi) int_0^inf Im(e^{-ju ln x} M_ju)/u du."""
    theta = _check_theta(theta)
    k = _check_type(ba.n_chunks, k, "k")
    x = _check_x(x)
    if x == 0.0:
        return 1.0
    if x == 1.0:
        return 0.0

    profile = _profile(net, ba, k, theta)
    ln_x = math.log(x)
    slope = profile.log_slope_at_zero()

    def integrand(u: float) -> float:
        if u < 1e-8:
            # series limit of Im(e^{-ju ln x} M_ju)/u at u = 0
            return slope - ln_x
        m = profile.moment(1j * u)
        return (cmath.exp(-1j * u * ln_x) * m).imag / u

    total = 0.0
    u_lo = 0.0
    while u_lo < _U_MAX:
        out = integrate.quad(
            integrand, u_lo, u_lo + _PANEL_WIDTH, epsabs=1e-9, limit=100, full_output=1
        )
        if len(out) > 3:
            raise OscillatoryIntegrationError(
                f"inversion integral failed on panel [{u_lo}, {u_lo + _PANEL_WIDTH}]: {out[3]}"
            )
        total += out[0]
        u_lo += _PANEL_WIDTH
        if abs(out[0]) < _PANEL_TAIL and u_lo >= _MIN_U_BEFORE_STOP:
            break
    return min(1.0, max(0.0, 0.5 + total / math.pi))


def beta_shape_parameters(
    net: NetworkParams, ba: BandwidthConfig, k: int, theta: float
) -> tuple[float, float]:
    """Shape pair of the beta law matching the first two moments of the
    conditional success probability. Raises on degenerate variance."""
    m1 = float(moment_b_k(net, ba, k, theta, 1.0))
    m2 = float(moment_b_k(net, ba, k, theta, 2.0))
    var = m2 - m1 * m1
    if var < _DEGENERATE_VAR:
        raise DomainError("conditional success probability is degenerate; no beta fit")
    spread = m1 * (1.0 - m1) / var - 1.0
    if spread <= 0.0:
        raise DomainError("moment pair is inconsistent with a beta law")
    return m1 * spread, (1.0 - m1) * spread


def meta_ccdf_beta(
    net: NetworkParams, ba: BandwidthConfig, k: int, theta: float, x: float
) -> float:
    """Beta approximation of the conditional-success ccdf via two-moment
    matching; degenerates gracefully to a step at the mean."""
    theta = _check_theta(theta)
    k = _check_type(ba.n_chunks, k, "k")
    x = _check_x(x)
    try:
        a, b = beta_shape_parameters(net, ba, k, theta)
    except DomainError:
        m1 = float(moment_b_k(net, ba, k, theta, 1.0))
        return 1.0 if x < m1 else 0.0
    return float(1.0 - _betainc(a, b, x))


def meta_ccdf(
    net: NetworkParams,
    ba: BandwidthConfig,
    k: int,
    theta: float,
    x: float,
    method: str = "gilpelaez",
) -> float:
    """Per-type ccdf with method selection: "gilpelaez", "beta", or "auto"
    (inversion with beta fallback on oscillatory failure)."""
    if method == "gilpelaez":
        return meta_ccdf_gilpelaez(net, ba, k, theta, x)
    if method == "beta":
        return meta_ccdf_beta(net, ba, k, theta, x)
    if method == "auto":
        try:
            return meta_ccdf_gilpelaez(net, ba, k, theta, x)
        except OscillatoryIntegrationError:
            return meta_ccdf_beta(net, ba, k, theta, x)
    raise DomainError(f"unknown method {method!r}")


def meta_ccdf_overall(
    net: NetworkParams,
    ba: BandwidthConfig,
    theta: float,
    x: float,
    method: str = "gilpelaez",
) -> float:
    """Ccdf with the typical user's type averaged over the mix."""
    theta = _check_theta(theta)
    x = _check_x(x)
    return math.fsum(
        p_k * meta_ccdf(net, ba, k, theta, x, method=method)
        for k, p_k in enumerate(ba.type_probs, start=1)
        if p_k > 0.0
    )
