"""The two-sample discontinuous term K_n in direct and blocked form"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial import hermite_e
from scipy.special import comb, factorial
from scipy.stats import norm

from ..config import MAX_TAIL_EPS, tail_eps as default_tail_eps
from ..errors import InvalidModelError
from ..lattice import MeanSumModel
from .coefficients import LatticeAnchor, lattice_coefficients, xi_n
from .sawtooth import lattice_psi

logger = logging.getLogger(__name__)

ENVELOPE_SLACK = 2.0
ORDER_SLACK = 1e-9


@dataclass(frozen=True)
class BlockingConfig:
    """Block exponent, Taylor order and truncation threshold for blocked K_n.

    alpha = 0 is accepted as the degenerate edge where every block is a
    single integer.
    """

    alpha: float = 0.4
    r0: int = 8
    tail_eps: float = field(default_factory=default_tail_eps)

    def __post_init__(self):
        if not 0.0 <= self.alpha < 0.5:
            raise InvalidModelError(f"alpha must lie in [0, 1/2), got {self.alpha}")
        if int(self.r0) != self.r0 or self.r0 < 0:
            raise InvalidModelError(f"r0 must be a nonnegative integer, got {self.r0}")
        needed = 4 * self.alpha / (1 - 2 * self.alpha)
        if self.r0 < needed - ORDER_SLACK:
            raise InvalidModelError(
                f"r0={self.r0} is below 4 alpha / (1 - 2 alpha) = {needed:.6g}"
            )
        if not 0.0 < self.tail_eps <= MAX_TAIL_EPS:
            raise InvalidModelError(
                f"tail_eps must lie in (0, {MAX_TAIL_EPS}], got {self.tail_eps}"
            )

    def half_width(self, n: int) -> int:
        if self.alpha == 0:
            return 0
        return int(math.floor(n**self.alpha))


def envelope_radius(tail_eps: float) -> float:
    """Standard units beyond which a Gaussian factor is below tail_eps"""
    return math.sqrt(2.0 * math.log(1.0 / tail_eps)) + ENVELOPE_SLACK


def nu_window(
    a: float, b: float, c: float, tail_eps: float
) -> Optional[Tuple[int, int]]:
    """Integer range where both |a - b nu| and |c nu| stay inside the envelope"""
    t = envelope_radius(tail_eps)
    lo = max(-t / c, (a - t) / b)
    hi = min(t / c, (a + t) / b)
    if lo > hi:
        return None
    first, last = math.ceil(lo), math.floor(hi)
    if first > last:
        return None
    return first, last


def _check_tail_eps(tail_eps: float) -> float:
    if not 0.0 < tail_eps <= MAX_TAIL_EPS:
        raise InvalidModelError(
            f"tail_eps must lie in (0, {MAX_TAIL_EPS}], got {tail_eps}"
        )
    return tail_eps


def k_direct(
    model: MeanSumModel,
    x: float,
    tail_eps: Optional[float] = None,
    anchor: LatticeAnchor = "centered",
) -> float:
    """K_n(x) as a single sum over nu.

    gamma sum_nu phi(x/c1 - e2 n1^(1/2) nu / (sigma1 n2))
    phi(e2 nu / (sigma2 n2^(1/2))) psi(xi_n(x) - rho nu), with nu restricted
    to the window where both Gaussian factors exceed tail_eps.
    """
    eps = _check_tail_eps(default_tail_eps() if tail_eps is None else tail_eps)
    coef = lattice_coefficients(model, anchor)
    (p1, p2), (m1, m2) = model.populations, model.moments
    e1, e2, n1, n2 = p1.law.span, p2.law.span, p1.n, p2.n

    a = x / coef.c1
    b = e2 * math.sqrt(n1) / (m1.sigma * n2)
    c = e2 / (m2.sigma * math.sqrt(n2))
    window = nu_window(a, b, c, eps)
    if window is None:
        return 0.0

    nu = np.arange(window[0], window[1] + 1, dtype=np.float64)
    rho = e2 * n1 / (e1 * n2)
    terms = norm.pdf(a - b * nu) * norm.pdf(c * nu) * lattice_psi(
        xi_n(model, x, anchor) - rho * nu
    )
    return coef.gamma * math.fsum(terms.tolist())


def gaussian_pair_derivatives(
    u: np.ndarray, x: float, r_max: int, c1: float, c3: float, c4: float
) -> np.ndarray:
    """phi_r(u, x) for r = 0..r_max, shape u.shape + (r_max + 1,).

    phi(u, x) = phi(x/c1 - c3 u) phi(c4 u). Derivatives of each factor are
    Hermite multiples of the factor itself:
    d^k phi(a - c3 u) = c3^k He_k(a - c3 u) phi(a - c3 u) and
    d^j phi(c4 u) = (-c4)^j He_j(c4 u) phi(c4 u); the product rule combines them.
    """
    u = np.asarray(u, dtype=np.float64)
    z1 = x / c1 - c3 * u
    z2 = c4 * u
    basis = np.eye(r_max + 1)
    # He_k evaluated at every point, shape (r_max + 1,) + u.shape
    he1 = hermite_e.hermeval(z1, basis)
    he2 = hermite_e.hermeval(z2, basis)
    k = np.arange(r_max + 1).reshape((-1,) + (1,) * u.ndim)
    d1 = c3**k * he1 * norm.pdf(z1)
    d2 = (-c4) ** k * he2 * norm.pdf(z2)

    out = np.zeros((r_max + 1,) + u.shape)
    for r in range(r_max + 1):
        j = np.arange(r + 1)
        weights = comb(r, j).reshape((-1,) + (1,) * u.ndim)
        out[r] = np.sum(weights * d1[: r + 1] * d2[r::-1], axis=0)
    return np.moveaxis(out, 0, -1)


def gaussian_pair_derivative(
    u: float, x: float, r: int, c1: float, c3: float, c4: float
) -> float:
    """phi_r(u, x) at a single point"""
    return float(gaussian_pair_derivatives(np.asarray(u), x, r, c1, c3, c4)[..., r])


def k_blocked(
    model: MeanSumModel,
    x: float,
    cfg: Optional[BlockingConfig] = None,
    anchor: LatticeAnchor = "centered",
) -> float:
    """K_n(x) with nu grouped into blocks of 2 floor(n^alpha) + 1 integers.

    Inside block l (centre nubar_l = l (2h + 1), block 0 centred at 0) the
    Gaussian pair is expanded to order r0 about nubar_l / n1^(1/2):
    gamma sum_r sum_l phi_r(nubar_l / n1^(1/2), x) / (r! n1^(r/2))
    sum_{nu in block} (nu - nubar_l)^r psi(xi_n(x) - rho nu).
    """
    cfg = cfg or BlockingConfig()
    coef = lattice_coefficients(model, anchor)
    p1, p2 = model.populations
    e1, e2, n1, n2 = p1.law.span, p2.law.span, p1.n, p2.n
    root_n1 = math.sqrt(n1)

    window = nu_window(x / coef.c1, coef.c3 / root_n1, coef.c4 / root_n1, cfg.tail_eps)
    if window is None:
        return 0.0

    h = cfg.half_width(model.n)
    width = 2 * h + 1
    first_block = math.ceil((window[0] - h) / width)
    last_block = math.floor((window[1] + h) / width)
    centres = np.arange(first_block, last_block + 1) * width
    offsets = np.arange(-h, h + 1)
    logger.debug(
        "blocked K: %d blocks of %d integers, r0=%d", centres.size, width, cfg.r0
    )

    rho = e2 * n1 / (e1 * n2)
    xi = xi_n(model, x, anchor)
    nu = centres[:, None] + offsets[None, :]
    psi_matrix = lattice_psi(xi - rho * nu.astype(np.float64))
    powers = offsets.astype(np.float64)[:, None] ** np.arange(cfg.r0 + 1)[None, :]
    moments = psi_matrix @ powers

    r = np.arange(cfg.r0 + 1)
    derivs = gaussian_pair_derivatives(
        centres / root_n1, x, cfg.r0, coef.c1, coef.c3, coef.c4
    )
    scale = 1.0 / (factorial(r) * root_n1**r)
    terms = derivs * moments * scale[None, :]
    return coef.gamma * math.fsum(terms.ravel().tolist())
