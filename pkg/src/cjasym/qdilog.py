"""Quantum dilogarithm: base-strip contour integral, domain extension, and
the large-N comparison against the classical dilogarithm.

The base function is the contour integral of
``exp((2z-1)x) / (4 x sinh(x) sinh(gamma x / N))`` over the canonical path
(rays plus upper unit semicircle).  It converges on the vertical strip
``-Re(gamma)/2N < Re z < 1 + Re(gamma)/2N`` and extends to
``-1 < Re z < 2`` minus two excluded rays by unit shifts that pay an ``l1``
correction.  All evaluations require ``N > |gamma| / pi`` and a parameter
``gamma`` in the fourth quadrant.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .errors import DomainError, ExcludedRay, NonConvergent
from .numerics import (ArcSegment, ContourPath, LineSegment, default_prec,
                       gauss_legendre_nodes, quad_path, ray_cutoff)
from .special import l012


@dataclass(frozen=True)
class QDParams:
    """Evaluation datum: fourth-quadrant ``gamma``, integer ``N``, optional
    explicit ray truncation ``cutoff``.

    ``gamma`` must be constructed at (at least) the working precision of the
    evaluations it will be used for.
    """

    gamma: mpc
    N: int
    cutoff: mpf | None = None

    def __post_init__(self):
        g = self.gamma
        if not (mp.re(g) > 0 and mp.im(g) < 0):
            raise DomainError("gamma must satisfy Re > 0, Im < 0")
        if not self.N > abs(g) / mp.pi:
            raise DomainError("N must exceed |gamma|/pi")

    @property
    def half_width(self):
        """Half-width Re(gamma)/(2N) of the strip margin."""
        return mp.re(self.gamma) / (2 * self.N)


def decay_rates(z, params: QDParams):
    """Exponential decay rates of the integrand along the two rays."""
    rg = mp.re(params.gamma) / params.N
    x = mp.re(z)
    return 2 * x + rg, 2 - 2 * x + rg  # toward -inf, toward +inf


def in_base_strip(z, params: QDParams) -> bool:
    s = params.half_width
    return -s < mp.re(z) < 1 + s


def _near_ray(z, anchor, params: QDParams, tol) -> bool:
    """Is z within tol of {anchor + s*gamma} with s in the excluded range?"""
    g = params.gamma
    w = (mpc(z) - anchor) / g
    s = mp.re(w)
    dist = abs(mp.im(w)) * abs(g)
    lo, hi = mpf(1) / (2 * params.N), 1 / mp.re(g)
    if anchor == 0:
        in_range = -hi < s <= -lo + tol
        return in_range and dist <= tol
    in_range = lo - tol <= s < hi
    return in_range and dist <= tol


def on_excluded_ray(z, params: QDParams, prec: int | None = None) -> bool:
    """True if z lies (within 2^-(prec/2)) on one of the two removed rays."""
    prec = prec or default_prec()
    tol = mpf(2) ** (-(prec // 2))
    return _near_ray(z, mpc(0), params, tol) or _near_ray(z, mpc(1), params, tol)


def omega_contains(z, params: QDParams) -> bool:
    """Membership in the two-strip region minus the two closed triangles."""
    z = mpc(z)
    s = params.half_width
    x = mp.re(z)
    if not (-1 + s < x < 2 - s):
        return False
    g = params.gamma
    in_tri0 = x <= 0 and mp.im(z) >= 0 and mp.im(z / g) <= 0
    in_tri1 = x >= 1 and mp.im(z) <= 0 and mp.im((z - 1) / g) >= 0
    return not (in_tri0 or in_tri1)


def omega_star_contains(z, params: QDParams, nu=mpf("0.05"), M=3) -> bool:
    """Membership in the closed nu-trimmed region where the large-N limit is
    uniform (nu < 1/4; M bounds |Im z|)."""
    z = mpc(z)
    nu = mpf(nu)
    x, y = mp.re(z), mp.im(z)
    if not (-1 + nu <= x <= 2 - nu and abs(y) <= M):
        return False
    g = params.gamma
    in_tri0 = (x < nu) and (y > -nu) and (mp.im((z - nu) / g) < 0)
    in_tri1 = (x > 1 - nu) and (y < nu) and (mp.im((z - 1 + nu) / g) > 0)
    return not (in_tri0 or in_tri1)


def bowtie_contains(z, gamma, nu=mpf("0.05")) -> bool:
    """The pair of sectors pinched at the origin between the real axis and
    the gamma direction, fattened by nu."""
    z = mpc(z)
    nu = mpf(nu)
    upper = mp.im(z) >= 0 and mp.im((z - nu) / gamma) <= 0
    lower = mp.im(z) <= 0 and mp.im((z + nu) / gamma) >= 0
    return upper or lower


def _integrand(params: QDParams, z):
    g, N = params.gamma, params.N
    c = 2 * z - 1

    def f(x):
        return mp.exp(c * x) / (x * mp.sinh(x) * mp.sinh(g * x / N))

    return f


def tn_base(z, params: QDParams, prec: int | None = None) -> mpc:
    """Contour-integral value on the base strip."""
    prec = prec or default_prec()
    with mp.workprec(prec + 32):
        z = mpc(z)
        if not in_base_strip(z, params):
            raise DomainError("z outside the base strip")
        d_lo, d_hi = decay_rates(z, params)
        cutoff = params.cutoff or ray_cutoff(min(d_lo, d_hi), prec, 48)
        path = ContourPath.omega(cutoff)
        val = quad_path(_integrand(params, z), path, prec + 16)
        return +(val / 4)


def _reduce_to_base(z, params: QDParams, prec: int):
    """Shift z into the base strip; returns (z_base, l1-correction)."""
    s = params.half_width
    g, N = params.gamma, params.N
    x = mp.re(z)
    if -s < x < 1 + s:
        return z, mpc(0)
    if -1 < x <= -s:
        if _near_ray(z, mpc(0), params, mpf(2) ** (-(prec // 2))):
            raise ExcludedRay("z is on the removed lower-left ray")
        corr = l012(1, N * z / g + mpf(1) / 2, prec)
        return z + 1, corr
    if 1 + s <= x < 2:
        if _near_ray(z, mpc(1), params, mpf(2) ** (-(prec // 2))):
            raise ExcludedRay("z is on the removed upper-right ray")
        corr = -l012(1, N * (z - 1) / g + mpf(1) / 2, prec)
        return z - 1, corr
    raise DomainError("z outside the extended domain -1 < Re z < 2")


def tn(z, params: QDParams, prec: int | None = None) -> mpc:
    """Extended function on ``-1 < Re z < 2`` minus the two removed rays.

    On the base strip this is ``tn_base``; outside, a unit shift plus an
    ``l1`` correction term.
    """
    prec = prec or default_prec()
    with mp.workprec(prec + 32):
        zb, corr = _reduce_to_base(mpc(z), params, prec)
        return +(tn_base(zb, params, prec) + corr)


def tn_l2_gap(z, params: QDParams, prec: int | None = None, *,
              nu=mpf("0.05"), M=3) -> mpc:
    """Difference tn(z) - (N / (2*pi*i*gamma)) * l2(z); O(1/N) uniformly on
    the nu-trimmed region."""
    prec = prec or default_prec()
    with mp.workprec(prec + 32):
        z = mpc(z)
        if not omega_star_contains(z, params, nu=nu, M=M):
            raise DomainError("z outside the uniform-limit region")
        lead = params.N / (2j * mp.pi * params.gamma) * l012(2, z, prec)
        return +(tn(z, params, prec) - lead)


# ---------------------------------------------------------------------------
# Shared-node batch evaluator
# ---------------------------------------------------------------------------

class TnEvaluator:
    """Fixed-panel evaluator for many values at one (gamma, N, prec).

    Builds the node/weight table of the truncated canonical path once; each
    evaluation then costs one exponential per node.  ``min_decay`` must lower
    bound the integrand decay rates of every argument that will be evaluated
    (after reduction to the base strip), and ``osc_max`` must bound
    ``|Im(2z - 1)|`` of those arguments.

    Ray panels grow as the integrand envelope shrinks: the panel at distance
    ``a`` has length ~ min(c1 * exp(min_decay*a / 2n), 1.2*a), the second cap
    keeping panels clear of the poles at 0 and +-pi*i.
    """

    def __init__(self, params: QDParams, prec: int, min_decay, *,
                 osc_max=1, degree: int | None = None, refine: int = 0):
        self.params = params
        self.prec = prec
        self.min_decay = mpf(min_decay)
        self.osc_max = mpf(osc_max)
        if self.min_decay <= 0:
            raise DomainError("min_decay must be positive")
        self.degree = degree or max(64, min(128, prec // 2)) + 32 * refine
        self._build(refine)
        self._twin = None

    def _ray_bounds(self, cutoff, refine: int):
        n = self.degree
        bits = mpf(self.prec + 64)
        base = 8 * n / (mp.e * self.osc_max) * mpf(2) ** (-bits / (2 * n))
        bounds = [mpf(1)]
        while bounds[-1] < cutoff:
            a = bounds[-1]
            ln = min(base * mp.exp(self.min_decay * a / (2 * n)),
                     mpf("1.2") * a) / 2**refine
            bounds.append(min(a + max(ln, mpf("0.5")), cutoff))
        return bounds

    def _build(self, refine: int):
        params, prec = self.params, self.prec
        with mp.workprec(prec + 32):
            cutoff = params.cutoff or ray_cutoff(self.min_decay, prec, 48)
            bounds = self._ray_bounds(cutoff, refine)
            segs = [LineSegment(mpc(-b), mpc(-a))
                    for a, b in zip(bounds, bounds[1:])][::-1]
            segs.append(ArcSegment(mpc(0), mpf(1), mpf(1), mpf(0)))
            segs += [LineSegment(mpc(a), mpc(b))
                     for a, b in zip(bounds, bounds[1:])]
            g, N = params.gamma, params.N
            nodes = gauss_legendre_nodes(self.degree, prec + 32)
            arc_split = 8 * (refine + 1)
            xs, ws = [], []
            for seg in segs:
                pieces = ([(mpf(j) / arc_split, mpf(j + 1) / arc_split)
                           for j in range(arc_split)]
                          if isinstance(seg, ArcSegment)
                          else [(mpf(0), mpf(1))])
                for a, b in pieces:
                    half = (b - a) / 2
                    mid = (a + b) / 2
                    for xg, wg in nodes:
                        t = mid + half * xg
                        x = seg.point(t)
                        jac = seg.derivative(t) * half
                        xs.append(x)
                        ws.append(wg * jac / (x * mp.sinh(x) * mp.sinh(g * x / N)))
            self._xs = xs
            self._ws = ws

    def _check_arg(self, z):
        params = self.params
        if not in_base_strip(z, params):
            raise DomainError("z outside the base strip")
        d_lo, d_hi = decay_rates(z, params)
        if min(d_lo, d_hi) < self.min_decay * (1 - mpf(2) ** -20):
            raise DomainError("argument decays slower than min_decay")
        if abs(mp.im(2 * z - 1)) > self.osc_max * (1 + mpf(2) ** -20):
            raise DomainError("argument oscillates faster than osc_max")

    def tn_base(self, z) -> mpc:
        """Base-strip value via the precomputed node table."""
        with mp.workprec(self.prec + 32):
            z = mpc(z)
            self._check_arg(z)
            c = 2 * z - 1
            exp_ = mp.exp
            total = mpc(0)
            for x, w in zip(self._xs, self._ws):
                total += w * exp_(c * x)
            return +(total / 4)

    def tn(self, z) -> mpc:
        with mp.workprec(self.prec + 32):
            zb, corr = _reduce_to_base(mpc(z), self.params, self.prec)
            return +(self.tn_base(zb) + corr)

    def tn_diff(self, z1, z2) -> mpc:
        """tn(z1) - tn(z2) in one pass over the node table."""
        with mp.workprec(self.prec + 32):
            zb1, corr1 = _reduce_to_base(mpc(z1), self.params, self.prec)
            zb2, corr2 = _reduce_to_base(mpc(z2), self.params, self.prec)
            self._check_arg(zb1)
            self._check_arg(zb2)
            c1, c2 = 2 * zb1 - 1, 2 * zb2 - 1
            exp_ = mp.exp
            total = mpc(0)
            for x, w in zip(self._xs, self._ws):
                total += w * (exp_(c1 * x) - exp_(c2 * x))
            return +(total / 4 + corr1 - corr2)

    def validate(self, probes) -> None:
        """Compare against a refined twin at the probe points; raises
        NonConvergent when the tables disagree."""
        if self._twin is None:
            self._twin = TnEvaluator(self.params, self.prec, self.min_decay,
                                     osc_max=self.osc_max, refine=1)
        tol = mpf(2) ** (-(self.prec - 6))
        for z in probes:
            a = self.tn(z)
            b = self._twin.tn(z)
            if abs(a - b) > tol * max(mpf(1), abs(a)):
                raise NonConvergent("node table failed refinement check")
