"""Limiting potential for the figure-eight evaluations, its finite-N
counterpart, block weights, saddle data, region predicates, and the
end-to-end reconstruction of the colored Jones value from exponential sums.

The construction assumes the deformation sits at the Alexander-polynomial
zero u = arccosh(3/2), where 2*sinh(u/2) = 1; the linear coefficient of the
potential is that u.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .errors import DomainError, TorsionSingular
from .jones import XiParams, kappa
from .numerics import default_prec
from .qdilog import QDParams, TnEvaluator, bowtie_contains, tn
from .special import l012, li2


@dataclass(frozen=True)
class PotentialCtx:
    """Evaluation context: the point data plus a block index 0 <= m <= p-1."""

    xi: XiParams
    m: int

    def __post_init__(self):
        if not 0 <= self.m <= self.xi.p - 1:
            raise ValueError("block index m must lie in [0, p-1]")

    def sigma(self, prec: int | None = None) -> mpc:
        """The order-two saddle 2*(m+1)*pi*i/xi of the shifted potential."""
        prec = prec or default_prec()
        with mp.workprec(prec + 8):
            return +(2 * (self.m + 1) * mp.pi * 1j / self.xi.xi(prec))

    def qd_params(self, prec: int | None = None) -> QDParams:
        prec = prec or default_prec()
        return QDParams(self.xi.gamma(prec), self.xi.N)


# ---------------------------------------------------------------------------
# Closed-form deformation data for the figure-eight knot
# ---------------------------------------------------------------------------

def phi_of_u(u, prec: int | None = None) -> mpc:
    """log(cosh u - 1/2 - sqrt((2 cosh u + 1)(2 cosh u - 3))/2), principal
    branch; solves e^phi + e^-phi = 2 cosh u - 1."""
    prec = prec or default_prec()
    with mp.workprec(prec + 16):
        u = mpc(u)
        if not 0 <= mp.re(u) <= kappa(prec) + mpf(2) ** -(prec // 2):
            raise DomainError("Re u must lie in [0, arccosh(3/2)]")
        c = mp.cosh(u)
        root = mp.sqrt(mpc((2 * c + 1) * (2 * c - 3)))
        return +mp.log(c - mpf(1) / 2 - root / 2)


def t_u_fig8(u, prec: int | None = None) -> mpc:
    """Adjoint torsion 2/sqrt((2 cosh u + 1)(2 cosh u - 3)); singular at the
    Alexander zero u = arccosh(3/2)."""
    prec = prec or default_prec()
    with mp.workprec(prec + 16):
        u = mpc(u)
        c = mp.cosh(u)
        if abs(2 * c - 3) < mpf(2) ** -(prec // 2):
            raise TorsionSingular("torsion diverges at u = arccosh(3/2)")
        return +(2 / mp.sqrt(mpc((2 * c + 1) * (2 * c - 3))))


def s_u_fig8(u, prec: int | None = None) -> mpc:
    """Growth constant Li2(e^(-u-phi)) - Li2(e^(-u+phi)) + u*(phi + 2*pi*i)."""
    prec = prec or default_prec()
    with mp.workprec(prec + 16):
        u = mpc(u)
        ph = phi_of_u(u, prec)
        val = (li2(mp.exp(-u - ph), prec) - li2(mp.exp(-u + ph), prec)
               + u * (ph + 2j * mp.pi))
        return +val


# ---------------------------------------------------------------------------
# Limiting potential and derivatives
# ---------------------------------------------------------------------------

def big_f(z, xi: XiParams, prec: int | None = None, derivative: int = 0) -> mpc:
    """Limiting potential F and its first three derivatives.

    F is assembled from the exponential-argument dilogarithm at the two
    shifted arguments gamma*(1 -+ z) - p + {1, 0}; the closed forms of the
    derivatives avoid differencing.
    """
    prec = prec or default_prec()
    with mp.workprec(prec + 16):
        z = mpc(z)
        u = xi.u_value(prec)
        xiv = xi.xi(prec)
        g = xi.gamma(prec)
        p = xi.p
        if derivative == 0:
            a1 = l012(2, g * (1 - z) - p + 1, prec)
            a2 = l012(2, g * (1 + z) - p, prec)
            return +((a1 - a2) / xiv - u * z + 4 * p * mp.pi**2 / xiv)
        if derivative == 1:
            b1 = l012(1, g * (1 - z) - p + 1, prec)
            b2 = l012(1, g * (1 + z) - p, prec)
            return +(b1 + b2 - u)
        ez = mp.exp(xiv * z)
        den = 3 - ez - 1 / ez
        if derivative == 2:
            return +(xiv * (1 / ez - ez) / den)
        if derivative == 3:
            return +(xiv**2 * (4 - 3 * (ez + 1 / ez)) / den**2)
        raise ValueError("derivative order must be 0..3")


def phi_m(z, ctx: PotentialCtx, prec: int | None = None, derivative: int = 0) -> mpc:
    """Shifted limiting potential; block m lives between the horizontal
    lines Im(xi z) = 2*m*pi and 2*(m+2)*pi."""
    prec = prec or default_prec()
    with mp.workprec(prec + 16):
        shift = 2 * ctx.m * mp.pi * 1j / ctx.xi.xi(prec)
        return big_f(mpc(z) - shift, ctx.xi, prec, derivative)


def f_n(z, xi: XiParams, prec: int | None = None, evaluator: TnEvaluator | None = None) -> mpc:
    """Finite-N potential from the quantum dilogarithm difference."""
    prec = prec or default_prec()
    with mp.workprec(prec + 16):
        z = mpc(z)
        g = xi.gamma(prec)
        p, N = xi.p, xi.N
        u = xi.u_value(prec)
        a1 = g * (1 - z) - p + 1
        a2 = g * (1 + z) - p
        if evaluator is not None:
            diff = evaluator.tn_diff(a1, a2)
        else:
            params = QDParams(g, N)
            diff = tn(a1, params, prec) - tn(a2, params, prec)
        return +(diff / N - u * z - 2 * p * mp.pi * 1j / g)


def varphi_mn(z, ctx: PotentialCtx, prec: int | None = None,
              evaluator: TnEvaluator | None = None) -> mpc:
    """Finite-N counterpart of the shifted potential."""
    prec = prec or default_prec()
    with mp.workprec(prec + 16):
        shift = 2 * ctx.m * mp.pi * 1j / ctx.xi.xi(prec)
        return f_n(mpc(z) - shift, ctx.xi, prec, evaluator)


def beta_pm(ctx: PotentialCtx, prec: int | None = None) -> mpc:
    """Block weight: an m-fold product of (1 - e^(4(p-+j) N pi^2 / xi))
    pairs times e^(-4 m p N pi^2 / xi); the weights sum to the small-color
    Jones value at e^(4 pi^2 N / xi)."""
    prec = prec or default_prec()
    with mp.workprec(prec + 16):
        xiv = ctx.xi.xi(prec)
        p, N, m = ctx.xi.p, ctx.xi.N, ctx.m
        base = 4 * N * mp.pi**2 / xiv
        out = mp.exp(-m * p * base)
        for j in range(1, m + 1):
            out *= (1 - mp.exp((p - j) * base)) * (1 - mp.exp((p + j) * base))
        return +out


def reconstruct_jones(xi: XiParams, prec: int | None = None,
                      evaluator: TnEvaluator | None = None) -> mpc:
    """Rebuild the colored Jones value from the finite-N exponential sums.

    Equals ``jones_fig8(N, q)`` exactly.  The exponential-sum form drops the
    k = 0 empty-product term of the defining sum (the constant 1 added
    below), and its top summand k = N sits on an excluded ray where the
    summand's limiting value is zero, so it is skipped.
    """
    prec = prec or default_prec()
    p, N = xi.p, xi.N
    with mp.workprec(prec + 16):
        xiv = xi.xi(prec)
        if evaluator is None:
            evaluator = TnEvaluator(QDParams(xi.gamma(prec), N), prec,
                                    min_decay=mpf(2 * p) / N * mpf("0.999"))
        total = mpc(0)
        for m in range(p):
            ctx = PotentialCtx(xi, m)
            lo = int(mp.floor(mpf(m) * N / p)) + 1
            hi = int(mp.floor(mpf(m + 1) * N / p))
            block = mpc(0)
            for k in range(lo, hi + 1):
                if k == N:
                    continue  # summand -> 0 on the excluded ray
                w = mpf(2 * k + 1) / (2 * N)
                block += mp.exp(N * varphi_mn(w, ctx, prec, evaluator))
            total += beta_pm(ctx, prec) * block
        return +(1 + (1 - mp.exp(-4 * p * N * mp.pi**2 / xiv)) * total)


# ---------------------------------------------------------------------------
# Region predicates
# ---------------------------------------------------------------------------

class RegionId(enum.Enum):
    THETA = "theta"            # nu-trimmed uniform-convergence region
    XI_PENTAGON = "pentagon"   # pentagonal Poisson region
    DELTA_TRIANGLES = "delta"  # removed triangles in the qdilog plane
    BOWTIE = "bowtie"          # pinched sectors in the qdilog plane
    W_PLUS = "w+"              # above the saddle level set, inside pentagon
    W_MINUS = "w-"             # below the saddle level set, inside pentagon


def nu_chi_constraints(p: int, m: int, nu, chi, prec: int | None = None) -> bool:
    """Whether (nu, chi) satisfy the inclusion constraints that put the
    pentagon inside the nu-trimmed convergence region."""
    prec = prec or default_prec()
    with mp.workprec(prec + 8):
        nu, chi = mpf(nu), mpf(chi)
        kap = kappa(prec)
        xi2 = kap**2 + (2 * p * mp.pi) ** 2
        t = 2 * p * mp.pi * (kap + 2 * p * mp.pi)
        ok = nu + chi < 1 - (p + m) * (kap / (2 * p * mp.pi)) ** 2
        ok &= t * nu + xi2 * chi < (p + m) * kap**2
        ok &= 2 * nu * chi + (2 * m + 3) * nu + 2 * (2 * m - p + 1) * chi < p - m
        if m < p - 1:
            ok &= t * nu + xi2 * chi < (p - m - 1) * kap**2
        return bool(ok)


def default_nu_chi(p: int, m: int, prec: int | None = None) -> tuple:
    """Feasible (nu, chi) for the pentagon-in-region inclusion.

    Scaled from the binding constraints; a fixed pair cannot work for all
    (p, m), so the defaults adapt and are checked before being returned.
    """
    prec = prec or default_prec()
    with mp.workprec(prec + 8):
        kap = kappa(prec)
        xi2 = kap**2 + (2 * p * mp.pi) ** 2
        t = 2 * p * mp.pi * (kap + 2 * p * mp.pi)
        budget = (p + m) * kap**2
        if m < p - 1:
            budget = min(budget, (p - m - 1) * kap**2)
        nu, chi = budget / (4 * t), budget / (4 * xi2)
        for _ in range(40):
            if nu_chi_constraints(p, m, nu, chi, prec):
                return +nu, +chi
            nu, chi = nu / 2, chi / 2
        raise DomainError("no feasible (nu, chi) found")


def _pentagon_contains(z, ctx: PotentialCtx, chi, nu, prec) -> bool:
    with mp.workprec(prec + 8):
        z = mpc(z)
        p, m = ctx.xi.p, ctx.m
        kap = kappa(prec)
        xiv = ctx.xi.xi(prec)
        xi2 = abs(xiv) ** 2
        chi = mpf(chi)
        x, y = mp.re(z), mp.im(z)
        if not mpf(m - chi) / p < x < mpf(m + 1 + chi) / p:
            return False
        if not -2 * (m + 1) * kap * mp.pi / xi2 < y < (p + m) * kap / (2 * p**2 * mp.pi):
            return False
        imxz = mp.im(xiv * z)
        if not imxz + (2 * chi + 1) * xi2 / (2 * (m + 1) * kap) * y > 2 * (m - chi) * mp.pi:
            return False
        if m == p - 1:
            # remove the diamond next to the point 1
            nu = mpf(nu)
            in_nabla = (2 * (m + 1 - nu) * mp.pi < imxz <= 2 * (m + 2 - nu) * mp.pi
                        and mp.re(xiv * z) >= kap - 2 * mp.pi * nu
                        and y > 2 * (1 - p + m - nu) * mp.pi * kap / xi2)
            if x < 1 + chi / p and in_nabla:
                return False
        return True


def _theta_star_contains(z, ctx: PotentialCtx, nu, M, prec) -> bool:
    with mp.workprec(prec + 8):
        z = mpc(z)
        p, m = ctx.xi.p, ctx.m
        kap = kappa(prec)
        xiv = ctx.xi.xi(prec)
        xi2 = abs(xiv) ** 2
        nu = mpf(nu)
        rxz, ixz = mp.re(xiv * z), mp.im(xiv * z)
        y = mp.im(z)
        if not (2 * (m - 1 + nu) * mp.pi <= ixz <= 2 * (m + 2 - nu) * mp.pi
                and abs(rxz) <= 2 * M * mp.pi - kap):
            return False
        lower_band = ixz < 2 * (m + nu) * mp.pi
        upper_band = ixz > 2 * (m + 1 - nu) * mp.pi
        if (lower_band and rxz < kap + 2 * mp.pi * nu
                and y < 2 * (nu - p + m) * mp.pi * kap / xi2):
            return False
        if (upper_band and rxz >= kap - 2 * mp.pi * nu
                and y > 2 * (1 - p + m - nu) * mp.pi * kap / xi2):
            return False
        if (lower_band and rxz < -kap + 2 * mp.pi * nu
                and y < 2 * (nu + p + m) * mp.pi * kap / xi2):
            return False
        if (upper_band and rxz > -kap - 2 * mp.pi * nu
                and y > 2 * (p + m + 1 - nu) * mp.pi * kap / xi2):
            return False
        return True


def region_contains(region: RegionId, z, ctx: PotentialCtx,
                    prec: int | None = None, *, nu=None, chi=None, M=3) -> bool:
    """Exact inequality evaluation of the named region's defining
    half-planes; W+- compares Re of the shifted potential against its value
    at the saddle."""
    prec = prec or default_prec()
    if nu is None or chi is None:
        d_nu, d_chi = default_nu_chi(ctx.xi.p, ctx.m, prec)
        nu = d_nu if nu is None else nu
        chi = d_chi if chi is None else chi
    if region is RegionId.THETA:
        return _theta_star_contains(z, ctx, nu, M, prec)
    if region is RegionId.XI_PENTAGON:
        return _pentagon_contains(z, ctx, chi, nu, prec)
    if region is RegionId.DELTA_TRIANGLES:
        params = ctx.qd_params(prec)
        with mp.workprec(prec + 8):
            z = mpc(z)
            s = params.half_width
            g = params.gamma
            x = mp.re(z)
            tri0 = (-1 + s < x <= 0 and mp.im(z) >= 0 and mp.im(z / g) <= 0)
            tri1 = (1 <= x < 2 - s and mp.im(z) <= 0 and mp.im((z - 1) / g) >= 0)
            return bool(tri0 or tri1)
    if region is RegionId.BOWTIE:
        return bowtie_contains(z, ctx.xi.gamma(prec), nu)
    if region in (RegionId.W_PLUS, RegionId.W_MINUS):
        if not _pentagon_contains(z, ctx, chi, nu, prec):
            return False
        with mp.workprec(prec + 8):
            level = mp.re(phi_m(z, ctx, prec)) - mp.re(phi_m(ctx.sigma(prec), ctx, prec))
            return bool(level > 0 if region is RegionId.W_PLUS else level < 0)
    raise ValueError(f"unknown region {region}")


def marked_points(ctx: PotentialCtx, prec: int | None = None) -> dict:
    """The labeled pentagon corners and saddle-line intersections used by the
    descent-path arguments (P0..P7, P34, P70, sigma)."""
    prec = prec or default_prec()
    with mp.workprec(prec + 8):
        p, m = ctx.xi.p, ctx.m
        kap = kappa(prec)
        xiv = ctx.xi.xi(prec)
        xibar = mp.conj(xiv)
        xi2 = abs(xiv) ** 2
        sig = ctx.sigma(prec)
        im_sig = mp.im(sig)
        top = (p + m) * kap / (2 * p**2 * mp.pi)
        pts = {
            "P0": mpc(mpf(m) / p),
            "P1": mpf(2 * m + 1) / (2 * p) + im_sig / (2 * p * mp.pi) * xibar,
            "P2": mpf(m + 1) / p - 1j * im_sig,
            "P3": mpc(mpf(m + 1) / p),
            "P4": mpf(m + 1) / p + 1j * top,
            "P5": mpf(m + 1) / p - (p + m) * kap / (4 * p**3 * mp.pi**2) * xibar,
            "P6": mpf(2 * m + 1) / (2 * p) - (p + m) * kap / (4 * p**3 * mp.pi**2) * xibar,
            "P7": mpf(m) / p + 1j * top,
            "P34": (m + 1) * xibar * 1j / (2 * p**2 * mp.pi),
            "P70": m * xibar * 1j / (2 * p**2 * mp.pi),
            "sigma": sig,
        }
        return {k: +v for k, v in pts.items()}
