"""Dilogarithm with a fixed branch, its exponential-argument variants, the
cosecant-derivative coefficient tables, and Gamma(1/3).

``li2`` is the principal dilogarithm with branch cut [1, +inf).  ``l012``
evaluates the three companion functions obtained by substituting
``exp(2*pi*i*z)`` (levels 0, 1, 2); the case split at ``Im z = 0`` encodes the
branch convention used throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpc, mpf

from .errors import BranchCutInput, DomainError
from .numerics import default_prec

_HALF = Fraction(1, 2)


def _li2_series(z):
    """Power series sum z^n/n^2; requires |z| <= 0.75."""
    term = z
    total = z
    n = 1
    eps = mpf(2) ** (-mp.prec - 8)
    while abs(term) / (n * n) > eps:
        n += 1
        term *= z
        total += term / (n * n)
    return total


def _li2_log_series(z):
    """Bernoulli series in w = -log(1-z); converges for |w| < 2*pi."""
    w = -mp.log(1 - z)
    total = w - w * w / 4  # n = 0 and n = 1 terms
    wpow = w**3  # w^(n+1), odd Bernoulli numbers beyond 1 vanish
    fact = mpf(6)  # (n+1)!
    eps = mpf(2) ** (-mp.prec - 8)
    n = 2
    while True:
        contrib = mp.bernoulli(n) * wpow / fact
        total += contrib
        if abs(contrib) < eps and n > 6:
            break
        wpow *= w * w
        fact *= (n + 2) * (n + 3)
        n += 2
        if n > 8 * mp.prec:
            raise DomainError("log-series for the dilogarithm did not converge")
    return total


def li2(z, prec: int | None = None) -> mpc:
    """Principal dilogarithm, branch cut on [1, +inf); li2(1) = pi^2/6.

    Power series inside |z| <= 1/2, the inversion identity outside |z| >= 2,
    reflection near z = 1, and a log-argument series on the remaining
    annulus.
    """
    prec = prec or default_prec()
    with mp.workprec(prec + 24):
        z = mpc(z)
        if mp.im(z) == 0:
            x = mp.re(z)
            if x == 1:
                return +(mp.pi**2 / 6)
            if x > 1:
                raise BranchCutInput("li2 is ambiguous on the cut (1, inf)")
        az = abs(z)
        if az <= mpf("0.5"):
            val = _li2_series(z)
        elif az >= 2:
            # z -> 1/z maps outside the disk of radius 2 into |w| <= 1/2
            val = -_li2_series(1 / z) - mp.pi**2 / 6 - mp.log(-z) ** 2 / 2
        elif abs(1 - z) <= mpf("0.25"):
            val = mp.pi**2 / 6 - mp.log(z) * mp.log(1 - z) - _li2_series(1 - z)
        else:
            val = _li2_log_series(z)
        return +val


def _check_l12_domain(z):
    if mp.im(z) == 0:
        x = mp.re(z)
        if x <= 0 or x >= 1:
            raise DomainError("argument on the real cut (-inf,0] or [1,inf)")


def l012(level: int, z, prec: int | None = None) -> mpc:
    """The exponential-argument companions of the dilogarithm.

    Level 0 is -2*pi*i/(1 - exp(-2*pi*i*z)); level 1 is a fixed-branch
    log(1 - exp(2*pi*i*z)); level 2 is a fixed-branch Li2(exp(2*pi*i*z)).
    Levels 1 and 2 are holomorphic off the real cuts (-inf,0] and [1,inf);
    the two half-plane formulas glue along (0, 1).
    """
    prec = prec or default_prec()
    with mp.workprec(prec + 24):
        z = mpc(z)
        if level == 0:
            if mp.im(z) == 0 and abs(mp.re(z) - mp.nint(mp.re(z))) == 0:
                raise DomainError("integer argument is a pole")
            return +(-2j * mp.pi / (1 - mp.expjpi(-2 * z)))
        if level == 1:
            _check_l12_domain(z)
            if mp.im(z) >= 0:
                return +mp.log(1 - mp.expjpi(2 * z))
            return +(1j * mp.pi * (2 * z - 1) + mp.log(1 - mp.expjpi(-2 * z)))
        if level == 2:
            _check_l12_domain(z)
            if mp.im(z) >= 0:
                return +li2(mp.expjpi(2 * z), prec + 24)
            poly = mp.pi**2 * (2 * z * z - 2 * z + mpf(1) / 3)
            return +(poly - li2(mp.expjpi(-2 * z), prec + 24))
        raise ValueError("level must be 0, 1, or 2")


def l012_shift_residual(z, prec: int | None = None) -> tuple:
    """Residuals of the unit-shift identities in the lower half plane.

    Returns (l1(z+1) - l1(z) - 2*pi*i, l2(z+1) - l2(z) - 4*pi^2*z); both
    vanish for Im z < 0.
    """
    prec = prec or default_prec()
    with mp.workprec(prec + 24):
        z = mpc(z)
        if mp.im(z) >= 0:
            raise DomainError("shift identities hold for Im z < 0")
        r1 = l012(1, z + 1, prec) - l012(1, z, prec) - 2j * mp.pi
        r2 = l012(2, z + 1, prec) - l012(2, z, prec) - 4 * mp.pi**2 * z
        return +r1, +r2


@dataclass(frozen=True)
class CscCoeffTable:
    """Exact coefficients a_{m,j} of the m-th derivative of csc^2(pi z).

    The derivative equals 2*(-pi)^m * csc^(m+2)(pi z) * sum_j a_{m,j}
    cos(j*pi*z) over 0 <= j <= m with j = m (mod 2).
    """

    m: int
    coeffs: dict  # j -> Fraction

    def total(self) -> Fraction:
        return sum(self.coeffs.values(), Fraction(0))


def csc_coeffs(m: int) -> CscCoeffTable:
    """Coefficient table built by the two-term recursion from a_{1,1} = 1.

    The recursion is 2*a_{m+1,k} = (m+k+3)*a_{m,k+1} + (m-k+3)*a_{m,k-1},
    with the k = 1 case doubling the a_{m,0} contribution.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    cur = {1: Fraction(1)}
    for mm in range(1, m):
        nxt = {}
        for k in range(0 if mm % 2 else 1, mm + 2, 2):
            up = cur.get(k + 1, Fraction(0))
            down = cur.get(k - 1, Fraction(0))
            if k == 1:
                val = (mm + k + 3) * up + 2 * (mm - k + 3) * down
            else:
                val = (mm + k + 3) * up + (mm - k + 3) * down
            nxt[k] = val * _HALF
        cur = nxt
    return CscCoeffTable(m, cur)


def csc_derivative(m: int, z, prec: int | None = None) -> mpc:
    """m-th derivative of csc^2(pi z) from the exact coefficient table."""
    prec = prec or default_prec()
    table = csc_coeffs(m)
    with mp.workprec(prec + 16):
        z = mpc(z)
        s = mpc(0)
        for j in sorted(table.coeffs):
            a = table.coeffs[j]
            s += mpf(a.numerator) / a.denominator * mp.cospi(j * z)
        return +(2 * (-mp.pi) ** m * mp.csc(mp.pi * z) ** (m + 2) * s)


def gamma_third(prec: int | None = None) -> mpf:
    """Gamma(1/3) at the requested precision."""
    prec = prec or default_prec()
    with mp.workprec(prec + 8):
        return +mp.gamma(mpf(1) / 3)
