"""Precision-parameterized complex arithmetic, contour quadrature, quartic solver.

Values are mpmath ``mpf``/``mpc`` numbers; every operation takes an explicit
working precision in bits (``prec``) and runs under ``mp.workprec``.  Default
precision comes from the ``CJASYM_PREC`` environment variable (128 if unset).

Series and quadrature sums are accumulated strictly left to right so that
identical inputs produce bit-identical outputs.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from mpmath import mp, mpc, mpf

from .errors import DegenerateLeadingCoefficient, NonConvergent, TailBoundViolated

LN2 = math.log(2)


def default_prec() -> int:
    """Working precision in bits, from CJASYM_PREC (minimum 64, default 128)."""
    try:
        return max(64, int(os.environ.get("CJASYM_PREC", "128")))
    except ValueError:
        return 128


def to_mpc(z) -> mpc:
    return mpc(z)


# ---------------------------------------------------------------------------
# Gauss-Legendre nodes
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def gauss_legendre_nodes(n: int, prec: int) -> tuple:
    """Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1].

    Newton iteration on the Legendre recurrence, carried out at ``prec + 24``
    bits; cached per (n, prec).
    """
    with mp.workprec(prec + 24):
        tol = mpf(2) ** (-(prec + 12))
        pairs = []
        for i in range(1, n // 2 + 2):
            if 2 * i > n + 1:
                break
            x = mpf(math.cos(math.pi * (i - 0.25) / (n + 0.5)))
            if 2 * i == n + 1:
                x = mpf(0)  # middle node of odd n
            for _ in range(100):
                p0, p1 = mpf(1), x
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                if x == 0:
                    dp = n * (x * p1 - p0) / (x * x - 1)
                    break
                dp = n * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < tol:
                    p0, p1 = mpf(1), x
                    for k in range(2, n + 1):
                        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                    dp = n * (x * p1 - p0) / (x * x - 1)
                    break
            else:
                raise NonConvergent(f"Gauss-Legendre node {i}/{n} did not converge")
            w = 2 / ((1 - x * x) * dp * dp)
            pairs.append((x, w))
        nodes = []
        for x, w in pairs:
            if x == 0:
                nodes.append((x, w))
            else:
                nodes.append((-x, w))
                nodes.append((x, w))
        nodes.sort(key=lambda t: t[0])
        return tuple(nodes)


# ---------------------------------------------------------------------------
# Contour paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LineSegment:
    """Directed straight segment from ``start`` to ``end``."""

    start: mpc
    end: mpc

    def point(self, t):
        return self.start + t * (self.end - self.start)

    def derivative(self, t):
        return self.end - self.start

    @property
    def first(self):
        return self.start

    @property
    def last(self):
        return self.end


@dataclass(frozen=True)
class ArcSegment:
    """Circular arc ``center + radius*exp(i*pi*theta)``, theta0 -> theta1.

    Angles are stored in units of pi (``theta0=1`` means angle pi) so the
    trigonometry is reconstituted exactly at whatever working precision the
    quadrature runs under.  Orientation follows the sign of
    ``theta1 - theta0``.
    """

    center: mpc
    radius: mpf
    theta0: mpf
    theta1: mpf

    def point(self, t):
        th = self.theta0 + t * (self.theta1 - self.theta0)
        return self.center + self.radius * mp.expjpi(th)

    def derivative(self, t):
        th = self.theta0 + t * (self.theta1 - self.theta0)
        return self.radius * 1j * mp.pi * mp.expjpi(th) * (self.theta1 - self.theta0)

    @property
    def first(self):
        return self.point(mpf(0))

    @property
    def last(self):
        return self.point(mpf(1))


class ContourPath:
    """Connected piecewise path (lines and arcs) in the complex plane."""

    def __init__(self, segments: Sequence):
        segments = tuple(segments)
        if not segments:
            raise ValueError("empty path")
        scale = max(mpf(1), max(abs(s.first) + abs(s.last) for s in segments))
        for a, b in zip(segments, segments[1:]):
            if abs(a.last - b.first) > scale * mpf(2) ** -30:
                raise ValueError("path segments are not connected")
        self.segments = segments

    @classmethod
    def line(cls, a, b) -> "ContourPath":
        return cls([LineSegment(mpc(a), mpc(b))])

    @classmethod
    def polyline(cls, *points) -> "ContourPath":
        pts = [mpc(p) for p in points]
        return cls([LineSegment(a, b) for a, b in zip(pts, pts[1:])])

    @classmethod
    def circle(cls, center, radius) -> "ContourPath":
        return cls([ArcSegment(mpc(center), mpf(radius), mpf(0), mpf(2))])

    @classmethod
    def upper_semicircle(cls, left_to_right: bool = True) -> "ContourPath":
        if left_to_right:
            return cls([ArcSegment(mpc(0), mpf(1), mpf(1), mpf(0))])
        return cls([ArcSegment(mpc(0), mpf(1), mpf(0), mpf(1))])

    @classmethod
    def omega(cls, cutoff, max_panel=None) -> "ContourPath":
        """The canonical integration path: (-cutoff,-1], upper unit
        semicircle, [1, cutoff), oriented left to right.

        Rays are pre-split into geometrically growing panels (capped at
        ``max_panel``) so the adaptive quadrature stays shallow.
        """
        cutoff = mpf(cutoff)
        if cutoff <= 1:
            raise ValueError("cutoff must exceed 1")
        bounds = [mpf(1)]
        ln = mpf(1)
        while bounds[-1] < cutoff:
            nxt = bounds[-1] + ln
            ln *= 2
            if max_panel is not None:
                ln = min(ln, mpf(max_panel))
            bounds.append(min(nxt, cutoff))
        segs = [LineSegment(mpc(-b), mpc(-a)) for a, b in zip(bounds, bounds[1:])][::-1]
        segs.append(ArcSegment(mpc(0), mpf(1), mpf(1), mpf(0)))
        segs += [LineSegment(mpc(a), mpc(b)) for a, b in zip(bounds, bounds[1:])]
        return cls(segs)

    def reversed(self) -> "ContourPath":
        out = []
        for s in self.segments[::-1]:
            if isinstance(s, LineSegment):
                out.append(LineSegment(s.end, s.start))
            else:
                out.append(ArcSegment(s.center, s.radius, s.theta1, s.theta0))
        return ContourPath(out)

    def __add__(self, other: "ContourPath") -> "ContourPath":
        return ContourPath(self.segments + other.segments)


def ray_cutoff(decay, prec_bits: int, margin_bits: int = 32):
    """Truncation point X with e^(-decay*X) below 2^-(prec_bits+margin).

    ``decay`` is the exponential decay rate of the integrand along the ray.
    """
    decay = mpf(decay)
    if decay <= 0:
        raise TailBoundViolated("integrand does not decay along the ray")
    return (prec_bits + margin_bits) * mpf(LN2) / decay


# ---------------------------------------------------------------------------
# Adaptive quadrature
# ---------------------------------------------------------------------------

def _gl_sum(F, a, b, nodes):
    half = (b - a) / 2
    mid = (a + b) / 2
    total = mpc(0)
    for x, w in nodes:
        total += w * F(mid + half * x)
    return total * half


def _adaptive(F, a, b, tol, nodes, depth):
    whole = _gl_sum(F, a, b, nodes)
    stack = [(a, b, whole, tol, depth)]
    total = mpc(0)
    while stack:
        a, b, whole, tol, depth = stack.pop()
        m = (a + b) / 2
        left = _gl_sum(F, a, m, nodes)
        right = _gl_sum(F, m, b, nodes)
        err = abs(whole - (left + right))
        if err <= tol:
            total += left + right
            continue
        if depth <= 0:
            raise NonConvergent("adaptive quadrature exceeded depth limit")
        stack.append((a, m, left, tol / 2, depth - 1))
        stack.append((m, b, right, tol / 2, depth - 1))
    return total


def quad_path(f: Callable, path: ContourPath, prec_bits: int | None = None,
              *, degree: int | None = None, max_depth: int = 60) -> mpc:
    """Integrate ``f`` along ``path`` with adaptive Gauss-Legendre panels.

    Each panel is accepted when the whole-panel rule agrees with its two
    halves; the estimated error of the result is below 2^-(prec_bits-10)
    relative to max(1, |integral|).
    """
    prec = prec_bits or default_prec()
    if degree is None:
        degree = max(32, min(64, prec // 4))
    with mp.workprec(prec + 32):
        nodes = gauss_legendre_nodes(degree, prec + 32)
        zero, one = mpf(0), mpf(1)
        integrands = []
        for seg in path.segments:
            integrands.append(lambda t, s=seg: f(s.point(t)) * s.derivative(t))
        rough = mpc(0)
        for F in integrands:
            rough += _gl_sum(F, zero, one, nodes)
        tol = mpf(2) ** (-(prec - 4)) * max(mpf(1), abs(rough))
        total = mpc(0)
        for F in integrands:
            total += _adaptive(F, zero, one, tol / len(integrands), nodes, max_depth)
        return total


# ---------------------------------------------------------------------------
# Polynomial solvers
# ---------------------------------------------------------------------------

def _solve_quadratic(b, c):
    """Roots of z^2 + b z + c, cancellation-safe."""
    disc = mp.sqrt(b * b - 4 * c)
    if mp.re(b * mp.conj(disc)) >= 0:
        q = -(b + disc) / 2
    else:
        q = -(b - disc) / 2
    if q == 0:
        return mpc(0), mpc(0)
    return q, c / q


def _solve_cubic(a, b, c):
    """Roots of z^3 + a z^2 + b z + c."""
    p = b - a * a / 3
    q = c + (2 * a**3 - 9 * a * b) / 27
    disc = mp.sqrt(q * q / 4 + p**3 / 27)
    for cand in (-q / 2 + disc, -q / 2 - disc):
        if abs(cand) > 0:
            u = cand ** mpf("1/3")
            break
    else:
        return [-a / 3] * 3
    omega = mp.expjpi(mpf(2) / 3)
    roots = []
    for k in range(3):
        uk = u * omega**k
        roots.append(uk - p / (3 * uk) - a / 3)
    return roots


def solve_quartic(c4, c3, c2, c1, c0, prec: int | None = None) -> list:
    """All four roots of c4 z^4 + ... + c0, closed form plus Newton polish.

    Roots are returned sorted by (real, imaginary) part; multiplicities are
    preserved.  Each root's quartic residual is below 2^-(prec-16) relative
    to the coefficient scale.
    """
    prec = prec or default_prec()
    with mp.workprec(prec + 48):
        c4, c3, c2, c1, c0 = (mpc(c) for c in (c4, c3, c2, c1, c0))
        scale = max(abs(c) for c in (c4, c3, c2, c1, c0))
        if scale == 0:
            raise DegenerateLeadingCoefficient("zero polynomial")
        if abs(c4) <= scale * mpf(2) ** (-prec):
            raise DegenerateLeadingCoefficient("leading coefficient underflows")
        a, b, c, d = c3 / c4, c2 / c4, c1 / c4, c0 / c4
        # depressed quartic u^4 + p u^2 + q u + r, z = u - a/4
        p = b - 3 * a * a / 8
        q = c - a * b / 2 + a**3 / 8
        r = d - a * c / 4 + a * a * b / 16 - 3 * a**4 / 256
        tiny = mpf(2) ** (-(prec + 24))
        if abs(q) <= tiny * max(mpf(1), abs(p), abs(r)):
            s1, s2 = _solve_quadratic(p, r)  # roots of w^2 + p w + r, u^2 = w
            us = [mp.sqrt(s1), -mp.sqrt(s1), mp.sqrt(s2), -mp.sqrt(s2)]
        else:
            ys = _solve_cubic(-p, -4 * r, 4 * p * r - q * q)
            y = max(ys, key=lambda t: abs(t - p))
            s = mp.sqrt(y - p)
            t = q / (2 * s)
            u1, u2 = _solve_quadratic(-s, y / 2 + t)
            u3, u4 = _solve_quadratic(s, y / 2 - t)
            us = [u1, u2, u3, u4]
        roots = [u - a / 4 for u in us]

        def poly(z):
            return (((c4 * z + c3) * z + c2) * z + c1) * z + c0

        def dpoly(z):
            return ((4 * c4 * z + 3 * c3) * z + 2 * c2) * z + c1

        guard = scale * mpf(2) ** (-prec // 2)
        polished = []
        for z in roots:
            for _ in range(3):
                dz = dpoly(z)
                if abs(dz) <= guard:
                    break
                z = z - poly(z) / dz
            polished.append(mpc(z))
        polished.sort(key=lambda z: (mp.re(z), mp.im(z)))
        return polished


# ---------------------------------------------------------------------------
# Finite differences (numerical derivative oracle)
# ---------------------------------------------------------------------------

def derivative_fd(f: Callable, z, n: int = 1, prec: int | None = None,
                  h_bits: int | None = None) -> mpc:
    """n-th derivative of ``f`` at ``z`` by central finite differences.

    First derivatives use the 5-point O(h^4) stencil, higher ones the
    binomial O(h^2) stencil; the function is evaluated at elevated internal
    precision so the result is accurate well beyond ``prec`` working bits.
    """
    prec = prec or default_prec()
    if h_bits is None:
        h_bits = prec // 3 if n == 1 else max(prec // (n + 2), 16)
    wp = prec * 3 + 16 * n
    with mp.workprec(wp):
        z = mpc(z)
        h = mpf(2) ** (-h_bits)
        if n == 1:
            val = (-f(z + 2 * h) + 8 * f(z + h) - 8 * f(z - h) + f(z - 2 * h)) / (12 * h)
        else:
            total = mpc(0)
            for i in range(n + 1):
                total += (-1) ** i * mp.binomial(n, i) * f(z + (mpf(n) / 2 - i) * h)
            val = total / h**n
    return +val
