import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cjasym.errors import DegenerateLeadingCoefficient, TailBoundViolated
from cjasym.numerics import (ArcSegment, ContourPath, LineSegment,
                             derivative_fd, gauss_legendre_nodes, quad_path,
                             ray_cutoff, solve_quartic)


def test_gl_nodes_integrate_polynomials_exactly():
    nodes = gauss_legendre_nodes(16, 128)
    with mp.workprec(160):
        # degree-31 polynomial integrated exactly
        total = mp.mpf(0)
        for x, w in nodes:
            total += w * (x**8 - 3 * x**5 + 2 * x**2 + 1)
        exact = mp.mpf(2) / 9 + mp.mpf(4) / 3 + 2
        assert abs(total - exact) < mp.mpf(2) ** -120


def test_quad_odd_function_vanishes():
    val = quad_path(lambda z: z, ContourPath.line(-1, 1), 128)
    assert abs(val) < mp.mpf(2) ** -118


def test_quad_semicircle_one_over_z():
    path = ContourPath.upper_semicircle()
    val = quad_path(lambda z: 1 / z, path, 128)
    with mp.workprec(160):
        assert abs(val - (-1j * mp.pi)) < mp.mpf(2) ** -118


def test_quad_exponential_tail():
    val = quad_path(lambda z: mp.exp(-z), ContourPath.line(0, 200), 128)
    assert abs(val - 1) < mp.mpf(2) ** -118


def test_quad_concatenation_and_reversal():
    f = lambda z: z**3 - 2j * z + 1
    p1 = ContourPath.line(-1, 0.5j)
    p2 = ContourPath.line(0.5j, 2)
    whole = quad_path(f, p1 + p2, 128)
    parts = quad_path(f, p1, 128) + quad_path(f, p2, 128)
    assert abs(whole - parts) < mp.mpf(2) ** -110
    rev = quad_path(f, (p1 + p2).reversed(), 128)
    assert abs(whole + rev) < mp.mpf(2) ** -110


def test_quad_closed_contour_no_poles():
    # rational function with poles at +-3i, far from the unit circle
    f = lambda z: (z**2 + 1) / (z**2 + 9)
    val = quad_path(f, ContourPath.circle(0, 1), 128)
    assert abs(val) < mp.mpf(2) ** -100


def test_quad_closed_contour_residue():
    val = quad_path(lambda z: 1 / z, ContourPath.circle(0, 1), 128)
    with mp.workprec(160):
        assert abs(val - 2j * mp.pi) < mp.mpf(2) ** -100


def test_omega_path_shape():
    path = ContourPath.omega(100)
    pts = [path.segments[0].first, path.segments[-1].last]
    assert mp.re(pts[0]) == -100 and mp.re(pts[1]) == 100
    arcs = [s for s in path.segments if isinstance(s, ArcSegment)]
    assert len(arcs) == 1 and arcs[0].theta0 > arcs[0].theta1


def test_ray_cutoff():
    x = ray_cutoff(0.5, 128)
    assert 200 < float(x) < 300
    with pytest.raises(TailBoundViolated):
        ray_cutoff(0, 128)


def test_disconnected_path_rejected():
    with pytest.raises(ValueError):
        ContourPath([LineSegment(mp.mpc(0), mp.mpc(1)),
                     LineSegment(mp.mpc(2), mp.mpc(3))])


def _poly_value(coeffs, z):
    acc = mp.mpc(0)
    for c in coeffs:
        acc = acc * z + c
    return acc


def test_quartic_roots_of_unity():
    roots = solve_quartic(1, 0, 0, 0, -1, 128)
    expected = sorted([mp.mpc(1), mp.mpc(-1), mp.mpc(1j), mp.mpc(-1j)],
                      key=lambda z: (mp.re(z), mp.im(z)))
    for r, e in zip(roots, expected):
        assert abs(r - e) < mp.mpf(2) ** -100


def test_quartic_quadruple_root():
    # (z-2)^4 = z^4 - 8 z^3 + 24 z^2 - 32 z + 16
    roots = solve_quartic(1, -8, 24, -32, 16, 128)
    for r in roots:
        assert abs(r - 2) < mp.mpf(2) ** -24  # quadruple root: reduced accuracy


def test_quartic_degenerate_leading():
    with pytest.raises(DegenerateLeadingCoefficient):
        solve_quartic(0, 1, 1, 1, 1, 128)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False,
                                   allow_infinity=False), min_size=4, max_size=4))
def test_quartic_reconstructs_coefficients(rts):
    with mp.workprec(192):
        coeffs = [mp.mpc(1)]
        for r in rts:
            new = [mp.mpc(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                new[i] += c
                new[i + 1] -= c * mp.mpc(r)
            coeffs = new
        roots = solve_quartic(*coeffs, prec=160)
        rebuilt = [mp.mpc(1)]
        for r in roots:
            new = [mp.mpc(0)] * (len(rebuilt) + 1)
            for i, c in enumerate(rebuilt):
                new[i] += c
                new[i + 1] -= c * r
            rebuilt = new
        scale = max(abs(c) for c in coeffs)
        for c1, c2 in zip(coeffs, rebuilt):
            assert abs(c1 - c2) <= scale * mp.mpf(2) ** -(160 - 12)


def test_quartic_residuals_vs_polyroots():
    # independent oracle: mpmath's own root finder
    coeffs = [mp.mpc(2, 1), mp.mpc(-1, 3), mp.mpc(0.5), mp.mpc(4, -2), mp.mpc(-3)]
    roots = solve_quartic(*coeffs, prec=160)
    with mp.workprec(200):
        oracle = mp.polyroots(coeffs, maxsteps=200, extraprec=80)
        oracle = sorted(oracle, key=lambda z: (mp.re(z), mp.im(z)))
        for r, o in zip(roots, oracle):
            assert abs(r - o) < mp.mpf(2) ** -120
        scale = max(abs(c) for c in coeffs)
        for r in roots:
            assert abs(_poly_value(coeffs, r)) < scale * mp.mpf(2) ** -(160 - 16)


def test_derivative_fd_first_and_higher():
    with mp.workprec(300):
        d1 = derivative_fd(mp.exp, mp.mpf(1), 1, 256)
        assert abs(d1 - mp.e) < mp.mpf(2) ** -200
        d4 = derivative_fd(mp.sin, mp.mpf("0.3"), 4, 256)
        assert abs(d4 - mp.sin(mp.mpf("0.3"))) < mp.mpf(10) ** -20
