import mpmath as mp
import pytest

from cjasym.errors import DomainError, ExcludedRay
from cjasym.jones import XiParams
from cjasym.qdilog import (QDParams, TnEvaluator, bowtie_contains,
                           omega_contains, omega_star_contains, tn, tn_base,
                           tn_l2_gap)
from cjasym.special import l012

PREC = 160


def make_params(p, N, prec=PREC):
    return QDParams(XiParams("kappa", p, N).gamma(prec), N)


def test_params_validation():
    with mp.workprec(PREC):
        with pytest.raises(DomainError):
            QDParams(mp.mpc(-1, -0.5), 50)
        with pytest.raises(DomainError):
            QDParams(mp.mpc(1, 0.5), 50)
        with pytest.raises(DomainError):
            QDParams(mp.mpc(20, -0.5), 5)  # N <= |gamma|/pi


def test_unit_shift_identity():
    # tn(z) - tn(z+1) = l1(N z/gamma + 1/2) on the central sliver
    params = make_params(1, 60)
    with mp.workprec(PREC + 32):
        z = mp.mpc(0, "0.001")
        lhs = tn_base(z, params, PREC) - tn_base(z + 1, params, PREC)
        rhs = l012(1, 60 * z / params.gamma + mp.mpf(1) / 2, PREC)
        assert abs(lhs - rhs) < mp.mpf(2) ** -(PREC - 16)


def test_gamma_shift_identity_center():
    # tn(z - g/2N) - tn(z + g/2N) = l1(z) for 0 < Re z < 1
    params = make_params(1, 40)
    with mp.workprec(PREC + 32):
        g, N = params.gamma, params.N
        for z in (mp.mpf("0.5"), mp.mpc("0.5", "0.2")):
            lhs = (tn_base(z - g / (2 * N), params, PREC)
                   - tn_base(z + g / (2 * N), params, PREC))
            rhs = l012(1, z, PREC)
            assert abs(lhs - rhs) < mp.mpf(2) ** -(PREC - 16)


def test_combined_shift_tricky_zero_case():
    # tn(1 - g/2N) - tn(g/2N) = log(gamma/N)
    params = make_params(1, 40)
    with mp.workprec(PREC + 32):
        g, N = params.gamma, params.N
        lhs = (tn_base(1 - g / (2 * N), params, PREC)
               - tn_base(g / (2 * N), params, PREC))
        assert abs(lhs - mp.log(g / N)) < mp.mpf(2) ** -(PREC - 16)


def test_extension_glues_holomorphically():
    # base value equals the shifted form just inside the boundary
    params = make_params(1, 40)
    with mp.workprec(PREC + 32):
        g, N = params.gamma, params.N
        z = mp.mpc(-mp.mpf("0.6") * params.half_width, "0.2")
        direct = tn_base(z, params, PREC)
        shifted = tn_base(z + 1, params, PREC) + l012(1, N * z / g + mp.mpf(1) / 2, PREC)
        assert abs(direct - shifted) < mp.mpf(2) ** -(PREC - 16)


def test_extended_unit_shift_in_left_strip():
    # the extended function keeps the unit-shift identity for -1 < Re z < 1
    params = make_params(1, 40)
    with mp.workprec(PREC + 32):
        g, N = params.gamma, params.N
        z = mp.mpc("-0.4", "0.25")
        lhs = tn(z, params, PREC) - tn(z + 1, params, PREC)
        rhs = l012(1, N * z / g + mp.mpf(1) / 2, PREC)
        assert abs(lhs - rhs) < mp.mpf(2) ** -(PREC - 16)


def test_gamma_shift_identity_on_extended_region():
    params = make_params(1, 40)
    with mp.workprec(PREC + 32):
        g, N = params.gamma, params.N
        z = mp.mpc("-0.3", "-0.1")
        assert omega_contains(z, params)
        lhs = (tn(z - g / (2 * N), params, PREC)
               - tn(z + g / (2 * N), params, PREC))
        assert abs(lhs - l012(1, z, PREC)) < mp.mpf(2) ** -(PREC - 16)


def test_gamma_shift_identity_picks_up_winding_in_triangle():
    # strictly inside the removed upper-left triangle the identity shifts
    # by exactly -2*pi*i
    params = make_params(1, 40)
    with mp.workprec(PREC + 32):
        g, N = params.gamma, params.N
        z = mp.mpf("-0.3") * g - mp.mpc(0, "0.02")
        assert not omega_contains(z, params)
        lhs = (tn(z - g / (2 * N), params, PREC)
               - tn(z + g / (2 * N), params, PREC))
        rhs = l012(1, z, PREC) - 2j * mp.pi
        assert abs(lhs - rhs) < mp.mpf(2) ** -(PREC - 16)


def test_excluded_ray_raises():
    params = make_params(1, 40)
    with mp.workprec(PREC):
        with pytest.raises(ExcludedRay):
            tn(mp.mpf("-0.3") * params.gamma, params, PREC)
        with pytest.raises(DomainError):
            tn(mp.mpc("2.5", 0), params, PREC)


def test_l2_gap_shrinks_like_one_over_n():
    z = mp.mpf("0.5")
    gaps = {}
    for N in (50, 100, 200):
        params = make_params(1, N)
        gaps[N] = abs(tn_l2_gap(z, params, PREC))
    assert gaps[100] < gaps[50]
    assert gaps[200] < gaps[100]
    scaled = [N * gaps[N] for N in (50, 100, 200)]
    assert max(scaled) < 3 * min(scaled)


def test_l2_gap_on_left_extension_zone():
    z = mp.mpc("-0.5", "0.3")
    g50 = abs(tn_l2_gap(z, make_params(1, 50), PREC))
    g100 = abs(tn_l2_gap(z, make_params(1, 100), PREC))
    assert g100 < g50
    with pytest.raises(DomainError):
        tn_l2_gap(mp.mpc("-0.5", "-0.01"), make_params(1, 50), PREC)


def test_l2_l1_model_decays_exponentially_outside_bowtie():
    # |(N/2 pi i gamma)(l2(z) - l2(z+1)) - l1(N z/gamma + 1/2)| ~ e^(-eps N)
    with mp.workprec(PREC):
        gamma = XiParams("kappa", 1, 50).gamma(PREC)
        z = mp.mpc("0.15", "0.35")
        assert not bowtie_contains(z, gamma)
        resid = {}
        # small N keeps the exponentially small residual above the
        # working-precision floor
        for N in (10, 20, 40):
            lead = N / (2j * mp.pi * gamma) * (l012(2, z, PREC) - l012(2, z + 1, PREC))
            resid[N] = abs(lead - l012(1, N * z / gamma + mp.mpf(1) / 2, PREC))
        assert resid[20] < resid[10] ** mp.mpf("1.5")
        assert resid[40] < resid[20] ** mp.mpf("1.5")


def test_region_predicates():
    params = make_params(2, 60)
    with mp.workprec(PREC):
        assert omega_contains(mp.mpc("0.5", "0.1"), params)
        assert not omega_contains(mp.mpc("-0.99", 0), params)
        assert omega_star_contains(mp.mpc("0.5", "0.1"), params)
        assert not omega_star_contains(mp.mpc("-0.5", "-0.01"), params)
        # the positive real axis sits in the lower wedge, and the ray from
        # nu in the -gamma direction sits in the upper wedge
        assert bowtie_contains(mp.mpf("0.2"), params.gamma)
        assert bowtie_contains(mp.mpc("-0.3", "0.01"), params.gamma)
        assert not bowtie_contains(mp.mpc("0.15", "0.35"), params.gamma)


def test_batch_evaluator_matches_direct():
    params = make_params(2, 60)
    ev = TnEvaluator(params, PREC, min_decay=mp.mpf(2) / 60)
    with mp.workprec(PREC + 32):
        pts = [mp.mpc("0.5", "-0.1"), mp.mpc("0.25", "0.05"),
               mp.mpc("1.3", "-0.2"), mp.mpc("-0.6", "0.1")]
        for z in pts:
            a = ev.tn(z)
            b = tn(z, params, PREC)
            assert abs(a - b) < mp.mpf(2) ** -(PREC - 12) * max(1, abs(a))
    ev.validate(pts[:2])
