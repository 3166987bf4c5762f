import math

import numpy as np
import pytest
from scipy import integrate

from rieszlab import (
    ArgumentError,
    DivergenceError,
    DomainError,
    GapLaw,
    NotApplicableError,
    PointConfiguration,
    ProcessModel,
    Seed,
    SingularConfigurationError,
    Window,
    background_integrals,
    hint_R,
    log_kernel,
    rho2_analytic,
    rho2_hardcore,
    richardson,
    riesz_kernel,
    sample,
    wbs_energy,
    wint_from_rho2,
    wint_lattice_series,
    wint_monte_carlo,
)

K_LOG = log_kernel(1)
K_RSZ = riesz_kernel(0.5, 1)

# limits of the lattice series, frozen from the extrapolation oracle at
# R = 2^12 .. 2^18 (they coincide with -log(2 pi) and twice the zeta value
# at 1/2, an independent analytic cross-check)
LATTICE_LIMIT_LOG = -1.8378770664093453
LATTICE_LIMIT_RSZ_HALF = -2.9207090176191736

# closed forms for the block deficit profile: W = log k - 3/2 (log kernel)
# and W = -2 k^(-s) / ((1-s)(2-s)) (inverse-power kernel)
def block_limit(kernel, k):
    if kernel.is_log:
        return math.log(k) - 1.5
    s = kernel.s
    return -2.0 * k ** (-s) / ((1.0 - s) * (2.0 - s))


class TestBackgroundIntegrals:
    def test_bb_log1d_closed_form(self):
        bg = background_integrals(K_LOG, 2.0)
        assert bg.bb == pytest.approx(6.0 - 4.0 * math.log(2.0), rel=1e-14)

    def test_bb_matches_tent_quadrature(self):
        for kernel in (K_LOG, K_RSZ):
            for R in (2.0, 8.0):
                ref, _ = integrate.quad(
                    lambda v: float(kernel.g(v)) * (R - v), 0.0, R, limit=200)
                assert background_integrals(kernel, R).bb == pytest.approx(2.0 * ref, rel=1e-10)

    def test_bb_2d_log_vs_adaptive(self):
        R = 2.0

        def integrand(y, x):
            r2 = x * x + y * y
            if r2 == 0.0:
                return 0.0
            return -0.5 * math.log(r2) * (R - abs(x)) * (R - abs(y))

        ref, _ = integrate.dblquad(integrand, -R, R, -R, R, epsabs=1e-10)
        got = background_integrals(log_kernel(2), R).bb
        assert got == pytest.approx(ref, rel=1e-8)

    def test_pb_examples_and_quadrature(self):
        bg = background_integrals(K_LOG, 2.0)
        assert bg.pb(np.array([[0.0]]))[0] == pytest.approx(2.0, rel=1e-14)
        for p in (0.3, -0.9):
            ref, _ = integrate.quad(lambda y: -math.log(abs(p - y)), -1.0, 1.0,
                                    points=[p], limit=200)
            assert bg.pb(np.array([[p]]))[0] == pytest.approx(ref, rel=1e-10)

    def test_pb_2d_riesz_vs_adaptive(self):
        kernel = riesz_kernel(0.8, 2)
        bg = background_integrals(kernel, 2.0)
        p = np.array([0.4, -0.3])
        ref, _ = integrate.dblquad(
            lambda y, x: ((x - p[0]) ** 2 + (y - p[1]) ** 2) ** -0.4,
            -1.0, 1.0, -1.0, 1.0, epsabs=1e-10)
        assert bg.pb(p[None, :])[0] == pytest.approx(ref, rel=1e-8)


class TestHintR:
    def test_empty_config_is_bb(self):
        cfg = PointConfiguration(np.empty((0, 1)), Window(2.0, 1))
        assert hint_R(cfg, 2.0, K_LOG) == pytest.approx(6.0 - 4.0 * math.log(2.0), rel=1e-14)

    def test_single_point_at_origin(self):
        cfg = PointConfiguration(np.array([[0.0]]), Window(2.0, 1))
        expected = -2.0 * 2.0 + (6.0 - 4.0 * math.log(2.0))
        assert hint_R(cfg, 2.0, K_LOG) == pytest.approx(expected, rel=1e-14)

    def test_coincident_points_rejected(self):
        cfg = PointConfiguration(np.array([[0.5], [0.5]]), Window(4.0, 1))
        with pytest.raises(SingularConfigurationError):
            hint_R(cfg, 4.0, K_RSZ)

    def test_translation_invariance(self):
        cfg = sample(ProcessModel.poisson(1), Window(8.0, 1), Seed(62))
        base = hint_R(cfg, 8.0, K_RSZ)
        moved = hint_R(cfg.translate([17.25]), 8.0, K_RSZ)
        assert moved == pytest.approx(base, rel=1e-10)

    def test_window_precedence(self):
        cfg = PointConfiguration(np.array([[0.0]]), Window(2.0, 1))
        with pytest.raises(DomainError):
            hint_R(cfg, 3.0, K_LOG)

    @pytest.mark.parametrize("kernel", [K_RSZ, K_LOG], ids=["riesz", "log"])
    def test_lattice_average_matches_series(self, kernel):
        # the shift-average of the window energy of the unit lattice equals
        # the series value at the same R exactly; Gauss-Legendre in the
        # shift variable (after a sin^2 substitution that absorbs the
        # endpoint cusps) reproduces it far below the 1e-6 tolerance
        R = 32.0
        t, w = np.polynomial.legendre.leggauss(96)
        t = 0.5 * (t + 1.0)
        w = 0.5 * w
        shifts = np.sin(0.5 * math.pi * t) ** 2
        weights = w * 0.5 * math.pi * np.sin(math.pi * t)
        vals = []
        for u in shifts:
            pts = np.arange(math.ceil(-R / 2 - u), math.floor(R / 2 - u) + 1, dtype=float) + u
            pts = pts[np.abs(pts) <= R / 2]
            cfg = PointConfiguration(pts[:, None], Window(R, 1))
            vals.append(hint_R(cfg, R, kernel) / R)
        avg = float(np.sum(np.asarray(vals) * weights))
        from rieszlab.energy import lattice_series_value

        assert abs(avg - lattice_series_value(kernel, R)) < 1e-6


class TestRichardson:
    def test_exact_on_affine_in_inverse_R(self):
        R = np.array([16.0, 32.0, 64.0, 128.0])
        vals = 3.0 + 5.0 / R
        ex, err, _ = richardson(R, vals, depth=1)
        assert ex == pytest.approx(3.0, rel=1e-12)

    def test_error_covers_last_iterates(self):
        R = np.array([8.0, 16.0, 32.0, 64.0])
        vals = 1.0 + 1.0 / R + 7.0 / R**2
        ex, err, _ = richardson(R, vals)
        assert abs(ex - 1.0) <= err + 1e-12

    def test_stderr_propagation(self):
        R = np.array([16.0, 32.0])
        _, _, sig = richardson(R, [0.0, 0.0], stderr=[1.0, 1.0], depth=1)
        assert sig == pytest.approx(math.sqrt(5.0), rel=1e-12)


class TestLatticeSeries:
    def test_frozen_limits(self):
        Rs = [2.0**j for j in range(12, 19)]
        rep_log = wint_lattice_series(K_LOG, Rs)
        rep_rsz = wint_lattice_series(K_RSZ, Rs)
        assert rep_log.extrapolated == pytest.approx(LATTICE_LIMIT_LOG, abs=2e-6)
        assert rep_rsz.extrapolated == pytest.approx(LATTICE_LIMIT_RSZ_HALF, abs=1e-8)

    def test_convergence_rate(self):
        # consecutive ladder values differ by at most C / R; report-style fit
        Rs = [2.0**j for j in range(6, 13)]
        rep = wint_lattice_series(K_RSZ, Rs)
        fitted_c = [abs(b[1] - a[1]) * a[0] for a, b in zip(rep.entries, rep.entries[1:])]
        assert max(fitted_c) < 10.0


class TestRho2Route:
    def test_zero_law_exact(self):
        rep = wint_from_rho2(rho2_analytic(ProcessModel.poisson(1)), K_LOG,
                             [8.0, 16.0, 32.0])
        assert all(v == 0.0 for _, v, _ in rep.entries)
        assert rep.extrapolated == 0.0

    @pytest.mark.parametrize("kernel", [K_LOG, K_RSZ], ids=["riesz", "log"])
    @pytest.mark.parametrize("k", [2, 4])
    def test_block_closed_form(self, kernel, k):
        rep = wint_from_rho2(rho2_analytic(ProcessModel.bernoulli_block(k, 1)),
                             kernel, [64.0, 128.0, 256.0, 512.0])
        assert rep.extrapolated == pytest.approx(block_limit(kernel, k), abs=5e-6)

    def test_lattice_route_matches_series(self):
        Rs = [64.0, 128.0, 256.0, 512.0]
        via_rho2 = wint_from_rho2(rho2_analytic(ProcessModel.lattice(1)), K_RSZ, Rs)
        via_series = wint_lattice_series(K_RSZ, Rs)
        for (_, a, _), (_, b, _) in zip(via_rho2.entries, via_series.entries):
            assert a == pytest.approx(b, rel=1e-12)

    def test_vibrating_rate_in_k(self):
        # distance to the lattice limit shrinks like 1/k^2
        ser = wint_lattice_series(K_RSZ, [2.0**j for j in range(12, 19)]).extrapolated
        deltas = []
        for k in (2, 4, 8, 16):
            rep = wint_from_rho2(rho2_analytic(ProcessModel.vibrating_lattice(k)),
                                 K_RSZ, [256.0, 512.0, 1024.0, 2048.0])
            deltas.append(rep.extrapolated - ser)
        assert all(d > 0 for d in deltas)
        slope = np.polyfit(np.log([2, 4, 8, 16]), np.log(deltas), 1)[0]
        assert slope == pytest.approx(-2.0, abs=0.4)

    def test_renewal_gamma2_closed_form(self):
        # deficit -exp(-4 v) integrates to -sqrt(pi) under the s = 1/2 kernel
        rep = wint_from_rho2(rho2_analytic(ProcessModel.renewal(GapLaw.gamma(2.0))),
                             K_RSZ, [128.0, 256.0, 512.0, 1024.0])
        assert rep.extrapolated == pytest.approx(-math.sqrt(math.pi), abs=2e-4)

    def test_clustered_renewal_diverges(self):
        r2 = rho2_analytic(ProcessModel.renewal(GapLaw.gamma(0.4)))
        with pytest.raises(DivergenceError):
            wint_from_rho2(r2, K_RSZ, [64.0, 128.0, 256.0])

    def test_undecayed_grid_rejected(self):
        r2 = rho2_analytic(ProcessModel.renewal(GapLaw.gamma(2.0)))
        r2.tail_flat = False
        with pytest.raises(DivergenceError):
            wint_from_rho2(r2, K_RSZ, [64.0, 128.0, 256.0])


class TestMonteCarloRoute:
    def test_poisson_extrapolates_to_zero(self):
        rep = wint_monte_carlo(ProcessModel.poisson(1), K_RSZ,
                               [16.0, 32.0, 64.0], 300, Seed(71))
        assert abs(rep.extrapolated) <= 3.0 * rep.extrapolated_stderr + rep.extrapolation_error

    def test_route_agreement_block(self):
        model = ProcessModel.bernoulli_block(2, 1)
        mc = wint_monte_carlo(model, K_LOG, [16.0, 32.0, 64.0], 600, Seed(73))
        qd = wint_from_rho2(rho2_analytic(model), K_LOG, [64.0, 128.0, 256.0, 512.0])
        tol = 3.0 * mc.extrapolated_stderr + mc.extrapolation_error + qd.extrapolation_error
        assert abs(mc.extrapolated - qd.extrapolated) <= tol

    def test_replica_floor(self):
        with pytest.raises(ArgumentError):
            wint_monte_carlo(ProcessModel.poisson(1), K_LOG, [8.0, 16.0], 10, Seed(0))

    def test_lattice_sampled_matches_series(self):
        mc = wint_monte_carlo(ProcessModel.lattice(1), K_RSZ,
                              [16.0, 32.0, 64.0], 400, Seed(79))
        series = wint_lattice_series(K_RSZ, [2.0**j for j in range(12, 19)])
        tol = (3.0 * mc.extrapolated_stderr + mc.extrapolation_error
               + series.extrapolation_error)
        assert abs(mc.extrapolated - series.extrapolated) <= tol

    def test_hint_2d_against_direct_assembly(self):
        # small planar configuration: pair sum plus background terms, each
        # verified against scipy oracles elsewhere, assembled by hand here
        kernel = riesz_kernel(0.8, 2)
        pts = np.array([[0.2, -0.4], [-0.6, 0.3], [0.1, 0.7]])
        cfg = PointConfiguration(pts, Window(2.0, 2))
        bg = background_integrals(kernel, 2.0)
        pair = 0.0
        for i in range(3):
            for j in range(3):
                if i != j:
                    pair += float(np.sum((pts[i] - pts[j]) ** 2)) ** (-0.4)
        expected = pair - 2.0 * float(np.sum(bg.pb(pts))) + bg.bb
        assert hint_R(cfg, 2.0, kernel) == pytest.approx(expected, rel=1e-12)

    def test_singular_replicas_abort(self, monkeypatch):
        from rieszlab import energy as energy_mod

        dup = PointConfiguration(np.array([[0.25], [0.25], [1.5]]), Window(8.0, 1))

        def bad_sample(model, window, seed):
            return dup

        monkeypatch.setattr(energy_mod, "sample", bad_sample)
        with pytest.raises(SingularConfigurationError):
            wint_monte_carlo(ProcessModel.poisson(1), K_RSZ, [8.0], 50, Seed(0))


class TestPlainEnergy:
    def test_flat_deficit_is_zero(self):
        assert wbs_energy(rho2_analytic(ProcessModel.poisson(1)), K_LOG, 8.0) == 0.0

    def test_hardcore_value(self):
        got = wbs_energy(rho2_hardcore(), K_LOG, 8.0)
        assert got == pytest.approx(-1.0 - math.log(2.0), abs=1e-6)

    def test_riesz_not_applicable(self):
        with pytest.raises(NotApplicableError):
            wbs_energy(rho2_hardcore(), K_RSZ, 8.0)

    def test_undecayed_profile_rejected(self):
        with pytest.raises(NotApplicableError):
            wbs_energy(rho2_analytic(ProcessModel.vibrating_lattice(4)), K_LOG, 8.0)

    def test_block_agrees_with_tented_limit(self):
        # with a compactly supported deficit the tent weight converges to 1,
        # so the plain energy equals the tented extrapolation
        model = ProcessModel.bernoulli_block(2, 1)
        plain = wbs_energy(rho2_analytic(model), K_LOG, 8.0)
        tented = wint_from_rho2(rho2_analytic(model), K_LOG,
                                [64.0, 128.0, 256.0, 512.0])
        assert plain == pytest.approx(tented.extrapolated,
                                      abs=3.0 * tented.extrapolation_error + 1e-6)


class TestOrderings:
    def test_lattice_minimality(self):
        # every tested one-dimensional model sits above the lattice value
        wz = wint_lattice_series(K_RSZ, [2.0**j for j in range(12, 19)]).extrapolated
        models = [
            ProcessModel.vibrating_lattice(4),
            ProcessModel.bernoulli_block(4, 1),
            ProcessModel.renewal(GapLaw.gamma(4.0)),
        ]
        for model in models:
            rep = wint_from_rho2(rho2_analytic(model), K_RSZ,
                                 [128.0, 256.0, 512.0, 1024.0])
            assert rep.extrapolated >= wz - 1e-4

    def test_sub_poissonian_bound(self):
        # any deficit profile below one stays above the hardcore benchmark
        hc = wbs_energy(rho2_hardcore(), K_LOG, 8.0)
        for k in (2, 4):
            rep = wint_from_rho2(rho2_analytic(ProcessModel.bernoulli_block(k, 1)),
                                 K_LOG, [64.0, 128.0, 256.0, 512.0])
            assert rep.extrapolated >= hc - 1e-9
        hc_rep = wint_from_rho2(rho2_hardcore(), K_LOG, [64.0, 128.0, 256.0, 512.0])
        assert hc_rep.extrapolated == pytest.approx(hc, abs=1e-5)
