import numpy as np
import pytest

from optomech import (
    TWO_PI,
    Scenario,
    SweepAxis,
    SweepSpec,
    evaluate_point,
    find_optimum,
    survival_temperature,
    sweep,
)
from optomech.sweep import NoEntanglementError, PointResult, SweepResult


def spec_1d(scenario=Scenario.COHERENT, **kw):
    defaults = dict(
        axes=(SweepAxis("g_omega", 0.5, 3.0, 6),),
        mode="effective-detuning",
        fixed={"delta_s_over_omega_m": 2.0},
    )
    defaults.update(kw)
    return SweepSpec(scenario=scenario, **defaults)


class TestEvaluatePoint:
    def test_decoupled_is_separable_at_any_temperature(self, paper_params):
        for t in (0.0, 0.4, 300.0):
            res = evaluate_point(paper_params.replace(temperature=t),
                                 Scenario.COHERENT, "effective-detuning",
                                 delta_s=2 * paper_params.omega_m)
            assert res.stable
            assert res.e_n == 0.0
            assert res.diagnostics["physical"]

    def test_unstable_point_has_no_entanglement_value(self, paper_params):
        p = paper_params.replace(g_omega=TWO_PI * 10)
        res = evaluate_point(p, Scenario.COHERENT, "effective-detuning",
                             delta_s=2 * p.omega_m)
        assert not res.stable
        assert res.e_n is None

    def test_infeasible_point_recorded_not_raised(self, paper_params):
        p = paper_params.replace(g_kappa=TWO_PI * 20)
        res = evaluate_point(p, Scenario.DISSIPATIVE, "bare-detuning",
                             delta_a=0.1 * p.omega_m)
        assert not res.feasible
        assert "infeasible" in res.diagnostics

    def test_bare_detuning_counts_branches(self, paper_params):
        p = paper_params.replace(g_omega=TWO_PI * 2, power=0.170)
        res = evaluate_point(p, Scenario.COHERENT, "bare-detuning",
                             delta_a=3 * p.kappa_a)
        assert res.diagnostics["n_branches"] == 3


class TestSweep:
    def test_degenerate_axis_equals_point_evaluation(self, paper_params):
        spec = SweepSpec(
            scenario=Scenario.COHERENT,
            axes=(SweepAxis("g_omega", 3.1, 3.1, 2),),
            mode="effective-detuning",
            fixed={"delta_s_over_omega_m": 2.0})
        result = sweep(paper_params, spec)
        direct = evaluate_point(
            paper_params.replace(g_omega=TWO_PI * 3.1), Scenario.COHERENT,
            "effective-detuning", delta_s=2 * paper_params.omega_m)
        for p in result.points:
            assert p.e_n == direct.e_n
            assert p.stable == direct.stable

    def test_deterministic_across_runs_and_workers(self, paper_params):
        spec = spec_1d()
        a = sweep(paper_params, spec, jobs=1)
        b = sweep(paper_params, spec, jobs=1)
        c = sweep(paper_params, spec, jobs=2)
        for ra, rb, rc in zip(a.points, b.points, c.points):
            assert ra.e_n == rb.e_n == rc.e_n
            assert ra.state.n_s == rb.state.n_s == rc.state.n_s

    def test_two_axis_grid_shape_and_order(self, paper_params):
        spec = SweepSpec(
            scenario=Scenario.COHERENT,
            axes=(SweepAxis("delta_s_over_omega_m", 1.0, 3.0, 3),
                  SweepAxis("g_omega", 1.0, 2.0, 2)),
            mode="effective-detuning")
        result = sweep(paper_params, spec)
        assert result.shape == (3, 2)
        assert len(result.points) == 6
        # row-major: second axis varies fastest
        firsts = [p.inputs["delta_s_over_omega_m"] for p in result.points]
        assert firsts == [1.0, 1.0, 2.0, 2.0, 3.0, 3.0]

    def test_optimum_recorded(self, paper_params):
        result = sweep(paper_params, spec_1d())
        assert result.optimum is not None
        e_ns = [p.e_n for p in result.points if p.e_n is not None]
        assert result.optimum.e_n == max(e_ns)

    def test_invalid_spec_rejected(self, paper_params):
        bad = SweepSpec(scenario=Scenario.COHERENT,
                        axes=(SweepAxis("bogus", 0, 1, 5),))
        with pytest.raises(ValueError, match="bogus"):
            sweep(paper_params, bad)
        bad = SweepSpec(scenario=Scenario.COHERENT,
                        axes=(SweepAxis("g_omega", 0, 1, 1),))
        with pytest.raises(ValueError, match="at least 2"):
            sweep(paper_params, bad)


class TestFindOptimum:
    def synthetic(self, e_ns, axis="g_omega"):
        points = [PointResult(inputs={axis: float(i)}, state=None,
                              stable=e is not None, e_n=e, diagnostics={})
                  for i, e in enumerate(e_ns)]
        spec = SweepSpec(scenario=Scenario.COHERENT,
                         axes=(SweepAxis(axis, 0, len(e_ns) - 1, len(e_ns)),))
        return SweepResult(spec=spec, axis_values=(np.arange(len(e_ns)),),
                           points=points, optimum=None)

    def test_no_stable_points_gives_none(self):
        assert find_optimum(self.synthetic([None, None, None])) is None

    def test_monotone_field_picks_top_corner(self):
        res = find_optimum(self.synthetic([0.0, 0.1, 0.2, 0.3]))
        assert res.coords == {"g_omega": 3.0}

    def test_tie_breaks_toward_lower_coupling(self):
        res = find_optimum(self.synthetic([0.2, 0.1, 0.2]))
        assert res.coords == {"g_omega": 0.0}

    def test_tie_breaks_coupling_before_detuning(self):
        points = []
        for ds in (1.0, 2.0):
            for g in (1.0, 2.0):
                points.append(PointResult(
                    inputs={"delta_s_over_omega_m": ds, "g_omega": g},
                    state=None, stable=True, e_n=0.5, diagnostics={}))
        spec = SweepSpec(
            scenario=Scenario.COHERENT,
            axes=(SweepAxis("delta_s_over_omega_m", 1, 2, 2),
                  SweepAxis("g_omega", 1, 2, 2)))
        res = find_optimum(SweepResult(
            spec=spec, axis_values=(np.array([1.0, 2.0]),) * 2,
            points=points, optimum=None))
        assert res.coords == {"delta_s_over_omega_m": 1.0, "g_omega": 1.0}


class TestSurvivalTemperature:
    def test_coherent_reference_point(self, paper_params):
        p = paper_params.replace(g_omega=TWO_PI * 3.1)
        res = survival_temperature(p, Scenario.COHERENT, t_max=15.0,
                                   delta_s=2 * p.omega_m)
        assert not res.saturated
        assert res.temperature == pytest.approx(8.58, rel=0.05)
        assert res.e_n_low > 0

    def test_no_entanglement_at_reference_raises(self, paper_params):
        with pytest.raises(NoEntanglementError):
            survival_temperature(paper_params, Scenario.COHERENT, t_max=10.0,
                                 delta_s=2 * paper_params.omega_m)

    def test_saturation_flagged(self, paper_params):
        # t_max far below the actual crossing point
        p = paper_params.replace(g_omega=TWO_PI * 3.1)
        res = survival_temperature(p, Scenario.COHERENT, t_max=2.0,
                                   delta_s=2 * p.omega_m)
        assert res.saturated
        assert res.temperature == 2.0

    def test_bisection_width(self, paper_params):
        p = paper_params.replace(g_omega=TWO_PI * 3.1)
        a = survival_temperature(p, Scenario.COHERENT, t_max=15.0,
                                 delta_s=2 * p.omega_m, rel_width=0.001)
        b = survival_temperature(p, Scenario.COHERENT, t_max=15.0,
                                 delta_s=2 * p.omega_m, rel_width=0.01)
        assert a.temperature == pytest.approx(b.temperature, rel=0.02)

    @pytest.mark.parametrize("scenario, couplings, ds_over, t_max", [
        (Scenario.COHERENT, dict(g_omega=3.1, g_kappa=0.0), 2.0, 8.0),
        (Scenario.DISSIPATIVE, dict(g_omega=0.0, g_kappa=19.0), 0.1, 40.0),
        (Scenario.COOPERATIVE, dict(g_omega=3.0, g_kappa=0.3), 2.2, 8.0),
    ])
    def test_entanglement_nonincreasing_in_temperature(
            self, paper_params, scenario, couplings, ds_over, t_max):
        p = paper_params.replace(
            g_omega=TWO_PI * couplings["g_omega"],
            g_kappa=TWO_PI * couplings["g_kappa"])
        temps = np.linspace(0.05, t_max, 12)
        e_ns = []
        for t in temps:
            res = evaluate_point(p.replace(temperature=float(t)),
                                 scenario, "effective-detuning",
                                 delta_s=ds_over * p.omega_m)
            e_ns.append(res.e_n if res.e_n is not None else 0.0)
        assert e_ns[0] > 0
        assert all(b <= a + 1e-12 for a, b in zip(e_ns, e_ns[1:]))

    def test_decoupled_pipeline_covariance_is_thermal_times_vacuum(
            self, paper_params):
        # zero couplings: mechanics thermalises to (n_th + 1/2) I and the
        # cavity sits in vacuum at I/2, with no cross block
        from optomech import linearize, solve_lyapunov
        from optomech.steady_state import equilibrium_operating_point
        ss = equilibrium_operating_point(paper_params,
                                         2 * paper_params.omega_m)
        model = linearize(ss, paper_params)
        v = solve_lyapunov(model.a, model.d)
        n_th = paper_params.thermal_occupation()
        assert np.allclose(v[:2, :2], (n_th + 0.5) * np.eye(2), rtol=1e-9)
        assert np.allclose(v[2:, 2:], 0.5 * np.eye(2), atol=1e-10)
        assert np.allclose(v[:2, 2:], 0.0, atol=1e-9)
