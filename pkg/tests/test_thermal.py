import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import solve_ivp

from cslheat import (
    BUDGET_PRESETS,
    ConvergenceError,
    DomainError,
    PowerLawConductivity,
    TransportEnv,
    absorber_flux,
    budget_volumetric_heating,
    q_sphere_surface,
    q_transport,
    rod_far_temperature,
    rod_with_absorber_far_temperature,
    solve_surface_temperature,
    sphere_center_temperature,
    sphere_profile,
)
from cslheat.thermal import gas_flux, radiative_flux

TORLON = PowerLawConductivity(6.13e-3, 2.18)
BUDGET = BUDGET_PRESETS["earth-unknown"]
H_LEAD = budget_volumetric_heating(BUDGET, 11.4e3)
H_TORLON = budget_volumetric_heating(BUDGET, 1.42e3)
ENV = TransportEnv.from_lab_units(1.0, 0.02, 1e-6, 10.0)


# -- ODE oracles: integrate the conduction equations directly --------------------

def ode_sphere(R, H, k, T1, r_end=0.0):
    # k(T) dT/dr = -r H / 3, from the surface inward
    sol = solve_ivp(lambda r, T: [-r * H / (3 * k(T[0]))], (R, r_end), [T1], method="DOP853", rtol=1e-12, atol=0)
    return sol.y[0, -1]


def ode_rod(L, H, k, T_near, q_abs=0.0):
    # k(T) dT/dz = (L - z) H + q_abs, from the heat sink outward
    sol = solve_ivp(lambda z, T: [((L - z) * H + q_abs) / k(T[0])], (0.0, L), [T_near], method="DOP853", rtol=1e-12, atol=0)
    return sol.y[0, -1]


# -- sphere surface balance -------------------------------------------------------

def test_sphere_flux():
    assert q_sphere_surface(0.5, H_LEAD) * 1e-4 == pytest.approx(5.7e-13, rel=1e-12)
    assert q_sphere_surface(0.5, 0.0) == 0.0
    assert q_sphere_surface(1.0, H_LEAD) == pytest.approx(2 * q_sphere_surface(0.5, H_LEAD), rel=1e-15)
    with pytest.raises(DomainError):
        q_sphere_surface(0.0, H_LEAD)


def test_transport_terms():
    assert q_transport(0.01, ENV) == 0.0
    bare = TransportEnv(1.0, 0.0, 0.0, 0.0)
    assert q_transport(1.0, bare) * 1e-4 == pytest.approx(5.67e-12, rel=1e-14)
    # gas term per mK at a = 0.02, P = 1e-6 mbar
    env = TransportEnv.from_lab_units(0.3, 0.02, 1e-6, 0.0)
    assert gas_flux(1e-3, env) * 1e-4 == pytest.approx(4e-13, rel=1e-14)
    assert gas_flux(5e-3, env) * 1e-4 == pytest.approx(5 * 4e-13, rel=1e-14)
    with pytest.raises(DomainError):
        q_transport(-1e-3, ENV)


@given(st.floats(0, 2.0), st.floats(0, 2.0), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1e3))
def test_transport_antisymmetric(T1, T2, eps, a, P):
    fwd = q_transport(T1, TransportEnv(eps, a, P, T2))
    back = q_transport(T2, TransportEnv(eps, a, P, T1))
    assert fwd == pytest.approx(-back, rel=1e-12, abs=1e-300)


@given(st.floats(0, 1.0), st.floats(1e-9, 1.0), st.floats(0, 1), st.floats(0, 1), st.floats(0, 10.0))
def test_transport_increasing(T2, dT, eps, a, P):
    if eps == 0 and a * P == 0:
        return
    env = TransportEnv(eps, a, P, T2)
    assert q_transport(T2 + dT, env) > q_transport(T2, env)


def test_lead_sphere_surface_temperature():
    res = solve_surface_temperature(0.5, H_LEAD, ENV)
    dT_mK = (res.surface_or_far_temperature - 0.010) * 1e3
    # independent bisection in mK / W cm^-2 units on the printed transport law
    assert dT_mK == pytest.approx(1.4249999002328977, rel=1e-9)
    assert abs(res.residual) < 1e-10 * res.flux
    assert res.center_or_near_temperature is None


def test_halving_pressure_doubles_rise():
    half = TransportEnv.from_lab_units(1.0, 0.02, 0.5e-6, 10.0)
    full = solve_surface_temperature(0.5, H_LEAD, ENV)
    res = solve_surface_temperature(0.5, H_LEAD, half)
    rise = (res.surface_or_far_temperature - 0.01) * 1e3
    assert rise == pytest.approx(2.849999510524892, rel=1e-9)
    assert rise / ((full.surface_or_far_temperature - 0.01) * 1e3) == pytest.approx(2.0, rel=1e-6)


def test_surface_solve_edge_cases():
    res = solve_surface_temperature(0.5, 0.0, ENV)
    assert res.surface_or_far_temperature == 0.01 and res.flux == 0.0
    with pytest.raises(DomainError, match="unboundable"):
        solve_surface_temperature(0.5, H_LEAD, TransportEnv(0.0, 0.0, 1.0, 0.01))
    with pytest.raises(ConvergenceError):
        # 1e-30 relative residual is below double precision
        solve_surface_temperature(0.5, H_LEAD, ENV, rtol=1e-30)


def test_radiation_only_and_center_fill():
    env = TransportEnv(1.0, 0.0, 0.0, 0.0)
    res = solve_surface_temperature(0.5, H_TORLON, env, k=TORLON)
    T1 = res.surface_or_far_temperature
    # radiation alone: 5.67e-8 T^4 = q
    assert T1 == pytest.approx((res.flux / 5.67e-8) ** 0.25, rel=1e-10)
    assert res.center_or_near_temperature == pytest.approx(sphere_center_temperature(0.5, H_TORLON, TORLON, T1), rel=1e-15)


@pytest.mark.parametrize("T2_mK", [0.0, 1.0, 10.0, 100.0])
@pytest.mark.parametrize("R", [0.01, 0.5, 3.0])
def test_surface_residual_below_tolerance(T2_mK, R):
    env = TransportEnv.from_lab_units(0.5, 0.02, 1e-7, T2_mK)
    res = solve_surface_temperature(R, H_LEAD, env)
    assert abs(res.residual) < 1e-10 * res.flux
    assert res.surface_or_far_temperature >= env.wall_temperature


# -- interior profiles ------------------------------------------------------------

def test_torlon_sphere_and_rod_gaps():
    sphere = sphere_center_temperature(0.5, H_TORLON, TORLON, 0.0) * 1e3
    rod = rod_far_temperature(0.5, H_TORLON, TORLON, 0.0) * 1e3
    assert sphere == pytest.approx(6.1, rel=0.02)
    assert rod == pytest.approx(8.6, rel=0.02)
    assert rod / sphere == pytest.approx(3 ** (1 / 3.18), rel=1e-12)


def test_center_with_warm_surface():
    gap = sphere_center_temperature(0.5, H_TORLON, TORLON, 0.0)
    Tc = sphere_center_temperature(0.5, H_TORLON, TORLON, 1e-3)
    assert Tc == pytest.approx((gap**3.18 + 1e-3**3.18) ** (1 / 3.18), rel=1e-13)
    assert Tc * 1e3 == pytest.approx(6.1, rel=0.02)
    assert Tc == pytest.approx(ode_sphere(0.5, H_TORLON, TORLON, 1e-3), rel=1e-6)


def test_profile_boundaries():
    T1 = 2e-3
    assert sphere_profile(0.5, H_TORLON, TORLON, T1, 0.5) == T1
    assert sphere_profile(0.5, H_TORLON, TORLON, T1, 0.0) == sphere_center_temperature(0.5, H_TORLON, TORLON, T1)
    mid = sphere_profile(0.5, H_TORLON, TORLON, T1, 0.25)
    closed = (T1**3.18 + (3.18 / 6.13e-3) * H_TORLON * (0.25 - 0.0625) / 6) ** (1 / 3.18)
    assert mid == pytest.approx(closed, rel=1e-14)
    assert mid == pytest.approx(ode_sphere(0.5, H_TORLON, TORLON, T1, r_end=0.25), rel=1e-6)
    with pytest.raises(DomainError):
        sphere_profile(0.5, H_TORLON, TORLON, T1, 0.6)
    with pytest.raises(DomainError):
        sphere_profile(0.5, H_TORLON, TORLON, T1, -0.1)


def test_profile_monotone():
    rs = np.linspace(0, 0.5, 101)
    T = [sphere_profile(0.5, H_TORLON, TORLON, 1e-3, r) for r in rs]
    assert all(b <= a for a, b in zip(T, T[1:]))


def test_no_heating_no_gradient():
    assert sphere_center_temperature(0.5, 0.0, TORLON, 3e-3) == pytest.approx(3e-3, rel=1e-15)
    assert rod_far_temperature(0.5, 0.0, TORLON, 3e-3) == pytest.approx(3e-3, rel=1e-15)


def test_absorber_rod():
    base = rod_far_temperature(0.5, H_TORLON, TORLON, 2e-3)
    assert rod_with_absorber_far_temperature(0.5, H_TORLON, 0.0, TORLON, 2e-3) == base
    q = 1e-9
    pure = rod_with_absorber_far_temperature(0.5, 0.0, q, TORLON, 2e-3)
    assert pure == pytest.approx((2e-3**3.18 + 3.18 * q * 0.5 / 6.13e-3) ** (1 / 3.18), rel=1e-13)
    # absorber flux equal to the rod's own heat doubles the integral
    q_eq = 0.5 * H_TORLON / 2
    gap = rod_with_absorber_far_temperature(0.5, H_TORLON, q_eq, TORLON, 0.0) * 1e3
    assert gap == pytest.approx(rod_far_temperature(0.5, H_TORLON, TORLON, 0.0) * 1e3 * 2 ** (1 / 3.18), rel=1e-13)
    assert gap == pytest.approx(8.6 * 2 ** (1 / 3.18), rel=0.02)
    assert gap / 1e3 == pytest.approx(ode_rod(0.5, H_TORLON, TORLON, 1e-9, q_eq), rel=1e-6)


def test_absorber_flux():
    assert absorber_flux(H_LEAD, 0.0, 1e-4) == 0.0
    assert absorber_flux(H_LEAD, 1e-3, 0.5e-4) == pytest.approx(2 * absorber_flux(H_LEAD, 1e-3, 1e-4), rel=1e-15)
    # 10 cm lead cube on a 1 cm^2 rod: total power / area
    assert absorber_flux(H_LEAD, 1e-3, 1e-4) * 1e-4 == pytest.approx(3.42e-14 * 1e3 / 1.0, rel=1e-12)
    with pytest.raises(DomainError):
        absorber_flux(H_LEAD, 1e-3, 0.0)


def test_conductivity_validation():
    with pytest.raises(DomainError):
        PowerLawConductivity(1.0, -1.0)
    with pytest.raises(DomainError):
        PowerLawConductivity(0.0, 1.0)
    with pytest.raises(DomainError):
        TransportEnv(1.5, 0.02, 1.0, 0.0)
    with pytest.raises(DomainError):
        TransportEnv(1.0, 0.02, -1.0, 0.0)


def test_constant_conductivity_limit():
    k = PowerLawConductivity(0.37, 0.0)
    R, L, H, T = 0.3, 0.7, 2.5e-3, 0.05
    assert sphere_center_temperature(R, H, k, T) - T == pytest.approx(R**2 * H / (6 * 0.37), rel=1e-12)
    assert rod_far_temperature(L, H, k, T) - T == pytest.approx(L**2 * H / (2 * 0.37), rel=1e-12)


def test_gap_scaling():
    beta = 2.18
    g1 = rod_far_temperature(0.5, H_TORLON, TORLON, 0.0)
    g2 = rod_far_temperature(1.0, 3 * H_TORLON, TORLON, 0.0)
    assert g2 / g1 == pytest.approx(12 ** (1 / (1 + beta)), rel=1e-13)


def random_draws(n, seed):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        beta = rng.uniform(-0.9, 4.0)
        k = PowerLawConductivity(10 ** rng.uniform(-4, 2), beta)
        H = 10 ** rng.uniform(-10, -2)
        size = 10 ** rng.uniform(-3, 1)
        yield k, H, size, rng


def test_closed_forms_against_ode_random():
    worst = 0.0
    for k, H, size, rng in random_draws(100, 20261017):
        gap = sphere_center_temperature(size, H, k, 0.0)
        T1 = gap * 10 ** rng.uniform(-1, 1)
        q_abs = H * size * 10 ** rng.uniform(-2, 2)
        pairs = [
            (sphere_center_temperature(size, H, k, T1), ode_sphere(size, H, k, T1)),
            (sphere_profile(size, H, k, T1, 0.5 * size), ode_sphere(size, H, k, T1, 0.5 * size)),
            (rod_far_temperature(size, H, k, T1), ode_rod(size, H, k, T1)),
            (rod_with_absorber_far_temperature(size, H, q_abs, k, T1), ode_rod(size, H, k, T1, q_abs)),
        ]
        for closed, ode in pairs:
            worst = max(worst, abs(closed - ode) / ode)
    assert worst < 1e-6
