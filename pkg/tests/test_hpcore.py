import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liforge import (
    PoleError,
    PrecisionCtx,
    gamma,
    hardy_z,
    im_log_xi_critical,
    ln_gamma,
    theta_avg,
    xi,
    zeta,
    zeta_times_sm1,
)
from liforge.context import default_ctx

from oracles import eta_zeta, lngamma_quarter

CTX = PrecisionCtx()
TOL = CTX.target_tol


def close(a, b, tol=TOL, rel=1.0):
    return abs(mpmath.mpc(a) - mpmath.mpc(b)) <= tol * max(1.0, rel)


# ---------------------------------------------------------------- context


def test_ctx_defaults_and_invariants():
    c = PrecisionCtx()
    assert (c.work_digits, c.target_tol, c.em_terms, c.max_branch_step) == (50, 1e-40, 20, 0.05)
    with pytest.raises(ValueError):
        PrecisionCtx(work_digits=19, target_tol=1e-10)
    with pytest.raises(ValueError):
        PrecisionCtx(work_digits=20, target_tol=1e-30)
    with pytest.raises(ValueError):
        PrecisionCtx(em_terms=1)


def test_ctx_env_override(monkeypatch):
    monkeypatch.setenv("LIFORGE_DIGITS", "30")
    assert default_ctx().work_digits == 30
    monkeypatch.delenv("LIFORGE_DIGITS")
    assert default_ctx().work_digits == 50


def test_ctx_private_contexts_do_not_interfere():
    a, b = PrecisionCtx.with_digits(20), PrecisionCtx.with_digits(60)
    assert a.mp.dps < b.mp.dps
    assert mpmath.mp.dps == 15 or mpmath.mp.dps > 0  # global context untouched
    assert a.clone(work_digits=60, target_tol=1e-50).mp.dps == b.mp.dps


# ---------------------------------------------------------------- log-gamma


def test_ln_gamma_special_values():
    assert close(ln_gamma(1, CTX), 0)
    assert close(ln_gamma(0.5, CTX), mpmath.log(mpmath.pi) / 2)


def test_ln_gamma_quarter_matches_recurrence_oracle():
    assert abs(ln_gamma(0.25, CTX).real - lngamma_quarter()) < 1e-30


def test_ln_gamma_poles():
    for z in (0, -1, -7):
        with pytest.raises(PoleError):
            ln_gamma(z, CTX)


def test_ln_gamma_principal_branch_far_up():
    # the imaginary part of the principal log-gamma grows like t log t
    z = complex(0.25, 500)
    assert close(ln_gamma(z, CTX), mpmath.loggamma(z), tol=1e-30)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 10), st.floats(-30, 30))
def test_ln_gamma_recurrence(x, y):
    z = CTX.mp.mpc(x, y)
    d = ln_gamma(z + 1, CTX) - ln_gamma(z, CTX) - CTX.mp.log(z)
    assert abs(d) < 10 * TOL * (1 + abs(ln_gamma(z, CTX)))


def test_gamma_exp_of_ln_gamma():
    assert close(gamma(5, CTX), 24, tol=1e-38)


# ---------------------------------------------------------------- zeta


def test_zeta_special_values():
    mp = CTX.mp
    assert close(zeta(2, CTX), mp.pi**2 / 6)
    assert abs(zeta(-2, CTX)) <= TOL
    assert close(zeta(-1, CTX), -mp.mpf(1) / 12)
    assert close(zeta(0, CTX), -0.5)
    with pytest.raises(PoleError):
        zeta(1, CTX)


def test_zeta_half_matches_eta_oracle():
    v = zeta(0.5, CTX)
    assert close(v, eta_zeta(0.5))
    assert str(v.real).startswith("-1.46035450880958681")


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 0.99), st.floats(-50, 50))
def test_zeta_matches_eta_oracle_in_strip(x, y):
    assert close(zeta(complex(x, y), CTX), eta_zeta(complex(x, y)), rel=abs(eta_zeta(complex(x, y))))


def test_zeta_times_sm1_at_one():
    assert close(zeta_times_sm1(1, CTX), 1)
    z = complex(1.5, 3)
    assert close(zeta_times_sm1(z, CTX), (z - 1) * zeta(z, CTX), tol=1e-38)


# ---------------------------------------------------------------- xi


def test_xi_values():
    mp = CTX.mp
    assert close(xi(0, CTX), 0.5)
    assert close(xi(1, CTX), 0.5)
    assert close(xi(2, CTX), mp.pi / 6)
    half = -mp.exp(ln_gamma(0.25, CTX)).real * zeta(0.5, CTX).real / (8 * mp.pi**0.25)
    assert close(xi(0.5, CTX), half)
    assert 0.497 < float(xi(0.5, CTX).real) < 0.498


@settings(max_examples=100, deadline=None)
@given(st.floats(-2, 3), st.floats(-50, 50))
def test_xi_functional_equation(x, y):
    z = CTX.mp.mpc(x, y)
    a, b = xi(z, CTX), xi(1 - z, CTX)
    assert abs(a - b) <= 10 * TOL * (1 + abs(a))


@settings(max_examples=30, deadline=None)
@given(st.floats(-2, 3), st.floats(-50, 50))
def test_xi_conjugation(x, y):
    z = CTX.mp.mpc(x, y)
    a, b = xi(CTX.mp.conj(z), CTX), CTX.mp.conj(xi(z, CTX))
    assert abs(a - b) <= 10 * TOL * (1 + abs(a))


@pytest.mark.parametrize("z", [complex(0.5, 14), complex(-1.5, 7), 2.5])
def test_precision_scaling(z):
    fine = PrecisionCtx(work_digits=100, target_tol=1e-90)
    for f in (xi, zeta):
        a, b = f(z, CTX), f(z, fine)
        assert abs(CTX.mp.mpc(b) - a) < TOL * max(1, abs(a))


# ---------------------------------------------------------------- theta, Z, phase


def test_theta_avg_limits_and_asymptotics():
    mp = CTX.mp
    assert theta_avg(0, CTX) == 0
    assert abs(theta_avg(1e-8, CTX)) < 1e-7
    T = mp.mpf(100)
    asym = T / 2 * mp.log(T / (2 * mp.pi)) - T / 2 - mp.pi / 8 + 1 / (48 * T)
    assert abs(theta_avg(T, CTX) - asym) < 1 / T**2


def test_theta_avg_against_mpmath_siegeltheta():
    for T in (14.134725, 100, 1000):
        assert close(theta_avg(T, CTX), mpmath.siegeltheta(T), tol=1e-35)


def test_hardy_z_signs_and_modulus():
    assert hardy_z(14.0, CTX) * hardy_z(14.2, CTX) < 0
    assert hardy_z(10, CTX) * hardy_z(5, CTX) > 0
    t = 37.5
    assert abs(abs(hardy_z(t, CTX)) - abs(zeta(complex(0.5, t), CTX))) < 1e-38


@pytest.mark.parametrize("T,n", [(0, 0), (10, 0), (15, 1), (30, 3), (100, 29)])
def test_im_log_xi_critical_counts(T, n):
    v = im_log_xi_critical(T, CTX) / CTX.mp.pi
    assert abs(v - n) < 0.25


def test_im_log_xi_splits_into_average_and_fluctuation():
    # Im log xi / pi = theta/pi + 1 + S(T), with S(T) = arg zeta / pi small at these heights
    mp = CTX.mp
    for T in (14.134725, 20.0, 50.0):
        v = im_log_xi_critical(T, CTX) / mp.pi
        S = v - theta_avg(T, CTX) / mp.pi - 1
        assert abs(v - mp.nint(v)) < 1e-30  # xi is real on the line
        assert abs(S) < 1
