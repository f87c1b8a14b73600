import numpy as np
import pytest

from hitchin4.spectral import (
    BranchPointCoincidence,
    DegenerateP0,
    SpectralFiberPoint,
    OffCurve,
    build_base,
    beta_discriminant_poly,
    elliptic_periods,
    flags,
    higgs_representative,
    in_B0,
    is_square_polynomial,
    on_curve_point,
    predicted_root_shift,
    residue_matrix,
    singular_fibers,
    tau_asymptotics,
    tau_cycle_integral,
    tautological_residues,
)

rng = np.random.default_rng(20260810)

P0 = 2.0 + 0.3j
MASSES = (0.7 - 0.2j, 1.1 + 0.5j, -0.4 + 0.9j, 0.8 + 0.1j)
BETA = 1.3 - 0.8j


def generic_base():
    return build_base(P0, MASSES)


# ---------------------------------------------------------------------------
# Hitchin base
# ---------------------------------------------------------------------------

def test_build_base_zero_masses():
    base = build_base(2.0, (0, 0, 0, 0))
    assert np.allclose(base.f_coeffs, 0)


def test_build_base_unit_infinity_mass():
    base = build_base(2.0, (0, 0, 0, 1))
    f = np.asarray(base.f_coeffs)
    assert abs(f[4] - 1) < 1e-12
    for p in (0.0, 1.0, 2.0):
        assert abs(np.polyval(f[::-1], p)) < 1e-10


def test_build_base_residue_constraints_random():
    for _ in range(10):
        p0 = complex(rng.normal(), rng.normal()) + 2.0
        m = rng.normal(size=4) + 1j * rng.normal(size=4)
        base = build_base(p0, m)
        f = np.asarray(base.f_coeffs)
        scale = 1 + np.max(np.abs(f))
        assert abs(np.polyval(f[::-1], 0) / p0 ** 2 - m[0] ** 2) < 1e-10 * scale
        assert abs(np.polyval(f[::-1], 1) / (1 - p0) ** 2 - m[1] ** 2) < 1e-10 * scale
        assert abs(np.polyval(f[::-1], p0) / (p0 ** 2 * (p0 - 1) ** 2) - m[2] ** 2) \
            < 1e-10 * scale
        assert abs(f[4] - m[3] ** 2) < 1e-12 * scale


def test_beta5_discriminant_coefficient_vanishes():
    for _ in range(5):
        p0 = complex(rng.normal(), rng.normal()) + 2.0
        m = rng.normal(size=4) + 1j * rng.normal(size=4)
        coef = beta_discriminant_poly(build_base(p0, m), nodes=7)
        scale = np.max(np.abs(coef))
        assert abs(coef[5]) < 1e-7 * scale


def test_degenerate_p0():
    with pytest.raises(DegenerateP0):
        build_base(1.0, MASSES)


# ---------------------------------------------------------------------------
# singular fibers
# ---------------------------------------------------------------------------

def test_singular_fibers_zero_masses():
    base = build_base(2.0, (0, 0, 0, 0))
    roots = singular_fibers(base)
    assert len(roots) == 6
    # beta = 0 with multiplicity six; a six-fold root is located only to
    # about eps^(1/6), but the center of mass is stable
    assert all(abs(b) < 1e-2 for b in roots)
    assert abs(sum(roots)) < 1e-8


def test_singular_fibers_generic():
    base = generic_base()
    roots = singular_fibers(base)
    assert len(roots) == 6
    assert abs(sum(roots)) < 1e-6 * max(abs(b) for b in roots)
    # simple roots: pairwise distinct
    for i, a in enumerate(roots):
        for b in roots[i + 1:]:
            assert abs(a - b) > 1e-6


def test_singular_fibers_conjugation_symmetry():
    base = build_base(0.37, (0.5, 1.25, -0.75, 2.0))
    roots = singular_fibers(base)
    pool = [r.conjugate() for r in roots]
    for r in roots:
        k = min(range(len(pool)), key=lambda k: abs(pool[k] - r))
        assert abs(pool[k] - r) < 1e-6
        pool.pop(k)


# ---------------------------------------------------------------------------
# B^0
# ---------------------------------------------------------------------------

def test_in_B0_cases():
    base = build_base(2.0, (0, 0, 0, 0))
    assert in_B0(base, 1.0)       # cubic with simple zeros
    assert in_B0(generic_base(), BETA)
    assert is_square_polynomial(np.array([1, 0, -2, 0, 1.0]))  # (z^2-1)^2
    assert not is_square_polynomial(np.array([0, 2.0, -3.0, 1.0]))

    # double zero at z = 0: masses with m_0 = 0, beta chosen so F'(0) = 0
    b2 = build_base(2.0, (0.0, 1.0, 0.5, 0.25))
    f = np.asarray(b2.f_coeffs)
    beta = -f[1] / b2.p0
    assert abs(np.polyval(b2.curve_coeffs(beta)[::-1], 0)) < 1e-12
    assert not in_B0(b2, beta)


def test_in_B0_rejects_degeneration_at_infinity():
    # with m_inf = 0 the curve polynomial is cubic with leading
    # coefficient f3 + beta; at beta = -f3 it drops to degree <= 2, giving
    # a non-simple zero at infinity
    base = build_base(2.0, (1.0, 0, 0, 0))
    f = np.asarray(base.f_coeffs)
    assert abs(f[4]) < 1e-12
    beta = -f[3]
    assert not in_B0(base, beta)


# ---------------------------------------------------------------------------
# Higgs representatives and flags
# ---------------------------------------------------------------------------

def test_small_stratum_companion_form():
    base = generic_base()
    pt = SpectralFiberPoint(base, BETA, stratum="small")
    N, den = higgs_representative(pt)
    assert N[0][0].coeffs == (0j,)
    assert N[1][0].coeffs == (1 + 0j,)
    F = base.curve_coeffs(BETA)
    z = 0.3 + 0.9j
    assert abs(N[0][1](z) - np.polyval(F[::-1], z)) < 1e-10 * np.max(np.abs(F))


def test_big_stratum_det_reproduces_q():
    base = generic_base()
    for _ in range(5):
        u = complex(rng.normal(), rng.normal())
        pt = on_curve_point(base, BETA, u, sign=+1)
        N, den = higgs_representative(pt)
        for z in rng.normal(size=20) + 1j * rng.normal(size=20):
            q = base.quadratic_differential(BETA, z)
            det = N[0][0](z) * N[1][1](z) - N[0][1](z) * N[1][0](z)
            got = -det / den(z) ** 2
            assert abs(got - q) < 1e-8 * (1 + abs(q))


def test_trace_free_and_off_curve():
    base = generic_base()
    pt = on_curve_point(base, BETA, 0.5 + 0.2j)
    N, _ = higgs_representative(pt)
    z = 1.7 - 0.4j
    assert abs(N[0][0](z) + N[1][1](z)) < 1e-10
    with pytest.raises(OffCurve):
        SpectralFiberPoint(base, BETA, u=0.5, w=123.0, stratum="big")


def test_extra_point_upper_entry_quadratic():
    base = generic_base()
    pt = SpectralFiberPoint(base, BETA, stratum="extra")
    N, _ = higgs_representative(pt)
    assert N[0][1].degree <= 2
    z = 0.45 - 1.2j
    q = base.quadratic_differential(BETA, z)
    den = z * (z - 1) * (z - base.p0)
    det = N[0][0](z) * N[1][1](z) - N[0][1](z) * N[1][0](z)
    assert abs(-det / den ** 2 - q) < 1e-8 * (1 + abs(q))


def test_small_stratum_flags():
    base = generic_base()
    m0, m1, mp, mi = base.masses
    p0 = base.p0
    got = flags(SpectralFiberPoint(base, BETA, stratum="small"))
    want = (m0 * p0, m1 * (1 - p0), mp * p0 * (p0 - 1), -mi)
    assert np.allclose(got, want)


def test_polar_section_flag_lhopital():
    base = generic_base()
    m0 = base.masses[0]
    p0 = base.p0
    w = m0 * p0  # sigma_0^+ has u = 0, w = m_0 p_0
    pt = SpectralFiberPoint(base, BETA, u=0.0, w=w, stratum="big")
    f = np.asarray(base.f_coeffs)
    df = np.polynomial.polynomial.polyder(f)
    want = (np.polyval(df[::-1], 0.0) + BETA * p0) / (2 * m0 * p0)
    got = flags(pt)[0]
    assert abs(got - want) < 1e-9 * (1 + abs(want))
    # the minus section flows to the projective point at infinity
    ptm = SpectralFiberPoint(base, BETA, u=0.0, w=-w, stratum="big")
    assert flags(ptm)[0] == np.inf


def test_flags_are_residue_eigenvectors():
    base = generic_base()
    for _ in range(10):
        u = complex(rng.normal(), rng.normal())
        pt = on_curve_point(base, BETA, u)
        fl = flags(pt)
        for p, mp, F in zip((0.0, 1.0, base.p0), base.masses[:3], fl[:3]):
            R = residue_matrix(pt, p)
            v = np.array([F, 1.0])
            assert np.linalg.norm(R @ v - mp * v) < 1e-8 * (1 + np.linalg.norm(v))


# ---------------------------------------------------------------------------
# residues of the tautological form
# ---------------------------------------------------------------------------

def test_residues_generic():
    base = generic_base()
    res = tautological_residues(base, BETA)
    for key, mp in zip(("0", "1", "p0", "inf"), base.masses):
        plus, minus = res[key]
        assert abs(plus + minus) < 1e-9
        assert min(abs(plus - mp), abs(plus + mp)) < 1e-7


def test_residues_single_mass():
    base = build_base(2.0, (1.0, 0, 0, 0))
    res = tautological_residues(base, 0.7)
    plus, _ = res["0"]
    assert min(abs(plus - 1), abs(plus + 1)) < 1e-7
    for key in ("1", "p0", "inf"):
        assert abs(res[key][0]) < 1e-7


def test_residues_zero_masses():
    base = build_base(2.0, (0, 0, 0, 0))
    res = tautological_residues(base, 1.0)
    for key in ("0", "1", "p0", "inf"):
        assert res[key] == (0j, 0j)


# ---------------------------------------------------------------------------
# elliptic periods
# ---------------------------------------------------------------------------

def _lambda_of_tau(tau: complex) -> complex:
    import mpmath as mp

    q = mp.exp(1j * mp.pi * mp.mpc(tau))
    return complex((mp.jtheta(2, 0, q) / mp.jtheta(3, 0, q)) ** 4)


def test_cubic_periods_match_modular_lambda():
    import mpmath as mp

    p0 = 0.37
    base = build_base(p0, (0, 0, 0, 0))
    _, _, tau = elliptic_periods(base, 1.0)
    want = complex(1j * mp.ellipk(1 - p0) / mp.ellipk(p0))
    assert abs(tau - want) < 1e-8
    lam = _lambda_of_tau(tau)
    orbit = [p0, 1 - p0, 1 / p0, 1 / (1 - p0), p0 / (p0 - 1), (p0 - 1) / p0]
    assert min(abs(lam - o) for o in orbit) < 1e-8


def test_lambda_matching_quartic():
    base = generic_base()
    _, _, tau = elliptic_periods(base, BETA)
    assert tau.imag > 0
    # cross-ratio of the branch points, matched through the anharmonic orbit
    F = base.curve_coeffs(BETA)
    r = np.roots(F[::-1])
    cr = ((r[0] - r[2]) * (r[1] - r[3])) / ((r[1] - r[2]) * (r[0] - r[3]))
    lam = _lambda_of_tau(tau)
    orbit = [cr, 1 - cr, 1 / cr, 1 / (1 - cr), cr / (cr - 1), (cr - 1) / cr]
    assert min(abs(lam - o) for o in orbit) < 1e-6


def test_period_refinement_stability():
    base = generic_base()
    A1, B1, t1 = elliptic_periods(base, BETA)
    A2, B2, t2 = elliptic_periods(base, BETA)  # deterministic repeat
    assert A1 == A2 and B1 == B2 and t1 == t2
    assert abs(t1.imag) > 1e-6


def test_dZ_dbeta_equals_period_on_both_cycles():
    # the beta-derivative of the tautological cycle integral equals the
    # holomorphic period on each basis cycle
    base = generic_base()
    F = np.roots(base.curve_coeffs(BETA)[::-1])
    rs = sorted((complex(r) for r in F), key=lambda r: (r.real, r.imag))
    from hitchin4.spectral import _branch_points, _cycle_integral
    F0 = base.curve_coeffs(BETA)
    anchor = 3.0 * max(1.0, float(np.max(np.abs(_branch_points(F0)))))
    h = 1e-5
    for cut in ((rs[0], rs[1]), (rs[1], rs[2])):
        Zp = tau_cycle_integral(base, BETA + h, cut)
        Zm = tau_cycle_integral(base, BETA - h, cut)
        dZ = (Zp - Zm) / (2 * h)
        per = _cycle_integral(F0, cut[0], cut[1], anchor)
        assert abs(dZ - per) < 1e-5 * abs(per)


def test_singular_beta_rejected():
    base = generic_base()
    bad = singular_fibers(base)[0]
    with pytest.raises((BranchPointCoincidence, Exception)):
        elliptic_periods(base, bad)


def test_tau_large_beta_decay():
    base = generic_base()
    betas = [100.0, 1000.0, 10000.0]
    taus = [elliptic_periods(base, b)[2] for b in betas]
    t1 = elliptic_periods(base, 2.0e4)[2]
    t2 = elliptic_periods(base, 4.0e4)[2]
    tinf = 2 * t2 - t1
    errs = [abs(t - tinf) for t in taus]
    slope = np.polyfit(np.log(betas), np.log(errs), 1)[0]
    assert abs(slope + 1) < 0.1


# ---------------------------------------------------------------------------
# asymptotics of the branch points
# ---------------------------------------------------------------------------

def test_root_shifts_zero_masses():
    base = build_base(2.0, (0, 0, 0, 0))
    out = tau_asymptotics(base, [100.0, 200.0, 400.0])
    for key in ("0", "1", "p0"):
        assert abs(out["fitted"][key]) < 1e-10
        assert abs(out["predicted"][key]) < 1e-14


def test_root_shift_single_mass():
    p0 = 2.0
    base = build_base(p0, (1.0, 0, 0, 0))
    assert abs(predicted_root_shift(base, 0.0) + p0) < 1e-12  # -p0 / beta
    out = tau_asymptotics(base, list(np.logspace(2.3, 4, 7)))
    assert abs(out["fitted"]["0"] - out["predicted"]["0"]) < 0.01 * abs(out["predicted"]["0"])
    for key in ("1", "p0"):
        assert abs(out["fitted"][key]) < 1e-8


def test_root_shift_generic_one_percent():
    base = generic_base()
    out = tau_asymptotics(base, list(np.logspace(2.5, 4, 7)))
    for key in ("0", "1", "p0"):
        pred = out["predicted"][key]
        assert abs(out["fitted"][key] - pred) < 0.01 * abs(pred)
