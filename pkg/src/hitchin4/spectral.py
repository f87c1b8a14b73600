"""Numeric spectral-curve toolkit for the four-punctured sphere.

The Hitchin base at masses m is the beta-line of quartics
F(z) = f_m(z) + beta z(z-1)(z-p0); the spectral curve is the double cover
w^2 = F(z), and the tautological form tau = w dz / (z(z-1)(z-p0)) has
residues +-m_p over the punctures (0, 1, p0, infinity).

Everything here is complex double precision.  Contour and cycle integrals
use trapezoid/elliptic-annulus quadrature with adaptive node doubling; the
square-root sheet is fixed by analytic continuation from the base point
z = 3 * max|branch point| with the principal square root, so repeated runs
are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PUNCTURE_KEYS = ("0", "1", "p0", "inf")


class DegenerateP0(ValueError):
    """p0 collides with 0 or 1."""


class DegenerateConfiguration(RuntimeError):
    """Discriminant polynomial in beta degenerates below degree six."""


class BranchPointCollision(RuntimeError):
    """A branch point lies inside a residue integration loop."""


class SingularFiber(RuntimeError):
    """beta is (numerically) a singular fiber; the curve degenerates."""


class BranchPointCoincidence(RuntimeError):
    """Branch points coincide to tolerance; no cycle basis exists."""


class RootTrackingLost(RuntimeError):
    """Root continuation lost its target during the large-beta sweep."""


class OffCurve(ValueError):
    """(beta, u, w) does not satisfy the affine cubic to tolerance."""


class UndefinedFlag(RuntimeError):
    """Residue matrix vanishes at the puncture; the flag is not defined."""


def f_m_coefficients(p0: complex, masses) -> np.ndarray:
    """Ascending coefficients of the normalized quartic f_m.

    Uniquely determined by the residue constraints f(0) = m0^2 p0^2,
    f(1) = m1^2 (1-p0)^2, f(p0) = mp^2 p0^2 (p0-1)^2, f4 = minf^2 together
    with the vanishing of the beta^5 coefficient of the z-discriminant of
    f_m + beta z(z-1)(z-p0) (center of mass of the singular fibers at 0).
    """
    m0, m1, mp, mi = (complex(m) for m in masses)
    a, b, c, d = m0 ** 2, m1 ** 2, mp ** 2, mi ** 2
    f4 = d
    f3 = (-a + 2 * b - 4 * d - c - a * p0 - b * p0 - 4 * d * p0 + 2 * c * p0) / 3
    f2 = (a + b + d + c + 5 * a * p0 - 4 * b * p0 + 5 * d * p0 - 4 * c * p0
          + (a + b + c + d) * p0 ** 2) / 3
    f1 = -(p0 / 3) * (4 * a + b + d - 2 * c + 4 * a * p0 - 2 * b * p0 + d * p0 + c * p0)
    f0 = a * p0 ** 2
    return np.array([f0, f1, f2, f3, f4], dtype=complex)


def _cubic_coeffs(p0: complex) -> np.ndarray:
    """z(z-1)(z-p0), ascending, padded to quartic length."""
    return np.array([0.0, p0, -(1 + p0), 1.0, 0.0], dtype=complex)


@dataclass(frozen=True)
class HitchinBase:
    """Marked point p0, complex masses (m0, m1, mp0, minf which may be 0),
    and the normalized quartic coefficients f0..f4 (ascending)."""

    p0: complex
    masses: tuple[complex, complex, complex, complex]
    f_coeffs: tuple[complex, complex, complex, complex, complex]

    def curve_coeffs(self, beta: complex) -> np.ndarray:
        """Ascending coefficients of F = f_m + beta z(z-1)(z-p0)."""
        return np.asarray(self.f_coeffs, dtype=complex) + beta * _cubic_coeffs(self.p0)

    def quadratic_differential(self, beta: complex, z):
        """q(z) = F(z) / (z(z-1)(z-p0))^2."""
        F = np.polyval(self.curve_coeffs(beta)[::-1], z)
        c = z * (z - 1) * (z - self.p0)
        return F / c ** 2


def build_base(p0: complex, masses) -> HitchinBase:
    p0 = complex(p0)
    if min(abs(p0), abs(p0 - 1)) < 1e-12:
        raise DegenerateP0(f"p0 = {p0} collides with 0 or 1")
    masses = tuple(complex(m) for m in masses)
    f = f_m_coefficients(p0, masses)
    return HitchinBase(p0, masses, tuple(f))


# ---------------------------------------------------------------------------
# discriminant in beta and singular fibers
# ---------------------------------------------------------------------------

def quartic_discriminant(c) -> complex:
    """Discriminant of a formal quartic with ascending coefficients c
    (valid as a polynomial identity even when the leading coefficient is 0)."""
    e, d, cc, b, a = (complex(x) for x in c)
    return (256 * a ** 3 * e ** 3 - 192 * a ** 2 * b * d * e ** 2
            - 128 * a ** 2 * cc ** 2 * e ** 2 + 144 * a ** 2 * cc * d ** 2 * e
            - 27 * a ** 2 * d ** 4 + 144 * a * b ** 2 * cc * e ** 2
            - 6 * a * b ** 2 * d ** 2 * e - 80 * a * b * cc ** 2 * d * e
            + 18 * a * b * cc * d ** 3 + 16 * a * cc ** 4 * e
            - 4 * a * cc ** 3 * d ** 2 - 27 * b ** 4 * e ** 2
            + 18 * b ** 3 * cc * d * e - 4 * b ** 3 * d ** 3
            - 4 * b ** 2 * cc ** 3 * e + b ** 2 * cc ** 2 * d ** 2)


def beta_discriminant_poly(base: HitchinBase, nodes: int = 9) -> np.ndarray:
    """Ascending coefficients of the degree-6 polynomial
    beta -> disc_z(f_m + beta z(z-1)(z-p0)), fitted by interpolation."""
    c = _cubic_coeffs(base.p0)
    f = np.asarray(base.f_coeffs)
    scale = max(1.0, float(np.max(np.abs(f))))
    bs = 2.0 * scale * np.exp(2j * np.pi * np.arange(nodes) / nodes)
    vals = np.array([quartic_discriminant(f + b * c) for b in bs])
    V = np.vander(bs, 7, increasing=True)
    coef, *_ = np.linalg.lstsq(V, vals, rcond=None)
    return coef


def singular_fibers(base: HitchinBase) -> list[complex]:
    """The six beta values (with multiplicity) of singular Hitchin fibers;
    their sum vanishes by the center-of-mass normalization of f_m."""
    coef = beta_discriminant_poly(base)
    scale = float(np.max(np.abs(coef)))
    if scale == 0 or abs(coef[6]) < 1e-10 * scale:
        raise DegenerateConfiguration("beta-discriminant is not degree six")
    roots = np.roots(coef[::-1])
    return [complex(r) for r in sorted(roots, key=lambda r: (r.real, r.imag))]


# ---------------------------------------------------------------------------
# B^0 membership
# ---------------------------------------------------------------------------

def _roots_with_multiplicity(coeffs) -> list[tuple[complex, int]]:
    coeffs = np.asarray(coeffs, dtype=complex)
    deg = len(coeffs) - 1
    while deg > 0 and abs(coeffs[deg]) <= 1e-13 * np.max(np.abs(coeffs)):
        deg -= 1
    if deg == 0:
        return []
    roots = np.roots(coeffs[deg::-1])
    scale = 1.0 + float(np.max(np.abs(roots)))
    tol = 1e-6 * scale
    clusters: list[list[complex]] = []
    for r in sorted(roots, key=lambda r: (r.real, r.imag)):
        for cl in clusters:
            if abs(r - np.mean(cl)) < tol:
                cl.append(r)
                break
        else:
            clusters.append([r])
    return [(complex(np.mean(cl)), len(cl)) for cl in clusters]


def is_square_polynomial(coeffs) -> bool:
    """Floating-point perfect-square test: even degree and every clustered
    root of even multiplicity (equivalently, deg gcd(F, F') = deg F / 2)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(coeffs))))
    deg = len(coeffs) - 1
    while deg > 0 and abs(coeffs[deg]) <= 1e-12 * scale:
        deg -= 1
    if deg == 0:
        return True
    if deg % 2 == 1:
        return False
    clusters = _roots_with_multiplicity(coeffs)
    if any(m % 2 for _, m in clusters):
        return False
    # gcd-degree certificate: sum (m_i - 1) must reach deg / 2
    return sum(m - 1 for _, m in clusters) >= deg // 2


def in_B0(base: HitchinBase, beta: complex) -> bool:
    """True iff F = f_m + beta z(z-1)(z-p0) is not a perfect square and has
    no non-simple zero at a puncture (including infinity, where the order
    of vanishing is 4 - deg F)."""
    F = base.curve_coeffs(beta)
    scale = max(1.0, float(np.max(np.abs(F))))
    deg = 4
    while deg > 0 and abs(F[deg]) <= 1e-12 * scale:
        deg -= 1
    if deg <= 2:  # zero at infinity of order >= 2
        return False
    if is_square_polynomial(F):
        return False
    dF = np.polynomial.polynomial.polyder(F)
    for p in (0.0, 1.0, base.p0):
        if abs(np.polyval(F[::-1], p)) < 1e-10 * scale and \
           abs(np.polyval(dF[::-1], p)) < 1e-8 * scale:
            return False
    return True


# ---------------------------------------------------------------------------
# Higgs representatives and flags
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralFiberPoint:
    """Point of the fiber over beta: stratum "big" carries honest (u, w)
    solving the affine cubic; "small" is the projective point (0:0:1) and
    "extra" the point (m_inf:0:(f3+beta)/2) over z = infinity."""

    base: HitchinBase
    beta: complex
    u: complex | None = None
    w: complex | None = None
    stratum: str = "big"

    def __post_init__(self):
        if self.stratum not in ("big", "small", "extra"):
            raise ValueError(f"unknown stratum {self.stratum!r}")
        if self.stratum == "big":
            if self.u is None or self.w is None:
                raise OffCurve("big stratum needs (u, w)")
            F = self.base.curve_coeffs(self.beta)
            minf = self.base.masses[3]
            val = np.polyval(F[::-1], self.u) - (minf * self.u ** 2 + self.w) ** 2
            scale = max(1.0, float(np.max(np.abs(F))), abs(self.w) ** 2)
            if abs(val) > 1e-8 * scale:
                raise OffCurve(f"cubic residual {abs(val):.3e} at (u, w)")
        elif self.stratum == "extra" and abs(self.base.masses[3]) < 1e-13:
            raise OffCurve("extra point exists only when m_inf != 0")


def on_curve_point(base: HitchinBase, beta: complex, u: complex,
                   sign: int = +1) -> SpectralFiberPoint:
    """Big-stratum point over u with w = sign * sqrt(F(u)) - m_inf u^2."""
    F = base.curve_coeffs(beta)
    val = np.polyval(F[::-1], u)
    w = sign * np.sqrt(val) - base.masses[3] * u ** 2
    return SpectralFiberPoint(base, beta, complex(u), complex(w), "big")


def higgs_representative(pt: SpectralFiberPoint):
    """Trace-free Higgs matrix phi = N(z) / (z(z-1)(z-p0)) dz as a 2x2 of
    ascending coefficient arrays N plus the common denominator."""
    from .core import ComplexPoly

    base, beta = pt.base, pt.beta
    F = base.curve_coeffs(beta)
    minf = base.masses[3]
    den = ComplexPoly(_cubic_coeffs(base.p0)[:4])
    if pt.stratum == "small":
        N = ((ComplexPoly([0]), ComplexPoly(F)),
             (ComplexPoly([1]), ComplexPoly([0])))
        return N, den
    if pt.stratum == "extra":
        a = (F[3]) / (2 * minf)  # f3 + beta is already folded into F
        diag = ComplexPoly([0, a, minf])
        upper = ComplexPoly(F) - diag * diag
        if upper.degree > 2:
            raise AssertionError("extra-point upper entry must be quadratic")
        N = ((-1 * diag, upper), (ComplexPoly([1]), diag))
        return N, den
    diag = ComplexPoly([pt.w, 0, minf])
    num = ComplexPoly(F) - diag * diag
    if abs(num(pt.u)) > 1e-6 * max(1.0, float(np.max(np.abs(num.coeffs)))):
        raise OffCurve("upper-right division by (z - u) is not exact")
    upper = num.deflate(pt.u)
    N = ((-1 * diag, upper), (ComplexPoly([-pt.u, 1]), diag))
    return N, den


def _flag_at(pt: SpectralFiberPoint, p: complex, wshift: complex):
    """Projective flag coordinate at a finite puncture p for a big-stratum
    point: generic value (wshift + w)/(u - p), polar values by l'Hopital."""
    base, beta, u, w = pt.base, pt.beta, pt.u, pt.w
    num = wshift + w
    den = u - p
    scale = 1.0 + abs(w) + abs(u)
    if abs(den) > 1e-9 * scale:
        return num / den
    if abs(num) > 1e-9 * scale:
        return np.inf
    # l'Hopital along the fiber: the limit of (wshift + w)/(u - p) is
    # w'(p) = F'(p)/(2 W) - 2 m_inf p with W = m_inf p^2 + w
    F = pt.base.curve_coeffs(beta)
    dF = np.polynomial.polynomial.polyder(F)
    minf = base.masses[3]
    W = minf * p ** 2 + w
    if abs(W) < 1e-12 * scale:
        raise UndefinedFlag(f"residue matrix vanishes at z = {p}")
    return np.polyval(dF[::-1], p) / (2 * W) - 2 * minf * p


def flags(pt: SpectralFiberPoint):
    """Projective flag coordinates (F_0, F_1, F_p0, F_inf); np.inf encodes
    the direction (1:0).  Each finite flag is the eigenvector direction of
    Res phi at the puncture with eigenvalue m_p."""
    base = pt.base
    p0 = base.p0
    m0, m1, mp, mi = base.masses
    if pt.stratum == "small":
        return (m0 * p0, m1 * (1 - p0), mp * p0 * (p0 - 1), -mi)
    if pt.stratum == "extra":
        f3beta = base.curve_coeffs(pt.beta)[3]
        F1 = -(f3beta + 2 * mi * (mi + m1 * (p0 - 1))) / (2 * mi)
        Fp = -(f3beta * p0 + 2 * mi * mp * (p0 - 1) * p0 + 2 * mi ** 2 * p0 ** 2) / (2 * mi)
        return (m0 * p0, F1, Fp, np.inf)
    F0 = _flag_at(pt, 0.0, -m0 * p0)
    F1 = _flag_at(pt, 1.0, m1 * (p0 - 1) + mi)
    Fp = _flag_at(pt, p0, -mp * p0 * (p0 - 1) + mi * p0 ** 2)
    return (F0, F1, Fp, np.inf)


def residue_matrix(pt: SpectralFiberPoint, p: complex) -> np.ndarray:
    """Residue of phi at a finite puncture (coefficient of dz/(z-p))."""
    N, den = higgs_representative(pt)
    dden = np.polynomial.polynomial.polyder(den.coeffs)
    cp = np.polyval(dden[::-1], p)
    return np.array([[complex(N[i][j](p)) for j in range(2)] for i in range(2)]) / cp


# ---------------------------------------------------------------------------
# sheet-anchored square root and contours
# ---------------------------------------------------------------------------

def _continue_sqrt(values: np.ndarray, start: complex | None = None) -> np.ndarray:
    """Continuous branch of sqrt along a sampled path; optionally match a
    given starting value."""
    w = np.sqrt(values.astype(complex))
    flip = np.abs(w[1:] - w[:-1]) > np.abs(w[1:] + w[:-1])
    signs = np.ones(len(w))
    signs[1:] = np.cumprod(np.where(flip, -1.0, 1.0))
    w = w * signs
    if start is not None and abs(w[0] - start) > abs(w[0] + start):
        w = -w
    return w


def _anchor_value(F: np.ndarray, anchor: complex, z0: complex, n: int = 4096) -> complex:
    """Value of the anchored sheet at z0: principal sqrt at the anchor,
    continued along the straight segment anchor -> z0."""
    t = np.linspace(0.0, 1.0, n)
    path = anchor + (z0 - anchor) * t
    vals = np.polyval(F[::-1], path)
    w = _continue_sqrt(vals)
    return complex(w[-1])


def _branch_points(F: np.ndarray) -> np.ndarray:
    scale = float(np.max(np.abs(F)))
    deg = 4
    while deg > 0 and abs(F[deg]) <= 1e-13 * scale:
        deg -= 1
    return np.roots(F[deg::-1])


def tautological_residues(base: HitchinBase, beta: complex) -> dict:
    """Contour residues of tau = w dz / (z(z-1)(z-p0)) at the eight points
    over the punctures, keyed "0", "1", "p0", "inf"; each entry is the
    (plus-sheet, minus-sheet) pair on the anchored sheet labeling.

    Residues at a finite puncture come from loops of radius 0.1 x the
    distance to the nearest branch point or other puncture; the value at
    infinity integrates the anchored sheet over a circle enclosing all
    branch points (only present when m_inf != 0).
    """
    F = base.curve_coeffs(beta)
    branch = _branch_points(F)
    anchor = 3.0 * max(1.0, float(np.max(np.abs(branch))))
    punctures = [0.0, 1.0, base.p0]
    out = {}
    scale = max(1.0, float(np.max(np.abs(F))))
    for key, p in zip(PUNCTURE_KEYS[:3], punctures):
        if abs(np.polyval(F[::-1], p)) < 1e-12 * scale:
            # ramification point over the puncture: tau is regular there
            # (w vanishes like sqrt(z - p)), so both residues are zero
            out[key] = (0j, 0j)
            continue
        dists = [abs(p - b) for b in branch] + [abs(p - q) for q in punctures if q != p]
        radius = 0.1 * min(dists)
        if radius < 1e-12:
            raise BranchPointCollision(f"branch point at puncture z = {p}")
        n = 512
        th = 2 * np.pi * np.arange(n) / n
        z = p + radius * np.exp(1j * th)
        w = _continue_sqrt(np.polyval(F[::-1], z),
                           start=_anchor_value(F, anchor, complex(z[0])))
        if abs(w[0] - w[-1]) > abs(w[0] + w[-1]):
            raise BranchPointCollision("sheet failed to close around loop")
        dz = 1j * radius * np.exp(1j * th)
        integrand = w / (z * (z - 1) * (z - base.p0)) * dz
        res = complex(np.mean(integrand) / 1j)
        out[key] = (res, -res)
    if abs(base.masses[3]) > 0:
        R = anchor / 3.0 * 2.5
        n = 2048
        th = 2 * np.pi * np.arange(n) / n
        z = R * np.exp(1j * th)
        w = _continue_sqrt(np.polyval(F[::-1], z),
                           start=_anchor_value(F, anchor, complex(z[0])))
        if abs(w[0] - w[-1]) > abs(w[0] + w[-1]):
            raise BranchPointCollision("odd branching at infinity")
        dz = 1j * R * np.exp(1j * th)
        res = complex(-np.mean(w / (z * (z - 1) * (z - base.p0)) * dz) / 1j)
        out["inf"] = (res, -res)
    else:
        out["inf"] = (0j, 0j)
    return out


# ---------------------------------------------------------------------------
# elliptic periods
# ---------------------------------------------------------------------------

def _cut_pairs(roots):
    """Deterministic nearest-neighbour pairing of four branch points
    (minimal total cut length; ties broken by the sorted order)."""
    rs = sorted((complex(r) for r in roots),
                key=lambda r: (round(r.real, 12), round(r.imag, 12)))
    pairings = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))
    lengths = [abs(rs[i] - rs[j]) + abs(rs[k] - rs[l]) for (i, j), (k, l) in pairings]
    (i, j), (k, l) = pairings[int(np.argmin(lengths))]
    return rs, (i, j), (k, l)


def _ellipse_rho(a: complex, b: complex, z: complex) -> float:
    """Elliptic coordinate of z relative to the segment [a, b] (>0 off it)."""
    import cmath

    u = (2 * z - a - b) / (b - a)
    return abs(cmath.acos(u).imag)


def _cycle_integral(F: np.ndarray, a: complex, b: complex, anchor: complex,
                    weight=None, tol: float = 1e-9, nmax: int = 1 << 17) -> complex:
    """Integral of weight(z) dz / (2 w) once around the cut [a, b] on the
    anchored sheet, via an elliptse contour and adaptive trapezoid."""
    others = [complex(r) for r in _branch_points(F)]
    for e in (a, b):
        k = int(np.argmin([abs(r - e) for r in others]))
        others.pop(k)
    rho_min = min((_ellipse_rho(a, b, r) for r in others), default=2.0)
    if rho_min < 1e-7:
        raise BranchPointCoincidence("branch points collide with the cut")
    r = min(1.2, 0.5 * rho_min)
    mid, half = (a + b) / 2, (b - a) / 2
    prev = None
    n = 256
    while n <= nmax:
        t = 2 * np.pi * np.arange(n) / n
        z = mid + half * np.cos(t - 1j * r)
        dz = -half * np.sin(t - 1j * r) * 1j
        w = _continue_sqrt(np.polyval(F[::-1], z),
                           start=_anchor_value(F, anchor, complex(z[0])))
        if abs(w[0] - w[-1]) > abs(w[0] + w[-1]):
            raise BranchPointCoincidence("cycle contour crosses a branch cut")
        wz = np.ones_like(z) if weight is None else weight(z)
        val = complex(np.sum(wz / (2 * w) * dz) * (2 * np.pi / n))
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return val
        prev = val
        n *= 2
    return prev


def elliptic_periods(base: HitchinBase, beta: complex):
    """(A-period, B-period, tau) of omega = dz/(2w) on w^2 = F(z).

    Cycles circle the two cuts of the deterministic branch-point pairing;
    tau = B/A is normalized to the upper half-plane by a sign flip of B.
    The same anchored sheet is used for both cycles, so the periods vary
    continuously along beta sweeps; d/dbeta of the tau-cycle integral of
    the tautological form equals the returned period exactly in the limit.
    """
    F = base.curve_coeffs(beta)
    scale = float(np.max(np.abs(F)))
    deg = 4
    while deg > 0 and abs(F[deg]) <= 1e-13 * scale:
        deg -= 1
    if deg < 3:
        raise SingularFiber("curve degenerates below genus one")
    roots = np.roots(F[deg::-1])
    rs = sorted((complex(r) for r in roots),
                key=lambda r: (round(r.real, 12), round(r.imag, 12)))
    dmin = min(abs(x - y) for i, x in enumerate(rs) for y in rs[i + 1:])
    if dmin < 1e-8 * max(1.0, max(abs(r) for r in rs)):
        raise SingularFiber(f"branch points coincide (min distance {dmin:.2e})")
    anchor = 3.0 * max(1.0, float(np.max(np.abs(rs))))
    if deg == 3:
        a, b, c = rs
    else:
        rs, (i, j), (k, l) = _cut_pairs(rs)
        a, b, c = rs[i], rs[j], rs[k]
    A = _cycle_integral(F, a, b, anchor)
    B = _cycle_integral(F, b, c, anchor)
    if abs(A) < 1e-14:
        raise SingularFiber("vanishing A-period")
    tau = B / A
    if tau.imag < 0:
        tau, B = -tau, -B
    return A, B, tau


def tau_cycle_integral(base: HitchinBase, beta: complex, cut: tuple[complex, complex]) -> complex:
    """Cycle integral of the tautological form w dz / (z(z-1)(z-p0)) around
    a given cut; used for the d(Z_gamma) = (period) d(beta) consistency check."""
    F = base.curve_coeffs(beta)
    branch = _branch_points(F)
    anchor = 3.0 * max(1.0, float(np.max(np.abs(branch))))
    a = min((complex(r) for r in branch), key=lambda r: abs(r - cut[0]))
    b = min((complex(r) for r in branch), key=lambda r: abs(r - cut[1]))

    def weight(z):
        return 2 * np.polyval(F[::-1], z) / (z * (z - 1) * (z - base.p0))

    return _cycle_integral(F, a, b, anchor, weight=weight)


# ---------------------------------------------------------------------------
# large-beta asymptotics
# ---------------------------------------------------------------------------

def predicted_root_shift(base: HitchinBase, p: complex) -> complex:
    """Closed-form coefficient of 1/beta in the branch-point shift near a
    finite puncture: -f(p) / c'(p) with c = z(z-1)(z-p0)."""
    f = np.asarray(base.f_coeffs)
    dc = np.polynomial.polynomial.polyder(_cubic_coeffs(base.p0))
    return complex(np.polyval(f[::-1], p) * (-1.0) / np.polyval(dc[::-1], p))


def tau_asymptotics(base: HitchinBase, beta_samples) -> dict:
    """Track the branch-point drift near each finite puncture over large
    |beta| samples and fit the 1/beta coefficient of each shift.

    Returns {"fitted": {key: coeff}, "predicted": {key: coeff}} for keys
    "0", "1", "p0"."""
    betas = [complex(b) for b in beta_samples]
    if len(betas) < 2:
        raise ValueError("need at least two beta samples")
    punctures = {"0": 0.0, "1": 1.0, "p0": base.p0}
    sep = min(abs(x - y) for x in punctures.values() for y in punctures.values() if x != y)
    shifts = {k: [] for k in punctures}
    for b in betas:
        F = base.curve_coeffs(b)
        deg = 4
        while deg > 0 and abs(F[deg]) <= 1e-13 * np.max(np.abs(F)):
            deg -= 1
        roots = np.roots(F[deg::-1])
        for key, p in punctures.items():
            k = int(np.argmin(np.abs(roots - p)))
            if abs(roots[k] - p) > 0.45 * sep:
                raise RootTrackingLost(f"no root near puncture {key} at beta={b}")
            shifts[key].append(complex(roots[k]) - p)
    inv = np.array([1.0 / b for b in betas])
    design = np.column_stack([inv, inv ** 2])  # two-term fit removes 1/beta^2 bias
    fitted = {}
    for key in punctures:
        s = np.array(shifts[key])
        coeff, *_ = np.linalg.lstsq(design, s, rcond=None)
        fitted[key] = complex(coeff[0])
    predicted = {k: predicted_root_shift(base, p) for k, p in punctures.items()}
    return {"fitted": fitted, "predicted": predicted}
