"""Root localization: exact unit-circle split plus simultaneous iteration.

The unit-circle roots of a real polynomial F with F(0) != 0 all divide
gcd(F, reciprocal(F)), so they are isolated exactly: that gcd is peeled
into cyclotomic factors (each contributing phi(d) circle roots per
multiplicity) and a residual.  Everything else is classified numerically
by an Aberth-Ehrlich solver with an escalation ladder for roots landing
in the epsilon-band around the circle: extended-precision Newton
refinement first, an honest "undetermined" verdict if that cannot decide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import arith
from .arith import PrimeTable
from .goldbach import TheoremReport, goldbach_polynomial
from .poly import (
    IntPolynomial,
    cyclotomic,
    divrem_exact,
    exact_quotient_or_none,
    gcd_rational,
    reciprocal,
)

# Golden angle in radians; irrational rotation spreads the start points.
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class SolverError(RuntimeError):
    """Aberth iteration failed to converge; carries diagnostics."""

    def __init__(self, message: str, *, iterations: int, max_correction: float,
                 max_residual: float):
        super().__init__(
            f"{message} (iterations={iterations}, "
            f"max_correction={max_correction:.3e}, max_residual={max_residual:.3e})")
        self.iterations = iterations
        self.max_correction = max_correction
        self.max_residual = max_residual


@dataclass
class SolveResult:
    roots: np.ndarray
    iterations: int
    max_correction: float
    max_residual: float


def _horner_triple(coeffs: np.ndarray, z: np.ndarray):
    """Value, derivative value and absolute scale at all points."""
    v = np.full(z.shape, coeffs[-1], dtype=np.complex128)
    dv = np.zeros(z.shape, dtype=np.complex128)
    s = np.full(z.shape, abs(coeffs[-1]), dtype=np.float64)
    az = np.abs(z)
    for c in coeffs[-2::-1]:
        dv = dv * z + v
        v = v * z + c
        s = s * az + abs(c)
    return v, dv, s


def _newton_ratio_and_residual(coeffs: np.ndarray, z: np.ndarray):
    """p(z)/p'(z) and the backward residual |p(z)| / sum |c_i| |z|^i.

    Points outside the unit disk are evaluated through the reversed
    polynomial at 1/z, which keeps |z|^degree out of the arithmetic and
    cannot overflow at high degree: with q = rev(p) and u = 1/z,
    p/p' = z*q(u) / (d*q(u) - u*q'(u)) and the residual scales match.
    """
    d = len(coeffs) - 1
    w = np.empty(z.shape, dtype=np.complex128)
    be = np.empty(z.shape, dtype=np.float64)
    outside = np.abs(z) > 1.0
    inside = ~outside
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if inside.any():
            zi = z[inside]
            v, dv, s = _horner_triple(coeffs, zi)
            w[inside] = v / dv
            be[inside] = np.abs(v) / np.maximum(s, 1e-300)
        if outside.any():
            zo = z[outside]
            u = 1.0 / zo
            qv, dqv, s = _horner_triple(coeffs[::-1], u)
            w[outside] = zo * qv / (d * qv - u * dqv)
            be[outside] = np.abs(qv) / np.maximum(s, 1e-300)
    return w, be


def aberth_solve(p: IntPolynomial, tol: float = 1e-12, max_iter: int = 600,
                 seed: int = 0) -> SolveResult:
    """All roots of p by simultaneous Aberth-Ehrlich iteration.

    Start points sit on the circle of radius (|a_0|/|a_d|)^(1/d) with
    golden-angle spacing and seeded 1e-3 radial jitter, so runs are
    reproducible.  Convergence means every correction fell below tol
    (relative to 1 + |z|); if the correction test stalls at the rounding
    floor, a final backward-residual check below 1e-11 still accepts.
    Roots at the origin are split off exactly first.
    """
    if p.degree < 1:
        raise ValueError("need degree >= 1")
    coeffs = list(p.coeffs)
    n_zero = 0
    while coeffs[0] == 0:
        coeffs.pop(0)
        n_zero += 1
    scale = max(abs(c) for c in coeffs)
    c = np.array([float(x) / scale for x in coeffs], dtype=np.float64)
    d = len(c) - 1
    if d == 0:
        roots = np.zeros(n_zero, dtype=np.complex128)
        return SolveResult(roots, 0, 0.0, 0.0)

    rng = np.random.default_rng(seed)
    radius = (abs(c[0]) / abs(c[-1])) ** (1.0 / d)
    radii = radius * (1.0 + 1e-3 * (2.0 * rng.random(d) - 1.0))
    angles = _GOLDEN_ANGLE * np.arange(d)
    z = radii * np.exp(1j * angles)

    chunk = max(1, (1 << 22) // max(d, 1))
    iterations = 0
    max_corr = math.inf
    for iterations in range(1, max_iter + 1):
        w, _ = _newton_ratio_and_residual(c, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.zeros(d, dtype=np.complex128)
            for i0 in range(0, d, chunk):
                i1 = min(i0 + chunk, d)
                diff = z[i0:i1, None] - z[None, :]
                idx = np.arange(i0, i1)
                diff[idx - i0, idx] = np.inf
                s[i0:i1] = (1.0 / diff).sum(axis=1)
            corr = w / (1.0 - w * s)
        bad = ~np.isfinite(corr)
        if bad.any():
            # broken points (coincident approximations, vanishing
            # derivative) are jittered and keep the sweep unconverged
            corr[bad] = 0.0
            z[bad] *= 1.0 + 1e-9 * (1.0 + rng.random(int(bad.sum())))
        z = z - corr
        max_corr = float((np.abs(corr) / (1.0 + np.abs(z))).max())
        if bad.any():
            max_corr = math.inf
        if max_corr < tol:
            break
    resid = _newton_ratio_and_residual(c, z)[1]
    max_resid = float(resid.max()) if np.isfinite(resid).all() else math.inf
    if max_corr >= tol and max_resid > 1e-11:
        raise SolverError("Aberth iteration did not converge",
                          iterations=iterations, max_correction=max_corr,
                          max_residual=max_resid)
    if n_zero:
        z = np.concatenate([z, np.zeros(n_zero, dtype=np.complex128)])
    return SolveResult(z, iterations, max_corr, max_resid)


# ---------------------------------------------------------------------------
# Exact unit-circle split
# ---------------------------------------------------------------------------

@dataclass
class StripResult:
    self_reciprocal_part: IntPolynomial          # gcd(F, reciprocal(F))
    cofactor: IntPolynomial                      # F / gcd, exact
    cyclotomic_factors: list[tuple[int, int]]    # (d, multiplicity)
    residual: IntPolynomial                      # non-cyclotomic part of the gcd


def _phi_small(n: int) -> int:
    val, rem, p = n, n, 2
    while p * p <= rem:
        if rem % p == 0:
            val = val // p * (p - 1)
            while rem % p == 0:
                rem //= p
        p += 1 if p == 2 else 2
    if rem > 1:
        val = val // rem * (rem - 1)
    return val


def _cyclotomic_candidates(max_deg: int) -> list[int]:
    """All d with phi(d) <= max_deg (phi(d) > sqrt(d) for d > 6)."""
    upper = max(6, max_deg * max_deg) + 1
    return [d for d in range(1, upper) if _phi_small(d) <= max_deg]


def strip_unit_circle_part(F: IntPolynomial) -> StripResult:
    """Split off the factor of F carrying every root on the unit circle.

    Requires F(0) != 0.  The gcd with the reversed polynomial is computed
    exactly, then peeled by exact trial division against each cyclotomic
    of degree at most deg(gcd); whatever remains (off-circle reciprocal
    pairs, or self-reciprocal non-cyclotomic factors) is returned as the
    residual for numeric classification.
    """
    if F.is_zero:
        raise ValueError("zero polynomial")
    if F[0] == 0:
        raise ValueError("F(0) must be nonzero; divide out z first")
    G = gcd_rational(F, reciprocal(F))
    H = exact_quotient_or_none(F, G)
    if H is None:
        raise AssertionError("gcd does not divide exactly")
    factors: list[tuple[int, int]] = []
    residual = G
    if residual.degree > 0:
        for d in _cyclotomic_candidates(residual.degree):
            phi_d = _phi_small(d)
            if phi_d > residual.degree:
                continue
            # numeric prefilter: exact division attempted only near zeros
            zeta = complex(math.cos(2 * math.pi / max(d, 1)),
                           math.sin(2 * math.pi / max(d, 1)))
            val = residual.evaluate_complex(zeta)
            scale = sum(abs(cf) for cf in residual.coeffs)
            if abs(val) > 1e-6 * scale:
                continue
            phi_poly = cyclotomic(d)
            mult = 0
            while residual.degree >= phi_d:
                q, r = divrem_exact(residual, phi_poly)
                if not r.is_zero:
                    break
                residual = q
                mult += 1
            if mult:
                factors.append((d, mult))
    return StripResult(G, H, factors, residual)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

@dataclass
class RootClassification:
    N: int
    degree: int
    inside: int
    on_circle: int
    outside: int
    undetermined: int
    cyclotomic_divisors: list[tuple[int, int]]
    residual_on_circle: int
    max_residual: float
    iterations: int
    numeric_roots: np.ndarray = field(repr=False, default=None)

    def counts_consistent(self) -> bool:
        return (self.inside + self.on_circle + self.outside
                + self.undetermined == self.degree)


def _refine_abs_delta(coeffs: tuple[int, ...], z0: complex) -> float:
    """|z| - 1 for the nearby true root, at doubled working precision."""
    with mpmath.workdps(34):
        z = mpmath.mpc(z0)
        for _ in range(60):
            pv = mpmath.mpc(0)
            dv = mpmath.mpc(0)
            for cf in reversed(coeffs):
                dv = dv * z + pv
                pv = pv * z + cf
            if dv == 0:
                break
            step = pv / dv
            z -= step
            if abs(step) <= mpmath.mpf("1e-28") * (1 + abs(z)):
                break
        return float(abs(z) - 1)


def _classify_points(points: np.ndarray, src: IntPolynomial, *, squared: bool,
                     epsilon: float, allow_on: bool) -> tuple[int, int, int, int]:
    """Count (inside, on, outside, undetermined) for solved points.

    ``squared=True`` means each point is w = z**2 for a pair of roots
    +-sqrt(w), so bands are squared and counts doubled.  Band points are
    escalated by extended-precision Newton on the exact source
    polynomial; only residual factors may legitimately sit on the circle
    (``allow_on``).
    """
    mult = 2 if squared else 1
    lo = (1.0 - epsilon) ** mult
    hi = (1.0 + epsilon) ** mult
    inside = on = outside = undet = 0
    mags = np.abs(points)
    for mag, pt in zip(mags, points):
        if mag < lo:
            inside += mult
        elif mag > hi:
            outside += mult
        else:
            delta = _refine_abs_delta(src.coeffs, complex(pt))
            if abs(delta) <= 1e-20:
                if allow_on:
                    on += mult
                else:
                    undet += mult
            elif delta < 0:
                inside += mult
            else:
                outside += mult
    return inside, on, outside, undet


def _solve_counts(P: IntPolynomial, *, epsilon: float, tol: float,
                  max_iter: int, seed: int, allow_on: bool):
    """Solve P numerically and classify its roots against the unit circle."""
    if P.degree < 1:
        return (0, 0, 0, 0), 0.0, 0, np.empty(0, dtype=np.complex128)
    if P.is_even() and P.degree >= 2:
        g = P.even_part()
        result = aberth_solve(g, tol=tol, max_iter=max_iter, seed=seed)
        counts = _classify_points(result.roots, g, squared=True,
                                  epsilon=epsilon, allow_on=allow_on)
        sq = np.sqrt(result.roots.astype(np.complex128))
        roots = np.concatenate([sq, -sq])
    else:
        result = aberth_solve(P, tol=tol, max_iter=max_iter, seed=seed)
        counts = _classify_points(result.roots, P, squared=False,
                                  epsilon=epsilon, allow_on=allow_on)
        roots = result.roots
    return counts, result.max_residual, result.iterations, roots


def classify_roots(N: int, table: PrimeTable, *, epsilon: float = 1e-6,
                   tol: float = 1e-12, max_iter: int = 600, seed: int = 0,
                   F: IntPolynomial | None = None) -> RootClassification:
    """Locate all roots of F_N relative to the unit circle.

    The on-circle count is exact for the cyclotomic part (sum of phi(d)
    over exactly divided factors); the cofactor and any non-cyclotomic
    residual are classified numerically with escalation.  Repeated roots
    are handled by classifying gcd(F, F') separately and adding counts.
    """
    if N <= 5:
        raise ValueError("classification is defined for N > 5")
    if F is None:
        F = goldbach_polynomial(N, table)
    degree = F.degree

    # decompose into squarefree pieces; a root of multiplicity m lands in
    # m pieces, so the piecewise counts are additive
    pieces: list[IntPolynomial] = []
    work = [F]
    while work:
        piece = work.pop()
        sqf_gcd = gcd_rational(piece, piece.derivative())
        if sqf_gcd.degree > 0:
            work.append(divrem_exact(piece, sqf_gcd)[0])
            work.append(sqf_gcd)
        else:
            pieces.append(piece)

    inside = on_exact = outside = undet = residual_on = 0
    cyclo: dict[int, int] = {}
    max_resid = 0.0
    iters = 0
    all_roots = []
    for piece in pieces:
        strip = strip_unit_circle_part(piece)
        for d, m in strip.cyclotomic_factors:
            cyclo[d] = cyclo.get(d, 0) + m
            on_exact += _phi_small(d) * m
        (h_in, h_on, h_out, h_un), r1, i1, roots1 = _solve_counts(
            strip.cofactor, epsilon=epsilon, tol=tol, max_iter=max_iter,
            seed=seed, allow_on=False)
        (g_in, g_on, g_out, g_un), r2, i2, roots2 = _solve_counts(
            strip.residual, epsilon=epsilon, tol=tol, max_iter=max_iter,
            seed=seed + 1, allow_on=True)
        inside += h_in + g_in
        outside += h_out + g_out
        undet += h_un + g_un
        residual_on += h_on + g_on
        max_resid = max(max_resid, r1, r2)
        iters = max(iters, i1, i2)
        all_roots.extend([roots1, roots2])

    numeric = (np.concatenate(all_roots)
               if all_roots else np.empty(0, dtype=np.complex128))
    return RootClassification(
        N=N, degree=degree, inside=inside,
        on_circle=on_exact + residual_on, outside=outside,
        undetermined=undet,
        cyclotomic_divisors=sorted(cyclo.items()),
        residual_on_circle=residual_on,
        max_residual=max_resid, iterations=iters,
        numeric_roots=numeric,
    )


def unit_circle_count_report(N: int, table: PrimeTable,
                             classification: RootClassification | None = None,
                             **kwargs) -> TheoremReport:
    """Check that F_N has exactly 2*phi(N) roots on the unit circle."""
    if classification is None:
        classification = classify_roots(N, table, **kwargs)
    expected = 2 * arith.euler_phi(N, table)
    holds = (classification.on_circle == expected
             and classification.residual_on_circle == 0
             and classification.undetermined == 0)
    return TheoremReport(
        "unit_circle_count", N, holds,
        witness={
            "expected_on_circle": expected,
            "on_circle": classification.on_circle,
            "residual_on_circle": classification.residual_on_circle,
            "undetermined": classification.undetermined,
        },
    )


def classification_csv(rows: list[RootClassification], table: PrimeTable) -> str:
    """Render classifications as CSV: N,two_phi_N,inside,on,outside,undetermined."""
    lines = ["N,two_phi_N,inside,on,outside,undetermined"]
    for rc in rows:
        lines.append(f"{rc.N},{2 * arith.euler_phi(rc.N, table)},"
                     f"{rc.inside},{rc.on_circle},{rc.outside},{rc.undetermined}")
    return "\n".join(lines) + "\n"
