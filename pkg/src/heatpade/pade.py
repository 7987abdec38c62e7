"""Two-sided rational interpolation of the Laplace-transformed survival probability.

A monic [n/n+2] rational P(s)/Q(s) is fitted simultaneously to

* the first n+2 coefficients of the 1/s expansion of tau(s) beyond the
  automatic 1/s^2 leading term, and
* the parity of the Maclaurin expansion at s = 0, whose odd coefficients
  d_1, d_3, ..., d_(2n-1) must vanish.

This yields 2n+2 polynomial equations for the n numerator and n+2
denominator coefficients, solved by damped Newton iteration from
continuation and random starts.  The denominator root pair closest to the
origin estimates the lowest Dirichlet eigenvalue via lambda_1 = Im[s]^2.

A moment-truncation estimator (Prony / shifted-Hankel) recovering
(lambda_j, gamma_j^2) pairs from the even Maclaurin coefficients is also
provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from .errors import (
    DegenerateDenominator,
    IllConditioned,
    NoComplexPole,
    NoSolutionFound,
)
from .heat_content import LargeSSeries

RESIDUAL_ACCEPT = 1e-10
_NEWTON_TOL = 1e-12
_STEP_TOL = 1e-14
_DEDUP_TOL = 1e-8


@dataclass(frozen=True)
class PadeApproximant:
    """Monic rational [n/n+2]: (p0 + ... + p_(n-1) s^(n-1) + s^n) / (q0 + ... + s^(n+2))."""

    n: int
    p: tuple
    q: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(float(v) for v in self.p))
        object.__setattr__(self, "q", tuple(float(v) for v in self.q))
        if len(self.p) != self.n or len(self.q) != self.n + 2:
            raise ValueError("coefficient counts must be n and n+2 (leading 1s implicit)")

    def numerator(self):
        """Ascending coefficients including the leading 1."""
        return np.append(self.p, 1.0)

    def denominator(self):
        return np.append(self.q, 1.0)


@dataclass(frozen=True)
class SpectralEstimate:
    lambda1: float
    pole_re: float
    pole_im: float
    pole_abs_sq: float


@dataclass(frozen=True)
class PadeSolution:
    approximant: PadeApproximant
    residual_norm: float
    poles: tuple
    closest_pole: complex | None
    lambda1: float | None
    small_s_coeffs: tuple  # (d0, d2, d4, d6)

    @property
    def n(self):
        return self.approximant.n


def build_residuals(c: LargeSSeries, n: int):
    """Residual map (p, q) -> 2n+2 values; zero exactly at an interpolating rational.

    The large-s conditions are the coefficients of
    P(s) s^(n+4) - Q(s) (s^(n+2) + sum_j c_j s^(n+2-j)) at degrees
    n+2 .. 2n+3 (the top degree cancels by monicity).  The small-s
    conditions are the odd Maclaurin coefficients d_1, d_3, ..., d_(2n-1)
    of P/Q, obtained by recursive division (q0 must stay nonzero).
    The map is polynomial/rational in the unknowns and complex-safe, so a
    complex-step Jacobian is exact to machine precision.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if len(c.c) < n + 2:
        raise ValueError(f"need large-s coefficients c_1..c_{n + 2}, got {len(c.c)}")
    m_desc = np.concatenate([[1.0], np.asarray(c.c[: n + 2])])  # coeff of s^(n+2-i)
    m_asc = m_desc[::-1].copy()

    def residuals(x):
        x = np.asarray(x)
        p_full = np.concatenate([x[:n], [1.0]])
        q_full = np.concatenate([x[n:], [1.0]])
        q0 = q_full[0]
        if q0 == 0:
            raise DegenerateDenominator("q0 = 0 during small-s evaluation")
        # Large-s: polynomial coefficient matching after clearing powers of s.
        shifted = np.concatenate([np.zeros(n + 4, dtype=x.dtype), p_full])
        qm = np.convolve(q_full, m_asc)
        F = shifted - qm
        large = F[n + 2 : 2 * n + 4]
        # Small-s: Maclaurin division d_k = (p_k - sum q_i d_(k-i)) / q0.
        d = np.zeros(2 * n, dtype=x.dtype)
        for k in range(2 * n):
            acc = p_full[k] if k <= n else 0.0
            imax = min(k, n + 2)
            for i in range(1, imax + 1):
                acc = acc - q_full[i] * d[k - i]
            d[k] = acc / q0
        small = d[1 : 2 * n : 2]
        return np.concatenate([large, small])

    return residuals


def rational_series(approx: PadeApproximant, direction: str, K: int):
    """Expansion coefficients of P/Q: Maclaurin d_0..d_K ("zero") or 1/s terms ("infinity").

    At infinity the list starts at the 1/s^2 term, whose coefficient is 1
    by monicity, so entry j is the coefficient of 1/s^(j+2).
    """
    P = approx.numerator()
    Q = approx.denominator()
    if direction == "zero":
        if Q[0] == 0:
            raise DegenerateDenominator("constant denominator term vanishes")
        d = np.zeros(K + 1)
        for k in range(K + 1):
            acc = P[k] if k < len(P) else 0.0
            for i in range(1, min(k, len(Q) - 1) + 1):
                acc -= Q[i] * d[k - i]
            d[k] = acc / Q[0]
        return d
    if direction == "infinity":
        # Divide reversed polynomials: P/Q in 1/s starts at (1/s)^2.
        Pr = P[::-1]
        Qr = Q[::-1]
        e = np.zeros(K + 1)
        for k in range(K + 1):
            acc = Pr[k] if k < len(Pr) else 0.0
            for i in range(1, min(k, len(Qr) - 1) + 1):
                acc -= Qr[i] * e[k - i]
            e[k] = acc / Qr[0]
        return e
    raise ValueError("direction must be 'zero' or 'infinity'")


def poles(approx: PadeApproximant):
    """All n+2 roots of the denominator, Newton-refined and conjugate-paired."""
    q_desc = approx.denominator()[::-1]
    roots = np.roots(q_desc)
    dq = np.polyder(np.poly1d(q_desc))
    qp = np.poly1d(q_desc)
    refined = []
    for z in roots:
        dz = dq(z)
        if dz != 0:
            z = z - qp(z) / dz
        refined.append(z)
    refined = np.array(refined)
    out = []
    used = np.zeros(len(refined), dtype=bool)
    tol = 1e-8 * (1.0 + np.abs(refined))
    for i, z in enumerate(refined):
        if used[i]:
            continue
        if abs(z.imag) <= tol[i]:
            out.append(complex(z.real, 0.0))
            used[i] = True
            continue
        # Pair with the nearest conjugate partner and symmetrize.
        dist = np.abs(refined - np.conj(z))
        dist[used] = np.inf
        dist[i] = np.inf
        j = int(np.argmin(dist))
        partner = refined[j]
        used[i] = used[j] = True
        re = 0.5 * (z.real + partner.real)
        im = 0.5 * abs(z.imag - partner.imag)
        out.append(complex(re, im))
        out.append(complex(re, -im))
    return tuple(sorted(out, key=lambda w: (abs(w), w.imag)))


def _closest_complex_pole(pole_list):
    complex_poles = [z for z in pole_list if z.imag > 0]
    if not complex_poles:
        return None
    return min(complex_poles, key=abs)


def _make_solution(c: LargeSSeries, n: int, x, residual_norm: float) -> PadeSolution:
    approx = PadeApproximant(n=n, p=tuple(x[:n]), q=tuple(x[n:]))
    pole_list = poles(approx)
    closest = _closest_complex_pole(pole_list)
    lam = closest.imag ** 2 if closest is not None else None
    try:
        d = rational_series(approx, "zero", 6)
        small = (d[0], d[2], d[4], d[6])
    except DegenerateDenominator:
        small = (math.nan,) * 4
    return PadeSolution(
        approximant=approx,
        residual_norm=float(residual_norm),
        poles=pole_list,
        closest_pole=closest,
        lambda1=lam,
        small_s_coeffs=small,
    )


def _scaled_norm(r, x):
    """Residual 2-norm relative to the coefficient magnitude.

    At larger orders the interpolant coefficients reach 1e5 and beyond, so
    an absolute residual tolerance would sit below the double-precision
    rounding floor of the residual evaluation itself; the acceptance
    tolerance is therefore applied to ||r|| / (1 + ||x||).
    """
    return float(np.linalg.norm(r) / (1.0 + np.linalg.norm(x)))


def _affine_reduction(c: LargeSSeries, n: int):
    """Eliminate the large-s conditions, which are affine in the unknowns.

    Returns (x_particular, nullspace) such that x = x_p + N y satisfies
    the n+2 large-s matching conditions identically for every y in R^n;
    the Newton iteration then runs on the n odd-coefficient conditions
    only.
    """
    dim = 2 * n + 2
    m_asc = np.concatenate([[1.0], np.asarray(c.c[: n + 2])])[::-1].copy()

    def large(x):
        p_full = np.concatenate([x[:n], [1.0]])
        q_full = np.concatenate([x[n:], [1.0]])
        shifted = np.concatenate([np.zeros(n + 4), p_full])
        F = shifted - np.convolve(q_full, m_asc)
        return F[n + 2 : 2 * n + 4]

    b = -large(np.zeros(dim))
    A = np.empty((n + 2, dim))
    for i in range(dim):
        e = np.zeros(dim)
        e[i] = 1.0
        A[:, i] = large(e) + b
    x_p, *_ = np.linalg.lstsq(A, b, rcond=None)
    _, _, Vt = np.linalg.svd(A)
    nullspace = Vt[n + 2 :].T
    return x_p, nullspace


def _residual_list(x, c_list, n):
    """List-based twin of build_residuals for extended-precision arithmetic."""
    p_full = list(x[:n]) + [1]
    q_full = list(x[n:]) + [1]
    q0 = q_full[0]
    if q0 == 0:
        raise DegenerateDenominator("q0 = 0 during small-s evaluation")
    m_desc = [1] + list(c_list[: n + 2])
    m_asc = m_desc[::-1]
    qm = [0] * (2 * n + 5)
    for i, qi in enumerate(q_full):
        for j, mj in enumerate(m_asc):
            qm[i + j] += qi * mj
    F = [-v for v in qm]
    for k, pk in enumerate(p_full):
        F[n + 4 + k] += pk
    large = F[n + 2 : 2 * n + 4]
    d = [0] * (2 * n)
    for k in range(2 * n):
        acc = p_full[k] if k <= n else 0
        for i in range(1, min(k, n + 2) + 1):
            acc = acc - q_full[i] * d[k - i]
        d[k] = acc / q0
    return large + d[1 : 2 * n : 2]


def _polish_extended(c: LargeSSeries, n: int, x0, dps: int = 50, max_iter: int = 40):
    """Newton-polish a candidate in extended precision; returns refined doubles or None.

    Near the larger orders the Jacobian is poorly conditioned and
    double-precision iterations stall at a noise plateau around the true
    solution; a few 50-digit Newton steps settle it.
    """
    from mpmath import mp, mpf

    with mp.workdps(dps):
        cvals = [mpf(v) for v in c.c]
        x = [mpf(v) for v in x0]
        dim = 2 * n + 2
        h = mpf(10) ** (-dps // 2)
        try:
            r = _residual_list(x, cvals, n)
            for _ in range(max_iter):
                rnorm = max(abs(v) for v in r)
                if rnorm < mpf(10) ** (-dps + 10):
                    break
                J = mp.matrix(dim, dim)
                for i in range(dim):
                    xs = list(x)
                    xs[i] += h
                    rs = _residual_list(xs, cvals, n)
                    for k in range(dim):
                        J[k, i] = (rs[k] - r[k]) / h
                rhs = mp.matrix([-v for v in r])
                try:
                    step = mp.lu_solve(J, rhs)
                except (ZeroDivisionError, TypeError):
                    # mpmath signals a singular pivot either way.
                    return None
                x = [xi + si for xi, si in zip(x, step)]
                r = _residual_list(x, cvals, n)
                if max(abs(v) for v in step) < mpf(10) ** (-dps + 12) * (1 + max(abs(v) for v in x)):
                    break
            else:
                return None
        except (DegenerateDenominator, OverflowError):
            return None
        return np.array([float(v) for v in x])


def _continuation_seeds(warm: PadeSolution, n: int):
    """Lift an order n-1 solution to order n by multiplying P and Q by linear factors.

    The accepted solutions gain one extra real denominator root roughly at
    the depth of the outermost existing pole, nearly cancelled by a new
    numerator zero, so the lift factors (s + a) for P and (s + b) for Q
    are placed on a grid scaled by the warm solution's pole magnitudes,
    including asymmetric a != b combinations.
    """
    seeds = []
    P_old = warm.approximant.numerator()
    Q_old = warm.approximant.denominator()
    pmax = max((abs(z) for z in warm.poles), default=1.0)
    pmax = max(pmax, 1e-3)

    def lift(a, b):
        P_new = np.convolve(P_old, [a, 1.0])
        Q_new = np.convolve(Q_old, [b, 1.0])
        seeds.append(np.concatenate([P_new[:-1][:n], Q_new[:-1]]))

    for f in (0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0, 1.1, 1.25, 1.5, 2.0):
        lift(f * pmax, f * pmax)
    for fa in (0.5, 0.75, 1.0, 1.1, 1.25):
        for fb in (0.5, 0.75, 1.0, 1.1, 1.25):
            if fa != fb:
                lift(fa * pmax, fb * pmax)
    return seeds


_START_SCALES = (1.0, 10.0, 100.0, 1000.0, 10000.0)
_POLISH_LIMIT = 12


def solve_interpolation(
    c: LargeSSeries,
    n: int,
    seed: int = 0,
    n_multistart: int = 300,
    warm_start: PadeSolution | None = None,
    polish: bool = True,
):
    """All distinct real interpolants found from continuation and random starts.

    The large-s conditions are eliminated exactly (they are affine in the
    coefficients) and a damped Gauss-Newton iteration runs on the odd
    small-s conditions from continuation seeds and random multistarts over
    several magnitude scales.  Candidates are clustered, polished in
    extended precision, kept when the scaled residual norm is below 1e-10,
    deduplicated at relative coefficient distance 1e-8 and ordered by
    ascending |Re| of the closest complex pole (solutions without one come
    last).  Fixed seed implies a deterministic result set.
    """
    from scipy.optimize import least_squares

    residuals = build_residuals(c, n)
    x_p, nullspace = _affine_reduction(c, n)

    def reduced(y):
        with np.errstate(over="raise", invalid="raise"):
            try:
                return residuals(x_p + nullspace @ y)[n + 2 :]
            except (DegenerateDenominator, FloatingPointError):
                return np.full(n, 1e6)

    rng = np.random.default_rng(seed)
    seeds = []
    if warm_start is not None and warm_start.n == n - 1:
        for x0 in _continuation_seeds(warm_start, n):
            seeds.append(nullspace.T @ (x0 - x_p))
    per_scale = max(n_multistart // len(_START_SCALES), 1)
    for scale in _START_SCALES:
        for _ in range(per_scale):
            seeds.append(scale * rng.normal(size=n))

    candidates = []
    for y0 in seeds:
        fit = least_squares(
            reduced, y0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=1500
        )
        x = x_p + nullspace @ fit.x
        try:
            r = residuals(x)
        except DegenerateDenominator:
            continue
        if _scaled_norm(r, x) < 1e-8:
            candidates.append((x, float(np.linalg.norm(r))))

    # Cluster double-precision noise copies of the same root; keep the
    # best-converged representative of each cluster.
    candidates.sort(key=lambda t: t[1])
    reps = []
    for x, rn in candidates:
        if any(np.linalg.norm(x - y) <= 1e-3 * (1.0 + np.linalg.norm(y)) for y, _ in reps):
            continue
        reps.append((x, rn))

    # Extended-precision polish is costly, so it is spent only on the
    # physically plausible front: candidates whose poles are stable and
    # include a complex pair, ordered by |Re| of the nearest pair.
    def plausibility(x):
        roots = np.roots(np.concatenate([x[n:], [1.0]])[::-1])
        cplx = [z for z in roots if z.imag > 1e-8]
        if not cplx or max(z.real for z in roots) > 1e-2:
            return math.inf
        return abs(min(cplx, key=abs).real)

    reps.sort(key=lambda t: plausibility(t[0]))

    accepted = []
    for idx, (x, _) in enumerate(reps):
        if polish and idx < _POLISH_LIMIT:
            refined = _polish_extended(c, n, x)
            if refined is not None:
                x = refined
        try:
            rnorm = _scaled_norm(residuals(x), x)
        except DegenerateDenominator:
            continue
        if rnorm >= RESIDUAL_ACCEPT:
            continue
        if any(
            np.linalg.norm(x - y[0]) <= _DEDUP_TOL * (1.0 + np.linalg.norm(y[0]))
            for y in accepted
        ):
            continue
        accepted.append((x, rnorm))
    if not accepted:
        raise NoSolutionFound(f"no Newton start converged below {RESIDUAL_ACCEPT} at order {n}")
    solutions = [_make_solution(c, n, x, rnorm) for x, rnorm in accepted]
    solutions.sort(
        key=lambda s: abs(s.closest_pole.real) if s.closest_pole is not None else math.inf
    )
    return solutions


def ladder(
    c: LargeSSeries,
    n_max: int,
    seed: int = 0,
    n_multistart: int = 200,
    polish: bool = True,
):
    """Selected physical solution at each order n = 1..n_max, warm-starting upward.

    Continuation from the accepted order n-1 solution is what keeps the
    solver on the physical branch at the larger orders, so the ladder is
    always climbed from the bottom even when only the top order is wanted.
    """
    if n_max < 1:
        raise ValueError("order must be >= 1")
    out = []
    warm = None
    for n in range(1, n_max + 1):
        sols = solve_interpolation(
            c, n, seed=seed, n_multistart=n_multistart, warm_start=warm, polish=polish
        )
        warm = select_solution(sols)
        out.append(warm)
    return out


def select_solution(solutions, re_slack: float = 1e-3) -> PadeSolution:
    """Physical-solution filter: positive tau(0), stable poles, a complex pole pair.

    Among survivors the solution whose closest pole sits nearest the
    imaginary axis is returned.
    """
    survivors = []
    for sol in solutions:
        p0 = sol.approximant.p[0] if sol.approximant.p else 1.0
        q0 = sol.approximant.q[0]
        if not (p0 > 0 and q0 > 0):
            continue
        if sol.closest_pole is None:
            continue
        if any(z.real > re_slack for z in sol.poles):
            continue
        survivors.append(sol)
    if not survivors:
        raise NoSolutionFound("no accepted solution passes the physical filter")
    return min(survivors, key=lambda s: abs(s.closest_pole.real))


def lambda1_from_solution(sol: PadeSolution) -> SpectralEstimate:
    """lambda_1 = Im[closest pole]^2; |s|^2 is reported as a secondary diagnostic."""
    if sol.closest_pole is None:
        raise NoComplexPole("all denominator roots are real")
    z = sol.closest_pole
    return SpectralEstimate(
        lambda1=z.imag**2,
        pole_re=z.real,
        pole_im=z.imag,
        pole_abs_sq=abs(z) ** 2,
    )


def prony_moments(d, m: int):
    """Recover (lambda_j, gamma_j^2) for j = 1..m from even Maclaurin coefficients.

    ``d`` holds d_0, d_2, ..., d_(4m-2); the moments mu_k = (-1)^k d_(2k)
    satisfy mu_k = sum_j gamma_j^2 / lambda_j^(k+1).  With x_j = 1/lambda_j
    this is a power-moment problem solved by the generalized eigenproblem
    of the shifted Hankel matrices of (mu_k), followed by a Vandermonde
    solve for the weights.  Results are sorted by ascending lambda.
    """
    d = np.asarray([float(v) for v in d])
    if len(d) < 2 * m:
        raise ValueError(f"need 2m = {2 * m} coefficients, got {len(d)}")
    mu = np.array([(-1) ** k * d[k] for k in range(2 * m)])
    H0 = np.array([[mu[i + j] for j in range(m)] for i in range(m)])
    H1 = np.array([[mu[i + j + 1] for j in range(m)] for i in range(m)])
    if np.linalg.cond(H0) > 1e13:
        raise IllConditioned("moment Hankel matrix is numerically singular")
    eigvals = linalg.eig(H1, H0, right=False)
    x = np.real_if_close(eigvals, tol=1e6)
    if np.iscomplexobj(x) and np.max(np.abs(x.imag)) > 1e-8 * np.max(np.abs(x)):
        raise IllConditioned("moment eigenvalues are not real")
    x = np.real(x)
    if np.any(x <= 0):
        raise IllConditioned("moment eigenvalues are not positive")
    V = np.vander(x, N=m, increasing=True).T  # V[k, j] = x_j^k
    w_times_x = np.linalg.solve(V, mu[:m])
    lam = 1.0 / x
    gamma_sq = w_times_x * lam
    order = np.argsort(lam)
    return [(float(lam[j]), float(gamma_sq[j])) for j in order]
