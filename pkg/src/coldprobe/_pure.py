"""Pure-Python numerical kernels.

This module is the fallback implementation of the hot kernels (special
functions, bath response functions, and the adaptive Gauss-Kronrod
quadrature of the stationary covariance integrals).  A compiled Cython
twin (``coldprobe._kernels``) implements the same functions with C
arithmetic; :mod:`coldprobe._backend` picks whichever is available at
import time.  Both implementations follow the same algorithms so that
they agree to within floating-point rounding.
"""

from __future__ import annotations

import cmath
import math

BACKEND_NAME = "pure"

# Lorentz-Drude / exponential-cutoff variant tags shared with the compiled core.
VARIANT_LORENTZ_DRUDE = 0
VARIANT_EXP_CUTOFF = 1

EULER_GAMMA = 0.5772156649015329

# B_2 .. B_16, used by the digamma and log-gamma asymptotic tails.
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)

_ASYMPTOTIC_RE = 12.0  # recurrence-to-asymptotic switchover for psi / lgamma


# ---------------------------------------------------------------------------
# special functions
# ---------------------------------------------------------------------------

def digamma(z: complex) -> complex:
    """psi(z) by upward recurrence into the Bernoulli asymptotic regime.

    Assumes the caller has already rejected non-positive integer arguments.
    """
    z = complex(z)
    acc = 0.0 + 0.0j
    while z.real < _ASYMPTOTIC_RE:
        acc -= 1.0 / z
        z += 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    out = cmath.log(z) - 0.5 * inv
    term = inv2
    for k, b2k in enumerate(_BERNOULLI, start=1):
        out -= b2k / (2.0 * k) * term
        term *= inv2
    return out + acc


def lgamma_real(x: float) -> float:
    """log Gamma(x) for x > 0 (recurrence + Stirling-Bernoulli tail)."""
    shift = 0.0
    while x < _ASYMPTOTIC_RE:
        shift -= math.log(x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    out = (x - 0.5) * math.log(x) - x + 0.5 * math.log(2.0 * math.pi)
    term = inv
    for k, b2k in enumerate(_BERNOULLI, start=1):
        out += b2k / (2.0 * k * (2.0 * k - 1.0)) * term
        term *= inv2
    return out + shift


def gamma_real(x: float) -> float:
    """Gamma(x) for x > 0."""
    return math.exp(lgamma_real(x))


def _ei_series(x: float) -> float:
    """Convergent series gamma + ln|x| + sum x^n/(n n!).

    Equals Ei(x) for x < 0 and the principal value Ei-bar(x) for x > 0.
    Used on [-3, 45]; alternation destroys precision for more negative
    arguments (the continued fraction takes over there).
    """
    out = EULER_GAMMA + math.log(abs(x))
    term = 1.0
    acc = 0.0
    for n in range(1, 400):
        term *= x / n
        add = term / n
        acc += add
        if abs(add) <= 1e-17 * (abs(acc) + abs(out) + 1e-300):
            break
    return out + acc


def _e1_cf(t: float) -> float:
    """exp(t) * E1(t) for t > 0 via the modified-Lentz continued fraction."""
    tiny = 1e-300
    b = t + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for k in range(1, 300):
        a = -k * k
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h


def ei_neg(x: float) -> float:
    """Ei(x) for x < 0."""
    if x > -3.0:
        return _ei_series(x)
    # Ei(-t) = -E1(t): continued fraction avoids the catastrophic
    # cancellation of the alternating series at large |x|.
    return -math.exp(x) * _e1_cf(-x)


def eibar_pos(x: float) -> float:
    """Principal-value exponential integral Ei-bar(x) for x > 0."""
    if x <= 45.0:
        return _ei_series(x)
    return math.exp(x) * _eibar_scaled_asym(x)


def _eibar_scaled_asym(x: float) -> float:
    """exp(-x) * Ei-bar(x) from the asymptotic series, for large x > 0.

    k-th term is k!/x^{k+1}; summation stops at the smallest term.
    """
    inv = 1.0 / x
    out = 0.0
    term = inv
    k = 0
    while k < 60:
        out += term
        k += 1
        new_term = term * k * inv
        if abs(new_term) >= abs(term):
            break
        term = new_term
    return out


def ei_scaled_pair(x: float) -> tuple[float, float]:
    """Return (e^{-x} Ei-bar(x), e^{x} Ei(-x)) for x > 0 without overflow."""
    if x <= 45.0:
        a = math.exp(-x) * _ei_series(x)
    else:
        a = _eibar_scaled_asym(x)
    if x >= 3.0:
        b = -_e1_cf(x)
    else:
        b = math.exp(x) * _ei_series(-x)
    return a, b


# ---------------------------------------------------------------------------
# bath response functions
# ---------------------------------------------------------------------------

def spectral_density(variant: int, gamma: float, omega_c: float, s: float,
                     omega: float) -> float:
    """J(omega) for omega >= 0."""
    if variant == VARIANT_LORENTZ_DRUDE:
        return 2.0 * gamma * omega * omega_c * omega_c / (omega * omega + omega_c * omega_c)
    if omega == 0.0:
        return 0.0
    return 0.5 * math.pi * gamma * omega ** s * omega_c ** (1.0 - s) * math.exp(-omega / omega_c)


def chi_imag(variant: int, gamma: float, omega_c: float, s: float,
             omega: float) -> float:
    """Im of the Fourier-domain dissipation kernel; odd in omega."""
    if omega == 0.0:
        return 0.0
    if omega > 0.0:
        return spectral_density(variant, gamma, omega_c, s, omega)
    return -spectral_density(variant, gamma, omega_c, s, -omega)


def chi_real(variant: int, gamma: float, omega_c: float, s: float,
             omega: float) -> float:
    """Re of the Fourier-domain dissipation kernel; even in omega.

    Closed forms: Lorentz-Drude for any parameters, exponential cutoff for
    s = 1 and s = 2 (via the scaled exponential-integral pair).
    """
    w = abs(omega)
    if variant == VARIANT_LORENTZ_DRUDE:
        return 2.0 * gamma * omega_c ** 3 / (omega_c * omega_c + w * w)
    x = w / omega_c
    if x == 0.0:
        return gamma * omega_c
    a, b = ei_scaled_pair(x)
    if s == 1.0:
        return gamma * omega_c - 0.5 * gamma * w * (a - b)
    if s == 2.0:
        return gamma * omega_c - 0.5 * gamma / omega_c * w * w * (a + b)
    raise ValueError("closed-form kernel only available for s in {1, 2}")


def renormalization_freq_sq(variant: int, gamma: float, omega_c: float,
                            s: float) -> float:
    """Counter-term frequency squared: chi_real at zero frequency."""
    if variant == VARIANT_LORENTZ_DRUDE:
        return 2.0 * gamma * omega_c
    return gamma * omega_c * gamma_real(s)


# ---------------------------------------------------------------------------
# Gauss-Kronrod 21-point panel rule (QUADPACK dqk21 constants)
# ---------------------------------------------------------------------------

_XGK = (
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
)

_WGK = (
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
)

_WG = (
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
)

_EPMACH = 2.220446049250313e-16
_UFLOW = 2.2250738585072014e-308


def _gk21(f, a: float, b: float):
    """21-point Gauss-Kronrod rule on [a, b]: (result, abserr, resabs)."""
    centre = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)
    fc = f(centre)
    resk = _WGK[10] * fc
    resg = 0.0
    resabs = abs(resk)
    fv1 = [0.0] * 10
    fv2 = [0.0] * 10
    for j in range(10):
        absc = hlgth * _XGK[j]
        f1 = f(centre - absc)
        f2 = f(centre + absc)
        fv1[j] = f1
        fv2[j] = f2
        fsum = f1 + f2
        resk += _WGK[j] * fsum
        resabs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            resg += _WG[(j - 1) // 2] * fsum
    reskh = 0.5 * resk
    resasc = _WGK[10] * abs(fc - reskh)
    for j in range(10):
        resasc += _WGK[j] * (abs(fv1[j] - reskh) + abs(fv2[j] - reskh))
    result = resk * hlgth
    resabs *= abs(hlgth)
    resasc *= abs(hlgth)
    abserr = abs((resk - resg) * hlgth)
    if resasc != 0.0 and abserr != 0.0:
        abserr = resasc * min(1.0, (200.0 * abserr / resasc) ** 1.5)
    if resabs > _UFLOW / (50.0 * _EPMACH):
        abserr = max(abserr, 50.0 * _EPMACH * resabs)
    return result, abserr, resabs


def adaptive_gk(panels, epsabs: float, epsrel: float, max_segments: int = 4000):
    """Globally adaptive GK21 over an initial list of (callable, a, b) panels.

    Returns (value, error_bound, n_segments, converged).  The worst panel is
    bisected until the summed error estimate meets ``max(epsabs,
    epsrel*|value|)``, the roundoff floor is hit, or the refinement budget is
    exhausted.
    """
    import heapq

    segs = []
    counter = 0
    total_i = 0.0
    total_e = 0.0
    total_resabs = 0.0
    for fn, a, b in panels:
        r, e, rabs = _gk21(fn, a, b)
        heapq.heappush(segs, (-e, counter, fn, a, b, r, e))
        counter += 1
        total_i += r
        total_e += e
        total_resabs += rabs
    while True:
        tol = max(epsabs, epsrel * abs(total_i))
        if total_e <= tol:
            return total_i, total_e, counter, True
        if total_e <= 100.0 * _EPMACH * total_resabs:
            # roundoff floor: cannot do better in double precision
            return total_i, total_e, counter, True
        if counter >= max_segments:
            return total_i, total_e, counter, False
        _, _, fn, a, b, r, e = heapq.heappop(segs)
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            # interval no longer splittable
            heapq.heappush(segs, (0.0, counter, fn, a, b, r, e))
            counter += 1
            continue
        r1, e1, _ = _gk21(fn, a, m)
        r2, e2, _ = _gk21(fn, m, b)
        total_i += r1 + r2 - r
        total_e += e1 + e2 - e
        heapq.heappush(segs, (-e1, counter, fn, a, m, r1, e1))
        counter += 1
        heapq.heappush(segs, (-e2, counter, fn, m, b, r2, e2))
        counter += 1


# ---------------------------------------------------------------------------
# stationary covariance quadrature
# ---------------------------------------------------------------------------

def _coth_half(omega: float, T: float) -> float:
    """coth(omega / 2T) for omega > 0, with a Laurent guard at small argument."""
    x = 0.5 * omega / T
    if x < 1e-3:
        return 1.0 / x + x / 3.0
    return 1.0 / math.tanh(x)


def _re_alpha(variant, gamma, omega_c, s, omega0, wr2, omega):
    return omega0 * omega0 + wr2 - omega * omega - chi_real(variant, gamma, omega_c, s, omega)


def _integrand(variant, gamma, omega_c, s, omega0, wr2, T, moment, zero_temp,
               omega):
    if omega <= 0.0:
        return 0.0
    j = spectral_density(variant, gamma, omega_c, s, omega)
    if j == 0.0:
        return 0.0
    ra = _re_alpha(variant, gamma, omega_c, s, omega0, wr2, omega)
    denom = ra * ra + j * j
    val = j / denom / math.pi
    if not zero_temp:
        val *= _coth_half(omega, T)
    if moment == 2:
        val *= omega * omega
    return val


def _locate_resonance(variant, gamma, omega_c, s, omega0, wr2):
    """First zero of Re alpha on (0, inf) by bracketing + bisection."""
    hi = math.sqrt(omega0 * omega0 + wr2) + 1e-3 * omega0
    g = lambda w: _re_alpha(variant, gamma, omega_c, s, omega0, wr2, w)
    ghi = g(hi)
    n = 0
    while ghi > 0.0 and n < 200:
        hi *= 1.5
        ghi = g(hi)
        n += 1
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14 * hi:
            break
    wstar = 0.5 * (lo + hi)
    h = 1e-6 * max(wstar, 1.0)
    slope = (g(wstar + h) - g(wstar - h)) / (2.0 * h)
    jstar = spectral_density(variant, gamma, omega_c, s, wstar)
    width = jstar / max(abs(slope), 1e-300)
    width = max(width, 1e-13 * wstar)
    return wstar, width


def covariance_integral(variant: int, gamma: float, omega_c: float, s: float,
                        omega0: float, T: float, moment: int,
                        zero_temp: bool, epsabs: float, epsrel: float):
    """One stationary moment integral.

    moment=0 gives <x^2>, moment=2 gives <p^2>.  Returns (value,
    error_bound, n_segments, converged).  Near a high-Q resonance the
    integrand carries ~1e-10 relative rounding noise (cancellation in the
    real part of the response denominator), which bounds the achievable
    error estimate.
    """
    wr2 = renormalization_freq_sq(variant, gamma, omega_c, s)
    wstar, width = _locate_resonance(variant, gamma, omega_c, s, omega0, wr2)
    omega_hi = max(20.0 * omega_c, 4.0 * wstar, 0.0 if zero_temp else 20.0 * T)

    def base(w):
        return _integrand(variant, gamma, omega_c, s, omega0, wr2, T, moment,
                          zero_temp, w)

    # panels are assembled in transformed coordinates; each closure carries
    # its own jacobian so a single adaptive loop can own the error budget
    panel_funcs = []

    def add_identity(a, b):
        panel_funcs.append((base, a, b))

    def add_log(a, b):
        fn = lambda t: base(math.exp(t)) * math.exp(t)
        panel_funcs.append((fn, math.log(a), math.log(b)))

    def add_peak(center, w_scale, a, b):
        # omega = center + w_scale * tan(t) flattens the Lorentzian peak
        fn = lambda t: base(center + w_scale * math.tan(t)) * w_scale / math.cos(t) ** 2
        panel_funcs.append((fn, math.atan((a - center) / w_scale),
                            math.atan((b - center) / w_scale)))

    def add_inverse_tail(a):
        # omega = 1/t maps [a, inf) to (0, 1/a]
        fn = lambda t: base(1.0 / t) / (t * t)
        panel_funcs.append((fn, 0.0, 1.0 / a))

    if width < 0.1 * wstar:
        half = min(0.45 * wstar, max(1000.0 * width, 0.01 * wstar))
        add_identity(0.0, wstar - half)
        add_peak(wstar, width, wstar - half, wstar + half)
        add_log(wstar + half, omega_hi)
    else:
        split = min(2.0 * wstar, 0.5 * omega_hi)
        add_identity(0.0, split)
        add_log(split, omega_hi)
    add_inverse_tail(omega_hi)

    return adaptive_gk(panel_funcs, epsabs, epsrel, max_segments=1500)
