# cython: language_level=3, cdivision=True, boundscheck=False, wraparound=False
"""Compiled numerical kernels.

C twin of :mod:`coldprobe._pure`: same functions, same algorithms, same
constants.  Keep the two modules in lockstep; the cross-backend test
compares them point by point.
"""

from libc.math cimport (acos, atan, cos, exp, fabs, fmax, fmin, log, sin,
                        sqrt, tan, tanh)

cdef extern from "complex.h" nogil:
    double complex clog(double complex)

BACKEND_NAME = "compiled"

VARIANT_LORENTZ_DRUDE = 0
VARIANT_EXP_CUTOFF = 1

DEF MAXSEG = 1500
DEF NPANEL = 8

cdef double PI = 3.141592653589793238462643383279503
cdef double EULER_GAMMA = 0.5772156649015329
cdef double EPMACH = 2.220446049250313e-16
cdef double UFLOW = 2.2250738585072014e-308
cdef double ASYMPTOTIC_RE = 12.0

cdef double[8] BERNOULLI
BERNOULLI[0] = 1.0 / 6.0
BERNOULLI[1] = -1.0 / 30.0
BERNOULLI[2] = 1.0 / 42.0
BERNOULLI[3] = -1.0 / 30.0
BERNOULLI[4] = 5.0 / 66.0
BERNOULLI[5] = -691.0 / 2730.0
BERNOULLI[6] = 7.0 / 6.0
BERNOULLI[7] = -3617.0 / 510.0


# ---------------------------------------------------------------------------
# special functions
# ---------------------------------------------------------------------------

cpdef double complex digamma(double complex z):
    """psi(z) by upward recurrence into the Bernoulli asymptotic regime."""
    cdef double complex acc = 0.0
    cdef double complex inv, inv2, out, term
    cdef int k
    while z.real < ASYMPTOTIC_RE:
        acc -= 1.0 / z
        z += 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    out = clog(z) - 0.5 * inv
    term = inv2
    for k in range(8):
        out -= BERNOULLI[k] / (2.0 * (k + 1)) * term
        term *= inv2
    return out + acc


cpdef double lgamma_real(double x):
    """log Gamma(x) for x > 0 (recurrence + Stirling-Bernoulli tail)."""
    cdef double shift = 0.0
    cdef double inv, inv2, out, term
    cdef int k
    while x < ASYMPTOTIC_RE:
        shift -= log(x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    out = (x - 0.5) * log(x) - x + 0.5 * log(2.0 * PI)
    term = inv
    for k in range(8):
        out += BERNOULLI[k] / (2.0 * (k + 1) * (2.0 * (k + 1) - 1.0)) * term
        term *= inv2
    return out + shift


cpdef double gamma_real(double x):
    return exp(lgamma_real(x))


cdef double _ei_series(double x):
    cdef double out = EULER_GAMMA + log(fabs(x))
    cdef double term = 1.0
    cdef double acc = 0.0
    cdef double add
    cdef int n
    for n in range(1, 400):
        term *= x / n
        add = term / n
        acc += add
        if fabs(add) <= 1e-17 * (fabs(acc) + fabs(out) + 1e-300):
            break
    return out + acc


cdef double _e1_cf(double t):
    """exp(t) * E1(t) for t > 0 via the modified-Lentz continued fraction."""
    cdef double tiny = 1e-300
    cdef double b = t + 1.0
    cdef double c = 1.0 / tiny
    cdef double d = 1.0 / b
    cdef double h = d
    cdef double a, delta
    cdef int k
    for k in range(1, 300):
        a = -1.0 * k * k
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if fabs(delta - 1.0) < 1e-16:
            break
    return h


cpdef double ei_neg(double x):
    """Ei(x) for x < 0."""
    if x > -3.0:
        return _ei_series(x)
    return -exp(x) * _e1_cf(-x)


cdef double _eibar_scaled_asym(double x):
    cdef double inv = 1.0 / x
    cdef double out = 0.0
    cdef double term = inv
    cdef double new_term
    cdef int k = 0
    while k < 60:
        out += term
        k += 1
        new_term = term * k * inv
        if fabs(new_term) >= fabs(term):
            break
        term = new_term
    return out


cpdef double eibar_pos(double x):
    """Principal-value exponential integral Ei-bar(x) for x > 0."""
    if x <= 45.0:
        return _ei_series(x)
    return exp(x) * _eibar_scaled_asym(x)


cpdef tuple ei_scaled_pair(double x):
    """(e^{-x} Ei-bar(x), e^{x} Ei(-x)) for x > 0 without overflow."""
    cdef double a, b
    if x <= 45.0:
        a = exp(-x) * _ei_series(x)
    else:
        a = _eibar_scaled_asym(x)
    if x >= 3.0:
        b = -_e1_cf(x)
    else:
        b = exp(x) * _ei_series(-x)
    return (a, b)


# ---------------------------------------------------------------------------
# bath response functions
# ---------------------------------------------------------------------------

cdef double _spectral_density_c(int variant, double gamma, double omega_c,
                                double s, double omega):
    if variant == VARIANT_LORENTZ_DRUDE:
        return 2.0 * gamma * omega * omega_c * omega_c / (omega * omega + omega_c * omega_c)
    if omega == 0.0:
        return 0.0
    return 0.5 * PI * gamma * omega ** s * omega_c ** (1.0 - s) * exp(-omega / omega_c)


cpdef double spectral_density(int variant, double gamma, double omega_c,
                              double s, double omega):
    return _spectral_density_c(variant, gamma, omega_c, s, omega)


cpdef double chi_imag(int variant, double gamma, double omega_c, double s,
                      double omega):
    if omega == 0.0:
        return 0.0
    if omega > 0.0:
        return _spectral_density_c(variant, gamma, omega_c, s, omega)
    return -_spectral_density_c(variant, gamma, omega_c, s, -omega)


cdef double _chi_real_c(int variant, double gamma, double omega_c, double s,
                        double omega):
    cdef double w = fabs(omega)
    cdef double x, a, b
    if variant == VARIANT_LORENTZ_DRUDE:
        return 2.0 * gamma * omega_c * omega_c * omega_c / (omega_c * omega_c + w * w)
    x = w / omega_c
    if x == 0.0:
        return gamma * omega_c
    if x <= 45.0:
        a = exp(-x) * _ei_series(x)
    else:
        a = _eibar_scaled_asym(x)
    if x >= 3.0:
        b = -_e1_cf(x)
    else:
        b = exp(x) * _ei_series(-x)
    if s == 1.0:
        return gamma * omega_c - 0.5 * gamma * w * (a - b)
    return gamma * omega_c - 0.5 * gamma / omega_c * w * w * (a + b)


cpdef double chi_real(int variant, double gamma, double omega_c, double s,
                      double omega):
    if variant == VARIANT_EXP_CUTOFF and s != 1.0 and s != 2.0:
        raise ValueError("closed-form kernel only available for s in {1, 2}")
    return _chi_real_c(variant, gamma, omega_c, s, omega)


cpdef double renormalization_freq_sq(int variant, double gamma,
                                     double omega_c, double s):
    if variant == VARIANT_LORENTZ_DRUDE:
        return 2.0 * gamma * omega_c
    return gamma * omega_c * gamma_real(s)


# ---------------------------------------------------------------------------
# Gauss-Kronrod 21-point panel rule (QUADPACK dqk21 constants)
# ---------------------------------------------------------------------------

cdef double[11] XGK
XGK[0] = 0.995657163025808080735527280689003
XGK[1] = 0.973906528517171720077964012084452
XGK[2] = 0.930157491355708226001207180059508
XGK[3] = 0.865063366688984510732096688423493
XGK[4] = 0.780817726586416897063717578345042
XGK[5] = 0.679409568299024406234327365114874
XGK[6] = 0.562757134668604683339000099272694
XGK[7] = 0.433395394129247190799265943165784
XGK[8] = 0.294392862701460198131126603103866
XGK[9] = 0.148874338981631210884826001129720
XGK[10] = 0.0

cdef double[11] WGK
WGK[0] = 0.011694638867371874278064396062192
WGK[1] = 0.032558162307964727478818972459390
WGK[2] = 0.054755896574351996031381300244580
WGK[3] = 0.075039674810919952767043140916190
WGK[4] = 0.093125454583697605535065465083366
WGK[5] = 0.109387158802297641899210590325805
WGK[6] = 0.123491976262065851077958109831074
WGK[7] = 0.134709217311473325928054001771707
WGK[8] = 0.142775938577060080797094273138717
WGK[9] = 0.147739104901338491374841515972068
WGK[10] = 0.149445554002916905664936468389821

cdef double[5] WG
WG[0] = 0.066671344308688137593568809893332
WG[1] = 0.149451349150580593145776339657697
WG[2] = 0.219086362515982043995534934228163
WG[3] = 0.269266719309996355091226921569469
WG[4] = 0.295524224714752870173892994651338


cdef struct Params:
    int variant
    double gamma
    double omega_c
    double s
    double omega0
    double wr2
    double T
    int moment
    bint zero_temp
    double wstar
    double width


cdef double _coth_half(double omega, double T):
    cdef double x = 0.5 * omega / T
    if x < 1e-3:
        return 1.0 / x + x / 3.0
    return 1.0 / tanh(x)


cdef double _integrand(Params* p, double omega):
    cdef double j, ra, val
    if omega <= 0.0:
        return 0.0
    j = _spectral_density_c(p.variant, p.gamma, p.omega_c, p.s, omega)
    if j == 0.0:
        return 0.0
    ra = (p.omega0 * p.omega0 + p.wr2 - omega * omega
          - _chi_real_c(p.variant, p.gamma, p.omega_c, p.s, omega))
    val = j / (ra * ra + j * j) / PI
    if not p.zero_temp:
        val *= _coth_half(omega, p.T)
    if p.moment == 2:
        val *= omega * omega
    return val


cdef double _eval_t(Params* p, int kind, double t):
    cdef double w, c
    if kind == 0:
        return _integrand(p, t)
    elif kind == 1:
        w = exp(t)
        return _integrand(p, w) * w
    elif kind == 2:
        c = cos(t)
        w = p.wstar + p.width * tan(t)
        return _integrand(p, w) * p.width / (c * c)
    else:
        return _integrand(p, 1.0 / t) / (t * t)


cdef void _gk21(Params* p, int kind, double a, double b,
                double* result, double* abserr, double* resabs):
    cdef double centre = 0.5 * (a + b)
    cdef double hlgth = 0.5 * (b - a)
    cdef double fc = _eval_t(p, kind, centre)
    cdef double resk = WGK[10] * fc
    cdef double resg = 0.0
    cdef double rabs = fabs(resk)
    cdef double[10] fv1
    cdef double[10] fv2
    cdef double absc, f1, f2, fsum, reskh, resasc, err
    cdef int j
    for j in range(10):
        absc = hlgth * XGK[j]
        f1 = _eval_t(p, kind, centre - absc)
        f2 = _eval_t(p, kind, centre + absc)
        fv1[j] = f1
        fv2[j] = f2
        fsum = f1 + f2
        resk += WGK[j] * fsum
        rabs += WGK[j] * (fabs(f1) + fabs(f2))
        if j % 2 == 1:
            resg += WG[(j - 1) // 2] * fsum
    reskh = 0.5 * resk
    resasc = WGK[10] * fabs(fc - reskh)
    for j in range(10):
        resasc += WGK[j] * (fabs(fv1[j] - reskh) + fabs(fv2[j] - reskh))
    result[0] = resk * hlgth
    rabs *= fabs(hlgth)
    resasc *= fabs(hlgth)
    err = fabs((resk - resg) * hlgth)
    if resasc != 0.0 and err != 0.0:
        err = resasc * fmin(1.0, (200.0 * err / resasc) ** 1.5)
    if rabs > UFLOW / (50.0 * EPMACH):
        err = fmax(err, 50.0 * EPMACH * rabs)
    abserr[0] = err
    resabs[0] = rabs


cpdef tuple covariance_integral(int variant, double gamma, double omega_c,
                                double s, double omega0, double T, int moment,
                                bint zero_temp, double epsabs, double epsrel):
    """One stationary moment integral (value, error, n_segments, converged)."""
    cdef Params p
    p.variant = variant
    p.gamma = gamma
    p.omega_c = omega_c
    p.s = s
    p.omega0 = omega0
    p.T = T
    p.moment = moment
    p.zero_temp = zero_temp
    p.wr2 = renormalization_freq_sq(variant, gamma, omega_c, s)

    # locate the resonance: first zero of Re alpha on (0, inf)
    cdef double hi = sqrt(omega0 * omega0 + p.wr2) + 1e-3 * omega0
    cdef double lo = 0.0
    cdef double mid, ghi, slope, h, jstar
    cdef int n = 0
    ghi = _re_alpha(&p, hi)
    while ghi > 0.0 and n < 200:
        hi *= 1.5
        ghi = _re_alpha(&p, hi)
        n += 1
    for n in range(200):
        mid = 0.5 * (lo + hi)
        if _re_alpha(&p, mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14 * hi:
            break
    p.wstar = 0.5 * (lo + hi)
    h = 1e-6 * fmax(p.wstar, 1.0)
    slope = (_re_alpha(&p, p.wstar + h) - _re_alpha(&p, p.wstar - h)) / (2.0 * h)
    jstar = _spectral_density_c(variant, gamma, omega_c, s, p.wstar)
    p.width = jstar / fmax(fabs(slope), 1e-300)
    p.width = fmax(p.width, 1e-13 * p.wstar)

    cdef double omega_hi = fmax(20.0 * omega_c, 4.0 * p.wstar)
    if not zero_temp:
        omega_hi = fmax(omega_hi, 20.0 * T)

    # initial panels in transformed coordinates
    cdef double[NPANEL] pan_a
    cdef double[NPANEL] pan_b
    cdef int[NPANEL] pan_kind
    cdef int npan = 0
    cdef double half, split
    if p.width < 0.1 * p.wstar:
        half = fmin(0.45 * p.wstar, fmax(1000.0 * p.width, 0.01 * p.wstar))
        pan_kind[npan] = 0; pan_a[npan] = 0.0; pan_b[npan] = p.wstar - half; npan += 1
        pan_kind[npan] = 2
        pan_a[npan] = atan(-half / p.width)
        pan_b[npan] = atan(half / p.width); npan += 1
        pan_kind[npan] = 1
        pan_a[npan] = log(p.wstar + half)
        pan_b[npan] = log(omega_hi); npan += 1
    else:
        split = fmin(2.0 * p.wstar, 0.5 * omega_hi)
        pan_kind[npan] = 0; pan_a[npan] = 0.0; pan_b[npan] = split; npan += 1
        pan_kind[npan] = 1
        pan_a[npan] = log(split)
        pan_b[npan] = log(omega_hi); npan += 1
    pan_kind[npan] = 3; pan_a[npan] = 0.0; pan_b[npan] = 1.0 / omega_hi; npan += 1

    # globally adaptive refinement, worst segment first
    cdef double[MAXSEG] seg_a
    cdef double[MAXSEG] seg_b
    cdef double[MAXSEG] seg_r
    cdef double[MAXSEG] seg_e
    cdef int[MAXSEG] seg_kind
    cdef int nseg = 0
    cdef double total_i = 0.0
    cdef double total_e = 0.0
    cdef double total_resabs = 0.0
    cdef double r, e, rabs, tol, worst, m, r1, e1, r2, e2
    cdef int i, iworst, kind

    for i in range(npan):
        _gk21(&p, pan_kind[i], pan_a[i], pan_b[i], &r, &e, &rabs)
        seg_a[nseg] = pan_a[i]; seg_b[nseg] = pan_b[i]
        seg_r[nseg] = r; seg_e[nseg] = e; seg_kind[nseg] = pan_kind[i]
        nseg += 1
        total_i += r
        total_e += e
        total_resabs += rabs

    while True:
        tol = fmax(epsabs, epsrel * fabs(total_i))
        if total_e <= tol:
            return (total_i, total_e, nseg, True)
        if total_e <= 100.0 * EPMACH * total_resabs:
            return (total_i, total_e, nseg, True)
        if nseg >= MAXSEG - 1:
            return (total_i, total_e, nseg, False)
        worst = -1.0
        iworst = 0
        for i in range(nseg):
            if seg_e[i] > worst:
                worst = seg_e[i]
                iworst = i
        m = 0.5 * (seg_a[iworst] + seg_b[iworst])
        if m <= seg_a[iworst] or m >= seg_b[iworst]:
            seg_e[iworst] = 0.0
            continue
        kind = seg_kind[iworst]
        _gk21(&p, kind, seg_a[iworst], m, &r1, &e1, &rabs)
        _gk21(&p, kind, m, seg_b[iworst], &r2, &e2, &rabs)
        total_i += r1 + r2 - seg_r[iworst]
        total_e += e1 + e2 - seg_e[iworst]
        seg_a[nseg] = m; seg_b[nseg] = seg_b[iworst]
        seg_r[nseg] = r2; seg_e[nseg] = e2; seg_kind[nseg] = kind
        seg_b[iworst] = m
        seg_r[iworst] = r1; seg_e[iworst] = e1
        nseg += 1


cdef double _re_alpha(Params* p, double omega):
    return (p.omega0 * p.omega0 + p.wr2 - omega * omega
            - _chi_real_c(p.variant, p.gamma, p.omega_c, p.s, omega))
