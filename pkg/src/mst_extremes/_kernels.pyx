# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scalar kernels.

Routine-for-routine port of ``_kernels_py``; see that module for the
algorithms. Only the inner loops are typed, the public signatures are the
same so ``_backend`` can swap the two freely.
"""
from libc.math cimport exp, log, log1p, sqrt, fabs, erfc, pow, fmin, fmax
from libc.stdlib cimport malloc, free

from mst_extremes.exceptions import NumericalFault as KernelError

BACKEND = "cython"

cdef double _LOG_SQRT_2PI = 0.91893853320467274178
cdef double _LOG_SQRT_PI = 0.57236494292470008707
cdef double _EULER = 0.5772156649015329
cdef double _PI = 3.14159265358979323846

cdef double _LANCZOS_SHIFT = 5.2421875
cdef double _LANCZOS_C0 = 0.999999999999997092
cdef double[14] _LANCZOS = [
    57.1562356658629235, -59.5979603554754912, 14.1360979747417471,
    -0.491913816097620199, 0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5,
]

cdef double[40] _ZETA_M1 = [
    0.6449340668482264, 0.2020569031595943, 0.08232323371113819,
    0.03692775514336993, 0.01734306198444914, 0.008349277381922827,
    0.00407735619794434, 0.0020083928260822143, 0.0009945751278180853,
    0.0004941886041194645, 0.0002460865533080483, 0.00012271334757848915,
    6.124813505870483e-05, 3.058823630702049e-05, 1.528225940865187e-05,
    7.637197637899763e-06, 3.81729326499984e-06, 1.908212716553939e-06,
    9.539620338727962e-07, 4.769329867878064e-07, 2.38450502727733e-07,
    1.1921992596531106e-07, 5.960818905125948e-08, 2.980350351465228e-08,
    1.4901554828365043e-08, 7.45071178983543e-09, 3.725334024788457e-09,
    1.862659723513049e-09, 9.313274324196682e-10, 4.656629065033784e-10,
    2.3283118336765053e-10, 1.164155017270052e-10, 5.820772087902701e-11,
    2.9103850444971e-11, 1.4551921891041985e-11, 7.275959835057482e-12,
    3.637979547378651e-12, 1.818989650307066e-12, 9.094947840263888e-13,
    4.547473783042154e-13,
]

CF_MAX_ITER = 300
cdef int _CF_MAX_ITER = 300
cdef double CF_TINY = 1e-300
cdef double CF_EPS = 4e-16

cdef double[11] _XGK = [
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0,
]
cdef double[11] _WGK = [
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478116, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
]
cdef double[5] _WG = [
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
]
QUAD_LIMIT = 2000
cdef int _QUAD_LIMIT = 2000
cdef double _EPMACH = 2.220446049250313e-16
cdef double _UFLOW = 2.2250738585072014e-308


cdef double _lanczos_series(double x) noexcept nogil:
    cdef double ser = _LANCZOS_C0
    cdef double y = x
    cdef int j
    for j in range(14):
        y += 1.0
        ser += _LANCZOS[j] / y
    return ser


cdef double _lgamma1p_series(double z) noexcept nogil:
    cdef double s = 0.0
    cdef double zk = -z
    cdef double term
    cdef int k
    for k in range(40):
        zk *= -z
        term = _ZETA_M1[k] * zk / (k + 2)
        s += term
        if fabs(term) <= 1e-17 * fabs(s):
            break
    return (1.0 - _EULER) * z - log1p(z) + s


cdef double _ln_gamma(double x) noexcept nogil:
    cdef double tmp, z
    if 0.5 <= x <= 1.5:
        return _lgamma1p_series(x - 1.0)
    if 1.5 < x <= 2.5:
        z = x - 2.0
        return log1p(z) + _lgamma1p_series(z)
    tmp = x + _LANCZOS_SHIFT
    return (x + 0.5) * log(tmp) - tmp + log(2.5066282746310005 * _lanczos_series(x) / x)


cdef double _gamma_half_ratio(double a) noexcept nogil:
    cdef double b = a + 0.5
    cdef double ratio = _lanczos_series(b) / _lanczos_series(a) * (a / b)
    return exp(-0.5 + b * log1p(0.5 / (a + _LANCZOS_SHIFT))) * sqrt(b + _LANCZOS_SHIFT) * ratio


cdef double _c_v(double v) noexcept nogil:
    return _gamma_half_ratio(0.5 * v) / sqrt(v * _PI)


def ln_gamma(double x):
    return _ln_gamma(x)


def gamma_half_ratio(double a):
    """Gamma(a + 1/2) / Gamma(a) without forming either gamma value."""
    return _gamma_half_ratio(a)


def c_v(double v):
    return _c_v(v)


# status codes carried out of nogil code
cdef enum:
    OK = 0
    CF_FAIL = 1
    QUAD_LIMIT_HIT = 2
    QUAD_COLLAPSE = 3


cdef double _betacf(double a, double b, double x, int* status) noexcept nogil:
    cdef double qab = a + b
    cdef double qap = a + 1.0
    cdef double qam = a - 1.0
    cdef double c = 1.0
    cdef double d = 1.0 - qab * x / qap
    cdef double h, aa, delta
    cdef int m
    cdef double m2
    if fabs(d) < CF_TINY:
        d = CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2.0 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if fabs(d) < CF_TINY:
            d = CF_TINY
        c = 1.0 + aa / c
        if fabs(c) < CF_TINY:
            c = CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if fabs(d) < CF_TINY:
            d = CF_TINY
        c = 1.0 + aa / c
        if fabs(c) < CF_TINY:
            c = CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < CF_EPS:
            return h
    status[0] = CF_FAIL
    return h


cdef double _ibeta_xy(double a, double b, double x, double y, double log_beta,
                      int* status) noexcept nogil:
    cdef double lx, ly, front
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    lx = log(x) if x < 0.5 else log1p(-y)
    ly = log(y) if y < 0.5 else log1p(-x)
    front = exp(a * lx + b * ly - log_beta)
    if x * (a + b) < a:
        return front * _betacf(a, b, x, status) / a
    return 1.0 - front * _betacf(b, a, y, status) / b


cdef inline double _t_log_beta(double v) noexcept nogil:
    return _LOG_SQRT_PI - log(_gamma_half_ratio(0.5 * v))


cdef double _t_cdf(double v, double t, double log_beta, int* status) noexcept nogil:
    cdef double tt = t * t
    cdef double denom = v + tt
    cdef double half = 0.5 * _ibeta_xy(0.5 * v, 0.5, v / denom, tt / denom, log_beta, status)
    return 1.0 - half if t > 0.0 else half


cdef _raise(int status):
    if status == CF_FAIL:
        raise KernelError("incomplete beta continued fraction did not converge")
    if status == QUAD_LIMIT_HIT:
        raise KernelError("adaptive quadrature hit %d subintervals" % _QUAD_LIMIT)
    if status == QUAD_COLLAPSE:
        raise KernelError("quadrature interval collapsed")


def ibeta_xy(double a, double b, double x, double y, double log_beta):
    """I_x(a, b) given x, y = 1 - x and log B(a, b) supplied by the caller."""
    cdef int status = OK
    cdef double r = _ibeta_xy(a, b, x, y, log_beta, &status)
    if status:
        raise KernelError(
            "incomplete beta continued fraction did not converge "
            "(a=%r, b=%r, x=%r)" % (a, b, x))
    return r


def ibeta(double a, double b, double x):
    cdef double log_beta = _ln_gamma(a) + _ln_gamma(b) - _ln_gamma(a + b)
    return ibeta_xy(a, b, x, 1.0 - x, log_beta)


def t_cdf(double v, double t):
    cdef int status = OK
    cdef double r = _t_cdf(v, t, _t_log_beta(v), &status)
    if status:
        _raise(status)
    return r


def t_pdf(double v, double t):
    return _c_v(v) * exp(-0.5 * (v + 1.0) * log1p(t * t / v))


def normal_pdf(double x):
    return exp(-0.5 * x * x - _LOG_SQRT_2PI)


def normal_cdf(double x):
    return 0.5 * erfc(-x / sqrt(2.0))


cdef struct SkewT:
    double v
    double beta
    double cv
    double lb1
    double slant
    double tail_const
    bint sub


cdef void _skewt_init(SkewT* st, double v, double beta) noexcept nogil:
    st.v = v
    st.beta = beta
    st.cv = _c_v(v)
    st.lb1 = _t_log_beta(v + 1.0)
    st.slant = beta * sqrt(v + 1.0)
    st.tail_const = 2.0 * st.cv * exp(0.5 * (v + 1.0) * log(v))
    st.sub = v < 2.0


# integrand selectors for the typed quadrature
cdef enum:
    F_PDF = 0
    F_TAIL = 1
    F_TAIL_S = 2


cdef double _skewt_eval(SkewT* st, int kind, double x, int* status) noexcept nogil:
    cdef double v = st.v
    cdef double dens, arg, u, w, body
    if kind == F_PDF:
        dens = st.cv * exp(-0.5 * (v + 1.0) * log1p(x * x / v))
        arg = st.beta * x * sqrt((v + 1.0) / (x * x + v))
        return 2.0 * dens * _t_cdf(v + 1.0, arg, st.lb1, status)
    if kind == F_TAIL:
        u = x
        w = 1.0 + v * u * u
        if u > 0.0:
            body = exp((v - 1.0) * log(u) - 0.5 * (v + 1.0) * log(w))
        else:
            body = 0.0
        return st.tail_const * body * _t_cdf(v + 1.0, st.slant / sqrt(w), st.lb1, status)
    u = pow(x, 1.0 / v)
    w = 1.0 + v * u * u
    body = exp(-0.5 * (v + 1.0) * log(w))
    return st.tail_const / v * body * _t_cdf(v + 1.0, st.slant / sqrt(w), st.lb1, status)


cdef void _qk21(SkewT* st, int kind, double a, double b, double* result,
                double* abserr, int* status) noexcept nogil:
    cdef double centr = 0.5 * (a + b)
    cdef double hlgth = 0.5 * (b - a)
    cdef double fc = _skewt_eval(st, kind, centr, status)
    cdef double resg = 0.0
    cdef double resk = _WGK[10] * fc
    cdef double resabs = fabs(resk)
    cdef double[10] fv1
    cdef double[10] fv2
    cdef double absc, f1, f2, reskh, resasc, err
    cdef int j
    for j in range(10):
        absc = hlgth * _XGK[j]
        f1 = _skewt_eval(st, kind, centr - absc, status)
        f2 = _skewt_eval(st, kind, centr + absc, status)
        fv1[j] = f1
        fv2[j] = f2
        resk += _WGK[j] * (f1 + f2)
        resabs += _WGK[j] * (fabs(f1) + fabs(f2))
        if j % 2 == 1:
            resg += _WG[j // 2] * (f1 + f2)
    reskh = 0.5 * resk
    resasc = _WGK[10] * fabs(fc - reskh)
    for j in range(10):
        resasc += _WGK[j] * (fabs(fv1[j] - reskh) + fabs(fv2[j] - reskh))
    result[0] = resk * hlgth
    resabs *= fabs(hlgth)
    resasc *= fabs(hlgth)
    err = fabs((resk - resg) * hlgth)
    if resasc != 0.0 and err != 0.0:
        err = resasc * fmin(1.0, pow(200.0 * err / resasc, 1.5))
    if resabs > _UFLOW / (50.0 * _EPMACH):
        err = fmax(_EPMACH * 50.0 * resabs, err)
    abserr[0] = err


cdef double _integrate_st(SkewT* st, int kind, double a, double b, double epsrel,
                          int* status) noexcept nogil:
    # interval store with linear arg-max; the list never exceeds _QUAD_LIMIT
    cdef double* lo
    cdef double* hi
    cdef double* res
    cdef double* err
    cdef int n = 1
    cdef int i, worst
    cdef double total, total_err, mid, r1, e1, r2, e2
    if a == b:
        return 0.0
    lo = <double*> malloc(_QUAD_LIMIT * sizeof(double))
    hi = <double*> malloc(_QUAD_LIMIT * sizeof(double))
    res = <double*> malloc(_QUAD_LIMIT * sizeof(double))
    err = <double*> malloc(_QUAD_LIMIT * sizeof(double))
    lo[0] = a
    hi[0] = b
    _qk21(st, kind, a, b, &res[0], &err[0], status)
    total = res[0]
    total_err = err[0]
    while total_err > epsrel * fabs(total):
        if n >= _QUAD_LIMIT:
            status[0] = QUAD_LIMIT_HIT
            break
        worst = 0
        for i in range(1, n):
            if err[i] > err[worst]:
                worst = i
        mid = 0.5 * (lo[worst] + hi[worst])
        if not (lo[worst] < mid < hi[worst]):
            status[0] = QUAD_COLLAPSE
            break
        _qk21(st, kind, lo[worst], mid, &r1, &e1, status)
        _qk21(st, kind, mid, hi[worst], &r2, &e2, status)
        total += r1 + r2 - res[worst]
        total_err += e1 + e2 - err[worst]
        lo[n] = mid
        hi[n] = hi[worst]
        res[n] = r2
        err[n] = e2
        hi[worst] = mid
        res[worst] = r1
        err[worst] = e1
        n += 1
    total = 0.0
    for i in range(n):
        total += res[i]
    free(lo)
    free(hi)
    free(res)
    free(err)
    return total


cdef double _upper_tail(SkewT* st, double x, double tol, int* status) noexcept nogil:
    cdef double body = 0.0
    if x < 1.0:
        body = _integrate_st(st, F_PDF, x, 1.0, tol, status)
        x = 1.0
    if st.sub:
        return body + _integrate_st(st, F_TAIL_S, 0.0, pow(x, -st.v), tol, status)
    return body + _integrate_st(st, F_TAIL, 0.0, 1.0 / x, tol, status)


def integrate(f, double a, double b, double epsabs, double epsrel, int limit=2000):
    """Adaptive Gauss-Kronrod (10/21) quadrature of a Python callable.

    Untyped path kept for parity with the pure-Python backend.
    """
    from mst_extremes import _kernels_py
    return _kernels_py.integrate(f, a, b, epsabs, epsrel, limit)


def skew_t_pdf(double v, double beta, double x):
    cdef SkewT st
    cdef int status = OK
    _skewt_init(&st, v, beta)
    cdef double r = _skewt_eval(&st, F_PDF, x, &status)
    if status:
        _raise(status)
    return r


def skew_t_sf(double v, double beta, double x, double tol):
    """P(X > x) for X ~ ST_v(beta), accurate to ``tol`` relative."""
    cdef SkewT st
    cdef int status = OK
    cdef double r
    if x >= 0.0:
        _skewt_init(&st, v, beta)
        r = _upper_tail(&st, x, tol, &status)
    else:
        _skewt_init(&st, v, -beta)
        r = 1.0 - _upper_tail(&st, -x, tol, &status)
    if status:
        _raise(status)
    return r


def skew_t_cdf(double v, double beta, double x, double tol):
    cdef SkewT st
    cdef int status = OK
    cdef double r
    if x >= 0.0:
        _skewt_init(&st, v, beta)
        r = 1.0 - _upper_tail(&st, x, tol, &status)
    else:
        _skewt_init(&st, v, -beta)
        r = _upper_tail(&st, -x, tol, &status)
    if status:
        _raise(status)
    return r


def mixture_sf_many(vs, betas, weights, xs, double tol):
    cdef int r = len(vs)
    cdef int m = len(xs)
    cdef SkewT* up = <SkewT*> malloc(r * sizeof(SkewT))
    cdef SkewT* mirrored = <SkewT*> malloc(r * sizeof(SkewT))
    cdef double* p = <double*> malloc(r * sizeof(double))
    cdef int i, j
    cdef int status = OK
    cdef double s, x
    out = [0.0] * m
    try:
        for i in range(r):
            _skewt_init(&up[i], vs[i], betas[i])
            _skewt_init(&mirrored[i], vs[i], -betas[i])
            p[i] = weights[i]
        for j in range(m):
            x = xs[j]
            s = 0.0
            with nogil:
                for i in range(r):
                    if x >= 0.0:
                        s += p[i] * _upper_tail(&up[i], x, tol, &status)
                    else:
                        s += p[i] * (1.0 - _upper_tail(&mirrored[i], -x, tol, &status))
            if status:
                _raise(status)
            out[j] = s
    finally:
        free(up)
        free(mirrored)
        free(p)
    return out


def mixture_pdf_many(vs, betas, weights, xs):
    cdef int r = len(vs)
    cdef int m = len(xs)
    cdef SkewT* laws = <SkewT*> malloc(r * sizeof(SkewT))
    cdef double* p = <double*> malloc(r * sizeof(double))
    cdef int i, j
    cdef int status = OK
    cdef double s, x
    out = [0.0] * m
    try:
        for i in range(r):
            _skewt_init(&laws[i], vs[i], betas[i])
            p[i] = weights[i]
        for j in range(m):
            x = xs[j]
            s = 0.0
            for i in range(r):
                s += p[i] * _skewt_eval(&laws[i], F_PDF, x, &status)
            if status:
                _raise(status)
            out[j] = s
    finally:
        free(laws)
        free(p)
    return out
