"""Pure-Python scalar kernels.

This module mirrors ``_kernels.pyx`` routine for routine and is used when
the compiled extension is unavailable (or when ``MST_EXTREMES_PURE_PYTHON``
is set). Both must produce the same numbers to within a few ulps; the test
suite checks that.

No argument validation happens here. Callers in ``special_functions`` and
``distributions`` own the domain checks.
"""
import heapq
import math

from mst_extremes.exceptions import NumericalFault as KernelError

BACKEND = "python"

_LOG_SQRT_2PI = 0.91893853320467274178
_LOG_SQRT_PI = 0.57236494292470008707
_EULER = 0.5772156649015329

# Lanczos approximation, g = 671/128 - 1/2, 14 terms (rel. error < 1e-15)
_LANCZOS_SHIFT = 5.2421875
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS = (
    57.1562356658629235, -59.5979603554754912, 14.1360979747417471,
    -0.491913816097620199, 0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5,
)

# zeta(k) - 1 for k = 2..41, used by the series for lgamma(1 + z), |z| <= 1/2
_ZETA_M1 = (
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
)

CF_MAX_ITER = 300
CF_TINY = 1e-300
CF_EPS = 4e-16

# Gauss-Kronrod 10/21 abscissae and weights on [-1, 1] (positive half)
_XGK = (
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0,
)
_WGK = (
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478116, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
)
_WG = (
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
)
QUAD_LIMIT = 2000
_EPMACH = 2.220446049250313e-16
_UFLOW = 2.2250738585072014e-308


def _lanczos_series(x):
    ser = _LANCZOS_C0
    y = x
    for c in _LANCZOS:
        y += 1.0
        ser += c / y
    return ser


def _lgamma1p_series(z):
    # lgamma(1 + z) for |z| <= 1/2
    s = 0.0
    zk = -z
    for k, zm1 in enumerate(_ZETA_M1, start=2):
        zk *= -z
        term = zm1 * zk / k
        s += term
        if abs(term) <= 1e-17 * abs(s):
            break
    return (1.0 - _EULER) * z - math.log1p(z) + s


def ln_gamma(x):
    if 0.5 <= x <= 1.5:
        return _lgamma1p_series(x - 1.0)
    if 1.5 < x <= 2.5:
        z = x - 2.0
        return math.log1p(z) + _lgamma1p_series(z)
    tmp = x + _LANCZOS_SHIFT
    return (x + 0.5) * math.log(tmp) - tmp + math.log(2.5066282746310005 * _lanczos_series(x) / x)


def gamma_half_ratio(a):
    """Gamma(a + 1/2) / Gamma(a) without forming either gamma value."""
    b = a + 0.5
    ratio = _lanczos_series(b) / _lanczos_series(a) * (a / b)
    return (math.exp(-0.5 + b * math.log1p(0.5 / (a + _LANCZOS_SHIFT)))
            * math.sqrt(b + _LANCZOS_SHIFT) * ratio)


def c_v(v):
    return gamma_half_ratio(0.5 * v) / math.sqrt(v * math.pi)


def _betacf(a, b, x):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < CF_TINY:
        d = CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < CF_TINY:
            d = CF_TINY
        c = 1.0 + aa / c
        if abs(c) < CF_TINY:
            c = CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < CF_TINY:
            d = CF_TINY
        c = 1.0 + aa / c
        if abs(c) < CF_TINY:
            c = CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < CF_EPS:
            return h
    raise KernelError(
        "incomplete beta continued fraction did not converge "
        "(a=%r, b=%r, x=%r)" % (a, b, x))


def ibeta_xy(a, b, x, y, log_beta):
    """I_x(a, b) given x, y = 1 - x and log B(a, b) supplied by the caller."""
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    # take each log from whichever of x, y is the smaller, accurate one
    lx = math.log(x) if x < 0.5 else math.log1p(-y)
    ly = math.log(y) if y < 0.5 else math.log1p(-x)
    front = math.exp(a * lx + b * ly - log_beta)
    if x * (a + b) < a:
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, y) / b


def ibeta(a, b, x):
    log_beta = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
    return ibeta_xy(a, b, x, 1.0 - x, log_beta)


def _t_log_beta(v):
    # log B(v/2, 1/2) = log(sqrt(pi)) - log(Gamma(v/2 + 1/2) / Gamma(v/2))
    return _LOG_SQRT_PI - math.log(gamma_half_ratio(0.5 * v))


def _t_cdf(v, t, log_beta):
    tt = t * t
    denom = v + tt
    half = 0.5 * ibeta_xy(0.5 * v, 0.5, v / denom, tt / denom, log_beta)
    return 1.0 - half if t > 0.0 else half


def t_cdf(v, t):
    return _t_cdf(v, t, _t_log_beta(v))


def t_pdf(v, t):
    return c_v(v) * math.exp(-0.5 * (v + 1.0) * math.log1p(t * t / v))


def normal_pdf(x):
    return math.exp(-0.5 * x * x - _LOG_SQRT_2PI)


def normal_cdf(x):
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


class _SkewT:
    """Constants shared by every density evaluation of one ST_v(beta) law."""

    __slots__ = ("v", "beta", "cv", "lb1", "slant", "tail_const", "sub")

    def __init__(self, v, beta):
        self.v = v
        self.beta = beta
        self.cv = c_v(v)
        self.lb1 = _t_log_beta(v + 1.0)
        self.slant = beta * math.sqrt(v + 1.0)
        self.tail_const = 2.0 * self.cv * math.exp(0.5 * (v + 1.0) * math.log(v))
        # substitution s = u**v flattens the u**(v-1) endpoint singularity
        self.sub = v < 2.0

    def pdf(self, x):
        v = self.v
        dens = self.cv * math.exp(-0.5 * (v + 1.0) * math.log1p(x * x / v))
        arg = self.beta * x * math.sqrt((v + 1.0) / (x * x + v))
        return 2.0 * dens * _t_cdf(v + 1.0, arg, self.lb1)

    def tail(self, u):
        # f(1/u) / u**2 rewritten so that nothing overflows as u -> 0
        v = self.v
        w = 1.0 + v * u * u
        body = math.exp((v - 1.0) * math.log(u) - 0.5 * (v + 1.0) * math.log(w)) if u > 0.0 else 0.0
        return self.tail_const * body * _t_cdf(v + 1.0, self.slant / math.sqrt(w), self.lb1)

    def tail_s(self, s):
        v = self.v
        u = s ** (1.0 / v)
        w = 1.0 + v * u * u
        body = math.exp(-0.5 * (v + 1.0) * math.log(w))
        return self.tail_const / v * body * _t_cdf(v + 1.0, self.slant / math.sqrt(w), self.lb1)


def _qk21(f, a, b):
    centr = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)
    fc = f(centr)
    resg = 0.0
    resk = _WGK[10] * fc
    resabs = abs(resk)
    fv1 = [0.0] * 10
    fv2 = [0.0] * 10
    for j in range(10):
        absc = hlgth * _XGK[j]
        f1 = f(centr - absc)
        f2 = f(centr + absc)
        fv1[j] = f1
        fv2[j] = f2
        resk += _WGK[j] * (f1 + f2)
        resabs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            resg += _WG[j // 2] * (f1 + f2)
    reskh = 0.5 * resk
    resasc = _WGK[10] * abs(fc - reskh)
    for j in range(10):
        resasc += _WGK[j] * (abs(fv1[j] - reskh) + abs(fv2[j] - reskh))
    result = resk * hlgth
    resabs *= abs(hlgth)
    resasc *= abs(hlgth)
    err = abs((resk - resg) * hlgth)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _UFLOW / (50.0 * _EPMACH):
        err = max(_EPMACH * 50.0 * resabs, err)
    return result, err


def integrate(f, a, b, epsabs, epsrel, limit=QUAD_LIMIT):
    """Adaptive Gauss-Kronrod (10/21) quadrature of ``f`` over finite ``[a, b]``.

    Bisects the interval with the largest error estimate until the summed
    estimate drops below ``max(epsabs, epsrel * |I|)``. Returns ``(I, err)``.
    """
    if a == b:
        return 0.0, 0.0
    res, err = _qk21(f, a, b)
    heap = [(-err, a, b, res)]
    total = res
    total_err = err
    while total_err > max(epsabs, epsrel * abs(total)):
        if len(heap) >= limit:
            raise KernelError(
                "adaptive quadrature hit %d subintervals (estimate %.3g)"
                % (limit, total_err))
        neg_err, lo, hi, r = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise KernelError("quadrature interval collapsed at %r" % mid)
        r1, e1 = _qk21(f, lo, mid)
        r2, e2 = _qk21(f, mid, hi)
        heapq.heappush(heap, (-e1, lo, mid, r1))
        heapq.heappush(heap, (-e2, mid, hi, r2))
        total += r1 + r2 - r
        total_err += e1 + e2 + neg_err
    # re-sum to shed the drift of the running updates
    total = math.fsum(item[3] for item in heap)
    return total, total_err


def _upper_tail(st, x, tol):
    """Integral of the skew-t density over [x, inf) for x >= 0."""
    body = 0.0
    if x < 1.0:
        body = integrate(st.pdf, x, 1.0, 0.0, tol)[0]
        x = 1.0
    if st.sub:
        tail = integrate(st.tail_s, 0.0, x ** (-st.v), 0.0, tol)[0]
    else:
        tail = integrate(st.tail, 0.0, 1.0 / x, 0.0, tol)[0]
    return body + tail


def skew_t_pdf(v, beta, x):
    return _SkewT(v, beta).pdf(x)


def skew_t_sf(v, beta, x, tol):
    """P(X > x) for X ~ ST_v(beta), accurate to ``tol`` relative (so also absolute)."""
    if x >= 0.0:
        return _upper_tail(_SkewT(v, beta), x, tol)
    # P(X > x) = 1 - P(-X >= -x) with -X ~ ST_v(-beta)
    return 1.0 - _upper_tail(_SkewT(v, -beta), -x, tol)


def skew_t_cdf(v, beta, x, tol):
    if x >= 0.0:
        return 1.0 - _upper_tail(_SkewT(v, beta), x, tol)
    return _upper_tail(_SkewT(v, -beta), -x, tol)


def mixture_sf_many(vs, betas, weights, xs, tol):
    laws = [(_SkewT(v, b), _SkewT(v, -b), p) for v, b, p in zip(vs, betas, weights)]
    out = []
    for x in xs:
        s = 0.0
        for st, mirrored, p in laws:
            if x >= 0.0:
                s += p * _upper_tail(st, x, tol)
            else:
                s += p * (1.0 - _upper_tail(mirrored, -x, tol))
        out.append(s)
    return out


def mixture_pdf_many(vs, betas, weights, xs):
    laws = [(_SkewT(v, b), p) for v, b, p in zip(vs, betas, weights)]
    return [sum(p * st.pdf(x) for st, p in laws) for x in xs]
