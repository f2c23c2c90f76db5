#include "crl/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <ostream>

// Outward rounding scheme: IEEE-754 binary ops in round-to-nearest differ
// from the exact result by at most half an ulp, so stepping one float
// outward gives a rigorous directed bound.  For + - * we additionally
// detect exact results (error-free transformations) to avoid widening
// identities like x+0, x*1 and x*0; division and sqrt always widen.
// Requires compilation with fp-contract off (see CMakeLists).

namespace crl {

namespace {

const double INF = std::numeric_limits<double>::infinity();

inline double step_down(double x) {
    if (x == -INF) return x;
    return std::nextafter(x, -INF);
}
inline double step_up(double x) {
    if (x == INF) return x;
    return std::nextafter(x, INF);
}

// error of s = fl(x+y) via 2Sum; exact, no branches on magnitudes
inline double two_sum_err(double x, double y, double s) {
    double bp = s - x;
    return (x - (s - bp)) + (y - bp);
}

inline double add_down(double x, double y) {
    double s = x + y;
    if (!std::isfinite(s)) return s == INF ? std::numeric_limits<double>::max() : s;
    double e = two_sum_err(x, y, s);
    return e < 0 ? step_down(s) : s;
}
inline double add_up(double x, double y) {
    double s = x + y;
    if (!std::isfinite(s)) return s == -INF ? -std::numeric_limits<double>::max() : s;
    double e = two_sum_err(x, y, s);
    return e > 0 ? step_up(s) : s;
}
inline double sub_down(double x, double y) { return add_down(x, -y); }
inline double sub_up(double x, double y) { return add_up(x, -y); }

// |p| below this may have a non-representable product error; widen blindly
const double UNDERFLOW_GUARD = 0x1p-969;

inline double mul_down(double x, double y) {
    if (x == 0.0 || y == 0.0) return 0.0;
    double p = x * y;
    if (!std::isfinite(p)) return p == INF ? std::numeric_limits<double>::max() : p;
    if (std::fabs(p) < UNDERFLOW_GUARD) return step_down(p);
    double e = std::fma(x, y, -p);
    return e < 0 ? step_down(p) : p;
}
inline double mul_up(double x, double y) {
    if (x == 0.0 || y == 0.0) return 0.0;
    double p = x * y;
    if (!std::isfinite(p)) return p == -INF ? -std::numeric_limits<double>::max() : p;
    if (std::fabs(p) < UNDERFLOW_GUARD) return step_up(p);
    double e = std::fma(x, y, -p);
    return e > 0 ? step_up(p) : p;
}

inline double div_down(double x, double y) {
    if (x == 0.0) return 0.0;
    double q = x / y;
    if (!std::isfinite(q)) return q == INF ? std::numeric_limits<double>::max() : q;
    return step_down(q);
}
inline double div_up(double x, double y) {
    if (x == 0.0) return 0.0;
    double q = x / y;
    if (!std::isfinite(q)) return q == -INF ? -std::numeric_limits<double>::max() : q;
    return step_up(q);
}

inline void check_nonempty(const Interval& a, const Interval& b, const char* op) {
    if (a.isEmpty() || b.isEmpty())
        throw interval_error(std::string("Interval: empty operand of ") + op);
}

}  // namespace

double Interval::mid() const {
    if (empty_) throw interval_error("mid of empty interval");
    double m = 0.5 * (lo_ + hi_);
    if (!std::isfinite(m)) m = 0.5 * lo_ + 0.5 * hi_;
    if (m < lo_) m = lo_;
    if (m > hi_) m = hi_;
    return m;
}

double Interval::diam() const {
    if (empty_) return 0.0;
    return sub_up(hi_, lo_);
}

double Interval::mag() const {
    if (empty_) throw interval_error("mag of empty interval");
    return std::max(std::fabs(lo_), std::fabs(hi_));
}

double Interval::mig() const {
    if (empty_) throw interval_error("mig of empty interval");
    if (lo_ <= 0.0 && 0.0 <= hi_) return 0.0;
    return std::min(std::fabs(lo_), std::fabs(hi_));
}

Interval operator+(const Interval& a, const Interval& b) {
    check_nonempty(a, b, "+");
    return Interval(add_down(a.lo_, b.lo_), add_up(a.hi_, b.hi_));
}

Interval operator-(const Interval& a, const Interval& b) {
    check_nonempty(a, b, "-");
    return Interval(sub_down(a.lo_, b.hi_), sub_up(a.hi_, b.lo_));
}

Interval operator*(const Interval& a, const Interval& b) {
    check_nonempty(a, b, "*");
    double lo = std::min(std::min(mul_down(a.lo_, b.lo_), mul_down(a.lo_, b.hi_)),
                         std::min(mul_down(a.hi_, b.lo_), mul_down(a.hi_, b.hi_)));
    double hi = std::max(std::max(mul_up(a.lo_, b.lo_), mul_up(a.lo_, b.hi_)),
                         std::max(mul_up(a.hi_, b.lo_), mul_up(a.hi_, b.hi_)));
    return Interval(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
    check_nonempty(a, b, "/");
    if (b.lo_ <= 0.0 && 0.0 <= b.hi_)
        throw interval_error("Interval: division by interval containing zero");
    double lo = std::min(std::min(div_down(a.lo_, b.lo_), div_down(a.lo_, b.hi_)),
                         std::min(div_down(a.hi_, b.lo_), div_down(a.hi_, b.hi_)));
    double hi = std::max(std::max(div_up(a.lo_, b.lo_), div_up(a.lo_, b.hi_)),
                         std::max(div_up(a.hi_, b.lo_), div_up(a.hi_, b.hi_)));
    return Interval(lo, hi);
}

Interval intersection(const Interval& a, const Interval& b) {
    if (a.isEmpty() || b.isEmpty()) return Interval::empty();
    double lo = std::max(a.lo(), b.lo());
    double hi = std::min(a.hi(), b.hi());
    if (lo > hi) return Interval::empty();
    return Interval(lo, hi);
}

Interval hull(const Interval& a, const Interval& b) {
    if (a.isEmpty()) return b;
    if (b.isEmpty()) return a;
    return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval sqr(const Interval& a) {
    if (a.isEmpty()) throw interval_error("sqr of empty interval");
    double l = a.mig(), h = a.mag();
    return Interval(mul_down(l, l), mul_up(h, h));
}

Interval sqrt(const Interval& a) {
    if (a.isEmpty()) throw interval_error("sqrt of empty interval");
    if (a.lo() < 0.0) throw interval_error("sqrt of interval with negative part");
    // std::sqrt is correctly rounded, one step outward is rigorous
    double lo = a.lo() == 0.0 ? 0.0 : step_down(std::sqrt(a.lo()));
    double hi = step_up(std::sqrt(a.hi()));
    if (lo < 0.0) lo = 0.0;
    return Interval(lo, hi);
}

Interval abs(const Interval& a) {
    if (a.isEmpty()) throw interval_error("abs of empty interval");
    return Interval(a.mig(), a.mag());
}

Interval intpow(const Interval& a, int n) {
    if (n < 0) throw interval_error("intpow: negative exponent");
    if (n == 0) return Interval(1.0);
    if (n % 2 == 0) {
        Interval h = intpow(a, n / 2);
        return sqr(h);
    }
    return a * intpow(a, n - 1);
}

// ---- rigorous constants -------------------------------------------------

const Interval& pi() {
    // nearest double below/above pi
    static const Interval v(0x1.921fb54442d18p+1, 0x1.921fb54442d19p+1);
    return v;
}
const Interval& two_pi() {
    static const Interval v(0x1.921fb54442d18p+2, 0x1.921fb54442d19p+2);
    return v;
}
const Interval& half_pi() {
    static const Interval v(0x1.921fb54442d18p+0, 0x1.921fb54442d19p+0);
    return v;
}
const Interval& ln2() {
    static const Interval v(0x1.62e42fefa39efp-1, 0x1.62e42fefa39f0p-1);
    return v;
}

// ---- elementary functions ------------------------------------------------
//
// All transcendental point evaluations are done with certified Taylor
// series over interval arithmetic (argument reduction + truncated series
// + remainder interval), so they do not rely on libm accuracy claims.

namespace {

// factorials up to 25 are exact in double
double factorial(int k) {
    static double table[26];
    static bool init = false;
    if (!init) {
        table[0] = 1.0;
        for (int i = 1; i <= 25; ++i) table[i] = table[i - 1] * i;
        init = true;
    }
    return table[k];
}

// enclosure of e^x for a point x with |x| <= 710
Interval exp_point(double x) {
    if (x > 710.0) throw interval_error("exp: overflow");
    if (x < -746.0) return Interval(0.0, std::numeric_limits<double>::denorm_min());
    int m = (int)std::lround(x / 0.6931471805599453);
    Interval y = Interval(x) - Interval((double)m) * ln2();  // |y| <= 0.347 + slop
    Interval s(1.0);
    Interval t(1.0);
    const int N = 13;
    for (int i = 1; i <= N; ++i) {
        t = t * y / (double)i;
        s = s + t;
    }
    // |R| <= |y|^{N+1}/(N+1)! * e^{0.4}
    double ymag = abs(y).hi();
    double rb = std::pow(ymag, N + 1) / factorial(N + 1) * 1.5;
    s = s + Interval(-rb, rb);
    // scale by 2^m exactly
    double slo = std::ldexp(s.lo(), m), shi = std::ldexp(s.hi(), m);
    if (slo < 0.0) slo = 0.0;
    return Interval(slo, shi);
}

// series for sin/cos on |y| <= 0.9 (y given as a small interval)
Interval sin_small(const Interval& y) {
    Interval s = y;
    Interval t = y;
    const int K = 8;
    Interval y2 = sqr(y);
    for (int k = 1; k <= K; ++k) {
        t = t * y2 / (double)((2 * k) * (2 * k + 1));
        s = (k % 2 == 1) ? s - t : s + t;
    }
    double ymag = abs(y).hi();
    double rb = std::pow(ymag, 2 * K + 3) / factorial(2 * K + 3);
    return s + Interval(-rb, rb);
}

Interval cos_small(const Interval& y) {
    Interval s(1.0);
    Interval t(1.0);
    const int K = 9;
    Interval y2 = sqr(y);
    for (int k = 1; k <= K; ++k) {
        t = t * y2 / (double)((2 * k - 1) * (2 * k));
        s = (k % 2 == 1) ? s - t : s + t;
    }
    double ymag = abs(y).hi();
    double rb = std::pow(ymag, 2 * K + 2) / factorial(2 * K + 2);
    return s + Interval(-rb, rb);
}

// enclosure of sin at a point via reduction mod pi/2
Interval sin_point(double x) {
    if (std::fabs(x) > 1e15) return Interval(-1.0, 1.0);
    long long n = (long long)std::llround(x / 1.5707963267948966);
    Interval y = Interval(x) - Interval((double)n) * half_pi();
    Interval r;
    switch (((n % 4) + 4) % 4) {
        case 0: r = sin_small(y); break;
        case 1: r = cos_small(y); break;
        case 2: r = -sin_small(y); break;
        default: r = -cos_small(y); break;
    }
    return intersection(r, Interval(-1.0, 1.0));
}

Interval cos_point(double x) {
    if (std::fabs(x) > 1e15) return Interval(-1.0, 1.0);
    long long n = (long long)std::llround(x / 1.5707963267948966);
    Interval y = Interval(x) - Interval((double)n) * half_pi();
    Interval r;
    switch (((n % 4) + 4) % 4) {
        case 0: r = cos_small(y); break;
        case 1: r = -sin_small(y); break;
        case 2: r = -cos_small(y); break;
        default: r = sin_small(y); break;
    }
    return intersection(r, Interval(-1.0, 1.0));
}

// does [a,b] possibly contain a point c + 2*pi*k for some integer k?
bool may_contain_mod_2pi(const Interval& x, const Interval& c) {
    double kc = std::floor(x.lo() / 6.283185307179586);
    for (long long k = (long long)kc - 2; k <= (long long)kc + 3 + (long long)(x.diam() / 6.283) + 1;
         ++k) {
        Interval cand = c + Interval((double)k) * two_pi();
        if (!intersection(cand, x).isEmpty()) return true;
    }
    return false;
}

}  // namespace

Interval exp(const Interval& a) {
    if (a.isEmpty()) throw interval_error("exp of empty interval");
    Interval lo = exp_point(a.lo());
    Interval hi = exp_point(a.hi());
    return Interval(lo.lo(), hi.hi());
}

Interval sin(const Interval& a) {
    if (a.isEmpty()) throw interval_error("sin of empty interval");
    if (a.diam() >= two_pi().hi()) return Interval(-1.0, 1.0);
    Interval r = hull(sin_point(a.lo()), sin_point(a.hi()));
    double lo = r.lo(), hi = r.hi();
    if (may_contain_mod_2pi(a, half_pi())) hi = 1.0;
    if (may_contain_mod_2pi(a, -half_pi())) lo = -1.0;
    return Interval(lo, hi);
}

Interval cos(const Interval& a) {
    if (a.isEmpty()) throw interval_error("cos of empty interval");
    if (a.diam() >= two_pi().hi()) return Interval(-1.0, 1.0);
    Interval r = hull(cos_point(a.lo()), cos_point(a.hi()));
    double lo = r.lo(), hi = r.hi();
    if (may_contain_mod_2pi(a, Interval(0.0))) hi = 1.0;
    if (may_contain_mod_2pi(a, pi())) lo = -1.0;
    return Interval(lo, hi);
}

namespace {

// atan on [0,1] via two half-angle reductions then an alternating series
Interval atan_01(const Interval& x) {
    Interval t = x;
    for (int i = 0; i < 2; ++i) t = t / (Interval(1.0) + sqrt(Interval(1.0) + sqr(t)));
    // |t| <= tan(pi/16) < 0.199
    Interval s = t;
    Interval p = t;
    Interval t2 = sqr(t);
    const int K = 12;
    for (int k = 1; k <= K; ++k) {
        p = p * t2;
        Interval term = p / (double)(2 * k + 1);
        s = (k % 2 == 1) ? s - term : s + term;
    }
    double tm = abs(t).hi();
    double rb = std::pow(tm, 2 * K + 3) / (2 * K + 3);
    return (s + Interval(-rb, rb)) * 4.0;
}

Interval atan_point(double x) {
    if (x < 0.0) return -atan_point(-x);
    if (x > 1.0) return half_pi() - atan_01(Interval(1.0) / Interval(x));
    return atan_01(Interval(x));
}

}  // namespace

Interval atan(const Interval& a) {
    if (a.isEmpty()) throw interval_error("atan of empty interval");
    return Interval(atan_point(a.lo()).lo(), atan_point(a.hi()).hi());
}

Interval arg_upper_half(const Interval& x, const Interval& y) {
    if (y.lo() <= 0.0) throw interval_error("arg_upper_half requires y > 0");
    return half_pi() - atan(x / y);
}

// ---- printing -------------------------------------------------------------

namespace {

// decrement/increment the decimal literal in s by one unit in the last place
// of the mantissa (format produced by %.*e)
std::string bump_decimal(const std::string& s, bool up) {
    std::string r = s;
    bool negative = r[0] == '-';
    // direction in mantissa magnitude space
    bool inc = (up && !negative) || (!up && negative);
    size_t epos = r.find('e');
    if (epos == std::string::npos) epos = r.size();
    if (inc) {
        int i = (int)epos - 1;
        for (; i >= 0; --i) {
            char& c = r[(size_t)i];
            if (c == '.' || c == '-') continue;
            if (c < '9') {
                ++c;
                return r;
            }
            c = '0';
        }
        // overflowed: 9.99e5 -> 1.00e6 style; simplest safe fallback
        double v = std::strtod(s.c_str(), nullptr);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17e", negative ? step_down(v) : step_up(v));
        return buf;
    } else {
        int i = (int)epos - 1;
        for (; i >= 0; --i) {
            char& c = r[(size_t)i];
            if (c == '.' || c == '-') continue;
            if (c > '0') {
                --c;
                return r;
            }
            c = '9';
        }
        double v = std::strtod(s.c_str(), nullptr);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17e", negative ? step_up(v) : step_down(v));
        return buf;
    }
}

std::string format_outward(double x, int digits, bool up) {
    if (!std::isfinite(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    std::string s = buf;
    double parsed = std::strtod(s.c_str(), nullptr);
    if (up && parsed < x) s = bump_decimal(s, true);
    if (!up && parsed > x) s = bump_decimal(s, false);
    return s;
}

}  // namespace

std::string to_string(const Interval& a, int digits) {
    if (a.isEmpty()) return "[empty]";
    return "[" + format_outward(a.lo(), digits, false) + ", " +
           format_outward(a.hi(), digits, true) + "]";
}

std::string to_hex_string(const Interval& a) {
    if (a.isEmpty()) return "[empty]";
    char buf[80];
    std::snprintf(buf, sizeof buf, "[%a, %a]", a.lo(), a.hi());
    return buf;
}

Interval from_hex_string(const std::string& s) {
    double lo, hi;
    if (std::sscanf(s.c_str(), " [ %la , %la ]", &lo, &hi) != 2)
        throw interval_error("from_hex_string: malformed literal: " + s);
    return Interval(lo, hi);
}

std::ostream& operator<<(std::ostream& os, const Interval& a) { return os << to_string(a); }

}  // namespace crl
