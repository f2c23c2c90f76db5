#ifndef CRL_INTERVAL_HPP
#define CRL_INTERVAL_HPP

#include <cmath>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace crl {

/// Thrown when an interval operation cannot produce a valid enclosure
/// (division by an interval containing zero, domain violations, empty
/// arguments where a nonempty result is required).
struct interval_error : std::runtime_error {
    explicit interval_error(const std::string& what) : std::runtime_error(what) {}
};

/// A closed interval [lo,hi] of doubles with outward-rounded arithmetic.
///
/// Every operation returns an interval containing the exact mathematical
/// image of its arguments.  Directed rounding is realized by stepping to
/// the next representable float after each native operation, so no global
/// rounding mode is touched and values are safe to share between threads.
/// The empty interval is an explicit state, never reversed endpoints.
class Interval {
public:
    Interval() : lo_(0.0), hi_(0.0), empty_(false) {}
    Interval(double x) : lo_(x), hi_(x), empty_(false) {
        if (std::isnan(x)) throw interval_error("Interval: NaN endpoint");
    }
    Interval(double lo, double hi) : lo_(lo), hi_(hi), empty_(false) {
        if (std::isnan(lo) || std::isnan(hi)) throw interval_error("Interval: NaN endpoint");
        if (lo > hi) throw interval_error("Interval: lo > hi");
    }

    static Interval empty() {
        Interval r;
        r.empty_ = true;
        return r;
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    bool isEmpty() const { return empty_; }
    bool isFinite() const { return !empty_ && std::isfinite(lo_) && std::isfinite(hi_); }
    bool isPoint() const { return !empty_ && lo_ == hi_; }

    double mid() const;
    double diam() const;      // upper bound of the true diameter
    double mag() const;       // max |x| over the interval
    double mig() const;       // min |x| over the interval

    bool contains(double x) const { return !empty_ && lo_ <= x && x <= hi_; }
    bool contains(const Interval& b) const {
        return b.empty_ || (!empty_ && lo_ <= b.lo_ && b.hi_ <= hi_);
    }
    bool containsInInterior(const Interval& b) const {
        return b.empty_ || (!empty_ && lo_ < b.lo_ && b.hi_ < hi_);
    }
    bool subsetOf(const Interval& b) const { return b.contains(*this); }
    bool interiorSubsetOf(const Interval& b) const { return b.containsInInterior(*this); }

    bool operator==(const Interval& b) const {
        if (empty_ || b.empty_) return empty_ == b.empty_;
        return lo_ == b.lo_ && hi_ == b.hi_;
    }
    bool operator!=(const Interval& b) const { return !(*this == b); }

    Interval operator-() const {
        if (empty_) return empty();
        return Interval(-hi_, -lo_);
    }

    Interval& operator+=(const Interval& b) { return *this = *this + b; }
    Interval& operator-=(const Interval& b) { return *this = *this - b; }
    Interval& operator*=(const Interval& b) { return *this = *this * b; }
    Interval& operator/=(const Interval& b) { return *this = *this / b; }

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);

private:
    double lo_, hi_;
    bool empty_;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }
inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }

// set operations
Interval intersection(const Interval& a, const Interval& b);  // empty sentinel on miss
Interval hull(const Interval& a, const Interval& b);

// elementary functions (each result contains the exact image)
Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval exp(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);
Interval atan(const Interval& a);
Interval intpow(const Interval& a, int n);  // n >= 0
Interval abs(const Interval& a);

/// Enclosure of atan2(y,x) for rectangles with y strictly positive
/// (the only case needed for eigenvalue arguments in the upper half plane).
Interval arg_upper_half(const Interval& x, const Interval& y);

// rigorous constants
const Interval& pi();
const Interval& two_pi();
const Interval& half_pi();
const Interval& ln2();

// printing: decimal endpoints rounded outward so the printed text is a
// valid enclosure of the interval it came from
std::string to_string(const Interval& a, int digits = 17);
std::string to_hex_string(const Interval& a);  // exact binary round-trip
Interval from_hex_string(const std::string& s);

std::ostream& operator<<(std::ostream& os, const Interval& a);

}  // namespace crl

#endif
