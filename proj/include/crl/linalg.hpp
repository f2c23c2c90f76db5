#ifndef CRL_LINALG_HPP
#define CRL_LINALG_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "crl/interval.hpp"

namespace crl {

class IVector {
public:
    IVector() = default;
    explicit IVector(std::size_t n) : v_(n) {}
    IVector(std::initializer_list<Interval> init) : v_(init) {}

    std::size_t size() const { return v_.size(); }
    Interval& operator[](std::size_t i) { return v_[i]; }
    const Interval& operator[](std::size_t i) const { return v_[i]; }

    auto begin() { return v_.begin(); }
    auto end() { return v_.end(); }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

    IVector& operator+=(const IVector& b);
    IVector& operator-=(const IVector& b);

    double maxDiam() const;
    bool contains(const IVector& b) const;
    bool containsInInterior(const IVector& b) const;

    static IVector zero(std::size_t n) { return IVector(n); }
    static IVector unit(std::size_t n, std::size_t i);

private:
    std::vector<Interval> v_;
};

IVector operator+(const IVector& a, const IVector& b);
IVector operator-(const IVector& a, const IVector& b);
IVector operator-(const IVector& a);
IVector operator*(const Interval& s, const IVector& a);
IVector midVector(const IVector& a);  // thin vector of midpoints
IVector intersection(const IVector& a, const IVector& b);
IVector hull(const IVector& a, const IVector& b);
Interval dot(const IVector& a, const IVector& b);
double maxNorm(const IVector& a);  // upper bound of sup-norm over the set

class IMatrix {
public:
    IMatrix() = default;
    IMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), m_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Interval& operator()(std::size_t i, std::size_t j) { return m_[i * cols_ + j]; }
    const Interval& operator()(std::size_t i, std::size_t j) const { return m_[i * cols_ + j]; }

    IMatrix& operator+=(const IMatrix& b);

    static IMatrix identity(std::size_t n);
    static IMatrix zero(std::size_t rows, std::size_t cols) { return IMatrix(rows, cols); }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Interval> m_;
};

IMatrix operator+(const IMatrix& a, const IMatrix& b);
IMatrix operator-(const IMatrix& a, const IMatrix& b);
IMatrix operator*(const IMatrix& a, const IMatrix& b);
IVector operator*(const IMatrix& a, const IVector& x);
IMatrix operator*(const Interval& s, const IMatrix& a);
IMatrix transpose(const IMatrix& a);
IMatrix midMatrix(const IMatrix& a);
Interval det2(const IMatrix& a);                       // 2x2 determinant
Interval det(const IMatrix& a);                        // n<=3 by cofactors
IVector solve2(const IMatrix& a, const IVector& rhs);  // 2x2 interval linear solve

/// Interval enclosure [Q] of an orthogonal matrix close to the point
/// matrix m; returns false when the orthogonality defect cannot be
/// certified small (caller falls back to identity).
bool orthogonal_enclosure(const IMatrix& m, IMatrix& q);

/// Upper bound of the logarithmic norm mu(M) valid for every point
/// matrix M in a, in the chosen vector norm (1, 2 or infinity).
enum class LogNorm { L1, L2, LInf };
double log_norm(const IMatrix& a, LogNorm which);

/// Axis-aligned rectangle in the complex plane.
class CInterval {
public:
    CInterval() = default;
    CInterval(const Interval& re, const Interval& im) : re_(re), im_(im) {}
    CInterval(double re, double im) : re_(re), im_(im) {}

    const Interval& re() const { return re_; }
    const Interval& im() const { return im_; }

    CInterval conj() const { return CInterval(re_, -im_); }

    bool contains(const CInterval& b) const {
        return re_.contains(b.re()) && im_.contains(b.im());
    }

private:
    Interval re_, im_;
};

CInterval operator+(const CInterval& a, const CInterval& b);
CInterval operator-(const CInterval& a, const CInterval& b);
CInterval operator-(const CInterval& a);
CInterval operator*(const CInterval& a, const CInterval& b);
CInterval operator/(const CInterval& a, const CInterval& b);
CInterval operator*(const Interval& s, const CInterval& a);
CInterval cpow(const CInterval& a, int n);
Interval abs2(const CInterval& a);  // |z|^2 enclosure
CInterval cintersection(const CInterval& a, const CInterval& b);

std::ostream& operator<<(std::ostream& os, const IVector& v);
std::ostream& operator<<(std::ostream& os, const IMatrix& m);
std::ostream& operator<<(std::ostream& os, const CInterval& z);

}  // namespace crl

#endif
