#include "crl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace crl {

namespace {
void check_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw interval_error(std::string("dimension mismatch in ") + what);
}
}  // namespace

IVector IVector::unit(std::size_t n, std::size_t i) {
    IVector e(n);
    e[i] = Interval(1.0);
    return e;
}

IVector& IVector::operator+=(const IVector& b) {
    check_size(size(), b.size(), "vector +=");
    for (std::size_t i = 0; i < size(); ++i) v_[i] += b[i];
    return *this;
}

IVector& IVector::operator-=(const IVector& b) {
    check_size(size(), b.size(), "vector -=");
    for (std::size_t i = 0; i < size(); ++i) v_[i] -= b[i];
    return *this;
}

double IVector::maxDiam() const {
    double d = 0.0;
    for (const auto& x : v_) d = std::max(d, x.diam());
    return d;
}

bool IVector::contains(const IVector& b) const {
    if (size() != b.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (!v_[i].contains(b[i])) return false;
    return true;
}

bool IVector::containsInInterior(const IVector& b) const {
    if (size() != b.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (!v_[i].containsInInterior(b[i])) return false;
    return true;
}

IVector operator+(const IVector& a, const IVector& b) {
    IVector r = a;
    r += b;
    return r;
}

IVector operator-(const IVector& a, const IVector& b) {
    IVector r = a;
    r -= b;
    return r;
}

IVector operator-(const IVector& a) {
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

IVector operator*(const Interval& s, const IVector& a) {
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

IVector midVector(const IVector& a) {
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Interval(a[i].mid());
    return r;
}

IVector intersection(const IVector& a, const IVector& b) {
    check_size(a.size(), b.size(), "vector intersection");
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = intersection(a[i], b[i]);
        if (r[i].isEmpty()) throw interval_error("empty vector intersection");
    }
    return r;
}

IVector hull(const IVector& a, const IVector& b) {
    check_size(a.size(), b.size(), "vector hull");
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = hull(a[i], b[i]);
    return r;
}

Interval dot(const IVector& a, const IVector& b) {
    check_size(a.size(), b.size(), "dot");
    Interval s(0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double maxNorm(const IVector& a) {
    double m = 0.0;
    for (const auto& x : a) m = std::max(m, x.mag());
    return m;
}

IMatrix IMatrix::identity(std::size_t n) {
    IMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Interval(1.0);
    return m;
}

IMatrix& IMatrix::operator+=(const IMatrix& b) {
    check_size(rows_, b.rows(), "matrix +=");
    check_size(cols_, b.cols(), "matrix +=");
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += b.m_[i];
    return *this;
}

IMatrix operator+(const IMatrix& a, const IMatrix& b) {
    IMatrix r = a;
    r += b;
    return r;
}

IMatrix operator-(const IMatrix& a, const IMatrix& b) {
    check_size(a.rows(), b.rows(), "matrix -");
    check_size(a.cols(), b.cols(), "matrix -");
    IMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

IMatrix operator*(const IMatrix& a, const IMatrix& b) {
    check_size(a.cols(), b.rows(), "matrix *");
    IMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Interval s(0.0);
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

IVector operator*(const IMatrix& a, const IVector& x) {
    check_size(a.cols(), x.size(), "matrix * vector");
    IVector r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Interval s(0.0);
        for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
        r[i] = s;
    }
    return r;
}

IMatrix operator*(const Interval& s, const IMatrix& a) {
    IMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

IMatrix transpose(const IMatrix& a) {
    IMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

IMatrix midMatrix(const IMatrix& a) {
    IMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Interval(a(i, j).mid());
    return r;
}

Interval det2(const IMatrix& a) {
    if (a.rows() != 2 || a.cols() != 2) throw interval_error("det2: matrix is not 2x2");
    return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
}

Interval det(const IMatrix& a) {
    if (a.rows() != a.cols()) throw interval_error("det: not square");
    switch (a.rows()) {
        case 1: return a(0, 0);
        case 2: return det2(a);
        case 3:
            return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                   a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                   a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        default: throw interval_error("det: only n <= 3 supported");
    }
}

IVector solve2(const IMatrix& a, const IVector& rhs) {
    Interval d = det2(a);
    if (d.contains(0.0)) throw interval_error("solve2: singular interval matrix");
    IVector x(2);
    x[0] = (rhs[0] * a(1, 1) - rhs[1] * a(0, 1)) / d;
    x[1] = (a(0, 0) * rhs[1] - a(1, 0) * rhs[0]) / d;
    return x;
}

// ---- orthogonal enclosure --------------------------------------------------

namespace {

// plain double Householder QR, returns Q
std::vector<double> householder_q(const IMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<double> a(n * n), q(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        q[i * n + i] = 1.0;
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j).mid();
    }
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += a[i * n + k] * a[i * n + k];
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        double alpha = a[k * n + k] >= 0 ? -norm : norm;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = a[i * n + k];
            if (i == k) v[i] -= alpha;
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {  // A := (I - 2vv^T/v^Tv) A
            double s = 0.0;
            for (std::size_t i = k; i < n; ++i) s += v[i] * a[i * n + j];
            s *= 2.0 / vnorm2;
            for (std::size_t i = k; i < n; ++i) a[i * n + j] -= s * v[i];
        }
        for (std::size_t j = 0; j < n; ++j) {  // Q := Q (I - 2vv^T/v^Tv)
            double s = 0.0;
            for (std::size_t i = k; i < n; ++i) s += q[j * n + i] * v[i];
            s *= 2.0 / vnorm2;
            for (std::size_t i = k; i < n; ++i) q[j * n + i] -= s * v[i];
        }
    }
    return q;
}

}  // namespace

bool orthogonal_enclosure(const IMatrix& m, IMatrix& qOut) {
    const std::size_t n = m.rows();
    std::vector<double> q = householder_q(m);
    for (double x : q)
        if (!std::isfinite(x)) return false;
    // defect E = Q^T Q - I, rigorous; ||Qhat - U||_2 <= ||E||_2 <= ||E||_inf
    // for the nearest orthogonal U, and a 2-norm bound dominates every entry
    IMatrix qi(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) qi(i, j) = Interval(q[i * n + j]);
    IMatrix e = transpose(qi) * qi - IMatrix::identity(n);
    double defect = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += e(i, j).mag();
        defect = std::max(defect, row);
    }
    if (!(defect < 1e-8)) return false;
    Interval pad(-defect, defect);
    qOut = IMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) qOut(i, j) = qi(i, j) + pad;
    return true;
}

// ---- logarithmic norms ------------------------------------------------------

double log_norm(const IMatrix& a, LogNorm which) {
    if (a.rows() != a.cols()) throw interval_error("log_norm: not square");
    const std::size_t n = a.rows();
    switch (which) {
        case LogNorm::LInf: {
            double m = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                Interval s = a(i, i);
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i) s += abs(a(i, j));
                m = std::max(m, s.hi());
            }
            return m;
        }
        case LogNorm::L1: return log_norm(transpose(a), LogNorm::LInf);
        case LogNorm::L2: {
            // Gershgorin upper bound on the symmetrized matrix
            double m = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                Interval s = a(i, i);
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i) s += Interval(0.5) * abs(a(i, j) + a(j, i));
                m = std::max(m, s.hi());
            }
            return m;
        }
    }
    return 0.0;
}

// ---- complex rectangles -----------------------------------------------------

CInterval operator+(const CInterval& a, const CInterval& b) {
    return CInterval(a.re() + b.re(), a.im() + b.im());
}
CInterval operator-(const CInterval& a, const CInterval& b) {
    return CInterval(a.re() - b.re(), a.im() - b.im());
}
CInterval operator-(const CInterval& a) { return CInterval(-a.re(), -a.im()); }
CInterval operator*(const CInterval& a, const CInterval& b) {
    return CInterval(a.re() * b.re() - a.im() * b.im(), a.re() * b.im() + a.im() * b.re());
}
CInterval operator/(const CInterval& a, const CInterval& b) {
    Interval d = abs2(b);
    if (d.contains(0.0)) throw interval_error("complex division by rectangle containing zero");
    return CInterval((a.re() * b.re() + a.im() * b.im()) / d,
                     (a.im() * b.re() - a.re() * b.im()) / d);
}
CInterval operator*(const Interval& s, const CInterval& a) {
    return CInterval(s * a.re(), s * a.im());
}
CInterval cpow(const CInterval& a, int n) {
    CInterval r(Interval(1.0), Interval(0.0));
    for (int i = 0; i < n; ++i) r = r * a;
    return r;
}
Interval abs2(const CInterval& a) { return sqr(a.re()) + sqr(a.im()); }

CInterval cintersection(const CInterval& a, const CInterval& b) {
    Interval re = intersection(a.re(), b.re());
    Interval im = intersection(a.im(), b.im());
    if (re.isEmpty() || im.isEmpty()) throw interval_error("empty complex intersection");
    return CInterval(re, im);
}

std::ostream& operator<<(std::ostream& os, const IVector& v) {
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    return os << ")";
}

std::ostream& operator<<(std::ostream& os, const IMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << m(i, j) << (j + 1 < m.cols() ? " " : "");
        os << "\n";
    }
    return os;
}

std::ostream& operator<<(std::ostream& os, const CInterval& z) {
    return os << z.re() << " + i*" << z.im();
}

}  // namespace crl
