#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "crl/linalg.hpp"

using crl::Interval;
using crl::IMatrix;
using crl::IVector;

TEST_CASE("vector arithmetic and norms") {
  IVector a{Interval(1.0), Interval(-2.0)};
  IVector b{Interval(0.5), Interval(0.5)};
  IVector s = a + b;
  CHECK(s[0].contains(1.5));
  CHECK(s[1].contains(-1.5));
  CHECK(crl::maxNorm(a) >= 2.0);
  IVector w{Interval(-1.0, 1.0), Interval(0.0, 0.25)};
  CHECK(w.maxDiam() >= 2.0);
  CHECK(w.contains(crl::midVector(w)));
}

TEST_CASE("matrix vector product encloses point product") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int it = 0; it < 200; ++it) {
    IMatrix m(3, 3);
    std::vector<double> pm(9);
    std::vector<double> pv(3);
    IVector v(3);
    for (int i = 0; i < 9; ++i) {
      pm[i] = dist(rng);
      double r = std::abs(dist(rng)) * 0.01;
      m(i / 3, i % 3) = Interval(pm[i] - r, pm[i] + r);
    }
    for (int i = 0; i < 3; ++i) {
      pv[i] = dist(rng);
      double r = std::abs(dist(rng)) * 0.01;
      v[i] = Interval(pv[i] - r, pv[i] + r);
    }
    IVector prod = m * v;
    for (int i = 0; i < 3; ++i) {
      double exact = 0.0;
      for (int j = 0; j < 3; ++j) exact += pm[3 * i + j] * pv[j];
      CHECK(prod[i].contains(exact));
    }
  }
}

TEST_CASE("2x2 interval linear solve") {
  IMatrix m(2, 2);
  m(0, 0) = Interval(2.0);
  m(0, 1) = Interval(1.0);
  m(1, 0) = Interval(1.0);
  m(1, 1) = Interval(3.0);
  IVector rhs{Interval(5.0), Interval(10.0)};
  IVector x = crl::solve2(m, rhs);
  CHECK(x[0].contains(1.0));
  CHECK(x[1].contains(3.0));
  CHECK(x.maxDiam() < 1e-14);
  m(0, 0) = Interval(-1.0, 1.0);
  m(0, 1) = Interval(1.0);
  m(1, 0) = Interval(1.0);
  m(1, 1) = Interval(1.0);  // det = [-2, 0] contains zero
  CHECK_THROWS(crl::solve2(m, rhs));
}

TEST_CASE("determinant") {
  IMatrix m = IMatrix::identity(3);
  CHECK(crl::det(m).contains(1.0));
  m(0, 1) = Interval(5.0);
  CHECK(crl::det(m).contains(1.0));
}

TEST_CASE("orthogonal enclosure of a rotation-like matrix") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    double t = dist(rng) * 3.0;
    IMatrix m(2, 2);
    // slightly perturbed rotation; Q should enclose an exact orthogonal matrix
    m(0, 0) = Interval(std::cos(t) + dist(rng) * 1e-13);
    m(0, 1) = Interval(-std::sin(t) + dist(rng) * 1e-13);
    m(1, 0) = Interval(std::sin(t) + dist(rng) * 1e-13);
    m(1, 1) = Interval(std::cos(t) + dist(rng) * 1e-13);
    IMatrix q(2, 2);
    bool ok = crl::orthogonal_enclosure(m, q);
    REQUIRE(ok);
    // Q^T Q must contain the identity
    IMatrix qtq = crl::transpose(q) * q;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(qtq(i, j).contains(i == j ? 1.0 : 0.0));
  }
}

TEST_CASE("orthogonal enclosure handles larger well conditioned matrices") {
  IMatrix m(3, 3);
  double vals[9] = {2.0, -1.0, 0.3, 0.5, 1.5, -0.2, -0.1, 0.4, 1.0};
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = Interval(vals[i]);
  IMatrix q(3, 3);
  REQUIRE(crl::orthogonal_enclosure(m, q));
  IMatrix qtq = crl::transpose(q) * q;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(qtq(i, j).contains(i == j ? 1.0 : 0.0));
}

TEST_CASE("logarithmic norms") {
  IMatrix m(2, 2);
  m(0, 0) = Interval(-3.0);
  m(0, 1) = Interval(1.0);
  m(1, 0) = Interval(2.0);
  m(1, 1) = Interval(-5.0);
  // mu_inf = max(-3 + 1, -5 + 2) = -2
  CHECK(crl::log_norm(m, crl::LogNorm::LInf) == doctest::Approx(-2.0));
  // mu_1 = max over columns = max(-3 + 2, -5 + 1) = -1
  CHECK(crl::log_norm(m, crl::LogNorm::L1) == doctest::Approx(-1.0));
  // mu_2 upper bound via Gershgorin on the symmetric part [[-3, 1.5], [1.5, -5]]
  double mu2 = crl::log_norm(m, crl::LogNorm::L2);
  CHECK(mu2 >= -1.5 - 1e-12);
  CHECK(mu2 <= 0.0);
}

TEST_CASE("complex rectangle arithmetic") {
  crl::CInterval a(Interval(1.0), Interval(2.0));
  crl::CInterval b(Interval(3.0), Interval(-1.0));
  crl::CInterval p = a * b;
  CHECK(p.re().contains(5.0));
  CHECK(p.im().contains(5.0));
  crl::CInterval q = p / b;
  CHECK(q.re().contains(1.0));
  CHECK(q.im().contains(2.0));
  crl::CInterval c = a.conj();
  CHECK(c.im().contains(-2.0));
  crl::CInterval pw = crl::cpow(a, 3);
  // (1+2i)^3 = -11 - 2i
  CHECK(pw.re().contains(-11.0));
  CHECK(pw.im().contains(-2.0));
  CHECK_THROWS(a / crl::CInterval(Interval(-1.0, 1.0), Interval(-1.0, 1.0)));
}
