#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "crl/variational.hpp"

using crl::Interval;
using crl::IVector;
using crl::Multipointer;
using crl::VectorField;

TEST_CASE("right-hand sides for x' = x^2 match hand-derived equations") {
    // V' = 2 x V,  W' = 2 x W + 2 V^2,  U' = 2 x U + 6 V W
    VectorField f = VectorField::parse({"x^2"}, {"x"}, {});
    f.prepare(3);
    std::vector<Multipointer> blocks{{1}, {1, 1}, {1, 1, 1}};
    double x = 0.7, V = 1.3, W = -0.4, U = 2.1;
    std::vector<IVector> vals{IVector{Interval(V)}, IVector{Interval(W)}, IVector{Interval(U)}};
    auto rhs = crl::variational_rhs(f, IVector{Interval(x)}, IVector{}, blocks, vals);
    CHECK(rhs[0][0].contains(2 * x * V));
    CHECK(rhs[1][0].contains(2 * x * W + 2 * V * V));
    CHECK(rhs[2][0].contains(2 * x * U + 6 * V * W));
    CHECK(rhs[2][0].diam() < 1e-13);
    auto nl = crl::variational_nonlinear(f, IVector{Interval(x)}, IVector{}, blocks, vals);
    CHECK(nl[0][0].contains(0.0));
    CHECK(nl[0][0].diam() == 0.0);
    CHECK(nl[1][0].contains(2 * V * V));
    CHECK(nl[2][0].contains(6 * V * W));
}

TEST_CASE("right-hand side equals the derivative of the variational series") {
    VectorField f = VectorField::parse({"v", "-sin(x)"}, {"x", "v"}, {});
    f.prepare(2);
    std::vector<Multipointer> blocks{{1}, {2}, {1, 1}, {1, 2}, {2, 2}};
    std::vector<IVector> seeds{IVector{Interval(1.0), Interval(0.0)},
                               IVector{Interval(0.0), Interval(1.0)},
                               IVector{Interval(0.0), Interval(0.0)},
                               IVector{Interval(0.0), Interval(0.0)},
                               IVector{Interval(0.0), Interval(0.0)}};
    IVector x0{Interval(0.4), Interval(-0.3)};
    auto jet = crl::variational_jet(f, x0, IVector{}, blocks, seeds, 1);
    auto rhs = crl::variational_rhs(f, x0, IVector{}, blocks, seeds);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int i = 0; i < 2; ++i) {
            // coefficient 1 of the series is exactly the right-hand side
            CHECK((jet.v[b][1][i] - rhs[b][i]).contains(0.0));
            CHECK(jet.v[b][1][i].diam() < 1e-14);
        }
}

TEST_CASE("second order terms for a planar polynomial field") {
    // f = (x y, x^2): D^2 terms by hand
    VectorField f = VectorField::parse({"x*y", "x^2"}, {"x", "y"}, {});
    f.prepare(2);
    std::vector<Multipointer> blocks{{1}, {2}, {1, 1}};
    double x = 0.5, y = -1.5;
    IVector V1{Interval(0.2), Interval(0.3)};
    IVector V2{Interval(-0.6), Interval(0.9)};
    IVector W{Interval(0.0), Interval(0.0)};
    auto rhs = crl::variational_rhs(f, IVector{Interval(x), Interval(y)}, IVector{},
                                    blocks, {V1, V2, W});
    // for block {1,1}: sum = Df W + D^2 f (V1, V1)
    // f1: d2/dxdy = 1 twice (symmetric), d2/dx2 = y... wait d2 f1/dx2 = 0,
    // d2 f1/dxdy = 1, d2 f1/dy2 = 0 -> 2 * V1_x V1_y
    double w1 = y * W[0].mid() + x * W[1].mid() + 2.0 * 0.2 * 0.3;
    // f2: d2/dx2 = 2 -> 2 V1_x^2
    double w2 = 2 * x * W[0].mid() + 2.0 * 0.2 * 0.2;
    CHECK(rhs[2][0].contains(w1));
    CHECK(rhs[2][1].contains(w2));
    CHECK(rhs[2][0].diam() < 1e-14);
}
