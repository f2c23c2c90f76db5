#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "crl/poincare.hpp"

using crl::AffineSection;
using crl::Interval;
using crl::IVector;
using crl::LohnerOptions;
using crl::Multipointer;
using crl::PoincareMap;
using crl::PoincareResult;
using crl::VectorField;

namespace {

std::vector<IVector> identitySeeds(const std::vector<Multipointer>& blocks, std::size_t n) {
    std::vector<IVector> seeds;
    for (const auto& a : blocks) {
        IVector s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = Interval(0.0);
        if (a.size() == 1) s[static_cast<std::size_t>(a[0] - 1)] = Interval(1.0);
        seeds.push_back(s);
    }
    return seeds;
}

int blockIndex(const std::vector<Multipointer>& blocks, const Multipointer& a) {
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (crl::compare(blocks[b], a) == 0) return static_cast<int>(b);
    return -1;
}

}  // namespace

// The circle flow x' = y, y' = -x rotates clockwise; from (a, b) near
// (0, 1) the first return to {y = 0} lands at (sqrt(a^2 + b^2), 0) after
// time atan2(b, a), which gives every derivative in closed form.
TEST_CASE("circle flow return map matches the closed form") {
    VectorField f = VectorField::parse({"y", "-x"}, {"x", "y"}, {});
    LohnerOptions opts;
    opts.orders = crl::default_orders(14, 2);
    AffineSection sec{IVector{Interval(0.0), Interval(1.0)}, Interval(0.0)};
    PoincareMap pm(f, IVector{}, opts, sec);

    auto blocks = crl::all_multipointers(2, 2);
    PoincareResult res =
        pm.compute(IVector{Interval(0.0), Interval(1.0)}, blocks, identitySeeds(blocks, 2), 0.2);

    const double piHalf = 1.5707963267948966;
    CHECK(res.returnTime.contains(piHalf));
    CHECK(res.returnTime.diam() < 1e-8);
    CHECK(res.image[0].contains(1.0));
    CHECK(res.image[1].contains(0.0));
    CHECK(res.image[0].diam() < 1e-10);

    struct Expect {
        Multipointer a;
        double dP1, dt;
    };
    // d/da sqrt(a^2+b^2) etc. at (0, 1); the second component of every
    // derivative vanishes because the image stays on the section
    const Expect table[] = {
        {{1}, 0.0, -1.0}, {{2}, 1.0, 0.0},    {{1, 1}, 1.0, 0.0},
        {{1, 2}, 0.0, 1.0}, {{2, 2}, 0.0, 0.0},
    };
    for (const auto& e : table) {
        int b = blockIndex(blocks, e.a);
        REQUIRE(b >= 0);
        CAPTURE(b);
        CHECK(res.derivatives[static_cast<std::size_t>(b)][0].contains(e.dP1));
        CHECK(res.derivatives[static_cast<std::size_t>(b)][0].diam() < 1e-7);
        CHECK(res.derivatives[static_cast<std::size_t>(b)][1].contains(0.0));
        CHECK(res.timeDerivatives[static_cast<std::size_t>(b)].contains(e.dt));
        CHECK(res.timeDerivatives[static_cast<std::size_t>(b)].diam() < 1e-7);
    }
}

TEST_CASE("return map over a box keeps the structural identities") {
    VectorField f = VectorField::parse({"y", "-x"}, {"x", "y"}, {});
    LohnerOptions opts;
    opts.orders = crl::default_orders(14, 2);
    AffineSection sec{IVector{Interval(0.0), Interval(1.0)}, Interval(0.0)};
    PoincareMap pm(f, IVector{}, opts, sec);

    auto blocks = crl::all_multipointers(2, 2);
    IVector x0{Interval(-1e-3, 1e-3), Interval(1.0 - 1e-3, 1.0 + 1e-3)};
    PoincareResult res = pm.compute(x0, blocks, identitySeeds(blocks, 2), 0.2);

    CHECK(res.image[1] == Interval(0.0));  // tightened onto the section
    CHECK(res.image[0].contains(1.0));     // value at the box center
    CHECK(res.returnTime.contains(1.5707963267948966));
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        Interval d = dot(sec.normal, res.derivatives[b]);
        CHECK(d.contains(0.0));
        CHECK(res.derivatives[b][0].diam() < 1e-1);
    }
    // closed-form derivative values at the box center stay inside
    int b1 = blockIndex(blocks, {2});
    CHECK(res.derivatives[static_cast<std::size_t>(b1)][0].contains(1.0));
    int b2 = blockIndex(blocks, {1, 1});
    CHECK(res.derivatives[static_cast<std::size_t>(b2)][0].contains(1.0));
}

// A start on the section must first leave it before the return is armed;
// from (1, 0) the flow dips below {y = 0} and comes back at (-1, 0).
TEST_CASE("return map from a point on the section") {
    VectorField f = VectorField::parse({"y", "-x"}, {"x", "y"}, {});
    LohnerOptions opts;
    opts.orders = crl::default_orders(14, 1);
    AffineSection sec{IVector{Interval(0.0), Interval(1.0)}, Interval(0.0)};
    PoincareMap pm(f, IVector{}, opts, sec);

    std::vector<Multipointer> blocks{{1}, {2}};
    PoincareResult res =
        pm.compute(IVector{Interval(1.0), Interval(0.0)}, blocks, identitySeeds(blocks, 2), 0.2);

    const double pi = 3.141592653589793;
    CHECK(res.returnTime.contains(pi));
    CHECK(res.returnTime.diam() < 1e-8);
    CHECK(res.image[0].contains(-1.0));
    CHECK(res.image[0].diam() < 1e-10);
    // P(a, b) = (-sqrt(a^2 + b^2), 0) near (1, 0)
    CHECK(res.derivatives[0][0].contains(-1.0));
    CHECK(res.derivatives[1][0].contains(0.0));
    CHECK(res.timeDerivatives[0].contains(0.0));
    CHECK(res.timeDerivatives[1].contains(1.0));
}

TEST_CASE("fixed-duration map with an interval duration") {
    VectorField f = VectorField::parse({"y", "-x"}, {"x", "y"}, {});
    LohnerOptions opts;
    opts.orders = crl::default_orders(14, 2);
    auto blocks = crl::all_multipointers(2, 2);
    Interval T = crl::pi() * Interval(0.5);
    crl::FlowDerivatives fd =
        flow_derivatives(f, IVector{}, opts, IVector{Interval(0.0), Interval(1.0)}, blocks,
                         identitySeeds(blocks, 2), T, 4);
    CHECK(fd.image[0].contains(1.0));
    CHECK(fd.image[1].contains(0.0));
    CHECK(fd.image[0].diam() < 1e-10);
    // the flow is linear: first derivatives are the rotation columns and
    // every second derivative vanishes
    int da = blockIndex(blocks, {1});
    int db = blockIndex(blocks, {2});
    CHECK(fd.derivatives[static_cast<std::size_t>(da)][0].contains(0.0));
    CHECK(fd.derivatives[static_cast<std::size_t>(da)][1].contains(-1.0));
    CHECK(fd.derivatives[static_cast<std::size_t>(db)][0].contains(1.0));
    CHECK(fd.derivatives[static_cast<std::size_t>(db)][1].contains(0.0));
    int daa = blockIndex(blocks, {1, 1});
    CHECK(fd.derivatives[static_cast<std::size_t>(daa)][0].contains(0.0));
    CHECK(fd.derivatives[static_cast<std::size_t>(daa)][0].diam() < 1e-9);
}
