#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "crl/lohner.hpp"

using crl::CnLohner;
using crl::Interval;
using crl::IVector;
using crl::LohnerOptions;
using crl::Multipointer;
using crl::VectorField;

namespace {

std::vector<Multipointer> planarBlocks(int r) { return crl::all_multipointers(2, r); }

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

}  // namespace

TEST_CASE("flow of x' = x encloses the exponential") {
    VectorField f = VectorField::parse({"x"}, {"x"}, {});
    LohnerOptions opts;
    opts.orders = crl::default_orders(10, 1);
    CnLohner solver(f, IVector{}, opts);
    std::vector<Multipointer> blocks{{1}};
    solver.init(IVector{Interval(1.0)}, blocks, {IVector{Interval(1.0)}});
    for (int i = 0; i < 16; ++i) solver.flow(Interval(0.0625));
    IVector x = solver.state().hull();
    CHECK(x[0].contains(std::exp(1.0)));
    CHECK(x[0].diam() < 1e-10);
    // first variation equals the flow itself here
    IVector v = solver.state().blockHull(0);
    CHECK(v[0].contains(std::exp(1.0)));
}

TEST_CASE("flow of x' = x^2 matches the closed form with derivatives") {
    VectorField f = VectorField::parse({"x^2"}, {"x"}, {});
    LohnerOptions opts;
    opts.orders = crl::default_orders(10, 2);
    CnLohner solver(f, IVector{}, opts);
    std::vector<Multipointer> blocks{{1}, {1, 1}};
    double x0 = 1.0, t = 0.5;
    solver.init(IVector{Interval(x0)}, blocks,
                {IVector{Interval(1.0)}, IVector{Interval(0.0)}});
    for (int i = 0; i < 32; ++i) solver.flow(Interval(t / 32));
    double u = 1.0 - x0 * t;
    CHECK(solver.state().hull()[0].contains(x0 / u));
    CHECK(solver.state().blockHull(0)[0].contains(1.0 / (u * u)));
    CHECK(solver.state().blockHull(1)[0].contains(2.0 * t / (u * u * u)));
    CHECK(solver.state().hull()[0].diam() < 1e-8);
    CHECK(solver.state().blockHull(1)[0].diam() < 1e-6);
}

TEST_CASE("rotation: derivative is the rotation matrix and preserves area") {
    VectorField f = VectorField::parse({"y", "-x"}, {"x", "y"}, {});
    LohnerOptions opts;
    opts.orders = crl::default_orders(12, 2);
    CnLohner solver(f, IVector{}, opts);
    auto blocks = planarBlocks(2);
    solver.init(IVector{Interval(0.8), Interval(0.1)}, blocks, identitySeeds(blocks, 2));
    double T = 2.0;
    for (int i = 0; i < 20; ++i) solver.flow(Interval(T / 20));
    IVector x = solver.state().hull();
    CHECK(x[0].contains(0.8 * std::cos(T) + 0.1 * std::sin(T)));
    CHECK(x[1].contains(-0.8 * std::sin(T) + 0.1 * std::cos(T)));
    crl::IMatrix D(2, 2);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].size() == 1) {
            IVector col = solver.state().blockHull(b);
            D(0, static_cast<std::size_t>(blocks[b][0] - 1)) = col[0];
            D(1, static_cast<std::size_t>(blocks[b][0] - 1)) = col[1];
        } else {
            // linear flow: higher variations vanish
            CHECK(solver.state().blockHull(b)[0].contains(0.0));
            CHECK(solver.state().blockHull(b)[0].diam() < 1e-9);
        }
    }
    CHECK(D(0, 0).contains(std::cos(T)));
    CHECK(D(0, 1).contains(std::sin(T)));
    CHECK(crl::det2(D).contains(1.0));
    CHECK(crl::det2(D).diam() < 1e-9);
}

TEST_CASE("doubleton bookkeeping defeats the wrapping effect") {
    auto widthAfter = [](bool naive) {
        VectorField f = VectorField::parse({"y", "-x"}, {"x", "y"}, {});
        LohnerOptions opts;
        opts.orders = crl::default_orders(12, 1);
        opts.naive = naive;
        CnLohner solver(f, IVector{}, opts);
        std::vector<Multipointer> blocks{{1}, {2}};
        IVector x0{Interval(0.99, 1.01), Interval(-0.01, 0.01)};
        solver.init(x0, blocks, identitySeeds(blocks, 2));
        for (int i = 0; i < 100; ++i) solver.flow(Interval(0.3));
        return solver.state().hull().maxDiam();
    };
    double w0 = 0.02;
    CHECK(widthAfter(false) < 5.0 * w0);
    CHECK(widthAfter(true) > 1e3 * w0);
}

TEST_CASE("flow with an interval step covers the whole time range") {
    VectorField f = VectorField::parse({"x"}, {"x"}, {});
    LohnerOptions opts;
    opts.orders = crl::default_orders(10, 1);
    CnLohner solver(f, IVector{}, opts);
    solver.init(IVector{Interval(1.0)}, {{1}}, {IVector{Interval(1.0)}});
    Interval H(0.2, 0.21);
    for (int i = 0; i < 5; ++i) solver.flow(H);
    for (double t : {1.0, 1.02, 1.05}) CHECK(solver.state().hull()[0].contains(std::exp(t)));
}

TEST_CASE("nonautonomous forcing through an added time coordinate") {
    // x' = v, v' = -x + sin(t): particular solution around -t cos t / 2
    VectorField f = VectorField::parse({"v", "-x + sin(t)", "1"}, {"x", "v", "t"}, {});
    LohnerOptions opts;
    opts.orders = crl::default_orders(12, 1);
    CnLohner solver(f, IVector{}, opts);
    std::vector<Multipointer> blocks{{1}, {2}};
    std::vector<IVector> seeds{IVector{Interval(1.0), Interval(0.0), Interval(0.0)},
                               IVector{Interval(0.0), Interval(1.0), Interval(0.0)}};
    // exact solution with x(0)=0, v(0)=0: x(t) = (sin t - t cos t)/2
    solver.init(IVector{Interval(0.0), Interval(0.0), Interval(0.0)}, blocks, seeds);
    double T = 1.5;
    for (int i = 0; i < 15; ++i) solver.flow(Interval(T / 15));
    double xs = (std::sin(T) - T * std::cos(T)) / 2.0;
    double vs = T * std::sin(T) / 2.0;
    CHECK(solver.state().hull()[0].contains(xs));
    CHECK(solver.state().hull()[1].contains(vs));
    CHECK(solver.state().hull()[0].diam() < 1e-9);
    CHECK(solver.state().hull()[2].contains(T));
}

TEST_CASE("step splitting keeps total time exact") {
    // stiff-ish quadratic growth forces enclosure failures at large h
    VectorField f = VectorField::parse({"x^2"}, {"x"}, {});
    LohnerOptions opts;
    opts.orders = crl::default_orders(8, 1);
    CnLohner solver(f, IVector{}, opts);
    solver.init(IVector{Interval(1.0)}, {{1}}, {IVector{Interval(1.0)}});
    solver.flow(Interval(0.9));  // close-ish to blowup at t = 1
    CHECK(solver.state().hull()[0].contains(1.0 / 0.1));
    CHECK(solver.time().contains(0.9));
}
