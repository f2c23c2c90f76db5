// End-to-end acceptance checks. Each criterion prints exactly one
// PASS/FAIL line; the exit code is the number of failures. Tolerances are
// pinned here, next to the checks that use them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "crl/certify.hpp"

using crl::CertificationReport;
using crl::CertifyOptions;
using crl::Forcing;
using crl::Interval;
using crl::IVector;
using crl::LohnerOptions;
using crl::Multipointer;
using crl::VectorField;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
    std::printf("criterion %d (%s): %s%s%s\n", criterion, name.c_str(), ok ? "PASS" : "FAIL",
                detail.empty() ? "" : " - ", detail.c_str());
    if (!ok) ++failures;
}

double seconds(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool subset(const Interval& a, const Interval& b) { return b.lo() <= a.lo() && a.hi() <= b.hi(); }

bool meets(const Interval& a, const Interval& b) { return a.lo() <= b.hi() && b.lo() <= a.hi(); }

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

// ---- criterion 1: forced pendulum twist enclosures ----------------------

void criterion1() {
    struct Run {
        double omega;
        Interval hull;
    };
    const std::vector<Run> runs{{6.0, Interval(0.18574835001593507, 0.4129279974577012)},
                                {2.5, Interval(0.29930416771330087, 30.118260918229566)},
                                {3.5, Interval(0.099747909112924596, 0.56550301088840627)}};
    bool ok = true;
    std::ostringstream detail;
    for (const Run& run : runs) {
        CertificationReport rep;
        double t = seconds([&] { rep = crl::certify_pendulum(Interval(run.omega), Forcing::Single); });
        bool good = rep.certified && subset(rep.gamma1, run.hull) && rep.gamma1.diam() < 0.1 &&
                    t < 300.0;
        ok = ok && good;
        detail << "omega=" << run.omega << " gamma1=[" << rep.gamma1.lo() << "," << rep.gamma1.hi()
               << "] " << (good ? "ok" : "bad") << " (" << t << "s); ";
    }
    report(1, "pendulum twist enclosures", ok, detail.str());
}

// ---- criterion 2: double forcing near the twist sign change --------------

void criterion2() {
    const Interval omegaStar(2.9957694795, 2.9957694796);
    const Interval n1(-5.1582932672798325e-10, 5.1582631625020222e-10);
    const Interval n2(-0.54723831580217108, -0.54723831470891193);
    const Interval g1Lo(-2.3559594437885885e-8, -1.3593457220363871e-8);
    const Interval g1Hi(2.9671154858524365e-9, 1.2819312939263052e-8);

    CertifyOptions opt;
    opt.boxRadius = 3e-5;
    CertificationReport wide = crl::certify_pendulum(omegaStar, Forcing::Double, opt);
    bool ok = wide.certified && wide.newton.size() == 2 && subset(wide.newton[0], n1) &&
              subset(wide.newton[1], n2);

    CertificationReport atLo = crl::certify_pendulum(Interval(omegaStar.lo()), Forcing::Double, opt);
    CertificationReport atHi = crl::certify_pendulum(Interval(omegaStar.hi()), Forcing::Double, opt);
    ok = ok && atLo.certified && meets(atLo.gamma1, g1Lo) && atLo.gamma1.diam() < 1e-6;
    ok = ok && atHi.certified && meets(atHi.gamma1, g1Hi) && atHi.gamma1.diam() < 1e-6;

    std::ostringstream detail;
    detail << "gamma1(lo)=[" << atLo.gamma1.lo() << "," << atLo.gamma1.hi() << "] gamma1(hi)=["
           << atHi.gamma1.lo() << "," << atHi.gamma1.hi() << "]";
    report(2, "pendulum double forcing", ok, detail.str());
}

// ---- criterion 3: Michelson symmetric orbits -----------------------------

void criterion3() {
    struct Run {
        double c;
        Interval hull;
    };
    const std::vector<Run> runs{{0.2, Interval(0.014515898754816965, 157.76639522562903)},
                                {0.24, Interval(1.1002393483255526, 151.35147664498677)}};
    bool ok = true;
    std::ostringstream detail;
    for (const Run& run : runs) {
        CertificationReport rep;
        double t = seconds([&] { rep = crl::certify_michelson(Interval(run.c)); });
        bool good = rep.certified && subset(rep.gamma1, run.hull) && t < 900.0;
        ok = ok && good;
        detail << "c=" << run.c << " gamma1=[" << rep.gamma1.lo() << "," << rep.gamma1.hi() << "] "
               << (good ? "ok" : "bad") << " (" << t << "s); ";
    }
    report(3, "michelson twist enclosures", ok, detail.str());
}

// ---- criterion 4: derivative combinatorics -------------------------------

// all set partitions of {1..p} via restricted growth strings
long bruteStirling(int p, int k) {
    std::vector<int> rgs(static_cast<std::size_t>(p), 0);
    long count = 0;
    std::function<void(int, int)> rec = [&](int i, int m) {
        if (i == p) {
            if (m == k) ++count;
            return;
        }
        for (int b = 0; b <= m && b < k; ++b) rec(i + 1, std::max(m, b + 1));
    };
    rec(0, 0);
    return count;
}

void criterion4() {
    bool ok = true;
    std::ostringstream detail;
    for (int p = 1; p <= 8 && ok; ++p) {
        for (int k = 1; k <= p && ok; ++k) {
            long want = bruteStirling(p, k);
            long have = static_cast<long>(crl::partitions(p, k).size());
            if (have != want || crl::stirling2(p, k) != want) {
                ok = false;
                detail << "N^" << p << "(" << k << ") = " << have << ", oracle " << want;
            }
        }
    }
    for (int n = 1; n <= 6 && ok; ++n) {
        std::set<crl::Multiindex> seen;
        for (const auto& a : crl::all_multipointers(n, 6)) {
            crl::Multiindex alpha = crl::lambda(a, n);
            if (crl::lambda_inverse(alpha) != a || crl::multiindex_order(alpha)
                    != static_cast<int>(a.size()) || !seen.insert(alpha).second) {
                ok = false;
                detail << "lambda bijection broken at n=" << n;
                break;
            }
        }
    }
    report(4, "chain rule combinatorics", ok, detail.str());
}

// ---- criterion 5: closed-form flows --------------------------------------

bool containsNear(const Interval& enc, double value, double slack = 1e-12) {
    return enc.lo() - slack <= value && value <= enc.hi() + slack;
}

void criterion5() {
    bool ok = true;
    std::ostringstream detail;
    LohnerOptions lo;
    lo.orders = {10, 10, 10, 10};

    // x' = x^2: phi = x0/(1 - t x0) with every derivative in closed form
    VectorField fq = VectorField::parse({"x^2"}, {"x"}, {});
    auto blocks1 = crl::all_multipointers(1, 3);
    for (double x0 : {0.2, 0.5, 0.8, 1.0, -0.5}) {
        for (double t : {0.25, 0.5}) {
            int steps = std::max(1, static_cast<int>(std::lround(t * 64)));
            auto fd = crl::flow_derivatives(fq, {}, lo, IVector{Interval(x0)}, blocks1,
                                            identitySeeds(blocks1, 1), Interval(t), steps);
            double u = 1.0 - t * x0;
            bool good = containsNear(fd.image[0], x0 / u) &&
                        containsNear(fd.derivatives[0][0], 1.0 / (u * u)) &&
                        containsNear(fd.derivatives[1][0], 2.0 * t / (u * u * u)) &&
                        containsNear(fd.derivatives[2][0], 6.0 * t * t / (u * u * u * u));
            if (x0 == 1.0 && t == 0.5) {
                good = good && fd.image[0].diam() < 1e-6;
                for (const auto& d : fd.derivatives) good = good && d[0].diam() < 1e-6;
            }
            if (!good) {
                ok = false;
                detail << "x^2 flow bad at x0=" << x0 << " t=" << t << "; ";
            }
        }
    }

    // harmonic oscillator: the flow is the rotation by t, all higher
    // derivatives vanish
    VectorField fh = VectorField::parse({"v", "-x"}, {"x", "v"}, {});
    auto blocks2 = crl::all_multipointers(2, 3);
    for (double t : {0.3, 0.5, 0.7, 1.1, 1.6}) {
        for (double x0 : {1.0, -0.4}) {
            int steps = std::max(1, static_cast<int>(std::lround(t * 64)));
            IVector u0{Interval(x0), Interval(1.0)};
            auto fd = crl::flow_derivatives(fh, {}, lo, u0, blocks2, identitySeeds(blocks2, 2),
                                            Interval(t), steps);
            double c = std::cos(t), s = std::sin(t);
            bool good = containsNear(fd.image[0], x0 * c + s) &&
                        containsNear(fd.image[1], -x0 * s + c);
            for (std::size_t b = 0; b < blocks2.size(); ++b) {
                double dx = 0.0, dv = 0.0;
                if (blocks2[b] == Multipointer{1}) dx = c, dv = -s;
                if (blocks2[b] == Multipointer{2}) dx = s, dv = c;
                good = good && containsNear(fd.derivatives[b][0], dx) &&
                       containsNear(fd.derivatives[b][1], dv);
                if (t == 0.5 && x0 == 1.0)
                    good = good && fd.derivatives[b][0].diam() < 1e-6 &&
                           fd.derivatives[b][1].diam() < 1e-6;
            }
            if (!good) {
                ok = false;
                detail << "harmonic flow bad at t=" << t << " x0=" << x0 << "; ";
            }
        }
    }
    report(5, "closed-form flow containment", ok, detail.str());
}

// ---- criterion 6: structural invariants -----------------------------------

void criterion6() {
    bool ok = true;
    std::ostringstream detail;

    // the pendulum time map is area preserving
    VectorField fp =
        VectorField::parse({"v", "-sin(x) + sin(w*t)", "1"}, {"x", "v", "t"}, {"w"});
    LohnerOptions lo;
    std::vector<Multipointer> b1{{1}, {2}};
    std::vector<IVector> s1{IVector{Interval(1.0), Interval(0.0), Interval(0.0)},
                            IVector{Interval(0.0), Interval(1.0), Interval(0.0)}};
    IVector fix{Interval(0.0), Interval(-0.17142812581231739), Interval(0.0)};
    Interval period = (Interval(2.0) * crl::pi()) / 6.0;
    auto fd = crl::flow_derivatives(fp, IVector{Interval(6.0)}, lo, fix, b1, s1, period, 21);
    Interval det = fd.derivatives[0][0] * fd.derivatives[1][1] -
                   fd.derivatives[0][1] * fd.derivatives[1][0];
    if (!det.contains(1.0)) {
        ok = false;
        detail << "pendulum det DP misses 1; ";
    }

    // the Michelson flow preserves volume
    VectorField fm = VectorField::parse({"y", "z", "c^2 - y - x^2/2"}, {"x", "y", "z"}, {"c"});
    std::vector<Multipointer> b3{{1}, {2}, {3}};
    IVector m0{Interval(0.0), Interval(0.386), Interval(0.0)};
    auto fv = crl::flow_derivatives(fm, IVector{Interval(0.2)}, lo, m0, b3,
                                    identitySeeds(b3, 3), Interval(1.0), 20);
    const auto& d = fv.derivatives;
    Interval vol = d[0][0] * (d[1][1] * d[2][2] - d[2][1] * d[1][2]) -
                   d[1][0] * (d[0][1] * d[2][2] - d[2][1] * d[0][2]) +
                   d[2][0] * (d[0][1] * d[1][2] - d[1][1] * d[0][2]);
    if (!vol.contains(1.0)) {
        ok = false;
        detail << "michelson det Dphi misses 1; ";
    }

    // return-map derivatives stay tangent to the section at every order
    crl::AffineSection sec{IVector{Interval(1.0), Interval(0.0), Interval(0.0)}, Interval(0.0)};
    crl::PoincareMap pm(fm, IVector{Interval(0.2)}, lo, sec);
    auto blocks = crl::all_multipointers(2, 3);
    std::vector<IVector> seeds;
    for (const auto& a : blocks) {
        IVector s{Interval(0.0), Interval(0.0), Interval(0.0)};
        if (a.size() == 1) s[static_cast<std::size_t>(a[0])] = Interval(1.0);
        seeds.push_back(s);
    }
    auto pr = pm.compute(IVector{Interval(0.0), Interval(0.386053), Interval(0.0)}, blocks,
                         seeds, 0.05);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (!dot(sec.normal, pr.derivatives[b]).contains(0.0)) {
            ok = false;
            detail << "D_aP not tangent at block " << b << "; ";
        }
    }

    // synthetic twist round trip: radial coefficient 0.125 reads off as
    // gamma1 = 0.5 in the normal-form chart (x + iy)/2
    crl::PlanarMapJet jet;
    double g0 = 1.0, g1 = 0.125, c = std::cos(g0), s = std::sin(g0);
    auto push = [&](Multipointer a, double vx, double vy) {
        jet.blocks.push_back(std::move(a));
        jet.derivatives.push_back(IVector{Interval(vx), Interval(vy)});
    };
    push({1}, c, s);
    push({1, 1}, 0.0, 0.0);
    push({1, 1, 1}, -6.0 * g1 * s, 6.0 * g1 * c);
    push({1, 1, 2}, -2.0 * g1 * c, -2.0 * g1 * s);
    push({1, 2}, 0.0, 0.0);
    push({1, 2, 2}, -2.0 * g1 * s, 2.0 * g1 * c);
    push({2}, -s, c);
    push({2, 2}, 0.0, 0.0);
    push({2, 2, 2}, -6.0 * g1 * c, -6.0 * g1 * s);
    crl::NormalFormResult nf = crl::normal_form(jet);
    if (!nf.gamma1.contains(0.5) || nf.gamma1.diam() > 1e-8 || !nf.gamma0.contains(g0)) {
        ok = false;
        detail << "twist round trip off: [" << nf.gamma1.lo() << "," << nf.gamma1.hi() << "]; ";
    }

    report(6, "structural invariants", ok, detail.str());
}

// ---- criterion 7: wrapping-effect regression ------------------------------

double widthAfterRotation(bool naive) {
    VectorField f = VectorField::parse({"y", "-x"}, {"x", "y"}, {});
    LohnerOptions lo;
    lo.naive = naive;
    crl::CnLohner solver(f, {}, lo);
    solver.init(IVector{Interval(0.995, 1.005), Interval(-0.005, 0.005)}, {}, {});
    for (int i = 0; i < 100; ++i) solver.flow(Interval(0.1));
    IVector hull = solver.state().hull();
    return std::max(hull[0].diam(), hull[1].diam());
}

void criterion7() {
    const double w0 = 0.01;
    double tight = widthAfterRotation(false) / w0;
    double loose = widthAfterRotation(true) / w0;
    bool ok = tight < 5.0 && loose > 1e3;
    std::ostringstream detail;
    detail << "doubleton growth " << tight << "x, naive growth " << loose << "x";
    report(7, "wrapping-effect regression", ok, detail.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    return failures;
}
