#include "crl/certify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace crl {

void CertificationReport::note(std::string key, std::string value) {
    items.emplace_back(std::move(key), std::move(value));
}

std::string CertificationReport::verdict() const {
    return certified ? "VERDICT: certified" : "VERDICT: failed:" + failedStage;
}

std::string CertificationReport::text() const {
    std::ostringstream os;
    for (const auto& [k, v] : items) os << k << ": " << v << "\n";
    os << verdict() << "\n";
    return os.str();
}

namespace {

std::string str(const Interval& a) { return to_string(a); }

std::string str(const IVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

// ---- nonrigorous helpers ------------------------------------------------

std::vector<double> evalMid(const VectorField& f, const std::vector<double>& x,
                            const std::vector<double>& par) {
    IVector xi(x.size()), pi(par.size());
    for (std::size_t i = 0; i < x.size(); ++i) xi[i] = Interval(x[i]);
    for (std::size_t i = 0; i < par.size(); ++i) pi[i] = Interval(par[i]);
    IVector r = f.eval(xi, pi);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = r[i].mid();
    return out;
}

void rk4Step(const VectorField& f, std::vector<double>& x, const std::vector<double>& par,
             double h) {
    const std::size_t n = x.size();
    std::vector<double> k1 = evalMid(f, x, par), t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = x[i] + 0.5 * h * k1[i];
    std::vector<double> k2 = evalMid(f, t, par);
    for (std::size_t i = 0; i < n; ++i) t[i] = x[i] + 0.5 * h * k2[i];
    std::vector<double> k3 = evalMid(f, t, par);
    for (std::size_t i = 0; i < n; ++i) t[i] = x[i] + h * k3[i];
    std::vector<double> k4 = evalMid(f, t, par);
    for (std::size_t i = 0; i < n; ++i)
        x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

std::vector<std::string> pendulumComponents(Forcing forcing) {
    std::string acc = "-sin(x) + sin(w*t)";
    if (forcing == Forcing::Double) acc += " + sin(2*w*t)";
    return {"v", acc, "1"};
}

std::array<double, 2> pendulumTimeMap(const VectorField& f, double omega,
                                      const std::array<double, 2>& u) {
    double T = 2.0 * 3.14159265358979323846 / omega;
    int steps = std::max(400, static_cast<int>(std::ceil(T / 0.005)));
    std::vector<double> x{u[0], u[1], 0.0};
    double h = T / steps;
    for (int i = 0; i < steps; ++i) rk4Step(f, x, {omega}, h);
    return {x[0], x[1]};
}

// z coordinate of the first return to {x = 0} from (0, y, 0)
double michelsonShot(const VectorField& f, double c, double y) {
    std::vector<double> x{0.0, y, 0.0};
    const double h = 0.005;
    double prevX = 0.0, prevZ = 0.0;
    bool left = false;
    for (int i = 0; i < 2000000; ++i) {
        prevX = x[0];
        prevZ = x[2];
        rk4Step(f, x, {c}, h);
        if (!left) {
            if (std::fabs(x[0]) > 1e-4) left = true;
            continue;
        }
        if ((prevX > 0.0) != (x[0] > 0.0)) {
            double frac = prevX / (prevX - x[0]);
            return prevZ + frac * (x[2] - prevZ);
        }
    }
    throw std::runtime_error("nonrigorous orbit did not return to the section");
}

std::vector<double> michelsonCandidates(const VectorField& f, double c, double yLo, double yHi) {
    std::vector<double> roots;
    const int n = 300;
    double prevY = 0.0, prevG = 0.0;
    bool have = false;
    for (int i = 0; i <= n; ++i) {
        double y = yLo + (yHi - yLo) * i / n;
        double g;
        try {
            g = michelsonShot(f, c, y);
        } catch (const std::exception&) {
            have = false;
            continue;
        }
        if (have && (prevG > 0.0) != (g > 0.0)) {
            double a = prevY, b = y, ga = prevG;
            for (int it = 0; it < 60; ++it) {
                double m = 0.5 * (a + b);
                double gm = michelsonShot(f, c, m);
                if ((ga > 0.0) != (gm > 0.0))
                    b = m;
                else {
                    a = m;
                    ga = gm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prevY = y;
        prevG = g;
        have = true;
    }
    return roots;
}

std::vector<int> levelOrders(const CertifyOptions& opt, int r) {
    if (!opt.taylorOrders.empty()) {
        if (static_cast<int>(opt.taylorOrders.size()) < r + 1)
            throw std::invalid_argument("need a Taylor order for every derivative level");
        return opt.taylorOrders;
    }
    return default_orders(16, r);
}

std::vector<IVector> axisSeeds(const std::vector<Multipointer>& blocks, std::size_t n,
                               int dir1, int dir2) {
    std::vector<IVector> seeds;
    for (const auto& a : blocks) {
        IVector s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = Interval(0.0);
        if (a.size() == 1) s[static_cast<std::size_t>(a[0] == 1 ? dir1 : dir2)] = Interval(1.0);
        seeds.push_back(s);
    }
    return seeds;
}

IVector project2(const IVector& v, int i, int j) {
    return IVector{v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]};
}

// interval Newton operator for the planar map P - Id around the point u
IVector newtonOperator(const std::array<double, 2>& u, const IVector& pMid,
                       const std::vector<IVector>& dpCols) {
    IMatrix dg(2, 2);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i)
            dg(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                dpCols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -
                Interval(i == j ? 1.0 : 0.0);
    IVector g{pMid[0] - Interval(u[0]), pMid[1] - Interval(u[1])};
    IVector sol = solve2(dg, g);
    return IVector{Interval(u[0]) - sol[0], Interval(u[1]) - sol[1]};
}

bool insideInterior(const IVector& inner, const IVector& outer) {
    for (std::size_t i = 0; i < inner.size(); ++i)
        if (!inner[i].interiorSubsetOf(outer[i])) return false;
    return true;
}

}  // namespace

std::array<double, 2> approx_pendulum_fixed_point(double omega, Forcing forcing) {
    VectorField f = VectorField::parse(pendulumComponents(forcing), {"x", "v", "t"}, {"w"});
    const std::array<double, 2> starts[] = {
        {0.0, 0.0}, {0.0, -0.5}, {0.0, 0.5}, {0.5, 0.0}, {-0.5, 0.0}};
    for (const auto& s : starts) {
        std::array<double, 2> u = s;
        bool ok = false;
        for (int it = 0; it < 50; ++it) {
            std::array<double, 2> pu = pendulumTimeMap(f, omega, u);
            double g0 = pu[0] - u[0], g1 = pu[1] - u[1];
            if (std::fabs(g0) + std::fabs(g1) < 1e-12) {
                ok = true;
                break;
            }
            const double d = 1e-6;
            std::array<double, 2> px = pendulumTimeMap(f, omega, {u[0] + d, u[1]});
            std::array<double, 2> py = pendulumTimeMap(f, omega, {u[0], u[1] + d});
            double a = (px[0] - pu[0]) / d - 1.0, b = (py[0] - pu[0]) / d;
            double c = (px[1] - pu[1]) / d, e = (py[1] - pu[1]) / d - 1.0;
            double det = a * e - b * c;
            if (std::fabs(det) < 1e-14) break;
            u[0] -= (e * g0 - b * g1) / det;
            u[1] -= (-c * g0 + a * g1) / det;
            if (!(std::isfinite(u[0]) && std::isfinite(u[1]))) break;
        }
        if (ok) return u;
    }
    throw std::runtime_error("nonrigorous Newton did not locate a fixed point");
}

double approx_michelson_orbit(double c, double yLo, double yHi) {
    VectorField f = VectorField::parse({"y", "z", "c^2 - y - x^2/2"}, {"x", "y", "z"}, {"c"});
    auto roots = michelsonCandidates(f, c, yLo, yHi);
    if (roots.empty()) throw std::runtime_error("no symmetric orbit candidate in the scan range");
    return roots.front();
}

std::vector<IVector> compose_jets(const std::vector<Multipointer>& blocks,
                                  const std::vector<IVector>& outer,
                                  const std::vector<IVector>& inner) {
    std::map<Multipointer, int> idx;
    for (std::size_t b = 0; b < blocks.size(); ++b) idx[blocks[b]] = static_cast<int>(b);
    std::vector<IVector> out(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const Multipointer& a = blocks[b];
        const int p = static_cast<int>(a.size());
        IVector acc{Interval(0.0), Interval(0.0)};
        for (int k = 1; k <= p; ++k) {
            for (const PartitionTuple& delta : partitions(p, k)) {
                std::vector<int> tuple(static_cast<std::size_t>(k), 0);
                while (true) {
                    Multipointer mp;
                    Interval prod(1.0);
                    for (int j = 0; j < k; ++j) {
                        int comp = tuple[static_cast<std::size_t>(j)];
                        mp.push_back(comp + 1);
                        int fb = idx.at(submultipointer(a, delta[static_cast<std::size_t>(j)]));
                        prod = prod * inner[static_cast<std::size_t>(fb)][static_cast<std::size_t>(comp)];
                    }
                    std::sort(mp.begin(), mp.end());
                    const IVector& ob = outer[static_cast<std::size_t>(idx.at(mp))];
                    for (std::size_t i = 0; i < 2; ++i) acc[i] += ob[i] * prod;
                    int j = k - 1;
                    while (j >= 0 && tuple[static_cast<std::size_t>(j)] == 1) --j;
                    if (j < 0) break;
                    ++tuple[static_cast<std::size_t>(j)];
                    for (int l = j + 1; l < k; ++l) tuple[static_cast<std::size_t>(l)] = 0;
                }
            }
        }
        out[b] = acc;
    }
    return out;
}

CertificationReport certify_pendulum(const Interval& omega, Forcing forcing,
                                     const CertifyOptions& opt) {
    CertificationReport rep;
    std::string stage = "setup";
    try {
        rep.note("system", forcing == Forcing::Single ? "forced pendulum"
                                                      : "forced pendulum, double forcing");
        rep.note("omega", str(omega));
        VectorField f = VectorField::parse(pendulumComponents(forcing), {"x", "v", "t"}, {"w"});
        Interval T = two_pi() / omega;
        int steps = std::max(1, static_cast<int>(std::ceil(T.hi() / opt.step)));

        stage = "approximate-fixed-point";
        std::array<double, 2> u = approx_pendulum_fixed_point(omega.mid(), forcing);
        rep.note("approximate fixed point",
                 "(" + std::to_string(u[0]) + ", " + std::to_string(u[1]) + ")");

        stage = "interval-newton";
        LohnerOptions lo1;
        lo1.orders = levelOrders(opt, 1);
        lo1.norm = opt.norm;
        std::vector<Multipointer> b1{{1}, {2}};
        std::vector<IVector> s1 = axisSeeds(b1, 3, 0, 1);
        IVector par{omega};
        IVector thin{Interval(u[0]), Interval(u[1]), Interval(0.0)};
        FlowDerivatives mid = flow_derivatives(f, par, lo1, thin, b1, s1, T, steps);
        double eps = opt.boxRadius;
        IVector box{Interval(u[0] - eps, u[0] + eps), Interval(u[1] - eps, u[1] + eps),
                    Interval(0.0)};
        FlowDerivatives over = flow_derivatives(f, par, lo1, box, b1, s1, T, steps);
        std::vector<IVector> cols{project2(over.derivatives[0], 0, 1),
                                  project2(over.derivatives[1], 0, 1)};
        IVector nbox = newtonOperator(u, project2(mid.image, 0, 1), cols);
        rep.newton = nbox;
        rep.note("interval Newton image", str(nbox));
        if (!insideInterior(nbox, IVector{box[0], box[1]}))
            throw std::runtime_error("the Newton image is not inside the candidate box");

        stage = "derivative-enclosures";
        LohnerOptions lor;
        lor.orders = levelOrders(opt, opt.order);
        lor.norm = opt.norm;
        auto blocks = all_multipointers(2, opt.order);
        auto seeds = axisSeeds(blocks, 3, 0, 1);
        IVector x0{nbox[0], nbox[1], Interval(0.0)};
        FlowDerivatives jet = flow_derivatives(f, par, lor, x0, blocks, seeds, T, steps);
        PlanarMapJet pj;
        pj.blocks = blocks;
        for (const auto& dv : jet.derivatives) pj.derivatives.push_back(project2(dv, 0, 1));
        auto col = [&](int j) {
            for (std::size_t b = 0; b < blocks.size(); ++b)
                if (blocks[b] == Multipointer{j}) return pj.derivatives[b];
            throw std::logic_error("missing first order block");
        };
        IVector c1v = col(1), c2v = col(2);
        rep.note("det DP", str(c1v[0] * c2v[1] - c2v[0] * c1v[1]));
        rep.note("map image", str(project2(jet.image, 0, 1)));

        stage = "normal-form";
        NormalFormResult nf = normal_form(pj);
        rep.gamma0 = nf.gamma0;
        rep.gamma1 = nf.gamma1;
        rep.note("lambda", str(nf.lambda.re()) + " + i " + str(nf.lambda.im()));
        rep.note("gamma0", str(nf.gamma0));
        rep.note("gamma1", str(nf.gamma1));

        stage = "twist";
        if (forcing == Forcing::Single && nf.gamma1.contains(0.0))
            throw std::runtime_error("the twist coefficient encloses zero");
        rep.certified = true;
    } catch (const std::exception& e) {
        rep.failedStage = stage;
        rep.note("error", e.what());
    }
    return rep;
}

CertificationReport certify_michelson(const Interval& c, const CertifyOptions& opt) {
    CertificationReport rep;
    rep.note("system", "Michelson");
    rep.note("c", str(c));
    VectorField f = VectorField::parse({"y", "z", "c^2 - y - x^2/2"}, {"x", "y", "z"}, {"c"});
    AffineSection sec{IVector{Interval(1.0), Interval(0.0), Interval(0.0)}, Interval(0.0)};

    std::vector<double> roots;
    try {
        roots = michelsonCandidates(f, c.mid(), 1e-3, 1.5);
        if (roots.empty())
            throw std::runtime_error("no symmetric orbit candidate in the scan range");
    } catch (const std::exception& e) {
        rep.failedStage = "approximate-orbit";
        rep.note("error", e.what());
        return rep;
    }

    CertificationReport last;
    for (double y : roots) {
        CertificationReport r = rep;
        std::string stage = "symmetric-shooting";
        try {
            r.note("approximate orbit through", "(0, " + std::to_string(y) + ", 0)");
            IVector par{c};

            LohnerOptions lo1;
            lo1.orders = levelOrders(opt, 1);
            lo1.norm = opt.norm;
            PoincareMap pmThin(f, par, lo1, sec);
            auto z = [&](double yv) {
                IVector u{Interval(0.0), Interval(yv), Interval(0.0)};
                return pmThin.compute(u, {}, {}, opt.step).image[2];
            };
            // the twist enclosure tightens with the box radius, so take the
            // smallest one at which the shooting argument still decides signs
            double eps = std::min(opt.boxRadius, 1e-8);
            bool straddles = false;
            Interval z1, z2;
            for (; eps <= opt.boxRadius * 1.0001; eps *= 10.0) {
                z1 = z(y - eps);
                z2 = z(y + eps);
                if ((z1 * z2).hi() < 0.0) {
                    straddles = true;
                    break;
                }
            }
            r.note("box radius", str(Interval(eps)));
            r.note("shooting images (z)", str(z1) + ", " + str(z2));
            if (!straddles)
                throw std::runtime_error("the shooting images do not straddle Fix(R)");

            stage = "derivative-enclosures";
            LohnerOptions lor;
            lor.orders = levelOrders(opt, opt.order);
            lor.norm = opt.norm;
            auto blocks = all_multipointers(2, opt.order);
            auto seeds = axisSeeds(blocks, 3, 1, 2);
            PoincareMap pm(f, par, lor, sec);
            IVector n0{Interval(0.0), Interval(y - eps, y + eps), Interval(0.0)};
            PoincareResult half = pm.compute(n0, blocks, seeds, opt.step);
            r.note("half map image", str(project2(half.image, 1, 2)));
            // second half map over the image enclosure; the jets of the two
            // halves are then chained with the composition formula
            PoincareResult second = pm.compute(half.image, blocks, seeds, opt.step);
            r.note("second return image", str(project2(second.image, 1, 2)));
            r.note("return times", str(half.returnTime) + ", " + str(second.returnTime));

            std::vector<IVector> inner, outer;
            for (const auto& dv : half.derivatives) inner.push_back(project2(dv, 1, 2));
            for (const auto& dv : second.derivatives) outer.push_back(project2(dv, 1, 2));
            PlanarMapJet pj;
            pj.blocks = blocks;
            pj.derivatives = compose_jets(blocks, outer, inner);

            stage = "normal-form";
            NormalFormResult nf = normal_form(pj);
            r.gamma0 = nf.gamma0;
            r.gamma1 = nf.gamma1;
            r.note("lambda", str(nf.lambda.re()) + " + i " + str(nf.lambda.im()));
            r.note("gamma0", str(nf.gamma0));
            r.note("gamma1", str(nf.gamma1));

            stage = "twist";
            if (nf.gamma1.contains(0.0))
                throw std::runtime_error("the twist coefficient encloses zero");
            r.certified = true;
            return r;
        } catch (const std::exception& e) {
            r.failedStage = stage;
            r.note("error", e.what());
            last = r;
        }
    }
    return last;
}

CertificationReport certify_custom(const CustomProblem& prob, const CertifyOptions& opt) {
    CertificationReport rep;
    std::string stage = "setup";
    try {
        rep.note("system", "custom");
        VectorField f = VectorField::parse(prob.components, prob.vars, prob.params);
        AffineSection sec{prob.sectionNormal, prob.sectionOffset};
        const std::size_t n = prob.vars.size();
        const int c0 = prob.chart[0], c1 = prob.chart[1];
        std::array<double, 2> u{prob.guess[static_cast<std::size_t>(c0)],
                                prob.guess[static_cast<std::size_t>(c1)]};
        auto ambient = [&](const Interval& a, const Interval& b) {
            IVector x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = Interval(prob.guess[i]);
            x[static_cast<std::size_t>(c0)] = a;
            x[static_cast<std::size_t>(c1)] = b;
            return x;
        };

        stage = "interval-newton";
        LohnerOptions lo1;
        lo1.orders = levelOrders(opt, 1);
        lo1.norm = opt.norm;
        std::vector<Multipointer> b1{{1}, {2}};
        auto s1 = axisSeeds(b1, n, c0, c1);
        PoincareMap pm1(f, prob.paramValues, lo1, sec);
        PoincareResult mid = pm1.compute(ambient(Interval(u[0]), Interval(u[1])), b1, s1, opt.step);
        double eps = opt.boxRadius;
        Interval bx(u[0] - eps, u[0] + eps), by(u[1] - eps, u[1] + eps);
        PoincareResult over = pm1.compute(ambient(bx, by), b1, s1, opt.step);
        std::vector<IVector> cols{project2(over.derivatives[0], c0, c1),
                                  project2(over.derivatives[1], c0, c1)};
        IVector nbox = newtonOperator(u, project2(mid.image, c0, c1), cols);
        rep.newton = nbox;
        rep.note("interval Newton image", str(nbox));
        if (!insideInterior(nbox, IVector{bx, by}))
            throw std::runtime_error("the Newton image is not inside the candidate box");

        stage = "derivative-enclosures";
        LohnerOptions lor;
        lor.orders = levelOrders(opt, opt.order);
        lor.norm = opt.norm;
        auto blocks = all_multipointers(2, opt.order);
        auto seeds = axisSeeds(blocks, n, c0, c1);
        PoincareMap pm(f, prob.paramValues, lor, sec);
        PoincareResult jet = pm.compute(ambient(nbox[0], nbox[1]), blocks, seeds, opt.step);
        rep.note("map image", str(project2(jet.image, c0, c1)));
        PlanarMapJet pj;
        pj.blocks = blocks;
        for (const auto& dv : jet.derivatives) pj.derivatives.push_back(project2(dv, c0, c1));

        stage = "normal-form";
        NormalFormResult nf = normal_form(pj);
        rep.gamma0 = nf.gamma0;
        rep.gamma1 = nf.gamma1;
        rep.note("gamma0", str(nf.gamma0));
        rep.note("gamma1", str(nf.gamma1));

        stage = "twist";
        if (nf.gamma1.contains(0.0))
            throw std::runtime_error("the twist coefficient encloses zero");
        rep.certified = true;
    } catch (const std::exception& e) {
        rep.failedStage = stage;
        rep.note("error", e.what());
    }
    return rep;
}

}  // namespace crl
