#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crl/certify.hpp"

namespace {

std::vector<std::string> splitList(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        std::size_t b = item.find_first_not_of(" \t");
        std::size_t e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

std::vector<double> splitDoubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& t : splitList(s)) out.push_back(std::stod(t));
    return out;
}

crl::IVector toIVector(const std::vector<double>& v) {
    crl::IVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = crl::Interval(v[i]);
    return out;
}

crl::IVector pairedIntervals(const std::vector<double>& bounds) {
    if (bounds.size() % 2 != 0)
        throw CLI::ValidationError("--param", "expects pairs of lower and upper bounds");
    crl::IVector out(bounds.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (bounds[2 * i] > bounds[2 * i + 1])
            throw CLI::ValidationError("--param", "lower bound exceeds upper bound");
        out[i] = crl::Interval(bounds[2 * i], bounds[2 * i + 1]);
    }
    return out;
}

struct CommonFlags {
    int order = 3;
    std::string taylorOrders;
    double step = 0.05;
    double boxRadius = 1e-4;
    std::string norm = "inf";
    std::string report;
    int workers = 1;
};

void addCommon(CLI::App* cmd, CommonFlags& c) {
    cmd->add_option("--order", c.order, "derivative order carried by the rigorous runs");
    cmd->add_option("--taylor-order", c.taylorOrders,
                    "comma separated Taylor order per derivative level");
    cmd->add_option("--step", c.step, "initial integration step");
    cmd->add_option("--box-radius", c.boxRadius, "radius of the certification box");
    cmd->add_option("--norm", c.norm, "logarithmic norm for rough enclosures: 1, 2 or inf")
        ->check(CLI::IsMember({"1", "2", "inf"}));
    cmd->add_option("--report", c.report, "also write the report to this file");
    cmd->add_option("--workers", c.workers, "worker threads for the derivative kernels");
}

crl::CertifyOptions toOptions(const CommonFlags& c) {
    crl::CertifyOptions opt;
    opt.order = c.order;
    opt.step = c.step;
    opt.boxRadius = c.boxRadius;
    if (!c.taylorOrders.empty())
        for (double o : splitDoubles(c.taylorOrders)) opt.taylorOrders.push_back(static_cast<int>(o));
    opt.norm = c.norm == "1" ? crl::LogNorm::L1
             : c.norm == "2" ? crl::LogNorm::L2
                             : crl::LogNorm::LInf;
    return opt;
}

void applyWorkers(const CommonFlags& c) {
    crl::set_workers(c.workers);
    crl::set_parallel(c.workers > 1);
}

int emit(const std::string& text, const std::string& path) {
    std::cout << text;
    if (!path.empty()) {
        std::ofstream os(path);
        if (!os) {
            std::cerr << "cannot write report to " << path << "\n";
            return 2;
        }
        os << text;
    }
    return 0;
}

std::string describeBlocks(const std::vector<crl::Multipointer>& blocks,
                           const std::vector<crl::IVector>& values) {
    std::ostringstream os;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        os << "D(";
        for (std::size_t i = 0; i < blocks[b].size(); ++i)
            os << (i ? "," : "") << blocks[b][i];
        os << "): (";
        for (std::size_t i = 0; i < values[b].size(); ++i)
            os << (i ? ", " : "") << crl::to_string(values[b][i]);
        os << ")\n";
    }
    return os.str();
}

std::vector<crl::IVector> identitySeeds(const std::vector<crl::Multipointer>& blocks,
                                        std::size_t n) {
    std::vector<crl::IVector> seeds;
    for (const auto& a : blocks) {
        crl::IVector s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = crl::Interval(0.0);
        if (a.size() == 1) s[static_cast<std::size_t>(a[0] - 1)] = crl::Interval(1.0);
        seeds.push_back(s);
    }
    return seeds;
}

crl::LohnerOptions lohnerOptionsOf(const crl::CertifyOptions& opt) {
    crl::LohnerOptions lo;
    lo.orders = opt.taylorOrders;
    lo.norm = opt.norm;
    return lo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rigorous flow derivatives, return maps and twist certificates"};
    app.set_config("--config", "", "key-value file mirroring the flags");
    app.require_subcommand(1);

    std::string field, vars, pars, x0s, sections, guesss, charts, jetPath, forcing = "single";
    std::vector<double> paramBounds;
    double timeT = 1.0, offset = 0.0;
    int steps = 1;

    CommonFlags ci;
    CLI::App* integrate = app.add_subcommand("integrate", "enclose the flow and its derivatives");
    integrate->configurable();
    integrate->add_option("--field", field, "comma separated right-hand sides")->required();
    integrate->add_option("--vars", vars, "comma separated variable names")->required();
    integrate->add_option("--pars", pars, "comma separated parameter names");
    integrate->add_option("--param", paramBounds, "parameter interval bounds: lo hi per parameter");
    integrate->add_option("--x0", x0s, "initial point, comma separated")->required();
    integrate->add_option("--time", timeT, "integration time");
    integrate->add_option("--steps", steps, "number of equal steps covering the time");
    addCommon(integrate, ci);

    CommonFlags cp;
    CLI::App* poincare = app.add_subcommand("poincare", "first return map to an affine section");
    poincare->configurable();
    poincare->add_option("--field", field)->required();
    poincare->add_option("--vars", vars)->required();
    poincare->add_option("--pars", pars);
    poincare->add_option("--param", paramBounds);
    poincare->add_option("--x0", x0s)->required();
    poincare->add_option("--section", sections, "section normal, comma separated")->required();
    poincare->add_option("--offset", offset, "section offset");
    addCommon(poincare, cp);

    CommonFlags cn;
    CLI::App* normalform = app.add_subcommand("normalform", "third order normal form of a planar jet");
    normalform->configurable();
    normalform
        ->add_option("--jet", jetPath,
                     "text file, one derivative block per line: indices, colon, then lo hi "
                     "for each of the two components")
        ->required();
    addCommon(normalform, cn);

    CLI::App* certify = app.add_subcommand("certify", "end-to-end twist certification");
    certify->require_subcommand(1);
    certify->configurable();

    CommonFlags c1;
    CLI::App* pendulum = certify->add_subcommand("pendulum", "forced pendulum time map");
    pendulum->configurable();
    pendulum->add_option("--param", paramBounds, "omega interval: lo hi")->required();
    pendulum->add_option("--forcing", forcing, "single or double forcing term")
        ->check(CLI::IsMember({"single", "double"}));
    addCommon(pendulum, c1);

    CommonFlags c2;
    CLI::App* michelson = certify->add_subcommand("michelson", "Michelson symmetric orbit");
    michelson->configurable();
    michelson->add_option("--param", paramBounds, "c interval: lo hi")->required();
    addCommon(michelson, c2);

    CommonFlags c3;
    CLI::App* custom = certify->add_subcommand("custom", "user supplied return map");
    custom->configurable();
    custom->add_option("--field", field)->required();
    custom->add_option("--vars", vars)->required();
    custom->add_option("--pars", pars);
    custom->add_option("--param", paramBounds);
    custom->add_option("--section", sections)->required();
    custom->add_option("--offset", offset);
    custom->add_option("--guess", guesss, "approximate fixed point on the section")->required();
    custom->add_option("--chart", charts, "two coordinate indices spanning the section, 0-based");
    addCommon(custom, c3);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*integrate) {
            applyWorkers(ci);
            crl::CertifyOptions opt = toOptions(ci);
            crl::VectorField f = crl::VectorField::parse(splitList(field), splitList(vars),
                                                         splitList(pars));
            crl::IVector x0 = toIVector(splitDoubles(x0s));
            auto blocks = crl::all_multipointers(static_cast<int>(x0.size()), ci.order);
            auto fd = crl::flow_derivatives(f, pairedIntervals(paramBounds), lohnerOptionsOf(opt),
                                            x0, blocks, identitySeeds(blocks, x0.size()),
                                            crl::Interval(timeT), steps);
            std::ostringstream os;
            os << "image: (";
            for (std::size_t i = 0; i < fd.image.size(); ++i)
                os << (i ? ", " : "") << crl::to_string(fd.image[i]);
            os << ")\n" << describeBlocks(blocks, fd.derivatives);
            return emit(os.str(), ci.report);
        }
        if (*poincare) {
            applyWorkers(cp);
            crl::CertifyOptions opt = toOptions(cp);
            crl::VectorField f = crl::VectorField::parse(splitList(field), splitList(vars),
                                                         splitList(pars));
            crl::IVector x0 = toIVector(splitDoubles(x0s));
            crl::AffineSection sec{toIVector(splitDoubles(sections)), crl::Interval(offset)};
            crl::PoincareMap pm(f, pairedIntervals(paramBounds), lohnerOptionsOf(opt), sec);
            auto blocks = crl::all_multipointers(static_cast<int>(x0.size()), cp.order);
            auto res = pm.compute(x0, blocks, identitySeeds(blocks, x0.size()), cp.step);
            std::ostringstream os;
            os << "return time: " << crl::to_string(res.returnTime) << "\nimage: (";
            for (std::size_t i = 0; i < res.image.size(); ++i)
                os << (i ? ", " : "") << crl::to_string(res.image[i]);
            os << ")\n" << describeBlocks(blocks, res.derivatives);
            return emit(os.str(), cp.report);
        }
        if (*normalform) {
            applyWorkers(cn);
            std::ifstream is(jetPath);
            if (!is) throw std::runtime_error("cannot open jet file " + jetPath);
            crl::PlanarMapJet jet;
            std::string line;
            while (std::getline(is, line)) {
                if (line.find_first_not_of(" \t") == std::string::npos) continue;
                std::size_t colon = line.find(':');
                if (colon == std::string::npos)
                    throw std::runtime_error("jet line without a colon: " + line);
                crl::Multipointer a;
                std::istringstream ls(line.substr(0, colon));
                int idx;
                while (ls >> idx) a.push_back(idx);
                double l1, h1, l2, h2;
                std::istringstream rs(line.substr(colon + 1));
                if (!(rs >> l1 >> h1 >> l2 >> h2))
                    throw std::runtime_error("jet line needs four bounds: " + line);
                jet.blocks.push_back(a);
                jet.derivatives.push_back(
                    crl::IVector{crl::Interval(l1, h1), crl::Interval(l2, h2)});
            }
            crl::NormalFormResult nf = crl::normal_form(jet);
            std::ostringstream os;
            os << "lambda: " << crl::to_string(nf.lambda.re()) << " + i "
               << crl::to_string(nf.lambda.im()) << "\n"
               << "gamma0: " << crl::to_string(nf.gamma0) << "\n"
               << "gamma1: " << crl::to_string(nf.gamma1) << "\n";
            return emit(os.str(), cn.report);
        }
        if (*pendulum) {
            applyWorkers(c1);
            crl::IVector p = pairedIntervals(paramBounds);
            auto rep = crl::certify_pendulum(
                p[0], forcing == "double" ? crl::Forcing::Double : crl::Forcing::Single,
                toOptions(c1));
            int rc = emit(rep.text(), c1.report);
            return rc != 0 ? rc : (rep.certified ? 0 : 1);
        }
        if (*michelson) {
            applyWorkers(c2);
            crl::IVector p = pairedIntervals(paramBounds);
            auto rep = crl::certify_michelson(p[0], toOptions(c2));
            int rc = emit(rep.text(), c2.report);
            return rc != 0 ? rc : (rep.certified ? 0 : 1);
        }
        if (*custom) {
            applyWorkers(c3);
            crl::CustomProblem prob;
            prob.components = splitList(field);
            prob.vars = splitList(vars);
            prob.params = splitList(pars);
            prob.paramValues = pairedIntervals(paramBounds);
            prob.sectionNormal = toIVector(splitDoubles(sections));
            prob.sectionOffset = crl::Interval(offset);
            for (double g : splitDoubles(guesss)) prob.guess.push_back(g);
            if (!charts.empty()) {
                auto cc = splitDoubles(charts);
                if (cc.size() != 2) throw std::runtime_error("--chart needs two indices");
                prob.chart = {static_cast<int>(cc[0]), static_cast<int>(cc[1])};
            }
            auto rep = crl::certify_custom(prob, toOptions(c3));
            int rc = emit(rep.text(), c3.report);
            return rc != 0 ? rc : (rep.certified ? 0 : 1);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
