#include "crl/vectorfield.hpp"

#include <cctype>
#include <stdexcept>

#ifdef CRL_HAVE_OPENMP
#include <omp.h>
#endif

namespace crl {

namespace {
bool g_parallel = false;
}

void set_parallel(bool on) { g_parallel = on; }
bool parallel_enabled() { return g_parallel; }

void set_workers(int k) {
#ifdef CRL_HAVE_OPENMP
    if (k > 0) omp_set_num_threads(k);
#else
    (void)k;
#endif
}

VectorField::VectorField(int dim, int params)
    : dim_(dim), params_(params), components_(dim, -1), partials_(dim) {}

int VectorField::intern(NodeKind kind, int a, int b, double value, int index) {
    auto key = std::make_tuple(static_cast<int>(kind), a, b, value, index);
    auto it = interned_.find(key);
    if (it != interned_.end()) return it->second;
    Node n;
    n.kind = kind;
    n.a = a;
    n.b = b;
    n.value = value;
    n.index = index;
    nodes_.push_back(n);
    int id = static_cast<int>(nodes_.size()) - 1;
    interned_.emplace(key, id);
    return id;
}

int VectorField::var(int i) {
    if (i < 0 || i >= dim_) throw std::out_of_range("variable index");
    return intern(NodeKind::Var, -1, -1, 0.0, i);
}

int VectorField::param(int i) {
    if (i < 0 || i >= params_) throw std::out_of_range("parameter index");
    return intern(NodeKind::Param, -1, -1, 0.0, i);
}

int VectorField::constant(double c) { return intern(NodeKind::Const, -1, -1, c, -1); }

#define CRL_IS_CONST(id, v) (nodes_[id].kind == NodeKind::Const && nodes_[id].value == (v))

int VectorField::add(int a, int b) {
    if (CRL_IS_CONST(a, 0.0)) return b;
    if (CRL_IS_CONST(b, 0.0)) return a;
    return intern(NodeKind::Add, a, b, 0.0, -1);
}

int VectorField::sub(int a, int b) {
    if (a == b) return constant(0.0);
    if (CRL_IS_CONST(b, 0.0)) return a;
    if (CRL_IS_CONST(a, 0.0)) return neg(b);
    return intern(NodeKind::Sub, a, b, 0.0, -1);
}

int VectorField::mul(int a, int b) {
    if (CRL_IS_CONST(a, 0.0) || CRL_IS_CONST(b, 0.0)) return constant(0.0);
    if (CRL_IS_CONST(a, 1.0)) return b;
    if (CRL_IS_CONST(b, 1.0)) return a;
    if (a == b) return sqrNode(a);
    return intern(NodeKind::Mul, a, b, 0.0, -1);
}

int VectorField::div(int a, int b) {
    if (CRL_IS_CONST(a, 0.0)) return a;
    if (CRL_IS_CONST(b, 1.0)) return a;
    return intern(NodeKind::Div, a, b, 0.0, -1);
}

int VectorField::neg(int a) {
    if (nodes_[a].kind == NodeKind::Neg) return nodes_[a].a;
    if (CRL_IS_CONST(a, 0.0)) return a;
    return intern(NodeKind::Neg, a, -1, 0.0, -1);
}

#undef CRL_IS_CONST

int VectorField::sinNode(int a) {
    int s = intern(NodeKind::Sin, a, -1, 0.0, -1);
    int c = intern(NodeKind::Cos, a, -1, 0.0, -1);
    nodes_[s].b = c;  // partner links used by the series recurrences
    nodes_[c].b = s;
    return s;
}

int VectorField::cosNode(int a) {
    sinNode(a);
    return intern(NodeKind::Cos, a, -1, 0.0, -1);
}

int VectorField::expNode(int a) { return intern(NodeKind::Exp, a, -1, 0.0, -1); }
int VectorField::sqrtNode(int a) { return intern(NodeKind::Sqrt, a, -1, 0.0, -1); }
int VectorField::sqrNode(int a) { return intern(NodeKind::Sqr, a, -1, 0.0, -1); }

int VectorField::powNode(int a, int k) {
    if (k < 0) return div(constant(1.0), powNode(a, -k));
    if (k == 0) return constant(1.0);
    if (k == 1) return a;
    int half = powNode(a, k / 2);
    int sq = sqrNode(half);
    return (k % 2 == 0) ? sq : mul(sq, a);
}

void VectorField::setComponent(int i, int expr) {
    components_.at(static_cast<std::size_t>(i)) = expr;
}

int VectorField::diff(int node, int v) {
    auto key = std::make_pair(node, v);
    auto it = diffCache_.find(key);
    if (it != diffCache_.end()) return it->second;
    const Node n = nodes_[node];
    int r;
    switch (n.kind) {
        case NodeKind::Var: r = constant(n.index == v ? 1.0 : 0.0); break;
        case NodeKind::Param:
        case NodeKind::Const: r = constant(0.0); break;
        case NodeKind::Add: r = add(diff(n.a, v), diff(n.b, v)); break;
        case NodeKind::Sub: r = sub(diff(n.a, v), diff(n.b, v)); break;
        case NodeKind::Neg: r = neg(diff(n.a, v)); break;
        case NodeKind::Mul:
            r = add(mul(diff(n.a, v), n.b), mul(n.a, diff(n.b, v)));
            break;
        case NodeKind::Div:
            // d(a/b) = (da - (a/b) db) / b
            r = div(sub(diff(n.a, v), mul(node, diff(n.b, v))), n.b);
            break;
        case NodeKind::Sin: r = mul(cosNode(n.a), diff(n.a, v)); break;
        case NodeKind::Cos: r = neg(mul(sinNode(n.a), diff(n.a, v))); break;
        case NodeKind::Exp: r = mul(node, diff(n.a, v)); break;
        case NodeKind::Sqrt: r = div(diff(n.a, v), mul(constant(2.0), node)); break;
        case NodeKind::Sqr: r = mul(constant(2.0), mul(n.a, diff(n.a, v))); break;
        default: throw std::logic_error("unknown node kind");
    }
    diffCache_.emplace(key, r);
    return r;
}

void VectorField::prepare(int r) {
    for (int i = 0; i < dim_; ++i)
        if (components_[i] < 0) throw std::logic_error("vector field component not set");
    for (int i = 0; i < dim_; ++i) {
        Multiindex zero(static_cast<std::size_t>(dim_), 0);
        partials_[i][zero] = components_[i];
    }
    for (int order = 1; order <= r; ++order) {
        for (const Multipointer& a : all_multipointers(dim_, order)) {
            if (static_cast<int>(a.size()) != order) continue;
            Multiindex beta = lambda(a, dim_);
            int v = a[0] - 1;
            Multiindex prev = beta;
            --prev[static_cast<std::size_t>(v)];
            for (int i = 0; i < dim_; ++i) {
                if (partials_[i].count(beta)) continue;
                partials_[i][beta] = diff(partials_[i].at(prev), v);
            }
        }
    }
    if (r > prepared_) prepared_ = r;
}

// --- series sweep over the DAG --------------------------------------------

struct TapeRunner {
    const VectorField& f;
    int N;
    std::vector<std::vector<Interval>> coeff;  // coeff[node][k]
    std::vector<char> active;

    TapeRunner(const VectorField& vf, const std::vector<int>& roots, int order)
        : f(vf), N(order), coeff(vf.nodes_.size(), std::vector<Interval>(order + 1)),
          active(vf.nodes_.size(), 0) {
        std::vector<int> stack(roots);
        while (!stack.empty()) {
            int id = stack.back();
            stack.pop_back();
            if (active[static_cast<std::size_t>(id)]) continue;
            active[static_cast<std::size_t>(id)] = 1;
            const auto& n = f.nodes_[static_cast<std::size_t>(id)];
            if (n.a >= 0) stack.push_back(n.a);
            // partner links of sin/cos must stay active together
            if (n.b >= 0) stack.push_back(n.b);
        }
    }

    void setVar(int i, int k, const Interval& v) {
        int id = f.varNode(i);
        if (id < 0) return;  // the field does not reference this variable
        coeff[static_cast<std::size_t>(id)][static_cast<std::size_t>(k)] = v;
    }

    const std::vector<Interval>& series(int node) const {
        return coeff[static_cast<std::size_t>(node)];
    }

    void computeLevel(int k, const IVector& par) {
        const std::size_t ku = static_cast<std::size_t>(k);
        for (std::size_t id = 0; id < f.nodes_.size(); ++id) {
            if (!active[id]) continue;
            const auto& n = f.nodes_[id];
            auto& c = coeff[id];
            const std::vector<Interval>* A = n.a >= 0 ? &coeff[static_cast<std::size_t>(n.a)] : nullptr;
            const std::vector<Interval>* B = n.b >= 0 ? &coeff[static_cast<std::size_t>(n.b)] : nullptr;
            switch (n.kind) {
                case NodeKind::Var: break;  // set externally
                case NodeKind::Param:
                    c[ku] = k == 0 ? par[static_cast<std::size_t>(n.index)] : Interval(0.0);
                    break;
                case NodeKind::Const: c[ku] = k == 0 ? Interval(n.value) : Interval(0.0); break;
                case NodeKind::Add: c[ku] = (*A)[ku] + (*B)[ku]; break;
                case NodeKind::Sub: c[ku] = (*A)[ku] - (*B)[ku]; break;
                case NodeKind::Neg: c[ku] = -(*A)[ku]; break;
                case NodeKind::Mul: {
                    Interval s(0.0);
                    for (int j = 0; j <= k; ++j)
                        s += (*A)[static_cast<std::size_t>(j)] * (*B)[static_cast<std::size_t>(k - j)];
                    c[ku] = s;
                    break;
                }
                case NodeKind::Sqr: {
                    Interval s(0.0);
                    for (int j = 0; j <= k; ++j)
                        s += (*A)[static_cast<std::size_t>(j)] * (*A)[static_cast<std::size_t>(k - j)];
                    c[ku] = s;
                    break;
                }
                case NodeKind::Div: {
                    Interval s = (*A)[ku];
                    for (int j = 0; j < k; ++j)
                        s -= c[static_cast<std::size_t>(j)] * (*B)[static_cast<std::size_t>(k - j)];
                    c[ku] = s / (*B)[0];
                    break;
                }
                case NodeKind::Exp: {
                    if (k == 0) {
                        c[0] = exp((*A)[0]);
                    } else {
                        Interval s(0.0);
                        for (int j = 1; j <= k; ++j)
                            s += Interval(static_cast<double>(j)) * (*A)[static_cast<std::size_t>(j)] *
                                 c[static_cast<std::size_t>(k - j)];
                        c[ku] = s / Interval(static_cast<double>(k));
                    }
                    break;
                }
                case NodeKind::Sin: {
                    if (k == 0) {
                        c[0] = sin((*A)[0]);
                    } else {
                        Interval s(0.0);
                        for (int j = 1; j <= k; ++j)
                            s += Interval(static_cast<double>(j)) * (*A)[static_cast<std::size_t>(j)] *
                                 (*B)[static_cast<std::size_t>(k - j)];
                        c[ku] = s / Interval(static_cast<double>(k));
                    }
                    break;
                }
                case NodeKind::Cos: {
                    if (k == 0) {
                        c[0] = cos((*A)[0]);
                    } else {
                        Interval s(0.0);
                        for (int j = 1; j <= k; ++j)
                            s += Interval(static_cast<double>(j)) * (*A)[static_cast<std::size_t>(j)] *
                                 (*B)[static_cast<std::size_t>(k - j)];
                        c[ku] = -(s / Interval(static_cast<double>(k)));
                    }
                    break;
                }
                case NodeKind::Sqrt: {
                    if (k == 0) {
                        c[0] = sqrt((*A)[0]);
                    } else {
                        Interval s = (*A)[ku];
                        for (int j = 1; j < k; ++j)
                            s -= c[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(k - j)];
                        c[ku] = s / (Interval(2.0) * c[0]);
                    }
                    break;
                }
            }
        }
    }
};

// Var node lookup that does not create nodes behind a running sweep.
int VectorField::varNode(int i) const {
    auto key = std::make_tuple(static_cast<int>(NodeKind::Var), -1, -1, 0.0, i);
    auto it = interned_.find(key);
    if (it == interned_.end()) return -1;
    return it->second;
}

IVector VectorField::eval(const IVector& x, const IVector& par) const {
    TapeRunner run(*this, components_, 0);
    for (int i = 0; i < dim_; ++i) run.setVar(i, 0, x[static_cast<std::size_t>(i)]);
    run.computeLevel(0, par);
    IVector out(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i)
        out[static_cast<std::size_t>(i)] = run.series(components_[static_cast<std::size_t>(i)])[0];
    return out;
}

Interval VectorField::evalPartial(int component, const Multiindex& beta, const IVector& x,
                                  const IVector& par) const {
    int node = partials_[static_cast<std::size_t>(component)].at(beta);
    TapeRunner run(*this, {node}, 0);
    for (int i = 0; i < dim_; ++i) run.setVar(i, 0, x[static_cast<std::size_t>(i)]);
    run.computeLevel(0, par);
    return run.series(node)[0];
}

std::vector<std::map<Multiindex, Interval>> VectorField::evalPartials(int r, const IVector& x,
                                                                      const IVector& par) const {
    if (prepared_ < r) throw std::logic_error("vector field not prepared to this order");
    const std::size_t n = static_cast<std::size_t>(dim_);
    std::vector<int> roots;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [beta, node] : partials_[i])
            if (multiindex_order(beta) <= r) roots.push_back(node);
    TapeRunner run(*this, roots, 0);
    for (int i = 0; i < dim_; ++i) run.setVar(i, 0, x[static_cast<std::size_t>(i)]);
    run.computeLevel(0, par);
    std::vector<std::map<Multiindex, Interval>> out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [beta, node] : partials_[i])
            if (multiindex_order(beta) <= r) out[i][beta] = run.series(node)[0];
    return out;
}

IMatrix VectorField::jacobian(const IVector& x, const IVector& par) const {
    std::vector<int> roots;
    const std::size_t n = static_cast<std::size_t>(dim_);
    std::vector<std::vector<int>> ids(n, std::vector<int>(n));
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {
            Multiindex beta(n, 0);
            beta[static_cast<std::size_t>(j)] = 1;
            ids[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                partials_[static_cast<std::size_t>(i)].at(beta);
            roots.push_back(ids[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
    }
    TapeRunner run(*this, roots, 0);
    for (int i = 0; i < dim_; ++i) run.setVar(i, 0, x[static_cast<std::size_t>(i)]);
    run.computeLevel(0, par);
    IMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = run.series(ids[i][j])[0];
    return out;
}

std::vector<IVector> ode_jet(const VectorField& f, const IVector& x0, const IVector& par, int N) {
    std::vector<int> roots;
    for (int i = 0; i < f.dim(); ++i) roots.push_back(f.componentNode(i));
    TapeRunner run(f, roots, N);
    std::vector<IVector> out(static_cast<std::size_t>(N) + 1,
                             IVector(static_cast<std::size_t>(f.dim())));
    out[0] = x0;
    for (int k = 0; k <= N; ++k) {
        for (int i = 0; i < f.dim(); ++i)
            run.setVar(i, k, out[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]);
        run.computeLevel(k, par);
        if (k == N) break;
        for (int i = 0; i < f.dim(); ++i)
            out[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(i)] =
                run.series(f.componentNode(i))[static_cast<std::size_t>(k)] /
                Interval(static_cast<double>(k + 1));
    }
    return out;
}

namespace {

// one product term of a variational right-hand side:
// D^beta f_i (phi(t)) * prod_j (V_{block factors[j]})_{comp[j]}
struct VarTerm {
    Multiindex beta;
    std::vector<int> factorBlock;
    std::vector<int> factorComp;
};

// coefficient k of the product of the partial series and the factor series
Interval productCoeff(const std::vector<Interval>& head,
                      const std::vector<const std::vector<IVector>*>& factors,
                      const std::vector<int>& comps, int k) {
    std::vector<Interval> conv(head.begin(), head.begin() + k + 1);
    std::vector<Interval> next(static_cast<std::size_t>(k) + 1);
    for (std::size_t fidx = 0; fidx < factors.size(); ++fidx) {
        const auto& blockSeries = *factors[fidx];
        const std::size_t ci = static_cast<std::size_t>(comps[fidx]);
        for (int m = 0; m <= k; ++m) {
            Interval s(0.0);
            for (int j = 0; j <= m; ++j)
                s += conv[static_cast<std::size_t>(j)] *
                     blockSeries[static_cast<std::size_t>(m - j)][ci];
            next[static_cast<std::size_t>(m)] = s;
        }
        conv.swap(next);
    }
    return conv[static_cast<std::size_t>(k)];
}

}  // namespace

VariationalJet variational_jet(const VectorField& f, const IVector& x0, const IVector& par,
                               const std::vector<Multipointer>& blocks,
                               const std::vector<IVector>& seeds, int N) {
    const int n = f.dim();
    const std::size_t nb = blocks.size();
    int r = 0;
    std::map<Multipointer, int> blockIdx;
    for (std::size_t b = 0; b < nb; ++b) {
        blockIdx[blocks[b]] = static_cast<int>(b);
        r = std::max(r, static_cast<int>(blocks[b].size()));
    }
    if (f.preparedOrder() < r) throw std::logic_error("vector field not prepared to this order");

    // term lists are level independent; build them once
    std::vector<std::vector<VarTerm>> terms(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        const Multipointer& a = blocks[b];
        const int p = static_cast<int>(a.size());
        for (int m = 1; m <= p; ++m) {
            for (const PartitionTuple& delta : partitions(p, m)) {
                std::vector<int> tuple(static_cast<std::size_t>(m), 0);
                while (true) {
                    VarTerm t;
                    Multiindex beta(static_cast<std::size_t>(n), 0);
                    for (int j = 0; j < m; ++j) {
                        ++beta[static_cast<std::size_t>(tuple[static_cast<std::size_t>(j)])];
                        t.factorComp.push_back(tuple[static_cast<std::size_t>(j)]);
                        t.factorBlock.push_back(
                            blockIdx.at(submultipointer(a, delta[static_cast<std::size_t>(j)])));
                    }
                    t.beta = beta;
                    terms[b].push_back(std::move(t));
                    int j = m - 1;
                    while (j >= 0 && tuple[static_cast<std::size_t>(j)] == n - 1) --j;
                    if (j < 0) break;
                    ++tuple[static_cast<std::size_t>(j)];
                    for (int l = j + 1; l < m; ++l) tuple[static_cast<std::size_t>(l)] = 0;
                }
            }
        }
    }

    std::vector<int> roots;
    std::vector<std::map<Multiindex, int>> pid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        roots.push_back(f.componentNode(i));
        for (int ord = 1; ord <= r; ++ord)
            for (const Multipointer& a : all_multipointers(n, ord)) {
                if (static_cast<int>(a.size()) != ord) continue;
                Multiindex beta = lambda(a, n);
                int node = f.partialNode(i, beta);
                pid[static_cast<std::size_t>(i)][beta] = node;
                roots.push_back(node);
            }
    }
    TapeRunner run(f, roots, N);

    VariationalJet jet;
    jet.x.assign(static_cast<std::size_t>(N) + 1, IVector(static_cast<std::size_t>(n)));
    jet.v.assign(nb, std::vector<IVector>(static_cast<std::size_t>(N) + 1,
                                          IVector(static_cast<std::size_t>(n))));
    jet.x[0] = x0;
    for (std::size_t b = 0; b < nb; ++b) jet.v[b][0] = seeds[b];

    for (int k = 0; k <= N; ++k) {
        for (int i = 0; i < n; ++i)
            run.setVar(i, k, jet.x[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]);
        run.computeLevel(k, par);
        if (k == N) break;
        for (int i = 0; i < n; ++i)
            jet.x[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(i)] =
                run.series(f.componentNode(i))[static_cast<std::size_t>(k)] /
                Interval(static_cast<double>(k + 1));
#ifdef CRL_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (g_parallel)
#endif
        for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
            for (int i = 0; i < n; ++i) {
                Interval s(0.0);
                for (const VarTerm& t : terms[static_cast<std::size_t>(b)]) {
                    std::vector<const std::vector<IVector>*> factors;
                    for (int fb : t.factorBlock) factors.push_back(&jet.v[static_cast<std::size_t>(fb)]);
                    s += productCoeff(run.series(pid[static_cast<std::size_t>(i)].at(t.beta)),
                                      factors, t.factorComp, k);
                }
                jet.v[static_cast<std::size_t>(b)][static_cast<std::size_t>(k) + 1]
                     [static_cast<std::size_t>(i)] = s / Interval(static_cast<double>(k + 1));
            }
        }
    }
    return jet;
}

// --- parser ----------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    VectorField& vf;
    const std::vector<std::string>& vars;
    const std::vector<std::string>& pars;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + " of '" +
                                    s + "': " + msg);
    }

    int expr() {
        int v = term();
        for (;;) {
            if (eat('+')) v = vf.add(v, term());
            else if (eat('-')) v = vf.sub(v, term());
            else return v;
        }
    }

    int term() {
        int v = factor();
        for (;;) {
            if (eat('*')) v = vf.mul(v, factor());
            else if (eat('/')) v = vf.div(v, factor());
            else return v;
        }
    }

    int factor() {
        skip();
        if (eat('-')) return vf.neg(factor());
        int v = atom();
        while (eat('^')) {
            skip();
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) fail("expected integer exponent");
            v = vf.powNode(v, std::stoi(s.substr(start, pos - start)));
        }
        return v;
    }

    int atom() {
        skip();
        if (pos >= s.size()) fail("unexpected end of input");
        if (eat('(')) {
            int v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double val = std::stod(s.substr(pos), &used);
            pos += used;
            return vf.constant(val);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (eat('(')) {
                int arg = expr();
                if (!eat(')')) fail("expected ')'");
                if (name == "sin") return vf.sinNode(arg);
                if (name == "cos") return vf.cosNode(arg);
                if (name == "exp") return vf.expNode(arg);
                if (name == "sqrt") return vf.sqrtNode(arg);
                if (name == "sqr") return vf.sqrNode(arg);
                fail("unknown function '" + name + "'");
            }
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name) return vf.var(static_cast<int>(i));
            for (std::size_t i = 0; i < pars.size(); ++i)
                if (pars[i] == name) return vf.param(static_cast<int>(i));
            fail("unknown identifier '" + name + "'");
        }
        fail("unexpected character");
    }
};

}  // namespace

VectorField VectorField::parse(const std::vector<std::string>& components,
                               const std::vector<std::string>& varNames,
                               const std::vector<std::string>& paramNames) {
    if (components.size() != varNames.size())
        throw std::invalid_argument("one component per variable required");
    VectorField vf(static_cast<int>(varNames.size()), static_cast<int>(paramNames.size()));
    for (std::size_t i = 0; i < components.size(); ++i) {
        Parser p{components[i], 0, vf, varNames, paramNames};
        int root = p.expr();
        p.skip();
        if (p.pos != components[i].size()) p.fail("trailing input");
        vf.setComponent(static_cast<int>(i), root);
    }
    return vf;
}

}  // namespace crl
