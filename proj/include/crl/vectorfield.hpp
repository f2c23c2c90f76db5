#ifndef CRL_VECTORFIELD_HPP
#define CRL_VECTORFIELD_HPP

#include <map>
#include <string>
#include <vector>

#include "crl/combinatorics.hpp"
#include "crl/interval.hpp"
#include "crl/linalg.hpp"

namespace crl {

enum class NodeKind { Var, Param, Const, Add, Sub, Mul, Div, Neg, Sin, Cos, Exp, Sqrt, Sqr };

/// Autonomous vector field f(x, p) given as a DAG of elementary
/// operations with shared subexpressions. Symbolic partial derivatives
/// are built into the same DAG on demand, so a single sweep evaluates
/// f and every needed partial together.
class VectorField {
public:
    VectorField(int dim, int params);

    int dim() const { return dim_; }
    int numParams() const { return params_; }

    // node builders (return node ids; children must already exist)
    int var(int i);
    int param(int i);
    int constant(double c);
    int add(int a, int b);
    int sub(int a, int b);
    int mul(int a, int b);
    int div(int a, int b);
    int neg(int a);
    int sinNode(int a);
    int cosNode(int a);
    int expNode(int a);
    int sqrtNode(int a);
    int sqrNode(int a);
    int powNode(int a, int k);

    void setComponent(int i, int expr);

    /// Build every partial derivative node D^beta f_i for |beta| <= r.
    /// Must be called before jets or partial evaluation, and never
    /// concurrently with them.
    void prepare(int r);
    int preparedOrder() const { return prepared_; }

    int componentNode(int i) const { return components_[static_cast<std::size_t>(i)]; }
    int partialNode(int component, const Multiindex& beta) const {
        return partials_[static_cast<std::size_t>(component)].at(beta);
    }
    int varNode(int i) const;  // id of an existing Var node

    IVector eval(const IVector& x, const IVector& par) const;
    IMatrix jacobian(const IVector& x, const IVector& par) const;
    Interval evalPartial(int component, const Multiindex& beta, const IVector& x,
                         const IVector& par) const;
    /// One sweep evaluating every partial of order 0..r at once;
    /// result[i][beta] = D^beta f_i (x).
    std::vector<std::map<Multiindex, Interval>> evalPartials(int r, const IVector& x,
                                                             const IVector& par) const;

    /// Parse components written in infix syntax (operators + - * / ^,
    /// functions sin cos exp sqrt sqr, parentheses, decimal literals).
    static VectorField parse(const std::vector<std::string>& components,
                             const std::vector<std::string>& varNames,
                             const std::vector<std::string>& paramNames);

private:
    struct Node {
        NodeKind kind;
        int a = -1, b = -1;  // children
        double value = 0.0;  // Const payload
        int index = -1;      // Var / Param payload, or power exponent
    };

    int intern(NodeKind kind, int a, int b, double value, int index);
    int diff(int node, int v);  // d(node)/dx_v, cached

    int dim_, params_;
    std::vector<Node> nodes_;
    std::vector<int> components_;
    std::map<std::tuple<int, int, int, double, int>, int> interned_;
    std::map<std::pair<int, int>, int> diffCache_;
    // partials_[i][beta] = node id of D^beta f_i
    std::vector<std::map<Multiindex, int>> partials_;
    int prepared_ = 0;

    friend struct TapeRunner;
};

/// Taylor coefficients in time of the solution through x0:
/// result[k][i] encloses the k-th coefficient of component i, k = 0..N.
std::vector<IVector> ode_jet(const VectorField& f, const IVector& x0, const IVector& par, int N);

struct VariationalJet {
    std::vector<IVector> x;               // solution series, x[k]
    std::vector<std::vector<IVector>> v;  // v[b][k]: series of derivative block b
};

/// Joint Taylor expansion in time of the solution and of the partial
/// derivatives of the flow with respect to initial conditions, one
/// block per multipointer. `blocks` must be closed under taking
/// sub-multipointers and sorted; `seeds` are the values at t = 0.
VariationalJet variational_jet(const VectorField& f, const IVector& x0, const IVector& par,
                               const std::vector<Multipointer>& blocks,
                               const std::vector<IVector>& seeds, int N);

/// Runtime switch for the multithreaded block kernels; the serial path
/// computes bit-identical results.
void set_parallel(bool on);
bool parallel_enabled();
void set_workers(int k);

}  // namespace crl

#endif
