#include "patmix/lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace patmix {

std::vector<double> project_to_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cumsum = 0.0, tau = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cumsum += u[k];
        double t = (cumsum - 1.0) / static_cast<double>(k + 1);
        if (u[k] - t > 0.0) tau = t;
    }
    for (double& x : v) x = std::max(x - tau, 0.0);
    return v;
}

bool is_simplex_point(const std::vector<double>& x, double tol) {
    double sum = 0.0;
    for (double c : x) {
        if (c < -tol) return false;
        sum += c;
    }
    return std::abs(sum - 1.0) <= tol;
}

bool is_interior_point(const std::vector<double>& x, double tol) {
    if (!is_simplex_point(x, tol)) return false;
    for (double c : x)
        if (c >= 1.0 - tol) return false;
    return true;
}

namespace {

// flattened evaluation data: per multiset the support, multiplicities, and
// the coefficient r! / prod D(i)!
struct PolyData {
    int r;
    int m;
    struct Term {
        double coeff;
        int support[4];
        int mult[4];
        int len;
    };
    std::vector<Term> terms;
    std::vector<int> recursive;

    explicit PolyData(const Pattern& p) : r(p.r), m(p.m), recursive(p.recursive) {
        double rfact = 1.0;
        for (int i = 2; i <= p.r; ++i) rfact *= i;
        for (const auto& d : p.multisets) {
            Term t{};
            t.coeff = rfact;
            t.len = 0;
            for (int j = 0; j < p.m; ++j) {
                if (d[j] == 0) continue;
                if (t.len == 4) throw CapacityError("multiset support above 4 indices");
                t.support[t.len] = j;
                t.mult[t.len] = d[j];
                ++t.len;
                for (int c = 2; c <= d[j]; ++c) t.coeff /= c;
            }
            terms.push_back(t);
        }
    }

    double value(const std::vector<double>& x, double lam) const {
        double f = 0.0;
        for (const Term& t : terms) {
            double prod = t.coeff;
            for (int s = 0; s < t.len; ++s) {
                double xv = x[t.support[s]];
                for (int c = 0; c < t.mult[s]; ++c) prod *= xv;
            }
            f += prod;
        }
        if (lam != 0.0)
            for (int j : recursive) f += lam * std::pow(x[j], r);
        return f;
    }

    void value_grad(const std::vector<double>& x, double lam, double& f,
                    std::vector<double>& g) const {
        f = 0.0;
        std::fill(g.begin(), g.end(), 0.0);
        double pw[4];
        for (const Term& t : terms) {
            double prod = t.coeff;
            for (int s = 0; s < t.len; ++s) {
                double xv = x[t.support[s]];
                double p = 1.0;
                for (int c = 0; c < t.mult[s]; ++c) p *= xv;
                pw[s] = p;
                prod *= p;
            }
            f += prod;
            for (int s = 0; s < t.len; ++s) {
                double xv = x[t.support[s]];
                double rest = t.coeff;
                for (int u = 0; u < t.len; ++u)
                    if (u != s) rest *= pw[u];
                double dpow = t.mult[s] * (t.mult[s] >= 2 ? std::pow(xv, t.mult[s] - 1) : 1.0);
                g[t.support[s]] += rest * dpow;
            }
        }
        if (lam != 0.0) {
            for (int j : recursive) {
                f += lam * std::pow(x[j], r);
                g[j] += lam * r * std::pow(x[j], r - 1);
            }
        }
    }

    // dense Hessian of f at x
    void hessian(const std::vector<double>& x, double lam,
                 std::vector<std::vector<double>>& h) const {
        for (auto& row : h) std::fill(row.begin(), row.end(), 0.0);
        for (const Term& t : terms) {
            for (int s = 0; s < t.len; ++s) {
                for (int u = s; u < t.len; ++u) {
                    double v = t.coeff;
                    int ds, du;
                    if (u == s) {
                        ds = t.mult[s] * (t.mult[s] - 1);
                        if (ds == 0) continue;
                        for (int w = 0; w < t.len; ++w) {
                            int e = t.mult[w] - (w == s ? 2 : 0);
                            for (int c = 0; c < e; ++c) v *= x[t.support[w]];
                        }
                        h[t.support[s]][t.support[s]] += ds * v;
                    } else {
                        ds = t.mult[s];
                        du = t.mult[u];
                        for (int w = 0; w < t.len; ++w) {
                            int e = t.mult[w] - (w == s) - (w == u);
                            for (int c = 0; c < e; ++c) v *= x[t.support[w]];
                        }
                        h[t.support[s]][t.support[u]] += ds * du * v;
                        h[t.support[u]][t.support[s]] += ds * du * v;
                    }
                }
            }
        }
        if (lam != 0.0 && r >= 2) {
            for (int j : recursive)
                h[j][j] += lam * r * (r - 1) * std::pow(x[j], r - 2);
        }
    }
};

std::vector<double> uniform_point(int m) {
    return std::vector<double>(m, 1.0 / static_cast<double>(m));
}

std::vector<double> random_simplex_point(int m, std::mt19937_64& rng) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> x(m);
    double sum = 0.0;
    for (double& c : x) {
        c = exp1(rng);
        sum += c;
    }
    for (double& c : x) c /= sum;
    return x;
}

struct RunResult {
    std::vector<double> x;
    double value = -1.0;
    bool converged = false;
    bool degenerate = false;
};

RunResult ascend(const PolyData& poly, double lam, std::vector<double> x,
                 long long iteration_cap, double vertex_tol) {
    const int m = poly.m;
    RunResult res;
    std::vector<double> grad(m), trial(m);
    double f;
    poly.value_grad(x, lam, f, grad);
    long long iter = 0;
    for (; iter < iteration_cap; ++iter) {
        if (m >= 2) {
            double mx = *std::max_element(x.begin(), x.end());
            if (mx > 1.0 - vertex_tol) {
                res.x = std::move(x);
                res.value = f;
                res.degenerate = true;
                return res;
            }
        }
        double step = 1.0;
        bool improved = false;
        double move = 0.0;
        while (step > 1e-18) {
            for (int j = 0; j < m; ++j) trial[j] = x[j] + step * grad[j];
            trial = project_to_simplex(std::move(trial));
            double ftrial = poly.value(trial, lam);
            if (ftrial > f) {
                move = 0.0;
                for (int j = 0; j < m; ++j) move = std::max(move, std::abs(trial[j] - x[j]));
                x.swap(trial);
                f = ftrial;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved || move < 1e-15) {
            res.converged = true;
            break;
        }
        poly.value_grad(x, lam, f, grad);
    }
    poly.value_grad(x, lam, f, grad);
    res.x = std::move(x);
    res.value = f;
    return res;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Gaussian elimination with partial pivoting; false when near-singular.
bool solve_dense(std::vector<std::vector<double>>& a, std::vector<double>& b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        if (std::abs(a[pivot][col]) < 1e-12) return false;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (int row = col + 1; row < n; ++row) {
            double factor = a[row][col] / a[col][col];
            if (factor == 0.0) continue;
            for (int c = col; c < n; ++c) a[row][c] -= factor * a[col][c];
            b[row] -= factor * b[col];
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        double v = b[col];
        for (int c = col + 1; c < n; ++c) v -= a[col][c] * b[c];
        b[col] = v / a[col][col];
    }
    return true;
}

double kkt_residual_at(const PolyData& poly, const std::vector<double>& x, double lam_weight,
                       double lambda_target) {
    std::vector<double> g(poly.m);
    double f;
    poly.value_grad(x, lam_weight, f, g);
    double resid = 0.0;
    for (int j = 0; j < poly.m; ++j)
        resid = std::max(resid, std::abs(g[j] - poly.r * lambda_target));
    return resid;
}

// Newton refinement of the interior stationarity system grad f = nu * 1,
// sum x = 1, alternated with fixed-point updates of lambda. The gradient
// phase locates the basin; this drives the residual to machine precision.
// Leaves x and lambda untouched when the system is degenerate or the step
// leaves the open simplex.
void newton_polish(const PolyData& poly, std::vector<double>& x, double& lambda,
                   bool has_recursion) {
    const int m = poly.m;
    std::vector<double> best_x = x;
    double best_lambda = lambda;
    double best_resid = kkt_residual_at(poly, x, has_recursion ? lambda : 0.0, lambda);
    for (int outer = 0; outer < 60; ++outer) {
        double lam = has_recursion ? lambda : 0.0;
        std::vector<double> g(m);
        double f;
        poly.value_grad(x, lam, f, g);
        double nu = poly.r * f;  // Euler relation on the simplex
        std::vector<std::vector<double>> h(m, std::vector<double>(m, 0.0));
        poly.hessian(x, lam, h);
        std::vector<std::vector<double>> jac(m + 1, std::vector<double>(m + 1, 0.0));
        std::vector<double> rhs(m + 1, 0.0);
        double sum = 0.0;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) jac[i][j] = h[i][j];
            jac[i][m] = -1.0;
            jac[m][i] = 1.0;
            rhs[i] = -(g[i] - nu);
            sum += x[i];
        }
        rhs[m] = -(sum - 1.0);
        if (!solve_dense(jac, rhs)) break;
        bool inside = true;
        double step = 0.0;
        for (int i = 0; i < m; ++i) {
            x[i] += rhs[i];
            step = std::max(step, std::abs(rhs[i]));
            if (x[i] <= 1e-9 || x[i] >= 1.0) inside = false;
        }
        if (!inside) {
            x = best_x;
            lambda = best_lambda;
            return;
        }
        if (has_recursion) {
            // refresh the fixed point at the polished vector
            for (int it = 0; it < 200; ++it) {
                double next = poly.value(x, lambda);
                if (std::abs(next - lambda) < 1e-16) break;
                lambda = next;
            }
        } else {
            lambda = poly.value(x, 0.0);
        }
        double resid = kkt_residual_at(poly, x, has_recursion ? lambda : 0.0, lambda);
        if (resid < best_resid) {
            best_resid = resid;
            best_x = x;
            best_lambda = lambda;
        }
        if (resid < 1e-14 || step < 1e-15) break;
    }
    x = best_x;
    lambda = best_lambda;
}

}  // namespace

struct LagrangeEvaluator::Impl {
    PolyData poly;
    explicit Impl(const Pattern& p) : poly(p) {}
};

LagrangeEvaluator::LagrangeEvaluator(const Pattern& p) : impl_(std::make_unique<Impl>(p)) {}
LagrangeEvaluator::~LagrangeEvaluator() = default;
LagrangeEvaluator::LagrangeEvaluator(LagrangeEvaluator&&) noexcept = default;
LagrangeEvaluator& LagrangeEvaluator::operator=(LagrangeEvaluator&&) noexcept = default;

double LagrangeEvaluator::value(const std::vector<double>& x, double lam) const {
    if (static_cast<int>(x.size()) != impl_->poly.m)
        throw std::invalid_argument("point dimension differs from pattern m");
    return impl_->poly.value(x, lam);
}

std::vector<double> LagrangeEvaluator::grad(const std::vector<double>& x, double lam) const {
    if (static_cast<int>(x.size()) != impl_->poly.m)
        throw std::invalid_argument("point dimension differs from pattern m");
    std::vector<double> g(impl_->poly.m);
    double f;
    impl_->poly.value_grad(x, lam, f, g);
    return g;
}

double lagrange_poly(const Pattern& p, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != p.m)
        throw std::invalid_argument("point dimension differs from pattern m");
    return PolyData(p).value(x, 0.0);
}

std::vector<double> lagrange_grad(const Pattern& p, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != p.m)
        throw std::invalid_argument("point dimension differs from pattern m");
    std::vector<double> g(p.m);
    double f;
    PolyData(p).value_grad(x, 0.0, f, g);
    return g;
}

MaximizeResult maximize_f(const Pattern& p, const MaximizeOptions& opt) {
    if (opt.lam < 0.0 || opt.lam > 1.0)
        throw std::invalid_argument("recursive weight must lie in [0,1]");
    PolyData poly(p);
    std::mt19937_64 rng(opt.seed);
    std::vector<std::vector<double>> starts;
    starts.push_back(uniform_point(p.m));
    for (int s = 0; s < opt.starts; ++s) starts.push_back(random_simplex_point(p.m, rng));
    for (const auto& e : opt.extra_starts)
        if (static_cast<int>(e.size()) == p.m) starts.push_back(e);

    MaximizeResult best;
    for (const auto& start : starts) {
        RunResult run = ascend(poly, opt.lam, start, opt.iteration_cap, opt.vertex_tol);
        if (run.degenerate) {
            ++best.degenerate_runs;
            best.best_aborted = std::max(best.best_aborted, run.value);
            continue;
        }
        bool better = run.value > best.value + 1e-12 ||
                      (run.value > best.value - 1e-12 &&
                       (best.x.empty() || lex_less(run.x, best.x)));
        if (better) {
            best.x = run.x;
            best.value = run.value;
            best.converged = run.converged;
        }
    }
    if (best.x.empty())
        throw std::domain_error("all ascent runs degenerated to a simplex vertex");
    return best;
}

OptimalVectorReport pattern_lagrangian(const Pattern& p, const std::string& id,
                                       std::uint64_t seed, int starts) {
    OptimalVectorReport rep;
    rep.pattern_id = id;
    rep.seed = seed;
    if (lagrangian_is_one(p)) {
        // witness index concentrates the construction; the optimum sits at a
        // simplex vertex, outside S*_m
        int witness = 0;
        for (const auto& d : p.multisets) {
            for (int i = 0; i < p.m; ++i) {
                if (d[i] >= p.r - 1 &&
                    (d[i] == p.r ||
                     std::binary_search(p.recursive.begin(), p.recursive.end(), i)))
                    witness = i;
            }
        }
        rep.lambda = 1.0;
        rep.vector.assign(p.m, 0.0);
        rep.vector[witness] = 1.0;
        rep.kkt_residual = 0.0;
        rep.min_coordinate = p.m == 1 ? 1.0 : 0.0;
        rep.converged = true;
        rep.degenerate = true;
        rep.lambda_history = {1.0};
        return rep;
    }

    MaximizeOptions opt;
    opt.seed = seed;
    opt.starts = starts;
    opt.lam = 0.0;
    MaximizeResult cur = maximize_f(p, opt);
    double lambda = cur.value;
    rep.lambda_history.push_back(lambda);
    const bool has_recursion = !p.recursive.empty();
    int iterations = 0;
    while (has_recursion && iterations++ < 200) {
        MaximizeOptions next = opt;
        next.lam = lambda;
        next.extra_starts.push_back(cur.x);  // warm start from the last optimum
        MaximizeResult res = maximize_f(p, next);
        rep.lambda_history.push_back(res.value);
        double delta = res.value - lambda;
        lambda = res.value;
        cur = res;
        if (std::abs(delta) < 1e-12) break;
    }

    PolyData poly(p);
    std::vector<double> x = cur.x;
    newton_polish(poly, x, lambda, has_recursion);
    if (lambda != rep.lambda_history.back()) rep.lambda_history.push_back(lambda);
    rep.lambda = lambda;
    rep.vector = x;
    rep.converged = cur.converged;
    rep.degenerate = cur.degenerate_runs > 0 && cur.best_aborted > cur.value + 1e-9;
    rep.min_coordinate = *std::min_element(x.begin(), x.end());
    rep.kkt_residual = kkt_residual_at(poly, x, has_recursion ? lambda : 0.0, lambda);
    return rep;
}

MinimalityReport is_minimal(const Pattern& p, double tol, std::uint64_t seed, int starts) {
    MinimalityReport rep;
    double lambda = pattern_lagrangian(p, "", seed, starts).lambda;
    if (p.m == 1) {
        rep.minimal = lambda > tol;
        rep.margins = {lambda};
        return rep;
    }
    rep.minimal = true;
    for (int j = 0; j < p.m; ++j) {
        Pattern sub = remove_index(p, j);
        double sub_lambda =
            sub.multisets.empty() ? 0.0 : pattern_lagrangian(sub, "", seed, starts).lambda;
        double margin = lambda - sub_lambda;
        rep.margins.push_back(margin);
        if (margin <= tol) rep.minimal = false;
    }
    return rep;
}

}  // namespace patmix
