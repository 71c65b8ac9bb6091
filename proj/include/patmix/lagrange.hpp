#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "patmix/pattern.hpp"

namespace patmix {

/// Euclidean projection onto the standard simplex by sort and threshold.
std::vector<double> project_to_simplex(std::vector<double> v);

bool is_simplex_point(const std::vector<double>& x, double tol = 1e-9);

/// Interior of S*_m: no coordinate within tol of 1 (vertices excluded).
bool is_interior_point(const std::vector<double>& x, double tol = 1e-9);

/// Lagrange polynomial r! * sum_D prod_i x_i^D(i) / D(i)!.
double lagrange_poly(const Pattern& p, const std::vector<double>& x);

/// Exact gradient of the Lagrange polynomial.
std::vector<double> lagrange_grad(const Pattern& p, const std::vector<double>& x);

/// Caches the flattened term list of one pattern for repeated evaluation.
class LagrangeEvaluator {
  public:
    explicit LagrangeEvaluator(const Pattern& p);
    ~LagrangeEvaluator();
    LagrangeEvaluator(LagrangeEvaluator&&) noexcept;
    LagrangeEvaluator& operator=(LagrangeEvaluator&&) noexcept;

    /// lambda_E(x) + lam * sum_{j in R} x_j^r
    double value(const std::vector<double>& x, double lam = 0.0) const;
    std::vector<double> grad(const std::vector<double>& x, double lam = 0.0) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct MaximizeOptions {
    double lam = 0.0;            // weight of the recursive term
    int starts = 32;             // random starts in addition to the uniform one
    std::uint64_t seed = 1;
    long long iteration_cap = 100000;
    double vertex_tol = 1e-3;    // iterates with max coordinate > 1 - tol are degenerate
    std::vector<std::vector<double>> extra_starts;
};

struct MaximizeResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    int degenerate_runs = 0;       // starts abandoned near a simplex vertex
    double best_aborted = -1.0;    // best value seen on an abandoned run
};

/// Maximizes f(x) = lambda_E(x) + lam * sum_{j in R} x_j^r over the simplex
/// by projected gradient ascent with backtracking line search and
/// multi-start. Runs drifting to a simplex vertex are abandoned (m >= 2).
MaximizeResult maximize_f(const Pattern& p, const MaximizeOptions& opt = {});

struct OptimalVectorReport {
    std::string pattern_id;
    double lambda = 0.0;
    std::vector<double> vector;
    double kkt_residual = 0.0;
    double min_coordinate = 0.0;
    bool converged = false;
    bool degenerate = false;
    std::uint64_t seed = 1;
    std::vector<double> lambda_history;  // fixed-point iterates, nondecreasing
};

/// Solves the fixed point lambda = max_x [lambda_E(x) + lambda sum_R x_j^r]
/// by monotone iteration; patterns with lambda_P = 1 take a closed fast path.
OptimalVectorReport pattern_lagrangian(const Pattern& p, const std::string& id = "",
                                       std::uint64_t seed = 1, int starts = 32);

struct MinimalityReport {
    bool minimal = false;
    std::vector<double> margins;  // lambda_P - lambda_{P-j} per index
};

/// A pattern is minimal when removing any index strictly drops the Lagrangian.
MinimalityReport is_minimal(const Pattern& p, double tol = 1e-6,
                            std::uint64_t seed = 1, int starts = 32);

}  // namespace patmix
