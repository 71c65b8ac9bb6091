#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "patmix/lagrange.hpp"

namespace patmix {

/// A Steiner triple system on points 0..t-1: every pair of distinct points
/// lies in exactly one triple.
struct STS {
    int t = 0;
    std::vector<Edge> triples;  // sorted 3-subsets, list sorted

    bool operator==(const STS& other) const = default;
};

/// Bose construction for t = 6k+3, Skolem construction for t = 6k+1;
/// deterministic output per t. Other residues are rejected.
STS sts_generate(int t);

struct STSValidation {
    bool valid = true;
    std::array<int, 2> pair{-1, -1};  // first violating pair when invalid
    int coverage = 0;                 // how often that pair is covered
};

STSValidation sts_validate(const STS& d);

/// The pattern (t, complement of D, R = [t]).
Pattern pattern_from_sts(const STS& d);

struct Prop22Result {
    double lhs = 0.0;   // lambda of the complement at x
    double rhs = 0.0;   // lambda at uniform minus the quadratic slack
    bool holds = false;
    bool small_t_warning = false;  // guarantee only stated for t >= 55
};

/// Checks lambda_comp(x) <= lambda_comp(uniform) - (2/3) sum (x_i - 1/t)^2.
Prop22Result prop22_check(const STS& d, const std::vector<double>& x);

/// Precomputes the complement pattern once; use for batches of points.
class Prop22Checker {
  public:
    explicit Prop22Checker(const STS& d);
    Prop22Result check(const std::vector<double>& x) const;

  private:
    int t_;
    Pattern complement_;
    LagrangeEvaluator eval_;
    double uniform_value_;
};

struct FingerprintEntry {
    int q = 0;
    std::vector<int> chosen;            // Q_{D,q}, 0-based points
    long long t1 = 0, t2 = 0, t3 = 0;   // complement triples with i points in Q
    std::array<long long, 4> p_coeffs;  // cubic coefficients c3, c2, c1, c0
};

struct Fingerprint {
    int t = 0;
    std::vector<FingerprintEntry> entries;  // q = 0 .. t-1
};

/// For each q enumerates all q-subsets Q, selects the eventually maximal
/// balanced-blowup polynomial (comparing coefficients from degree 2 down,
/// ties by lexicographically smallest Q).
Fingerprint fingerprint(const STS& d, int cap = 19);

/// The intersection counts, flattened; fingerprints compare equal iff these do.
std::vector<long long> fingerprint_counts(const Fingerprint& f);

/// Groups of input indices with identical fingerprints.
std::vector<std::vector<int>> fingerprint_partition(const std::vector<STS>& designs,
                                                    int cap = 19);

/// Text format: first line t, then one 1-based triple "a b c" per line.
std::string sts_to_text(const STS& d);
STS sts_from_text(const std::string& text);

}  // namespace patmix
