#include "patmix/sts.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "patmix/lagrange.hpp"

namespace patmix {

namespace {

STS finish(int t, std::vector<Edge> triples) {
    for (Edge& e : triples) std::sort(e.begin(), e.end());
    std::sort(triples.begin(), triples.end());
    return STS{t, std::move(triples)};
}

// Bose: t = 6k+3, points Z_{2k+1} x {0,1,2} with the idempotent commutative
// quasigroup a*b = (a+b)(k+1) mod 2k+1
STS bose(int t) {
    const int q = t / 3;      // 2k+1
    const int half = (q + 1) / 2;
    auto point = [&](int a, int cls) { return a + cls * q; };
    auto mul = [&](int a, int b) { return static_cast<int>((static_cast<long long>(a + b) * half) % q); };
    std::vector<Edge> triples;
    for (int a = 0; a < q; ++a)
        triples.push_back({point(a, 0), point(a, 1), point(a, 2)});
    for (int a = 0; a < q; ++a)
        for (int b = a + 1; b < q; ++b)
            for (int cls = 0; cls < 3; ++cls)
                triples.push_back(
                    {point(a, cls), point(b, cls), point(mul(a, b), (cls + 1) % 3)});
    return finish(t, std::move(triples));
}

// Skolem: t = 6k+1, points (Z_{2k} x {0,1,2}) + one extra, with the
// half-idempotent commutative quasigroup obtained by renaming Z_{2k} addition
STS skolem(int t) {
    const int k = t / 6;
    const int q = 2 * k;
    const int inf = t - 1;
    auto point = [&](int a, int cls) { return a + cls * q; };
    auto rename = [&](int s) { return s % 2 == 0 ? s / 2 : k + (s - 1) / 2; };
    auto mul = [&](int a, int b) { return rename((a + b) % q); };
    std::vector<Edge> triples;
    for (int a = 0; a < k; ++a)
        triples.push_back({point(a, 0), point(a, 1), point(a, 2)});
    for (int a = 0; a < k; ++a)
        for (int cls = 0; cls < 3; ++cls)
            triples.push_back({inf, point(k + a, cls), point(a, (cls + 1) % 3)});
    for (int a = 0; a < q; ++a)
        for (int b = a + 1; b < q; ++b)
            for (int cls = 0; cls < 3; ++cls)
                triples.push_back(
                    {point(a, cls), point(b, cls), point(mul(a, b), (cls + 1) % 3)});
    return finish(t, std::move(triples));
}

}  // namespace

STS sts_generate(int t) {
    if (t < 3 || (t % 6 != 1 && t % 6 != 3))
        throw std::invalid_argument(
            "Steiner triple systems exist only for t = 1 or 3 mod 6 (t >= 3)");
    return t % 6 == 3 ? bose(t) : skolem(t);
}

STSValidation sts_validate(const STS& d) {
    std::vector<int> cover(static_cast<std::size_t>(d.t) * d.t, 0);
    for (const Edge& e : d.triples) {
        if (e.size() != 3) return {false, {-1, -1}, 0};
        for (int v : e)
            if (v < 0 || v >= d.t) return {false, {v, v}, 0};
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) ++cover[e[i] * d.t + e[j]];
    }
    for (int a = 0; a < d.t; ++a)
        for (int b = a + 1; b < d.t; ++b)
            if (cover[a * d.t + b] != 1) return {false, {a, b}, cover[a * d.t + b]};
    return {};
}

Pattern pattern_from_sts(const STS& d) {
    STSValidation check = sts_validate(d);
    if (!check.valid) {
        std::ostringstream os;
        os << "not a Steiner triple system: pair (" << check.pair[0] << "," << check.pair[1]
           << ") covered " << check.coverage << " times";
        throw std::invalid_argument(os.str());
    }
    return complement_design_pattern(d.t, d.triples);
}

Prop22Checker::Prop22Checker(const STS& d)
    : t_(d.t), complement_(pattern_from_sts(d)), eval_(complement_) {
    std::vector<double> uniform(d.t, 1.0 / d.t);
    uniform_value_ = eval_.value(uniform);
}

Prop22Result Prop22Checker::check(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != t_)
        throw std::invalid_argument("point dimension differs from design order");
    Prop22Result res;
    res.small_t_warning = t_ < 55;
    res.lhs = eval_.value(x);
    double slack = 0.0;
    for (double c : x) slack += (c - 1.0 / t_) * (c - 1.0 / t_);
    res.rhs = uniform_value_ - (2.0 / 3.0) * slack;
    res.holds = res.lhs <= res.rhs + 1e-12;
    return res;
}

Prop22Result prop22_check(const STS& d, const std::vector<double>& x) {
    return Prop22Checker(d).check(x);
}

Fingerprint fingerprint(const STS& d, int cap) {
    if (d.t > cap)
        throw CapacityError("fingerprint enumerates all 2^t subsets; order above cap");
    STSValidation check = sts_validate(d);
    if (!check.valid) throw std::invalid_argument("fingerprint needs a valid design");
    // complement triples
    std::vector<Edge> comp;
    for (int a = 0; a < d.t; ++a)
        for (int b = a + 1; b < d.t; ++b)
            for (int c = b + 1; c < d.t; ++c) {
                Edge e{a, b, c};
                if (!std::binary_search(d.triples.begin(), d.triples.end(), e))
                    comp.push_back(std::move(e));
            }
    const long long comp_size = static_cast<long long>(comp.size());

    Fingerprint f;
    f.t = d.t;
    f.entries.resize(d.t);
    for (auto& e : f.entries) e.q = -1;

    // enumerate subsets in lexicographic order of their sorted point lists so
    // the first optimum found is the lex-smallest Q
    std::vector<int> chosen;
    std::vector<char> in_q(d.t, 0);
    auto consider = [&](int q) {
        long long t1 = 0, t2 = 0, t3 = 0;
        for (const Edge& e : comp) {
            int hits = in_q[e[0]] + in_q[e[1]] + in_q[e[2]];
            if (hits == 1) ++t1;
            else if (hits == 2) ++t2;
            else if (hits == 3) ++t3;
        }
        // p(l) = (l+1)^3 t3 + l(l+1)^2 t2 + l^2(l+1) t1 + l^3 (rest)
        std::array<long long, 4> coeffs{comp_size, 3 * t3 + 2 * t2 + t1, 3 * t3 + t2, t3};
        FingerprintEntry& slot = f.entries[q];
        // degree-3 coefficient is Q-independent; eventual dominance is decided
        // from degree 2 down
        bool better = slot.q < 0;
        if (!better) {
            std::array<long long, 3> cand{coeffs[1], coeffs[2], coeffs[3]};
            std::array<long long, 3> cur{slot.p_coeffs[1], slot.p_coeffs[2],
                                         slot.p_coeffs[3]};
            better = cand > cur;
        }
        if (better) {
            slot.q = q;
            slot.chosen = chosen;
            slot.t1 = t1;
            slot.t2 = t2;
            slot.t3 = t3;
            slot.p_coeffs = coeffs;
        }
    };
    std::function<void(int)> descend = [&](int next) {
        int q = static_cast<int>(chosen.size());
        if (q <= d.t - 1) consider(q);
        if (q == d.t - 1) return;
        for (int v = next; v < d.t; ++v) {
            chosen.push_back(v);
            in_q[v] = 1;
            descend(v + 1);
            in_q[v] = 0;
            chosen.pop_back();
        }
    };
    descend(0);
    return f;
}

std::vector<long long> fingerprint_counts(const Fingerprint& f) {
    std::vector<long long> out;
    for (const auto& e : f.entries) {
        out.push_back(e.t1);
        out.push_back(e.t2);
        out.push_back(e.t3);
    }
    return out;
}

std::vector<std::vector<int>> fingerprint_partition(const std::vector<STS>& designs,
                                                    int cap) {
    if (designs.empty()) return {};
    int t = designs.front().t;
    for (const STS& d : designs)
        if (d.t != t) throw std::invalid_argument("designs of mixed order");
    std::vector<std::vector<long long>> keys;
    keys.reserve(designs.size());
    for (const STS& d : designs) keys.push_back(fingerprint_counts(fingerprint(d, cap)));
    std::vector<std::vector<int>> groups;
    std::vector<int> assigned(designs.size(), -1);
    for (std::size_t i = 0; i < designs.size(); ++i) {
        if (assigned[i] >= 0) continue;
        groups.push_back({static_cast<int>(i)});
        assigned[i] = static_cast<int>(groups.size()) - 1;
        for (std::size_t j = i + 1; j < designs.size(); ++j)
            if (assigned[j] < 0 && keys[j] == keys[i]) {
                groups.back().push_back(static_cast<int>(j));
                assigned[j] = assigned[i];
            }
    }
    return groups;
}

std::string sts_to_text(const STS& d) {
    std::ostringstream os;
    os << d.t << '\n';
    for (const Edge& e : d.triples)
        os << e[0] + 1 << ' ' << e[1] + 1 << ' ' << e[2] + 1 << '\n';
    return os.str();
}

STS sts_from_text(const std::string& text) {
    std::istringstream is(text);
    int t = 0;
    if (!(is >> t)) throw std::invalid_argument("bad design header");
    std::vector<Edge> triples;
    int a, b, c;
    while (is >> a >> b >> c) triples.push_back({a - 1, b - 1, c - 1});
    STS d = finish(t, std::move(triples));
    for (const Edge& e : d.triples)
        for (int v : e)
            if (v < 0 || v >= t) throw std::invalid_argument("triple point out of range");
    return d;
}

}  // namespace patmix
