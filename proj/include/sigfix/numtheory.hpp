// Copyright 2026 The sigfix authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sigfix/gsignature.hpp"

namespace sigfix {

/// A list of exponent pairs (a_i, b_i) mod m feeding a defect-term sum.
struct DefectDataset {
    int m = 1;
    std::vector<std::pair<long long, long long>> terms;
};

/// Sum of defect terms with every exponent multiplied by s. For gcd(s, m) = d > 1
/// the value lives in Q(zeta_{m/d}) and is returned at that conductor.
inline Cyclotomic defect_sum(const DefectDataset& ds, long long s) {
    if (ds.m < 2) throw std::domain_error("defect_sum: modulus must be >= 2");
    long long g = std::gcd(mod_norm(s, ds.m), static_cast<long long>(ds.m));
    if (g == 0) g = ds.m;  // s == 0 mod m
    int mp = static_cast<int>(ds.m / g);
    if (mp < 2) throw std::domain_error("defect_sum: degenerate exponent multiplier");
    long long u = mod_norm(s / g, mp);
    detail::DefectCache cache;
    Cyclotomic acc(mp);
    for (const auto& [a, b] : ds.terms) {
        long long e1 = mod_norm(u * mod_norm(a, ds.m), mp);
        long long e2 = mod_norm(u * mod_norm(b, ds.m), mp);
        if (e1 == 0 || e2 == 0) throw std::domain_error("defect_sum: degenerate exponent");
        acc += cache.term(mp, e1, e2);
    }
    return acc;
}

namespace detail {

struct RatVecLess {
    bool operator()(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

/// Pairs (a, b), 1 <= a <= b < m, optionally restricted to units mod m.
inline std::vector<std::pair<int, int>> canonical_pairs(int m, bool units_only) {
    std::vector<std::pair<int, int>> out;
    for (int a = 1; a < m; ++a) {
        if (units_only && std::gcd(a, m) != 1) continue;
        for (int b = a; b < m; ++b) {
            if (units_only && std::gcd(b, m) != 1) continue;
            out.emplace_back(a, b);
        }
    }
    return out;
}

/// Defect term scaled by m^2, which clears all denominators; exactness is asserted.
inline std::vector<long long> scaled_term(DefectCache& cache, int m, int a, int b) {
    Cyclotomic t = cache.term(m, a, b);
    Rat scale(static_cast<long long>(m) * m);
    std::vector<long long> v(t.coeffs().size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat r = t.coeffs()[i] * scale;
        if (denominator(r) != 1)
            throw std::logic_error("scaled_term: denominator does not divide m^2");
        v[i] = numerator(r).convert_to<long long>();
    }
    return v;
}

/// Enumerate multisets of `count` indices into a pair list, carrying two scaled
/// partial sums (conductor m and conductor m/p). Calls visit(indices, sum1, sump)
/// at each leaf; returns false if the leaf budget ran out.
class MultisetScan {
  public:
    MultisetScan(int m, int p, std::vector<std::pair<int, int>> pairs, int count)
        : m_(m), p_(p), count_(count), pairs_(std::move(pairs)) {
        DefectCache cache;
        int mp = m / p;
        for (const auto& [a, b] : pairs_) {
            v1_.push_back(scaled_term(cache, m, a, b));
            vp_.push_back(scaled_term(cache, mp, a % mp, b % mp));
        }
        len1_ = v1_.empty() ? 0 : v1_[0].size();
        lenp_ = vp_.empty() ? 0 : vp_[0].size();
    }

    using Visit = std::function<bool(const std::vector<int>&, const std::vector<long long>&,
                                     const std::vector<long long>&)>;

    /// Depth-first scan in lexicographic index order. visit returns false to abort.
    /// Returns the number of leaves visited; sets exhausted=false when aborted
    /// (by visit or by the leaf budget).
    unsigned long long run(const Visit& visit, unsigned long long leaf_budget, bool& exhausted) {
        std::vector<long long> sum1(len1_, 0), sump(lenp_, 0);
        std::vector<int> idx(static_cast<size_t>(count_), 0);
        leaves_ = 0;
        budget_ = leaf_budget;
        aborted_ = false;
        rec(0, 0, idx, sum1, sump, visit);
        exhausted = !aborted_;
        return leaves_;
    }

    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  private:
    bool rec(int depth, int start, std::vector<int>& idx, std::vector<long long>& sum1,
             std::vector<long long>& sump, const Visit& visit) {
        if (depth == count_) {
            if (leaves_ >= budget_) {  // would exceed the leaf budget
                aborted_ = true;
                return false;
            }
            ++leaves_;
            if (!visit(idx, sum1, sump)) {
                aborted_ = true;
                return false;
            }
            return true;
        }
        for (int i = start; i < static_cast<int>(pairs_.size()); ++i) {
            idx[static_cast<size_t>(depth)] = i;
            for (size_t j = 0; j < len1_; ++j) sum1[j] += v1_[i][j];
            for (size_t j = 0; j < lenp_; ++j) sump[j] += vp_[i][j];
            bool cont = rec(depth + 1, i, idx, sum1, sump, visit);
            for (size_t j = 0; j < len1_; ++j) sum1[j] -= v1_[i][j];
            for (size_t j = 0; j < lenp_; ++j) sump[j] -= vp_[i][j];
            if (!cont) return false;
        }
        return true;
    }

    int m_, p_, count_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<std::vector<long long>> v1_, vp_;
    size_t len1_ = 0, lenp_ = 0;
    unsigned long long leaves_ = 0, budget_ = 0;
    bool aborted_ = false;
};

inline bool is_scaled_constant(const std::vector<long long>& v, long long c) {
    if (v.empty()) return false;
    if (v[0] != c) return false;
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] != 0) return false;
    return true;
}

inline int smallest_prime_factor(int n) {
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) return p;
    return n;
}

inline bool is_odd_prime_power(int m, int& p_out, int& t_out) {
    if (m < 3 || m % 2 == 0) return false;
    int p = smallest_prime_factor(m);
    int t = 0, n = m;
    while (n % p == 0) { n /= p; ++t; }
    if (n != 1) return false;
    p_out = p;
    t_out = t;
    return true;
}

}  // namespace detail

struct IdentityReport {
    int m = 0;
    bool product_identity = false;   // prod_{i=1}^{m-1} (1 - zeta^i) = m
    bool inverse_formula = false;    // (-1/m) * product form agrees with the Euclid inverse
    bool triple_identity = false;    // defect(a,b) + defect(a-b,-b) + defect(b-a,-a) = 1
    bool sphere_identity = false;    // defect(a,a) + surface(1,a) = 1
    unsigned long long triple_cases = 0;
    unsigned long long sphere_cases = 0;
    bool pass = false;
};

/// Run the cyclotomic identity suite for one odd conductor.
inline IdentityReport check_identities(int m) {
    if (m < 3 || m % 2 == 0)
        throw std::invalid_argument("check_identities: m must be odd and >= 3");
    IdentityReport rep;
    rep.m = m;
    Cyclotomic one = Cyclotomic::from_int(m, 1);

    Cyclotomic prod = one;
    for (int i = 1; i < m; ++i) prod *= (one - Cyclotomic::root_power(m, i));
    rep.product_identity = (prod == Cyclotomic::from_int(m, m));

    rep.inverse_formula = true;
    for (int a = 1; a < m && rep.inverse_formula; ++a) {
        Cyclotomic x = Cyclotomic::root_power(m, a) - one;
        Cyclotomic formula = Cyclotomic::from_int(m, 1);
        for (int i = 1; i < m; ++i) {
            if (i == a) continue;
            formula *= (one - Cyclotomic::root_power(m, i));
        }
        rep.inverse_formula = (x.inverse() == Rat(-1, m) * formula);
    }

    detail::DefectCache cache;
    rep.triple_identity = true;
    for (int a = 1; a < m; ++a)
        for (int b = 1; b < m; ++b) {
            if (a == b || std::gcd(std::gcd(a, b), m) != 1) continue;
            ++rep.triple_cases;
            Cyclotomic sum = cache.term(m, a, b) + cache.term(m, mod_norm(a - b, m), m - b) +
                             cache.term(m, mod_norm(b - a, m), m - a);
            if (!(sum == one)) rep.triple_identity = false;
        }
    rep.sphere_identity = true;
    for (int a = 1; a < m; ++a) {
        ++rep.sphere_cases;
        if (!(cache.term(m, a, a) + surface_term(m, 1, a) == one)) rep.sphere_identity = false;
    }
    rep.pass = rep.product_identity && rep.inverse_formula && rep.triple_identity &&
               rep.sphere_identity;
    return rep;
}

struct LemmaNoSolutionReport {
    int m = 0;
    unsigned long long pairs_checked = 0;  // ordered (a, b) pairs in the domain
    bool pass = false;
    std::optional<std::pair<int, int>> violation;
};

/// Exhaustively confirm that defect_term(m, a, b) != 1 over all nonzero pairs (m odd).
inline LemmaNoSolutionReport check_lemma_no_solution(int m) {
    if (m < 3 || m % 2 == 0)
        throw std::invalid_argument("check_lemma_no_solution: m must be odd and >= 3");
    LemmaNoSolutionReport rep;
    rep.m = m;
    rep.pairs_checked = static_cast<unsigned long long>(m - 1) * (m - 1);
    rep.pass = true;
    detail::DefectCache cache;
    Cyclotomic one = Cyclotomic::from_int(m, 1);
    for (int a = 1; a < m && rep.pass; ++a) {
        for (int b = a; b < m; ++b) {
            if (cache.term(m, a, b) == one) {
                rep.pass = false;
                rep.violation = {a, b};
                break;
            }
        }
    }
    return rep;
}

struct CancellationReport {
    int m = 0;
    unsigned long long raw_tuples = 0;     // ordered 4-tuples (a,b,c,d) covered
    unsigned long long value_classes = 0;  // distinct defect values observed
    bool pass = false;
    std::optional<std::array<int, 4>> violation;
};

/// For m an odd prime power: whenever defect(a,b) = defect(c,d), the unordered
/// pair {c,d} must be {a,b} or {-a,-b} mod m. Implemented by grouping all
/// ordered pairs by exact value, which covers every 4-tuple.
inline CancellationReport check_cancellation_theorem(int m) {
    int p = 0, t = 0;
    if (!detail::is_odd_prime_power(m, p, t))
        throw std::invalid_argument("check_cancellation_theorem: m must be an odd prime power");
    CancellationReport rep;
    rep.m = m;
    unsigned long long n1 = static_cast<unsigned long long>(m - 1);
    rep.raw_tuples = n1 * n1 * n1 * n1;
    detail::DefectCache cache;
    std::map<std::vector<Rat>, std::vector<std::pair<int, int>>, detail::RatVecLess> classes;
    for (int a = 1; a < m; ++a)
        for (int b = 1; b < m; ++b)
            classes[cache.term(m, a, b).coeffs()].emplace_back(a, b);
    rep.value_classes = classes.size();
    rep.pass = true;
    for (const auto& [value, members] : classes) {
        const auto [a, b] = members.front();
        for (const auto& [c, d] : members) {
            bool same = (c == a && d == b) || (c == b && d == a);
            bool negated = (c == m - a && d == m - b) || (c == m - b && d == m - a);
            if (!same && !negated) {
                rep.pass = false;
                rep.violation = {a, b, c, d};
                return rep;
            }
        }
    }
    return rep;
}

struct Theorem2Solution {
    long long k = 0;
    int c = 0, d = 0;  // c <= d representative
};

struct Theorem2Report {
    int m = 0;
    long long k_bound = 0;
    unsigned long long checked = 0;
    std::vector<Theorem2Solution> solutions;
    bool matches_expected = false;  // exactly k=p with c=d=1 and c=d=m-1
};

/// Scan -4*k*zeta/(zeta-1)^2 + p*defect(c,d) = p over |k| <= k_bound and
/// units c <= d mod m; the expected solution set is k=p, c=d=+-1.
inline Theorem2Report check_theorem_two(int m, long long k_bound) {
    int p = 0, t = 0;
    if (!detail::is_odd_prime_power(m, p, t))
        throw std::invalid_argument("check_theorem_two: m must be an odd prime power");
    if (k_bound < 1) throw std::invalid_argument("check_theorem_two: k_bound must be positive");
    Theorem2Report rep;
    rep.m = m;
    rep.k_bound = k_bound;
    Cyclotomic base = surface_term(m, 1, 1);  // -4*zeta/(zeta-1)^2
    Cyclotomic target = Cyclotomic::from_int(m, p);
    detail::DefectCache cache;
    auto pairs = detail::canonical_pairs(m, /*units_only=*/true);
    for (long long k = -k_bound; k <= k_bound; ++k) {
        Cyclotomic ks = Rat(k) * base;
        for (const auto& [c, d] : pairs) {
            ++rep.checked;
            if (ks + Rat(p) * cache.term(m, c, d) == target)
                rep.solutions.push_back({k, c, d});
        }
    }
    rep.matches_expected =
        rep.solutions.size() == 2 &&
        rep.solutions[0].k == p && rep.solutions[0].c == 1 && rep.solutions[0].d == 1 &&
        rep.solutions[1].k == p && rep.solutions[1].c == m - 1 && rep.solutions[1].d == m - 1;
    return rep;
}

struct Theorem391Report {
    unsigned long long raw_ordered_triples = 0;  // before symmetry reduction
    unsigned long long canonical_multisets = 0;
    unsigned long long solutions_found = 0;
    bool pass = false;
    std::optional<std::vector<std::pair<int, int>>> violation;
};

namespace detail {

inline Theorem391Report theorem391_over_pairs(std::vector<std::pair<int, int>> pairs) {
    const int m = 9, p = 3;
    Theorem391Report rep;
    unsigned long long ordered = 0;
    for (const auto& [a, b] : pairs) ordered += (a == b) ? 1 : 2;
    rep.raw_ordered_triples = ordered * ordered * ordered;
    MultisetScan scan(m, p, std::move(pairs), 3);
    const long long scale1 = static_cast<long long>(m) * m;           // 81
    const long long scalep = static_cast<long long>(m / p) * (m / p); // 9
    bool exhausted = false;
    rep.pass = true;
    rep.canonical_multisets = scan.run(
        [&](const std::vector<int>& idx, const std::vector<long long>& s1,
            const std::vector<long long>& sp) {
            if (!is_scaled_constant(s1, scale1)) return true;  // sum != 1 at s = 1
            ++rep.solutions_found;
            if (!is_scaled_constant(sp, scalep)) {
                rep.pass = false;
                std::vector<std::pair<int, int>> bad;
                for (int i : idx) bad.push_back(scan.pairs()[static_cast<size_t>(i)]);
                rep.violation = std::move(bad);
                return false;
            }
            return true;
        },
        /*leaf_budget=*/~0ull, exhausted);
    return rep;
}

}  // namespace detail

/// Brute-force confirmation at m=9: every multiset of three unit-exponent defect
/// terms summing to 1 still sums to 1 after multiplying exponents by 3.
inline Theorem391Report verify_theorem_391() {
    return detail::theorem391_over_pairs(detail::canonical_pairs(9, /*units_only=*/true));
}

struct CounterexampleSearch {
    enum class Status { found, none_exists, budget_exhausted };
    Status status = Status::none_exists;
    std::optional<DefectDataset> certificate;
    unsigned long long examined = 0;  // canonical multisets visited
    std::string sum_s1, sum_sp;       // exact re-verified values when found
};

/// Search for a dataset of t+2 unit-exponent terms whose defect sum is t at s=1
/// but differs at s=p. Exhaustive in lexicographic multiset order within the
/// leaf budget; any certificate is re-verified through defect_sum before return.
inline CounterexampleSearch find_conjecture_counterexample(int m, int p, int t, int term_count,
                                                           unsigned long long budget) {
    if (m < 3 || p < 2 || m % p != 0)
        throw std::invalid_argument("find_conjecture_counterexample: need prime p dividing m");
    if (detail::smallest_prime_factor(p) != p)
        throw std::invalid_argument("find_conjecture_counterexample: p must be prime");
    if (term_count != t + 2)
        throw std::invalid_argument("find_conjecture_counterexample: term_count must equal t+2");
    if (m / p < 2)
        throw std::invalid_argument("find_conjecture_counterexample: m/p must be >= 2");

    CounterexampleSearch out;
    detail::MultisetScan scan(m, p, detail::canonical_pairs(m, /*units_only=*/true), term_count);
    const long long target1 = static_cast<long long>(m) * m * t;
    const long long targetp = static_cast<long long>(m / p) * (m / p) * t;
    bool exhausted = false;
    std::vector<int> found;
    out.examined = scan.run(
        [&](const std::vector<int>& idx, const std::vector<long long>& s1,
            const std::vector<long long>& sp) {
            if (!detail::is_scaled_constant(s1, target1)) return true;
            if (detail::is_scaled_constant(sp, targetp)) return true;
            found = idx;
            return false;
        },
        budget, exhausted);

    if (!found.empty()) {
        DefectDataset ds;
        ds.m = m;
        for (int i : found) {
            auto [a, b] = scan.pairs()[static_cast<size_t>(i)];
            ds.terms.emplace_back(a, b);
        }
        // Independent re-verification through the exact rational path.
        Cyclotomic s1 = defect_sum(ds, 1);
        Cyclotomic sp = defect_sum(ds, p);
        if (s1 != Cyclotomic::from_int(s1.conductor(), t) ||
            sp == Cyclotomic::from_int(sp.conductor(), t))
            throw std::logic_error("find_conjecture_counterexample: certificate failed re-verification");
        out.status = CounterexampleSearch::Status::found;
        out.certificate = std::move(ds);
        out.sum_s1 = s1.str();
        out.sum_sp = sp.str();
    } else {
        out.status = exhausted ? CounterexampleSearch::Status::none_exists
                               : CounterexampleSearch::Status::budget_exhausted;
    }
    return out;
}

}  // namespace sigfix
