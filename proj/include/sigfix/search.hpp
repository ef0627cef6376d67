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
#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "sigfix/groupring.hpp"
#include "sigfix/lattice.hpp"
#include "sigfix/numtheory.hpp"

namespace sigfix {

// ---------------------------------------------------------------------------
// Defect-equation search
// ---------------------------------------------------------------------------

struct DefectSearchResult {
    int p = 0, s = 0;
    unsigned long long raw_ordered_tuples = 0;   // ((p-1)^2)^s before any reduction
    unsigned long long canonical_multisets = 0;  // multisets actually enumerated
    // canonical solutions: pairs sorted within, lists sorted, least of the
    // orbit under global negation
    std::vector<std::vector<std::pair<int, int>>> solutions;
};

namespace detail {

inline std::vector<std::pair<int, int>> negate_dataset(const std::vector<std::pair<int, int>>& ds,
                                                       int p) {
    std::vector<std::pair<int, int>> out;
    for (auto [a, b] : ds) {
        int na = p - a, nb = p - b;
        if (na > nb) std::swap(na, nb);
        out.emplace_back(na, nb);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// All multisets of s nonzero exponent pairs mod p whose defect sum equals s,
/// reported up to swapping within pairs and global negation.
inline DefectSearchResult search_defect_solution(int p, int s) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("search_defect_solution: p must be odd >= 3");
    if (s < 1) throw std::invalid_argument("search_defect_solution: s must be >= 1");
    DefectSearchResult out;
    out.p = p;
    out.s = s;
    unsigned long long per = static_cast<unsigned long long>(p - 1) * (p - 1);
    out.raw_ordered_tuples = 1;
    for (int i = 0; i < s; ++i) out.raw_ordered_tuples *= per;

    auto pairs = detail::canonical_pairs(p, /*units_only=*/false);
    detail::DefectCache cache;
    std::vector<std::vector<long long>> terms;
    for (auto [a, b] : pairs) terms.push_back(detail::scaled_term(cache, p, a, b));
    const size_t len = terms.empty() ? 0 : terms[0].size();
    const long long target = static_cast<long long>(p) * p * s;

    std::vector<long long> sum(len, 0);
    std::vector<int> idx(static_cast<size_t>(s), 0);
    std::function<void(int, int)> rec = [&](int depth, int start) {
        if (depth == s) {
            ++out.canonical_multisets;
            if (!detail::is_scaled_constant(sum, target)) return;
            std::vector<std::pair<int, int>> ds;
            for (int i : idx) ds.push_back(pairs[static_cast<size_t>(i)]);
            // keep only the least representative under global negation
            if (detail::negate_dataset(ds, p) < ds) return;
            out.solutions.push_back(std::move(ds));
            return;
        }
        for (int i = start; i < static_cast<int>(pairs.size()); ++i) {
            idx[static_cast<size_t>(depth)] = i;
            for (size_t j = 0; j < len; ++j) sum[j] += terms[static_cast<size_t>(i)][j];
            rec(depth + 1, i);
            for (size_t j = 0; j < len; ++j) sum[j] -= terms[static_cast<size_t>(i)][j];
        }
    };
    rec(0, 0);

    // re-verify every reported solution through the exact rational path
    for (const auto& ds : out.solutions) {
        DefectDataset check;
        check.m = p;
        for (auto [a, b] : ds) check.terms.emplace_back(a, b);
        if (defect_sum(check, 1) != Cyclotomic::from_int(p, s))
            throw std::logic_error("search_defect_solution: solution failed re-verification");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Linking-matrix search
// ---------------------------------------------------------------------------

/// Congruence template and bounds for the nine parameters
/// (a0, a1, a2, b0, b1, b2, c0, c1, c2) of the 2x2 symmetric matrix over the
/// order-5 subgroup ring.
struct SearchConstraints {
    long long modulus = 5;
    std::array<long long, 9> residue{};
    std::array<long long, 9> lo{};
    std::array<long long, 9> hi{};

    void validate() const {
        if (modulus < 1) throw std::invalid_argument("SearchConstraints: modulus must be >= 1");
        for (int i = 0; i < 9; ++i)
            if (lo[static_cast<size_t>(i)] > hi[static_cast<size_t>(i)])
                throw std::invalid_argument("SearchConstraints: empty bound range");
    }
};

struct LinkingCandidate {
    std::array<long long, 9> params{};
    bool groupring_det_one = false;
    bool positive_definite = false;
    bool split_found = false;
    long long reduce_op_count = -1;  // -1 when the greedy reduction stalls
    bool reduce_identity = false;
};

struct LinkingSearchResult {
    bool prune = true;
    unsigned long long enumerated = 0;     // tuples meeting congruences and bounds
    unsigned long long certify_calls = 0;  // tuples that reached certification
    std::vector<LinkingCandidate> emitted;
};

namespace detail {

inline std::vector<long long> slot_values(const SearchConstraints& c, int slot) {
    std::vector<long long> vals;
    long long r = mod_norm(c.residue[static_cast<size_t>(slot)], c.modulus);
    long long lo = c.lo[static_cast<size_t>(slot)], hi = c.hi[static_cast<size_t>(slot)];
    long long first = lo + mod_norm(r - lo, c.modulus);
    for (long long v = first; v <= hi; v += c.modulus) vals.push_back(v);
    return vals;
}

inline GroupRingMatrix linking_matrix_from_params(long long m, long long q,
                                                  const std::array<long long, 9>& t) {
    auto entry = [&](long long c0, long long c1, long long c2) {
        GroupRingElement x = GroupRingElement::constant(m, Int(c0));
        x += GroupRingElement::monomial(m, q, Int(c1));
        x += GroupRingElement::monomial(m, 4 * q, Int(c1));
        x += GroupRingElement::monomial(m, 2 * q, Int(c2));
        x += GroupRingElement::monomial(m, 3 * q, Int(c2));
        return x;
    };
    GroupRingMatrix mat(m, 2, 2);
    mat.at(0, 0) = entry(t[0], t[1], t[2]);
    mat.at(0, 1) = entry(t[3], t[4], t[5]);
    mat.at(1, 0) = entry(t[3], t[4], t[5]);
    mat.at(1, 1) = entry(t[6], t[7], t[8]);
    return mat;
}

/// Value of x0 + x1*(z+z^4) + x2*(z^2+z^3) in the basis 1, z, z^2, z^3 of
/// Z[z]/Phi_5: substituting z^4 = -1-z-z^2-z^3.
inline std::array<long long, 4> zeta5_symmetric(long long x0, long long x1, long long x2) {
    return {x0 - x1, 0, x2 - x1, x2 - x1};
}

inline std::array<long long, 4> zeta5_mul(const std::array<long long, 4>& a,
                                          const std::array<long long, 4>& b) {
    long long raw[7] = {0, 0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) raw[i + j] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    // reduce z^4..z^6 with z^4 = -(1+z+z^2+z^3)
    for (int k = 6; k >= 4; --k) {
        long long c = raw[k];
        if (c == 0) continue;
        raw[k] = 0;
        for (int j = 0; j <= 3; ++j) raw[k - 4 + j] -= c;
    }
    return {raw[0], raw[1], raw[2], raw[3]};
}

/// Full certification chain; returns the candidate only when everything holds.
inline std::optional<LinkingCandidate> certify_linking_tuple(long long m, long long q,
                                                             const std::array<long long, 9>& t) {
    GroupRingMatrix mat = linking_matrix_from_params(m, q, t);
    LinkingCandidate cand;
    cand.params = t;
    GroupRingElement det = det_2x2(mat);
    cand.groupring_det_one = det.is_one();
    if (!cand.groupring_det_one) return std::nullopt;

    IntSymMatrix x = regular_expand(mat, q);
    Int det_int = determinant(x);
    if (det_int != 1) return std::nullopt;
    // the two determinant routes must agree for every certified candidate
    if (character_det_product(mat, q) != det_int)
        throw std::logic_error("certify_linking_tuple: character product disagrees with Bareiss");

    cand.positive_definite = is_positive_definite(x);
    if (!cand.positive_definite) return std::nullopt;

    NormOneSplit split = norm_one_split(x);
    cand.split_found = split.transform.has_value();
    if (!cand.split_found) return std::nullopt;

    try {
        ReduceResult red = reduce_to_diagonal(x);
        cand.reduce_op_count = red.op_count;
        cand.reduce_identity = (red.reduced == IntSymMatrix::identity(x.rank()));
    } catch (const reduction_stall_error& e) {
        cand.reduce_op_count = -1;
        cand.reduce_identity = false;
        (void)e;
    }
    return cand;
}

}  // namespace detail

/// Exhaustive search for parameter tuples whose expanded rank-10 form is the
/// standard one. Partitioned by (a0, b0); emission order is partition order,
/// then (a1, a2, b1, b2), then (c0, c1, c2) -- identical with and without
/// pruning and independent of the thread count.
inline LinkingSearchResult search_linking_matrix(const SearchConstraints& con, long long m,
                                                 long long q, bool prune, int threads = 1,
                                                 const std::string& checkpoint_path = "",
                                                 bool resume = false) {
    con.validate();
    if (q < 1 || m % q != 0 || m / q != 5)
        throw std::invalid_argument("search_linking_matrix: need a subgroup of order 5 (m/q = 5)");
    if (threads < 1) throw std::invalid_argument("search_linking_matrix: threads must be >= 1");

    std::array<std::vector<long long>, 9> vals;
    for (int i = 0; i < 9; ++i) vals[static_cast<size_t>(i)] = detail::slot_values(con, i);

    struct Task {
        long long a0, b0;
    };
    std::vector<Task> tasks;
    for (long long a0 : vals[0])
        for (long long b0 : vals[3]) tasks.push_back({a0, b0});

    std::set<size_t> skip;
    if (resume && !checkpoint_path.empty()) {
        std::ifstream in(checkpoint_path);
        std::string word;
        while (in >> word) {
            if (word == "done") {
                size_t i;
                if (in >> i) skip.insert(i);
            }
        }
    }

    struct TaskOut {
        unsigned long long enumerated = 0;
        unsigned long long certify_calls = 0;
        std::vector<LinkingCandidate> emitted;
    };
    std::vector<TaskOut> outs(tasks.size());

    const unsigned long long c_block = static_cast<unsigned long long>(vals[6].size()) *
                                       vals[7].size() * vals[8].size();

    auto run_task = [&](size_t ti) {
        const Task& task = tasks[ti];
        TaskOut& out = outs[ti];
        for (long long a1 : vals[1])
            for (long long a2 : vals[2]) {
                long long alpha = task.a0 + 2 * a1 + 2 * a2;
                for (long long b1 : vals[4])
                    for (long long b2 : vals[5]) {
                        long long beta = task.b0 + 2 * b1 + 2 * b2;
                        out.enumerated += c_block;
                        std::vector<std::array<long long, 3>> ctuples;
                        if (prune) {
                            // determinant factor at the trivial character must be 1
                            long long disc = beta * beta + 1;
                            if (alpha <= 0 || disc % alpha != 0) continue;
                            long long gamma = disc / alpha;
                            for (long long c1 : vals[7])
                                for (long long c2 : vals[8]) {
                                    long long c0 = gamma - 2 * c1 - 2 * c2;
                                    if (c0 < con.lo[6] || c0 > con.hi[6]) continue;
                                    if (mod_norm(c0, con.modulus) !=
                                        mod_norm(con.residue[6], con.modulus))
                                        continue;
                                    ctuples.push_back({c0, c1, c2});
                                }
                            std::sort(ctuples.begin(), ctuples.end());
                            // determinant factor at the nontrivial characters must be 1
                            auto av = detail::zeta5_symmetric(task.a0, a1, a2);
                            auto bv = detail::zeta5_symmetric(task.b0, b1, b2);
                            std::vector<std::array<long long, 3>> kept;
                            for (const auto& c : ctuples) {
                                auto cv = detail::zeta5_symmetric(c[0], c[1], c[2]);
                                auto d = detail::zeta5_mul(av, cv);
                                auto bb = detail::zeta5_mul(bv, bv);
                                for (int i = 0; i < 4; ++i) d[static_cast<size_t>(i)] -= bb[static_cast<size_t>(i)];
                                if (d == std::array<long long, 4>{1, 0, 0, 0}) kept.push_back(c);
                            }
                            ctuples = std::move(kept);
                        } else {
                            for (long long c0 : vals[6])
                                for (long long c1 : vals[7])
                                    for (long long c2 : vals[8]) ctuples.push_back({c0, c1, c2});
                        }
                        for (const auto& c : ctuples) {
                            std::array<long long, 9> params = {task.a0, a1, a2,     task.b0, b1,
                                                               b2,      c[0], c[1], c[2]};
                            ++out.certify_calls;
                            auto cand = detail::certify_linking_tuple(m, q, params);
                            if (cand) out.emitted.push_back(std::move(*cand));
                        }
                    }
            }
    };

    std::mutex ck_mutex;
    std::ofstream ck;
    if (!checkpoint_path.empty()) ck.open(checkpoint_path, std::ios::app);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t ti = next.fetch_add(1);
            if (ti >= tasks.size()) break;
            if (skip.count(ti)) continue;
            run_task(ti);
            if (ck.is_open()) {
                std::lock_guard<std::mutex> lock(ck_mutex);
                ck << "done " << ti << "\n";
                ck.flush();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    LinkingSearchResult result;
    result.prune = prune;
    for (const TaskOut& out : outs) {
        result.enumerated += out.enumerated;
        result.certify_calls += out.certify_calls;
        for (const auto& cand : out.emitted) result.emitted.push_back(cand);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Fixed-point data search
// ---------------------------------------------------------------------------

struct ActionSearchResult {
    long long m = 0;
    PermutationType perm;
    unsigned long long fixed_multisets = 0;   // multisets of point data scanned
    unsigned long long fixed_candidates = 0;  // with the correct defect sum at k=1
    unsigned long long orbit_multisets = 0;
    unsigned long long combos = 0;
    unsigned long long degenerate = 0;
    std::vector<ActionData> found;  // canonical representatives, sorted
};

namespace detail {

using PairList = std::vector<std::pair<int, int>>;

inline void enumerate_multisets(int domain, int count,
                                const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> idx(static_cast<size_t>(count), 0);
    std::function<void(int, int)> rec = [&](int depth, int start) {
        if (depth == count) {
            visit(idx);
            return;
        }
        for (int i = start; i < domain; ++i) {
            idx[static_cast<size_t>(depth)] = i;
            rec(depth + 1, i);
        }
    };
    if (count == 0) {
        std::vector<int> empty;
        visit(empty);
        return;
    }
    rec(0, 0);
}

}  // namespace detail

/// Exhaustive enumeration of candidate fixed-point datasets for a prime-square
/// order and a permutation type of shape t(1) + s(p) (+ r(p^2)): point data with
/// the required defect sum at the full order, orbit data unrestricted, every
/// combination pushed through the complete per-power verification.
inline ActionSearchResult search_fixed_point_data(long long m, const PermutationType& perm) {
    int p = 0;
    for (int cand = 3; static_cast<long long>(cand) * cand <= m; cand += 2)
        if (static_cast<long long>(cand) * cand == m) { p = cand; break; }
    if (p == 0 || detail::smallest_prime_factor(p) != p)
        throw std::invalid_argument("search_fixed_point_data: m must be the square of an odd prime");
    long long t = 0, s = 0;
    for (long long c : perm.cycles) {
        if (c == 1) ++t;
        else if (c == p) ++s;
        else if (c == m) continue;  // free orbits leave no singular trace below k = m
        else throw std::invalid_argument("search_fixed_point_data: cycles must be 1, p, or p^2");
    }

    ActionSearchResult out;
    out.m = m;
    out.perm = perm;

    // point data: nonzero effective pairs mod m, canonical within-pair order
    detail::PairList fpairs;
    for (int a = 1; a < m; ++a)
        for (int b = a; b < m; ++b)
            if (std::gcd(std::gcd(a, b), static_cast<int>(m)) == 1) fpairs.emplace_back(a, b);
    detail::DefectCache cache;
    std::vector<std::vector<long long>> fterms;
    for (auto [a, b] : fpairs)
        fterms.push_back(detail::scaled_term(cache, static_cast<int>(m), a, b));
    const size_t flen = fterms.empty() ? 0 : fterms[0].size();
    const long long ftarget = m * m * t;

    std::vector<std::vector<int>> fixed_sets;
    {
        std::vector<long long> sum(flen, 0);
        std::vector<int> idx(static_cast<size_t>(t + 2), 0);
        std::function<void(int, int)> rec = [&](int depth, int start) {
            if (depth == t + 2) {
                ++out.fixed_multisets;
                if (detail::is_scaled_constant(sum, ftarget)) fixed_sets.push_back(idx);
                return;
            }
            for (int i = start; i < static_cast<int>(fpairs.size()); ++i) {
                idx[static_cast<size_t>(depth)] = i;
                for (size_t j = 0; j < flen; ++j) sum[j] += fterms[static_cast<size_t>(i)][j];
                rec(depth + 1, i);
                for (size_t j = 0; j < flen; ++j) sum[j] -= fterms[static_cast<size_t>(i)][j];
            }
        };
        rec(0, 0);
    }
    out.fixed_candidates = fixed_sets.size();

    // orbit data mod p, unrestricted: the per-power verification decides
    detail::PairList opairs;
    for (int a = 1; a < p; ++a)
        for (int b = a; b < p; ++b) opairs.emplace_back(a, b);
    std::vector<std::vector<int>> orbit_sets;
    detail::enumerate_multisets(static_cast<int>(opairs.size()), static_cast<int>(s),
                                [&](const std::vector<int>& idx) { orbit_sets.push_back(idx); });
    out.orbit_multisets = orbit_sets.size();

    // fast per-power screen with scaled integer sums, then the exact verifier
    struct Grid {
        int mp;
        long long scale;
        size_t len;
        std::vector<std::vector<long long>> term;  // (a-1)*(mp-1)+(b-1)
    };
    auto build_grid = [&](int mp) {
        Grid g;
        g.mp = mp;
        g.scale = static_cast<long long>(mp) * mp;
        g.len = static_cast<size_t>(euler_phi(mp));
        g.term.assign(static_cast<size_t>((mp - 1) * (mp - 1)), {});
        for (int a = 1; a < mp; ++a)
            for (int b = 1; b < mp; ++b)
                g.term[static_cast<size_t>((a - 1) * (mp - 1) + (b - 1))] =
                    detail::scaled_term(cache, mp, a, b);
        return g;
    };
    Grid grid_m = build_grid(static_cast<int>(m));
    Grid grid_p = build_grid(p);

    std::set<std::pair<detail::PairList, detail::PairList>> canonical_found;
    auto canonical_key = [&](const detail::PairList& fixed, const detail::PairList& orbits) {
        auto norm = [](detail::PairList v, int mod) {
            for (auto& [a, b] : v)
                if (a > b) std::swap(a, b);
            (void)mod;
            std::sort(v.begin(), v.end());
            return v;
        };
        auto neg = [](detail::PairList v, int mod) {
            for (auto& [a, b] : v) {
                a = mod - a;
                b = mod - b;
                if (a > b) std::swap(a, b);
            }
            std::sort(v.begin(), v.end());
            return v;
        };
        std::pair<detail::PairList, detail::PairList> id{norm(fixed, static_cast<int>(m)),
                                                         norm(orbits, p)};
        std::pair<detail::PairList, detail::PairList> ng{neg(fixed, static_cast<int>(m)),
                                                         neg(orbits, p)};
        return std::min(id, ng);
    };

    for (const auto& fs : fixed_sets) {
        for (const auto& os : orbit_sets) {
            ++out.combos;
            // fast screen across every power
            bool ok = true, degenerate = false;
            for (long long k = 1; k < m && ok; ++k) {
                long long g = std::gcd(k, m);
                const Grid& grid = (g == 1) ? grid_m : grid_p;
                long long u = mod_norm(k / g, grid.mp);
                long long trace = perm_trace(perm, k);
                std::vector<long long> acc(grid.len, 0);
                long long chi = 0;
                auto add_pair = [&](long long q, int a, int b) {
                    long long e1 = mod_norm(u * (a % grid.mp), grid.mp);
                    long long e2 = mod_norm(u * (b % grid.mp), grid.mp);
                    if (e1 == 0 || e2 == 0) {
                        degenerate = true;
                        return;
                    }
                    const auto& tv =
                        grid.term[static_cast<size_t>((e1 - 1) * (grid.mp - 1) + (e2 - 1))];
                    for (size_t j = 0; j < grid.len; ++j) acc[j] += q * tv[j];
                    chi += q;
                };
                for (int fi : fs) {
                    add_pair(1, fpairs[static_cast<size_t>(fi)].first,
                             fpairs[static_cast<size_t>(fi)].second);
                    if (degenerate) break;
                }
                if (!degenerate && k % p == 0) {
                    for (int oi : os) {
                        add_pair(p, opairs[static_cast<size_t>(oi)].first,
                                 opairs[static_cast<size_t>(oi)].second);
                        if (degenerate) break;
                    }
                }
                if (degenerate) break;
                if (!detail::is_scaled_constant(acc, trace * grid.scale)) ok = false;
                if (ok && chi != 2 + trace) ok = false;
            }
            if (degenerate) {
                ++out.degenerate;
                continue;
            }
            if (!ok) continue;

            // exact confirmation through the public verifier
            ActionData data;
            data.m = m;
            data.perm = perm;
            for (int fi : fs)
                data.isolated.push_back({1, fpairs[static_cast<size_t>(fi)].first,
                                         fpairs[static_cast<size_t>(fi)].second});
            for (int oi : os)
                data.isolated.push_back({p, opairs[static_cast<size_t>(oi)].first,
                                         opairs[static_cast<size_t>(oi)].second});
            VerifyActionReport rep = verify_action_data(data);
            if (!rep.pass)
                throw std::logic_error("search_fixed_point_data: screen and verifier disagree");
            detail::PairList fixed, orbits;
            for (int fi : fs) fixed.push_back(fpairs[static_cast<size_t>(fi)]);
            for (int oi : os) orbits.push_back(opairs[static_cast<size_t>(oi)]);
            canonical_found.insert(canonical_key(fixed, orbits));
        }
    }

    for (const auto& [fixed, orbits] : canonical_found) {
        ActionData data;
        data.m = m;
        data.perm = perm;
        for (auto [a, b] : fixed) data.isolated.push_back({1, a, b});
        for (auto [a, b] : orbits) data.isolated.push_back({p, a, b});
        out.found.push_back(std::move(data));
    }
    return out;
}

}  // namespace sigfix
