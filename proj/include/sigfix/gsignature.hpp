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

#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigfix/cyclotomic.hpp"

namespace sigfix {

/// (zeta^a + 1) / (zeta^a - 1) at zeta = exp(2*pi*i/m); a must be nonzero mod m.
inline Cyclotomic defect_factor(int m, long long a) {
    if (m < 2) throw std::domain_error("defect_factor: conductor must be >= 2");
    long long aa = mod_norm(a, m);
    if (aa == 0) throw std::domain_error("defect_factor: zero exponent (pole)");
    Cyclotomic za = Cyclotomic::root_power(m, aa);
    Cyclotomic one = Cyclotomic::from_int(m, 1);
    return (za + one) * (za - one).inverse();
}

/// The two-factor defect contributed by an isolated fixed point with rotation
/// numbers (a, b): ((zeta^a+1)/(zeta^a-1)) * ((zeta^b+1)/(zeta^b-1)).
inline Cyclotomic defect_term(int m, long long a, long long b) {
    return defect_factor(m, a) * defect_factor(m, b);
}

/// The contribution -4 * euler * zeta^e / (zeta^e - 1)^2 of a fixed 2-sphere
/// with normal euler number `euler` and rotation number e (nonzero mod m).
inline Cyclotomic surface_term(int m, long long euler, long long e) {
    if (m < 2) throw std::domain_error("surface_term: conductor must be >= 2");
    long long ee = mod_norm(e, m);
    if (ee == 0) throw std::domain_error("surface_term: zero rotation (pole)");
    Cyclotomic ze = Cyclotomic::root_power(m, ee);
    Cyclotomic one = Cyclotomic::from_int(m, 1);
    Cyclotomic inv = (ze - one).inverse();
    return Rat(-4 * euler) * (ze * inv * inv);
}

/// Conjugacy type of a permutation on Z^n: the multiset of cycle lengths.
struct PermutationType {
    std::vector<long long> cycles;

    long long n() const {
        long long s = 0;
        for (long long p : cycles) s += p;
        return s;
    }
    long long order() const {
        long long l = 1;
        for (long long p : cycles) l = std::lcm(l, p);
        return l;
    }
    void validate() const {
        for (long long p : cycles)
            if (p < 1) throw std::invalid_argument("PermutationType: cycle lengths must be positive");
    }
};

/// Number of basis vectors fixed by the k-th power: sum of cycle lengths dividing k.
inline long long perm_trace(const PermutationType& perm, long long k) {
    long long t = 0;
    for (long long p : perm.cycles)
        if (k % p == 0) t += p;
    return t;
}

/// An orbit of q isolated singular points; the isotropy group is the index-q
/// subgroup and (c, d) are its rotation numbers mod m/q.
struct IsolatedOrbit {
    long long q = 1;
    long long c = 0;
    long long d = 0;
};

/// An orbit of q invariant 2-spheres with common normal euler number and
/// normal rotation number mod m/q.
struct SphereOrbit {
    long long q = 1;
    long long euler = 0;
    long long rot = 0;
};

/// Candidate fixed-point dataset for a cyclic action of order m together with
/// the claimed permutation type on middle homology.
struct ActionData {
    long long m = 1;
    std::vector<IsolatedOrbit> isolated;
    std::vector<SphereOrbit> spheres;
    PermutationType perm;

    void validate() const {
        if (m < 2) throw std::invalid_argument("ActionData: group order must be >= 2");
        perm.validate();
        for (long long p : perm.cycles)
            if (m % p != 0)
                throw std::invalid_argument("ActionData: cycle length does not divide group order");
        for (const auto& o : isolated) {
            if (o.q < 1 || m % o.q != 0)
                throw std::invalid_argument("ActionData: orbit size must divide group order");
            if (o.q == m)
                throw std::invalid_argument("ActionData: orbit with trivial isotropy is not singular");
            long long w = m / o.q;
            if (std::gcd(std::gcd(mod_norm(o.c, w), mod_norm(o.d, w)), w) != 1)
                throw std::invalid_argument("ActionData: isolated orbit data not effective");
        }
        for (const auto& s : spheres) {
            if (s.q < 1 || m % s.q != 0)
                throw std::invalid_argument("ActionData: sphere orbit size must divide group order");
            if (s.q == m)
                throw std::invalid_argument("ActionData: sphere orbit with trivial isotropy");
            if (mod_norm(s.rot, m / s.q) == 0)
                throw std::invalid_argument("ActionData: sphere rotation is zero");
        }
    }
};

/// Raised when a point claimed isolated under T^k in fact lies on a fixed
/// surface of T^k (a rotated rotation number vanishes).
class degenerate_orbit_error : public std::domain_error {
  public:
    degenerate_orbit_error(char kind, size_t index, long long power, const std::string& what)
        : std::domain_error(what), orbit_kind(kind), orbit_index(index), power(power) {}
    char orbit_kind;    // 'i' isolated, 's' sphere
    size_t orbit_index; // position within its list
    long long power;    // the power k at which degeneracy was detected
};

namespace detail {

/// Shared cache of defect factors per conductor; used to avoid re-running the
/// extended Euclidean inverse inside exhaustive loops. Not thread-safe; create
/// one per worker.
class DefectCache {
  public:
    const Cyclotomic& factor(int m, long long a) {
        auto& tab = factors_[m];
        if (tab.empty()) tab.assign(static_cast<size_t>(m), std::nullopt);
        long long aa = mod_norm(a, m);
        auto& slot = tab[static_cast<size_t>(aa)];
        if (!slot) slot = defect_factor(m, aa);
        return *slot;
    }
    Cyclotomic term(int m, long long a, long long b) { return factor(m, a) * factor(m, b); }

  private:
    std::map<int, std::vector<std::optional<Cyclotomic>>> factors_;
};

inline Cyclotomic g_signature_impl(const ActionData& data, long long k, DefectCache* cache) {
    if (k < 1 || k >= data.m)
        throw std::domain_error("g_signature: power must satisfy 1 <= k < m");
    long long g = std::gcd(k, data.m);
    int mp = static_cast<int>(data.m / g);  // T^k generates a cyclic group of this order
    long long u = mod_norm(k / g, mp);
    Cyclotomic acc(mp);
    for (size_t i = 0; i < data.isolated.size(); ++i) {
        const auto& o = data.isolated[i];
        if (k % o.q != 0) continue;  // no fixed points under T^k
        long long e1 = mod_norm(u * mod_norm(o.c, data.m / o.q), mp);
        long long e2 = mod_norm(u * mod_norm(o.d, data.m / o.q), mp);
        if (e1 == 0 || e2 == 0)
            throw degenerate_orbit_error(
                'i', i, k,
                "g_signature: isolated orbit " + std::to_string(i) +
                    " lies on a fixed surface of T^" + std::to_string(k));
        Cyclotomic term = cache ? cache->term(mp, e1, e2) : defect_term(mp, e1, e2);
        acc += Rat(o.q) * term;
    }
    for (size_t j = 0; j < data.spheres.size(); ++j) {
        const auto& s = data.spheres[j];
        if (k % s.q != 0) continue;
        long long e = mod_norm(u * mod_norm(s.rot, data.m / s.q), mp);
        if (e == 0)
            throw degenerate_orbit_error(
                's', j, k,
                "g_signature: sphere orbit " + std::to_string(j) +
                    " degenerates under T^" + std::to_string(k));
        acc += Rat(s.q) * surface_term(mp, s.euler, e);
    }
    return acc;
}

}  // namespace detail

/// Exact value of the signature defect sum for T^k: isolated orbits whose size
/// divides k contribute q * defect_term, sphere orbits q * surface_term, all
/// evaluated in Q(zeta_{m/gcd(k,m)}).
inline Cyclotomic g_signature(const ActionData& data, long long k) {
    return detail::g_signature_impl(data, k, nullptr);
}

struct LefschetzCheck {
    long long k = 0;
    long long chi_fixed = 0;  // Euler characteristic of Fix(T^k) from the dataset
    long long lefschetz = 0;  // 2 + trace of T^k on H_2
    bool pass = false;
};

/// Compare the fixed-set Euler characteristic with the Lefschetz number 2 + trace.
inline LefschetzCheck lefschetz_check(const ActionData& data, long long k) {
    LefschetzCheck r;
    r.k = k;
    for (const auto& o : data.isolated)
        if (k % o.q == 0) r.chi_fixed += o.q;
    for (const auto& s : data.spheres)
        if (k % s.q == 0) r.chi_fixed += 2 * s.q;
    r.lefschetz = 2 + perm_trace(data.perm, k);
    r.pass = (r.chi_fixed == r.lefschetz);
    return r;
}

struct PowerCheck {
    long long k = 0;
    std::string sigma;         // exact defect sum, serialized
    bool sigma_integral = false;
    long long trace = 0;
    bool sigma_matches = false;
    LefschetzCheck euler;
    bool pass = false;
};

struct VerifyActionReport {
    bool pass = false;
    std::vector<PowerCheck> powers;
};

/// Run the full consistency check: for every power 1 <= k < m the defect sum
/// must equal the (integer) homology trace and the Lefschetz count must match.
/// Degenerate-rotation errors propagate with orbit identification.
inline VerifyActionReport verify_action_data(const ActionData& data) {
    data.validate();
    detail::DefectCache cache;
    VerifyActionReport rep;
    rep.pass = true;
    for (long long k = 1; k < data.m; ++k) {
        PowerCheck pc;
        pc.k = k;
        Cyclotomic sig = detail::g_signature_impl(data, k, &cache);
        pc.sigma = sig.str();
        pc.trace = perm_trace(data.perm, k);
        auto n = sig.as_rational_integer();
        pc.sigma_integral = n.has_value();
        pc.sigma_matches = n.has_value() && *n == pc.trace;
        pc.euler = lefschetz_check(data, k);
        pc.pass = pc.sigma_matches && pc.euler.pass;
        rep.pass = rep.pass && pc.pass;
        rep.powers.push_back(std::move(pc));
    }
    return rep;
}

}  // namespace sigfix
