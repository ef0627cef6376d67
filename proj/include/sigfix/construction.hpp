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

#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sigfix/gsignature.hpp"

namespace sigfix {

/// Ordered list of local rotation pairs (a, b) mod m for isolated fixed points.
struct DataList {
    long long m = 1;
    std::vector<std::pair<long long, long long>> points;

    void validate() const {
        if (m < 2) throw std::invalid_argument("DataList: order must be >= 2");
        for (const auto& [a, b] : points) {
            if (mod_norm(a, m) == 0 || mod_norm(b, m) == 0)
                throw std::invalid_argument("DataList: zero rotation number");
            if (std::gcd(std::gcd(mod_norm(a, m), mod_norm(b, m)), m) != 1)
                throw std::invalid_argument("DataList: pair is not effective");
        }
    }
};

/// Modular inverse; throws when gcd(x, m) != 1.
inline long long mod_inverse(long long x, long long m) {
    long long a = mod_norm(x, m), b = m;
    long long s0 = 1, s1 = 0;
    while (b != 0) {
        long long q = a / b;
        a -= q * b;
        std::swap(a, b);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (a != 1) throw std::domain_error("mod_inverse: argument not invertible");
    return mod_norm(s0, m);
}

/// Fixed-point data of the standard linear action on the projective plane:
/// (a,b), (a-b,-b), (b-a,-a). Requires a != b mod m (otherwise the third
/// fixed stratum is a sphere, not a point).
inline DataList linear_cp2_data(long long m, long long a, long long b) {
    if (m < 3 || m % 2 == 0) throw std::invalid_argument("linear_cp2_data: m must be odd >= 3");
    long long aa = mod_norm(a, m), bb = mod_norm(b, m);
    if (aa == bb)
        throw std::domain_error("linear_cp2_data: a = b gives a fixed sphere; use a SphereOrbit");
    if (aa == 0 || bb == 0 || mod_norm(aa - bb, m) == 0)
        throw std::invalid_argument("linear_cp2_data: rotation numbers must be nonzero");
    if (std::gcd(std::gcd(aa, bb), m) != 1)
        throw std::invalid_argument("linear_cp2_data: gcd(a, b, m) must be 1");
    DataList d;
    d.m = m;
    d.points = {{aa, bb},
                {mod_norm(aa - bb, m), mod_norm(-bb, m)},
                {mod_norm(bb - aa, m), mod_norm(-aa, m)}};
    d.validate();
    return d;
}

/// Fixed-point data of the linear action on the 4-sphere: two poles with
/// cancelling data, so the defect sum is 0.
inline DataList linear_s4_data(long long m, long long a, long long b) {
    if (m < 3) throw std::invalid_argument("linear_s4_data: m must be >= 3");
    long long aa = mod_norm(a, m), bb = mod_norm(b, m);
    if (aa == 0 || bb == 0)
        throw std::invalid_argument("linear_s4_data: rotation numbers must be nonzero");
    if (std::gcd(std::gcd(aa, bb), m) != 1)
        throw std::invalid_argument("linear_s4_data: gcd(a, b, m) must be 1");
    DataList d;
    d.m = m;
    d.points = {{aa, bb}, {mod_norm(-aa, m), bb}};
    d.validate();
    return d;
}

/// Equivariant blow-up at the chosen point: (u, v) is replaced by
/// (u+v, v) and (-u-v, -u), raising the homology trace by one.
inline DataList blow_up(const DataList& data, size_t index) {
    if (index >= data.points.size()) throw std::invalid_argument("blow_up: index out of range");
    long long m = data.m;
    auto [u, v] = data.points[index];
    long long s = mod_norm(u + v, m);
    if (s == 0)
        throw std::domain_error("blow_up: u + v = 0 mod m, blow-up at this point degenerates");
    DataList out;
    out.m = m;
    for (size_t i = 0; i < data.points.size(); ++i)
        if (i != index) out.points.push_back(data.points[i]);
    out.points.emplace_back(s, mod_norm(v, m));
    out.points.emplace_back(mod_norm(-s, m), mod_norm(-u, m));
    out.validate();
    return out;
}

/// Defect sum of a point list at the primitive root, one term per point.
inline Cyclotomic data_defect_sum(const DataList& data) {
    data.validate();
    detail::DefectCache cache;
    Cyclotomic acc(static_cast<int>(data.m));
    for (const auto& [a, b] : data.points)
        acc += cache.term(static_cast<int>(data.m), a, b);
    return acc;
}

/// Linking number of two invariant circles with rotation numbers x and y in
/// the boundary of the standard ball with rotation data (a, b):
/// a*b*x'*y' mod m, where x*x' = y*y' = 1 mod m.
inline long long equivariant_linking(long long m, long long a, long long b, long long x,
                                     long long y) {
    long long xi = mod_inverse(x, m);
    long long yi = mod_inverse(y, m);
    return mod_norm(mod_norm(a * b, m) * mod_norm(xi * yi, m), m);
}

/// Local rotation data acquired by a 2-handle attached along a curve of
/// rotation number k with framing r: (-k, -r*k + a*b*k') mod m, k*k' = 1.
inline std::pair<long long, long long> framed_handle_type(long long m, long long a, long long b,
                                                          long long k, long long r) {
    long long ki = mod_inverse(k, m);
    long long first = mod_norm(-k, m);
    long long second = mod_norm(-mod_norm(r * k, m) + mod_norm(a * b, m) * ki, m);
    return {first, second};
}

/// Change of rotation data under an r-fold twist of the framing map:
/// (a, b) |-> (a, b - r*a) mod m.
inline std::pair<long long, long long> framing_twist(long long m, long long a, long long b,
                                                     long long r) {
    return {mod_norm(a, m), mod_norm(b - r * a, m)};
}

}  // namespace sigfix
