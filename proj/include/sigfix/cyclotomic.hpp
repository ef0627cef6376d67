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

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigfix {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

/// Least nonnegative representative of a mod m (m >= 1).
inline long long mod_norm(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

inline int euler_phi(int m) {
    if (m < 1) throw std::domain_error("euler_phi: m must be positive");
    int result = m;
    int n = m;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace detail {

// Exact division of integer polynomials; divisor must be monic and divide evenly.
inline std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
    const int dd = static_cast<int>(den.size()) - 1;
    if (dd < 0 || den[dd] != 1) throw std::logic_error("poly_div_exact: divisor not monic");
    const int dn = static_cast<int>(num.size()) - 1;
    if (dn < dd) throw std::logic_error("poly_div_exact: degree underflow");
    std::vector<Int> quot(dn - dd + 1, Int(0));
    for (int i = dn; i >= dd; --i) {
        Int lead = num[i];
        if (lead == 0) continue;
        quot[i - dd] = lead;
        for (int j = 0; j <= dd; ++j) num[i - dd + j] -= lead * den[j];
    }
    for (const Int& c : num)
        if (c != 0) throw std::logic_error("poly_div_exact: division not exact");
    return quot;
}

}  // namespace detail

/// The m-th cyclotomic polynomial, coefficients low-to-high (monic, degree phi(m)).
/// Prime powers use the closed form 1 + x^{p^{t-1}} + ... + x^{(p-1)p^{t-1}};
/// general m is obtained by exact division of x^m - 1 by all proper divisors' polynomials.
inline const std::vector<Int>& cyclotomic_polynomial(int m) {
    if (m < 1) throw std::domain_error("cyclotomic_polynomial: m must be positive");
    static std::map<int, std::vector<Int>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }

    std::vector<Int> phi;
    if (m == 1) {
        phi = {Int(-1), Int(1)};
    } else {
        // Detect prime power m = p^t.
        int p = 0, n = m;
        for (int q = 2; q * q <= n; ++q) {
            if (n % q == 0) { p = q; break; }
        }
        if (p == 0) p = n;
        int t = 0, pw = 1;
        while (pw < m) { pw *= p; ++t; }
        if (pw == m) {
            int step = 1;
            for (int i = 1; i < t; ++i) step *= p;
            phi.assign(static_cast<size_t>((p - 1) * step) + 1, Int(0));
            for (int i = 0; i < p; ++i) phi[static_cast<size_t>(i * step)] = 1;
        } else {
            // (x^m - 1) / prod_{d | m, d < m} Phi_d; recursion happens with the lock released.
            std::vector<Int> num(static_cast<size_t>(m) + 1, Int(0));
            num[0] = -1;
            num[static_cast<size_t>(m)] = 1;
            for (int d = 1; d < m; ++d) {
                if (m % d != 0) continue;
                num = detail::poly_div_exact(std::move(num), cyclotomic_polynomial(d));
            }
            phi = std::move(num);
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [pos, inserted] = cache.emplace(m, std::move(phi));
    (void)inserted;
    return pos->second;
}

namespace detail {

// Reduce a rational polynomial in place modulo the (monic) m-th cyclotomic polynomial,
// leaving exactly phi(m) coefficients.
inline void reduce_mod_cyclotomic(std::vector<Rat>& c, int m) {
    const std::vector<Int>& phi = cyclotomic_polynomial(m);
    const int deg = static_cast<int>(phi.size()) - 1;
    for (int i = static_cast<int>(c.size()) - 1; i >= deg; --i) {
        if (c[static_cast<size_t>(i)] == 0) continue;
        Rat lead = c[static_cast<size_t>(i)];
        for (int j = 0; j <= deg; ++j)
            c[static_cast<size_t>(i - deg + j)] -= lead * Rat(phi[static_cast<size_t>(j)]);
    }
    c.resize(static_cast<size_t>(deg), Rat(0));
}

inline int poly_degree(const std::vector<Rat>& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

}  // namespace detail

/// An exact element of Q(zeta_m), stored as the unique polynomial representative
/// of degree < phi(m) modulo the m-th cyclotomic polynomial.
/// Values are immutable after construction; all operations are pure.
class Cyclotomic {
  public:
    explicit Cyclotomic(int m) : m_(checked(m)), c_(static_cast<size_t>(euler_phi(m)), Rat(0)) {}

    static Cyclotomic from_rational(int m, const Rat& v) {
        Cyclotomic x(m);
        x.c_[0] = v;
        return x;
    }
    static Cyclotomic from_int(int m, long long v) { return from_rational(m, Rat(v)); }

    /// Canonical form of zeta_m^k (k taken mod m).
    static Cyclotomic root_power(int m, long long k) {
        checked(m);
        long long kk = mod_norm(k, m);
        std::vector<Rat> buf(static_cast<size_t>(m), Rat(0));
        buf[static_cast<size_t>(kk)] = 1;
        detail::reduce_mod_cyclotomic(buf, m);
        Cyclotomic x(m);
        x.c_ = std::move(buf);
        return x;
    }

    int conductor() const { return m_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rat& v) { return v == 0; });
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        return a.m_ == b.m_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        a.check_same(b);
        Cyclotomic r(a.m_);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        a.check_same(b);
        Cyclotomic r(a.m_);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    Cyclotomic operator-() const {
        Cyclotomic r(m_);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
        return r;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        a.check_same(b);
        std::vector<Rat> prod(a.c_.size() + b.c_.size(), Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] == 0) continue;
                prod[i + j] += a.c_[i] * b.c_[j];
            }
        }
        detail::reduce_mod_cyclotomic(prod, a.m_);
        Cyclotomic r(a.m_);
        r.c_ = std::move(prod);
        assert(static_cast<int>(r.c_.size()) == euler_phi(r.m_));
        return r;
    }
    friend Cyclotomic operator*(const Rat& s, const Cyclotomic& a) {
        Cyclotomic r(a.m_);
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = s * a.c_[i];
        return r;
    }
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    /// Multiplicative inverse, by the extended Euclidean algorithm against Phi_m over Q.
    Cyclotomic inverse() const {
        if (is_zero()) throw std::domain_error("Cyclotomic::inverse: division by zero");
        const std::vector<Int>& phi_int = cyclotomic_polynomial(m_);
        std::vector<Rat> a(c_);
        std::vector<Rat> b(phi_int.size());
        for (size_t i = 0; i < phi_int.size(); ++i) b[i] = Rat(phi_int[i]);

        std::vector<Rat> sa{Rat(1)}, sb{Rat(0)};
        while (detail::poly_degree(b) >= 0) {
            // divmod(a, b)
            std::vector<Rat> q(std::max<size_t>(a.size(), 1), Rat(0));
            std::vector<Rat> r(a);
            int db = detail::poly_degree(b);
            Rat blead = b[static_cast<size_t>(db)];
            for (int i = detail::poly_degree(r); i >= db; i = detail::poly_degree(r)) {
                Rat f = r[static_cast<size_t>(i)] / blead;
                q[static_cast<size_t>(i - db)] = f;
                for (int j = 0; j <= db; ++j)
                    r[static_cast<size_t>(i - db + j)] -= f * b[static_cast<size_t>(j)];
            }
            // (a, b) <- (b, r); (sa, sb) <- (sb, sa - q*sb)
            std::vector<Rat> new_sb(std::max(sa.size(), q.size() + sb.size()), Rat(0));
            for (size_t i = 0; i < sa.size(); ++i) new_sb[i] = sa[i];
            for (size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                for (size_t j = 0; j < sb.size(); ++j) new_sb[i + j] -= q[i] * sb[j];
            }
            a = std::move(b);
            b = std::move(r);
            sa = std::move(sb);
            sb = std::move(new_sb);
        }
        int dg = detail::poly_degree(a);
        if (dg != 0)
            throw std::logic_error("Cyclotomic::inverse: gcd with Phi_m not constant");
        Rat g = a[0];
        std::vector<Rat> inv(sa.size(), Rat(0));
        for (size_t i = 0; i < sa.size(); ++i) inv[i] = sa[i] / g;
        detail::reduce_mod_cyclotomic(inv, m_);
        Cyclotomic r(m_);
        r.c_ = std::move(inv);
        return r;
    }

    /// Field automorphism zeta |-> zeta^k; requires gcd(k, m) = 1.
    Cyclotomic galois(long long k) const {
        long long kk = mod_norm(k, m_);
        if (std::gcd(kk, static_cast<long long>(m_)) != 1)
            throw std::domain_error("Cyclotomic::galois: exponent not coprime to conductor");
        std::vector<Rat> buf(static_cast<size_t>(m_), Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            buf[static_cast<size_t>(mod_norm(static_cast<long long>(i) * kk, m_))] += c_[i];
        }
        detail::reduce_mod_cyclotomic(buf, m_);
        Cyclotomic r(m_);
        r.c_ = std::move(buf);
        return r;
    }

    /// The value as an exact rational, when it lies in Q.
    std::optional<Rat> as_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return std::nullopt;
        return c_[0];
    }

    /// The value as a rational integer, when it is one.
    std::optional<Int> as_rational_integer() const {
        auto r = as_rational();
        if (!r) return std::nullopt;
        if (denominator(*r) != 1) return std::nullopt;
        return numerator(*r);
    }

    /// Image under the inclusion Q(zeta_m) -> Q(zeta_M), zeta_m |-> zeta_M^{M/m}; m | M.
    Cyclotomic embedded(int big_m) const {
        if (big_m < 1 || big_m % m_ != 0)
            throw std::domain_error("Cyclotomic::embedded: conductor does not divide target");
        int ratio = big_m / m_;
        std::vector<Rat> buf(static_cast<size_t>(big_m), Rat(0));
        for (size_t i = 0; i < c_.size(); ++i)
            buf[i * static_cast<size_t>(ratio)] = c_[i];
        detail::reduce_mod_cyclotomic(buf, big_m);
        Cyclotomic r(big_m);
        r.c_ = std::move(buf);
        return r;
    }

    /// "c0 + c1*z + ... (mod Phi_m)" with exact rational coefficients.
    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!first) os << " + ";
            os << c_[i];
            if (i == 1) os << "*z";
            else if (i > 1) os << "*z^" << i;
            first = false;
        }
        if (first) os << "0";
        os << " (mod Phi_" << m_ << ")";
        return os.str();
    }

  private:
    static int checked(int m) {
        if (m < 1) throw std::domain_error("Cyclotomic: conductor must be positive");
        return m;
    }
    void check_same(const Cyclotomic& o) const {
        if (m_ != o.m_) throw std::domain_error("Cyclotomic: conductor mismatch");
    }

    int m_;
    std::vector<Rat> c_;
};

}  // namespace sigfix
