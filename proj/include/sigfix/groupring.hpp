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

#include <functional>
#include <stdexcept>
#include <vector>

#include "sigfix/cyclotomic.hpp"
#include "sigfix/lattice.hpp"

namespace sigfix {

/// Exact element of the integral group ring Z[C_m]; index i holds the
/// coefficient of T^i. Multiplication is cyclic convolution.
class GroupRingElement {
  public:
    explicit GroupRingElement(long long m)
        : m_(checked(m)), c_(static_cast<size_t>(m), Int(0)) {}

    static GroupRingElement monomial(long long m, long long k, Int coeff = Int(1)) {
        GroupRingElement x(m);
        x.c_[static_cast<size_t>(mod_norm(k, m))] = std::move(coeff);
        return x;
    }
    static GroupRingElement constant(long long m, Int v) {
        return monomial(m, 0, std::move(v));
    }
    /// The sum of all group elements.
    static GroupRingElement group_sum(long long m) {
        GroupRingElement x(m);
        for (auto& c : x.c_) c = 1;
        return x;
    }
    static GroupRingElement from_coeffs(long long m, std::vector<Int> coeffs) {
        if (static_cast<long long>(coeffs.size()) != m)
            throw std::invalid_argument("GroupRingElement: coefficient count must equal m");
        GroupRingElement x(m);
        x.c_ = std::move(coeffs);
        return x;
    }

    long long order() const { return m_; }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& coeff(long long i) const { return c_[static_cast<size_t>(mod_norm(i, m_))]; }

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.m_ == b.m_ && a.c_ == b.c_;
    }
    friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
        a.check_same(b);
        GroupRingElement r(a.m_);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
        a.check_same(b);
        GroupRingElement r(a.m_);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    GroupRingElement operator-() const {
        GroupRingElement r(m_);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
        return r;
    }
    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        a.check_same(b);
        GroupRingElement r(a.m_);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] == 0) continue;
                size_t k = i + j;
                if (k >= a.c_.size()) k -= a.c_.size();
                r.c_[k] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    GroupRingElement& operator+=(const GroupRingElement& o) { return *this = *this + o; }
    GroupRingElement& operator-=(const GroupRingElement& o) { return *this = *this - o; }
    GroupRingElement& operator*=(const GroupRingElement& o) { return *this = *this * o; }

    /// The involution T |-> T^{-1}.
    GroupRingElement involution() const {
        GroupRingElement r(m_);
        for (long long i = 0; i < m_; ++i)
            r.c_[static_cast<size_t>(mod_norm(-i, m_))] = c_[static_cast<size_t>(i)];
        return r;
    }

    /// Coefficient sum; a ring homomorphism onto Z.
    Int augmentation() const {
        Int s = 0;
        for (const Int& c : c_) s += c;
        return s;
    }

    bool is_zero() const {
        for (const Int& c : c_)
            if (c != 0) return false;
        return true;
    }
    bool is_one() const {
        if (c_[0] != 1) return false;
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    /// True when the support lies in the subgroup generated by T^q.
    bool supported_on_subgroup(long long q) const {
        for (long long i = 0; i < m_; ++i)
            if (i % q != 0 && c_[static_cast<size_t>(i)] != 0) return false;
        return true;
    }

  private:
    static long long checked(long long m) {
        if (m < 1) throw std::invalid_argument("GroupRingElement: order must be positive");
        return m;
    }
    void check_same(const GroupRingElement& o) const {
        if (m_ != o.m_) throw std::domain_error("GroupRingElement: group order mismatch");
    }

    long long m_;
    std::vector<Int> c_;
};

/// Character evaluation T |-> zeta_m^k; k = 0 recovers the augmentation.
inline Cyclotomic evaluate_at_root(const GroupRingElement& x, long long k) {
    int m = static_cast<int>(x.order());
    std::vector<Rat> acc(static_cast<size_t>(m), Rat(0));
    for (long long i = 0; i < m; ++i) {
        const Int& c = x.coeffs()[static_cast<size_t>(i)];
        if (c == 0) continue;
        acc[static_cast<size_t>(mod_norm(i * k, m))] += Rat(c);
    }
    Cyclotomic r(m);
    for (long long i = 0; i < m; ++i)
        if (acc[static_cast<size_t>(i)] != 0)
            r += acc[static_cast<size_t>(i)] * Cyclotomic::root_power(m, i);
    return r;
}

/// Small matrix over Z[C_m].
class GroupRingMatrix {
  public:
    GroupRingMatrix(long long m, long long rows, long long cols)
        : m_(m), rows_(rows), cols_(cols),
          e_(static_cast<size_t>(rows * cols), GroupRingElement(m)) {}

    long long order() const { return m_; }
    long long rows() const { return rows_; }
    long long cols() const { return cols_; }
    GroupRingElement& at(long long i, long long j) { return e_[static_cast<size_t>(i * cols_ + j)]; }
    const GroupRingElement& at(long long i, long long j) const {
        return e_[static_cast<size_t>(i * cols_ + j)];
    }

    /// Hermitian with respect to the involution: at(j,i) == at(i,j)^*.
    bool is_hermitian() const {
        if (rows_ != cols_) return false;
        for (long long i = 0; i < rows_; ++i)
            for (long long j = i; j < cols_; ++j)
                if (!(at(j, i) == at(i, j).involution())) return false;
        return true;
    }

  private:
    long long m_, rows_, cols_;
    std::vector<GroupRingElement> e_;
};

/// Determinant by cofactor expansion along the first row (sizes here are tiny).
inline GroupRingElement gr_determinant(const GroupRingMatrix& a) {
    if (a.rows() != a.cols()) throw std::domain_error("gr_determinant: matrix must be square");
    long long n = a.rows();
    if (n == 0) return GroupRingElement::constant(a.order(), 1);
    if (n == 1) return a.at(0, 0);
    GroupRingElement det(a.order());
    for (long long j = 0; j < n; ++j) {
        if (a.at(0, j).is_zero()) continue;
        GroupRingMatrix minor(a.order(), n - 1, n - 1);
        for (long long i = 1; i < n; ++i) {
            long long cc = 0;
            for (long long c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(i - 1, cc++) = a.at(i, c);
            }
        }
        GroupRingElement term = a.at(0, j) * gr_determinant(minor);
        if (j % 2 == 0) det += term;
        else det -= term;
    }
    return det;
}

/// M11*M22 - M12*M21 for a 2x2 matrix.
inline GroupRingElement det_2x2(const GroupRingMatrix& a) {
    if (a.rows() != 2 || a.cols() != 2)
        throw std::domain_error("det_2x2: matrix must be 2x2");
    return a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
}

/// Replace each entry (supported on the subgroup generated by T^q) by the
/// integer matrix of its multiplication action on that subgroup ring,
/// producing a block-circulant symmetric integer form of size rows * (m/q).
inline IntSymMatrix regular_expand(const GroupRingMatrix& a, long long q) {
    if (a.rows() != a.cols()) throw std::domain_error("regular_expand: matrix must be square");
    long long m = a.order();
    if (q < 1 || m % q != 0) throw std::domain_error("regular_expand: q must divide m");
    for (long long i = 0; i < a.rows(); ++i)
        for (long long j = 0; j < a.cols(); ++j)
            if (!a.at(i, j).supported_on_subgroup(q))
                throw std::domain_error("regular_expand: entry not supported on the subgroup");
    if (!a.is_hermitian())
        throw std::domain_error("regular_expand: matrix is not involution-symmetric");

    long long w = m / q;
    long long n = a.rows() * w;
    IntSymMatrix out(n);
    for (long long bi = 0; bi < a.rows(); ++bi) {
        for (long long bj = 0; bj < a.cols(); ++bj) {
            const GroupRingElement& x = a.at(bi, bj);
            for (long long r = 0; r < w; ++r)
                for (long long s = 0; s < w; ++s) {
                    const Int& c = x.coeff(q * mod_norm(r - s, w));
                    // writes both mirrors; hermitian symmetry makes this consistent
                    out.set(bi * w + r, bj * w + s, c);
                }
        }
    }
    return out;
}

/// Product over all characters of the subgroup of the complex determinant of
/// the evaluated matrix; equals the determinant of the regular expansion.
inline Int character_det_product(const GroupRingMatrix& a, long long q) {
    if (a.rows() != a.cols())
        throw std::domain_error("character_det_product: matrix must be square");
    long long m = a.order();
    if (q < 1 || m % q != 0) throw std::domain_error("character_det_product: q must divide m");
    int w = static_cast<int>(m / q);
    Cyclotomic prod = Cyclotomic::from_int(w, 1);
    for (int k = 0; k < w; ++k) {
        // evaluate entries at T^q |-> zeta_w^k via the compressed coefficients
        long long n = a.rows();
        std::vector<std::vector<Cyclotomic>> ev(
            static_cast<size_t>(n), std::vector<Cyclotomic>(static_cast<size_t>(n), Cyclotomic(w)));
        for (long long i = 0; i < n; ++i)
            for (long long j = 0; j < n; ++j) {
                const GroupRingElement& x = a.at(i, j);
                if (!x.supported_on_subgroup(q))
                    throw std::domain_error("character_det_product: entry off the subgroup");
                std::vector<Int> cc(static_cast<size_t>(w));
                for (int t = 0; t < w; ++t) cc[static_cast<size_t>(t)] = x.coeff(q * t);
                ev[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    evaluate_at_root(GroupRingElement::from_coeffs(w, std::move(cc)), k);
            }
        // cofactor determinant of the evaluated matrix
        std::function<Cyclotomic(const std::vector<std::vector<Cyclotomic>>&)> det =
            [&](const std::vector<std::vector<Cyclotomic>>& mat) -> Cyclotomic {
            size_t nn = mat.size();
            if (nn == 1) return mat[0][0];
            Cyclotomic acc(w);
            for (size_t j = 0; j < nn; ++j) {
                std::vector<std::vector<Cyclotomic>> minor;
                for (size_t i = 1; i < nn; ++i) {
                    std::vector<Cyclotomic> row;
                    for (size_t c = 0; c < nn; ++c)
                        if (c != j) row.push_back(mat[i][c]);
                    minor.push_back(std::move(row));
                }
                Cyclotomic term = mat[0][j] * det(minor);
                if (j % 2 == 0) acc += term;
                else acc -= term;
            }
            return acc;
        };
        prod *= det(ev);
    }
    auto n = prod.as_rational_integer();
    if (!n)
        throw std::logic_error("character_det_product: product is not a rational integer");
    return *n;
}

}  // namespace sigfix
