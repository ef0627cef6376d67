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

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigfix/cyclotomic.hpp"

namespace sigfix {

/// Dense integer matrix with exact entries.
struct IntMatrix {
    long long rows = 0, cols = 0;
    std::vector<Int> v;

    IntMatrix() = default;
    IntMatrix(long long r, long long c) : rows(r), cols(c), v(static_cast<size_t>(r * c), Int(0)) {}

    static IntMatrix identity(long long n) {
        IntMatrix m(n, n);
        for (long long i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    Int& at(long long i, long long j) { return v[static_cast<size_t>(i * cols + j)]; }
    const Int& at(long long i, long long j) const { return v[static_cast<size_t>(i * cols + j)]; }

    IntMatrix transposed() const {
        IntMatrix t(cols, rows);
        for (long long i = 0; i < rows; ++i)
            for (long long j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols != b.rows) throw std::domain_error("IntMatrix: shape mismatch");
        IntMatrix r(a.rows, b.cols);
        for (long long i = 0; i < a.rows; ++i)
            for (long long k = 0; k < a.cols; ++k) {
                if (a.at(i, k) == 0) continue;
                for (long long j = 0; j < b.cols; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.v == b.v;
    }
};

/// Exact symmetric integer bilinear form.
class IntSymMatrix {
  public:
    IntSymMatrix() = default;
    explicit IntSymMatrix(long long n) : n_(n), a_(static_cast<size_t>(n * n), Int(0)) {}

    static IntSymMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
        long long n = static_cast<long long>(rows.size());
        IntSymMatrix m(n);
        for (long long i = 0; i < n; ++i) {
            if (static_cast<long long>(rows[static_cast<size_t>(i)].size()) != n)
                throw std::invalid_argument("IntSymMatrix: ragged rows");
            for (long long j = 0; j < n; ++j)
                m.a_[static_cast<size_t>(i * n + j)] = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
        for (long long i = 0; i < n; ++i)
            for (long long j = i + 1; j < n; ++j)
                if (m.at(i, j) != m.at(j, i))
                    throw std::invalid_argument("IntSymMatrix: matrix is not symmetric");
        return m;
    }

    static IntSymMatrix identity(long long n) {
        IntSymMatrix m(n);
        for (long long i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    long long rank() const { return n_; }
    const Int& at(long long i, long long j) const { return a_[static_cast<size_t>(i * n_ + j)]; }
    void set(long long i, long long j, Int v) {
        a_[static_cast<size_t>(i * n_ + j)] = v;
        a_[static_cast<size_t>(j * n_ + i)] = std::move(v);
    }

    IntMatrix as_matrix() const {
        IntMatrix m(n_, n_);
        m.v = a_;
        return m;
    }

    friend bool operator==(const IntSymMatrix& a, const IntSymMatrix& b) {
        return a.n_ == b.n_ && a.a_ == b.a_;
    }

  private:
    long long n_ = 0;
    std::vector<Int> a_;
};

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
inline Int determinant(const IntMatrix& m) {
    if (m.rows != m.cols) throw std::domain_error("determinant: matrix must be square");
    long long n = m.rows;
    if (n == 0) return 1;
    IntMatrix w = m;
    Int prev = 1;
    int sign = 1;
    for (long long k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            long long r = k + 1;
            while (r < n && w.at(r, k) == 0) ++r;
            if (r == n) return 0;
            for (long long j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(r, j));
            sign = -sign;
        }
        for (long long i = k + 1; i < n; ++i)
            for (long long j = k + 1; j < n; ++j)
                w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
        prev = w.at(k, k);
    }
    return sign * w.at(n - 1, n - 1);
}

inline Int determinant(const IntSymMatrix& a) { return determinant(a.as_matrix()); }

/// Leading principal minors D_1, ..., D_n; stops early (returning a short list)
/// if a zero minor makes the fraction-free recursion break down.
inline std::vector<Int> leading_principal_minors(const IntSymMatrix& a) {
    long long n = a.rank();
    IntMatrix w = a.as_matrix();
    std::vector<Int> minors;
    Int prev = 1;
    for (long long k = 0; k < n; ++k) {
        minors.push_back(w.at(k, k));  // equals D_{k+1} in Bareiss elimination
        if (w.at(k, k) == 0) break;
        for (long long i = k + 1; i < n; ++i)
            for (long long j = k + 1; j < n; ++j)
                w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
        prev = w.at(k, k);
    }
    return minors;
}

/// True iff all leading principal minors are positive.
inline bool is_positive_definite(const IntSymMatrix& a) {
    auto minors = leading_principal_minors(a);
    if (static_cast<long long>(minors.size()) < a.rank()) return false;
    for (const Int& d : minors)
        if (d <= 0) return false;
    return true;
}

/// The local-move trigger: some off-diagonal pair with 2|a_ij| > min(|a_ii|, |a_jj|).
inline bool needs_reduction(const IntSymMatrix& a) {
    long long n = a.rank();
    for (long long i = 0; i + 1 < n; ++i)
        for (long long j = i + 1; j < n; ++j)
            if (2 * abs(a.at(i, j)) > std::min(abs(a.at(i, i)), abs(a.at(j, j)))) return true;
    return false;
}

/// Raised when the greedy reduction can no longer make progress: every
/// qualifying pair either sits on a zero pivot (which the procedure skips)
/// or rounds to a zero multiplier.
class reduction_stall_error : public std::domain_error {
  public:
    reduction_stall_error(long long i, long long j, long long ops, const std::string& what)
        : std::domain_error(what), row(i), col(j), op_count(ops) {}
    long long row, col, op_count;
};

struct ReduceResult {
    IntSymMatrix reduced;
    long long op_count = 0;
    IntMatrix transform;  // unimodular U with U^T A U = reduced
};

/// Greedy simultaneous row/column reduction, replayed move for move:
/// outer pivot loop in index order, inner column loop in index order,
/// multiplier floor(|b_ij|/|b_ii|) with the sign of b_ij/b_ii, zero pivots
/// skipped, repeated until no pair triggers needs_reduction.
inline ReduceResult reduce_to_diagonal(const IntSymMatrix& input) {
    long long n = input.rank();
    IntSymMatrix b = input;
    IntMatrix u = IntMatrix::identity(n);
    long long count = 0;

    auto apply = [&](long long i, long long j, const Int& c) {
        // column j += c * column i, then row j += c * row i (congruence by I + c*E_ij)
        IntMatrix g = b.as_matrix();
        for (long long r = 0; r < n; ++r) g.at(r, j) += c * g.at(r, i);
        for (long long cc = 0; cc < n; ++cc) g.at(j, cc) += c * g.at(i, cc);
        for (long long r = 0; r < n; ++r)
            for (long long cc = r; cc < n; ++cc) b.set(r, cc, g.at(r, cc));
        for (long long r = 0; r < n; ++r) u.at(r, j) += c * u.at(r, i);
    };

    const long long max_passes = 100000;
    for (long long pass = 0; needs_reduction(b); ++pass) {
        if (pass >= max_passes)
            throw reduction_stall_error(-1, -1, count, "reduce_to_diagonal: pass limit exceeded");
        bool changed = false;
        for (long long i = 0; i < n; ++i) {
            if (b.at(i, i) == 0) continue;  // the procedure skips zero pivots
            for (long long j = 0; j < n; ++j) {
                if (j == i) continue;
                if (2 * abs(b.at(i, j)) <= abs(b.at(i, i))) continue;
                ++count;
                Int k = abs(b.at(i, j)) / abs(b.at(i, i));  // floor for nonnegative operands
                int e = (b.at(i, j) > 0) == (b.at(i, i) > 0) ? 1 : -1;
                if (k != 0) {
                    apply(i, j, Int(-e) * k);
                    changed = true;
                }
            }
        }
        if (!changed && needs_reduction(b)) {
            for (long long i = 0; i + 1 < n; ++i)
                for (long long j = i + 1; j < n; ++j)
                    if (2 * abs(b.at(i, j)) > std::min(abs(b.at(i, i)), abs(b.at(j, j))))
                        throw reduction_stall_error(
                            i, j, count,
                            "reduce_to_diagonal: no progress possible at entry (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    return {std::move(b), count, std::move(u)};
}

/// U^T A U computed exactly.
inline IntSymMatrix congruence(const IntSymMatrix& a, const IntMatrix& u) {
    IntMatrix prod = u.transposed() * a.as_matrix() * u;
    std::vector<std::vector<Int>> rows(static_cast<size_t>(prod.rows));
    for (long long i = 0; i < prod.rows; ++i) {
        rows[static_cast<size_t>(i)].resize(static_cast<size_t>(prod.cols));
        for (long long j = 0; j < prod.cols; ++j)
            rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = prod.at(i, j);
    }
    return IntSymMatrix::from_rows(rows);
}

struct NormOneSplit {
    std::optional<IntMatrix> transform;          // U with U^T A U = I when it exists
    std::vector<std::vector<long long>> vectors; // all norm-1 vectors up to sign
};

namespace detail {

inline Int rat_floor(const Rat& r) {
    Int num = numerator(r), den = denominator(r);
    if (num >= 0) return num / den;
    return -((-num + den - 1) / den);
}

}  // namespace detail

/// Enumerate all v with v^T A v = 1 (up to sign) by exact rational LDL^T
/// back-substitution, and exhibit A as the standard form when rank-many exist.
/// Requires A positive definite with determinant 1.
inline NormOneSplit norm_one_split(const IntSymMatrix& a) {
    if (!is_positive_definite(a))
        throw std::domain_error("norm_one_split: form must be positive definite");
    if (determinant(a) != 1)
        throw std::domain_error("norm_one_split: form must have determinant 1");
    const long long n = a.rank();

    // A = L D L^T with L unit lower triangular, D positive rational diagonal.
    std::vector<std::vector<Rat>> L(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    std::vector<Rat> d(static_cast<size_t>(n), Rat(0));
    for (long long j = 0; j < n; ++j) {
        Rat dj(a.at(j, j));
        for (long long k = 0; k < j; ++k)
            dj -= L[static_cast<size_t>(j)][static_cast<size_t>(k)] *
                  L[static_cast<size_t>(j)][static_cast<size_t>(k)] * d[static_cast<size_t>(k)];
        d[static_cast<size_t>(j)] = dj;
        L[static_cast<size_t>(j)][static_cast<size_t>(j)] = 1;
        for (long long i = j + 1; i < n; ++i) {
            Rat x(a.at(i, j));
            for (long long k = 0; k < j; ++k)
                x -= L[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                     L[static_cast<size_t>(j)][static_cast<size_t>(k)] * d[static_cast<size_t>(k)];
            L[static_cast<size_t>(i)][static_cast<size_t>(j)] = x / d[static_cast<size_t>(j)];
        }
    }

    // Q(v) = sum_j d_j (v_j + c_j)^2 with c_j = sum_{i>j} L[i][j] v_i.
    std::vector<long long> v(static_cast<size_t>(n), 0);
    std::set<std::vector<long long>> found;
    std::function<void(long long, Rat)> descend = [&](long long j, Rat rem) {
        if (j < 0) {
            if (rem == 0) {
                std::vector<long long> w = v;
                for (long long i = 0; i < n; ++i) {
                    if (w[static_cast<size_t>(i)] == 0) continue;
                    if (w[static_cast<size_t>(i)] < 0)
                        for (auto& x : w) x = -x;
                    break;
                }
                found.insert(std::move(w));
            }
            return;
        }
        Rat c(0);
        for (long long i = j + 1; i < n; ++i)
            if (v[static_cast<size_t>(i)] != 0)
                c += L[static_cast<size_t>(i)][static_cast<size_t>(j)] * Rat(v[static_cast<size_t>(i)]);
        const Rat& dj = d[static_cast<size_t>(j)];
        auto weight = [&](long long t) -> Rat {
            Rat w = Rat(t) + c;
            return dj * w * w;
        };
        long long t0 = detail::rat_floor(-c).convert_to<long long>();
        for (long long t = t0;; --t) {
            Rat w = weight(t);
            if (w > rem) break;
            v[static_cast<size_t>(j)] = t;
            descend(j - 1, rem - w);
        }
        for (long long t = t0 + 1;; ++t) {
            Rat w = weight(t);
            if (w > rem) break;
            v[static_cast<size_t>(j)] = t;
            descend(j - 1, rem - w);
        }
        v[static_cast<size_t>(j)] = 0;
    };
    descend(n - 1, Rat(1));

    NormOneSplit out;
    out.vectors.assign(found.begin(), found.end());
    std::sort(out.vectors.begin(), out.vectors.end(),
              [](const auto& x, const auto& y) { return x > y; });
    if (static_cast<long long>(out.vectors.size()) != n) return out;

    // Distinct norm-1 vectors of a positive definite form are automatically
    // orthogonal; verify and audit the transform anyway.
    IntMatrix u(n, n);
    for (long long j = 0; j < n; ++j)
        for (long long i = 0; i < n; ++i)
            u.at(i, j) = out.vectors[static_cast<size_t>(j)][static_cast<size_t>(i)];
    IntSymMatrix gram = congruence(a, u);
    if (!(gram == IntSymMatrix::identity(n)))
        throw std::logic_error("norm_one_split: transform audit failed");
    Int du = determinant(u);
    if (du != 1 && du != -1)
        throw std::logic_error("norm_one_split: transform is not unimodular");
    out.transform = std::move(u);
    return out;
}

}  // namespace sigfix
