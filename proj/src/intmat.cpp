#include "torsornet/intmat.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>
#include <utility>
#include <sstream>
#include <stdexcept>

namespace torsornet {

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
    return r;
}

i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in sub");
    return r;
}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in mul");
    return r;
}

i64 checked_neg(i64 a) { return checked_sub(0, a); }

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<i64> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw std::invalid_argument("entry count mismatch");
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::mul(const IntegerMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix dimension mismatch");
    IntegerMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            i64 v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) = checked_add(r.at(i, j), checked_mul(v, o.at(k, j)));
        }
    return r;
}

std::vector<i64> IntegerMatrix::apply(const std::vector<i64>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("vector dimension mismatch");
    std::vector<i64> y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            y[i] = checked_add(y[i], checked_mul(at(i, j), x[j]));
    return y;
}

IntegerMatrix IntegerMatrix::transpose() const {
    IntegerMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::string IntegerMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ") << "[";
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
        os << "]" << (i + 1 == rows_ ? "]" : "\n");
    }
    return os.str();
}

namespace {

// The elimination runs in 128-bit checked arithmetic: the transform matrices
// U, V can grow roughly like det^2, past 64 bits for dense inputs whose
// entries are still tiny. Results are converted back with a range check.
using i128 = __int128;

i128 cmul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in mul");
    return r;
}
i128 cadd(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
    return r;
}

struct WideMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<i128> a;

    WideMatrix() = default;
    explicit WideMatrix(const IntegerMatrix& m) : rows(m.rows()), cols(m.cols()), a(rows * cols) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = m.at(i, j);
    }
    static WideMatrix identity(std::size_t n) {
        WideMatrix m;
        m.rows = m.cols = n;
        m.a.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) m.a[i * n + i] = 1;
        return m;
    }
    i128& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    i128 at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    IntegerMatrix narrow() const {
        IntegerMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                i128 x = at(i, j);
                if (x > std::numeric_limits<i64>::max() || x < std::numeric_limits<i64>::min())
                    throw std::overflow_error("matrix entry exceeds 64 bits");
                m.at(i, j) = static_cast<i64>(x);
            }
        return m;
    }
};

struct SnfState {
    WideMatrix a, u, v, uinv, vinv;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < a.cols; ++c) std::swap(a.at(i, c), a.at(j, c));
        for (std::size_t c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
        for (std::size_t r = 0; r < uinv.rows; ++r) std::swap(uinv.at(r, i), uinv.at(r, j));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < a.rows; ++r) std::swap(a.at(r, i), a.at(r, j));
        for (std::size_t r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
        for (std::size_t c = 0; c < vinv.cols; ++c) std::swap(vinv.at(i, c), vinv.at(j, c));
    }
    // row i += q * row j
    void add_row(std::size_t i, std::size_t j, i128 q) {
        for (std::size_t c = 0; c < a.cols; ++c)
            a.at(i, c) = cadd(a.at(i, c), cmul(q, a.at(j, c)));
        for (std::size_t c = 0; c < u.cols; ++c)
            u.at(i, c) = cadd(u.at(i, c), cmul(q, u.at(j, c)));
        for (std::size_t r = 0; r < uinv.rows; ++r)
            uinv.at(r, j) = cadd(uinv.at(r, j), cmul(-q, uinv.at(r, i)));
    }
    // col i += q * col j
    void add_col(std::size_t i, std::size_t j, i128 q) {
        for (std::size_t r = 0; r < a.rows; ++r)
            a.at(r, i) = cadd(a.at(r, i), cmul(q, a.at(r, j)));
        for (std::size_t r = 0; r < v.rows; ++r)
            v.at(r, i) = cadd(v.at(r, i), cmul(q, v.at(r, j)));
        for (std::size_t c = 0; c < vinv.cols; ++c)
            vinv.at(j, c) = cadd(vinv.at(j, c), cmul(-q, vinv.at(i, c)));
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < a.cols; ++c) a.at(i, c) = -a.at(i, c);
        for (std::size_t c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
        for (std::size_t r = 0; r < uinv.rows; ++r) uinv.at(r, i) = -uinv.at(r, i);
    }

    // Smallest-magnitude nonzero entry in the submatrix starting at (k, k).
    std::optional<std::pair<std::size_t, std::size_t>> pivot(std::size_t k) const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        i128 best_abs = 0;
        for (std::size_t i = k; i < a.rows; ++i)
            for (std::size_t j = k; j < a.cols; ++j) {
                i128 x = a.at(i, j);
                if (x == 0) continue;
                i128 ax = x < 0 ? -x : x;
                if (!best || ax < best_abs) {
                    best = {{i, j}};
                    best_abs = ax;
                }
            }
        return best;
    }

    void diagonalize_at(std::size_t k) {
        for (;;) {
            auto p = pivot(k);
            if (!p) return;
            swap_rows(k, p->first);
            swap_cols(k, p->second);
            if (a.at(k, k) < 0) negate_row(k);
            bool clean = true;
            for (std::size_t i = k + 1; i < a.rows; ++i) {
                if (a.at(i, k) == 0) continue;
                i128 q = a.at(i, k) / a.at(k, k);
                if (q != 0) add_row(i, k, -q);
                if (a.at(i, k) != 0) clean = false;
            }
            for (std::size_t j = k + 1; j < a.cols; ++j) {
                if (a.at(k, j) == 0) continue;
                i128 q = a.at(k, j) / a.at(k, k);
                if (q != 0) add_col(j, k, -q);
                if (a.at(k, j) != 0) clean = false;
            }
            if (clean) return;
        }
    }
};

}  // namespace

SmithNormalForm smith_normal_form(const IntegerMatrix& input) {
    SnfState s{WideMatrix(input), WideMatrix::identity(input.rows()),
               WideMatrix::identity(input.cols()), WideMatrix::identity(input.rows()),
               WideMatrix::identity(input.cols())};
    std::size_t n = std::min(input.rows(), input.cols());
    for (std::size_t k = 0; k < n; ++k) s.diagonalize_at(k);

    // Enforce the divisibility chain d_k | d_{k+1}.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        for (std::size_t j = k + 1; j < n; ++j) {
            i128 dk = s.a.at(k, k), dj = s.a.at(j, j);
            if (dk != 0 && dj % dk == 0) continue;
            // Fold d_j into column k, then re-diagonalize from k.
            s.add_col(k, j, 1);
            for (std::size_t t = k; t < n; ++t) s.diagonalize_at(t);
            j = k;  // restart the inner scan
        }
    }
    return SmithNormalForm{s.u.narrow(), s.a.narrow(), s.v.narrow(), s.uinv.narrow(),
                           s.vinv.narrow()};
}

bool snf_certifies(const IntegerMatrix& a, const SmithNormalForm& s) {
    auto wide_mul = [](const WideMatrix& x, const WideMatrix& y) {
        WideMatrix r;
        r.rows = x.rows;
        r.cols = y.cols;
        r.a.assign(r.rows * r.cols, 0);
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                i128 v = x.at(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < y.cols; ++j)
                    r.at(i, j) = cadd(r.at(i, j), cmul(v, y.at(k, j)));
            }
        return r;
    };
    auto is_id = [](const WideMatrix& m) {
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j)
                if (m.at(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    };
    WideMatrix wa(a), wu(s.u), wv(s.v), wui(s.u_inv), wvi(s.v_inv), wd(s.d);
    WideMatrix uav = wide_mul(wide_mul(wu, wa), wv);
    if (uav.rows != wd.rows || uav.cols != wd.cols || uav.a != wd.a) return false;
    if (!is_id(wide_mul(wu, wui)) || !is_id(wide_mul(wv, wvi))) return false;
    std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < s.d.rows(); ++i)
        for (std::size_t j = 0; j < s.d.cols(); ++j)
            if (i != j && s.d.at(i, j) != 0) return false;
    for (std::size_t k = 0; k < n; ++k)
        if (s.d.at(k, k) < 0) return false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        i64 dk = s.d.at(k, k), dn = s.d.at(k + 1, k + 1);
        if (dk == 0 ? dn != 0 : dn % dk != 0) return false;
    }
    return true;
}

std::optional<std::vector<i64>> solve_integer_linear(const IntegerMatrix& a,
                                                     const std::vector<i64>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
    SmithNormalForm snf = smith_normal_form(a);
    std::vector<i64> c = snf.u.apply(b);
    std::vector<i64> y(a.cols(), 0);
    std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        i64 d = i < n ? snf.d.at(i, i) : 0;
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % d != 0) return std::nullopt;
            y[i] = c[i] / d;
        }
    }
    return snf.v.apply(y);
}

IntegerMatrix kernel_basis(const IntegerMatrix& a) {
    SmithNormalForm snf = smith_normal_form(a);
    std::size_t n = std::min(a.rows(), a.cols());
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        i64 d = j < n ? snf.d.at(j, j) : 0;
        if (d == 0) free_cols.push_back(j);
    }
    IntegerMatrix k(a.cols(), free_cols.size());
    for (std::size_t r = 0; r < a.cols(); ++r)
        for (std::size_t c = 0; c < free_cols.size(); ++c) k.at(r, c) = snf.v.at(r, free_cols[c]);
    return k;
}

std::optional<i64> AbelianGroupType::order() const {
    if (rank > 0) return std::nullopt;
    i64 n = 1;
    for (i64 d : invariant_factors) n = checked_mul(n, d);
    return n;
}

std::string AbelianGroupType::to_string() const {
    std::ostringstream os;
    bool first = true;
    if (rank == 1) {
        os << "Z";
        first = false;
    } else if (rank > 1) {
        os << "Z^" << rank;
        first = false;
    }
    for (i64 d : invariant_factors) {
        os << (first ? "" : " x ") << "Z/" << d;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

AbelianGroupType cokernel_type(const IntegerMatrix& a) {
    SmithNormalForm snf = smith_normal_form(a);
    std::size_t n = std::min(a.rows(), a.cols());
    AbelianGroupType t;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < n; ++i) {
        i64 d = snf.d.at(i, i);
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) t.invariant_factors.push_back(d);
    }
    t.rank = a.rows() - nonzero;
    return t;
}

}  // namespace torsornet
