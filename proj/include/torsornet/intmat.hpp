#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace torsornet {

using i64 = std::int64_t;

// Fixed-width integers with mandatory overflow detection; wraparound is never
// allowed to produce a wrong answer silently.
i64 checked_add(i64 a, i64 b);
i64 checked_sub(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);
i64 checked_neg(i64 a);

/// Dense integer matrix, row-major, exact arithmetic throughout.
class IntegerMatrix {
public:
    IntegerMatrix() : rows_(0), cols_(0) {}
    IntegerMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<i64> entries);

    static IntegerMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    i64& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    i64 at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const IntegerMatrix& o) const = default;

    IntegerMatrix mul(const IntegerMatrix& o) const;
    std::vector<i64> apply(const std::vector<i64>& x) const;
    IntegerMatrix transpose() const;
    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<i64> a_;
};

struct SmithNormalForm {
    IntegerMatrix u;  // rows x rows, unimodular
    IntegerMatrix d;  // diagonal, d1 | d2 | ..., nonnegative
    IntegerMatrix v;  // cols x cols, unimodular
    IntegerMatrix u_inv, v_inv;  // integer inverses, tracked during elimination
};

/// U * A * V = D with U, V unimodular and a nonnegative divisibility chain.
SmithNormalForm smith_normal_form(const IntegerMatrix& a);

/// Full 128-bit verification of a decomposition: U A V = D, U U^-1 = I,
/// V V^-1 = I, D diagonal and nonnegative with a divisibility chain.
bool snf_certifies(const IntegerMatrix& a, const SmithNormalForm& s);

/// Some x with A x = b, via the SNF change of basis, or nullopt.
std::optional<std::vector<i64>> solve_integer_linear(const IntegerMatrix& a,
                                                     const std::vector<i64>& b);

/// Basis of the integer kernel lattice of A (columns of the result).
IntegerMatrix kernel_basis(const IntegerMatrix& a);

/// Isomorphism type of a finitely generated abelian group Z^cols / column
/// lattice of A, in invariant-factor form.
struct AbelianGroupType {
    std::size_t rank = 0;                 // free part
    std::vector<i64> invariant_factors;   // d1 | d2 | ..., each > 1

    bool operator==(const AbelianGroupType&) const = default;
    std::optional<i64> order() const;     // nullopt when infinite
    std::string to_string() const;        // e.g. "Z^2 x Z/2 x Z/4", "0"
};

AbelianGroupType cokernel_type(const IntegerMatrix& a);

}  // namespace torsornet
