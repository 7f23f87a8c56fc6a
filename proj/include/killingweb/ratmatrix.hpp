#pragma once

#include "killingweb/rational.hpp"

#include <vector>

namespace kw {

/// Dense matrix of exact rationals with reduced-row-echelon elimination.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Rational(0)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Rational& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
    const Rational& at(size_t r, size_t c) const { return e_[r * cols_ + c]; }

    /// In-place reduced row echelon form; returns the pivot column of each
    /// pivot row, in order.
    std::vector<size_t> rref();

    size_t rank() const;

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> e_;
};

/// Basis of the exact kernel {v : Mv = 0}, in the RREF-derived canonical form:
/// one vector per free column (ascending), with a unit entry in that column.
/// Deterministic for a given matrix.
std::vector<std::vector<Rational>> nullspace(const RatMatrix& m);

}  // namespace kw
