#include "killingweb/ratmatrix.hpp"

namespace kw {

std::vector<size_t> RatMatrix::rref() {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols_ && row < rows_; ++col) {
        size_t sel = row;
        while (sel < rows_ && at(sel, col).is_zero()) ++sel;
        if (sel == rows_) continue;
        if (sel != row)
            for (size_t c = 0; c < cols_; ++c) std::swap(at(row, c), at(sel, c));
        Rational inv = at(row, col).inv();
        for (size_t c = col; c < cols_; ++c) at(row, c) *= inv;
        for (size_t r = 0; r < rows_; ++r) {
            if (r == row || at(r, col).is_zero()) continue;
            Rational f = at(r, col);
            for (size_t c = col; c < cols_; ++c) at(r, c) -= f * at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t RatMatrix::rank() const {
    RatMatrix m = *this;
    return m.rref().size();
}

std::vector<std::vector<Rational>> nullspace(const RatMatrix& m) {
    RatMatrix r = m;
    std::vector<size_t> pivots = r.rref();
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : pivots) is_pivot[p] = true;

    std::vector<std::vector<Rational>> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[f] = Rational(1);
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace kw
