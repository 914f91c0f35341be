#pragma once

#include <vector>

#include "tame/integers.hpp"
#include "tame/polymap.hpp"

namespace tame {

class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Int(0)) {}

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Int& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    IntMatrix operator*(const IntMatrix& o) const;
    std::vector<Int> apply(const std::vector<Int>& v) const;

    Int max_abs() const;                  // |M|
    int row_nonzeros(int r) const;        // m of row r
    int max_row_nonzeros() const;         // m(M)
    Rat mean_row_nonzeros() const;        // m_bar(M)
    bool is_identity() const;

    // exact determinant (fraction-free Bareiss elimination)
    Int determinant() const;

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

// x -> Mx + c as a polynomial map; pass an empty offset for pure linear
PolyMap affine_to_polymap(const IntMatrix& m, const std::vector<Int>& offset);

} // namespace tame
