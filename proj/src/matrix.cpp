#include "tame/matrix.hpp"

#include <algorithm>

namespace tame {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    require(cols_ == o.rows_, ErrorKind::internal, "matrix product dimension mismatch");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                if (o.at(k, j) != 0) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
    require(static_cast<int>(v.size()) == cols_, ErrorKind::internal, "matrix apply dimension mismatch");
    std::vector<Int> r(static_cast<size_t>(rows_), Int(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0) r[static_cast<size_t>(i)] += at(i, j) * v[static_cast<size_t>(j)];
    return r;
}

Int IntMatrix::max_abs() const {
    Int m = 0;
    for (const Int& x : a_) m = std::max(m, abs_val(x));
    return m;
}

int IntMatrix::row_nonzeros(int r) const {
    int c = 0;
    for (int j = 0; j < cols_; ++j)
        if (at(r, j) != 0) ++c;
    return c;
}

int IntMatrix::max_row_nonzeros() const {
    int m = 0;
    for (int i = 0; i < rows_; ++i) m = std::max(m, row_nonzeros(i));
    return m;
}

Rat IntMatrix::mean_row_nonzeros() const {
    Int sum = 0;
    for (int i = 0; i < rows_; ++i) sum += row_nonzeros(i);
    return rows_ == 0 ? Rat(0) : Rat(sum, Int(rows_));
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

Int IntMatrix::determinant() const {
    require(rows_ == cols_, ErrorKind::internal, "determinant of a non-square matrix");
    int n = rows_;
    if (n == 0) return 1;
    IntMatrix w = *this;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) { pivot = i; break; }
            if (pivot < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(pivot, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                w.at(i, j) = num / prev;  // exact by Bareiss
            }
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

PolyMap affine_to_polymap(const IntMatrix& m, const std::vector<Int>& offset) {
    require(offset.empty() || static_cast<int>(offset.size()) == m.rows(), ErrorKind::internal,
            "offset length does not match the matrix");
    int n = m.cols();
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        std::vector<Term> raw;
        for (int j = 0; j < n; ++j) {
            if (m.at(i, j) == 0) continue;
            Monomial e(static_cast<size_t>(n), 0);
            e[static_cast<size_t>(j)] = 1;
            raw.push_back({m.at(i, j), std::move(e)});
        }
        if (!offset.empty() && offset[static_cast<size_t>(i)] != 0)
            raw.push_back({offset[static_cast<size_t>(i)], Monomial(static_cast<size_t>(n), 0)});
        comps.push_back(Polynomial::from_terms(n, std::move(raw)));
    }
    return PolyMap(n, std::move(comps));
}

} // namespace tame
