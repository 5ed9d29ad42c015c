#pragma once
// Exact integer linear algebra: dense matrices over Z, Smith normal form
// (invariants only, or with unimodular transforms), integer kernels and
// linear system solving.

#include "bredon/arith.hpp"

#include <optional>
#include <vector>

namespace bredon {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, Int(0)) {}

    static IntMatrix identity(size_t n);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Int& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Int& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const = default;
    bool is_zero() const;

    std::vector<Int> column(size_t j) const;
    IntMatrix transpose() const;
    // Columns [j0, j1) as a new matrix.
    IntMatrix columns(size_t j0, size_t j1) const;
    // Appends the columns of `o` (same row count).
    IntMatrix hcat(const IntMatrix& o) const;

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

// Matrix with machine-word entries, the common input format for large but
// sparse differentials.  Entries are converted on demand.
struct SmallMatrix {
    size_t rows = 0, cols = 0;
    std::vector<long> a;  // row-major
    SmallMatrix() = default;
    SmallMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}
    long& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    long operator()(size_t i, size_t j) const { return a[i * cols + j]; }
    IntMatrix to_int() const;
};

// Nonzero invariant factors d_1 | d_2 | ... | d_r (r = rank), all positive.
std::vector<Int> smith_invariants(const SmallMatrix& a);
std::vector<Int> smith_invariants(const IntMatrix& a);

// U * A * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...
struct SmithForm {
    IntMatrix U, Uinv, V, D;
    size_t rank = 0;
    Int diag(size_t i) const { return i < rank ? D(i, i) : Int(0); }
};
SmithForm smith_form(const IntMatrix& a);

// Columns form a basis of the integer kernel {x : A x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

// Some x with A x = b, or nullopt when no integer solution exists.
std::optional<std::vector<Int>> solve(const IntMatrix& a, const std::vector<Int>& b);

// Invariant factors normalized into a divisibility chain (unit factors
// dropped).  Used when an elimination produces an arbitrary diagonal.
std::vector<Int> normalize_torsion(std::vector<Int> diag);

}  // namespace bredon
