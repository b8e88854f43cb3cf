#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace conediff {

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Square matrix with equal lower/upper bandwidth kb.  Storage follows the
// LAPACK banded layout with kb extra superdiagonals reserved for pivoting
// fill-in, so a factorization can reuse the same buffer.
class BandMatrix {
public:
    BandMatrix(int n, int kb);

    int dim() const { return n_; }
    int bandwidth() const { return kb_; }

    bool inside(int i, int j) const {
        return i >= 0 && j >= 0 && i < n_ && j < n_ && i - j <= kb_ &&
               j - i <= kb_;
    }

    double& at(int i, int j) { return ab_[idx(i, j)]; }
    double at(int i, int j) const { return ab_[idx(i, j)]; }

    void add(int i, int j, double v) { ab_[idx(i, j)] += v; }

    // y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;

private:
    friend class BandLU;

    // Row r of the storage holds diagonal (r - 2*kb): A(i,j) lives at
    // storage row 2*kb + i - j, column j.
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(2 * kb_ + i - j) *
                   static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j);
    }

    int n_;
    int kb_;
    std::vector<double> ab_;  // (3*kb+1) x n
};

// Banded LU factorization with partial pivoting.
class BandLU {
public:
    explicit BandLU(BandMatrix a);  // consumes the matrix, factorizes in place

    // Solve A x = b in place.
    void solve(std::span<double> b) const;

private:
    BandMatrix a_;
    std::vector<int> piv_;
};

}  // namespace conediff
