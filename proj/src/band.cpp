#include "conediff/band.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <utility>

namespace conediff {

BandMatrix::BandMatrix(int n, int kb) : n_(n), kb_(kb) {
    assert(n > 0 && kb >= 0 && kb < n);
    ab_.assign(static_cast<std::size_t>(3 * kb + 1) * static_cast<std::size_t>(n),
               0.0);
}

void BandMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    assert(static_cast<int>(x.size()) == n_ && static_cast<int>(y.size()) == n_);
    for (int i = 0; i < n_; ++i) {
        const int j0 = std::max(0, i - kb_);
        const int j1 = std::min(n_ - 1, i + kb_);
        double acc = 0.0;
        for (int j = j0; j <= j1; ++j) acc += at(i, j) * x[j];
        y[i] = acc;
    }
}

BandLU::BandLU(BandMatrix a) : a_(std::move(a)), piv_(a_.dim()) {
    const int n = a_.dim();
    const int kb = a_.bandwidth();
    // Widened effective upper bandwidth after row swaps.
    const int ku = 2 * kb;
    for (int k = 0; k < n; ++k) {
        const int last = std::min(n - 1, k + kb);
        int p = k;
        double pmax = std::fabs(a_.at(k, k));
        for (int i = k + 1; i <= last; ++i) {
            const double v = std::fabs(a_.at(i, k));
            if (v > pmax) {
                pmax = v;
                p = i;
            }
        }
        if (pmax == 0.0) throw SingularMatrixError("band LU: zero pivot column");
        piv_[k] = p;
        const int jend = std::min(n - 1, k + ku);
        if (p != k)
            for (int j = k; j <= jend; ++j)
                std::swap(a_.at(k, j), a_.at(p, j));
        const double diag = a_.at(k, k);
        for (int i = k + 1; i <= last; ++i) {
            const double l = a_.at(i, k) / diag;
            a_.at(i, k) = l;
            if (l != 0.0)
                for (int j = k + 1; j <= jend; ++j)
                    a_.at(i, j) -= l * a_.at(k, j);
        }
    }
}

void BandLU::solve(std::span<double> b) const {
    const int n = a_.dim();
    const int kb = a_.bandwidth();
    const int ku = 2 * kb;
    assert(static_cast<int>(b.size()) == n);
    for (int k = 0; k < n; ++k) {
        if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
        const int last = std::min(n - 1, k + kb);
        for (int i = k + 1; i <= last; ++i) b[i] -= a_.at(i, k) * b[k];
    }
    for (int i = n - 1; i >= 0; --i) {
        const int jend = std::min(n - 1, i + ku);
        double acc = b[i];
        for (int j = i + 1; j <= jend; ++j) acc -= a_.at(i, j) * b[j];
        b[i] = acc / a_.at(i, i);
    }
}

}  // namespace conediff
