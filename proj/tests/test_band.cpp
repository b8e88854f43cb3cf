#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "conediff/band.hpp"

using namespace conediff;

namespace {

// Dense Gaussian elimination oracle.
std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a[i][k]) > std::fabs(a[p][k])) p = i;
        std::swap(a[k], a[p]);
        std::swap(b[k], b[p]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= l * a[k][j];
            b[i] -= l * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= a[ii][j] * x[j];
        x[ii] = acc / a[ii][ii];
    }
    return x;
}

}  // namespace

TEST_CASE("band LU matches a dense oracle on random systems") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (const int kb : {1, 2, 5, 7}) {
        for (const int n : {8, 33, 120}) {
            BandMatrix m(n, kb);
            std::vector<std::vector<double>> dense(
                static_cast<std::size_t>(n),
                std::vector<double>(static_cast<std::size_t>(n), 0.0));
            for (int i = 0; i < n; ++i)
                for (int j = std::max(0, i - kb); j <= std::min(n - 1, i + kb);
                     ++j) {
                    double v = uni(rng);
                    if (i == j) v += 3.0;  // keep it comfortably nonsingular
                    m.at(i, j) = v;
                    dense[static_cast<std::size_t>(i)]
                         [static_cast<std::size_t>(j)] = v;
                }
            std::vector<double> b(static_cast<std::size_t>(n));
            for (double& v : b) v = uni(rng);

            std::vector<double> x = b;
            BandLU lu(m);
            lu.solve(x);
            const std::vector<double> xd = dense_solve(dense, b);
            for (int i = 0; i < n; ++i)
                CHECK(x[static_cast<std::size_t>(i)] ==
                      doctest::Approx(xd[static_cast<std::size_t>(i)])
                          .epsilon(1e-10));

            // Residual check through multiply.
            std::vector<double> r(static_cast<std::size_t>(n));
            m.multiply(x, r);
            for (int i = 0; i < n; ++i)
                CHECK(r[static_cast<std::size_t>(i)] ==
                      doctest::Approx(b[static_cast<std::size_t>(i)])
                          .epsilon(1e-9));
        }
    }
}

TEST_CASE("band LU pivots rows") {
    // Zero diagonal forces a swap.
    BandMatrix m(4, 1);
    m.at(0, 0) = 0.0;
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 2.0;
    m.at(1, 1) = 1.0;
    m.at(1, 2) = -1.0;
    m.at(2, 1) = 1.0;
    m.at(2, 2) = 3.0;
    m.at(2, 3) = 1.0;
    m.at(3, 2) = 1.0;
    m.at(3, 3) = 2.0;
    std::vector<double> b = {1.0, 2.0, 3.0, 4.0};
    std::vector<double> x = b;
    BandLU lu(m);
    lu.solve(x);
    std::vector<double> r(4);
    m.multiply(x, r);
    for (int i = 0; i < 4; ++i)
        CHECK(r[static_cast<std::size_t>(i)] ==
              doctest::Approx(b[static_cast<std::size_t>(i)]).epsilon(1e-12));
}

TEST_CASE("singular matrix is reported") {
    BandMatrix m(5, 1);
    // Column 2 entirely zero.
    for (int i = 0; i < 5; ++i)
        for (int j = std::max(0, i - 1); j <= std::min(4, i + 1); ++j)
            m.at(i, j) = (j == 2) ? 0.0 : 1.0 + i + j;
    CHECK_THROWS_AS(BandLU{m}, SingularMatrixError);
}

TEST_CASE("solving a zero right-hand side returns exactly zero") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    BandMatrix m(40, 3);
    for (int i = 0; i < 40; ++i)
        for (int j = std::max(0, i - 3); j <= std::min(39, i + 3); ++j)
            m.at(i, j) = uni(rng) + (i == j ? 4.0 : 0.0);
    std::vector<double> b(40, 0.0);
    BandLU lu(m);
    lu.solve(b);
    for (double v : b) CHECK(v == 0.0);
}
