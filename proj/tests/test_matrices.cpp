#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ldg/rng.hpp"
#include "ldg/sym_matrix.hpp"

#include <cmath>
#include <sstream>

using namespace ldg;

namespace {

SymMatrix random_x(int n, KeyedRng rng) {
    SymMatrix x(n, MatrixKind::Continuous);
    for (std::int64_t k = 0; k < pair_count(n); ++k) x.upper_set(k, rng.uniform(k));
    return x;
}

Eigen::MatrixXd random_sym(int n, KeyedRng rng, double scale = 1.0) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::int64_t c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = scale * (2.0 * rng.uniform(c++) - 1.0);
    return m;
}

}  // namespace

TEST_CASE("spectrum ordering and reconstruction") {
    auto k4 = SymMatrix::complete(4);
    auto s = spectrum(k4);
    CHECK(s.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(s.eigenvalues[1] == doctest::Approx(-1.0));
    CHECK(s.eigenvalues[2] == doctest::Approx(-1.0));
    CHECK(s.eigenvalues[3] == doctest::Approx(-1.0));

    auto z = spectrum(SymMatrix::zero(3));
    for (int i = 0; i < 3; ++i) CHECK(z.eigenvalues[i] == 0.0);

    // C_4: modulus order with positive-first tie-break.
    SymMatrix c4(4, MatrixKind::Adjacency);
    c4.set(0, 1, 1);
    c4.set(1, 2, 1);
    c4.set(2, 3, 1);
    c4.set(3, 0, 1);
    auto sc = spectrum(c4);
    CHECK(sc.eigenvalues[0] == doctest::Approx(2.0));
    CHECK(sc.eigenvalues[1] == doctest::Approx(-2.0));
    CHECK(std::abs(sc.eigenvalues[2]) < 1e-12);
    CHECK(std::abs(sc.eigenvalues[3]) < 1e-12);

    // Reconstruction and orthonormality.
    KeyedRng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = random_x(10, rng.substream(trial));
        auto sp = spectrum(x);
        Eigen::MatrixXd rec = sp.eigenvectors *
                              sp.eigenvalues.asDiagonal() * sp.eigenvectors.transpose();
        double hs = x.hs_norm();
        CHECK((rec - x.dense()).norm() <= 1e-8 * std::max(1.0, hs));
        Eigen::MatrixXd gram = sp.eigenvectors.transpose() * sp.eigenvectors;
        CHECK((gram - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("spectrum rejects non-finite input") {
    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
    bad(0, 1) = bad(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(spectrum(bad));
}

TEST_CASE("schatten norms") {
    const int n = 7;
    auto jn = SymMatrix::complete(n);
    CHECK(schatten(jn, kAlphaInf) == doctest::Approx(n - 1.0));
    for (double alpha : {1.0, 2.0, 3.0, 4.5}) {
        double expect = std::pow(std::pow(n - 1.0, alpha) + (n - 1.0), 1.0 / alpha);
        CHECK(schatten(jn, alpha) == doctest::Approx(expect).epsilon(1e-12));
    }
    // Frobenius identity at alpha=2.
    KeyedRng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = random_x(8, rng.substream(trial));
        CHECK(schatten(x, 2.0) == doctest::Approx(x.hs_norm()).epsilon(1e-8));
    }
    CHECK_THROWS_WITH(schatten(jn, 0.5), "schatten: not a norm (alpha < 1)");
}

TEST_CASE("schatten monotone in alpha") {
    KeyedRng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        auto s = spectrum(random_x(9, rng.substream(trial)));
        double prev = schatten(s, 1.0);
        for (double alpha : {2.0, 3.0, 4.0, 8.0, kAlphaInf}) {
            double cur = schatten(s, alpha);
            CHECK(cur <= prev + 1e-10);
            prev = cur;
        }
    }
}

TEST_CASE("hs_k") {
    auto k4 = SymMatrix::complete(4);
    CHECK(hs_k(k4, 1) == doctest::Approx(3.0));
    SymMatrix c4(4, MatrixKind::Adjacency);
    c4.set(0, 1, 1);
    c4.set(1, 2, 1);
    c4.set(2, 3, 1);
    c4.set(3, 0, 1);
    CHECK(hs_k(c4, 2) == doctest::Approx(std::sqrt(8.0)));
    KeyedRng rng(5);
    auto x = random_x(12, rng);
    CHECK(hs_k(x, 12) == doctest::Approx(x.hs_norm()).epsilon(1e-10));
    CHECK_THROWS(hs_k(x, 0));
    CHECK_THROWS(hs_k(x, 13));
}

TEST_CASE("rank split") {
    auto k4 = SymMatrix::complete(4);
    auto split = rank_split(k4, 1);
    CHECK(operator_norm(split.residual) == doctest::Approx(1.0));
    CHECK((split.low_rank + split.residual - k4.dense()).norm() <= 1e-8 * k4.hs_norm());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(split.low_rank);
    int rank = 0;
    for (int i = 0; i < 4; ++i) rank += std::abs(es.eigenvalues()[i]) > 1e-9;
    CHECK(rank == 1);

    // Rank-R input splits exactly.
    auto full = rank_split(k4, 3);
    Eigen::MatrixXd again = full.low_rank;
    auto s2 = spectrum(again);
    auto resplit = rank_split(s2, 3, 4);
    CHECK(resplit.residual.norm() <= 1e-10);

    // (Rapprox.basic): residual operator norm at most N/sqrt(R+1) for X in X_N.
    KeyedRng rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        auto x = random_x(20, rng.substream(trial));
        auto rs = rank_split(x, 4);
        CHECK(operator_norm(rs.residual) <= 20.0 / std::sqrt(5.0) + 1e-9);
    }
    CHECK_THROWS(rank_split(k4, 0));
    CHECK_THROWS(rank_split(k4, 4));
}

TEST_CASE("weyl inequality on random pairs") {
    KeyedRng rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        auto sub = rng.substream(trial);
        int n = 4 + static_cast<int>(sub.uniform(1'000'000) * 9);
        Eigen::MatrixXd m1 = random_sym(n, sub.substream(1));
        Eigen::MatrixXd m2 = random_sym(n, sub.substream(2));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e1(m1), e2(m2);
        double gap = operator_norm(m1 - m2);
        for (int j = 0; j < n; ++j)
            CHECK(std::abs(e1.eigenvalues()[j] - e2.eigenvalues()[j]) <= gap + 1e-8);
    }
}

TEST_CASE("trace power lipschitz bound") {
    KeyedRng rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        auto sub = rng.substream(trial);
        int n = 4 + static_cast<int>(sub.uniform(0) * 6);
        Eigen::MatrixXd m1 = random_sym(n, sub.substream(1));
        Eigen::MatrixXd m2 = random_sym(n, sub.substream(2));
        auto s1 = spectrum(m1), s2 = spectrum(m2);
        double opgap = operator_norm(m1 - m2);
        for (int ell : {3, 4, 5}) {
            double t1 = 0, t2 = 0;
            for (int j = 0; j < n; ++j) {
                t1 += std::pow(s1.eigenvalues[j], ell);
                t2 += std::pow(s2.eigenvalues[j], ell);
            }
            double rhs = ell * opgap *
                         (std::pow(schatten(s1, ell - 1.0), ell - 1.0) +
                          std::pow(schatten(s2, ell - 1.0), ell - 1.0));
            CHECK(std::abs(t1 - t2) <= rhs + 1e-8 * std::max(1.0, rhs));
        }
    }
}

TEST_CASE("noncommutative hoelder") {
    KeyedRng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        auto sub = rng.substream(trial);
        int n = 5 + static_cast<int>(sub.uniform(0) * 5);
        Eigen::MatrixXd x = random_sym(n, sub.substream(1));
        Eigen::MatrixXd y = random_sym(n, sub.substream(2));
        Eigen::MatrixXd xy = x * y;
        // Schatten norms of a non-symmetric product: use singular values.
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(xy);
        auto snorm = [&](double alpha) {
            if (std::isinf(alpha)) return svd.singularValues()[0];
            double s = 0;
            for (int i = 0; i < n; ++i) s += std::pow(svd.singularValues()[i], alpha);
            return std::pow(s, 1.0 / alpha);
        };
        auto sx = spectrum(x);
        auto sy = spectrum(y);
        CHECK(snorm(2.0) <= schatten(sx, 4.0) * schatten(sy, 4.0) + 1e-8);
        CHECK(snorm(2.0) <= schatten(sx, 3.0) * schatten(sy, 6.0) + 1e-8);
        for (double alpha : {2.0, 3.0}) {
            CHECK(snorm(alpha) <=
                  schatten(sx, kAlphaInf) * schatten(sy, alpha) + 1e-8);
        }
    }
}

TEST_CASE("matrix csv round trip and validation") {
    KeyedRng rng(404);
    auto x = random_x(6, rng);
    std::ostringstream out;
    x.save_csv(out);
    std::istringstream in(out.str());
    auto y = SymMatrix::load_csv(in);
    CHECK((x.dense() - y.dense()).norm() == 0.0);

    // Asymmetric input beyond tolerance is rejected.
    std::istringstream bad("0,0.5\n0.6,0\n");
    CHECK_THROWS(SymMatrix::load_csv(bad));
    // Within tolerance it is symmetrized exactly.
    std::istringstream ok("0,0.5\n0.5000000000001,0\n");
    auto z = SymMatrix::load_csv(ok);
    CHECK(z.at(0, 1) == z.at(1, 0));
}

TEST_CASE("symmatrix invariants") {
    SymMatrix a(3, MatrixKind::Adjacency);
    CHECK_THROWS(a.set(0, 1, 0.5));
    a.set(0, 1, 1.0);
    CHECK(a.edge_total() == 1);
    SymMatrix x(3, MatrixKind::Continuous);
    CHECK_THROWS(x.set(0, 1, 1.5));
    CHECK_THROWS(x.set(0, 0, 1.0));
    x.set(0, 0, 0.0);  // no-op
    CHECK(x.at(0, 0) == 0.0);
}
