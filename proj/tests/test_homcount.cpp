#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ldg/homcount.hpp"
#include "ldg/rng.hpp"

#include <cmath>

using namespace ldg;

namespace {

// Brute-force oracle: iterate over all n^N maps.
double hom_brute(const PatternGraph& h, const SymMatrix& x) {
    const int nv = h.n_vertices(), n = x.dim();
    std::vector<int> map(nv, 0);
    double total = 0;
    for (;;) {
        double prod = 1;
        for (const auto& [u, v] : h.edges()) prod *= x.at(map[u], map[v]);
        total += prod;
        int k = 0;
        while (k < nv && ++map[k] == n) map[k++] = 0;
        if (k == nv) break;
    }
    return total;
}

SymMatrix random_x(int n, KeyedRng rng) {
    SymMatrix x(n, MatrixKind::Continuous);
    for (std::int64_t k = 0; k < pair_count(n); ++k) x.upper_set(k, rng.uniform(k));
    return x;
}

SymMatrix random_adj(int n, double p, KeyedRng rng) {
    SymMatrix a(n, MatrixKind::Adjacency);
    for (std::int64_t k = 0; k < pair_count(n); ++k)
        a.upper_set(k, rng.uniform(k) < p ? 1.0 : 0.0);
    return a;
}

}  // namespace

TEST_CASE("hom on small explicit cases") {
    CHECK(hom(PatternGraph::cycle(3), SymMatrix::complete(3)).int_value == 6);
    // Empty pattern: N^{v(H)}.
    auto x = random_x(5, KeyedRng(3));
    CHECK(hom(PatternGraph::empty(3), x).value == doctest::Approx(125.0));
    // Block complete graph: falling factorial.
    for (int ell : {3, 4, 5}) {
        auto j6 = SymMatrix::complete(6);
        double ff = 1;
        for (int i = 0; i < ell; ++i) ff *= 6 - i;
        CHECK(hom(PatternGraph::cycle(ell), j6).value == doctest::Approx(ff));
    }
    CHECK_THROWS(hom(PatternGraph::cycle(9), SymMatrix::complete(3)));
}

TEST_CASE("hom agrees with brute force") {
    KeyedRng rng(101);
    std::vector<PatternGraph> pats = {
        PatternGraph::single_edge(), PatternGraph::cycle(3), PatternGraph::cycle(4),
        PatternGraph::path(4),       PatternGraph::star(3),  PatternGraph::complete(4),
        PatternGraph::cycle(5)};
    for (int trial = 0; trial < 12; ++trial) {
        auto x = random_x(5, rng.substream(trial));
        for (const auto& h : pats) {
            double expect = hom_brute(h, x);
            CHECK(hom(h, x).value ==
                  doctest::Approx(expect).epsilon(1e-10));
        }
    }
}

TEST_CASE("hom exact integer path flags") {
    auto a = random_adj(8, 0.5, KeyedRng(9));
    auto hv = hom(PatternGraph::cycle(4), a);
    CHECK(hv.exact_integer);
    CHECK(hv.value == static_cast<double>(hv.int_value));
    auto x = random_x(8, KeyedRng(10));
    CHECK_FALSE(hom(PatternGraph::cycle(4), x).exact_integer);
}

TEST_CASE("spectral cycle counts") {
    CHECK(hom_cycle_spectral(3, SymMatrix::complete(4)).value == doctest::Approx(24.0));
    SymMatrix c4(4, MatrixKind::Adjacency);
    c4.set(0, 1, 1);
    c4.set(1, 2, 1);
    c4.set(2, 3, 1);
    c4.set(3, 0, 1);
    CHECK(hom_cycle_spectral(4, c4).value == doctest::Approx(32.0));
    CHECK(hom_cycle_spectral(5, SymMatrix::zero(6)).value == doctest::Approx(0.0));

    // Agreement with the contraction route.
    KeyedRng rng(55);
    for (int n : {5, 10, 20}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto x = random_x(n, rng.substream(n * 100 + trial));
            for (int ell = 3; ell <= 8; ++ell) {
                double a = hom_cycle_spectral(ell, x).value;
                double b = hom(PatternGraph::cycle(ell), x).value;
                CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(b)));
            }
        }
    }
}

TEST_CASE("injective counts") {
    CHECK(inj(PatternGraph::cycle(3), SymMatrix::complete(4)).int_value == 24);
    CHECK(inj(PatternGraph::cycle(4), SymMatrix::complete(3)).int_value == 0);
    auto a = random_adj(7, 0.6, KeyedRng(17));
    CHECK(inj(PatternGraph::single_edge(), a).int_value == 2 * a.edge_total());
    // inj <= hom for nonnegative inputs.
    auto x = random_x(6, KeyedRng(18));
    for (const auto& h : {PatternGraph::cycle(3), PatternGraph::path(4)})
        CHECK(inj(h, x).value <= hom(h, x).value + 1e-12);
    CHECK_THROWS(inj(PatternGraph::complete(7), a));
}

TEST_CASE("hom quotient identity") {
    CHECK(hom_quotient_identity_check(PatternGraph::cycle(4), SymMatrix::complete(4)));
    // LHS is Tr A^4 = 84 on K_4.
    CHECK(hom(PatternGraph::cycle(4), SymMatrix::complete(4)).int_value == 84);

    KeyedRng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_adj(6, 0.4 + 0.2 * (trial % 3), rng.substream(trial));
        CHECK(hom_quotient_identity_check(PatternGraph::cycle(3), a));
        CHECK(hom_quotient_identity_check(PatternGraph::single_edge(), a));
        CHECK(hom_quotient_identity_check(PatternGraph::path(4), a));
    }
}

TEST_CASE("directional derivative against finite differences") {
    KeyedRng rng(67);
    std::vector<PatternGraph> pats = {PatternGraph::single_edge(), PatternGraph::cycle(3),
                                      PatternGraph::cycle(4), PatternGraph::star(3)};
    for (int trial = 0; trial < 12; ++trial) {
        auto sub = rng.substream(trial);
        const int n = 6 + trial % 5;
        auto w = random_x(n, sub.substream(1));
        Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
        std::int64_t c = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                z(i, j) = z(j, i) = 2.0 * sub.substream(2).uniform(c++) - 1.0;

        const auto& h = pats[trial % pats.size()];
        double d = dir_derivative(h, w, z);

        const double step = 1e-5;
        Eigen::MatrixXd wd = w.dense();
        double fplus = hom_dense(h, wd + step * z);
        double fminus = hom_dense(h, wd - step * z);
        double fd = (fplus - fminus) / (2 * step);
        CHECK(std::abs(d - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));

        CHECK(std::abs(d) <= dir_derivative_bound(h, w, z) + 1e-8);
    }
}

TEST_CASE("derivative of K_2 is twice the upper-triangle sum") {
    const int n = 7;
    auto w = random_x(n, KeyedRng(5));
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
    double s = 0;
    std::int64_t c = 0;
    KeyedRng rng(6);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            z(i, j) = z(j, i) = rng.uniform(c++);
            s += z(i, j);
        }
    CHECK(dir_derivative(PatternGraph::single_edge(), w, z) == doctest::Approx(2 * s));
}

TEST_CASE("gradient is symmetric with zero diagonal") {
    auto w = random_x(6, KeyedRng(81));
    for (const auto& h : {PatternGraph::cycle(3), PatternGraph::path(3), PatternGraph::star(3)}) {
        Eigen::MatrixXd g = hom_gradient(h, w.dense());
        CHECK((g - g.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(g.diagonal().cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("uniform matrix triangle derivative closed form") {
    const int n = 9;
    const double p = 0.3;
    auto w = SymMatrix::constant(n, p);
    Eigen::MatrixXd j = Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n);
    double d = dir_derivative(PatternGraph::cycle(3), w, j);
    // d/dt Tr((p+t)J)^3 at t=0.
    double expect = 3 * p * p * n * (n - 1) * (n - 2);
    CHECK(d == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("hom density") {
    const int n = 8;
    const double p = 0.4;
    auto w = SymMatrix::constant(n, p);
    CHECK(hom_density(PatternGraph::single_edge(), w) ==
          doctest::Approx(p * (n - 1.0) / n).epsilon(1e-12));
    CHECK(hom_density(PatternGraph::cycle(3), SymMatrix::zero(5)) == 0.0);
    auto x = random_x(6, KeyedRng(3));
    double dens = hom_density(PatternGraph::cycle(4), x);
    CHECK(dens >= 0.0);
    CHECK(dens <= 1.0);
}

TEST_CASE("hom monotone in entries") {
    KeyedRng rng(202);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = random_x(6, rng.substream(2 * trial));
        SymMatrix y = x;
        KeyedRng bump = rng.substream(2 * trial + 1);
        for (std::int64_t k = 0; k < pair_count(6); ++k)
            y.upper_set(k, std::min(1.0, x.upper_at(k) + 0.3 * bump.uniform(k)));
        for (const auto& h : {PatternGraph::cycle(3), PatternGraph::cycle(4)})
            CHECK(hom(h, x).value <= hom(h, y).value + 1e-12);
    }
}

TEST_CASE("sidorenko inequality for seminorming patterns") {
    KeyedRng rng(303);
    auto k2 = PatternGraph::single_edge();
    std::vector<PatternGraph> pats = {PatternGraph::cycle(4), PatternGraph::cycle(6),
                                      PatternGraph::complete_bipartite(2, 2)};
    for (int trial = 0; trial < 200; ++trial) {
        auto x = random_x(6 + trial % 3, rng.substream(trial));
        double edge_density = hom_density(k2, x);
        for (const auto& h : pats) {
            CHECK(hom_density(h, x) >=
                  std::pow(edge_density, h.n_edges()) - 1e-10);
        }
    }
}
