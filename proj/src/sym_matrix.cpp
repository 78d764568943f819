#include "ldg/sym_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ldg {

std::pair<int, int> pair_from_index(std::int64_t k, int n) {
    // Invert the row-major triangle index.
    int i = 0;
    std::int64_t row_len = n - 1;
    while (k >= row_len) {
        k -= row_len;
        --row_len;
        ++i;
    }
    return {i, i + 1 + static_cast<int>(k)};
}

SymMatrix::SymMatrix(int n, MatrixKind kind) : n_(n), kind_(kind) {
    if (n < 1) throw std::invalid_argument("SymMatrix: dimension must be >= 1");
    tri_.assign(pair_count(n), 0.0);
}

SymMatrix SymMatrix::zero(int n, MatrixKind kind) { return SymMatrix(n, kind); }

SymMatrix SymMatrix::constant(int n, double value) {
    SymMatrix m(n, MatrixKind::Continuous);
    for (auto& x : m.tri_) {
        x = value;
    }
    if (value < 0.0 || value > 1.0) throw std::invalid_argument("SymMatrix: entry outside [0,1]");
    return m;
}

SymMatrix SymMatrix::complete(int n) {
    SymMatrix m(n, MatrixKind::Adjacency);
    for (auto& x : m.tri_) x = 1.0;
    return m;
}

void SymMatrix::set(int i, int j, double v) {
    if (i == j) {
        if (v != 0.0) throw std::invalid_argument("SymMatrix: diagonal must stay zero");
        return;
    }
    if (i > j) std::swap(i, j);
    upper_set(pair_index(i, j, n_), v);
}

void SymMatrix::upper_set(std::int64_t k, double v) {
    if (kind_ == MatrixKind::Adjacency) {
        if (v != 0.0 && v != 1.0) throw std::invalid_argument("SymMatrix: adjacency entry not 0/1");
    } else {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("SymMatrix: entry outside [0,1]");
    }
    tri_[k] = v;
}

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& m, MatrixKind kind, double sym_tol) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw std::invalid_argument("SymMatrix: matrix not square");
    const int n = static_cast<int>(m.rows());
    SymMatrix out(n, kind);
    for (int i = 0; i < n; ++i) {
        if (std::abs(m(i, i)) > sym_tol)
            throw std::invalid_argument("SymMatrix: nonzero diagonal");
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(m(i, j) - m(j, i)) > sym_tol)
                throw std::invalid_argument("SymMatrix: not symmetric within tolerance");
            out.upper_set(pair_index(i, j, n), 0.5 * (m(i, j) + m(j, i)));
        }
    }
    return out;
}

Eigen::MatrixXd SymMatrix::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) m(i, j) = m(j, i) = tri_[pair_index(i, j, n_)];
    return m;
}

double SymMatrix::hs_norm() const {
    double s = 0.0;
    for (double x : tri_) s += x * x;
    return std::sqrt(2.0 * s);
}

std::int64_t SymMatrix::edge_total() const {
    if (kind_ != MatrixKind::Adjacency)
        throw std::logic_error("edge_total: not an adjacency matrix");
    std::int64_t e = 0;
    for (double x : tri_) e += (x != 0.0);
    return e;
}

SymMatrix SymMatrix::load_csv(std::istream& in, MatrixKind kind) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::runtime_error("matrix CSV: ragged row");
        for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return from_dense(m, kind, 1e-12);
}

SymMatrix SymMatrix::load_csv_file(const std::string& path, MatrixKind kind) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix CSV: " + path);
    return load_csv(in, kind);
}

void SymMatrix::save_csv(std::ostream& out) const {
    char buf[40];
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", at(i, j));
            out << buf;
            if (j + 1 < n_) out << ',';
        }
        out << '\n';
    }
}

Spectrum spectrum(const Eigen::MatrixXd& sym) {
    if (!sym.allFinite()) throw std::invalid_argument("spectrum: non-finite entries");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) throw std::runtime_error("spectrum: eigensolver failed");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    const int n = static_cast<int>(sym.rows());

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ma = std::abs(ev[a]), mb = std::abs(ev[b]);
        if (ma != mb) return ma > mb;
        return ev[a] > ev[b];
    });
    // Near-ties in modulus (e.g. +2/-2 computed as 2 and -2+1e-16) are grouped
    // and reordered positive-first, descending signed value.
    const double scale = std::max(1.0, std::abs(ev[order.empty() ? 0 : order[0]]));
    const double tol = 1e-12 * scale;
    int g = 0;
    while (g < n) {
        int h = g + 1;
        double gmax = std::abs(ev[order[g]]);
        while (h < n && gmax - std::abs(ev[order[h]]) <= tol) ++h;
        std::sort(order.begin() + g, order.begin() + h,
                  [&](int a, int b) { return ev[a] > ev[b]; });
        g = h;
    }

    Spectrum s;
    s.eigenvalues.resize(n);
    s.eigenvectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        s.eigenvalues[k] = ev[order[k]];
        s.eigenvectors.col(k) = solver.eigenvectors().col(order[k]);
    }
    return s;
}

Spectrum spectrum(const SymMatrix& x) { return spectrum(x.dense()); }

double schatten(const Spectrum& s, double alpha) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("schatten: not a norm (alpha < 1)");
    if (std::isinf(alpha)) return s.eigenvalues.size() ? std::abs(s.eigenvalues[0]) : 0.0;
    double sum = 0.0;
    for (int i = 0; i < s.eigenvalues.size(); ++i)
        sum += std::pow(std::abs(s.eigenvalues[i]), alpha);
    return std::pow(sum, 1.0 / alpha);
}

double schatten(const SymMatrix& x, double alpha) { return schatten(spectrum(x), alpha); }

double schatten(const Eigen::MatrixXd& sym, double alpha) { return schatten(spectrum(sym), alpha); }

double hs_k(const Spectrum& s, int k) {
    if (k < 1 || k > s.eigenvalues.size()) throw std::invalid_argument("hs_k: k out of range");
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += s.eigenvalues[i] * s.eigenvalues[i];
    return std::sqrt(sum);
}

double hs_k(const SymMatrix& x, int k) { return hs_k(spectrum(x), k); }

double operator_norm(const Eigen::MatrixXd& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
}

RankSplit rank_split(const Spectrum& s, int r, int n) {
    if (r < 1 || r > n - 1) throw std::invalid_argument("rank_split: R out of range");
    RankSplit out;
    out.low_rank = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < r; ++j)
        out.low_rank.noalias() +=
            s.eigenvalues[j] * s.eigenvectors.col(j) * s.eigenvectors.col(j).transpose();
    out.residual = Eigen::MatrixXd::Zero(n, n);
    for (int j = r; j < n; ++j)
        out.residual.noalias() +=
            s.eigenvalues[j] * s.eigenvectors.col(j) * s.eigenvectors.col(j).transpose();
    return out;
}

RankSplit rank_split(const SymMatrix& x, int r) {
    return rank_split(spectrum(x), r, x.dim());
}

}  // namespace ldg
