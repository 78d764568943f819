#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ldg {

enum class MatrixKind { Continuous, Adjacency };

// Index of the unordered pair (i,j), i<j, in the strict upper triangle of an
// N x N matrix, row-major. The same ordering keys the edge-level RNG streams.
inline std::int64_t pair_index(int i, int j, int n) {
    return static_cast<std::int64_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
}
inline std::int64_t pair_count(int n) { return static_cast<std::int64_t>(n) * (n - 1) / 2; }
std::pair<int, int> pair_from_index(std::int64_t k, int n);

// Symmetric N x N matrix with zero diagonal; entries in [0,1] (continuous)
// or {0,1} (adjacency). Only the strict upper triangle is stored, so
// symmetry holds by construction.
class SymMatrix {
public:
    SymMatrix() = default;
    SymMatrix(int n, MatrixKind kind);

    static SymMatrix zero(int n, MatrixKind kind = MatrixKind::Continuous);
    static SymMatrix constant(int n, double value);         // value * (J_N)
    static SymMatrix complete(int n);                       // A(K_N) = J_N
    // Validates symmetry within tol, then symmetrizes exactly; diagonal must be 0.
    static SymMatrix from_dense(const Eigen::MatrixXd& m, MatrixKind kind,
                                double sym_tol = 1e-12);

    int dim() const { return n_; }
    MatrixKind kind() const { return kind_; }

    double at(int i, int j) const {
        if (i == j) return 0.0;
        if (i > j) std::swap(i, j);
        return tri_[pair_index(i, j, n_)];
    }
    void set(int i, int j, double v);

    double upper_at(std::int64_t k) const { return tri_[k]; }
    void upper_set(std::int64_t k, double v);
    const std::vector<double>& upper() const { return tri_; }

    Eigen::MatrixXd dense() const;
    double hs_norm() const;        // entrywise Frobenius norm
    std::int64_t edge_total() const;  // adjacency only: number of edges

    // Matrix CSV: N rows of N comma-separated entries, no header.
    static SymMatrix load_csv(std::istream& in, MatrixKind kind = MatrixKind::Continuous);
    static SymMatrix load_csv_file(const std::string& path,
                                   MatrixKind kind = MatrixKind::Continuous);
    void save_csv(std::ostream& out) const;

private:
    int n_ = 0;
    MatrixKind kind_ = MatrixKind::Continuous;
    std::vector<double> tri_;
};

// Eigenvalues in non-increasing order of modulus (ties: positive first, then
// descending signed value) with matching orthonormal eigenvector columns.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

Spectrum spectrum(const Eigen::MatrixXd& sym);
Spectrum spectrum(const SymMatrix& x);

// Schatten norm (sum |lambda|^alpha)^(1/alpha); alpha = infinity gives the
// operator norm. Throws for alpha < 1.
double schatten(const Spectrum& s, double alpha);
double schatten(const SymMatrix& x, double alpha);
double schatten(const Eigen::MatrixXd& sym, double alpha);
inline constexpr double kAlphaInf = std::numeric_limits<double>::infinity();

// (sum of top-k lambda^2)^(1/2) under modulus ordering.
double hs_k(const Spectrum& s, int k);
double hs_k(const SymMatrix& x, int k);

double operator_norm(const Eigen::MatrixXd& sym);

struct RankSplit {
    Eigen::MatrixXd low_rank;  // X_<= : top-R spectral projection
    Eigen::MatrixXd residual;  // X_>  : X - X_<=
};

RankSplit rank_split(const SymMatrix& x, int r);
RankSplit rank_split(const Spectrum& s, int r, int n);

}  // namespace ldg
