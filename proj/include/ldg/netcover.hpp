#pragma once

#include "ldg/pattern_graph.hpp"
#include "ldg/sym_matrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace ldg {

// Ordered spectral data (lambda, frame) in Lambda_R x St(N,R).
struct SpectralPoint {
    Eigen::VectorXd lambdas;   // modulus-ordered, length R
    Eigen::MatrixXd frame;     // N x R, orthonormal columns

    void validate(double tol = 1e-8) const;  // ordering and frame Gram
};

struct OpBall {
    Eigen::MatrixXd center;  // rank <= R
    double radius = 0.0;     // operator norm
};

// Mat(lambda, u) = sum_j lambda_j u_j u_j^T.
Eigen::MatrixXd mat_assemble(const SpectralPoint& point);

struct PerturbationReport {
    double max_lhs = 0.0;    // max ||X - Y||_HS observed
    double min_slack = 0.0;  // min (bound - lhs) over trials, >= 0 when the chain holds
    std::int64_t trials = 0;
    bool holds = true;
};

// Randomized check of the net chain
//   ||X - Y||_HS <= sqrt(R) ||lambda - mu||_2 + ||mu||_2 sqrt(2) ||u - v||_HS
// at test resolution delta (the paper's nets use N^{-200 l}, far below double
// precision; the chain itself is what is verified).
PerturbationReport net_perturbation_bound(int n, int r, double delta_lambda, double delta_frame,
                                          std::int64_t trials, std::uint64_t seed);

// ||u u^T - v v^T||_HS^2 = 2 (1 - <u,v>^2) for unit vectors.
double rank_one_projector_gap(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

// Builds Z = Pi M Pi with Pi the projector onto ker(Y); then
// Tr (Y+Z)^l = Tr Y^l + Tr Z^l and Schatten powers add.
struct ResidualIdentityReport {
    double max_trace_rel_err = 0.0;     // over l in {3..8}
    double schatten_rel_err = 0.0;      // at the probed alpha
    bool holds = true;
};

ResidualIdentityReport orthogonal_residual_trace_identity(const Eigen::MatrixXd& y,
                                                          const Eigen::MatrixXd& z,
                                                          double alpha = 2.5,
                                                          double tol = 1e-8);

// Z with image in ker(Y) built from a seed matrix M.
Eigen::MatrixXd project_to_kernel(const Eigen::MatrixXd& y, const Eigen::MatrixXd& m,
                                  double rank_tol = 1e-9);

struct CycleFluctuationReport {
    double max_ratio = 0.0;  // |Tr X^l - Tr Y^l| over the allowed budget
    std::int64_t trials = 0;
    bool holds = true;
};

// X = Y + Z + noise with ||Z||_{S_l} <= eps N p and Im(Z) in ker(Y):
// |Tr X^l - Tr Y^l| <= eps^l N^l p^l + l 2^l ||noise||_HS (2N)^{l-1}.
CycleFluctuationReport cycle_fluctuation_check(int n, int r, int ell, double eps, double p,
                                               double noise_hs, std::int64_t trials,
                                               std::uint64_t seed);

struct HomFluctuationReport {
    double max_bound_ratio = 0.0;   // |dhom| over the Lemma-style cap, <= 1 when it holds
    double max_prop_ratio = 0.0;    // |dhom| / (eps0 K N^n p^m), reported only
    std::int64_t trials = 0;
    bool holds = true;
};

// Random pairs in an operator-norm ball of radius eps0 N p^{Delta*} / 2
// centered in X_N; asserts |hom_H(X)-hom_H(Y)| <= N ||X-Y||_op sum_e N^{v-2}
// (the trivial cap route), and reports the sharper sampled ratio.
HomFluctuationReport hom_fluctuation_check(const PatternGraph& h, int n, double p, double eps0,
                                           double k_cap, std::int64_t trials, std::uint64_t seed);

}  // namespace ldg
