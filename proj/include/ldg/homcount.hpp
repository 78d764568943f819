#pragma once

#include "ldg/pattern_graph.hpp"
#include "ldg/sym_matrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace ldg {

enum class HomMethod { Contraction, Spectral, InjectiveSum };

struct HomValue {
    double value = 0.0;
    HomMethod method = HomMethod::Contraction;
    bool exact_integer = false;    // true when computed on the int64 path
    std::int64_t int_value = 0;    // valid when exact_integer
};

// Weighted homomorphism count sum_phi prod_e X_{phi(v)phi(w)} by vertex
// elimination (greedy min-degree order). Adjacency inputs small enough for
// 63-bit arithmetic are counted exactly in integers.
HomValue hom(const PatternGraph& h, const SymMatrix& x);
double hom_dense(const PatternGraph& h, const Eigen::MatrixXd& x);

// sum_j lambda_j^ell; agrees with hom(C_ell, X) for X in X_N.
HomValue hom_cycle_spectral(int ell, const SymMatrix& x);
double trace_power(const Spectrum& s, double ell);

// Injective homomorphism count by direct enumeration over injective maps.
// Guarded at v(H) <= 6, N <= 64.
HomValue inj(const PatternGraph& h, const SymMatrix& x);

// Checks hom_H(A) = sum over loop-free partitions P of inj_{H/P}(A) exactly
// in integer arithmetic; on failure writes a counterexample report.
bool hom_quotient_identity_check(const PatternGraph& h, const SymMatrix& a,
                                 std::string* report = nullptr);

// Gradient matrix G with G_ij = d hom_H / d x_ij where x_ij (i<j) controls
// both W_ij and W_ji; symmetric with zero diagonal.
Eigen::MatrixXd hom_gradient(const PatternGraph& h, const Eigen::MatrixXd& w);

// D_H(W,Z) = sum_{i<j} Z_ij dhom/dW_ij.
double dir_derivative(const PatternGraph& h, const SymMatrix& w, const Eigen::MatrixXd& z);
double dir_derivative_dense(const PatternGraph& h, const Eigen::MatrixXd& w,
                            const Eigen::MatrixXd& z);

// N * ||Z||_op * sum_e hom_{H_(e)}(W), the a priori derivative bound.
double dir_derivative_bound(const PatternGraph& h, const SymMatrix& w, const Eigen::MatrixXd& z);

// N^{-v(H)} hom_H(X), in [0,1] for X in X_N.
double hom_density(const PatternGraph& h, const SymMatrix& x);

}  // namespace ldg
