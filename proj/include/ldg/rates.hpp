#pragma once

#include "ldg/pattern_graph.hpp"
#include "ldg/sym_matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace ldg {

enum class TailDirection { Upper, Lower };

struct RateParams {
    int n = 0;                 // N
    double p = 0.0;            // edge probability, in (0,1)
    double u = 0.0;            // excess parameter (upper: t = 1+u > 1)
    double t = 1.0;            // threshold factor
    TailDirection direction = TailDirection::Upper;

    static RateParams upper(int n, double p, double u);
    static RateParams lower(int n, double p, double t);
    void validate() const;
};

// Bernoulli relative entropy x log(x/p) + (1-x) log((1-x)/(1-p)), in nats,
// with the 0 log 0 = 0 convention.
double ip_scalar(double p, double x);

// Sum of ip_scalar over the strict upper triangle.
double ip_matrix(double p, const SymMatrix& x);
double ip_matrix_dense(double p, const Eigen::MatrixXd& x);

// Unique theta > 0 with P_{H*}(theta) = 1 + u for the independence
// polynomial of the max-degree core H*. Bisection, relative residual 1e-12.
double theta(const PatternGraph& h, double u);

// min{theta_H(u), u^{2/|V|}/2} for regular H, theta_H(u) otherwise.
double c_h(const PatternGraph& h, double u);

// Closed forms from the cycle analysis, used as cross-checks of c_h.
double c3_closed(double u);
double c4_closed(double u);

// c_H(u) * N^2 * p^Delta * log(1/p).
double predicted_upper_rate(const PatternGraph& h, const RateParams& params);

enum class CandidateLabel { Clique, Hub, Uniform };

struct CandidateMatrix {
    SymMatrix matrix;
    double ip_cost = 0.0;                       // I_p(matrix), in nats
    std::map<std::string, double> hom_values;   // per certified pattern
    CandidateLabel label = CandidateLabel::Uniform;
    bool feasible = false;                      // against the declared tail constraint
    double threshold = 0.0;                     // t * N^{v} * p^{e} of the certified pattern
    int block_size = 0;                         // clique N_0 or hub size (0 for uniform)
};

// Clique: entries 1 on a planted block of size floor(a N p), p elsewhere.
CandidateMatrix clique_candidate(const RateParams& params, double a,
                                 const std::vector<PatternGraph>& patterns);
// Hub: rows/cols of the first floor(b N p^Delta) vertices set to 1 (Delta
// taken from the certified pattern), p elsewhere.
CandidateMatrix hub_candidate(const RateParams& params, double b,
                              const std::vector<PatternGraph>& patterns);
// Uniform: b p J.
CandidateMatrix uniform_candidate(const RateParams& params, double b,
                                  const std::vector<PatternGraph>& patterns);

struct QuantTerms {
    double eps_plus = 0.0;
    double eps_minus = 0.0;
    double complexity = 0.0;
    double p_excep_plus = 0.0;
    double p_excep_minus = 0.0;
};

struct QuantConstants {
    double c_plus = 1.0;   // exponent constant in the upper-tail exceptional term
    double c_minus = 1.0;  // same for the lower tail; defaults are non-normative
};

QuantTerms quant_terms(int ell, const RateParams& params, double k_param, int r_param,
                       const QuantConstants& constants = {});

struct RateRow {
    std::string pattern;
    int n;
    double p, u, theta, c_h, predicted_rate, clique_cost, hub_cost;
};

// CSV with header comment "#schema=1".
std::string rate_table_csv(const std::vector<RateRow>& rows);
RateRow rate_row(const PatternGraph& h, const std::string& name, const RateParams& params);

}  // namespace ldg
