#pragma once

#include "ldg/rates.hpp"
#include "ldg/sym_matrix.hpp"
#include "ldg/varsolve.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ldg {

struct TailProblem {
    TailFunctional functional;
    int n = 0;
    double p = 0.0;
    TailDirection direction = TailDirection::Upper;
    double threshold = 0.0;  // absolute threshold on the functional

    bool in_tail(double value) const {
        return direction == TailDirection::Upper ? value >= threshold : value <= threshold;
    }
};

enum class EstimateMode { Exact, MonteCarlo, ImportanceSampling };

struct TailEstimate {
    TailProblem problem;
    double value = 0.0;
    EstimateMode mode = EstimateMode::Exact;
    double std_error = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    // Importance-sampling diagnostics.
    double mean_likelihood_ratio = 1.0;
    double mean_lr_std_error = 0.0;
    double effective_samples = 0.0;
};

struct TiltComponent {
    enum class Kind { Product, PlantedClique, PlantedHub };
    Kind kind = Kind::Product;
    double r = 0.0;   // product rate
    int block = 0;    // clique size N_0 or hub size k
    double weight = 1.0;
};

struct TiltSpec {
    std::vector<TiltComponent> components;

    static TiltSpec product(double r);
    static TiltSpec planted_clique(int n0, double mix_with_p, double clique_weight);
    static TiltSpec planted_hub(int k, double mix_with_p, double hub_weight);
    void validate() const;  // weights positive, sum 1
};

// i.i.d. Bernoulli(p) upper triangle; edge k is a pure function of
// (seed, k), so runs are reproducible and chunkable.
SymMatrix sample_gnp(int n, double p, std::uint64_t seed);

// Per-graph functional values over all 2^(N(N-1)/2) graphs, indexed by the
// upper-triangle edge mask. Guarded at N <= 7.
std::vector<double> enumerate_values(int n, const std::function<double(const SymMatrix&)>& fn);
std::vector<double> enumerate_functional_values(const TailFunctional& f, int n);
double exact_tail_from_values(const std::vector<double>& values, int n, double p,
                              TailDirection direction, double threshold);

TailEstimate enumerate_tail(const TailProblem& problem);

// Plain importance sampling: mean of indicator times dmu_p/dproposal.
// product(p) reduces to plain Monte Carlo.
TailEstimate is_tail(const TailProblem& problem, const TiltSpec& tilt, std::int64_t samples,
                     std::uint64_t seed);

// Convex bodies supported by the exact-inequality checks.
struct ConvexSetSpec {
    enum class Kind { HalfSpace, SchattenBall };
    Kind kind = Kind::HalfSpace;
    HalfSpace half_space;
    double alpha = 2.0;
    double radius = 0.0;
    bool contains(const SymMatrix& a) const;
    std::string describe() const;
};

struct ConvexBoundReport {
    double mu_exact = 0.0;  // exact mu_p(K) by enumeration
    double ip_k = 0.0;      // I_p(K) from the convex minimizer
    double bound = 0.0;     // exp(-I_p(K))
    double margin = 0.0;    // bound - mu_exact
    bool holds = false;     // mu <= bound within solver tolerance
};

ConvexBoundReport verify_convex_bound(const ConvexSetSpec& k, int n, double p,
                                      double tolerance = 1e-6);

struct SpectralStudyConstants {
    double c0 = 1.0;       // implied constant in (lambdaR.bd)/(tail.refined)
    double alpha = 3.0;    // spectral moment order for the tail sums
    double k_hs = 0.0;     // HS conditioning level; 0 means use K
    double c_prime = 1.0;  // sqrt(kNp) coefficient in the HS_k tail
};

struct SpectralStudyRow {
    int r = 0;
    std::int64_t lambda_bd_exceed = 0;    // (lambdaR.bd) with caller constants
    std::int64_t tail_refined_exceed = 0; // (tail.refined) with caller constants
    std::int64_t hsk_exceed = 0;          // ||A||_{HS,k} tail with k=r
    std::int64_t rapprox_violations = 0;  // (Rapprox.basic), must stay 0
    std::int64_t ahs_violations = 0;      // (AHS.R)/(AHS.ell) given the HS event, must stay 0
};

struct SpectralStudyReport {
    std::int64_t samples = 0;
    std::int64_t hs_event_count = 0;       // samples with ||A||_HS <= K N sqrt(p)
    std::int64_t hs_identity_violations = 0;  // ||A||_HS^2 == 2 * edges, exact
    std::int64_t modulus_order_violations = 0;
    std::vector<SpectralStudyRow> rows;
    bool deterministic_ok = true;  // all theorem-grade counts zero
};

SpectralStudyReport spectral_tail_study(int n, double p, const std::vector<int>& r_list, double k,
                                        std::int64_t samples, const SpectralStudyConstants& constants,
                                        std::uint64_t seed);

struct TiltBallReport {
    double estimate = 0.0;   // mu_p(B_r(eps,alpha)) via tilted sampling
    double std_error = 0.0;
    double bound = 0.0;      // 0.5 exp(-(N choose 2) I_p(r) - eps p N^2)
    double ratio = 0.0;      // estimate / bound, >= 1 when the ball captures mass
    double ball_rate = 0.0;  // mu_r(B), the Markov-step margin
};

TiltBallReport tilt_ball_probability(int n, double p, double r, double eps, double alpha,
                                     std::int64_t samples, std::uint64_t seed);

// Empirical stand-in for the (tilt:eps) margin: twice the mean Schatten
// deviation of mu_r samples from r*J, normalized by r*N.
double tilt_eps_pilot(int n, double r, double alpha, std::int64_t samples, std::uint64_t seed);

// log mu_p of the planted events: (N0 choose 2) log p for a clique block,
// (C(k,2) + k(N-k)) log p for a hub.
double log_mu_clique(int n0, double p);
double log_mu_hub(int n, int k, double p);

}  // namespace ldg
