#pragma once

#include "ldg/pattern_graph.hpp"
#include "ldg/rates.hpp"
#include "ldg/sym_matrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ldg {

// The constrained functional h(X). Cycles get a dedicated trace route so the
// solver stays O(N^3) per iteration at N in the hundreds.
struct TailFunctional {
    enum class Kind { PatternHom, CycleTrace, SchattenNorm, EdgeCount };
    Kind kind = Kind::EdgeCount;
    PatternGraph pattern;
    int ell = 0;
    double alpha = 2.0;

    static TailFunctional pattern_hom(PatternGraph h);
    static TailFunctional cycle(int ell);
    static TailFunctional schatten_norm(double alpha);
    static TailFunctional edge_count();

    double eval(const Eigen::MatrixXd& x) const;
    // d h / d x_ij for the upper-triangle variables (x_ij drives both X_ij and X_ji).
    Eigen::MatrixXd gradient(const Eigen::MatrixXd& x) const;
    std::string name() const;
    // v(H) and e(H) for the hom scaling t N^v p^e; cycles count as (ell, ell).
    int hom_vertices() const;
    int hom_edges() const;
};

struct VarProblem {
    TailFunctional functional;
    int n = 0;
    double p = 0.0;
    TailDirection direction = TailDirection::Upper;
    double threshold = 0.0;  // absolute threshold on h
    double scale = 1.0;      // natural magnitude, used for relative gaps

    // hom_H(X) >= t N^{v} p^{e} (phi) / <= (psi).
    static VarProblem hom_upper(const TailFunctional& f, int n, double p, double t);
    static VarProblem hom_lower(const TailFunctional& f, int n, double p, double t);
    // ||X||_{S_alpha} <= q (N-1).
    static VarProblem schatten_lower(double alpha, int n, double p, double q);
    static VarProblem edge_count_lower(int n, double p, double threshold);
};

struct SolveOptions {
    std::uint64_t seed = 1;
    int max_iters = 5000;        // per start, across penalty rounds
    int penalty_rounds = 10;
    double penalty_factor = 10.0;
    double feas_tol = 1e-6;      // relative feasibility tolerance (reporting)
    double clip_eps = 1e-9;      // box clipping to avoid log singularities
    double snap_tol = 1e-7;      // post-hoc boundary snapping
    bool use_candidate_starts = true;
    int random_starts = 1;
};

struct VarSolution {
    SymMatrix x;
    double objective = 0.0;         // I_p(x)
    double feasibility_gap = 0.0;   // relative, 0 when strictly feasible
    double kkt_residual = 0.0;
    int starts_used = 0;
    double best_candidate_cost = std::numeric_limits<double>::quiet_NaN();
    double certified_bound = std::numeric_limits<double>::quiet_NaN();
    std::string winning_start;
};

// Upper-tail problem: minimize I_p over {h >= T}. The result is an upper
// bound on the true infimum (multi-start mirror descent, no global
// certificate).
VarSolution solve_phi(const VarProblem& problem, const SolveOptions& opts = {});

// Lower-tail problem: minimize I_p over {h <= T}. For convex functionals the
// certified scalar bound (N choose 2) I_p(q) is attached and checked.
VarSolution solve_psi(const VarProblem& problem, const SolveOptions& opts = {});

// (N choose 2) I_p(q), the certified lower bound on psi for Schatten norms
// (threshold q (N-1)) and for seminorming patterns (threshold qhat^m N^n with
// qhat = q - q/N). Requires 0 < q <= p.
double certified_convex_psi_schatten(double alpha, int n, double p, double q);
double certified_convex_psi_pattern(const PatternGraph& h, int n, double p, double q);

// Exact minimizers of I_p over simple convex bodies, used as the variational
// side of the non-asymptotic inequality checks.
struct HalfSpace {
    std::vector<double> coeffs;  // one per upper-triangle entry
    double bound = 0.0;          // sum coeffs . x <= bound
};
double ip_min_halfspace(int n, double p, const HalfSpace& hs);
double ip_min_schatten_ball(int n, double p, double alpha, double radius);

// Matrix CSV plus JSON sidecar {objective, feasibility_gap, kkt_residual, seed, starts}.
void dump_solution(const VarSolution& sol, const SolveOptions& opts, std::ostream& matrix_csv,
                   std::ostream& sidecar_json);

}  // namespace ldg
