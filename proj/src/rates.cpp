#include "ldg/rates.hpp"

#include "ldg/homcount.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ldg {

RateParams RateParams::upper(int n, double p, double u) {
    RateParams out;
    out.n = n;
    out.p = p;
    out.u = u;
    out.t = 1.0 + u;
    out.direction = TailDirection::Upper;
    out.validate();
    return out;
}

RateParams RateParams::lower(int n, double p, double t) {
    RateParams out;
    out.n = n;
    out.p = p;
    out.t = t;
    out.u = t - 1.0;
    out.direction = TailDirection::Lower;
    out.validate();
    return out;
}

void RateParams::validate() const {
    if (n < 1) throw std::invalid_argument("RateParams: N must be positive");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("RateParams: p must be in (0,1)");
    if (direction == TailDirection::Upper && !(u > 0.0))
        throw std::invalid_argument("RateParams: upper tail requires u > 0");
    if (direction == TailDirection::Lower && !(t >= 0.0 && t < 1.0))
        throw std::invalid_argument("RateParams: lower tail requires t in [0,1)");
}

double ip_scalar(double p, double x) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("ip_scalar: p must be in (0,1)");
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("ip_scalar: x must be in [0,1]");
    double s = 0.0;
    if (x > 0.0) s += x * std::log(x / p);
    if (x < 1.0) s += (1.0 - x) * std::log((1.0 - x) / (1.0 - p));
    return s;
}

double ip_matrix(double p, const SymMatrix& x) {
    double s = 0.0;
    for (double v : x.upper()) s += ip_scalar(p, v);
    return s;
}

double ip_matrix_dense(double p, const Eigen::MatrixXd& x) {
    double s = 0.0;
    const int n = static_cast<int>(x.rows());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += ip_scalar(p, x(i, j));
    return s;
}

namespace {

double eval_poly(const std::vector<std::int64_t>& coeff, double x) {
    double v = 0.0;
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) v = v * x + static_cast<double>(*it);
    return v;
}

}  // namespace

double theta(const PatternGraph& h, double u) {
    if (!(u > 0.0)) throw std::invalid_argument("theta: u must be positive");
    auto prof = degree_profile(h);
    if (prof.max_degree < 2) throw std::invalid_argument("theta: pattern must have Delta >= 2");
    auto coeff = independence_polynomial(prof.max_degree_core);

    // P(0) = 1 < 1+u and P(u) >= 1 + n* u >= 1+u, so [0,u] brackets the root.
    const double target = 1.0 + u;
    double lo = 0.0, hi = u;
    if (eval_poly(coeff, hi) < target) {
        // Degenerate core (should not happen for Delta >= 2), expand anyway.
        int guard = 0;
        while (eval_poly(coeff, hi) < target && guard++ < 200) hi *= 2.0;
        if (guard >= 200)
            throw std::runtime_error("theta: failed to bracket root, hi=" + std::to_string(hi));
    }
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (eval_poly(coeff, mid) < target)
            lo = mid;
        else
            hi = mid;
        if (std::abs(eval_poly(coeff, hi) - target) <= 1e-12 * target) return hi;
        if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
    }
    double root = 0.5 * (lo + hi);
    if (std::abs(eval_poly(coeff, root) - target) > 1e-9 * target) {
        std::ostringstream msg;
        msg << "theta: bisection did not converge, bracket [" << lo << ", " << hi
            << "], residual " << eval_poly(coeff, root) - target;
        throw std::runtime_error(msg.str());
    }
    return root;
}

double c_h(const PatternGraph& h, double u) {
    double th = theta(h, u);
    auto cls = classify(h);
    if (!cls.regular) return th;
    return std::min(th, 0.5 * std::pow(u, 2.0 / h.n_vertices()));
}

double c3_closed(double u) {
    return u <= 27.0 / 8.0 ? u / 3.0 : 0.5 * std::pow(u, 2.0 / 3.0);
}

double c4_closed(double u) {
    return u <= 16.0 ? -1.0 + std::sqrt(1.0 + 0.5 * u) : 0.5 * std::sqrt(u);
}

double predicted_upper_rate(const PatternGraph& h, const RateParams& params) {
    if (params.direction != TailDirection::Upper)
        throw std::invalid_argument("predicted_upper_rate: upper direction required");
    const int delta = degree_profile(h).max_degree;
    return c_h(h, params.u) * params.n * params.n * std::pow(params.p, delta) *
           std::log(1.0 / params.p);
}

namespace {

void fill_candidate_stats(CandidateMatrix& cand, const RateParams& params,
                          const std::vector<PatternGraph>& patterns) {
    cand.ip_cost = ip_matrix(params.p, cand.matrix);
    cand.feasible = !patterns.empty();
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const auto& h = patterns[i];
        double value;
        if (h.connected() && h.n_edges() == h.n_vertices() && degree_profile(h).max_degree == 2) {
            // Cycle: the spectral route is exact and fast at any N.
            value = hom_cycle_spectral(h.n_vertices(), cand.matrix).value;
        } else {
            value = hom(h, cand.matrix).value;
        }
        std::ostringstream key;
        key << "H" << i << "_v" << h.n_vertices() << "e" << h.n_edges();
        cand.hom_values[key.str()] = value;
        double threshold = params.t * std::pow(params.n, h.n_vertices()) *
                           std::pow(params.p, h.n_edges());
        cand.threshold = threshold;
        bool ok = params.direction == TailDirection::Upper ? value >= threshold
                                                           : value <= threshold;
        cand.feasible = cand.feasible && ok;
    }
}

}  // namespace

CandidateMatrix clique_candidate(const RateParams& params, double a,
                                 const std::vector<PatternGraph>& patterns) {
    const int n = params.n;
    const int block = static_cast<int>(std::floor(a * n * params.p));
    if (block > n) throw std::invalid_argument("clique_candidate: block exceeds N");
    CandidateMatrix cand;
    cand.label = CandidateLabel::Clique;
    cand.block_size = block;
    SymMatrix m = SymMatrix::constant(n, params.p);
    for (int i = 0; i < block; ++i)
        for (int j = i + 1; j < block; ++j) m.set(i, j, 1.0);
    cand.matrix = std::move(m);
    fill_candidate_stats(cand, params, patterns);
    return cand;
}

CandidateMatrix hub_candidate(const RateParams& params, double b,
                              const std::vector<PatternGraph>& patterns) {
    const int n = params.n;
    int delta = 1;
    for (const auto& h : patterns) delta = std::max(delta, degree_profile(h).max_degree);
    const int hub = static_cast<int>(std::floor(b * n * std::pow(params.p, delta)));
    if (hub > n) throw std::invalid_argument("hub_candidate: block exceeds N");
    CandidateMatrix cand;
    cand.label = CandidateLabel::Hub;
    cand.block_size = hub;
    SymMatrix m = SymMatrix::constant(n, params.p);
    for (int i = 0; i < hub; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) m.set(i, j, 1.0);
    cand.matrix = std::move(m);
    fill_candidate_stats(cand, params, patterns);
    return cand;
}

CandidateMatrix uniform_candidate(const RateParams& params, double b,
                                  const std::vector<PatternGraph>& patterns) {
    const double value = b * params.p;
    if (value < 0.0 || value > 1.0)
        throw std::invalid_argument("uniform_candidate: b*p outside [0,1]");
    CandidateMatrix cand;
    cand.label = CandidateLabel::Uniform;
    cand.matrix = SymMatrix::constant(params.n, value);
    fill_candidate_stats(cand, params, patterns);
    return cand;
}

QuantTerms quant_terms(int ell, const RateParams& params, double k_param, int r_param,
                       const QuantConstants& constants) {
    if (r_param < 1 || r_param > params.n)
        throw std::invalid_argument("quant_terms: R out of range");
    if (k_param < 1.0) throw std::invalid_argument("quant_terms: K must be >= 1");
    const double n = params.n, p = params.p, k = k_param, r = r_param;
    const double half_less = 0.5 - 1.0 / ell;
    QuantTerms out;
    out.eps_plus = 1.0 / (std::pow(n, half_less) * std::sqrt(p)) + k / std::pow(r, half_less);
    out.eps_minus = k / (std::sqrt(p) * std::pow(r, half_less));
    out.complexity = ell * r * n * std::log(n);
    out.p_excep_plus = 4.0 * n * std::exp(-constants.c_plus * k * k * n * n * p * p);
    out.p_excep_minus = std::exp(-constants.c_minus * k * k * n * n * p);
    return out;
}

RateRow rate_row(const PatternGraph& h, const std::string& name, const RateParams& params) {
    RateRow row;
    row.pattern = name;
    row.n = params.n;
    row.p = params.p;
    row.u = params.u;
    row.theta = theta(h, params.u);
    row.c_h = c_h(h, params.u);
    row.predicted_rate = predicted_upper_rate(h, params);
    auto clique = clique_candidate(params, std::pow(2.0 * params.t, 1.0 / h.n_vertices()), {h});
    row.clique_cost = clique.ip_cost;
    auto hub = hub_candidate(params, row.theta, {h});
    row.hub_cost = hub.ip_cost;
    return row;
}

std::string rate_table_csv(const std::vector<RateRow>& rows) {
    std::ostringstream out;
    out << "#schema=1\n";
    out << "pattern,N,p,u,theta,c_H,predicted_rate,clique_cost,hub_cost\n";
    char buf[40];
    auto put = [&](double v, bool last = false) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf << (last ? "\n" : ",");
    };
    for (const auto& r : rows) {
        out << r.pattern << "," << r.n << ",";
        put(r.p);
        put(r.u);
        put(r.theta);
        put(r.c_h);
        put(r.predicted_rate);
        put(r.clique_cost);
        put(r.hub_cost, true);
    }
    return out.str();
}

}  // namespace ldg
