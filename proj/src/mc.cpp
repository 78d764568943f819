#include "ldg/mc.hpp"

#include "ldg/homcount.hpp"
#include "ldg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ldg {

TiltSpec TiltSpec::product(double r) {
    TiltSpec t;
    t.components.push_back({TiltComponent::Kind::Product, r, 0, 1.0});
    t.validate();
    return t;
}

TiltSpec TiltSpec::planted_clique(int n0, double mix_with_p, double clique_weight) {
    TiltSpec t;
    t.components.push_back({TiltComponent::Kind::PlantedClique, 0.0, n0, clique_weight});
    t.components.push_back({TiltComponent::Kind::Product, mix_with_p, 0, 1.0 - clique_weight});
    t.validate();
    return t;
}

TiltSpec TiltSpec::planted_hub(int k, double mix_with_p, double hub_weight) {
    TiltSpec t;
    t.components.push_back({TiltComponent::Kind::PlantedHub, 0.0, k, hub_weight});
    t.components.push_back({TiltComponent::Kind::Product, mix_with_p, 0, 1.0 - hub_weight});
    t.validate();
    return t;
}

void TiltSpec::validate() const {
    if (components.empty()) throw std::invalid_argument("tilt: no components");
    double total = 0.0;
    for (const auto& c : components) {
        if (c.weight <= 0.0) throw std::invalid_argument("tilt: weights must be positive");
        if (c.kind == TiltComponent::Kind::Product && !(c.r >= 0.0 && c.r <= 1.0))
            throw std::invalid_argument("tilt: product rate outside [0,1]");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("tilt: weights must sum to 1");
}

SymMatrix sample_gnp(int n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_gnp: p outside [0,1]");
    SymMatrix a(n, MatrixKind::Adjacency);
    KeyedRng rng(seed);
    const std::int64_t d = pair_count(n);
    for (std::int64_t k = 0; k < d; ++k) a.upper_set(k, rng.uniform(k) < p ? 1.0 : 0.0);
    return a;
}

std::vector<double> enumerate_values(int n, const std::function<double(const SymMatrix&)>& fn) {
    if (n > 7) throw std::invalid_argument("enumerate: N above exact-enumeration guard (7)");
    const std::int64_t d = pair_count(n);
    const std::int64_t total = std::int64_t(1) << d;
    std::vector<double> values(total);
    for (std::int64_t mask = 0; mask < total; ++mask) {
        SymMatrix a(n, MatrixKind::Adjacency);
        for (std::int64_t k = 0; k < d; ++k)
            if (mask & (std::int64_t(1) << k)) a.upper_set(k, 1.0);
        values[mask] = fn(a);
    }
    return values;
}

std::vector<double> enumerate_functional_values(const TailFunctional& f, int n) {
    return enumerate_values(n, [&](const SymMatrix& a) { return f.eval(a.dense()); });
}

double exact_tail_from_values(const std::vector<double>& values, int n, double p,
                              TailDirection direction, double threshold) {
    const std::int64_t d = pair_count(n);
    if (static_cast<std::int64_t>(values.size()) != (std::int64_t(1) << d))
        throw std::invalid_argument("exact_tail_from_values: value table size mismatch");
    // Weight by edge count: p^e (1-p)^(d-e).
    std::vector<double> weight(d + 1);
    for (int e = 0; e <= d; ++e)
        weight[e] = std::pow(p, e) * std::pow(1.0 - p, static_cast<double>(d - e));
    double total = 0.0;
    for (std::int64_t mask = 0; mask < static_cast<std::int64_t>(values.size()); ++mask) {
        bool hit = direction == TailDirection::Upper ? values[mask] >= threshold
                                                     : values[mask] <= threshold;
        if (hit) total += weight[__builtin_popcountll(static_cast<unsigned long long>(mask))];
    }
    return total;
}

TailEstimate enumerate_tail(const TailProblem& problem) {
    if (problem.n > 7) throw std::invalid_argument("enumerate_tail: N above guard (7)");
    auto values = enumerate_functional_values(problem.functional, problem.n);
    TailEstimate est;
    est.problem = problem;
    est.mode = EstimateMode::Exact;
    est.samples = static_cast<std::int64_t>(values.size());
    est.value = exact_tail_from_values(values, problem.n, problem.p, problem.direction,
                                       problem.threshold);
    est.std_error = 0.0;
    return est;
}

namespace {

struct SampleDraw {
    SymMatrix a;
    std::int64_t edges = 0;
};

SampleDraw draw_from_component(const TiltComponent& c, int n, double p, const KeyedRng& rng) {
    SampleDraw out{SymMatrix(n, MatrixKind::Adjacency), 0};
    const std::int64_t d = pair_count(n);
    for (std::int64_t k = 0; k < d; ++k) {
        auto [i, j] = pair_from_index(k, n);
        bool forced = false;
        switch (c.kind) {
            case TiltComponent::Kind::Product:
                break;
            case TiltComponent::Kind::PlantedClique:
                forced = i < c.block && j < c.block;
                break;
            case TiltComponent::Kind::PlantedHub:
                forced = i < c.block;  // i < j, so one endpoint in the hub suffices
                break;
        }
        double rate = c.kind == TiltComponent::Kind::Product ? c.r : p;
        bool edge = forced || rng.uniform(k) < rate;
        if (edge) {
            out.a.upper_set(k, 1.0);
            ++out.edges;
        }
    }
    return out;
}

// log of dprop_i/dmu_p(A); -inf when the component cannot produce A.
double log_density_ratio(const TiltComponent& c, const SymMatrix& a, int n, double p,
                         std::int64_t edges) {
    const std::int64_t d = pair_count(n);
    switch (c.kind) {
        case TiltComponent::Kind::Product: {
            if (c.r == p) return 0.0;
            // log dmu_r/dmu_p = (N choose 2) I_p(r) + kappa(r,p) sum (r - a_ij)
            double kappa = std::log((1.0 - c.r) / (1.0 - p)) + std::log(p / c.r);
            return d * ip_scalar(p, c.r) + kappa * (c.r * d - static_cast<double>(edges));
        }
        case TiltComponent::Kind::PlantedClique: {
            for (int i = 0; i < c.block; ++i)
                for (int j = i + 1; j < c.block; ++j)
                    if (a.at(i, j) == 0.0) return -std::numeric_limits<double>::infinity();
            double forced_pairs = 0.5 * c.block * (c.block - 1);
            return -forced_pairs * std::log(p);
        }
        case TiltComponent::Kind::PlantedHub: {
            for (int i = 0; i < c.block; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (a.at(i, j) == 0.0) return -std::numeric_limits<double>::infinity();
            double forced_pairs = 0.5 * c.block * (c.block - 1) +
                                  static_cast<double>(c.block) * (n - c.block);
            return -forced_pairs * std::log(p);
        }
    }
    return 0.0;
}

}  // namespace

TailEstimate is_tail(const TailProblem& problem, const TiltSpec& tilt, std::int64_t samples,
                     std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("is_tail: need at least one sample");
    tilt.validate();
    const int n = problem.n;
    const double p = problem.p;
    KeyedRng master(seed);

    const std::int64_t chunk = 4096;
    const std::int64_t n_chunks = (samples + chunk - 1) / chunk;
    std::vector<double> sum_g(n_chunks, 0.0), sum_g2(n_chunks, 0.0);
    std::vector<double> sum_w(n_chunks, 0.0), sum_w2(n_chunks, 0.0);

    parallel_chunks(samples, chunk, [&](int ci, std::int64_t begin, std::int64_t end) {
        double g = 0, g2 = 0, w = 0, w2 = 0;
        for (std::int64_t s = begin; s < end; ++s) {
            KeyedRng sub = master.substream(static_cast<std::uint64_t>(s));
            // Component choice draws from a counter disjoint from edge draws.
            double pick = sub.uniform(std::uint64_t(1) << 62);
            const TiltComponent* comp = &tilt.components.back();
            double acc = 0.0;
            for (const auto& c : tilt.components) {
                acc += c.weight;
                if (pick < acc) {
                    comp = &c;
                    break;
                }
            }
            SampleDraw draw = draw_from_component(*comp, n, p, sub);
            // Mixture weight: 1 / sum_i w_i dprop_i/dmu_p.
            double lmax = -std::numeric_limits<double>::infinity();
            std::vector<double> logs(tilt.components.size());
            for (std::size_t i = 0; i < tilt.components.size(); ++i) {
                logs[i] = std::log(tilt.components[i].weight) +
                          log_density_ratio(tilt.components[i], draw.a, n, p, draw.edges);
                lmax = std::max(lmax, logs[i]);
            }
            double denom = 0.0;
            for (double l : logs) denom += std::isinf(l) ? 0.0 : std::exp(l - lmax);
            double weight = std::exp(-lmax) / denom;

            double value = problem.functional.eval(draw.a.dense());
            double gi = problem.in_tail(value) ? weight : 0.0;
            g += gi;
            g2 += gi * gi;
            w += weight;
            w2 += weight * weight;
        }
        sum_g[ci] = g;
        sum_g2[ci] = g2;
        sum_w[ci] = w;
        sum_w2[ci] = w2;
    });

    double g = 0, g2 = 0, w = 0, w2 = 0;
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        g += sum_g[c];
        g2 += sum_g2[c];
        w += sum_w[c];
        w2 += sum_w2[c];
    }
    const double m = static_cast<double>(samples);
    TailEstimate est;
    est.problem = problem;
    est.mode = tilt.components.size() == 1 &&
                       tilt.components[0].kind == TiltComponent::Kind::Product &&
                       tilt.components[0].r == p
                   ? EstimateMode::MonteCarlo
                   : EstimateMode::ImportanceSampling;
    est.samples = samples;
    est.seed = seed;
    est.value = g / m;
    est.std_error = std::sqrt(std::max(0.0, g2 / m - est.value * est.value) / m);
    est.mean_likelihood_ratio = w / m;
    est.mean_lr_std_error =
        std::sqrt(std::max(0.0, w2 / m - est.mean_likelihood_ratio * est.mean_likelihood_ratio) / m);
    est.effective_samples = w2 > 0 ? w * w / w2 : 0.0;
    if (est.effective_samples <= 0.0) throw std::runtime_error("is_tail: zero effective sample size");
    return est;
}

bool ConvexSetSpec::contains(const SymMatrix& a) const {
    if (kind == Kind::HalfSpace) {
        double s = 0.0;
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(a.upper().size()); ++k)
            s += half_space.coeffs[k] * a.upper_at(k);
        return s <= half_space.bound;
    }
    return schatten(a, alpha) <= radius;
}

std::string ConvexSetSpec::describe() const {
    std::ostringstream out;
    if (kind == Kind::HalfSpace)
        out << "halfspace(bound=" << half_space.bound << ")";
    else
        out << "schatten_ball(alpha=" << alpha << ", radius=" << radius << ")";
    return out.str();
}

ConvexBoundReport verify_convex_bound(const ConvexSetSpec& k, int n, double p, double tolerance) {
    ConvexBoundReport rep;
    auto values = enumerate_values(n, [&](const SymMatrix& a) { return k.contains(a) ? 1.0 : 0.0; });
    rep.mu_exact = exact_tail_from_values(values, n, p, TailDirection::Upper, 0.5);
    rep.ip_k = k.kind == ConvexSetSpec::Kind::HalfSpace
                   ? ip_min_halfspace(n, p, k.half_space)
                   : ip_min_schatten_ball(n, p, k.alpha, k.radius);
    rep.bound = std::exp(-rep.ip_k);
    rep.margin = rep.bound - rep.mu_exact;
    rep.holds = rep.mu_exact <= rep.bound * (1.0 + tolerance) + 1e-300;
    return rep;
}

SpectralStudyReport spectral_tail_study(int n, double p, const std::vector<int>& r_list, double k,
                                        std::int64_t samples,
                                        const SpectralStudyConstants& constants,
                                        std::uint64_t seed) {
    SpectralStudyReport rep;
    rep.samples = samples;
    rep.rows.resize(r_list.size());
    for (std::size_t i = 0; i < r_list.size(); ++i) rep.rows[i].r = r_list[i];

    const double k_hs = constants.k_hs > 0 ? constants.k_hs : k;
    const double alpha = constants.alpha;
    std::mutex merge_mutex;

    parallel_chunks(samples, 64, [&](int, std::int64_t begin, std::int64_t end) {
        SpectralStudyReport local;
        local.rows.resize(r_list.size());
        KeyedRng master(seed);
        for (std::int64_t s = begin; s < end; ++s) {
            SymMatrix a = sample_gnp(n, p, master.substream(s).key());
            auto spec = spectrum(a);
            const auto& ev = spec.eigenvalues;
            double hs2 = 0.0;
            for (int j = 0; j < n; ++j) hs2 += ev[j] * ev[j];
            // ||A||_HS^2 = 2 * edge count, an exact integer identity.
            double edges2 = 2.0 * static_cast<double>(a.edge_total());
            if (std::abs(hs2 - edges2) > 1e-6 * std::max(1.0, edges2))
                ++local.hs_identity_violations;
            for (int j = 0; j + 1 < n; ++j)
                if (std::abs(ev[j]) + 1e-12 < std::abs(ev[j + 1])) ++local.modulus_order_violations;

            const bool hs_event = std::sqrt(hs2) <= k_hs * n * std::sqrt(p);
            if (hs_event) ++local.hs_event_count;

            for (std::size_t ri = 0; ri < r_list.size(); ++ri) {
                const int r = r_list[ri];
                auto& row = local.rows[ri];
                if (r + 1 <= n) {
                    // (Rapprox.basic) |lambda_{R+1}| <= N/sqrt(R+1), deterministic.
                    if (std::abs(ev[r]) > n / std::sqrt(r + 1.0) + 1e-9) ++row.rapprox_violations;
                }
                if (r <= n) {
                    double lam_r = std::abs(ev[r - 1]);
                    if (lam_r > constants.c0 * (std::sqrt(n * p) + k * n * p / std::sqrt(r)))
                        ++row.lambda_bd_exceed;
                    double tail_sum = 0.0;
                    for (int j = r; j < n; ++j) tail_sum += std::pow(std::abs(ev[j]), alpha);
                    double tail_bound =
                        constants.c0 * (std::pow(n, 1.0 + alpha / 2.0) * std::pow(p, alpha / 2.0) +
                                        std::pow(k * n * p, alpha) / std::pow(r, alpha / 2.0 - 1.0));
                    if (tail_sum > tail_bound) ++row.tail_refined_exceed;
                    double hsk = 0.0;
                    for (int j = 0; j < r; ++j) hsk += ev[j] * ev[j];
                    hsk = std::sqrt(hsk);
                    if (hsk >= k * n * p + constants.c_prime * std::sqrt(r * n * p))
                        ++row.hsk_exceed;
                    if (hs_event) {
                        // (AHS.R) and (AHS.ell): deterministic given the HS event.
                        double cap = k_hs * n * std::sqrt(p);
                        if (lam_r > cap / std::sqrt(r) + 1e-9) ++row.ahs_violations;
                        double ell_cap = std::pow(cap / std::pow(r, 0.5 - 1.0 / alpha), alpha);
                        double tail_from_r = 0.0;  // sum over j >= R, 1-based
                        for (int j = r - 1; j < n; ++j)
                            tail_from_r += std::pow(std::abs(ev[j]), alpha);
                        if (tail_from_r > ell_cap * (1.0 + 1e-9)) ++row.ahs_violations;
                    }
                }
            }
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        rep.hs_event_count += local.hs_event_count;
        rep.hs_identity_violations += local.hs_identity_violations;
        rep.modulus_order_violations += local.modulus_order_violations;
        for (std::size_t ri = 0; ri < r_list.size(); ++ri) {
            rep.rows[ri].lambda_bd_exceed += local.rows[ri].lambda_bd_exceed;
            rep.rows[ri].tail_refined_exceed += local.rows[ri].tail_refined_exceed;
            rep.rows[ri].hsk_exceed += local.rows[ri].hsk_exceed;
            rep.rows[ri].rapprox_violations += local.rows[ri].rapprox_violations;
            rep.rows[ri].ahs_violations += local.rows[ri].ahs_violations;
        }
    });

    rep.deterministic_ok = rep.hs_identity_violations == 0 && rep.modulus_order_violations == 0;
    for (const auto& row : rep.rows)
        rep.deterministic_ok =
            rep.deterministic_ok && row.rapprox_violations == 0 && row.ahs_violations == 0;
    return rep;
}

TiltBallReport tilt_ball_probability(int n, double p, double r, double eps, double alpha,
                                     std::int64_t samples, std::uint64_t seed) {
    if (!(r > 0.0 && r < p && p <= 0.5))
        throw std::invalid_argument("tilt_ball_probability: need 0 < r < p <= 1/2");
    const std::int64_t d = pair_count(n);
    const double kappa = std::log((1.0 - r) / (1.0 - p)) + std::log(p / r);
    const double ipr = ip_scalar(p, r);

    KeyedRng master(seed);
    double sum = 0.0, sum2 = 0.0;
    std::int64_t in_ball = 0;
    Eigen::MatrixXd rj = r * (Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n));
    for (std::int64_t s = 0; s < samples; ++s) {
        SymMatrix a = sample_gnp(n, r, master.substream(s).key());
        double dev = schatten(Eigen::MatrixXd(a.dense() - rj), alpha);
        bool inside = dev <= eps * r * n;
        if (inside) ++in_ball;
        double log_w = -(d * ipr + kappa * (r * d - static_cast<double>(a.edge_total())));
        double g = inside ? std::exp(log_w) : 0.0;
        sum += g;
        sum2 += g * g;
    }
    const double m = static_cast<double>(samples);
    TiltBallReport rep;
    rep.estimate = sum / m;
    rep.std_error = std::sqrt(std::max(0.0, sum2 / m - rep.estimate * rep.estimate) / m);
    rep.bound = 0.5 * std::exp(-d * ipr - eps * p * n * n);
    rep.ratio = rep.bound > 0 ? rep.estimate / rep.bound : 0.0;
    rep.ball_rate = static_cast<double>(in_ball) / m;
    return rep;
}

double tilt_eps_pilot(int n, double r, double alpha, std::int64_t samples, std::uint64_t seed) {
    KeyedRng master(seed);
    Eigen::MatrixXd rj = r * (Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n));
    double total = 0.0;
    for (std::int64_t s = 0; s < samples; ++s) {
        SymMatrix a = sample_gnp(n, r, master.substream(s).key());
        total += schatten(Eigen::MatrixXd(a.dense() - rj), alpha);
    }
    return 2.0 * (total / samples) / (r * n);
}

double log_mu_clique(int n0, double p) { return 0.5 * n0 * (n0 - 1) * std::log(p); }

double log_mu_hub(int n, int k, double p) {
    return (0.5 * k * (k - 1) + static_cast<double>(k) * (n - k)) * std::log(p);
}

}  // namespace ldg
