#include "ldg/netcover.hpp"

#include "ldg/homcount.hpp"
#include "ldg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldg {

void SpectralPoint::validate(double tol) const {
    const int r = static_cast<int>(lambdas.size());
    if (frame.cols() != r) throw std::invalid_argument("SpectralPoint: size mismatch");
    for (int j = 0; j + 1 < r; ++j)
        if (std::abs(lambdas[j]) + 1e-12 < std::abs(lambdas[j + 1]))
            throw std::invalid_argument("SpectralPoint: not modulus-ordered");
    Eigen::MatrixXd gram = frame.transpose() * frame;
    double err = (gram - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff();
    if (err > tol) throw std::invalid_argument("SpectralPoint: frame not orthonormal");
}

Eigen::MatrixXd mat_assemble(const SpectralPoint& point) {
    point.validate(1e-8);
    const int n = static_cast<int>(point.frame.rows());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < point.lambdas.size(); ++j)
        out.noalias() +=
            point.lambdas[j] * point.frame.col(j) * point.frame.col(j).transpose();
    return out;
}

namespace {

Eigen::MatrixXd random_orthonormal_frame(int n, int r, const KeyedRng& rng) {
    Eigen::MatrixXd g(n, r);
    std::uint64_t c = 0;
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = rng.normal(c++);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, r);
    return q;
}

// Modulus-ordered lambda vector with ||lambda||_2 <= cap.
Eigen::VectorXd random_ordered_lambdas(int r, double cap, const KeyedRng& rng) {
    Eigen::VectorXd lam(r);
    std::uint64_t c = 1000;
    for (int j = 0; j < r; ++j) lam[j] = (2.0 * rng.uniform(c + j) - 1.0);
    std::sort(lam.data(), lam.data() + r,
              [](double a, double b) { return std::abs(a) > std::abs(b); });
    double norm = lam.norm();
    if (norm > 0) lam *= 0.9 * cap / norm * rng.uniform(c + r + 1);
    return lam;
}

}  // namespace

double rank_one_projector_gap(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    Eigen::MatrixXd diff = u * u.transpose() - v * v.transpose();
    return diff.squaredNorm();
}

PerturbationReport net_perturbation_bound(int n, int r, double delta_lambda, double delta_frame,
                                          std::int64_t trials, std::uint64_t seed) {
    PerturbationReport rep;
    rep.trials = trials;
    rep.min_slack = std::numeric_limits<double>::infinity();
    KeyedRng master(seed);
    for (std::int64_t t = 0; t < trials; ++t) {
        KeyedRng sub = master.substream(t);
        SpectralPoint x;
        x.lambdas = random_ordered_lambdas(r, n, sub.substream(1));
        x.frame = random_orthonormal_frame(n, r, sub.substream(2));
        Eigen::MatrixXd xm = mat_assemble(x);

        // Perturb the spectrum and the frame, re-orthonormalize the frame.
        SpectralPoint y;
        y.lambdas = x.lambdas;
        {
            KeyedRng noise = sub.substream(3);
            Eigen::VectorXd d(r);
            std::uint64_t c = 0;
            for (int j = 0; j < r; ++j) d[j] = 2.0 * noise.uniform(c++) - 1.0;
            if (d.norm() > 0) d *= delta_lambda / d.norm();
            y.lambdas += d;
            // Keep modulus ordering (tiny perturbations may swap near-ties).
            std::sort(y.lambdas.data(), y.lambdas.data() + r,
                      [](double a, double b) { return std::abs(a) > std::abs(b); });
        }
        {
            KeyedRng noise = sub.substream(4);
            Eigen::MatrixXd d(n, r);
            std::uint64_t c = 0;
            for (int j = 0; j < r; ++j)
                for (int i = 0; i < n; ++i) d(i, j) = noise.normal(c++);
            if (d.norm() > 0) d *= delta_frame / d.norm();
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(x.frame + d);
            Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, r);
            // Align column signs with the originals.
            for (int j = 0; j < r; ++j)
                if (q.col(j).dot(x.frame.col(j)) < 0) q.col(j) = -q.col(j);
            y.frame = q;
        }
        Eigen::MatrixXd ym = mat_assemble(y);

        double lhs = (xm - ym).norm();
        double frame_gap = (x.frame - y.frame).norm();
        double bound = std::sqrt(static_cast<double>(r)) * (x.lambdas - y.lambdas).norm() +
                       y.lambdas.norm() * std::sqrt(2.0) * frame_gap;
        rep.max_lhs = std::max(rep.max_lhs, lhs);
        rep.min_slack = std::min(rep.min_slack, bound - lhs);
        if (lhs > bound + 1e-12 * std::max(1.0, bound)) rep.holds = false;
    }
    return rep;
}

Eigen::MatrixXd project_to_kernel(const Eigen::MatrixXd& y, const Eigen::MatrixXd& m,
                                  double rank_tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(y);
    const int n = static_cast<int>(y.rows());
    Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(n, n);
    double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    for (int j = 0; j < n; ++j)
        if (std::abs(es.eigenvalues()[j]) <= rank_tol * std::max(1.0, scale))
            pi.noalias() += es.eigenvectors().col(j) * es.eigenvectors().col(j).transpose();
    return pi * m * pi;
}

ResidualIdentityReport orthogonal_residual_trace_identity(const Eigen::MatrixXd& y,
                                                          const Eigen::MatrixXd& z,
                                                          double alpha, double tol) {
    // Enforce the subspace condition: ||Y Z|| must vanish.
    double yz = (y * z).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, y.cwiseAbs().maxCoeff() * z.cwiseAbs().maxCoeff());
    if (yz > 1e-8 * scale)
        throw std::invalid_argument("residual identity: Im(Z) not inside ker(Y)");

    ResidualIdentityReport rep;
    auto sy = spectrum(y);
    auto sz = spectrum(z);
    auto syz = spectrum(Eigen::MatrixXd(y + z));
    for (int ell = 3; ell <= 8; ++ell) {
        double lhs = trace_power(syz, ell);
        double rhs = trace_power(sy, ell) + trace_power(sz, ell);
        double err = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
        rep.max_trace_rel_err = std::max(rep.max_trace_rel_err, err);
    }
    {
        double lhs = std::pow(schatten(syz, alpha), alpha);
        double rhs = std::pow(schatten(sy, alpha), alpha) + std::pow(schatten(sz, alpha), alpha);
        rep.schatten_rel_err = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
    }
    rep.holds = rep.max_trace_rel_err <= tol && rep.schatten_rel_err <= tol;
    return rep;
}

CycleFluctuationReport cycle_fluctuation_check(int n, int r, int ell, double eps, double p,
                                               double noise_hs, std::int64_t trials,
                                               std::uint64_t seed) {
    CycleFluctuationReport rep;
    rep.trials = trials;
    KeyedRng master(seed);
    const double z_budget = eps * n * p;  // ||Z||_{S_ell} cap
    for (std::int64_t t = 0; t < trials; ++t) {
        KeyedRng sub = master.substream(t);
        SpectralPoint yp;
        yp.lambdas = random_ordered_lambdas(r, n, sub.substream(1));
        yp.frame = random_orthonormal_frame(n, r, sub.substream(2));
        Eigen::MatrixXd y = mat_assemble(yp);

        // Z inside ker(Y), scaled to the S_ell budget.
        Eigen::MatrixXd m(n, n);
        {
            KeyedRng noise = sub.substream(3);
            std::uint64_t c = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) m(i, j) = m(j, i) = noise.normal(c++);
        }
        Eigen::MatrixXd z = project_to_kernel(y, m);
        double znorm = schatten(z, static_cast<double>(ell));
        if (znorm > 0) z *= (z_budget / znorm) * sub.substream(4).uniform(0);

        Eigen::MatrixXd noise_mat = Eigen::MatrixXd::Zero(n, n);
        if (noise_hs > 0) {
            KeyedRng noise = sub.substream(5);
            std::uint64_t c = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) noise_mat(i, j) = noise_mat(j, i) = noise.normal(c++);
            noise_mat *= noise_hs / noise_mat.norm();
        }

        Eigen::MatrixXd x = y + z + noise_mat;
        double lhs = std::abs(trace_power(spectrum(x), ell) - trace_power(spectrum(y), ell));
        double budget = std::pow(eps * n * p, ell) +
                        ell * std::pow(2.0, ell) * noise_hs * std::pow(2.0 * n, ell - 1);
        double ratio = lhs / std::max(budget, 1e-300);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if (ratio > 1.0 + 1e-6) rep.holds = false;
    }
    return rep;
}

HomFluctuationReport hom_fluctuation_check(const PatternGraph& h, int n, double p, double eps0,
                                           double k_cap, std::int64_t trials, std::uint64_t seed) {
    if (eps0 > 0.5) throw std::invalid_argument("hom_fluctuation_check: eps0 must be <= 1/2");
    HomFluctuationReport rep;
    rep.trials = trials;
    KeyedRng master(seed);
    const auto prof = degree_profile(h);
    const double radius = 0.5 * eps0 * n * std::pow(p, prof.delta_star);
    const int nv = h.n_vertices(), ne = h.n_edges();

    // sum_e N^{v(H_(e))} for the trivial-cap route.
    double cap_sum = 0.0;
    for (const auto& e : h.edges()) {
        PatternGraph he = remove_edge_closure(h, {e});
        cap_sum += std::pow(static_cast<double>(n), he.n_vertices());
    }

    for (std::int64_t t = 0; t < trials; ++t) {
        KeyedRng sub = master.substream(t);
        // Ball center in X_N.
        Eigen::MatrixXd center = Eigen::MatrixXd::Zero(n, n);
        {
            std::uint64_t c = 0;
            KeyedRng crng = sub.substream(1);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    double v = std::clamp(p * (0.5 + crng.uniform(c++)), 0.0, 1.0);
                    center(i, j) = center(j, i) = v;
                }
        }
        auto perturb = [&](const KeyedRng& rng) {
            Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
            std::uint64_t c = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = rng.normal(c++);
            double opn = operator_norm(d);
            if (opn > 0) d *= (radius / opn) * rng.uniform(std::uint64_t(1) << 61);
            Eigen::MatrixXd out = center + d;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    out(i, j) = i == j ? 0.0 : std::clamp(out(i, j), 0.0, 1.0);
            return out;
        };
        Eigen::MatrixXd x = perturb(sub.substream(2));
        Eigen::MatrixXd y = perturb(sub.substream(3));

        double dhom = std::abs(hom_dense(h, x) - hom_dense(h, y));
        double opgap = operator_norm(x - y);
        double lemma_cap = n * opgap * cap_sum;
        double bound_ratio = dhom / std::max(lemma_cap, 1e-300);
        rep.max_bound_ratio = std::max(rep.max_bound_ratio, bound_ratio);
        if (dhom > lemma_cap * (1.0 + 1e-9) + 1e-12) rep.holds = false;

        double prop_scale = eps0 * k_cap * std::pow(static_cast<double>(n), nv) * std::pow(p, ne);
        rep.max_prop_ratio = std::max(rep.max_prop_ratio, dhom / std::max(prop_scale, 1e-300));
    }
    return rep;
}

}  // namespace ldg
