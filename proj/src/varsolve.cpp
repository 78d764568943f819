#include "ldg/varsolve.hpp"

#include "ldg/homcount.hpp"
#include "ldg/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ldg {

TailFunctional TailFunctional::pattern_hom(PatternGraph h) {
    TailFunctional f;
    // Cycles are routed through the trace form.
    if (h.n_vertices() >= 3 && h.connected() && h.n_edges() == h.n_vertices()) {
        bool all2 = true;
        for (int v = 0; v < h.n_vertices(); ++v) all2 = all2 && h.degree(v) == 2;
        if (all2) return cycle(h.n_vertices());
    }
    f.kind = Kind::PatternHom;
    f.pattern = std::move(h);
    return f;
}

TailFunctional TailFunctional::cycle(int ell) {
    if (ell < 3) throw std::invalid_argument("TailFunctional::cycle: ell >= 3 required");
    TailFunctional f;
    f.kind = Kind::CycleTrace;
    f.ell = ell;
    f.pattern = PatternGraph::cycle(ell);
    return f;
}

TailFunctional TailFunctional::schatten_norm(double alpha) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("schatten functional: alpha >= 1 required");
    TailFunctional f;
    f.kind = Kind::SchattenNorm;
    f.alpha = alpha;
    return f;
}

TailFunctional TailFunctional::edge_count() {
    TailFunctional f;
    f.kind = Kind::EdgeCount;
    return f;
}

double TailFunctional::eval(const Eigen::MatrixXd& x) const {
    const int n = static_cast<int>(x.rows());
    switch (kind) {
        case Kind::PatternHom:
            return hom_dense(pattern, x);
        case Kind::CycleTrace: {
            Eigen::MatrixXd power = x;
            for (int k = 2; k < ell; ++k) power = power * x;
            return (power.array() * x.array()).sum();  // Tr X^ell
        }
        case Kind::SchattenNorm:
            return schatten(x, alpha);
        case Kind::EdgeCount: {
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) s += x(i, j);
            return s;
        }
    }
    return 0.0;
}

Eigen::MatrixXd TailFunctional::gradient(const Eigen::MatrixXd& x) const {
    const int n = static_cast<int>(x.rows());
    switch (kind) {
        case Kind::PatternHom:
            return hom_gradient(pattern, x);
        case Kind::CycleTrace: {
            Eigen::MatrixXd power = x;
            for (int k = 2; k < ell; ++k) power = power * x;
            Eigen::MatrixXd g = 2.0 * ell * power;
            g.diagonal().setZero();
            return g;
        }
        case Kind::SchattenNorm: {
            auto s = spectrum(x);
            double norm = schatten(s, alpha);
            Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
            if (std::isinf(alpha)) {
                double sgn = s.eigenvalues[0] >= 0 ? 1.0 : -1.0;
                g = sgn * s.eigenvectors.col(0) * s.eigenvectors.col(0).transpose();
            } else if (norm > 0) {
                for (int j = 0; j < n; ++j) {
                    double lam = s.eigenvalues[j];
                    if (lam == 0.0) continue;
                    double w = std::copysign(std::pow(std::abs(lam) / norm, alpha - 1.0), lam);
                    g.noalias() += w * s.eigenvectors.col(j) * s.eigenvectors.col(j).transpose();
                }
            }
            g *= 2.0;  // x_ij drives both symmetric entries
            g.diagonal().setZero();
            return g;
        }
        case Kind::EdgeCount: {
            Eigen::MatrixXd g = Eigen::MatrixXd::Ones(n, n);
            g.diagonal().setZero();
            return g;
        }
    }
    return Eigen::MatrixXd::Zero(n, n);
}

std::string TailFunctional::name() const {
    switch (kind) {
        case Kind::PatternHom:
            return "hom[" + pattern.to_string() + "]";
        case Kind::CycleTrace:
            return "C" + std::to_string(ell);
        case Kind::SchattenNorm:
            return std::isinf(alpha) ? "schatten_inf" : "schatten_" + std::to_string(alpha);
        case Kind::EdgeCount:
            return "edges";
    }
    return "?";
}

int TailFunctional::hom_vertices() const {
    switch (kind) {
        case Kind::PatternHom:
            return pattern.n_vertices();
        case Kind::CycleTrace:
            return ell;
        default:
            return 0;
    }
}

int TailFunctional::hom_edges() const {
    switch (kind) {
        case Kind::PatternHom:
            return pattern.n_edges();
        case Kind::CycleTrace:
            return ell;
        default:
            return 0;
    }
}

VarProblem VarProblem::hom_upper(const TailFunctional& f, int n, double p, double t) {
    if (f.kind != TailFunctional::Kind::PatternHom && f.kind != TailFunctional::Kind::CycleTrace &&
        f.kind != TailFunctional::Kind::EdgeCount)
        throw std::invalid_argument("hom_upper: homomorphism functional required");
    VarProblem pr;
    pr.functional = f;
    pr.n = n;
    pr.p = p;
    pr.direction = TailDirection::Upper;
    if (f.kind == TailFunctional::Kind::EdgeCount) {
        pr.scale = pair_count(n) * p;
        pr.threshold = t * pr.scale;
    } else {
        pr.scale = std::pow(n, f.hom_vertices()) * std::pow(p, f.hom_edges());
        pr.threshold = t * pr.scale;
    }
    return pr;
}

VarProblem VarProblem::hom_lower(const TailFunctional& f, int n, double p, double t) {
    VarProblem pr = hom_upper(f, n, p, t);
    pr.direction = TailDirection::Lower;
    return pr;
}

VarProblem VarProblem::schatten_lower(double alpha, int n, double p, double q) {
    VarProblem pr;
    pr.functional = TailFunctional::schatten_norm(alpha);
    pr.n = n;
    pr.p = p;
    pr.direction = TailDirection::Lower;
    pr.threshold = q * (n - 1);
    pr.scale = std::max(1.0, p * (n - 1));
    return pr;
}

VarProblem VarProblem::edge_count_lower(int n, double p, double threshold) {
    VarProblem pr;
    pr.functional = TailFunctional::edge_count();
    pr.n = n;
    pr.p = p;
    pr.direction = TailDirection::Lower;
    pr.threshold = threshold;
    pr.scale = std::max(1.0, pair_count(n) * p);
    return pr;
}

namespace {

double logit(double x) { return std::log(x / (1.0 - x)); }
double sigmoid(double u) { return 1.0 / (1.0 + std::exp(-u)); }

Eigen::MatrixXd assemble(const Eigen::VectorXd& tri, int n) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::int64_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) m(i, j) = m(j, i) = tri[k];
    return m;
}

Eigen::VectorXd tri_of(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::VectorXd v(pair_count(n));
    std::int64_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k) v[k] = m(i, j);
    return v;
}

double ip_of_tri(double p, const Eigen::VectorXd& tri) {
    double s = 0.0;
    for (std::int64_t k = 0; k < tri.size(); ++k) s += ip_scalar(p, tri[k]);
    return s;
}

struct Start {
    std::string label;
    Eigen::VectorXd tri;
    bool is_candidate = false;
    bool feasible = false;
    double ip_cost = std::numeric_limits<double>::infinity();
};

struct Engine {
    const VarProblem& pr;
    const SolveOptions& opts;
    std::int64_t d;
    double logit_p;

    explicit Engine(const VarProblem& problem, const SolveOptions& options)
        : pr(problem), opts(options), d(pair_count(problem.n)), logit_p(logit(problem.p)) {}

    double h_of(const Eigen::VectorXd& tri) const { return pr.functional.eval(assemble(tri, pr.n)); }

    bool strictly_feasible(double h) const {
        return pr.direction == TailDirection::Upper ? h >= pr.threshold : h <= pr.threshold;
    }

    double rel_gap(double h) const {
        double denom = std::max(std::abs(pr.threshold), pr.scale);
        double viol = pr.direction == TailDirection::Upper ? pr.threshold - h : h - pr.threshold;
        return std::max(0.0, viol) / denom;
    }

    // Line-search toward an always-feasible anchor (all-ones for the upper
    // tail, zero for the lower). Returns false if even the anchor fails.
    bool polish(Eigen::VectorXd& tri) const {
        double h = h_of(tri);
        if (strictly_feasible(h)) return true;
        const double anchor = pr.direction == TailDirection::Upper ? 1.0 : 0.0;
        Eigen::VectorXd anchor_tri = Eigen::VectorXd::Constant(d, anchor);
        if (!strictly_feasible(h_of(anchor_tri))) return false;
        double lo = 0.0, hi = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double mid = 0.5 * (lo + hi);
            Eigen::VectorXd probe = (1.0 - mid) * tri + mid * anchor_tri;
            if (strictly_feasible(h_of(probe)))
                hi = mid;
            else
                lo = mid;
        }
        tri = (1.0 - hi) * tri + hi * anchor_tri;
        return strictly_feasible(h_of(tri));
    }

    // Penalty mirror descent in the bit-entropy geometry from one start.
    // Tracks the cheapest strictly feasible iterate seen.
    void descend(Eigen::VectorXd tri, double& best_ip, Eigen::VectorXd& best_tri,
                 bool& found) const {
        const double lo = opts.clip_eps, hi = 1.0 - opts.clip_eps;
        for (std::int64_t k = 0; k < d; ++k) tri[k] = std::clamp(tri[k], lo, hi);

        const int iters_per_round = std::max(1, opts.max_iters / std::max(1, opts.penalty_rounds));
        double rho = 1.0;
        double eta = 0.5;

        Eigen::MatrixXd x = assemble(tri, pr.n);
        double h = pr.functional.eval(x);
        double ip = ip_of_tri(pr.p, tri);
        const double denom = std::max(std::abs(pr.threshold), pr.scale);

        auto consider = [&](const Eigen::VectorXd& t, double ipval, double hval) {
            if (strictly_feasible(hval) && ipval < best_ip) {
                best_ip = ipval;
                best_tri = t;
                found = true;
            }
        };
        consider(tri, ip, h);

        for (int round = 0; round < opts.penalty_rounds; ++round) {
            int stall = 0;
            for (int iter = 0; iter < iters_per_round; ++iter) {
                double viol = pr.direction == TailDirection::Upper ? (pr.threshold - h) / denom
                                                                   : (h - pr.threshold) / denom;
                viol = std::max(0.0, viol);
                double f_cur = ip + rho * viol * viol;

                Eigen::VectorXd grad(d);
                {
                    // d Ip/dx = logit(x) - logit(p)
                    for (std::int64_t k = 0; k < d; ++k) grad[k] = logit(tri[k]) - logit_p;
                    if (viol > 0.0) {
                        Eigen::MatrixXd gh = pr.functional.gradient(x);
                        Eigen::VectorXd ghv = tri_of(gh);
                        double sign = pr.direction == TailDirection::Upper ? -1.0 : 1.0;
                        grad += (2.0 * rho * viol * sign / denom) * ghv;
                    }
                }

                bool accepted = false;
                Eigen::VectorXd trial(d);
                for (int bt = 0; bt < 40; ++bt) {
                    for (std::int64_t k = 0; k < d; ++k) {
                        double u = logit(tri[k]) - eta * grad[k];
                        trial[k] = std::clamp(sigmoid(u), lo, hi);
                    }
                    Eigen::MatrixXd xt = assemble(trial, pr.n);
                    double ht = pr.functional.eval(xt);
                    double ipt = ip_of_tri(pr.p, trial);
                    double violt = pr.direction == TailDirection::Upper
                                       ? (pr.threshold - ht) / denom
                                       : (ht - pr.threshold) / denom;
                    violt = std::max(0.0, violt);
                    double f_trial = ipt + rho * violt * violt;
                    if (f_trial <= f_cur + 1e-14 * (1.0 + std::abs(f_cur))) {
                        double step = (trial - tri).norm();
                        tri.swap(trial);
                        x.swap(xt);
                        h = ht;
                        ip = ipt;
                        consider(tri, ip, h);
                        accepted = true;
                        stall = (f_cur - (ipt + rho * violt * violt) <
                                 1e-12 * (1.0 + std::abs(f_cur)))
                                    ? stall + 1
                                    : 0;
                        eta = std::min(eta * 1.3, 1e3);
                        // Gradient-mapping stop.
                        if (step / std::max(eta, 1e-12) <= 1e-7 * static_cast<double>(d)) {
                            stall = 1000;
                        }
                        break;
                    }
                    eta *= 0.5;
                    if (eta < 1e-14) break;
                }
                if (!accepted || stall > 40) break;
            }
            rho *= opts.penalty_factor;
        }

        // Feasibility polish plus boundary snap, then record.
        if (polish(tri)) {
            Eigen::VectorXd snapped = tri;
            for (std::int64_t k = 0; k < d; ++k) {
                if (snapped[k] <= opts.snap_tol) snapped[k] = 0.0;
                if (snapped[k] >= 1.0 - opts.snap_tol) snapped[k] = 1.0;
            }
            double hs = h_of(snapped);
            if (strictly_feasible(hs)) {
                consider(snapped, ip_of_tri(pr.p, snapped), hs);
            }
            consider(tri, ip_of_tri(pr.p, tri), h_of(tri));
        }
    }

    double kkt_residual(const Eigen::VectorXd& tri) const {
        Eigen::MatrixXd x = assemble(tri, pr.n);
        Eigen::VectorXd gip(d);
        for (std::int64_t k = 0; k < d; ++k) gip[k] = logit(tri[k]) - logit_p;
        Eigen::VectorXd gh = tri_of(pr.functional.gradient(x));
        // Interior coordinates only; boundary coordinates carry box multipliers.
        std::vector<std::int64_t> interior;
        for (std::int64_t k = 0; k < d; ++k)
            if (tri[k] > 1e-7 && tri[k] < 1.0 - 1e-7) interior.push_back(k);
        if (interior.empty()) return 0.0;
        double num = 0.0, den = 0.0, gg = 0.0;
        for (auto k : interior) {
            num += gip[k] * gh[k];
            gg += gh[k] * gh[k];
        }
        double sign = pr.direction == TailDirection::Upper ? 1.0 : -1.0;
        double lambda = gg > 0 ? std::max(0.0, sign * num / gg) : 0.0;
        double res = 0.0;
        for (auto k : interior) {
            double r = gip[k] - sign * lambda * gh[k];
            res += r * r;
            den += gip[k] * gip[k];
        }
        return std::sqrt(res) / std::max(1.0, std::sqrt(den));
    }
};

std::vector<Start> build_starts(const VarProblem& pr, const SolveOptions& opts) {
    std::vector<Start> starts;
    Engine eng(pr, opts);
    const std::int64_t d = pair_count(pr.n);
    const bool hom_like = pr.functional.kind == TailFunctional::Kind::PatternHom ||
                          pr.functional.kind == TailFunctional::Kind::CycleTrace;

    auto add = [&](std::string label, Eigen::VectorXd tri, bool candidate) {
        Start s;
        s.label = std::move(label);
        s.tri = std::move(tri);
        s.is_candidate = candidate;
        double h = eng.h_of(s.tri);
        s.feasible = eng.strictly_feasible(h);
        if (s.feasible) s.ip_cost = ip_of_tri(pr.p, s.tri);
        starts.push_back(std::move(s));
    };

    auto constant_tri = [&](double v) { return Eigen::VectorXd::Constant(d, v).eval(); };

    if (pr.direction == TailDirection::Upper) {
        if (opts.use_candidate_starts) {
            // Uniform: smallest feasible constant level.
            double lo = pr.p, hi = 1.0;
            if (eng.strictly_feasible(eng.h_of(constant_tri(1.0)))) {
                for (int it = 0; it < 80; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (eng.strictly_feasible(eng.h_of(constant_tri(mid))))
                        hi = mid;
                    else
                        lo = mid;
                }
                add("uniform", constant_tri(hi), true);
            }
            if (hom_like) {
                const int nv = pr.functional.hom_vertices();
                const double t = pr.threshold / pr.scale;
                // Clique block, grown until feasible.
                int block = std::max(
                    2, static_cast<int>(std::floor(std::pow(2.0 * t, 1.0 / nv) * pr.n * pr.p)));
                for (; block <= pr.n; block = std::min(pr.n, std::max(block + 1, block * 5 / 4))) {
                    Eigen::VectorXd tri = constant_tri(pr.p);
                    std::int64_t k = 0;
                    for (int i = 0; i < pr.n; ++i)
                        for (int j = i + 1; j < pr.n; ++j, ++k)
                            if (j < block) tri[k] = 1.0;
                    if (eng.strictly_feasible(eng.h_of(tri))) {
                        add("clique", tri, true);
                        break;
                    }
                    if (block == pr.n) break;
                }
                // Hub rows, grown until feasible.
                int delta = degree_profile(pr.functional.kind == TailFunctional::Kind::CycleTrace
                                               ? PatternGraph::cycle(pr.functional.ell)
                                               : pr.functional.pattern)
                                .max_degree;
                double b = 1.0;
                if (t > 1.0) {
                    try {
                        b = theta(pr.functional.kind == TailFunctional::Kind::CycleTrace
                                      ? PatternGraph::cycle(pr.functional.ell)
                                      : pr.functional.pattern,
                                  t - 1.0);
                    } catch (const std::exception&) {
                        b = 1.0;
                    }
                }
                int hub = std::max(1, static_cast<int>(std::floor(
                                          b * pr.n * std::pow(pr.p, delta))));
                for (; hub <= pr.n; hub = std::min(pr.n, std::max(hub + 1, hub * 5 / 4))) {
                    Eigen::VectorXd tri = constant_tri(pr.p);
                    std::int64_t k = 0;
                    for (int i = 0; i < pr.n; ++i)
                        for (int j = i + 1; j < pr.n; ++j, ++k)
                            if (i < hub) tri[k] = 1.0;
                    if (eng.strictly_feasible(eng.h_of(tri))) {
                        add("hub", tri, true);
                        break;
                    }
                    if (hub == pr.n) break;
                }
            }
        }
    } else {
        if (opts.use_candidate_starts) {
            // Uniform: largest feasible constant level at or below p.
            if (eng.strictly_feasible(eng.h_of(constant_tri(pr.p)))) {
                add("pJ", constant_tri(pr.p), true);
            } else {
                double lo = 0.0, hi = pr.p;
                for (int it = 0; it < 80; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (eng.strictly_feasible(eng.h_of(constant_tri(mid))))
                        lo = mid;
                    else
                        hi = mid;
                }
                add("uniform", constant_tri(lo), true);
            }
            add("zero", constant_tri(0.0), true);
        }
    }

    KeyedRng rng(opts.seed);
    for (int r = 0; r < opts.random_starts; ++r) {
        KeyedRng sub = rng.substream(1000 + r);
        Eigen::VectorXd tri(d);
        for (std::int64_t k = 0; k < d; ++k) {
            double wobble = 0.4 * (sub.uniform(k) - 0.5);
            tri[k] = std::clamp(pr.p * (1.0 + wobble), 1e-6, 1.0 - 1e-6);
        }
        add("pJ+noise" + std::to_string(r), tri, false);
    }
    return starts;
}

VarSolution run_solver(const VarProblem& pr, const SolveOptions& opts) {
    if (pr.n < 2) throw std::invalid_argument("solver: N >= 2 required");
    if (pr.n > 400) throw std::invalid_argument("solver: N above dense-solve guard (400)");
    Engine eng(pr, opts);
    auto starts = build_starts(pr, opts);

    double best_ip = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_tri;
    bool found = false;
    std::string winner = "none";
    double best_candidate = std::numeric_limits<double>::quiet_NaN();

    for (const auto& s : starts) {
        if (s.is_candidate && s.feasible) {
            if (std::isnan(best_candidate) || s.ip_cost < best_candidate)
                best_candidate = s.ip_cost;
            if (s.ip_cost < best_ip) {
                best_ip = s.ip_cost;
                best_tri = s.tri;
                found = true;
                winner = s.label;
            }
        }
    }
    for (const auto& s : starts) {
        double before = best_ip;
        eng.descend(s.tri, best_ip, best_tri, found);
        if (found && best_ip < before) winner = s.label + "+descent";
    }
    if (!found) throw std::runtime_error("solver: infeasible within budget");

    VarSolution sol;
    SymMatrix xm(pr.n, MatrixKind::Continuous);
    {
        std::int64_t k = 0;
        for (int i = 0; i < pr.n; ++i)
            for (int j = i + 1; j < pr.n; ++j, ++k) xm.set(i, j, best_tri[k]);
    }
    sol.x = std::move(xm);
    sol.objective = ip_of_tri(pr.p, best_tri);
    sol.feasibility_gap = eng.rel_gap(eng.h_of(best_tri));
    sol.kkt_residual = eng.kkt_residual(best_tri);
    sol.starts_used = static_cast<int>(starts.size());
    sol.best_candidate_cost = best_candidate;
    sol.winning_start = winner;
    return sol;
}

}  // namespace

VarSolution solve_phi(const VarProblem& problem, const SolveOptions& opts) {
    if (problem.direction != TailDirection::Upper)
        throw std::invalid_argument("solve_phi: upper direction required");
    return run_solver(problem, opts);
}

VarSolution solve_psi(const VarProblem& problem, const SolveOptions& opts) {
    if (problem.direction != TailDirection::Lower)
        throw std::invalid_argument("solve_psi: lower direction required");
    VarSolution sol = run_solver(problem, opts);
    if (problem.functional.kind == TailFunctional::Kind::SchattenNorm) {
        double q = problem.threshold / (problem.n - 1);
        if (q > 0.0 && q <= problem.p) {
            sol.certified_bound =
                certified_convex_psi_schatten(problem.functional.alpha, problem.n, problem.p, q);
            if (sol.objective < sol.certified_bound - 1e-8)
                throw std::logic_error("solve_psi: solver undercut the certified convex bound");
        }
    }
    return sol;
}

double certified_convex_psi_schatten(double alpha, int n, double p, double q) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("certified bound: alpha >= 1 required");
    if (!(q > 0.0 && q <= p)) throw std::invalid_argument("certified bound: need 0 < q <= p");
    return pair_count(n) * ip_scalar(p, q);
}

double certified_convex_psi_pattern(const PatternGraph& h, int n, double p, double q) {
    if (classify(h).seminorming != TriState::Yes)
        throw std::invalid_argument("no convexity certificate");
    if (!(q > 0.0 && q <= p)) throw std::invalid_argument("certified bound: need 0 < q <= p");
    return pair_count(n) * ip_scalar(p, q);
}

double ip_min_halfspace(int n, double p, const HalfSpace& hs) {
    const std::int64_t d = pair_count(n);
    if (static_cast<std::int64_t>(hs.coeffs.size()) != d)
        throw std::invalid_argument("ip_min_halfspace: coefficient size mismatch");
    auto level = [&](double lambda) {
        // Entrywise minimizer of Ip(x) + lambda <a, x>.
        double s = 0.0;
        for (std::int64_t k = 0; k < d; ++k) {
            double x = 1.0 / (1.0 + std::exp(-(std::log(p / (1 - p)) - lambda * hs.coeffs[k])));
            s += hs.coeffs[k] * x;
        }
        return s;
    };
    if (level(0.0) <= hs.bound) return 0.0;
    double floor_level = 0.0;
    for (double a : hs.coeffs) floor_level += std::min(a, 0.0);
    if (hs.bound < floor_level)
        throw std::invalid_argument("ip_min_halfspace: empty intersection with the cube");
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (level(hi) > hs.bound && guard++ < 200) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (level(mid) > hs.bound)
            lo = mid;
        else
            hi = mid;
    }
    double lambda = 0.5 * (lo + hi);
    double s = 0.0;
    for (std::int64_t k = 0; k < d; ++k) {
        double x = 1.0 / (1.0 + std::exp(-(std::log(p / (1 - p)) - lambda * hs.coeffs[k])));
        s += ip_scalar(p, std::clamp(x, 0.0, 1.0));
    }
    return s;
}

double ip_min_schatten_ball(int n, double p, double alpha, double radius) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("ip_min_schatten_ball: alpha >= 1");
    if (radius < 0.0) throw std::invalid_argument("ip_min_schatten_ball: negative radius");
    // Permutation symmetry + convexity put the optimum on {c J}.
    double jnorm = std::isinf(alpha)
                       ? (n - 1.0)
                       : std::pow(std::pow(n - 1.0, alpha) + (n - 1.0), 1.0 / alpha);
    double c = radius / jnorm;
    if (c >= p) return 0.0;
    return pair_count(n) * ip_scalar(p, c);
}

void dump_solution(const VarSolution& sol, const SolveOptions& opts, std::ostream& matrix_csv,
                   std::ostream& sidecar_json) {
    sol.x.save_csv(matrix_csv);
    nlohmann::json j;
    j["objective"] = sol.objective;
    j["feasibility_gap"] = sol.feasibility_gap;
    j["kkt_residual"] = sol.kkt_residual;
    j["seed"] = opts.seed;
    j["starts"] = sol.starts_used;
    j["best_candidate_cost"] = sol.best_candidate_cost;
    j["winning_start"] = sol.winning_start;
    sidecar_json << j.dump(2) << "\n";
}

}  // namespace ldg
