#include "ldg/homcount.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ldg {

namespace {

constexpr std::int64_t kMaxTensorEntries = std::int64_t(1) << 27;

template <class Scalar>
struct Factor {
    std::vector<int> scope;     // sorted pattern vertices
    std::vector<Scalar> data;   // little-endian flat index over scope
};

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Multiplies all factors containing `victim`, sums out the victim axis.
template <class Scalar>
Factor<Scalar> eliminate(std::vector<Factor<Scalar>>& factors, int victim, int n) {
    std::vector<Factor<Scalar>> involved;
    for (auto it = factors.begin(); it != factors.end();) {
        if (std::find(it->scope.begin(), it->scope.end(), victim) != it->scope.end()) {
            involved.push_back(std::move(*it));
            it = factors.erase(it);
        } else {
            ++it;
        }
    }
    std::vector<int> uni;
    for (const auto& f : involved)
        for (int v : f.scope)
            if (std::find(uni.begin(), uni.end(), v) == uni.end()) uni.push_back(v);
    std::sort(uni.begin(), uni.end());

    const int k = static_cast<int>(uni.size());
    if (ipow(n, k) > kMaxTensorEntries)
        throw std::runtime_error("hom: contraction tensor too large");

    std::vector<int> out_scope;
    for (int v : uni)
        if (v != victim) out_scope.push_back(v);
    Factor<Scalar> out;
    out.scope = out_scope;
    out.data.assign(static_cast<std::size_t>(ipow(n, k - 1)), Scalar(0));

    // Per-factor index strides in terms of the union coordinates.
    struct Access {
        const std::vector<Scalar>* data;
        std::vector<std::int64_t> stride;  // stride per union axis
    };
    std::vector<Access> access;
    for (const auto& f : involved) {
        Access a;
        a.data = &f.data;
        a.stride.assign(k, 0);
        std::int64_t mult = 1;
        for (int v : f.scope) {
            int pos = static_cast<int>(std::find(uni.begin(), uni.end(), v) - uni.begin());
            a.stride[pos] += mult;
            mult *= n;
        }
        access.push_back(std::move(a));
    }
    const int victim_pos = static_cast<int>(std::find(uni.begin(), uni.end(), victim) - uni.begin());

    std::vector<std::int64_t> out_stride(k, 0);
    {
        std::int64_t mult = 1;
        for (int axis = 0; axis < k; ++axis) {
            if (axis == victim_pos) continue;
            out_stride[axis] = mult;
            mult *= n;
        }
    }

    // Odometer over union coordinates; the victim axis is summed out.
    std::vector<int> coord(k, 0);
    std::vector<std::int64_t> fidx(access.size(), 0);
    const std::int64_t total = ipow(n, k);
    std::int64_t out_idx = 0;
    for (std::int64_t it = 0;;) {
        Scalar prod = Scalar(1);
        for (std::size_t f = 0; f < access.size(); ++f) prod *= (*access[f].data)[fidx[f]];
        out.data[out_idx] += prod;
        if (++it == total) break;
        int axis = 0;
        for (;;) {
            ++coord[axis];
            for (std::size_t f = 0; f < access.size(); ++f) fidx[f] += access[f].stride[axis];
            out_idx += out_stride[axis];
            if (coord[axis] < n) break;
            coord[axis] = 0;
            for (std::size_t f = 0; f < access.size(); ++f)
                fidx[f] -= access[f].stride[axis] * n;
            out_idx -= out_stride[axis] * n;
            ++axis;
        }
    }
    return out;
}

template <class Scalar, class Getter>
Scalar hom_contract(const PatternGraph& h, const Getter& entry, int n) {
    const int nv = h.n_vertices();
    Scalar result = Scalar(1);
    if (nv == 0) return result;

    std::vector<Factor<Scalar>> factors;
    for (const auto& [u, v] : h.edges()) {
        Factor<Scalar> f;
        f.scope = {u, v};
        f.data.assign(static_cast<std::size_t>(n) * n, Scalar(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) f.data[i + static_cast<std::size_t>(n) * j] = entry(i, j);
        factors.push_back(std::move(f));
    }
    std::vector<bool> active(nv, false);
    for (const auto& [u, v] : h.edges()) active[u] = active[v] = true;
    for (int v = 0; v < nv; ++v)
        if (!active[v]) result *= Scalar(n);  // isolated pattern vertex

    std::vector<bool> eliminated(nv, false);
    for (;;) {
        // Greedy: eliminate the vertex whose union scope is smallest.
        int best = -1, best_size = 1 << 30;
        for (int v = 0; v < nv; ++v) {
            if (eliminated[v] || !active[v]) continue;
            std::vector<int> uni;
            for (const auto& f : factors)
                if (std::find(f.scope.begin(), f.scope.end(), v) != f.scope.end())
                    for (int w : f.scope)
                        if (std::find(uni.begin(), uni.end(), w) == uni.end()) uni.push_back(w);
            int size = static_cast<int>(uni.size());
            if (size < best_size) {
                best_size = size;
                best = v;
            }
        }
        if (best < 0) break;
        eliminated[best] = true;
        Factor<Scalar> out = eliminate(factors, best, n);
        if (out.scope.empty()) {
            result *= out.data[0];
        } else {
            factors.push_back(std::move(out));
        }
    }
    for (const auto& f : factors)
        if (f.scope.empty()) result *= f.data[0];
    return result;
}

bool int_path_fits(int nv, int n) {
    return nv * std::log2(std::max(2, n)) <= 62.0;
}

}  // namespace

HomValue hom(const PatternGraph& h, const SymMatrix& x) {
    if (h.n_vertices() > 8) throw std::invalid_argument("hom: pattern too large");
    const int n = x.dim();
    HomValue out;
    out.method = HomMethod::Contraction;
    if (x.kind() == MatrixKind::Adjacency && int_path_fits(h.n_vertices(), n)) {
        auto entry = [&](int i, int j) -> std::int64_t {
            return i == j ? 0 : static_cast<std::int64_t>(x.at(i, j));
        };
        out.int_value = hom_contract<std::int64_t>(h, entry, n);
        out.exact_integer = true;
        out.value = static_cast<double>(out.int_value);
        return out;
    }
    auto entry = [&](int i, int j) -> double { return x.at(i, j); };
    out.value = hom_contract<double>(h, entry, n);
    return out;
}

double hom_dense(const PatternGraph& h, const Eigen::MatrixXd& x) {
    if (h.n_vertices() > 8) throw std::invalid_argument("hom: pattern too large");
    auto entry = [&](int i, int j) -> double { return x(i, j); };
    return hom_contract<double>(h, entry, static_cast<int>(x.rows()));
}

double trace_power(const Spectrum& s, double ell) {
    double sum = 0.0;
    for (int i = 0; i < s.eigenvalues.size(); ++i) {
        double lambda = s.eigenvalues[i];
        double rounded = std::round(ell);
        if (rounded == ell) {
            double term = 1.0;
            for (int k = 0; k < static_cast<int>(rounded); ++k) term *= lambda;
            sum += term;
        } else {
            sum += std::copysign(std::pow(std::abs(lambda), ell), lambda);
        }
    }
    return sum;
}

HomValue hom_cycle_spectral(int ell, const SymMatrix& x) {
    if (ell < 3) throw std::invalid_argument("hom_cycle_spectral: ell must be >= 3");
    HomValue out;
    out.method = HomMethod::Spectral;
    out.value = trace_power(spectrum(x), static_cast<double>(ell));
    return out;
}

namespace {

// Vertex order for injective enumeration: connectivity-first so partial
// products can prune on zeros.
std::vector<int> enumeration_order(const PatternGraph& h) {
    const int nv = h.n_vertices();
    std::vector<int> order;
    std::vector<bool> placed(nv, false);
    while (static_cast<int>(order.size()) < nv) {
        int pick = -1, best = -1;
        for (int v = 0; v < nv; ++v) {
            if (placed[v]) continue;
            int attached = 0;
            for (int u : order) attached += h.adjacent(u, v);
            if (attached > best) {
                best = attached;
                pick = v;
            }
        }
        order.push_back(pick);
        placed[pick] = true;
    }
    return order;
}

template <class Scalar, class Getter>
void inj_rec(const PatternGraph& h, const Getter& entry, int n,
             const std::vector<int>& order, std::size_t depth, std::uint64_t used,
             std::vector<int>& image, Scalar partial, Scalar& total) {
    if (depth == order.size()) {
        total += partial;
        return;
    }
    const int v = order[depth];
    for (int target = 0; target < n; ++target) {
        if (used & (std::uint64_t(1) << target)) continue;
        Scalar factor = Scalar(1);
        for (std::size_t d = 0; d < depth; ++d) {
            if (h.adjacent(order[d], v)) factor *= entry(image[order[d]], target);
        }
        if (factor == Scalar(0)) continue;
        image[v] = target;
        inj_rec(h, entry, n, order, depth + 1, used | (std::uint64_t(1) << target), image,
                partial * factor, total);
    }
}

template <class Scalar, class Getter>
Scalar inj_enumerate(const PatternGraph& h, const Getter& entry, int n) {
    if (h.n_vertices() > n) return Scalar(0);
    if (h.n_vertices() == 0) return Scalar(1);
    auto order = enumeration_order(h);
    std::vector<int> image(h.n_vertices(), -1);
    Scalar total = Scalar(0);
    inj_rec<Scalar>(h, entry, n, order, 0, 0, image, Scalar(1), total);
    return total;
}

}  // namespace

HomValue inj(const PatternGraph& h, const SymMatrix& x) {
    if (h.n_vertices() > 6) throw std::invalid_argument("inj: pattern too large");
    if (x.dim() > 64) throw std::invalid_argument("inj: matrix too large");
    const int n = x.dim();
    HomValue out;
    out.method = HomMethod::InjectiveSum;
    if (x.kind() == MatrixKind::Adjacency && int_path_fits(h.n_vertices(), n)) {
        auto entry = [&](int i, int j) -> std::int64_t {
            return static_cast<std::int64_t>(x.at(i, j));
        };
        out.int_value = inj_enumerate<std::int64_t>(h, entry, n);
        out.exact_integer = true;
        out.value = static_cast<double>(out.int_value);
        return out;
    }
    auto entry = [&](int i, int j) -> double { return x.at(i, j); };
    out.value = inj_enumerate<double>(h, entry, n);
    return out;
}

bool hom_quotient_identity_check(const PatternGraph& h, const SymMatrix& a, std::string* report) {
    if (h.n_vertices() > 5) throw std::invalid_argument("quotient check: pattern too large");
    if (a.dim() > 16) throw std::invalid_argument("quotient check: matrix too large");
    if (a.kind() != MatrixKind::Adjacency)
        throw std::invalid_argument("quotient check: adjacency input required");
    const std::int64_t lhs = hom(h, a).int_value;
    std::int64_t rhs = 0;
    auto fam = quotients(h);
    std::ostringstream detail;
    for (const auto& entry : fam.entries) {
        std::int64_t term = inj(entry.quotient, a).int_value;
        rhs += term;
        detail << "  quotient " << entry.quotient.to_string() << " inj=" << term << "\n";
    }
    if (lhs == rhs) return true;
    if (report) {
        std::ostringstream out;
        out << "hom=" << lhs << " != sum inj=" << rhs << " for H=" << h.to_string() << "\n"
            << detail.str();
        *report = out.str();
    }
    return false;
}

namespace {

// Partial homomorphism tensor for edge e=(a,b): eliminates every vertex but
// a and b over the edge set E(H) minus e.
Eigen::MatrixXd edge_partial(const PatternGraph& h, const Eigen::MatrixXd& w, int ea, int eb) {
    const int n = static_cast<int>(w.rows());
    const int nv = h.n_vertices();
    auto entry = [&](int i, int j) -> double { return w(i, j); };

    std::vector<Factor<double>> factors;
    for (const auto& [u, v] : h.edges()) {
        if ((u == ea && v == eb) || (u == eb && v == ea)) continue;
        Factor<double> f;
        f.scope = {u, v};
        f.data.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) f.data[i + static_cast<std::size_t>(n) * j] = entry(i, j);
        factors.push_back(std::move(f));
    }
    double scalar = 1.0;
    std::vector<bool> touched(nv, false);
    for (const auto& f : factors)
        for (int v : f.scope) touched[v] = true;
    for (int v = 0; v < nv; ++v)
        if (!touched[v] && v != ea && v != eb) scalar *= n;

    std::vector<bool> eliminated(nv, false);
    for (;;) {
        int best = -1, best_size = 1 << 30;
        for (int v = 0; v < nv; ++v) {
            if (eliminated[v] || v == ea || v == eb || !touched[v]) continue;
            bool present = false;
            std::vector<int> uni;
            for (const auto& f : factors)
                if (std::find(f.scope.begin(), f.scope.end(), v) != f.scope.end()) {
                    present = true;
                    for (int x : f.scope)
                        if (std::find(uni.begin(), uni.end(), x) == uni.end()) uni.push_back(x);
                }
            if (!present) continue;
            int size = static_cast<int>(uni.size());
            if (size < best_size) {
                best_size = size;
                best = v;
            }
        }
        if (best < 0) break;
        eliminated[best] = true;
        Factor<double> out = eliminate(factors, best, n);
        if (out.scope.empty())
            scalar *= out.data[0];
        else
            factors.push_back(std::move(out));
    }

    // Remaining factors have scopes within {ea, eb}; broadcast-multiply them.
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, scalar);
    for (const auto& f : factors) {
        if (f.scope.empty()) {
            m *= f.data[0];
        } else if (f.scope.size() == 1) {
            if (f.scope[0] == ea) {
                for (int i = 0; i < n; ++i) m.row(i) *= f.data[i];
            } else {
                for (int j = 0; j < n; ++j) m.col(j) *= f.data[j];
            }
        } else {
            const bool a_first = f.scope[0] == ea;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    m(i, j) *= a_first ? f.data[i + static_cast<std::size_t>(n) * j]
                                       : f.data[j + static_cast<std::size_t>(n) * i];
        }
    }
    return m;
}

}  // namespace

Eigen::MatrixXd hom_gradient(const PatternGraph& h, const Eigen::MatrixXd& w) {
    const int n = static_cast<int>(w.rows());
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [ea, eb] : h.edges()) {
        Eigen::MatrixXd m = edge_partial(h, w, ea, eb);
        grad += m + m.transpose();
    }
    grad.diagonal().setZero();
    return grad;
}

double dir_derivative_dense(const PatternGraph& h, const Eigen::MatrixXd& w,
                            const Eigen::MatrixXd& z) {
    Eigen::MatrixXd grad = hom_gradient(h, w);
    double d = 0.0;
    const int n = static_cast<int>(w.rows());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d += z(i, j) * grad(i, j);
    return d;
}

double dir_derivative(const PatternGraph& h, const SymMatrix& w, const Eigen::MatrixXd& z) {
    return dir_derivative_dense(h, w.dense(), z);
}

double dir_derivative_bound(const PatternGraph& h, const SymMatrix& w, const Eigen::MatrixXd& z) {
    const Eigen::MatrixXd wd = w.dense();
    double sum = 0.0;
    for (const auto& e : h.edges()) {
        PatternGraph he = remove_edge_closure(h, {e});
        sum += hom_dense(he, wd);
    }
    return w.dim() * operator_norm(z) * sum;
}

double hom_density(const PatternGraph& h, const SymMatrix& x) {
    return hom(h, x).value * std::pow(static_cast<double>(x.dim()), -h.n_vertices());
}

}  // namespace ldg
