#include "ldg/pattern_graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ldg {

PatternGraph::PatternGraph(int n_vertices, std::vector<std::pair<int, int>> edges)
    : n_(n_vertices), edges_(std::move(edges)) {
    if (n_ < 0) throw std::invalid_argument("pattern graph: negative vertex count");
    for (auto& [u, v] : edges_) {
        if (u == v) throw std::invalid_argument("pattern graph: self-loop");
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n_) throw std::invalid_argument("pattern graph: vertex out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("pattern graph: duplicate edge");
    adj_.assign(static_cast<std::size_t>(std::max(n_, 1)), 0u);
    if (n_ > 32) throw std::invalid_argument("pattern graph: at most 32 vertices supported");
    for (const auto& [u, v] : edges_) {
        adj_[u] |= 1u << v;
        adj_[v] |= 1u << u;
    }
    // BFS from vertex 0
    if (n_ <= 1) {
        connected_ = true;
    } else {
        std::uint32_t seen = 1u, frontier = 1u;
        while (frontier != 0) {
            std::uint32_t next = 0;
            for (int v = 0; v < n_; ++v)
                if (frontier & (1u << v)) next |= adj_[v];
            frontier = next & ~seen;
            seen |= next;
        }
        connected_ = (seen == (n_ >= 32 ? ~0u : (1u << n_) - 1u));
    }
}

bool PatternGraph::adjacent(int u, int v) const {
    return u >= 0 && u < n_ && v >= 0 && v < n_ && (adj_[u] >> v) & 1u;
}

int PatternGraph::degree(int v) const { return __builtin_popcount(adj_[v]); }

std::vector<int> PatternGraph::degrees() const {
    std::vector<int> d(n_);
    for (int v = 0; v < n_; ++v) d[v] = degree(v);
    return d;
}

PatternGraph PatternGraph::cycle(int length) {
    if (length < 3) throw std::invalid_argument("cycle: length must be >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < length; ++i) e.emplace_back(i, (i + 1) % length);
    return PatternGraph(length, std::move(e));
}

PatternGraph PatternGraph::complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return PatternGraph(n, std::move(e));
}

PatternGraph PatternGraph::complete_bipartite(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("complete_bipartite: empty side");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) e.emplace_back(i, m + j);
    return PatternGraph(m + n, std::move(e));
}

PatternGraph PatternGraph::star(int leaves) { return complete_bipartite(1, leaves); }

PatternGraph PatternGraph::path(int n_vertices) {
    if (n_vertices < 1) throw std::invalid_argument("path: need at least one vertex");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n_vertices; ++i) e.emplace_back(i, i + 1);
    return PatternGraph(n_vertices, std::move(e));
}

PatternGraph PatternGraph::single_edge() { return PatternGraph(2, {{0, 1}}); }

PatternGraph PatternGraph::empty(int n_vertices) { return PatternGraph(n_vertices, {}); }

PatternGraph PatternGraph::from_name(const std::string& name) {
    if (name.size() >= 2 && name[0] == 'C') {
        int l = std::stoi(name.substr(1));
        return cycle(l);
    }
    if (name.size() >= 2 && name[0] == 'K' && name[1] == '_') {
        // K_{m,n}
        auto lb = name.find('{'), comma = name.find(','), rb = name.find('}');
        if (lb == std::string::npos || comma == std::string::npos || rb == std::string::npos)
            throw std::invalid_argument("bad complete-bipartite name: " + name);
        int m = std::stoi(name.substr(lb + 1, comma - lb - 1));
        int n = std::stoi(name.substr(comma + 1, rb - comma - 1));
        return complete_bipartite(m, n);
    }
    if (name.size() >= 2 && name[0] == 'K') return complete(std::stoi(name.substr(1)));
    if (name.rfind("star_", 0) == 0) return star(std::stoi(name.substr(5)));
    if (name.rfind("path_", 0) == 0) return path(std::stoi(name.substr(5)));
    throw std::invalid_argument("unknown pattern name: " + name);
}

PatternGraph PatternGraph::load(std::istream& in) {
    std::string line;
    auto next_data_line = [&]() -> std::string {
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok) return line;
        }
        throw std::runtime_error("pattern graph file: unexpected end of input");
    };
    std::istringstream header(next_data_line());
    int n, m;
    if (!(header >> n >> m)) throw std::runtime_error("pattern graph file: bad header");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) {
        std::istringstream row(next_data_line());
        int u, v;
        if (!(row >> u >> v)) throw std::runtime_error("pattern graph file: bad edge line");
        edges.emplace_back(u, v);
    }
    return PatternGraph(n, std::move(edges));
}

PatternGraph PatternGraph::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pattern graph file: " + path);
    return load(in);
}

PatternGraph PatternGraph::induced(const std::vector<bool>& keep) const {
    if (static_cast<int>(keep.size()) != n_)
        throw std::invalid_argument("induced: mask size mismatch");
    std::vector<int> relabel(n_, -1);
    int k = 0;
    for (int v = 0; v < n_; ++v)
        if (keep[v]) relabel[v] = k++;
    std::vector<std::pair<int, int>> e;
    for (const auto& [u, v] : edges_)
        if (keep[u] && keep[v]) e.emplace_back(relabel[u], relabel[v]);
    return PatternGraph(k, std::move(e));
}

bool PatternGraph::isomorphic_to(const PatternGraph& other) const {
    if (n_ != other.n_ || edges_.size() != other.edges_.size()) return false;
    auto d1 = degrees(), d2 = other.degrees();
    std::sort(d1.begin(), d1.end());
    std::sort(d2.begin(), d2.end());
    if (d1 != d2) return false;
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (const auto& [u, v] : edges_) {
            if (!other.adjacent(perm[u], perm[v])) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::string PatternGraph::to_string() const {
    std::ostringstream out;
    out << n_ << " " << edges_.size();
    for (const auto& [u, v] : edges_) out << " " << u << "-" << v;
    return out.str();
}

DegreeProfile degree_profile(const PatternGraph& h) {
    if (h.n_edges() == 0) throw std::invalid_argument("degree_profile: no edges");
    DegreeProfile out;
    auto deg = h.degrees();
    out.max_degree = *std::max_element(deg.begin(), deg.end());

    // Route 1: max over edges of deg(v)+deg(w)-1.
    int star1 = 0;
    for (const auto& [u, v] : h.edges())
        star1 = std::max(star1, deg[u] + deg[v] - 1);

    // Route 2: e(H) - min_e e(H_(e)).
    int min_remaining = h.n_edges();
    for (const auto& [u, v] : h.edges()) {
        std::vector<bool> keep(h.n_vertices(), true);
        keep[u] = keep[v] = false;
        min_remaining = std::min(min_remaining, h.induced(keep).n_edges());
    }
    int star2 = h.n_edges() - min_remaining;
    if (star1 != star2) throw std::logic_error("degree_profile: Delta_star definitions disagree");
    out.delta_star = star1;

    std::vector<bool> core(h.n_vertices());
    for (int v = 0; v < h.n_vertices(); ++v) core[v] = (deg[v] == out.max_degree);
    out.max_degree_core = h.induced(core);
    return out;
}

PatternGraph remove_edge_closure(const PatternGraph& h,
                                 const std::vector<std::pair<int, int>>& edges) {
    std::vector<bool> keep(h.n_vertices(), true);
    for (auto [u, v] : edges) {
        if (u > v) std::swap(u, v);
        if (!h.adjacent(u, v)) throw std::invalid_argument("remove_edge_closure: edge not in H");
        keep[u] = keep[v] = false;
    }
    return h.induced(keep);
}

namespace {

// Partitions of [n] as restricted growth strings.
void enumerate_partitions(int n, const std::function<void(const std::vector<int>&, int)>& emit) {
    std::vector<int> label(n, 0);
    std::function<void(int, int)> rec = [&](int v, int max_used) {
        if (v == n) {
            emit(label, max_used + 1);
            return;
        }
        for (int c = 0; c <= max_used + 1 && c < n; ++c) {
            label[v] = c;
            rec(v + 1, std::max(max_used, c));
        }
    };
    if (n > 0) rec(0, -1);
}

}  // namespace

QuotientFamily quotients(const PatternGraph& h) {
    const int n = h.n_vertices();
    if (n > 8) throw std::invalid_argument("pattern too large for quotient enumeration");
    QuotientFamily fam;
    enumerate_partitions(n, [&](const std::vector<int>& label, int parts) {
        // Parts must be independent sets, otherwise the quotient has a loop.
        for (const auto& [u, v] : h.edges())
            if (label[u] == label[v]) return;
        std::vector<std::pair<int, int>> qe;
        for (const auto& [u, v] : h.edges()) qe.emplace_back(label[u], label[v]);
        std::sort(qe.begin(), qe.end(), [](auto a, auto b) {
            if (a.first > a.second) std::swap(a.first, a.second);
            if (b.first > b.second) std::swap(b.first, b.second);
            return a < b;
        });
        // PatternGraph rejects duplicates, dedupe multi-edges here.
        for (auto& [u, v] : qe)
            if (u > v) std::swap(u, v);
        std::sort(qe.begin(), qe.end());
        qe.erase(std::unique(qe.begin(), qe.end()), qe.end());
        fam.entries.push_back({label, PatternGraph(parts, std::move(qe)), parts});
    });
    // Identity partition (n parts) first, then by decreasing part count.
    std::stable_sort(fam.entries.begin(), fam.entries.end(),
                     [](const QuotientEntry& a, const QuotientEntry& b) { return a.n_parts > b.n_parts; });
    return fam;
}

namespace {

// I(G) = I(G - v) + x * I(G - N[v]) on vertex subsets encoded as bitmasks.
std::vector<std::int64_t> indep_poly_rec(const PatternGraph& g, std::uint32_t active) {
    // Find an active vertex with an active neighbor.
    int pick = -1, best_deg = -1;
    for (int v = 0; v < g.n_vertices(); ++v) {
        if (!(active & (1u << v))) continue;
        int d = __builtin_popcount(g.neighbor_mask(v) & active);
        if (d > best_deg) {
            best_deg = d;
            pick = v;
        }
    }
    int k = __builtin_popcount(active);
    if (pick < 0 || best_deg == 0) {
        // Edgeless: (1+x)^k.
        std::vector<std::int64_t> coeff(k + 1, 0);
        coeff[0] = 1;
        for (int i = 0; i < k; ++i)
            for (int j = i; j >= 0; --j) coeff[j + 1] += coeff[j];
        return coeff;
    }
    auto without_v = indep_poly_rec(g, active & ~(1u << pick));
    auto without_nbhd = indep_poly_rec(g, active & ~(g.neighbor_mask(pick) | (1u << pick)));
    std::vector<std::int64_t> coeff(k + 1, 0);
    for (std::size_t i = 0; i < without_v.size(); ++i) coeff[i] += without_v[i];
    for (std::size_t i = 0; i < without_nbhd.size(); ++i) coeff[i + 1] += without_nbhd[i];
    while (coeff.size() > 1 && coeff.back() == 0) coeff.pop_back();
    return coeff;
}

}  // namespace

std::vector<std::int64_t> independence_polynomial(const PatternGraph& g) {
    if (g.n_vertices() > 24)
        throw std::invalid_argument("independence_polynomial: pattern too large");
    if (g.n_vertices() == 0) return {1};
    std::uint32_t all = (g.n_vertices() >= 32) ? ~0u : ((1u << g.n_vertices()) - 1u);
    return indep_poly_rec(g, all);
}

namespace {

// Two-coloring; returns false if an odd cycle is found.
bool two_color(const PatternGraph& h, std::vector<int>& color) {
    color.assign(h.n_vertices(), -1);
    for (int s = 0; s < h.n_vertices(); ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < h.n_vertices(); ++w) {
                if (!h.adjacent(v, w)) continue;
                if (color[w] == -1) {
                    color[w] = 1 - color[v];
                    stack.push_back(w);
                } else if (color[w] == color[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool is_even_cycle(const PatternGraph& h) {
    if (h.n_vertices() < 4 || h.n_vertices() % 2 != 0) return false;
    if (!h.connected() || h.n_edges() != h.n_vertices()) return false;
    for (int v = 0; v < h.n_vertices(); ++v)
        if (h.degree(v) != 2) return false;
    return true;
}

bool is_even_complete_bipartite(const PatternGraph& h, const std::vector<int>& color) {
    if (!h.connected() || h.n_vertices() < 2) return false;
    int m = 0, n = 0;
    for (int v = 0; v < h.n_vertices(); ++v) (color[v] == 0 ? m : n)++;
    if (h.n_edges() != m * n) return false;  // complete across the bipartition
    return m % 2 == 0 && n % 2 == 0;
}

}  // namespace

Classification classify(const PatternGraph& h) {
    Classification c;
    std::vector<int> color;
    c.bipartite = two_color(h, color);
    auto deg = h.degrees();
    c.regular = deg.empty() ||
                std::all_of(deg.begin(), deg.end(), [&](int d) { return d == deg[0]; });
    if (!c.bipartite) {
        c.seminorming = TriState::No;
        c.sidorenko = TriState::Unknown;
        return c;
    }
    if (is_even_cycle(h) || is_even_complete_bipartite(h, color))
        c.seminorming = TriState::Yes;
    c.sidorenko = (c.seminorming == TriState::Yes) ? TriState::Yes : TriState::Unknown;
    return c;
}

std::vector<PatternGraph> connected_patterns_up_to(int max_vertices) {
    std::vector<PatternGraph> out;
    for (int n = 1; n <= max_vertices; ++n) {
        const int slots = n * (n - 1) / 2;
        std::vector<std::pair<int, int>> all;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) all.emplace_back(i, j);
        for (std::uint32_t mask = 0; mask < (1u << slots); ++mask) {
            std::vector<std::pair<int, int>> e;
            for (int b = 0; b < slots; ++b)
                if (mask & (1u << b)) e.push_back(all[b]);
            PatternGraph g(n, std::move(e));
            if (!g.connected()) continue;
            bool dup = false;
            for (const auto& seen : out)
                if (seen.n_vertices() == n && seen.isomorphic_to(g)) {
                    dup = true;
                    break;
                }
            if (!dup) out.push_back(std::move(g));
        }
    }
    return out;
}

}  // namespace ldg
