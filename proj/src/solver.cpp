// Absorption probabilities and expected step counts of a configuration graph.
// Transient nodes are grouped into strongly connected components and solved
// one component at a time in reverse topological order, so each block system
// only involves that component's unknowns.

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "limaut/errors.hpp"
#include "limaut/semantics.hpp"

namespace limaut {

namespace {

// Iterative Tarjan over transient nodes. Components come out sinks-first.
std::vector<std::vector<int>> transient_sccs(const ConfigurationGraph& g) {
    const int n = static_cast<int>(g.node_count());
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int counter = 0;
    struct Frame {
        int v;
        std::size_t edge;
    };
    std::vector<Frame> call;
    for (int root = 0; root < n; ++root) {
        if (g.kind[root] != NodeKind::Transient || index[root] >= 0) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& f = call.back();
            const auto& out = g.out[f.v];
            if (f.edge < out.size()) {
                int w = out[f.edge++].first;
                if (g.kind[w] != NodeKind::Transient) continue;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            int v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
        }
    }
    return comps;
}

template <std::size_t R>
using Vec = std::array<Rational, R>;

// Solves (I - A) x = rhs for one strongly connected block, A given as sparse
// rows over local indices. Gaussian elimination without pivoting is safe here:
// I - A is a nonsingular M-matrix whenever the block leaks mass.
template <std::size_t R>
std::vector<Vec<R>> solve_block(std::vector<std::map<int, Rational>> rows, std::vector<Vec<R>> rhs) {
    const int m = static_cast<int>(rows.size());
    std::vector<std::set<int>> col_rows(m);
    for (int r = 0; r < m; ++r)
        for (const auto& [c, a] : rows[r]) col_rows[c].insert(r);
    for (int i = 0; i < m; ++i) {
        Rational piv = rows[i].at(i);
        if (piv == 0) throw std::logic_error("singular absorption system");
        if (piv != 1) {
            for (auto& [c, a] : rows[i]) a /= piv;
            for (auto& v : rhs[i]) v /= piv;
        }
        for (int r : std::vector<int>(col_rows[i].begin(), col_rows[i].end())) {
            if (r <= i) continue;
            Rational f = rows[r].at(i);
            for (const auto& [c, a] : rows[i]) {
                if (c == i) continue;
                auto [it, fresh] = rows[r].try_emplace(c, 0);
                it->second -= f * a;
                if (fresh) col_rows[c].insert(r);
                if (it->second == 0) {
                    rows[r].erase(it);
                    col_rows[c].erase(r);
                }
            }
            rows[r].erase(i);
            col_rows[i].erase(r);
            for (std::size_t k = 0; k < R; ++k)
                if (rhs[i][k] != 0) rhs[r][k] -= f * rhs[i][k];
        }
    }
    std::vector<Vec<R>> x(m);
    for (int i = m - 1; i >= 0; --i) {
        x[i] = rhs[i];
        for (const auto& [c, a] : rows[i])
            if (c > i)
                for (std::size_t k = 0; k < R; ++k) x[i][k] -= a * x[c][k];
    }
    return x;
}

// x_v = b_v + sum over transient w of P(v,w) x_w. Closed components (no mass
// ever leaves) get x = 0.
template <std::size_t R>
std::vector<Vec<R>> solve_transient(const ConfigurationGraph& g, const std::vector<std::vector<int>>& comps,
                                    const std::vector<Vec<R>>& b) {
    const int n = static_cast<int>(g.node_count());
    std::vector<Vec<R>> x(n);
    for (auto& v : x) v.fill(Rational(0));
    std::vector<int> local(n, -1);
    for (const auto& comp : comps) {
        const int m = static_cast<int>(comp.size());
        for (int i = 0; i < m; ++i) local[comp[i]] = i;
        std::vector<std::map<int, Rational>> rows(m);
        std::vector<Vec<R>> rhs(m);
        bool closed = true;
        for (int i = 0; i < m; ++i) {
            int v = comp[i];
            rhs[i] = b[v];
            Rational inside = 0;
            rows[i][i] = 1;
            for (const auto& [w, p] : g.out[v]) {
                if (g.kind[w] == NodeKind::Transient && local[w] >= 0 && comp[local[w]] == w) {
                    rows[i][local[w]] -= p;
                    inside += p;
                } else if (g.kind[w] == NodeKind::Transient) {
                    for (std::size_t k = 0; k < R; ++k)
                        if (x[w][k] != 0) rhs[i][k] += p * x[w][k];
                }
            }
            if (inside != 1) closed = false;
            if (rows[i][i] == 0) rows[i].erase(i);
        }
        if (!closed) {
            std::vector<Vec<R>> sol;
            if (m == 1) {
                sol.resize(1);
                Rational d = rows[0].count(0) ? rows[0][0] : Rational(0);
                for (std::size_t k = 0; k < R; ++k) sol[0][k] = rhs[0][k] / d;
            } else {
                sol = solve_block<R>(std::move(rows), std::move(rhs));
            }
            for (int i = 0; i < m; ++i) x[comp[i]] = std::move(sol[i]);
        }
        for (int i = 0; i < m; ++i) local[comp[i]] = -1;
    }
    return x;
}

struct Outcome {
    Rational acc, rej, unresolved;
};

Outcome outcomes(const ConfigurationGraph& g, const std::vector<std::vector<int>>& comps) {
    const int v0 = g.initial;
    switch (g.kind[v0]) {
        case NodeKind::Accept: return {1, 0, 0};
        case NodeKind::Reject: return {0, 1, 0};
        case NodeKind::Unresolved: return {0, 0, 1};
        default: break;
    }
    const int n = static_cast<int>(g.node_count());
    std::vector<Vec<3>> b(n);
    for (int v = 0; v < n; ++v) {
        b[v].fill(Rational(0));
        if (g.kind[v] != NodeKind::Transient) continue;
        b[v][1] = g.deficit[v];
        for (const auto& [w, p] : g.out[v]) {
            if (g.kind[w] == NodeKind::Accept) b[v][0] += p;
            else if (g.kind[w] == NodeKind::Reject) b[v][1] += p;
            else if (g.kind[w] == NodeKind::Unresolved) b[v][2] += p;
        }
    }
    auto x = solve_transient<3>(g, comps, b);
    return {x[v0][0], x[v0][1], x[v0][2]};
}

Rational steps(const ConfigurationGraph& g, const std::vector<std::vector<int>>& comps) {
    if (g.kind[g.initial] != NodeKind::Transient) return 0;
    const int n = static_cast<int>(g.node_count());
    std::vector<Vec<1>> b(n);
    for (int v = 0; v < n; ++v) b[v][0] = g.kind[v] == NodeKind::Transient ? Rational(1 - g.deficit[v]) : Rational(0);
    return solve_transient<1>(g, comps, b)[g.initial][0];
}

}  // namespace

ProbabilityReport acceptance_probability(const ConfigurationGraph& g) {
    ProbabilityReport r;
    r.nodes = g.node_count();
    r.edges = g.edge_count();
    auto comps = transient_sccs(g);
    auto o = outcomes(g, comps);
    r.p_acc = o.acc;
    r.p_rej = o.rej;
    r.p_unresolved = o.unresolved;
    r.p_nonhalt = 1 - o.acc - o.rej - o.unresolved;
    if (r.p_unresolved == 0) {
        if (r.p_nonhalt > 0) r.steps_infinite = true;
        else r.expected_steps = steps(g, comps);
    }
    return r;
}

std::optional<Rational> expected_steps(const ConfigurationGraph& g) {
    auto comps = transient_sccs(g);
    auto o = outcomes(g, comps);
    if (o.unresolved > 0) throw DomainError("UNRESOLVED_MASS", "caps were hit; expected steps undefined");
    if (o.acc + o.rej < 1) return std::nullopt;
    return steps(g, comps);
}

bool accepting_reachable(const ConfigurationGraph& g) {
    std::vector<char> seen(g.node_count(), 0);
    std::vector<int> todo{g.initial};
    seen[g.initial] = 1;
    while (!todo.empty()) {
        int v = todo.back();
        todo.pop_back();
        if (g.kind[v] == NodeKind::Accept) return true;
        for (const auto& [w, p] : g.out[v])
            if (p > 0 && !seen[w]) {
                seen[w] = 1;
                todo.push_back(w);
            }
    }
    return false;
}

}  // namespace limaut
