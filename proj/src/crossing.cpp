// Crossing matrices of frozen regions and their composition. Regions are
// glued by a small "bounce graph": a node is (side, entry) meaning the head is
// about to enter sub-region u or v with the given entry pair; each sub-matrix
// entry becomes an edge to the other side or to an exit of the whole region.

#include "limaut/errors.hpp"
#include "limaut/transforms.hpp"

namespace limaut {

namespace {

using Count = std::uint64_t;
constexpr Count kOmega = CrossingMatrix::kOmega;

Count sat_add(Count a, Count b) {
    if (a == kOmega || b == kOmega || a > kOmega - 1 - b) return kOmega;
    return a + b;
}

Count sat_mul(Count a, Count b) {
    if (a == 0 || b == 0) return 0;
    if (a == kOmega || b == kOmega || a > (kOmega - 1) / b) return kOmega;
    return a * b;
}

class BounceGraph {
public:
    BounceGraph(const CrossingMatrix* tu, const CrossingMatrix* tv, int states, const std::vector<char>& halting)
        : dim_(2 * states), out_(2 * dim_), loops_(2 * dim_, 0) {
        for (int side = 0; side < 2; ++side) {
            const CrossingMatrix* t = side == 0 ? tu : tv;
            for (int j = 0; j < dim_; ++j) {
                int node = side * dim_ + j;
                if (!t) {
                    out_[node].push_back({terminal(j), 1});
                    continue;
                }
                loops_[node] = t->loops[j];
                for (int k = 0; k < dim_; ++k) {
                    Count c = t->at(j, k);
                    if (c == 0) continue;
                    int s = CrossingMatrix::state_of(k), e = CrossingMatrix::dir_of(k);
                    int target;
                    if (halting[s]) target = terminal(CrossingMatrix::index(s, +1));
                    else if (side == 0) target = e < 0 ? terminal(k) : dim_ + k;
                    else target = e > 0 ? terminal(k) : k;
                    out_[node].push_back({target, c});
                }
            }
        }
        find_cycles();
    }

    int node(int side, int entry) const { return side * dim_ + entry; }

    // Path counts from `start` to every exit, plus whether some path stays forever.
    RegionExits run(int start) {
        RegionExits r;
        const auto& counts = count(start);
        for (int j = 0; j < dim_; ++j)
            if (counts[j]) r.exits[{CrossingMatrix::state_of(j), CrossingMatrix::dir_of(j)}] = counts[j];
        std::vector<char> seen(2 * dim_, 0);
        std::vector<int> todo{start};
        seen[start] = 1;
        while (!todo.empty()) {
            int v = todo.back();
            todo.pop_back();
            if (loops_[v] || cyclic_[v]) r.loops = true;
            for (const auto& [w, c] : out_[v])
                if (w < 2 * dim_ && !seen[w]) {
                    seen[w] = 1;
                    todo.push_back(w);
                }
        }
        return r;
    }

private:
    int terminal(int j) const { return 2 * dim_ + j; }

    void find_cycles() {
        const int n = 2 * dim_;
        cyclic_.assign(n, 0);
        for (int v = 0; v < n; ++v) {
            std::vector<char> seen(n, 0);
            std::vector<int> todo;
            for (const auto& [w, c] : out_[v])
                if (w < n && !seen[w]) seen[w] = 1, todo.push_back(w);
            while (!todo.empty() && !seen[v]) {
                int u = todo.back();
                todo.pop_back();
                for (const auto& [w, c] : out_[u])
                    if (w < n && !seen[w]) seen[w] = 1, todo.push_back(w);
            }
            cyclic_[v] = seen[v];
        }
    }

    // Memoised over nodes. A cyclic node reaches its exits along infinitely
    // many paths; acyclic nodes only have acyclic successors below them, so
    // the recursion terminates.
    const std::vector<Count>& count(int v) {
        if (memo_.empty()) memo_.resize(2 * dim_);
        if (!memo_[v].empty()) return memo_[v];
        std::vector<Count> c(dim_, 0);
        if (cyclic_[v]) {
            std::vector<char> seen(2 * dim_, 0);
            std::vector<int> todo{v};
            seen[v] = 1;
            while (!todo.empty()) {
                int u = todo.back();
                todo.pop_back();
                for (const auto& [w, k] : out_[u]) {
                    if (w >= 2 * dim_) c[w - 2 * dim_] = kOmega;
                    else if (!seen[w]) seen[w] = 1, todo.push_back(w);
                }
            }
        } else {
            for (const auto& [w, k] : out_[v]) {
                if (w >= 2 * dim_) {
                    c[w - 2 * dim_] = sat_add(c[w - 2 * dim_], k);
                    continue;
                }
                const auto& sub = count(w);
                for (int j = 0; j < dim_; ++j) c[j] = sat_add(c[j], sat_mul(k, sub[j]));
            }
        }
        memo_[v] = std::move(c);
        return memo_[v];
    }

    int dim_;
    std::vector<std::vector<std::pair<int, Count>>> out_;
    std::vector<char> loops_, cyclic_;
    std::vector<std::vector<Count>> memo_;
};

}  // namespace

std::set<std::pair<int, int>> RegionExits::pairs() const {
    std::set<std::pair<int, int>> s;
    for (const auto& [k, c] : exits) s.insert(k);
    return s;
}

LimitedAutomaton annotate_directions(const LimitedAutomaton& m) {
    LimitedAutomaton out = m;
    out.states = NameTable{};
    out.accepting.clear();
    out.rejecting.clear();
    out.transitions.clear();
    auto id = [](int q, int d) { return 2 * q + (d > 0 ? 1 : 0); };
    for (int q = 0; q < m.num_states(); ++q)
        for (int d : {-1, +1})
            out.add_state("(" + m.states.name(q) + "," + (d > 0 ? "+1" : "-1") + ")", m.accepting[q], m.rejecting[q]);
    out.initial = id(m.initial, +1);
    for (const auto& t : m.transitions)
        for (int d : {-1, +1}) out.add(id(t.from, d), t.read, id(t.to, t.dir), t.write, t.dir, t.prob);
    return out;
}

CrossingMatrix crossing_matrix(const LimitedAutomaton& m, int f) {
    if (f < 0 || f >= m.num_symbols() || m.level[f] != m.k || f == m.left_end || f == m.right_end)
        throw DomainError("NOT_FROZEN", "symbol is not a frozen work symbol");
    CrossingMatrix t;
    t.states = m.num_states();
    t.halting.resize(t.states);
    for (int q = 0; q < t.states; ++q) t.halting[q] = m.halting(q);
    t.paths.assign(static_cast<std::size_t>(t.dim()) * t.dim(), 0);
    t.loops.assign(t.dim(), 0);
    for (const auto& tr : m.transitions) {
        if (tr.read != f || tr.prob == 0 || m.halting(tr.from)) continue;
        int exit = CrossingMatrix::index(tr.to, m.halting(tr.to) ? +1 : tr.dir);
        for (int d : {-1, +1}) {
            auto& c = t.paths[static_cast<std::size_t>(CrossingMatrix::index(tr.from, d)) * t.dim() + exit];
            c = sat_add(c, 1);
        }
    }
    return t;
}

CrossingMatrix compose_crossing(const CrossingMatrix& tu, const CrossingMatrix& tv) {
    if (tu.dim() != tv.dim()) throw DomainError("DIM_MISMATCH", "crossing matrices of different machines");
    CrossingMatrix t;
    t.states = tu.states;
    t.halting = tu.halting;
    t.paths.assign(static_cast<std::size_t>(t.dim()) * t.dim(), 0);
    t.loops.assign(t.dim(), 0);
    BounceGraph g(&tu, &tv, t.states, t.halting);
    for (int i = 0; i < t.dim(); ++i) {
        int q = CrossingMatrix::state_of(i);
        if (t.halting[q]) continue;
        // Entering from the left means entering u first.
        auto r = g.run(CrossingMatrix::dir_of(i) > 0 ? g.node(0, i) : g.node(1, i));
        for (const auto& [k, c] : r.exits)
            t.paths[static_cast<std::size_t>(i) * t.dim() + CrossingMatrix::index(k.first, k.second)] = c;
        t.loops[i] = r.loops;
    }
    return t;
}

RegionExits d_delta(const CrossingMatrix* tu, int q, int d, const CrossingMatrix* tv) {
    const CrossingMatrix* any = tu ? tu : tv;
    if (!any) return RegionExits{{{{q, d}, 1}}, false};
    if (tu && tv && tu->dim() != tv->dim()) throw DomainError("DIM_MISMATCH", "crossing matrices of different machines");
    BounceGraph g(tu, tv, any->states, any->halting);
    int entry = CrossingMatrix::index(q, d);
    return g.run(d > 0 ? g.node(1, entry) : g.node(0, entry));
}

}  // namespace limaut
