#include <cstring>
#include <deque>
#include <unordered_map>

#include "limaut/semantics.hpp"
#include "limaut/errors.hpp"

namespace limaut {

namespace {

using Cell = std::uint16_t;

void put_int(std::string& key, std::int32_t v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); }

std::int32_t get_int(const std::string& key, std::size_t at) {
    std::int32_t v;
    std::memcpy(&v, key.data() + at, sizeof v);
    return v;
}

std::string encode(int q, int pos, const std::vector<Cell>& cells) {
    std::string key;
    key.reserve(8 + 2 * cells.size());
    put_int(key, q);
    put_int(key, pos);
    key.append(reinterpret_cast<const char*>(cells.data()), cells.size() * sizeof(Cell));
    return key;
}

void decode(const std::string& key, int& q, int& pos, std::vector<Cell>& cells) {
    q = get_int(key, 0);
    pos = get_int(key, 4);
    cells.resize((key.size() - 8) / sizeof(Cell));
    std::memcpy(cells.data(), key.data() + 8, cells.size() * sizeof(Cell));
}

// Breadth-first interning of configurations. New configurations beyond the
// node cap collapse into one shared unresolved node unless the caller asks
// for a hard failure.
class Builder {
public:
    Builder(ConfigurationGraph& g, std::size_t max_nodes, bool hard_cap)
        : g_(g), max_nodes_(max_nodes), hard_cap_(hard_cap) {}

    int intern(std::string key) {
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        if (g_.node_count() >= max_nodes_) {
            if (hard_cap_)
                throw DomainError("CAP_EXCEEDED", "configuration graph exceeds " + std::to_string(max_nodes_) + " nodes");
            return unresolved();
        }
        int id = add_node(NodeKind::Transient);
        ids_.emplace(key, id);
        keys_.push_back(std::move(key));
        queue_.push_back(id);
        return id;
    }

    int unresolved() {
        if (unresolved_ < 0) {
            unresolved_ = add_node(NodeKind::Unresolved);
            keys_.emplace_back();
        }
        return unresolved_;
    }

    bool next(int& id) {
        if (queue_.empty()) return false;
        id = queue_.front();
        queue_.pop_front();
        return true;
    }

    const std::string& key(int id) const { return keys_[id]; }

    void link(int from, int to, const Rational& w) {
        auto& out = g_.out[from];
        for (auto& e : out)
            if (e.first == to) {
                e.second += w;
                return;
            }
        out.emplace_back(to, w);
    }

private:
    int add_node(NodeKind k) {
        g_.kind.push_back(k);
        g_.out.emplace_back();
        g_.deficit.emplace_back(0);
        return static_cast<int>(g_.kind.size()) - 1;
    }

    ConfigurationGraph& g_;
    std::size_t max_nodes_;
    bool hard_cap_;
    std::unordered_map<std::string, int> ids_;
    std::vector<std::string> keys_;
    std::deque<int> queue_;
    int unresolved_ = -1;
};

// Effective weight of each applicable move: weights summing above 1 come from
// nondeterministic branching and are split uniformly; a sum below 1 leaves a
// dead-end deficit.
Rational scale_of(const Rational& total) { return total > 1 ? Rational(1 / total) : Rational(1); }

}  // namespace

std::size_t ConfigurationGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& o : out) n += o.size();
    return n;
}

long default_stack_cap(const PushdownAutomaton& m, std::size_t input_length) {
    return static_cast<long>(m.push_size) * static_cast<long>(input_length + 2) + 16;
}

ConfigurationGraph build_config_graph(const LimitedAutomaton& m, const Word& x, const Caps& caps) {
    ConfigurationGraph g;
    Builder b(g, caps.max_nodes, true);
    const auto idx = m.index();
    const int nsym = m.num_symbols();
    std::vector<Cell> tape;
    tape.push_back(static_cast<Cell>(m.left_end));
    for (const auto& s : x) {
        int id = m.symbols.find(s);
        if (id < 0 || m.level[id] != 0) throw InputError("\"" + s + "\" is not an input symbol");
        tape.push_back(static_cast<Cell>(id));
    }
    tape.push_back(static_cast<Cell>(m.right_end));
    const int last = static_cast<int>(tape.size()) - 1;

    g.initial = b.intern(encode(m.initial, 0, tape));
    int v;
    int q, pos;
    std::vector<Cell> cells;
    while (b.next(v)) {
        decode(b.key(v), q, pos, cells);
        if (m.accepting[q]) {
            g.kind[v] = NodeKind::Accept;
            continue;
        }
        if (m.rejecting[q]) {
            g.kind[v] = NodeKind::Reject;
            continue;
        }
        const auto& group = idx[static_cast<std::size_t>(q) * nsym + cells[pos]];
        Rational total = 0;
        for (int t : group) total += m.transitions[t].prob;
        Rational scale = scale_of(total);
        if (total < 1) g.deficit[v] = 1 - total;
        for (int t : group) {
            const auto& tr = m.transitions[t];
            if (tr.prob == 0) continue;
            int np = pos + tr.dir;
            if (np < 0 || np > last)
                throw DomainError("ENDMARK", "head leaves the tape at " + m.states.name(q));
            Cell old = cells[pos];
            cells[pos] = static_cast<Cell>(tr.write);
            int w = b.intern(encode(tr.to, np, cells));
            cells[pos] = old;
            b.link(v, w, tr.prob * scale);
        }
    }
    return g;
}

ConfigurationGraph build_config_graph(const PushdownAutomaton& m, const Word& x, const Caps& caps) {
    ConfigurationGraph g;
    Builder b(g, caps.max_nodes, false);
    const auto idx = m.index();
    std::vector<int> input;
    for (const auto& s : x) {
        int id = m.input.find(s);
        if (id < 0) throw InputError("\"" + s + "\" is not an input symbol");
        input.push_back(id);
    }
    const int n = static_cast<int>(input.size());
    const long cap = caps.max_stack_height >= 0 ? caps.max_stack_height : default_stack_cap(m, x.size());
    auto read_at = [&](int pos) {
        if (pos == 0) return m.left_read();
        if (pos <= n) return input[pos - 1];
        return m.right_read();
    };

    g.initial = b.intern(encode(m.initial, 0, std::vector<Cell>{0}));
    int v;
    int q, pos;
    std::vector<Cell> stack, next;
    while (b.next(v)) {
        decode(b.key(v), q, pos, stack);
        if (m.accepting[q]) {
            g.kind[v] = NodeKind::Accept;
            continue;
        }
        if (m.rejecting[q]) {
            g.kind[v] = NodeKind::Reject;
            continue;
        }
        const int top = stack.back();
        const std::vector<int>* groups[2] = {&idx[m.index_key(q, kReadLambda, top)], nullptr};
        if (pos <= n + 1) groups[1] = &idx[m.index_key(q, read_at(pos), top)];
        Rational total = 0;
        for (auto* grp : groups)
            if (grp)
                for (int t : *grp) total += m.transitions[t].prob;
        Rational scale = scale_of(total);
        if (total < 1) g.deficit[v] = 1 - total;
        for (int gi = 0; gi < 2; ++gi) {
            if (!groups[gi]) continue;
            for (int t : *groups[gi]) {
                const auto& tr = m.transitions[t];
                if (tr.prob == 0) continue;
                next.assign(stack.begin(), stack.end() - 1);
                for (auto it = tr.push.rbegin(); it != tr.push.rend(); ++it) next.push_back(static_cast<Cell>(*it));
                int w;
                if (next.empty()) {
                    throw DomainError("BOTTOM", "stack emptied at " + m.states.name(q));
                } else if (static_cast<long>(next.size()) > cap) {
                    w = b.unresolved();
                } else {
                    w = b.intern(encode(tr.to, gi == 0 ? pos : pos + 1, next));
                }
                b.link(v, w, tr.prob * scale);
            }
        }
    }
    return g;
}

}  // namespace limaut
