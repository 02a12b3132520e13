// Blank-skipping normal form for nondeterministic k-limited automata.
//
// N mirrors M cell for cell except that every frozen cell holds the blank B.
// A non-frozen cell next to a frozen region stores the crossing matrix of that
// region: symbols are [T_left | a | T_right]. States are [s, e, T]: "M is in
// state s and the head moves in direction e across the blank region whose
// matrix is T" (T empty when there is no region). On B such a state keeps
// moving; on the first non-blank cell it refreshes that cell's stored matrix
// on the side it came from and performs M's move there.
//
// When several M-computations would be mapped onto the same N-move (in-region
// nondeterminism, or distinct frozen writes that look alike once blanked), N
// branches into tagged copies of the target state so that accepting paths are
// counted with their multiplicity (up to a fixed cap). Regions with infinitely many crossing
// paths are entered once; a region in which the head may stay forever also
// branches into a non-halting sink that sweeps the tape without halting.

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <tuple>

#include "limaut/errors.hpp"
#include "limaut/transforms.hpp"
#include "limaut/validate.hpp"

namespace limaut {

namespace {

class BlankSkipBuilder {
public:
    explicit BlankSkipBuilder(const LimitedAutomaton& m) : m_(m), index_(m.index()) {
        n_ = LimitedAutomaton::with_input(m.k, input_alphabet(m));
        blank_ = n_.add_symbol(m.symbols.find("B") >= 0 ? "B'" : "B", m.k);
        n_.blank = blank_;
        frozen_.assign(m.num_symbols(), -1);
        for (int f = 0; f < m.num_symbols(); ++f)
            if (m.level[f] == m.k && f != m.left_end && f != m.right_end) frozen_[f] = intern(crossing_matrix(m, f));
        for (int a : m.input_symbols()) sym_ids_[{-1, a, -1}] = n_.symbols.find(m.symbols.name(a));
        for (int s = 0; s < m.num_symbols(); ++s) {
            int id = -1;
            if (s == m.left_end) id = n_.left_end;
            else if (s == m.right_end) id = n_.right_end;
            else continue;
            endmarker_of_[id] = s;
        }
    }

    LimitedAutomaton build() {
        n_.initial = m_.halting(m_.initial) ? halting_state(m_.initial, 0) : state({m_.initial, +1, -1}, 0);
        while (!work_.empty()) {
            auto [st, sym] = work_.front();
            work_.pop_front();
            if (n_.transitions.size() > kMaxTransitions)
                throw DomainError("TOO_LARGE", "blank-skipping image exceeds " + std::to_string(kMaxTransitions) + " transitions");
            expand(st, sym);
        }
        finish_sinks();
        return std::move(n_);
    }

private:
    struct Key {
        int s, e, t;
        auto operator<=>(const Key&) const = default;
    };
    struct Target {
        int kind;  // 0 skip state, 1 halting, 2 sink
        Key key;
        int write, dir;
        auto operator<=>(const Target&) const = default;
    };

    // Finite path counts are clamped so that only finitely many matrices and
    // tagged copies arise; multiplicities above the cap are not preserved.
    static constexpr std::uint64_t kMaxCopies = 16;
    static constexpr std::size_t kMaxTransitions = 4'000'000;

    int intern(CrossingMatrix t) {
        for (auto& c : t.paths)
            if (c != CrossingMatrix::kOmega && c > kMaxCopies) c = kMaxCopies;
        auto key = std::make_pair(t.paths, t.loops);
        auto it = matrix_ids_.find(key);
        if (it != matrix_ids_.end()) return it->second;
        int id = static_cast<int>(matrices_.size());
        matrices_.push_back(std::move(t));
        matrix_ids_.emplace(std::move(key), id);
        return id;
    }

    int compose(int a, int b) {
        if (a < 0) return b;
        if (b < 0) return a;
        auto [it, fresh] = compose_memo_.try_emplace({a, b}, -1);
        if (fresh) it->second = intern(compose_crossing(matrices_[a], matrices_[b]));
        return it->second;
    }

    const CrossingMatrix* mat(int id) const { return id < 0 ? nullptr : &matrices_[id]; }

    std::string tname(int t) const { return t < 0 ? "∅" : "T" + std::to_string(t); }

    int state(Key k, int tag) {
        auto [it, fresh] = state_ids_.try_emplace({k, tag}, -1);
        if (!fresh) return it->second;
        std::string name = "[" + m_.states.name(k.s) + "," + (k.e > 0 ? "+" : "-") + "," + tname(k.t) +
                           (tag ? "," + std::to_string(tag) : "") + "]";
        int id = n_.add_state(name);
        it->second = id;
        keys_.resize(id + 1);
        keys_[id] = k;
        skip_states_.push_back(id);
        for (int sym = 0; sym < n_.num_symbols(); ++sym) work_.push_back({id, sym});
        return id;
    }

    int halting_state(int s, int tag) {
        auto [it, fresh] = halt_ids_.try_emplace({s, tag}, -1);
        if (fresh)
            it->second = n_.add_state(m_.states.name(s) + (tag ? "#" + std::to_string(tag) : ""), m_.accepting[s],
                                      m_.rejecting[s]);
        return it->second;
    }

    int symbol(int tl, int a, int tr) {
        auto [it, fresh] = sym_ids_.try_emplace({tl, a, tr}, -1);
        if (!fresh) return it->second;
        std::string name = tl < 0 && tr < 0 ? m_.symbols.name(a)
                                             : "[" + tname(tl) + "|" + m_.symbols.name(a) + "|" + tname(tr) + "]";
        int id = n_.add_symbol(name, m_.level[a]);
        it->second = id;
        cells_[id] = {tl, a, tr};
        for (int st : skip_states_) work_.push_back({st, id});
        return id;
    }

    int sink(int dir) {
        int& s = dir > 0 ? sink_r_ : sink_l_;
        if (s < 0) s = n_.add_state(dir > 0 ? "[sink,+]" : "[sink,-]");
        return s;
    }

    // Adds N's moves for one M-move that writes `write` and moves `dir`, given
    // the region the head then faces.
    void outcomes(std::map<Target, std::uint64_t>& out, int write, int dir, const RegionExits& r, int t) {
        for (const auto& [exit, c] : r.exits) {
            auto [s, e] = exit;
            Target tg = m_.halting(s) ? Target{1, {s, 0, -1}, write, dir} : Target{0, {s, e, t}, write, dir};
            out[tg] = add(out[tg], c);
        }
        if (r.loops) out[{2, {0, dir, -1}, write, dir}] = 1;
    }

    static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
        constexpr auto w = CrossingMatrix::kOmega;
        return a == w || b == w || a > w - 1 - b ? w : a + b;
    }

    void expand(int st, int sym) {
        const Key k = keys_[st];
        if (sym == blank_) {
            n_.add(st, blank_, st, blank_, k.e);
            return;
        }
        std::map<Target, std::uint64_t> out;
        auto moves = [&](int a) -> const std::vector<int>& { return index_[k.s * m_.num_symbols() + a]; };
        if (auto em = endmarker_of_.find(sym); em != endmarker_of_.end()) {
            // At an endmarker the carried matrix is the one of the inner side.
            for (int id : moves(em->second)) {
                const auto& tr = m_.transitions[id];
                if (tr.prob == 0) continue;
                if (m_.halting(tr.to)) {
                    out[{1, {tr.to, 0, -1}, sym, tr.dir}] += 1;
                    continue;
                }
                RegionExits r = tr.dir > 0 ? d_delta(nullptr, tr.to, +1, mat(k.t)) : d_delta(mat(k.t), tr.to, -1, nullptr);
                outcomes(out, sym, tr.dir, r, k.t);
            }
        } else {
            auto [tl, a, tr_side] = cells_.count(sym) ? cells_[sym] : std::tuple<int, int, int>{-1, input_of(sym), -1};
            if (k.e > 0) tl = k.t;
            else tr_side = k.t;
            for (int id : moves(a)) {
                const auto& tr = m_.transitions[id];
                if (tr.prob == 0) continue;
                if (frozen_[tr.write] >= 0) {
                    int tb = frozen_[tr.write];
                    if (m_.halting(tr.to)) {
                        out[{1, {tr.to, 0, -1}, blank_, tr.dir}] += 1;
                        continue;
                    }
                    int merged = compose(compose(tl, tb), tr_side);
                    RegionExits r = tr.dir > 0 ? d_delta(mat(compose(tl, tb)), tr.to, +1, mat(tr_side))
                                               : d_delta(mat(tl), tr.to, -1, mat(compose(tb, tr_side)));
                    outcomes(out, blank_, tr.dir, r, merged);
                } else {
                    int w = symbol(tl, tr.write, tr_side);
                    if (m_.halting(tr.to)) {
                        out[{1, {tr.to, 0, -1}, w, tr.dir}] += 1;
                        continue;
                    }
                    int facing = tr.dir > 0 ? tr_side : tl;
                    RegionExits r = tr.dir > 0 ? d_delta(nullptr, tr.to, +1, mat(facing))
                                               : d_delta(mat(facing), tr.to, -1, nullptr);
                    outcomes(out, w, tr.dir, r, facing);
                }
            }
        }
        for (const auto& [tg, c] : out) {
            std::uint64_t copies = c == CrossingMatrix::kOmega ? 1 : std::min(c, kMaxCopies);
            for (std::uint64_t tag = 0; tag < copies; ++tag) {
                int to = tg.kind == 0   ? state(tg.key, static_cast<int>(tag))
                         : tg.kind == 1 ? halting_state(tg.key.s, static_cast<int>(tag))
                                        : sink(tg.dir);
                n_.add(st, sym, to, tg.write, tg.dir);
            }
        }
    }

    int input_of(int sym) const {
        int a = m_.symbols.find(n_.symbols.name(sym));
        if (a < 0 || m_.level[a] != 0) throw std::logic_error("blank-skip: unknown cell symbol");
        return a;
    }

    // The sinks sweep between the endmarkers forever, raising levels as the
    // limitedness rules demand.
    void finish_sinks() {
        if (sink_r_ < 0 && sink_l_ < 0) return;
        int r = sink(+1), l = sink(-1);
        std::vector<int> junk(m_.k + 1, -1);
        junk[m_.k] = blank_;
        for (int i = 1; i < m_.k; ++i) junk[i] = n_.add_symbol("⊘" + std::to_string(i), i);
        for (int sym = 0; sym < n_.num_symbols(); ++sym) {
            if (sym == n_.left_end) {
                n_.add(r, sym, r, sym, +1);
                n_.add(l, sym, r, sym, +1);
            } else if (sym == n_.right_end) {
                n_.add(r, sym, l, sym, -1);
                n_.add(l, sym, l, sym, -1);
            } else if (sym == blank_) {
                n_.add(r, sym, r, sym, +1);
                n_.add(l, sym, l, sym, -1);
            } else {
                int lvl = n_.level[sym];
                n_.add(r, sym, r, junk[required_write_level(m_.k, lvl, +1)], +1);
                n_.add(l, sym, l, junk[required_write_level(m_.k, lvl, -1)], -1);
            }
        }
    }

    const LimitedAutomaton& m_;
    std::vector<std::vector<int>> index_;
    LimitedAutomaton n_;
    int blank_ = -1;
    int sink_r_ = -1, sink_l_ = -1;
    std::vector<int> frozen_;  // per M symbol: matrix id, -1 if not frozen
    std::vector<CrossingMatrix> matrices_;
    std::map<std::pair<std::vector<std::uint64_t>, std::vector<char>>, int> matrix_ids_;
    std::map<std::pair<int, int>, int> compose_memo_;
    std::map<std::pair<Key, int>, int> state_ids_;
    std::map<std::pair<int, int>, int> halt_ids_;
    std::map<std::tuple<int, int, int>, int> sym_ids_;
    std::map<int, std::tuple<int, int, int>> cells_;
    std::map<int, int> endmarker_of_;
    std::vector<Key> keys_;
    std::vector<int> skip_states_;
    std::deque<std::pair<int, int>> work_;
};

}  // namespace

LimitedAutomaton to_blank_skipping(const LimitedAutomaton& m) {
    if (m.k < 2) throw DomainError("WRONG_K", "blank skipping needs k >= 2");
    if (!has_integral_weights(m)) throw DomainError("NOT_NONDET", "probabilistic blank skipping is not supported");
    return BlankSkipBuilder(m).build();
}

}  // namespace limaut
