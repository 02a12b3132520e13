#include <doctest.h>

#include <gmpxx.h>

#include <random>

#include "limaut/semantics.hpp"
#include "limaut/transforms.hpp"
#include "limaut/validate.hpp"
#include "limaut/zoo.hpp"

using namespace limaut;

namespace {

using Count = std::uint64_t;
constexpr Count kOmega = CrossingMatrix::kOmega;

struct RegionResult {
    std::map<std::pair<int, int>, Count> exits;
    bool loops = false;
};

// Direct simulation of a frozen region: per-length path counts by dynamic
// programming over (state, position). A count that still grows between
// lengths N+1 and 2N+2 (N configurations) comes from a cycle, hence infinite.
RegionResult simulate_region(const LimitedAutomaton& m, const std::vector<int>& cells, int q, int pos) {
    const int n = m.num_states(), r = static_cast<int>(cells.size()), configs = n * r;
    auto exits_upto = [&](int len) {
        // ways[c] maps exits to path counts of length <= remaining steps.
        std::vector<std::map<std::pair<int, int>, mpz_class>> ways(configs), next(configs);
        for (int step = 0; step < len; ++step) {
            for (int s = 0; s < n; ++s)
                for (int p = 0; p < r; ++p) {
                    auto& out = next[s * r + p];
                    out.clear();
                    if (m.halting(s)) continue;
                    for (const auto& t : m.transitions) {
                        if (t.from != s || t.read != cells[p] || t.prob == 0) continue;
                        if (m.halting(t.to)) {
                            out[{t.to, +1}] += 1;
                            continue;
                        }
                        int np = p + t.dir;
                        if (np < 0 || np >= r) {
                            out[{t.to, t.dir}] += 1;
                            continue;
                        }
                        for (const auto& [e, c] : ways[t.to * r + np]) out[e] += c;
                    }
                }
            std::swap(ways, next);
        }
        return ways[q * r + pos];
    };
    auto a = exits_upto(configs + 1), b = exits_upto(2 * configs + 2);
    RegionResult res;
    for (const auto& [e, c] : b) res.exits[e] = a.count(e) && a[e] == c ? c.get_ui() : kOmega;

    std::set<int> live{q * r + pos};
    for (int step = 0; step <= configs && !live.empty(); ++step) {
        std::set<int> nxt;
        for (int c : live) {
            int s = c / r, p = c % r;
            if (m.halting(s)) continue;
            for (const auto& t : m.transitions) {
                if (t.from != s || t.read != cells[p] || t.prob == 0 || m.halting(t.to)) continue;
                int np = p + t.dir;
                if (np >= 0 && np < r) nxt.insert(t.to * r + np);
            }
        }
        live = std::move(nxt);
    }
    res.loops = !live.empty();
    return res;
}

std::vector<int> frozen_symbols(const LimitedAutomaton& m) {
    std::vector<int> f;
    for (int s : m.symbols_at(m.k))
        if (s != m.left_end && s != m.right_end) f.push_back(s);
    return f;
}

CrossingMatrix region_matrix(const LimitedAutomaton& m, const std::vector<int>& cells) {
    CrossingMatrix t = crossing_matrix(m, cells[0]);
    for (std::size_t i = 1; i < cells.size(); ++i) t = compose_crossing(t, crossing_matrix(m, cells[i]));
    return t;
}

void check_region(const LimitedAutomaton& m, const std::vector<int>& cells) {
    CrossingMatrix t = region_matrix(m, cells);
    for (int q = 0; q < m.num_states(); ++q) {
        if (m.halting(q)) continue;
        for (int d : {-1, +1}) {
            auto sim = simulate_region(m, cells, q, d > 0 ? 0 : static_cast<int>(cells.size()) - 1);
            int row = CrossingMatrix::index(q, d);
            for (int col = 0; col < t.dim(); ++col) {
                std::pair<int, int> e{CrossingMatrix::state_of(col), CrossingMatrix::dir_of(col)};
                Count want = sim.exits.count(e) ? sim.exits[e] : 0;
                CHECK(t.at(row, col) == want);
            }
            CHECK(bool(t.loops[row]) == sim.loops);
        }
    }
}

// Two-symbol machine over {a}: FR sends the head right, FL sends it left.
LimitedAutomaton bouncer() {
    auto m = LimitedAutomaton::with_input(2, {"a"});
    m.add_symbol("A1", 1);
    m.add_symbol("FR", 2);
    m.add_symbol("FL", 2);
    m.add_state("q");
    m.add_state("p");
    m.add_state("acc", true);
    m.add("q", "FR", "q", "FR", +1);
    m.add("q", "FL", "q", "FL", -1);
    m.add("p", "FR", "p", "FR", +1);
    m.add("p", "FL", "p", "FL", +1);
    return m;
}

CrossingMatrix random_matrix(std::mt19937& rng, int states, const std::vector<char>& halting) {
    CrossingMatrix t;
    t.states = states;
    t.halting = halting;
    t.paths.assign(static_cast<std::size_t>(t.dim()) * t.dim(), 0);
    t.loops.assign(t.dim(), 0);
    for (int i = 0; i < t.dim(); ++i) {
        if (halting[CrossingMatrix::state_of(i)]) continue;
        for (int j = 0; j < t.dim(); ++j) {
            if (halting[CrossingMatrix::state_of(j)] && CrossingMatrix::dir_of(j) < 0) continue;
            int v = rng() % 6;
            t.paths[static_cast<std::size_t>(i) * t.dim() + j] = v < 4 ? 0 : v - 3;
        }
        t.loops[i] = rng() % 5 == 0;
    }
    return t;
}

}  // namespace

TEST_SUITE("crossing") {

TEST_CASE("direction annotation doubles the states and keeps behaviour") {
    auto m = zoo::l1p_2lda();
    auto a = annotate_directions(m);
    CHECK(a.num_states() <= 2 * m.num_states());
    CHECK(validate_limited(a).empty());
    CHECK(classify(a).deterministic);
    for (const auto& w : words_upto(input_alphabet(m), 5)) CHECK(evaluate(a, w).p_acc == evaluate(m, w).p_acc);
}

TEST_CASE("pass-through symbol") {
    auto m = bouncer();
    int fr = m.symbols.find("FR");
    auto t = crossing_matrix(m, fr);
    int q = m.states.find("q"), p = m.states.find("p");
    for (int d : {-1, +1}) {
        CHECK(t.at(CrossingMatrix::index(q, d), CrossingMatrix::index(q, +1)) == 1);
        CHECK(t.at(CrossingMatrix::index(p, d), CrossingMatrix::index(p, +1)) == 1);
    }
    int nonzero = 0;
    for (auto c : t.paths) nonzero += c != 0;
    CHECK(nonzero == 4);
    CHECK(compose_crossing(t, t) == t);
}

TEST_CASE("left-moving rule") {
    auto m = bouncer();
    auto t = crossing_matrix(m, m.symbols.find("FL"));
    int q = m.states.find("q");
    CHECK(t.at(CrossingMatrix::index(q, +1), CrossingMatrix::index(q, -1)) == 1);
    CHECK(t.at(CrossingMatrix::index(q, -1), CrossingMatrix::index(q, -1)) == 1);
}

TEST_CASE("non-frozen symbols are rejected") {
    auto m = bouncer();
    CHECK_THROWS_AS(crossing_matrix(m, m.symbols.find("A1")), DomainError);
    CHECK_THROWS_AS(crossing_matrix(m, m.left_end), DomainError);
    auto other = crossing_matrix(zoo::l1p_2lda(), frozen_symbols(zoo::l1p_2lda())[0]);
    CHECK_THROWS_AS(compose_crossing(crossing_matrix(m, m.symbols.find("FR")), other), DomainError);
}

TEST_CASE("d_delta through pass-through regions") {
    auto m = bouncer();
    auto t = crossing_matrix(m, m.symbols.find("FR"));
    int p = m.states.find("p");
    auto r = d_delta(&t, p, +1, &t);
    CHECK(r.pairs() == std::set<std::pair<int, int>>{{p, +1}});
    CHECK_FALSE(r.loops);
}

TEST_CASE("closed bounce traps the head") {
    auto m = bouncer();
    auto tr = crossing_matrix(m, m.symbols.find("FR"));
    auto tl = crossing_matrix(m, m.symbols.find("FL"));
    int q = m.states.find("q");
    auto r = d_delta(&tr, q, +1, &tl);
    CHECK(r.exits.empty());
    CHECK(r.loops);
    auto both = compose_crossing(tr, tl);
    CHECK(both.loops[CrossingMatrix::index(q, +1)]);
}

TEST_CASE("single cells and regions match direct simulation on zoo machines") {
    for (const auto& e : zoo::catalogue()) {
        const auto* mp = std::get_if<LimitedAutomaton>(&e.machine);
        if (!mp) continue;
        for (const auto& m : {*mp, annotate_directions(*mp)}) {
            auto f = frozen_symbols(m);
            CAPTURE(e.name);
            for (int a : f) check_region(m, {a});
            for (int a : f)
                for (int b : f) check_region(m, {a, b});
            if (f.size() <= 3)
                for (int a : f)
                    for (int b : f)
                        for (int c : f) check_region(m, {a, b, c});
        }
    }
    auto b = bouncer();
    auto f = frozen_symbols(b);
    for (int x : f)
        for (int y : f)
            for (int z : f) check_region(b, {x, y, z});
}

TEST_CASE("d_delta matches direct simulation from the boundary") {
    for (const auto& m : {zoo::l1p_2lda(), zoo::l2p_2lda(), bouncer()}) {
        auto f = frozen_symbols(m);
        for (int a : f)
            for (int b : f) {
                auto tu = crossing_matrix(m, a), tv = crossing_matrix(m, b);
                for (int q = 0; q < m.num_states(); ++q) {
                    if (m.halting(q)) continue;
                    for (int d : {-1, +1}) {
                        auto got = d_delta(&tu, q, d, &tv);
                        auto sim = simulate_region(m, {a, b}, q, d > 0 ? 1 : 0);
                        CHECK(got.exits == sim.exits);
                        CHECK(got.loops == sim.loops);
                    }
                }
            }
    }
}

TEST_CASE("composition is associative on random matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        int states = 1 + trial % 3;
        std::vector<char> halting(states, 0);
        if (states > 1) halting[states - 1] = trial % 2;
        auto a = random_matrix(rng, states, halting), b = random_matrix(rng, states, halting),
             c = random_matrix(rng, states, halting);
        CAPTURE(trial);
        CHECK(compose_crossing(compose_crossing(a, b), c) == compose_crossing(a, compose_crossing(b, c)));
    }
}

}
