#include <doctest.h>

#include <functional>

#include "limaut/decomposition.hpp"
#include "limaut/semantics.hpp"
#include "limaut/validate.hpp"
#include "limaut/zoo.hpp"

using namespace limaut;

namespace {

// Depth-first enumeration of transducer paths, one transition per cell of |c x $.
OutputMultiset transducer_paths(const RtTransducer& t, const Word& x) {
    std::vector<int> reads{t.left_read()};
    for (const auto& a : x) reads.push_back(t.input.find(a));
    reads.push_back(t.right_read());
    OutputMultiset out;
    Word y;
    std::function<void(int, std::size_t)> go = [&](int q, std::size_t i) {
        if (i == reads.size()) {
            if (t.accepting[q]) out[y] += 1;
            return;
        }
        for (const auto& tr : t.transitions) {
            if (tr.from != q || tr.read != reads[i]) continue;
            if (tr.output >= 0) y.push_back(t.output.name(tr.output));
            go(tr.to, i + 1);
            if (tr.output >= 0) y.pop_back();
        }
    };
    go(t.initial, 0);
    return out;
}

// { f(y^R)^R : y in g(x) } evaluated stage by stage.
OutputMultiset two_stage(const RtTransducer& f, const RtTransducer& g, const Word& x) {
    OutputMultiset out;
    for (const auto& [y, cy] : transducer_paths(g, x))
        for (const auto& [z, cz] : transducer_paths(f, reversed(y))) out[reversed(z)] += cy * cz;
    return out;
}

RtTransducer identity(const std::vector<std::string>& sigma) {
    auto t = RtTransducer::with_alphabets(sigma, sigma);
    t.add_state("s", true);
    t.add("s", "|c", "s", "");
    for (const auto& a : sigma) t.add("s", a, "s", a);
    t.add("s", "$", "s", "");
    return t;
}

// Writes one guessed bit per input symbol.
RtTransducer bit_guesser() {
    auto t = RtTransducer::with_alphabets({"a"}, {"0", "1"});
    t.add_state("s", true);
    t.add("s", "|c", "s", "");
    t.add("s", "a", "s", "0");
    t.add("s", "a", "s", "1");
    t.add("s", "$", "s", "");
    return t;
}

// Writes "x y" on every input, reading it off the endmarkers.
RtTransducer fixed_writer() {
    auto t = RtTransducer::with_alphabets({"a"}, {"x", "y"});
    t.add_state("s");
    t.add_state("t");
    t.add_state("f", true);
    t.add("s", "|c", "t", "x");
    t.add("t", "a", "t", "");
    t.add("t", "$", "f", "y");
    return t;
}

// 3-lda over {a,b} sweeping right once and accepting at $ iff the input has no b.
LimitedAutomaton sweep_once() {
    auto m = LimitedAutomaton::with_input(3, {"a", "b"});
    m.add_symbol("A1", 1);
    m.add_symbol("B1", 1);
    m.add_state("q0");
    m.add_state("P");
    m.add_state("N");
    m.add_state("acc", true);
    m.add_state("rej", false, true);
    m.add("q0", "|c", "P", "|c", +1);
    m.add("P", "a", "P", "A1", +1);
    m.add("P", "b", "N", "B1", +1);
    m.add("N", "a", "N", "A1", +1);
    m.add("N", "b", "N", "B1", +1);
    m.add("P", "$", "acc", "$", -1);
    m.add("N", "$", "rej", "$", -1);
    return m;
}

}  // namespace

TEST_SUITE("decomposition") {

TEST_CASE("identity transducer") {
    auto t = identity({"a", "b"});
    for (const auto& x : words_upto({"a", "b"}, 4)) {
        auto out = evaluate_transducer(t, x);
        REQUIRE(out.size() == 1);
        CHECK(out.begin()->first == x);
        CHECK(out.begin()->second == 1);
    }
}

TEST_CASE("bit guesser yields every bit string once") {
    auto out = evaluate_transducer(bit_guesser(), {"a", "a", "a"});
    CHECK(out.size() == 8);
    CHECK(total_multiplicity(out) == 8);
    for (const auto& [y, c] : out) CHECK(c == 1);
}

TEST_CASE("transducer evaluation matches path enumeration") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        zoo::RandomSpec s;
        s.kind = "transducer";
        s.seed = seed;
        s.determinism = "nondet";
        auto t = std::get<RtTransducer>(zoo::random_machine(s));
        for (const auto& x : words_upto(t.input.names(), 4)) CHECK(evaluate_transducer(t, x) == transducer_paths(t, x));
    }
}

TEST_CASE("composition of identities reverses twice") {
    auto id = identity({"a", "b"});
    auto h = compose_transducers(id, id);
    CHECK(validate_transducer(h).empty());
    for (const auto& x : words_upto({"a", "b"}, 4)) {
        auto out = evaluate_transducer(h, x);
        CHECK(out == OutputMultiset{{x, 1}});
        CHECK(out == two_stage(id, id, x));
    }
}

TEST_CASE("composition with a fixed first stage") {
    auto g = fixed_writer();
    auto f = identity({"x", "y"});
    auto h = compose_transducers(f, g);
    for (const auto& x : words_upto({"a"}, 3)) CHECK(evaluate_transducer(h, x) == OutputMultiset{{{"x", "y"}, 1}});
}

TEST_CASE("composition matches two-stage evaluation on random pairs") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        zoo::RandomSpec s;
        s.kind = "transducer";
        s.seed = seed;
        s.states = 2 + seed % 2;
        auto [f, g] = zoo::random_transducer_pair(s);
        auto h = compose_transducers(f, g);
        CAPTURE(seed);
        for (const auto& x : words_upto(g.input.names(), 3)) CHECK(evaluate_transducer(h, x) == two_stage(f, g, x));
    }
}

TEST_CASE("composition preconditions") {
    auto g = fixed_writer();
    auto f = RtTransducer::with_alphabets({"x", "y"}, {"x"});
    f.add_state("s", true);
    f.add("s", "|c", "s", "x");
    try {
        compose_transducers(f, g);
        FAIL("expected NOT_SUPPORTED");
    } catch (const DomainError& e) {
        CHECK(e.code == "NOT_SUPPORTED");
    }
    CHECK_THROWS_AS(compose_transducers(identity({"a"}), g), DomainError);
}

TEST_CASE("sweep-once machine has one trace per input") {
    auto m = sweep_once();
    auto g = first_traverse_transducer(m);
    auto n = residual_machine(m);
    CHECK(validate_transducer(g).empty());
    CHECK(validate_limited(n).empty());
    CHECK(n.k == 2);
    for (const auto& x : words_upto({"a", "b"}, 4)) {
        auto out = evaluate_transducer(g, x);
        REQUIRE(out.size() == 1);
        CHECK(out.begin()->second == 1);
        CHECK(out.begin()->first.size() == x.size() + 2);
        auto run = run_deterministic(m, x);
        CHECK(first_traverse_of(m, x, run) == out.begin()->first);
        CHECK(evaluate(n, reversed(out.begin()->first)).p_acc == (run.accepted ? 1 : 0));
    }
}

TEST_CASE("a left turn shows up in the cell state") {
    auto m = zoo::turn_3lda();
    auto out = evaluate_transducer(first_traverse_transducer(m), {"b"});
    REQUIRE_FALSE(out.empty());
    for (const auto& [y, c] : out) {
        REQUIRE(y.size() == 3);
        CHECK(y[1].find(",L,L|") != std::string::npos);
        CHECK(y[1].find("|λ)") == std::string::npos);
    }
    CHECK(cell_state_name('L', "P", "b", "Bt", "L", 'L', "R,P2,X") == "(L,P,b|Bt,L,L|R,P2,X)");
}

TEST_CASE("replay: the true trace is emitted once and wrong guesses cancel") {
    for (const auto& m : {zoo::sweep_3lda(), zoo::turn_3lda()}) {
        auto g = first_traverse_transducer(m);
        auto n = residual_machine(m);
        for (const auto& x : words_upto(input_alphabet(m), 4)) {
            auto run = run_deterministic(m, x);
            auto trace = first_traverse_of(m, x, run);
            auto outs = evaluate_transducer(g, x);
            CAPTURE(word_to_string(x));
            REQUIRE(trace);
            REQUIRE(outs.count(*trace));
            CHECK(outs.at(*trace) == 1);
            if (!decomposable(m, x, run)) continue;
            for (const auto& [y, c] : outs) {
                auto r = evaluate(n, reversed(y));
                if (y == *trace) CHECK(r.p_acc == (run.accepted ? 1 : 0));
                else CHECK(r.p_acc == r.p_rej);
            }
            CHECK(lfm_membership(reversed(outs), n, Rational(1, 2)) == run.accepted);
        }
    }
}

TEST_CASE("threshold membership is strict") {
    auto m = sweep_once();
    auto g = first_traverse_transducer(m);
    auto n = residual_machine(m);
    auto yes = reversed(evaluate_transducer(g, {"a"}));
    auto no = reversed(evaluate_transducer(g, {"b"}));
    CHECK(lfm_membership(yes, n, Rational(1, 2)));
    OutputMultiset both = yes;
    both.insert(no.begin(), no.end());
    CHECK_FALSE(lfm_membership(both, n, Rational(1, 2)));
    CHECK(lfm_membership(both, n, Rational(1, 3)));
    CHECK_THROWS_AS(lfm_membership(OutputMultiset{}, n, Rational(1, 2)), DomainError);
    CHECK_THROWS_AS(lfm_membership(yes, n, 1), DomainError);
    CHECK_THROWS_AS(lfm_membership(yes, n, 0), DomainError);
}

TEST_CASE("decomposition preconditions") {
    try {
        first_traverse_transducer(zoo::l1p_2lda());
        FAIL("expected WRONG_K");
    } catch (const DomainError& e) {
        CHECK(e.code == "WRONG_K");
    }
    auto p = sweep_once();
    p.transitions[1].prob = Rational(1, 2);
    p.add("P", "a", "rej", "A1", +1, Rational(1, 2));
    try {
        residual_machine(p);
        FAIL("expected NOT_SUPPORTED");
    } catch (const DomainError& e) {
        CHECK(e.code == "NOT_SUPPORTED");
    }
    auto nd = sweep_once();
    nd.add("P", "a", "N", "A1", +1);
    CHECK_THROWS_AS(run_deterministic(nd, {"a"}), DomainError);
}

}
