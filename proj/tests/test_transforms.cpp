#include <doctest.h>

#include "fixtures.hpp"
#include "limaut/semantics.hpp"
#include "limaut/transforms.hpp"
#include "limaut/validate.hpp"
#include "limaut/zoo.hpp"

using namespace limaut;

namespace {

template <class A, class B>
void same_probabilities(const A& a, const B& b, int upto) {
    for (const auto& w : words_upto(input_alphabet(a), upto)) {
        auto ra = evaluate(a, w), rb = evaluate(b, w);
        CAPTURE(word_to_string(w));
        CHECK(ra.p_acc == rb.p_acc);
        CHECK(ra.p_rej == rb.p_rej);
    }
}

template <class A, class B>
void same_existential_verdicts(const A& a, const B& b, int upto) {
    for (const auto& w : words_upto(input_alphabet(a), upto)) {
        CAPTURE(word_to_string(w));
        CHECK(verdict_of(evaluate(a, w), Mode::existential()) == verdict_of(evaluate(b, w), Mode::existential()));
    }
}

LimitedAutomaton accept_all_2lda(const std::vector<std::string>& sigma) {
    auto m = LimitedAutomaton::with_input(2, sigma);
    m.add_state("q");
    m.add_state("acc", true);
    for (const auto& s : sigma) {
        m.add_symbol(s + "1", 1);
        m.add("q", s, "q", s + "1", +1);
    }
    m.add("q", "|c", "q", "|c", +1);
    m.add("q", "$", "acc", "$", -1);
    return m;
}

// Two-stage formula for the bounded OR of halting machines.
Rational or_formula(const Rational& p1, const Rational& p2) {
    Rational third(1, 3), half(1, 2);
    return half * (p1 + (1 - p1) * third) + half * (p2 + (1 - p2) * third);
}

LimitedAutomaton lifted(const PushdownAutomaton& p) { return ppda_to_lpa2(p); }

}  // namespace

TEST_SUITE("transforms") {

TEST_CASE("blank-skipping images of the zoo 2-lda's and 2-lna's") {
    for (const auto& m : {zoo::l1p_2lda(), zoo::l2p_2lda(), zoo::some_a_2lna(), zoo::ab_factor_2lna()}) {
        auto bs = to_blank_skipping(m);
        CHECK(validate_limited(bs).empty());
        CHECK(is_blank_skipping(bs).ok);
        CHECK(classify(bs).deterministic == classify(m).deterministic);
        same_existential_verdicts(m, bs, 5);
        for (const auto& w : words_upto(input_alphabet(m), 4))
            CHECK(count_accepting_paths(m, w).count == count_accepting_paths(bs, w).count);
    }
}

TEST_CASE("two accepting paths stay two") {
    auto m = zoo::some_a_2lna();
    Word x{"a", "a"};
    REQUIRE(count_accepting_paths(m, x).count == 2);
    CHECK(count_accepting_paths(to_blank_skipping(m), x).count == 2);
}

TEST_CASE("blank skipping is idempotent up to equivalence") {
    auto once = to_blank_skipping(zoo::l1p_2lda());
    auto twice = to_blank_skipping(once);
    CHECK(is_blank_skipping(twice).ok);
    same_probabilities(once, twice, 5);
}

TEST_CASE("blank skipping preconditions") {
    auto m = zoo::l1p_2lda();
    m.k = 1;
    CHECK_THROWS_AS(to_blank_skipping(m), DomainError);
    auto p = lifted(zoo::build_L2_rppda());
    try {
        to_blank_skipping(p);
        FAIL("expected NOT_NONDET");
    } catch (const DomainError& e) {
        CHECK(e.code == "NOT_NONDET");
    }
}

TEST_CASE("2-lpa to 1ppda") {
    auto bs = lifted(zoo::build_dcfl2_witnesses().first);
    REQUIRE(is_blank_skipping(bs).ok);
    auto p = lpa2_to_1ppda(bs);
    CHECK(p.num_states() == 2 * bs.num_states());
    CHECK(validate_pda(p).empty());
    same_probabilities(bs, p, 5);
    try {
        lpa2_to_1ppda(zoo::l1p_2lda());
        FAIL("expected NOT_BLANK_SKIPPING");
    } catch (const DomainError& e) {
        CHECK(e.code == "NOT_BLANK_SKIPPING");
    }
}

TEST_CASE("2-lpa to 1ppda translates a first-visit push rule for every stack top") {
    auto bs = lifted(zoo::build_dcfl2_witnesses().first);
    auto p = lpa2_to_1ppda(bs);
    const auto& t0 = *std::find_if(bs.transitions.begin(), bs.transitions.end(), [&](const auto& t) {
        return bs.level[t.read] == 0 && bs.level[t.write] == 1 && t.dir > 0;
    });
    const std::string from = bs.states.name(t0.from) + "+", to = bs.states.name(t0.to) + "+";
    const std::string sigma = bs.symbols.name(t0.read), written = bs.symbols.name(t0.write);
    int matches = 0;
    for (const auto& t : p.transitions) {
        if (p.states.name(t.from) != from || p.states.name(t.to) != to || p.read_name(t.read) != sigma) continue;
        if (t.push.size() == 2 && p.stack.name(t.push[0]) == written && t.push[1] == t.top && t.prob == t0.prob)
            ++matches;
    }
    CHECK(matches >= 1);
}

TEST_CASE("1ppda to 2-lpa state count and behaviour") {
    auto [l1, l2] = zoo::build_dcfl2_witnesses();
    for (const auto& m : {l1, l2}) {
        auto b = ppda_to_lpa2(m);
        CHECK(b.num_states() == m.num_states() * m.stack.size() + m.num_states());
        CHECK(is_blank_skipping(b).ok);
        CHECK(validate_limited(b).empty());
        same_probabilities(m, b, 5);
    }
    auto l2r = zoo::build_L2_rppda();
    same_probabilities(l2r, ppda_to_lpa2(l2r), 5);
}

TEST_CASE("1ppda to 2-lpa push rule") {
    auto m = zoo::build_dcfl2_witnesses().first;
    auto b = ppda_to_lpa2(m);
    for (const auto& t : m.transitions) {
        if (t.read < 0 || t.read >= m.left_read() || t.push.size() != 2) continue;
        std::string from = "[" + m.states.name(t.from) + " " + m.stack.name(t.top) + "]";
        std::string to = "[" + m.states.name(t.to) + " " + m.stack.name(t.push[0]) + "]";
        std::string cell = "[" + m.stack.name(t.top) + "]";
        bool found = false;
        for (const auto& u : b.transitions)
            found |= b.states.name(u.from) == from && b.states.name(u.to) == to && u.dir == +1 &&
                     b.symbols.name(u.read) == m.input.name(t.read) && b.symbols.name(u.write) == cell &&
                     u.prob == t.prob;
        CHECK(found);
    }
}

TEST_CASE("non-ideal PDAs are refused") {
    auto m = fixtures::small_pda();
    m.add("q", "λ", "⊥", "q", "A ⊥");
    try {
        ppda_to_lpa2(m);
        FAIL("expected NOT_IDEAL_SHAPE");
    } catch (const DomainError& e) {
        CHECK(e.code == "NOT_IDEAL_SHAPE");
    }
}

TEST_CASE("amplification constants") {
    CHECK(amplification_alpha(Rational(1, 2), Rational(1, 8)) == Rational(1, 4));
    CHECK_THROWS_AS(amplification_alpha(Rational(1, 2), 0), DomainError);
    CHECK_THROWS_AS(amplification_alpha(Rational(1, 2), Rational(1, 6)), DomainError);
    CHECK_THROWS_AS(amplification_alpha(Rational(1, 4), Rational(1, 100)), DomainError);
}

TEST_CASE("amplified L2 machine") {
    auto m = amplify_one_sided(lifted(zoo::build_L2_rppda()), Rational(1, 2), Rational(1, 8));
    CHECK(validate_limited(m).empty());
    for (const auto& w : words_upto({"a", "b", "c", "d"}, 5)) {
        auto r = evaluate(m, w);
        CAPTURE(word_to_string(w));
        if (zoo::oracle_L2(w)) CHECK(r.p_acc == Rational(5, 8));
        else CHECK(r.p_rej == Rational(3, 4));
    }
}

TEST_CASE("one-sided union") {
    auto a = lifted(zoo::build_dcfl2_witnesses().first), b = lifted(zoo::build_dcfl2_witnesses().second);
    auto same = union_one_sided({a, a});
    for (const auto& w : words_upto({"a", "b", "c"}, 4)) CHECK(evaluate(same, w).p_acc == evaluate(a, w).p_acc);
    auto u = union_one_sided({a, b});
    CHECK(validate_limited(u).empty());
    for (const auto& w : words_upto({"a", "b", "c"}, 5)) {
        bool in1 = zoo::oracle_L1p(w), in2 = zoo::oracle_L2p(w);
        auto r = evaluate(u, w);
        CAPTURE(word_to_string(w));
        CHECK(r.p_acc == fraction(int(in1) + int(in2), 2));
        if (!in1 && !in2) CHECK(r.p_rej == 1);
    }
    CHECK_THROWS_AS(union_one_sided({}), DomainError);
    CHECK_THROWS_AS(union_one_sided({a, zoo::some_a_2lna()}), DomainError);
}

TEST_CASE("complement swaps acceptance and rejection") {
    auto m = lifted(zoo::build_L2_rppda());
    auto c = complement_swap(m);
    auto cc = complement_swap(c);
    for (const auto& w : words_upto({"a", "b", "c", "d"}, 4)) {
        auto r = evaluate(m, w), rc = evaluate(c, w), rcc = evaluate(cc, w);
        CHECK(rc.p_rej == r.p_acc);
        CHECK(rc.p_acc == r.p_rej);
        CHECK(rcc.p_acc == r.p_acc);
        CHECK(rcc.p_rej == r.p_rej);
    }
}

TEST_CASE("complement of a 2/3 acceptor") {
    auto m = LimitedAutomaton::with_input(2, {"a"});
    m.add_state("q");
    m.add_state("acc", true);
    m.add_state("rej", false, true);
    m.add("q", "|c", "acc", "|c", +1, Rational(2, 3));
    m.add("q", "|c", "rej", "|c", +1, Rational(1, 3));
    CHECK(evaluate(complement_swap(m), {"a"}).p_rej == Rational(2, 3));
}

TEST_CASE("bounded OR and AND follow the formula") {
    auto [p1, p2] = zoo::build_dcfl2_witnesses();
    auto a = lifted(p1), b = lifted(p2);
    auto o = bounded_or(a, b), n = bounded_and(a, b);
    CHECK(validate_limited(o).empty());
    CHECK(validate_limited(n).empty());
    for (const auto& w : words_upto({"a", "b", "c"}, 5)) {
        Rational x = evaluate(a, w).p_acc, y = evaluate(b, w).p_acc;
        CAPTURE(word_to_string(w));
        auto ro = evaluate(o, w), rn = evaluate(n, w);
        CHECK(ro.p_acc == or_formula(x, y));
        CHECK(ro.p_rej == 1 - or_formula(x, y));
        CHECK(rn.p_acc == 1 - or_formula(1 - x, 1 - y));
        if (x == 1 && y == 1) CHECK(ro.p_acc == 1);
        if (x == 0 && y == 0) CHECK(ro.p_rej == Rational(2, 3));
    }
    CHECK(evaluate(n, {"a", "a", "b", "b", "c", "c"}).p_acc >= Rational(2, 3));
    CHECK_THROWS_AS(bounded_or(a, b, Rational(1, 6)), DomainError);
}

TEST_CASE("regular products") {
    auto m = zoo::l1p_2lda();
    const std::vector<std::string> abc{"a", "b", "c"};
    auto all = intersect_regular(m, fixtures::dfa_all(abc));
    auto noc = intersect_regular(m, fixtures::dfa_avoiding(abc, "c"));
    auto sigma_star = accept_all_2lda({"a", "b"});
    auto astar = intersect_regular(sigma_star, fixtures::dfa_only({"a", "b"}, "a"));
    CHECK(validate_limited(noc).empty());
    CHECK(classify(noc).deterministic);
    for (const auto& w : words_upto(abc, 6)) {
        CAPTURE(word_to_string(w));
        CHECK(evaluate(all, w).p_acc == evaluate(m, w).p_acc);
        bool anbn = zoo::oracle_L1p(w) && std::find(w.begin(), w.end(), "c") == w.end();
        CHECK((evaluate(noc, w).p_acc == 1) == anbn);
    }
    for (const auto& w : words_upto({"a", "b"}, 6)) {
        bool only_a = std::all_of(w.begin(), w.end(), [](const auto& s) { return s == "a"; });
        CHECK((evaluate(astar, w).p_acc == 1) == only_a);
    }
    auto even = union_regular(m, fixtures::dfa_even(abc));
    for (const auto& w : words_upto(abc, 5))
        CHECK((evaluate(even, w).p_acc == 1) == (zoo::oracle_L1p(w) || w.size() % 2 == 0));
    CHECK_THROWS_AS(intersect_regular(m, fixtures::dfa_all({"a", "b"})), DomainError);
}

}
