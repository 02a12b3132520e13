#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "limaut/validate.hpp"
#include "limaut/zoo.hpp"

using namespace limaut;

namespace {

std::set<std::string> ids(const ValidationReport& v) {
    std::set<std::string> s;
    for (const auto& x : v) s.insert(x.condition);
    return s;
}

ValidationReport check(const AnyMachine& m) {
    return std::visit(
        [](const auto& x) -> ValidationReport {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, LimitedAutomaton>) return validate_limited(x);
            else if constexpr (std::is_same_v<T, PushdownAutomaton>) return validate_pda(x);
            else if constexpr (std::is_same_v<T, Dfa>) return validate_dfa(x);
            else return validate_transducer(x);
        },
        m);
}

// Write level read straight off the parity rules, with turns capped at k.
int level_rule(int k, int i, int d) {
    if (i == k) return k;
    int up = i % 2 == 0 ? 1 << ((1 - d) / 2) : 1 << ((1 + d) / 2);
    return std::min(k, i + up);
}

}  // namespace

TEST_SUITE("validate") {

TEST_CASE("hand-crafted machines produce exactly their violation ids") {
    for (const auto& c : fixtures::validator_cases()) {
        CAPTURE(c.name);
        CHECK(ids(check(c.machine)) == c.expected);
    }
}

TEST_CASE("violations name the offending transition") {
    auto cs = fixtures::validator_cases();
    auto v = check(cs[1].machine);
    REQUIRE(v.size() == 1);
    CHECK(v[0].transition == 0);
    CHECK(v[0].message.find("F") != std::string::npos);
}

TEST_CASE("parity rule (2): even level, d=+1 writes level i+1") {
    CHECK(validate_limited(fixtures::parity_case(2, 0, 1, +1)).empty());
    CHECK(validate_limited(fixtures::parity_case(3, 0, 2, -1)).empty());
    CHECK(ids(validate_limited(fixtures::parity_case(3, 0, 1, -1))) == std::set<std::string>{"LIM2"});
}

TEST_CASE("parity rule (3): odd level, d=-1 writes level i+1") {
    CHECK(validate_limited(fixtures::parity_case(3, 1, 2, -1)).empty());
    CHECK(validate_limited(fixtures::parity_case(4, 1, 3, +1)).empty());
    CHECK(ids(validate_limited(fixtures::parity_case(4, 1, 2, +1))) == std::set<std::string>{"LIM3"});
}

TEST_CASE("required write level agrees with the parity rules everywhere") {
    for (int k = 1; k <= 7; ++k)
        for (int i = 0; i <= k; ++i)
            for (int d : {-1, +1}) {
                CAPTURE(k);
                CAPTURE(i);
                CAPTURE(d);
                CHECK(required_write_level(k, i, d) == level_rule(k, i, d));
            }
}

TEST_CASE("level-changing transitions are valid exactly at the required level") {
    for (int k = 2; k <= 5; ++k)
        for (int i = 0; i < k; ++i)
            for (int j = 0; j <= k; ++j)
                for (int d : {-1, +1}) {
                    bool ok = validate_limited(fixtures::parity_case(k, i, j, d)).empty();
                    CAPTURE(k);
                    CAPTURE(i);
                    CAPTURE(j);
                    CAPTURE(d);
                    CHECK(ok == (j == level_rule(k, i, d)));
                }
}

TEST_CASE("zero-one weights may branch without summing to one") {
    auto m = fixtures::small_2la();
    m.add("q", "a", "q", "A1", +1);
    m.add("q", "a", "acc", "A1", +1);
    CHECK(validate_limited(m).empty());
    auto c = classify(m);
    CHECK(c.nondeterministic);
    CHECK_FALSE(c.deterministic);
}

TEST_CASE("classification") {
    auto det = fixtures::small_2la();
    det.add("q", "a", "q", "A1", +1);
    CHECK(classify(det).deterministic);

    auto prob = fixtures::small_2la();
    prob.add("q", "a", "q", "A1", +1, Rational(1, 2));
    prob.add("q", "a", "acc", "A1", +1, Rational(1, 2));
    auto c = classify(prob);
    CHECK_FALSE(c.deterministic);
    CHECK_FALSE(c.nondeterministic);
}

TEST_CASE("blank-skipping shape") {
    auto m = LimitedAutomaton::with_input(2, {"a"});
    m.add_symbol("A1", 1);
    m.blank = m.add_symbol("B", 2);
    m.add_state("r");
    m.add_state("l");
    m.add_state("acc", true);
    m.add("r", "B", "r", "B", +1);
    m.add("l", "B", "l", "B", -1);
    m.add("r", "a", "l", "A1", +1);
    m.add("l", "A1", "r", "B", -1);
    m.add("r", "$", "acc", "$", -1);
    auto s = is_blank_skipping(m);
    CHECK(s.ok);
    CHECK(s.direction == std::vector<int>{+1, -1, 0});

    auto bad = m;
    bad.add_state("p");
    bad.add("p", "B", "p", "B", +1);
    bad.transitions[0].to = bad.states.find("p");
    auto sb = is_blank_skipping(bad);
    CHECK_FALSE(sb.ok);
    CHECK(sb.transition == 0);

    auto wide = m;
    wide.add_symbol("F", 2);
    CHECK_FALSE(is_blank_skipping(wide).ok);
}

TEST_CASE("ideal shape") {
    auto m = PushdownAutomaton::with_input({"a", "b"});
    m.add_stack_symbol("A");
    m.add_stack_symbol("B");
    m.add_state("q");
    m.add_state("p");
    m.add_state("acc", true);
    m.add("q", "a", "⊥", "q", "A ⊥");
    m.add("q", "a", "A", "q", "A A");
    m.add("q", "b", "A", "p", "");
    m.add("p", "$", "⊥", "acc", "⊥");
    CHECK(is_ideal_shape(m).ok);

    auto bad = m;
    bad.add("p", "λ", "A", "p", "B B");
    auto s = is_ideal_shape(bad);
    CHECK_FALSE(s.ok);
    CHECK(s.transition == 4);

    CHECK(is_ideal_shape(zoo::build_L2_rppda()).ok);
    auto [l1, l2] = zoo::build_dcfl2_witnesses();
    CHECK(is_ideal_shape(l1).ok);
    CHECK(is_ideal_shape(l2).ok);
    CHECK(classify(l1).deterministic);
    CHECK(classify(l2).deterministic);
}

TEST_CASE("every zoo machine validates") {
    for (const auto& e : zoo::catalogue()) {
        CAPTURE(e.name);
        CHECK(check(e.machine).empty());
    }
}

TEST_CASE("generated limited machines validate (1000 seeds)") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        zoo::RandomSpec s;
        s.seed = seed;
        s.k = 2 + seed % 3;
        s.states = 1 + seed % 4;
        s.determinism = seed % 3 == 0 ? "det" : seed % 3 == 1 ? "nondet" : "prob";
        auto m = std::get<LimitedAutomaton>(zoo::random_machine(s));
        CAPTURE(seed);
        CHECK(validate_limited(m).empty());
        if (s.determinism == "det") CHECK(classify(m).deterministic);
    }
}

}
