#include <doctest.h>

#include "limaut/errors.hpp"
#include "limaut/io.hpp"
#include "limaut/zoo.hpp"

using namespace limaut;

TEST_SUITE("core") {

TEST_CASE("rationals parse to lowest terms") {
    CHECK(parse_rational("2/4") == fraction(1, 2));
    CHECK(format_rational(parse_rational("2/4")) == "1/2");
    CHECK(format_rational(parse_rational("-3/6")) == "-1/2");
    CHECK(format_rational(parse_rational("6/3")) == "2");
    CHECK(format_rational(parse_rational("0")) == "0");
    CHECK(parse_rational("2/4").get_den() == 2);
}

TEST_CASE("malformed rationals are input errors") {
    for (const char* bad : {"1/0", "0.5", "", "a/2", "1//2", "1/-0"}) CHECK_THROWS_AS(parse_rational(bad), InputError);
}

TEST_CASE("probability range") {
    CHECK(is_probability(0));
    CHECK(is_probability(1));
    CHECK(is_probability(fraction(3, 4)));
    CHECK_FALSE(is_probability(fraction(5, 4)));
    CHECK_FALSE(is_probability(fraction(-1, 4)));
}

TEST_CASE("name tables intern once") {
    NameTable t;
    CHECK(t.add("x") == 0);
    CHECK(t.add("y") == 1);
    CHECK(t.add("x") == 0);
    CHECK(t.find("z") == -1);
    CHECK(t.size() == 2);
}

TEST_CASE("words are ordered by length then alphabet position") {
    auto ws = words_upto({"b", "a"}, 2);
    REQUIRE(ws.size() == 7);
    CHECK(ws[0].empty());
    CHECK(ws[1] == Word{"b"});
    CHECK(ws[2] == Word{"a"});
    CHECK(ws[3] == Word{"b", "b"});
    CHECK(ws[6] == Word{"a", "a"});
    CHECK(words_of_length({"a", "b", "c"}, 3).size() == 27);
}

TEST_CASE("level assignment of the endmarkers") {
    auto m = LimitedAutomaton::with_input(3, {"a", "b"});
    CHECK(m.level[m.left_end] == 3);
    CHECK(m.level[m.right_end] == 3);
    CHECK(m.input_symbols().size() == 2);
    CHECK(m.symbols_at(3).size() == 2);
}

TEST_CASE("every zoo machine survives a JSON round trip") {
    for (const auto& e : zoo::catalogue()) {
        CAPTURE(e.name);
        json doc = to_json(e.machine);
        AnyMachine back = machine_from_json(json::parse(doc.dump()));
        CHECK(back == e.machine);
        CHECK(machine_digest(back) == machine_digest(e.machine));
    }
}

TEST_CASE("random machines survive a JSON round trip") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        zoo::RandomSpec s;
        s.seed = seed;
        s.kind = seed % 3 == 0 ? "pda" : seed % 3 == 1 ? "limited" : "transducer";
        s.determinism = seed % 2 && s.kind != "transducer" ? "prob" : "nondet";
        AnyMachine m = zoo::random_machine(s);
        CAPTURE(seed);
        CHECK(machine_from_json(to_json(m)) == m);
    }
}

TEST_CASE("machine documents carry provenance separately from the digest") {
    auto m = zoo::l1p_2lda();
    json prov = provenance_record("complement", m, {{"x", "1"}});
    json doc = machine_document(m, prov);
    CHECK(doc["provenance"]["transform"] == "complement");
    CHECK(doc["provenance"]["source_digest"] == machine_digest(m));
    CHECK(machine_from_json(doc) == AnyMachine(m));
}

TEST_CASE("sha256 of a known string") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("malformed documents are input errors") {
    CHECK_THROWS_AS(machine_from_json(json::parse(R"({"kind":"limited"})")), InputError);
    CHECK_THROWS_AS(machine_from_json(json::parse(R"({"kind":"tape"})")), InputError);
    CHECK_THROWS_AS(load_machine_file("/nonexistent/file.json"), InputError);
}

}
