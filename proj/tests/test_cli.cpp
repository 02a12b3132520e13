#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args) {
    std::string cmd = std::string(LIMAUT_BIN) + " " + args + " 2>&1";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string zoo(const std::string& name) { return std::string(LIMAUT_ZOO_DIR) + "/" + name + ".json"; }

fs::path scratch() {
    fs::path d = fs::temp_directory_path() / ("limaut-cli-" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
}

nlohmann::json json_of(const Result& r) { return nlohmann::json::parse(r.out); }

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate") {
    CHECK(run("validate " + zoo("Z_L1P_2LDA")).code == 0);
    auto d = scratch();
    write(d / "stoch.json", R"({"kind":"limited","k":2,"states":["q","acc"],"accept":["acc"],"reject":[],
        "initial":"q","alphabet":{"input":["a"],"levels":[["A1"],[]]},
        "transitions":[{"from":"q","read":"a","to":"q","write":"A1","dir":1,"prob":"3/4"}]})");
    auto r = run("validate " + (d / "stoch.json").string());
    CHECK(r.code == 1);
    CHECK(r.out.find("STOCH") != std::string::npos);
    write(d / "zero.json", R"({"kind":"limited","k":2,"states":["q"],"accept":[],"reject":[],
        "initial":"q","alphabet":{"input":["a"],"levels":[["A1"],[]]},
        "transitions":[{"from":"q","read":"a","to":"q","write":"A1","dir":1,"prob":"1/0"}]})");
    CHECK(run("validate " + (d / "zero.json").string()).code == 2);
    CHECK(run("validate /nonexistent.json").code == 2);
}

TEST_CASE("prob") {
    auto r = run("prob " + zoo("Z_L2PPDA") + " --input abc --format json");
    REQUIRE(r.code == 0);
    auto j = json_of(r);
    CHECK(j["schema"] == "1");
    CHECK(j["results"][0]["p_acc"] == "1/2");

    auto det = json_of(run("prob " + zoo("Z_L1P_2LDA") + " --input aabbc --input abc --format json"));
    for (const auto& e : det["results"]) CHECK((e["p_acc"] == "0" || e["p_acc"] == "1"));

    CHECK(run("prob " + zoo("Z_L1P_2LDA") + " --upto 6 --oracle L1p").code == 0);
    CHECK(run("prob " + zoo("Z_L1P_2LDA") + " --upto 4 --oracle L2p").code == 1);
    CHECK(run("prob " + zoo("Z_L2PPDA") + " --upto 5 --mode one-sided --epsilon 1/2 --oracle L2").code == 0);
    CHECK(run("prob " + zoo("Z_L1P_2LDA") + " --input zz").code == 2);
    CHECK(run("prob " + zoo("Z_L1P_2LDA")).code == 2);
    CHECK(run("prob " + zoo("Z_L1P_2LDA") + " --mode sideways --input a").code == 2);
}

TEST_CASE("convert") {
    auto d = scratch();
    auto bs = (d / "bs.json").string();
    REQUIRE(run("convert " + zoo("Z_L1P_2LDA") + " --transform blank-skip -o " + bs).code == 0);
    CHECK(run("validate " + bs).code == 0);
    auto doc = nlohmann::json::parse(std::ifstream(bs));
    CHECK(doc["provenance"]["transform"] == "blank-skip");
    CHECK(run("equiv " + zoo("Z_L1P_2LDA") + " " + bs + " --check probs --upto 6").code == 0);

    auto r = run("convert " + zoo("Z_L1P_2LDA") + " --transform lpa2-to-ppda -o " + (d / "x.json").string());
    CHECK(r.code == 1);
    CHECK(r.out.find("NOT_BLANK_SKIPPING") != std::string::npos);

    auto lifted = (d / "l2.json").string(), amp = (d / "amp.json").string();
    REQUIRE(run("convert " + zoo("Z_L2PPDA") + " --transform ppda-to-lpa2 -o " + lifted).code == 0);
    REQUIRE(run("convert " + lifted + " --transform amplify --epsilon 1/2 --gap 1/8 -o " + amp).code == 0);
    auto a = nlohmann::json::parse(std::ifstream(amp));
    CHECK(a["provenance"]["parameters"]["alpha"] == "1/4");
    CHECK(run("convert " + lifted + " --transform amplify --epsilon 1/2 --gap 0 -o " + amp).code == 1);
    CHECK(run("convert " + lifted + " --transform nope").code == 2);
}

TEST_CASE("equiv") {
    CHECK(run("equiv " + zoo("Z_L2P_2LDA") + " " + zoo("Z_L2P_2LDA") + " --upto 4").code == 0);
    auto r = run("equiv " + zoo("Z_L1P_2LDA") + " " + zoo("Z_L2P_2LDA") + " --upto 4 --format json");
    CHECK(r.code == 1);
    auto j = json_of(r);
    bool abcc = false;
    for (const auto& m : j["mismatches"]) abcc |= m["input"] == "abcc";
    CHECK(abcc);
    CHECK(j["first_counterexample"]["input"] == "a");
    CHECK(run("equiv " + zoo("Z_L1P_2LDA") + " " + zoo("Z_SOMEA_2LNA") + " --upto 2").code == 1);
    CHECK(run("equiv " + zoo("Z_SOMEA_2LNA") + " " + zoo("Z_SOMEA_2LNA") + " --check paths --upto 4").code == 0);
}

TEST_CASE("fuzz") {
    CHECK(run("fuzz --pipeline blank-skip --seeds 100 --upto 4").code == 0);
    auto a = json_of(run("fuzz --pipeline ppda-roundtrip --seeds 20 --format json"));
    auto b = json_of(run("fuzz --pipeline ppda-roundtrip --seeds 20 --format json"));
    CHECK(a["report_digest"] == b["report_digest"]);
    CHECK(run("fuzz --pipeline nope").code == 1);
    CHECK(run("fuzz --pipeline blank-skip --kind pda").code == 2);
}

TEST_CASE("decompose and transduce") {
    auto d = scratch();
    auto g = (d / "g.json").string();
    CHECK(run("decompose " + zoo("Z_TURN_3LDA") + " --upto 3 --transducer-out " + g).code == 0);
    auto t = json_of(run("transduce " + g + " --input ab --format json"));
    CHECK(t["results"][0]["outputs"].size() == 2);
    CHECK(run("decompose " + zoo("Z_L1P_2LDA")).code == 1);
}

TEST_CASE("zoo files are up to date") {
    CHECK(run("zoo --out " + std::string(LIMAUT_ZOO_DIR) + " --check").code == 0);
    auto d = scratch() / "zoo";
    CHECK(run("zoo --out " + d.string()).code == 0);
    CHECK(run("zoo --out " + d.string() + " --check").code == 0);
}

TEST_CASE("help and usage errors") {
    CHECK(run("--help").code == 0);
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
}

}
