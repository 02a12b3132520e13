// Seeded differential testing of the transforms against their sources.

#include "limaut/fuzz.hpp"

#include "limaut/decomposition.hpp"
#include "limaut/errors.hpp"
#include "limaut/io.hpp"
#include "limaut/parallel.hpp"
#include "limaut/semantics.hpp"
#include "limaut/transforms.hpp"
#include "limaut/validate.hpp"
#include "limaut/zoo.hpp"

namespace limaut {

namespace {

struct SeedResult {
    bool skipped = false;
    std::size_t comparisons = 0;
    std::optional<FuzzFailure> failure;
};

FuzzFailure fail(const Word& w, std::string detail) {
    FuzzFailure f;
    f.word = w;
    f.detail = std::move(detail);
    return f;
}

// Exact probabilities, or existence of an accepting path for 0/1 weights.
template <class A, class B>
std::optional<FuzzFailure> compare(const A& a, const B& b, int upto, bool existential, std::size_t& count) {
    for (const auto& w : words_upto(input_alphabet(a), upto)) {
        ++count;
        auto ra = evaluate(a, w), rb = evaluate(b, w);
        if (existential) {
            auto va = verdict_of(ra, Mode::existential()), vb = verdict_of(rb, Mode::existential());
            if (va != vb) return fail(w, "verdict " + to_string(va) + " vs " + to_string(vb));
        } else if (ra.p_acc != rb.p_acc || ra.p_rej != rb.p_rej) {
            return fail(w, "p_acc " + format_rational(ra.p_acc) + " vs " + format_rational(rb.p_acc) + ", p_rej " +
                               format_rational(ra.p_rej) + " vs " + format_rational(rb.p_rej));
        }
    }
    return std::nullopt;
}

template <class T>
T mutated(T m, const Mutation& mutate) {
    if (!mutate) return m;
    AnyMachine any = std::move(m);
    mutate(any);
    return std::get<T>(std::move(any));
}

std::optional<FuzzFailure> invalid(const ValidationReport& v, const std::string& what) {
    if (v.empty()) return std::nullopt;
    return fail({}, what + " fails validation: " + v.front().condition + " " + v.front().message);
}

zoo::RandomSpec spec_for(const FuzzOptions& o, std::uint64_t seed) {
    zoo::RandomSpec s;
    s.seed = seed;
    s.input_symbols = 2;
    s.work_symbols = 1;
    s.states = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(o.max_states));
    if (o.pipeline == "ppda-roundtrip") {
        static const char* kinds[] = {"det", "nondet", "prob"};
        s.kind = "pda";
        s.work_symbols = 2;
        s.determinism = kinds[seed % 3];
    } else {
        s.kind = "limited";
        s.k = o.pipeline == "decompose" ? 3 : 2;
        s.determinism = o.pipeline == "decompose" || seed % 2 == 0 ? "det" : "nondet";
    }
    return s;
}

SeedResult blank_skip(const LimitedAutomaton& m, const FuzzOptions& o, const Mutation& mutate, bool roundtrip) {
    SeedResult r;
    const bool existential = !classify(m).deterministic;
    LimitedAutomaton bs;
    try {
        bs = to_blank_skipping(m);
    } catch (const DomainError& e) {
        if (e.code != "TOO_LARGE") throw;
        r.skipped = true;
        return r;
    }
    if (!roundtrip) {
        bs = mutated(std::move(bs), mutate);
        if ((r.failure = invalid(validate_limited(bs), "blank-skip image"))) return r;
        if (auto shape = is_blank_skipping(bs); !shape.ok) {
            r.failure = fail({}, "image is not blank-skipping: " + shape.witness);
            return r;
        }
        r.failure = compare(m, bs, o.upto, existential, r.comparisons);
        return r;
    }
    auto pda = mutated(lpa2_to_1ppda(bs), mutate);
    if ((r.failure = invalid(validate_pda(pda), "pushdown image"))) return r;
    r.failure = compare(m, pda, o.upto, existential, r.comparisons);
    return r;
}

SeedResult ppda_roundtrip(const PushdownAutomaton& m, const FuzzOptions& o, const Mutation& mutate) {
    SeedResult r;
    if (!is_ideal_shape(m).ok) {
        r.skipped = true;
        return r;
    }
    const bool existential = !classify(m).deterministic && has_integral_weights(m);
    auto lpa = mutated(ppda_to_lpa2(m), mutate);
    if ((r.failure = invalid(validate_limited(lpa), "2-limited image"))) return r;
    if ((r.failure = compare(m, lpa, o.upto, existential, r.comparisons))) return r;
    auto back = lpa2_to_1ppda(lpa);
    if ((r.failure = invalid(validate_pda(back), "round-trip image"))) return r;
    r.failure = compare(m, back, o.upto, existential, r.comparisons);
    return r;
}

// Verdicts are compared on inputs where the run meets the decomposition's
// preconditions; output lengths are checked everywhere.
SeedResult decompose(const LimitedAutomaton& m, const FuzzOptions& o, const Mutation& mutate) {
    SeedResult r;
    auto g = first_traverse_transducer(m);
    auto n = mutated(residual_machine(m), mutate);
    if ((r.failure = invalid(validate_limited(n), "residual machine"))) return r;
    const Rational half = fraction(1, 2);
    for (const auto& x : words_upto(input_alphabet(m), o.upto)) {
        auto outs = evaluate_transducer(g, x);
        for (const auto& [y, c] : outs)
            if (y.size() != x.size() + 2) {
                r.failure = fail(x, "transducer output of length " + std::to_string(y.size()));
                return r;
            }
        auto run = run_deterministic(m, x);
        if (!decomposable(m, x, run)) continue;
        ++r.comparisons;
        bool got = lfm_membership(reversed(outs), n, half);
        if (got != run.accepted) {
            r.failure = fail(x, std::string("pipeline says ") + (got ? "accept" : "reject") + ", machine " +
                                    (run.accepted ? "accepts" : "rejects"));
            return r;
        }
    }
    return r;
}

}  // namespace

FuzzReport run_fuzz(const FuzzOptions& o, const Mutation& mutate) {
    const std::string& p = o.pipeline;
    if (p != "blank-skip" && p != "lpa2-roundtrip" && p != "ppda-roundtrip" && p != "decompose")
        throw DomainError("UNKNOWN_PIPELINE", "no pipeline named '" + p + "'");
    std::vector<SeedResult> results(o.seeds < 0 ? 0 : o.seeds);
    parallel_for(results.size(), o.jobs, [&](std::size_t i) {
        const std::uint64_t seed = o.first_seed + i;
        AnyMachine m = zoo::random_machine(spec_for(o, seed));
        SeedResult& r = results[i];
        if (p == "ppda-roundtrip") r = ppda_roundtrip(std::get<PushdownAutomaton>(m), o, mutate);
        else if (p == "decompose") r = decompose(std::get<LimitedAutomaton>(m), o, mutate);
        else r = blank_skip(std::get<LimitedAutomaton>(m), o, mutate, p == "lpa2-roundtrip");
        if (r.failure) {
            r.failure->seed = seed;
            r.failure->machine = to_json(m);
        }
    });

    FuzzReport rep;
    rep.pipeline = p;
    for (auto& r : results) {
        ++rep.machines;
        if (r.skipped) ++rep.skipped;
        rep.comparisons += r.comparisons;
        if (r.failure && !rep.failure) rep.failure = std::move(r.failure);
    }
    return rep;
}

nlohmann::json to_json(const FuzzReport& r) {
    nlohmann::json j{{"pipeline", r.pipeline},
                     {"machines", r.machines},
                     {"skipped", r.skipped},
                     {"comparisons", r.comparisons},
                     {"counterexample", nullptr}};
    if (r.failure)
        j["counterexample"] = {{"seed", r.failure->seed},
                               {"input", word_to_string(r.failure->word)},
                               {"detail", r.failure->detail},
                               {"machine", r.failure->machine}};
    return j;
}

}  // namespace limaut
