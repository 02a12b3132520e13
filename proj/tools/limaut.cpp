// limaut: validate, evaluate, transform, compare, decompose and fuzz machine files.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "limaut/decomposition.hpp"
#include "limaut/errors.hpp"
#include "limaut/fuzz.hpp"
#include "limaut/io.hpp"
#include "limaut/parallel.hpp"
#include "limaut/semantics.hpp"
#include "limaut/transforms.hpp"
#include "limaut/validate.hpp"
#include "limaut/zoo.hpp"

namespace fs = std::filesystem;
using namespace limaut;

namespace {

struct Common {
    std::string format = "text";
    int jobs = default_jobs();
    std::size_t max_nodes = 2'000'000;
    long step_cap = 10'000;
    long stack_cap = -1;

    Caps caps() const { return {max_nodes, stack_cap}; }
    bool text() const { return format == "text"; }
};

// ---- reports ---------------------------------------------------------------

class Report {
public:
    Report(std::string command, std::vector<std::string> echo) : start_(std::chrono::steady_clock::now()) {
        doc_["command"] = std::move(command);
        doc_["argv"] = std::move(echo);
        doc_["machines"] = json::object();
    }

    json& operator[](const std::string& key) { return doc_[key]; }
    void machine(const std::string& label, const AnyMachine& m) { doc_["machines"][label] = machine_digest(m); }

    // The digest covers everything except wall time.
    json finish() {
        json out = doc_;
        out["schema"] = "1";
        out["report_digest"] = sha256_hex(out.dump());
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
        out["wall_ms"] = ms.count();
        return out;
    }

private:
    json doc_;
    std::chrono::steady_clock::time_point start_;
};

void emit(const Common& c, Report& r, const std::function<void()>& text) {
    json out = r.finish();
    if (c.text()) {
        text();
        std::cout << "report digest " << out["report_digest"].get<std::string>() << "\n";
    } else {
        std::cout << out.dump(2) << "\n";
    }
}

// ---- machines and words ----------------------------------------------------

ValidationReport validate_any(const AnyMachine& m) {
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

const char* kind_name(const AnyMachine& m) {
    static const char* names[] = {"limited", "pda", "dfa", "transducer"};
    return names[m.index()];
}

template <class T>
const T& expect(const AnyMachine& m, const std::string& what) {
    if (auto p = std::get_if<T>(&m)) return *p;
    static const std::map<std::size_t, std::string> wanted{{0, "limited"}, {1, "pda"}, {2, "dfa"}, {3, "transducer"}};
    throw DomainError("WRONG_KIND", what + " is a " + kind_name(m) + " machine, expected " +
                                        wanted.at(AnyMachine(T{}).index()));
}

// Calls f with the limited automaton or PDA held by m.
template <class F>
auto with_recognizer(const AnyMachine& m, const std::string& what, F&& f) {
    if (auto p = std::get_if<LimitedAutomaton>(&m)) return f(*p);
    if (auto p = std::get_if<PushdownAutomaton>(&m)) return f(*p);
    throw DomainError("WRONG_KIND", what + " is a " + std::string(kind_name(m)) + " machine, expected limited or pda");
}

void print_violations(const ValidationReport& v, const std::string& what) {
    for (const auto& x : v) {
        std::cout << what << ": " << x.condition;
        if (x.transition >= 0) std::cout << " (transition " << x.transition << ")";
        std::cout << " " << x.message << "\n";
    }
}

json violations_json(const ValidationReport& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back({{"condition", x.condition}, {"transition", x.transition}, {"message", x.message}});
    return out;
}

// Loads and validates; violations go to stderr and make the command fail.
struct Loaded {
    std::string path;
    AnyMachine machine;
};

Loaded load_valid(const std::string& path) {
    auto file = load_machine_file(path);
    auto v = validate_any(file.machine);
    if (!v.empty()) {
        for (const auto& x : v) std::cerr << path << ": " << x.condition << " " << x.message << "\n";
        throw DomainError("INVALID_MACHINE", path + " fails validation");
    }
    return {path, std::move(file.machine)};
}

// Whitespace-separated symbols, or greedy longest match against the alphabet.
Word parse_word(const std::string& text, const std::vector<std::string>& alphabet) {
    Word w;
    if (text.find_first_of(" \t") != std::string::npos) {
        std::istringstream in(text);
        for (std::string s; in >> s;) w.push_back(s);
    } else if (text != "ε") {
        for (std::size_t i = 0; i < text.size();) {
            const std::string* best = nullptr;
            for (const auto& a : alphabet)
                if (text.compare(i, a.size(), a) == 0 && (!best || a.size() > best->size())) best = &a;
            if (!best) throw InputError("cannot split input '" + text + "' at position " + std::to_string(i));
            w.push_back(*best);
            i += best->size();
        }
    }
    std::set<std::string> sigma(alphabet.begin(), alphabet.end());
    for (const auto& s : w)
        if (!sigma.count(s)) throw InputError("symbol '" + s + "' is not in the input alphabet");
    return w;
}

std::string show(const Word& w) { return w.empty() ? "ε" : word_to_string(w); }

std::vector<Word> words_for(const std::vector<std::string>& inputs, int upto, const std::vector<std::string>& sigma) {
    if (!inputs.empty() && upto >= 0) throw InputError("give either --input or --upto, not both");
    if (upto >= 0) return words_upto(sigma, upto);
    if (inputs.empty()) throw InputError("give --input or --upto");
    std::vector<Word> ws;
    for (const auto& s : inputs) ws.push_back(parse_word(s, sigma));
    return ws;
}

Mode parse_mode(const std::string& name, const std::string& epsilon) {
    Rational eps = parse_rational(epsilon);
    if (name == "exact") return Mode::exact();
    if (name == "one-sided") return Mode::one_sided(eps);
    if (name == "bounded") return Mode::bounded(eps);
    if (name == "existential") return Mode::existential();
    throw InputError("unknown mode '" + name + "'");
}

std::string opt_rational(const std::optional<Rational>& r, bool infinite) {
    if (r) return format_rational(*r);
    return infinite ? "inf" : "-";
}

// ---- validate --------------------------------------------------------------

struct ValidateOpts {
    std::string file;
};

int cmd_validate(const Common& c, const ValidateOpts& o, Report& r) {
    auto file = load_machine_file(o.file);
    auto v = validate_any(file.machine);
    r.machine(o.file, file.machine);
    r["kind"] = kind_name(file.machine);
    r["violations"] = violations_json(v);
    emit(c, r, [&] {
        if (v.empty()) std::cout << o.file << ": ok (" << kind_name(file.machine) << ")\n";
        print_violations(v, o.file);
    });
    return v.empty() ? 0 : 1;
}

// ---- prob ------------------------------------------------------------------

struct ProbOpts {
    std::string file;
    std::vector<std::string> inputs;
    int upto = -1;
    std::string mode = "exact";
    std::string epsilon = "0";
    std::string oracle;
    bool count_paths = false;
};

int cmd_prob(const Common& c, const ProbOpts& o, Report& r) {
    auto in = load_valid(o.file);
    r.machine(o.file, in.machine);
    const Mode mode = parse_mode(o.mode, o.epsilon);
    std::optional<zoo::LanguageOracle> oracle;
    if (!o.oracle.empty()) oracle = zoo::language(o.oracle);

    struct Row {
        VerdictEntry entry;
        std::optional<PathCount> paths;
    };
    std::vector<Row> rows = with_recognizer(in.machine, o.file, [&](const auto& m) {
        auto ws = words_for(o.inputs, o.upto, input_alphabet(m));
        std::vector<Row> out(ws.size());
        parallel_for(ws.size(), c.jobs, [&](std::size_t i) {
            Row& row = out[i];
            row.entry.word = ws[i];
            row.entry.report = evaluate(m, ws[i], c.caps());
            row.entry.verdict = verdict_of(row.entry.report, mode, &row.entry.margin_violation);
            if (o.count_paths) row.paths = count_accepting_paths(m, ws[i], c.step_cap);
        });
        return out;
    });

    int mismatches = 0, violations = 0;
    json results = json::array();
    for (const auto& row : rows) {
        json j = to_json(row.entry.report);
        j["input"] = word_to_string(row.entry.word);
        j["verdict"] = to_string(row.entry.verdict);
        j["margin_violation"] = row.entry.margin_violation;
        violations += row.entry.margin_violation;
        if (row.paths) j["accepting_paths"] = {{"count", row.paths->count.get_str()}, {"truncated", row.paths->truncated}};
        if (oracle) {
            bool member = oracle->member(row.entry.word);
            j["oracle"] = member;
            mismatches += (row.entry.verdict != (member ? Verdict::Accept : Verdict::Reject));
        }
        results.push_back(std::move(j));
    }
    r["mode"] = o.mode;
    r["epsilon"] = format_rational(mode.epsilon);
    r["results"] = results;
    if (oracle) r["oracle"] = {{"name", o.oracle}, {"mismatches", mismatches}};
    r["margin_violations"] = violations;

    emit(c, r, [&] {
        std::cout << std::left << std::setw(12) << "input" << std::setw(10) << "p_acc" << std::setw(10) << "p_rej"
                  << std::setw(10) << "p_nonhalt" << std::setw(10) << "p_unres" << std::setw(10) << "E[steps]"
                  << "verdict\n";
        for (const auto& row : rows) {
            const auto& p = row.entry.report;
            std::cout << std::left << std::setw(12) << show(row.entry.word) << std::setw(10) << format_rational(p.p_acc)
                      << std::setw(10) << format_rational(p.p_rej) << std::setw(10) << format_rational(p.p_nonhalt)
                      << std::setw(10) << format_rational(p.p_unresolved) << std::setw(10)
                      << opt_rational(p.expected_steps, p.steps_infinite) << to_string(row.entry.verdict);
            if (row.entry.margin_violation) std::cout << " (margin violated)";
            if (row.paths) std::cout << "  paths " << row.paths->count.get_str() << (row.paths->truncated ? "+" : "");
            if (oracle && row.entry.verdict != (oracle->member(row.entry.word) ? Verdict::Accept : Verdict::Reject))
                std::cout << "  ORACLE MISMATCH";
            std::cout << "\n";
        }
        if (oracle) std::cout << "oracle " << o.oracle << ": " << mismatches << " mismatches\n";
    });
    return mismatches || violations ? 1 : 0;
}

// ---- convert ---------------------------------------------------------------

struct ConvertOpts {
    std::string file;
    std::string transform;
    std::string out;
    std::string with;
    std::string dfa;
    std::string epsilon;
    std::string gap;
};

int cmd_convert(const Common& c, const ConvertOpts& o, Report& r) {
    auto in = load_valid(o.file);
    r.machine(o.file, in.machine);
    const std::string& t = o.transform;
    json params = json::object();
    auto limited = [&] { return expect<LimitedAutomaton>(in.machine, o.file); };
    auto second = [&]() -> AnyMachine {
        if (o.with.empty()) throw InputError("--transform " + t + " needs --with");
        auto w = load_valid(o.with);
        r.machine(o.with, w.machine);
        params["with_digest"] = machine_digest(w.machine);
        return w.machine;
    };
    auto rational_param = [&](const std::string& name, const std::string& value, const std::string& fallback) {
        Rational v = parse_rational(value.empty() ? fallback : value);
        params[name] = format_rational(v);
        return v;
    };

    AnyMachine result;
    if (t == "blank-skip") result = to_blank_skipping(limited());
    else if (t == "lpa2-to-ppda") result = lpa2_to_1ppda(limited());
    else if (t == "ppda-to-lpa2") result = ppda_to_lpa2(expect<PushdownAutomaton>(in.machine, o.file));
    else if (t == "annotate-directions") result = annotate_directions(limited());
    else if (t == "amplify") {
        if (o.epsilon.empty() || o.gap.empty()) throw InputError("amplify needs --epsilon and --gap");
        Rational eps = rational_param("epsilon", o.epsilon, "");
        Rational gap = rational_param("gap", o.gap, "");
        params["alpha"] = format_rational(amplification_alpha(eps, gap));
        result = amplify_one_sided(limited(), eps, gap);
    } else if (t == "complement") result = complement_swap(limited());
    else if (t == "union") {
        auto w = second();
        result = union_one_sided({limited(), expect<LimitedAutomaton>(w, o.with)});
    } else if (t == "bounded-or" || t == "bounded-and") {
        auto w = second();
        Rational eps = rational_param("epsilon", o.epsilon, "0");
        const auto& m2 = expect<LimitedAutomaton>(w, o.with);
        result = t == "bounded-or" ? bounded_or(limited(), m2, eps) : bounded_and(limited(), m2, eps);
    } else if (t == "intersect-regular" || t == "union-regular") {
        if (o.dfa.empty()) throw InputError("--transform " + t + " needs --dfa");
        auto d = load_valid(o.dfa);
        r.machine(o.dfa, d.machine);
        params["dfa_digest"] = machine_digest(d.machine);
        const auto& dfa = expect<Dfa>(d.machine, o.dfa);
        result = t == "intersect-regular" ? intersect_regular(limited(), dfa) : union_regular(limited(), dfa);
    } else if (t == "first-traverse") result = first_traverse_transducer(limited());
    else if (t == "residual") result = residual_machine(limited());
    else if (t == "compose") {
        auto w = second();
        result = compose_transducers(expect<RtTransducer>(in.machine, o.file), expect<RtTransducer>(w, o.with));
    } else {
        throw InputError("unknown transform '" + t + "'");
    }

    auto v = validate_any(result);
    if (!v.empty()) {
        print_violations(v, "output");
        throw DomainError("INVALID_OUTPUT", "transform " + t + " produced an invalid machine");
    }
    json prov = provenance_record(t, in.machine, params);
    r["transform"] = t;
    r["parameters"] = params;
    r["output_digest"] = machine_digest(result);
    r["output_kind"] = kind_name(result);

    if (o.out.empty()) {
        std::cout << machine_document(result, prov).dump(2) << "\n";
        return 0;
    }
    save_machine_file(o.out, result, prov);
    r["output"] = o.out;
    emit(c, r, [&] {
        std::cout << "wrote " << o.out << " (" << kind_name(result) << ", digest " << machine_digest(result) << ")\n";
        for (auto it = params.begin(); it != params.end(); ++it)
            std::cout << "  " << it.key() << " = " << it.value().get<std::string>() << "\n";
    });
    return 0;
}

// ---- equiv -----------------------------------------------------------------

struct EquivOpts {
    std::string a, b;
    int upto = 4;
    std::string check = "verdicts";
    std::string mode = "auto";
    std::string epsilon = "0";
};

// Existential for 0/1 weights, exact otherwise, unless a mode is forced.
template <class M>
Mode verdict_mode(const M& m, const EquivOpts& o) {
    if (o.mode != "auto") return parse_mode(o.mode, o.epsilon);
    return has_integral_weights(m) ? Mode::existential() : Mode::exact();
}

int cmd_equiv(const Common& c, const EquivOpts& o, Report& r) {
    if (o.check != "verdicts" && o.check != "probs" && o.check != "paths")
        throw InputError("unknown check '" + o.check + "'");
    auto A = load_valid(o.a);
    auto B = load_valid(o.b);
    r.machine(o.a, A.machine);
    r.machine(o.b, B.machine);

    struct Cell {
        std::string a, b;
        bool differ = false;
    };
    std::vector<Word> words;
    std::vector<Cell> cells = with_recognizer(A.machine, o.a, [&](const auto& ma) {
        return with_recognizer(B.machine, o.b, [&](const auto& mb) {
            auto sa = input_alphabet(ma), sb = input_alphabet(mb);
            if (std::set<std::string>(sa.begin(), sa.end()) != std::set<std::string>(sb.begin(), sb.end()))
                throw DomainError("ALPHABET_MISMATCH", o.a + " and " + o.b + " have different input alphabets");
            const Mode mode_a = verdict_mode(ma, o), mode_b = verdict_mode(mb, o);
            words = words_upto(sa, o.upto);
            std::vector<Cell> out(words.size());
            parallel_for(words.size(), c.jobs, [&](std::size_t i) {
                const Word& w = words[i];
                Cell& cell = out[i];
                if (o.check == "paths") {
                    auto pa = count_accepting_paths(ma, w, c.step_cap), pb = count_accepting_paths(mb, w, c.step_cap);
                    cell.a = pa.count.get_str() + (pa.truncated ? "+" : "");
                    cell.b = pb.count.get_str() + (pb.truncated ? "+" : "");
                } else {
                    auto ra = evaluate(ma, w, c.caps()), rb = evaluate(mb, w, c.caps());
                    if (o.check == "probs") {
                        cell.a = "acc " + format_rational(ra.p_acc) + " rej " + format_rational(ra.p_rej);
                        cell.b = "acc " + format_rational(rb.p_acc) + " rej " + format_rational(rb.p_rej);
                        if (ra.p_unresolved != 0 || rb.p_unresolved != 0) cell.a += " (unresolved)";
                    } else {
                        cell.a = to_string(verdict_of(ra, mode_a));
                        cell.b = to_string(verdict_of(rb, mode_b));
                    }
                }
                cell.differ = cell.a != cell.b || cell.a.find('+') != std::string::npos ||
                              cell.a.find("unresolved") != std::string::npos;
            });
            return out;
        });
    });

    json mismatches = json::array();
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].differ)
            mismatches.push_back({{"input", word_to_string(words[i])}, {"a", cells[i].a}, {"b", cells[i].b}});
    r["check"] = o.check;
    r["upto"] = o.upto;
    r["inputs"] = cells.size();
    r["mismatch_count"] = mismatches.size();
    r["mismatches"] = mismatches;
    r["first_counterexample"] = mismatches.empty() ? json(nullptr) : mismatches[0];

    emit(c, r, [&] {
        std::cout << cells.size() << " inputs up to length " << o.upto << ", check " << o.check << ": "
                  << mismatches.size() << " mismatches\n";
        if (!mismatches.empty()) {
            const auto& m = mismatches[0];
            std::string in = m["input"];
            std::cout << "first counterexample " << (in.empty() ? "ε" : in) << ": " << m["a"].get<std::string>()
                      << " vs " << m["b"].get<std::string>() << "\n";
        }
    });
    return mismatches.empty() ? 0 : 1;
}

// ---- fuzz ------------------------------------------------------------------

struct FuzzOpts {
    FuzzOptions fuzz;
    std::string kind;
};

int cmd_fuzz(const Common& c, FuzzOpts o, Report& r) {
    o.fuzz.jobs = c.jobs;
    if (!o.kind.empty()) {
        const bool pda = o.fuzz.pipeline == "ppda-roundtrip";
        if (o.kind != (pda ? "pda" : "limited"))
            throw InputError("pipeline " + o.fuzz.pipeline + " generates " + (pda ? "pda" : "limited") + " machines");
    }
    auto rep = run_fuzz(o.fuzz);
    r["fuzz"] = to_json(rep);
    r["seeds"] = {{"first", o.fuzz.first_seed}, {"count", o.fuzz.seeds}};
    r["upto"] = o.fuzz.upto;
    r["max_states"] = o.fuzz.max_states;
    emit(c, r, [&] {
        std::cout << "pipeline " << rep.pipeline << ": " << rep.machines << " machines, " << rep.skipped << " skipped, "
                  << rep.comparisons << " comparisons\n";
        if (rep.failure) {
            std::cout << "counterexample: seed " << rep.failure->seed << ", input " << show(rep.failure->word) << "\n  "
                      << rep.failure->detail << "\n  machine " << rep.failure->machine.dump() << "\n";
        } else {
            std::cout << "no counterexample\n";
        }
    });
    return rep.failure ? 1 : 0;
}

// ---- decompose -------------------------------------------------------------

struct DecomposeOpts {
    std::string file;
    int upto = 4;
    std::string transducer_out;
    std::string residual_out;
};

int cmd_decompose(const Common& c, const DecomposeOpts& o, Report& r) {
    auto in = load_valid(o.file);
    r.machine(o.file, in.machine);
    const auto& m = expect<LimitedAutomaton>(in.machine, o.file);
    auto g = first_traverse_transducer(m);
    auto n = residual_machine(m);
    if (!o.transducer_out.empty())
        save_machine_file(o.transducer_out, g, provenance_record("first-traverse", m, json::object()));
    if (!o.residual_out.empty()) save_machine_file(o.residual_out, n, provenance_record("residual", m, json::object()));
    r.machine("first-traverse", g);
    r.machine("residual", n);

    struct Row {
        Word x;
        bool accepted = false, halted = false, ok_length = true, decomposable = false;
        std::optional<bool> pipeline;
        std::size_t outputs = 0;
    };
    auto ws = words_upto(input_alphabet(m), o.upto);
    std::vector<Row> rows(ws.size());
    const Rational half = fraction(1, 2);
    parallel_for(ws.size(), c.jobs, [&](std::size_t i) {
        Row& row = rows[i];
        row.x = ws[i];
        auto outs = evaluate_transducer(g, row.x);
        row.outputs = outs.size();
        for (const auto& [y, count] : outs) row.ok_length &= y.size() == row.x.size() + 2;
        auto run = run_deterministic(m, row.x, c.step_cap);
        row.halted = run.halted;
        row.accepted = run.accepted;
        row.decomposable = decomposable(m, row.x, run);
        if (!outs.empty()) row.pipeline = lfm_membership(reversed(outs), n, half);
    });

    int failures = 0, compared = 0;
    json results = json::array();
    for (const auto& row : rows) {
        bool bad = !row.ok_length || (row.decomposable && row.pipeline != row.accepted);
        failures += bad;
        compared += row.decomposable;
        results.push_back({{"input", word_to_string(row.x)},
                           {"machine", row.halted ? (row.accepted ? "accept" : "reject") : "no halt"},
                           {"pipeline", row.pipeline ? json(*row.pipeline ? "accept" : "reject") : json("no output")},
                           {"decomposable", row.decomposable},
                           {"distinct_outputs", row.outputs},
                           {"output_lengths_ok", row.ok_length}});
    }
    r["upto"] = o.upto;
    r["results"] = results;
    r["compared"] = compared;
    r["failures"] = failures;

    emit(c, r, [&] {
        std::cout << "transducer " << g.num_states() << " states, residual " << n.num_states() << " states (k = " << n.k
                  << ")\n";
        std::cout << std::left << std::setw(12) << "input" << std::setw(10) << "machine" << std::setw(12) << "pipeline"
                  << "note\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = rows[i];
            std::cout << std::left << std::setw(12) << show(row.x) << std::setw(10)
                      << results[i]["machine"].get<std::string>() << std::setw(12)
                      << results[i]["pipeline"].get<std::string>();
            if (!row.ok_length) std::cout << "bad output length";
            else if (!row.decomposable) std::cout << "not decomposable, skipped";
            else if (row.pipeline != row.accepted) std::cout << "MISMATCH";
            std::cout << "\n";
        }
        std::cout << compared << " compared, " << failures << " failures\n";
    });
    return failures ? 1 : 0;
}

// ---- transduce -------------------------------------------------------------

struct TransduceOpts {
    std::string file;
    std::vector<std::string> inputs;
    int upto = -1;
};

int cmd_transduce(const Common& c, const TransduceOpts& o, Report& r) {
    auto in = load_valid(o.file);
    r.machine(o.file, in.machine);
    const auto& t = expect<RtTransducer>(in.machine, o.file);
    auto ws = words_for(o.inputs, o.upto, t.input.names());
    std::vector<OutputMultiset> outs(ws.size());
    parallel_for(ws.size(), c.jobs, [&](std::size_t i) { outs[i] = evaluate_transducer(t, ws[i]); });

    json results = json::array();
    for (std::size_t i = 0; i < ws.size(); ++i) {
        json o2 = json::array();
        for (const auto& [y, count] : outs[i]) o2.push_back({{"output", word_to_string(y)}, {"count", count.get_str()}});
        results.push_back({{"input", word_to_string(ws[i])}, {"outputs", o2}});
    }
    r["results"] = results;
    emit(c, r, [&] {
        for (std::size_t i = 0; i < ws.size(); ++i) {
            std::cout << show(ws[i]) << ":";
            if (outs[i].empty()) std::cout << " (none)";
            for (const auto& [y, count] : outs[i]) std::cout << " " << show(y) << " x" << count.get_str();
            std::cout << "\n";
        }
    });
    return 0;
}

// ---- zoo -------------------------------------------------------------------

struct ZooOpts {
    std::string out;
    bool check = false;
};

int cmd_zoo(const Common& c, const ZooOpts& o, Report& r) {
    const fs::path dir(o.out);
    std::vector<std::string> problems;
    std::ostringstream digests;
    json entries = json::array();
    if (!o.check) fs::create_directories(dir);
    for (const auto& e : zoo::catalogue()) {
        const std::string file = e.name + ".json";
        const std::string digest = machine_digest(e.machine);
        digests << digest << "  " << file << "\n";
        entries.push_back({{"name", e.name}, {"digest", digest}, {"kind", kind_name(e.machine)}});
        if (!o.check) {
            json prov{{"transform", "zoo"},
                      {"parameters", {{"name", e.name}, {"oracle", e.oracle}, {"one_sided", e.one_sided}}}};
            save_machine_file((dir / file).string(), e.machine, prov);
            continue;
        }
        if (!fs::exists(dir / file)) {
            problems.push_back(file + " missing");
            continue;
        }
        auto loaded = load_machine_file((dir / file).string());
        if (machine_digest(loaded.machine) != digest) problems.push_back(file + " differs from the catalogue");
    }
    if (!o.check) {
        std::ofstream(dir / "DIGESTS") << digests.str();
    } else {
        std::ifstream in(dir / "DIGESTS");
        std::stringstream have;
        have << in.rdbuf();
        if (have.str() != digests.str()) problems.push_back("DIGESTS differs from the catalogue");
    }
    r["entries"] = entries;
    r["problems"] = problems;
    emit(c, r, [&] {
        std::cout << entries.size() << " machines " << (o.check ? "checked in " : "written to ") << o.out << "\n";
        for (const auto& p : problems) std::cout << "  " << p << "\n";
    });
    return problems.empty() ? 0 : 1;
}

void add_common(CLI::App* app, Common& c, bool caps) {
    app->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    app->add_option("--jobs", c.jobs, "Worker threads (default LIMAUT_JOBS or 1)")->check(CLI::PositiveNumber);
    if (!caps) return;
    app->add_option("--max-nodes", c.max_nodes, "Configuration graph node cap");
    app->add_option("--step-cap", c.step_cap, "Path length cap for path counting and replay");
    app->add_option("--stack-cap", c.stack_cap, "Stack height cap (-1: default per machine)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Workbench for limited automata and pushdown automata"};
    app.require_subcommand(1);
    Common common;
    std::function<int(Report&)> run;
    std::string name;

    ValidateOpts vo;
    auto* v = app.add_subcommand("validate", "Check a machine file against its well-formedness conditions");
    v->add_option("file", vo.file)->required();
    add_common(v, common, false);
    v->callback([&] { name = "validate"; run = [&](Report& r) { return cmd_validate(common, vo, r); }; });

    ProbOpts po;
    auto* p = app.add_subcommand("prob", "Exact acceptance probabilities and verdicts");
    p->add_option("file", po.file)->required();
    p->add_option("--input", po.inputs, "Input word (repeatable)");
    p->add_option("--upto", po.upto, "All inputs up to this length");
    p->add_option("--mode", po.mode, "Verdict rule")->check(CLI::IsMember({"exact", "one-sided", "bounded", "existential"}));
    p->add_option("--epsilon", po.epsilon, "Error bound for one-sided and bounded modes");
    p->add_option("--oracle", po.oracle, "Compare verdicts with a named language");
    p->add_flag("--count-paths", po.count_paths, "Also count accepting paths");
    add_common(p, common, true);
    p->callback([&] { name = "prob"; run = [&](Report& r) { return cmd_prob(common, po, r); }; });

    ConvertOpts co;
    auto* cv = app.add_subcommand("convert", "Apply a transform and write the resulting machine");
    cv->add_option("file", co.file)->required();
    cv->add_option("--transform", co.transform)->required();
    cv->add_option("-o,--out", co.out, "Output file (default: print the document)");
    cv->add_option("--with", co.with, "Second machine for binary transforms");
    cv->add_option("--dfa", co.dfa, "DFA for regular products");
    cv->add_option("--epsilon", co.epsilon);
    cv->add_option("--gap", co.gap);
    add_common(cv, common, false);
    cv->callback([&] { name = "convert"; run = [&](Report& r) { return cmd_convert(common, co, r); }; });

    EquivOpts eo;
    auto* eq = app.add_subcommand("equiv", "Compare two machines on every input up to a length");
    eq->add_option("a", eo.a)->required();
    eq->add_option("b", eo.b)->required();
    eq->add_option("--upto", eo.upto);
    eq->add_option("--check", eo.check)->check(CLI::IsMember({"verdicts", "probs", "paths"}));
    eq->add_option("--mode", eo.mode, "Verdict rule for --check verdicts (auto picks per machine)")
        ->check(CLI::IsMember({"auto", "exact", "one-sided", "bounded", "existential"}));
    eq->add_option("--epsilon", eo.epsilon);
    add_common(eq, common, true);
    eq->callback([&] { name = "equiv"; run = [&](Report& r) { return cmd_equiv(common, eo, r); }; });

    FuzzOpts fo;
    auto* fz = app.add_subcommand("fuzz", "Random machines through a transform pipeline");
    fz->add_option("--pipeline", fo.fuzz.pipeline)->required();
    fz->add_option("--kind", fo.kind, "Machine kind the pipeline must generate")->check(CLI::IsMember({"limited", "pda"}));
    fz->add_option("--seeds", fo.fuzz.seeds);
    fz->add_option("--first-seed", fo.fuzz.first_seed);
    fz->add_option("--upto", fo.fuzz.upto);
    fz->add_option("--max-states", fo.fuzz.max_states)->check(CLI::PositiveNumber);
    add_common(fz, common, false);
    fz->callback([&] { name = "fuzz"; run = [&](Report& r) { return cmd_fuzz(common, fo, r); }; });

    DecomposeOpts dco;
    auto* dc = app.add_subcommand("decompose", "Check the transducer and residual machine of a deterministic 3-lda");
    dc->add_option("file", dco.file)->required();
    dc->add_option("--upto", dco.upto);
    dc->add_option("--transducer-out", dco.transducer_out);
    dc->add_option("--residual-out", dco.residual_out);
    add_common(dc, common, true);
    dc->callback([&] { name = "decompose"; run = [&](Report& r) { return cmd_decompose(common, dco, r); }; });

    TransduceOpts to;
    auto* td = app.add_subcommand("transduce", "Output multiset of a transducer");
    td->add_option("file", to.file)->required();
    td->add_option("--input", to.inputs);
    td->add_option("--upto", to.upto);
    add_common(td, common, false);
    td->callback([&] { name = "transduce"; run = [&](Report& r) { return cmd_transduce(common, to, r); }; });

    ZooOpts zo;
    auto* z = app.add_subcommand("zoo", "Write or check the catalogue machine files");
    z->add_option("--out", zo.out)->required();
    z->add_flag("--check", zo.check, "Compare existing files instead of writing");
    add_common(z, common, false);
    z->callback([&] { name = "zoo"; run = [&](Report& r) { return cmd_zoo(common, zo, r); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Report report(name, std::vector<std::string>(argv + 1, argv + argc));
        return run(report);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
