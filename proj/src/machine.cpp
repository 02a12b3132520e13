#include "limaut/machine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace limaut {

std::string word_to_string(const Word& w) {
    bool single = std::all_of(w.begin(), w.end(), [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single && i > 0) out += ' ';
        out += w[i];
    }
    return out;
}

Word reversed(Word w) {
    std::reverse(w.begin(), w.end());
    return w;
}

int NameTable::add(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    int id = size();
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
}

int NameTable::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

namespace {

int need(const NameTable& t, const std::string& name, const char* what) {
    int id = t.find(name);
    if (id < 0) throw InputError(std::string("unknown ") + what + " \"" + name + "\"");
    return id;
}

}  // namespace

LimitedAutomaton LimitedAutomaton::with_input(int k, const std::vector<std::string>& input) {
    LimitedAutomaton m;
    m.k = k;
    for (const auto& s : input) m.add_symbol(s, 0);
    m.left_end = m.add_symbol(kLeftEnd, k);
    m.right_end = m.add_symbol(kRightEnd, k);
    return m;
}

std::vector<int> LimitedAutomaton::input_symbols() const { return symbols_at(0); }

std::vector<int> LimitedAutomaton::symbols_at(int lvl) const {
    std::vector<int> out;
    for (int s = 0; s < num_symbols(); ++s)
        if (level[s] == lvl) out.push_back(s);
    return out;
}

int LimitedAutomaton::add_state(const std::string& name, bool acc, bool rej) {
    int before = states.size();
    int id = states.add(name);
    if (id == before) {
        accepting.push_back(acc);
        rejecting.push_back(rej);
    } else {
        accepting[id] = accepting[id] || acc;
        rejecting[id] = rejecting[id] || rej;
    }
    return id;
}

int LimitedAutomaton::add_symbol(const std::string& name, int lvl) {
    int before = symbols.size();
    int id = symbols.add(name);
    if (id == before) level.push_back(lvl);
    return id;
}

void LimitedAutomaton::add(int from, int read, int to, int write, int dir, Rational prob) {
    transitions.push_back({from, read, to, write, dir, std::move(prob)});
}

void LimitedAutomaton::add(const std::string& from, const std::string& read, const std::string& to,
                           const std::string& write, int dir, Rational prob) {
    add(need(states, from, "state"), need(symbols, read, "symbol"), need(states, to, "state"),
        need(symbols, write, "symbol"), dir, std::move(prob));
}

std::vector<std::vector<int>> LimitedAutomaton::index() const {
    std::vector<std::vector<int>> idx(static_cast<std::size_t>(num_states()) * num_symbols());
    for (int t = 0; t < static_cast<int>(transitions.size()); ++t) {
        const auto& tr = transitions[t];
        idx[static_cast<std::size_t>(tr.from) * num_symbols() + tr.read].push_back(t);
    }
    return idx;
}

PushdownAutomaton PushdownAutomaton::with_input(const std::vector<std::string>& input,
                                                const std::string& bottom) {
    PushdownAutomaton m;
    for (const auto& s : input) m.input.add(s);
    m.stack.add(bottom);
    return m;
}

std::string PushdownAutomaton::read_name(int read) const {
    if (read == kReadLambda) return kLambda;
    if (read == left_read()) return kLeftEnd;
    if (read == right_read()) return kRightEnd;
    return input.name(read);
}

int PushdownAutomaton::read_id(const std::string& name) const {
    if (name == kLambda || name.empty()) return kReadLambda;
    if (name == kLeftEnd) return left_read();
    if (name == kRightEnd) return right_read();
    int id = input.find(name);
    return id < 0 ? -2 : id;
}

int PushdownAutomaton::add_state(const std::string& name, bool acc, bool rej) {
    int before = states.size();
    int id = states.add(name);
    if (id == before) {
        accepting.push_back(acc);
        rejecting.push_back(rej);
    } else {
        accepting[id] = accepting[id] || acc;
        rejecting[id] = rejecting[id] || rej;
    }
    return id;
}

void PushdownAutomaton::add(int from, int read, int top, int to, std::vector<int> push, Rational prob) {
    transitions.push_back({from, read, top, to, std::move(push), std::move(prob)});
}

void PushdownAutomaton::add(const std::string& from, const std::string& read, const std::string& top,
                            const std::string& to, const std::string& push, Rational prob) {
    int r = read_id(read);
    if (r == -2) throw InputError("unknown input symbol \"" + read + "\"");
    add(need(states, from, "state"), r, need(stack, top, "stack symbol"), need(states, to, "state"),
        parse_push(push), std::move(prob));
}

std::vector<int> PushdownAutomaton::parse_push(const std::string& text) const {
    std::vector<int> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        int id = stack.find(tok);
        if (id >= 0) {
            out.push_back(id);
            continue;
        }
        // Unseparated run of symbol names: split by longest match.
        std::size_t pos = 0;
        while (pos < tok.size()) {
            int best = -1;
            std::size_t best_len = 0;
            for (int s = 0; s < stack.size(); ++s) {
                const auto& nm = stack.name(s);
                if (nm.size() > best_len && tok.compare(pos, nm.size(), nm) == 0) {
                    best = s;
                    best_len = nm.size();
                }
            }
            if (best < 0) throw InputError("unknown stack symbol in push string \"" + text + "\"");
            out.push_back(best);
            pos += best_len;
        }
    }
    return out;
}

std::string PushdownAutomaton::format_push(const std::vector<int>& push) const {
    std::string out;
    for (std::size_t i = 0; i < push.size(); ++i) {
        if (i) out += ' ';
        out += stack.name(push[i]);
    }
    return out;
}

std::vector<std::vector<int>> PushdownAutomaton::index() const {
    std::vector<std::vector<int>> idx(static_cast<std::size_t>(num_states()) * (num_reads() + 1) *
                                      stack.size());
    for (int t = 0; t < static_cast<int>(transitions.size()); ++t) {
        const auto& tr = transitions[t];
        idx[index_key(tr.from, tr.read, tr.top)].push_back(t);
    }
    return idx;
}

int Dfa::add_state(const std::string& name, bool acc) {
    int before = states.size();
    int id = states.add(name);
    if (id == before) {
        accepting.push_back(acc);
        next.emplace_back(input.size(), -1);
    }
    return id;
}

void Dfa::set(const std::string& from, const std::string& read, const std::string& to) {
    next[need(states, from, "state")][need(input, read, "symbol")] = need(states, to, "state");
}

bool Dfa::accepts(const Word& w) const {
    int q = start;
    for (const auto& s : w) {
        int a = input.find(s);
        if (a < 0) return false;
        q = next[q][a];
        if (q < 0) return false;
    }
    return accepting[q];
}

RtTransducer RtTransducer::with_alphabets(const std::vector<std::string>& input,
                                          const std::vector<std::string>& output) {
    RtTransducer t;
    for (const auto& s : input) t.input.add(s);
    for (const auto& s : output) t.output.add(s);
    return t;
}

std::string RtTransducer::read_name(int read) const {
    if (read == left_read()) return kLeftEnd;
    if (read == right_read()) return kRightEnd;
    return input.name(read);
}

int RtTransducer::read_id(const std::string& name) const {
    if (name == kLeftEnd) return left_read();
    if (name == kRightEnd) return right_read();
    int id = input.find(name);
    return id < 0 ? -2 : id;
}

int RtTransducer::add_state(const std::string& name, bool acc, bool rej) {
    int before = states.size();
    int id = states.add(name);
    if (id == before) {
        accepting.push_back(acc);
        rejecting.push_back(rej);
    }
    return id;
}

void RtTransducer::add(int from, int read, int to, int out) {
    transitions.push_back({from, read, to, out});
}

void RtTransducer::add(const std::string& from, const std::string& read, const std::string& to,
                       const std::string& out) {
    int r = read_id(read);
    if (r == -2) throw InputError("unknown input symbol \"" + read + "\"");
    int o = out.empty() ? -1 : need(output, out, "output symbol");
    add(need(states, from, "state"), r, need(states, to, "state"), o);
}

std::vector<std::vector<int>> RtTransducer::index() const {
    std::vector<std::vector<int>> idx(static_cast<std::size_t>(num_states()) * (input.size() + 2));
    for (int t = 0; t < static_cast<int>(transitions.size()); ++t) {
        const auto& tr = transitions[t];
        idx[static_cast<std::size_t>(tr.from) * (input.size() + 2) + tr.read].push_back(t);
    }
    return idx;
}

std::vector<std::string> input_alphabet(const LimitedAutomaton& m) {
    std::vector<std::string> out;
    for (int s : m.input_symbols()) out.push_back(m.symbols.name(s));
    return out;
}

std::vector<std::string> input_alphabet(const PushdownAutomaton& m) { return m.input.names(); }

std::vector<Word> words_of_length(const std::vector<std::string>& sigma, int n) {
    std::vector<Word> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    if (sigma.empty()) return out;
    std::vector<std::size_t> digits(n, 0);
    while (true) {
        Word w;
        for (auto d : digits) w.push_back(sigma[d]);
        out.push_back(std::move(w));
        int i = n - 1;
        while (i >= 0 && ++digits[i] == sigma.size()) digits[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

std::vector<Word> words_upto(const std::vector<std::string>& sigma, int n) {
    std::vector<Word> out;
    for (int len = 0; len <= n; ++len) {
        auto part = words_of_length(sigma, len);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace limaut
