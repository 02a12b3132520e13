#pragma once

#include <string>

#include <json.hpp>

#include "limaut/machine.hpp"

namespace limaut {

using json = nlohmann::json;

json to_json(const LimitedAutomaton& m);
json to_json(const PushdownAutomaton& m);
json to_json(const Dfa& d);
json to_json(const RtTransducer& t);
json to_json(const AnyMachine& m);

// Throws InputError on malformed documents.
AnyMachine machine_from_json(const json& doc);

struct MachineFile {
    AnyMachine machine;
    json provenance;  // null when absent
};

MachineFile load_machine_file(const std::string& path);
void save_machine_file(const std::string& path, const AnyMachine& m, const json& provenance = nullptr);

// Document written to disk: the machine plus an optional provenance record.
json machine_document(const AnyMachine& m, const json& provenance = nullptr);

std::string sha256_hex(const std::string& bytes);
// Digest of the canonical (sorted-key, compact) machine document without provenance.
std::string machine_digest(const AnyMachine& m);

json provenance_record(const std::string& transform, const AnyMachine& source, const json& parameters);

}  // namespace limaut
