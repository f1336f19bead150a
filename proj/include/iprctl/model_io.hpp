#pragma once

// JSON model files.
//
//   {
//     "schema_version": 1,
//     "atoms": ["start", "try", ...],
//     "states": [{"id": "start", "labels": ["start"], "reward": 1}, ...],
//     "horizon": 6,
//     "initial": "start"                       (or {"<state>": prob, ...})
//     "transitions": {
//       "start": {"probs": {"try": 1.0}},
//       "try":   {"contaminate": {"center": {"delivered": 0.9, "lost": 0.1}, "eps": 0.01}},
//       "x":     {"intervals": {"a": [0.1, 0.3], "b": [0.7, 0.9]}},
//       "y":     {"vertices": [{"a": 1.0}, {"b": 1.0}]}
//     }
//   }
//
// Rewards are optional but must be given for all states or none. Unlisted
// target states in a row have probability zero.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "iprctl/model.hpp"

namespace iprctl::io {

inline constexpr int kSchemaVersion = 1;

using WeightMap = std::map<std::string, double>;

namespace row {

struct Probs {
    WeightMap probs;
    bool operator==(const Probs&) const = default;
};
struct Intervals {
    std::map<std::string, ProbabilityInterval> intervals;
    bool operator==(const Intervals&) const = default;
};
struct Vertices {
    std::vector<WeightMap> vertices;
    bool operator==(const Vertices&) const = default;
};
/// Linear-vacuous contamination of `center`; the support is the key set of `center`.
struct Contaminate {
    WeightMap center;
    double eps = 0.0;
    bool operator==(const Contaminate&) const = default;
};

}  // namespace row

using RowSpec = std::variant<row::Probs, row::Intervals, row::Vertices, row::Contaminate>;

struct StateSpec {
    std::string id;
    std::vector<std::string> labels;
    std::optional<Reward> reward;
    bool operator==(const StateSpec&) const = default;
};

/// Initial state id or a distribution over state ids.
using InitialDoc = std::variant<std::string, WeightMap>;

struct ModelDocument {
    int schema_version = kSchemaVersion;
    std::vector<std::string> atoms;
    std::vector<StateSpec> states;
    std::optional<std::size_t> horizon;
    std::optional<InitialDoc> initial;
    std::map<std::string, RowSpec> transitions;

    bool operator==(const ModelDocument&) const = default;
};

/// Throws SchemaError naming the offending field path.
ModelDocument parse_document(const nlohmann::json& json);
nlohmann::json to_json(const ModelDocument& doc);

/// Throws FileNotFound or SchemaError.
ModelDocument read_document(const std::filesystem::path& path);
void write_document(const ModelDocument& doc, const std::filesystem::path& path);

/// Validates and expands a document into a model. Row failures are reported
/// as IncoherentCredalSet (or the credal-core error) naming the state.
TransitionModel build_model(const ModelDocument& doc);

TransitionModel load_model(const std::filesystem::path& path);
void save_model(const ModelDocument& doc, const std::filesystem::path& path);

/// Copy of `doc` whose contamination rows all use `eps`.
ModelDocument with_contamination(ModelDocument doc, double eps);

}  // namespace iprctl::io
