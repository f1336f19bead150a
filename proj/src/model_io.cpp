#include "iprctl/model_io.hpp"

#include <fstream>
#include <set>

#include "iprctl/error.hpp"

namespace iprctl::io {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
    throw Error(ErrorCode::SchemaError, field + ": " + what);
}

void only_keys(const json& object, const std::string& field, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : object.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            schema_error(field + "." + key, "unexpected field");
        }
    }
}

const json& member(const json& object, const std::string& field, const char* key) {
    if (!object.contains(key)) schema_error(field + "." + key, "missing");
    return object.at(key);
}

std::string as_string(const json& value, const std::string& field) {
    if (!value.is_string()) schema_error(field, "expected a string");
    return value.get<std::string>();
}

double as_number(const json& value, const std::string& field) {
    if (!value.is_number()) schema_error(field, "expected a number");
    return value.get<double>();
}

std::uint64_t as_natural(const json& value, const std::string& field) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    // Values built in memory are signed even when non-negative.
    if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
        schema_error(field, "expected a non-negative integer");
    }
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
}

WeightMap as_weights(const json& value, const std::string& field) {
    if (!value.is_object()) schema_error(field, "expected an object mapping states to numbers");
    WeightMap out;
    for (const auto& [key, weight] : value.items()) out[key] = as_number(weight, field + "." + key);
    return out;
}

RowSpec parse_row(const json& value, const std::string& field) {
    if (!value.is_object() || value.size() != 1) {
        schema_error(field, "expected exactly one of probs, intervals, vertices, contaminate");
    }
    const auto& [kind, body] = *value.items().begin();
    const std::string path = field + "." + kind;
    if (kind == "probs") return row::Probs{as_weights(body, path)};
    if (kind == "intervals") {
        if (!body.is_object()) schema_error(path, "expected an object");
        row::Intervals out;
        for (const auto& [key, pair] : body.items()) {
            const std::string p = path + "." + key;
            if (!pair.is_array() || pair.size() != 2) schema_error(p, "expected [lower, upper]");
            out.intervals[key] = {as_number(pair[0], p + "[0]"), as_number(pair[1], p + "[1]")};
        }
        return out;
    }
    if (kind == "vertices") {
        if (!body.is_array() || body.empty()) schema_error(path, "expected a non-empty array");
        row::Vertices out;
        for (std::size_t i = 0; i < body.size(); ++i) {
            out.vertices.push_back(as_weights(body[i], path + "[" + std::to_string(i) + "]"));
        }
        return out;
    }
    if (kind == "contaminate") {
        if (!body.is_object()) schema_error(path, "expected an object");
        only_keys(body, path, {"center", "eps"});
        return row::Contaminate{as_weights(member(body, path, "center"), path + ".center"),
                                as_number(member(body, path, "eps"), path + ".eps")};
    }
    schema_error(path, "unknown row kind");
}

json row_to_json(const RowSpec& spec) {
    struct Visitor {
        json operator()(const row::Probs& r) const { return {{"probs", r.probs}}; }
        json operator()(const row::Intervals& r) const {
            json body = json::object();
            for (const auto& [key, iv] : r.intervals) body[key] = json::array({iv.lower, iv.upper});
            return {{"intervals", body}};
        }
        json operator()(const row::Vertices& r) const { return {{"vertices", r.vertices}}; }
        json operator()(const row::Contaminate& r) const {
            return {{"contaminate", {{"center", r.center}, {"eps", r.eps}}}};
        }
    };
    return std::visit(Visitor{}, spec);
}

std::vector<double> dense(const StateSpace& space, const WeightMap& weights, const std::string& field) {
    std::vector<double> out(space.size(), 0.0);
    for (const auto& [id, w] : weights) {
        const auto index = space.find(id);
        if (!index) schema_error(field + "." + id, "undeclared state");
        out[*index] = w;
    }
    return out;
}

CredalSet build_row(const StateSpace& space, const RowSpec& spec, const std::string& field) {
    struct Visitor {
        const StateSpace& space;
        const std::string& field;

        CredalSet operator()(const row::Probs& r) const {
            return CredalSet::point(Pmf::make(dense(space, r.probs, field + ".probs")));
        }
        CredalSet operator()(const row::Intervals& r) const {
            CredalSet::Intervals out(space.size());
            for (const auto& [id, iv] : r.intervals) {
                const auto index = space.find(id);
                if (!index) schema_error(field + ".intervals." + id, "undeclared state");
                out[*index] = iv;
            }
            return CredalSet::from_intervals(std::move(out));
        }
        CredalSet operator()(const row::Vertices& r) const {
            CredalSet::Vertices out;
            for (std::size_t i = 0; i < r.vertices.size(); ++i) {
                out.push_back(Pmf::make(
                    dense(space, r.vertices[i], field + ".vertices[" + std::to_string(i) + "]")));
            }
            return CredalSet::from_vertices(std::move(out));
        }
        CredalSet operator()(const row::Contaminate& r) const {
            StateSet support(space.size());
            for (const auto& [id, w] : r.center) support.insert(space.index(id));
            const Pmf center = Pmf::make(dense(space, r.center, field + ".contaminate.center"));
            return linear_vacuous(center, r.eps, support);
        }
    };
    return std::visit(Visitor{space, field}, spec);
}

}  // namespace

ModelDocument parse_document(const json& root) {
    if (!root.is_object()) schema_error("$", "expected an object");
    only_keys(root, "$", {"schema_version", "atoms", "states", "horizon", "initial", "transitions"});
    ModelDocument doc;

    if (root.contains("schema_version")) {
        const auto version = as_natural(root.at("schema_version"), "$.schema_version");
        if (version != kSchemaVersion) {
            schema_error("$.schema_version", "unsupported version " + std::to_string(version));
        }
        doc.schema_version = static_cast<int>(version);
    }

    const auto& atoms = member(root, "$", "atoms");
    if (!atoms.is_array()) schema_error("$.atoms", "expected an array");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        doc.atoms.push_back(as_string(atoms[i], "$.atoms[" + std::to_string(i) + "]"));
    }

    const auto& states = member(root, "$", "states");
    if (!states.is_array() || states.empty()) schema_error("$.states", "expected a non-empty array");
    for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string field = "$.states[" + std::to_string(i) + "]";
        const auto& entry = states[i];
        if (!entry.is_object()) schema_error(field, "expected an object");
        only_keys(entry, field, {"id", "labels", "reward"});
        StateSpec spec;
        spec.id = as_string(member(entry, field, "id"), field + ".id");
        if (entry.contains("labels")) {
            const auto& labels = entry.at("labels");
            if (!labels.is_array()) schema_error(field + ".labels", "expected an array");
            for (std::size_t j = 0; j < labels.size(); ++j) {
                spec.labels.push_back(as_string(labels[j], field + ".labels[" + std::to_string(j) + "]"));
            }
        }
        if (entry.contains("reward")) spec.reward = as_natural(entry.at("reward"), field + ".reward");
        doc.states.push_back(std::move(spec));
    }

    if (root.contains("horizon")) doc.horizon = as_natural(root.at("horizon"), "$.horizon");

    if (root.contains("initial")) {
        const auto& initial = root.at("initial");
        if (initial.is_string()) {
            doc.initial = initial.get<std::string>();
        } else {
            doc.initial = as_weights(initial, "$.initial");
        }
    }

    const auto& transitions = member(root, "$", "transitions");
    if (!transitions.is_object()) schema_error("$.transitions", "expected an object");
    for (const auto& [id, row] : transitions.items()) {
        doc.transitions[id] = parse_row(row, "$.transitions." + id);
    }
    return doc;
}

json to_json(const ModelDocument& doc) {
    json root = json::object();
    root["schema_version"] = doc.schema_version;
    root["atoms"] = doc.atoms;
    json states = json::array();
    for (const auto& s : doc.states) {
        json entry = {{"id", s.id}, {"labels", s.labels}};
        if (s.reward) entry["reward"] = *s.reward;
        states.push_back(std::move(entry));
    }
    root["states"] = std::move(states);
    if (doc.horizon) root["horizon"] = *doc.horizon;
    if (doc.initial) {
        if (const auto* id = std::get_if<std::string>(&*doc.initial)) {
            root["initial"] = *id;
        } else {
            root["initial"] = std::get<WeightMap>(*doc.initial);
        }
    }
    json transitions = json::object();
    for (const auto& [id, spec] : doc.transitions) transitions[id] = row_to_json(spec);
    root["transitions"] = std::move(transitions);
    return root;
}

ModelDocument read_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path.string() + "'");
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, path.string() + ": " + e.what());
    }
    return parse_document(root);
}

void write_document(const ModelDocument& doc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::FileNotFound, "cannot write '" + path.string() + "'");
    out << to_json(doc).dump(2) << '\n';
}

TransitionModel build_model(const ModelDocument& doc) {
    std::vector<std::string> ids;
    for (const auto& s : doc.states) ids.push_back(s.id);
    std::optional<StateSpace> space;
    try {
        space.emplace(ids);
    } catch (const Error& e) {
        schema_error("$.states", e.what());
    }

    const std::set<std::string> declared(doc.atoms.begin(), doc.atoms.end());
    std::vector<std::set<std::string>> labels;
    std::size_t with_reward = 0;
    for (std::size_t i = 0; i < doc.states.size(); ++i) {
        std::set<std::string> l;
        for (const auto& label : doc.states[i].labels) {
            if (!declared.contains(label)) {
                schema_error("$.states[" + std::to_string(i) + "].labels",
                             "undeclared atom '" + label + "'");
            }
            l.insert(label);
        }
        labels.push_back(std::move(l));
        if (doc.states[i].reward) ++with_reward;
    }
    std::optional<std::vector<Reward>> rewards;
    if (with_reward == doc.states.size()) {
        rewards.emplace();
        for (const auto& s : doc.states) rewards->push_back(*s.reward);
    } else if (with_reward != 0) {
        schema_error("$.states", "rewards must be given for every state or for none");
    }

    for (const auto& [id, spec] : doc.transitions) {
        if (!space->find(id)) schema_error("$.transitions." + id, "undeclared state");
    }
    std::vector<CredalSet> rows;
    for (const auto& id : ids) {
        const std::string field = "$.transitions." + id;
        const auto it = doc.transitions.find(id);
        if (it == doc.transitions.end()) schema_error(field, "missing row");
        try {
            rows.push_back(build_row(*space, it->second, field));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::SchemaError) throw;
            throw Error(e.code(), "state '" + id + "': " + e.what());
        }
    }

    std::optional<InitialSpec> initial;
    if (doc.initial) {
        if (const auto* id = std::get_if<std::string>(&*doc.initial)) {
            const auto index = space->find(*id);
            if (!index) schema_error("$.initial", "undeclared state '" + *id + "'");
            initial = *index;
        } else {
            try {
                initial = CredalSet::point(Pmf::make(dense(*space, std::get<WeightMap>(*doc.initial), "$.initial")));
            } catch (const Error& e) {
                if (e.code() == ErrorCode::SchemaError) throw;
                throw Error(e.code(), std::string("initial distribution: ") + e.what());
            }
        }
    }

    return TransitionModel({std::move(*space), std::move(rows), doc.atoms, std::move(labels),
                            std::move(rewards), std::move(initial), doc.horizon});
}

TransitionModel load_model(const std::filesystem::path& path) { return build_model(read_document(path)); }

void save_model(const ModelDocument& doc, const std::filesystem::path& path) { write_document(doc, path); }

ModelDocument with_contamination(ModelDocument doc, double eps) {
    for (auto& [id, spec] : doc.transitions) {
        if (auto* c = std::get_if<row::Contaminate>(&spec)) c->eps = eps;
    }
    return doc;
}

}  // namespace iprctl::io
