#pragma once

#include <memory>
#include <optional>
#include <string>

#include "json.hpp"

#include "atlift/connection.hpp"

namespace atlift {

// A parsed model file. The algebra is always present; complex, connection and
// pairing are optional sections. Pointers inside complex/connection are wired
// to the owned algebra, so the struct is movable but not copyable.
struct ModelFile {
    std::string name;
    std::unique_ptr<BGA> algebra;
    std::unique_ptr<FreeComplex> complex;
    std::unique_ptr<Connection> connection;
    std::optional<CyclicForm> form;
};

// Strict parser: unknown keys, bad indices, malformed scalars and shape
// mismatches are errors. Returns nullopt and sets err.
std::optional<ModelFile> parse_model(const nlohmann::json& j, std::string& err);
std::optional<ModelFile> parse_model_file(const std::string& path, std::string& err);

// Resolves a --model argument: a canned name or a path to a model file.
std::optional<ModelFile> resolve_model(const std::string& spec, std::string& err);

nlohmann::json model_to_json(const BGA& A, const FreeComplex* cx, const Connection* conn,
                             const CyclicForm* form);

}  // namespace atlift
