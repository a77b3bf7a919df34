#pragma once

#include "json.hpp"

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace pqbezier {

class InvalidDocumentName : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DocumentExists : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// [A-Za-z0-9_-]{1,64}
bool is_valid_document_name(const std::string& name);

/// Curve documents persisted as <root>/<name>.json. Writes go to a temporary
/// file that is renamed into place; operations on one name are serialized.
class CurveDocumentStore {
public:
    explicit CurveDocumentStore(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }

    /// Returns true when a new document was created, false when one was replaced.
    /// Throws DocumentExists if the name is taken and overwrite is false.
    bool save(const std::string& name, const nlohmann::json& document, bool overwrite);

    std::optional<nlohmann::json> load(const std::string& name) const;

private:
    std::filesystem::path path_for(const std::string& name) const;
    std::mutex& lock_for(const std::string& name) const;

    std::filesystem::path root_;
    mutable std::mutex table_mutex_;
    mutable std::unordered_map<std::string, std::unique_ptr<std::mutex>> name_locks_;
};

}  // namespace pqbezier
