#include "pqbezier/store.hpp"

#include "pqbezier/document.hpp"

#include <atomic>
#include <fstream>

namespace pqbezier {

namespace fs = std::filesystem;

bool is_valid_document_name(const std::string& name) {
    if (name.empty() || name.size() > 64) return false;
    for (char c : name) {
        const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
                        c == '-';
        if (!ok) return false;
    }
    return true;
}

CurveDocumentStore::CurveDocumentStore(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec || !fs::is_directory(root_)) throw IoError("cannot create store directory '" + root_.string() + "'");
}

fs::path CurveDocumentStore::path_for(const std::string& name) const {
    if (!is_valid_document_name(name))
        throw InvalidDocumentName("document names must match [A-Za-z0-9_-]{1,64}");
    return root_ / (name + ".json");
}

std::mutex& CurveDocumentStore::lock_for(const std::string& name) const {
    std::lock_guard guard(table_mutex_);
    auto& slot = name_locks_[name];
    if (!slot) slot = std::make_unique<std::mutex>();
    return *slot;
}

bool CurveDocumentStore::save(const std::string& name, const nlohmann::json& document, bool overwrite) {
    const auto target = path_for(name);
    std::lock_guard guard(lock_for(name));
    const bool exists = fs::exists(target);
    if (exists && !overwrite) throw DocumentExists("document '" + name + "' already exists");

    static std::atomic<unsigned long> counter{0};
    const auto tmp = root_ / ("." + name + ".tmp." + std::to_string(counter++));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out << document.dump(2) << '\n';
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw IoError("cannot write '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot move document into place: " + ec.message());
    }
    return !exists;
}

std::optional<nlohmann::json> CurveDocumentStore::load(const std::string& name) const {
    const auto target = path_for(name);
    std::lock_guard guard(lock_for(name));
    if (!fs::exists(target)) return std::nullopt;
    return parse_json_text(read_text_file(target));
}

}  // namespace pqbezier
