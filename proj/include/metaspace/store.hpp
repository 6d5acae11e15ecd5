#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metaspace/world.hpp"

struct sqlite3;

namespace metaspace {

/// SQLite file holding the append-only event log plus a relational
/// snapshot of the world (members, posts, comments, reactions, chats,
/// messages, channels, relationships). The log is authoritative; the
/// snapshot tables are rewritten by `save_snapshot`.
class Store
{
public:
    static constexpr int kSchemaVersion = 1;

    /// Opens or creates the file. Throws PersistenceError("SchemaMismatch")
    /// for a file written by another schema version.
    explicit Store(const std::string& path);
    ~Store();
    Store(const Store&) = delete;
    Store& operator=(const Store&) = delete;

    int schema_version() const;

    /// Appends in one transaction; seq must continue the stored log.
    void append(std::span<const SimEvent> events);
    std::vector<SimEvent> load_events() const;
    std::size_t event_count() const;

    void save_snapshot(const World& world);
    void save_stats(const std::map<std::string, double>& stats);
    std::map<std::string, double> load_stats() const;

    void set_meta(const std::string& key, const std::string& value);
    std::optional<std::string> meta(const std::string& key) const;

private:
    void exec(const char* sql) const;
    int user_version() const;

    sqlite3* m_db = nullptr;
};

} // namespace metaspace
