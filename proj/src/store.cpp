#include "metaspace/store.hpp"

#include <sqlite3.h>

#include "metaspace/errors.hpp"

namespace metaspace {

namespace {

constexpr const char* kSchema = R"SQL(
CREATE TABLE IF NOT EXISTS meta (key TEXT PRIMARY KEY, value TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS events (
    seq INTEGER PRIMARY KEY, tick INTEGER NOT NULL, actor INTEGER, kind TEXT NOT NULL, line TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS members (
    id INTEGER PRIMARY KEY, id_name TEXT NOT NULL, user_name TEXT NOT NULL, human INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS posts (
    id INTEGER PRIMARY KEY, author INTEGER NOT NULL, text TEXT NOT NULL, channel INTEGER,
    ephemeral INTEGER NOT NULL, created_tick INTEGER NOT NULL, visibility TEXT NOT NULL, deleted INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS comments (
    id INTEGER PRIMARY KEY, author INTEGER NOT NULL, post INTEGER NOT NULL REFERENCES posts(id), parent INTEGER,
    text TEXT NOT NULL, created_tick INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS reactions (
    post INTEGER NOT NULL REFERENCES posts(id), author INTEGER NOT NULL, token TEXT NOT NULL,
    PRIMARY KEY (post, author));
CREATE TABLE IF NOT EXISTS chats (id INTEGER PRIMARY KEY, grp INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS chat_members (
    chat INTEGER NOT NULL REFERENCES chats(id), member INTEGER NOT NULL, PRIMARY KEY (chat, member));
CREATE TABLE IF NOT EXISTS chat_closeness (
    chat INTEGER NOT NULL REFERENCES chats(id), a INTEGER NOT NULL, b INTEGER NOT NULL, closeness INTEGER NOT NULL,
    PRIMARY KEY (chat, a, b));
CREATE TABLE IF NOT EXISTS messages (
    id INTEGER PRIMARY KEY, chat INTEGER NOT NULL REFERENCES chats(id), sender INTEGER NOT NULL, text TEXT NOT NULL,
    created_tick INTEGER NOT NULL, off_topic INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS message_reads (
    message INTEGER NOT NULL REFERENCES messages(id), member INTEGER NOT NULL, PRIMARY KEY (message, member));
CREATE TABLE IF NOT EXISTS channels (
    id INTEGER PRIMARY KEY, name TEXT NOT NULL, bio TEXT NOT NULL, creator INTEGER NOT NULL,
    created_tick INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS channel_members (
    channel INTEGER NOT NULL REFERENCES channels(id), member INTEGER NOT NULL, PRIMARY KEY (channel, member));
CREATE TABLE IF NOT EXISTS relationships (
    kind TEXT NOT NULL, a INTEGER NOT NULL, b INTEGER NOT NULL, value INTEGER, PRIMARY KEY (kind, a, b));
CREATE TABLE IF NOT EXISTS run_stats (key TEXT PRIMARY KEY, value REAL NOT NULL);
)SQL";

[[noreturn]] void fail(sqlite3* db, const std::string& what)
{
    throw PersistenceError("StoreFailure", what, what + ": " + (db ? sqlite3_errmsg(db) : "no database"));
}

class Statement
{
public:
    Statement(sqlite3* db, const char* sql) : m_db(db)
    {
        if (sqlite3_prepare_v2(db, sql, -1, &m_stmt, nullptr) != SQLITE_OK) {
            fail(db, "prepare");
        }
    }
    ~Statement() { sqlite3_finalize(m_stmt); }
    Statement(const Statement&) = delete;
    Statement& operator=(const Statement&) = delete;

    Statement& bind(int i, std::int64_t v)
    {
        sqlite3_bind_int64(m_stmt, i, v);
        return *this;
    }
    Statement& bind(int i, double v)
    {
        sqlite3_bind_double(m_stmt, i, v);
        return *this;
    }
    Statement& bind(int i, const std::string& v)
    {
        sqlite3_bind_text(m_stmt, i, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT);
        return *this;
    }
    Statement& bind_null(int i)
    {
        sqlite3_bind_null(m_stmt, i);
        return *this;
    }
    template <typename T>
    Statement& bind_opt(int i, const std::optional<T>& v)
    {
        return v ? bind(i, static_cast<std::int64_t>(*v)) : bind_null(i);
    }

    /// Executes a statement that yields no rows, then resets it for reuse.
    void run()
    {
        if (sqlite3_step(m_stmt) != SQLITE_DONE) {
            fail(m_db, "step");
        }
        sqlite3_reset(m_stmt);
        sqlite3_clear_bindings(m_stmt);
    }

    bool next()
    {
        const int rc = sqlite3_step(m_stmt);
        if (rc == SQLITE_ROW) {
            return true;
        }
        if (rc != SQLITE_DONE) {
            fail(m_db, "step");
        }
        return false;
    }

    std::int64_t integer(int col) const { return sqlite3_column_int64(m_stmt, col); }
    double real(int col) const { return sqlite3_column_double(m_stmt, col); }
    std::string text(int col) const
    {
        const auto* p = sqlite3_column_text(m_stmt, col);
        return p ? std::string(reinterpret_cast<const char*>(p), static_cast<std::size_t>(sqlite3_column_bytes(m_stmt, col)))
                 : std::string{};
    }

private:
    sqlite3* m_db;
    sqlite3_stmt* m_stmt = nullptr;
};

class Transaction
{
public:
    explicit Transaction(sqlite3* db) : m_db(db) { run("BEGIN IMMEDIATE"); }
    ~Transaction()
    {
        if (!m_done) {
            sqlite3_exec(m_db, "ROLLBACK", nullptr, nullptr, nullptr);
        }
    }
    void commit()
    {
        run("COMMIT");
        m_done = true;
    }

private:
    void run(const char* sql)
    {
        if (sqlite3_exec(m_db, sql, nullptr, nullptr, nullptr) != SQLITE_OK) {
            fail(m_db, sql);
        }
    }

    sqlite3* m_db;
    bool m_done = false;
};

} // namespace

Store::Store(const std::string& path)
{
    if (sqlite3_open(path.c_str(), &m_db) != SQLITE_OK) {
        std::string msg = m_db ? sqlite3_errmsg(m_db) : "out of memory";
        sqlite3_close(m_db);
        m_db = nullptr;
        throw PersistenceError("StoreFailure", path, "cannot open " + path + ": " + msg);
    }
    try {
        exec("PRAGMA journal_mode=WAL; PRAGMA synchronous=NORMAL; PRAGMA foreign_keys=ON;");
        exec(kSchema);
        auto version = meta("schema_version");
        if (!version) {
            set_meta("schema_version", std::to_string(kSchemaVersion));
            exec(("PRAGMA user_version=" + std::to_string(kSchemaVersion)).c_str());
        } else if (*version != std::to_string(kSchemaVersion) || user_version() != kSchemaVersion) {
            throw PersistenceError("SchemaMismatch", path, "store schema " + *version + "/" +
                                                               std::to_string(user_version()) + " is not supported");
        }
    } catch (...) {
        sqlite3_close(m_db);
        m_db = nullptr;
        throw;
    }
}

Store::~Store() { sqlite3_close(m_db); }

void Store::exec(const char* sql) const
{
    char* err = nullptr;
    if (sqlite3_exec(m_db, sql, nullptr, nullptr, &err) != SQLITE_OK) {
        std::string msg = err ? err : "unknown error";
        sqlite3_free(err);
        throw PersistenceError("StoreFailure", "exec", msg);
    }
}

int Store::user_version() const
{
    Statement st(m_db, "PRAGMA user_version");
    return st.next() ? static_cast<int>(st.integer(0)) : 0;
}

int Store::schema_version() const { return std::stoi(meta("schema_version").value_or("0")); }

void Store::set_meta(const std::string& key, const std::string& value)
{
    Statement(m_db, "INSERT INTO meta(key, value) VALUES(?, ?) ON CONFLICT(key) DO UPDATE SET value = excluded.value")
        .bind(1, key)
        .bind(2, value)
        .run();
}

std::optional<std::string> Store::meta(const std::string& key) const
{
    Statement s(m_db, "SELECT value FROM meta WHERE key = ?");
    s.bind(1, key);
    if (s.next()) {
        return s.text(0);
    }
    return std::nullopt;
}

void Store::append(std::span<const SimEvent> events)
{
    if (events.empty()) {
        return;
    }
    Transaction tx(m_db);
    std::size_t expected = event_count();
    Statement insert(m_db, "INSERT INTO events(seq, tick, actor, kind, line) VALUES(?, ?, ?, ?, ?)");
    for (const auto& e : events) {
        if (e.seq != expected) {
            throw PersistenceError("StoreFailure", "seq",
                                   "event seq " + std::to_string(e.seq) + " does not continue the stored log");
        }
        insert.bind(1, static_cast<std::int64_t>(e.seq)).bind(2, static_cast<std::int64_t>(e.tick));
        if (e.actor == kSystemActor) {
            insert.bind_null(3);
        } else {
            insert.bind(3, static_cast<std::int64_t>(e.actor));
        }
        insert.bind(4, std::string(event_kind_name(e.kind))).bind(5, to_line(e)).run();
        ++expected;
    }
    tx.commit();
}

std::size_t Store::event_count() const
{
    Statement s(m_db, "SELECT COUNT(*) FROM events");
    s.next();
    return static_cast<std::size_t>(s.integer(0));
}

std::vector<SimEvent> Store::load_events() const
{
    std::vector<SimEvent> out;
    Statement s(m_db, "SELECT line FROM events ORDER BY seq");
    while (s.next()) {
        out.push_back(parse_line(s.text(0)));
    }
    return out;
}

void Store::save_snapshot(const World& w)
{
    Transaction tx(m_db);
    exec("DELETE FROM message_reads; DELETE FROM messages; DELETE FROM chat_closeness; DELETE FROM chat_members;"
         "DELETE FROM chats; DELETE FROM channel_members; DELETE FROM channels; DELETE FROM reactions;"
         "DELETE FROM comments; DELETE FROM posts; DELETE FROM members; DELETE FROM relationships;");
    using I = std::int64_t;
    {
        Statement s(m_db, "INSERT INTO members VALUES(?, ?, ?, ?)");
        for (std::size_t i = 0; i < w.members().size(); ++i) {
            const auto& m = w.members()[i];
            s.bind(1, static_cast<I>(i)).bind(2, m.id_name).bind(3, m.user_name).bind(4, I{m.human}).run();
        }
    }
    {
        Statement s(m_db, "INSERT INTO posts VALUES(?, ?, ?, ?, ?, ?, ?, ?)");
        for (const auto& p : w.posts()) {
            s.bind(1, I{p.id}).bind(2, I{p.author}).bind(3, p.text).bind_opt(4, p.channel);
            s.bind(5, I{p.ephemeral}).bind(6, static_cast<I>(p.created_tick));
            s.bind(7, std::string(label(p.visibility))).bind(8, I{p.deleted}).run();
        }
    }
    {
        Statement s(m_db, "INSERT INTO comments VALUES(?, ?, ?, ?, ?, ?)");
        for (const auto& c : w.comments()) {
            s.bind(1, I{c.id}).bind(2, I{c.author}).bind(3, I{c.post}).bind_opt(4, c.parent);
            s.bind(5, c.text).bind(6, static_cast<I>(c.created_tick)).run();
        }
    }
    {
        Statement s(m_db, "INSERT INTO reactions VALUES(?, ?, ?)");
        for (const auto& [key, token] : w.reactions()) {
            s.bind(1, I{key.first}).bind(2, I{key.second}).bind(3, token).run();
        }
    }
    {
        Statement chat(m_db, "INSERT INTO chats VALUES(?, ?)");
        Statement member(m_db, "INSERT INTO chat_members VALUES(?, ?)");
        Statement close(m_db, "INSERT INTO chat_closeness VALUES(?, ?, ?, ?)");
        for (const auto& c : w.chats()) {
            chat.bind(1, I{c.id}).bind(2, I{c.group}).run();
            for (ActorId p : c.participants) {
                member.bind(1, I{c.id}).bind(2, I{p}).run();
            }
            for (const auto& [pair, v] : c.closeness) {
                close.bind(1, I{c.id}).bind(2, I{pair.first}).bind(3, I{pair.second}).bind(4, I{v}).run();
            }
        }
    }
    {
        Statement msg(m_db, "INSERT INTO messages VALUES(?, ?, ?, ?, ?, ?)");
        Statement read(m_db, "INSERT INTO message_reads VALUES(?, ?)");
        for (const auto& m : w.messages()) {
            msg.bind(1, I{m.id}).bind(2, I{m.chat}).bind(3, I{m.sender}).bind(4, m.text);
            msg.bind(5, static_cast<I>(m.created_tick)).bind(6, I{m.off_topic}).run();
            for (ActorId r : m.read_by) {
                read.bind(1, I{m.id}).bind(2, I{r}).run();
            }
        }
    }
    {
        Statement ch(m_db, "INSERT INTO channels VALUES(?, ?, ?, ?, ?)");
        Statement member(m_db, "INSERT INTO channel_members VALUES(?, ?)");
        for (const auto& c : w.channels()) {
            ch.bind(1, I{c.id}).bind(2, c.name).bind(3, c.bio).bind(4, I{c.creator});
            ch.bind(5, static_cast<I>(c.created_tick)).run();
            for (ActorId m : c.members) {
                member.bind(1, I{c.id}).bind(2, I{m}).run();
            }
        }
    }
    {
        Statement rel(m_db, "INSERT INTO relationships VALUES(?, ?, ?, ?)");
        auto pairs = [&](const char* kind, const std::set<ActorPair>& set) {
            for (const auto& [a, b] : set) {
                rel.bind(1, std::string(kind)).bind(2, I{a}).bind(3, I{b}).bind_null(4).run();
            }
        };
        pairs("follow", w.graph().follows);
        pairs("friend", w.graph().friends);
        pairs("pending", w.pending_requests());
        pairs("block", w.blocks());
        pairs("mute", w.mutes());
        for (const auto& [pair, v] : w.graph().closeness) {
            rel.bind(1, std::string("closeness")).bind(2, I{pair.first}).bind(3, I{pair.second}).bind(4, I{v}).run();
        }
    }
    Statement(m_db, "INSERT INTO meta(key, value) VALUES('snapshot_seq', ?) "
                    "ON CONFLICT(key) DO UPDATE SET value = excluded.value")
        .bind(1, std::to_string(w.next_seq() == 0 ? 0 : w.next_seq() - 1))
        .run();
    tx.commit();
}

void Store::save_stats(const std::map<std::string, double>& stats)
{
    Transaction tx(m_db);
    Statement s(m_db, "INSERT INTO run_stats(key, value) VALUES(?, ?) "
                      "ON CONFLICT(key) DO UPDATE SET value = excluded.value");
    for (const auto& [k, v] : stats) {
        s.bind(1, k).bind(2, v).run();
    }
    tx.commit();
}

std::map<std::string, double> Store::load_stats() const
{
    std::map<std::string, double> out;
    Statement s(m_db, "SELECT key, value FROM run_stats");
    while (s.next()) {
        out[s.text(0)] = s.real(1);
    }
    return out;
}

} // namespace metaspace
