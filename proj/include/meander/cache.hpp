#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "meander/version.hpp"

namespace meander {

// Newline-delimited JSON result cache.  Every record stores the full key,
// a content hash of the payload, and the payload itself; a corrupt record is
// skipped with a warning and the result recomputed, never silently reused.
// Keys embed the code version and enumeration-order id, so payloads are
// byte-identical to what recomputation would produce.
class ResultCache {
public:
    ResultCache() = default;

    explicit ResultCache(std::string dir) : dir_(std::move(dir)) {
        if (dir_.empty()) return;
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        load();
    }

    bool enabled() const { return !dir_.empty(); }

    static std::string make_key(const std::string& op, const std::string& params) {
        return op + "|" + params + "|v=" + kCodeVersion + "|order=" + kEnumOrderId;
    }

    std::optional<std::string> get(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    void put(const std::string& key, const std::string& payload) {
        if (!enabled()) return;
        if (entries_.count(key)) return;
        entries_[key] = payload;
        nlohmann::json rec;
        rec["key"] = key;
        rec["hash"] = hash_hex(payload);
        rec["payload"] = payload;
        std::ofstream out(file_path(), std::ios::app);
        out << rec.dump() << "\n";
    }

private:
    std::string dir_;
    std::map<std::string, std::string> entries_;

    std::string file_path() const { return dir_ + "/results.ndjson"; }

    static std::string hash_hex(const std::string& s) {
        // FNV-1a 64
        uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        char buf[17];
        snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    void load() {
        std::ifstream in(file_path());
        if (!in) return;
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
            if (rec.is_discarded() || !rec.contains("key") || !rec.contains("payload") ||
                !rec.contains("hash") ||
                rec["hash"].get<std::string>() != hash_hex(rec["payload"].get<std::string>())) {
                std::cerr << "meander: cache record " << lineno << " in " << file_path()
                          << " is corrupt; it will be recomputed\n";
                continue;
            }
            entries_[rec["key"].get<std::string>()] = rec["payload"].get<std::string>();
        }
    }
};

}  // namespace meander
