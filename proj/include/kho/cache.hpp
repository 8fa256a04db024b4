#pragma once
// Append-only results cache.  Records live in one JSON-lines file keyed by a
// content hash of (canonical diagram, ring, variant) plus the tool version;
// the latest record for a key wins, torn or corrupted lines count as misses,
// and concurrent writers are serialized with an exclusive file lock.

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

#include "kho/diagram.hpp"
#include "kho/homology.hpp"
#include "kho/util.hpp"

namespace kho {

class Cache {
  public:
    static std::string default_dir() {
        if (const char* env = std::getenv("KHO_CACHE_DIR"); env && *env) return env;
        if (const char* home = std::getenv("HOME"); home && *home)
            return std::string(home) + "/.cache/kho";
        return "/tmp/kho-cache";
    }

    explicit Cache(std::string dir = default_dir(), std::string version = kho_version)
        : dir_(std::move(dir)), version_(std::move(version)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw std::runtime_error("cache: cannot create " + dir_ + ": " + ec.message());
    }

    const std::string& dir() const { return dir_; }
    std::string store_path() const { return dir_ + "/store.jsonl"; }

    static std::string key_for(const PlanarDiagram& D, RingSpec ring, Variant variant) {
        return hex64(fnv1a(D.canonical_string() + "|" + ring.str() + "|" + variant_name(variant)));
    }

    // scans the store; the last well-formed record for the key and current
    // version wins, anything unreadable is simply a miss
    std::optional<nlohmann::json> get(const std::string& key) const {
        std::ifstream in(store_path());
        if (!in) return std::nullopt;
        std::optional<nlohmann::json> found;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
            if (rec.is_discarded() || !rec.is_object()) continue;
            if (rec.value("key", "") != key || rec.value("version", "") != version_) continue;
            if (!rec.contains("value")) continue;
            found = rec["value"];
        }
        return found;
    }

    void put(const std::string& key, const nlohmann::json& value) const {
        std::string line =
            nlohmann::json{{"key", key}, {"version", version_}, {"value", value}}.dump();
        line += '\n';
        int fd = ::open(store_path().c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
        if (fd < 0) throw std::runtime_error("cache: cannot open " + store_path());
        if (::flock(fd, LOCK_EX) != 0) {
            ::close(fd);
            throw std::runtime_error("cache: cannot lock " + store_path());
        }
        size_t off = 0;
        while (off < line.size()) {
            ssize_t n = ::write(fd, line.data() + off, line.size() - off);
            if (n <= 0) {
                ::flock(fd, LOCK_UN);
                ::close(fd);
                throw std::runtime_error("cache: write failed for " + store_path());
            }
            off += static_cast<size_t>(n);
        }
        ::flock(fd, LOCK_UN);
        ::close(fd);
    }

  private:
    std::string dir_;
    std::string version_;
};

}  // namespace kho
