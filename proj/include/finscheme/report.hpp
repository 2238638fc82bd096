#pragma once

#include <string>
#include <utility>
#include <vector>

namespace finscheme {

// Outcome of a single exhaustive check. `witness` names the counterexample on
// failure and carries instance detail on success (may be empty).
struct Verdict {
    bool ok = true;
    std::string witness;

    static Verdict pass(std::string detail = {}) { return {true, std::move(detail)}; }
    static Verdict fail(std::string witness) { return {false, std::move(witness)}; }
    explicit operator bool() const { return ok; }
};

enum class Status { Pass, Fail, Skipped };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
    }
    return "fail";
}

struct CheckEntry {
    std::string name;
    Status status = Status::Pass;
    std::string witness;
    std::string anchor;
};

// Ordered list of named checks; order is the order checks were run.
struct CheckReport {
    std::vector<CheckEntry> entries;

    void add(std::string name, const Verdict& v, std::string anchor = {}) {
        entries.push_back({std::move(name), v.ok ? Status::Pass : Status::Fail, v.witness,
                           std::move(anchor)});
    }
    void skip(std::string name, std::string why, std::string anchor = {}) {
        entries.push_back({std::move(name), Status::Skipped, std::move(why), std::move(anchor)});
    }
    void append(const CheckReport& other) {
        entries.insert(entries.end(), other.entries.begin(), other.entries.end());
    }

    bool passed() const {
        for (const auto& e : entries)
            if (e.status == Status::Fail) return false;
        return true;
    }
    const CheckEntry* first_failure() const {
        for (const auto& e : entries)
            if (e.status == Status::Fail) return &e;
        return nullptr;
    }
    // First failing entry with the given name, if any.
    const CheckEntry* failure(const std::string& name) const {
        for (const auto& e : entries)
            if (e.status == Status::Fail && e.name == name) return &e;
        return nullptr;
    }
    std::size_t count(const std::string& name) const {
        std::size_t c = 0;
        for (const auto& e : entries) c += e.name == name ? 1 : 0;
        return c;
    }
};

}  // namespace finscheme
