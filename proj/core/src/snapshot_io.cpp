#include "cadence/snapshot_io.hpp"

#include "cadence/error.hpp"

#include <json.hpp>

#include <istream>
#include <map>
#include <ostream>

namespace cadence {

using ordered_json = nlohmann::ordered_json;

std::string serialize_snapshot(const AppSnapshot& s) {
    ordered_json j;
    j["app_id"] = s.app_id;
    j["category"] = s.category;
    j["day"] = format_iso_date(s.day);
    if (s.rank) {
        j["rank"] = *s.rank;
    }
    j["rating"] = s.rating;
    j["version"] = s.version;
    if (s.whats_new) {
        j["whats_new"] = *s.whats_new;
    }
    return j.dump();
}

namespace {

const std::string& require_string(const nlohmann::json& j, const char* key, std::size_t line) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(std::string("missing field '") + key + "'", line);
    }
    if (!it->is_string()) {
        throw ParseError(std::string("field '") + key + "' must be a string", line);
    }
    return it->get_ref<const std::string&>();
}

} // namespace

AppSnapshot parse_snapshot_line(const std::string& line, std::size_t line_no) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed record: ") + e.what(), line_no);
    }
    if (!j.is_object()) {
        throw ParseError("record must be a JSON object", line_no);
    }
    static const char* const known[] = {"app_id", "category", "day", "rank",
                                        "rating", "version", "whats_new"};
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known) {
            ok = ok || item.key() == k;
        }
        if (!ok) {
            throw ParseError("unknown field '" + item.key() + "'", line_no);
        }
    }

    AppSnapshot s;
    s.app_id = require_string(j, "app_id", line_no);
    s.category = require_string(j, "category", line_no);
    try {
        s.day = parse_iso_date(require_string(j, "day", line_no));
    } catch (const ParseError& e) {
        if (e.line()) throw;
        throw ParseError(e.what(), line_no);
    }
    if (auto it = j.find("rank"); it != j.end() && !it->is_null()) {
        if (!it->is_number_integer()) {
            throw ParseError("field 'rank' must be an integer", line_no);
        }
        s.rank = it->get<int>();
    }
    auto rating = j.find("rating");
    if (rating == j.end()) {
        throw ParseError("missing field 'rating'", line_no);
    }
    if (!rating->is_number()) {
        throw ParseError("field 'rating' must be a number", line_no);
    }
    s.rating = rating->get<double>();
    s.version = require_string(j, "version", line_no);
    if (auto it = j.find("whats_new"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) {
            throw ParseError("field 'whats_new' must be a string", line_no);
        }
        s.whats_new = it->get<std::string>();
    }
    validate_snapshot(s, line_no);
    return s;
}

std::vector<AppHistory> parse_snapshots(std::istream& in) {
    struct Pending {
        std::string category;
        std::vector<AppSnapshot> snapshots;
        std::map<Day, std::size_t> seen;  // day -> line
    };
    std::map<std::string, Pending> by_app;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        AppSnapshot s = parse_snapshot_line(line, line_no);
        auto& pending = by_app[s.app_id];
        if (pending.snapshots.empty()) {
            pending.category = s.category;
        }
        if (auto [it, inserted] = pending.seen.emplace(s.day, line_no); !inserted) {
            throw ValidationError("duplicate day " + format_iso_date(s.day) + " for app '" +
                                      s.app_id + "' (first seen on line " +
                                      std::to_string(it->second) + ")",
                                  line_no);
        }
        pending.snapshots.push_back(std::move(s));
    }
    std::vector<AppHistory> histories;
    histories.reserve(by_app.size());
    for (auto& [app_id, pending] : by_app) {
        histories.emplace_back(app_id, pending.category, std::move(pending.snapshots));
    }
    return histories;
}

void write_snapshots(std::ostream& out, const std::vector<AppHistory>& histories) {
    for (const auto& h : histories) {
        for (const auto& s : h.snapshots()) {
            out << serialize_snapshot(s) << '\n';
        }
    }
}

} // namespace cadence
