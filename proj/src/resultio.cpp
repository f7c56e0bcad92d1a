#include "qbb/resultio.hpp"

#include <ctime>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "qbb/errors.hpp"

namespace qbb {

namespace {

// Shortest-round-trip double rendering shared by both encodings so JSON and
// CSV carry identical numeric text.
std::string num(double v) { return nlohmann::json(v).dump(); }

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

}  // namespace

std::string current_date_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string SweepResult::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["command"] = command;
    j["seed"] = seed;
    j["date"] = date;
    j["rows"] = nlohmann::json::array();
    for (const SweepRow& r : rows) {
        nlohmann::json row;
        row["id"] = r.id;
        row["n"] = r.n;
        row["params"] = r.params;
        row["answer"] = r.answer;
        row["queries"] = r.queries;
        row["comm_qubits"] = r.comm_qubits;
        row["success_prob"] = r.success_prob;
        row["wall_time"] = r.wall_time;
        row["extra"] = r.extra;
        j["rows"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

std::string SweepResult::to_csv() const {
    std::string out =
        "id,n,params,answer,queries,comm_qubits,success_prob,wall_time,extra\n";
    for (const SweepRow& r : rows) {
        std::string extra;
        for (const auto& [key, value] : r.extra) {
            if (!extra.empty()) extra += ";";
            extra += key + "=" + num(value);
        }
        out += csv_quote(r.id) + "," + std::to_string(r.n) + "," +
               csv_quote(r.params) + "," + std::to_string(r.answer) + "," +
               std::to_string(r.queries) + "," + std::to_string(r.comm_qubits) + "," +
               num(r.success_prob) + "," + num(r.wall_time) + "," + csv_quote(extra) +
               "\n";
    }
    return out;
}

void SweepResult::write(const std::string& path, const std::string& format) const {
    std::string body;
    if (format == "json")
        body = to_json();
    else if (format == "csv")
        body = to_csv();
    else
        throw ValidationError("unknown output format \"" + format +
                              "\" (expected json or csv)");
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write output file " + path);
    out << body;
}

}  // namespace qbb
