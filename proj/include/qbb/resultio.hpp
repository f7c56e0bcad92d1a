#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qbb {

inline constexpr const char* kVersion = "qbbsim 1.0.0";

// One measured instance. `params` echoes the resolved configuration so a row
// is reproducible on its own; `extra` carries measurement-specific values
// (beta_max, rank, cost constants, ...).
struct SweepRow {
    std::string id;
    int n = 0;
    std::string params;
    int answer = 0;
    std::int64_t queries = 0;
    std::int64_t comm_qubits = 0;
    double success_prob = 0.0;
    double wall_time = 0.0;
    std::map<std::string, double> extra;
};

struct SweepResult {
    std::string command;
    std::uint64_t seed = 0;
    std::string version = kVersion;
    std::string date;  // set at creation; the only non-deterministic field
                       // besides wall_time

    std::vector<SweepRow> rows;

    std::string to_json() const;
    std::string to_csv() const;
    // format is "json" or "csv"; path "-" writes to stdout.
    void write(const std::string& path, const std::string& format) const;
};

std::string current_date_utc();

}  // namespace qbb
