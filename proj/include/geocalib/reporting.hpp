#pragma once

#include <string>
#include <vector>

// Assertion records and machine-readable report output (JSON lines + CSV).

namespace geocalib::report {

struct Check {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    std::string cmp;  // "<=", ">=", "=="
    bool pass = false;
};

Check check_le(std::string name, double value, double bound);
Check check_ge(std::string name, double value, double bound);
Check check_true(std::string name, bool condition);

bool all_pass(const std::vector<Check>& checks);

// 17 significant digits, locale-independent.
std::string format_double(double v);

// One JSON object per line; `header` is emitted first when nonempty.
std::string to_jsonl(const std::vector<Check>& checks, const std::string& header_json = "");

std::string to_csv(const std::vector<Check>& checks);

// Two-column CSV with a header row.
std::string to_csv(const std::string& col_a, const std::string& col_b,
                   const std::vector<std::pair<double, double>>& rows);

void write_file(const std::string& path, const std::string& content);

}  // namespace geocalib::report
