#include "geocalib/reporting.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace geocalib::report {

Check check_le(std::string name, double value, double bound) {
    return {std::move(name), value, bound, "<=", value <= bound};
}

Check check_ge(std::string name, double value, double bound) {
    return {std::move(name), value, bound, ">=", value >= bound};
}

Check check_true(std::string name, bool condition) {
    return {std::move(name), condition ? 1.0 : 0.0, 1.0, "==", condition};
}

bool all_pass(const std::vector<Check>& checks) {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_jsonl(const std::vector<Check>& checks, const std::string& header_json) {
    std::ostringstream out;
    if (!header_json.empty()) out << header_json << '\n';
    for (const Check& c : checks) {
        nlohmann::json rec;
        rec["name"] = c.name;
        rec["value"] = c.value;
        rec["bound"] = c.bound;
        rec["cmp"] = c.cmp;
        rec["pass"] = c.pass;
        out << rec.dump() << '\n';
    }
    return out.str();
}

std::string to_csv(const std::vector<Check>& checks) {
    std::ostringstream out;
    out << "name,value,cmp,bound,pass\n";
    for (const Check& c : checks)
        out << c.name << ',' << format_double(c.value) << ',' << c.cmp << ','
            << format_double(c.bound) << ',' << (c.pass ? "pass" : "fail") << '\n';
    return out.str();
}

std::string to_csv(const std::string& col_a, const std::string& col_b,
                   const std::vector<std::pair<double, double>>& rows) {
    std::ostringstream out;
    out << col_a << ',' << col_b << '\n';
    for (const auto& [a, b] : rows) out << format_double(a) << ',' << format_double(b) << '\n';
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
}

}  // namespace geocalib::report
