#pragma once

#include <complex>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace recip {

using cplx = std::complex<double>;

enum class Status { Pass, Fail, Info };
std::string to_string(Status s);

struct Record {
    std::string point;  // "key=value;..." of the grid inputs
    cplx value = 0;
    double bound = 0;   // 0 when the row carries no bound
    double ratio = 0;   // |value| / bound, or the residual for identity rows
    Status status = Status::Info;
};

// One experiment run. Records keep insertion order, which every experiment fixes by grid index.
struct ExperimentReport {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<Record> records;
    std::vector<std::pair<std::string, double>> diagnostics;  // truncation tails, node counts
    double runtime_s = 0;     // wall time; never serialized into the record stream
    bool converged = true;    // false when a truncation estimate exceeded its tolerance

    void param(const std::string& k, const std::string& v) { params.emplace_back(k, v); }
    void param(const std::string& k, double v);
    void diag(const std::string& k, double v) { diagnostics.emplace_back(k, v); }
    Record& add(std::string point, cplx value, double bound, double ratio, Status st);
    // Row asserting ratio <= cap.
    Record& check(std::string point, cplx value, double bound, double ratio, double cap);
    bool passed() const;
    std::string params_string() const;
};

// Shortest round-trip decimal ("%.17g" trimmed); used by both serializers.
std::string format_number(double x);

enum class Format { Jsonl, Csv };
Format parse_format(const std::string& s);

// JSON lines / CSV with columns experiment, params, point, value_re, value_im, bound, ratio, status.
// A final row with point "verdict" carries the report status; diagnostics follow as Info rows.
void write_report(std::ostream& os, const ExperimentReport& r, Format f, bool header = true);
std::string csv_header();

// Flat "key = value" configuration with '#' comments; defaults are embedded.
class Config {
public:
    static Config defaults();
    static Config from_text(const std::string& text, const std::string& origin = "<text>");
    static Config load(const std::string& path);
    // Later entries override earlier ones; unknown keys are rejected.
    void merge(const Config& other);
    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    long get_int(const std::string& key) const;
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace recip
