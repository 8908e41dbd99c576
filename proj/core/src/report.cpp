#include "recip/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace recip {

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Info: return "INFO";
    }
    return "INFO";
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0) return "0";
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

void ExperimentReport::param(const std::string& k, double v) { params.emplace_back(k, format_number(v)); }

Record& ExperimentReport::add(std::string point, cplx value, double bound, double ratio, Status st) {
    records.push_back(Record{std::move(point), value, bound, ratio, st});
    return records.back();
}

Record& ExperimentReport::check(std::string point, cplx value, double bound, double ratio, double cap) {
    const bool ok = std::isfinite(ratio) && ratio <= cap;
    return add(std::move(point), value, bound, ratio, ok ? Status::Pass : Status::Fail);
}

bool ExperimentReport::passed() const {
    if (!converged) return false;
    for (const Record& r : records)
        if (r.status == Status::Fail) return false;
    return true;
}

std::string ExperimentReport::params_string() const {
    std::string s;
    for (const auto& [k, v] : params) {
        if (!s.empty()) s += ';';
        s += k + '=' + v;
    }
    return s;
}

Format parse_format(const std::string& s) {
    if (s == "jsonl" || s == "json") return Format::Jsonl;
    if (s == "csv") return Format::Csv;
    throw std::invalid_argument("unknown format '" + s + "' (jsonl|csv)");
}

std::string csv_header() { return "experiment,params,point,value_re,value_im,bound,ratio,status"; }

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

void write_row(std::ostream& os, Format f, const std::string& exp, const std::string& params, const Record& r) {
    const std::string re = format_number(r.value.real()), im = format_number(r.value.imag());
    const std::string bd = format_number(r.bound), ra = format_number(r.ratio), st = to_string(r.status);
    if (f == Format::Csv) {
        os << csv_field(exp) << ',' << csv_field(params) << ',' << csv_field(r.point) << ',' << re << ',' << im << ','
           << bd << ',' << ra << ',' << st << '\n';
        return;
    }
    // numbers are emitted as the same literals the CSV carries
    auto str = [](const std::string& s) { return nlohmann::json(s).dump(); };
    auto num = [&](const std::string& s) { return (s == "nan" || s == "inf" || s == "-inf") ? str(s) : s; };
    os << "{\"experiment\":" << str(exp) << ",\"params\":" << str(params) << ",\"point\":" << str(r.point)
       << ",\"value_re\":" << num(re) << ",\"value_im\":" << num(im) << ",\"bound\":" << num(bd)
       << ",\"ratio\":" << num(ra) << ",\"status\":" << str(st) << "}\n";
}

}  // namespace

void write_report(std::ostream& os, const ExperimentReport& r, Format f, bool header) {
    if (f == Format::Csv && header) os << csv_header() << '\n';
    const std::string params = r.params_string();
    for (const Record& rec : r.records) write_row(os, f, r.experiment, params, rec);
    for (const auto& [k, v] : r.diagnostics) write_row(os, f, r.experiment, params, Record{"diag:" + k, v, 0, 0, Status::Info});
    Record verdict{"verdict", 0, 0, 0, r.passed() ? Status::Pass : Status::Fail};
    write_row(os, f, r.experiment, params, verdict);
}

namespace {

const char* kDefaults = R"(# defaults
seed = 20240601
backend = auto
format = jsonl
# character-sum sweeps
sweep.max_prime_power = 27
sweep.random_cases = 100
# transforms
transform.T = 30
transform.U = 5
transform.C = 3
transform.mu = 0
hscript.sigma2 = 0.5
hscript.tau_max = 1e6
tol.transform = 1e-6
# coset second moment
coset.cap = 20
coset.nodes_per_unit = 8
# GL(3) second moment
gl3.cap = 20
gl3.nodes_per_unit = 8
# dual moment
dual.cap = 20
dual.nodes_per_unit = 8
dual.pair_T = 30
dual.pair_U = 5
dual.pair_C = 3
# Heath-Brown tables
hb.cap = 10
hb.A = 8
hb.B = 8
# end-to-end Voronoi identity
voronoi.w = 4
voronoi.s = -14
voronoi.x1 = 1
voronoi.delta = 1
voronoi.ell_max = 40
voronoi.c0_max = 27
voronoi.n2_max = 200
voronoi.tau_max = 1000
tol.voronoi = 1e-3
)";

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::from_text(const std::string& text, const std::string& origin) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (k.empty()) throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": empty key");
        c.values_[k] = v;
    }
    return c;
}

Config Config::defaults() {
    static const Config d = from_text(kDefaults, "<defaults>");
    return d;
}

Config Config::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_text(ss.str(), path);
}

void Config::merge(const Config& other) {
    for (const auto& [k, v] : other.values_) set(k, v);
}

void Config::set(const std::string& key, const std::string& value) {
    if (!defaults().has(key)) throw std::invalid_argument("unknown config key '" + key + "'");
    values_[key] = value;
}

const std::string& Config::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::out_of_range("missing config key '" + key + "'");
    return it->second;
}

double Config::get_double(const std::string& key) const {
    const std::string& v = get(key);
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("config key '" + key + "' is not a number: " + v);
    return x;
}

long Config::get_int(const std::string& key) const {
    const double x = get_double(key);
    if (x != std::floor(x)) throw std::invalid_argument("config key '" + key + "' is not an integer");
    return static_cast<long>(x);
}

}  // namespace recip
