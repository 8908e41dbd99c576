#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = recip::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) v.push_back(l);
    return v;
}

// Splits one CSV line, honouring double quotes.
std::vector<std::string> csv_fields(const std::string& l) {
    std::vector<std::string> f(1);
    bool quoted = false;
    for (std::size_t i = 0; i < l.size(); ++i) {
        const char c = l[i];
        if (c == '"') {
            if (quoted && i + 1 < l.size() && l[i + 1] == '"')
                f.back() += '"', ++i;
            else
                quoted = !quoted;
        } else if (c == ',' && !quoted)
            f.emplace_back();
        else
            f.back() += c;
    }
    return f;
}

}  // namespace

TEST_CASE("grid and list parsing") {
    CHECK(recip::cli::parse_grid("0:1:3") == std::vector<double>{0, 0.5, 1});
    CHECK(recip::cli::parse_list("1,2.5") == std::vector<double>{1, 2.5});
    CHECK(recip::cli::parse_pairs("5x3,7x4") == std::vector<std::pair<unsigned long, unsigned long>>{{5, 3}, {7, 4}});
    CHECK_THROWS(recip::cli::parse_grid("0:1"));
    CHECK_THROWS(recip::cli::parse_pairs("5-3"));
}

TEST_CASE("exit codes") {
    const auto bad = run({"frobnicate"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("Usage") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"verify", "lemma"}).code == 2);
    CHECK(run({"verify", "lemma", "--name", "no-such-lemma"}).code == 2);
    CHECK(run({"--set", "no.such=1", "sum", "ramanujan", "--q", "4", "--n", "2"}).code == 2);
    CHECK(run({"sum", "hb", "--chi", "5:0", "--h", "1"}).code == 2);  // principal psi is rejected
    CHECK(run({"verify", "lemma", "--name", "vchi-4.3", "--max-prime-power", "27"}).code == 0);
}

TEST_CASE("sum reports the exact value") {
    const auto r = run({"sum", "ramanujan", "--q", "4", "--n", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("exact=-2") != std::string::npos);
    const auto g = run({"sum", "kloosterman", "--m", "1", "--n", "1", "--c", "3", "--backend", "exact"});
    CHECK(g.code == 0);
    const auto ls = lines(g.out);
    const auto row = nlohmann::json::parse(ls[2]);
    CHECK(row["value_re"].get<double>() == doctest::Approx(-1.0));
}

TEST_CASE("csv and jsonl carry identical numbers; reruns are byte-identical") {
    const std::vector<std::string> base{"verify", "lemma", "--name", "primitive-principal", "--max-prime-power", "9"};
    auto j = base, c = base;
    j.insert(j.begin(), {"--format", "jsonl"});
    c.insert(c.begin(), {"--format", "csv"});
    const auto a = run(j), b = run(c), a2 = run(j);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == a2.out);
    const auto jl = lines(a.out), cl = lines(b.out);
    REQUIRE(cl.size() == jl.size() + 1);  // csv header
    for (std::size_t i = 0; i < jl.size(); ++i) {
        const auto row = nlohmann::json::parse(jl[i]);
        const auto f = csv_fields(cl[i + 1]);
        REQUIRE(f.size() == 8);
        CHECK(row["point"].get<std::string>() == f[2]);
        CHECK(row["value_re"].get<double>() == std::stod(f[3]));
        CHECK(row["value_im"].get<double>() == std::stod(f[4]));
        CHECK(row["ratio"].get<double>() == std::stod(f[6]));
        CHECK(row["status"].get<std::string>() == f[7]);
    }
}

TEST_CASE("zfactor reports support consistency") {
    const auto r = run({"zfactor", "--q1", "5", "--q2", "4", "--t", "0.5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("predicted-support=no") != std::string::npos);
    CHECK(run({"zfactor", "--q1", "6", "--q2", "3"}).code == 2);
}
