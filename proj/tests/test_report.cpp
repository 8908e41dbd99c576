#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "recip/report.hpp"

using namespace recip;

TEST_CASE("number formatting round-trips") {
    for (double x : {0.0, 1.0, -2.5, 0.1, 1e-300, 6.02214076e23, 1.0 / 3}) CHECK(std::stod(format_number(x)) == x);
    CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("serializers carry the same numbers") {
    ExperimentReport r;
    r.experiment = "demo";
    r.param("q", 5.0);
    r.add("a=1", cplx(0.1, -2), 3, 0.25, Status::Pass);
    r.check("a=2", cplx(1, 0), 1, 2, 1);
    CHECK_FALSE(r.passed());
    std::ostringstream j, c;
    write_report(j, r, Format::Jsonl);
    write_report(c, r, Format::Csv);
    std::istringstream js(j.str());
    std::string line;
    std::getline(js, line);
    const auto row = nlohmann::json::parse(line);
    CHECK(row["value_re"].get<double>() == 0.1);
    CHECK(row["value_im"].get<double>() == -2.0);
    CHECK(row["status"] == "PASS");
    CHECK(c.str().rfind(csv_header(), 0) == 0);
    CHECK(c.str().find("demo,q=5,a=1,0.1,-2,3,0.25,PASS") != std::string::npos);
    CHECK(j.str().find("\"point\":\"verdict\"") != std::string::npos);
}

TEST_CASE("configuration") {
    Config c = Config::defaults();
    CHECK(c.get_int("seed") == 20240601);
    c.merge(Config::from_text("# comment\nseed = 7\nformat = csv\n"));
    CHECK(c.get_int("seed") == 7);
    CHECK(parse_format(c.get("format")) == Format::Csv);
    CHECK_THROWS_AS(c.set("no.such.key", "1"), std::invalid_argument);
    CHECK_THROWS(Config::from_text("seed 7\n"));
    CHECK_THROWS(parse_format("xml"));
}
