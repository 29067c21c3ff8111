#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "lucky/cli.hpp"
#include "lucky/format.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = lucky::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args)
{
    args.insert(args.begin(), {"--format", "json"});
    const auto r = run(args);
    REQUIRE(r.code == 0);
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("simulate")
{
    const auto j = run_json({"simulate", "--prefs", "1,7,4,4,3,7,9,3,1"});
    CHECK(j["outcome"] == "195348267");
    CHECK(j["lucky"] == nlohmann::json({1, 2, 3, 5, 7}));
    CHECK(j["parks"] == true);
    CHECK(j["cars"].size() == 9);

    const auto fail = run_json({"simulate", "--prefs", "2,2"});
    CHECK(fail["parks"] == false);
    CHECK(fail["failed_car"] == 2);

    const auto rect = run_json({"simulate", "--prefs", "2,2", "--spots", "4"});
    CHECK(rect["outcome"] == "X12X");
}

TEST_CASE("count with breakdown")
{
    const auto j = run_json({"count", "--n", "5", "--lucky", "1,4", "--breakdown"});
    CHECK(j["total"] == "24");
    const auto rows = j["breakdown"];
    REQUIRE(rows.size() == 4);
    const std::vector<std::pair<std::string, std::string>> expected{
        {"12345", "8"}, {"12354", "6"}, {"41235", "8"}, {"45123", "2"}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(rows[i]["outcome"] == expected[i].first);
        CHECK(rows[i]["parking_functions"] == expected[i].second);
    }
}

TEST_CASE("outcomes")
{
    const auto j = run_json({"outcomes", "--n", "3", "--lucky", "1"});
    REQUIRE(j["outcomes"].size() == 1);
    CHECK(j["outcomes"][0]["outcome"] == "123");
    const auto inc = run_json({"outcomes", "--m", "7", "--spots", "10", "--lucky", "5,1,4", "--increasing"});
    CHECK(inc["outcome_count"] == 20);
}

TEST_CASE("weakly increasing counts")
{
    const auto j = run_json({"count", "--m", "9", "--spots", "11", "--lucky", "1,4,5", "--weakly-increasing"});
    CHECK(j["total"] == "10992");
    CHECK(j["compositions"].size() == 4);
    CHECK(j["weakly_increasing_lists"] == "280");
    const auto sq = run_json({"count", "--n", "5", "--lucky", "1,4", "--weakly-increasing"});
    CHECK(sq["total"] == "2");
}

TEST_CASE("gessel-seo")
{
    const auto j = run_json({"gessel-seo", "--n", "6", "--check"});
    CHECK(j["polynomial"] == "120q + 1318q^2 + 4553q^3 + 6388q^4 + 3708q^5 + 720q^6");
    CHECK(j["decomposition_holds"] == true);
}

TEST_CASE("verify passes at small sizes and documents the gap bound")
{
    const auto r = run({"--format", "json", "verify", "--max-n", "5"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"] == "pass");
    CHECK(j["notes"][0].get<std::string>().find("j_(i+1)-j_i-1") != std::string::npos);
}

TEST_CASE("usage errors exit 1 and name the flag")
{
    auto r = run({"count", "--n", "5", "--lucky", "1,4,4"});
    CHECK(r.code == 1);
    CHECK(r.err.find("--lucky") != std::string::npos);

    r = run({"count", "--n", "5", "--lucky", "2,3"});
    CHECK(r.code == 1);
    CHECK(r.err.find("--lucky") != std::string::npos);

    r = run({"count", "--m", "6", "--spots", "5", "--lucky", "1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("--m") != std::string::npos);

    r = run({"count", "--n", "5", "--m", "3", "--lucky", "1"});
    CHECK(r.code == 1);

    r = run({"simulate", "--prefs", "1,x"});
    CHECK(r.code == 1);
    CHECK(r.err.find("--prefs") != std::string::npos);

    r = run({"--format", "xml", "simulate", "--prefs", "1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("--format") != std::string::npos);

    r = run({});
    CHECK(r.code == 1);
}

TEST_CASE("budget overruns report the estimate")
{
    const auto r = run({"--budget", "10", "count", "--m", "9", "--spots", "11", "--lucky", "1,4,5",
                        "--weakly-increasing"});
    CHECK(r.code == 1);
    CHECK(r.err.find("92378") != std::string::npos);
}

TEST_CASE("json output is byte-deterministic across thread counts")
{
    const auto a = run({"--format", "json", "--threads", "1", "count", "--n", "6", "--lucky", "1,3", "--breakdown"});
    const auto b = run({"--format", "json", "--threads", "4", "count", "--n", "6", "--lucky", "1,3", "--breakdown"});
    CHECK(a.out == b.out);
}

TEST_CASE("csv quoting")
{
    using lucky::format::csv_field;
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("1,4") == "\"1,4\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("a\nb") == "\"a\nb\"");

    const auto r = run({"--format", "csv", "count", "--n", "5", "--lucky", "1,4", "--breakdown"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("outcome,parking_functions\r\n12345,8\r\n", 0) == 0);
    CHECK(r.out.find("lucky,\"1,4\"\r\n") != std::string::npos);
}

TEST_CASE("plain output")
{
    const auto r = run({"count", "--n", "5", "--lucky", "1,4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("total: 24\n") != std::string::npos);
}
