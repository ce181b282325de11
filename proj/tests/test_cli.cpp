#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "hypermoment_cli.hpp"

using namespace hypermoment;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("hypermoment-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        unsetenv("HYPERMOMENT_CACHE_DIR");
    }

    void TearDown() override
    {
        unsetenv("HYPERMOMENT_CACHE_DIR");
        fs::remove_all(dir_);
    }

    std::string write(const std::string& name, const std::string& content)
    {
        const auto path = dir_ / name;
        std::ofstream(path) << content;
        return path.string();
    }

    std::string example_seed()
    {
        return write("seed.json", R"({"rank": 2, "order": 2, "values": {"[0,0]": "1/2", "[1,0]": "1", "[0,1]": "2/3",
                                      "[1,1]": "1/5", "[2,0]": "0", "[0,2]": "-1"}})");
    }

    fs::path dir_;
};

} // namespace

TEST_F(CliTest, Catalog)
{
    auto r = run({"catalog"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("chebyshev1"), std::string::npos);
    EXPECT_NE(r.out.find("legendre"), std::string::npos);
    r = run({"catalog", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    ASSERT_EQ(j.at("catalog").size(), 3u);
    EXPECT_EQ(j["catalog"][2]["name"], "legendre");
}

TEST_F(CliTest, LinearizeExamples)
{
    auto r = run({"linearize", "--hypergroup", "chebyshev1", "--n", "1", "--m", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"atoms\":{\"0\":\"1/2\",\"2\":\"1/2\"}}\n");
    r = run({"linearize", "--hypergroup", "chebyshev1", "--n", "4", "--m", "0"});
    EXPECT_EQ(r.out, "{\"atoms\":{\"4\":\"1\"}}\n");
    r = run({"linearize", "--hypergroup", "legendre", "--n", "1", "--m", "1"});
    EXPECT_EQ(r.out, "{\"atoms\":{\"0\":\"1/3\",\"2\":\"2/3\"}}\n");
    r = run({"linearize", "--hypergroup", "legendre", "--n", "1", "--m", "1", "--format", "csv"});
    EXPECT_EQ(r.out, "k,weight\n0,1/3\n2,2/3\n");
}

TEST_F(CliTest, LinearizeErrors)
{
    EXPECT_EQ(run({"linearize", "--hypergroup", "hermite", "--n", "1", "--m", "1"}).code, 2);
    EXPECT_EQ(run({"linearize", "--n", "1"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);

    const auto bad = write("bad.json", R"({"n_max": 3, "a": ["0", "1/2", "1/2", "1/2"], "b": ["0", "-1/2", "0", "0"],
                                         "c": ["1", "1", "1/2", "1/2"]})");
    auto r = run({"linearize", "--spec", bad, "--n", "1", "--m", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("b_1 ≥ 0 fails"), std::string::npos);

    const auto negative = write("alternating.json", R"({"n_max": 4, "a": ["0", "9/10", "1/10", "9/10", "1/10"],
        "b": ["0", "0", "0", "0", "0"], "c": ["1", "1/10", "9/10", "1/10", "9/10"]})");
    r = run({"linearize", "--spec", negative, "--n", "2", "--m", "2"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("NegativeLinearization"), std::string::npos);
    EXPECT_EQ(run({"linearize", "--spec", negative, "--n", "2", "--m", "1"}).code, 0);

    EXPECT_EQ(run({"linearize", "--spec", negative, "--hypergroup", "legendre", "--n", "1", "--m", "1"}).code, 2);
}

TEST_F(CliTest, Convolve)
{
    auto r = run({"convolve", "--hypergroup", "chebyshev1", "--mu", R"({"atoms":{"0":"1/2","2":"1/2"}})", "--nu",
                  R"({"atoms":{"0":"1"}})"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"atoms\":{\"0\":\"1/2\",\"2\":\"1/2\"}}\n");
    const auto mu = write("mu.json", R"({"atoms":{"1":"1"}})");
    r = run({"convolve", "--mu", mu, "--nu", mu});
    EXPECT_EQ(r.out, "{\"atoms\":{\"0\":\"1/2\",\"2\":\"1/2\"}}\n");
    EXPECT_EQ(run({"convolve", "--mu", "{not json"}).code, 2);
}

TEST_F(CliTest, MomentsTable)
{
    const auto seed = example_seed();
    auto r = run({"moments", "--hypergroup", "chebyshev1", "--seed", seed, "--nmax", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto table = io::table_from_json(json::parse(r.out));
    EXPECT_EQ(table.at({0, 0}, 3), Scalar(-1)); // T_3(1/2)
    EXPECT_EQ(table.n_max(), 5u);

    r = run({"moments", "--hypergroup", "chebyshev1", "--seed", seed, "--nmax", "5", "--format", "csv"});
    EXPECT_EQ(r.out.substr(0, r.out.find('\n', r.out.find('\n') + 1)), "alpha,n,value\n\"[0,0]\",0,1");
    EXPECT_EQ(io::table_from_csv(r.out), table);

    r = run({"moments", "--seed", seed, "--nmax", "0", "--format", "csv"});
    EXPECT_EQ(r.out, "alpha,n,value\n\"[0,0]\",0,1\n\"[1,0]\",0,0\n\"[0,1]\",0,0\n\"[2,0]\",0,0\n\"[1,1]\",0,0\n"
                     "\"[0,2]\",0,0\n");

    r = run({"moments", "--seed", seed, "--nmax", "2", "--format", "csv", "--approx"});
    EXPECT_NE(r.out.find("alpha,n,value,approx"), std::string::npos);
}

TEST_F(CliTest, MomentsZeroSeed)
{
    const auto seed = write("zero.json", R"({"rank": 1, "order": 2, "values": {"[0]": "0", "[1]": "0", "[2]": "0"}})");
    auto r = run({"moments", "--hypergroup", "legendre", "--seed", seed, "--nmax", "6"});
    ASSERT_EQ(r.code, 0);
    const auto table = io::table_from_json(json::parse(r.out));
    const auto h = Hypergroup::catalog("legendre");
    for (std::uint64_t n = 0; n <= 6; ++n) {
        EXPECT_EQ(table.at({0}, n), h.eval_basis(n, Scalar(0)));
        EXPECT_EQ(table.at({1}, n), Scalar(0));
        EXPECT_EQ(table.at({2}, n), Scalar(0));
    }
}

TEST_F(CliTest, MomentsIncompleteSeed)
{
    const auto seed = write("partial.json", R"({"rank": 2, "order": 1, "values": {"[0,0]": "1/2"}})");
    auto r = run({"moments", "--seed", seed, "--nmax", "3"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("IncompleteSeed"), std::string::npos);
    EXPECT_NE(r.err.find("[1,0]"), std::string::npos);
    EXPECT_NE(r.err.find("[0,1]"), std::string::npos);
    EXPECT_EQ(run({"moments", "--seed", (dir_ / "missing.json").string(), "--nmax", "3"}).code, 2);
}

TEST_F(CliTest, VerifyExitCodes)
{
    const auto seed = example_seed();
    auto r = run({"verify", "--hypergroup", "chebyshev1", "--seed", seed, "--nmax", "6", "--mmax", "6"});
    EXPECT_EQ(r.code, 0) << r.err;
    auto report = io::report_from_json(json::parse(r.out));
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.checked, 49u * 6);

    const auto h = Hypergroup::catalog("chebyshev1");
    auto table = moment_table(h, io::seed_from_json(json::parse(std::ifstream(seed))), 10);
    const auto good = write("good.csv", io::table_to_csv(table));
    EXPECT_EQ(run({"verify", "--table", good, "--nmax", "5", "--mmax", "5"}).code, 0);

    table.set({1, 0}, 4, table.at({1, 0}, 4) + Scalar(1));
    const auto perturbed = write("perturbed.json", io::to_json(table).dump());
    r = run({"verify", "--table", perturbed, "--nmax", "5", "--mmax", "5"});
    EXPECT_EQ(r.code, 1);
    report = io::report_from_json(json::parse(r.out));
    EXPECT_FALSE(report.violations.empty());

    r = run({"verify", "--table", good, "--nmax", "8", "--mmax", "5"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("TableRangeExceeded"), std::string::npos);

    EXPECT_EQ(run({"verify", "--table", good, "--seed", seed, "--nmax", "1", "--mmax", "1"}).code, 2);
}

TEST_F(CliTest, BellCheck)
{
    auto r = run({"bell-check", "--rank", "1", "--order", "4"});
    EXPECT_EQ(r.code, 0) << r.out;
    auto j = json::parse(r.out);
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_EQ(j["checks"].size(), 3u);

    r = run({"bell-check", "--rank", "2", "--order", "2", "--format", "csv"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, 23), "name,checked,failures\ng");

    const auto family = write("family.json", R"({"rank": 1, "order": 3, "slopes": {"[1]": "1", "[2]": "1/2", "[3]": "0"}})");
    const auto exponential = write("exp.json", R"({"base": "2/3"})");
    r = run({"bell-check", "--family", family, "--exponential", exponential, "--hypergroup", "legendre"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["exponential"]["base"], "2/3");
}

TEST_F(CliTest, OutputIsDeterministic)
{
    const auto seed = example_seed();
    const std::vector<std::string> args{"moments", "--hypergroup", "legendre", "--seed", seed, "--nmax", "7"};
    EXPECT_EQ(run(args).out, run(args).out);
    const std::vector<std::string> bell{"bell-check", "--rank", "2", "--order", "3"};
    EXPECT_EQ(run(bell).out, run(bell).out);
}

TEST_F(CliTest, OutFile)
{
    const auto path = (dir_ / "lin.json").string();
    auto r = run({"linearize", "--n", "2", "--m", "3", "--out", path});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(content, "{\"atoms\":{\"1\":\"1/2\",\"5\":\"1/2\"}}\n");
}

TEST_F(CliTest, CacheDirectoryPersistsLinearizations)
{
    const auto cache = dir_ / "cache";
    setenv("HYPERMOMENT_CACHE_DIR", cache.c_str(), 1);
    auto first = run({"linearize", "--hypergroup", "legendre", "--n", "6", "--m", "4"});
    ASSERT_EQ(first.code, 0);
    const auto file = cache / "linearization-legendre.json";
    ASSERT_TRUE(fs::exists(file));
    const auto stored = io::linearization_cache_from_json(json::parse(std::ifstream(file)));
    EXPECT_TRUE(stored.contains({6, 4}));

    auto second = run({"linearize", "--hypergroup", "legendre", "--n", "6", "--m", "4"});
    EXPECT_EQ(second.out, first.out);

    std::ofstream(file) << "{corrupt";
    auto third = run({"linearize", "--hypergroup", "legendre", "--n", "6", "--m", "4"});
    EXPECT_EQ(third.code, 0);
    EXPECT_EQ(third.out, first.out);
    EXPECT_NE(third.err.find("warning"), std::string::npos);

    unsetenv("HYPERMOMENT_CACHE_DIR");
    run({"linearize", "--hypergroup", "chebyshev2", "--n", "2", "--m", "2"});
    EXPECT_FALSE(fs::exists(cache / "linearization-chebyshev2.json"));
}
