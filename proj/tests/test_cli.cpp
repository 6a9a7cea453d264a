#include "fixtures.hpp"
#include "schema_check.hpp"

#include <symmetroid/cli.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

using namespace symmetroid;

namespace {

nlohmann::json load_schema()
{
    std::ifstream in(SYMMETROID_SCHEMA_PATH);
    return nlohmann::json::parse(in);
}

RunConfig config(const std::string& sub, const std::string& pencil = "")
{
    RunConfig c;
    c.subcommand = sub;
    if (!pencil.empty())
        c.input = fixtures::path(pencil);
    return c;
}

void expect_valid(const DispatchResult& r)
{
    static const auto schema = load_schema();
    auto errors = schema_check::validate(nlohmann::json::parse(r.report.dump()), schema);
    for (const auto& e : errors)
        ADD_FAILURE() << r.report["command"] << " " << e;
}

} // namespace

TEST(ParsePencilFile, FixturesAndErrors)
{
    EXPECT_EQ(parse_pencil_file(fixtures::path("real_obstruction.pencil")).quadrics()[0].str(), "x0*x1 + x2*x3");
    EXPECT_EQ(parse_pencil_file(fixtures::path("padic_obstruction.pencil")).quadrics()[0].str(), "6*x0^2 - 3*x1^2 + 2*x2^2 - x3^2");
    EXPECT_THROW(parse_pencil_file("/nonexistent/file.pencil"), Error);
    std::string tmp = ::testing::TempDir() + "four.pencil";
    std::ofstream(tmp) << "x0^2\nx1^2\nx2^2\nx3^2\n";
    EXPECT_THROW(parse_pencil_file(tmp), Error);
    std::string rows = ::testing::TempDir() + "rows.pencil";
    {
        std::ofstream out(rows);
        for (int i = 0; i < 5; ++i) {
            for (int k = 0; k < 15; ++k)
                out << (k == 5 * i - i * (i - 1) / 2 ? 1 : 0) << (k + 1 < 15 ? " " : "\n");
        }
    }
    EXPECT_EQ(to_string(parse_pencil_file(rows).discriminant()), "32*t0*t1*t2*t3*t4");
}

TEST(ParseRationalList, Basics)
{
    auto v = parse_rational_list("1, -2, 3/4,+5,0");
    EXPECT_EQ(v, (std::vector<BigRat>{1, -2, BigRat(3, 4), 5, 0}));
    EXPECT_THROW(parse_rational_list("1,,2"), Error);
    EXPECT_THROW(parse_rational_list("1/0"), Error);
    EXPECT_THROW(parse_rational_list("abc"), Error);
}

TEST(Dispatch, CertifyWaRealOnRealObstructionPencil)
{
    auto c = config("certify-wa", "real_obstruction.pencil");
    c.strategy = "real";
    auto r = dispatch(c);
    EXPECT_EQ(r.exit_code, 0) << r.report.dump();
    EXPECT_TRUE(r.report["result"]["validated"].get<bool>());
    expect_valid(r);
}

TEST(Dispatch, DensityBound)
{
    auto c = config("density-bound");
    c.cutoff = 100;
    auto r = dispatch(c);
    EXPECT_EQ(r.exit_code, 0);
    BigRat fb(r.report["result"]["final_bound"].get<std::string>());
    EXPECT_GE(fb, BigRat(73, 100));
    expect_valid(r);
    c.cutoff = 3;
    auto small = dispatch(c);
    EXPECT_EQ(small.report["result"]["partial_product"], "871/1057");
    expect_valid(small);
}

TEST(Dispatch, Census)
{
    auto c = config("census");
    c.prime = 2;
    auto r = dispatch(c);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.report["result"]["count"], "186");
    expect_valid(r);
    c.prime = 5;
    auto bad = dispatch(c);
    EXPECT_EQ(bad.exit_code, 1);
    EXPECT_EQ(bad.report["status"], "error");
    expect_valid(bad);
}

TEST(Dispatch, UnknownSubcommandAndMissingInput)
{
    auto r = dispatch(config("frobnicate"));
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_NE(r.report["result"]["error"].get<std::string>().find("unknown subcommand"), std::string::npos);
    EXPECT_EQ(dispatch(config("alpha-symbol")).exit_code, 1);
}

TEST(Dispatch, EveryFixtureHonoursTheExitCodeContract)
{
    for (auto name : {"real_obstruction.pencil", "smooth_mod5.pencil", "padic_obstruction.pencil"}) {
        for (auto sub : {"alpha-symbol", "sp-scan"}) {
            auto r = dispatch(config(sub, name));
            EXPECT_EQ(r.exit_code, 0) << sub << " " << name;
            EXPECT_EQ(r.report["status"], "ok");
            expect_valid(r);
        }
        auto cl = config("classify", name);
        cl.t = "1,0,0,0,0";
        cl.places = {"Q", "inf", "3", "F4"};
        auto r = dispatch(cl);
        EXPECT_EQ(r.exit_code, 0) << r.report.dump();
        expect_valid(r);

        auto ev = config("evaluate", name);
        ev.t = "1,0,0,0,0";
        ev.places = {"inf", "3"};
        auto e = dispatch(ev);
        EXPECT_EQ(e.exit_code, 0) << e.report.dump();
        expect_valid(e);
    }
}

TEST(Dispatch, RegularityExitCodes)
{
    auto c = config("regularity", "real_obstruction.pencil");
    c.prime = 5;
    auto bad = dispatch(c);
    EXPECT_EQ(bad.exit_code, 2);
    EXPECT_EQ(bad.report["status"], "inconclusive");
    EXPECT_EQ(bad.report["result"]["attempts"][0]["verdict"], "violated");
    expect_valid(bad);

    auto cor = config("regularity", "smooth_mod5.pencil");
    cor.prime = 5;
    auto good = dispatch(cor);
    EXPECT_EQ(good.exit_code, 0);
    expect_valid(good);
}

TEST(Dispatch, XPointAndV3)
{
    auto x = config("x-point", "real_obstruction.pencil");
    x.t = "1,0,0,0,0";
    x.v = "0,0,0,0,1";
    auto r = dispatch(x);
    EXPECT_EQ(r.exit_code, 0);
    expect_valid(r);
    x.v = "1,0,0,0,0";
    EXPECT_EQ(dispatch(x).exit_code, 1);

    auto v3 = config("v3-test", "real_obstruction.pencil");
    auto vr = dispatch(v3);
    EXPECT_EQ(vr.exit_code, 0) << vr.report.dump();
    expect_valid(vr);
}

TEST(Dispatch, MonteCarloSmall)
{
    auto c = config("monte-carlo");
    c.samples = 50;
    c.seed = 4;
    auto r = dispatch(c);
    EXPECT_NE(r.exit_code, 1);
    EXPECT_EQ(r.report["result"]["samples"], 50);
    expect_valid(r);
}

TEST(DefaultWorkers, ReadsEnvironment)
{
    ::setenv("SYMMETROID_WORKERS", "3", 1);
    EXPECT_EQ(default_workers(), 3u);
    ::setenv("SYMMETROID_WORKERS", "zero", 1);
    EXPECT_EQ(default_workers(), 1u);
    ::unsetenv("SYMMETROID_WORKERS");
    EXPECT_EQ(default_workers(), 1u);
}
