#include "doctest.h"

#include "ddlrd/mc_harness.hpp"

#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace ddlrd;
namespace fs = std::filesystem;

namespace {

StudyConfig small_config(ProcessKind kind, double d)
{
    StudyConfig c;
    c.process = kind;
    c.d = d;
    c.n = 2000;
    c.replications = 40;
    c.master_seed = 77;
    c.grid = "paper";
    c.lags = {0, 1, 5};
    c.partial_sum_grid = {0.5, 1.0};
    return c;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("ddlrd_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("config validation")
{
    StudyConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.n == 10000);
    CHECK(c.replications == 500);
    auto bad = [](auto mutate) {
        StudyConfig x;
        mutate(x);
        return x;
    };
    CHECK_THROWS(bad([](StudyConfig& x) { x.d = 0.5; }).validate());
    CHECK_THROWS(bad([](StudyConfig& x) { x.n = 15; }).validate());
    CHECK_THROWS(bad([](StudyConfig& x) { x.replications = 0; }).validate());
    CHECK_THROWS(bad([](StudyConfig& x) { x.workers = 0; }).validate());
    CHECK_THROWS(bad([](StudyConfig& x) { x.lags = {10000}; }).validate());
    CHECK_THROWS(bad([](StudyConfig& x) { x.grid = "n^0.9"; }).validate());
    CHECK_THROWS(bad([](StudyConfig& x) { x.noise = "cauchy"; }).validate());
    CHECK_THROWS(bad([](StudyConfig& x) { x.gph_m = 6000; }).validate());
    CHECK_THROWS(bad([](StudyConfig& x) {
                     x.process = ProcessKind::parke;
                     x.ecdf_grid = {0.0};
                 }).validate());
}

TEST_CASE("JSON config round trip and overrides")
{
    StudyConfig c = small_config(ProcessKind::parke, 0.3);
    c.ad_variant = AdVariant::simple;
    StudyConfig back;
    merge_json(back, to_json(c));
    CHECK(to_json(back) == to_json(c));
    StudyConfig partial;
    merge_json(partial, nlohmann::json{{"d", 0.2}, {"lags", {2, 3}}});
    CHECK(partial.d == 0.2);
    CHECK(partial.lags == std::vector<std::int64_t>{2, 3});
    CHECK(partial.n == 10000);
    CHECK_THROWS_AS(merge_json(partial, nlohmann::json{{"dd", 0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(merge_json(partial, nlohmann::json{{"d", "x"}}), std::invalid_argument);
    CHECK_THROWS_AS(merge_json(partial, nlohmann::json::array()), std::invalid_argument);
}

TEST_CASE("results do not depend on the worker count")
{
    StudyConfig c = small_config(ProcessKind::parke, 0.4);
    c.workers = 1;
    const McStudy one = run_study(c);
    c.workers = 4;
    const McStudy four = run_study(c);
    const fs::path a = scratch("w1");
    const fs::path b = scratch("w4");
    write_study(one, summarize(one), a);
    write_study(four, summarize(four), b);
    for (const auto& entry : fs::recursive_directory_iterator(a)) {
        if (entry.is_regular_file()) {
            const fs::path rel = fs::relative(entry.path(), a);
            CAPTURE(rel.string());
            CHECK(slurp(entry.path()) == slurp(b / rel));
        }
    }
}

TEST_CASE("replications are independent substreams")
{
    StudyConfig c = small_config(ProcessKind::taqqu_levy, 0.2);
    const McStudy full = run_study(c);
    c.replications = 7;
    const McStudy fewer = run_study(c);
    for (std::size_t r = 0; r < 7; ++r) {
        CHECK(fewer.replications[r].dft[3].a == full.replications[r].dft[3].a);
        CHECK(fewer.replications[r].gamma_hat == full.replications[r].gamma_hat);
    }
    const ReplicationResult alone = run_replication(small_config(ProcessKind::taqqu_levy, 0.2), 23);
    CHECK(alone.gamma_hat == full.replications[23].gamma_hat);
    CHECK(alone.gph_d == full.replications[23].gph_d);
    CHECK(replication_seed(5, 1) != replication_seed(5, 2));
}

TEST_CASE("one replication gives degenerate summaries")
{
    StudyConfig c = small_config(ProcessKind::parke, 0.1);
    c.replications = 1;
    const McStudy s = run_study(c);
    const StudySummary sum = summarize(s);
    CHECK(sum.degenerate);
    CHECK(sum.kept == 1);
    CHECK(s.replications[0].dft.size() == s.grid.indices.size());
    CHECK(std::isnan(sum.frequencies[0].variance_a));
    CHECK(std::isnan(sum.frequencies[0].ad_a.p_value));
    const fs::path dir = scratch("one");
    CHECK_NOTHROW(write_study(s, sum, dir));
    CHECK(fs::exists(dir / "cells" / "dft.csv"));
}

TEST_CASE("summaries are recomputable from the cell files")
{
    const StudyConfig c = small_config(ProcessKind::taqqu_levy, 0.3);
    const McStudy s = run_study(c);
    const StudySummary sum = summarize(s);
    const fs::path dir = scratch("cells");
    write_study(s, sum, dir);
    // re-read a_norm at every grid point; 17 significant digits round-trip exactly
    std::ifstream in(dir / "cells" / "dft.csv");
    std::string line;
    std::getline(in, line);
    std::map<std::int64_t, std::vector<double>> by_j;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::vector<std::string> f;
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            f.push_back(tok);
        }
        by_j[std::stoll(f[1])].push_back(std::stod(f[7]));
    }
    for (const auto& fr : sum.frequencies) {
        CHECK(by_j[fr.j].size() == 40);
        CHECK(sample_variance(by_j[fr.j]) == fr.variance_a);
    }
    CHECK(summarize(s).frequencies[2].ad_a.p_value == sum.frequencies[2].ad_a.p_value);
}

TEST_CASE("output layout and manifest checksums")
{
    StudyConfig c = small_config(ProcessKind::taqqu_levy, 0.1);
    c.keep_sweep = true;
    c.ecdf_grid = {-1.0, 0.0, 1.0};
    const McStudy s = run_study(c);
    const fs::path dir = scratch("layout");
    write_study(s, summarize(s), dir);
    for (const char* f : {"config.json", "MANIFEST", "cells/dft.csv", "cells/acf_deviation.csv", "cells/gph.csv",
                          "cells/partial_sums.csv", "cells/ecdf_deviation.csv", "summaries/frequencies.csv",
                          "summaries/lags.csv", "summaries/summary.json", "summaries/log_periodogram.csv"}) {
        CAPTURE(f);
        CHECK(fs::exists(dir / f));
    }
    const auto summary = nlohmann::json::parse(slurp(dir / "summaries" / "summary.json"));
    for (const auto& t : summary.at("tests")) {
        CHECK(t.contains("test"));
        CHECK(t.contains("statistic"));
        CHECK(t.contains("p_value"));
        CHECK(t.contains("reject"));
    }
    std::ifstream manifest(dir / "MANIFEST");
    std::string name;
    std::size_t size = 0;
    std::string hash;
    int entries = 0;
    while (manifest >> name >> size >> hash) {
        const std::string content = slurp(dir / name);
        CHECK(content.size() == size);
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : content) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        CHECK(std::stoull(hash, nullptr, 16) == h);
        ++entries;
    }
    CHECK(entries >= 10);
}

TEST_CASE("failure budget")
{
    McStudy s;
    s.replications.resize(200);
    s.replications[3].failed = true;
    s.replications[3].error = "boom";
    s.replications[4].discards = 2;
    CHECK_NOTHROW(enforce_failure_budget(s));
    CHECK(s.failures == 1);
    CHECK(s.discard_total == 2);
    s.replications[9].failed = true;
    CHECK_NOTHROW(enforce_failure_budget(s));
    s.replications[10].failed = true;
    CHECK_THROWS_AS(enforce_failure_budget(s), StudyFailure);
}

TEST_CASE("moment warning for heavy-tailed noise")
{
    StudyConfig c = small_config(ProcessKind::parke, 0.1);
    c.replications = 2;
    c.noise = "t:3";  // needs more than 2 alpha = 3.6 moments
    CHECK(run_study(c).warnings.size() == 1);
    c.noise = "gaussian";
    CHECK(run_study(c).warnings.empty());
}

TEST_CASE("Taqqu-Levy d=0.4 discards constant paths at n=10000")
{
    StudyConfig c;
    c.d = 0.4;
    c.replications = 500;
    c.grid = "none";
    c.lags = {};
    c.compute_gph = false;
    const McStudy s = run_study(c);
    // P(constant) = gamma(9999)/gamma(0) = 0.1064, so about 60 discards are expected
    CHECK(s.discard_total > 20);
    CHECK(s.discard_total < 120);
}

TEST_CASE("table reproduction layout")
{
    const fs::path dir = scratch("tables");
    const TableSet t = reproduce_tables(20, 42, 1000, 2, dir);
    CHECK(t.taqqu_levy.size() == 12);
    CHECK(t.parke.size() == 12);
    CHECK(t.taqqu_levy[0].label == "n^0.2");
    CHECK(t.taqqu_levy[11].label == "n/2-1");
    CHECK(t.parke[6].d == 0.4);
    for (const char* f : {"table1_taqqu_levy.csv", "table2_parke.csv", "tables.txt"}) {
        CHECK(fs::exists(dir / f));
    }
    const std::string csv = slurp(dir / "table1_taqqu_levy.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
    const TableSet again = reproduce_tables(20, 42, 1000, 1);
    CHECK(again.parke[3].ci.s2 == t.parke[3].ci.s2);
}

TEST_CASE("worker count from the environment")
{
    ::setenv("DDLRD_WORKERS", "3", 1);
    CHECK(workers_from_env(1) == 3);
    ::setenv("DDLRD_WORKERS", "zero", 1);
    CHECK(workers_from_env(2) == 2);
    ::unsetenv("DDLRD_WORKERS");
    CHECK(workers_from_env(5) == 5);
}
