#include "catch_amalgamated.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "arrcalc_cli.hpp"

using Catch::Matchers::ContainsSubstring;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::initializer_list<std::string> args) {
    std::vector<std::string> storage{"arrcalc"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage) {
        argv.push_back(s.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = arr::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(ARR_SAMPLES_DIR) + "/" + name; }

} // namespace

TEST_CASE("verify subcommand", "[cli]") {
    const Run gala = run({"verify", "--checks", "gala", "--rank-min", "1", "--rank-max", "4"});
    CHECK(gala.code == 0);
    CHECK_THAT(gala.out, ContainsSubstring("PASS gala n=4"));
    CHECK_THAT(gala.out, ContainsSubstring("7/7 checks passed"));

    const Run chtd = run({"verify", "--checks", "prop_chtd", "--rank-min", "1", "--rank-max", "1"});
    CHECK(chtd.code == 0);

    const Run all = run({"verify", "--rank-max", "3", "--output", "machine"});
    CHECK(all.code == 0);
    const auto j = nlohmann::json::parse(all.out);
    CHECK(j["status"] == "pass");
    CHECK(j["results"].size() == 17);
}

TEST_CASE("verify usage errors", "[cli]") {
    const Run unknown = run({"verify", "--checks", "gala,riemann"});
    CHECK(unknown.code == 2);
    CHECK_THAT(unknown.err, ContainsSubstring("unknown check 'riemann'"));

    const Run capped = run({"verify", "--rank-max", "7"});
    CHECK(capped.code == 2);
    CHECK_THAT(capped.err, ContainsSubstring("combinatorially"));

    CHECK(run({"verify", "--rank-min", "3", "--rank-max", "2"}).code == 2);
    CHECK(run({"verify", "--rank-min", "0"}).code == 2);
    CHECK(run({"verify", "--checks", "borel_serre", "--rank-max", "3", "--max-degree", "2"}).code == 2);
    CHECK(run({"verify", "--checks", "borel_serre", "--rank-max", "3", "--max-degree", "4"}).code == 0);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("conductor subcommand", "[cli]") {
    const Run good = run({"conductor", "--model", sample("good_reduction.json")});
    CHECK(good.code == 0);
    CHECK_THAT(good.out, ContainsSubstring("A(X) = 1, log|ε(X)| = 0"));

    const Run smooth = run({"conductor", "--model", sample("smooth_fiber.json")});
    CHECK(smooth.code == 0);
    CHECK_THAT(smooth.out, ContainsSubstring("A(X) = 1, log|ε(X)| = 0"));

    const Run i3 = run({"conductor", "--model", sample("kodaira_i3_p5.json")});
    CHECK(i3.code == 0);
    CHECK_THAT(i3.out, ContainsSubstring("f_p = chi(X_Q) - chi(X_p) = -3"));
    CHECK_THAT(i3.out, ContainsSubstring("bloch degree = 3"));
    CHECK_THAT(i3.out, ContainsSubstring("A(X) = 5^-3, log|ε(X)| = -3*log 5"));
    CHECK_THAT(i3.out, ContainsSubstring("approximate"));

    const Run machine = run({"conductor", "--model", sample("kodaira_i3_p5.json"), "--output", "machine"});
    CHECK(machine.code == 0);
    const auto j = nlohmann::json::parse(machine.out);
    CHECK(j["primes"][0]["exponent"] == -3);
    CHECK(j["primes"][0]["bloch_degree"] == 3);
    CHECK(arr::io::report_from_json(j) ==
          arr::conductor::compute_conductor(arr::io::load_model(sample("kodaira_i3_p5.json"))));
    CHECK(machine.out == run({"conductor", "--model", sample("kodaira_i3_p5.json"), "--output", "machine"}).out);

    const Run wild = run({"conductor", "--model", sample("wild_p2.json")});
    CHECK(wild.code == 1);
    CHECK_THAT(wild.err, ContainsSubstring("B"));
    CHECK_THAT(wild.err, ContainsSubstring("tame"));

    CHECK(run({"conductor", "--model", sample("missing.json")}).code == 2);
    CHECK(run({"conductor"}).code == 2);
}

TEST_CASE("explain subcommand", "[cli]") {
    const Run i2 = run({"explain", "--model", sample("kodaira_i2_p3.json")});
    CHECK(i2.code == 0);
    CHECK_THAT(i2.out, ContainsSubstring("{T1,T2}"));
    CHECK_THAT(i2.out, ContainsSubstring("form 1"));
    CHECK_THAT(i2.out, ContainsSubstring("form 2"));
    // χ_c(T*_1) = χ_c(T*_2) = 0 and χ_c(T*_12) = 2.
    CHECK_THAT(i2.out, ContainsSubstring("{T1}                    2           0"));
    CHECK_THAT(i2.out, ContainsSubstring("{T1,T2}                 2           2"));

    const Run single = run({"explain", "--model", sample("smooth_fiber.json")});
    CHECK(single.code == 0);
    CHECK_THAT(single.out, ContainsSubstring("{T1}"));

    const std::string path = (std::filesystem::temp_directory_path() / "arrcalc_missing_chi.json").string();
    {
        std::ofstream f(path);
        f << R"({"relative_dimension": 1, "fibers": [{"prime": 5, "components": [{"id": "T1", "multiplicity": 1}], "strata": [{"components": ["T1"]}]}]})";
    }
    const Run missing = run({"explain", "--model", path});
    std::remove(path.c_str());
    CHECK(missing.code == 2);
    CHECK_THAT(missing.err, ContainsSubstring("stratum {T1}"));
}
