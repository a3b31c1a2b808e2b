#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>
#include <vector>

// MFREE_CLI_PATH is injected by the build as the absolute path of the binary.

namespace {

struct CmdResult {
    int status = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    std::string cmd = std::string(MFREE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    CmdResult r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int rc = pclose(p);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("count subcommand") {
    auto pair = run_cli("count --pair -n 8 -m 2");
    REQUIRE(pair.status == 0);
    REQUIRE(pair.out == "{\"kind\":\"pair\",\"n\":8,\"m\":2,\"count\":8}\n");

    auto blocks = run_cli("count -n 4 -m 1 -b 2");
    REQUIRE(blocks.status == 0);
    REQUIRE(blocks.out == "{\"kind\":\"blocks\",\"n\":4,\"m\":1,\"b\":2,\"count\":3}\n");

    auto all = run_cli("count -n 4 -m 1");
    REQUIRE(all.status == 0);
    REQUIRE(all.out ==
            "{\"kind\":\"blocks\",\"n\":4,\"m\":1,\"by_blocks\":[0,1,3,3,1],\"total\":8}\n");

    auto text = run_cli("--format text count --pair -n 6 -m 3");
    REQUIRE(text.status == 0);
    REQUIRE(contains(text.out, "5"));
}

TEST_CASE("measure subcommand") {
    auto clt = run_cli("measure clt -m 1");
    REQUIRE(clt.status == 0);
    REQUIRE(contains(clt.out, "\"family\":\"clt\""));
    REQUIRE(contains(clt.out, "\"m\":1"));
    REQUIRE(contains(clt.out, "\"atoms\":[-1,"));
    REQUIRE(contains(clt.out, "\"weights\":[0.5"));

    auto pj = run_cli("measure poisson -m 1 --lambda 1");
    REQUIRE(pj.status == 0);
    REQUIRE(contains(pj.out, "\"family\":\"poisson\""));
    REQUIRE(contains(pj.out, "\"lambda\":1,"));
    REQUIRE(contains(pj.out, "\"atoms\":[0,2]"));
    REQUIRE(contains(pj.out, "\"weights\":[0.5,0.5]"));

    auto checked = run_cli("measure poisson -m 2 --lambda 0.5 --check-moments 8");
    REQUIRE(checked.status == 0);
    REQUIRE(contains(checked.out, "\"max_deviation\":"));
    auto pos = checked.out.find("\"max_deviation\":");
    double dev = std::strtod(checked.out.c_str() + pos + 16, nullptr);
    REQUIRE(dev < 1e-9);

    // determinism: identical bytes across runs
    auto again = run_cli("measure poisson -m 2 --lambda 0.5 --check-moments 8");
    REQUIRE(again.out == checked.out);
}

TEST_CASE("usage errors exit with status 2") {
    REQUIRE(run_cli("measure poisson -m 1").status == 2);       // lambda missing
    REQUIRE(run_cli("measure clt -m 1 --lambda 2").status == 2); // lambda not accepted
    REQUIRE(run_cli("measure exotic -m 1").status == 2);         // unknown family
    REQUIRE(run_cli("count -m 2").status == 2);                  // n missing
    REQUIRE(run_cli("frobnicate").status == 2);                  // unknown subcommand
    REQUIRE(run_cli("converge clt -m 1 -n 2 -N 2 --lambda 1").status == 2);
    REQUIRE(run_cli("verify pyramid -n 3 -m 2").status == 2);    // odd length
    REQUIRE(run_cli("count --pair -n -4 -m 2").status == 2);     // negative n
    REQUIRE(run_cli("--help").status == 0);
}

TEST_CASE("verify suites pass and report structure") {
    auto cf = run_cli("verify closed-forms --m-max 4");
    REQUIRE(cf.status == 0);
    REQUIRE(contains(cf.out, "\"suite\":\"closed-forms\""));
    REQUIRE(contains(cf.out, "\"ok\":true"));
    REQUIRE(!contains(cf.out, "\"ok\":false"));

    auto py = run_cli("verify pyramid -n 4 -m 2");
    REQUIRE(py.status == 0);
    REQUIRE(contains(py.out, "\"suite\":\"pyramid\""));
    REQUIRE(contains(py.out, "\"ok\":true"));

    auto fo = run_cli("verify fock --len 4 -m 2 -d 2");
    REQUIRE(fo.status == 0);
    REQUIRE(contains(fo.out, "\"suite\":\"fock\""));
    REQUIRE(contains(fo.out, "\"ok\":true"));

    auto le = run_cli("verify lemmas -n 4 -m 2");
    REQUIRE(le.status == 0);
    REQUIRE(contains(le.out, "\"suite\":\"lemmas\""));
    REQUIRE(contains(le.out, "\"ok\":true"));
}

TEST_CASE("converge emits a CSV table with shrinking gaps") {
    auto csv = run_cli("converge clt -m 1 -n 4 -N 2,4,8");
    REQUIRE(csv.status == 0);
    REQUIRE(csv.out.rfind("N,finite,limit,gap\n", 0) == 0);

    auto parse_rows = [](const std::string& text) {
        std::vector<std::array<double, 4>> rows;
        size_t pos = text.find('\n') + 1;
        while (pos < text.size()) {
            size_t end = text.find('\n', pos);
            std::string line = text.substr(pos, end - pos);
            std::array<double, 4> row{};
            char* cur = line.data();
            for (int i = 0; i < 4; ++i) {
                row[static_cast<size_t>(i)] = std::strtod(cur, &cur);
                ++cur; // skip comma (one past the end on the last field)
            }
            rows.push_back(row);
            pos = end + 1;
        }
        return rows;
    };

    auto rows = parse_rows(csv.out);
    REQUIRE(rows.size() == 3);
    // N=2 gap 1, N=4 gap 0.5, N=8 gap 0.25 for the built-in site state
    double expect_finite[3] = {2.0, 1.5, 1.25};
    for (size_t i = 0; i < 3; ++i) {
        REQUIRE(rows[i][0] == static_cast<double>(2 << i));
        REQUIRE(rows[i][1] == Catch::Approx(expect_finite[i]).margin(1e-9));
        REQUIRE(rows[i][2] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(rows[i][3] == Catch::Approx(expect_finite[i] - 1.0).margin(1e-9));
    }

    auto pcsv = run_cli("converge poisson -m 1 -n 1 -N 4,8 --lambda 1");
    REQUIRE(pcsv.status == 0);
    REQUIRE(pcsv.out.rfind("N,finite,limit,gap\n", 0) == 0);
    // first moment is lambda at every N
    auto prows = parse_rows(pcsv.out);
    REQUIRE(prows.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        REQUIRE(prows[i][0] == static_cast<double>(4 << i));
        REQUIRE(prows[i][1] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(prows[i][2] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(prows[i][3] == Catch::Approx(0.0).margin(1e-12));
    }

    // byte determinism across runs
    REQUIRE(run_cli("converge clt -m 1 -n 4 -N 2,4,8").out == csv.out);
}

TEST_CASE("resource caps exit with status 3") {
    REQUIRE(run_cli("verify fock --len 9 -m 2 -d 2").status == 3);       // word cap
    REQUIRE(run_cli("--max-entries 10 verify pyramid -n 4 -m 2").status == 3);
    REQUIRE(run_cli("--max-word-len 3 converge clt -m 1 -n 4 -N 2").status == 3);
}
