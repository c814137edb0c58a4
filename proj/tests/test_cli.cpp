#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const char* cli_path() { return DYNDIST_CLI_PATH; }

std::string tmp_file(const std::string& name, const std::string& content) {
    const std::string path = std::string("cli_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
    const std::string out_path = "cli_test_stdout.txt";
    const std::string cmd =
        std::string(cli_path()) + " " + args + " > " + out_path + " 2>&1";
    const int rc = std::system(cmd.c_str());
    if (output) {
        std::ifstream in(out_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        *output = buf.str();
    }
    return WEXITSTATUS(rc);
}

std::vector<std::string> digests_of(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        // id,command,wall_ms,field_ops,digest[,...]
        size_t pos = 0;
        for (int c = 0; c < 4; ++c) pos = line.find(',', pos) + 1;
        const size_t end = line.find(',', pos);
        out.push_back(line.substr(pos, end == std::string::npos
                                           ? std::string::npos
                                           : end - pos));
    }
    return out;
}

}  // namespace

TEST_CASE("empty stream yields a header-only csv, exit 0") {
    const std::string g = tmp_file("g1.txt", "2 1 directed\na b 1\n");
    const std::string s = tmp_file("s1.txt", "");
    std::string out;
    const int rc = run_cli("--graph " + g + " --stream " + s + " --mode apsp",
                           &out);
    CHECK(rc == 0);
    CHECK(out == "id,command,wall_ms,field_ops,digest\n");
}

TEST_CASE("single self-query answers zero") {
    const std::string g = tmp_file("g2.txt", "1 0 directed\n");
    const std::string s = tmp_file("s2.txt", "Q a;a\n");
    std::string out;
    const int rc = run_cli("--graph " + g + " --stream " + s +
                               " --mode apsp --oracle-check",
                           &out);
    CHECK(rc == 0);
    CHECK(digests_of(out).size() == 1);
}

TEST_CASE("parse errors: weights below one, bad header, bad command") {
    const std::string bad_w = tmp_file("g3.txt", "2 1 directed\na b 0.5\n");
    std::string out;
    CHECK(run_cli("--graph " + bad_w + " --mode apsp", &out) == 2);
    CHECK(out.find("weights must be >= 1") != std::string::npos);

    const std::string bad_h = tmp_file("g4.txt", "2 1 sideways\na b 1\n");
    CHECK(run_cli("--graph " + bad_h + " --mode apsp", &out) == 2);

    const std::string g = tmp_file("g5.txt", "2 1 directed\na b 1\n");
    const std::string bad_c = tmp_file("s5.txt", "Z what\n");
    CHECK(run_cli("--graph " + g + " --stream " + bad_c + " --mode apsp",
                  &out) == 2);
    CHECK(out.find("line 1") != std::string::npos);
}

TEST_CASE("node interning: more names than n is an error") {
    const std::string g = tmp_file("g6.txt", "2 2 directed\na b 1\nb c 1\n");
    std::string out;
    CHECK(run_cli("--graph " + g + " --mode apsp", &out) == 2);
}

TEST_CASE("update stream with oracle check stays within bounds") {
    const std::string g = tmp_file(
        "g7.txt", "4 5 directed\na b 1\nb c 1\nc d 1\nd a 1\na c 3\n");
    const std::string s = tmp_file("s7.txt",
                                   "Q a,b;c,d\n"
                                   "U a c 2\n"
                                   "Q a,b,c,d;a,b,c,d\n"
                                   "U a c inf\n"
                                   "Q a;c\n");
    std::string out;
    const int rc = run_cli("--graph " + g + " --stream " + s +
                               " --mode apsp --epsilon 0.3 --oracle-check",
                           &out);
    CHECK(rc == 0);
    CHECK(digests_of(out).size() == 3);
}

TEST_CASE("same seed is digest-identical; different seed generally is not") {
    const std::string g = tmp_file(
        "g8.txt", "5 6 directed\na b 1\nb c 2\nc d 1\nd e 2\ne a 1\nb e 3\n");
    const std::string s = tmp_file("s8.txt",
                                   "Q a,b,c;d,e\n"
                                   "U b e 1\n"
                                   "Q a,b,c,d,e;a,b,c,d,e\n"
                                   "S a\n");
    std::string out1, out2;
    CHECK(run_cli("--graph " + g + " --stream " + s +
                      " --mode apsp --seed 7 --csv-out cli_run1.csv",
                  &out1) == 0);
    CHECK(run_cli("--graph " + g + " --stream " + s +
                      " --mode apsp --seed 7 --csv-out cli_run2.csv",
                  &out2) == 0);
    std::ifstream a("cli_run1.csv"), b("cli_run2.csv");
    std::string la, lb;
    std::getline(a, la);
    std::getline(b, lb);
    CHECK(la == lb);  // header
    // Compare digests only (wall times differ).
    std::ostringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(digests_of("x\n" + sa.str()) == digests_of("x\n" + sb.str()));
}

TEST_CASE("sssp mode and S command") {
    const std::string g =
        tmp_file("g9.txt", "4 4 directed\ns a 1\na b 1\nb t 1\ns t 4\n");
    const std::string st = tmp_file("s9.txt", "S s\nU s t 2\nS s\n");
    std::string out;
    const int rc = run_cli("--graph " + g + " --stream " + st +
                               " --mode sssp --epsilon 0.4 --oracle-check",
                           &out);
    CHECK(rc == 0);
    CHECK(digests_of(out).size() == 2);
}

TEST_CASE("metric modes run their commands") {
    const std::string g = tmp_file(
        "g10.txt",
        "6 6 undirected\na b 1\nb c 1\nc d 1\nd e 1\ne f 1\nf a 1\n");

    for (const std::string mode :
         {std::string("ecc"), std::string("closeness")}) {
        const std::string st =
            tmp_file("s10.txt", mode == "ecc" ? "E\n" : "C\n");
        std::string out;
        const int rc = run_cli("--graph " + g + " --stream " + st + " --mode " +
                                   mode + " --epsilon 0.2 --oracle-check",
                               &out);
        INFO(mode, ": ", out);
        CHECK(rc == 0);
    }

    const std::string sd = tmp_file("s11.txt", "D\nU a b inf\nD\n");
    std::string out;
    // Deleting (a,b) disconnects the cycle into a path: still strongly
    // connected as an undirected graph, so both D answers check out.
    const std::string gd = tmp_file(
        "g11.txt", "6 6 directed\na b 1\nb c 1\nc d 1\nd e 1\ne f 1\nf a 1\n");
    (void)gd;
    const int rc = run_cli("--graph " + g + " --stream " + sd +
                               " --mode diameter15 --epsilon 0.2 --oracle-check",
                           &out);
    INFO(out);
    CHECK(rc == 0);

    const std::string sx = tmp_file("s12.txt", "X\n");
    const int rcx = run_cli("--graph " + g + " --stream " + sx +
                                " --mode exact-diam --oracle-check",
                            &out);
    INFO(out);
    CHECK(rcx == 0);
}

TEST_CASE("complexity mode prints the exponent table") {
    std::string out;
    const int rc = run_cli("--mode complexity", &out);
    CHECK(rc == 0);
    CHECK(out.find("apsp explicit update") != std::string::npos);
    CHECK(out.find("2.0442") != std::string::npos);
}

TEST_CASE("mode/command mismatches are config errors") {
    const std::string g = tmp_file("g13.txt", "2 1 directed\na b 1\n");
    const std::string s = tmp_file("s13.txt", "X\n");
    std::string out;
    CHECK(run_cli("--graph " + g + " --stream " + s + " --mode apsp", &out) ==
          2);

    // Undirected-only mode on a digraph.
    CHECK(run_cli("--graph " + g + " --mode ecc", &out) == 2);
}
