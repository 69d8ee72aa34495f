#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccdm/analysis.hpp"
#include "ccdm/blockio.hpp"
#include "ccdm/cli.hpp"
#include "testutil.hpp"

using namespace ccdm;
using namespace testutil;

namespace {

namespace fs = std::filesystem;

const fs::path& scratch_dir() {
    static const fs::path dir = [] {
        fs::path base = fs::temp_directory_path() / "ccdm_cli_tests";
        fs::create_directories(base);
        return base;
    }();
    return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
    fs::path path = scratch_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

std::string path_str(const std::string& name) {
    return (scratch_dir() / name).string();
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv = {"ccdm"};
    for (const auto& arg : args) argv.push_back(arg.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::string& half_dist() {
    static const std::string path =
        write_file("half.txt", "0.5\n0.5\n").string();
    return path;
}

const std::string& figure_dist() {
    static const std::string path =
        write_file("figure.txt", "0.0722\n0.1654\n0.3209\n0.4415\n").string();
    return path;
}

} // namespace

TEST_CASE("quantize reports the derived code") {
    auto json_run = run_cli({"quantize", "--dist", half_dist(), "--n", "4", "--json"});
    REQUIRE(json_run.code == cli::exit_ok);
    auto doc = nlohmann::json::parse(json_run.out);
    CHECK(doc["n"] == 4);
    CHECK(doc["k"] == 2);
    CHECK(doc["m"] == 2);
    CHECK(doc["counts"] == nlohmann::json({2, 2}));
    CHECK(doc["type_class_size"] == "6");
    CHECK(doc["rate"] == 0.5);
    CHECK(doc["kl_gap"] == 0.0);

    auto text_run = run_cli({"quantize", "--dist", half_dist(), "--n", "4"});
    REQUIRE(text_run.code == cli::exit_ok);
    CHECK(text_run.out.find("m: 2") != std::string::npos);
    CHECK(text_run.out.find("counts: 2,2") != std::string::npos);
}

TEST_CASE("encode and decode round-trip block files") {
    BitBlockFile input;
    input.m = 2;
    input.blocks = {bits("00"), bits("01"), bits("10"), bits("11")};
    {
        std::ofstream out(path_str("roundtrip.bits"), std::ios::binary);
        write_bit_blocks(out, input);
    }

    auto enc = run_cli({"encode", "--dist", half_dist(), "--n", "4", "--in",
                        path_str("roundtrip.bits"), "--out",
                        path_str("roundtrip.syms"), "--json"});
    REQUIRE(enc.code == cli::exit_ok);
    auto enc_doc = nlohmann::json::parse(enc.out);
    CHECK(enc_doc["blocks"] == 4);
    CHECK(enc_doc["n"] == 4);

    {
        std::ifstream in(path_str("roundtrip.syms"), std::ios::binary);
        SymbolBlockFile symbols_file = read_symbol_blocks(in);
        REQUIRE(symbols_file.blocks.size() == 4);
        CHECK(symbol_str(symbols_file.blocks[0]) == "0011");
        CHECK(symbol_str(symbols_file.blocks[1]) == "0110");
        CHECK(symbol_str(symbols_file.blocks[2]) == "1001");
        CHECK(symbol_str(symbols_file.blocks[3]) == "1100");
    }

    auto dec = run_cli({"decode", "--dist", half_dist(), "--n", "4", "--in",
                        path_str("roundtrip.syms"), "--out",
                        path_str("roundtrip.back")});
    REQUIRE(dec.code == cli::exit_ok);
    CHECK(dec.out.find("decoded 4 blocks, 0 warnings") != std::string::npos);

    std::ifstream in(path_str("roundtrip.back"), std::ios::binary);
    BitBlockFile back = read_bit_blocks(in);
    CHECK(back.m == 2);
    CHECK(back.blocks == input.blocks);
}

TEST_CASE("decode distinguishes corruption from lenient recovery") {
    SymbolBlockFile file;
    file.n = 4;
    file.k = 2;
    file.blocks = {symbols("0101")}; // in the class, not in the codebook
    {
        std::ofstream out(path_str("corrupt.syms"), std::ios::binary);
        write_symbol_blocks(out, file);
    }

    auto strict = run_cli({"decode", "--dist", half_dist(), "--n", "4", "--in",
                           path_str("corrupt.syms"), "--out",
                           path_str("corrupt.back")});
    CHECK(strict.code == cli::exit_integrity);
    CHECK(strict.err.find("block 0") != std::string::npos);

    auto lenient = run_cli({"decode", "--dist", half_dist(), "--n", "4", "--in",
                            path_str("corrupt.syms"), "--out",
                            path_str("corrupt.back"), "--lenient", "--json"});
    REQUIRE(lenient.code == cli::exit_ok);
    auto doc = nlohmann::json::parse(lenient.out);
    CHECK(doc["warnings"] == 1);

    std::ifstream in(path_str("corrupt.back"), std::ios::binary);
    CHECK(read_bit_blocks(in).blocks[0] == bits("00"));
}

TEST_CASE("exit codes separate io, usage and integrity failures") {
    CHECK(run_cli({"quantize", "--dist", path_str("absent.txt"), "--n", "4"}).code ==
          cli::exit_io);
    CHECK(run_cli({"frobnicate"}).code == cli::exit_usage);
    CHECK(run_cli({"quantize", "--n", "4"}).code == cli::exit_usage);
    CHECK(run_cli({"quantize", "--dist", half_dist(), "--n", "0"}).code ==
          cli::exit_usage);

    write_file("broken.txt", "0.5\nnot a number\n");
    CHECK(run_cli({"quantize", "--dist", path_str("broken.txt"), "--n", "4"}).code ==
          cli::exit_usage);

    // Geometry mismatches in otherwise well-formed files are usage errors.
    BitBlockFile wrong;
    wrong.m = 5;
    wrong.blocks = {bits("10110")};
    {
        std::ofstream out(path_str("wrong.bits"), std::ios::binary);
        write_bit_blocks(out, wrong);
    }
    CHECK(run_cli({"encode", "--dist", half_dist(), "--n", "4", "--in",
                   path_str("wrong.bits"), "--out", path_str("wrong.syms")})
              .code == cli::exit_usage);

    auto help = run_cli({"--help"});
    CHECK(help.code == cli::exit_ok);
    CHECK(help.out.find("quantize") != std::string::npos);
    CHECK(help.out.find("sweep") != std::string::npos);
}

TEST_CASE("sweep writes reports to stdout or files") {
    auto csv = run_cli({"sweep", "--dist", figure_dist(), "--grid", "10,256"});
    REQUIRE(csv.code == cli::exit_ok);
    std::istringstream lines(csv.out);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "n,m,rate,h_bar,ndiv,kl_gap,gap_bound,rate_bound,counts");
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("10,13,1.3,", 0) == 0);
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("256,437,1.70703125,", 0) == 0);

    auto to_file = run_cli({"sweep", "--dist", figure_dist(), "--grid", "10,256",
                            "--format", "json", "--out", path_str("sweep.json"),
                            "--json"});
    REQUIRE(to_file.code == cli::exit_ok);
    CHECK(nlohmann::json::parse(to_file.out)["records"] == 2);
    std::ifstream in(path_str("sweep.json"));
    auto records = read_report_json(in);
    REQUIRE(records.size() == 2);
    CHECK(records[1].n == 256);
    CHECK(records[1].m == 437);

    CHECK(run_cli({"sweep", "--dist", figure_dist(), "--grid", "10,abc"}).code ==
          cli::exit_usage);
    CHECK(run_cli({"sweep", "--dist", figure_dist(), "--format", "xml"}).code ==
          cli::exit_usage);
}

TEST_CASE("selftest subcommand reports its suites") {
    auto run = run_cli({"selftest", "--max-n", "6", "--trials", "8", "--json"});
    REQUIRE(run.code == cli::exit_ok);
    auto doc = nlohmann::json::parse(run.out);
    CHECK(doc["ok"] == true);
    CHECK(doc["suites"].size() >= 4);
}
