#include "ccdm/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccdm/analysis.hpp"
#include "ccdm/blockio.hpp"
#include "ccdm/coder.hpp"
#include "ccdm/ranker.hpp"
#include "ccdm/selftest.hpp"

namespace ccdm::cli {

namespace {

using nlohmann::ordered_json;

Distribution load_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open distribution file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoFailure("cannot read distribution file '" + path + "'");
    return parse_distribution(buffer.str());
}

std::vector<std::uint32_t> parse_grid(const std::string& spec) {
    if (spec == "preset") return preset_grid();
    std::vector<std::uint32_t> grid;
    std::istringstream tokens(spec);
    std::string token;
    while (std::getline(tokens, token, ',')) {
        if (token.empty() ||
            token.find_first_not_of("0123456789") != std::string::npos)
            throw FormatError("grid must be 'preset' or comma-separated integers");
        unsigned long value = 0;
        try {
            value = std::stoul(token);
        } catch (const std::exception&) {
            throw FormatError("bad grid value '" + token + "'");
        }
        if (value < 1 || value > (1u << 24))
            throw FormatError("grid values must be in [1, 2^24]");
        grid.push_back(static_cast<std::uint32_t>(value));
    }
    if (grid.empty()) throw FormatError("empty grid");
    return grid;
}

ordered_json params_to_json(const Distribution& dist, const CodeParams& params) {
    const Composition& comp = params.composition;
    double kl_gap = kl_divergence(comp.type(), dist);
    ordered_json doc;
    doc["n"] = comp.n();
    doc["k"] = comp.size();
    doc["counts"] = comp.counts();
    doc["type"] = comp.type().probs();
    doc["type_class_size"] = params.type_class_size.get_str();
    doc["m"] = params.m;
    doc["rate"] = static_cast<double>(params.m) / comp.n();
    doc["kl_gap"] = kl_gap;
    return doc;
}

struct CodecArgs {
    std::string dist_path;
    std::uint32_t n = 0;
    std::string in_path;
    std::string out_path;
    bool json = false;
    bool lenient = false;
};

int cmd_quantize(const CodecArgs& args, std::ostream& out) {
    Distribution dist = load_distribution(args.dist_path);
    CodeParams params = CodeParams::derive(quantize_to_ntype(dist, args.n));
    ordered_json doc = params_to_json(dist, params);
    if (args.json) {
        out << doc.dump() << "\n";
        return exit_ok;
    }
    for (const auto& [key, value] : doc.items()) {
        out << key << ": ";
        if (value.is_array()) {
            for (std::size_t i = 0; i < value.size(); ++i)
                out << (i ? "," : "") << value[i].dump();
        } else if (value.is_string()) {
            out << value.get<std::string>();
        } else {
            out << value.dump();
        }
        out << "\n";
    }
    return exit_ok;
}

int cmd_encode(const CodecArgs& args, std::ostream& out) {
    Distribution dist = load_distribution(args.dist_path);
    CodeParams params = CodeParams::derive(quantize_to_ntype(dist, args.n));

    std::ifstream in(args.in_path, std::ios::binary);
    if (!in) throw IoFailure("cannot open input file '" + args.in_path + "'");
    BitBlockFile bit_file = read_bit_blocks(in);
    if (bit_file.m != params.m)
        throw FormatError("input m=" + std::to_string(bit_file.m) +
                          " but the code needs m=" + std::to_string(params.m));

    SymbolBlockFile symbol_file;
    symbol_file.n = params.n();
    symbol_file.k = static_cast<std::uint32_t>(params.k());
    if (symbol_file.k > 255) throw FormatError("alphabet size must be <= 255");
    symbol_file.blocks.reserve(bit_file.blocks.size());
    for (const auto& bits : bit_file.blocks)
        symbol_file.blocks.push_back(encode_stream(bits, params));

    std::ofstream file_out(args.out_path, std::ios::binary);
    if (!file_out) throw IoFailure("cannot open output file '" + args.out_path + "'");
    write_symbol_blocks(file_out, symbol_file);
    file_out.close();
    if (!file_out) throw IoFailure("cannot write output file '" + args.out_path + "'");

    if (args.json) {
        ordered_json doc;
        doc["blocks"] = symbol_file.blocks.size();
        doc["m"] = params.m;
        doc["n"] = params.n();
        doc["k"] = params.k();
        out << doc.dump() << "\n";
    } else {
        out << "encoded " << symbol_file.blocks.size() << " blocks (m=" << params.m
            << " -> n=" << params.n() << ")\n";
    }
    return exit_ok;
}

int cmd_decode(const CodecArgs& args, std::ostream& out, std::ostream& err) {
    Distribution dist = load_distribution(args.dist_path);
    CodeParams params = CodeParams::derive(quantize_to_ntype(dist, args.n));

    std::ifstream in(args.in_path, std::ios::binary);
    if (!in) throw IoFailure("cannot open input file '" + args.in_path + "'");
    SymbolBlockFile symbol_file = read_symbol_blocks(in);
    if (symbol_file.n != params.n() || symbol_file.k != params.k())
        throw FormatError("input geometry n=" + std::to_string(symbol_file.n) +
                          " k=" + std::to_string(symbol_file.k) +
                          " does not match the code");

    BitBlockFile bit_file;
    bit_file.m = params.m;
    bit_file.blocks.reserve(symbol_file.blocks.size());
    std::size_t warnings = 0;
    for (std::size_t i = 0; i < symbol_file.blocks.size(); ++i) {
        try {
            bit_file.blocks.push_back(decode_stream(symbol_file.blocks[i], params));
        } catch (const NotACodeword& e) {
            if (!args.lenient) {
                err << "block " << i << ": " << e.what() << "\n";
                return exit_integrity;
            }
            ++warnings;
            bit_file.blocks.push_back(
                decode_stream(symbol_file.blocks[i], params, false));
        } catch (const CompositionMismatch& e) {
            err << "block " << i << ": " << e.what() << "\n";
            return exit_integrity;
        }
    }

    std::ofstream file_out(args.out_path, std::ios::binary);
    if (!file_out) throw IoFailure("cannot open output file '" + args.out_path + "'");
    write_bit_blocks(file_out, bit_file);
    file_out.close();
    if (!file_out) throw IoFailure("cannot write output file '" + args.out_path + "'");

    if (args.json) {
        ordered_json doc;
        doc["blocks"] = bit_file.blocks.size();
        doc["warnings"] = warnings;
        out << doc.dump() << "\n";
    } else {
        out << "decoded " << bit_file.blocks.size() << " blocks, " << warnings
            << " warnings\n";
    }
    return exit_ok;
}

struct SweepArgs {
    std::string dist_path;
    std::string grid = "preset";
    std::string format = "csv";
    std::string out_path = "-";
    bool json = false;
};

int cmd_sweep(const SweepArgs& args, std::ostream& out) {
    Distribution dist = load_distribution(args.dist_path);
    auto records = sweep(dist, parse_grid(args.grid));
    ReportFormat format = (args.json || args.format == "json") ? ReportFormat::json
                                                               : ReportFormat::csv;
    if (args.out_path == "-") {
        emit_report(records, format, out);
        return exit_ok;
    }
    std::ofstream file_out(args.out_path, std::ios::binary);
    if (!file_out) throw IoFailure("cannot open output file '" + args.out_path + "'");
    emit_report(records, format, file_out);
    file_out.close();
    if (!file_out) throw IoFailure("cannot write output file '" + args.out_path + "'");
    if (args.json) {
        ordered_json doc;
        doc["records"] = records.size();
        doc["out"] = args.out_path;
        out << doc.dump() << "\n";
    } else {
        out << "wrote " << records.size() << " records to " << args.out_path << "\n";
    }
    return exit_ok;
}

struct SelftestArgs {
    std::uint32_t max_n = 12;
    std::uint32_t trials = 1000;
    std::uint64_t seed = SelftestOptions{}.seed;
    bool json = false;
};

int cmd_selftest(const SelftestArgs& args, std::ostream& out) {
    SelftestOptions options;
    options.max_n = args.max_n;
    options.trials = args.trials;
    options.seed = args.seed;

    std::ostringstream log;
    SelftestReport report = run_selftest(options, args.json ? log : out);
    if (args.json) {
        ordered_json doc;
        doc["suites"] = ordered_json::array();
        for (const auto& suite : report.suites) {
            ordered_json entry;
            entry["name"] = suite.name;
            entry["cases"] = suite.cases;
            entry["failures"] = suite.failures;
            doc["suites"].push_back(entry);
        }
        doc["ok"] = report.ok();
        out << doc.dump() << "\n";
    }
    return report.ok() ? exit_ok : 1;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"constant-composition distribution matcher"};
    app.require_subcommand(1);

    CodecArgs quantize_args;
    auto* quantize_cmd =
        app.add_subcommand("quantize", "derive the code for a distribution");
    quantize_cmd->add_option("--dist", quantize_args.dist_path, "distribution file")
        ->required();
    quantize_cmd->add_option("--n", quantize_args.n, "output blocklength")
        ->required()
        ->check(CLI::PositiveNumber);
    quantize_cmd->add_flag("--json", quantize_args.json, "machine-readable output");

    CodecArgs encode_args;
    auto* encode_cmd = app.add_subcommand("encode", "match bit blocks to symbols");
    encode_cmd->add_option("--dist", encode_args.dist_path, "distribution file")
        ->required();
    encode_cmd->add_option("--n", encode_args.n, "output blocklength")
        ->required()
        ->check(CLI::PositiveNumber);
    encode_cmd->add_option("--in", encode_args.in_path, "bit block file")->required();
    encode_cmd->add_option("--out", encode_args.out_path, "symbol block file")
        ->required();
    encode_cmd->add_flag("--json", encode_args.json, "machine-readable output");

    CodecArgs decode_args;
    auto* decode_cmd = app.add_subcommand("decode", "recover bit blocks");
    decode_cmd->add_option("--dist", decode_args.dist_path, "distribution file")
        ->required();
    decode_cmd->add_option("--n", decode_args.n, "output blocklength")
        ->required()
        ->check(CLI::PositiveNumber);
    decode_cmd->add_option("--in", decode_args.in_path, "symbol block file")
        ->required();
    decode_cmd->add_option("--out", decode_args.out_path, "bit block file")
        ->required();
    decode_cmd->add_flag("--lenient", decode_args.lenient,
                         "decode non-codewords with a warning instead of failing");
    decode_cmd->add_flag("--json", decode_args.json, "machine-readable output");

    SweepArgs sweep_args;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "rate/divergence figures over blocklengths");
    sweep_cmd->add_option("--dist", sweep_args.dist_path, "distribution file")
        ->required();
    sweep_cmd->add_option("--grid", sweep_args.grid,
                          "'preset' or comma-separated blocklengths");
    sweep_cmd->add_option("--format", sweep_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--out", sweep_args.out_path, "output path or '-'");
    sweep_cmd->add_flag("--json", sweep_args.json, "machine-readable output");

    SelftestArgs selftest_args;
    auto* selftest_cmd =
        app.add_subcommand("selftest", "built-in diagnostic suites");
    selftest_cmd->add_option("--max-n", selftest_args.max_n,
                             "exhaustive coverage up to this blocklength")
        ->check(CLI::PositiveNumber);
    selftest_cmd->add_option("--trials", selftest_args.trials,
                             "randomized trials at larger blocklengths");
    selftest_cmd->add_option("--seed", selftest_args.seed, "random seed");
    selftest_cmd->add_flag("--json", selftest_args.json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (quantize_cmd->parsed()) return cmd_quantize(quantize_args, out);
        if (encode_cmd->parsed()) return cmd_encode(encode_args, out);
        if (decode_cmd->parsed()) return cmd_decode(decode_args, out, err);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_args, out);
        if (selftest_cmd->parsed()) return cmd_selftest(selftest_args, out);
    } catch (const IoFailure& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const NotACodeword& e) {
        err << "error: " << e.what() << "\n";
        return exit_integrity;
    } catch (const CompositionMismatch& e) {
        err << "error: " << e.what() << "\n";
        return exit_integrity;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace ccdm::cli
