// hdroute: command-line front end. One JSON document on standard output per
// invocation; diagnostics on standard error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hdroute/commands.hpp"

namespace {

using namespace hdroute;

struct Options {
    std::string input;
    std::optional<std::string> out;
    bool trace = false;
    std::optional<std::string> threshold;
    std::string z = "2";
    std::size_t limit = 1'000'000;
    std::optional<std::uint64_t> seed;
};

int emit(const cli::Outcome& outcome, const Options& opt, bool document_to_out, bool one_line = false) {
    for (const auto& [path, content] : outcome.files) write_file(path, content);
    if (document_to_out && opt.out) {
        write_file(*opt.out, dump(outcome.document));
        std::cout << Json{{"written", *opt.out}}.dump() << "\n";
    } else if (one_line) {
        std::cout << outcome.document.dump() << "\n";
    } else {
        std::cout << dump(outcome.document);
    }
    if (outcome.exit_code == cli::kExitError || outcome.exit_code == cli::kExitNoPath) {
        std::cerr << "hdroute: " << outcome.document.value("error", std::string("error")) << "\n";
    }
    return outcome.exit_code;
}

Digraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Half-duplex relay routing toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto* route = app.add_subcommand("route", "Best HD simple path");
    route->add_option("graph", opt.input, "Graph JSON file")->required();
    route->add_flag("--trace", opt.trace, "Include per-iteration elimination records");
    route->add_option("--out", opt.out, "Write the result here");

    auto* compare = app.add_subcommand("compare", "FD-best route against HD-best route");
    compare->add_option("graph", opt.input, "Graph JSON file")->required();
    compare->add_option("--out", opt.out, "Write the report here");

    auto* decide = app.add_subcommand("decide", "Is there a simple path with HD capacity >= Z? (exit 0 yes, 1 no)");
    decide->add_option("graph", opt.input, "Graph JSON file")->required();
    decide->add_option("--threshold", opt.threshold, "Z as decimal or p/q (default: the graph's threshold field)");

    auto* reduce = app.add_subcommand("reduce", "3-CNF DIMACS to an HD-Path instance");
    reduce->add_option("formula", opt.input, "DIMACS CNF file")->required();
    reduce->add_option("--z", opt.z, "Threshold Z (default 2)");
    reduce->add_option("--out", opt.out, "Graph output file; provenance goes to <stem>.provenance.json");

    auto* oracle = app.add_subcommand("oracle", "Best HD simple path by exhaustive enumeration");
    oracle->add_option("graph", opt.input, "Graph JSON file")->required();
    oracle->add_option("--out", opt.out, "Write the result here");

    auto* gen = app.add_subcommand("gen", "Generate an instance from a GenSpec JSON file");
    gen->add_option("genspec", opt.input, "GenSpec JSON file")->required();
    gen->add_option("--seed", opt.seed, "Override the GenSpec seed");
    gen->add_option("--out", opt.out, "Write the graph here");

    auto* cycles = app.add_subcommand("cycles", "Count elementary cycles");
    cycles->add_option("graph", opt.input, "Graph JSON file")->required();
    cycles->add_option("--limit", opt.limit, "Stop counting past this many cycles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitError;
    }

    try {
        if (*route) return emit(cli::route(load_graph(opt.input), opt.trace), opt, true);
        if (*compare) return emit(cli::compare(load_graph(opt.input)), opt, true);
        if (*decide) {
            Json doc;
            try {
                doc = Json::parse(read_file(opt.input));
            } catch (const Json::parse_error& e) {
                throw ParseError(std::string("malformed JSON: ") + e.what());
            }
            return emit(cli::decide(doc, opt.threshold), opt, false, true);
        }
        if (*reduce) return emit(cli::reduce(read_file(opt.input), opt.z, opt.out), opt, false);
        if (*oracle) return emit(cli::oracle(load_graph(opt.input)), opt, true);
        if (*gen) {
            Json doc;
            try {
                doc = Json::parse(read_file(opt.input));
            } catch (const Json::parse_error& e) {
                throw ParseError(std::string("malformed JSON: ") + e.what());
            }
            GenSpec spec = genspec_from_json(doc);
            if (opt.seed) spec.seed = *opt.seed;
            return emit(cli::gen(spec), opt, true);
        }
        if (*cycles) return emit(cli::cycles(load_graph(opt.input), opt.limit), opt, true);
    } catch (const std::exception& e) {
        return emit(cli::error_outcome(e.what()), opt, false);
    }
    return cli::kExitError;
}
