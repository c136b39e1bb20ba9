#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "divring/divring.hpp"

namespace {

const std::vector<std::pair<const char*, const char*>> kCommands = {
    {"check-algebra", "verify a structure table and probe the division property"},
    {"ladder", "dimensions of L_k, S_k, D_k for an extension"},
    {"lemma12", "check L_{k-1} + f_k S_{k-1} = F per k"},
    {"transporter", "find a with H1 a = H2 for left G-subspaces"},
    {"garcia", "dimension-two condition vs dimension-sequence target"},
    {"catalog", "dimension vectors of the n+2 indecomposables"},
    {"tight", "a-tightness of an embedding for every a"},
    {"solve-block", "unique image matrix with a given corner block"},
    {"roundtrip", "embedding <-> extension round trips"},
    {"dimseq", "right dimension sequence of a bimodule"},
    {"audit-T", "audit a finite fragment of the extension theory"},
    {"audit-Tn", "audit the matrix-ring theory on an embedding"},
    {"audit-Tn1", "audit the 1-tight subtheory on an embedding"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact division-ring extension and tight-embedding toolkit"};
    app.require_subcommand(1);

    divring::CommandArgs args;
    std::string specfile;
    std::string format = "text";

    for (const auto& [name, desc] : kCommands) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("--algebra", args.algebra, "algebra name");
        sub->add_option("--extension", args.extension, "extension name");
        sub->add_option("--embedding", args.embedding, "embedding name");
        sub->add_option("--bimodule", args.bimodule, "bimodule name");
        sub->add_option("--expect", args.expect, "expected verdict; mismatch exits 1");
        sub->add_option("--seed", args.seed, "probe seed (default 0)");
        sub->add_option("--trials", args.trials, "probe trials (default 64)");
        sub->add_option("--max-len", args.max_len, "dimension sequence length cap");
        sub->add_option("--k", args.k, "restrict to one schema index k");
        sub->add_option("--k-max", args.k_max, "largest schema index to audit");
        sub->add_option("--n", args.catalog_n, "catalog size parameter");
        sub->add_option("--a", args.block_a, "corner block row count a");
        sub->add_option("--block", args.block_json, "corner block entries as JSON");
        sub->add_option("--h1", args.h1_json, "generators of H1 as JSON");
        sub->add_option("--h2", args.h2_json, "generators of H2 as JSON");
        sub->add_option("--format", format, "text or machine")
            ->check(CLI::IsMember({"text", "machine"}));
        sub->add_option("specfile", specfile, "spec document to load");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        divring::SpecDocument doc;
        if (!specfile.empty()) doc = divring::parse_spec_file(specfile, args.seed, args.trials);
        else if (command != "catalog")
            throw divring::ParseError("command '" + command + "' needs a spec file");
        auto report = divring::run_command(doc, command, args);
        std::cout << divring::emit_report(report, format == "machine"
                                                      ? divring::ReportFormat::Machine
                                                      : divring::ReportFormat::Text);
        return report.exit_code;
    } catch (const divring::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
