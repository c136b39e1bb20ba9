#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divring/axioms.hpp"
#include "divring/garcia.hpp"
#include "divring/report.hpp"
#include "divring/specfile.hpp"

namespace divring {

struct CommandArgs {
    std::string algebra;
    std::string extension;
    std::string embedding;
    std::string bimodule;
    std::string expect;  // empty = no expectation
    std::uint64_t seed = 0;
    int trials = 64;
    std::size_t max_len = 16;
    std::size_t k = 0;  // lemma12: 0 means all k
    std::size_t k_max = 8;
    std::size_t catalog_n = 0;
    std::size_t block_a = 0;
    std::string block_json;
    std::string h1_json;
    std::string h2_json;
};

namespace clidetail {

inline const Extension& find_extension(const SpecDocument& doc, const std::string& name) {
    if (name.empty()) throw UnknownObject("command needs --extension NAME");
    auto it = doc.extensions.find(name);
    if (it == doc.extensions.end()) throw UnknownObject("no extension named '" + name + "'");
    return it->second;
}

inline const EmbeddingModel& find_embedding(const SpecDocument& doc, const std::string& name) {
    if (name.empty()) throw UnknownObject("command needs --embedding NAME");
    auto it = doc.embeddings.find(name);
    if (it == doc.embeddings.end()) throw UnknownObject("no embedding named '" + name + "'");
    return it->second;
}

inline const Bimodule& find_bimodule(const SpecDocument& doc, const std::string& name) {
    auto it = doc.bimodules.find(name);
    if (it == doc.bimodules.end()) throw UnknownObject("no bimodule named '" + name + "'");
    return it->second;
}

inline const AlgebraPtr& find_algebra(const SpecDocument& doc, const std::string& name) {
    if (name.empty()) throw UnknownObject("command needs --algebra NAME");
    auto it = doc.algebras.find(name);
    if (it == doc.algebras.end()) throw UnknownObject("no algebra named '" + name + "'");
    return it->second;
}

inline std::string bools_text(const std::vector<bool>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i] ? "true" : "false";
    }
    return s + ")";
}

inline std::string sizes_text(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

/// Parses an inline JSON list of F-coordinate vectors and returns the left
/// G-subspace they generate.
inline Subspace parse_left_subspace(const Extension& e, const std::string& text,
                                    const std::string& what) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(what + ": " + err.what());
    }
    if (!j.is_array() || j.empty()) throw ValidationError(what + ": expected a list of vectors");
    std::vector<std::vector<Scalar>> vecs;
    for (const auto& v : j) {
        auto gen = specdetail::parse_coords(e.F()->field(), v, e.F()->dim(), what);
        for (std::size_t t = 0; t < e.dim_G(); ++t)
            vecs.push_back((e.G().basis_vector(t) * AlgebraElement(e.F(), gen)).coords());
    }
    return Subspace::span(e.F(), vecs);
}

inline CornerBlock parse_block(const EmbeddingModel& e, std::size_t a, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(std::string("--block: ") + err.what());
    }
    const std::size_t b = e.n() + 1 - a;
    if (!j.is_array() || j.size() != a) throw ShapeMismatch("--block: expected " + std::to_string(a) + " rows");
    CornerBlock block{a, b, {}};
    for (std::size_t r = 0; r < a; ++r) {
        if (!j[r].is_array() || j[r].size() != b)
            throw ShapeMismatch("--block: expected " + std::to_string(b) + " columns");
        for (std::size_t c = 0; c < b; ++c) {
            const auto& cell = j[r][c];
            if (cell.is_array())
                block.entries.emplace_back(
                    e.G(), specdetail::parse_coords(e.G()->field(), cell, e.G()->dim(), "--block"));
            else if (e.G()->dim() == 1)
                block.entries.emplace_back(e.G(), std::vector<Scalar>{specdetail::parse_scalar(
                                                      e.G()->field(), cell, "--block")});
            else
                throw ValidationError("--block: entries must be coordinate vectors over G");
        }
    }
    return block;
}

inline void axiom_records(RunReport& rep, const std::vector<AxiomVerdict>& verdicts) {
    bool violated = false;
    for (const auto& v : verdicts) {
        nlohmann::ordered_json r;
        r["record"] = "axiom";
        r["id"] = v.axiom_id;
        r["holds"] = AxiomVerdict::holds_name(v.holds);
        r["policy"] = v.policy;
        if (!v.witness.empty()) r["witness"] = v.witness;
        if (v.witness_coords) r["witness_coords"] = coords_json(*v.witness_coords);
        if (!v.detail.empty()) r["detail"] = v.detail;
        rep.records.push_back(std::move(r));
        std::string line = "  " + v.axiom_id + ": " + AxiomVerdict::holds_name(v.holds);
        if (!v.witness.empty()) line += "  [" + v.witness + "]";
        rep.text_lines.push_back(line);
        violated = violated || (v.holds == AxiomVerdict::Holds::False);
    }
    rep.verdict = violated ? "violated" : "satisfied";
}

}  // namespace clidetail

/// Dispatches one CLI command against a loaded document. Exit code 1 marks a
/// property failure (an --expect mismatch or an internal consistency flag);
/// malformed inputs and unknown names throw and are mapped to exit 2 by the
/// caller.
inline RunReport run_command(const SpecDocument& doc, const std::string& command,
                             const CommandArgs& args) {
    using clock = std::chrono::steady_clock;
    auto start = clock::now();

    RunReport rep;
    rep.command = command;
    rep.seed = args.seed;

    if (command == "check-algebra") {
        const auto& a = clidetail::find_algebra(doc, args.algebra);
        rep.inputs["algebra"] = args.algebra;
        auto ver = verify_algebra(a);
        nlohmann::ordered_json r;
        r["record"] = "verify";
        r["associative"] = ver.associative;
        r["unital"] = ver.unital;
        rep.records.push_back(r);
        auto probe = division_probe(a, args.seed, args.trials);
        nlohmann::ordered_json p;
        p["record"] = "probe";
        p["certified_not_division"] = probe.certified_not_division;
        p["exhaustive"] = probe.exhaustive;
        p["inversions_checked"] = probe.inversions_checked;
        if (probe.witness) p["witness"] = element_json(*probe.witness);
        if (probe.certificate) p["certificate"] = element_json(*probe.certificate);
        rep.records.push_back(p);
        rep.text_lines.push_back(std::string("  associative: ") + (ver.associative ? "yes" : "no"));
        rep.text_lines.push_back(std::string("  unital: ") + (ver.unital ? "yes" : "no"));
        rep.text_lines.push_back(std::string("  division probe: ") +
                                 (probe.certified_not_division ? "certified-not-division"
                                  : probe.exhaustive           ? "division (exhaustive)"
                                                               : "no-counterexample-found"));
        if (probe.certificate)
            rep.text_lines.push_back("  zero divisor: " + probe.witness->to_string() + " * " +
                                     probe.certificate->to_string() + " = 0");
        rep.verdict = !ver.ok()                       ? "invalid-algebra"
                      : probe.certified_not_division ? "certified-not-division"
                                                     : "ok";
        if (!ver.ok()) rep.exit_code = 1;
    } else if (command == "ladder") {
        const auto& e = clidetail::find_extension(doc, args.extension);
        rep.inputs["extension"] = args.extension;
        nlohmann::ordered_json h;
        h["record"] = "extension";
        h["n"] = e.n();
        h["dim_F"] = e.F()->dim();
        h["dim_G"] = e.dim_G();
        rep.records.push_back(h);
        rep.text_lines.push_back("  n = " + std::to_string(e.n()) +
                                 ", dim_k F = " + std::to_string(e.F()->dim()) +
                                 ", dim_k G = " + std::to_string(e.dim_G()));
        const auto& lad = e.ladder();
        for (std::size_t k = 0; k < e.n(); ++k) {
            nlohmann::ordered_json r;
            r["record"] = "ladder";
            r["k"] = k;
            r["dim_L"] = lad.L[k].dim();
            r["dim_S"] = lad.S[k].dim();
            r["dim_D"] = lad.D[k].dim();
            r["dim_D_over_S"] = lad.dims_over_S[k];
            rep.records.push_back(r);
            rep.text_lines.push_back("  k=" + std::to_string(k) +
                                     "  dim L=" + std::to_string(lad.L[k].dim()) +
                                     " dim S=" + std::to_string(lad.S[k].dim()) +
                                     " dim D=" + std::to_string(lad.D[k].dim()) +
                                     " dim D/S=" + std::to_string(lad.dims_over_S[k]));
        }
        rep.verdict = "ok";
    } else if (command == "lemma12") {
        const auto& e = clidetail::find_extension(doc, args.extension);
        rep.inputs["extension"] = args.extension;
        if (e.n() < 2) throw ValidationError("lemma12 needs an extension with n >= 2");
        bool all = true;
        std::size_t k_lo = args.k == 0 ? 1 : args.k;
        std::size_t k_hi = args.k == 0 ? e.n() - 1 : args.k;
        for (std::size_t k = k_lo; k <= k_hi; ++k) {
            bool holds = lemma_regular_check(e, k);
            all = all && holds;
            nlohmann::ordered_json r;
            r["record"] = "lemma12";
            r["k"] = k;
            r["holds"] = holds;
            rep.records.push_back(r);
            rep.text_lines.push_back("  k=" + std::to_string(k) + ": " +
                                     (holds ? "L_{k-1} + f_k S_{k-1} = F" : "span falls short"));
        }
        rep.verdict = all ? "holds" : "fails";
    } else if (command == "transporter") {
        const auto& e = clidetail::find_extension(doc, args.extension);
        rep.inputs["extension"] = args.extension;
        if (args.h1_json.empty() || args.h2_json.empty())
            throw ValidationError("transporter needs --h1 and --h2 generator lists");
        Subspace h1 = clidetail::parse_left_subspace(e, args.h1_json, "--h1");
        Subspace h2 = clidetail::parse_left_subspace(e, args.h2_json, "--h2");
        auto a = transporter(e, h1, h2);
        nlohmann::ordered_json r;
        r["record"] = "transporter";
        r["dim_H1"] = h1.dim();
        r["dim_H2"] = h2.dim();
        r["found"] = a.has_value();
        if (a) r["element"] = element_json(*a);
        rep.records.push_back(r);
        rep.text_lines.push_back(a ? "  a = " + a->to_string() + " with H1 a = H2"
                                   : "  no transporter exists");
        rep.verdict = a ? "found" : "no-transporter";
    } else if (command == "garcia") {
        const auto& e = clidetail::find_extension(doc, args.extension);
        rep.inputs["extension"] = args.extension;
        auto g = garcia_report(e, args.seed, args.trials);
        nlohmann::ordered_json r;
        r["record"] = "garcia";
        r["condition2"] = g.condition2;
        r["condition2_all"] = g.condition2_all;
        r["sequence"] = g.sequence;
        r["target"] = g.target;
        r["sequence_match"] = g.sequence_match;
        r["verdict"] = GarciaReport::verdict_name(g.verdict);
        rep.records.push_back(r);
        rep.text_lines.push_back("  condition (2) per k: " + clidetail::bools_text(g.condition2));
        rep.text_lines.push_back("  dimension sequence: " + clidetail::sizes_text(g.sequence) +
                                 " target " + clidetail::sizes_text(g.target));
        rep.verdict = GarciaReport::verdict_name(g.verdict);
        if (g.verdict == GarciaReport::Verdict::Inconsistent) rep.exit_code = 1;
    } else if (command == "catalog") {
        if (args.catalog_n < 2) throw ValidationError("catalog needs --n N with N >= 2");
        rep.inputs["n"] = args.catalog_n;
        auto vecs = coxeter_catalog(args.catalog_n);
        nlohmann::ordered_json r;
        r["record"] = "catalog";
        r["n"] = args.catalog_n;
        auto arr = nlohmann::ordered_json::array();
        for (auto& [t, s] : vecs) arr.push_back(nlohmann::ordered_json::array({t, s}));
        r["vectors"] = arr;
        r["count"] = vecs.size();
        rep.records.push_back(r);
        std::string line = "  dimension vectors:";
        for (auto& [t, s] : vecs)
            line += " (" + std::to_string(t) + "," + std::to_string(s) + ")";
        rep.text_lines.push_back(line);
        rep.verdict = "ok";
    } else if (command == "tight") {
        const auto& e = clidetail::find_embedding(doc, args.embedding);
        rep.inputs["embedding"] = args.embedding;
        auto t = is_tight(e);
        for (const auto& v : t.per_a) {
            nlohmann::ordered_json r;
            r["record"] = "tight";
            r["a"] = v.a;
            r["tight"] = v.tight;
            r["rank"] = v.rank;
            r["required_rank"] = v.required_rank;
            rep.records.push_back(r);
            rep.text_lines.push_back("  a=" + std::to_string(v.a) + ": " +
                                     (v.tight ? "tight" : "not tight") + " (rank " +
                                     std::to_string(v.rank) + "/" +
                                     std::to_string(v.required_rank) + ")");
        }
        rep.verdict = t.tight ? "tight" : "not-tight";
    } else if (command == "solve-block") {
        const auto& e = clidetail::find_embedding(doc, args.embedding);
        rep.inputs["embedding"] = args.embedding;
        if (args.block_a < 1) throw ValidationError("solve-block needs --a A");
        if (args.block_json.empty()) throw ValidationError("solve-block needs --block JSON");
        rep.inputs["a"] = args.block_a;
        auto block = clidetail::parse_block(e, args.block_a, args.block_json);
        auto sol = solve_for_block(e, args.block_a, block);
        nlohmann::ordered_json r;
        r["record"] = "solve-block";
        r["a"] = args.block_a;
        r["solved"] = sol.solved();
        if (sol.element) r["element"] = element_json(*sol.element);
        if (sol.obstruction) r["obstruction"] = coords_json(*sol.obstruction);
        rep.records.push_back(r);
        rep.text_lines.push_back(sol.solved()
                                     ? "  unique preimage: " + sol.element->to_string()
                                     : "  no preimage; obstruction functional recorded");
        rep.verdict = sol.solved() ? "solved" : "no-solution";
    } else if (command == "roundtrip") {
        if (args.embedding.empty() && args.extension.empty())
            throw ValidationError("roundtrip needs --embedding or --extension");
        bool all_identical = true;
        if (!args.embedding.empty()) {
            const auto& e = clidetail::find_embedding(doc, args.embedding);
            rep.inputs["embedding"] = args.embedding;
            bool same = roundtrip_image_identical(e, args.seed, args.trials);
            all_identical = all_identical && same;
            nlohmann::ordered_json r;
            r["record"] = "roundtrip";
            r["kind"] = "image-span";
            r["identical"] = same;
            rep.records.push_back(r);
            rep.text_lines.push_back(std::string("  image span after recover+embed: ") +
                                     (same ? "identical" : "different"));
        }
        if (!args.extension.empty()) {
            const auto& e = clidetail::find_extension(doc, args.extension);
            rep.inputs["extension"] = args.extension;
            bool same = roundtrip_ladder_match(e, args.seed, args.trials);
            all_identical = all_identical && same;
            nlohmann::ordered_json r;
            r["record"] = "roundtrip";
            r["kind"] = "ladder-dims";
            r["identical"] = same;
            rep.records.push_back(r);
            rep.text_lines.push_back(std::string("  ladder dims after embed+recover: ") +
                                     (same ? "identical" : "different"));
        }
        rep.verdict = all_identical ? "identical" : "different";
        if (!all_identical) rep.exit_code = 1;
    } else if (command == "dimseq") {
        DimensionSequence seq;
        if (!args.bimodule.empty()) {
            rep.inputs["bimodule"] = args.bimodule;
            seq = dimension_sequence(clidetail::find_bimodule(doc, args.bimodule), args.max_len,
                                     args.seed, args.trials);
        } else {
            const auto& e = clidetail::find_extension(doc, args.extension);
            rep.inputs["extension"] = args.extension;
            seq = dimension_sequence(bimodule_from_extension(e), args.max_len, args.seed,
                                     args.trials);
        }
        rep.inputs["max_len"] = args.max_len;
        nlohmann::ordered_json r;
        r["record"] = "dimseq";
        r["entries"] = seq.entries;
        if (seq.period) r["period"] = *seq.period;
        else r["period"] = nullptr;
        r["truncated"] = seq.truncated;
        rep.records.push_back(r);
        std::string line = "  entries: " + clidetail::sizes_text(seq.entries);
        line += seq.period ? ", period " + std::to_string(*seq.period) : ", no period detected";
        rep.text_lines.push_back(line);
        rep.verdict = seq.period ? "periodic" : "truncated";
    } else if (command == "audit-T") {
        const auto& e = clidetail::find_extension(doc, args.extension);
        rep.inputs["extension"] = args.extension;
        rep.inputs["k_max"] = args.k_max;
        clidetail::axiom_records(rep,
                                 audit_T_fragment(TFragmentModel{e, args.k_max}, args.seed,
                                                  args.trials));
    } else if (command == "audit-Tn") {
        const auto& e = clidetail::find_embedding(doc, args.embedding);
        rep.inputs["embedding"] = args.embedding;
        clidetail::axiom_records(rep, audit_Tn(e, args.seed, args.trials));
    } else if (command == "audit-Tn1") {
        const auto& e = clidetail::find_embedding(doc, args.embedding);
        rep.inputs["embedding"] = args.embedding;
        clidetail::axiom_records(rep, audit_Tn1(e, args.seed, args.trials));
    } else {
        throw UnknownCommand("unknown command '" + command + "'");
    }

    if (!args.expect.empty() && args.expect != rep.verdict) {
        rep.exit_code = 1;
        rep.text_lines.push_back("  expected verdict '" + args.expect + "', got '" + rep.verdict +
                                 "'");
    }
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(clock::now() - start).count();
    return rep;
}

}  // namespace divring
