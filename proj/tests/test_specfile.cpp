#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "divring/cli.hpp"
#include "divring/specfile.hpp"

using namespace divring;

#ifndef DIVRING_CORPUS_DIR
#define DIVRING_CORPUS_DIR "corpus"
#endif

namespace {

std::string corpus(const std::string& name) {
    return std::string(DIVRING_CORPUS_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("the shipped corpus loads and cross-references resolve") {
    auto sqrt2 = parse_spec_file(corpus("sqrt2.json"));
    CHECK(sqrt2.algebras.size() == 2);
    CHECK(sqrt2.extensions.count("sqrt2") == 1);
    CHECK(sqrt2.embeddings.count("sqrt2") == 1);
    CHECK(sqrt2.bimodules.count("sqrt2_over_q") == 1);

    auto f9 = parse_spec_file(corpus("f9.json"));
    CHECK(f9.field == FieldSpec::prime_field(3));
    CHECK(f9.extensions.at("f9").n() == 2);

    auto cbrt2 = parse_spec_file(corpus("cbrt2.json"));
    CHECK(cbrt2.extensions.at("cbrt2").n() == 3);

    auto quat = parse_spec_file(corpus("quat.json"));
    CHECK(quat.embeddings.at("quat").dim_image() == 4);

    auto split = parse_spec_file(corpus("split_quat.json"));
    CHECK(split.algebras.count("split_quat") == 1);
}

TEST_CASE("parse failures carry context") {
    CHECK_THROWS_AS(parse_spec_text("{ not json"), ParseError);
    CHECK_THROWS_AS(parse_spec_text("[]"), ParseError);
    CHECK_THROWS_AS(parse_spec_text("{}"), ValidationError);  // no field section
    CHECK_THROWS_AS(parse_spec_file("/nonexistent/path.json"), ParseError);
}

TEST_CASE("non-prime modulus is rejected") {
    CHECK_THROWS_WITH(
        parse_spec_text(R"({"field": {"kind": "prime_field", "p": 4}})"),
        Catch::Matchers::ContainsSubstring("not prime"));
}

TEST_CASE("dangling references are named") {
    const char* doc = R"({
      "field": {"kind": "rationals"},
      "algebras": {"q": {"basis": ["1"], "table": [[0,0,["1"]]]}},
      "extensions": {"e": {"algebra": "missing"}}
    })";
    CHECK_THROWS_WITH(parse_spec_text(doc),
                      Catch::Matchers::ContainsSubstring("dangling algebra reference 'missing'"));
}

TEST_CASE("corrupt structure tables are rejected at load") {
    const char* doc = R"({
      "field": {"kind": "rationals"},
      "algebras": {"bad": {"basis": ["1","c","c2"], "table": [
        [0,0,["1","0","0"]], [0,1,["0","1","0"]], [0,2,["0","0","1"]],
        [1,0,["0","1","0"]], [1,1,["1","0","0"]], [1,2,["2","0","0"]],
        [2,0,["0","0","1"]], [2,1,["2","0","0"]], [2,2,["0","2","0"]]
      ]}}
    })";
    CHECK_THROWS_WITH(parse_spec_text(doc),
                      Catch::Matchers::ContainsSubstring("not associative"));
}

TEST_CASE("an embedding over a non-division span is rejected at load") {
    const char* doc = R"({
      "field": {"kind": "rationals"},
      "algebras": {"q": {"basis": ["1"], "table": [[0,0,["1"]]]}},
      "embeddings": {"bad": {"algebra": "q", "n": 2, "image_basis": [
        [["1","0"],["0","1"]],
        [["1","0"],["0","-1"]]
      ]}}
    })";
    CHECK_THROWS_WITH(parse_spec_text(doc),
                      Catch::Matchers::ContainsSubstring("zero divisor"));
}

TEST_CASE("tight command and expectations") {
    auto doc = parse_spec_file(corpus("sqrt2.json"));
    CommandArgs args;
    args.embedding = "sqrt2";
    auto rep = run_command(doc, "tight", args);
    CHECK(rep.exit_code == 0);
    CHECK(rep.verdict == "tight");

    args.expect = "not-tight";
    CHECK(run_command(doc, "tight", args).exit_code == 1);

    auto doc3 = parse_spec_file(corpus("cbrt2.json"));
    CommandArgs args3;
    args3.embedding = "cbrt2";
    args3.expect = "tight";
    auto rep3 = run_command(doc3, "tight", args3);
    CHECK(rep3.exit_code == 1);
    CHECK(rep3.verdict == "not-tight");
    REQUIRE(rep3.records.size() == 3);
    CHECK(rep3.records[0]["tight"] == true);
    CHECK(rep3.records[1]["tight"] == false);
    CHECK(rep3.records[2]["tight"] == true);
}

TEST_CASE("dimseq command over extensions and bimodules") {
    auto doc = parse_spec_file(corpus("cbrt2.json"));
    CommandArgs args;
    args.extension = "cbrt2";
    args.max_len = 8;
    auto rep = run_command(doc, "dimseq", args);
    CHECK(rep.exit_code == 0);
    CHECK(rep.records[0]["entries"] ==
          nlohmann::ordered_json::array({1, 3, 1, 3, 1, 3, 1, 3}));
    CHECK(rep.records[0]["period"] == 2);

    auto doc2 = parse_spec_file(corpus("sqrt2.json"));
    CommandArgs args2;
    args2.bimodule = "sqrt2_over_q";
    auto rep2 = run_command(doc2, "dimseq", args2);
    CHECK(rep2.records[0]["entries"][0] == 1);
    CHECK(rep2.records[0]["entries"][1] == 2);
}

TEST_CASE("explicit left bases are validated at load") {
    const char* good = R"({
      "field": {"kind": "rationals"},
      "algebras": {"sqrt2": {"basis": ["1","s"], "table": [
        [0,0,["1","0"]],[0,1,["0","1"]],[1,0,["0","1"]],[1,1,["2","0"]]]}},
      "extensions": {"e": {"algebra": "sqrt2", "subring_generators": [],
                           "left_basis": [["1","0"],["0","1"]]}}
    })";
    auto doc = parse_spec_text(good);
    CHECK(doc.extensions.at("e").n() == 2);

    const char* bad = R"({
      "field": {"kind": "rationals"},
      "algebras": {"sqrt2": {"basis": ["1","s"], "table": [
        [0,0,["1","0"]],[0,1,["0","1"]],[1,0,["0","1"]],[1,1,["2","0"]]]}},
      "extensions": {"e": {"algebra": "sqrt2", "subring_generators": [],
                           "left_basis": [["0","1"],["1","0"]]}}
    })";
    CHECK_THROWS_WITH(parse_spec_text(bad),
                      Catch::Matchers::ContainsSubstring("f_0 = 1"));
}

TEST_CASE("lemma12 restricted to a single k") {
    auto doc = parse_spec_file(corpus("cbrt2.json"));
    CommandArgs args;
    args.extension = "cbrt2";
    args.k = 1;
    CHECK(run_command(doc, "lemma12", args).verdict == "fails");
    args.k = 2;
    CHECK(run_command(doc, "lemma12", args).verdict == "holds");
    args.k = 0;
    CHECK(run_command(doc, "lemma12", args).verdict == "fails");
}

TEST_CASE("audit witnesses are machine-serialized as coordinates") {
    auto doc = parse_spec_file(corpus("cbrt2.json"));
    CommandArgs args;
    args.extension = "cbrt2";
    args.k_max = 1;
    auto rep = run_command(doc, "audit-T", args);
    bool found = false;
    for (const auto& r : rep.records)
        if (r["id"] == "T.4") {
            found = true;
            REQUIRE(r.contains("witness_coords"));
            CHECK(r["witness_coords"] == nlohmann::ordered_json::array({"0", "0", "1"}));
        }
    CHECK(found);
}

TEST_CASE("unknown commands and objects exit through errors") {
    auto doc = parse_spec_file(corpus("sqrt2.json"));
    CommandArgs args;
    CHECK_THROWS_AS(run_command(doc, "frobnicate", args), UnknownCommand);
    args.embedding = "nope";
    CHECK_THROWS_AS(run_command(doc, "tight", args), UnknownObject);
    CommandArgs args2;
    args2.extension = "nope";
    CHECK_THROWS_AS(run_command(doc, "ladder", args2), UnknownObject);
}

TEST_CASE("check-algebra reports the split quaternions as refuted") {
    auto doc = parse_spec_file(corpus("split_quat.json"));
    CommandArgs args;
    args.algebra = "split_quat";
    auto rep = run_command(doc, "check-algebra", args);
    CHECK(rep.exit_code == 0);
    CHECK(rep.verdict == "certified-not-division");
    args.expect = "certified-not-division";
    CHECK(run_command(doc, "check-algebra", args).exit_code == 0);
    args.expect = "ok";
    CHECK(run_command(doc, "check-algebra", args).exit_code == 1);
}

TEST_CASE("solve-block and transporter take inline JSON") {
    auto doc = parse_spec_file(corpus("sqrt2.json"));
    CommandArgs args;
    args.embedding = "sqrt2";
    args.block_a = 1;
    args.block_json = R"([["3","4"]])";
    auto rep = run_command(doc, "solve-block", args);
    CHECK(rep.verdict == "solved");
    CHECK(rep.records[0]["element"] == nlohmann::ordered_json::array({"3", "4"}));

    CommandArgs targs;
    targs.extension = "sqrt2";
    targs.h1_json = R"([["1","0"]])";
    targs.h2_json = R"([["0","1"]])";
    auto trep = run_command(doc, "transporter", targs);
    CHECK(trep.verdict == "found");
    CHECK(trep.records[0]["element"] == nlohmann::ordered_json::array({"0", "1"}));
}

TEST_CASE("machine reports are deterministic across runs") {
    for (const char* cmd : {"tight", "garcia", "audit-Tn", "dimseq", "roundtrip"}) {
        auto doc_a = parse_spec_file(corpus("quat.json"), 7);
        auto doc_b = parse_spec_file(corpus("quat.json"), 7);
        CommandArgs args;
        args.seed = 7;
        args.embedding = "quat";
        args.extension = "quat";
        auto rep_a = emit_report(run_command(doc_a, cmd, args), ReportFormat::Machine);
        auto rep_b = emit_report(run_command(doc_b, cmd, args), ReportFormat::Machine);
        CHECK(rep_a == rep_b);
        CHECK_FALSE(rep_a.empty());
    }
}

TEST_CASE("garcia and audits through the command layer") {
    auto doc = parse_spec_file(corpus("cbrt2.json"));
    CommandArgs args;
    args.extension = "cbrt2";
    auto rep = run_command(doc, "garcia", args);
    CHECK(rep.verdict == "consistent-negative");
    CHECK(rep.records[0]["condition2"] == nlohmann::ordered_json::array({false, true}));

    CommandArgs eargs;
    eargs.embedding = "cbrt2";
    auto tn = run_command(doc, "audit-Tn", eargs);
    CHECK(tn.verdict == "violated");
    auto tn1 = run_command(doc, "audit-Tn1", eargs);
    CHECK(tn1.verdict == "satisfied");

    CommandArgs xargs;
    xargs.extension = "cbrt2";
    xargs.k_max = 2;
    auto tf = run_command(doc, "audit-T", xargs);
    CHECK(tf.verdict == "violated");
}

TEST_CASE("catalog command") {
    SpecDocument empty;
    CommandArgs args;
    args.catalog_n = 4;
    auto rep = run_command(empty, "catalog", args);
    CHECK(rep.records[0]["count"] == 6);
    CHECK(rep.records[0]["vectors"][0] == nlohmann::ordered_json::array({1, 0}));
    CHECK(rep.records[0]["vectors"][5] == nlohmann::ordered_json::array({0, 1}));
}

TEST_CASE("roundtrip command is green on the corpus") {
    auto doc = parse_spec_file(corpus("f9.json"));
    CommandArgs args;
    args.embedding = "f9";
    args.extension = "f9";
    auto rep = run_command(doc, "roundtrip", args);
    CHECK(rep.exit_code == 0);
    CHECK(rep.verdict == "identical");
}
