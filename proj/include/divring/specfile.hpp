#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "divring/bimodule.hpp"
#include "divring/tightness.hpp"

namespace divring {

using json = nlohmann::ordered_json;

/// A fully validated spec document: one ground field, named algebras,
/// extensions, embeddings and bimodules. Everything is verified at load
/// (structure tables, subring closures, basis freeness, bimodule axioms,
/// division probes where a division candidate is required), so no operation
/// ever sees an unchecked object.
struct SpecDocument {
    int format_version = 1;
    FieldSpec field = FieldSpec::rationals();
    std::map<std::string, AlgebraPtr> algebras;
    std::map<std::string, Extension> extensions;
    std::map<std::string, EmbeddingModel> embeddings;
    std::map<std::string, Bimodule> bimodules;
};

namespace specdetail {

inline Scalar parse_scalar(const FieldSpec& f, const json& j, const std::string& where) {
    if (j.is_number_integer()) return Scalar::from_int(f, j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Scalar::parse(f, j.get<std::string>());
        } catch (const ParseError& e) {
            throw ValidationError(where + ": " + e.what());
        }
    }
    throw ValidationError(where + ": scalar must be an integer or a string literal");
}

inline std::vector<Scalar> parse_coords(const FieldSpec& f, const json& j, std::size_t len,
                                        const std::string& where) {
    if (!j.is_array() || j.size() != len)
        throw ValidationError(where + ": expected a coordinate vector of length " +
                              std::to_string(len));
    std::vector<Scalar> out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
        out.push_back(parse_scalar(f, j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline FieldSpec parse_field(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind"))
        throw ValidationError(where + ": field section needs a 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "rationals") return FieldSpec::rationals();
    if (kind == "prime_field") {
        if (!j.contains("p")) throw ValidationError(where + ": prime_field needs 'p'");
        return FieldSpec::prime_field(j.at("p").get<std::int64_t>());
    }
    throw ValidationError(where + ": unknown field kind '" + kind + "'");
}

inline AlgebraPtr parse_algebra(const FieldSpec& f, const std::string& name, const json& j) {
    const std::string where = "algebras." + name;
    if (!j.is_object() || !j.contains("basis") || !j.contains("table"))
        throw ValidationError(where + ": needs 'basis' and 'table'");
    std::vector<std::string> basis = j.at("basis").get<std::vector<std::string>>();
    const std::size_t m = basis.size();
    if (m == 0) throw ValidationError(where + ": empty basis");

    std::vector<std::vector<Scalar>> table(m * m, std::vector<Scalar>(m, Scalar::zero(f)));
    std::vector<bool> seen(m * m, false);
    for (const auto& triple : j.at("table")) {
        if (!triple.is_array() || triple.size() != 3)
            throw ValidationError(where + ".table: entries are triples [i, j, coords]");
        auto i = triple[0].get<std::size_t>();
        auto jj = triple[1].get<std::size_t>();
        if (i >= m || jj >= m)
            throw ValidationError(where + ".table: index out of range in triple (" +
                                  std::to_string(i) + "," + std::to_string(jj) + ")");
        if (seen[i * m + jj])
            throw ValidationError(where + ".table: duplicate triple (" + std::to_string(i) + "," +
                                  std::to_string(jj) + ")");
        seen[i * m + jj] = true;
        table[i * m + jj] = parse_coords(f, triple[2], m, where + ".table");
    }

    std::vector<Scalar> unit(m, Scalar::zero(f));
    unit[0] = Scalar::one(f);
    if (j.contains("unit")) unit = parse_coords(f, j.at("unit"), m, where + ".unit");

    try {
        return Algebra::create_verified(f, std::move(basis), std::move(table), std::move(unit),
                                        name);
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

inline const AlgebraPtr& resolve_algebra(const SpecDocument& doc, const json& j,
                                         const std::string& where) {
    if (!j.contains("algebra")) throw ValidationError(where + ": needs an 'algebra' reference");
    std::string ref = j.at("algebra").get<std::string>();
    auto it = doc.algebras.find(ref);
    if (it == doc.algebras.end())
        throw ValidationError(where + ": dangling algebra reference '" + ref + "'");
    return it->second;
}

inline Extension parse_extension(const SpecDocument& doc, const std::string& name, const json& j,
                                 std::uint64_t seed, int trials) {
    const std::string where = "extensions." + name;
    const AlgebraPtr& f = resolve_algebra(doc, j, where);
    std::vector<AlgebraElement> gens;
    if (j.contains("subring_generators"))
        for (const auto& v : j.at("subring_generators"))
            gens.emplace_back(f, parse_coords(f->field(), v, f->dim(),
                                              where + ".subring_generators"));
    Subspace g = subring_closure(f, gens, true);

    std::optional<std::vector<AlgebraElement>> basis;
    if (j.contains("left_basis")) {
        std::vector<AlgebraElement> b;
        for (const auto& v : j.at("left_basis"))
            b.emplace_back(f, parse_coords(f->field(), v, f->dim(), where + ".left_basis"));
        basis = std::move(b);
    }
    try {
        Extension e = Extension::build(f, g, std::move(basis), name);
        require_division(f, seed, trials);
        require_division(e.G_algebra(), seed, trials);
        return e;
    } catch (const Error& err) {
        throw ValidationError(where + ": " + err.what());
    }
}

inline EmbeddingModel parse_embedding(const SpecDocument& doc, const std::string& name,
                                      const json& j, std::uint64_t seed, int trials) {
    const std::string where = "embeddings." + name;
    const AlgebraPtr& g = resolve_algebra(doc, j, where);
    if (!j.contains("n") || !j.contains("image_basis"))
        throw ValidationError(where + ": needs 'n' and 'image_basis'");
    const std::size_t n = j.at("n").get<std::size_t>();

    auto parse_entry = [&](const json& cell, const std::string& cw) {
        // a bare scalar is shorthand for a 1-dimensional coefficient ring
        if (cell.is_array()) return AlgebraElement(g, parse_coords(g->field(), cell, g->dim(), cw));
        if (g->dim() != 1)
            throw ValidationError(cw + ": entry must be a coordinate vector of length " +
                                  std::to_string(g->dim()));
        return AlgebraElement(g, std::vector<Scalar>{parse_scalar(g->field(), cell, cw)});
    };

    std::vector<RingMatrix> basis;
    std::size_t idx = 0;
    for (const auto& grid : j.at("image_basis")) {
        const std::string gw = where + ".image_basis[" + std::to_string(idx++) + "]";
        if (!grid.is_array() || grid.size() != n)
            throw ValidationError(gw + ": expected " + std::to_string(n) + " rows");
        RingMatrix m(g, n);
        for (std::size_t r = 0; r < n; ++r) {
            if (!grid[r].is_array() || grid[r].size() != n)
                throw ValidationError(gw + ": expected " + std::to_string(n) + " columns");
            for (std::size_t c = 0; c < n; ++c) m.at(r, c) = parse_entry(grid[r][c], gw);
        }
        basis.push_back(std::move(m));
    }
    try {
        return EmbeddingModel::build(g, n, std::move(basis), seed, trials, name);
    } catch (const Error& err) {
        throw ValidationError(where + ": " + err.what());
    }
}

inline Bimodule parse_bimodule(const SpecDocument& doc, const std::string& name, const json& j) {
    const std::string where = "bimodules." + name;
    for (const char* key : {"left", "right", "dim", "left_action", "right_action"})
        if (!j.contains(key)) throw ValidationError(where + ": needs '" + std::string(key) + "'");
    auto find_ring = [&](const char* key) -> const AlgebraPtr& {
        std::string ref = j.at(key).get<std::string>();
        auto it = doc.algebras.find(ref);
        if (it == doc.algebras.end())
            throw ValidationError(where + ": dangling algebra reference '" + ref + "'");
        return it->second;
    };
    const AlgebraPtr& a = find_ring("left");
    const AlgebraPtr& b = find_ring("right");
    const std::size_t m = j.at("dim").get<std::size_t>();

    auto parse_actions = [&](const char* key, std::size_t count) {
        const auto& arr = j.at(key);
        if (!arr.is_array() || arr.size() != count)
            throw ValidationError(where + "." + key + ": expected " + std::to_string(count) +
                                  " matrices");
        std::vector<Matrix> out;
        for (std::size_t t = 0; t < count; ++t) {
            const auto& mat = arr[t];
            if (!mat.is_array() || mat.size() != m)
                throw ValidationError(where + "." + key + ": expected " + std::to_string(m) +
                                      " rows");
            Matrix mm(a->field(), m, m);
            for (std::size_t r = 0; r < m; ++r) {
                auto row = parse_coords(a->field(), mat[r], m, where + "." + key);
                for (std::size_t c = 0; c < m; ++c) mm.at(r, c) = row[c];
            }
            out.push_back(std::move(mm));
        }
        return out;
    };

    Bimodule mod(a, b, m, parse_actions("left_action", a->dim()),
                 parse_actions("right_action", b->dim()));
    auto rep = verify_bimodule(mod);
    if (!rep.ok) throw ValidationError(where + ": " + rep.witnesses.front());
    return mod;
}

}  // namespace specdetail

inline SpecDocument parse_spec_text(const std::string& text, std::uint64_t seed = 0,
                                    int trials = 64) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("spec file is not well-formed: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("spec file must be a JSON object");

    SpecDocument doc;
    if (j.contains("format_version")) doc.format_version = j.at("format_version").get<int>();
    if (doc.format_version != 1)
        throw ValidationError("unsupported format_version " + std::to_string(doc.format_version));
    if (!j.contains("field")) throw ValidationError("spec file needs a 'field' section");
    doc.field = specdetail::parse_field(j.at("field"), "field");

    if (j.contains("algebras"))
        for (const auto& [name, body] : j.at("algebras").items())
            doc.algebras.emplace(name, specdetail::parse_algebra(doc.field, name, body));
    if (j.contains("extensions"))
        for (const auto& [name, body] : j.at("extensions").items())
            doc.extensions.emplace(name,
                                   specdetail::parse_extension(doc, name, body, seed, trials));
    if (j.contains("embeddings"))
        for (const auto& [name, body] : j.at("embeddings").items())
            doc.embeddings.emplace(name,
                                   specdetail::parse_embedding(doc, name, body, seed, trials));
    if (j.contains("bimodules"))
        for (const auto& [name, body] : j.at("bimodules").items())
            doc.bimodules.emplace(name, specdetail::parse_bimodule(doc, name, body));
    return doc;
}

inline SpecDocument parse_spec_file(const std::string& path, std::uint64_t seed = 0,
                                    int trials = 64) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str(), seed, trials);
}

}  // namespace divring
