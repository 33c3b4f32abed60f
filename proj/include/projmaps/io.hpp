#pragma once

// JSON map documents, analysis reports and figure data.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "projmaps/decompose.hpp"
#include "projmaps/error.hpp"
#include "projmaps/finite_field.hpp"
#include "projmaps/poly.hpp"
#include "projmaps/resultant.hpp"
#include "projmaps/stability.hpp"
#include "projmaps/weights.hpp"

namespace projmaps {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Map documents
//
//   {"n": 1, "m": 2, "components": [[{"exp": [2, 0], "coeff": "1"}], ...]}
//
// Terms are written in ascending lexicographic exponent order, coefficients
// as reduced "p/q" or integer strings. Parsing also accepts JSON integers.
// ---------------------------------------------------------------------------

inline Json map_to_json(const ProjectiveMap& f) {
    Json doc;
    doc["n"] = f.n();
    doc["m"] = f.m();
    Json comps = Json::array();
    for (const auto& c : f.components()) {
        Json terms = Json::array();
        for (const auto& [exp, coeff] : c.terms()) {
            Json t;
            t["exp"] = exp;
            t["coeff"] = to_string(coeff);
            terms.push_back(std::move(t));
        }
        comps.push_back(std::move(terms));
    }
    doc["components"] = std::move(comps);
    return doc;
}

inline std::string serialize_map(const ProjectiveMap& f) { return map_to_json(f).dump(2) + "\n"; }

inline ProjectiveMap map_from_json(const Json& doc) {
    auto fail = [](const std::string& where, const std::string& why) {
        return Error(ErrorCode::ParseError, where + ": " + why);
    };
    if (!doc.is_object()) throw fail("document", "expected an object");
    for (const char* key : {"n", "m", "components"})
        if (!doc.contains(key)) throw fail("document", std::string("missing key '") + key + "'");
    if (!doc["n"].is_number_integer()) throw fail("n", "expected an integer");
    if (!doc["m"].is_number_integer()) throw fail("m", "expected an integer");
    const auto n = doc["n"].get<long long>();
    const auto m = doc["m"].get<long long>();
    if (n < 0 || n > 64) throw fail("n", "out of range");
    if (m < 1 || m > 64) throw fail("m", "out of range");
    const auto& comps = doc["components"];
    if (!comps.is_array()) throw fail("components", "expected an array");

    std::vector<TermList> lists;
    for (std::size_t j = 0; j < comps.size(); ++j) {
        const std::string where = "component " + std::to_string(j);
        if (!comps[j].is_array()) throw fail(where, "expected an array of terms");
        TermList list;
        for (std::size_t t = 0; t < comps[j].size(); ++t) {
            const auto& term = comps[j][t];
            const std::string tw = where + ", term " + std::to_string(t);
            if (!term.is_object() || !term.contains("exp") || !term.contains("coeff"))
                throw fail(tw, "expected {\"exp\": [...], \"coeff\": ...}");
            if (!term["exp"].is_array()) throw fail(tw, "exp must be an array");
            MultiIndex exp;
            for (const auto& e : term["exp"]) {
                if (!e.is_number_integer() || e.get<long long>() < 0 || e.get<long long>() > 4096)
                    throw fail(tw, "exponents must be non-negative integers");
                exp.push_back(static_cast<int>(e.get<long long>()));
            }
            Rational coeff;
            if (term["coeff"].is_string()) coeff = parse_rational(term["coeff"].get<std::string>());
            else if (term["coeff"].is_number_integer()) coeff = parse_rational(std::to_string(term["coeff"].get<long long>()));
            else throw fail(tw, "coeff must be a rational string or an integer");
            list.emplace_back(std::move(exp), std::move(coeff));
        }
        lists.push_back(std::move(list));
    }
    try {
        return make_map(static_cast<int>(n), static_cast<int>(m), lists);
    } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid map: ") + e.what());
    }
}

/// Parses a map document; syntax errors report line and column.
inline ProjectiveMap parse_map(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                                               e.what());
    }
    return map_from_json(doc);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline Json rationals_to_json(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
}

inline Json one_ps_to_json(const OnePS& s) {
    Json j;
    j["c"] = s.c;
    j["b"] = s.b;
    return j;
}

inline Json tri_state(const std::optional<bool>& v) {
    if (!v) return "indeterminate";
    return *v;
}

inline Json resultant_to_json(const ResultantValue& r) {
    Json j;
    j["value"] = r.value ? Json(to_string(*r.value)) : Json("indeterminate");
    j["normalization"] = "Res(x_0^m, ..., x_n^m) = 1";
    j["retries"] = r.retries;
    j["matrix_size"] = r.matrix_size;
    return j;
}

inline Json support_to_json(const ProjectiveMap& f) {
    Json a = Json::array();
    for (const auto& s : support(f)) {
        Json comp = Json::array();
        for (const auto& e : s) comp.push_back(e);
        a.push_back(std::move(comp));
    }
    return a;
}

inline Json limit_to_json(const LimitResult& r) {
    Json j;
    j["K"] = r.K;
    j["dropped_terms"] = r.dropped_terms;
    j["support_shrank"] = r.support_shrank;
    j["limit_is_morphism"] = tri_state(r.limit_is_morphism);
    j["limit_support"] = support_to_json(r.limit);
    j["limit"] = map_to_json(r.limit);
    return j;
}

inline Json stabilizer_to_json(const StabilizerSpace& s) {
    Json j;
    j["dim"] = s.dim;
    j["torus_rank"] = s.torus_rank;
    Json basis = Json::array();
    for (const auto& v : s.basis) {
        Json b;
        b["c"] = rationals_to_json(v.c);
        b["b"] = rationals_to_json(v.b);
        b["C"] = to_string(v.C);
        basis.push_back(std::move(b));
    }
    j["basis"] = std::move(basis);
    return j;
}

inline Json block_to_json(const BlockStructure& b) {
    Json j;
    j["variables"] = b.variables;
    j["components"] = b.components;
    j["certified_by"] = std::string(to_string(b.certified_by));
    return j;
}

inline std::vector<int> uncovered_vertices(const std::vector<bool>& coverage) {
    std::vector<int> out;
    for (std::size_t i = 0; i < coverage.size(); ++i)
        if (!coverage[i]) out.push_back(static_cast<int>(i));
    return out;
}

inline Json probe_to_json(const ProbeReport& p, const ResultantValue& r, std::size_t max_points = 16) {
    Json j;
    j["prime"] = p.prime;
    j["zero_count"] = p.zeros_found.size();
    Json pts = Json::array();
    for (std::size_t i = 0; i < p.zeros_found.size() && i < max_points; ++i) pts.push_back(p.zeros_found[i]);
    j["zeros"] = std::move(pts);
    if (r.value) {
        Residue red = reduce_mod(*r.value, p.prime);
        j["resultant_mod_p"] = red;
        j["consistent"] = p.zeros_found.empty() || red == 0;
    }
    return j;
}

inline Json classification_to_json(const ProjectiveMap& f, const ClassificationReport& rep) {
    Json j;
    j["map"] = map_to_json(f);
    j["is_morphism"] = rep.is_morphism;
    j["resultant"] = resultant_to_json(rep.resultant);
    j["m_gt_n_plus_1"] = rep.m_gt_n_plus_1;
    j["unipotent_warning"] = rep.stabilizer.unipotent_warning;
    j["uncovered_vertices"] = uncovered_vertices(rep.vertex_coverage);
    j["stabilizer"] = stabilizer_to_json(rep.stabilizer);
    j["torus_rank"] = rep.stabilizer.torus_rank;
    Json blocks = Json::array();
    for (const auto& a : rep.blocks) {
        Json b = block_to_json(a.block);
        b["subgroup"] = one_ps_to_json(a.subgroup);
        b["canonical_subgroup"] = one_ps_to_json(a.canonical_subgroup);
        b["limit"] = limit_to_json(a.limit);
        blocks.push_back(std::move(b));
    }
    j["blocks"] = std::move(blocks);
    Json obstructions = Json::array();
    for (const auto& o : rep.detection.obstructions) {
        Json ob;
        ob["variables"] = o.variables;
        ob["components"] = o.components;
        obstructions.push_back(std::move(ob));
    }
    j["obstructions"] = std::move(obstructions);
    j["classification"] = std::string(to_string(rep.label));
    if (rep.label == Classification::NoDiagonalDegeneration)
        j["scope"] = "no diagonal degeneration in the given coordinates";
    else if (rep.label == Classification::BlockUnstable)
        j["scope"] = "diagonal degeneration found";
    return j;
}

inline Json tree_to_json(const DecompositionTree& t) {
    Json j;
    j["rank"] = t.map.num_vars();
    j["variables"] = t.variables;
    j["components"] = t.components;
    j["map"] = map_to_json(t.map);
    if (t.is_leaf()) {
        j["leaf_reason"] = std::string(to_string(*t.leaf_reason));
    } else {
        j["block"] = block_to_json(*t.block);
        j["restriction"] = tree_to_json(t.children[0]);
        j["quotient"] = tree_to_json(t.children[1]);
    }
    return j;
}

inline Json decomposition_to_json(const DecompositionTree& t) {
    Json j;
    j["splitting_type"] = t.splitting_type();
    j["tree"] = tree_to_json(t);
    return j;
}

// ---------------------------------------------------------------------------
// Figure data for n = 2: lattice coordinates only, no rendering.
// ---------------------------------------------------------------------------

namespace detail {

/// Partition key of components under every basis solution at once.
inline std::vector<std::vector<Rational>> hyperplane_signatures(const StabilizerSpace& space, std::size_t dim) {
    std::vector<std::vector<Rational>> sig(dim);
    for (const auto& v : space.basis)
        for (std::size_t j = 0; j < dim; ++j) sig[j].push_back(v.b[j] + v.C);
    return sig;
}

inline std::vector<int> partition_labels(const std::vector<std::vector<Rational>>& keys) {
    std::vector<int> labels(keys.size());
    for (std::size_t j = 0; j < keys.size(); ++j) {
        labels[j] = static_cast<int>(j);
        for (std::size_t k = 0; k < j; ++k)
            if (keys[k] == keys[j]) {
                labels[j] = labels[k];
                break;
            }
    }
    return labels;
}

/// A solution separating every pair of hyperplanes that some solution
/// separates. Tries combinations sum_i base^i v_i for small prime bases.
inline std::optional<StabilizerSolution> generic_solution(const ProjectiveMap& f, const StabilizerSpace& space) {
    if (space.torus_rank == 0) return std::nullopt;
    const auto dim = static_cast<std::size_t>(f.num_vars());
    auto target = partition_labels(hyperplane_signatures(space, dim));
    for (int base : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        StabilizerSolution s{std::vector<Rational>(dim), std::vector<Rational>(dim), 0};
        Rational w = 1;
        for (const auto& v : space.basis) {
            for (std::size_t i = 0; i < dim; ++i) {
                s.c[i] += w * v.c[i];
                s.b[i] += w * v.b[i];
            }
            s.C += w * v.C;
            w *= base;
        }
        if (s.c_constant()) continue;
        std::vector<std::vector<Rational>> keys;
        for (std::size_t j = 0; j < dim; ++j) keys.push_back({s.b[j] + s.C});
        if (partition_labels(keys) == target) return s;
    }
    return std::nullopt;
}

} // namespace detail

inline Json figure_data(const ProjectiveMap& f) {
    if (f.n() != 2) throw Error(ErrorCode::WrongDimension, "figure data needs n = 2");
    Json j;
    j["m"] = f.m();
    Json vertices = Json::array();
    for (int i = 0; i < 3; ++i) {
        MultiIndex p(3, 0);
        p[static_cast<std::size_t>(i)] = f.m();
        vertices.push_back(p);
    }
    j["vertices"] = std::move(vertices);
    j["supports"] = support_to_json(f);

    auto space = stabilizer_space(f);
    if (auto s = detail::generic_solution(f, space)) {
        std::vector<Rational> all = s->c;
        all.insert(all.end(), s->b.begin(), s->b.end());
        all.push_back(s->C);
        auto ints = clear_denominators(all);
        std::vector<Rational> c(ints.begin(), ints.begin() + 3), b(ints.begin() + 3, ints.begin() + 6);
        StabilizerSolution scaled{c, b, Rational(ints[6])};
        auto part = hyperplane_partition(f, scaled);
        Json h;
        h["c"] = rationals_to_json(scaled.c);
        h["b"] = rationals_to_json(scaled.b);
        h["C"] = to_string(scaled.C);
        Json records = Json::array();
        for (const auto& cls : part.classes) {
            Json r;
            // Pi_j = {I : <c, I> = b_j + C}
            r["value"] = to_string(cls.value);
            r["components"] = cls.members;
            std::vector<int> on;
            for (std::size_t i = 0; i < 3; ++i)
                if (scaled.c[i] * f.m() == cls.value) on.push_back(static_cast<int>(i));
            r["vertices"] = on;
            records.push_back(std::move(r));
        }
        h["records"] = std::move(records);
        j["hyperplanes"] = std::move(h);
    }

    Json faces = Json::array();
    for (const auto& block : detect_blocks(f).blocks) {
        Json face = block_to_json(block);
        Json pts = Json::array();
        for (int i : block.variables) {
            MultiIndex p(3, 0);
            p[static_cast<std::size_t>(i)] = f.m();
            pts.push_back(p);
        }
        face["face_vertices"] = std::move(pts);
        faces.push_back(std::move(face));
    }
    j["faces"] = std::move(faces);
    return j;
}

} // namespace projmaps
