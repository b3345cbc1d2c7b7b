#include "frameforge/spec_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frameforge/errors.hpp"

namespace frameforge {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw InvalidInput("at " + path + ": " + what);
}

const json& member(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) fail(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing key \"") + key + "\"");
    return *it;
}

std::string string_at(const json& obj, const std::string& path, const char* key) {
    const json& v = member(obj, path, key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

long long int_at(const json& obj, const std::string& path, const char* key) {
    const json& v = member(obj, path, key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<long long>();
}

std::complex<double> scalar(const json& v, const std::string& path) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    fail(path, "expected a number or an [re, im] pair");
}

json scalar_json(std::complex<double> c) {
    if (c.imag() == 0.0) return json(c.real());
    return json::array({c.real(), c.imag()});
}

SparseVector sparse(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of {\"i\", \"c\"} entries");
    std::vector<std::pair<int, std::complex<double>>> entries;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string p = path + "[" + std::to_string(k) + "]";
        const long long i = int_at(v[k], p, "i");
        if (i < 1 || i > 100'000'000) fail(p + ".i", "coordinate index out of range");
        entries.emplace_back(static_cast<int>(i), scalar(member(v[k], p, "c"), p + ".c"));
    }
    try {
        return make_sparse(std::move(entries));
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

json sparse_json(const SparseVector& v) {
    json out = json::array();
    for (const auto& [i, c] : v.entries) out.push_back({{"c", scalar_json(c)}, {"i", i}});
    return out;
}

VectorSequence parse_finite(const json& doc, FieldTag field) {
    const json& vecs = member(doc, "$", "vectors");
    if (!vecs.is_array()) fail("$.vectors", "expected an array of coordinate arrays");
    std::vector<std::vector<std::complex<double>>> columns;
    std::size_t dim = 0;
    for (std::size_t k = 0; k < vecs.size(); ++k) {
        const std::string p = "$.vectors[" + std::to_string(k) + "]";
        const json& vec = vecs[k];
        if (!vec.is_array()) fail(p, "expected a coordinate array");
        if (k == 0) {
            dim = vec.size();
        } else if (vec.size() != dim) {
            fail(p, "coordinate arrays must share one length");
        }
        std::vector<std::complex<double>> col;
        for (std::size_t j = 0; j < vec.size(); ++j) {
            col.push_back(scalar(vec[j], p + "[" + std::to_string(j) + "]"));
        }
        columns.push_back(std::move(col));
    }
    try {
        return make_finite(columns, field);
    } catch (const Error& e) {
        fail("$.vectors", e.what());
    }
}

VectorSequence parse_structured(const json& doc, FieldTag field) {
    if (string_at(doc, "$", "base") != "onb") fail("$.base", "only base \"onb\" is supported");
    const bool has_edits = doc.contains("edits");
    const bool has_rule = doc.contains("rule");
    if (has_edits == has_rule) fail("$", "structured kind needs exactly one of \"edits\", \"rule\"");

    if (has_edits) {
        const json& arr = doc["edits"];
        if (!arr.is_array()) fail("$.edits", "expected an array of edit objects");
        EditScript script;
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const std::string p = "$.edits[" + std::to_string(k) + "]";
            const std::string op = string_at(arr[k], p, "op");
            if (op == "drop") {
                script.edits.emplace_back(DropEdit{static_cast<int>(int_at(arr[k], p, "index"))});
            } else if (op == "insert") {
                script.edits.emplace_back(
                    InsertEdit{static_cast<int>(int_at(arr[k], p, "position")),
                               sparse(member(arr[k], p, "vector"), p + ".vector")});
            } else if (op == "replace") {
                script.edits.emplace_back(
                    ReplaceEdit{static_cast<int>(int_at(arr[k], p, "index")),
                                sparse(member(arr[k], p, "vector"), p + ".vector")});
            } else {
                fail(p + ".op", "expected \"drop\", \"insert\", or \"replace\"");
            }
        }
        try {
            return make_structured(std::move(script), field);
        } catch (const Error& e) {
            fail("$.edits", e.what());
        }
    }

    const json& terms = member(doc["rule"], "$.rule", "terms");
    if (!terms.is_array()) fail("$.rule.terms", "expected an array of term objects");
    CoefficientRule rule;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const std::string p = "$.rule.terms[" + std::to_string(k) + "]";
        const json& index = member(terms[k], p, "index");
        RuleTerm t;
        t.index_slope = int_at(index, p + ".index", "a");
        t.index_offset = int_at(index, p + ".index", "b");
        const json& poly = member(member(terms[k], p, "coeff"), p + ".coeff", "poly");
        if (!poly.is_array() || poly.empty() || poly.size() > 3) {
            fail(p + ".coeff.poly", "expected 1 to 3 polynomial coefficients");
        }
        for (std::size_t j = 0; j < poly.size(); ++j) {
            t.coeff[j] = scalar(poly[j], p + ".coeff.poly[" + std::to_string(j) + "]");
        }
        rule.terms.push_back(t);
    }
    try {
        return make_rule(std::move(rule), field);
    } catch (const Error& e) {
        fail("$.rule", e.what());
    }
}

}  // namespace

std::string serialize_sequence(const VectorSequence& s) {
    json doc;
    doc["v"] = 1;
    doc["field"] = s.field() == FieldTag::Real ? "real" : "complex";
    if (s.kind() == SeqKind::Finite) {
        doc["kind"] = "finite";
        json vecs = json::array();
        const auto& m = s.columns().values;
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            json col = json::array();
            for (Eigen::Index r = 0; r < m.rows(); ++r) col.push_back(scalar_json(m(r, c)));
            vecs.push_back(std::move(col));
        }
        doc["vectors"] = std::move(vecs);
    } else {
        doc["kind"] = "structured";
        doc["base"] = "onb";
        if (s.structured_form() == StructuredForm::Edits) {
            json arr = json::array();
            for (const Edit& e : s.edits().edits) {
                if (const auto* d = std::get_if<DropEdit>(&e)) {
                    arr.push_back({{"index", d->index}, {"op", "drop"}});
                } else if (const auto* i = std::get_if<InsertEdit>(&e)) {
                    arr.push_back({{"op", "insert"},
                                   {"position", i->position},
                                   {"vector", sparse_json(i->vector)}});
                } else {
                    const auto& r = std::get<ReplaceEdit>(e);
                    arr.push_back(
                        {{"index", r.index}, {"op", "replace"}, {"vector", sparse_json(r.vector)}});
                }
            }
            doc["edits"] = std::move(arr);
        } else {
            json terms = json::array();
            for (const RuleTerm& t : s.rule().terms) {
                json poly = json::array();
                for (const auto& c : t.coeff) poly.push_back(scalar_json(c));
                terms.push_back({{"coeff", {{"poly", std::move(poly)}}},
                                 {"index", {{"a", t.index_slope}, {"b", t.index_offset}}}});
            }
            doc["rule"] = {{"terms", std::move(terms)}};
        }
    }
    return doc.dump(2) + "\n";
}

VectorSequence parse_sequence(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("$", "expected a JSON object");
    const json& v = member(doc, "$", "v");
    if (!v.is_number_integer() || v.get<int>() != 1) fail("$.v", "unsupported schema version");

    const std::string field_name = string_at(doc, "$", "field");
    FieldTag field;
    if (field_name == "real") {
        field = FieldTag::Real;
    } else if (field_name == "complex") {
        field = FieldTag::Complex;
    } else {
        fail("$.field", "expected \"real\" or \"complex\"");
    }

    const std::string kind = string_at(doc, "$", "kind");
    if (kind == "finite") return parse_finite(doc, field);
    if (kind == "structured") return parse_structured(doc, field);
    fail("$.kind", "expected \"finite\" or \"structured\"");
}

VectorSequence load_sequence(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_sequence(buf.str());
    } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

void save_sequence(const VectorSequence& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write file: " + path);
    out << serialize_sequence(s);
}

}  // namespace frameforge
