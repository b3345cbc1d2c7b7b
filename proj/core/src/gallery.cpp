#include "frameforge/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "frameforge/errors.hpp"

namespace frameforge {

namespace {

Taxonomy exact_tax(bool frame, bool riesz_seq, std::optional<int> excess, std::optional<int> deficit) {
    Taxonomy t;
    t.bessel = true;
    t.frame = frame;
    t.riesz_sequence = riesz_seq;
    t.riesz_basis = frame && riesz_seq;
    t.quasi_frame = true;
    t.pseudo_frame = deficit.has_value();
    t.pseudo_riesz_sequence = excess.has_value();
    t.pseudo_riesz_basis = t.pseudo_frame && t.pseudo_riesz_sequence;
    t.near_riesz_basis = frame && t.pseudo_riesz_sequence;
    t.excess = excess;
    t.deficit = deficit;
    t.provenance = Provenance::Exact;
    return t;
}

Taxonomy non_bessel_tax() {
    Taxonomy t;
    t.provenance = Provenance::TruncationExtrapolated;
    return t;
}

SparseVector basis_vec(int index) { return make_sparse({{index, 1.0}}); }

RuleTerm term(long long slope, long long offset, std::complex<double> c0,
              std::complex<double> c1 = 0.0) {
    return RuleTerm{slope, offset, {c0, c1, 0.0}};
}

GalleryEntry entry_onb() {
    GalleryEntry e;
    e.name = "onb";
    e.sequence = make_structured(EditScript{});
    e.expected_taxonomy = exact_tax(true, true, 0, 0);
    e.notes = {"the standard coordinate basis: every membership flag holds and both counts are 0"};
    e.suggested_truncations = {4, 8, 16, 32};
    return e;
}

GalleryEntry entry_duplicate_e1() {
    GalleryEntry e;
    e.name = "duplicate-e1";
    e.sequence = make_structured(EditScript{{ReplaceEdit{2, basis_vec(1)}}});
    e.expected_taxonomy = exact_tax(false, false, 1, 1);
    e.notes = {"the second vector repeats the first and the second coordinate is never hit",
               "excess and deficit are both 1, so the index is 0 and the defect is balanced"};
    e.suggested_truncations = {4, 8, 16, 32};
    return e;
}

GalleryEntry entry_mercedes_benz() {
    GalleryEntry e;
    e.name = "mercedes-benz";
    const double s = std::sqrt(3.0) / 2.0;
    e.sequence = make_finite({{0.0, 1.0}, {-s, -0.5}, {s, -0.5}}, FieldTag::Real);
    e.expected_taxonomy = exact_tax(true, false, 1, 0);
    e.notes = {"three unit vectors at equal angles in the plane",
               "the frame operator is 1.5 times the identity, so the canonical dual just rescales",
               "removing any one vector leaves a basis: the excess is 1"};
    return e;
}

GalleryEntry entry_dropped_head(int m) {
    GalleryEntry e;
    std::vector<Edit> edits(static_cast<std::size_t>(m), DropEdit{1});
    e.name = "dropped-head(" + std::to_string(m) + ")";
    e.sequence = make_structured(EditScript{std::move(edits)});
    e.expected_taxonomy = exact_tax(false, true, 0, m);
    e.notes = {"the standard basis with the first " + std::to_string(m) + " vectors removed",
               "still a Riesz sequence; the missing coordinates give deficit " + std::to_string(m)};
    e.suggested_truncations = {4, 8, 16, 32};
    return e;
}

GalleryEntry entry_scaled_onb(double lambda) {
    GalleryEntry e;
    std::ostringstream name;
    name << "scaled-onb(" << lambda << ")";
    e.name = name.str();
    e.sequence = make_rule(CoefficientRule{{term(1, 0, lambda)}});
    e.expected_taxonomy = exact_tax(true, true, 0, 0);
    e.expected_taxonomy.provenance = Provenance::TruncationExtrapolated;
    std::ostringstream note;
    note << "every coordinate vector scaled by " << lambda
         << "; both frame bounds equal the square of the scale";
    e.notes = {note.str(), "rule-driven, so verdicts come from a stabilized scan"};
    e.suggested_truncations = {8, 16, 32, 64};
    return e;
}

GalleryEntry entry_odd_basis_pair() {
    GalleryEntry e;
    e.name = "odd-basis-with-growing-codual";
    e.sequence = make_rule(CoefficientRule{{term(2, -1, 1.0)}});
    e.partner = make_rule(CoefficientRule{{term(2, -1, 1.0), term(2, 0, 0.0, 1.0)}});

    Taxonomy f;
    f.bessel = true;
    f.riesz_sequence = true;
    f.quasi_frame = true;
    f.pseudo_riesz_sequence = true;
    f.excess = 0;
    f.provenance = Provenance::TruncationExtrapolated;
    e.expected_taxonomy = f;
    e.expected_partner_taxonomy = non_bessel_tax();

    e.pair = PairExpectation{DualityRelation::Codual, 0, false};
    e.notes = {
        "the odd-index coordinate vectors: a Riesz sequence whose corange grows with every window",
        "the partner is biorthogonal but pumps linearly growing mass into the even coordinates",
        "biorthogonality alone does not bound the partner: the codual defect vanishes on every "
        "window while no Bessel bound exists"};
    e.suggested_truncations = {4, 8, 16, 32};
    return e;
}

GalleryEntry entry_shifted_basis_pair(int m, bool upper_triangular) {
    GalleryEntry e;
    e.name = std::string("shifted-basis-pair") + (upper_triangular ? "-ut" : "") + "(" +
             std::to_string(m) + ")";
    std::vector<Edit> edits(static_cast<std::size_t>(m), DropEdit{1});
    e.sequence = make_structured(EditScript{std::move(edits)});

    std::vector<RuleTerm> partner_terms;
    if (upper_triangular) {
        const double tau = 0.5;
        double c = 1.0;
        for (int j = 1; j <= m; ++j) {
            partner_terms.push_back(term(0, j, c));
            c *= -tau;
        }
    } else {
        partner_terms.push_back(term(0, 1, 1.0));
    }
    partner_terms.push_back(term(1, m, 1.0));
    e.partner = make_rule(CoefficientRule{std::move(partner_terms)});

    e.expected_taxonomy = exact_tax(false, true, 0, m);
    e.expected_partner_taxonomy = non_bessel_tax();
    e.pair = PairExpectation{DualityRelation::Codual, 0, false};

    e.notes = {"the basis shifted past its first " + std::to_string(m) + " coordinates",
               upper_triangular
                   ? "the partner adds a fixed alternating head over the skipped coordinates"
                   : "the partner adds the first coordinate vector to every term",
               "the pair is biorthogonal, yet the partner's synthesis bound grows linearly with "
               "the window",
               "checked in the other direction the defect has rank " + std::to_string(m) +
                   ": the skipped coordinates are never reconstructed"};
    e.suggested_truncations = {8, 16, 32, 128};
    return e;
}

struct ParsedName {
    std::string base;
    std::optional<std::string> arg;
};

ParsedName parse_name(const std::string& name) {
    const auto open = name.find('(');
    if (open == std::string::npos) return {name, std::nullopt};
    if (name.back() != ')') throw InvalidInput("malformed gallery name '" + name + "'");
    return {name.substr(0, open), name.substr(open + 1, name.size() - open - 2)};
}

int int_arg(const ParsedName& p) {
    if (!p.arg) throw InvalidInput("gallery entry '" + p.base + "' needs an integer argument");
    char* end = nullptr;
    const long v = std::strtol(p.arg->c_str(), &end, 10);
    if (end == p.arg->c_str() || *end != '\0' || v < 1 || v > 64) {
        throw InvalidInput("argument of '" + p.base + "' must be an integer in [1, 64]");
    }
    return static_cast<int>(v);
}

double double_arg(const ParsedName& p) {
    if (!p.arg) throw InvalidInput("gallery entry '" + p.base + "' needs a numeric argument");
    char* end = nullptr;
    const double v = std::strtod(p.arg->c_str(), &end);
    if (end == p.arg->c_str() || *end != '\0' || !std::isfinite(v) || v == 0.0) {
        throw InvalidInput("argument of '" + p.base + "' must be a finite nonzero number");
    }
    return v;
}

}  // namespace

GalleryEntry gallery_get(const std::string& name) {
    const ParsedName p = parse_name(name);
    if (p.base == "onb") return entry_onb();
    if (p.base == "duplicate-e1") return entry_duplicate_e1();
    if (p.base == "mercedes-benz") return entry_mercedes_benz();
    if (p.base == "odd-basis-with-growing-codual") return entry_odd_basis_pair();
    if (p.base == "dropped-head") return entry_dropped_head(int_arg(p));
    if (p.base == "scaled-onb") return entry_scaled_onb(double_arg(p));
    if (p.base == "shifted-basis-pair") return entry_shifted_basis_pair(int_arg(p), false);
    if (p.base == "shifted-basis-pair-ut") return entry_shifted_basis_pair(int_arg(p), true);

    std::string known;
    for (const std::string& n : gallery_names()) {
        if (!known.empty()) known += ", ";
        known += n;
    }
    throw NotFound("unknown gallery entry '" + name + "'; known entries: " + known);
}

std::vector<std::string> gallery_names() {
    return {"dropped-head(2)",
            "duplicate-e1",
            "mercedes-benz",
            "odd-basis-with-growing-codual",
            "onb",
            "scaled-onb(1.5)",
            "shifted-basis-pair(2)",
            "shifted-basis-pair-ut(2)"};
}

}  // namespace frameforge
