#include "frameforge/report.hpp"

#include <cmath>

#include <json.hpp>

namespace frameforge {

namespace {

using nlohmann::json;

json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

json opt_int(const std::optional<int>& v) {
    if (!v) return nullptr;
    return *v;
}

const char* provenance_name(Provenance p) {
    return p == Provenance::Exact ? "exact" : "truncation_extrapolated";
}

json taxonomy_obj(const Taxonomy& t) {
    return {{"bessel", t.bessel},
            {"frame", t.frame},
            {"riesz_sequence", t.riesz_sequence},
            {"riesz_basis", t.riesz_basis},
            {"quasi_frame", t.quasi_frame},
            {"pseudo_frame", t.pseudo_frame},
            {"pseudo_riesz_sequence", t.pseudo_riesz_sequence},
            {"pseudo_riesz_basis", t.pseudo_riesz_basis},
            {"near_riesz_basis", t.near_riesz_basis},
            {"excess", opt_int(t.excess)},
            {"deficit", opt_int(t.deficit)},
            {"provenance", provenance_name(t.provenance)}};
}

json analysis_obj(const SynthesisAnalysis& a) {
    return {{"bessel_bound", num(a.bessel_bound)},
            {"frame_lower", num(a.frame_lower)},
            {"riesz_lower", num(a.riesz_lower)},
            {"gamma", num(a.gamma)},
            {"rank", a.rank},
            {"kernel_dim", a.kernel_dim},
            {"corange_dim", a.corange_dim},
            {"index", a.index}};
}

json shape_obj(const EmpiricalShape& s) {
    return {{"kernel_dim", s.kernel_dim}, {"corange_dim", s.corange_dim}, {"index", s.index}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string taxonomy_json(const Taxonomy& t) { return dump(taxonomy_obj(t)); }

std::string analysis_json(const SynthesisAnalysis& a) { return dump(analysis_obj(a)); }

std::string scan_json(const ScanReport& r) {
    json steps = json::array();
    for (const ScanStep& s : r.steps) {
        steps.push_back({{"n_vectors", s.truncation.n_vectors},
                         {"d_coords", s.truncation.d_coords},
                         {"analysis", analysis_obj(s.analysis)}});
    }
    return dump({{"steps", std::move(steps)},
                 {"stabilized", r.stabilized},
                 {"extrapolated", taxonomy_obj(r.extrapolated)},
                 {"divergence_notes", r.divergence_notes}});
}

std::string duality_json(const DualityCertificate& c) {
    const char* relation = c.relation == DualityRelation::Dual ? "dual" : "codual";
    const char* verdict = c.verdict == DualityVerdict::ExactDual      ? "exact_dual"
                          : c.verdict == DualityVerdict::PseudoDual   ? "pseudo_dual"
                                                                      : "not_a_pseudo_dual";
    return dump({{"relation", relation},
                 {"verdict", verdict},
                 {"defect_rank", c.defect_rank},
                 {"defect_frobenius", num(c.defect.values.norm())},
                 {"rank_budget", c.rank_budget},
                 {"partner_bessel", c.partner_bessel},
                 {"reconstruction_codim", c.reconstruction_codim}});
}

std::string partner_check_json(const PartnerClassCheck& c) {
    const char* status = c.status == PartnerCheckStatus::Pass   ? "pass"
                         : c.status == PartnerCheckStatus::Fail ? "fail"
                                                                : "hypotheses_unmet";
    json violated = c.violated.empty() ? json(nullptr) : json(c.violated);
    return dump({{"status", status}, {"required", c.required}, {"violated", std::move(violated)}});
}

std::string perturbation_json(const PerturbationCertificate& c) {
    const char* theorem = c.theorem == TheoremKind::Kato              ? "kato"
                          : c.theorem == TheoremKind::PaleyWienerType ? "pw"
                          : c.theorem == TheoremKind::QuadraticPrb    ? "bari_prb"
                                                                      : "bari_gamma";
    json doc = {{"theorem", theorem},
                {"a", num(c.a)},
                {"b", num(c.b)},
                {"lambda", num(c.lambda)},
                {"mu", num(c.mu)},
                {"quadratic_closeness", num(c.quadratic_closeness)},
                {"gamma_of_reference", num(c.gamma_of_reference)},
                {"gamma_extrapolated", c.gamma_extrapolated},
                {"params_estimated", c.params_estimated},
                {"check_exact", c.check_exact},
                {"hypothesis_met", c.hypothesis_met},
                {"guaranteed", c.guaranteed},
                {"empirical_reference", shape_obj(c.empirical_reference)},
                {"empirical_perturbed", shape_obj(c.empirical_perturbed)},
                {"notes", c.notes}};
    doc["reference_taxonomy"] =
        c.reference_taxonomy ? taxonomy_obj(*c.reference_taxonomy) : json(nullptr);
    doc["perturbed_taxonomy"] =
        c.perturbed_taxonomy ? taxonomy_obj(*c.perturbed_taxonomy) : json(nullptr);
    return dump(doc);
}

std::string trials_json(const StabilityTrialReport& r) {
    return dump({{"trials", r.trials},
                 {"hypothesis_met_count", r.hypothesis_met_count},
                 {"conclusions_asserted_count", r.conclusions_asserted_count},
                 {"kernel_violations", r.kernel_violations},
                 {"corange_violations", r.corange_violations},
                 {"index_violations", r.index_violations},
                 {"notes", r.notes}});
}

std::string gallery_expectations_json(const GalleryEntry& e) {
    json doc = {{"name", e.name},
                {"expected_taxonomy", taxonomy_obj(e.expected_taxonomy)},
                {"notes", e.notes},
                {"suggested_truncations", e.suggested_truncations}};
    doc["expected_partner_taxonomy"] =
        e.expected_partner_taxonomy ? taxonomy_obj(*e.expected_partner_taxonomy) : json(nullptr);
    if (e.pair) {
        doc["pair"] = {
            {"relation", e.pair->relation == DualityRelation::Dual ? "dual" : "codual"},
            {"defect_rank", e.pair->defect_rank},
            {"partner_bessel", e.pair->partner_bessel}};
    } else {
        doc["pair"] = nullptr;
    }
    return dump(doc);
}

std::string render_report(const Report& r) {
    json doc = {{"command", r.command},
                {"tolerance",
                 {{"rank_rtol", r.tolerance.rank_rtol},
                  {"abs_floor", r.tolerance.abs_floor},
                  {"stabilization_rtol", r.tolerance.stabilization_rtol}}},
                {"text", r.text},
                {"exit_code", r.exit_code}};
    doc["payload"] = r.payload_json.empty() ? json(nullptr) : json::parse(r.payload_json);
    return dump(doc);
}

std::string compose_json(const std::vector<std::pair<std::string, std::string>>& members) {
    json doc = json::object();
    for (const auto& [key, rendered] : members) doc[key] = json::parse(rendered);
    return dump(doc);
}

}  // namespace frameforge
