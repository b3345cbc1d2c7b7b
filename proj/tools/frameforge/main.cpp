// frameforge: classify vector sequences, construct and verify duals, certify
// perturbations, and browse the example gallery.  Exit codes: 0 success,
// 1 certified-negative verdict under --assert, 2 input or usage errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frameforge/classify.hpp"
#include "frameforge/duals.hpp"
#include "frameforge/errors.hpp"
#include "frameforge/gallery.hpp"
#include "frameforge/perturb.hpp"
#include "frameforge/report.hpp"
#include "frameforge/spec_io.hpp"

namespace ff = frameforge;
using nlohmann::json;

namespace {

struct CmdResult {
    std::string payload_json;
    std::string text;
    int exit_code = 0;
};

ff::TolerancePolicy parse_tol(const std::vector<std::string>& kvs) {
    ff::TolerancePolicy tol;
    for (const std::string& group : kvs) {
        std::istringstream items(group);
        std::string kv;
        while (std::getline(items, kv, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw ff::InvalidInput("--tol expects key=value, got '" + kv + "'");
            }
            const std::string key = kv.substr(0, eq);
            double value = 0.0;
            try {
                value = std::stod(kv.substr(eq + 1));
            } catch (const std::exception&) {
                throw ff::InvalidInput("--tol " + key + ": not a number");
            }
            if (key == "rank_rtol") {
                tol.rank_rtol = value;
            } else if (key == "abs_floor") {
                tol.abs_floor = value;
            } else if (key == "stabilization_rtol") {
                tol.stabilization_rtol = value;
            } else {
                throw ff::InvalidInput("--tol: unknown key '" + key + "'");
            }
        }
    }
    validate(tol);
    return tol;
}

std::vector<int> parse_dims(const std::string& csv) {
    std::vector<int> dims;
    std::istringstream items(csv);
    std::string item;
    while (std::getline(items, item, ',')) {
        try {
            dims.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ff::InvalidInput("--scan-dims: '" + item + "' is not an integer");
        }
    }
    if (dims.empty()) throw ff::InvalidInput("--scan-dims: empty list");
    return dims;
}

std::string yn(bool b) { return b ? "yes" : "no"; }

std::string count_str(const std::optional<int>& v) {
    return v ? std::to_string(*v) : "undefined";
}

std::string describe_sequence(const ff::VectorSequence& s) {
    if (s.kind() == ff::SeqKind::Finite) {
        std::ostringstream out;
        out << "finite, " << s.length() << " vectors in "
            << (s.field() == ff::FieldTag::Real ? "R^" : "C^") << s.ambient_dim();
        return out.str();
    }
    return s.structured_form() == ff::StructuredForm::Edits
               ? "structured, edit script over the standard basis"
               : "structured, coefficient rule over the standard basis";
}

void render_taxonomy_text(std::ostream& out, const ff::Taxonomy& t) {
    out << "  bessel " << yn(t.bessel) << ", frame " << yn(t.frame) << ", riesz_sequence "
        << yn(t.riesz_sequence) << ", riesz_basis " << yn(t.riesz_basis) << "\n"
        << "  quasi_frame " << yn(t.quasi_frame) << ", pseudo_frame " << yn(t.pseudo_frame)
        << ", pseudo_riesz_sequence " << yn(t.pseudo_riesz_sequence) << "\n"
        << "  pseudo_riesz_basis " << yn(t.pseudo_riesz_basis) << ", near_riesz_basis "
        << yn(t.near_riesz_basis) << "\n"
        << "  excess " << count_str(t.excess) << ", deficit " << count_str(t.deficit) << "\n"
        << "  provenance: "
        << (t.provenance == ff::Provenance::Exact ? "exact" : "extrapolated from finite sections")
        << "\n";
}

// ---- classify ----

CmdResult run_classify(const std::string& path, const std::vector<int>& scan_dims,
                       const ff::TolerancePolicy& tol) {
    const ff::VectorSequence s = ff::load_sequence(path);

    std::optional<ff::ScanReport> scan_report;
    ff::Taxonomy taxonomy;
    if (s.kind() == ff::SeqKind::Structured &&
        (s.structured_form() == ff::StructuredForm::Rule || !scan_dims.empty())) {
        const std::vector<int> lengths = scan_dims.empty() ? ff::default_scan_lengths() : scan_dims;
        scan_report = ff::scan(s, ff::lossless_schedule(s, lengths), tol);
    }
    if (s.kind() == ff::SeqKind::Structured && s.structured_form() == ff::StructuredForm::Rule) {
        taxonomy = scan_report->extrapolated;
    } else {
        taxonomy = ff::classify_sequence(s, {}, tol);
    }

    std::vector<std::pair<std::string, std::string>> members;
    members.emplace_back("taxonomy", ff::taxonomy_json(taxonomy));
    if (s.kind() == ff::SeqKind::Finite) {
        members.emplace_back("analysis", ff::analysis_json(ff::analyze(s.columns(), tol)));
    }
    if (scan_report) members.emplace_back("scan", ff::scan_json(*scan_report));

    std::ostringstream text;
    text << "sequence: " << path << " (" << describe_sequence(s) << ")\n";
    render_taxonomy_text(text, taxonomy);
    if (scan_report) {
        text << "scan over " << scan_report->steps.size() << " windows: "
             << (scan_report->stabilized ? "stabilized" : "did not stabilize") << "\n";
        for (const std::string& note : scan_report->divergence_notes) {
            text << "  note: " << note << "\n";
        }
    }
    return {ff::compose_json(members), text.str(), 0};
}

// ---- dual ----

CmdResult run_dual(const std::string& path, const std::string& kind,
                   const std::string& verify_with, int trunc, bool assert_flag,
                   const ff::TolerancePolicy& tol) {
    const ff::VectorSequence f = ff::load_sequence(path);
    const ff::DualityRelation relation =
        kind == "codual" ? ff::DualityRelation::Codual : ff::DualityRelation::Dual;

    ff::VectorSequence g;
    std::ostringstream text;
    if (!verify_with.empty()) {
        g = ff::load_sequence(verify_with);
        text << "verifying " << verify_with << " as a " << kind << " companion of " << path << "\n";
    } else {
        if (kind == "canonical") {
            g = ff::canonical_dual(f, tol);
        } else if (kind == "pseudo") {
            g = ff::pseudo_dual_construct(f, tol);
        } else {
            g = ff::pseudo_codual_construct(f, tol);
        }
        text << "constructed " << kind << " companion of " << path << " ("
             << describe_sequence(g) << ")\n";
    }

    const ff::DualityCertificate cert =
        ff::verify_duality(f, g, relation, std::nullopt, trunc, tol);
    const ff::Taxonomy source_tax = ff::classify_sequence(f, {}, tol);
    const ff::Taxonomy partner_tax = ff::classify_sequence(g, {}, tol);
    const ff::PartnerClassCheck check = ff::check_partner_class(cert, source_tax, partner_tax);

    std::vector<std::pair<std::string, std::string>> members;
    if (verify_with.empty()) members.emplace_back("dual_spec", ff::serialize_sequence(g));
    members.emplace_back("certificate", ff::duality_json(cert));
    members.emplace_back("partner_check", ff::partner_check_json(check));
    members.emplace_back("partner_taxonomy", ff::taxonomy_json(partner_tax));

    const char* verdict = cert.verdict == ff::DualityVerdict::ExactDual      ? "exact dual"
                          : cert.verdict == ff::DualityVerdict::PseudoDual   ? "pseudo-dual"
                                                                             : "not a pseudo-dual";
    text << "verdict: " << verdict << " (defect rank " << cert.defect_rank << ", budget "
         << cert.rank_budget << ", reconstruction codimension " << cert.reconstruction_codim
         << ")\n";
    text << "partner bessel: " << yn(cert.partner_bessel) << "\n";
    if (!cert.partner_bessel) {
        text << "  note: partner carries no Bessel bound; inheritance clauses do not apply\n";
    }
    text << "partner class check: "
         << (check.status == ff::PartnerCheckStatus::Pass   ? "pass"
             : check.status == ff::PartnerCheckStatus::Fail ? "fail"
                                                            : "hypotheses unmet")
         << "\n";
    for (const std::string& req : check.required) text << "  requires: " << req << "\n";
    if (!check.violated.empty()) text << "  violated: " << check.violated << "\n";

    int exit_code = 0;
    if (assert_flag && (cert.verdict == ff::DualityVerdict::NotAPseudoDual ||
                        check.status == ff::PartnerCheckStatus::Fail)) {
        exit_code = 1;
    }
    return {ff::compose_json(members), text.str(), exit_code};
}

// ---- perturb ----

bool guarantee_holds(const std::string& guarantee, const ff::PerturbationCertificate& c) {
    const auto flag = [&](bool ok) { return ok; };
    if (guarantee.rfind("kernel", 0) == 0) {
        return flag(c.empirical_perturbed.kernel_dim <= c.empirical_reference.kernel_dim);
    }
    if (guarantee.rfind("corange", 0) == 0) {
        return flag(c.empirical_perturbed.corange_dim <= c.empirical_reference.corange_dim);
    }
    if (guarantee.rfind("index", 0) == 0) {
        return flag(c.empirical_perturbed.index == c.empirical_reference.index);
    }
    if (!c.perturbed_taxonomy) return true;
    const ff::Taxonomy& t = *c.perturbed_taxonomy;
    if (guarantee.rfind("pseudo_frame", 0) == 0) return t.pseudo_frame;
    if (guarantee.rfind("pseudo_riesz_sequence", 0) == 0) return t.pseudo_riesz_sequence;
    if (guarantee.rfind("pseudo_riesz_basis", 0) == 0) return t.pseudo_riesz_basis;
    if (guarantee.rfind("riesz_basis", 0) == 0) return t.riesz_basis;
    return true;
}

CmdResult run_perturb(const std::string& path_a, const std::string& path_b,
                      const std::string& theorem, std::optional<double> lambda,
                      std::optional<double> mu, int trunc, bool assert_flag,
                      const ff::TolerancePolicy& tol) {
    const ff::VectorSequence f = ff::load_sequence(path_a);
    const ff::VectorSequence g = ff::load_sequence(path_b);

    ff::PerturbationCertificate cert;
    if (theorem == "kato") {
        if (f.kind() != ff::SeqKind::Finite || g.kind() != ff::SeqKind::Finite) {
            throw ff::InvalidInput("--theorem kato needs two finite specs of equal shape");
        }
        if (f.length() != g.length() || f.ambient_dim() != g.ambient_dim()) {
            throw ff::InvalidInput("--theorem kato needs two finite specs of equal shape");
        }
        const ff::Matrix t_mat = f.columns();
        const ff::FieldTag tag =
            (f.field() == ff::FieldTag::Real && g.field() == ff::FieldTag::Real)
                ? ff::FieldTag::Real
                : ff::FieldTag::Complex;
        const ff::Matrix a_mat{(g.columns().values - t_mat.values).eval(), tag};
        cert = ff::kato_certificate(t_mat, a_mat, mu, lambda, tol);
    } else if (theorem == "pw") {
        cert = ff::pw_certificate(f, g, lambda, mu, trunc, tol);
    } else if (theorem == "bari-prb") {
        cert = ff::bari_certificate(f, g, ff::BariVariant::Prb, trunc, tol);
    } else if (theorem == "bari-gamma") {
        cert = ff::bari_certificate(f, g, ff::BariVariant::Gamma, trunc, tol);
    } else {
        throw ff::InvalidInput("--theorem must be kato, pw, bari-prb, or bari-gamma");
    }

    bool agreement = true;
    for (const std::string& guarantee : cert.guaranteed) {
        if (!guarantee_holds(guarantee, cert)) agreement = false;
    }

    std::ostringstream text;
    text << "perturbation check: " << path_a << " vs " << path_b << " (" << theorem << ")\n";
    if (theorem == "kato") {
        text << "  relative bound constants: a = " << cert.a << ", b = " << cert.b
             << (cert.params_estimated ? " (estimated)" : " (supplied)") << "\n";
    } else if (theorem == "pw") {
        text << "  two-constant bound: lambda = " << cert.lambda << ", mu = " << cert.mu
             << (cert.params_estimated ? " (estimated)" : " (supplied)") << "\n";
    } else {
        text << "  quadratic closeness q = " << cert.quadratic_closeness << "\n";
    }
    text << "  gamma of reference: " << cert.gamma_of_reference
         << (cert.gamma_extrapolated ? " (extrapolated)" : "") << "\n";
    text << "hypothesis met: " << yn(cert.hypothesis_met) << "\n";
    for (const std::string& s : cert.guaranteed) text << "  guaranteed: " << s << "\n";
    for (const std::string& s : cert.notes) text << "  note: " << s << "\n";
    if (cert.hypothesis_met) {
        text << "measured outcome " << (agreement ? "agrees with" : "CONTRADICTS")
             << " the guarantees\n";
    }

    int exit_code = 0;
    if (assert_flag && !(cert.hypothesis_met && agreement)) {
        exit_code = 1;
        text << "asserted verdict: negative\n";
    } else if (assert_flag) {
        text << "asserted verdict: positive\n";
    }
    return {ff::perturbation_json(cert), text.str(), exit_code};
}

// ---- gallery ----

std::string safe_filename(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (c == '(') {
            out += '-';
        } else if (c != ')') {
            out += c;
        }
    }
    return out;
}

CmdResult run_gallery(const std::string& name, bool list, const std::string& emit_dir) {
    if (list || name.empty()) {
        json names = json::array();
        std::ostringstream text;
        for (const std::string& n : ff::gallery_names()) {
            names.push_back(n);
            text << n << "\n";
        }
        return {json({{"names", names}}).dump(2) + "\n", text.str(), 0};
    }

    const ff::GalleryEntry entry = ff::gallery_get(name);
    std::ostringstream text;
    text << "gallery entry: " << entry.name << " (" << describe_sequence(entry.sequence) << ")\n";
    for (const std::string& note : entry.notes) text << "  " << note << "\n";
    text << "expected taxonomy:\n";
    render_taxonomy_text(text, entry.expected_taxonomy);
    if (entry.partner) {
        text << "partner: " << describe_sequence(*entry.partner) << "\n";
    }

    std::vector<std::pair<std::string, std::string>> members;
    members.emplace_back("expectations", ff::gallery_expectations_json(entry));
    members.emplace_back("spec", ff::serialize_sequence(entry.sequence));
    if (entry.partner) {
        members.emplace_back("partner_spec", ff::serialize_sequence(*entry.partner));
    }

    if (!emit_dir.empty()) {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(emit_dir, ec);
        if (ec) throw ff::InvalidInput("cannot create directory: " + emit_dir);
        const std::string base = (fs::path(emit_dir) / safe_filename(entry.name)).string();

        ff::save_sequence(entry.sequence, base + ".spec.json");
        text << "wrote " << base << ".spec.json\n";
        if (entry.partner) {
            ff::save_sequence(*entry.partner, base + ".partner.spec.json");
            text << "wrote " << base << ".partner.spec.json\n";
        }
        std::ofstream expected(base + ".expected.json", std::ios::binary);
        if (!expected) throw ff::InvalidInput("cannot write file: " + base + ".expected.json");
        expected << ff::gallery_expectations_json(entry);
        text << "wrote " << base << ".expected.json\n";
    }
    return {ff::compose_json(members), text.str(), 0};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frame-theory toolkit: classification, duals, perturbations, gallery"};
    app.require_subcommand(1);

    std::vector<std::string> tol_kvs;
    bool json_out = false;

    // classify
    auto* classify = app.add_subcommand("classify", "classify a sequence spec");
    std::string classify_path;
    std::string scan_dims_csv;
    classify->add_option("spec", classify_path, "SequenceSpec JSON file")->required();
    classify->add_option("--scan-dims", scan_dims_csv, "comma-separated window lengths");
    classify->add_option("--tol", tol_kvs, "tolerance overrides, key=value");
    classify->add_flag("--json", json_out, "emit the full report as JSON");

    // dual
    auto* dual = app.add_subcommand("dual", "construct or verify a dual companion");
    std::string dual_path, dual_kind = "canonical", verify_with;
    int dual_trunc = 32;
    bool dual_assert = false;
    dual->add_option("spec", dual_path, "SequenceSpec JSON file")->required();
    dual->add_option("--kind", dual_kind, "canonical, pseudo, or codual")
        ->check(CLI::IsMember({"canonical", "pseudo", "codual"}));
    dual->add_option("--verify-with", verify_with, "verify this spec instead of constructing");
    dual->add_option("--trunc", dual_trunc, "window length for structured pairs");
    dual->add_flag("--assert", dual_assert, "exit 1 on a certified-negative verdict");
    dual->add_option("--tol", tol_kvs, "tolerance overrides, key=value");
    dual->add_flag("--json", json_out, "emit the full report as JSON");

    // perturb
    auto* perturb = app.add_subcommand("perturb", "certify a perturbation");
    std::string perturb_a, perturb_b, theorem = "pw";
    std::optional<double> lambda_opt, mu_opt;
    int perturb_trunc = 32;
    bool perturb_assert = false;
    perturb->add_option("reference", perturb_a, "reference SequenceSpec")->required();
    perturb->add_option("perturbed", perturb_b, "perturbed SequenceSpec")->required();
    perturb->add_option("--theorem", theorem, "kato, pw, bari-prb, or bari-gamma")
        ->check(CLI::IsMember({"kato", "pw", "bari-prb", "bari-gamma"}));
    perturb->add_option("--lambda", lambda_opt, "relative constant (b for kato)");
    perturb->add_option("--mu", mu_opt, "absolute constant (a for kato)");
    perturb->add_option("--trunc", perturb_trunc, "window length for structured pairs");
    perturb->add_flag("--assert", perturb_assert,
                      "exit 1 unless the hypothesis holds and measurements agree");
    perturb->add_option("--tol", tol_kvs, "tolerance overrides, key=value");
    perturb->add_flag("--json", json_out, "emit the full report as JSON");

    // gallery
    auto* gallery = app.add_subcommand("gallery", "browse worked examples");
    std::string gallery_name, emit_dir;
    bool gallery_list = false;
    gallery->add_option("name", gallery_name, "entry name, e.g. duplicate-e1");
    gallery->add_flag("--list", gallery_list, "list entry names");
    gallery->add_option("--emit", emit_dir, "write spec and expectation files here");
    gallery->add_option("--tol", tol_kvs, "tolerance overrides, key=value");
    gallery->add_flag("--json", json_out, "emit the full report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int cli_code = app.exit(e);
        return cli_code == 0 ? 0 : 2;
    }

    ff::Report report;
    for (int i = 0; i < argc; ++i) report.command.emplace_back(argv[i]);

    try {
        report.tolerance = parse_tol(tol_kvs);
        CmdResult result;
        if (classify->parsed()) {
            const std::vector<int> dims =
                scan_dims_csv.empty() ? std::vector<int>{} : parse_dims(scan_dims_csv);
            result = run_classify(classify_path, dims, report.tolerance);
        } else if (dual->parsed()) {
            result = run_dual(dual_path, dual_kind, verify_with, dual_trunc, dual_assert,
                              report.tolerance);
        } else if (perturb->parsed()) {
            result = run_perturb(perturb_a, perturb_b, theorem, lambda_opt, mu_opt, perturb_trunc,
                                 perturb_assert, report.tolerance);
        } else {
            result = run_gallery(gallery_name, gallery_list, emit_dir);
        }
        report.payload_json = result.payload_json;
        report.text = result.text;
        report.exit_code = result.exit_code;
    } catch (const ff::Error& e) {
        report.text = std::string("error: ") + e.what() + "\n";
        report.exit_code = 2;
    }

    if (json_out) {
        std::cout << ff::render_report(report);
    } else if (report.exit_code == 2) {
        std::cerr << report.text;
    } else {
        std::cout << report.text;
    }
    return report.exit_code;
}
