#pragma once

#include <string>
#include <vector>

#include "frameforge/classify.hpp"
#include "frameforge/duals.hpp"
#include "frameforge/gallery.hpp"
#include "frameforge/perturb.hpp"

namespace frameforge {

// Machine-readable renderings.  Every function returns one JSON object as
// text with alphabetically ordered keys, so output is byte-stable for a
// given input.  Non-finite numbers render as null.
std::string taxonomy_json(const Taxonomy& t);
std::string analysis_json(const SynthesisAnalysis& a);
std::string scan_json(const ScanReport& r);
std::string duality_json(const DualityCertificate& c);
std::string partner_check_json(const PartnerClassCheck& c);
std::string perturbation_json(const PerturbationCertificate& c);
std::string trials_json(const StabilityTrialReport& r);
std::string gallery_expectations_json(const GalleryEntry& e);

// Full report document: the command line that produced it, the tolerance
// policy in force, one payload object, a human-readable rendering, and the
// process exit code.
struct Report {
    std::vector<std::string> command;
    TolerancePolicy tolerance;
    std::string payload_json;  // one of the objects above (or a composite)
    std::string text;
    int exit_code = 0;
};

std::string render_report(const Report& r);

// Joins already-rendered JSON objects into one object under the given keys.
std::string compose_json(const std::vector<std::pair<std::string, std::string>>& members);

}  // namespace frameforge
