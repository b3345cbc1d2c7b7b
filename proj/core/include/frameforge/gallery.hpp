#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frameforge/classify.hpp"
#include "frameforge/duals.hpp"

namespace frameforge {

// What a paired entry promises when its two sequences are checked against
// each other in the stated direction.
struct PairExpectation {
    DualityRelation relation = DualityRelation::Codual;
    int defect_rank = 0;
    bool partner_bessel = true;
};

struct GalleryEntry {
    std::string name;
    VectorSequence sequence;
    std::optional<VectorSequence> partner;
    Taxonomy expected_taxonomy;
    std::optional<Taxonomy> expected_partner_taxonomy;
    std::vector<std::string> notes;
    std::vector<int> suggested_truncations;  // empty for finite entries
    std::optional<PairExpectation> pair;
};

// Catalog of worked sequences with frozen expectations.  Parameterized
// entries take their argument in parentheses: "dropped-head(3)",
// "scaled-onb(0.5)", "shifted-basis-pair(2)", "shifted-basis-pair-ut(4)".
// Unknown names throw NotFound listing what exists.
GalleryEntry gallery_get(const std::string& name);

// Default instantiation of every entry, sorted by name.
std::vector<std::string> gallery_names();

}  // namespace frameforge
