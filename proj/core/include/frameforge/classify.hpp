#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frameforge/numkernel.hpp"
#include "frameforge/seqmodel.hpp"

namespace frameforge {

// Spectral diagnostics of one synthesis-operator section (columns = vectors).
struct SynthesisAnalysis {
    double bessel_bound = 0.0;  // largest singular value squared
    double frame_lower = 0.0;   // d-th singular value squared; 0 when rank < rows
    double riesz_lower = 0.0;   // n-th singular value squared; 0 when the kernel is nontrivial
    double gamma = 0.0;         // smallest singular value above the rank cut
    int rank = 0;
    int kernel_dim = 0;    // cols - rank
    int corange_dim = 0;   // rows - rank
    int index = 0;         // kernel_dim - corange_dim
};

enum class Provenance { Exact, TruncationExtrapolated };

// Membership flags for one sequence.  excess counts removable vectors and is
// defined exactly when pseudo_riesz_sequence holds; deficit counts missing
// directions and is defined exactly when pseudo_frame holds.
struct Taxonomy {
    bool bessel = false;
    bool frame = false;
    bool riesz_sequence = false;
    bool riesz_basis = false;
    bool quasi_frame = false;
    bool pseudo_frame = false;
    bool pseudo_riesz_sequence = false;
    bool pseudo_riesz_basis = false;
    bool near_riesz_basis = false;
    std::optional<int> excess;
    std::optional<int> deficit;
    Provenance provenance = Provenance::Exact;

    bool operator==(const Taxonomy&) const = default;
};

// Consistency rules every classification must satisfy:
//   riesz_basis        == frame && riesz_sequence
//   pseudo_riesz_basis == pseudo_frame && pseudo_riesz_sequence
//   near_riesz_basis   == frame && pseudo_riesz_sequence
//   frame  => pseudo_frame,  riesz_sequence => pseudo_riesz_sequence
//   frame || riesz_sequence => quasi_frame
//   excess defined <=> pseudo_riesz_sequence, deficit defined <=> pseudo_frame
bool satisfies_lattice(const Taxonomy& t);

// Diagnostics of a synthesis matrix.
SynthesisAnalysis analyze(const Matrix& synthesis, const TolerancePolicy& tol = {});

// Exact classification of a finite sequence in its ambient space.
Taxonomy classify_finite(const VectorSequence& s, const TolerancePolicy& tol = {});

// Exact classification of a co-finite edit of the standard basis.  The tail
// is an orthonormal basis of a co-finite subspace, so kernel and corange are
// read off a finite head block.  Rule-driven sequences throw UnsupportedExact.
Taxonomy classify_structured(const VectorSequence& s, const TolerancePolicy& tol = {});

struct ScanStep {
    Truncation truncation;
    SynthesisAnalysis analysis;
};

// Finite-section scan over an increasing schedule of lossless windows.
struct ScanReport {
    std::vector<ScanStep> steps;
    bool stabilized = false;
    Taxonomy extrapolated;
    std::vector<std::string> divergence_notes;
};

// Ratio of last to first synthesis bound beyond which the scan declares the
// sequence non-Bessel.
inline constexpr double kBesselDivergenceRatio = 10.0;

// Scans a structured sequence.  The schedule must be strictly increasing in
// n_vectors and lossless at every step.
ScanReport scan(const VectorSequence& s, const std::vector<Truncation>& schedule,
                const TolerancePolicy& tol = {});

// Lossless schedule over the given vector counts.
std::vector<Truncation> lossless_schedule(const VectorSequence& s, const std::vector<int>& lengths);

// Default vector counts for scans.
std::vector<int> default_scan_lengths();

// Dispatches on the representation: finite and edit-script sequences classify
// exactly, rule-driven sequences go through a scan over the given lengths.
Taxonomy classify_sequence(const VectorSequence& s, const std::vector<int>& scan_lengths = {},
                           const TolerancePolicy& tol = {});

// Smallest number of vector deletions (at most k_max, which must be <= 4)
// that leaves a sequence with trivial kernel; empty when k_max deletions are
// not enough.  Exhaustive search, meant as an independent cross-check.
std::optional<int> excess_bruteforce(const VectorSequence& s, int k_max,
                                     const TolerancePolicy& tol = {});

// Appends an orthonormal basis of the complement of the span; the result has
// corange zero.
VectorSequence extend_to_frame(const VectorSequence& s, const TolerancePolicy& tol = {});

struct ReductionResult {
    VectorSequence sequence;
    std::vector<int> removed;  // original 1-based positions, in removal order
};

// Removes exactly kernel_dim vectors, greedily deleting the rank-preserving
// vector whose removal maximizes the smallest surviving singular value (ties
// broken by lowest index), until the kernel is trivial.
ReductionResult reduce_to_riesz(const VectorSequence& s, const TolerancePolicy& tol = {});

}  // namespace frameforge
