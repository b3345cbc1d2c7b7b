#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frameforge/classify.hpp"

namespace frameforge {

enum class DualityRelation { Dual, Codual };
enum class DualityVerdict { ExactDual, PseudoDual, NotAPseudoDual };

// Witness for a (pseudo-)duality relation over a joint lossless window.
// The defect is S_f S_g^* - I for duals and S_g^* S_f - I for coduals;
// reconstruction is exact on a subspace whose codimension equals the
// defect rank.
struct DualityCertificate {
    DualityRelation relation = DualityRelation::Dual;
    Matrix defect;
    int defect_rank = 0;
    int rank_budget = 0;
    bool partner_bessel = true;
    DualityVerdict verdict = DualityVerdict::NotAPseudoDual;
    int reconstruction_codim = 0;
};

// Canonical dual of a frame: the inverse frame operator applied vectorwise.
// Edit-script sequences keep their representation (the tail is untouched
// because the frame operator acts as the identity past the edit horizon).
// Throws NotAFrame when the frame operator is singular, UnsupportedExact for
// rule-driven input.
VectorSequence canonical_dual(const VectorSequence& f, const TolerancePolicy& tol = {});

// g_n = R^* f_n with R the pseudo-inverse of the frame operator.  The dual
// defect is minus the projection onto the missing directions; its rank equals
// the corange.
VectorSequence pseudo_dual_construct(const VectorSequence& f, const TolerancePolicy& tol = {});

// g_n = sum_k d_n[k] f_k with d_n the n-th column of the pseudo-inverse of
// the Grammian.  The codual defect is minus the projection onto the kernel;
// its rank equals the kernel dimension.
VectorSequence pseudo_codual_construct(const VectorSequence& f, const TolerancePolicy& tol = {});

// Measures the reconstruction defect of a candidate pair.  Finite pairs must
// have equal length (ambient dimensions are embedded into the larger one);
// structured pairs are compared over a joint lossless window on n_vectors
// vectors.  The rank budget defaults to max(excess, deficit) + 2 of f.
DualityCertificate verify_duality(const VectorSequence& f, const VectorSequence& g,
                                  DualityRelation relation,
                                  std::optional<int> rank_budget = std::nullopt,
                                  int n_vectors = 32, const TolerancePolicy& tol = {});

enum class PartnerCheckStatus { Pass, Fail, HypothesesUnmet };

struct PartnerClassCheck {
    PartnerCheckStatus status = PartnerCheckStatus::Pass;
    std::vector<std::string> required;  // inheritance clauses triggered by the source class
    std::string violated;               // first failing clause; empty otherwise
};

// Asserts the class-inheritance clauses a certified relation carries:
// a Bessel dual companion of a pseudo-frame is a pseudo-frame, a Bessel
// codual companion of a pseudo-Riesz sequence is a pseudo-Riesz sequence,
// either kind of Bessel companion of a pseudo-Riesz basis is a pseudo-Riesz
// basis, and exact companions of Bessel sequences are frames (dual side)
// or Riesz sequences (codual side).  A non-Bessel partner leaves the
// hypotheses unmet.  The certificate must witness the relation.
PartnerClassCheck check_partner_class(const DualityCertificate& cert, const Taxonomy& source,
                                      const Taxonomy& partner);

}  // namespace frameforge
