#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frameforge/classify.hpp"

namespace frameforge {

enum class TheoremKind { Kato, PaleyWienerType, QuadraticPrb, QuadraticGamma };

struct EmpiricalShape {
    int kernel_dim = 0;
    int corange_dim = 0;
    int index = 0;
};

// Outcome of one stability argument: the hypothesis actually checked, the
// conclusions it buys, and the measured shape of both objects.
struct PerturbationCertificate {
    TheoremKind theorem = TheoremKind::Kato;
    double a = 0.0;                     // relative bound: |Au| <= a|u| + b|Tu|
    double b = 0.0;
    double lambda = 0.0;                // two-constant bound: |(Sg-Sf)c| <= lambda|Sf c| + mu|c|
    double mu = 0.0;
    double quadratic_closeness = 0.0;   // q = sum |f_n - g_n|^2; +inf when the tail diverges
    double gamma_of_reference = 0.0;
    bool gamma_extrapolated = false;    // gamma read from a stabilized scan, not exact
    bool params_estimated = false;
    bool check_exact = false;           // operator-norm verification ran (not just sampling)
    bool hypothesis_met = false;
    std::vector<std::string> guaranteed;   // empty unless the hypothesis holds
    EmpiricalShape empirical_reference;
    EmpiricalShape empirical_perturbed;
    std::optional<Taxonomy> reference_taxonomy;
    std::optional<Taxonomy> perturbed_taxonomy;
    std::vector<std::string> notes;
};

// Relative-bound stability of kernel, corange, and index: with
// |Au| <= a|u| + b|Tu|, b < 1 and a < (1-b)*gamma(T), the perturbed operator
// cannot grow its kernel or corange and keeps the index.  By default
// a = sigma_max(a_mat) and b = 0; supplied constants are re-verified by
// sampling and rejected on violation.
PerturbationCertificate kato_certificate(const Matrix& t, const Matrix& a_mat,
                                         std::optional<double> a = std::nullopt,
                                         std::optional<double> b = std::nullopt,
                                         const TolerancePolicy& tol = {});

// Two-constant comparison of sequences: |(Sg-Sf)c| <= lambda|Sf c| + mu|c|
// with mu < (1-lambda)*gamma(Sf) keeps the closure-and-finiteness class of f.
// Constants default to lambda = 0 and mu = sigma_max(Sg - Sf); the inequality
// is sampled on 1000 seeded coefficient vectors (and checked exactly through
// the operator norm when lambda = 0) and rejected beyond 1e-10.
PerturbationCertificate pw_certificate(const VectorSequence& f, const VectorSequence& g,
                                       std::optional<double> lambda = std::nullopt,
                                       std::optional<double> mu = std::nullopt,
                                       int n_vectors = 32, const TolerancePolicy& tol = {});

enum class BariVariant { Prb, Gamma };

// Quadratic-closeness stability.  Variant Prb: a finite q = sum |f_n - g_n|^2
// keeps the pseudo-Riesz-basis property.  Variant Gamma: q < gamma(Sf)^2
// keeps every closure-and-finiteness class of f (the operator bound used for
// the difference is sqrt(q), which is what the stated hypothesis supports).
// Structured pairs get an exact tail comparison: tails that agree co-finitely
// contribute nothing, anything else flags q as unbounded.
PerturbationCertificate bari_certificate(const VectorSequence& f, const VectorSequence& g,
                                         BariVariant variant, int n_vectors = 32,
                                         const TolerancePolicy& tol = {});

struct StabilityTrialReport {
    int trials = 0;
    int hypothesis_met_count = 0;
    int conclusions_asserted_count = 0;
    int kernel_violations = 0;
    int corange_violations = 0;
    int index_violations = 0;
    std::vector<std::string> notes;
};

// Randomized relative-bound trials over shapes {4x6, 6x4, 5x5} with rank
// deficiency 0-2: draws T with controlled spectrum, scales the perturbation
// to scale*(1-b)*gamma(T) for random b in [0, 0.5), and tallies how the
// certified conclusions compare with measured outcomes.  scale >= 1 turns
// the harness into a negative control: hypotheses fail and nothing is
// asserted.
StabilityTrialReport stability_trials(std::uint64_t seed, int trials,
                                      const TolerancePolicy& tol = {}, double scale = 0.9);

}  // namespace frameforge
