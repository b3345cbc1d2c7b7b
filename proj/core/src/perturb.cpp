#include "frameforge/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "frameforge/errors.hpp"
#include "frameforge/random.hpp"

namespace frameforge {

namespace {

constexpr double kInequalitySlack = 1e-10;
constexpr int kSampleCount = 1000;

struct GammaInfo {
    double gamma = 0.0;
    bool extrapolated = false;
    bool settled = true;
};

// Reduced minimum modulus of the full synthesis operator.  Exact for finite
// and edit-script sequences (the tail contributes an isometry, capping the
// value at 1); rule-driven sequences fall back to a stabilized scan estimate.
GammaInfo reference_gamma(const VectorSequence& s, const TolerancePolicy& tol) {
    GammaInfo info;
    if (s.kind() == SeqKind::Finite) {
        info.gamma = analyze(s.columns(), tol).gamma;
        return info;
    }
    if (s.structured_form() == StructuredForm::Edits) {
        const CofiniteNormalForm& nf = s.normal_form();
        long long head_dim = 0;
        for (const SparseVector& v : nf.head) {
            for (const auto& [idx, c] : v.entries) {
                head_dim = std::max(head_dim, static_cast<long long>(idx));
            }
        }
        long long n = static_cast<long long>(nf.head.size());
        n = std::max(n, head_dim - nf.tail_shift);
        n = std::max(n, -nf.tail_shift);
        const Truncation block{static_cast<int>(n), static_cast<int>(n + nf.tail_shift)};
        const SynthesisAnalysis a = analyze(truncate(s, block).matrix, tol);
        info.gamma = a.rank == 0 ? 1.0 : std::min(a.gamma, 1.0);
        return info;
    }
    const ScanReport report = scan(s, lossless_schedule(s, default_scan_lengths()), tol);
    info.gamma = report.steps.back().analysis.gamma;
    info.extrapolated = true;
    info.settled = report.stabilized;
    return info;
}

Taxonomy taxonomy_of(const VectorSequence& s, const TolerancePolicy& tol) {
    return classify_sequence(s, {}, tol);
}

EmpiricalShape shape_of(const SynthesisAnalysis& a) {
    return EmpiricalShape{a.kernel_dim, a.corange_dim, a.index};
}

EmpiricalShape empirical_shape(const VectorSequence& s, int n_vectors, const TolerancePolicy& tol) {
    if (s.kind() == SeqKind::Finite) return shape_of(analyze(s.columns(), tol));
    if (s.structured_form() == StructuredForm::Edits) {
        const Taxonomy t = classify_structured(s, tol);
        return EmpiricalShape{*t.excess, *t.deficit, *t.excess - *t.deficit};
    }
    return shape_of(analyze(truncate(s, lossless_truncation(s, n_vectors)).matrix, tol));
}

// Joint window for a pair that must share cardinality.
Truncation pair_window(const VectorSequence& f, const VectorSequence& g, int n_vectors) {
    if ((f.kind() == SeqKind::Finite) != (g.kind() == SeqKind::Finite)) {
        throw InvalidInput("pair must share cardinality: finite vs structured");
    }
    int n = n_vectors;
    if (f.kind() == SeqKind::Finite) {
        if (f.length() != g.length()) throw InvalidInput("finite pair must have equal length");
        n = f.length();
    }
    if (n < 0) throw InvalidInput("n_vectors must be >= 0");
    return Truncation{n, std::max(lossless_dim(f, n), lossless_dim(g, n))};
}

double sigma_max(const Eigen::MatrixXcd& m, FieldTag tag) {
    const SvdResult dec = svd(Matrix{m, tag});
    return dec.singular_values.empty() ? 0.0 : dec.singular_values.front();
}

FieldTag joint_tag(FieldTag a, FieldTag b) {
    return (a == FieldTag::Real && b == FieldTag::Real) ? FieldTag::Real : FieldTag::Complex;
}

// Samples |lhs_op c| <= lambda |mid_op c| + mu on unit vectors; true when no
// draw violates the bound beyond the shared slack.
bool sample_two_constant_bound(const Eigen::MatrixXcd& lhs_op, const Eigen::MatrixXcd& mid_op,
                               double lambda, double mu) {
    if (lhs_op.cols() == 0) return true;
    std::mt19937_64 rng(env_seed(0));
    for (int i = 0; i < kSampleCount; ++i) {
        Eigen::VectorXcd c = random_gaussian_complex(rng, lhs_op.cols(), 1);
        const double norm = c.norm();
        if (norm == 0.0) continue;
        c /= norm;
        const double lhs = (lhs_op * c).norm();
        const double rhs = lambda * (mid_op * c).norm() + mu;
        if (lhs > rhs + kInequalitySlack) return false;
    }
    return true;
}

struct QResult {
    double q = 0.0;
    bool divergent = false;
    std::string note;
};

bool rule_is_pure_shift(const CoefficientRule& rule, long long& shift_out) {
    // Canonical merge by index template.
    std::map<std::pair<long long, long long>, std::array<std::complex<double>, 3>> merged;
    for (const RuleTerm& t : rule.terms) {
        auto& acc = merged[{t.index_slope, t.index_offset}];
        for (int i = 0; i < 3; ++i) acc[static_cast<std::size_t>(i)] += t.coeff[static_cast<std::size_t>(i)];
    }
    std::erase_if(merged, [](const auto& kv) {
        return kv.second[0] == std::complex<double>(0.0) && kv.second[1] == std::complex<double>(0.0) &&
               kv.second[2] == std::complex<double>(0.0);
    });
    if (merged.size() != 1) return false;
    const auto& [tmpl, poly] = *merged.begin();
    if (tmpl.first != 1) return false;
    if (poly[0] != std::complex<double>(1.0) || poly[1] != std::complex<double>(0.0) ||
        poly[2] != std::complex<double>(0.0)) {
        return false;
    }
    shift_out = tmpl.second;
    return true;
}

QResult quadratic_closeness(const VectorSequence& f, const VectorSequence& g, int n_vectors) {
    QResult out;
    if (f.kind() == SeqKind::Finite) {
        const Truncation w = pair_window(f, g, n_vectors);
        const Eigen::MatrixXcd diff =
            truncate(f, w).matrix.values - truncate(g, w).matrix.values;
        out.q = diff.squaredNorm();
        return out;
    }

    // Structured pair: the comparison is exact.  Tails either agree entry by
    // entry beyond a finite head (contributing nothing) or differ forever
    // (making the sum infinite).
    const auto tail_shift = [](const VectorSequence& s,
                               long long& shift) {  // true when s is co-finitely a shifted basis
        if (s.structured_form() == StructuredForm::Edits) {
            shift = s.normal_form().tail_shift;
            return true;
        }
        return rule_is_pure_shift(s.rule(), shift);
    };

    long long shift_f = 0, shift_g = 0;
    const bool f_shifted = tail_shift(f, shift_f);
    const bool g_shifted = tail_shift(g, shift_g);

    if (f.structured_form() == StructuredForm::Rule && g.structured_form() == StructuredForm::Rule &&
        !f_shifted && !g_shifted) {
        // Termwise canonical difference: identical rules have q = 0, anything
        // else repeats a fixed nonzero gap infinitely often.
        std::map<std::pair<long long, long long>, std::array<std::complex<double>, 3>> merged;
        auto fold = [&](const CoefficientRule& rule, double sign) {
            for (const RuleTerm& t : rule.terms) {
                auto& acc = merged[{t.index_slope, t.index_offset}];
                for (int i = 0; i < 3; ++i) {
                    acc[static_cast<std::size_t>(i)] += sign * t.coeff[static_cast<std::size_t>(i)];
                }
            }
        };
        fold(f.rule(), 1.0);
        fold(g.rule(), -1.0);
        std::erase_if(merged, [](const auto& kv) {
            return kv.second[0] == std::complex<double>(0.0) &&
                   kv.second[1] == std::complex<double>(0.0) &&
                   kv.second[2] == std::complex<double>(0.0);
        });
        if (merged.empty()) return out;  // q = 0 exactly
        out.divergent = true;
        out.note = "rules differ in a recurring term; the quadratic gap has no finite tail";
        out.q = std::numeric_limits<double>::infinity();
        return out;
    }

    if (!f_shifted || !g_shifted || shift_f != shift_g) {
        out.divergent = true;
        out.note = "tails do not agree co-finitely; every tail step adds a fixed positive gap";
        out.q = std::numeric_limits<double>::infinity();
        return out;
    }

    // Tails agree; only the heads differ.
    long long head = 0;
    if (f.structured_form() == StructuredForm::Edits) {
        head = std::max(head, static_cast<long long>(f.normal_form().head.size()));
    }
    if (g.structured_form() == StructuredForm::Edits) {
        head = std::max(head, static_cast<long long>(g.normal_form().head.size()));
    }
    const int n = static_cast<int>(head);
    const int d = std::max(lossless_dim(f, n), lossless_dim(g, n));
    for (int i = 1; i <= n; ++i) {
        out.q += (vector_at(f, i, d).coords - vector_at(g, i, d).coords).squaredNorm();
    }
    return out;
}

}  // namespace

PerturbationCertificate kato_certificate(const Matrix& t, const Matrix& a_mat,
                                         std::optional<double> a, std::optional<double> b,
                                         const TolerancePolicy& tol) {
    if (t.rows() != a_mat.rows() || t.cols() != a_mat.cols()) {
        throw InvalidInput("reference and perturbation must have equal shape");
    }

    PerturbationCertificate cert;
    cert.theorem = TheoremKind::Kato;
    cert.params_estimated = !a.has_value() && !b.has_value();
    cert.b = b.value_or(0.0);
    cert.a = a.value_or(sigma_max(a_mat.values, a_mat.field));

    const SynthesisAnalysis ref = analyze(t, tol);
    const FieldTag tag = joint_tag(t.field, a_mat.field);
    const SynthesisAnalysis per = analyze(Matrix{(t.values + a_mat.values).eval(), tag}, tol);
    cert.empirical_reference = shape_of(ref);
    cert.empirical_perturbed = shape_of(per);
    cert.gamma_of_reference = ref.gamma;

    bool bound_holds = true;
    if (cert.params_estimated) {
        cert.check_exact = true;  // a = sigma_max(A) bounds |Ac| by construction
    } else {
        bound_holds = sample_two_constant_bound(a_mat.values, t.values, cert.b, cert.a);
        if (!bound_holds) {
            cert.notes.push_back("supplied (a, b) fail the relative bound on sampled vectors");
        }
    }

    if (cert.a < 0.0 || cert.b < 0.0) throw InvalidInput("relative-bound constants must be >= 0");
    cert.hypothesis_met = bound_holds && cert.b < 1.0 && ref.gamma > 0.0 &&
                          cert.a < (1.0 - cert.b) * ref.gamma;
    if (ref.gamma == 0.0) {
        cert.notes.push_back("reference operator has no positive reduced minimum modulus");
    }

    if (cert.hypothesis_met) {
        cert.guaranteed = {"kernel dimension does not grow", "corange dimension does not grow",
                           "index is preserved"};
        const bool ok = per.kernel_dim <= ref.kernel_dim && per.corange_dim <= ref.corange_dim &&
                        per.index == ref.index;
        if (!ok) cert.notes.push_back("measured outcome contradicts a guaranteed conclusion");
    }
    return cert;
}

PerturbationCertificate pw_certificate(const VectorSequence& f, const VectorSequence& g,
                                       std::optional<double> lambda, std::optional<double> mu,
                                       int n_vectors, const TolerancePolicy& tol) {
    const Truncation w = pair_window(f, g, n_vectors);
    const Eigen::MatrixXcd af = truncate(f, w).matrix.values;
    const Eigen::MatrixXcd ag = truncate(g, w).matrix.values;
    const Eigen::MatrixXcd diff = ag - af;
    const FieldTag tag = joint_tag(f.field(), g.field());

    PerturbationCertificate cert;
    cert.theorem = TheoremKind::PaleyWienerType;
    cert.params_estimated = !lambda.has_value() && !mu.has_value();
    cert.lambda = lambda.value_or(0.0);
    cert.mu = mu.value_or(sigma_max(diff, tag));
    if (cert.lambda < 0.0 || cert.mu < 0.0) throw InvalidInput("two-constant bounds must be >= 0");

    const GammaInfo gi = reference_gamma(f, tol);
    cert.gamma_of_reference = gi.gamma;
    cert.gamma_extrapolated = gi.extrapolated;
    if (!gi.settled) cert.notes.push_back("reference gamma did not stabilize across the scan");

    bool bound_holds = sample_two_constant_bound(diff, af, cert.lambda, cert.mu);
    if (cert.lambda == 0.0) {
        cert.check_exact = true;
        if (sigma_max(diff, tag) > cert.mu + kInequalitySlack) bound_holds = false;
    }
    if (!bound_holds) {
        cert.notes.push_back("two-constant bound fails on the working window; constants rejected");
    }
    if (cert.lambda >= 1.0) {
        cert.notes.push_back("lambda >= 1 cannot meet the stability budget for any positive gamma");
    }

    cert.hypothesis_met = bound_holds && gi.settled && gi.gamma > 0.0 &&
                          cert.mu < (1.0 - cert.lambda) * gi.gamma;

    cert.reference_taxonomy = taxonomy_of(f, tol);
    cert.perturbed_taxonomy = taxonomy_of(g, tol);
    cert.empirical_reference = empirical_shape(f, n_vectors, tol);
    cert.empirical_perturbed = empirical_shape(g, n_vectors, tol);

    if (cert.hypothesis_met) {
        const Taxonomy& rt = *cert.reference_taxonomy;
        if (rt.pseudo_frame) cert.guaranteed.push_back("pseudo_frame preserved");
        if (rt.pseudo_riesz_sequence) cert.guaranteed.push_back("pseudo_riesz_sequence preserved");
        if (rt.pseudo_riesz_basis) cert.guaranteed.push_back("pseudo_riesz_basis preserved");
        if (cert.mu == 0.0 && cert.lambda < 1.0 && rt.riesz_basis) {
            cert.guaranteed.push_back("riesz_basis preserved");
        }
    }
    return cert;
}

PerturbationCertificate bari_certificate(const VectorSequence& f, const VectorSequence& g,
                                         BariVariant variant, int n_vectors,
                                         const TolerancePolicy& tol) {
    PerturbationCertificate cert;
    cert.theorem = variant == BariVariant::Prb ? TheoremKind::QuadraticPrb : TheoremKind::QuadraticGamma;

    const QResult qr = quadratic_closeness(f, g, n_vectors);
    cert.quadratic_closeness = qr.q;
    if (qr.divergent) cert.notes.push_back(qr.note);

    const GammaInfo gi = reference_gamma(f, tol);
    cert.gamma_of_reference = gi.gamma;
    cert.gamma_extrapolated = gi.extrapolated;
    if (!gi.settled) cert.notes.push_back("reference gamma did not stabilize across the scan");

    cert.reference_taxonomy = taxonomy_of(f, tol);
    cert.perturbed_taxonomy = taxonomy_of(g, tol);
    cert.empirical_reference = empirical_shape(f, n_vectors, tol);
    cert.empirical_perturbed = empirical_shape(g, n_vectors, tol);

    if (variant == BariVariant::Prb) {
        cert.hypothesis_met = !qr.divergent;
        if (cert.hypothesis_met && cert.reference_taxonomy->pseudo_riesz_basis) {
            cert.guaranteed.push_back("pseudo_riesz_basis preserved");
        }
    } else {
        cert.hypothesis_met = !qr.divergent && gi.settled && gi.gamma > 0.0 &&
                              qr.q < gi.gamma * gi.gamma;
        if (cert.hypothesis_met) {
            std::ostringstream note;
            note << "difference operator bound used: sqrt(q) = " << std::sqrt(qr.q);
            cert.notes.push_back(note.str());
            const Taxonomy& rt = *cert.reference_taxonomy;
            if (rt.pseudo_frame) cert.guaranteed.push_back("pseudo_frame preserved");
            if (rt.pseudo_riesz_sequence) cert.guaranteed.push_back("pseudo_riesz_sequence preserved");
            if (rt.pseudo_riesz_basis) cert.guaranteed.push_back("pseudo_riesz_basis preserved");
        }
    }
    return cert;
}

StabilityTrialReport stability_trials(std::uint64_t seed, int trials, const TolerancePolicy& tol,
                                      double scale) {
    if (trials < 0) throw InvalidInput("trial count must be >= 0");
    if (!(scale > 0.0)) throw InvalidInput("scale must be positive");

    StabilityTrialReport report;
    report.trials = trials;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> shape_pick(0, 2);
    std::uniform_int_distribution<int> deficiency_pick(0, 2);
    std::uniform_real_distribution<double> sigma_pick(0.5, 2.0);
    std::uniform_real_distribution<double> b_pick(0.0, 0.5);

    constexpr int kShapes[3][2] = {{4, 6}, {6, 4}, {5, 5}};

    for (int trial = 0; trial < trials; ++trial) {
        const int* shape = kShapes[shape_pick(rng)];
        const Eigen::Index d = shape[0], n = shape[1];
        const int deficiency = deficiency_pick(rng);
        const Eigen::Index rank = std::min(d, n) - deficiency;

        Eigen::VectorXd sigmas(rank);
        for (Eigen::Index i = 0; i < rank; ++i) sigmas(i) = sigma_pick(rng);
        std::sort(sigmas.data(), sigmas.data() + rank, std::greater<>());

        const Eigen::MatrixXcd u = random_unitary(rng, d).leftCols(rank);
        const Eigen::MatrixXcd v = random_unitary(rng, n).leftCols(rank);
        const Eigen::MatrixXcd t = u * sigmas.asDiagonal() * v.adjoint();

        const double gamma = sigmas(rank - 1);
        const double b = b_pick(rng);
        Eigen::MatrixXcd a0 = random_gaussian_complex(rng, d, n);
        const double a0_norm = sigma_max(a0, FieldTag::Complex);
        const double target = scale * (1.0 - b) * gamma;
        a0 *= target / a0_norm;

        const PerturbationCertificate cert =
            kato_certificate(Matrix{t, FieldTag::Complex}, Matrix{a0, FieldTag::Complex}, target, b, tol);

        if (cert.hypothesis_met) {
            ++report.hypothesis_met_count;
            ++report.conclusions_asserted_count;
            if (cert.empirical_perturbed.kernel_dim > cert.empirical_reference.kernel_dim) {
                ++report.kernel_violations;
            }
            if (cert.empirical_perturbed.corange_dim > cert.empirical_reference.corange_dim) {
                ++report.corange_violations;
            }
            if (cert.empirical_perturbed.index != cert.empirical_reference.index) {
                ++report.index_violations;
            }
        }
    }

    if (report.hypothesis_met_count < report.trials) {
        std::ostringstream note;
        note << (report.trials - report.hypothesis_met_count)
             << " trial(s): hypothesis unmet, conclusion not asserted";
        report.notes.push_back(note.str());
    }
    return report;
}

}  // namespace frameforge
