#include "frameforge/duals.hpp"

#include <algorithm>
#include <cmath>

#include "frameforge/errors.hpp"

namespace frameforge {

namespace {

// Rebuilds an edit-script sequence from explicit head columns and a tail
// shift.  Replacements that already equal the tail value are skipped.
VectorSequence from_head_and_shift(const Eigen::MatrixXcd& head, long long shift,
                                   std::optional<FieldTag> field) {
    EditScript script;
    const int n = static_cast<int>(head.cols());

    auto sparse_of = [&](int col) {
        std::vector<std::pair<int, std::complex<double>>> entries;
        for (Eigen::Index i = 0; i < head.rows(); ++i) {
            if (head(i, col) != std::complex<double>(0.0)) {
                entries.emplace_back(static_cast<int>(i) + 1, head(i, col));
            }
        }
        return make_sparse(std::move(entries));
    };
    auto is_tail_value = [&](int pos) {  // does column pos-1 equal e_{pos+shift}?
        const long long want = static_cast<long long>(pos) + shift;
        if (want < 1 || want > head.rows()) return false;
        for (Eigen::Index i = 0; i < head.rows(); ++i) {
            const std::complex<double> expected = (i + 1 == want) ? 1.0 : 0.0;
            if (head(i, pos - 1) != expected) return false;
        }
        return true;
    };

    if (shift >= 0) {
        for (long long i = 0; i < shift; ++i) script.edits.emplace_back(DropEdit{1});
        for (int pos = 1; pos <= n; ++pos) {
            if (!is_tail_value(pos)) script.edits.emplace_back(ReplaceEdit{pos, sparse_of(pos - 1)});
        }
    } else {
        const int inserted = static_cast<int>(-shift);
        for (int pos = 1; pos <= std::min(inserted, n); ++pos) {
            script.edits.emplace_back(InsertEdit{pos, sparse_of(pos - 1)});
        }
        for (int pos = inserted + 1; pos <= n; ++pos) {
            if (!is_tail_value(pos)) script.edits.emplace_back(ReplaceEdit{pos, sparse_of(pos - 1)});
        }
    }
    return make_structured(std::move(script), field);
}

// Head block of an edit-script sequence wide enough that the excluded tail is
// orthogonal to it (same window the exact classifier uses).
Truncation head_block(const VectorSequence& s) {
    const CofiniteNormalForm& nf = s.normal_form();
    long long head_dim = 0;
    for (const SparseVector& v : nf.head) {
        for (const auto& [idx, c] : v.entries) head_dim = std::max(head_dim, static_cast<long long>(idx));
    }
    long long n = static_cast<long long>(nf.head.size());
    n = std::max(n, head_dim - nf.tail_shift);
    n = std::max(n, -nf.tail_shift);
    return Truncation{static_cast<int>(n), static_cast<int>(n + nf.tail_shift)};
}

enum class DualKind { Canonical, Pseudo, Codual };

Eigen::MatrixXcd dual_columns(const Eigen::MatrixXcd& a, DualKind kind, FieldTag field,
                              const TolerancePolicy& tol) {
    const Matrix wrapped{a, field};
    if (kind == DualKind::Codual) {
        const Matrix gram{(a.adjoint() * a).eval(), field};
        return a * pseudo_inverse(gram, tol).values;
    }
    const Matrix frame_op{(a * a.adjoint()).eval(), field};
    if (kind == DualKind::Canonical && numeric_rank(frame_op, tol) < a.rows()) {
        throw NotAFrame("canonical dual requires an invertible frame operator");
    }
    return pseudo_inverse(frame_op, tol).values.adjoint() * a;
}

VectorSequence construct(const VectorSequence& f, DualKind kind, const TolerancePolicy& tol) {
    if (f.kind() == SeqKind::Finite) {
        Eigen::MatrixXcd g = dual_columns(f.columns().values, kind, f.field(), tol);
        const FieldTag tag = f.field() == FieldTag::Real && is_real_valued(g) ? FieldTag::Real
                                                                              : FieldTag::Complex;
        return make_finite(Matrix{std::move(g), tag});
    }
    if (f.structured_form() == StructuredForm::Rule) {
        throw UnsupportedExact("dual constructions need a finite or edit-script sequence");
    }
    // The frame operator and Grammian act as the identity past the edit
    // horizon, so only the head transforms; the tail is carried over as is.
    const Truncation block = head_block(f);
    const SynthesisSection section = truncate(f, block);
    Eigen::MatrixXcd head = dual_columns(section.matrix.values, kind, f.field(), tol);
    const FieldTag tag = f.field() == FieldTag::Real && is_real_valued(head) ? FieldTag::Real
                                                                             : FieldTag::Complex;
    return from_head_and_shift(head, f.normal_form().tail_shift, tag);
}

bool sequence_is_bessel(const VectorSequence& s, int n_vectors) {
    if (s.kind() == SeqKind::Finite) return true;
    if (s.structured_form() == StructuredForm::Edits) return true;  // finite edit of a basis
    if (rule_is_unbounded(s.rule())) return false;
    // Growth probe over a widening window: a bounded sequence keeps its
    // synthesis bound within the divergence ratio.
    std::vector<int> lengths{std::max(2, n_vectors / 16), std::max(4, n_vectors / 4),
                             std::max(8, n_vectors)};
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
    double first = -1.0, last = 0.0;
    for (int n : lengths) {
        const SynthesisSection sec = truncate(s, lossless_truncation(s, n));
        const SvdResult dec = svd(sec.matrix);
        const double m = dec.singular_values.empty()
                             ? 0.0
                             : dec.singular_values.front() * dec.singular_values.front();
        if (first < 0.0) first = m;
        last = m;
    }
    return !(first > 0.0 && last > kBesselDivergenceRatio * first);
}

}  // namespace

VectorSequence canonical_dual(const VectorSequence& f, const TolerancePolicy& tol) {
    return construct(f, DualKind::Canonical, tol);
}

VectorSequence pseudo_dual_construct(const VectorSequence& f, const TolerancePolicy& tol) {
    return construct(f, DualKind::Pseudo, tol);
}

VectorSequence pseudo_codual_construct(const VectorSequence& f, const TolerancePolicy& tol) {
    return construct(f, DualKind::Codual, tol);
}

DualityCertificate verify_duality(const VectorSequence& f, const VectorSequence& g,
                                  DualityRelation relation, std::optional<int> rank_budget,
                                  int n_vectors, const TolerancePolicy& tol) {
    if (n_vectors < 0) throw InvalidInput("n_vectors must be >= 0");

    int n = n_vectors;
    if (f.kind() == SeqKind::Finite && g.kind() == SeqKind::Finite) {
        if (f.length() != g.length()) {
            throw InvalidInput("finite duality candidates must have equal length");
        }
        n = f.length();
    } else if (f.kind() == SeqKind::Finite) {
        n = std::min(n, f.length());
    } else if (g.kind() == SeqKind::Finite) {
        n = std::min(n, g.length());
    }
    const int d = std::max(lossless_dim(f, n), lossless_dim(g, n));

    const Truncation window{n, d};
    const Eigen::MatrixXcd af = truncate(f, window).matrix.values;
    const Eigen::MatrixXcd ag = truncate(g, window).matrix.values;
    const FieldTag tag = (f.field() == FieldTag::Real && g.field() == FieldTag::Real)
                             ? FieldTag::Real
                             : FieldTag::Complex;

    DualityCertificate cert;
    cert.relation = relation;
    Eigen::MatrixXcd defect;
    if (relation == DualityRelation::Dual) {
        defect = af * ag.adjoint() - Eigen::MatrixXcd::Identity(d, d);
    } else {
        defect = ag.adjoint() * af - Eigen::MatrixXcd::Identity(n, n);
    }
    cert.defect = Matrix{std::move(defect), tag};
    cert.defect_rank = numeric_rank(cert.defect, tol);
    cert.reconstruction_codim = cert.defect_rank;

    if (rank_budget) {
        if (*rank_budget < 0) throw InvalidInput("rank budget must be >= 0");
        cert.rank_budget = *rank_budget;
    } else {
        const SynthesisAnalysis fa = analyze(Matrix{af, f.field()}, tol);
        cert.rank_budget = std::max(fa.kernel_dim, fa.corange_dim) + 2;
    }

    cert.partner_bessel = sequence_is_bessel(g, std::max(n, 1));

    if (cert.defect_rank == 0) {
        cert.verdict = DualityVerdict::ExactDual;
    } else if (cert.defect_rank < cert.rank_budget) {
        cert.verdict = DualityVerdict::PseudoDual;
    } else {
        cert.verdict = DualityVerdict::NotAPseudoDual;
    }
    return cert;
}

PartnerClassCheck check_partner_class(const DualityCertificate& cert, const Taxonomy& source,
                                      const Taxonomy& partner) {
    if (cert.verdict == DualityVerdict::NotAPseudoDual) {
        throw InvalidInput("certificate does not witness a duality relation");
    }

    PartnerClassCheck check;
    if (!cert.partner_bessel) {
        check.status = PartnerCheckStatus::HypothesesUnmet;
        check.violated = "partner is not a Bessel sequence; inheritance clauses need a Bessel companion";
        return check;
    }

    struct Clause {
        bool triggered;
        bool satisfied;
        const char* text;
    };
    std::vector<Clause> clauses;
    const bool exact = cert.verdict == DualityVerdict::ExactDual;
    if (cert.relation == DualityRelation::Dual) {
        clauses.push_back({exact && source.bessel, partner.frame,
                           "exact Bessel dual companion must be a frame"});
        clauses.push_back({source.pseudo_frame, partner.pseudo_frame,
                           "Bessel dual companion of a pseudo-frame must be a pseudo-frame"});
        clauses.push_back(
            {source.pseudo_riesz_basis, partner.pseudo_riesz_basis,
             "Bessel dual companion of a pseudo-Riesz basis must be a pseudo-Riesz basis"});
    } else {
        clauses.push_back({exact && source.bessel, partner.riesz_sequence,
                           "exact Bessel codual companion must be a Riesz sequence"});
        clauses.push_back(
            {source.pseudo_riesz_sequence, partner.pseudo_riesz_sequence,
             "Bessel codual companion of a pseudo-Riesz sequence must be a pseudo-Riesz sequence"});
        clauses.push_back(
            {source.pseudo_riesz_basis, partner.pseudo_riesz_basis,
             "Bessel codual companion of a pseudo-Riesz basis must be a pseudo-Riesz basis"});
    }

    for (const Clause& c : clauses) {
        if (!c.triggered) continue;
        check.required.emplace_back(c.text);
        if (!c.satisfied && check.violated.empty()) check.violated = c.text;
    }
    check.status = check.violated.empty() ? PartnerCheckStatus::Pass : PartnerCheckStatus::Fail;
    return check;
}

}  // namespace frameforge
