#include "frameforge/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "frameforge/errors.hpp"

namespace frameforge {

namespace {

Taxonomy full_rank_closure_taxonomy(const SynthesisAnalysis& a) {
    // In a finite section every subspace is closed and every dimension is
    // finite, so the closure-and-finiteness classes hold unconditionally.
    Taxonomy t;
    t.bessel = true;
    t.quasi_frame = true;
    t.pseudo_frame = true;
    t.pseudo_riesz_sequence = true;
    t.pseudo_riesz_basis = true;
    t.frame = a.corange_dim == 0;
    t.riesz_sequence = a.kernel_dim == 0;
    t.riesz_basis = t.frame && t.riesz_sequence;
    t.near_riesz_basis = t.frame;
    t.excess = a.kernel_dim;
    t.deficit = a.corange_dim;
    t.provenance = Provenance::Exact;
    return t;
}

// Head block of an edit-script sequence, wide enough that every excluded tail
// vector hits a fresh coordinate orthogonal to the block.
Truncation exact_block(const VectorSequence& s) {
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

bool all_equal(const std::vector<int>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

bool strictly_increasing(const std::vector<int>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

Eigen::MatrixXcd drop_columns(const Eigen::MatrixXcd& a, const std::vector<int>& dropped) {
    Eigen::MatrixXcd out(a.rows(), a.cols() - static_cast<Eigen::Index>(dropped.size()));
    Eigen::Index w = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        if (std::find(dropped.begin(), dropped.end(), static_cast<int>(j)) == dropped.end()) {
            out.col(w++) = a.col(j);
        }
    }
    return out;
}

}  // namespace

bool satisfies_lattice(const Taxonomy& t) {
    if (t.riesz_basis != (t.frame && t.riesz_sequence)) return false;
    if (t.pseudo_riesz_basis != (t.pseudo_frame && t.pseudo_riesz_sequence)) return false;
    if (t.near_riesz_basis != (t.frame && t.pseudo_riesz_sequence)) return false;
    if (t.frame && !t.pseudo_frame) return false;
    if (t.riesz_sequence && !t.pseudo_riesz_sequence) return false;
    if ((t.frame || t.riesz_sequence) && !t.quasi_frame) return false;
    if (t.excess.has_value() != t.pseudo_riesz_sequence) return false;
    if (t.deficit.has_value() != t.pseudo_frame) return false;
    return true;
}

SynthesisAnalysis analyze(const Matrix& synthesis, const TolerancePolicy& tol) {
    const SvdResult s = svd(synthesis, tol);
    const int d = static_cast<int>(synthesis.rows());
    const int n = static_cast<int>(synthesis.cols());

    SynthesisAnalysis a;
    a.rank = numeric_rank(s, tol);
    a.kernel_dim = n - a.rank;
    a.corange_dim = d - a.rank;
    a.index = a.kernel_dim - a.corange_dim;
    a.gamma = reduced_minimum_modulus(s, tol);
    if (!s.singular_values.empty()) {
        const double smax = s.singular_values.front();
        a.bessel_bound = smax * smax;
    }
    if (d > 0 && a.rank == d) {
        const double sd = s.singular_values[static_cast<std::size_t>(d - 1)];
        a.frame_lower = sd * sd;
    }
    if (n > 0 && a.rank == n) {
        const double sn = s.singular_values[static_cast<std::size_t>(n - 1)];
        a.riesz_lower = sn * sn;
    }
    return a;
}

Taxonomy classify_finite(const VectorSequence& s, const TolerancePolicy& tol) {
    if (s.kind() != SeqKind::Finite) throw InvalidInput("classify_finite requires a finite sequence");
    return full_rank_closure_taxonomy(analyze(s.columns(), tol));
}

Taxonomy classify_structured(const VectorSequence& s, const TolerancePolicy& tol) {
    if (s.kind() != SeqKind::Structured) {
        throw InvalidInput("classify_structured requires a structured sequence");
    }
    if (s.structured_form() == StructuredForm::Rule) {
        throw UnsupportedExact("rule-driven sequences admit only truncation scans");
    }
    const Truncation block = exact_block(s);
    const SynthesisSection section = truncate(s, block);
    // Tail vectors beyond the block are orthonormal, hit fresh coordinates,
    // and are orthogonal to the block, so its kernel and corange are exact.
    return full_rank_closure_taxonomy(analyze(section.matrix, tol));
}

std::vector<int> default_scan_lengths() { return {8, 16, 32, 64}; }

std::vector<Truncation> lossless_schedule(const VectorSequence& s, const std::vector<int>& lengths) {
    std::vector<Truncation> out;
    out.reserve(lengths.size());
    for (int n : lengths) out.push_back(lossless_truncation(s, n));
    return out;
}

ScanReport scan(const VectorSequence& s, const std::vector<Truncation>& schedule,
                const TolerancePolicy& tol) {
    validate(tol);
    if (s.kind() != SeqKind::Structured) throw InvalidInput("scan requires a structured sequence");
    if (schedule.empty()) throw InvalidInput("scan schedule is empty");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const Truncation& t = schedule[i];
        if (i > 0 && t.n_vectors <= schedule[i - 1].n_vectors) {
            throw InvalidInput("scan schedule must be strictly increasing in n_vectors");
        }
        if (t.d_coords < lossless_dim(s, t.n_vectors)) {
            throw InvalidInput("scan schedule step is lossy");
        }
    }

    ScanReport report;
    for (const Truncation& t : schedule) {
        report.steps.push_back(ScanStep{t, analyze(truncate(s, t).matrix, tol)});
    }

    bool bessel = true;
    if (s.structured_form() == StructuredForm::Rule && rule_is_unbounded(s.rule())) {
        bessel = false;
        report.divergence_notes.push_back(
            "rule pumps unbounded mass into the coordinates; no finite synthesis bound exists");
    }
    const double m_first = report.steps.front().analysis.bessel_bound;
    const double m_last = report.steps.back().analysis.bessel_bound;
    if (m_first > 0.0 && m_last > kBesselDivergenceRatio * m_first) {
        bessel = false;
        std::ostringstream note;
        note << "synthesis bound grew more than " << kBesselDivergenceRatio
             << "x across the scan (" << m_first << " -> " << m_last << ")";
        report.divergence_notes.push_back(note.str());
    }

    // Trends over the last three steps decide the extrapolation: a constant
    // integer invariant is read off directly, a strictly growing one certifies
    // the corresponding class failure, anything else leaves the scan unsettled.
    const std::size_t window = 3;
    const bool enough = report.steps.size() >= window;
    std::vector<int> kernels, coranges;
    std::vector<double> gammas;
    for (std::size_t i = report.steps.size() >= window ? report.steps.size() - window : 0;
         i < report.steps.size(); ++i) {
        kernels.push_back(report.steps[i].analysis.kernel_dim);
        coranges.push_back(report.steps[i].analysis.corange_dim);
        gammas.push_back(report.steps[i].analysis.gamma);
    }
    const bool kernel_constant = all_equal(kernels);
    const bool kernel_growing = strictly_increasing(kernels);
    const bool corange_constant = all_equal(coranges);
    const bool corange_growing = strictly_increasing(coranges);
    bool gamma_settled = true;
    for (std::size_t i = 1; i < gammas.size(); ++i) {
        const double scale = std::max(std::abs(gammas[i]), tol.abs_floor);
        if (std::abs(gammas[i] - gammas[i - 1]) > tol.stabilization_rtol * scale) gamma_settled = false;
    }

    report.stabilized = enough && gamma_settled && (kernel_constant || kernel_growing) &&
                        (corange_constant || corange_growing);

    Taxonomy& t = report.extrapolated;
    t.provenance = Provenance::TruncationExtrapolated;
    t.bessel = bessel;
    if (bessel) {
        t.pseudo_riesz_sequence = enough && kernel_constant;
        if (t.pseudo_riesz_sequence) t.excess = kernels.back();
        t.riesz_sequence = t.pseudo_riesz_sequence && kernels.back() == 0;
        t.pseudo_frame = enough && corange_constant;
        if (t.pseudo_frame) t.deficit = coranges.back();
        t.frame = t.pseudo_frame && coranges.back() == 0;
        t.quasi_frame = (t.frame || t.riesz_sequence) ||
                        (enough && gamma_settled && gammas.back() > 0.0);
        t.riesz_basis = t.frame && t.riesz_sequence;
        t.pseudo_riesz_basis = t.pseudo_frame && t.pseudo_riesz_sequence;
        t.near_riesz_basis = t.frame && t.pseudo_riesz_sequence;
    }
    // A non-Bessel sequence belongs to none of the classes; all flags stay
    // false and both counts stay undefined.
    return report;
}

Taxonomy classify_sequence(const VectorSequence& s, const std::vector<int>& scan_lengths,
                           const TolerancePolicy& tol) {
    if (s.kind() == SeqKind::Finite) return classify_finite(s, tol);
    if (s.structured_form() == StructuredForm::Edits) return classify_structured(s, tol);
    const std::vector<int>& lengths = scan_lengths.empty() ? default_scan_lengths() : scan_lengths;
    return scan(s, lossless_schedule(s, lengths), tol).extrapolated;
}

std::optional<int> excess_bruteforce(const VectorSequence& s, int k_max, const TolerancePolicy& tol) {
    if (s.kind() != SeqKind::Finite) throw InvalidInput("excess_bruteforce requires a finite sequence");
    if (k_max < 0 || k_max > 4) throw InvalidInput("k_max must lie in [0, 4]");

    const Eigen::MatrixXcd& a = s.columns().values;
    const int n = static_cast<int>(a.cols());
    const auto kernel_of = [&](const Eigen::MatrixXcd& m) {
        return analyze(Matrix{m, s.field()}, tol).kernel_dim;
    };
    if (kernel_of(a) == 0) return 0;
    for (int k = 1; k <= std::min(k_max, n); ++k) {
        for (const std::vector<int>& dropped : combinations(n, k)) {
            if (kernel_of(drop_columns(a, dropped)) == 0) return k;
        }
    }
    return std::nullopt;
}

namespace {

// Greedy kernel removal on explicit columns; returns the surviving matrix and
// the removed 1-based positions in removal order.
std::pair<Eigen::MatrixXcd, std::vector<int>> reduce_columns(Eigen::MatrixXcd a, FieldTag field,
                                                             const TolerancePolicy& tol) {
    std::vector<int> original(static_cast<std::size_t>(a.cols()));
    std::iota(original.begin(), original.end(), 1);
    std::vector<int> removed;

    while (true) {
        const SynthesisAnalysis full = analyze(Matrix{a, field}, tol);
        if (full.kernel_dim == 0) break;
        int best_col = -1;
        double best_gamma = -1.0;
        for (int j = 0; j < static_cast<int>(a.cols()); ++j) {
            const Eigen::MatrixXcd candidate = drop_columns(a, {j});
            const SynthesisAnalysis trial = analyze(Matrix{candidate, field}, tol);
            // Only rank-preserving deletions shrink the kernel; skipping the
            // rest guarantees exactly kernel_dim removals overall.
            if (trial.rank != full.rank) continue;
            if (trial.gamma > best_gamma) {
                best_gamma = trial.gamma;
                best_col = j;
            }
        }
        if (best_col < 0) throw Error("no rank-preserving deletion found despite nontrivial kernel");
        a = drop_columns(a, {best_col});
        removed.push_back(original[static_cast<std::size_t>(best_col)]);
        original.erase(original.begin() + best_col);
    }
    return {std::move(a), std::move(removed)};
}

SparseVector column_as_sparse(const Eigen::MatrixXcd& m, Eigen::Index col) {
    std::vector<std::pair<int, std::complex<double>>> entries;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (m(r, col) != std::complex<double>(0.0)) {
            entries.emplace_back(static_cast<int>(r) + 1, m(r, col));
        }
    }
    return make_sparse(std::move(entries));
}

}  // namespace

VectorSequence extend_to_frame(const VectorSequence& s, const TolerancePolicy& tol) {
    if (s.kind() == SeqKind::Finite) {
        const Matrix complement = orthonormal_complement_basis(s.columns(), tol);
        Eigen::MatrixXcd extended(s.columns().rows(), s.columns().cols() + complement.cols());
        extended << s.columns().values, complement.values;
        return make_finite(Matrix{std::move(extended), s.field()});
    }
    if (s.structured_form() == StructuredForm::Rule) {
        // No closed-form extension exists for general rules; when the scan
        // certifies that nothing is missing, the sequence is its own
        // extension.
        const Taxonomy t = classify_sequence(s, {}, tol);
        if (t.deficit == 0) return s;
        throw UnsupportedExact("rule-driven extension supported only when no vectors are missing");
    }
    // The tail already covers every coordinate past the head block, so the
    // missing directions all live inside the block; prepend an orthonormal
    // basis of its complement.
    const Matrix block = truncate(s, exact_block(s)).matrix;
    const Matrix complement = orthonormal_complement_basis(block, tol);
    EditScript script = s.edits();
    for (Eigen::Index j = complement.cols() - 1; j >= 0; --j) {
        script.edits.emplace_back(InsertEdit{1, column_as_sparse(complement.values, j)});
    }
    return make_structured(std::move(script), s.field());
}

ReductionResult reduce_to_riesz(const VectorSequence& s, const TolerancePolicy& tol) {
    if (s.kind() == SeqKind::Finite) {
        auto [a, removed] = reduce_columns(s.columns().values, s.field(), tol);
        return ReductionResult{make_finite(Matrix{std::move(a), s.field()}), std::move(removed)};
    }
    if (s.structured_form() == StructuredForm::Rule) {
        const Taxonomy t = classify_sequence(s, {}, tol);
        if (t.excess == 0) return ReductionResult{s, {}};
        throw UnsupportedExact("rule-driven reduction supported only when nothing needs removing");
    }
    // The tail is a Riesz sequence on fresh coordinates, so the kernel lives
    // in the head block and only head positions ever need to go.
    const Truncation window = exact_block(s);
    const Matrix block = truncate(s, window).matrix;
    auto [reduced, removed] = reduce_columns(block.values, s.field(), tol);
    (void)reduced;

    EditScript script = s.edits();
    for (std::size_t i = 0; i < removed.size(); ++i) {
        int current = removed[i];
        for (std::size_t j = 0; j < i; ++j) {
            if (removed[j] < removed[i]) --current;
        }
        script.edits.emplace_back(DropEdit{current});
    }
    return ReductionResult{make_structured(std::move(script), s.field()), std::move(removed)};
}

}  // namespace frameforge
