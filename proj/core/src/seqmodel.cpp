#include "frameforge/seqmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "frameforge/errors.hpp"

namespace frameforge {

namespace {

constexpr long long kMaxCoordinate = 100'000'000;

// Edit positions address the explicit head, which stays small by design; the
// cap keeps a stray position from materializing millions of tail vectors.
constexpr int kMaxEditPosition = 1'000'000;

bool finite_entry(const std::complex<double>& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}

bool sparse_is_real(const SparseVector& v) {
    return std::all_of(v.entries.begin(), v.entries.end(),
                       [](const auto& e) { return e.second.imag() == 0.0; });
}

bool is_basis_entry(const SparseVector& v, long long index) {
    return v.entries.size() == 1 && v.entries[0].first == index &&
           v.entries[0].second == std::complex<double>(1.0, 0.0);
}

SparseVector basis_sparse(long long index) {
    if (index < 1 || index > kMaxCoordinate) throw InvalidInput("basis index out of supported range");
    SparseVector v;
    v.entries.emplace_back(static_cast<int>(index), std::complex<double>(1.0, 0.0));
    return v;
}

// Applies the script to e_1, e_2, ... and returns the co-finite normal form.
CofiniteNormalForm apply_edits(const EditScript& script) {
    std::vector<SparseVector> head;
    long long shift = 0;

    auto ensure_head = [&](int upto) {
        while (static_cast<int>(head.size()) < upto) {
            head.push_back(basis_sparse(static_cast<long long>(head.size()) + 1 + shift));
        }
    };

    const auto check_position = [](int position, const char* what) {
        if (position < 1 || position > kMaxEditPosition) {
            throw InvalidInput(std::string(what) + " must lie in [1, " +
                               std::to_string(kMaxEditPosition) + "]");
        }
    };

    for (const Edit& e : script.edits) {
        if (const auto* drop = std::get_if<DropEdit>(&e)) {
            check_position(drop->index, "drop index");
            ensure_head(drop->index);
            head.erase(head.begin() + (drop->index - 1));
            shift += 1;
        } else if (const auto* ins = std::get_if<InsertEdit>(&e)) {
            check_position(ins->position, "insert position");
            ensure_head(ins->position - 1);
            head.insert(head.begin() + (ins->position - 1), make_sparse(ins->vector.entries));
            shift -= 1;
        } else {
            const auto& rep = std::get<ReplaceEdit>(e);
            check_position(rep.index, "replace index");
            ensure_head(rep.index);
            head[rep.index - 1] = make_sparse(rep.vector.entries);
        }
    }

    // Trailing head entries that already equal the tail value are redundant.
    while (!head.empty() && is_basis_entry(head.back(), static_cast<long long>(head.size()) + shift)) {
        head.pop_back();
    }
    return CofiniteNormalForm{std::move(head), shift};
}

std::complex<double> rule_coeff_at(const RuleTerm& t, long long n) {
    const double x = static_cast<double>(n);
    return t.coeff[0] + t.coeff[1] * x + t.coeff[2] * (x * x);
}

bool poly_is_zero(const RuleTerm& t) {
    return t.coeff[0] == std::complex<double>(0.0) && t.coeff[1] == std::complex<double>(0.0) &&
           t.coeff[2] == std::complex<double>(0.0);
}

long long rule_index_at(const RuleTerm& t, long long n) { return t.index_slope * n + t.index_offset; }

void validate_rule(const CoefficientRule& rule) {
    std::vector<const RuleTerm*> active;
    for (const RuleTerm& t : rule.terms) {
        for (const auto& c : t.coeff) {
            if (!finite_entry(c)) throw InvalidInput("rule coefficient is not finite");
        }
        if (poly_is_zero(t)) continue;
        if (t.index_slope < 0) throw InvalidInput("rule index slope must be >= 0");
        if (rule_index_at(t, 1) < 1) throw InvalidInput("rule index leaves the positive range at n = 1");
        if (std::llabs(t.index_slope) > kMaxCoordinate || std::llabs(t.index_offset) > kMaxCoordinate) {
            throw InvalidInput("rule index template out of supported range");
        }
        active.push_back(&t);
    }
    for (std::size_t i = 0; i < active.size(); ++i) {
        for (std::size_t j = i + 1; j < active.size(); ++j) {
            const RuleTerm& a = *active[i];
            const RuleTerm& b = *active[j];
            if (a.index_slope == b.index_slope) {
                if (a.index_offset == b.index_offset) {
                    throw InvalidInput("duplicate basis index template in rule");
                }
                continue;
            }
            // Distinct slopes collide at exactly one rational n; reject it
            // when that n is a positive integer.
            const long long num = b.index_offset - a.index_offset;
            const long long den = a.index_slope - b.index_slope;
            if (num % den == 0 && num / den >= 1) {
                throw InvalidInput("rule index templates collide at n = " + std::to_string(num / den));
            }
        }
    }
}

FieldTag infer_field(const EditScript& script) {
    for (const Edit& e : script.edits) {
        if (const auto* ins = std::get_if<InsertEdit>(&e)) {
            if (!sparse_is_real(ins->vector)) return FieldTag::Complex;
        } else if (const auto* rep = std::get_if<ReplaceEdit>(&e)) {
            if (!sparse_is_real(rep->vector)) return FieldTag::Complex;
        }
    }
    return FieldTag::Real;
}

FieldTag infer_field(const CoefficientRule& rule) {
    for (const RuleTerm& t : rule.terms) {
        for (const auto& c : t.coeff) {
            if (c.imag() != 0.0) return FieldTag::Complex;
        }
    }
    return FieldTag::Real;
}

FieldTag resolve_field(FieldTag inferred, std::optional<FieldTag> requested) {
    if (!requested) return inferred;
    if (*requested == FieldTag::Real && inferred == FieldTag::Complex) {
        throw InvalidInput("real field tag requested for complex-valued data");
    }
    return *requested;
}

}  // namespace

SparseVector make_sparse(std::vector<std::pair<int, std::complex<double>>> entries) {
    for (const auto& [idx, c] : entries) {
        if (idx < 1) throw InvalidInput("sparse vector index must be >= 1");
        if (idx > kMaxCoordinate) throw InvalidInput("sparse vector index out of supported range");
        if (!finite_entry(c)) throw InvalidInput("sparse vector coefficient is not finite");
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].first == entries[i - 1].first) {
            throw InvalidInput("duplicate index in sparse vector");
        }
    }
    std::erase_if(entries, [](const auto& e) { return e.second == std::complex<double>(0.0); });
    return SparseVector{std::move(entries)};
}

int VectorSequence::ambient_dim() const {
    if (kind_ != SeqKind::Finite) throw InvalidInput("ambient_dim is defined for finite sequences only");
    return static_cast<int>(finite_.rows());
}

int VectorSequence::length() const {
    if (kind_ != SeqKind::Finite) throw InvalidInput("length is defined for finite sequences only");
    return static_cast<int>(finite_.cols());
}

const Matrix& VectorSequence::columns() const {
    if (kind_ != SeqKind::Finite) throw InvalidInput("columns are defined for finite sequences only");
    return finite_;
}

StructuredForm VectorSequence::structured_form() const {
    if (kind_ != SeqKind::Structured) throw InvalidInput("structured_form requires a structured sequence");
    return edits_ ? StructuredForm::Edits : StructuredForm::Rule;
}

const EditScript& VectorSequence::edits() const {
    if (kind_ != SeqKind::Structured || !edits_) throw InvalidInput("sequence has no edit script");
    return *edits_;
}

const CofiniteNormalForm& VectorSequence::normal_form() const {
    if (kind_ != SeqKind::Structured || !edits_) throw InvalidInput("sequence has no edit script");
    return normal_;
}

const CoefficientRule& VectorSequence::rule() const {
    if (kind_ != SeqKind::Structured || !rule_) throw InvalidInput("sequence has no coefficient rule");
    return *rule_;
}

bool VectorSequence::operator==(const VectorSequence& other) const {
    if (kind_ != other.kind_ || field_ != other.field_) return false;
    if (kind_ == SeqKind::Finite) {
        return finite_.rows() == other.finite_.rows() && finite_.cols() == other.finite_.cols() &&
               finite_.values == other.finite_.values;
    }
    return edits_ == other.edits_ && rule_ == other.rule_;
}

VectorSequence make_finite(Matrix columns) {
    if (!columns.values.allFinite()) throw InvalidInput("finite sequence has non-finite entries");
    if (columns.field == FieldTag::Real && !is_real_valued(columns.values)) {
        throw InvalidInput("real-tagged sequence has nonzero imaginary parts");
    }
    VectorSequence s;
    s.kind_ = SeqKind::Finite;
    s.field_ = columns.field;
    s.finite_ = std::move(columns);
    return s;
}

VectorSequence make_finite(const std::vector<std::vector<std::complex<double>>>& vectors,
                           FieldTag field) {
    const Eigen::Index n = static_cast<Eigen::Index>(vectors.size());
    const Eigen::Index d = n == 0 ? 0 : static_cast<Eigen::Index>(vectors[0].size());
    Eigen::MatrixXcd m(d, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        if (static_cast<Eigen::Index>(vectors[static_cast<std::size_t>(j)].size()) != d) {
            throw InvalidInput("ragged vector list");
        }
        for (Eigen::Index i = 0; i < d; ++i) {
            m(i, j) = vectors[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
    }
    return make_finite(Matrix{std::move(m), field});
}

VectorSequence make_structured(EditScript script, std::optional<FieldTag> field) {
    VectorSequence s;
    s.kind_ = SeqKind::Structured;
    s.normal_ = apply_edits(script);  // validates as it goes
    s.field_ = resolve_field(infer_field(script), field);
    s.edits_ = std::move(script);
    return s;
}

VectorSequence make_rule(CoefficientRule rule, std::optional<FieldTag> field) {
    validate_rule(rule);
    VectorSequence s;
    s.kind_ = SeqKind::Structured;
    s.field_ = resolve_field(infer_field(rule), field);
    s.rule_ = std::move(rule);
    return s;
}

VectorSlice vector_at(const VectorSequence& s, int n, int d_coords) {
    if (n < 1) throw OutOfRange("vector position must be >= 1");
    if (d_coords < 0) throw InvalidInput("coordinate count must be >= 0");

    VectorSlice out;
    out.coords = Eigen::VectorXcd::Zero(d_coords);

    if (s.kind() == SeqKind::Finite) {
        if (n > s.length()) {
            throw OutOfRange("vector position " + std::to_string(n) + " past sequence length " +
                             std::to_string(s.length()));
        }
        const auto col = s.columns().values.col(n - 1);
        for (Eigen::Index i = 0; i < col.size(); ++i) {
            if (i < d_coords) {
                out.coords(i) = col(i);
            } else if (col(i) != std::complex<double>(0.0)) {
                out.lossy = true;
            }
        }
        return out;
    }

    if (s.structured_form() == StructuredForm::Edits) {
        const CofiniteNormalForm& nf = s.normal_form();
        const int head_len = static_cast<int>(nf.head.size());
        if (n <= head_len) {
            for (const auto& [idx, c] : nf.head[static_cast<std::size_t>(n - 1)].entries) {
                if (idx <= d_coords) {
                    out.coords(idx - 1) = c;
                } else {
                    out.lossy = true;
                }
            }
        } else {
            const long long idx = static_cast<long long>(n) + nf.tail_shift;
            if (idx <= d_coords) {
                out.coords(static_cast<Eigen::Index>(idx - 1)) = 1.0;
            } else {
                out.lossy = true;
            }
        }
        return out;
    }

    for (const RuleTerm& t : s.rule().terms) {
        const std::complex<double> c = rule_coeff_at(t, n);
        if (c == std::complex<double>(0.0)) continue;
        const long long idx = rule_index_at(t, n);
        if (idx <= d_coords) {
            out.coords(static_cast<Eigen::Index>(idx - 1)) += c;
        } else {
            out.lossy = true;
        }
    }
    return out;
}

SynthesisSection truncate(const VectorSequence& s, const Truncation& t) {
    if (t.n_vectors < 0 || t.d_coords < 0) throw InvalidInput("truncation bounds must be >= 0");
    if (s.kind() == SeqKind::Finite && t.n_vectors > s.length()) {
        throw OutOfRange("truncation requests more vectors than the finite sequence holds");
    }

    SynthesisSection out;
    Eigen::MatrixXcd m(t.d_coords, t.n_vectors);
    for (int j = 1; j <= t.n_vectors; ++j) {
        VectorSlice v = vector_at(s, j, t.d_coords);
        out.lossy = out.lossy || v.lossy;
        m.col(j - 1) = v.coords;
    }
    out.matrix = Matrix{std::move(m), s.field()};
    return out;
}

int lossless_dim(const VectorSequence& s, int n_vectors) {
    if (n_vectors < 0) throw InvalidInput("vector count must be >= 0");
    if (s.kind() == SeqKind::Finite) {
        if (n_vectors > s.length()) {
            throw OutOfRange("vector count past finite sequence length");
        }
        return s.ambient_dim();
    }

    long long dim = 0;
    if (s.structured_form() == StructuredForm::Edits) {
        const CofiniteNormalForm& nf = s.normal_form();
        const int head_len = static_cast<int>(nf.head.size());
        for (int n = 1; n <= std::min(n_vectors, head_len); ++n) {
            for (const auto& [idx, c] : nf.head[static_cast<std::size_t>(n - 1)].entries) {
                dim = std::max(dim, static_cast<long long>(idx));
            }
        }
        if (n_vectors > head_len) {
            dim = std::max(dim, static_cast<long long>(n_vectors) + nf.tail_shift);
        }
    } else {
        for (long long n = 1; n <= n_vectors; ++n) {
            for (const RuleTerm& t : s.rule().terms) {
                if (rule_coeff_at(t, n) != std::complex<double>(0.0)) {
                    dim = std::max(dim, rule_index_at(t, n));
                }
            }
        }
    }
    if (dim > kMaxCoordinate) throw InvalidInput("lossless window exceeds supported size");
    return static_cast<int>(dim);
}

Truncation lossless_truncation(const VectorSequence& s, int n_vectors) {
    return Truncation{n_vectors, lossless_dim(s, n_vectors)};
}

bool rule_is_unbounded(const CoefficientRule& rule) {
    for (const RuleTerm& t : rule.terms) {
        if (poly_is_zero(t)) continue;
        const bool growing_coeff =
            t.coeff[1] != std::complex<double>(0.0) || t.coeff[2] != std::complex<double>(0.0);
        // A fixed coordinate hit by every n accumulates infinite mass even
        // when the coefficient stays constant.
        if (growing_coeff || t.index_slope == 0) return true;
    }
    return false;
}

}  // namespace frameforge
