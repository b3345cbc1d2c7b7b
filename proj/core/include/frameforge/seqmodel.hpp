#pragma once

#include <array>
#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "frameforge/matrix.hpp"

namespace frameforge {

// Finitely supported coordinate vector: sorted, unique, 1-based basis indices.
struct SparseVector {
    std::vector<std::pair<int, std::complex<double>>> entries;

    bool operator==(const SparseVector&) const = default;
};

// Builds a well-formed sparse vector: sorts, rejects duplicate indices,
// indices < 1, and non-finite coefficients; drops exact zeros.
SparseVector make_sparse(std::vector<std::pair<int, std::complex<double>>> entries);

struct DropEdit {
    int index = 0;
    bool operator==(const DropEdit&) const = default;
};
struct InsertEdit {
    int position = 0;
    SparseVector vector;
    bool operator==(const InsertEdit&) const = default;
};
struct ReplaceEdit {
    int index = 0;
    SparseVector vector;
    bool operator==(const ReplaceEdit&) const = default;
};
using Edit = std::variant<DropEdit, InsertEdit, ReplaceEdit>;

// Ordered, finite list of edits applied to the standard basis e_1, e_2, ...
// All positions are 1-based and refer to the sequence as it stands when the
// edit is applied.
struct EditScript {
    std::vector<Edit> edits;

    bool operator==(const EditScript&) const = default;
};

// Every edited sequence agrees with a shifted standard basis co-finitely:
// positions 1..head.size() are explicit vectors, and position n beyond the
// head holds e_{n + tail_shift}.
struct CofiniteNormalForm {
    std::vector<SparseVector> head;
    long long tail_shift = 0;
};

// One closed-form term: basis index slope*n + offset with coefficient
// coeff[0] + coeff[1]*n + coeff[2]*n^2.
struct RuleTerm {
    long long index_slope = 0;
    long long index_offset = 0;
    std::array<std::complex<double>, 3> coeff{};

    bool operator==(const RuleTerm&) const = default;
};

// Dense description f_n = sum over terms of coeff(n) * e_{index(n)}, n >= 1.
struct CoefficientRule {
    std::vector<RuleTerm> terms;

    bool operator==(const CoefficientRule&) const = default;
};

// Window onto a sequence: the first n_vectors vectors restricted to the
// first d_coords coordinates.
struct Truncation {
    int n_vectors = 0;
    int d_coords = 0;

    bool operator==(const Truncation&) const = default;
};

enum class SeqKind { Finite, Structured };
enum class StructuredForm { Edits, Rule };

// A vector sequence in one of three representations: an explicit finite list,
// a co-finite edit of the standard basis, or a coefficient rule.
class VectorSequence {
  public:
    VectorSequence() = default;  // finite, zero vectors in a zero-dimensional space

    SeqKind kind() const { return kind_; }
    FieldTag field() const { return field_; }

    // Finite kind: ambient dimension and vector count.
    int ambient_dim() const;
    int length() const;
    const Matrix& columns() const;

    // Structured kind.
    StructuredForm structured_form() const;
    const EditScript& edits() const;
    const CofiniteNormalForm& normal_form() const;
    const CoefficientRule& rule() const;

    bool operator==(const VectorSequence& other) const;

    friend VectorSequence make_finite(Matrix columns);
    friend VectorSequence make_structured(EditScript script, std::optional<FieldTag> field);
    friend VectorSequence make_rule(CoefficientRule rule, std::optional<FieldTag> field);

  private:
    SeqKind kind_ = SeqKind::Finite;
    FieldTag field_ = FieldTag::Complex;
    Matrix finite_;                    // columns are the vectors
    std::optional<EditScript> edits_;  // as written
    CofiniteNormalForm normal_;        // derived from edits_
    std::optional<CoefficientRule> rule_;
};

// Finite sequence whose vectors are the columns of the given matrix.
VectorSequence make_finite(Matrix columns);
VectorSequence make_finite(const std::vector<std::vector<std::complex<double>>>& vectors,
                           FieldTag field = FieldTag::Complex);

// Co-finite edit of the standard basis.  The optional field tag must be
// consistent with the edit data; by default it is inferred.
VectorSequence make_structured(EditScript script, std::optional<FieldTag> field = std::nullopt);

// Rule-driven sequence.  Rejects index templates that collide at some n >= 1,
// indices that leave the positive range, and non-finite coefficients.
VectorSequence make_rule(CoefficientRule rule, std::optional<FieldTag> field = std::nullopt);

// The n-th vector restricted to the first d_coords coordinates.  lossy is set
// when a nonzero coefficient falls outside the window.
struct VectorSlice {
    Eigen::VectorXcd coords;
    bool lossy = false;
};
VectorSlice vector_at(const VectorSequence& s, int n, int d_coords);

// Synthesis-operator section: column j holds the j-th vector.
struct SynthesisSection {
    Matrix matrix;
    bool lossy = false;
};
SynthesisSection truncate(const VectorSequence& s, const Truncation& t);

// Smallest d_coords that makes the window over the first n_vectors lossless.
int lossless_dim(const VectorSequence& s, int n_vectors);

// Default scan window for n vectors.
Truncation lossless_truncation(const VectorSequence& s, int n_vectors);

// True when the rule generates vectors of unbounded norm or pumps unbounded
// mass into one fixed coordinate; either obstruction rules out a finite
// synthesis bound.  Exact, not an estimate.
bool rule_is_unbounded(const CoefficientRule& rule);

}  // namespace frameforge
