#pragma once

#include "blinfty/solver.hpp"
#include "blinfty/structures.hpp"

namespace blinfty {

/// Torsion semidecision: exact_at(k) certifies torsion k-1 with a witness
/// satisfying hat_p(witness) = 1; not_found only means "within these bounds".
struct TorsionResult {
    bool found = false;
    int k = 0;
    Expression witness;
    Truncation bounds;
    int torsion_value() const { return k - 1; }
};

struct OrderResult {
    bool found = false;
    int k = 0;
    Expression witness;
    Truncation bounds;
};

struct SpectralResult {
    bool found = false;
    Rational value;
    Expression witness;
    Truncation bounds;
};

/// Linearized bar differential and pointed functional on the bar model.
struct EllOperators {
    std::function<Expression(const Expression&)> ell;      // ell_eps
    std::function<Coefficient(const Expression&)> ell_dot; // ell_{bullet,eps}
};

/// Solves sum x_j columns[j] = target (plus an optional scalar constraint
/// sum x_j functional[j] = target_functional) exactly over Q; rows are the
/// (sentence, exponent, genus) atoms of the expressions.
std::optional<std::vector<Rational>> solve_expression_system(
    const std::vector<Expression>& columns, const Expression& target,
    const std::vector<Coefficient>* functionals = nullptr,
    const Coefficient* target_functional = nullptr);

/// Basis elements of the weight stratum: T^{a - weight(s)} s for each
/// sentence, dropped when the exponent is negative in ring mode. In rational
/// mode a must be zero and the sentences pass through unshifted.
std::vector<Expression> stratified_columns(const std::vector<Sentence>& basis,
                                           const Rational& target_weight, const CoeffSpec& spec,
                                           bool weight_homogeneous);

TorsionResult torsion(const BLAlgebra& A, const Truncation& t);

EllOperators ell_differentials(const BLAlgebra& A, const Augmentation& eps, const PointedMap& P);

OrderResult order(const BLAlgebra& A, const Augmentation& eps, const PointedMap& P,
                  const Truncation& t);

OrderResult tilde_order(const BLAlgebra& A, const Augmentation& eps, const PointedMap& P,
                        const Truncation& t);

/// Multi-point order O(V, eps, p_{m bullet}) over the double bar filtration,
/// with the width-m projection as differential.
OrderResult multipoint_order(const BLAlgebra& A, const Augmentation& eps,
                             const std::vector<ComponentMap>& multi_pointed, int m,
                             const Truncation& t);

/// Spectral invariant over the Novikov ring (weight-homogeneous mode):
/// smallest exponent a with T^a in the image of the k-point functional on
/// closed classes of sentence length <= l.
SpectralResult spectral_invariant(const BLAlgebra& A, const Augmentation& eps,
                                  const std::vector<ComponentMap>& multi_pointed, int num_tags,
                                  int l, const Truncation& t);

/// Pushes a torsion witness through a morphism and re-verifies it on the
/// target (the constructive side of torsion monotonicity).
TorsionResult push_torsion_witness(const BLMorphism& f, const TorsionResult& src,
                                   const Truncation& t);

} // namespace blinfty
