#pragma once

#include "blinfty/assemble.hpp"
#include "blinfty/basis.hpp"

#include <climits>
#include <functional>
#include <optional>
#include <string>

namespace blinfty {

/// Bounds every verification and semidecision runs within.
struct Truncation {
    int max_word_len = 4;     // L
    int max_sentence_len = 4; // K
    Cutoff weight_cutoff = Rational(3);
    int genus_cap = 2; // G
    bool strict_length = false;

    void validate() const;
};

struct BLAlgebra {
    GeneratorTable table;
    std::vector<ComponentMap> components;
    CoeffSpec spec;
    bool weight_homogeneous = false;
    /// Arities above this bound are unknown, not zero (set by extraction).
    int support_bound = INT_MAX;

    std::vector<const ComponentMap*> component_ptrs() const;
    void validate() const;
};

/// The trivial algebra 0 in the same coefficient mode.
BLAlgebra trivial_algebra(const CoeffSpec& spec);

struct BLMorphism {
    BLAlgebra source;
    BLAlgebra target;
    std::vector<ComponentMap> components;
    int support_bound = INT_MAX;

    std::vector<const ComponentMap*> component_ptrs() const;
    void validate() const;
};

BLMorphism identity_morphism(const BLAlgebra& A);

/// Augmentation: component maps eps^k into scalars, i.e. a morphism to 0.
struct Augmentation {
    std::vector<ComponentMap> components;

    std::vector<const ComponentMap*> component_ptrs() const;
    bool is_zero() const;
    Augmentation negated() const;
    BLMorphism as_morphism(const BLAlgebra& A) const;
};

struct PointedMap {
    std::vector<ComponentMap> components;
    int parity = 0; // |hat p_bullet|

    std::vector<const ComponentMap*> component_ptrs() const;
    void validate() const;
};

struct VerificationReport {
    enum class Status { pass, fail, inconclusive };
    Status status = Status::pass;
    std::optional<Sentence> witness;
    std::optional<Expression> residue;
    Truncation bounds;
    std::string note;

    bool passed() const { return status == Status::pass; }
    static const char* status_name(Status s);
};

/// Operators on expressions.
Expression hat_p(const BLAlgebra& A, const Expression& x);
Expression hat_phi(const BLMorphism& f, const Expression& x);
Expression hat_pointed(const BLAlgebra& A, const PointedMap& P, const Expression& x);
Expression hat_multi_pointed(const BLAlgebra& A, const std::vector<const ComponentMap*>& pointed,
                             int num_tags, const Expression& x);

/// F_eps with components Id and sgn * eps^k, assembled morphism-style.
Expression f_epsilon_hat(const BLAlgebra& A, const Augmentation& eps, int sgn,
                         const Expression& x);

/// Conjugated operators F_eps o op o F_{-eps}.
Expression conjugate_by_f(const BLAlgebra& A, const Augmentation& eps,
                          const std::function<Expression(const Expression&)>& op,
                          const Expression& x);

/// Projection helpers.
Expression project_sentence_length(const Expression& x, int len); // keep length == len
Expression project_single_words(const Expression& x);             // pi_1: length-1 sentences
Coefficient project_unit(const Expression& x); // pi_Q: coefficient of the empty-word sentence
Expression project_bar_model(const Expression& x); // keep sentences of single-letter words
Expression project_max_word_len(const Expression& x, int m); // pi_m: kill words longer than m

/// Deterministic residue sweep over the basis within bounds; parallel across
/// sentences with a serial reference path (use_parallel = false).
VerificationReport sweep_residues(const GeneratorTable& table, const Truncation& t,
                                  int support_bound, const CoeffSpec& spec,
                                  const std::function<Expression(const Sentence&)>& residue,
                                  bool use_parallel = true);

VerificationReport verify_bl(const BLAlgebra& A, const Truncation& t, bool use_parallel = true);
VerificationReport verify_morphism(const BLMorphism& f, const Truncation& t,
                                   bool use_parallel = true);
VerificationReport verify_augmentation(const BLAlgebra& A, const Augmentation& eps,
                                       const Truncation& t, bool use_parallel = true);
VerificationReport verify_pointed(const BLAlgebra& A, const PointedMap& P, const Truncation& t,
                                  bool use_parallel = true);
/// Compatibility of (P on f.source, Q on f.target) through f with pointed
/// morphism components f_dot (Definition-style graded commutation).
VerificationReport verify_compat(const BLMorphism& f, const std::vector<ComponentMap>& f_dot,
                                 int f_dot_parity, const PointedMap& P, const PointedMap& Q,
                                 const Truncation& t, bool use_parallel = true);

/// Extracts the component family of a hat-shaped operator by evaluating it on
/// bar-model sentences of words up to max_arity and projecting to single-word
/// outputs. Entries above max_arity are unknown, not zero.
std::vector<ComponentMap> extract_components(
    const std::function<Expression(const Expression&)>& op, const GeneratorTable& in_table,
    const GeneratorTable& out_table, const CoeffSpec& spec, int max_arity, ComponentKind kind,
    int shift, const Cutoff& key_weight_bound = {});

/// Composition g o f via stacked evaluation on basis words (component
/// extraction within the truncation).
BLMorphism compose(const BLMorphism& g, const BLMorphism& f, const Truncation& t);

struct LinearizeResult {
    std::optional<BLAlgebra> algebra;
    VerificationReport eps_check; // why linearization was refused when absent
    VerificationReport bl_check;  // verify_bl of the linearized structure
};

/// Linearized structure p_eps extracted from F_eps o hat_p o F_{-eps};
/// refuses when eps fails the augmentation identity. Asserts p^{k,0}_eps = 0.
LinearizeResult linearize(const BLAlgebra& A, const Augmentation& eps, const Truncation& t);

} // namespace blinfty
