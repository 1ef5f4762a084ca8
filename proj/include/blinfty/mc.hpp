#pragma once

#include "blinfty/structures.hpp"

namespace blinfty {

/// Maurer-Cartan element: degree-0 expression over words (length-1
/// sentences) with every coefficient exponent positive. The constant term is
/// the empty-word entry and can be stripped.
struct MCElement {
    Expression value;

    void validate(const Truncation& t) const;
    bool is_zero() const { return value.is_zero(); }
    /// Least coefficient exponent across all terms; requires a nonzero value.
    Rational min_exponent() const;
    MCElement without_constant() const;
    Coefficient constant_term() const;
};

/// Pointed Maurer-Cartan element of parity |p_bullet| + 1.
struct PointedMCElement {
    Expression value;
    int parity = 0;

    void validate() const;
};

/// Truncated exponential in SSV (the empty sentence included).
Expression exp_element(const MCElement& a);
/// e^a - 1: the EV part of the exponential.
Expression exp_minus_one(const MCElement& a);
/// exp_a(x) = x odot e^a.
Expression exp_map(const MCElement& a, const Expression& x);

VerificationReport verify_mc(const BLAlgebra& A, const MCElement& mc, const Truncation& t);

struct DeformStructureResult {
    BLAlgebra algebra;
    VerificationReport conjugation_check; // extracted assembly vs exp conjugation
    VerificationReport bl_check;          // hat_p_mc squared within t
};

/// Deformed structure p_mc extracted from pi_{1,l} hat_p(v odot e^mc).
DeformStructureResult deform_structure(const BLAlgebra& A, const MCElement& mc,
                                       const Truncation& t);

struct PushforwardResult {
    MCElement value;             // phi(mc), possibly with a constant term
    VerificationReport exp_check; // e^{phi(mc)} = hat_phi(e^mc)
    VerificationReport mc_check;  // phi(mc) is MC for the target
};

PushforwardResult pushforward_mc(const BLMorphism& f, const MCElement& mc, const Truncation& t);

struct DeformMorphismResult {
    BLMorphism morphism; // from p_mc to q_{phi(mc)}
    VerificationReport intertwining_check;
};

DeformMorphismResult deform_morphism(const BLMorphism& f, const MCElement& mc,
                                     const Truncation& t);

/// hat_p_bullet(e^mc - 1) = hat_p_mc(mcdot).
VerificationReport verify_pointed_mc(const BLAlgebra& A, const PointedMap& P, const MCElement& mc,
                                     const PointedMCElement& mcdot, const Truncation& t);

struct DeformPointedResult {
    PointedMap pointed;
    VerificationReport commutation_check; // pointed-map law against p_mc
};

DeformPointedResult deform_pointed(const BLAlgebra& A, const PointedMap& P, const MCElement& mc,
                                   const PointedMCElement& mcdot, const Truncation& t);

struct InducedPointedMCResult {
    PointedMCElement value; // mc'_bullet on the target
    VerificationReport pointed_mc_check;  // pointed MC law for (q_{phi(mc)}, Q)
    VerificationReport compat_check;      // deformed compatibility of the triple
};

InducedPointedMCResult induced_pointed_mc(const BLMorphism& f,
                                          const std::vector<ComponentMap>& f_dot,
                                          int f_dot_parity, const PointedMap& P,
                                          const PointedMap& Q, const MCElement& mc,
                                          const PointedMCElement& mcdot, const Truncation& t);

/// Test utility: solve hat_p_mc(mcdot) = hat_p_bullet(e^mc - 1) for mcdot by
/// exact linear algebra over the word basis within t (weight-homogeneous
/// Novikov mode). Minimal support under the deterministic basis order.
std::optional<PointedMCElement> solve_pointed_mc(const BLAlgebra& A, const PointedMap& P,
                                                 const MCElement& mc, const Truncation& t);

} // namespace blinfty
