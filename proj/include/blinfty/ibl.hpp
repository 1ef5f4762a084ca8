#pragma once

#include "blinfty/structures.hpp"

namespace blinfty {

/// Genus-graded algebra: components p^{k,l,g} with l = 0 and/or g > 0
/// permitted; hbar-graded coefficients.
struct IBLAlgebra {
    GeneratorTable table;
    std::vector<ComponentMap> components;
    CoeffSpec spec; // must carry hbar
    bool weight_homogeneous = false;
    int support_bound = INT_MAX;

    std::vector<const ComponentMap*> component_ptrs() const;
    bool curved() const; // any l = 0 support entry
    void validate() const;
    BLAlgebra as_bl_carrier() const; // same data viewed for hat assembly
};

struct GridTorsionResult {
    bool found = false;
    bool degenerate = false; // n > k: hbar^n is zero in the quotient
    int n = 0, m = 0, k = 0;
    Expression witness;
    Truncation bounds;
};

/// Second formulation: hat_p squared on EV[[hbar]] basis sentences.
VerificationReport verify_ibl(const IBLAlgebra& A, const Truncation& t, bool use_parallel = true);

/// First formulation: the single-word assembly with hbar^{k+g-1} powers,
/// implemented independently of the EV route.
VerificationReport verify_ibl_sv(const IBLAlgebra& A, const Truncation& t,
                                 bool use_parallel = true);

/// Single-word hat operator of the first formulation (exposed for tests).
Expression sv_hat(const IBLAlgebra& A, const Expression& x);

/// p2 blocks: the two-level maps of signature (a, b, genus), extracted
/// recursively from the single-word square. All vanish exactly on a valid
/// algebra; the first nonzero block labels a failing one.
struct P2Block {
    int a = 0, b = 0, genus = 0;
    Word input;
    Expression value;
};
std::optional<P2Block> first_nonzero_p2_block(const IBLAlgebra& A, const Truncation& t);

/// Strips genus > 0 components and the hbar grading; asserts the result
/// passes verify_bl within t.
BLAlgebra genus0_projection(const IBLAlgebra& A, const Truncation& t);

/// Solves pi_k hat_p(x) = hbar^n over E^{m+1}V[[hbar]]_k within t.
GridTorsionResult grid_torsion(const IBLAlgebra& A, int n, int m, int k_cap, const Truncation& t);

/// hbar^m C_{m+1}(x): merges each sentence into one word with the
/// compensated hbar power; refuses when the precondition hat_p_G(x) = hbar^n
/// fails, and re-verifies hat_p(result) = hbar^{n+m}.
struct CmTransformResult {
    Expression witness; // in SV[[hbar]]
    VerificationReport recheck;
};
CmTransformResult cm_transform(const IBLAlgebra& A, const Expression& x, int n, int m,
                               const Truncation& t);

/// C_m chain-map property on S^i SV[[hbar]] for i <= m, checked through the
/// hbar^{m-1}-shifted form so no negative powers appear.
VerificationReport cm_chain_check(const IBLAlgebra& A, int m, const Truncation& t);

/// Grid survey: searches (n, m)_k over the truncation grid, and for every
/// witness found re-verifies the implied (n, m)_{k-1} and (n+m, 0)_k
/// witnesses.
struct GridSurveyEntry {
    int n, m, k;
    bool found = false;
    bool degenerate = false;
    bool projection_ok = false; // (n,m)_{k-1} via witness projection
    bool cm_ok = false;         // (n+m,0)_k via cm_transform
};
std::vector<GridSurveyEntry> grid_properties_check(const IBLAlgebra& A, const Truncation& t);

/// hbar width of an expression: least hbar power present (+1 convention is
/// left to callers); -1 for zero.
int hbar_width(const Expression& x);

} // namespace blinfty
