#pragma once

#include "blinfty/component.hpp"

#include <vector>

namespace blinfty {

/// Shared bookkeeping flags for one assembly run.
struct AssembleStats {
    bool genus_truncated = false; // a term fell past the genus cap
};

/// One admissible gluing of a single component into a sentence: the chosen
/// letter occurrences, the arrangement sign (operator crossings included),
/// and the genus increment of the gluing.
struct Gluing {
    const ComponentMap* component = nullptr;
    std::vector<std::pair<int, int>> picks; // (word index, letter position), ascending
    int sign = 1;
    int genus_increment = 0;
    int words_touched = 0;
};

/// Lists every gluing of one component into a canonical sentence under the
/// one-letter-per-chosen-word rule (BL) or the relaxed rule (IBL).
std::vector<Gluing> enumerate_gluings(const ComponentMap& comp, const GeneratorTable& table,
                                      const Sentence& s, bool ibl_mode = false);

/// hat-p: sum over components and gluings, one component per term. Components
/// must have genus 0 unless the coefficient spec is hbar-graded.
Expression assemble_hat_p(const std::vector<const ComponentMap*>& comps,
                          const GeneratorTable& table, const Sentence& s, const Coefficient& c);
Expression assemble_hat_p(const std::vector<const ComponentMap*>& comps,
                          const GeneratorTable& table, const Expression& x);

/// hat-p with the IBL relaxation: a component may take several letters from
/// one word; cycles increment the hbar power. Requires an hbar coefficient
/// spec; terms beyond the genus cap are dropped and flagged.
Expression assemble_ibl_hat(const std::vector<const ComponentMap*>& comps,
                            const GeneratorTable& table, const Sentence& s, const Coefficient& c,
                            AssembleStats* stats = nullptr);
Expression assemble_ibl_hat(const std::vector<const ComponentMap*>& comps,
                            const GeneratorTable& table, const Expression& x,
                            AssembleStats* stats = nullptr);

/// hat-phi: partitions of all letter occurrences into applications, at most
/// one letter per word per application, acyclic incidence graph. Sentences of
/// empty words map through identically.
Expression assemble_hat_phi(const std::vector<const ComponentMap*>& comps,
                            const GeneratorTable& source, const GeneratorTable& target,
                            const Sentence& s, const Coefficient& c);
Expression assemble_hat_phi(const std::vector<const ComponentMap*>& comps,
                            const GeneratorTable& source, const GeneratorTable& target,
                            const Expression& x);

/// hat-phi with exactly one application drawn from the pointed family.
Expression assemble_hat_phi_pointed(const std::vector<const ComponentMap*>& phi,
                                    const std::vector<const ComponentMap*>& pointed,
                                    const GeneratorTable& source, const GeneratorTable& target,
                                    const Sentence& s, const Coefficient& c);
Expression assemble_hat_phi_pointed(const std::vector<const ComponentMap*>& phi,
                                    const std::vector<const ComponentMap*>& pointed,
                                    const GeneratorTable& source, const GeneratorTable& target,
                                    const Expression& x);

/// hat-p_{k bullet}: one level realizing each of the `num_tags` constraint
/// tags exactly once, via one multi-constraint component or several disjoint
/// single-constraint applications. Pointed components carry tag masks.
Expression assemble_multi_pointed(const std::vector<const ComponentMap*>& pointed, int num_tags,
                                  const GeneratorTable& table, const Sentence& s,
                                  const Coefficient& c);
Expression assemble_multi_pointed(const std::vector<const ComponentMap*>& pointed, int num_tags,
                                  const GeneratorTable& table, const Expression& x);

/// Builds a canonical expression term from a raw presentation (ordered words
/// of ordered letters), multiplying in the canonicalization signs.
Expression expression_from_presentation(const GeneratorTable& table, const CoeffSpec& spec,
                                        const std::vector<std::vector<std::string>>& word_seqs,
                                        const Coefficient& c);

} // namespace blinfty
