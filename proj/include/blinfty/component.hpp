#pragma once

#include "blinfty/space.hpp"

#include <map>
#include <vector>

namespace blinfty {

enum class ComponentKind { structure, morphism, pointed, augmentation, scalar_shift };

/// One finitely supported operation from words of a fixed length to word
/// expressions. The support maps canonical words of length `arity` to
/// expressions over single-word sentences (the empty word encodes a scalar
/// output).
struct ComponentMap {
    ComponentKind kind = ComponentKind::structure;
    int arity = 1;
    int genus = 0;          // structure kind only; 0 otherwise
    int shift = 0;          // parity shift in Z/2
    unsigned tag_mask = 0;  // constraint tags for pointed families (bit i = tag i+1)
    std::map<Word, Expression> support;

    bool supports(const Word& key) const { return support.count(key) > 0; }
    const Expression* find(const Word& key) const {
        auto it = support.find(key);
        return it == support.end() ? nullptr : &it->second;
    }

    /// Checks key lengths, canonical keys, single-word outputs, and the
    /// declared parity shift on every support entry.
    void validate(const GeneratorTable& in_table, const GeneratorTable& out_table,
                  const CoeffSpec& spec) const;
};

/// Builds the identity component phi^{1,1}(v) = v over a generator table.
ComponentMap identity_component(const GeneratorTable& table, const CoeffSpec& spec);

} // namespace blinfty
