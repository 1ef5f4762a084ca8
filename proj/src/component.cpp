#include "blinfty/component.hpp"

namespace blinfty {

void ComponentMap::validate(const GeneratorTable& in_table, const GeneratorTable& out_table,
                            const CoeffSpec& spec) const {
    if (arity < 1) throw argument_error("component arity must be >= 1");
    if (genus < 0) throw argument_error("component genus must be >= 0");
    if (kind != ComponentKind::structure && genus != 0)
        throw argument_error("nonzero genus on a non-structure component");
    if (shift != 0 && shift != 1) throw argument_error("parity shift must be 0 or 1");
    for (const auto& [key, expr] : support) {
        if (key.length() != arity) throw argument_error("support key length differs from arity");
        auto canon = canonicalize_word(in_table, key.letters);
        if (canon.is_zero() || canon.sign != 1 || canon.value != key)
            throw argument_error("support key is not canonical");
        if (expr.spec() != spec) throw config_error("support expression mode mismatch");
        for (const auto& [s, c] : expr.terms()) {
            if (s.length() != 1) throw argument_error("support output must be a single word");
            auto w = canonicalize_word(out_table, s.words[0].letters);
            if (w.is_zero() || w.sign != 1 || w.value != s.words[0])
                throw argument_error("support output word is not canonical");
            if (s.words[0].parity != (key.parity + shift) % 2)
                throw argument_error("support entry violates the declared parity shift");
        }
    }
}

ComponentMap identity_component(const GeneratorTable& table, const CoeffSpec& spec) {
    ComponentMap id;
    id.kind = ComponentKind::morphism;
    id.arity = 1;
    id.shift = 0;
    for (int g = 0; g < table.size(); ++g) {
        Word w;
        w.letters = {g};
        w.parity = table.at(g).parity;
        w.weight = table.at(g).weight;
        id.support.emplace(w, Expression::term(singleton_sentence(w), Coefficient::one(spec)));
    }
    return id;
}

} // namespace blinfty
