#pragma once

#include "blinfty/ibl.hpp"
#include "blinfty/invariants.hpp"
#include "blinfty/mc.hpp"
#include "blinfty/structures.hpp"

#include <json.hpp>

#include <string>

namespace blinfty::io {

using json = nlohmann::ordered_json;

/// Canonical on-disk form: 2-space indent plus trailing newline. All saves
/// go through this so reloads are byte-identical.
std::string dump(const json& j);
json load_file(const std::string& path);
void save_file(const std::string& path, const json& j);

json coeff_spec_to_json(const CoeffSpec& spec);
CoeffSpec coeff_spec_from_json(const json& j);

json coefficient_to_json(const Coefficient& c);
Coefficient coefficient_from_json(const json& j, const CoeffSpec& spec);

json word_to_json(const GeneratorTable& table, const Word& w);
json sentence_to_json(const GeneratorTable& table, const Sentence& s);
json expression_to_json(const GeneratorTable& table, const Expression& e);
Expression expression_from_json(const json& j, const GeneratorTable& table,
                                const CoeffSpec& spec);

json component_to_json(const GeneratorTable& in_table, const GeneratorTable& out_table,
                       const ComponentMap& c);
ComponentMap component_from_json(const json& j, const GeneratorTable& in_table,
                                 const GeneratorTable& out_table, const CoeffSpec& spec);

json algebra_to_json(const BLAlgebra& A);
BLAlgebra algebra_from_json(const json& j);
json ibl_algebra_to_json(const IBLAlgebra& A);
IBLAlgebra ibl_algebra_from_json(const json& j);

json morphism_to_json(const BLMorphism& f);
BLMorphism morphism_from_json(const json& j);

json augmentation_to_json(const GeneratorTable& table, const Augmentation& eps);
Augmentation augmentation_from_json(const json& j, const GeneratorTable& table,
                                    const CoeffSpec& spec);

json pointed_to_json(const GeneratorTable& table, const PointedMap& P);
PointedMap pointed_from_json(const json& j, const GeneratorTable& table, const CoeffSpec& spec);

json mc_to_json(const GeneratorTable& table, const MCElement& mc);
MCElement mc_from_json(const json& j, const GeneratorTable& table, const CoeffSpec& spec);
json pointed_mc_to_json(const GeneratorTable& table, const PointedMCElement& mc);
PointedMCElement pointed_mc_from_json(const json& j, const GeneratorTable& table,
                                      const CoeffSpec& spec);

json truncation_to_json(const Truncation& t);
Truncation truncation_from_json(const json& j);

json report_to_json(const GeneratorTable& table, const VerificationReport& r);
json torsion_to_json(const GeneratorTable& table, const TorsionResult& r);
json order_to_json(const GeneratorTable& table, const OrderResult& r, const char* kind);
json spectral_to_json(const GeneratorTable& table, const SpectralResult& r);
json grid_to_json(const GeneratorTable& table, const GridTorsionResult& r);

/// Witness files replayable by the CLI.
json witness_file(const GeneratorTable& table, const std::string& claim, const json& payload);

} // namespace blinfty::io
