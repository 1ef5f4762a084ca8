#include "blinfty/io.hpp"

#include <fstream>

namespace blinfty::io {

std::string dump(const json& j) {
    return j.dump(2) + "\n";
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw argument_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw argument_error("cannot write " + path);
    out << dump(j);
}

namespace {

std::string rat(const Rational& r) {
    return r.str();
}

Rational unrat(const json& j) {
    if (!j.is_string()) throw argument_error("expected a rational string");
    return Rational::parse(j.get<std::string>());
}

json novikov_to_json(const NovikovElem& n) {
    json arr = json::array();
    for (const auto& t : n.terms()) arr.push_back(json{{"c", rat(t.coeff)}, {"t", rat(t.exponent)}});
    return arr;
}

NovikovElem novikov_from_json(const json& j, const CoeffSpec& spec) {
    NovikovElem n(spec.cutoff, spec.field_mode());
    for (const auto& term : j) n.add_term(unrat(term.at("c")), unrat(term.at("t")));
    return n;
}

} // namespace

json coeff_spec_to_json(const CoeffSpec& spec) {
    json j;
    switch (spec.base) {
        case CoeffSpec::Base::rational: j["coefficients"] = "rational"; break;
        case CoeffSpec::Base::novikov_ring: j["coefficients"] = "novikov-ring"; break;
        case CoeffSpec::Base::novikov_field: j["coefficients"] = "novikov-field"; break;
    }
    j["cutoff"] = spec.cutoff ? json(rat(*spec.cutoff)) : json(nullptr);
    j["hbar"] = spec.hbar;
    j["genus_cap"] = spec.genus_cap;
    return j;
}

CoeffSpec coeff_spec_from_json(const json& j) {
    CoeffSpec spec;
    std::string base = j.at("coefficients").get<std::string>();
    if (base == "rational")
        spec.base = CoeffSpec::Base::rational;
    else if (base == "novikov-ring")
        spec.base = CoeffSpec::Base::novikov_ring;
    else if (base == "novikov-field")
        spec.base = CoeffSpec::Base::novikov_field;
    else
        throw argument_error("unknown coefficient mode " + base);
    if (j.contains("cutoff") && !j.at("cutoff").is_null()) spec.cutoff = unrat(j.at("cutoff"));
    if (j.contains("hbar")) spec.hbar = j.at("hbar").get<bool>();
    if (j.contains("genus_cap")) spec.genus_cap = j.at("genus_cap").get<int>();
    return spec;
}

json coefficient_to_json(const Coefficient& c) {
    const auto& spec = c.spec();
    if (spec.hbar) {
        json obj = json::object();
        for (const auto& [g, nov] : c.hbar().coeffs())
            obj[std::to_string(g)] = novikov_to_json(nov);
        return obj;
    }
    if (spec.base == CoeffSpec::Base::rational) return rat(c.rational());
    return novikov_to_json(c.novikov());
}

Coefficient coefficient_from_json(const json& j, const CoeffSpec& spec) {
    if (spec.hbar) {
        CoeffSpec base = spec;
        base.hbar = false;
        HbarSeries h(spec.genus_cap);
        for (auto it = j.begin(); it != j.end(); ++it)
            h.add_at(std::stoi(it.key()), novikov_from_json(it.value(), base));
        return Coefficient::from_hbar(h, spec);
    }
    if (spec.base == CoeffSpec::Base::rational)
        return Coefficient::from_rational(unrat(j), spec);
    return Coefficient::from_novikov(novikov_from_json(j, spec), spec);
}

json word_to_json(const GeneratorTable& table, const Word& w) {
    json arr = json::array();
    for (int g : w.letters) arr.push_back(table.at(g).id);
    return arr;
}

namespace {

Signed<Word> word_from_json(const json& j, const GeneratorTable& table) {
    std::vector<std::string> ids;
    for (const auto& id : j) ids.push_back(id.get<std::string>());
    return canonicalize_word_ids(table, ids);
}

} // namespace

json sentence_to_json(const GeneratorTable& table, const Sentence& s) {
    json arr = json::array();
    for (const auto& w : s.words) arr.push_back(word_to_json(table, w));
    return arr;
}

json expression_to_json(const GeneratorTable& table, const Expression& e) {
    json arr = json::array();
    for (const auto& [s, c] : e.terms())
        arr.push_back(json{{"s", sentence_to_json(table, s)}, {"c", coefficient_to_json(c)}});
    return arr;
}

Expression expression_from_json(const json& j, const GeneratorTable& table,
                                const CoeffSpec& spec) {
    Expression e(spec);
    for (const auto& term : j) {
        std::vector<std::pair<int, Word>> words;
        bool dead = false;
        for (const auto& wj : term.at("s")) {
            auto w = word_from_json(wj, table);
            if (w.is_zero()) {
                dead = true;
                break;
            }
            words.emplace_back(w.sign, std::move(w.value));
        }
        if (dead) continue;
        auto s = canonicalize_sentence(std::move(words));
        if (s.is_zero()) continue;
        Coefficient c = coefficient_from_json(term.at("c"), spec).scaled(Rational(s.sign));
        e.add(s.value, c);
    }
    return e;
}

namespace {

const char* kind_name(ComponentKind k) {
    switch (k) {
        case ComponentKind::structure: return "structure";
        case ComponentKind::morphism: return "morphism";
        case ComponentKind::pointed: return "pointed";
        case ComponentKind::augmentation: return "augmentation";
        case ComponentKind::scalar_shift: return "scalar-shift";
    }
    return "?";
}

ComponentKind kind_from_name(const std::string& s) {
    if (s == "structure") return ComponentKind::structure;
    if (s == "morphism") return ComponentKind::morphism;
    if (s == "pointed") return ComponentKind::pointed;
    if (s == "augmentation") return ComponentKind::augmentation;
    if (s == "scalar-shift") return ComponentKind::scalar_shift;
    throw argument_error("unknown component kind " + s);
}

} // namespace

json component_to_json(const GeneratorTable& in_table, const GeneratorTable& out_table,
                       const ComponentMap& c) {
    json j;
    j["kind"] = kind_name(c.kind);
    j["arity"] = c.arity;
    j["genus"] = c.genus;
    j["shift"] = c.shift;
    if (c.tag_mask != 0) {
        json tags = json::array();
        for (int b = 0; b < 32; ++b)
            if (c.tag_mask & (1u << b)) tags.push_back(b + 1);
        j["tags"] = tags;
    }
    json support = json::array();
    for (const auto& [key, expr] : c.support)
        support.push_back(json{{"in", word_to_json(in_table, key)},
                               {"out", expression_to_json(out_table, expr)}});
    j["support"] = support;
    return j;
}

ComponentMap component_from_json(const json& j, const GeneratorTable& in_table,
                                 const GeneratorTable& out_table, const CoeffSpec& spec) {
    ComponentMap c;
    c.kind = kind_from_name(j.at("kind").get<std::string>());
    c.arity = j.at("arity").get<int>();
    if (j.contains("genus")) c.genus = j.at("genus").get<int>();
    c.shift = j.at("shift").get<int>();
    if (j.contains("tags"))
        for (const auto& tag : j.at("tags")) c.tag_mask |= 1u << (tag.get<int>() - 1);
    for (const auto& entry : j.at("support")) {
        auto key = word_from_json(entry.at("in"), in_table);
        if (key.is_zero()) throw argument_error("support key is the zero word");
        Expression out = expression_from_json(entry.at("out"), out_table, spec)
                             .scaled(Rational(key.sign));
        if (out.is_zero()) continue;
        auto [it, fresh] = c.support.emplace(key.value, out);
        if (!fresh) throw argument_error("duplicate support key");
    }
    c.validate(in_table, out_table, spec);
    return c;
}

namespace {

json generators_to_json(const GeneratorTable& table) {
    json arr = json::array();
    for (const auto& g : table.all()) {
        json gj;
        gj["id"] = g.id;
        gj["parity"] = g.parity;
        if (g.degree) gj["degree"] = *g.degree;
        gj["weight"] = rat(g.weight);
        arr.push_back(gj);
    }
    return arr;
}

GeneratorTable generators_from_json(const json& j) {
    std::vector<Generator> gens;
    for (const auto& gj : j) {
        Generator g;
        g.id = gj.at("id").get<std::string>();
        g.parity = gj.at("parity").get<int>();
        if (gj.contains("degree") && !gj.at("degree").is_null())
            g.degree = gj.at("degree").get<long long>();
        if (gj.contains("weight")) g.weight = unrat(gj.at("weight"));
        gens.push_back(std::move(g));
    }
    return GeneratorTable(std::move(gens));
}

} // namespace

json algebra_to_json(const BLAlgebra& A) {
    json j;
    j["type"] = "bl-algebra";
    for (auto& [k, v] : coeff_spec_to_json(A.spec).items()) j[k] = v;
    j["weight_homogeneous"] = A.weight_homogeneous;
    j["generators"] = generators_to_json(A.table);
    json comps = json::array();
    for (const auto& c : A.components) comps.push_back(component_to_json(A.table, A.table, c));
    j["components"] = comps;
    return j;
}

BLAlgebra algebra_from_json(const json& j) {
    BLAlgebra A;
    A.spec = coeff_spec_from_json(j);
    if (j.contains("weight_homogeneous"))
        A.weight_homogeneous = j.at("weight_homogeneous").get<bool>();
    A.table = generators_from_json(j.at("generators"));
    for (const auto& cj : j.at("components"))
        A.components.push_back(component_from_json(cj, A.table, A.table, A.spec));
    A.validate();
    return A;
}

json ibl_algebra_to_json(const IBLAlgebra& A) {
    json j;
    j["type"] = "ibl-algebra";
    for (auto& [k, v] : coeff_spec_to_json(A.spec).items()) j[k] = v;
    j["weight_homogeneous"] = A.weight_homogeneous;
    j["generators"] = generators_to_json(A.table);
    json comps = json::array();
    for (const auto& c : A.components) comps.push_back(component_to_json(A.table, A.table, c));
    j["components"] = comps;
    return j;
}

IBLAlgebra ibl_algebra_from_json(const json& j) {
    IBLAlgebra A;
    A.spec = coeff_spec_from_json(j);
    if (!A.spec.hbar) throw argument_error("IBL algebra files need hbar coefficients");
    if (j.contains("weight_homogeneous"))
        A.weight_homogeneous = j.at("weight_homogeneous").get<bool>();
    A.table = generators_from_json(j.at("generators"));
    for (const auto& cj : j.at("components"))
        A.components.push_back(component_from_json(cj, A.table, A.table, A.spec));
    A.validate();
    return A;
}

json morphism_to_json(const BLMorphism& f) {
    json j;
    j["type"] = "bl-morphism";
    j["source"] = algebra_to_json(f.source);
    j["target"] = algebra_to_json(f.target);
    json comps = json::array();
    for (const auto& c : f.components)
        comps.push_back(component_to_json(f.source.table, f.target.table, c));
    j["components"] = comps;
    return j;
}

BLMorphism morphism_from_json(const json& j) {
    BLMorphism f;
    f.source = algebra_from_json(j.at("source"));
    f.target = algebra_from_json(j.at("target"));
    for (const auto& cj : j.at("components"))
        f.components.push_back(
            component_from_json(cj, f.source.table, f.target.table, f.source.spec));
    f.validate();
    return f;
}

json augmentation_to_json(const GeneratorTable& table, const Augmentation& eps) {
    json j;
    j["type"] = "augmentation";
    GeneratorTable trivial;
    json comps = json::array();
    for (const auto& c : eps.components) comps.push_back(component_to_json(table, trivial, c));
    j["components"] = comps;
    return j;
}

Augmentation augmentation_from_json(const json& j, const GeneratorTable& table,
                                    const CoeffSpec& spec) {
    Augmentation eps;
    GeneratorTable trivial;
    for (const auto& cj : j.at("components"))
        eps.components.push_back(component_from_json(cj, table, trivial, spec));
    return eps;
}

json pointed_to_json(const GeneratorTable& table, const PointedMap& P) {
    json j;
    j["type"] = "pointed-map";
    j["parity"] = P.parity;
    json comps = json::array();
    for (const auto& c : P.components) comps.push_back(component_to_json(table, table, c));
    j["components"] = comps;
    return j;
}

PointedMap pointed_from_json(const json& j, const GeneratorTable& table, const CoeffSpec& spec) {
    PointedMap P;
    P.parity = j.at("parity").get<int>();
    for (const auto& cj : j.at("components"))
        P.components.push_back(component_from_json(cj, table, table, spec));
    P.validate();
    return P;
}

json mc_to_json(const GeneratorTable& table, const MCElement& mc) {
    json j;
    j["type"] = "mc-element";
    j["min_exponent"] = mc.is_zero() ? json(nullptr) : json(rat(mc.min_exponent()));
    j["value"] = expression_to_json(table, mc.value);
    return j;
}

MCElement mc_from_json(const json& j, const GeneratorTable& table, const CoeffSpec& spec) {
    MCElement mc;
    mc.value = expression_from_json(j.at("value"), table, spec);
    return mc;
}

json pointed_mc_to_json(const GeneratorTable& table, const PointedMCElement& mc) {
    json j;
    j["type"] = "pointed-mc-element";
    j["parity"] = mc.parity;
    j["value"] = expression_to_json(table, mc.value);
    return j;
}

PointedMCElement pointed_mc_from_json(const json& j, const GeneratorTable& table,
                                      const CoeffSpec& spec) {
    PointedMCElement mc;
    mc.parity = j.at("parity").get<int>();
    mc.value = expression_from_json(j.at("value"), table, spec);
    mc.validate();
    return mc;
}

json truncation_to_json(const Truncation& t) {
    json j;
    j["max_word_len"] = t.max_word_len;
    j["max_sentence_len"] = t.max_sentence_len;
    j["weight_cutoff"] = t.weight_cutoff ? json(rat(*t.weight_cutoff)) : json(nullptr);
    j["genus_cap"] = t.genus_cap;
    if (t.strict_length) j["strict_length"] = true;
    return j;
}

Truncation truncation_from_json(const json& j) {
    Truncation t;
    if (j.contains("max_word_len")) t.max_word_len = j.at("max_word_len").get<int>();
    if (j.contains("max_sentence_len")) t.max_sentence_len = j.at("max_sentence_len").get<int>();
    if (j.contains("weight_cutoff")) {
        if (j.at("weight_cutoff").is_null())
            t.weight_cutoff = {};
        else
            t.weight_cutoff = unrat(j.at("weight_cutoff"));
    }
    if (j.contains("genus_cap")) t.genus_cap = j.at("genus_cap").get<int>();
    if (j.contains("strict_length")) t.strict_length = j.at("strict_length").get<bool>();
    t.validate();
    return t;
}

json report_to_json(const GeneratorTable& table, const VerificationReport& r) {
    json j;
    j["status"] = VerificationReport::status_name(r.status);
    if (r.witness) j["witness"] = sentence_to_json(table, *r.witness);
    if (r.residue) j["residue"] = expression_to_json(table, *r.residue);
    j["bounds"] = truncation_to_json(r.bounds);
    j["note"] = r.note;
    return j;
}

json torsion_to_json(const GeneratorTable& table, const TorsionResult& r) {
    json j;
    j["status"] = r.found ? "exact_at" : "not_found";
    if (r.found) {
        j["k"] = r.k;
        j["torsion"] = r.torsion_value();
        j["witness"] = expression_to_json(table, r.witness);
    }
    j["bounds"] = truncation_to_json(r.bounds);
    return j;
}

json order_to_json(const GeneratorTable& table, const OrderResult& r, const char* kind) {
    json j;
    j["kind"] = kind;
    j["status"] = r.found ? "order" : "not_found";
    if (r.found) {
        j["k"] = r.k;
        j["witness"] = expression_to_json(table, r.witness);
    }
    j["bounds"] = truncation_to_json(r.bounds);
    return j;
}

json spectral_to_json(const GeneratorTable& table, const SpectralResult& r) {
    json j;
    j["status"] = r.found ? "value" : "not_found";
    if (r.found) {
        j["value"] = rat(r.value);
        j["witness"] = expression_to_json(table, r.witness);
    }
    j["bounds"] = truncation_to_json(r.bounds);
    return j;
}

json grid_to_json(const GeneratorTable& table, const GridTorsionResult& r) {
    json j;
    j["status"] = r.found ? (r.degenerate ? "degenerate" : "witness") : "not_found";
    j["n"] = r.n;
    j["m"] = r.m;
    j["k"] = r.k;
    if (r.found && !r.degenerate) j["witness"] = expression_to_json(table, r.witness);
    j["bounds"] = truncation_to_json(r.bounds);
    return j;
}

json witness_file(const GeneratorTable&, const std::string& claim, const json& payload) {
    json j;
    j["type"] = "witness";
    j["claim"] = claim;
    j["payload"] = payload;
    return j;
}

} // namespace blinfty::io
