#include "blinfty/structures.hpp"

#include "blinfty/parallel.hpp"

#include <algorithm>

namespace blinfty {

void Truncation::validate() const {
    if (max_word_len < 1 || max_sentence_len < 1 || genus_cap < 0)
        throw argument_error("truncation bounds out of range");
    if (weight_cutoff && *weight_cutoff <= Rational(0))
        throw argument_error("weight cutoff must be positive");
}

std::vector<const ComponentMap*> BLAlgebra::component_ptrs() const {
    std::vector<const ComponentMap*> ps;
    ps.reserve(components.size());
    for (const auto& c : components) ps.push_back(&c);
    return ps;
}

namespace {

// Every exponent of the coefficient must equal the weight drop key -> word.
void check_weight_homogeneous(const ComponentMap& comp) {
    for (const auto& [key, expr] : comp.support)
        for (const auto& [s, c] : expr.terms()) {
            Rational drop = key.weight - s.words[0].weight;
            if (c.spec().base == CoeffSpec::Base::rational) {
                if (!drop.is_zero())
                    throw argument_error("weight-homogeneity violated on a rational entry");
                continue;
            }
            auto check_nov = [&](const NovikovElem& n) {
                for (const auto& term : n.terms())
                    if (term.exponent != drop)
                        throw argument_error("weight-homogeneity violated in a support entry");
            };
            if (c.spec().hbar)
                for (const auto& [g, n] : c.hbar().coeffs()) check_nov(n);
            else
                check_nov(c.novikov());
        }
}

} // namespace

void BLAlgebra::validate() const {
    for (const auto& comp : components) {
        comp.validate(table, table, spec);
        if (comp.shift != 1) throw argument_error("structure components must have parity shift 1");
        if (comp.genus != 0 && !spec.hbar)
            throw argument_error("genus-graded component in a BL algebra");
        if (weight_homogeneous) check_weight_homogeneous(comp);
    }
}

BLAlgebra trivial_algebra(const CoeffSpec& spec) {
    BLAlgebra A;
    A.spec = spec;
    return A;
}

std::vector<const ComponentMap*> BLMorphism::component_ptrs() const {
    std::vector<const ComponentMap*> ps;
    ps.reserve(components.size());
    for (const auto& c : components) ps.push_back(&c);
    return ps;
}

void BLMorphism::validate() const {
    source.validate();
    target.validate();
    for (const auto& comp : components) {
        comp.validate(source.table, target.table, source.spec);
        if (comp.shift != 0) throw argument_error("morphism components must have parity shift 0");
    }
    if (source.spec != target.spec) throw config_error("morphism endpoints in different modes");
}

BLMorphism identity_morphism(const BLAlgebra& A) {
    BLMorphism f;
    f.source = A;
    f.target = A;
    f.components.push_back(identity_component(A.table, A.spec));
    return f;
}

std::vector<const ComponentMap*> Augmentation::component_ptrs() const {
    std::vector<const ComponentMap*> ps;
    for (const auto& c : components) ps.push_back(&c);
    return ps;
}

bool Augmentation::is_zero() const {
    for (const auto& c : components)
        if (!c.support.empty()) return false;
    return true;
}

Augmentation Augmentation::negated() const {
    Augmentation neg = *this;
    for (auto& comp : neg.components)
        for (auto& [key, expr] : comp.support) expr = expr.scaled(Rational(-1));
    return neg;
}

BLMorphism Augmentation::as_morphism(const BLAlgebra& A) const {
    BLMorphism f;
    f.source = A;
    f.target = trivial_algebra(A.spec);
    f.components = components;
    for (auto& c : f.components) c.kind = ComponentKind::morphism;
    return f;
}

std::vector<const ComponentMap*> PointedMap::component_ptrs() const {
    std::vector<const ComponentMap*> ps;
    for (const auto& c : components) ps.push_back(&c);
    return ps;
}

void PointedMap::validate() const {
    for (const auto& c : components)
        if (c.shift != parity)
            throw argument_error("pointed components must share the declared parity");
}

const char* VerificationReport::status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::inconclusive: return "inconclusive";
    }
    return "?";
}

Expression hat_p(const BLAlgebra& A, const Expression& x) {
    if (A.spec.hbar) return assemble_ibl_hat(A.component_ptrs(), A.table, x);
    return assemble_hat_p(A.component_ptrs(), A.table, x);
}

Expression hat_phi(const BLMorphism& f, const Expression& x) {
    return assemble_hat_phi(f.component_ptrs(), f.source.table, f.target.table, x);
}

Expression hat_pointed(const BLAlgebra& A, const PointedMap& P, const Expression& x) {
    return assemble_hat_p(P.component_ptrs(), A.table, x);
}

Expression hat_multi_pointed(const BLAlgebra& A, const std::vector<const ComponentMap*>& pointed,
                             int num_tags, const Expression& x) {
    return assemble_multi_pointed(pointed, num_tags, A.table, x);
}

Expression f_epsilon_hat(const BLAlgebra& A, const Augmentation& eps, int sgn,
                         const Expression& x) {
    std::vector<ComponentMap> comps;
    comps.push_back(identity_component(A.table, A.spec));
    for (const auto& c : eps.components) {
        ComponentMap m = c;
        if (sgn < 0)
            for (auto& [k, e] : m.support) e = e.scaled(Rational(-1));
        comps.push_back(std::move(m));
    }
    std::vector<const ComponentMap*> ps;
    for (const auto& c : comps) ps.push_back(&c);
    return assemble_hat_phi(ps, A.table, A.table, x);
}

Expression conjugate_by_f(const BLAlgebra& A, const Augmentation& eps,
                          const std::function<Expression(const Expression&)>& op,
                          const Expression& x) {
    return f_epsilon_hat(A, eps, +1, op(f_epsilon_hat(A, eps, -1, x)));
}

Expression project_sentence_length(const Expression& x, int len) {
    return x.filtered([&](const Sentence& s) { return s.length() == len; });
}

Expression project_single_words(const Expression& x) {
    return project_sentence_length(x, 1);
}

Coefficient project_unit(const Expression& x) {
    return x.coeff_of(empty_word_sentence());
}

Expression project_bar_model(const Expression& x) {
    return x.filtered([](const Sentence& s) {
        for (const auto& w : s.words)
            if (w.length() != 1) return false;
        return true;
    });
}

Expression project_max_word_len(const Expression& x, int m) {
    return x.filtered([&](const Sentence& s) { return s.max_word_length() <= m; });
}

VerificationReport sweep_residues(const GeneratorTable& table, const Truncation& t,
                                  int support_bound, const CoeffSpec&,
                                  const std::function<Expression(const Sentence&)>& residue,
                                  bool use_parallel) {
    t.validate();
    auto words = enumerate_words(table, 0, t.max_word_len);
    auto basis = enumerate_sentences(words, 1, t.max_sentence_len);

    const int n = static_cast<int>(basis.size());
    std::vector<int> verdict(n, 0); // 0 pass, 1 fail, 2 inconclusive
    std::vector<Expression> residues(n);
    parallel_for(
        n,
        [&](int i) {
            if (basis[i].length() > support_bound) {
                verdict[i] = 2;
                return;
            }
            Expression r = residue(basis[i]);
            if (!r.is_zero()) {
                verdict[i] = 1;
                residues[i] = r;
            }
        },
        use_parallel);

    VerificationReport rep;
    rep.bounds = t;
    for (int i = 0; i < n; ++i) {
        if (verdict[i] == 1) {
            rep.status = VerificationReport::Status::fail;
            rep.witness = basis[i];
            rep.residue = residues[i];
            rep.note = "nonzero residue";
            return rep; // basis is sorted: first failure is the smallest witness
        }
    }
    for (int i = 0; i < n; ++i)
        if (verdict[i] == 2) {
            rep.status = VerificationReport::Status::inconclusive;
            rep.witness = basis[i];
            rep.note = "sentence length exceeds the known component support bound";
            return rep;
        }
    rep.status = VerificationReport::Status::pass;
    rep.note = "all residues vanish within bounds";
    return rep;
}

VerificationReport verify_bl(const BLAlgebra& A, const Truncation& t, bool use_parallel) {
    A.validate();
    if (A.spec.hbar) throw config_error("use verify_ibl for hbar-graded algebras");
    Coefficient unit = Coefficient::one(A.spec);
    return sweep_residues(
        A.table, t, A.support_bound, A.spec,
        [&](const Sentence& s) { return hat_p(A, hat_p(A, Expression::term(s, unit))); },
        use_parallel);
}

VerificationReport verify_morphism(const BLMorphism& f, const Truncation& t, bool use_parallel) {
    f.validate();
    Coefficient unit = Coefficient::one(f.source.spec);
    int bound = std::min({f.support_bound, f.source.support_bound, f.target.support_bound});
    return sweep_residues(
        f.source.table, t, bound, f.source.spec,
        [&](const Sentence& s) {
            Expression x = Expression::term(s, unit);
            return hat_phi(f, hat_p(f.source, x)) - hat_p(f.target, hat_phi(f, x));
        },
        use_parallel);
}

VerificationReport verify_augmentation(const BLAlgebra& A, const Augmentation& eps,
                                       const Truncation& t, bool use_parallel) {
    return verify_morphism(eps.as_morphism(A), t, use_parallel);
}

VerificationReport verify_pointed(const BLAlgebra& A, const PointedMap& P, const Truncation& t,
                                  bool use_parallel) {
    P.validate();
    Coefficient unit = Coefficient::one(A.spec);
    Rational sgn(P.parity % 2 == 0 ? 1 : -1);
    return sweep_residues(
        A.table, t, A.support_bound, A.spec,
        [&](const Sentence& s) {
            Expression x = Expression::term(s, unit);
            return hat_pointed(A, P, hat_p(A, x)) - hat_p(A, hat_pointed(A, P, x)).scaled(sgn);
        },
        use_parallel);
}

VerificationReport verify_compat(const BLMorphism& f, const std::vector<ComponentMap>& f_dot,
                                 int f_dot_parity, const PointedMap& P, const PointedMap& Q,
                                 const Truncation& t, bool use_parallel) {
    f.validate();
    if (P.parity != Q.parity) throw argument_error("pointed maps must share a degree");
    if (f_dot_parity % 2 != (P.parity + 1) % 2)
        throw argument_error("pointed morphism parity must be |p_bullet| + 1");
    for (const auto& c : f_dot)
        if (c.shift != f_dot_parity % 2)
            throw argument_error("pointed morphism component parity mismatch");

    std::vector<const ComponentMap*> fdot_ptrs;
    for (const auto& c : f_dot) fdot_ptrs.push_back(&c);
    auto phi_dot = [&](const Expression& x) {
        if (f_dot.empty()) return Expression::zero(x.spec());
        return assemble_hat_phi_pointed(f.component_ptrs(), fdot_ptrs, f.source.table,
                                        f.target.table, x);
    };

    Coefficient unit = Coefficient::one(f.source.spec);
    Rational sq(Q.parity % 2 == 0 ? 1 : -1);
    Rational sf(f_dot_parity % 2 == 0 ? 1 : -1);
    int bound = std::min({f.support_bound, f.source.support_bound, f.target.support_bound});
    return sweep_residues(
        f.source.table, t, bound, f.source.spec,
        [&](const Sentence& s) {
            Expression x = Expression::term(s, unit);
            Expression lhs = hat_pointed(f.target, Q, hat_phi(f, x)) -
                             hat_phi(f, hat_pointed(f.source, P, x)).scaled(sq);
            Expression rhs =
                hat_p(f.target, phi_dot(x)) - phi_dot(hat_p(f.source, x)).scaled(sf);
            return lhs - rhs;
        },
        use_parallel);
}

std::vector<ComponentMap> extract_components(
    const std::function<Expression(const Expression&)>& op, const GeneratorTable& in_table,
    const GeneratorTable&, const CoeffSpec& spec, int max_arity, ComponentKind kind,
    int shift, const Cutoff& key_weight_bound) {
    std::vector<ComponentMap> result;
    Coefficient unit = Coefficient::one(spec);
    for (int k = 1; k <= max_arity; ++k) {
        ComponentMap comp;
        comp.kind = kind;
        comp.arity = k;
        comp.shift = shift;
        for (const Word& key : enumerate_words(in_table, k, k, key_weight_bound)) {
            Expression y =
                project_single_words(op(Expression::term(word_as_bar_sentence(in_table, key), unit)));
            if (!y.is_zero()) comp.support.emplace(key, y);
        }
        if (!comp.support.empty()) result.push_back(std::move(comp));
    }
    return result;
}

BLMorphism compose(const BLMorphism& g, const BLMorphism& f, const Truncation& t) {
    if (!(f.target.table == g.source.table) || f.target.spec != g.source.spec)
        throw config_error("compose: middle algebras disagree");
    BLMorphism gf;
    gf.source = f.source;
    gf.target = g.target;
    auto op = [&](const Expression& x) { return hat_phi(g, hat_phi(f, x)); };
    gf.components = extract_components(op, f.source.table, g.target.table, f.source.spec,
                                       t.max_word_len, ComponentKind::morphism, 0);
    gf.support_bound = std::min({t.max_word_len, f.support_bound, g.support_bound,
                                 f.source.support_bound, g.target.support_bound});
    return gf;
}

LinearizeResult linearize(const BLAlgebra& A, const Augmentation& eps, const Truncation& t) {
    LinearizeResult res;
    res.eps_check = verify_augmentation(A, eps, t);
    if (!res.eps_check.passed()) return res;

    auto p_eps = [&](const Expression& x) {
        return conjugate_by_f(A, eps, [&](const Expression& y) { return hat_p(A, y); }, x);
    };
    BLAlgebra L;
    L.table = A.table;
    L.spec = A.spec;
    L.weight_homogeneous = A.weight_homogeneous;
    L.components = extract_components(p_eps, A.table, A.table, A.spec, t.max_word_len,
                                      ComponentKind::structure, 1);
    L.support_bound = std::min(t.max_word_len, A.support_bound);

    // Prop 2.16: no scalar outputs survive linearization. Exact, no exceptions.
    for (const auto& comp : L.components)
        for (const auto& [key, expr] : comp.support)
            for (const auto& [s, c] : expr.terms())
                if (s.words[0].empty())
                    throw std::logic_error("linearized structure has a nonzero p^{k,0} entry");

    res.bl_check = verify_bl(L, t);
    res.algebra = std::move(L);
    return res;
}

} // namespace blinfty
