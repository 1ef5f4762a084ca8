#include "blinfty/mc.hpp"

#include "blinfty/invariants.hpp"

#include <algorithm>
#include <set>

namespace blinfty {

namespace {

Rational coeff_min_exponent(const Coefficient& c) {
    if (c.spec().base == CoeffSpec::Base::rational)
        throw config_error("Maurer-Cartan elements need Novikov coefficients");
    if (c.spec().hbar) {
        bool have = false;
        Rational best;
        for (const auto& [g, nov] : c.hbar().coeffs()) {
            if (nov.is_zero()) continue;
            Rational e = nov.min_exponent();
            if (!have || e < best) {
                best = e;
                have = true;
            }
        }
        if (!have) throw argument_error("min exponent of zero coefficient");
        return best;
    }
    return c.novikov().min_exponent();
}

} // namespace

void MCElement::validate(const Truncation&) const {
    for (const auto& [s, c] : value.terms()) {
        if (s.length() != 1) throw argument_error("MC element must live over words");
        if (s.parity != 0) throw argument_error("MC element must have parity 0");
        if (!(coeff_min_exponent(c) > Rational(0)))
            throw argument_error("MC element needs positive filtration degree");
    }
    if (!value.is_zero() && !value.spec().cutoff)
        throw config_error("MC calculus needs a finite weight cutoff");
}

Rational MCElement::min_exponent() const {
    bool have = false;
    Rational best;
    for (const auto& [s, c] : value.terms()) {
        Rational e = coeff_min_exponent(c);
        if (!have || e < best) {
            best = e;
            have = true;
        }
    }
    if (!have) throw argument_error("min exponent of the zero MC element");
    return best;
}

MCElement MCElement::without_constant() const {
    MCElement r;
    r.value = value.filtered([](const Sentence& s) { return !s.words[0].empty(); });
    return r;
}

Coefficient MCElement::constant_term() const {
    return value.coeff_of(empty_word_sentence());
}

void PointedMCElement::validate() const {
    for (const auto& [s, c] : value.terms()) {
        if (s.length() != 1) throw argument_error("pointed MC element must live over words");
        if (s.parity != parity % 2)
            throw argument_error("pointed MC element has mixed parity");
        if (!(coeff_min_exponent(c) > Rational(0)))
            throw argument_error("pointed MC element needs positive filtration degree");
    }
}

Expression exp_element(const MCElement& a) {
    Expression unit(a.value.spec());
    unit.add(Sentence{}, Coefficient::one(a.value.spec()));
    if (a.is_zero()) return unit;
    if (!a.value.spec().cutoff) throw config_error("exponential would not truncate");

    Expression result = unit;
    Expression power = unit;
    int i = 1;
    while (true) {
        power = odot(power, a.value).scaled(Rational(1, i));
        if (power.is_zero()) break;
        result.add_scaled(power, Rational(1));
        ++i;
        if (i > 10000) throw std::logic_error("exponential failed to truncate");
    }
    return result;
}

Expression exp_minus_one(const MCElement& a) {
    Expression e = exp_element(a);
    return e.filtered([](const Sentence& s) { return s.length() >= 1; });
}

Expression exp_map(const MCElement& a, const Expression& x) {
    return odot(x, exp_element(a));
}

VerificationReport verify_mc(const BLAlgebra& A, const MCElement& mc, const Truncation& t) {
    mc.validate(t);
    VerificationReport rep;
    rep.bounds = t;
    Expression r = hat_p(A, exp_minus_one(mc));
    if (r.is_zero()) {
        rep.status = VerificationReport::Status::pass;
        rep.note = "hat_p(e^mc - 1) vanishes below the cutoff";
    } else {
        rep.status = VerificationReport::Status::fail;
        rep.residue = r;
        rep.witness = r.terms().begin()->first;
        rep.note = "hat_p(e^mc - 1) does not vanish";
    }
    return rep;
}

namespace {

// pi_{1,*} hat_p(bar(w) odot e^mc) for every basis word within t.
std::vector<ComponentMap> extract_deformed_structure(const BLAlgebra& A, const MCElement& mc,
                                                     const Truncation& t) {
    Expression emc = exp_element(mc);
    auto op = [&](const Expression& x) { return hat_p(A, odot(x, emc)); };
    return extract_components(op, A.table, A.table, A.spec, t.max_word_len,
                              ComponentKind::structure, 1);
}

VerificationReport compare_on_basis(const GeneratorTable& table, const Truncation& t,
                                    int support_bound, const CoeffSpec& spec,
                                    const std::function<Expression(const Sentence&)>& lhs,
                                    const std::function<Expression(const Sentence&)>& rhs) {
    return sweep_residues(table, t, support_bound, spec,
                          [&](const Sentence& s) { return lhs(s) - rhs(s); });
}

} // namespace

DeformStructureResult deform_structure(const BLAlgebra& A, const MCElement& mc,
                                       const Truncation& t) {
    t.validate();
    VerificationReport mc_ok = verify_mc(A, mc, t);
    if (!mc_ok.passed()) throw argument_error("deform_structure: not a Maurer-Cartan element");

    DeformStructureResult res;
    res.algebra.table = A.table;
    res.algebra.spec = A.spec;
    res.algebra.components = extract_deformed_structure(A, mc, t);
    res.algebra.support_bound = std::min(t.max_word_len, A.support_bound);

    // Extracted assembly must reproduce exp_{-mc} o hat_p o exp_mc.
    MCElement neg;
    neg.value = mc.value.scaled(Rational(-1));
    Coefficient unit = Coefficient::one(A.spec);
    const BLAlgebra& D = res.algebra;
    res.conjugation_check = compare_on_basis(
        A.table, t, res.algebra.support_bound, A.spec,
        [&](const Sentence& s) { return hat_p(D, Expression::term(s, unit)); },
        [&](const Sentence& s) {
            return exp_map(neg, hat_p(A, exp_map(mc, Expression::term(s, unit))));
        });
    res.bl_check = verify_bl(res.algebra, t);
    return res;
}

PushforwardResult pushforward_mc(const BLMorphism& f, const MCElement& mc, const Truncation& t) {
    t.validate();
    if (!verify_mc(f.source, mc, t).passed())
        throw argument_error("pushforward_mc: not a Maurer-Cartan element on the source");

    PushforwardResult res;
    Expression image = assemble_hat_phi(f.component_ptrs(), f.source.table, f.target.table,
                                        exp_element(mc));
    res.value.value = project_single_words(image);

    res.exp_check.bounds = t;
    Expression diff = exp_element(res.value) - image;
    if (diff.is_zero()) {
        res.exp_check.status = VerificationReport::Status::pass;
        res.exp_check.note = "e^{phi(mc)} = hat_phi(e^mc)";
    } else {
        res.exp_check.status = VerificationReport::Status::fail;
        res.exp_check.residue = diff;
        res.exp_check.note = "exponential identity failed";
    }
    res.mc_check = verify_mc(f.target, res.value, t);
    return res;
}

DeformMorphismResult deform_morphism(const BLMorphism& f, const MCElement& mc,
                                     const Truncation& t) {
    t.validate();
    auto mc_ok = verify_mc(f.source, mc, t);
    if (!mc_ok.passed()) throw argument_error("deform_morphism: not a Maurer-Cartan element");

    DeformMorphismResult res;
    auto pushed = pushforward_mc(f, mc, t);

    Expression emc = exp_element(mc);
    auto op = [&](const Expression& x) {
        return assemble_hat_phi(f.component_ptrs(), f.source.table, f.target.table, odot(x, emc));
    };

    res.morphism.source = deform_structure(f.source, mc, t).algebra;
    res.morphism.target = deform_structure(f.target, pushed.value.without_constant(), t).algebra;
    res.morphism.components = extract_components(op, f.source.table, f.target.table, f.source.spec,
                                                 t.max_word_len, ComponentKind::morphism, 0);
    res.morphism.support_bound = std::min({t.max_word_len, f.support_bound});
    res.intertwining_check = verify_morphism(res.morphism, t);
    return res;
}

VerificationReport verify_pointed_mc(const BLAlgebra& A, const PointedMap& P, const MCElement& mc,
                                     const PointedMCElement& mcdot, const Truncation& t) {
    t.validate();
    mcdot.validate();
    if (mcdot.parity % 2 != (P.parity + 1) % 2)
        throw argument_error("pointed MC element must have parity |p_bullet| + 1");
    if (!verify_mc(A, mc, t).passed())
        throw argument_error("verify_pointed_mc: not a Maurer-Cartan element");

    MCElement neg;
    neg.value = mc.value.scaled(Rational(-1));
    Expression lhs = hat_pointed(A, P, exp_minus_one(mc));
    Expression rhs = exp_map(neg, hat_p(A, exp_map(mc, mcdot.value)));

    VerificationReport rep;
    rep.bounds = t;
    Expression diff = lhs - rhs;
    if (diff.is_zero()) {
        rep.status = VerificationReport::Status::pass;
        rep.note = "hat_p_bullet(e^mc - 1) = hat_p_mc(mcdot)";
    } else {
        rep.status = VerificationReport::Status::fail;
        rep.residue = diff;
        rep.witness = diff.terms().begin()->first;
        rep.note = "pointed Maurer-Cartan identity failed";
    }
    return rep;
}

DeformPointedResult deform_pointed(const BLAlgebra& A, const PointedMap& P, const MCElement& mc,
                                   const PointedMCElement& mcdot, const Truncation& t) {
    auto ok = verify_pointed_mc(A, P, mc, mcdot, t);
    if (!ok.passed()) throw argument_error("deform_pointed: pointed MC identity fails");

    Expression emc = exp_element(mc);
    auto op = [&](const Expression& x) {
        Expression a = hat_pointed(A, P, odot(x, emc));
        Expression b = hat_p(A, odot(odot(mcdot.value, x), emc));
        return a - b;
    };
    DeformPointedResult res;
    res.pointed.parity = P.parity;
    res.pointed.components = extract_components(op, A.table, A.table, A.spec, t.max_word_len,
                                                ComponentKind::pointed, P.parity % 2);
    BLAlgebra deformed = deform_structure(A, mc, t).algebra;
    res.commutation_check = verify_pointed(deformed, res.pointed, t);
    return res;
}

InducedPointedMCResult induced_pointed_mc(const BLMorphism& f,
                                          const std::vector<ComponentMap>& f_dot,
                                          int f_dot_parity, const PointedMap& P,
                                          const PointedMap& Q, const MCElement& mc,
                                          const PointedMCElement& mcdot, const Truncation& t) {
    t.validate();
    if (!verify_pointed_mc(f.source, P, mc, mcdot, t).passed())
        throw argument_error("induced_pointed_mc: source pointed MC identity fails");

    std::vector<const ComponentMap*> fdot_ptrs;
    for (const auto& c : f_dot) fdot_ptrs.push_back(&c);
    auto phi = [&](const Expression& x) {
        return assemble_hat_phi(f.component_ptrs(), f.source.table, f.target.table, x);
    };
    auto phi_dot = [&](const Expression& x) {
        if (f_dot.empty()) return Expression::zero(x.spec());
        return assemble_hat_phi_pointed(f.component_ptrs(), fdot_ptrs, f.source.table,
                                        f.target.table, x);
    };

    Expression emc = exp_element(mc);
    InducedPointedMCResult res;
    res.value.parity = (Q.parity + 1) % 2;
    res.value.value =
        project_single_words(phi_dot(emc) + phi(odot(mcdot.value, emc)));

    auto pushed = pushforward_mc(f, mc, t);
    res.pointed_mc_check = verify_pointed_mc(f.target, Q, pushed.value, res.value, t);

    // Deformed triple: compatibility of (P_mc, Q_mc') through f_mc.
    auto f_mc = deform_morphism(f, mc, t);
    auto P_mc = deform_pointed(f.source, P, mc, mcdot, t);
    auto Q_mc = deform_pointed(f.target, Q, pushed.value.without_constant(), res.value, t);
    auto fdot_op = [&](const Expression& x) {
        return phi_dot(odot(x, emc)) + phi(odot(odot(mcdot.value, x), emc));
    };
    std::vector<ComponentMap> fdot_mc =
        extract_components(fdot_op, f.source.table, f.target.table, f.source.spec, t.max_word_len,
                           ComponentKind::pointed, f_dot_parity % 2);
    res.compat_check = verify_compat(f_mc.morphism, fdot_mc, f_dot_parity, P_mc.pointed,
                                     Q_mc.pointed, t);
    return res;
}

std::optional<PointedMCElement> solve_pointed_mc(const BLAlgebra& A, const PointedMap& P,
                                                 const MCElement& mc, const Truncation& t) {
    t.validate();
    if (!verify_mc(A, mc, t).passed()) throw argument_error("solve_pointed_mc: mc is not MC");

    Expression target = hat_pointed(A, P, exp_minus_one(mc));
    MCElement neg;
    neg.value = mc.value.scaled(Rational(-1));
    auto op = [&](const Expression& x) { return exp_map(neg, hat_p(A, exp_map(mc, x))); };

    int want_parity = (P.parity + 1) % 2;
    std::vector<Sentence> basis;
    for (const Word& w : enumerate_words(A.table, 0, t.max_word_len, t.weight_cutoff))
        if (w.parity == want_parity) basis.push_back(singleton_sentence(w));
    std::sort(basis.begin(), basis.end());

    // Stratify by the target's weights; exponents must stay positive.
    std::set<Rational> strata;
    for (const auto& [s, c] : target.terms()) {
        if (c.spec().base == CoeffSpec::Base::rational) throw config_error("needs Novikov mode");
        for (const auto& term : c.novikov().terms()) strata.insert(term.exponent + s.weight);
    }
    if (!A.weight_homogeneous && !strata.empty())
        throw config_error("solve_pointed_mc needs a weight-homogeneous algebra");

    std::vector<Expression> cols;
    for (const Rational& theta : strata)
        for (const auto& s : basis) {
            Rational e = theta - s.weight;
            if (!(e > Rational(0))) continue;
            if (!below_cutoff(e, A.spec.cutoff)) continue;
            cols.push_back(Expression::term(s, Coefficient::one(A.spec).shifted(e)));
        }
    auto sol = solve_expression_system(
        [&] {
            std::vector<Expression> images;
            images.reserve(cols.size());
            for (const auto& c : cols) images.push_back(op(c));
            return images;
        }(),
        target);
    if (!sol) return std::nullopt;
    PointedMCElement out;
    out.parity = (P.parity + 1) % 2;
    Expression w(A.spec);
    for (size_t j = 0; j < cols.size(); ++j)
        if (!(*sol)[j].is_zero()) w.add_scaled(cols[j], (*sol)[j]);
    out.value = std::move(w);
    if (!(op(out.value) == target))
        throw std::logic_error("solved pointed MC element failed re-verification");
    return out;
}

} // namespace blinfty
