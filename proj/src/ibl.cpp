#include "blinfty/ibl.hpp"

#include "blinfty/invariants.hpp"
#include "blinfty/parallel.hpp"

#include <algorithm>

namespace blinfty {

std::vector<const ComponentMap*> IBLAlgebra::component_ptrs() const {
    std::vector<const ComponentMap*> ps;
    for (const auto& c : components) ps.push_back(&c);
    return ps;
}

bool IBLAlgebra::curved() const {
    for (const auto& c : components)
        for (const auto& [key, expr] : c.support)
            for (const auto& [s, v] : expr.terms())
                if (s.words[0].empty()) return true;
    return false;
}

void IBLAlgebra::validate() const {
    if (!spec.hbar) throw config_error("IBL algebra needs hbar-graded coefficients");
    for (const auto& c : components) {
        c.validate(table, table, spec);
        if (c.shift != 1) throw argument_error("structure components must have parity shift 1");
    }
}

BLAlgebra IBLAlgebra::as_bl_carrier() const {
    BLAlgebra A;
    A.table = table;
    A.components = components;
    A.spec = spec;
    A.weight_homogeneous = weight_homogeneous;
    A.support_bound = support_bound;
    return A;
}

VerificationReport verify_ibl(const IBLAlgebra& A, const Truncation& t, bool use_parallel) {
    A.validate();
    Coefficient unit = Coefficient::one(A.spec);
    auto ptrs = A.component_ptrs();
    return sweep_residues(
        A.table, t, A.support_bound, A.spec,
        [&](const Sentence& s) {
            return assemble_ibl_hat(ptrs, A.table,
                                    assemble_ibl_hat(ptrs, A.table, Expression::term(s, unit)));
        },
        use_parallel);
}

namespace {

// First-formulation single-word assembly: choose arity letters of the word,
// merge the output with the leftovers, and raise hbar by arity + genus - 1.
Expression sv_hat_word(const IBLAlgebra& A, const Word& w, const Coefficient& c) {
    Expression out(A.spec);
    const int m = w.length();
    std::vector<int> parities(m);
    for (int i = 0; i < m; ++i) parities[i] = A.table.at(w.letters[i]).parity;

    for (const ComponentMap* comp : A.component_ptrs()) {
        const int k = comp->arity;
        if (k > m) continue;
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            // arrangement sign: chosen ascending, then leftovers ascending
            std::vector<int> arrangement = idx;
            std::vector<bool> chosen(m, false);
            for (int i : idx) chosen[i] = true;
            for (int i = 0; i < m; ++i)
                if (!chosen[i]) arrangement.push_back(i);
            int sign = koszul_sign_of_arrangement(arrangement, parities);

            std::vector<int> key_seq;
            for (int i : idx) key_seq.push_back(w.letters[i]);
            auto key = canonicalize_word(A.table, key_seq);
            if (!key.is_zero()) {
                if (const Expression* val = comp->find(key.value)) {
                    for (const auto& [os, oc] : val->terms()) {
                        std::vector<int> merged = os.words[0].letters;
                        for (int i = 0; i < m; ++i)
                            if (!chosen[i]) merged.push_back(w.letters[i]);
                        auto mw = canonicalize_word(A.table, merged);
                        if (mw.is_zero()) continue;
                        Coefficient v =
                            (c * oc).scaled(Rational(sign * key.sign * mw.sign));
                        v = v.shifted_genus(k + comp->genus - 1);
                        out.add(singleton_sentence(mw.value), v);
                    }
                }
            }
            int i = k - 1;
            while (i >= 0 && idx[i] == m - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

} // namespace

Expression sv_hat(const IBLAlgebra& A, const Expression& x) {
    Expression out(x.spec());
    for (const auto& [s, c] : x.terms()) {
        if (s.length() != 1) throw argument_error("sv_hat acts on single-word sentences");
        if (s.words[0].empty()) continue; // hat_p(1) = 0
        out.add_scaled(sv_hat_word(A, s.words[0], c), Rational(1));
    }
    return out;
}

VerificationReport verify_ibl_sv(const IBLAlgebra& A, const Truncation& t, bool use_parallel) {
    A.validate();
    t.validate();
    auto words = enumerate_words(A.table, 0, t.max_word_len);
    std::vector<Sentence> basis;
    for (const auto& w : words) basis.push_back(singleton_sentence(w));
    std::sort(basis.begin(), basis.end());

    Coefficient unit = Coefficient::one(A.spec);
    const int n = static_cast<int>(basis.size());
    std::vector<int> verdict(n, 0);
    std::vector<Expression> residues(n);
    parallel_for(
        n,
        [&](int i) {
            Expression r = sv_hat(A, sv_hat(A, Expression::term(basis[i], unit)));
            if (!r.is_zero()) {
                verdict[i] = 1;
                residues[i] = r;
            }
        },
        use_parallel);

    VerificationReport rep;
    rep.bounds = t;
    for (int i = 0; i < n; ++i)
        if (verdict[i] == 1) {
            rep.status = VerificationReport::Status::fail;
            rep.witness = basis[i];
            rep.residue = residues[i];
            rep.note = "single-word square does not vanish";
            return rep;
        }
    rep.status = VerificationReport::Status::pass;
    rep.note = "single-word square vanishes within bounds";
    return rep;
}

std::optional<P2Block> first_nonzero_p2_block(const IBLAlgebra& A, const Truncation& t) {
    t.validate();
    Coefficient unit = Coefficient::one(A.spec);

    // Blocks applied as single-word components reproduce the spectator terms
    // of the square; peel them off arity by arity.
    IBLAlgebra blocks;
    blocks.table = A.table;
    blocks.spec = A.spec;

    std::optional<P2Block> best;
    for (int a = 1; a <= t.max_word_len; ++a) {
        ComponentMap comp;
        comp.kind = ComponentKind::structure;
        comp.arity = a;
        comp.shift = 0;
        for (const Word& w : enumerate_words(A.table, a, a, t.weight_cutoff)) {
            Expression x = Expression::term(singleton_sentence(w), unit);
            Expression r = sv_hat(A, sv_hat(A, x));
            r.add_scaled(sv_hat(blocks, x), Rational(-1));
            if (r.is_zero()) continue;
            // remainder is the full-block application carrying hbar^{a-1}
            Expression entry(A.spec);
            for (const auto& [s, c] : r.terms()) entry.add(s, c.shifted_genus(-(a - 1)));
            comp.support.emplace(w, entry);
            if (!best) {
                for (const auto& [s, c] : entry.terms())
                    for (const auto& [g, nov] : c.hbar().coeffs()) {
                        int b = s.words[0].length();
                        if (!best || std::tie(a, b, g) <
                                         std::tie(best->a, best->b, best->genus)) {
                            P2Block blk;
                            blk.a = a;
                            blk.b = b;
                            blk.genus = g;
                            blk.input = w;
                            blk.value = entry;
                            best = blk;
                        }
                    }
            }
        }
        if (best) return best; // smallest arity wins; no need to peel further
        if (!comp.support.empty()) blocks.components.push_back(std::move(comp));
    }
    return best;
}

BLAlgebra genus0_projection(const IBLAlgebra& A, const Truncation& t) {
    if (!verify_ibl(A, t).passed())
        throw argument_error("genus0_projection: the algebra failed verification");
    CoeffSpec base = A.spec;
    base.hbar = false;
    base.genus_cap = 0;

    BLAlgebra B;
    B.table = A.table;
    B.spec = base;
    B.weight_homogeneous = A.weight_homogeneous;
    B.support_bound = A.support_bound;
    for (const auto& comp : A.components) {
        if (comp.genus != 0) continue;
        ComponentMap c;
        c.kind = ComponentKind::structure;
        c.arity = comp.arity;
        c.shift = comp.shift;
        for (const auto& [key, expr] : comp.support) {
            Expression e(base);
            for (const auto& [s, v] : expr.terms()) {
                NovikovElem nov = v.hbar().at(0);
                if (nov.is_zero()) continue;
                if (base.base == CoeffSpec::Base::rational) {
                    if (nov.terms().size() != 1 || !nov.terms()[0].exponent.is_zero())
                        throw config_error("genus-0 part is not rational");
                    e.add(s, Coefficient::from_rational(nov.terms()[0].coeff, base));
                } else {
                    e.add(s, Coefficient::from_novikov(nov, base));
                }
            }
            if (!e.is_zero()) c.support.emplace(key, e);
        }
        if (!c.support.empty()) B.components.push_back(std::move(c));
    }
    if (!verify_bl(B, t).passed())
        throw std::logic_error("genus-0 projection failed the BL check");
    return B;
}

namespace {

Expression project_genus(const Expression& x, int cap) {
    Expression out(x.spec());
    for (const auto& [s, c] : x.terms()) {
        Coefficient v =
            Coefficient::from_hbar(c.hbar().truncated_genus(cap), c.spec());
        out.add(s, v);
    }
    return out;
}

Expression hbar_power_unit(const CoeffSpec& spec, int n) {
    return Expression::term(empty_word_sentence(), Coefficient::one(spec).shifted_genus(n));
}

} // namespace

int hbar_width(const Expression& x) {
    int best = -1;
    for (const auto& [s, c] : x.terms()) {
        int g = c.hbar().min_genus();
        if (g >= 0 && (best < 0 || g < best)) best = g;
    }
    return best;
}

GridTorsionResult grid_torsion(const IBLAlgebra& A, int n, int m, int k_cap, const Truncation& t) {
    t.validate();
    if (n < 0 || m < 0 || k_cap < 0) throw argument_error("grid indices must be nonnegative");
    if (k_cap > t.genus_cap) throw argument_error("k exceeds the genus cap");
    if (!verify_ibl(A, t).passed())
        throw argument_error("grid_torsion: the algebra failed verification");

    GridTorsionResult res;
    res.n = n;
    res.m = m;
    res.k = k_cap;
    res.bounds = t;
    if (n > k_cap) {
        // hbar^n = 0 in the quotient; torsion holds with the zero witness
        res.found = true;
        res.degenerate = true;
        res.witness = Expression::zero(A.spec);
        return res;
    }

    auto ptrs = A.component_ptrs();
    auto p_k = [&](const Expression& x) {
        return project_genus(assemble_ibl_hat(ptrs, A.table, x), k_cap);
    };

    Cutoff weight_bound =
        A.spec.base == CoeffSpec::Base::rational ? Cutoff{} : t.weight_cutoff;
    auto words = enumerate_words(A.table, 0, t.max_word_len, weight_bound);
    auto sentences =
        enumerate_sentences(words, 1, std::min(m + 1, t.max_sentence_len), weight_bound);

    std::vector<Expression> cols;
    for (int j = 0; j <= k_cap; ++j)
        for (const auto& s : sentences)
            cols.push_back(Expression::term(s, Coefficient::one(A.spec).shifted_genus(j)));

    std::vector<Expression> images(cols.size(), Expression(A.spec));
    parallel_for(static_cast<int>(cols.size()), [&](int j) { images[j] = p_k(cols[j]); });
    Expression target = hbar_power_unit(A.spec, n);
    auto sol = solve_expression_system(images, target);
    if (!sol) return res;

    Expression w(A.spec);
    for (size_t j = 0; j < cols.size(); ++j)
        if (!(*sol)[j].is_zero()) w.add_scaled(cols[j], (*sol)[j]);
    if (!(p_k(w) == target)) throw std::logic_error("grid witness failed re-verification");
    res.found = true;
    res.witness = std::move(w);
    return res;
}

CmTransformResult cm_transform(const IBLAlgebra& A, const Expression& x, int n, int m,
                               const Truncation& t) {
    t.validate();
    if (m < 0) throw argument_error("m must be nonnegative");
    auto ptrs = A.component_ptrs();
    Expression target_n = hbar_power_unit(A.spec, n);
    Expression check = project_genus(assemble_ibl_hat(ptrs, A.table, x), t.genus_cap);
    if (!(check == target_n)) {
        CmTransformResult res;
        res.recheck.status = VerificationReport::Status::fail;
        res.recheck.residue = check - target_n;
        res.recheck.bounds = t;
        res.recheck.note = "input does not satisfy hat_p(x) = hbar^n";
        throw argument_error("cm_transform: precondition failed");
    }
    if (n + m > t.genus_cap)
        throw argument_error("cm_transform: hbar^{n+m} lies beyond the genus cap");

    // hbar^m C_{m+1}: a sentence of j words merges into one with hbar^{m-j+1}.
    CmTransformResult res;
    res.witness = Expression(A.spec);
    for (const auto& [s, c] : x.terms()) {
        int j = s.length();
        if (j > m + 1) throw argument_error("witness leaves E^{m+1}V");
        std::vector<int> merged;
        for (const auto& w : s.words)
            merged.insert(merged.end(), w.letters.begin(), w.letters.end());
        auto mw = canonicalize_word(A.table, merged);
        if (mw.is_zero()) continue;
        res.witness.add(singleton_sentence(mw.value),
                        c.scaled(Rational(mw.sign)).shifted_genus(m - j + 1));
    }

    Expression verify = project_genus(assemble_ibl_hat(ptrs, A.table, res.witness), t.genus_cap);
    Expression target = hbar_power_unit(A.spec, n + m);
    res.recheck.bounds = t;
    if (verify == target) {
        res.recheck.status = VerificationReport::Status::pass;
        res.recheck.note = "hat_p(hbar^m C_{m+1} x) = hbar^{n+m}";
    } else {
        res.recheck.status = VerificationReport::Status::fail;
        res.recheck.residue = verify - target;
        res.recheck.note = "transformed witness failed re-verification";
    }
    return res;
}

VerificationReport cm_chain_check(const IBLAlgebra& A, int m, const Truncation& t) {
    t.validate();
    if (m < 1) throw argument_error("m must be >= 1");
    auto ptrs = A.component_ptrs();

    // hbar^{m-1} C_m, nonnegative powers only.
    auto cm_shifted = [&](const Expression& x) {
        Expression out(A.spec);
        for (const auto& [s, c] : x.terms()) {
            int j = s.length();
            if (j > m) throw argument_error("C_m applied outside E^m V");
            if (j == 1) {
                out.add(s, c.shifted_genus(m - 1));
                continue;
            }
            std::vector<int> merged;
            for (const auto& w : s.words)
                merged.insert(merged.end(), w.letters.begin(), w.letters.end());
            auto mw = canonicalize_word(A.table, merged);
            if (mw.is_zero()) continue;
            out.add(singleton_sentence(mw.value), c.scaled(Rational(mw.sign)).shifted_genus(m - j));
        }
        return out;
    };

    Cutoff weight_bound =
        A.spec.base == CoeffSpec::Base::rational ? Cutoff{} : t.weight_cutoff;
    auto words = enumerate_words(A.table, 0, t.max_word_len, weight_bound);
    auto basis = enumerate_sentences(words, 1, std::min(m, t.max_sentence_len), weight_bound);

    Coefficient unit = Coefficient::one(A.spec);
    VerificationReport rep;
    rep.bounds = t;
    for (const auto& s : basis) {
        Expression x = Expression::term(s, unit);
        Expression lhs = cm_shifted(assemble_ibl_hat(ptrs, A.table, x));
        Expression rhs = assemble_ibl_hat(ptrs, A.table, cm_shifted(x));
        if (!(lhs == rhs)) {
            rep.status = VerificationReport::Status::fail;
            rep.witness = s;
            rep.residue = lhs - rhs;
            rep.note = "C_m chain identity failed";
            return rep;
        }
    }
    rep.status = VerificationReport::Status::pass;
    rep.note = "C_m is a chain map on the checked range";
    return rep;
}

std::vector<GridSurveyEntry> grid_properties_check(const IBLAlgebra& A, const Truncation& t) {
    std::vector<GridSurveyEntry> out;
    for (int n = 0; n <= t.genus_cap; ++n)
        for (int m = 0; m + 1 <= t.max_sentence_len; ++m)
            for (int k = 0; k <= t.genus_cap; ++k) {
                GridSurveyEntry e{n, m, k, false, false, false, false};
                auto r = grid_torsion(A, n, m, k, t);
                e.found = r.found;
                e.degenerate = r.degenerate;
                if (r.found && !r.degenerate) {
                    if (k >= 1) {
                        auto proj = project_genus(r.witness, k - 1);
                        auto ptrs = A.component_ptrs();
                        Expression img =
                            project_genus(assemble_ibl_hat(ptrs, A.table, proj), k - 1);
                        Expression want = n > k - 1 ? Expression::zero(A.spec)
                                                    : hbar_power_unit(A.spec, n);
                        e.projection_ok = (img == want);
                    } else {
                        e.projection_ok = true;
                    }
                    if (n + m <= t.genus_cap) {
                        // witnesses from the k-solve also satisfy the full
                        // precondition when k = genus cap
                        if (k == t.genus_cap) {
                            auto cm = cm_transform(A, r.witness, n, m, t);
                            e.cm_ok = cm.recheck.passed();
                        } else {
                            e.cm_ok = true; // only checked at the top level
                        }
                    } else {
                        e.cm_ok = true; // beyond the cap: nothing to verify
                    }
                }
                out.push_back(e);
            }
    return out;
}

} // namespace blinfty
