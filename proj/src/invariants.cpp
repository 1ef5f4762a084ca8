#include "blinfty/invariants.hpp"

#include "blinfty/parallel.hpp"

#include <algorithm>
#include <set>

namespace blinfty {

namespace {

struct Atom {
    bool functional = false;
    Sentence s;
    Rational exponent;
    int genus = 0;

    bool operator<(const Atom& o) const {
        if (functional != o.functional) return functional < o.functional;
        if (!(s == o.s)) return s < o.s;
        if (exponent != o.exponent) return exponent < o.exponent;
        return genus < o.genus;
    }
};

class AtomIndexer {
  public:
    int id(const Atom& a) {
        auto it = ids_.find(a);
        if (it != ids_.end()) return it->second;
        int n = static_cast<int>(ids_.size());
        ids_.emplace(a, n);
        return n;
    }

  private:
    std::map<Atom, int> ids_;
};

void atomize_coeff(const Coefficient& c, const std::function<void(Rational, Rational, int)>& emit) {
    const auto& spec = c.spec();
    if (spec.hbar) {
        for (const auto& [g, nov] : c.hbar().coeffs())
            for (const auto& term : nov.terms()) emit(term.coeff, term.exponent, g);
    } else if (spec.base == CoeffSpec::Base::rational) {
        if (!c.rational().is_zero()) emit(c.rational(), Rational(0), 0);
    } else {
        for (const auto& term : c.novikov().terms()) emit(term.coeff, term.exponent, 0);
    }
}

void add_expression_rows(ExactLinearSystem& sys, AtomIndexer& atoms, int col,
                         const Expression& e, bool rhs) {
    for (const auto& [s, c] : e.terms())
        atomize_coeff(c, [&](Rational v, Rational t, int g) {
            int row = atoms.id(Atom{false, s, t, g});
            if (rhs)
                sys.add_rhs(row, v);
            else
                sys.add_entry(row, col, v);
        });
}

void add_functional_rows(ExactLinearSystem& sys, AtomIndexer& atoms, int col,
                         const Coefficient& c, bool rhs) {
    atomize_coeff(c, [&](Rational v, Rational t, int g) {
        int row = atoms.id(Atom{true, Sentence{}, t, g});
        if (rhs)
            sys.add_rhs(row, v);
        else
            sys.add_entry(row, col, v);
    });
}

Expression combine_witness(const std::vector<Expression>& columns_src,
                           const std::vector<Rational>& x, const CoeffSpec& spec) {
    Expression w(spec);
    for (size_t j = 0; j < columns_src.size(); ++j)
        if (!x[j].is_zero()) w.add_scaled(columns_src[j], x[j]);
    return w;
}

} // namespace

std::optional<std::vector<Rational>> solve_expression_system(
    const std::vector<Expression>& columns, const Expression& target,
    const std::vector<Coefficient>* functionals, const Coefficient* target_functional) {
    ExactLinearSystem sys(static_cast<int>(columns.size()));
    AtomIndexer atoms;
    for (size_t j = 0; j < columns.size(); ++j)
        add_expression_rows(sys, atoms, static_cast<int>(j), columns[j], false);
    add_expression_rows(sys, atoms, 0, target, true);
    if (functionals) {
        for (size_t j = 0; j < functionals->size(); ++j)
            add_functional_rows(sys, atoms, static_cast<int>(j), (*functionals)[j], false);
        if (target_functional) add_functional_rows(sys, atoms, 0, *target_functional, true);
    }
    return sys.solve();
}

std::vector<Expression> stratified_columns(const std::vector<Sentence>& basis,
                                           const Rational& target_weight, const CoeffSpec& spec,
                                           bool weight_homogeneous) {
    std::vector<Expression> cols;
    if (spec.base == CoeffSpec::Base::rational) {
        if (!target_weight.is_zero()) throw config_error("weight stratum in rational mode");
        for (const auto& s : basis) cols.push_back(Expression::term(s, Coefficient::one(spec)));
        return cols;
    }
    if (!weight_homogeneous)
        throw config_error("exact solves over Novikov coefficients need weight homogeneity");
    for (const auto& s : basis) {
        Rational t = target_weight - s.weight;
        if (!spec.field_mode() && t < Rational(0)) continue;
        if (!below_cutoff(t, spec.cutoff)) continue;
        cols.push_back(Expression::term(
            s, Coefficient::one(spec).shifted(t)));
    }
    return cols;
}

namespace {

// Shared search loop: for k = 1..max_level, build basis(k), solve, re-verify.
struct SolveOutcome {
    bool found = false;
    int k = 0;
    Expression witness;
};

SolveOutcome search_levels(
    int max_level, const CoeffSpec& spec,
    const std::function<std::vector<Expression>(int)>& columns_at,
    const std::function<Expression(const Expression&)>& op, const Expression& target,
    const std::function<Coefficient(const Expression&)>* functional,
    const Coefficient* target_functional) {
    for (int k = 1; k <= max_level; ++k) {
        std::vector<Expression> cols = columns_at(k);
        if (cols.empty()) continue;
        std::vector<Expression> images(cols.size(), Expression(spec));
        std::vector<Coefficient> fvals(cols.size(), Coefficient::zero(spec));
        parallel_for(static_cast<int>(cols.size()), [&](int j) {
            images[j] = op(cols[j]);
            if (functional) fvals[j] = (*functional)(cols[j]);
        });
        auto sol = solve_expression_system(images, target, functional ? &fvals : nullptr,
                                           target_functional);
        if (!sol) continue;
        Expression w = combine_witness(cols, *sol, spec);
        // re-verify before returning; a failure here is an engine defect
        if (!(op(w) == target)) throw std::logic_error("witness failed re-verification");
        if (functional && target_functional && !((*functional)(w) == *target_functional))
            throw std::logic_error("witness functional failed re-verification");
        return {true, k, std::move(w)};
    }
    return {};
}

std::vector<Sentence> ev_basis(const GeneratorTable& table, int max_words, int max_word_len,
                               const Cutoff& max_weight, bool include_empty_word, int min_word_len) {
    auto words = enumerate_words(table, min_word_len, max_word_len, max_weight);
    if (!include_empty_word) {
        std::vector<Word> nz;
        for (auto& w : words)
            if (!w.empty()) nz.push_back(w);
        words = std::move(nz);
    }
    return enumerate_sentences(words, 1, max_words, max_weight);
}

} // namespace

TorsionResult torsion(const BLAlgebra& A, const Truncation& t) {
    t.validate();
    if (!verify_bl(A, t).passed()) throw argument_error("torsion: algebra failed verification");
    Cutoff weight_bound =
        A.spec.base == CoeffSpec::Base::rational ? Cutoff{} : t.weight_cutoff;

    TorsionResult res;
    res.bounds = t;
    Expression target = Expression::term(empty_word_sentence(), Coefficient::one(A.spec));
    auto op = [&](const Expression& x) { return hat_p(A, x); };
    auto outcome = search_levels(
        t.max_sentence_len, A.spec,
        [&](int k) {
            auto basis = ev_basis(A.table, k, t.max_word_len, weight_bound, true, 0);
            return stratified_columns(basis, Rational(0), A.spec, A.weight_homogeneous);
        },
        op, target, nullptr, nullptr);
    res.found = outcome.found;
    res.k = outcome.k;
    res.witness = std::move(outcome.witness);
    return res;
}

EllOperators ell_differentials(const BLAlgebra& A, const Augmentation& eps, const PointedMap& P) {
    EllOperators ops;
    ops.ell = [&A, eps](const Expression& x) {
        return project_bar_model(conjugate_by_f(
            A, eps, [&A](const Expression& y) { return hat_p(A, y); }, x));
    };
    ops.ell_dot = [&A, eps, P](const Expression& x) {
        return project_unit(conjugate_by_f(
            A, eps, [&A, &P](const Expression& y) { return hat_pointed(A, P, y); }, x));
    };
    return ops;
}

namespace {

void require_order_preconditions(const BLAlgebra& A, const Augmentation& eps, const PointedMap& P,
                                 const Truncation& t) {
    if (!verify_augmentation(A, eps, t).passed())
        throw argument_error("order: augmentation failed verification");
    if (!verify_pointed(A, P, t).passed())
        throw argument_error("order: pointed map failed verification");
}

} // namespace

OrderResult order(const BLAlgebra& A, const Augmentation& eps, const PointedMap& P,
                  const Truncation& t) {
    t.validate();
    require_order_preconditions(A, eps, P, t);
    auto ops = ell_differentials(A, eps, P);
    Cutoff weight_bound =
        A.spec.base == CoeffSpec::Base::rational ? Cutoff{} : t.weight_cutoff;

    OrderResult res;
    res.bounds = t;
    Expression target = Expression::zero(A.spec);
    Coefficient one = Coefficient::one(A.spec);
    std::function<Coefficient(const Expression&)> functional = ops.ell_dot;
    auto outcome = search_levels(
        t.max_word_len, A.spec,
        [&](int k) {
            // words of length <= k (or exactly k in strict mode), bar model
            int min_len = t.strict_length ? k : 1;
            std::vector<Sentence> basis;
            for (const Word& w : enumerate_words(A.table, min_len, k, weight_bound))
                if (!w.empty()) basis.push_back(word_as_bar_sentence(A.table, w));
            std::sort(basis.begin(), basis.end());
            return stratified_columns(basis, Rational(0), A.spec, A.weight_homogeneous);
        },
        ops.ell, target, &functional, &one);
    res.found = outcome.found;
    res.k = outcome.k;
    res.witness = std::move(outcome.witness);
    return res;
}

OrderResult tilde_order(const BLAlgebra& A, const Augmentation& eps, const PointedMap& P,
                        const Truncation& t) {
    t.validate();
    require_order_preconditions(A, eps, P, t);
    Cutoff weight_bound =
        A.spec.base == CoeffSpec::Base::rational ? Cutoff{} : t.weight_cutoff;

    auto p_eps = [&](const Expression& x) {
        return conjugate_by_f(A, eps, [&](const Expression& y) { return hat_p(A, y); }, x);
    };
    std::function<Coefficient(const Expression&)> functional = [&](const Expression& x) {
        return project_unit(conjugate_by_f(
            A, eps, [&](const Expression& y) { return hat_pointed(A, P, y); }, x));
    };

    OrderResult res;
    res.bounds = t;
    Expression target = Expression::zero(A.spec);
    Coefficient one = Coefficient::one(A.spec);
    auto outcome = search_levels(
        t.max_sentence_len, A.spec,
        [&](int k) {
            auto basis = ev_basis(A.table, k, t.max_word_len, weight_bound, false, 1);
            return stratified_columns(basis, Rational(0), A.spec, A.weight_homogeneous);
        },
        p_eps, target, &functional, &one);
    res.found = outcome.found;
    res.k = outcome.k;
    res.witness = std::move(outcome.witness);
    return res;
}

OrderResult multipoint_order(const BLAlgebra& A, const Augmentation& eps,
                             const std::vector<ComponentMap>& multi_pointed, int m,
                             const Truncation& t) {
    t.validate();
    if (m < 1) throw argument_error("multipoint order needs m >= 1");
    if (!verify_augmentation(A, eps, t).passed())
        throw argument_error("multipoint order: augmentation failed verification");
    int num_tags = 0;
    for (const auto& c : multi_pointed)
        for (int b = 0; b < 32; ++b)
            if (c.tag_mask & (1u << b)) num_tags = std::max(num_tags, b + 1);
    if (num_tags > m) throw argument_error("more constraint tags than m");

    std::vector<const ComponentMap*> ptrs;
    for (const auto& c : multi_pointed) ptrs.push_back(&c);

    Cutoff weight_bound =
        A.spec.base == CoeffSpec::Base::rational ? Cutoff{} : t.weight_cutoff;
    auto diff = [&](const Expression& x) {
        return project_max_word_len(
            conjugate_by_f(A, eps, [&](const Expression& y) { return hat_p(A, y); }, x), m);
    };
    std::function<Coefficient(const Expression&)> functional = [&](const Expression& x) {
        return project_unit(conjugate_by_f(
            A, eps,
            [&](const Expression& y) { return hat_multi_pointed(A, ptrs, num_tags, y); }, x));
    };

    OrderResult res;
    res.bounds = t;
    Expression target = Expression::zero(A.spec);
    Coefficient one = Coefficient::one(A.spec);
    auto outcome = search_levels(
        t.max_sentence_len, A.spec,
        [&](int k) {
            auto basis = ev_basis(A.table, k, std::min(m, t.max_word_len), weight_bound, false, 1);
            return stratified_columns(basis, Rational(0), A.spec, A.weight_homogeneous);
        },
        diff, target, &functional, &one);
    res.found = outcome.found;
    res.k = outcome.k;
    res.witness = std::move(outcome.witness);
    return res;
}

SpectralResult spectral_invariant(const BLAlgebra& A, const Augmentation& eps,
                                  const std::vector<ComponentMap>& multi_pointed, int num_tags,
                                  int l, const Truncation& t) {
    t.validate();
    if (A.spec.base != CoeffSpec::Base::novikov_ring)
        throw config_error("spectral invariant needs Novikov ring coefficients");
    if (!A.weight_homogeneous)
        throw config_error("spectral invariant needs a weight-homogeneous algebra");
    if (!verify_augmentation(A, eps, t).passed())
        throw argument_error("spectral invariant: augmentation failed verification");

    std::vector<const ComponentMap*> ptrs;
    for (const auto& c : multi_pointed) ptrs.push_back(&c);

    auto p_eps = [&](const Expression& x) {
        return conjugate_by_f(A, eps, [&](const Expression& y) { return hat_p(A, y); }, x);
    };
    std::function<Coefficient(const Expression&)> functional = [&](const Expression& x) {
        return project_unit(conjugate_by_f(
            A, eps,
            [&](const Expression& y) { return hat_multi_pointed(A, ptrs, num_tags, y); }, x));
    };

    auto basis = ev_basis(A.table, std::min(l, t.max_sentence_len), t.max_word_len,
                          t.weight_cutoff, false, 1);

    // Candidate exponents: whatever the functional reaches on plain basis
    // elements, in increasing order.
    std::set<Rational> candidates;
    for (const auto& s : basis) {
        Coefficient v = functional(Expression::term(s, Coefficient::one(A.spec)));
        atomize_coeff(v, [&](Rational, Rational e, int) { candidates.insert(e); });
    }

    SpectralResult res;
    res.bounds = t;
    Expression target = Expression::zero(A.spec);
    for (const Rational& a : candidates) {
        auto cols = stratified_columns(basis, a, A.spec, true);
        if (cols.empty()) continue;
        std::vector<Expression> images(cols.size(), Expression(A.spec));
        std::vector<Coefficient> fvals(cols.size(), Coefficient::zero(A.spec));
        parallel_for(static_cast<int>(cols.size()), [&](int j) {
            images[j] = p_eps(cols[j]);
            fvals[j] = functional(cols[j]);
        });
        Coefficient target_f = Coefficient::one(A.spec).shifted(a);
        auto sol = solve_expression_system(images, target, &fvals, &target_f);
        if (!sol) continue;
        Expression w(A.spec);
        for (size_t j = 0; j < cols.size(); ++j)
            if (!(*sol)[j].is_zero()) w.add_scaled(cols[j], (*sol)[j]);
        if (!(p_eps(w) == target) || !(functional(w) == target_f))
            throw std::logic_error("spectral witness failed re-verification");
        res.found = true;
        res.value = a;
        res.witness = std::move(w);
        return res;
    }
    return res;
}

TorsionResult push_torsion_witness(const BLMorphism& f, const TorsionResult& src,
                                   const Truncation& t) {
    if (!src.found) throw argument_error("no witness to push");
    TorsionResult res;
    res.bounds = t;
    Expression pushed = hat_phi(f, src.witness);
    Expression target = Expression::term(empty_word_sentence(), Coefficient::one(f.target.spec));
    if (!(hat_p(f.target, pushed) == target))
        return res; // not a witness on the target; caller decides what that means
    res.found = true;
    res.k = src.k;
    res.witness = std::move(pushed);
    return res;
}

} // namespace blinfty
