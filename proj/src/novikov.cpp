#include "blinfty/novikov.hpp"

#include <algorithm>

namespace blinfty {

NovikovElem NovikovElem::scalar(const Rational& c, Cutoff cutoff, bool field_mode) {
    return monomial(c, Rational(0), std::move(cutoff), field_mode);
}

NovikovElem NovikovElem::monomial(const Rational& c, const Rational& t, Cutoff cutoff, bool field_mode) {
    NovikovElem e(std::move(cutoff), field_mode);
    e.add_term(c, t);
    return e;
}

Rational NovikovElem::min_exponent() const {
    if (terms_.empty()) throw argument_error("min_exponent of zero");
    return terms_.front().exponent;
}

void NovikovElem::add_term(const Rational& c, const Rational& t) {
    if (c.is_zero()) return;
    if (!field_mode_ && t < Rational(0))
        throw config_error("negative exponent in Novikov ring mode");
    if (!below_cutoff(t, cutoff_)) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t,
                               [](const Term& a, const Rational& b) { return a.exponent < b; });
    if (it != terms_.end() && it->exponent == t) {
        it->coeff += c;
        if (it->coeff.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, Term{c, t});
    }
}

void NovikovElem::require_compatible(const NovikovElem& o) const {
    if (cutoff_ != o.cutoff_ || field_mode_ != o.field_mode_)
        throw config_error("mismatched Novikov cutoffs or modes");
}

NovikovElem NovikovElem::operator+(const NovikovElem& o) const {
    require_compatible(o);
    NovikovElem r = *this;
    for (const auto& t : o.terms_) r.add_term(t.coeff, t.exponent);
    return r;
}

NovikovElem NovikovElem::operator*(const NovikovElem& o) const {
    require_compatible(o);
    NovikovElem r(cutoff_, field_mode_);
    for (const auto& a : terms_)
        for (const auto& b : o.terms_)
            r.add_term(a.coeff * b.coeff, a.exponent + b.exponent);
    return r;
}

NovikovElem NovikovElem::scaled(const Rational& c) const {
    NovikovElem r(cutoff_, field_mode_);
    for (const auto& t : terms_) r.add_term(t.coeff * c, t.exponent);
    return r;
}

NovikovElem NovikovElem::shifted(const Rational& t) const {
    NovikovElem r(cutoff_, field_mode_);
    for (const auto& a : terms_) r.add_term(a.coeff, a.exponent + t);
    return r;
}

NovikovElem NovikovElem::truncated(const Cutoff& new_cutoff) const {
    NovikovElem r(new_cutoff, field_mode_);
    for (const auto& t : terms_)
        if (below_cutoff(t.exponent, new_cutoff)) r.add_term(t.coeff, t.exponent);
    return r;
}

bool NovikovElem::operator==(const NovikovElem& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].exponent != o.terms_[i].exponent)
            return false;
    return true;
}

HbarSeries HbarSeries::from_novikov(const NovikovElem& c, int genus, int genus_cap) {
    HbarSeries s(genus_cap);
    s.add_at(genus, c);
    return s;
}

NovikovElem HbarSeries::at(int genus) const {
    auto it = coeffs_.find(genus);
    if (it == coeffs_.end()) return NovikovElem();
    return it->second;
}

void HbarSeries::add_at(int genus, const NovikovElem& c) {
    if (genus < 0) throw argument_error("negative genus");
    if (genus > genus_cap_ || c.is_zero()) return; // beyond the cap: dropped
    auto it = coeffs_.find(genus);
    if (it == coeffs_.end()) {
        coeffs_.emplace(genus, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

HbarSeries HbarSeries::operator+(const HbarSeries& o) const {
    if (genus_cap_ != o.genus_cap_) throw config_error("mismatched genus caps");
    HbarSeries r = *this;
    for (const auto& [g, c] : o.coeffs_) r.add_at(g, c);
    return r;
}

HbarSeries HbarSeries::operator*(const HbarSeries& o) const {
    if (genus_cap_ != o.genus_cap_) throw config_error("mismatched genus caps");
    HbarSeries r(genus_cap_);
    for (const auto& [g1, c1] : coeffs_)
        for (const auto& [g2, c2] : o.coeffs_) {
            if (g1 + g2 > genus_cap_) continue;
            r.add_at(g1 + g2, c1 * c2);
        }
    return r;
}

HbarSeries HbarSeries::scaled(const Rational& c) const {
    HbarSeries r(genus_cap_);
    for (const auto& [g, v] : coeffs_) r.add_at(g, v.scaled(c));
    return r;
}

HbarSeries HbarSeries::shifted_genus(int dg) const {
    HbarSeries r(genus_cap_);
    for (const auto& [g, v] : coeffs_) {
        if (g + dg < 0) throw argument_error("negative hbar power");
        r.add_at(g + dg, v);
    }
    return r;
}

HbarSeries HbarSeries::truncated_genus(int cap) const {
    HbarSeries r(genus_cap_);
    for (const auto& [g, v] : coeffs_)
        if (g <= cap) r.add_at(g, v);
    return r;
}

int HbarSeries::min_genus() const {
    if (coeffs_.empty()) return -1;
    return coeffs_.begin()->first;
}

bool HbarSeries::operator==(const HbarSeries& o) const {
    if (coeffs_.size() != o.coeffs_.size()) return false;
    auto it = o.coeffs_.begin();
    for (const auto& [g, v] : coeffs_) {
        if (it->first != g || !(it->second == v)) return false;
        ++it;
    }
    return true;
}

Coefficient Coefficient::zero(const CoeffSpec& spec) {
    Coefficient c;
    c.spec_ = spec;
    c.rat_ = Rational(0);
    c.nov_ = NovikovElem(spec.cutoff, spec.field_mode());
    c.hb_ = HbarSeries(spec.genus_cap);
    return c;
}

Coefficient Coefficient::one(const CoeffSpec& spec) {
    return from_rational(Rational(1), spec);
}

Coefficient Coefficient::from_rational(const Rational& v, const CoeffSpec& spec) {
    Coefficient c = zero(spec);
    if (spec.base == CoeffSpec::Base::rational && !spec.hbar) {
        c.rat_ = v;
        return c;
    }
    NovikovElem n = NovikovElem::scalar(v, spec.cutoff, spec.field_mode());
    if (spec.hbar)
        c.hb_ = HbarSeries::from_novikov(n, 0, spec.genus_cap);
    else
        c.nov_ = n;
    return c;
}

Coefficient Coefficient::from_novikov(const NovikovElem& v, const CoeffSpec& spec) {
    if (spec.base == CoeffSpec::Base::rational) throw config_error("novikov value in rational mode");
    if (v.cutoff() != spec.cutoff || v.field_mode() != spec.field_mode())
        throw config_error("novikov value disagrees with spec");
    Coefficient c = zero(spec);
    if (spec.hbar)
        c.hb_ = HbarSeries::from_novikov(v, 0, spec.genus_cap);
    else
        c.nov_ = v;
    return c;
}

Coefficient Coefficient::from_hbar(const HbarSeries& v, const CoeffSpec& spec) {
    if (!spec.hbar) throw config_error("hbar value in non-hbar mode");
    if (v.genus_cap() != spec.genus_cap) throw config_error("hbar value disagrees with genus cap");
    Coefficient c = zero(spec);
    c.hb_ = v;
    return c;
}

bool Coefficient::is_zero() const {
    if (spec_.hbar) return hb_.is_zero();
    if (spec_.base == CoeffSpec::Base::rational) return rat_.is_zero();
    return nov_.is_zero();
}

Coefficient Coefficient::operator+(const Coefficient& o) const {
    if (spec_ != o.spec_) throw config_error("coefficient mode mismatch");
    Coefficient r = *this;
    if (spec_.hbar)
        r.hb_ = hb_ + o.hb_;
    else if (spec_.base == CoeffSpec::Base::rational)
        r.rat_ = rat_ + o.rat_;
    else
        r.nov_ = nov_ + o.nov_;
    return r;
}

Coefficient Coefficient::operator*(const Coefficient& o) const {
    if (spec_ != o.spec_) throw config_error("coefficient mode mismatch");
    Coefficient r = *this;
    if (spec_.hbar)
        r.hb_ = hb_ * o.hb_;
    else if (spec_.base == CoeffSpec::Base::rational)
        r.rat_ = rat_ * o.rat_;
    else
        r.nov_ = nov_ * o.nov_;
    return r;
}

Coefficient Coefficient::scaled(const Rational& c) const {
    Coefficient r = *this;
    if (spec_.hbar)
        r.hb_ = hb_.scaled(c);
    else if (spec_.base == CoeffSpec::Base::rational)
        r.rat_ = rat_ * c;
    else
        r.nov_ = nov_.scaled(c);
    return r;
}

Coefficient Coefficient::shifted(const Rational& t) const {
    if (t.is_zero()) return *this;
    if (spec_.base == CoeffSpec::Base::rational) throw config_error("T-shift in rational mode");
    Coefficient r = *this;
    if (spec_.hbar) {
        HbarSeries s(spec_.genus_cap);
        for (const auto& [g, v] : hb_.coeffs()) s.add_at(g, v.shifted(t));
        r.hb_ = s;
    } else {
        r.nov_ = nov_.shifted(t);
    }
    return r;
}

Coefficient Coefficient::shifted_genus(int dg) const {
    if (dg == 0) return *this;
    if (!spec_.hbar) throw config_error("hbar shift in non-hbar mode");
    Coefficient r = *this;
    r.hb_ = hb_.shifted_genus(dg);
    return r;
}

bool Coefficient::operator==(const Coefficient& o) const {
    if (spec_ != o.spec_) return false;
    if (spec_.hbar) return hb_ == o.hb_;
    if (spec_.base == CoeffSpec::Base::rational) return rat_ == o.rat_;
    return nov_ == o.nov_;
}

const Rational& Coefficient::rational() const {
    if (spec_.hbar || spec_.base != CoeffSpec::Base::rational)
        throw config_error("not a rational coefficient");
    return rat_;
}

const NovikovElem& Coefficient::novikov() const {
    if (spec_.hbar || spec_.base == CoeffSpec::Base::rational)
        throw config_error("not a novikov coefficient");
    return nov_;
}

const HbarSeries& Coefficient::hbar() const {
    if (!spec_.hbar) throw config_error("not an hbar coefficient");
    return hb_;
}

Rational Coefficient::leading_rational() const {
    if (spec_.hbar) {
        if (hb_.is_zero()) return Rational(0);
        if (hb_.coeffs().size() != 1 || hb_.min_genus() != 0)
            throw argument_error("coefficient is not a pure scalar");
        return Coefficient::from_novikov(hb_.at(0), CoeffSpec::novikov(spec_.base, spec_.cutoff))
            .leading_rational();
    }
    if (spec_.base == CoeffSpec::Base::rational) return rat_;
    if (nov_.is_zero()) return Rational(0);
    if (nov_.terms().size() != 1 || !nov_.terms()[0].exponent.is_zero())
        throw argument_error("coefficient is not a pure scalar");
    return nov_.terms()[0].coeff;
}

} // namespace blinfty
