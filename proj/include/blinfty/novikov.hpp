#pragma once

#include "blinfty/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace blinfty {

/// Truncated Novikov series: sum of c*T^t with strictly increasing exponents,
/// no zero coefficients, every exponent below the cutoff. Ring mode keeps all
/// exponents >= 0, field mode allows negative exponents.
class NovikovElem {
  public:
    struct Term {
        Rational coeff;
        Rational exponent;
    };

    NovikovElem() : field_mode_(false) {}
    NovikovElem(Cutoff cutoff, bool field_mode) : cutoff_(std::move(cutoff)), field_mode_(field_mode) {}

    static NovikovElem scalar(const Rational& c, Cutoff cutoff, bool field_mode);
    static NovikovElem monomial(const Rational& c, const Rational& t, Cutoff cutoff, bool field_mode);

    const std::vector<Term>& terms() const { return terms_; }
    const Cutoff& cutoff() const { return cutoff_; }
    bool field_mode() const { return field_mode_; }
    bool is_zero() const { return terms_.empty(); }

    /// Least exponent present; only valid on nonzero elements.
    Rational min_exponent() const;

    void add_term(const Rational& c, const Rational& t);

    NovikovElem operator+(const NovikovElem& o) const;
    NovikovElem operator*(const NovikovElem& o) const;
    NovikovElem scaled(const Rational& c) const;
    NovikovElem shifted(const Rational& t) const; // multiply by T^t

    NovikovElem truncated(const Cutoff& new_cutoff) const;

    bool operator==(const NovikovElem& o) const;

  private:
    void require_compatible(const NovikovElem& o) const;

    std::vector<Term> terms_;
    Cutoff cutoff_;
    bool field_mode_;
};

/// Genus-graded polynomial in hbar with Novikov coefficients, truncated at a
/// hard genus cap. Entries at absent genera are zero.
class HbarSeries {
  public:
    HbarSeries() : genus_cap_(0) {}
    explicit HbarSeries(int genus_cap) : genus_cap_(genus_cap) {}

    static HbarSeries from_novikov(const NovikovElem& c, int genus, int genus_cap);

    const std::map<int, NovikovElem>& coeffs() const { return coeffs_; }
    int genus_cap() const { return genus_cap_; }
    bool is_zero() const { return coeffs_.empty(); }

    NovikovElem at(int genus) const;
    void add_at(int genus, const NovikovElem& c);

    HbarSeries operator+(const HbarSeries& o) const;
    HbarSeries operator*(const HbarSeries& o) const;
    HbarSeries scaled(const Rational& c) const;
    HbarSeries shifted_genus(int dg) const; // multiply by hbar^dg, dropping past the cap
    HbarSeries truncated_genus(int cap) const;

    /// Least hbar power present (the hbar width filtration level); -1 on zero.
    int min_genus() const;

    bool operator==(const HbarSeries& o) const;

  private:
    std::map<int, NovikovElem> coeffs_;
    int genus_cap_;
};

/// Coefficient domain of an expression. Two expressions combine only when the
/// specs match exactly.
struct CoeffSpec {
    enum class Base { rational, novikov_ring, novikov_field };
    Base base = Base::rational;
    Cutoff cutoff;      // Novikov truncation; ignored for rational
    bool hbar = false;  // genus-graded coefficients
    int genus_cap = 0;

    bool operator==(const CoeffSpec& o) const {
        return base == o.base && cutoff == o.cutoff && hbar == o.hbar && genus_cap == o.genus_cap;
    }
    bool operator!=(const CoeffSpec& o) const { return !(*this == o); }

    static CoeffSpec rational_mode() { return CoeffSpec{}; }
    static CoeffSpec novikov(Base b, Cutoff w) { return CoeffSpec{b, std::move(w), false, 0}; }
    CoeffSpec with_hbar(int cap) const { return CoeffSpec{base, cutoff, true, cap}; }
    bool field_mode() const { return base == Base::novikov_field; }
};

/// One coefficient value tagged with its spec. Arithmetic requires equal specs.
class Coefficient {
  public:
    Coefficient() : spec_(CoeffSpec::rational_mode()) {}

    static Coefficient zero(const CoeffSpec& spec);
    static Coefficient one(const CoeffSpec& spec);
    static Coefficient from_rational(const Rational& c, const CoeffSpec& spec);
    static Coefficient from_novikov(const NovikovElem& c, const CoeffSpec& spec);
    static Coefficient from_hbar(const HbarSeries& c, const CoeffSpec& spec);

    const CoeffSpec& spec() const { return spec_; }
    bool is_zero() const;

    Coefficient operator+(const Coefficient& o) const;
    Coefficient operator*(const Coefficient& o) const;
    Coefficient scaled(const Rational& c) const;
    /// Multiply by T^t (configuration error in rational mode for t != 0).
    Coefficient shifted(const Rational& t) const;
    /// Multiply by hbar^dg (requires hbar spec when dg != 0).
    Coefficient shifted_genus(int dg) const;

    bool operator==(const Coefficient& o) const;

    /// Accessors; each checks the spec.
    const Rational& rational() const;
    const NovikovElem& novikov() const;
    const HbarSeries& hbar() const;

    /// Strict-mode views: rational part of baseline coefficient, etc.
    Rational leading_rational() const; // rational value; error if not a pure scalar

  private:
    CoeffSpec spec_;
    Rational rat_;
    NovikovElem nov_;
    HbarSeries hb_;
};

} // namespace blinfty
