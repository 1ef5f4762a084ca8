#pragma once

#include "blinfty/novikov.hpp"
#include "blinfty/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace blinfty {

/// A graded basis symbol. Parity drives all signs; the optional integer
/// degree is carried for bookkeeping only and must agree with parity mod 2.
struct Generator {
    std::string id;
    int parity = 0; // 0 or 1
    std::optional<long long> degree;
    Rational weight; // nonnegative
};

/// Generator table of one algebra. Indices follow the lexicographic order on
/// ids, which is the normalization order for every sign in the engine.
class GeneratorTable {
  public:
    GeneratorTable() = default;
    explicit GeneratorTable(std::vector<Generator> gens);

    int size() const { return static_cast<int>(gens_.size()); }
    const Generator& at(int idx) const { return gens_.at(idx); }
    const std::vector<Generator>& all() const { return gens_; }
    int index_of(const std::string& id) const; // argument_error if unknown

    bool operator==(const GeneratorTable& o) const;

  private:
    std::vector<Generator> gens_;
    std::map<std::string, int> by_id_;
};

/// Koszul sign of a permutation: (-1)^{sum over inversions of parity_i * parity_j}.
/// perm[i] is the destination position of the object initially at i.
int koszul_sign(const std::vector<int>& perm, const std::vector<int>& parities);

/// Sign for an arrangement given as output-slot -> input-slot indices.
/// Equivalent to koszul_sign of the inverse permutation.
int koszul_sign_of_arrangement(const std::vector<int>& output_to_input,
                               const std::vector<int>& input_parities);

/// Canonical graded-commutative monomial: letters sorted by generator index.
/// The empty word is the scalar unit of SV.
struct Word {
    std::vector<int> letters;
    int parity = 0;
    Rational weight;

    int length() const { return static_cast<int>(letters.size()); }
    bool empty() const { return letters.empty(); }

    bool operator==(const Word& o) const { return letters == o.letters; }
    bool operator!=(const Word& o) const { return !(*this == o); }
    /// Length-lexicographic order; the fixed total order on canonical words.
    bool operator<(const Word& o) const;
};

/// Canonical sentence: words sorted in the fixed word order. Sentences of
/// length 0 only appear inside exponential constructions.
struct Sentence {
    std::vector<Word> words;
    int parity = 0;
    Rational weight;

    int length() const { return static_cast<int>(words.size()); }
    int letter_count() const;
    int max_word_length() const;

    bool operator==(const Sentence& o) const;
    bool operator!=(const Sentence& o) const { return !(*this == o); }
    bool operator<(const Sentence& o) const;
};

/// Result of canonicalization: either zero (odd square) or a signed value.
template <typename T>
struct Signed {
    int sign = 0; // 0 encodes the zero element
    T value{};
    bool is_zero() const { return sign == 0; }
};

/// Sort a letter sequence into a canonical word, computing the Koszul sign.
/// Returns zero when an odd generator repeats.
Signed<Word> canonicalize_word(const GeneratorTable& table, const std::vector<int>& seq);

/// As above but from generator ids (argument_error on unknown id).
Signed<Word> canonicalize_word_ids(const GeneratorTable& table, const std::vector<std::string>& ids);

/// Sort signed canonical words into a canonical sentence. Returns zero when a
/// word of odd parity repeats.
Signed<Sentence> canonicalize_sentence(std::vector<std::pair<int, Word>> words);

Sentence singleton_sentence(const Word& w);
Sentence empty_word_sentence(); // the torsion target: 1 as a length-1 sentence

/// Sparse linear combination of canonical sentences.
class Expression {
  public:
    Expression() : spec_(CoeffSpec::rational_mode()) {}
    explicit Expression(CoeffSpec spec) : spec_(std::move(spec)) {}

    static Expression zero(const CoeffSpec& spec) { return Expression(spec); }
    static Expression term(const Sentence& s, const Coefficient& c);

    const CoeffSpec& spec() const { return spec_; }
    const std::map<Sentence, Coefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add(const Sentence& s, const Coefficient& c);
    void add_scaled(const Expression& o, const Coefficient& scale);
    void add_scaled(const Expression& o, const Rational& scale);

    Coefficient coeff_of(const Sentence& s) const;

    Expression operator+(const Expression& o) const;
    Expression operator-(const Expression& o) const;
    Expression scaled(const Rational& c) const;
    Expression scaled(const Coefficient& c) const;

    bool operator==(const Expression& o) const;

    /// Keep only terms satisfying the predicate.
    template <typename F>
    Expression filtered(F&& keep) const {
        Expression r(spec_);
        for (const auto& [s, c] : terms_)
            if (keep(s)) r.add(s, c);
        return r;
    }

  private:
    CoeffSpec spec_;
    std::map<Sentence, Coefficient> terms_;
};

/// a + scale*b with matching modes (configuration error otherwise).
Expression expr_combine(const Expression& a, const Expression& b, const Coefficient& scale);

/// Graded product of two expressions in SSV (concatenates sentences with
/// Koszul signs and canonicalizes).
Expression odot(const Expression& a, const Expression& b);
Signed<Sentence> odot_sentences(const Sentence& a, const Sentence& b);

} // namespace blinfty
