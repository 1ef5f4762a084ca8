#include "blinfty/space.hpp"

#include <algorithm>

namespace blinfty {

GeneratorTable::GeneratorTable(std::vector<Generator> gens) : gens_(std::move(gens)) {
    std::sort(gens_.begin(), gens_.end(),
              [](const Generator& a, const Generator& b) { return a.id < b.id; });
    for (int i = 0; i < static_cast<int>(gens_.size()); ++i) {
        const Generator& g = gens_[i];
        if (g.parity != 0 && g.parity != 1) throw argument_error("parity must be 0 or 1: " + g.id);
        if (g.degree && (((*g.degree % 2) + 2) % 2) != g.parity)
            throw argument_error("degree/parity mismatch for generator " + g.id);
        if (g.weight < Rational(0)) throw argument_error("negative weight for generator " + g.id);
        if (!by_id_.emplace(g.id, i).second) throw argument_error("duplicate generator id " + g.id);
    }
}

int GeneratorTable::index_of(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw argument_error("unknown generator id " + id);
    return it->second;
}

bool GeneratorTable::operator==(const GeneratorTable& o) const {
    if (gens_.size() != o.gens_.size()) return false;
    for (size_t i = 0; i < gens_.size(); ++i) {
        const Generator &a = gens_[i], &b = o.gens_[i];
        if (a.id != b.id || a.parity != b.parity || a.degree != b.degree || a.weight != b.weight)
            return false;
    }
    return true;
}

int koszul_sign(const std::vector<int>& perm, const std::vector<int>& parities) {
    if (perm.size() != parities.size()) throw argument_error("koszul_sign length mismatch");
    int acc = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) acc += parities[i] * parities[j];
    return (acc % 2 == 0) ? 1 : -1;
}

int koszul_sign_of_arrangement(const std::vector<int>& output_to_input,
                               const std::vector<int>& input_parities) {
    // Inversions of the arrangement measured on input positions.
    if (output_to_input.size() != input_parities.size())
        throw argument_error("arrangement length mismatch");
    int acc = 0;
    for (size_t i = 0; i < output_to_input.size(); ++i)
        for (size_t j = i + 1; j < output_to_input.size(); ++j)
            if (output_to_input[i] > output_to_input[j])
                acc += input_parities[output_to_input[i]] * input_parities[output_to_input[j]];
    return (acc % 2 == 0) ? 1 : -1;
}

bool Word::operator<(const Word& o) const {
    if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
    return letters < o.letters;
}

int Sentence::letter_count() const {
    int n = 0;
    for (const auto& w : words) n += w.length();
    return n;
}

int Sentence::max_word_length() const {
    int m = 0;
    for (const auto& w : words) m = std::max(m, w.length());
    return m;
}

bool Sentence::operator==(const Sentence& o) const {
    if (words.size() != o.words.size()) return false;
    for (size_t i = 0; i < words.size(); ++i)
        if (words[i] != o.words[i]) return false;
    return true;
}

bool Sentence::operator<(const Sentence& o) const {
    if (words.size() != o.words.size()) return words.size() < o.words.size();
    for (size_t i = 0; i < words.size(); ++i) {
        if (words[i] < o.words[i]) return true;
        if (o.words[i] < words[i]) return false;
    }
    return false;
}

namespace {

// Stable insertion sort tracking the Koszul sign; items compared by key.
template <typename T, typename Key, typename Par>
int sort_with_sign(std::vector<T>& items, Key key, Par par) {
    int sign = 1;
    for (size_t i = 1; i < items.size(); ++i) {
        size_t j = i;
        while (j > 0 && key(items[j]) < key(items[j - 1])) {
            if (par(items[j]) == 1 && par(items[j - 1]) == 1) sign = -sign;
            std::swap(items[j], items[j - 1]);
            --j;
        }
    }
    return sign;
}

} // namespace

Signed<Word> canonicalize_word(const GeneratorTable& table, const std::vector<int>& seq) {
    std::vector<int> letters = seq;
    for (int g : letters)
        if (g < 0 || g >= table.size()) throw argument_error("letter index out of range");
    int sign = sort_with_sign(
        letters, [](int g) { return g; }, [&](int g) { return table.at(g).parity; });
    Word w;
    w.letters = std::move(letters);
    for (size_t i = 0; i + 1 < w.letters.size(); ++i)
        if (w.letters[i] == w.letters[i + 1] && table.at(w.letters[i]).parity == 1)
            return {}; // odd square vanishes
    for (int g : w.letters) {
        w.parity = (w.parity + table.at(g).parity) % 2;
        w.weight += table.at(g).weight;
    }
    return {sign, std::move(w)};
}

Signed<Word> canonicalize_word_ids(const GeneratorTable& table, const std::vector<std::string>& ids) {
    std::vector<int> seq;
    seq.reserve(ids.size());
    for (const auto& id : ids) seq.push_back(table.index_of(id));
    return canonicalize_word(table, seq);
}

Signed<Sentence> canonicalize_sentence(std::vector<std::pair<int, Word>> words) {
    int sign = 1;
    for (auto& [s, w] : words) {
        if (s == 0) return {};
        sign *= s;
    }
    sign *= sort_with_sign(
        words, [](const std::pair<int, Word>& p) -> const Word& { return p.second; },
        [](const std::pair<int, Word>& p) { return p.second.parity; });
    Sentence out;
    out.words.reserve(words.size());
    for (auto& [s, w] : words) {
        out.parity = (out.parity + w.parity) % 2;
        out.weight += w.weight;
        out.words.push_back(std::move(w));
    }
    for (size_t i = 0; i + 1 < out.words.size(); ++i)
        if (out.words[i] == out.words[i + 1] && out.words[i].parity == 1)
            return {}; // odd-parity word repeats
    return {sign, std::move(out)};
}

Sentence singleton_sentence(const Word& w) {
    Sentence s;
    s.words.push_back(w);
    s.parity = w.parity;
    s.weight = w.weight;
    return s;
}

Sentence empty_word_sentence() {
    return singleton_sentence(Word{});
}

Expression Expression::term(const Sentence& s, const Coefficient& c) {
    Expression e(c.spec());
    e.add(s, c);
    return e;
}

void Expression::add(const Sentence& s, const Coefficient& c) {
    if (c.spec() != spec_) throw config_error("coefficient mode mismatch in expression");
    if (c.is_zero()) return;
    auto it = terms_.find(s);
    if (it == terms_.end()) {
        terms_.emplace(s, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Expression::add_scaled(const Expression& o, const Coefficient& scale) {
    if (o.spec_ != spec_) throw config_error("expression mode mismatch");
    for (const auto& [s, c] : o.terms_) add(s, c * scale);
}

void Expression::add_scaled(const Expression& o, const Rational& scale) {
    if (o.spec_ != spec_) throw config_error("expression mode mismatch");
    for (const auto& [s, c] : o.terms_) add(s, c.scaled(scale));
}

Coefficient Expression::coeff_of(const Sentence& s) const {
    auto it = terms_.find(s);
    if (it == terms_.end()) return Coefficient::zero(spec_);
    return it->second;
}

Expression Expression::operator+(const Expression& o) const {
    Expression r = *this;
    r.add_scaled(o, Rational(1));
    return r;
}

Expression Expression::operator-(const Expression& o) const {
    Expression r = *this;
    r.add_scaled(o, Rational(-1));
    return r;
}

Expression Expression::scaled(const Rational& c) const {
    Expression r(spec_);
    for (const auto& [s, v] : terms_) r.add(s, v.scaled(c));
    return r;
}

Expression Expression::scaled(const Coefficient& c) const {
    Expression r(spec_);
    for (const auto& [s, v] : terms_) r.add(s, v * c);
    return r;
}

bool Expression::operator==(const Expression& o) const {
    if (spec_ != o.spec_ || terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [s, c] : terms_) {
        if (!(it->first == s) || !(it->second == c)) return false;
        ++it;
    }
    return true;
}

Expression expr_combine(const Expression& a, const Expression& b, const Coefficient& scale) {
    Expression r = a;
    r.add_scaled(b, scale);
    return r;
}

Signed<Sentence> odot_sentences(const Sentence& a, const Sentence& b) {
    std::vector<std::pair<int, Word>> words;
    words.reserve(a.words.size() + b.words.size());
    for (const auto& w : a.words) words.emplace_back(1, w);
    for (const auto& w : b.words) words.emplace_back(1, w);
    return canonicalize_sentence(std::move(words));
}

Expression odot(const Expression& a, const Expression& b) {
    Expression r(a.spec());
    for (const auto& [sa, ca] : a.terms())
        for (const auto& [sb, cb] : b.terms()) {
            auto s = odot_sentences(sa, sb);
            if (s.is_zero()) continue;
            r.add(s.value, (ca * cb).scaled(Rational(s.sign)));
        }
    return r;
}

} // namespace blinfty
