#include "blinfty/basis.hpp"

#include <algorithm>
#include <functional>

namespace blinfty {

std::vector<Word> enumerate_words(const GeneratorTable& table, int min_len, int max_len,
                                  const Cutoff& max_weight) {
    std::vector<Word> out;
    std::vector<int> letters;
    auto weight_ok = [&](const Rational& w) { return !max_weight || w <= *max_weight; };

    std::function<void(int, const Rational&)> rec = [&](int next_gen, const Rational& weight) {
        int len = static_cast<int>(letters.size());
        if (len >= min_len) {
            auto w = canonicalize_word(table, letters);
            if (!w.is_zero()) out.push_back(w.value);
        }
        if (len == max_len) return;
        for (int g = next_gen; g < table.size(); ++g) {
            // odd generators cannot repeat
            if (!letters.empty() && letters.back() == g && table.at(g).parity == 1) continue;
            Rational nw = weight + table.at(g).weight;
            if (!weight_ok(nw)) continue;
            letters.push_back(g);
            rec(g, nw);
            letters.pop_back();
        }
    };
    rec(0, Rational(0));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Sentence> enumerate_sentences(const std::vector<Word>& words, int min_words,
                                          int max_words, const Cutoff& max_weight) {
    std::vector<Word> pool = words;
    std::sort(pool.begin(), pool.end());
    std::vector<Sentence> out;
    std::vector<Word> chosen;
    auto weight_ok = [&](const Rational& w) { return !max_weight || w <= *max_weight; };

    std::function<void(size_t, const Rational&)> rec = [&](size_t next, const Rational& weight) {
        int len = static_cast<int>(chosen.size());
        if (len >= min_words && len >= 1) {
            std::vector<std::pair<int, Word>> ws;
            for (const auto& w : chosen) ws.emplace_back(1, w);
            auto s = canonicalize_sentence(std::move(ws));
            if (!s.is_zero()) out.push_back(s.value);
        }
        if (len == max_words) return;
        for (size_t i = next; i < pool.size(); ++i) {
            if (!chosen.empty() && chosen.back() == pool[i] && pool[i].parity == 1) continue;
            Rational nw = weight + pool[i].weight;
            if (!weight_ok(nw)) continue;
            chosen.push_back(pool[i]);
            rec(i, nw);
            chosen.pop_back();
        }
    };
    rec(0, Rational(0));
    std::sort(out.begin(), out.end());
    return out;
}

Sentence word_as_bar_sentence(const GeneratorTable& table, const Word& w) {
    std::vector<std::pair<int, Word>> words;
    words.reserve(w.letters.size());
    for (int g : w.letters) {
        auto lw = canonicalize_word(table, {g});
        words.emplace_back(lw.sign, lw.value);
    }
    auto s = canonicalize_sentence(std::move(words));
    if (s.is_zero() || s.sign != 1)
        throw argument_error("word does not embed canonically in the bar model");
    return s.value;
}

Word bar_sentence_as_word(const GeneratorTable& table, const Sentence& s) {
    std::vector<int> letters;
    for (const auto& w : s.words) {
        if (w.length() != 1) throw argument_error("sentence is not in the bar model");
        letters.push_back(w.letters[0]);
    }
    auto w = canonicalize_word(table, letters);
    if (w.is_zero() || w.sign != 1)
        throw argument_error("bar sentence does not read back canonically");
    return w.value;
}

} // namespace blinfty
