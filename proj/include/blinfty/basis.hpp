#pragma once

#include "blinfty/space.hpp"

#include <vector>

namespace blinfty {

/// Canonical words over a generator table: length within [min_len, max_len],
/// no odd-generator repeats, optional weight bound. Ordered by the word order.
std::vector<Word> enumerate_words(const GeneratorTable& table, int min_len, int max_len,
                                  const Cutoff& max_weight = {});

/// Canonical sentences assembled from a word pool: sentence length within
/// [min_words, max_words], no odd-parity word repeats, optional total weight
/// bound. Ordered by the sentence order.
std::vector<Sentence> enumerate_sentences(const std::vector<Word>& words, int min_words,
                                          int max_words, const Cutoff& max_weight = {});

/// The bar-model embedding of a word: the sentence of its single-letter words.
Sentence word_as_bar_sentence(const GeneratorTable& table, const Word& w);

/// Reads a bar-model sentence (all words single letters) back as a word.
Word bar_sentence_as_word(const GeneratorTable& table, const Sentence& s);

} // namespace blinfty
