#include "blinfty/assemble.hpp"

#include <algorithm>
#include <numeric>

namespace blinfty {

namespace {

struct LetterInfo {
    int word;
    int pos;
    int gen;
    int parity;
};

std::vector<LetterInfo> linearize(const GeneratorTable& table, const Sentence& s) {
    std::vector<LetterInfo> letters;
    for (int w = 0; w < s.length(); ++w)
        for (int p = 0; p < s.words[w].length(); ++p) {
            int g = s.words[w].letters[p];
            letters.push_back({w, p, g, table.at(g).parity});
        }
    return letters;
}

struct App {
    const ComponentMap* comp;
    std::vector<int> picks; // global letter positions, ascending
};

// Flags a coefficient whose hbar content would fall past the genus cap when
// shifted by dg.
bool shift_drops(const Coefficient& c, int dg) {
    if (!c.spec().hbar || dg == 0) return false;
    for (const auto& [g, v] : c.hbar().coeffs())
        if (g + dg > c.spec().genus_cap && !v.is_zero()) return true;
    return false;
}

// Evaluates one fixed configuration of applications glued into s, appending
// the resulting terms to out. In BL mode cyclic configurations are skipped;
// in IBL mode cycles raise the hbar power.
void evaluate_apps(const GeneratorTable& table_in, const GeneratorTable& table_out,
                   const Sentence& s, const std::vector<LetterInfo>& letters,
                   const Coefficient& in_coeff, std::vector<App> apps, bool ibl_mode,
                   bool consume_all, Expression& out, AssembleStats* stats) {
    const int n_words = s.length();
    const int m = static_cast<int>(letters.size());

    std::sort(apps.begin(), apps.end(), [](const App& a, const App& b) {
        if (a.picks.empty()) return !b.picks.empty();
        if (b.picks.empty()) return false;
        return a.picks.front() < b.picks.front();
    });

    std::vector<int> picked_by(m, -1);
    for (int a = 0; a < static_cast<int>(apps.size()); ++a)
        for (int p : apps[a].picks) picked_by[p] = a;

    // Union-find over words to group applications into graph components.
    std::vector<int> parent(n_words);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<bool> word_touched(n_words, false);
    for (const auto& app : apps) {
        int anchor = -1;
        for (int p : app.picks) {
            int w = letters[p].word;
            word_touched[w] = true;
            if (anchor < 0)
                anchor = find(w);
            else
                parent[find(w)] = anchor = find(anchor);
        }
    }

    // Graph components keyed by root word, ordered by first picked letter.
    struct Component {
        std::vector<int> app_ids;
        std::vector<int> word_ids;
        int first_letter = 1 << 30;
    };
    std::map<int, Component> comps;
    for (int a = 0; a < static_cast<int>(apps.size()); ++a) {
        int root = find(letters[apps[a].picks.front()].word);
        auto& c = comps[root];
        c.app_ids.push_back(a);
        c.first_letter = std::min(c.first_letter, apps[a].picks.front());
    }
    for (int w = 0; w < n_words; ++w)
        if (word_touched[w]) comps[find(w)].word_ids.push_back(w);

    std::vector<const Component*> ordered;
    for (auto& [root, c] : comps) ordered.push_back(&c);
    std::sort(ordered.begin(), ordered.end(),
              [](const Component* a, const Component* b) { return a->first_letter < b->first_letter; });

    // Cycle count per component; BL configurations must stay forests.
    int total_genus = 0;
    for (const Component* c : ordered) {
        int edges = 0;
        for (int a : c->app_ids) {
            edges += static_cast<int>(apps[a].picks.size());
            total_genus += apps[a].comp->genus;
        }
        int cycles = edges - static_cast<int>(c->app_ids.size()) -
                     static_cast<int>(c->word_ids.size()) + 1;
        if (cycles < 0) throw std::logic_error("negative cycle count");
        if (!ibl_mode && cycles != 0) return;
        total_genus += cycles;
    }

    // Output arrangement of letters: per component the applications' picks in
    // application order, then the component's leftover letters; untouched
    // words close the sequence in their original order. Operator symbols ride
    // at the head of their pick blocks.
    std::vector<int> arrangement;
    arrangement.reserve(m);
    int op_cross_parity = 0;
    int parity_so_far = 0;
    for (const Component* c : ordered) {
        for (int a : c->app_ids) {
            op_cross_parity = (op_cross_parity + apps[a].comp->shift * parity_so_far) % 2;
            for (int p : apps[a].picks) {
                arrangement.push_back(p);
                parity_so_far = (parity_so_far + letters[p].parity) % 2;
            }
        }
        for (int w : c->word_ids) {
            // leftover letters of this component's words
            for (int p = 0; p < m; ++p)
                if (letters[p].word == w && picked_by[p] < 0) {
                    arrangement.push_back(p);
                    parity_so_far = (parity_so_far + letters[p].parity) % 2;
                }
        }
    }
    for (int p = 0; p < m; ++p)
        if (!word_touched[letters[p].word]) arrangement.push_back(p);

    std::vector<int> parities(m);
    for (int p = 0; p < m; ++p) parities[p] = letters[p].parity;
    int sign = koszul_sign_of_arrangement(arrangement, parities);
    if (op_cross_parity == 1) sign = -sign;
    if (consume_all && static_cast<int>(arrangement.size()) !=
                           std::accumulate(apps.begin(), apps.end(), 0,
                                           [](int acc, const App& a) {
                                               return acc + static_cast<int>(a.picks.size());
                                           }))
        throw std::logic_error("letters left over in a consume-all assembly");

    // Support lookups per application.
    std::vector<const Expression*> values;
    values.reserve(apps.size());
    int key_sign = 1;
    for (const auto& app : apps) {
        std::vector<int> seq;
        seq.reserve(app.picks.size());
        for (int p : app.picks) seq.push_back(letters[p].gen);
        auto key = canonicalize_word(table_in, seq);
        if (key.is_zero()) return;
        const Expression* v = app.comp->find(key.value);
        if (!v || v->is_zero()) return;
        key_sign *= key.sign;
        values.push_back(v);
    }

    // Cartesian product over the support expressions' terms.
    std::vector<std::map<Sentence, Coefficient>::const_iterator> its, ends;
    for (const Expression* v : values) {
        its.push_back(v->terms().begin());
        ends.push_back(v->terms().end());
    }
    while (true) {
        Coefficient coeff = in_coeff.scaled(Rational(sign * key_sign));
        std::vector<std::pair<int, Word>> out_words;
        bool dead = false;
        for (const Component* c : ordered) {
            std::vector<int> merged;
            for (int a : c->app_ids) {
                const Word& ow = its[a]->first.words[0];
                merged.insert(merged.end(), ow.letters.begin(), ow.letters.end());
            }
            for (int w : c->word_ids)
                for (int p = 0; p < m; ++p)
                    if (letters[p].word == w && picked_by[p] < 0) merged.push_back(letters[p].gen);
            auto cw = canonicalize_word(table_out, merged);
            if (cw.is_zero()) {
                dead = true;
                break;
            }
            out_words.emplace_back(cw.sign, std::move(cw.value));
        }
        if (!dead) {
            for (size_t a = 0; a < its.size(); ++a) coeff = coeff * its[a]->second;
            for (int w = 0; w < n_words; ++w)
                if (!word_touched[w]) out_words.emplace_back(1, s.words[w]);
            auto sent = canonicalize_sentence(std::move(out_words));
            if (!sent.is_zero()) {
                Coefficient c2 = coeff.scaled(Rational(sent.sign));
                if (total_genus != 0) {
                    if (stats && shift_drops(c2, total_genus)) stats->genus_truncated = true;
                    c2 = c2.shifted_genus(total_genus);
                }
                out.add(sent.value, c2);
            }
        }
        // advance the product
        size_t i = 0;
        for (; i < its.size(); ++i) {
            if (++its[i] != ends[i]) break;
            its[i] = values[i]->terms().begin();
        }
        if (i == its.size()) break;
    }
}

// Enumerates k-subsets of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(int n, int k, F&& fn) {
    if (k > n || k < 0) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

void require_bl_components(const std::vector<const ComponentMap*>& comps, const CoeffSpec& spec) {
    for (const ComponentMap* c : comps)
        if (c->genus != 0 && !spec.hbar)
            throw config_error("genus-graded component without hbar coefficients");
}

} // namespace

std::vector<Gluing> enumerate_gluings(const ComponentMap& comp, const GeneratorTable& table,
                                      const Sentence& s, bool ibl_mode) {
    std::vector<Gluing> result;
    auto letters = linearize(table, s);
    const int m = static_cast<int>(letters.size());
    std::vector<int> parities(m);
    for (int p = 0; p < m; ++p) parities[p] = letters[p].parity;

    auto record = [&](const std::vector<int>& picks) {
        Gluing g;
        g.component = &comp;
        std::vector<bool> picked(m, false);
        for (int p : picks) picked[p] = true;
        std::vector<bool> touched_word(s.length(), false);
        for (int p : picks) touched_word[letters[p].word] = true;
        std::vector<int> arrangement = picks;
        for (int p = 0; p < m; ++p)
            if (!picked[p] && touched_word[letters[p].word]) arrangement.push_back(p);
        for (int p = 0; p < m; ++p)
            if (!touched_word[letters[p].word]) arrangement.push_back(p);
        g.sign = koszul_sign_of_arrangement(arrangement, parities);
        int wd = static_cast<int>(std::count(touched_word.begin(), touched_word.end(), true));
        g.words_touched = wd;
        g.genus_increment = comp.genus + static_cast<int>(picks.size()) - wd;
        for (int p : picks) g.picks.emplace_back(letters[p].word, letters[p].pos);
        result.push_back(std::move(g));
    };

    if (ibl_mode) {
        for_each_subset(m, comp.arity, [&](const std::vector<int>& picks) { record(picks); });
        return result;
    }
    // BL rule: choose arity words, then one letter from each chosen word.
    std::vector<int> nonempty;
    for (int w = 0; w < s.length(); ++w)
        if (s.words[w].length() > 0) nonempty.push_back(w);
    for_each_subset(
        static_cast<int>(nonempty.size()), comp.arity, [&](const std::vector<int>& wsel) {
            std::vector<int> word_ids;
            for (int i : wsel) word_ids.push_back(nonempty[i]);
            // one letter position per chosen word
            std::vector<int> choice(word_ids.size(), 0);
            while (true) {
                std::vector<int> picks;
                for (size_t i = 0; i < word_ids.size(); ++i) {
                    int base = 0;
                    for (int w = 0; w < word_ids[i]; ++w) base += s.words[w].length();
                    picks.push_back(base + choice[i]);
                }
                std::sort(picks.begin(), picks.end());
                record(picks);
                size_t i = 0;
                for (; i < choice.size(); ++i) {
                    if (++choice[i] < s.words[word_ids[i]].length()) break;
                    choice[i] = 0;
                }
                if (i == choice.size()) break;
            }
        });
    return result;
}

Expression assemble_hat_p(const std::vector<const ComponentMap*>& comps,
                          const GeneratorTable& table, const Sentence& s, const Coefficient& c) {
    require_bl_components(comps, c.spec());
    Expression out(c.spec());
    auto letters = linearize(table, s);
    for (const ComponentMap* comp : comps) {
        for (const Gluing& g : enumerate_gluings(*comp, table, s, false)) {
            std::vector<int> picks;
            for (auto [w, p] : g.picks) {
                int base = 0;
                for (int i = 0; i < w; ++i) base += s.words[i].length();
                picks.push_back(base + p);
            }
            std::sort(picks.begin(), picks.end());
            evaluate_apps(table, table, s, letters, c, {App{comp, picks}}, false, false, out,
                          nullptr);
        }
    }
    return out;
}

Expression assemble_hat_p(const std::vector<const ComponentMap*>& comps,
                          const GeneratorTable& table, const Expression& x) {
    Expression out(x.spec());
    for (const auto& [s, c] : x.terms()) out.add_scaled(assemble_hat_p(comps, table, s, c), Rational(1));
    return out;
}

Expression assemble_ibl_hat(const std::vector<const ComponentMap*>& comps,
                            const GeneratorTable& table, const Sentence& s, const Coefficient& c,
                            AssembleStats* stats) {
    if (!c.spec().hbar) throw config_error("IBL assembly needs hbar coefficients");
    Expression out(c.spec());
    auto letters = linearize(table, s);
    const int m = static_cast<int>(letters.size());
    for (const ComponentMap* comp : comps)
        for_each_subset(m, comp->arity, [&](const std::vector<int>& picks) {
            evaluate_apps(table, table, s, letters, c, {App{comp, picks}}, true, false, out, stats);
        });
    return out;
}

Expression assemble_ibl_hat(const std::vector<const ComponentMap*>& comps,
                            const GeneratorTable& table, const Expression& x,
                            AssembleStats* stats) {
    Expression out(x.spec());
    for (const auto& [s, c] : x.terms())
        out.add_scaled(assemble_ibl_hat(comps, table, s, c, stats), Rational(1));
    return out;
}

namespace {

struct PhiEnumerator {
    const GeneratorTable& source;
    const GeneratorTable& target;
    const Sentence& s;
    const std::vector<LetterInfo>& letters;
    const Coefficient& in_coeff;
    const std::vector<const ComponentMap*>& normal;
    const std::vector<const ComponentMap*>* pointed; // exactly one app when set
    Expression& out;

    std::vector<int> assigned{}; // letter -> app id or -1
    std::vector<App> apps{};
    int pointed_used = 0;

    void run() {
        assigned.assign(letters.size(), -1);
        recurse();
    }

    void recurse() {
        int anchor = -1;
        for (int p = 0; p < static_cast<int>(letters.size()); ++p)
            if (assigned[p] < 0) {
                anchor = p;
                break;
            }
        if (anchor < 0) {
            if (pointed && pointed_used != 1) return;
            evaluate_apps(source, target, s, letters, in_coeff, apps, false, true, out, nullptr);
            return;
        }
        try_components(anchor, normal, false);
        if (pointed && pointed_used == 0) try_components(anchor, *pointed, true);
    }

    void try_components(int anchor, const std::vector<const ComponentMap*>& set, bool is_pointed) {
        for (const ComponentMap* comp : set) {
            if (comp->support.empty()) continue;
            std::vector<int> picks{anchor};
            extend(comp, picks, anchor + 1, comp->arity - 1, is_pointed);
        }
    }

    // Picks `remaining` further letters at positions >= from, one word each,
    // avoiding words already used by this application.
    void extend(const ComponentMap* comp, std::vector<int>& picks, int from, int remaining,
                bool is_pointed) {
        if (remaining == 0) {
            commit(comp, picks, is_pointed);
            return;
        }
        for (int p = from; p < static_cast<int>(letters.size()); ++p) {
            if (assigned[p] >= 0) continue;
            bool same_word = false;
            for (int q : picks)
                if (letters[q].word == letters[p].word) same_word = true;
            if (same_word) continue;
            picks.push_back(p);
            extend(comp, picks, p + 1, remaining - 1, is_pointed);
            picks.pop_back();
        }
    }

    void commit(const ComponentMap* comp, const std::vector<int>& picks, bool is_pointed) {
        // cheap prune: skip unsupported keys before recursing further
        std::vector<int> seq;
        for (int p : picks) seq.push_back(letters[p].gen);
        auto key = canonicalize_word(source, seq);
        if (key.is_zero() || !comp->supports(key.value)) return;
        int id = static_cast<int>(apps.size());
        apps.push_back(App{comp, picks});
        for (int p : picks) assigned[p] = id;
        if (is_pointed) ++pointed_used;
        recurse();
        if (is_pointed) --pointed_used;
        for (int p : picks) assigned[p] = -1;
        apps.pop_back();
    }
};

} // namespace

Expression assemble_hat_phi(const std::vector<const ComponentMap*>& comps,
                            const GeneratorTable& source, const GeneratorTable& target,
                            const Sentence& s, const Coefficient& c) {
    Expression out(c.spec());
    auto letters = linearize(source, s);
    PhiEnumerator e{source, target, s, letters, c, comps, nullptr, out};
    e.run();
    return out;
}

Expression assemble_hat_phi(const std::vector<const ComponentMap*>& comps,
                            const GeneratorTable& source, const GeneratorTable& target,
                            const Expression& x) {
    Expression out(x.spec());
    for (const auto& [s, c] : x.terms())
        out.add_scaled(assemble_hat_phi(comps, source, target, s, c), Rational(1));
    return out;
}

Expression assemble_hat_phi_pointed(const std::vector<const ComponentMap*>& phi,
                                    const std::vector<const ComponentMap*>& pointed,
                                    const GeneratorTable& source, const GeneratorTable& target,
                                    const Sentence& s, const Coefficient& c) {
    if (pointed.empty()) throw argument_error("pointed component family is empty");
    Expression out(c.spec());
    auto letters = linearize(source, s);
    PhiEnumerator e{source, target, s, letters, c, phi, &pointed, out};
    e.run();
    return out;
}

Expression assemble_hat_phi_pointed(const std::vector<const ComponentMap*>& phi,
                                    const std::vector<const ComponentMap*>& pointed,
                                    const GeneratorTable& source, const GeneratorTable& target,
                                    const Expression& x) {
    Expression out(x.spec());
    for (const auto& [s, c] : x.terms())
        out.add_scaled(assemble_hat_phi_pointed(phi, pointed, source, target, s, c), Rational(1));
    return out;
}

namespace {

// Partitions of the tag bitmask into unordered nonempty blocks, each block
// anchored at its lowest tag so every partition is produced once.
void tag_partitions(unsigned remaining, std::vector<unsigned>& blocks,
                    const std::function<void(const std::vector<unsigned>&)>& fn) {
    if (remaining == 0) {
        fn(blocks);
        return;
    }
    unsigned low = remaining & (~remaining + 1);
    unsigned rest = remaining & ~low;
    // enumerate subsets of rest joined with the anchor bit
    unsigned sub = rest;
    while (true) {
        unsigned block = low | sub;
        blocks.push_back(block);
        tag_partitions(remaining & ~block, blocks, fn);
        blocks.pop_back();
        if (sub == 0) break;
        sub = (sub - 1) & rest;
    }
}

struct MultiEnumerator {
    const GeneratorTable& table;
    const Sentence& s;
    const std::vector<LetterInfo>& letters;
    const Coefficient& in_coeff;
    const std::vector<const ComponentMap*>& pointed;
    Expression& out;

    std::vector<bool> used{};
    std::vector<App> apps{};

    void run(int num_tags) {
        if (num_tags < 1) throw argument_error("need at least one constraint tag");
        unsigned full = (num_tags >= 32) ? ~0u : ((1u << num_tags) - 1);
        for (const ComponentMap* c : pointed)
            if (c->tag_mask == 0 || (c->tag_mask & ~full))
                throw argument_error("pointed component tag outside the declared tag set");
        used.assign(letters.size(), false);
        std::vector<unsigned> blocks;
        tag_partitions(full, blocks, [&](const std::vector<unsigned>& bs) { place_block(bs, 0); });
    }

    void place_block(const std::vector<unsigned>& blocks, size_t i) {
        if (i == blocks.size()) {
            evaluate_apps(table, table, s, letters, in_coeff, apps, false, false, out, nullptr);
            return;
        }
        for (const ComponentMap* comp : pointed) {
            if (comp->tag_mask != blocks[i]) continue;
            std::vector<int> picks;
            pick_letters(blocks, i, comp, picks, 0, comp->arity);
        }
    }

    // BL picks: one letter per word, words distinct within the application,
    // positions globally unused.
    void pick_letters(const std::vector<unsigned>& blocks, size_t i, const ComponentMap* comp,
                      std::vector<int>& picks, int from, int remaining) {
        if (remaining == 0) {
            for (int p : picks) used[p] = true;
            apps.push_back(App{comp, picks});
            place_block(blocks, i + 1);
            apps.pop_back();
            for (int p : picks) used[p] = false;
            return;
        }
        for (int p = from; p < static_cast<int>(letters.size()); ++p) {
            if (used[p]) continue;
            bool same_word = false;
            for (int q : picks)
                if (letters[q].word == letters[p].word) same_word = true;
            if (same_word) continue;
            picks.push_back(p);
            pick_letters(blocks, i, comp, picks, p + 1, remaining - 1);
            picks.pop_back();
        }
    }
};

} // namespace

Expression assemble_multi_pointed(const std::vector<const ComponentMap*>& pointed, int num_tags,
                                  const GeneratorTable& table, const Sentence& s,
                                  const Coefficient& c) {
    Expression out(c.spec());
    auto letters = linearize(table, s);
    MultiEnumerator e{table, s, letters, c, pointed, out};
    e.run(num_tags);
    return out;
}

Expression assemble_multi_pointed(const std::vector<const ComponentMap*>& pointed, int num_tags,
                                  const GeneratorTable& table, const Expression& x) {
    Expression out(x.spec());
    for (const auto& [s, c] : x.terms())
        out.add_scaled(assemble_multi_pointed(pointed, num_tags, table, s, c), Rational(1));
    return out;
}

Expression expression_from_presentation(const GeneratorTable& table, const CoeffSpec& spec,
                                        const std::vector<std::vector<std::string>>& word_seqs,
                                        const Coefficient& c) {
    std::vector<std::pair<int, Word>> words;
    for (const auto& seq : word_seqs) {
        auto w = canonicalize_word_ids(table, seq);
        if (w.is_zero()) return Expression::zero(spec);
        words.emplace_back(w.sign, std::move(w.value));
    }
    auto s = canonicalize_sentence(std::move(words));
    if (s.is_zero()) return Expression::zero(spec);
    Expression e(spec);
    e.add(s.value, c.scaled(Rational(s.sign)));
    return e;
}

} // namespace blinfty
