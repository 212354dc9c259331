#pragma once

#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxrep/matrix.hpp"

namespace maxrep {

/// Freely reduced word in k generators. Letters are signed 1-based
/// generator indices: +j is generator j, -j its inverse.
struct Word {
    std::vector<int> letters;

    Word() = default;
    explicit Word(std::vector<int> ls) : letters(std::move(ls)) {
        for (size_t i = 0; i + 1 < letters.size(); ++i)
            if (letters[i] == -letters[i + 1])
                throw std::invalid_argument("Word: not freely reduced");
        for (int l : letters)
            if (l == 0) throw std::invalid_argument("Word: zero letter");
    }

    size_t length() const { return letters.size(); }

    /// Proper power as a letter string (period strictly dividing length).
    bool is_proper_power() const {
        const size_t n = letters.size();
        for (size_t d = 1; d * 2 <= n; ++d) {
            if (n % d != 0) continue;
            bool periodic = true;
            for (size_t i = d; i < n && periodic; ++i) periodic = letters[i] == letters[i - d];
            if (periodic) return true;
        }
        return false;
    }

    std::string str(int genus = 0) const {
        auto name = [genus](int idx) -> std::string {
            if (genus > 0 && idx <= 2 * genus) {
                int pair = (idx - 1) / 2 + 1;
                return std::string(idx % 2 == 1 ? "a" : "b") + std::to_string(pair);
            }
            return "g" + std::to_string(idx);
        };
        std::string out;
        for (int l : letters) {
            out += name(std::abs(l));
            if (l < 0) out += "'";
        }
        return out.empty() ? "e" : out;
    }
};

/// Standard genus-g surface group presentation
/// <a_1, b_1, ..., a_g, b_g | prod [a_i, b_i]>. Generator a_i has index
/// 2i-1, b_i has index 2i.
struct Presentation {
    int genus = 2;

    int num_generators() const { return 2 * genus; }

    Word relator() const {
        std::vector<int> ls;
        for (int i = 1; i <= genus; ++i) {
            int a = 2 * i - 1, b = 2 * i;
            ls.insert(ls.end(), {a, b, -a, -b});
        }
        return Word(std::move(ls));
    }
};

/// Depth-first walk over all freely reduced words of length <= max_len
/// over `gens` generators. push/pop carry caller state (prefix products);
/// visit fires at every node including the empty word.
template <class Push, class Pop, class Visit>
void walk_reduced_words(int gens, int max_len, Push&& push, Pop&& pop, Visit&& visit) {
    std::vector<int> stack;
    visit(stack);
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(stack.size()) >= max_len) return;
        for (int j = 1; j <= gens; ++j)
            for (int letter : {j, -j}) {
                if (!stack.empty() && stack.back() == -letter) continue;
                stack.push_back(letter);
                push(letter);
                visit(stack);
                self(self);
                pop();
                stack.pop_back();
            }
    };
    if (max_len > 0) rec(rec);
}

/// Emits every freely reduced word of length <= max_len exactly once,
/// empty word included.
template <class Visit>
void enumerate_reduced_words(int gens, int max_len, Visit&& visit) {
    walk_reduced_words(
        gens, max_len, [](int) {}, []() {}, [&](const std::vector<int>& ls) { visit(Word(ls)); });
}

inline size_t count_reduced_words(int gens, int max_len) {
    size_t total = 1;
    size_t at_len = 1;
    for (int l = 1; l <= max_len; ++l) {
        at_len *= (l == 1) ? static_cast<size_t>(2 * gens) : static_cast<size_t>(2 * gens - 1);
        total += at_len;
    }
    return total;
}

/// Left-to-right product of generator images along a word. Inverse
/// letters use the matrix inverse, computed once per distinct letter.
template <class T>
Mat<T> evaluate_word(const std::vector<Mat<T>>& gens, const Word& w) {
    if (gens.empty()) throw std::invalid_argument("evaluate_word: no generator images");
    const int dim = gens[0].rows();
    Mat<T> acc = Mat<T>::identity(dim);
    std::map<int, Mat<T>> inverses;
    for (int l : w.letters) {
        int idx = std::abs(l) - 1;
        if (idx >= static_cast<int>(gens.size()))
            throw std::invalid_argument("evaluate_word: letter outside assignment");
        if (l > 0) {
            acc = acc * gens[idx];
        } else {
            auto it = inverses.find(idx);
            if (it == inverses.end()) it = inverses.emplace(idx, inverse(gens[idx])).first;
            acc = acc * it->second;
        }
    }
    return acc;
}

} // namespace maxrep
