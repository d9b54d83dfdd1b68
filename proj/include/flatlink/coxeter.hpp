#pragma once

#include "flatlink/error.hpp"
#include "flatlink/simplicial_complex.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace flatlink {

/// A group element written in generator indices.
using Word = std::vector<int>;

inline std::string word_to_string(const Word& w)
{
    if (w.empty())
        return "e";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(w[i]);
    }
    return s;
}

/// ShortLex order: shorter first, then lexicographic.
inline bool shortlex_less(const Word& a, const Word& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

/// Right-angled Coxeter group: involutions s_v, with s_u s_v = s_v s_u iff uv is an edge.
class Racg {
public:
    Racg() = default;

    Racg(int generators, const std::vector<std::pair<Vertex, Vertex>>& commuting)
        : n_(generators), commute_(static_cast<std::size_t>(generators) * static_cast<std::size_t>(generators), 0)
    {
        if (generators < 0)
            throw InputError("negative generator count");
        for (auto [a, b] : commuting) {
            if (a < 0 || b < 0 || a >= n_ || b >= n_)
                throw InputError("commuting pair out of range");
            if (a == b)
                throw InputError("a generator cannot be listed as commuting with itself");
            commute_[idx(a, b)] = commute_[idx(b, a)] = 1;
        }
    }

    int generator_count() const { return n_; }
    bool commute(int a, int b) const { return a != b && commute_[idx(a, b)]; }

    std::size_t commuting_pair_count() const
    {
        return static_cast<std::size_t>(std::count(commute_.begin(), commute_.end(), 1)) / 2;
    }

    void check(const Word& w) const
    {
        for (int x : w) {
            if (x < 0 || x >= n_)
                throw InputError("letter " + std::to_string(x) + " is not a generator");
        }
    }

private:
    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + b; }

    int n_ = 0;
    std::vector<char> commute_;
};

inline Racg racg_from_skeleton(const SimplicialComplex& k)
{
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (const Face& e : k.edges())
        pairs.emplace_back(e[0], e[1]);
    return Racg(k.vertex_count(), pairs);
}

namespace detail {

/// Appends s to a reduced word, cancelling against the last occurrence of s
/// that every later letter commutes with.
inline void push_reduced(const Racg& g, Word& out, int s)
{
    for (std::size_t i = out.size(); i-- > 0;) {
        if (out[i] == s) {
            out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
            return;
        }
        if (!g.commute(out[i], s))
            break;
    }
    out.push_back(s);
}

/// Lexicographically least reordering of a reduced word by commutations:
/// repeatedly emit the smallest letter with nothing blocking it on its left.
inline Word lex_least_linearization(const Racg& g, const Word& reduced)
{
    const std::size_t m = reduced.size();
    std::vector<char> used(m, 0);
    Word out;
    out.reserve(m);
    for (std::size_t step = 0; step < m; ++step) {
        std::size_t best = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (used[i])
                continue;
            bool free = true;
            for (std::size_t j = 0; j < i && free; ++j) {
                if (!used[j] && (reduced[j] == reduced[i] || !g.commute(reduced[j], reduced[i])))
                    free = false;
            }
            if (free && (best == m || reduced[i] < reduced[best]))
                best = i;
        }
        used[best] = 1;
        out.push_back(reduced[best]);
    }
    return out;
}

} // namespace detail

/// ShortLex-least word for the element represented by w.
inline Word normal_form(const Racg& g, const Word& w)
{
    g.check(w);
    Word reduced;
    for (int s : w)
        detail::push_reduced(g, reduced, s);
    return detail::lex_least_linearization(g, reduced);
}

/// Product of two elements in normal form.
inline Word multiply(const Racg& g, const Word& a, const Word& b)
{
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return normal_form(g, w);
}

inline Word inverse(const Racg& g, const Word& w)
{
    return normal_form(g, Word(w.rbegin(), w.rend()));
}

/// Generators s with |ws| < |w| (w reduced).
inline std::vector<int> right_descents(const Racg& g, const Word& w)
{
    std::set<int> out;
    for (std::size_t i = w.size(); i-- > 0;) {
        bool last = true;
        for (std::size_t j = i + 1; j < w.size() && last; ++j)
            last = w[j] != w[i] && g.commute(w[j], w[i]);
        if (last)
            out.insert(w[i]);
    }
    return {out.begin(), out.end()};
}

/// Spheres of the word metric, S_0 .. S_n, each sorted ShortLex.
inline std::vector<std::vector<Word>> ball_spheres(const Racg& g, int n, std::size_t max_elements = 2'000'000)
{
    if (n < 0)
        throw InputError("radius must be non-negative");
    std::vector<std::vector<Word>> spheres{{Word{}}};
    std::size_t total = 1;
    for (int k = 0; k < n; ++k) {
        std::set<Word> next;
        for (const Word& w : spheres.back()) {
            const auto desc = right_descents(g, w);
            for (int s = 0; s < g.generator_count(); ++s) {
                if (std::binary_search(desc.begin(), desc.end(), s))
                    continue;
                Word x = w;
                x.push_back(s);
                next.insert(normal_form(g, x));
            }
        }
        total += next.size();
        if (total > max_elements)
            throw ResourceError("word ball exceeds " + std::to_string(max_elements) + " elements");
        spheres.emplace_back(next.begin(), next.end());
    }
    return spheres;
}

inline std::vector<std::size_t> ball_sizes(const Racg& g, int n)
{
    std::vector<std::size_t> out;
    for (const auto& s : ball_spheres(g, n))
        out.push_back(s.size());
    return out;
}

/// Minimal-length representative of the coset g W_J (J a clique of commuting generators).
inline Word minimal_coset_representative(const Racg& g, Word w, const std::vector<int>& j)
{
    w = normal_form(g, w);
    for (bool changed = true; changed;) {
        changed = false;
        for (int s : right_descents(g, w)) {
            if (std::find(j.begin(), j.end(), s) != j.end()) {
                w.push_back(s);
                w = normal_form(g, w);
                changed = true;
                break;
            }
        }
    }
    return w;
}

} // namespace flatlink
