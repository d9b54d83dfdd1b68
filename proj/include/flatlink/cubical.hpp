#pragma once

#include "flatlink/complex_io.hpp"
#include "flatlink/error.hpp"
#include "flatlink/homology.hpp"
#include "flatlink/simplicial_complex.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace flatlink {

/// Subset of the ground set I as a bit set (bit i <-> vertex i).
using Bits = std::uint64_t;

inline Bits mask_of(const Face& face)
{
    Bits m = 0;
    for (Vertex v : face)
        m |= Bits{1} << v;
    return m;
}

inline Face face_of(Bits mask)
{
    Face f;
    for (int i = 0; mask; ++i, mask >>= 1) {
        if (mask & 1)
            f.push_back(i);
    }
    return f;
}

/**
 * A cell of a cube complex in [-1,1]^I: the translate of [-1,1]^J whose
 * remaining coordinates are given by `coset` (bit set <-> coordinate +1).
 * The coset representative has every bit of J cleared.
 */
struct CubicalCell {
    Bits type = 0;
    Bits coset = 0;

    int dimension() const { return std::popcount(type); }
    bool contains_vertex(Bits v) const { return (v & ~type) == coset; }

    /// Cells ordered by (dimension, J, coset).
    friend bool operator<(const CubicalCell& a, const CubicalCell& b)
    {
        if (a.dimension() != b.dimension())
            return a.dimension() < b.dimension();
        return a.type != b.type ? a.type < b.type : a.coset < b.coset;
    }
    friend bool operator==(const CubicalCell&, const CubicalCell&) = default;
};

inline std::string bits_to_hex(Bits b)
{
    static const char* digits = "0123456789abcdef";
    if (b == 0)
        return "0";
    std::string s;
    while (b) {
        s.insert(s.begin(), digits[b & 15]);
        b >>= 4;
    }
    return s;
}

inline Bits hex_to_bits(std::string s)
{
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0)
        s = s.substr(2);
    if (s.empty() || s.size() > 16)
        throw InputError("bad hex bit string '" + s + "'");
    Bits b = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9')
            d = c - '0';
        else if (c >= 'a' && c <= 'f')
            d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            d = c - 'A' + 10;
        else
            throw InputError("bad hex bit string '" + s + "'");
        b = (b << 4) | static_cast<Bits>(d);
    }
    return b;
}

/// Cube complex inside [-1,1]^I with cells stored per dimension, sorted.
class CubicalComplex {
public:
    static constexpr int max_supported_ground = 62;

    CubicalComplex() = default;

    /// Closure of the given cells.
    static CubicalComplex from_cells(int ground, const std::vector<CubicalCell>& generators)
    {
        if (ground < 0 || ground > max_supported_ground)
            throw InputError("ground set size " + std::to_string(ground) + " unsupported");
        const Bits all = ground == 0 ? 0 : (ground == 64 ? ~Bits{0} : ((Bits{1} << ground) - 1));
        std::set<CubicalCell> cells;
        for (const auto& c : generators) {
            if ((c.type & ~all) || (c.coset & ~all))
                throw InputError("cell uses coordinates outside the ground set");
            if (c.type & c.coset)
                throw InputError("coset representative must vanish on J");
            // All faces: shrink J to any subset, choosing the dropped coordinates freely.
            for (Bits sub = c.type;; sub = (sub - 1) & c.type) {
                const Bits freed = c.type & ~sub;
                for (Bits pick = freed;; pick = (pick - 1) & freed) {
                    cells.insert({sub, c.coset | pick});
                    if (pick == 0)
                        break;
                }
                if (sub == 0)
                    break;
            }
        }
        CubicalComplex out;
        out.ground_ = ground;
        for (const auto& c : cells) {
            if (static_cast<int>(out.cells_.size()) <= c.dimension())
                out.cells_.resize(static_cast<std::size_t>(c.dimension()) + 1);
            out.cells_[c.dimension()].push_back(c);
        }
        return out;
    }

    /// Adopts cells already grouped by dimension, sorted and closed under faces.
    static CubicalComplex from_sorted_cells(int ground, std::vector<std::vector<CubicalCell>> cells)
    {
        CubicalComplex out;
        out.ground_ = ground;
        out.cells_ = std::move(cells);
        for (std::size_t d = 0; d < out.cells_.size(); ++d) {
            if (!std::is_sorted(out.cells_[d].begin(), out.cells_[d].end()))
                throw InvariantError("cube cells not sorted");
        }
        return out;
    }

    int ground() const { return ground_; }
    int dimension() const { return static_cast<int>(cells_.size()) - 1; }

    const std::vector<CubicalCell>& cells(int d) const
    {
        static const std::vector<CubicalCell> none;
        return d < 0 || d > dimension() ? none : cells_[static_cast<std::size_t>(d)];
    }

    std::vector<std::size_t> f_vector() const
    {
        std::vector<std::size_t> f;
        for (const auto& c : cells_)
            f.push_back(c.size());
        return f;
    }

    long long euler_characteristic() const
    {
        long long chi = 0;
        for (std::size_t d = 0; d < cells_.size(); ++d)
            chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(cells_[d].size());
        return chi;
    }

    bool contains(const CubicalCell& c) const
    {
        const auto& list = cells(c.dimension());
        return std::binary_search(list.begin(), list.end(), c);
    }

    std::size_t index_of(const CubicalCell& c) const
    {
        const auto& list = cells(c.dimension());
        auto it = std::lower_bound(list.begin(), list.end(), c);
        if (it == list.end() || !(*it == c))
            throw InputError("cell not in complex");
        return static_cast<std::size_t>(it - list.begin());
    }

    /// Distinct face types J present, sorted by mask.
    std::vector<Bits> types() const
    {
        std::set<Bits> t;
        for (const auto& list : cells_) {
            for (const auto& c : list)
                t.insert(c.type);
        }
        return {t.begin(), t.end()};
    }

    /// Cells that are not faces of any other cell.
    std::vector<CubicalCell> top_cells() const
    {
        std::set<CubicalCell> covered;
        for (const auto& list : cells_) {
            for (const auto& c : list) {
                for (Bits t = c.type; t; t &= t - 1) {
                    const Bits j = t & (~t + 1);
                    covered.insert({c.type & ~j, c.coset});
                    covered.insert({c.type & ~j, c.coset | j});
                }
            }
        }
        std::vector<CubicalCell> out;
        for (const auto& list : cells_) {
            for (const auto& c : list) {
                if (!covered.count(c))
                    out.push_back(c);
            }
        }
        return out;
    }

    friend bool operator==(const CubicalComplex& a, const CubicalComplex& b)
    {
        return a.ground_ == b.ground_ && a.cells_ == b.cells_;
    }

private:
    int ground_ = 0;
    std::vector<std::vector<CubicalCell>> cells_;
};

inline constexpr int default_max_ground = 24;
inline constexpr std::size_t default_max_cells = std::size_t{1} << 26;

/**
 * P_K: all faces of [-1,1]^I of type J for J a simplex of K (or empty).
 * Cells of type J are indexed by (C_2)^I / (C_2)^J, i.e. coset bits off J.
 */
inline CubicalComplex build_pk(const SimplicialComplex& k, int max_ground = default_max_ground,
                               std::size_t max_cells = default_max_cells)
{
    const int n = k.vertex_count();
    if (n > max_ground || n > CubicalComplex::max_supported_ground)
        throw ResourceError("ground set has " + std::to_string(n) + " vertices; bound is "
                            + std::to_string(std::min(max_ground, CubicalComplex::max_supported_ground))
                            + " (2^|I| cube vertices)");
    std::vector<std::vector<Bits>> types(1, std::vector<Bits>{0});
    std::size_t total = std::size_t{1} << n;
    for (int d = 0; d <= k.dimension(); ++d) {
        std::vector<Bits> masks;
        for (const Face& f : k.faces(d))
            masks.push_back(mask_of(f));
        std::sort(masks.begin(), masks.end());
        total += masks.size() * (std::size_t{1} << (n - d - 1));
        if (total > max_cells)
            throw ResourceError("P_K would have more than " + std::to_string(max_cells) + " cells");
        types.push_back(std::move(masks));
    }
    const Bits all = n == 0 ? 0 : (Bits{1} << n) - 1;
    std::vector<std::vector<CubicalCell>> by_dim;
    for (const auto& list : types) {
        std::vector<CubicalCell> cells;
        for (Bits j : list) {
            const Bits free = all & ~j;
            std::vector<Bits> cosets;
            for (Bits s = free;; s = (s - 1) & free) {
                cosets.push_back(s);
                if (s == 0)
                    break;
            }
            std::reverse(cosets.begin(), cosets.end());
            for (Bits c : cosets)
                cells.push_back({j, c});
        }
        by_dim.push_back(std::move(cells));
    }
    return CubicalComplex::from_sorted_cells(n, std::move(by_dim));
}

/**
 * Cubical chains. For a cell of type J and j the r-th element of J (from 0),
 * the face at coordinate +1 in direction j has sign (-1)^r and the face at
 * -1 has the opposite sign.
 */
inline ChainComplex cubical_chain_complex(const CubicalComplex& p)
{
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::string>> labels;
    for (int d = 0; d <= p.dimension(); ++d) {
        counts.push_back(p.cells(d).size());
        std::vector<std::string> names;
        for (const auto& c : p.cells(d))
            names.push_back(detail::face_to_string(face_of(c.type)) + "@" + bits_to_hex(c.coset));
        labels.push_back(std::move(names));
    }
    std::vector<IntegerMatrix> boundaries;
    for (int d = 1; d <= p.dimension(); ++d) {
        std::vector<SparseRow> rows(counts[d - 1]);
        const auto& cells = p.cells(d);
        for (std::size_t col = 0; col < cells.size(); ++col) {
            const auto& c = cells[col];
            int rank = 0;
            for (Bits t = c.type; t; t &= t - 1, ++rank) {
                const Bits j = t & (~t + 1);
                const int sign = rank % 2 == 0 ? 1 : -1;
                rows[p.index_of({c.type & ~j, c.coset | j})].emplace_back(col, sign);
                rows[p.index_of({c.type & ~j, c.coset})].emplace_back(col, -sign);
            }
        }
        boundaries.push_back(IntegerMatrix::from_rows(counts[d - 1], counts[d], std::move(rows)));
    }
    return ChainComplex(std::move(counts), std::move(boundaries), std::move(labels));
}

inline HomologyProfile cubical_homology(const CubicalComplex& p) { return homology(cubical_chain_complex(p)); }

/// Link of a cube vertex: one (|J|-1)-simplex per cell of type J containing
/// v, labeled by ground coordinates.
inline Subcomplex pk_vertex_link(const CubicalComplex& p, Bits v)
{
    const CubicalCell vertex{0, v};
    if (!p.contains(vertex))
        throw InputError("0x" + bits_to_hex(v) + " is not a vertex of the cube complex");
    std::vector<Face> faces;
    std::set<Vertex> used;
    for (Bits j : p.types()) {
        if (j == 0 || !p.contains({j, v & ~j}))
            continue;
        Face f = face_of(j);
        used.insert(f.begin(), f.end());
        faces.push_back(std::move(f));
    }
    return detail::relabeled({used.begin(), used.end()}, std::move(faces));
}

/// True iff the link at v equals K under the identity on I.
inline bool verify_pk_vertex_link(const CubicalComplex& p, const SimplicialComplex& k, Bits v)
{
    auto link = pk_vertex_link(p, v);
    std::vector<Vertex> identity(static_cast<std::size_t>(k.vertex_count()));
    std::iota(identity.begin(), identity.end(), 0);
    return link.vertices == identity && is_isomorphism(link.complex, k, identity);
}

/**
 * The copy of P_square = (square) x (square) in P_Sigma through the cube
 * vertex `base`: cells whose type J lies in the square's vertex set and
 * whose coordinates off the square agree with `base`.
 */
inline CubicalComplex torus_subcomplex(const CubicalComplex& p, const SimplicialComplex& sigma, const Square& s,
                                       Bits base = 0)
{
    if (!is_square_of(sigma, s))
        throw InputError("not a square of the complex");
    if (p.ground() != sigma.vertex_count())
        throw InputError("cube complex and simplicial complex have different ground sets");
    const Bits square = mask_of({s.cycle.begin(), s.cycle.end()});
    std::vector<CubicalCell> cells;
    for (Bits j : p.types()) {
        if ((j & ~square) != 0)
            continue;
        const Bits free = square & ~j;
        for (Bits pick = free;; pick = (pick - 1) & free) {
            CubicalCell c{j, (base & ~square) | pick};
            if (!p.contains(c))
                throw InvariantError("torus cell missing from the ambient cube complex");
            cells.push_back(c);
            if (pick == 0)
                break;
        }
    }
    return CubicalComplex::from_cells(p.ground(), cells);
}

inline Json cubical_to_json(const CubicalComplex& p)
{
    Json cells = Json::array();
    for (const auto& c : p.top_cells())
        cells.push_back(Json{{"J", face_of(c.type)}, {"coset", bits_to_hex(c.coset)}});
    return Json{{"ground", p.ground()}, {"cells", cells}};
}

inline CubicalComplex cubical_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("ground") || !j["ground"].is_number_integer() || !j.contains("cells")
        || !j["cells"].is_array())
        throw InputError("cube complex: expected {\"ground\": n, \"cells\": [...]}");
    const long long n = j["ground"].get<long long>();
    if (n < 0 || n > CubicalComplex::max_supported_ground)
        throw InputError("cube complex: ground size out of range");
    std::vector<CubicalCell> cells;
    for (std::size_t i = 0; i < j["cells"].size(); ++i) {
        const Json& c = j["cells"][i];
        const std::string where = "cube complex: cell " + std::to_string(i);
        if (!c.is_object() || !c.contains("J") || !c["J"].is_array() || !c.contains("coset") || !c["coset"].is_string())
            throw InputError(where + " malformed");
        Bits type = 0;
        for (const Json& x : c["J"]) {
            if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() >= n)
                throw InputError(where + " has a bad J entry");
            type |= Bits{1} << x.get<int>();
        }
        cells.push_back({type, hex_to_bits(c["coset"].get<std::string>())});
    }
    return CubicalComplex::from_cells(static_cast<int>(n), cells);
}

} // namespace flatlink
