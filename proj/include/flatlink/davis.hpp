#pragma once

#include "flatlink/complex_io.hpp"
#include "flatlink/coxeter.hpp"
#include "flatlink/error.hpp"
#include "flatlink/simplicial_complex.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace flatlink {

/// Cube g * [-1,1]^J of the Davis complex; g has no right descent in J.
struct DavisCell {
    std::size_t vertex = 0; // index of g in DavisBall::vertices
    Face type;

    int dimension() const { return static_cast<int>(type.size()); }
    friend bool operator==(const DavisCell&, const DavisCell&) = default;
};

/**
 * Cells of the Davis complex of Gamma_K all of whose vertices have word
 * length at most `radius`. Vertices are sorted ShortLex, cells by
 * (dimension, vertex, type).
 */
struct DavisBall {
    int radius = 0;
    Racg group;
    SimplicialComplex nerve;
    std::vector<Word> vertices;
    std::vector<DavisCell> cells;

    std::optional<std::size_t> index_of(const Word& w) const
    {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), w, shortlex_less);
        if (it == vertices.end() || *it != w)
            return std::nullopt;
        return static_cast<std::size_t>(it - vertices.begin());
    }

    std::vector<std::size_t> f_vector() const
    {
        std::vector<std::size_t> f;
        for (const auto& c : cells) {
            if (static_cast<int>(f.size()) <= c.dimension())
                f.resize(static_cast<std::size_t>(c.dimension()) + 1, 0);
            ++f[static_cast<std::size_t>(c.dimension())];
        }
        return f;
    }

    /// Group elements spanned by a cell: g times every product of a subset of J.
    std::vector<Word> cell_vertices(const DavisCell& c) const
    {
        std::vector<Word> out;
        const std::size_t m = c.type.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            Word w = vertices[c.vertex];
            for (std::size_t i = 0; i < m; ++i) {
                if (mask >> i & 1)
                    w.push_back(c.type[i]);
            }
            out.push_back(normal_form(group, w));
        }
        return out;
    }

    /// Length of the minimal representative of v W_J plus |J|; the cell of
    /// type J at v lies in the ball iff this is at most the radius.
    std::size_t cell_reach(const Word& v, const Face& j) const
    {
        return minimal_coset_representative(group, v, j).size() + j.size();
    }

    /// A vertex is interior when every cell through it lies in the ball.
    bool is_interior(std::size_t v) const
    {
        for (const Face& f : nerve.facets()) {
            if (cell_reach(vertices.at(v), f) > static_cast<std::size_t>(radius))
                return false;
        }
        return true;
    }

    /// Link of a vertex inside the ball: the types J of ball cells through it.
    Subcomplex vertex_link(std::size_t v) const
    {
        const Word& w = vertices.at(v);
        std::vector<Face> faces;
        std::set<Vertex> used;
        for (int d = 0; d <= nerve.dimension(); ++d) {
            for (const Face& j : nerve.faces(d)) {
                if (cell_reach(w, j) <= static_cast<std::size_t>(radius)) {
                    used.insert(j.begin(), j.end());
                    faces.push_back(j);
                }
            }
        }
        return detail::relabeled({used.begin(), used.end()}, std::move(faces));
    }
};

inline DavisBall davis_ball(const SimplicialComplex& k, int n, std::size_t max_vertices = 200'000)
{
    if (n < 0)
        throw InputError("radius must be non-negative");
    DavisBall b;
    b.radius = n;
    b.group = racg_from_skeleton(k);
    b.nerve = k;
    for (auto& sphere : ball_spheres(b.group, n, max_vertices)) {
        for (auto& w : sphere)
            b.vertices.push_back(std::move(w));
    }
    std::vector<std::vector<Face>> types{{Face{}}};
    for (int d = 0; d <= k.dimension(); ++d)
        types.push_back(k.faces(d));
    for (std::size_t d = 0; d < types.size(); ++d) {
        for (std::size_t v = 0; v < b.vertices.size(); ++v) {
            const Word& g = b.vertices[v];
            if (g.size() + d > static_cast<std::size_t>(n))
                continue;
            const auto desc = right_descents(b.group, g);
            for (const Face& j : types[d]) {
                if (std::none_of(j.begin(), j.end(),
                                 [&](Vertex s) { return std::binary_search(desc.begin(), desc.end(), s); }))
                    b.cells.push_back({v, j});
            }
        }
    }
    return b;
}

inline DavisBall davis_ball(const Racg& g, const SimplicialComplex& k, int n)
{
    if (g.generator_count() != k.vertex_count())
        throw InputError("group and complex have different generator sets");
    for (int a = 0; a < k.vertex_count(); ++a) {
        for (int c = a + 1; c < k.vertex_count(); ++c) {
            if (g.commute(a, c) != k.has_edge(a, c))
                throw InputError("group is not the right-angled Coxeter group of the complex");
        }
    }
    return davis_ball(k, n);
}

/// Cells of a ball lying in the translate h * W_S of the square's parabolic subgroup.
struct FlatSubcomplex {
    Square square;
    Word translate;
    std::vector<std::size_t> cells; // indices into DavisBall::cells
    std::vector<std::size_t> vertices;
};

inline FlatSubcomplex flat_from_square(const DavisBall& b, const Square& s, const Word& h)
{
    if (!is_square_of(b.nerve, s))
        throw InputError("not a square of the complex");
    const Word base = normal_form(b.group, h);
    if (!b.index_of(base))
        throw InputError("translate " + word_to_string(base) + " is not a vertex of the ball");
    const auto sv = s.sorted_vertices();
    auto in_square = [&](Vertex x) { return std::find(sv.begin(), sv.end(), x) != sv.end(); };
    FlatSubcomplex f{s, base, {}, {}};
    const Word base_inv(base.rbegin(), base.rend());
    std::vector<char> member(b.vertices.size(), 0);
    for (std::size_t v = 0; v < b.vertices.size(); ++v) {
        const Word rel = multiply(b.group, base_inv, b.vertices[v]);
        if (std::all_of(rel.begin(), rel.end(), in_square)) {
            member[v] = 1;
            f.vertices.push_back(v);
        }
    }
    for (std::size_t c = 0; c < b.cells.size(); ++c) {
        const auto& cell = b.cells[c];
        if (member[cell.vertex] && std::all_of(cell.type.begin(), cell.type.end(), in_square))
            f.cells.push_back(c);
    }
    return f;
}

/// Link of v within the flat: the types of the flat's cells through v,
/// labeled by the square's vertices.
inline Subcomplex flat_vertex_link(const DavisBall& b, const FlatSubcomplex& f, std::size_t v)
{
    std::vector<Face> faces;
    std::set<Vertex> used;
    for (std::size_t c : f.cells) {
        const auto& cell = b.cells[c];
        if (cell.type.empty())
            continue;
        const auto verts = b.cell_vertices(cell);
        if (std::find(verts.begin(), verts.end(), b.vertices[v]) == verts.end())
            continue;
        used.insert(cell.type.begin(), cell.type.end());
        faces.push_back(cell.type);
    }
    return detail::relabeled({used.begin(), used.end()}, std::move(faces));
}

inline Json davis_to_json(const DavisBall& b)
{
    Json verts = Json::array();
    for (const auto& w : b.vertices)
        verts.push_back(w);
    Json cells = Json::array();
    for (const auto& c : b.cells)
        cells.push_back(Json{{"g", c.vertex}, {"J", c.type}});
    return Json{{"ground", b.group.generator_count()}, {"radius", b.radius}, {"vertices", verts}, {"cells", cells}};
}

// ---------------------------------------------------------------------------
// Caprace criterion
// ---------------------------------------------------------------------------

enum class SuspensionType { three_points, edge_and_point };

inline const char* to_string(SuspensionType t)
{
    return t == SuspensionType::three_points ? "suspension of three points" : "suspension of an edge and a point";
}

struct CapraceWitness {
    std::vector<Vertex> vertices; // sorted
    Vertex north = 0, south = 0;
    SuspensionType type = SuspensionType::three_points;
};

struct CapraceReport {
    bool passes = true;
    std::vector<CapraceWitness> witnesses;
    std::string note;
};

/**
 * Scans for full 5-vertex subcomplexes isomorphic to the suspension of three
 * points or of an edge plus a point. Poles are a non-adjacent pair; the
 * equator is drawn from their common neighbours.
 */
inline CapraceReport caprace_criterion(const SimplicialComplex& k)
{
    static const SimplicialComplex pattern_points = suspension(SimplicialComplex(3, {{0}, {1}, {2}}));
    static const SimplicialComplex pattern_edge = suspension(SimplicialComplex(3, {{0, 1}, {2}}));
    CapraceReport report;
    std::set<std::vector<Vertex>> seen;
    const int n = k.vertex_count();
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex c = a + 1; c < n; ++c) {
            if (k.has_edge(a, c))
                continue;
            const auto common = detail::sorted_intersection(k.neighbors(a), k.neighbors(c));
            const std::size_t m = common.size();
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = i + 1; j < m; ++j) {
                    for (std::size_t l = j + 1; l < m; ++l) {
                        const Vertex x = common[i], y = common[j], z = common[l];
                        const int induced = k.has_edge(x, y) + k.has_edge(x, z) + k.has_edge(y, z);
                        if (induced > 1)
                            continue;
                        std::vector<Vertex> five{a, c, x, y, z};
                        std::sort(five.begin(), five.end());
                        if (seen.count(five))
                            continue;
                        const auto full = full_subcomplex(k, five);
                        const auto& pattern = induced == 0 ? pattern_points : pattern_edge;
                        if (full.complex.f_vector() != pattern.f_vector() || !is_isomorphic(full.complex, pattern))
                            continue;
                        seen.insert(five);
                        report.witnesses.push_back(
                            {five, a, c, induced == 0 ? SuspensionType::three_points : SuspensionType::edge_and_point});
                    }
                }
            }
        }
    }
    report.passes = report.witnesses.empty();
    report.note = "checks the combinatorial condition on the complex only; isolated flats for the group and for finite-index "
                  "subgroups follow from it by results not verified here";
    return report;
}

} // namespace flatlink
