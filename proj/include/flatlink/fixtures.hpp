#pragma once

#include "flatlink/error.hpp"
#include "flatlink/simplicial_complex.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace flatlink {

namespace fixtures {

/// Boundary of the n-simplex on n+1 vertices.
inline SimplicialComplex simplex_boundary(int n)
{
    std::vector<Face> facets;
    for (int skip = n; skip >= 0; --skip) {
        Face f;
        for (int v = 0; v <= n; ++v) {
            if (v != skip)
                f.push_back(v);
        }
        facets.push_back(std::move(f));
    }
    return SimplicialComplex(n + 1, std::move(facets));
}

inline SimplicialComplex solid_simplex(int n)
{
    Face f(static_cast<std::size_t>(n) + 1);
    for (int v = 0; v <= n; ++v)
        f[v] = v;
    return SimplicialComplex(n + 1, {f});
}

/// Cycle graph 0-1-...-(n-1)-0.
inline SimplicialComplex cycle(int n)
{
    std::vector<Face> facets;
    for (int i = 0; i < n; ++i)
        facets.push_back({i, (i + 1) % n});
    return SimplicialComplex(n, std::move(facets));
}

inline SimplicialComplex path(int n)
{
    std::vector<Face> facets;
    for (int i = 0; i + 1 < n; ++i)
        facets.push_back({i, i + 1});
    return SimplicialComplex(n, std::move(facets));
}

inline SimplicialComplex points(int n)
{
    std::vector<Face> facets;
    for (int i = 0; i < n; ++i)
        facets.push_back({i});
    return SimplicialComplex(n, std::move(facets));
}

/// Boundary of the n-dimensional cross-polytope: the join of n copies of
/// S^0. Antipodal pairs are {2i, 2i+1}.
inline SimplicialComplex cross_polytope_boundary(int n)
{
    SimplicialComplex out;
    for (int i = 0; i < n; ++i)
        out = join(out, points(2));
    return out;
}

/// 6-vertex real projective plane (hemi-icosahedron).
inline SimplicialComplex projective_plane_6()
{
    return SimplicialComplex(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                 {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}});
}

/// 7-vertex torus: triangles {i,i+1,i+3} and {i,i+2,i+3} mod 7.
inline SimplicialComplex torus_7()
{
    std::vector<Face> facets;
    for (int i = 0; i < 7; ++i) {
        facets.push_back({i, (i + 1) % 7, (i + 3) % 7});
        facets.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return SimplicialComplex(7, std::move(facets));
}

/**
 * Ordered-product triangulation of A x B: vertex (a, b) is a * |B| + b and
 * each product of facets is cut into staircase simplices (monotone lattice
 * paths in the vertex orders).
 */
inline SimplicialComplex product(const SimplicialComplex& a, const SimplicialComplex& b)
{
    const int nb = b.vertex_count();
    std::vector<Face> facets;
    for (const Face& fa : a.facets()) {
        for (const Face& fb : b.facets()) {
            std::function<void(std::size_t, std::size_t, Face&)> walk = [&](std::size_t i, std::size_t j, Face& cur) {
                cur.push_back(fa[i] * nb + fb[j]);
                if (i + 1 == fa.size() && j + 1 == fb.size())
                    facets.push_back(cur);
                if (i + 1 < fa.size())
                    walk(i + 1, j, cur);
                if (j + 1 < fb.size())
                    walk(i, j + 1, cur);
                cur.pop_back();
            };
            Face cur;
            walk(0, 0, cur);
        }
    }
    return SimplicialComplex::from_faces(a.vertex_count() * nb, std::move(facets));
}

/**
 * Boundary of the 600-cell: 120 unit icosians, edges between vertices at
 * distance 1/phi, tetrahedra the 4-cliques. Coordinates are used only to
 * decide adjacency; vertices are numbered in lexicographic coordinate order.
 */
inline SimplicialComplex six_hundred_cell()
{
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<std::array<double, 4>> pts;
    for (int mask = 0; mask < 16; ++mask) {
        std::array<double, 4> p{};
        for (int i = 0; i < 4; ++i)
            p[i] = (mask >> i & 1) ? -0.5 : 0.5;
        pts.push_back(p);
    }
    for (int i = 0; i < 4; ++i) {
        for (double s : {1.0, -1.0}) {
            std::array<double, 4> p{};
            p[i] = s;
            pts.push_back(p);
        }
    }
    const std::array<double, 4> base{phi / 2, 0.5, 1 / (2 * phi), 0.0};
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j)
                inversions += perm[i] > perm[j];
        }
        if (inversions % 2)
            continue;
        for (int mask = 0; mask < 8; ++mask) {
            std::array<double, 4> p{};
            for (int i = 0; i < 3; ++i)
                p[perm[i]] = (mask >> i & 1) ? -base[i] : base[i];
            p[perm[3]] = 0.0;
            pts.push_back(p);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(pts.begin(), pts.end());

    const double edge2 = 1.0 / (phi * phi);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double d2 = 0;
            for (int k = 0; k < 4; ++k)
                d2 += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
            if (std::abs(d2 - edge2) < 1e-9)
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
        }
    }
    return clique_complex(static_cast<int>(pts.size()), edges);
}

struct FixtureInfo {
    std::string name;
    std::string description;
    std::function<SimplicialComplex()> make;
};

/// The documented fixture registry (see fixtures.md).
inline const std::vector<FixtureInfo>& registry()
{
    static const std::vector<FixtureInfo> entries = {
        {"point", "a single vertex", [] { return points(1); }},
        {"edge", "a single edge", [] { return solid_simplex(1); }},
        {"triangle", "a solid 2-simplex", [] { return solid_simplex(2); }},
        {"c4", "the 4-cycle 0-1-2-3-0", [] { return cycle(4); }},
        {"path-4", "the path 0-1-2-3", [] { return path(4); }},
        {"boundary-triangle", "boundary of a 2-simplex (3-cycle)", [] { return simplex_boundary(2); }},
        {"boundary-3-simplex", "boundary of the tetrahedron, a 2-sphere", [] { return simplex_boundary(3); }},
        {"boundary-4-simplex", "boundary of the 4-simplex, a non-flag 3-sphere", [] { return simplex_boundary(4); }},
        {"octahedron", "join of three 2-point complexes", [] { return cross_polytope_boundary(3); }},
        {"boundary-16-cell", "join of four 2-point complexes; flag 3-sphere with 6 overlapping squares",
         [] { return cross_polytope_boundary(4); }},
        {"suspension-3-points", "suspension of three points (K_{2,3}); equator 0,1,2 and poles 3,4",
         [] { return suspension(points(3)); }},
        {"suspension-edge-point", "suspension of an edge plus a point; equator 0-1, 2 and poles 3,4",
         [] { return suspension(disjoint_union(solid_simplex(1), points(1))); }},
        {"sd-boundary-4-simplex", "barycentric subdivision of the boundary of the 4-simplex",
         [] { return barycentric_subdivision(simplex_boundary(4)).complex; }},
        {"two-squares-disjoint", "disjoint union of two 4-cycles", [] { return disjoint_union(cycle(4), cycle(4)); }},
        {"rp2-6", "6-vertex real projective plane", [] { return projective_plane_6(); }},
        {"torus-7", "7-vertex torus", [] { return torus_7(); }},
        {"s2xs1", "ordered product of the tetrahedron boundary with a 3-cycle",
         [] { return product(simplex_boundary(3), cycle(3)); }},
        {"600-cell", "boundary of the 600-cell; flag 3-sphere with no squares", [] { return six_hundred_cell(); }},
    };
    return entries;
}

inline std::vector<std::string> names()
{
    std::vector<std::string> out;
    for (const auto& e : registry())
        out.push_back(e.name);
    return out;
}

} // namespace fixtures

inline SimplicialComplex fixture(const std::string& name)
{
    for (const auto& e : fixtures::registry()) {
        if (e.name == name)
            return e.make();
    }
    throw InputError("unknown fixture '" + name + "'");
}

} // namespace flatlink
