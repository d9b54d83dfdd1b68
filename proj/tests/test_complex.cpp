#include "flatlink/complex_io.hpp"
#include "flatlink/fixtures.hpp"
#include "flatlink/simplicial_complex.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace flatlink;

namespace {

// Oracles below use only the facet list, never the complex's indices.

bool facet_contains(const SimplicialComplex& k, const Face& f)
{
    for (const Face& facet : k.facets()) {
        if (std::includes(facet.begin(), facet.end(), f.begin(), f.end()))
            return true;
    }
    return false;
}

bool brute_edge(const SimplicialComplex& k, Vertex a, Vertex b)
{
    Face e{std::min(a, b), std::max(a, b)};
    return facet_contains(k, e);
}

/// Every clique of the 1-skeleton, by plain recursive extension.
std::vector<Face> brute_cliques(const SimplicialComplex& k)
{
    std::vector<Face> out;
    std::function<void(Face&, Vertex)> grow = [&](Face& cur, Vertex next) {
        for (Vertex v = next; v < k.vertex_count(); ++v) {
            bool ok = true;
            for (Vertex u : cur)
                ok = ok && brute_edge(k, u, v);
            if (!ok)
                continue;
            cur.push_back(v);
            out.push_back(cur);
            grow(cur, v + 1);
            cur.pop_back();
        }
    };
    Face cur;
    grow(cur, 0);
    return out;
}

bool brute_is_flag(const SimplicialComplex& k)
{
    for (const Face& c : brute_cliques(k)) {
        if (!facet_contains(k, c))
            return false;
    }
    return true;
}

/// Squares as edge sets of induced 4-cycles, over all ordered 4-tuples.
std::size_t brute_square_count(const SimplicialComplex& k)
{
    std::set<std::set<std::pair<Vertex, Vertex>>> found;
    const int n = k.vertex_count();
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b)
            for (Vertex c = 0; c < n; ++c)
                for (Vertex d = 0; d < n; ++d) {
                    std::set<Vertex> distinct{a, b, c, d};
                    if (distinct.size() != 4)
                        continue;
                    if (!brute_edge(k, a, b) || !brute_edge(k, b, c) || !brute_edge(k, c, d) || !brute_edge(k, d, a))
                        continue;
                    if (brute_edge(k, a, c) || brute_edge(k, b, d))
                        continue;
                    auto e = [](Vertex x, Vertex y) { return std::make_pair(std::min(x, y), std::max(x, y)); };
                    found.insert({e(a, b), e(b, c), e(c, d), e(d, a)});
                }
    return found.size();
}

SimplicialComplex relabel(const SimplicialComplex& k, const std::vector<Vertex>& perm)
{
    std::vector<Face> facets;
    for (Face f : k.facets()) {
        for (Vertex& v : f)
            v = perm[v];
        facets.push_back(f);
    }
    return SimplicialComplex(k.vertex_count(), facets);
}

SimplicialComplex random_flag_complex(std::mt19937& rng, int n, double p)
{
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (coin(rng))
                edges.emplace_back(a, b);
    return clique_complex(n, edges);
}

} // namespace

TEST(SimplicialComplex, RejectsNestedAndPhantom)
{
    EXPECT_THROW(SimplicialComplex(3, {{0, 1}, {0, 1, 2}}), InputError);
    EXPECT_THROW(SimplicialComplex(4, {{0, 1, 2}}), InputError);
    EXPECT_THROW(SimplicialComplex(3, {{0, 0, 1}}), InputError);
    EXPECT_THROW(SimplicialComplex(2, {{0, 2}}), InputError);
    EXPECT_NO_THROW(SimplicialComplex(0, {}));
}

TEST(SimplicialComplex, FVectorAndFaces)
{
    auto k = fixture("boundary-4-simplex");
    EXPECT_EQ(k.f_vector(), (std::vector<std::size_t>{5, 10, 10, 5}));
    EXPECT_EQ(k.euler_characteristic(), 0);
    EXPECT_TRUE(k.has_face(Face{0, 1, 2, 3}));
    EXPECT_FALSE(k.has_face(Face{0, 1, 2, 3, 4}));
    auto simplex = fixtures::solid_simplex(5);
    EXPECT_TRUE(simplex.has_face(Face{0, 1, 2, 3, 5}));
    EXPECT_EQ(simplex.faces(4).size(), 6u);
}

TEST(IsFlag, Examples)
{
    auto bd = fixture("boundary-4-simplex");
    auto r = is_flag(bd);
    EXPECT_FALSE(r.flag);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(*r.witness, (Face{0, 1, 2, 3, 4}));

    EXPECT_TRUE(is_flag(fixture("c4")).flag);

    auto sd = fixture("sd-boundary-4-simplex");
    EXPECT_TRUE(brute_is_flag(sd));
    EXPECT_TRUE(is_flag(sd).flag);

    auto hollow = fixture("boundary-triangle");
    auto h = is_flag(hollow);
    EXPECT_FALSE(h.flag);
    EXPECT_EQ(*h.witness, (Face{0, 1, 2}));
}

TEST(IsFlag, AgreesWithBruteForceOnRandomComplexes)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 4 + trial % 6;
        // Random facets of size up to 4, flag or not.
        std::uniform_int_distribution<int> pick(0, n - 1);
        std::vector<Face> faces;
        for (int i = 0; i < n + 2; ++i) {
            Face f;
            int size = 1 + static_cast<int>(rng() % 3);
            for (int j = 0; j < size; ++j)
                f.push_back(pick(rng));
            faces.push_back(f);
        }
        for (Vertex v = 0; v < n; ++v)
            faces.push_back({v});
        auto k = SimplicialComplex::from_faces(n, faces);
        auto r = is_flag(k);
        EXPECT_EQ(r.flag, brute_is_flag(k));
        if (!r.flag) {
            ASSERT_TRUE(r.witness);
            EXPECT_GE(r.witness->size(), 3u);
            EXPECT_FALSE(k.has_face(*r.witness));
        }
    }
}

TEST(FindSquares, Examples)
{
    auto c4 = find_squares(fixture("c4"));
    ASSERT_EQ(c4.size(), 1u);
    EXPECT_EQ(c4[0].cycle, (std::array<Vertex, 4>{0, 1, 2, 3}));

    auto oct = fixture("octahedron");
    EXPECT_EQ(brute_square_count(oct), 3u);
    EXPECT_EQ(find_squares(oct).size(), 3u);

    auto cross = fixture("boundary-16-cell");
    EXPECT_EQ(brute_square_count(cross), 6u);
    EXPECT_EQ(find_squares(cross).size(), 6u);
}

TEST(FindSquares, CanonicalFormAndInvariants)
{
    EXPECT_EQ(Square::canonical(3, 2, 1, 0).cycle, (std::array<Vertex, 4>{0, 1, 2, 3}));
    EXPECT_EQ(Square::canonical(2, 5, 0, 7).cycle, (std::array<Vertex, 4>{0, 5, 2, 7}));
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        auto k = random_flag_complex(rng, 8, 0.45);
        auto squares = find_squares(k);
        EXPECT_EQ(squares.size(), brute_square_count(k));
        EXPECT_TRUE(std::is_sorted(squares.begin(), squares.end()));
        for (const auto& s : squares) {
            EXPECT_TRUE(is_square_of(k, s));
            EXPECT_EQ(Square::canonical(s.cycle[0], s.cycle[1], s.cycle[2], s.cycle[3]), s);
        }
        auto iso = has_isolated_squares(k);
        if (iso.isolated) {
            std::set<Vertex> seen;
            for (const auto& s : squares)
                for (Vertex v : s.cycle)
                    EXPECT_TRUE(seen.insert(v).second);
        }
    }
}

TEST(IsolatedSquares, Examples)
{
    EXPECT_TRUE(has_isolated_squares(fixture("c4")).isolated);
    auto oct = has_isolated_squares(fixture("octahedron"));
    EXPECT_FALSE(oct.isolated);
    ASSERT_TRUE(oct.offending_vertex);
    EXPECT_EQ(oct.offending_squares.size(), 2u);
    EXPECT_TRUE(oct.offending_squares[0].contains(*oct.offending_vertex));
    EXPECT_TRUE(oct.offending_squares[1].contains(*oct.offending_vertex));
    EXPECT_TRUE(has_isolated_squares(fixture("two-squares-disjoint")).isolated);
}

TEST(VertexLink, Examples)
{
    auto oct = fixture("octahedron");
    auto c4 = fixture("c4");
    for (Vertex v = 0; v < oct.vertex_count(); ++v)
        EXPECT_TRUE(is_isomorphic(vertex_link(oct, v).complex, c4));
    auto tet = fixture("boundary-3-simplex");
    for (Vertex v = 0; v < 4; ++v)
        EXPECT_EQ(vertex_link(tet, v).complex, fixtures::simplex_boundary(2));
    for (Vertex v = 0; v < 4; ++v)
        EXPECT_EQ(vertex_link(c4, v).complex, fixtures::points(2));
    EXPECT_THROW(vertex_link(c4, 4), InputError);
}

TEST(FullSubcomplex, Examples)
{
    auto bd = fixture("boundary-4-simplex");
    EXPECT_EQ(full_subcomplex(bd, {1, 3, 4}).complex, fixtures::solid_simplex(2));
    auto oct = fixture("octahedron");
    EXPECT_EQ(full_subcomplex(oct, {0, 1}).complex, fixtures::points(2));
    auto sub = full_subcomplex(fixture("c4"), {0, 2});
    EXPECT_EQ(sub.complex, fixtures::points(2));
    EXPECT_EQ(sub.vertices, (std::vector<Vertex>{0, 2}));
}

TEST(VertexLink, CommutesWithFullSubcomplex)
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto k = random_flag_complex(rng, 9, 0.5);
        std::vector<Vertex> subset;
        for (Vertex v = 0; v < k.vertex_count(); ++v)
            if (rng() % 3 != 0)
                subset.push_back(v);
        if (subset.empty())
            continue;
        auto full = full_subcomplex(k, subset);
        for (Vertex local = 0; local < full.complex.vertex_count(); ++local) {
            Vertex v = full.ambient(local);
            // link(K[S], v) versus link(K, v)[S]
            auto lhs = vertex_link(full.complex, local);
            auto link = vertex_link(k, v);
            std::vector<Vertex> keep;
            for (Vertex u = 0; u < link.complex.vertex_count(); ++u)
                if (std::binary_search(subset.begin(), subset.end(), link.ambient(u)))
                    keep.push_back(u);
            auto rhs = full_subcomplex(link.complex, keep);
            EXPECT_EQ(lhs.complex, rhs.complex);
            std::vector<Vertex> lhs_labels, rhs_labels;
            for (Vertex u : lhs.vertices)
                lhs_labels.push_back(full.ambient(u));
            for (Vertex u : rhs.vertices)
                rhs_labels.push_back(link.ambient(u));
            EXPECT_EQ(lhs_labels, rhs_labels);
        }
    }
}

TEST(BarycentricSubdivision, Examples)
{
    auto e = barycentric_subdivision(fixture("edge")).complex;
    EXPECT_EQ(e.vertex_count(), 3);
    EXPECT_EQ(e.facets().size(), 2u);
    auto t = barycentric_subdivision(fixture("triangle")).complex;
    EXPECT_EQ(t.vertex_count(), 7);
    EXPECT_EQ(t.facets().size(), 6u);
    auto s = barycentric_subdivision(fixture("boundary-4-simplex"));
    EXPECT_EQ(s.complex.vertex_count(), 30);
    EXPECT_EQ(s.complex.facets().size(), 120u);
    EXPECT_EQ(s.vertex_faces[0], (Face{0}));
    EXPECT_EQ(s.barycenter({0, 1}), 5);
}

TEST(BarycentricSubdivision, AlwaysFlag)
{
    std::mt19937 rng(5);
    for (const auto& name : fixtures::names()) {
        if (name == "600-cell")
            continue;
        EXPECT_TRUE(is_flag(barycentric_subdivision(fixture(name)).complex).flag) << name;
    }
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Face> faces;
        for (int i = 0; i < 5; ++i) {
            Face f;
            for (Vertex v = 0; v < 6; ++v)
                if (rng() % 2)
                    f.push_back(v);
            faces.push_back(f);
        }
        for (Vertex v = 0; v < 6; ++v)
            faces.push_back({v});
        auto k = SimplicialComplex::from_faces(6, faces);
        EXPECT_TRUE(is_flag(barycentric_subdivision(k).complex).flag);
    }
}

TEST(Isomorphism, Examples)
{
    auto c4 = fixture("c4");
    auto relabeled = relabel(c4, {2, 0, 3, 1});
    auto r = is_isomorphic(c4, relabeled);
    ASSERT_EQ(r.status, IsoStatus::isomorphic);
    EXPECT_TRUE(is_isomorphism(c4, relabeled, r.witness->mapping));

    EXPECT_EQ(is_isomorphic(c4, fixture("path-4")).status, IsoStatus::not_isomorphic);
    auto other = disjoint_union(fixture("boundary-3-simplex"), fixtures::points(2));
    EXPECT_EQ(is_isomorphic(fixture("octahedron"), other).status, IsoStatus::not_isomorphic);
}

TEST(Isomorphism, BudgetExhaustionIsUndecided)
{
    auto k = fixture("boundary-16-cell");
    auto r = is_isomorphic(k, relabel(k, {7, 6, 5, 4, 3, 2, 1, 0}), 1);
    EXPECT_EQ(r.status, IsoStatus::undecided);
}

TEST(Isomorphism, ReflexiveSymmetricTransitive)
{
    std::mt19937 rng(17);
    for (const auto& name : {"octahedron", "boundary-16-cell", "sd-boundary-4-simplex", "torus-7", "rp2-6", "s2xs1"}) {
        auto k1 = fixture(name);
        std::vector<Vertex> p(k1.vertex_count()), q(k1.vertex_count());
        std::iota(p.begin(), p.end(), 0);
        std::iota(q.begin(), q.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        std::shuffle(q.begin(), q.end(), rng);
        auto k2 = relabel(k1, p);
        auto k3 = relabel(k2, q);
        auto self = is_isomorphic(k1, k1);
        ASSERT_TRUE(self) << name;
        auto a = is_isomorphic(k1, k2);
        auto b = is_isomorphic(k2, k1);
        auto c = is_isomorphic(k2, k3);
        ASSERT_TRUE(a && b && c) << name;
        std::vector<Vertex> composed(k1.vertex_count());
        for (Vertex v = 0; v < k1.vertex_count(); ++v)
            composed[v] = c.witness->mapping[a.witness->mapping[v]];
        EXPECT_TRUE(is_isomorphism(k1, k3, composed)) << name;
    }
}

TEST(ComplexJson, LoaderDiagnostics)
{
    auto k = fixture("octahedron");
    EXPECT_EQ(complex_from_json(complex_to_json(k)), k);
    auto bad = [](const std::string& text) {
        try {
            complex_from_json(parse_json_text(text, "test"));
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(bad(R"({"vertices": 3, "facets": [[0,2],[1,0]]})").find("facet 1"), std::string::npos);
    EXPECT_NE(bad(R"({"vertices": 3, "facets": [[0,1],[0,1]]})").find("facet 1"), std::string::npos);
    EXPECT_NE(bad(R"({"vertices": 3, "facets": [[1,2],[0,1]]})").find("facet 1"), std::string::npos);
    EXPECT_NE(bad(R"({"vertices": 3, "facets": [[0,1],[1,2]]} x)").find("test"), std::string::npos);
    EXPECT_NE(bad(R"({"vertices": 3, "facets": [[0,1],[1,2)").find("test"), std::string::npos);
}

TEST(Fixtures, UnknownName) { EXPECT_THROW(fixture("no-such-complex"), InputError); }
