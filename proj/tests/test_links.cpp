#include "flatlink/diagram.hpp"
#include "flatlink/fixtures.hpp"
#include "flatlink/link_fixtures.hpp"
#include "flatlink/links.hpp"
#include "flatlink/obstruction.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace flatlink;

namespace {

LinkingMatrix negated(LinkingMatrix m)
{
    for (auto& row : m)
        for (auto& x : row)
            x = -x;
    return m;
}

LinkingMatrix hopf_matrix(long long s) { return {{0, s}, {s, 0}}; }

/// Verdict class straight from the entries.
Verdict expected_verdict(const LinkingMatrix& m, bool cert)
{
    if (m.size() < 2)
        return Verdict::NoObstructionDetected;
    bool big = false, zero = false, unit = false;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (i == j)
                continue;
            const long long a = std::llabs(m[i][j]);
            big |= a >= 2;
            zero |= a == 0;
            unit |= a == 1;
        }
    if (big)
        return Verdict::LinkingObstruction;
    if (!unit)
        return cert ? Verdict::LinkingObstruction : Verdict::ZeroMatrixNeedsCertificate;
    if (zero)
        return cert ? Verdict::LinkingObstruction : Verdict::MixedNeedsIsotopyCheck;
    return Verdict::NoObstructionDetected;
}

} // namespace

TEST(Links, FromSquares)
{
    const auto one = link_from_squares(fixture("c4"));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one.components[0], (std::vector<Vertex>{0, 1, 2, 3}));
    EXPECT_EQ(one.orientations, (std::vector<int>{1}));
    EXPECT_EQ(link_from_squares(fixture("two-squares-disjoint")).size(), 2u);
    EXPECT_EQ(link_from_squares(fixture("600-cell")).size(), 0u);
    try {
        link_from_squares(fixture("boundary-16-cell"));
        FAIL() << "expected overlap error";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("share vertex"), std::string::npos);
    }
}

TEST(Links, Validation)
{
    const auto k = fixture("boundary-16-cell");
    EXPECT_THROW(validate_link(k, {{{0, 2}}, {1}}), InputError);
    EXPECT_THROW(validate_link(k, {{{0, 1, 2}}, {1}}), InputError);          // 0-1 not an edge
    EXPECT_THROW(validate_link(k, {{{0, 2, 1, 3}, {2, 4, 3, 5}}, {1, 1}}), InputError); // shared vertex
    EXPECT_THROW(validate_link(k, {{{0, 2, 1, 3}}, {2}}), InputError);
    EXPECT_THROW(validate_link(k, {{{0, 2, 1, 3}}, {}}), InputError);
    EXPECT_NO_THROW(validate_link(k, hopf_pair_fixture().link));
}

TEST(Links, HopfPair)
{
    const auto f = hopf_pair_fixture();
    const auto k = fixture(f.ambient);
    const auto m = linking_matrix(k, f.link);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(std::llabs(m[0][1]), 1);
    EXPECT_EQ(m[0][1], m[1][0]);
    EXPECT_EQ(simplicial_linking_number(k, f.link, 0, 1), simplicial_linking_number(k, f.link, 1, 0));
    // With vertex 2i at +e_i and 2i+1 at -e_i the components are the great
    // circles e1 -> e2 and e3 -> e4, the least facet is oriented like
    // det(e1, e2, e3, e4) > 0, and the hemisphere {x4 = 0, x3 >= 0} bounded by
    // the first meets the second once at e3 with frame (e1, e2, e4): +1.
    EXPECT_EQ(m, hopf_matrix(1));
}

TEST(Links, OrientationBehaviour)
{
    const auto f = hopf_pair_fixture();
    const auto k = fixture(f.ambient);
    const auto m = linking_matrix(k, f.link);
    EXPECT_EQ(linking_matrix(k, f.link.reversed(0)), negated(m));
    EXPECT_EQ(linking_matrix(k, f.link.reversed(1)), negated(m));
    EXPECT_EQ(linking_matrix(k, f.link.reversed(0).reversed(1)), m);
    EXPECT_EQ(linking_matrix(k, f.link, {true, true}), negated(m));
    // Cyclic rotation of a component's listing does not matter.
    auto rotated = f.link;
    std::rotate(rotated.components[1].begin(), rotated.components[1].begin() + 1, rotated.components[1].end());
    EXPECT_EQ(linking_matrix(k, rotated), m);
}

TEST(Links, SubdivisionInvariance)
{
    const auto f = hopf_pair_fixture();
    const auto k = fixture(f.ambient);
    const auto m = linking_matrix(k, f.link);
    const auto sd = barycentric_subdivision(k);
    const auto carried = carry_link(sd, f.link);
    EXPECT_EQ(linking_matrix(sd.complex, carried), m);
    // Explicitly induced orientation on the subdivision gives the same value.
    EXPECT_EQ(linking_matrix(k, f.link, {false, true, true}), m);
}

TEST(Links, NonFullComponentsAreSubdivided)
{
    // Two triangles far apart in the 600-cell: neither is a full subcomplex.
    const auto k = fixture("600-cell");
    const Face first = k.facets().front();
    Face last = k.facets().back();
    EdgeCycleLink link{{{first[0], first[1], first[2]}, {last[0], last[1], last[2]}}, {1, 1}};
    EXPECT_FALSE(detail::cycle_is_full(k, link.components[0]));
    EXPECT_TRUE(prepare_link(orient_homology_sphere(k), link).subdivided);
    EXPECT_EQ(linking_matrix(k, link), (LinkingMatrix{{0, 0}, {0, 0}}));
}

TEST(Links, SplitPair)
{
    const auto f = split_pair_fixture();
    const auto k = fixture(f.ambient);
    // The second component bounds the cone from an endpoint of its edge; that
    // disk's vertices avoid the first component.
    std::set<Vertex> disk(f.link.components[1].begin(), f.link.components[1].end());
    for (Vertex v = 0; v < k.vertex_count(); ++v) {
        const auto& nb = k.neighbors(v);
        if (std::all_of(f.link.components[1].begin(), f.link.components[1].end(),
                        [&](Vertex w) { return std::binary_search(nb.begin(), nb.end(), w); })) {
            disk.insert(v);
        }
    }
    for (Vertex v : f.link.components[0])
        EXPECT_FALSE(disk.count(v));
    EXPECT_EQ(f.link.components[0].size(), 5u);
    EXPECT_EQ(linking_matrix(k, f.link), (LinkingMatrix{{0, 0}, {0, 0}}));
}

TEST(Links, OracleAgreement)
{
    // Simplicial and diagram values agree up to one global sign, fixed by the Hopf pair.
    const auto hopf = hopf_pair_fixture();
    const long long global = linking_matrix(fixture(hopf.ambient), hopf.link)[0][1]
                             * diagram_linking_matrix(diagram_fixture(hopf.diagram))[0][1];
    for (const auto& f : link_fixtures()) {
        const auto simplicial = linking_matrix(fixture(f.ambient), f.link);
        const auto diagram = diagram_linking_matrix(diagram_fixture(f.diagram));
        EXPECT_EQ(global == 1 ? simplicial : negated(simplicial), diagram) << f.name;
    }
}

TEST(Links, RejectsNonSpheres)
{
    const auto torus = fixture("two-squares-disjoint");
    EXPECT_THROW(linking_matrix(torus, link_from_squares(torus)), InputError);
    EXPECT_THROW(simplicial_linking_number(fixture("boundary-16-cell"), hopf_pair_fixture().link, 0, 0), InputError);
    EXPECT_EQ(linking_matrix(fixture("c4"), link_from_squares(fixture("c4"))), (LinkingMatrix{{0}}));
}

TEST(Links, JsonRoundTrip)
{
    const auto link = hopf_pair_fixture().link.reversed(1);
    const auto back = link_from_json(link_to_json(link));
    EXPECT_EQ(back.components, link.components);
    EXPECT_EQ(back.orientations, link.orientations);
    EXPECT_EQ(link_from_json(Json::parse(R"({"components":[[0,1,2]]})")).orientations, (std::vector<int>{1}));
    EXPECT_THROW(link_from_json(Json::parse(R"({"components":[["a"]]})")), InputError);
}

TEST(Diagram, FixtureMatrices)
{
    EXPECT_EQ(diagram_linking_matrix(diagram_fixture("hopf")), hopf_matrix(1));
    EXPECT_EQ(diagram_linking_matrix(diagram_fixture("solomon")), hopf_matrix(2));
    EXPECT_EQ(diagram_linking_matrix(diagram_fixture("whitehead")), hopf_matrix(0));
    EXPECT_EQ(diagram_linking_matrix(diagram_fixture("lk-1-3-3")), (LinkingMatrix{{0, 1, 3}, {1, 0, 3}, {3, 3, 0}}));
    EXPECT_EQ(diagram_linking_matrix(diagram_fixture("lk-1-0-0")), (LinkingMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}));
    EXPECT_EQ(diagram_linking_matrix(diagram_fixture("borromean")), LinkingMatrix(3, std::vector<long long>(3, 0)));
    EXPECT_EQ(diagram_linking_matrix(diagram_fixture("split-pair")), hopf_matrix(0));
    EXPECT_THROW(diagram_fixture("trefoil"), InputError);
}

TEST(Diagram, BrunnianAndDoublesAreZero)
{
    for (int m = 3; m <= 7; ++m) {
        const LinkingMatrix zero(static_cast<std::size_t>(m), std::vector<long long>(static_cast<std::size_t>(m), 0));
        EXPECT_EQ(diagram_linking_matrix(brunnian_diagram(m)), zero) << m;
        for (int twists : {0, 2, 4, 6}) {
            const auto d = whitehead_double_diagram(m, twists);
            EXPECT_EQ(d.components, m);
            EXPECT_EQ(diagram_linking_matrix(d), zero) << m << " " << twists;
        }
    }
    EXPECT_THROW(brunnian_diagram(2), InputError);
    EXPECT_THROW(whitehead_double_diagram(3, 1), InputError);
    EXPECT_THROW(whitehead_double_diagram(2, 2), InputError);
    // Each inter-component crossing of the base becomes four.
    const auto base = brunnian_diagram(3);
    const auto doubled = whitehead_double_diagram(3, 2);
    EXPECT_EQ(doubled.crossings.size(), 4 * base.crossings.size() + 3 * (2 + 2));
}

TEST(Diagram, Validation)
{
    PlanarDiagram d = diagram_fixture("hopf");
    d.crossings[0].sign = 2;
    EXPECT_THROW(diagram_linking_matrix(d), InputError);
    d = diagram_fixture("hopf");
    d.order[0].pop_back();
    EXPECT_THROW(validate_diagram(d), InputError);
    d = diagram_fixture("hopf");
    d.crossings[0].under = 5;
    EXPECT_THROW(validate_diagram(d), InputError);
    // A single crossing between two components cannot close up.
    EXPECT_THROW(diagram_linking_matrix(diagrams::from_crossings(2, {{0, 1, 1}})), InputError);
}

TEST(Diagram, JsonRoundTrip)
{
    for (const auto& e : diagrams::registry()) {
        const auto d = e.make();
        const auto back = diagram_from_json(diagram_to_json(d));
        EXPECT_EQ(diagram_linking_matrix(back), diagram_linking_matrix(d)) << e.name;
        EXPECT_EQ(back.order, d.order);
    }
    EXPECT_THROW(diagram_from_json(Json::parse(R"({"m":2,"crossings":[{"over":0,"under":1}],"order":[[0],[0]]})")),
                 InputError);
}

TEST(Obstruction, DecisionTable)
{
    EXPECT_EQ(obstruction_report({{0, 2}, {2, 0}}).verdict, Verdict::LinkingObstruction);
    EXPECT_EQ(obstruction_report(LinkingMatrix(3, std::vector<long long>(3, 0)), true).verdict,
              Verdict::LinkingObstruction);
    EXPECT_EQ(obstruction_report(LinkingMatrix(3, std::vector<long long>(3, 0))).verdict,
              Verdict::ZeroMatrixNeedsCertificate);
    EXPECT_EQ(obstruction_report({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}, true).verdict, Verdict::LinkingObstruction);
    EXPECT_EQ(obstruction_report({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}).verdict, Verdict::MixedNeedsIsotopyCheck);
    EXPECT_EQ(obstruction_report({{0, 1}, {1, 0}}).verdict, Verdict::NoObstructionDetected);
    EXPECT_EQ(obstruction_report({{0, -1}, {-1, 0}}, true).verdict, Verdict::NoObstructionDetected);
    EXPECT_EQ(obstruction_report({}).verdict, Verdict::NoObstructionDetected);
    EXPECT_EQ(obstruction_report({{0}}).verdict, Verdict::NoObstructionDetected);
    EXPECT_THROW(obstruction_report({{0, 1}, {2, 0}}), InputError);
    EXPECT_THROW(obstruction_report({{1, 0}, {0, 0}}), InputError);
    const auto r = obstruction_report({{0, 1, 3}, {1, 0, 3}, {3, 3, 0}});
    EXPECT_EQ(r.verdict, Verdict::LinkingObstruction);
    EXPECT_EQ(r.triggers, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 2}}));
}

TEST(Obstruction, RandomMatricesFollowTable)
{
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> size(0, 5), entry(-3, 3), small(-1, 1);
    for (int trial = 0; trial < 500; ++trial) {
        const auto n = static_cast<std::size_t>(size(rng));
        LinkingMatrix m(n, std::vector<long long>(n, 0));
        const bool only_small = trial % 2 == 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                m[i][j] = m[j][i] = only_small ? small(rng) : entry(rng);
        for (bool cert : {false, true})
            EXPECT_EQ(obstruction_report(m, cert).verdict, expected_verdict(m, cert));
    }
}
