#pragma once

#include "flatlink/diagram.hpp"
#include "flatlink/fixtures.hpp"
#include "flatlink/links.hpp"

#include <deque>
#include <string>
#include <vector>

namespace flatlink {

/// An edge-cycle link in a fixture ambient, with a diagram of the same link.
struct LinkFixture {
    std::string name;
    std::string description;
    std::string ambient;
    EdgeCycleLink link;
    std::string diagram;
};

namespace detail {

inline std::vector<int> bfs_distances(const SimplicialComplex& k, Vertex source)
{
    std::vector<int> dist(static_cast<std::size_t>(k.vertex_count()), -1);
    std::deque<Vertex> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : k.neighbors(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

/// The link of an edge in a 3-manifold, as a cyclic vertex sequence.
inline std::vector<Vertex> edge_link_cycle(const SimplicialComplex& k, Vertex a, Vertex b)
{
    const auto link = face_link(k, a < b ? Face{a, b} : Face{b, a});
    const auto& c = link.complex;
    std::vector<Vertex> cycle{0};
    Vertex prev = -1;
    while (true) {
        const Vertex cur = cycle.back();
        Vertex next = -1;
        for (Vertex w : c.neighbors(cur)) {
            if (w != prev) {
                next = w;
                break;
            }
        }
        if (next < 0)
            throw InvariantError("edge link is not a cycle");
        if (next == 0)
            break;
        prev = cur;
        cycle.push_back(next);
    }
    for (Vertex& v : cycle)
        v = link.ambient(v);
    return cycle;
}

} // namespace detail

/// Hopf pair: the two join factors {0,1} * {2,3} and {4,5} * {6,7} of the 16-cell boundary.
inline LinkFixture hopf_pair_fixture()
{
    return {"hopf-16-cell", "the two 4-cycle join factors of the 16-cell boundary", "boundary-16-cell",
            EdgeCycleLink{{{0, 2, 1, 3}, {4, 6, 5, 7}}, {1, 1}}, "hopf"};
}

/// Split pair: links of two edges at opposite ends of the 600-cell. Each
/// bounds the cone over its edge endpoint, which misses the other component.
inline LinkFixture split_pair_fixture()
{
    const auto k = fixture("600-cell");
    const auto dist = detail::bfs_distances(k, 0);
    const Vertex far = static_cast<Vertex>(std::max_element(dist.begin(), dist.end()) - dist.begin());
    const Vertex near_nb = k.neighbors(0).front();
    const Vertex far_nb = k.neighbors(far).front();
    return {"split-600-cell", "links of two far-apart edges of the 600-cell boundary", "600-cell",
            EdgeCycleLink{{detail::edge_link_cycle(k, 0, near_nb), detail::edge_link_cycle(k, far, far_nb)}, {1, 1}},
            "split-pair"};
}

inline std::vector<LinkFixture> link_fixtures()
{
    return {hopf_pair_fixture(), split_pair_fixture()};
}

} // namespace flatlink
