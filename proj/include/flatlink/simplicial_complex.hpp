#pragma once

#include "flatlink/error.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace flatlink {

using Vertex = int;
/// A simplex as a sorted, duplicate-free vertex list.
using Face = std::vector<Vertex>;

namespace detail {

inline std::string face_to_string(std::span<const Vertex> face)
{
    std::string out = "[";
    for (std::size_t i = 0; i < face.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(face[i]);
    }
    return out + "]";
}

/// Packs a face of at most four vertices (each < 65535) into one key.
inline std::uint64_t pack_small_face(std::span<const Vertex> face)
{
    std::uint64_t key = 0;
    for (Vertex v : face)
        key = (key << 16) | static_cast<std::uint64_t>(v + 1);
    return key;
}

inline bool sorted_contains(const std::vector<Vertex>& sorted, Vertex v)
{
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

inline std::vector<Vertex> sorted_intersection(const std::vector<Vertex>& a, const std::vector<Vertex>& b)
{
    std::vector<Vertex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Calls visit(subset) for every nonempty subset of `face` with at most max_size elements.
inline void for_each_small_subset(const Face& face, std::size_t max_size, const std::function<void(const Face&)>& visit)
{
    Face current;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (!current.empty())
            visit(current);
        if (current.size() == max_size)
            return;
        for (std::size_t i = start; i < face.size(); ++i) {
            current.push_back(face[i]);
            rec(i + 1);
            current.pop_back();
        }
    };
    rec(0);
}

} // namespace detail

/**
 * Finite abstract simplicial complex on vertices {0, ..., vertex_count-1},
 * stored by its facets. Immutable after construction.
 *
 * Faces of dimension <= 3 are indexed in a hash set at construction; larger
 * faces are answered from the facet incidence lists.
 */
class SimplicialComplex {
public:
    static constexpr int max_vertices = 65534;

    SimplicialComplex() = default;

    /// Facets may be given in any order and each facet in any vertex order.
    /// Rejects duplicate vertices, out-of-range vertices, nested facets and
    /// vertices that lie in no facet.
    SimplicialComplex(int vertex_count, std::vector<Face> facets) : vertex_count_(vertex_count)
    {
        if (vertex_count < 0 || vertex_count > max_vertices)
            throw InputError("vertex count " + std::to_string(vertex_count) + " out of supported range");
        for (std::size_t i = 0; i < facets.size(); ++i) {
            Face& f = facets[i];
            if (f.empty())
                throw InputError("facet " + std::to_string(i) + " is empty");
            std::sort(f.begin(), f.end());
            if (std::adjacent_find(f.begin(), f.end()) != f.end())
                throw InputError("facet " + std::to_string(i) + " " + detail::face_to_string(f) + " repeats a vertex");
            if (f.front() < 0 || f.back() >= vertex_count)
                throw InputError("facet " + std::to_string(i) + " " + detail::face_to_string(f) + " has a vertex out of range");
        }
        std::sort(facets.begin(), facets.end());
        if (auto dup = std::adjacent_find(facets.begin(), facets.end()); dup != facets.end())
            throw InputError("duplicate facet " + detail::face_to_string(*dup));
        facets_ = std::move(facets);
        build_indices();

        for (std::size_t i = 0; i < facets_.size(); ++i) {
            for (std::size_t j : incident_[facets_[i].front()]) {
                if (j != i && facets_[j].size() > facets_[i].size()
                    && std::includes(facets_[j].begin(), facets_[j].end(), facets_[i].begin(), facets_[i].end()))
                    throw InputError("facet " + detail::face_to_string(facets_[i]) + " is contained in facet "
                                     + detail::face_to_string(facets_[j]));
            }
        }
        for (Vertex v = 0; v < vertex_count_; ++v) {
            if (incident_[v].empty())
                throw InputError("vertex " + std::to_string(v) + " lies in no facet");
        }
    }

    /// Builds the complex generated by an arbitrary face list (non-maximal
    /// faces are dropped).
    static SimplicialComplex from_faces(int vertex_count, std::vector<Face> faces)
    {
        for (Face& f : faces) {
            std::sort(f.begin(), f.end());
            f.erase(std::unique(f.begin(), f.end()), f.end());
        }
        std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
            return a.size() != b.size() ? a.size() > b.size() : a < b;
        });
        faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
        std::vector<Face> maximal;
        std::vector<std::vector<std::size_t>> by_vertex(static_cast<std::size_t>(std::max(vertex_count, 0)));
        for (Face& f : faces) {
            if (f.empty())
                continue;
            if (f.front() < 0 || f.back() >= vertex_count)
                throw InputError("face " + detail::face_to_string(f) + " has a vertex out of range");
            bool covered = false;
            for (std::size_t j : by_vertex[f.front()]) {
                if (std::includes(maximal[j].begin(), maximal[j].end(), f.begin(), f.end())) {
                    covered = true;
                    break;
                }
            }
            if (covered)
                continue;
            for (Vertex v : f)
                by_vertex[v].push_back(maximal.size());
            maximal.push_back(std::move(f));
        }
        return SimplicialComplex(vertex_count, std::move(maximal));
    }

    int vertex_count() const { return vertex_count_; }
    const std::vector<Face>& facets() const { return facets_; }
    bool empty() const { return vertex_count_ == 0; }

    int dimension() const
    {
        std::size_t d = 0;
        for (const Face& f : facets_)
            d = std::max(d, f.size());
        return static_cast<int>(d) - 1;
    }

    bool is_pure() const
    {
        return std::all_of(facets_.begin(), facets_.end(),
                           [&](const Face& f) { return f.size() == facets_.front().size(); });
    }

    const std::vector<Vertex>& neighbors(Vertex v) const { return neighbors_.at(static_cast<std::size_t>(v)); }
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

    bool has_edge(Vertex a, Vertex b) const { return detail::sorted_contains(neighbors_.at(a), b); }

    /// Indices into facets() of the facets containing v.
    const std::vector<std::size_t>& facets_containing(Vertex v) const { return incident_.at(v); }

    /// `face` must be sorted and duplicate free.
    bool has_face(std::span<const Vertex> face) const
    {
        if (face.empty())
            return true;
        for (Vertex v : face) {
            if (v < 0 || v >= vertex_count_)
                return false;
        }
        if (face.size() <= 4)
            return small_faces_.count(detail::pack_small_face(face)) > 0;
        for (std::size_t j : incident_[face.front()]) {
            const Face& f = facets_[j];
            if (std::includes(f.begin(), f.end(), face.begin(), face.end()))
                return true;
        }
        return false;
    }
    bool has_face(const Face& face) const { return has_face(std::span<const Vertex>(face)); }

    /// Sorted list of all faces of dimension d.
    std::vector<Face> faces(int d) const
    {
        if (d < 0)
            return {};
        if (d <= 3)
            return faces_by_dim_[d];
        std::set<Face> out;
        const std::size_t size = static_cast<std::size_t>(d) + 1;
        for (const Face& f : facets_) {
            if (f.size() < size)
                continue;
            std::vector<bool> pick(f.size(), false);
            std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
            do {
                Face sub;
                for (std::size_t i = 0; i < f.size(); ++i) {
                    if (pick[i])
                        sub.push_back(f[i]);
                }
                out.insert(std::move(sub));
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
        return {out.begin(), out.end()};
    }

    std::size_t face_count(int d) const { return d <= 3 && d >= 0 ? faces_by_dim_[d].size() : faces(d).size(); }

    /// f-vector (f_0, ..., f_dim).
    std::vector<std::size_t> f_vector() const
    {
        std::vector<std::size_t> f;
        for (int d = 0; d <= dimension(); ++d)
            f.push_back(face_count(d));
        return f;
    }

    long long euler_characteristic() const
    {
        long long chi = 0;
        auto f = f_vector();
        for (std::size_t d = 0; d < f.size(); ++d)
            chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(f[d]);
        return chi;
    }

    /// 1-skeleton edges (a < b), sorted.
    const std::vector<Face>& edges() const { return faces_by_dim_[1]; }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        return a.vertex_count_ == b.vertex_count_ && a.facets_ == b.facets_;
    }

private:
    void build_indices()
    {
        neighbors_.assign(vertex_count_, {});
        incident_.assign(vertex_count_, {});
        std::array<std::set<Face>, 4> by_dim;
        for (std::size_t i = 0; i < facets_.size(); ++i) {
            const Face& f = facets_[i];
            for (Vertex v : f)
                incident_[v].push_back(i);
            detail::for_each_small_subset(f, 4, [&](const Face& sub) {
                if (small_faces_.insert(detail::pack_small_face(sub)).second)
                    by_dim[sub.size() - 1].insert(sub);
            });
        }
        for (std::size_t d = 0; d < 4; ++d)
            faces_by_dim_[d].assign(by_dim[d].begin(), by_dim[d].end());
        for (const Face& e : faces_by_dim_[1]) {
            neighbors_[e[0]].push_back(e[1]);
            neighbors_[e[1]].push_back(e[0]);
        }
        for (auto& n : neighbors_)
            std::sort(n.begin(), n.end());
    }

    int vertex_count_ = 0;
    std::vector<Face> facets_;
    std::vector<std::vector<Vertex>> neighbors_;
    std::vector<std::vector<std::size_t>> incident_;
    std::unordered_set<std::uint64_t> small_faces_;
    std::array<std::vector<Face>, 4> faces_by_dim_;
};

/// A subcomplex relabeled onto {0..k-1}; `vertices[i]` is the ambient label
/// of local vertex i, in increasing order.
struct Subcomplex {
    SimplicialComplex complex;
    std::vector<Vertex> vertices;

    Vertex ambient(Vertex local) const { return vertices.at(local); }
    std::optional<Vertex> local(Vertex ambient_vertex) const
    {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), ambient_vertex);
        if (it == vertices.end() || *it != ambient_vertex)
            return std::nullopt;
        return static_cast<Vertex>(it - vertices.begin());
    }
};

// ---------------------------------------------------------------------------
// Cliques and flagness
// ---------------------------------------------------------------------------

namespace detail {

inline void bron_kerbosch(const std::vector<std::vector<Vertex>>& adj, std::vector<Vertex>& clique,
                          std::vector<Vertex> candidates, std::vector<Vertex> excluded,
                          const std::function<void(const std::vector<Vertex>&)>& report)
{
    if (candidates.empty() && excluded.empty()) {
        report(clique);
        return;
    }
    Vertex pivot = -1;
    std::size_t best = 0;
    for (const auto* set : {&candidates, &excluded}) {
        for (Vertex u : *set) {
            std::size_t hits = sorted_intersection(candidates, adj[u]).size();
            if (pivot < 0 || hits > best) {
                pivot = u;
                best = hits;
            }
        }
    }
    std::vector<Vertex> branch;
    std::set_difference(candidates.begin(), candidates.end(), adj[pivot].begin(), adj[pivot].end(),
                        std::back_inserter(branch));
    for (Vertex v : branch) {
        clique.push_back(v);
        bron_kerbosch(adj, clique, sorted_intersection(candidates, adj[v]), sorted_intersection(excluded, adj[v]),
                      report);
        clique.pop_back();
        candidates.erase(std::lower_bound(candidates.begin(), candidates.end(), v));
        excluded.insert(std::lower_bound(excluded.begin(), excluded.end(), v), v);
    }
}

} // namespace detail

/// All maximal cliques of a graph given by sorted adjacency lists, each
/// sorted, in lexicographic order.
inline std::vector<Face> maximal_cliques(const std::vector<std::vector<Vertex>>& adjacency)
{
    std::vector<Face> out;
    if (adjacency.empty())
        return out;
    std::vector<Vertex> all(adjacency.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<Vertex> clique;
    detail::bron_kerbosch(adjacency, clique, all, {}, [&](const std::vector<Vertex>& c) {
        Face f = c;
        std::sort(f.begin(), f.end());
        out.push_back(std::move(f));
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// Flag (clique) complex of a graph on n vertices.
inline SimplicialComplex clique_complex(int vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges)
{
    std::vector<std::vector<Vertex>> adj(vertex_count);
    for (auto [a, b] : edges) {
        if (a == b || a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
            throw InputError("bad edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& n : adj) {
        std::sort(n.begin(), n.end());
        n.erase(std::unique(n.begin(), n.end()), n.end());
    }
    return SimplicialComplex(vertex_count, maximal_cliques(adj));
}

struct FlagResult {
    bool flag = true;
    /// A minimal clique (size >= 3) that does not span a simplex.
    std::optional<Face> witness;
};

inline FlagResult is_flag(const SimplicialComplex& k)
{
    std::vector<std::vector<Vertex>> adj(k.vertex_count());
    for (Vertex v = 0; v < k.vertex_count(); ++v)
        adj[v] = k.neighbors(v);
    const std::set<Face> facet_set(k.facets().begin(), k.facets().end());
    for (const Face& clique : maximal_cliques(adj)) {
        if (facet_set.count(clique))
            continue;
        // Smallest non-face inside the offending clique; all its proper subsets are faces.
        for (std::size_t size = 3; size <= clique.size(); ++size) {
            std::vector<bool> pick(clique.size(), false);
            std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
            do {
                Face sub;
                for (std::size_t i = 0; i < clique.size(); ++i) {
                    if (pick[i])
                        sub.push_back(clique[i]);
                }
                if (!k.has_face(sub))
                    return {false, sub};
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
        throw InvariantError("maximal clique " + detail::face_to_string(clique) + " is a face but not a facet");
    }
    return {};
}

// ---------------------------------------------------------------------------
// Squares
// ---------------------------------------------------------------------------

/// Induced 4-cycle, stored as the lexicographically least of its 8 dihedral
/// representatives.
struct Square {
    std::array<Vertex, 4> cycle{};

    static Square canonical(Vertex a, Vertex b, Vertex c, Vertex d)
    {
        const std::array<Vertex, 4> base{a, b, c, d};
        std::array<Vertex, 4> best = base;
        for (int start = 0; start < 4; ++start) {
            for (int dir : {1, -1}) {
                std::array<Vertex, 4> rep{};
                for (int i = 0; i < 4; ++i)
                    rep[i] = base[((start + dir * i) % 4 + 4) % 4];
                best = std::min(best, rep);
            }
        }
        return Square{best};
    }

    std::array<Vertex, 4> sorted_vertices() const
    {
        auto s = cycle;
        std::sort(s.begin(), s.end());
        return s;
    }

    bool contains(Vertex v) const { return std::find(cycle.begin(), cycle.end(), v) != cycle.end(); }

    friend auto operator<=>(const Square&, const Square&) = default;
};

/// Checks the square invariants against an ambient complex.
inline bool is_square_of(const SimplicialComplex& k, const Square& s)
{
    const auto& c = s.cycle;
    for (int i = 0; i < 4; ++i) {
        if (c[i] < 0 || c[i] >= k.vertex_count())
            return false;
    }
    auto sorted = s.sorted_vertices();
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return false;
    for (int i = 0; i < 4; ++i) {
        if (!k.has_edge(c[i], c[(i + 1) % 4]))
            return false;
    }
    return !k.has_edge(c[0], c[2]) && !k.has_edge(c[1], c[3]);
}

/// All squares, each once in canonical form, sorted.
inline std::vector<Square> find_squares(const SimplicialComplex& k)
{
    std::set<Square> found;
    const int n = k.vertex_count();
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex c = a + 1; c < n; ++c) {
            if (k.has_edge(a, c))
                continue;
            auto common = detail::sorted_intersection(k.neighbors(a), k.neighbors(c));
            for (std::size_t i = 0; i < common.size(); ++i) {
                for (std::size_t j = i + 1; j < common.size(); ++j) {
                    if (!k.has_edge(common[i], common[j]))
                        found.insert(Square::canonical(a, common[i], c, common[j]));
                }
            }
        }
    }
    return {found.begin(), found.end()};
}

struct IsolationResult {
    bool isolated = true;
    /// A vertex lying in two distinct squares, with those squares.
    std::optional<Vertex> offending_vertex;
    std::vector<Square> offending_squares;
    std::vector<Square> squares;
};

inline IsolationResult has_isolated_squares(const SimplicialComplex& k)
{
    IsolationResult result;
    result.squares = find_squares(k);
    std::map<Vertex, std::size_t> owner;
    for (std::size_t i = 0; i < result.squares.size(); ++i) {
        for (Vertex v : result.squares[i].sorted_vertices()) {
            auto [it, inserted] = owner.emplace(v, i);
            if (!inserted && !result.offending_vertex) {
                result.isolated = false;
                result.offending_vertex = v;
                result.offending_squares = {result.squares[it->second], result.squares[i]};
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Links, full subcomplexes, subdivision
// ---------------------------------------------------------------------------

namespace detail {

inline Subcomplex relabeled(const std::vector<Vertex>& vertex_set, std::vector<Face> faces)
{
    Subcomplex out;
    out.vertices = vertex_set;
    for (Face& f : faces) {
        for (Vertex& v : f)
            v = static_cast<Vertex>(std::lower_bound(vertex_set.begin(), vertex_set.end(), v) - vertex_set.begin());
    }
    out.complex = SimplicialComplex::from_faces(static_cast<int>(vertex_set.size()), std::move(faces));
    return out;
}

} // namespace detail

/// Simplicial link of v: faces sigma with sigma + {v} in K, on the neighbors of v.
inline Subcomplex vertex_link(const SimplicialComplex& k, Vertex v)
{
    if (v < 0 || v >= k.vertex_count())
        throw InputError("vertex " + std::to_string(v) + " out of range");
    std::vector<Face> faces;
    for (std::size_t j : k.facets_containing(v)) {
        Face f;
        for (Vertex u : k.facets()[j]) {
            if (u != v)
                f.push_back(u);
        }
        if (!f.empty())
            faces.push_back(std::move(f));
    }
    return detail::relabeled(k.neighbors(v), std::move(faces));
}

/// Link of an arbitrary face (sorted vertex list).
inline Subcomplex face_link(const SimplicialComplex& k, const Face& sigma)
{
    if (sigma.empty() || !k.has_face(sigma))
        throw InputError("face " + detail::face_to_string(sigma) + " not in complex");
    std::vector<Face> faces;
    std::set<Vertex> verts;
    for (std::size_t j : k.facets_containing(sigma.front())) {
        const Face& f = k.facets()[j];
        if (!std::includes(f.begin(), f.end(), sigma.begin(), sigma.end()))
            continue;
        Face rest;
        std::set_difference(f.begin(), f.end(), sigma.begin(), sigma.end(), std::back_inserter(rest));
        if (rest.empty())
            continue;
        verts.insert(rest.begin(), rest.end());
        faces.push_back(std::move(rest));
    }
    return detail::relabeled({verts.begin(), verts.end()}, std::move(faces));
}

/// Faces of K entirely contained in S.
inline Subcomplex full_subcomplex(const SimplicialComplex& k, std::vector<Vertex> vertex_set)
{
    std::sort(vertex_set.begin(), vertex_set.end());
    vertex_set.erase(std::unique(vertex_set.begin(), vertex_set.end()), vertex_set.end());
    for (Vertex v : vertex_set) {
        if (v < 0 || v >= k.vertex_count())
            throw InputError("vertex " + std::to_string(v) + " out of range");
    }
    std::vector<Face> faces;
    for (const Face& f : k.facets()) {
        Face part;
        for (Vertex v : f) {
            if (detail::sorted_contains(vertex_set, v))
                part.push_back(v);
        }
        if (!part.empty())
            faces.push_back(std::move(part));
    }
    return detail::relabeled(vertex_set, std::move(faces));
}

/// Barycentric subdivision; `vertex_faces[i]` is the face of K whose
/// barycenter is vertex i. Vertices are numbered by (dimension, lexicographic
/// face order), so every facet of Sd(K) lists its chain from the smallest face up.
struct Subdivision {
    SimplicialComplex complex;
    std::vector<Face> vertex_faces;

    /// Index of the barycenter of a face of K.
    Vertex barycenter(const Face& face) const
    {
        auto it = std::lower_bound(vertex_faces.begin(), vertex_faces.end(), face, [](const Face& a, const Face& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        if (it == vertex_faces.end() || *it != face)
            throw InputError("face " + detail::face_to_string(face) + " not in complex");
        return static_cast<Vertex>(it - vertex_faces.begin());
    }
};

inline Subdivision barycentric_subdivision(const SimplicialComplex& k)
{
    Subdivision out;
    for (int d = 0; d <= k.dimension(); ++d) {
        auto fd = k.faces(d);
        out.vertex_faces.insert(out.vertex_faces.end(), fd.begin(), fd.end());
    }
    std::vector<Face> chains;
    for (const Face& facet : k.facets()) {
        // Maximal chains of a simplex correspond to orderings of its vertices.
        Face perm = facet;
        do {
            Face chain;
            Face prefix;
            for (Vertex v : perm) {
                prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
                chain.push_back(out.barycenter(prefix));
            }
            chains.push_back(std::move(chain));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out.complex = SimplicialComplex(static_cast<int>(out.vertex_faces.size()), std::move(chains));
    return out;
}

/// Disjoint union; vertices of b are shifted by a.vertex_count().
inline SimplicialComplex disjoint_union(const SimplicialComplex& a, const SimplicialComplex& b)
{
    std::vector<Face> facets = a.facets();
    for (Face f : b.facets()) {
        for (Vertex& v : f)
            v += a.vertex_count();
        facets.push_back(std::move(f));
    }
    return SimplicialComplex(a.vertex_count() + b.vertex_count(), std::move(facets));
}

/// Simplicial join; vertices of b are shifted by a.vertex_count().
inline SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b)
{
    if (a.empty())
        return b;
    if (b.empty())
        return a;
    std::vector<Face> facets;
    for (const Face& fa : a.facets()) {
        for (const Face& fb : b.facets()) {
            Face f = fa;
            for (Vertex v : fb)
                f.push_back(v + a.vertex_count());
            facets.push_back(std::move(f));
        }
    }
    return SimplicialComplex(a.vertex_count() + b.vertex_count(), std::move(facets));
}

/// Suspension: join with two points (appended as the last two vertices).
inline SimplicialComplex suspension(const SimplicialComplex& k)
{
    return join(k, SimplicialComplex(2, {{0}, {1}}));
}

// ---------------------------------------------------------------------------
// Isomorphism
// ---------------------------------------------------------------------------

struct IsomorphismWitness {
    /// mapping[v] is the image in the second complex of vertex v of the first.
    std::vector<Vertex> mapping;
};

enum class IsoStatus { isomorphic, not_isomorphic, undecided };

struct IsomorphismResult {
    IsoStatus status = IsoStatus::not_isomorphic;
    std::optional<IsomorphismWitness> witness;

    explicit operator bool() const { return status == IsoStatus::isomorphic; }
};

/// True iff `mapping` is a bijection carrying facets of a onto facets of b.
inline bool is_isomorphism(const SimplicialComplex& a, const SimplicialComplex& b, const std::vector<Vertex>& mapping)
{
    if (a.vertex_count() != b.vertex_count() || a.facets().size() != b.facets().size()
        || mapping.size() != static_cast<std::size_t>(a.vertex_count()))
        return false;
    std::vector<bool> hit(mapping.size(), false);
    for (Vertex image : mapping) {
        if (image < 0 || image >= b.vertex_count() || hit[image])
            return false;
        hit[image] = true;
    }
    std::set<Face> images;
    for (const Face& f : a.facets()) {
        Face g;
        for (Vertex v : f)
            g.push_back(mapping[v]);
        std::sort(g.begin(), g.end());
        images.insert(std::move(g));
    }
    return std::equal(images.begin(), images.end(), b.facets().begin(), b.facets().end());
}

namespace detail {

/// Degree plus facet counts by facet size: invariant under isomorphism.
inline std::vector<std::size_t> vertex_signature(const SimplicialComplex& k, Vertex v)
{
    std::vector<std::size_t> sig{static_cast<std::size_t>(k.degree(v))};
    std::map<std::size_t, std::size_t> sizes;
    for (std::size_t j : k.facets_containing(v))
        ++sizes[k.facets()[j].size()];
    for (auto [size, count] : sizes) {
        sig.push_back(size);
        sig.push_back(count);
    }
    return sig;
}

} // namespace detail

/**
 * Backtracking isomorphism search with signature pruning. Deterministic.
 * Exceeding `node_budget` search nodes yields IsoStatus::undecided.
 */
inline IsomorphismResult is_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b,
                                       std::size_t node_budget = 1'000'000)
{
    const int n = a.vertex_count();
    if (n != b.vertex_count() || a.facets().size() != b.facets().size() || a.f_vector() != b.f_vector())
        return {};
    std::vector<std::vector<std::size_t>> sig_a(n), sig_b(n);
    for (Vertex v = 0; v < n; ++v) {
        sig_a[v] = detail::vertex_signature(a, v);
        sig_b[v] = detail::vertex_signature(b, v);
    }
    {
        auto sa = sig_a, sb = sig_b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb)
            return {};
    }

    // Search order: breadth-first within components, rarest signature first.
    std::map<std::vector<std::size_t>, std::size_t> class_size;
    for (const auto& s : sig_a)
        ++class_size[s];
    std::vector<Vertex> order;
    std::vector<bool> placed(n, false);
    while (static_cast<int>(order.size()) < n) {
        Vertex seed = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (!placed[v] && (seed < 0 || class_size[sig_a[v]] < class_size[sig_a[seed]]))
                seed = v;
        }
        std::vector<Vertex> queue{seed};
        placed[seed] = true;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            order.push_back(queue[qi]);
            for (Vertex u : a.neighbors(queue[qi])) {
                if (!placed[u]) {
                    placed[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }

    std::vector<Vertex> map(n, -1);
    std::vector<bool> used(n, false);
    std::size_t nodes = 0;
    bool exhausted = false;
    std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
        if (depth == order.size())
            return is_isomorphism(a, b, map);
        const Vertex u = order[depth];
        for (Vertex w = 0; w < n; ++w) {
            if (used[w] || sig_a[u] != sig_b[w])
                continue;
            if (++nodes > node_budget) {
                exhausted = true;
                return false;
            }
            bool ok = true;
            for (std::size_t i = 0; i < depth && ok; ++i) {
                const Vertex p = order[i];
                ok = a.has_edge(u, p) == b.has_edge(w, map[p]);
            }
            if (!ok)
                continue;
            map[u] = w;
            used[w] = true;
            if (search(depth + 1))
                return true;
            map[u] = -1;
            used[w] = false;
            if (exhausted)
                return false;
        }
        return false;
    };
    if (search(0))
        return {IsoStatus::isomorphic, IsomorphismWitness{map}};
    if (exhausted)
        return {IsoStatus::undecided, std::nullopt};
    return {};
}

} // namespace flatlink
