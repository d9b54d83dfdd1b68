#pragma once

#include "flatlink/complex_io.hpp"
#include "flatlink/error.hpp"
#include "flatlink/homology.hpp"
#include "flatlink/simplicial_complex.hpp"
#include "flatlink/smith.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace flatlink {

/// Square integer matrix of pairwise linking numbers; the diagonal is 0.
using LinkingMatrix = std::vector<std::vector<long long>>;

inline void check_linking_matrix(const LinkingMatrix& m)
{
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size())
            throw InputError("linking matrix is not square");
        if (m[i][i] != 0)
            throw InputError("linking matrix diagonal entry " + std::to_string(i) + " is not 0");
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (m[i][j] != m[j][i])
                throw InputError("linking matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
}

inline Json linking_matrix_to_json(const LinkingMatrix& m) { return Json(m); }

/**
 * Link made of disjoint edge cycles. Component i is traversed in the listed
 * order when orientations[i] = +1 and in reverse when it is -1.
 */
struct EdgeCycleLink {
    std::vector<std::vector<Vertex>> components;
    std::vector<int> orientations;

    std::size_t size() const { return components.size(); }

    /// Vertex sequence in traversal order.
    std::vector<Vertex> oriented(std::size_t i) const
    {
        auto c = components.at(i);
        if (orientations.at(i) < 0)
            std::reverse(c.begin(), c.end());
        return c;
    }

    EdgeCycleLink reversed(std::size_t i) const
    {
        EdgeCycleLink out = *this;
        out.orientations.at(i) = -out.orientations.at(i);
        return out;
    }
};

inline void validate_link(const SimplicialComplex& ambient, const EdgeCycleLink& link)
{
    if (link.orientations.size() != link.components.size())
        throw InputError("link: one orientation per component required");
    std::set<Vertex> used;
    for (std::size_t i = 0; i < link.components.size(); ++i) {
        const auto& c = link.components[i];
        const std::string where = "link component " + std::to_string(i);
        if (link.orientations[i] != 1 && link.orientations[i] != -1)
            throw InputError(where + ": orientation must be 1 or -1");
        if (c.size() < 3)
            throw InputError(where + ": needs at least 3 vertices");
        for (std::size_t k = 0; k < c.size(); ++k) {
            const Vertex a = c[k], b = c[(k + 1) % c.size()];
            if (a < 0 || a >= ambient.vertex_count())
                throw InputError(where + ": vertex " + std::to_string(a) + " out of range");
            if (!used.insert(a).second)
                throw InputError(where + ": vertex " + std::to_string(a) + " repeated or shared with another component");
            if (b >= 0 && b < ambient.vertex_count() && !ambient.has_edge(a, b))
                throw InputError(where + ": " + std::to_string(a) + "-" + std::to_string(b) + " is not an edge");
        }
    }
}

/// One component per square in canonical cycle order, all oriented +1.
inline EdgeCycleLink link_from_squares(const SimplicialComplex& sigma)
{
    EdgeCycleLink link;
    std::map<Vertex, std::size_t> owner;
    const auto squares = find_squares(sigma);
    for (std::size_t i = 0; i < squares.size(); ++i) {
        for (Vertex v : squares[i].cycle) {
            auto [it, fresh] = owner.emplace(v, i);
            if (!fresh)
                throw InputError("squares " + std::to_string(it->second) + " and " + std::to_string(i)
                                 + " share vertex " + std::to_string(v));
        }
        link.components.emplace_back(squares[i].cycle.begin(), squares[i].cycle.end());
        link.orientations.push_back(1);
    }
    return link;
}

inline Json link_to_json(const EdgeCycleLink& link)
{
    return Json{{"components", link.components}, {"orientations", link.orientations}};
}

inline EdgeCycleLink link_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("components") || !j["components"].is_array())
        throw InputError("link: expected {\"components\": [[...], ...], \"orientations\": [...]}");
    EdgeCycleLink link;
    for (const Json& c : j["components"]) {
        if (!c.is_array())
            throw InputError("link: component must be an array of vertices");
        std::vector<Vertex> comp;
        for (const Json& v : c) {
            if (!v.is_number_integer())
                throw InputError("link: vertex must be an integer");
            comp.push_back(v.get<Vertex>());
        }
        link.components.push_back(std::move(comp));
    }
    if (j.contains("orientations")) {
        if (!j["orientations"].is_array())
            throw InputError("link: orientations must be an array");
        for (const Json& o : j["orientations"]) {
            if (!o.is_number_integer())
                throw InputError("link: orientation must be 1 or -1");
            link.orientations.push_back(o.get<int>());
        }
    } else {
        link.orientations.assign(link.components.size(), 1);
    }
    return link;
}

/// Ambient homology 3-sphere with a fixed orientation: one sign per facet,
/// the lexicographically least facet positive unless reversed.
struct OrientedAmbient {
    SimplicialComplex complex;
    std::vector<int> facet_signs;
};

inline OrientedAmbient orient_homology_sphere(const SimplicialComplex& sigma, bool reverse = false)
{
    auto report = is_homology_3sphere(sigma);
    if (!report.homology_sphere) {
        std::string why = profile_to_string(report.profile);
        if (!report.manifold.problems.empty())
            why = report.manifold.problems.front();
        throw InputError("ambient is not a verified homology 3-sphere (" + why + ")");
    }
    OrientedAmbient out{sigma, report.manifold.orientation};
    if (reverse) {
        for (int& s : out.facet_signs)
            s = -s;
    }
    return out;
}

namespace detail {

/// Sign of the permutation taking `sorted` to `ordered` (same elements).
inline int permutation_sign(const Face& sorted, const std::vector<Vertex>& ordered)
{
    std::vector<std::size_t> pos;
    for (Vertex v : ordered)
        pos.push_back(static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()));
    int sign = 1;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            if (pos[i] > pos[j])
                sign = -sign;
        }
    }
    return sign;
}

inline bool cycle_is_full(const SimplicialComplex& k, const std::vector<Vertex>& cycle)
{
    std::vector<Vertex> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    const auto full = full_subcomplex(k, sorted).complex;
    return full.dimension() == 1 && full.face_count(1) == cycle.size();
}

/// Orientation of Sd(K) induced from K: the chain facet over sigma with
/// vertices added in the order (a, b, c, d) has sign s(sigma) * sgn(a b c d).
inline OrientedAmbient subdivide_oriented(const OrientedAmbient& amb, Subdivision& sd_out)
{
    sd_out = barycentric_subdivision(amb.complex);
    std::map<Face, int> facet_sign;
    for (std::size_t f = 0; f < amb.complex.facets().size(); ++f)
        facet_sign[amb.complex.facets()[f]] = amb.facet_signs[f];
    OrientedAmbient out{sd_out.complex, {}};
    for (const Face& chain : sd_out.complex.facets()) {
        // Chain vertices are numbered by dimension, so chain[k] is the k-face.
        const Face& top = sd_out.vertex_faces.at(chain.back());
        std::vector<Vertex> order;
        for (Vertex b : chain) {
            for (Vertex v : sd_out.vertex_faces.at(b)) {
                if (std::find(order.begin(), order.end(), v) == order.end())
                    order.push_back(v);
            }
        }
        out.facet_signs.push_back(facet_sign.at(top) * permutation_sign(top, order));
    }
    // Must agree with the orientation found by search up to a global sign.
    const auto check = is_closed_orientable_3manifold(out.complex);
    const int rel = check.orientation.empty() ? 1 : check.orientation.front() * out.facet_signs.front();
    for (std::size_t f = 0; f < out.facet_signs.size(); ++f) {
        if (check.orientation.at(f) * rel != out.facet_signs[f])
            throw InvariantError("induced orientation of the subdivision is not coherent");
    }
    return out;
}

inline std::vector<Integer> edge_chain(const SimplicialChains& chains, const Subcomplex& x,
                                       const std::vector<std::pair<Vertex, Vertex>>& oriented_edges,
                                       const std::vector<int>& coefficients)
{
    std::vector<Integer> z(chains.basis.at(1).size(), 0);
    for (std::size_t k = 0; k < oriented_edges.size(); ++k) {
        auto [a, b] = oriented_edges[k];
        const auto la = x.local(a), lb = x.local(b);
        if (!la || !lb)
            throw InvariantError("chain leaves the complement");
        const Face e = *la < *lb ? Face{*la, *lb} : Face{*lb, *la};
        z[chains.index_of(e)] += *la < *lb ? coefficients[k] : -coefficients[k];
    }
    return z;
}

/**
 * Linking number of cycle `zi` with cycle `lj` (both oriented vertex
 * sequences, lj a full subcomplex). The class of zi in H_1 of the full
 * subcomplex X on the remaining vertices is compared with the meridian of
 * the first edge a->b of lj: the sum over tetrahedra {a,b,c,d} (c < d) of
 * [c,d] weighted by the ambient sign of the ordered tetrahedron (a,b,c,d).
 */
inline long long complement_class(const OrientedAmbient& amb, const std::vector<Vertex>& zi,
                                  const std::vector<Vertex>& lj)
{
    const auto& k = amb.complex;
    std::vector<Vertex> rest;
    {
        std::vector<char> removed(static_cast<std::size_t>(k.vertex_count()), 0);
        for (Vertex v : lj)
            removed[v] = 1;
        for (Vertex v = 0; v < k.vertex_count(); ++v) {
            if (!removed[v])
                rest.push_back(v);
        }
    }
    const Subcomplex x = full_subcomplex(k, rest);
    const SimplicialChains chains = simplicial_chain_complex(x.complex);
    if (chains.basis.size() < 2)
        throw InvariantError("complement of a component has no edges");

    std::vector<std::pair<Vertex, Vertex>> zi_edges;
    for (std::size_t t = 0; t < zi.size(); ++t)
        zi_edges.emplace_back(zi[t], zi[(t + 1) % zi.size()]);
    const auto z = edge_chain(chains, x, zi_edges, std::vector<int>(zi_edges.size(), 1));

    const Vertex a = lj[0], b = lj[1];
    std::vector<std::pair<Vertex, Vertex>> mu_edges;
    std::vector<int> mu_coeff;
    for (std::size_t f : k.facets_containing(a)) {
        const Face& sigma = k.facets()[f];
        if (!std::binary_search(sigma.begin(), sigma.end(), b))
            continue;
        std::vector<Vertex> cd;
        for (Vertex v : sigma) {
            if (v != a && v != b)
                cd.push_back(v);
        }
        mu_edges.emplace_back(cd[0], cd[1]);
        mu_coeff.push_back(amb.facet_signs[f] * permutation_sign(sigma, {a, b, cd[0], cd[1]}));
    }
    const auto mu = edge_chain(chains, x, mu_edges, mu_coeff);

    const IntegerMatrix& d1 = chains.chains.boundary(1);
    for (const auto* c : {&z, &mu}) {
        for (const auto& entry : d1.apply(*c)) {
            if (entry != 0)
                throw InvariantError("linking chain is not a cycle");
        }
    }

    // H_1(X) must be infinite cyclic.
    const auto snf1 = smith_normal_form(d1);
    const auto snf2 = smith_normal_form(chains.chains.boundary(2), SmithOptions{true, false});
    for (const auto& inv : snf2.invariants) {
        if (inv != 1)
            throw InputError("complement of a link component has torsion in H_1; ambient is not a homology sphere");
    }
    const std::size_t rank = snf2.rank();
    const std::size_t edges = chains.basis[1].size();
    if (edges - snf1.rank() - rank != 1)
        throw InputError("complement of a link component does not have H_1 = Z");

    const auto uz = snf2.u->apply(z);
    const auto um = snf2.u->apply(mu);
    std::optional<Integer> lambda;
    for (std::size_t r = rank; r < edges; ++r) {
        if (um[r] == 0)
            continue;
        if (uz[r] % um[r] != 0)
            throw InvariantError("cycle class is not an integer multiple of the meridian");
        lambda = uz[r] / um[r];
        break;
    }
    if (!lambda)
        throw InvariantError("meridian is null-homologous in the complement");
    for (std::size_t r = rank; r < edges; ++r) {
        if (uz[r] != *lambda * um[r])
            throw InvariantError("cycle class is not proportional to the meridian");
    }
    return static_cast<long long>(*lambda);
}

} // namespace detail

/// The link carried to Sd(K): each edge u-w becomes u-(uw)-w.
inline EdgeCycleLink carry_link(const Subdivision& sd, const EdgeCycleLink& link)
{
    EdgeCycleLink out{{}, link.orientations};
    for (const auto& c : link.components) {
        std::vector<Vertex> fine;
        for (std::size_t t = 0; t < c.size(); ++t) {
            const Vertex u = c[t], w = c[(t + 1) % c.size()];
            fine.push_back(sd.barycenter({u}));
            fine.push_back(sd.barycenter(u < w ? Face{u, w} : Face{w, u}));
        }
        out.components.push_back(std::move(fine));
    }
    return out;
}

/// Ambient plus link, subdivided once if some component is not a full subcomplex.
struct PreparedLink {
    OrientedAmbient ambient;
    std::vector<std::vector<Vertex>> cycles; // oriented vertex sequences
    bool subdivided = false;
};

inline PreparedLink prepare_link(const OrientedAmbient& amb, const EdgeCycleLink& link, bool force_subdivision = false)
{
    validate_link(amb.complex, link);
    PreparedLink p{amb, {}, false};
    const bool all_full = std::all_of(link.components.begin(), link.components.end(),
                                      [&](const auto& c) { return detail::cycle_is_full(amb.complex, c); });
    if (!all_full || force_subdivision) {
        Subdivision sd;
        p.ambient = detail::subdivide_oriented(amb, sd);
        p.subdivided = true;
        const auto fine = carry_link(sd, link);
        for (std::size_t i = 0; i < fine.size(); ++i)
            p.cycles.push_back(fine.oriented(i));
    } else {
        for (std::size_t i = 0; i < link.size(); ++i)
            p.cycles.push_back(link.oriented(i));
    }
    return p;
}

/// Linking number of components i and j; the ambient orientation puts the
/// lexicographically least facet positive (negated when `reverse_ambient`).
inline long long simplicial_linking_number(const SimplicialComplex& sigma, const EdgeCycleLink& link, std::size_t i,
                                           std::size_t j, bool reverse_ambient = false)
{
    if (i == j)
        throw InputError("linking number needs two distinct components");
    if (i >= link.size() || j >= link.size())
        throw InputError("component index out of range");
    const auto prepared = prepare_link(orient_homology_sphere(sigma, reverse_ambient), link);
    return detail::complement_class(prepared.ambient, prepared.cycles[i], prepared.cycles[j]);
}

struct LinkingOptions {
    bool reverse_ambient = false;
    /// Compute every entry in both orders and require symmetry.
    bool check_symmetry = true;
    /// Subdivide even when every component is already a full subcomplex.
    bool force_subdivision = false;
};

inline LinkingMatrix linking_matrix(const SimplicialComplex& sigma, const EdgeCycleLink& link,
                                    LinkingOptions options = {})
{
    const std::size_t m = link.size();
    LinkingMatrix out(m, std::vector<long long>(m, 0));
    if (m < 2) {
        validate_link(sigma, link);
        return out;
    }
    const auto prepared =
        prepare_link(orient_homology_sphere(sigma, options.reverse_ambient), link, options.force_subdivision);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            out[i][j] = out[j][i] = detail::complement_class(prepared.ambient, prepared.cycles[i], prepared.cycles[j]);
            if (options.check_symmetry) {
                const long long back = detail::complement_class(prepared.ambient, prepared.cycles[j], prepared.cycles[i]);
                if (back != out[i][j])
                    throw InvariantError("linking numbers are not symmetric for components " + std::to_string(i)
                                         + " and " + std::to_string(j));
            }
        }
    }
    return out;
}

} // namespace flatlink
