#pragma once

#include "flatlink/complex_io.hpp"
#include "flatlink/error.hpp"
#include "flatlink/integer_matrix.hpp"
#include "flatlink/simplicial_complex.hpp"
#include "flatlink/smith.hpp"

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flatlink {

/**
 * Finite free chain complex C_0 <- C_1 <- ... <- C_dim over the integers.
 * boundary(d) : C_d -> C_{d-1} has shape cell_count(d-1) x cell_count(d).
 * Construction rejects shape mismatches and any nonzero composite boundary.
 */
class ChainComplex {
public:
    ChainComplex() = default;

    ChainComplex(std::vector<std::size_t> cell_counts, std::vector<IntegerMatrix> boundaries,
                 std::vector<std::vector<std::string>> labels = {})
        : counts_(std::move(cell_counts)), boundaries_(std::move(boundaries)), labels_(std::move(labels))
    {
        if (counts_.empty()) {
            if (!boundaries_.empty())
                throw InputError("chain complex: boundaries without cells");
            return;
        }
        if (boundaries_.size() + 1 != counts_.size())
            throw InputError("chain complex: expected one boundary map per positive dimension");
        for (std::size_t d = 1; d < counts_.size(); ++d) {
            const IntegerMatrix& b = boundaries_[d - 1];
            if (b.rows() != counts_[d - 1] || b.cols() != counts_[d])
                throw InputError("chain complex: boundary " + std::to_string(d) + " has the wrong shape");
        }
        for (std::size_t d = 2; d < counts_.size(); ++d) {
            if (!(boundaries_[d - 2] * boundaries_[d - 1]).is_zero())
                throw InvariantError("chain complex: boundary " + std::to_string(d - 1) + " * boundary "
                                     + std::to_string(d) + " is nonzero");
        }
        if (!labels_.empty() && labels_.size() != counts_.size())
            throw InputError("chain complex: labels must cover every dimension");
    }

    /// Top dimension; -1 for the zero complex.
    int dimension() const { return static_cast<int>(counts_.size()) - 1; }

    std::size_t cell_count(int d) const
    {
        return d < 0 || d > dimension() ? 0 : counts_[static_cast<std::size_t>(d)];
    }

    /// Zero map outside the stored range.
    IntegerMatrix boundary(int d) const
    {
        if (d >= 1 && d <= dimension())
            return boundaries_[static_cast<std::size_t>(d) - 1];
        return IntegerMatrix(cell_count(d - 1), cell_count(d));
    }

    const std::vector<std::vector<std::string>>& labels() const { return labels_; }

private:
    std::vector<std::size_t> counts_;
    std::vector<IntegerMatrix> boundaries_;
    std::vector<std::vector<std::string>> labels_;
};

struct HomologyGroup {
    std::size_t rank = 0;
    /// Invariant factors >= 2 in divisibility order.
    std::vector<Integer> torsion;

    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct HomologyProfile {
    std::vector<HomologyGroup> groups;

    const HomologyGroup& operator[](std::size_t d) const { return groups.at(d); }
    std::vector<std::size_t> betti() const
    {
        std::vector<std::size_t> b;
        for (const auto& g : groups)
            b.push_back(g.rank);
        return b;
    }
    bool torsion_free() const
    {
        return std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.torsion.empty(); });
    }

    /// Shorthand for a torsion-free profile.
    static HomologyProfile free(std::initializer_list<std::size_t> ranks)
    {
        return free(std::vector<std::size_t>(ranks));
    }

    static HomologyProfile free(const std::vector<std::size_t>& ranks)
    {
        HomologyProfile p;
        for (std::size_t r : ranks)
            p.groups.push_back({r, {}});
        return p;
    }

    friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

inline Json profile_to_json(const HomologyProfile& p)
{
    Json groups = Json::array();
    for (const auto& g : p.groups) {
        Json torsion = Json::array();
        for (const Integer& t : g.torsion) {
            if (t <= Integer(std::numeric_limits<long long>::max()))
                torsion.push_back(t.convert_to<long long>());
            else
                torsion.push_back(t.str());
        }
        groups.push_back(Json{{"rank", g.rank}, {"torsion", torsion}});
    }
    return Json{{"H", groups}};
}

inline std::string profile_to_string(const HomologyProfile& p)
{
    std::string out;
    for (std::size_t d = 0; d < p.groups.size(); ++d) {
        if (d)
            out += ", ";
        out += "H" + std::to_string(d) + "=";
        std::string part;
        if (p.groups[d].rank == 1)
            part = "Z";
        else if (p.groups[d].rank > 1)
            part = "Z^" + std::to_string(p.groups[d].rank);
        for (const Integer& t : p.groups[d].torsion)
            part += (part.empty() ? "" : "+") + ("Z/" + t.str());
        out += part.empty() ? "0" : part;
    }
    return out;
}

/// H_d = ker boundary(d) / im boundary(d+1), computed exactly through Smith forms.
inline HomologyProfile homology(const ChainComplex& c)
{
    HomologyProfile p;
    const int dim = c.dimension();
    std::vector<SmithResult> snf(static_cast<std::size_t>(std::max(dim + 2, 0)));
    for (int d = 1; d <= dim; ++d)
        snf[d] = smith_normal_form(c.boundary(d));
    for (int d = 0; d <= dim; ++d) {
        const std::size_t rank_out = d >= 1 ? snf[d].rank() : 0;
        const std::size_t rank_in = d + 1 <= dim ? snf[d + 1].rank() : 0;
        HomologyGroup g;
        g.rank = c.cell_count(d) - rank_out - rank_in;
        if (d + 1 <= dim) {
            for (const Integer& x : snf[d + 1].invariants) {
                if (x > 1)
                    g.torsion.push_back(x);
            }
        }
        p.groups.push_back(std::move(g));
    }
    return p;
}

/// Simplicial chains with lexicographically ordered faces; a face
/// [v0..vd] has boundary sum_i (-1)^i [v0..^vi..vd].
struct SimplicialChains {
    ChainComplex chains;
    std::vector<std::vector<Face>> basis;

    std::size_t index_of(const Face& face) const
    {
        const auto& b = basis.at(face.size() - 1);
        auto it = std::lower_bound(b.begin(), b.end(), face);
        if (it == b.end() || *it != face)
            throw InputError("face " + detail::face_to_string(face) + " not in chain basis");
        return static_cast<std::size_t>(it - b.begin());
    }
};

inline SimplicialChains simplicial_chain_complex(const SimplicialComplex& k)
{
    SimplicialChains out;
    const int dim = k.dimension();
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::string>> labels;
    for (int d = 0; d <= dim; ++d) {
        out.basis.push_back(k.faces(d));
        counts.push_back(out.basis.back().size());
        std::vector<std::string> names;
        for (const Face& f : out.basis.back())
            names.push_back(detail::face_to_string(f));
        labels.push_back(std::move(names));
    }
    std::vector<IntegerMatrix> boundaries;
    for (int d = 1; d <= dim; ++d) {
        std::vector<SparseRow> rows(counts[d - 1]);
        const auto& lower = out.basis[d - 1];
        const auto& upper = out.basis[d];
        for (std::size_t col = 0; col < upper.size(); ++col) {
            const Face& f = upper[col];
            for (std::size_t i = 0; i < f.size(); ++i) {
                Face face = f;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                const auto row = static_cast<std::size_t>(std::lower_bound(lower.begin(), lower.end(), face) - lower.begin());
                rows[row].emplace_back(col, i % 2 == 0 ? 1 : -1);
            }
        }
        boundaries.push_back(IntegerMatrix::from_rows(counts[d - 1], counts[d], std::move(rows)));
    }
    out.chains = ChainComplex(std::move(counts), std::move(boundaries), std::move(labels));
    return out;
}

inline HomologyProfile simplicial_homology(const SimplicialComplex& k)
{
    return homology(simplicial_chain_complex(k).chains);
}

// ---------------------------------------------------------------------------
// Manifold recognition
// ---------------------------------------------------------------------------

inline bool is_connected(const SimplicialComplex& k)
{
    if (k.vertex_count() == 0)
        return true;
    std::vector<bool> seen(k.vertex_count(), false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex u : k.neighbors(v)) {
            if (!seen[u]) {
                seen[u] = true;
                ++count;
                stack.push_back(u);
            }
        }
    }
    return count == static_cast<std::size_t>(k.vertex_count());
}

/// Connected closed combinatorial surface with Euler characteristic 2.
inline bool is_combinatorial_2sphere(const SimplicialComplex& k)
{
    if (k.dimension() != 2 || !k.is_pure() || !is_connected(k))
        return false;
    for (const Face& e : k.faces(1)) {
        auto l = face_link(k, e);
        if (l.vertices.size() != 2 || l.complex.dimension() != 0)
            return false;
    }
    for (Vertex v = 0; v < k.vertex_count(); ++v) {
        auto l = vertex_link(k, v).complex;
        // A single cycle: connected, every vertex of degree two.
        if (l.dimension() != 1 || !is_connected(l))
            return false;
        for (Vertex u = 0; u < l.vertex_count(); ++u) {
            if (l.degree(u) != 2)
                return false;
        }
    }
    return k.euler_characteristic() == 2;
}

struct ManifoldReport {
    bool pseudomanifold = false;
    bool vertex_links_are_2spheres = false;
    bool orientable = false;
    /// Sign per facet (index into facets()); the first facet is positive.
    std::vector<int> orientation;
    std::vector<std::string> problems;

    bool ok() const { return pseudomanifold && vertex_links_are_2spheres && orientable; }
};

namespace detail {

/// Sign of the face obtained by deleting position i: (-1)^i.
inline int omitted_sign(std::size_t i) { return i % 2 == 0 ? 1 : -1; }

} // namespace detail

/**
 * Closed orientable 3-manifold evidence: every triangle in exactly two
 * tetrahedra, every vertex link a combinatorial 2-sphere, and a consistent
 * facet orientation found by breadth-first sign propagation.
 */
inline ManifoldReport is_closed_orientable_3manifold(const SimplicialComplex& k)
{
    if (k.dimension() != 3 || !k.is_pure())
        throw InputError("complex is not pure 3-dimensional");
    if (!is_connected(k))
        throw InputError("complex is disconnected");
    ManifoldReport report;
    const auto& facets = k.facets();

    std::map<Face, std::vector<std::pair<std::size_t, int>>> cofaces;
    for (std::size_t j = 0; j < facets.size(); ++j) {
        for (std::size_t i = 0; i < 4; ++i) {
            Face tri = facets[j];
            tri.erase(tri.begin() + static_cast<std::ptrdiff_t>(i));
            cofaces[tri].emplace_back(j, detail::omitted_sign(i));
        }
    }
    report.pseudomanifold = true;
    for (const auto& [tri, list] : cofaces) {
        if (list.size() != 2) {
            report.pseudomanifold = false;
            report.problems.push_back("triangle " + detail::face_to_string(tri) + " lies in " + std::to_string(list.size())
                                      + " tetrahedra");
        }
    }

    report.vertex_links_are_2spheres = true;
    for (Vertex v = 0; v < k.vertex_count(); ++v) {
        if (!is_combinatorial_2sphere(vertex_link(k, v).complex)) {
            report.vertex_links_are_2spheres = false;
            report.problems.push_back("link of vertex " + std::to_string(v) + " is not a 2-sphere");
        }
    }

    if (report.pseudomanifold) {
        std::vector<std::vector<std::pair<std::size_t, int>>> adjacent(facets.size());
        for (const auto& [tri, list] : cofaces) {
            const auto [a, sa] = list[0];
            const auto [b, sb] = list[1];
            // Compatible orientations induce opposite signs on the shared triangle.
            adjacent[a].emplace_back(b, -sa * sb);
            adjacent[b].emplace_back(a, -sa * sb);
        }
        std::vector<int> sign(facets.size(), 0);
        sign[0] = 1;
        std::deque<std::size_t> queue{0};
        bool consistent = true;
        while (!queue.empty() && consistent) {
            const std::size_t j = queue.front();
            queue.pop_front();
            for (auto [nb, rel] : adjacent[j]) {
                const int want = sign[j] * rel;
                if (sign[nb] == 0) {
                    sign[nb] = want;
                    queue.push_back(nb);
                } else if (sign[nb] != want) {
                    consistent = false;
                    break;
                }
            }
        }
        if (consistent) {
            report.orientable = true;
            report.orientation = std::move(sign);
        } else {
            report.problems.push_back("orientation propagation found a conflict");
        }
    }
    return report;
}

struct HomologySphereReport {
    bool homology_sphere = false;
    HomologyProfile profile;
    ManifoldReport manifold;
    /// Simple connectivity is never certified; a homology 3-sphere need not be S^3.
    bool simple_connectivity_checked = false;
    std::string note = "integral homology of S^3 verified; simple connectivity NOT checked";
};

inline HomologySphereReport is_homology_3sphere(const SimplicialComplex& k)
{
    HomologySphereReport r;
    r.manifold = is_closed_orientable_3manifold(k);
    r.profile = simplicial_homology(k);
    r.homology_sphere = r.manifold.ok() && r.profile == HomologyProfile::free({1, 0, 0, 1});
    return r;
}

} // namespace flatlink
