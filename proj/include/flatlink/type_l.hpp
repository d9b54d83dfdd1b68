#pragma once

#include "flatlink/diagram.hpp"
#include "flatlink/fixtures.hpp"
#include "flatlink/homology.hpp"
#include "flatlink/links.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace flatlink {

/// A linking-data expectation: either a matrix or a diagram to read one from.
using LinkTarget = std::variant<LinkingMatrix, PlanarDiagram>;

inline LinkingMatrix target_matrix(const LinkTarget& t)
{
    if (const auto* d = std::get_if<PlanarDiagram>(&t))
        return diagram_linking_matrix(*d);
    const auto& m = std::get<LinkingMatrix>(t);
    check_linking_matrix(m);
    return m;
}

/**
 * True when `b` arises from `a` by relabeling components, reversing some of
 * them, and possibly mirroring. Reversing component i negates row and column
 * i; mirroring negates everything.
 */
inline bool linking_matrices_equivalent(const LinkingMatrix& a, const LinkingMatrix& b)
{
    check_linking_matrix(a);
    check_linking_matrix(b);
    const std::size_t n = a.size();
    if (b.size() != n)
        return false;
    for (int mirror : {1, -1}) {
        std::vector<std::size_t> image(n);
        std::vector<int> sign(n, 1);
        std::vector<bool> taken(n, false);
        // Assign a's components in order to unused components of b.
        auto extend = [&](auto&& self, std::size_t i) -> bool {
            if (i == n)
                return true;
            for (std::size_t t = 0; t < n; ++t) {
                if (taken[t])
                    continue;
                for (int s : {1, -1}) {
                    bool fits = true;
                    for (std::size_t k = 0; k < i && fits; ++k)
                        fits = mirror * s * sign[k] * a[i][k] == b[t][image[k]];
                    if (!fits)
                        continue;
                    taken[t] = true;
                    image[i] = t;
                    sign[i] = s;
                    if (self(self, i + 1))
                        return true;
                    taken[t] = false;
                }
            }
            return false;
        };
        if (extend(extend, 0))
            return true;
    }
    return false;
}

struct TypeLFlags {
    bool is_flag = false;
    bool has_isolated_squares = false;
    bool is_homology_3sphere = false;
    bool component_count_matches = false;
    bool linking_matrix_matches = false;

    bool all() const
    {
        return is_flag && has_isolated_squares && is_homology_3sphere && component_count_matches
               && linking_matrix_matches;
    }
};

struct TypeLReport {
    TypeLFlags flags;
    /// One component per square; empty unless the squares are isolated.
    EdgeCycleLink square_link;
    /// Linking matrix of square_link; computed only when it is defined.
    LinkingMatrix matrix;
    LinkingMatrix expected;
    std::size_t square_count = 0;
    bool verdict = false;
    std::vector<std::string> problems;
    std::string note = "matching component count and linking matrix (up to relabeling, reversal and mirroring) is "
                       "necessary but not sufficient for the squares to form the given link up to isotopy; simple "
                       "connectivity of the ambient is not checked";
};

inline TypeLReport verify_type_l(const SimplicialComplex& sigma, const LinkTarget& target)
{
    TypeLReport r;
    r.expected = target_matrix(target);

    const auto flag = is_flag(sigma);
    r.flags.is_flag = flag.flag;
    if (!flag.flag)
        r.problems.push_back("not flag: " + detail::face_to_string(*flag.witness) + " is a missing simplex");

    const auto iso = has_isolated_squares(sigma);
    r.square_count = iso.squares.size();
    r.flags.has_isolated_squares = iso.isolated;
    if (!iso.isolated)
        r.problems.push_back("squares not isolated: vertex " + std::to_string(*iso.offending_vertex) + " lies in "
                             + std::to_string(iso.offending_squares.size()) + " squares");

    // The manifold check rejects non-pure or disconnected input; here that is a failed flag.
    try {
        const auto sphere = is_homology_3sphere(sigma);
        r.flags.is_homology_3sphere = sphere.homology_sphere;
        if (!sphere.homology_sphere)
            r.problems.push_back("not a homology 3-sphere: H = " + profile_to_string(sphere.profile));
    } catch (const InputError& e) {
        r.problems.push_back(std::string("not a homology 3-sphere: ") + e.what());
    }

    r.flags.component_count_matches = r.square_count == r.expected.size();
    if (!r.flags.component_count_matches)
        r.problems.push_back(std::to_string(r.square_count) + " squares but " + std::to_string(r.expected.size())
                             + " link components expected");

    if (iso.isolated && r.flags.is_homology_3sphere) {
        r.square_link = link_from_squares(sigma);
        r.matrix = linking_matrix(sigma, r.square_link);
        r.flags.linking_matrix_matches = linking_matrices_equivalent(r.matrix, r.expected);
        if (!r.flags.linking_matrix_matches)
            r.problems.push_back("linking matrix of the squares differs from the expected one");
    } else {
        r.problems.push_back("linking matrix not computed: needs isolated squares in a homology 3-sphere");
    }
    r.verdict = r.flags.all();
    return r;
}

/// Barycentric subdivision, which is always flag; returned even for flag input.
inline SimplicialComplex flagify(const SimplicialComplex& k)
{
    auto sd = barycentric_subdivision(k).complex;
    if (!is_flag(sd).flag)
        throw InvariantError("barycentric subdivision is not flag");
    return sd;
}

struct BuildBudget {
    /// Candidates to verify; 0 means give up immediately.
    std::size_t max_candidates = 64;
    /// Candidates with more vertices are skipped without verification.
    int max_vertices = 2000;
    std::uint64_t seed = 0;
};

struct BuildAttempt {
    std::string candidate;
    std::string outcome;
};

struct BuildResult {
    std::optional<SimplicialComplex> complex;
    std::optional<TypeLReport> report;
    std::string candidate;
    std::vector<BuildAttempt> attempts;
    std::uint64_t seed = 0;
    std::string note;

    bool found() const { return complex.has_value(); }
};

/**
 * Best-effort search for a type-L triangulation. Candidates are the shipped
 * fixtures and their flagifications, visited in an order
 * shuffled by the seed. Nothing is returned unless verify_type_l accepts it.
 */
inline BuildResult attempt_type_l_build(const LinkTarget& target, const BuildBudget& budget = {})
{
    const LinkingMatrix expected = target_matrix(target);
    BuildResult out;
    out.seed = budget.seed;

    struct Candidate {
        std::string name;
        std::function<SimplicialComplex()> make;
    };
    std::vector<Candidate> candidates;
    for (const auto& f : fixtures::registry()) {
        candidates.push_back({f.name, f.make});
        candidates.push_back({"flagify(" + f.name + ")", [make = f.make] { return flagify(make()); }});
    }
    std::mt19937_64 rng(budget.seed);
    std::shuffle(candidates.begin(), candidates.end(), rng);

    std::size_t used = 0;
    for (const auto& c : candidates) {
        if (used == budget.max_candidates)
            break;
        ++used;
        const SimplicialComplex k = c.make();
        if (k.vertex_count() > budget.max_vertices) {
            out.attempts.push_back({c.name, "skipped: " + std::to_string(k.vertex_count()) + " vertices"});
            continue;
        }
        // Cheap necessary condition before the full verifier.
        const auto squares = find_squares(k);
        if (squares.size() != expected.size()) {
            out.attempts.push_back({c.name, "rejected: " + std::to_string(squares.size()) + " squares"});
            continue;
        }
        TypeLReport report = verify_type_l(k, expected);
        if (!report.verdict) {
            out.attempts.push_back({c.name, "rejected: " + report.problems.front()});
            continue;
        }
        out.attempts.push_back({c.name, "accepted"});
        out.candidate = c.name;
        out.complex = k;
        out.report = std::move(report);
        out.note = "verified by verify_type_l";
        return out;
    }
    out.note = "not found within budget (" + std::to_string(used) + " of " + std::to_string(candidates.size())
               + " candidates tried)";
    return out;
}

} // namespace flatlink
