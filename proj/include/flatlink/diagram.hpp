#pragma once

#include "flatlink/complex_io.hpp"
#include "flatlink/error.hpp"
#include "flatlink/links.hpp"

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace flatlink {

struct Crossing {
    int over = 0;
    int under = 0;
    int sign = 1;
};

/**
 * Signed crossings of a link diagram with component attribution, plus the
 * order in which each component meets its crossings. Only the data needed
 * for linking numbers is kept; planarity is not checked.
 */
struct PlanarDiagram {
    int components = 0;
    std::vector<Crossing> crossings;
    std::vector<std::vector<std::size_t>> order;
};

/// Each crossing must occur once in the order of each of its components
/// (twice for a self crossing).
inline void validate_diagram(const PlanarDiagram& d)
{
    if (d.components < 0)
        throw InputError("diagram: negative component count");
    if (d.order.size() != static_cast<std::size_t>(d.components))
        throw InputError("diagram: need one crossing order per component");
    std::vector<std::map<int, int>> seen(d.crossings.size());
    for (std::size_t c = 0; c < d.order.size(); ++c) {
        for (std::size_t k : d.order[c]) {
            if (k >= d.crossings.size())
                throw InputError("diagram: component " + std::to_string(c) + " lists unknown crossing " + std::to_string(k));
            ++seen[k][static_cast<int>(c)];
        }
    }
    for (std::size_t k = 0; k < d.crossings.size(); ++k) {
        const auto& x = d.crossings[k];
        const std::string where = "diagram: crossing " + std::to_string(k);
        if (x.sign != 1 && x.sign != -1)
            throw InputError(where + " has sign other than +-1");
        if (x.over < 0 || x.under < 0 || x.over >= d.components || x.under >= d.components)
            throw InputError(where + " names a component out of range");
        std::map<int, int> expected;
        ++expected[x.over];
        ++expected[x.under];
        if (seen[k] != expected)
            throw InputError(where + " does not appear exactly once per strand in the component orders");
    }
}

/// Half the sum of the signs of crossings between each pair of components.
inline LinkingMatrix diagram_linking_matrix(const PlanarDiagram& d)
{
    validate_diagram(d);
    const auto m = static_cast<std::size_t>(d.components);
    LinkingMatrix sums(m, std::vector<long long>(m, 0));
    for (const auto& x : d.crossings) {
        if (x.over == x.under)
            continue;
        sums[x.over][x.under] += x.sign;
        sums[x.under][x.over] += x.sign;
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (sums[i][j] % 2 != 0)
                throw InputError("diagram: odd crossing-sign sum between components " + std::to_string(i) + " and "
                                 + std::to_string(j));
            sums[i][j] /= 2;
        }
    }
    return sums;
}

inline Json diagram_to_json(const PlanarDiagram& d)
{
    Json crossings = Json::array();
    for (const auto& x : d.crossings)
        crossings.push_back(Json{{"over", x.over}, {"under", x.under}, {"sign", x.sign}});
    return Json{{"m", d.components}, {"crossings", crossings}, {"order", d.order}};
}

inline PlanarDiagram diagram_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("m") || !j["m"].is_number_integer() || !j.contains("crossings")
        || !j["crossings"].is_array() || !j.contains("order") || !j["order"].is_array())
        throw InputError("diagram: expected {\"m\": k, \"crossings\": [...], \"order\": [...]}");
    PlanarDiagram d;
    d.components = j["m"].get<int>();
    for (std::size_t k = 0; k < j["crossings"].size(); ++k) {
        const Json& x = j["crossings"][k];
        for (const char* key : {"over", "under", "sign"}) {
            if (!x.is_object() || !x.contains(key) || !x[key].is_number_integer())
                throw InputError("diagram: crossing " + std::to_string(k) + " needs integer '" + key + "'");
        }
        d.crossings.push_back({x["over"].get<int>(), x["under"].get<int>(), x["sign"].get<int>()});
    }
    for (const Json& o : j["order"]) {
        if (!o.is_array())
            throw InputError("diagram: order entries must be arrays");
        std::vector<std::size_t> seq;
        for (const Json& k : o) {
            if (!k.is_number_integer() || k.get<long long>() < 0)
                throw InputError("diagram: crossing index must be a non-negative integer");
            seq.push_back(k.get<std::size_t>());
        }
        d.order.push_back(std::move(seq));
    }
    validate_diagram(d);
    return d;
}

namespace diagrams {

/// Diagram whose components meet their crossings in crossing-index order.
inline PlanarDiagram from_crossings(int m, std::vector<Crossing> crossings)
{
    PlanarDiagram d{m, std::move(crossings), std::vector<std::vector<std::size_t>>(static_cast<std::size_t>(m))};
    for (std::size_t k = 0; k < d.crossings.size(); ++k) {
        const auto& x = d.crossings[k];
        if (x.over >= 0 && x.over < m)
            d.order[x.over].push_back(k);
        if (x.under >= 0 && x.under < m)
            d.order[x.under].push_back(k);
    }
    validate_diagram(d);
    return d;
}

/// Two components clasped `times` times, every crossing of sign `sign`.
inline PlanarDiagram torus_link(int times, int sign = 1)
{
    std::vector<Crossing> xs;
    for (int k = 0; k < 2 * times; ++k)
        xs.push_back(k % 2 == 0 ? Crossing{0, 1, sign} : Crossing{1, 0, sign});
    return from_crossings(2, xs);
}

inline PlanarDiagram hopf() { return torus_link(1); }
inline PlanarDiagram solomon() { return torus_link(2); }

inline PlanarDiagram unlink(int m)
{
    return from_crossings(m, {});
}

/// Two circles drawn overlapping: two crossings of opposite sign.
inline PlanarDiagram split_pair()
{
    return from_crossings(2, {{0, 1, 1}, {0, 1, -1}});
}

/// Five-crossing Whitehead link: a twisted component 0 with one self
/// crossing, clasped by component 1 through four crossings of alternating sign.
inline PlanarDiagram whitehead()
{
    PlanarDiagram d;
    d.components = 2;
    d.crossings = {{0, 0, 1}, {0, 1, 1}, {1, 0, -1}, {0, 1, 1}, {1, 0, -1}};
    d.order = {{0, 1, 2, 0, 3, 4}, {1, 3, 2, 4}};
    validate_diagram(d);
    return d;
}

/// Three components with pairwise linking numbers Lk(0,1) = 1, Lk(0,2) = 3, Lk(1,2) = 3.
inline PlanarDiagram linking_1_3_3()
{
    std::vector<Crossing> xs;
    auto clasp = [&](int a, int b, int times) {
        for (int k = 0; k < 2 * times; ++k)
            xs.push_back(k % 2 == 0 ? Crossing{a, b, 1} : Crossing{b, a, 1});
    };
    clasp(0, 1, 1);
    clasp(0, 2, 3);
    clasp(1, 2, 3);
    return from_crossings(3, xs);
}

/// Three components with Lk(0,1) = 1 and Lk(0,2) = Lk(1,2) = 0; component 2
/// is hooked around component 0 by a sign-cancelling clasp.
inline PlanarDiagram linking_1_0_0()
{
    return from_crossings(3, {{0, 1, 1}, {1, 0, 1}, {0, 2, 1}, {2, 0, -1}, {2, 0, 1}, {0, 2, -1}});
}

/// Borromean rings: ring a lies over ring a+1 at both of their crossings.
inline PlanarDiagram borromean()
{
    PlanarDiagram d;
    d.components = 3;
    d.crossings = {{0, 1, 1}, {0, 1, -1}, {1, 2, 1}, {1, 2, -1}, {2, 0, 1}, {2, 0, -1}};
    d.order = {{0, 4, 1, 5}, {0, 2, 1, 3}, {2, 4, 3, 5}};
    validate_diagram(d);
    return d;
}

/**
 * Brunnian link with m components. For m = 3 the Borromean rings; for larger
 * m a Milnor chain in which each ring clasps the next with four crossings
 * of signs +, -, -, + and the chain closes up.
 */
inline PlanarDiagram brunnian(int m)
{
    if (m < 3)
        throw InputError("Brunnian links need at least 3 components");
    if (m == 3)
        return borromean();
    PlanarDiagram d;
    d.components = m;
    d.order.resize(static_cast<std::size_t>(m));
    std::vector<std::vector<std::size_t>> with_next(static_cast<std::size_t>(m)), with_prev(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const int j = (i + 1) % m;
        for (int k = 0; k < 4; ++k) {
            const std::size_t idx = d.crossings.size();
            d.crossings.push_back(k % 2 == 0 ? Crossing{i, j, k == 0 ? 1 : -1} : Crossing{j, i, k == 1 ? -1 : 1});
            with_next[i].push_back(idx);
            with_prev[j].push_back(idx);
        }
    }
    // Each ring meets half of the previous clasp, the whole next clasp, then the rest of the previous one.
    for (int i = 0; i < m; ++i) {
        auto& o = d.order[i];
        o.insert(o.end(), with_prev[i].begin(), with_prev[i].begin() + 2);
        o.insert(o.end(), with_next[i].begin(), with_next[i].end());
        o.insert(o.end(), with_prev[i].begin() + 2, with_prev[i].end());
    }
    validate_diagram(d);
    return d;
}

/**
 * Whitehead double of every component of the m-component Brunnian link.
 * Each component becomes two antiparallel strands closed by a clasp (two
 * self crossings) and `twists` crossings between the strands. Every
 * crossing between components a and b of sign s becomes four crossings of
 * signs s * o * o' for strand orientations o, o' in {+1, -1}.
 */
inline PlanarDiagram whitehead_double(int m, int twists)
{
    if (twists % 2 != 0)
        throw InputError("Whitehead double needs an even number of twists");
    if (twists < 0)
        throw InputError("twist count must be non-negative");
    const PlanarDiagram base = brunnian(m);
    PlanarDiagram d;
    d.components = m;
    // For each base crossing, the four new crossings indexed by (over strand, under strand).
    std::vector<std::array<std::size_t, 4>> quad(base.crossings.size());
    for (std::size_t k = 0; k < base.crossings.size(); ++k) {
        const auto& x = base.crossings[k];
        for (int s = 0; s < 4; ++s) {
            const int o_over = (s & 1) ? -1 : 1, o_under = (s & 2) ? -1 : 1;
            quad[k][s] = d.crossings.size();
            d.crossings.push_back({x.over, x.under, x.sign * o_over * o_under});
        }
    }
    d.order.resize(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) {
        // Strand index 0 (orientation +1) or 1 (-1) of component c at base crossing k.
        auto visits = [&](std::size_t k, int strand) {
            const auto& x = base.crossings[k];
            std::vector<std::size_t> out;
            for (int s = 0; s < 4; ++s) {
                const int over_strand = s & 1, under_strand = (s >> 1) & 1;
                if (x.over == c && over_strand == strand)
                    out.push_back(quad[k][s]);
                if (x.under == c && under_strand == strand)
                    out.push_back(quad[k][s]);
            }
            return out;
        };
        auto& o = d.order[c];
        for (std::size_t k : base.order[c]) {
            for (std::size_t q : visits(k, 0))
                o.push_back(q);
        }
        std::vector<std::size_t> twist_ids;
        for (int t = 0; t < twists; ++t) {
            twist_ids.push_back(d.crossings.size());
            d.crossings.push_back({c, c, -1});
        }
        const std::size_t clasp = d.crossings.size();
        d.crossings.push_back({c, c, 1});
        d.crossings.push_back({c, c, 1});
        o.insert(o.end(), twist_ids.begin(), twist_ids.end());
        o.insert(o.end(), {clasp, clasp + 1, clasp, clasp + 1});
        for (auto it = base.order[c].rbegin(); it != base.order[c].rend(); ++it) {
            for (std::size_t q : visits(*it, 1))
                o.push_back(q);
        }
        o.insert(o.end(), twist_ids.rbegin(), twist_ids.rend());
    }
    validate_diagram(d);
    return d;
}

struct DiagramInfo {
    std::string name;
    std::string description;
    std::function<PlanarDiagram()> make;
};

inline const std::vector<DiagramInfo>& registry()
{
    static const std::vector<DiagramInfo> entries = {
        {"hopf", "Hopf link, two crossings of sign +1", [] { return hopf(); }},
        {"solomon", "Solomon link, four crossings of sign +1", [] { return solomon(); }},
        {"whitehead", "Whitehead link, one self crossing and four clasp crossings", [] { return whitehead(); }},
        {"lk-1-3-3", "three components with pairwise linking numbers 1, 3, 3", [] { return linking_1_3_3(); }},
        {"lk-1-0-0", "three components with linking numbers 1, 0, 0", [] { return linking_1_0_0(); }},
        {"borromean", "Borromean rings", [] { return borromean(); }},
        {"brunnian-4", "four-component Milnor chain", [] { return brunnian(4); }},
        {"whitehead-double-3-2", "Whitehead double of the Borromean rings, two twists",
         [] { return whitehead_double(3, 2); }},
        {"split-pair", "two unlinked circles drawn overlapping", [] { return split_pair(); }},
        {"unlink-2", "two disjoint circles, no crossings", [] { return unlink(2); }},
    };
    return entries;
}

} // namespace diagrams

inline PlanarDiagram diagram_fixture(const std::string& name)
{
    for (const auto& e : diagrams::registry()) {
        if (e.name == name)
            return e.make();
    }
    throw InputError("unknown diagram fixture '" + name + "'");
}

inline PlanarDiagram brunnian_diagram(int m) { return diagrams::brunnian(m); }
inline PlanarDiagram whitehead_double_diagram(int m, int twists) { return diagrams::whitehead_double(m, twists); }

} // namespace flatlink
