#pragma once

#include "flatlink/davis.hpp"
#include "flatlink/fixtures.hpp"
#include "flatlink/homology.hpp"

#include <sstream>
#include <string>

namespace flatlink {

/// Property profile of one complex, as recorded in the golden table.
inline Json complex_properties(const SimplicialComplex& k)
{
    const auto iso = has_isolated_squares(k);
    Json j;
    j["vertices"] = k.vertex_count();
    j["f_vector"] = k.f_vector();
    j["euler"] = k.euler_characteristic();
    j["flag"] = is_flag(k).flag;
    j["squares"] = iso.squares.size();
    j["isolated_squares"] = iso.isolated;
    j["caprace"] = caprace_criterion(k).passes;
    j["homology"] = profile_to_string(simplicial_homology(k));
    j["manifold3"] = k.dimension() == 3 && is_closed_orientable_3manifold(k).ok();
    j["homology_sphere"] = k.dimension() == 3 && is_homology_3sphere(k).homology_sphere;
    return j;
}

/// One line per registry fixture: `name  key=value ...` in sorted key order.
inline std::string fixture_property_table()
{
    std::ostringstream out;
    for (const auto& f : fixtures::registry()) {
        out << f.name;
        const Json props = complex_properties(f.make());
        for (const auto& [key, value] : props.items())
            out << ' ' << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump());
        out << '\n';
    }
    return out.str();
}

} // namespace flatlink
