#pragma once

#include "flatlink/error.hpp"
#include "flatlink/simplicial_complex.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace flatlink {

using Json = nlohmann::json;

/// `{"vertices": n, "facets": [[...], ...]}` with facets in sorted order.
inline Json complex_to_json(const SimplicialComplex& k)
{
    Json facets = Json::array();
    for (const Face& f : k.facets())
        facets.push_back(f);
    return Json{{"vertices", k.vertex_count()}, {"facets", facets}};
}

inline SimplicialComplex complex_from_json(const Json& j)
{
    if (!j.is_object())
        throw InputError("complex: expected a JSON object");
    if (!j.contains("vertices") || !j["vertices"].is_number_integer())
        throw InputError("complex: missing integer field \"vertices\"");
    if (!j.contains("facets") || !j["facets"].is_array())
        throw InputError("complex: missing array field \"facets\"");
    const long long n = j["vertices"].get<long long>();
    if (n < 0 || n > SimplicialComplex::max_vertices)
        throw InputError("complex: vertex count " + std::to_string(n) + " out of range");
    std::vector<Face> facets;
    const Json& fs = j["facets"];
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const std::string where = "complex: facet " + std::to_string(i);
        if (!fs[i].is_array() || fs[i].empty())
            throw InputError(where + " is not a nonempty array");
        Face f;
        for (const Json& v : fs[i]) {
            if (!v.is_number_integer())
                throw InputError(where + " has a non-integer entry");
            const long long x = v.get<long long>();
            if (x < 0 || x >= n)
                throw InputError(where + " has vertex " + std::to_string(x) + " out of range");
            if (!f.empty() && x == f.back())
                throw InputError(where + " repeats vertex " + std::to_string(x));
            if (!f.empty() && x < f.back())
                throw InputError(where + " is not sorted");
            f.push_back(static_cast<Vertex>(x));
        }
        if (!facets.empty() && f == facets.back())
            throw InputError(where + " duplicates facet " + std::to_string(i - 1));
        if (!facets.empty() && f < facets.back())
            throw InputError(where + " is out of lexicographic order");
        facets.push_back(std::move(f));
    }
    return SimplicialComplex(static_cast<int>(n), std::move(facets));
}

/// Parses text; rejects malformed JSON and trailing data.
inline Json parse_json_text(const std::string& text, const std::string& what)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(what + ": " + e.what());
    }
}

inline std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline SimplicialComplex load_complex(const std::string& path)
{
    return complex_from_json(parse_json_text(read_text_file(path), path));
}

} // namespace flatlink
