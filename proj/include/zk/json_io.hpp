#ifndef ZK_JSON_IO_HPP
#define ZK_JSON_IO_HPP

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "zk/complex.hpp"
#include "zk/fingerprint.hpp"
#include "zk/hochster.hpp"
#include "zk/toric.hpp"

namespace zk {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

// Complex interchange format: {"m": <int>, "facets": [[1,4,7], ...]},
// 1-based vertex indices. The loader validates index range, facet
// minimality and that every vertex is covered.

inline Complex complex_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("facets"))
        throw ParseError("complex json needs {\"m\": int, \"facets\": [[...]]}");
    int m = 0;
    try {
        m = j.at("m").get<int>();
    } catch (const Json::exception&) {
        throw ParseError("complex json: \"m\" must be an integer");
    }
    if (m < 0) throw ParseError("complex json: m must be nonnegative");
    std::vector<FaceSet> facets;
    if (!j.at("facets").is_array()) throw ParseError("complex json: \"facets\" must be an array");
    for (const Json& f : j.at("facets")) {
        if (!f.is_array()) throw ParseError("complex json: each facet must be an array");
        FaceSet s;
        for (const Json& v : f) {
            if (!v.is_number_integer()) throw ParseError("complex json: vertex must be an integer");
            long long x = v.get<long long>();
            if (x < 1 || x > m)
                throw ParseError("complex json: vertex " + std::to_string(x) +
                                 " outside 1.." + std::to_string(m));
            s.insert(static_cast<int>(x - 1));
        }
        if (s.empty()) throw ParseError("complex json: empty facet");
        facets.push_back(s);
    }
    // reject non-minimal facet lists rather than silently absorbing them
    for (std::size_t i = 0; i < facets.size(); ++i)
        for (std::size_t k = 0; k < facets.size(); ++k)
            if (i != k && facets[i].subset_of(facets[k]) && facets[i] != facets[k])
                throw ParseError("complex json: facet " + facets[i].to_string() +
                                 " is contained in " + facets[k].to_string());
    try {
        return Complex(m, std::move(facets));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("complex json: ") + e.what());
    }
}

inline Json complex_to_json(const Complex& K) {
    Json j;
    j["m"] = K.m();
    Json facets = Json::array();
    for (const FaceSet& f : K.facets()) {
        Json a = Json::array();
        for (int v : f.vertices()) a.push_back(v + 1);
        facets.push_back(a);
    }
    j["facets"] = facets;
    return j;
}

inline Complex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ParseError("json parse error in '" + path + "': " + e.what());
    }
    return complex_from_json(j);
}

inline Json betti_to_json(const BettiTable& t) {
    Json j;
    j["field"] = field_name(t.field);
    Json entries = Json::array();
    for (const auto& [key, r] : t.entries) {
        Json e;
        e["i"] = key.first;
        e["j"] = key.second;
        e["rank"] = r;
        entries.push_back(e);
    }
    j["entries"] = entries;
    if (t.multigraded) {
        Json multi = Json::array();
        for (const auto& [key, r] : t.multigraded_entries) {
            Json e;
            e["i"] = key.first;
            Json verts = Json::array();
            std::uint64_t m = key.second;
            while (m) {
                verts.push_back(__builtin_ctzll(m) + 1);
                m &= m - 1;
            }
            e["J"] = verts;
            e["rank"] = r;
            multi.push_back(e);
        }
        j["multigraded"] = multi;
    }
    return j;
}

inline std::string betti_to_text(const BettiTable& t) {
    std::ostringstream os;
    os << "field " << field_name(t.field) << "\n";
    os << std::setw(6) << "i" << std::setw(6) << "2j" << std::setw(8) << "rank" << "\n";
    for (const auto& [key, r] : t.entries)
        os << std::setw(6) << -key.first << std::setw(6) << 2 * key.second << std::setw(8) << r
           << "\n";
    return os.str();
}

inline Json char_matrix_to_json(const CharMatrix& L) {
    Json j;
    j["n"] = L.n;
    j["m"] = L.m;
    Json cols = Json::array();
    for (const auto& c : L.columns) cols.push_back(c);
    j["columns"] = cols;
    return j;
}

inline CharMatrix char_matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("m") || !j.contains("columns"))
        throw ParseError("char matrix json needs {\"n\", \"m\", \"columns\"}");
    CharMatrix L;
    L.n = j.at("n").get<int>();
    L.m = j.at("m").get<int>();
    for (const Json& c : j.at("columns")) {
        std::vector<long long> col;
        for (const Json& x : c) col.push_back(x.get<long long>());
        if (static_cast<int>(col.size()) != L.n)
            throw ParseError("char matrix json: column height != n");
        L.columns.push_back(std::move(col));
    }
    if (static_cast<int>(L.columns.size()) != L.m)
        throw ParseError("char matrix json: column count != m");
    return L;
}

inline CharMatrix load_char_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ParseError("json parse error in '" + path + "': " + e.what());
    }
    return char_matrix_from_json(j);
}

inline Json fingerprint_to_json(const RingFingerprint& fp) {
    Json j;
    j["field"] = field_name(fp.field);
    j["m"] = fp.vertex_count;
    j["betti"] = betti_to_json(fp.table);
    j["graded_dims"] = fp.graded_dims;
    j["ann3_multiset"] = fp.ann3_multiset;
    if (fp.nil)
        j["nil"] = *fp.nil;
    else
        j["nil"] = nullptr;
    if (fp.socle)
        j["socle"] = *fp.socle;
    else
        j["socle"] = nullptr;
    if (fp.ind3_top)
        j["ind3_top"] = *fp.ind3_top;
    else
        j["ind3_top"] = nullptr;
    return j;
}

}  // namespace zk

#endif
