/**
 * JSON formats.
 *
 * complex: {"cells": [{"id", "dim", "label"?}], "incidence": [{"of", "face", "sign"}]}
 * ad:      {"complex": <complex> | "point" | "simplex:N" | "product:N,M" | path,
 *           "degree": k, "ring": {"modulus": m} | m, "values": [{"cell", "value": int | "empty"}]}
 * sing ad: {"ring", "sequence": [int | "empty"], "n", "complex", "degree",
 *           "members": [{"face": [0, ...], "values": [{"cell", "tau": [0, ...], "value"}]}],
 *           "isoSigns": [{"face": [0, ...], "index": i, "sign": -1}]}
 * config:  {"ring": {"modulus": m}, "sequence": [...], "degreeWindow": [lo, hi]}
 *
 * Malformed input raises ParseError.
 */
#ifndef ADSING_IO_HPP
#define ADSING_IO_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ball_complex.hpp"
#include "pre_ad.hpp"
#include "singular/sing_ad.hpp"

namespace adsing
{

class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

namespace io
{

inline Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());
    try
    {
        return Json::parse(in);
    }
    catch (const Json::parse_error& e)
    {
        throw ParseError(path.string() + ": " + e.what());
    }
}

inline Json parse_json(const std::string& text)
{
    try
    {
        return Json::parse(text);
    }
    catch (const Json::parse_error& e)
    {
        throw ParseError(e.what());
    }
}

inline const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline int as_int(const Json& j, const std::string& what)
{
    if (!j.is_number_integer())
        throw ParseError(what + " must be an integer");
    return j.get<int>();
}

inline std::string as_string(const Json& j, const std::string& what)
{
    if (!j.is_string())
        throw ParseError(what + " must be a string");
    return j.get<std::string>();
}

inline Integer as_integer(const Json& j, const std::string& what)
{
    if (j.is_number_integer())
        return Integer(std::to_string(j.get<long long>()));
    if (j.is_string())
    {
        Integer x;
        if (x.set_str(j.get<std::string>(), 10) == 0)
            return x;
    }
    throw ParseError(what + " must be an integer");
}

inline Value as_value(const Json& j, const std::string& what)
{
    if (j.is_string() && (j.get<std::string>() == "empty" || j.get<std::string>() == "∅"))
        return std::nullopt;
    return as_integer(j, what);
}

inline Json value_json(const Value& v)
{
    if (!v)
        return "empty";
    if (v->fits_slong_p())
        return v->get_si();
    return v->get_str();
}

inline unsigned as_face(const Json& j, const std::string& what)
{
    if (!j.is_array())
        throw ParseError(what + " must be a list of vertices");
    unsigned mask = 0;
    for (const auto& v : j)
    {
        int i = as_int(v, what);
        if (i < 0 || i > 30)
            throw ParseError(what + " has vertex " + std::to_string(i) + " out of range");
        mask |= 1u << i;
    }
    return mask;
}

inline Json face_json(unsigned mask)
{
    Json a = Json::array();
    for (int v : mask_vertices(mask))
        a.push_back(v);
    return a;
}

} // namespace io

inline RingSpec ring_from_json(const Json& j)
{
    if (j.is_object())
        return RingSpec{io::as_integer(io::field(j, "modulus"), "ring.modulus")};
    return RingSpec{io::as_integer(j, "ring")};
}

inline Json ring_to_json(const RingSpec& r)
{
    Json j;
    j["modulus"] = io::value_json(r.modulus);
    return j;
}

inline SingularitySequence sequence_from_json(const Json& j)
{
    if (!j.is_array())
        throw ParseError("sequence must be a list");
    std::vector<Value> entries;
    for (const auto& e : j)
        entries.push_back(io::as_value(e, "sequence entry"));
    return SingularitySequence(entries);
}

inline Json sequence_to_json(const SingularitySequence& s)
{
    Json a = Json::array();
    for (const auto& e : s.entries())
        a.push_back(io::value_json(e));
    return a;
}

/// Reads a complex; unknown signs, duplicate or dangling ids raise ParseError.
inline BallComplex complex_from_json(const Json& j)
{
    const Json& cells = io::field(j, "cells");
    const Json& inc = io::field(j, "incidence");
    if (!cells.is_array() || !inc.is_array())
        throw ParseError("\"cells\" and \"incidence\" must be lists");
    std::vector<Cell> cs;
    for (const auto& c : cells)
    {
        Cell cell{io::as_string(io::field(c, "id"), "cell id"), io::as_int(io::field(c, "dim"), "cell dim"), {}};
        if (c.contains("label"))
            cell.label = io::as_string(c.at("label"), "cell label");
        cs.push_back(std::move(cell));
    }
    std::vector<IncidenceEntry> es;
    for (const auto& e : inc)
    {
        int sign = io::as_int(io::field(e, "sign"), "incidence sign");
        if (sign != 1 && sign != -1)
            throw ParseError("unknown incidence sign " + std::to_string(sign));
        es.push_back({io::as_string(io::field(e, "of"), "incidence of"),
                      io::as_string(io::field(e, "face"), "incidence face"), sign});
    }
    try
    {
        return BallComplex(std::move(cs), es);
    }
    catch (const ComplexError& e)
    {
        throw ParseError(e.what());
    }
}

inline Json complex_to_json(const BallComplex& k)
{
    Json j;
    j["cells"] = Json::array();
    for (const auto& c : k.cells())
    {
        Json cj;
        cj["id"] = c.id;
        cj["dim"] = c.dim;
        if (c.label)
            cj["label"] = *c.label;
        j["cells"].push_back(cj);
    }
    j["incidence"] = Json::array();
    for (const auto& e : k.incidence_entries())
    {
        Json ej;
        ej["of"] = e.of;
        ej["face"] = e.face;
        ej["sign"] = e.sign;
        j["incidence"].push_back(ej);
    }
    return j;
}

/// A complex given inline, by name ("point", "simplex:N", "boundary:N", "product:N,M") or by path.
inline BallComplex complex_spec(const Json& j, const std::filesystem::path& base_dir = {})
{
    if (j.is_object())
        return complex_from_json(j);
    std::string s = io::as_string(j, "complex");
    auto number = [&](const std::string& t) {
        try
        {
            std::size_t used = 0;
            int n = std::stoi(t, &used);
            if (used != t.size() || n < 0 || n > 10)
                throw ParseError("bad complex size in \"" + s + "\"");
            return n;
        }
        catch (const std::logic_error&)
        {
            throw ParseError("bad complex size in \"" + s + "\"");
        }
    };
    if (s == "point")
        return point();
    if (s.rfind("simplex:", 0) == 0)
        return simplex(number(s.substr(8)));
    if (s.rfind("boundary:", 0) == 0)
    {
        int n = number(s.substr(9));
        BallComplex k = simplex(n);
        return boundary_subcomplex(k, k.id(k.size() - 1));
    }
    if (s.rfind("product:", 0) == 0)
    {
        auto comma = s.find(',', 8);
        if (comma == std::string::npos)
            throw ParseError("product needs two sizes: \"" + s + "\"");
        return product(simplex(number(s.substr(8, comma - 8))), simplex(number(s.substr(comma + 1))));
    }
    return complex_from_json(io::read_json_file(base_dir / s));
}

inline PreAd ad_from_json(const Json& j, const std::filesystem::path& base_dir = {})
{
    ComplexPtr k = share(complex_spec(io::field(j, "complex"), base_dir));
    PreAd m(k, io::as_int(io::field(j, "degree"), "degree"), ring_from_json(io::field(j, "ring")));
    const Json& values = io::field(j, "values");
    if (!values.is_array())
        throw ParseError("\"values\" must be a list");
    for (const auto& v : values)
    {
        std::string id = io::as_string(io::field(v, "cell"), "value cell");
        auto cell = k->find(id);
        if (!cell)
            throw ParseError("value on unknown cell " + id);
        try
        {
            m.set(*cell, io::as_value(io::field(v, "value"), "value"));
        }
        catch (const AdError& e)
        {
            throw ParseError(e.what());
        }
    }
    return m;
}

inline Json ad_to_json(const PreAd& m)
{
    Json j;
    j["complex"] = complex_to_json(m.complex());
    j["degree"] = m.degree();
    j["ring"] = ring_to_json(m.ring());
    j["values"] = Json::array();
    for (std::size_t c = 0; c < m.complex().size(); ++c)
        if (m.value(c))
        {
            Json v;
            v["cell"] = m.complex().id(c);
            v["value"] = io::value_json(m.value(c));
            j["values"].push_back(v);
        }
    return j;
}

inline SingAd sing_ad_from_json(const Json& j, const std::filesystem::path& base_dir = {})
{
    ComplexPtr k = share(complex_spec(io::field(j, "complex"), base_dir));
    SingularitySequence seq = sequence_from_json(io::field(j, "sequence"));
    int n = j.contains("n") ? io::as_int(j.at("n"), "n") : static_cast<int>(seq.size());
    if (n < 0 || n > 8 || static_cast<std::size_t>(n) > seq.size())
        throw ParseError("n must lie between 0 and the sequence length (at most 8)");
    auto faces = make_faces(k, n);
    SingAd m(faces, ring_from_json(io::field(j, "ring")), seq, io::as_int(io::field(j, "degree"), "degree"));
    const Json& members = io::field(j, "members");
    if (!members.is_array())
        throw ParseError("\"members\" must be a list");
    for (const auto& mem : members)
    {
        unsigned sigma = io::as_face(io::field(mem, "face"), "member face");
        if (!faces->is_face(sigma))
            throw ParseError("member face " + face_to_string(sigma) + " must contain 0 and lie in {0.." +
                             std::to_string(n) + "}");
        for (const auto& v : io::field(mem, "values"))
        {
            std::string id = io::as_string(io::field(v, "cell"), "value cell");
            auto cell = k->find(id);
            if (!cell)
                throw ParseError("value on unknown cell " + id);
            unsigned tau = io::as_face(io::field(v, "tau"), "value tau");
            if (tau == 0 || (tau & sigma) != tau)
                throw ParseError("tau " + face_to_string(tau) + " is not a face of " + face_to_string(sigma));
            try
            {
                m.set(sigma, *cell, tau, io::as_value(io::field(v, "value"), "value"));
            }
            catch (const AdError& e)
            {
                throw ParseError(e.what());
            }
        }
    }
    if (j.contains("isoSigns"))
        for (const auto& s : j.at("isoSigns"))
        {
            try
            {
                m.set_iso_sign(io::as_face(io::field(s, "face"), "isoSigns face"),
                               io::as_int(io::field(s, "index"), "isoSigns index"),
                               io::as_int(io::field(s, "sign"), "isoSigns sign"));
            }
            catch (const AdError& e)
            {
                throw ParseError(e.what());
            }
        }
    return m;
}

inline Json sing_ad_to_json(const SingAd& m)
{
    Json j;
    j["ring"] = ring_to_json(m.ring());
    j["sequence"] = sequence_to_json(m.sequence());
    j["n"] = m.n();
    j["complex"] = complex_to_json(*m.base());
    j["degree"] = m.degree();
    j["members"] = Json::array();
    for (unsigned sigma : m.faces()->faces())
    {
        Json mem;
        mem["face"] = io::face_json(sigma);
        mem["values"] = Json::array();
        for (std::size_t c = 0; c < m.base()->size(); ++c)
            for (unsigned tau = 1; tau <= sigma; tau += 2)
                if ((tau & sigma) == tau && m.value(sigma, c, tau))
                {
                    Json v;
                    v["cell"] = m.base()->id(c);
                    v["tau"] = io::face_json(tau);
                    v["value"] = io::value_json(m.value(sigma, c, tau));
                    mem["values"].push_back(v);
                }
        j["members"].push_back(mem);
    }
    j["isoSigns"] = Json::array();
    for (const auto& [key, sign] : m.iso_signs())
    {
        Json s;
        s["face"] = io::face_json(key.first);
        s["index"] = key.second;
        s["sign"] = sign;
        j["isoSigns"].push_back(s);
    }
    return j;
}

struct SingularityConfig
{
    std::optional<RingSpec> ring;
    std::optional<SingularitySequence> sequence;
    std::optional<std::pair<int, int>> window;
};

inline SingularityConfig config_from_json(const Json& j)
{
    SingularityConfig c;
    if (!j.is_object())
        throw ParseError("config must be an object");
    if (j.contains("ring"))
        c.ring = ring_from_json(j.at("ring"));
    if (j.contains("sequence"))
        c.sequence = sequence_from_json(j.at("sequence"));
    if (j.contains("degreeWindow"))
    {
        const Json& w = j.at("degreeWindow");
        if (!w.is_array() || w.size() != 2)
            throw ParseError("degreeWindow must be [lo, hi]");
        c.window = std::pair{io::as_int(w[0], "degreeWindow"), io::as_int(w[1], "degreeWindow")};
    }
    return c;
}

/// "lo..hi"
inline std::pair<int, int> parse_window(const std::string& text)
{
    auto dots = text.find("..");
    if (dots == std::string::npos)
        throw ParseError("window must look like lo..hi, got \"" + text + "\"");
    try
    {
        std::size_t a = 0, b = 0;
        int lo = std::stoi(text.substr(0, dots), &a);
        int hi = std::stoi(text.substr(dots + 2), &b);
        if (a != dots || b != text.size() - dots - 2)
            throw ParseError("window must look like lo..hi, got \"" + text + "\"");
        return {lo, hi};
    }
    catch (const std::logic_error&)
    {
        throw ParseError("window must look like lo..hi, got \"" + text + "\"");
    }
}

} // namespace adsing

#endif
