#pragma once

#include <algorithm>
#include <array>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arith.hpp"
#include "series.hpp"

namespace theta_tower
{

/// Canonical JSON: {"m": m, "qprec": p or null when exact, "terms": [[a, [u...], "num/den"], ...]}
/// with terms in ascending (a, u) order. Units: q^{a/24}, prod zeta_j^{u_j/2}.
inline nlohmann::json to_json(const FourierExpansion& f)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : f.terms())
    {
        nlohmann::json u = nlohmann::json::array();
        for (std::size_t j = 0; j < f.vars(); ++j)
            u.push_back(e.u[j]);
        terms.push_back(nlohmann::json::array({e.a, u, to_fraction_string(c)}));
    }
    nlohmann::json j;
    j["m"] = f.vars();
    j["qprec"] = f.is_exact() ? nlohmann::json(nullptr) : nlohmann::json(f.qprec());
    j["terms"] = std::move(terms);
    return j;
}

inline FourierExpansion series_from_json(const nlohmann::json& j)
{
    try
    {
        const auto m = j.at("m").get<std::size_t>();
        const auto& qp = j.at("qprec");
        const int qprec = qp.is_null() ? FourierExpansion::kExact : qp.get<int>();
        FourierExpansion f(m, qprec);
        Exponent previous;
        bool first = true;
        for (const auto& t : j.at("terms"))
        {
            if (!t.is_array() || t.size() != 3)
                throw SeriesError("series JSON: each term must be [a, [u...], \"num/den\"]");
            Exponent e;
            e.a = t[0].get<int>();
            const auto& u = t[1];
            if (u.size() != m)
                throw SeriesError("series JSON: exponent vector has wrong length");
            for (std::size_t i = 0; i < m; ++i)
                e.u[i] = u[i].get<int>();
            if (e.a >= qprec)
                throw SeriesError("series JSON: term at or above the watermark");
            if (!first && !(previous < e))
                throw SeriesError("series JSON: terms are not strictly ascending");
            const Rational c = parse_rational(t[2].get<std::string>());
            if (c == 0)
                throw SeriesError("series JSON: zero coefficient stored");
            f.add_term(e, c);
            previous = e;
            first = false;
        }
        return f;
    }
    catch (const SeriesError&)
    {
        throw;
    }
    catch (const nlohmann::json::exception& ex)
    {
        throw SeriesError(std::string("series JSON: ") + ex.what());
    }
    catch (const std::invalid_argument& ex)
    {
        throw SeriesError(std::string("series JSON: ") + ex.what());
    }
}

/// Aligned text table, one row per term, with q^n and r^(...) labels.
inline std::string to_table(const FourierExpansion& f)
{
    std::vector<std::array<std::string, 3>> rows;
    rows.push_back({"q", "r", "coefficient"});
    for (const auto& [e, c] : f.terms())
        rows.push_back({q_label(e.a), f.vars() == 0 ? "-" : r_label(e, f.vars()), to_short_string(c)});
    std::array<std::size_t, 3> width{};
    for (const auto& r : rows)
        for (std::size_t i = 0; i < 3; ++i)
            width[i] = std::max(width[i], r[i].size());
    std::ostringstream out;
    for (const auto& r : rows)
    {
        out << r[0] << std::string(width[0] - r[0].size() + 2, ' ') << r[1]
            << std::string(width[1] - r[1].size() + 2, ' ') << r[2] << "\n";
    }
    out << "precision: " << (f.is_exact() ? std::string("exact") : "O(" + q_label(f.qprec()) + ")") << "\n";
    return out.str();
}

} // namespace theta_tower
