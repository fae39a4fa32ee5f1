#pragma once

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tower.hpp"

namespace theta_tower
{

enum class EdgeKind
{
    pullback,          // restriction z_m = 0
    second_derivative, // second derivative in z_m at 0
    heat               // normalized heat operator
};

inline const char* to_string(EdgeKind k)
{
    switch (k)
    {
    case EdgeKind::pullback:
        return "pullback";
    case EdgeKind::second_derivative:
        return "d2/dz^2|0";
    case EdgeKind::heat:
        return "heat";
    }
    return "?";
}

struct TowerEdge
{
    std::string source;
    std::string target;
    EdgeKind kind = EdgeKind::pullback;
    std::optional<Rational> expected_alpha; // unset: any nonzero scalar is accepted

    std::string label() const { return source + " -> " + target + " [" + to_string(kind) + "]"; }
};

struct EdgeOutcome
{
    TowerEdge edge;
    bool ok = false;
    std::optional<Rational> alpha;
    std::string detail;
};

/// Provides stored expansions by key "<node name>@<qprec>"; returns nullopt to recompute.
using SeriesLookup = std::function<std::optional<FourierExpansion>(const std::string& key)>;

inline std::string node_key(const std::string& name, int qprec) { return name + "@" + std::to_string(qprec); }

/// The theta-type tower over mA1, m = 0..4, together with the Eisenstein-type forms.
class TowerDiagram
{
public:
    using Precision = std::function<int(std::size_t m)>;

    std::map<std::string, JacobiFormObject> nodes;
    std::vector<TowerEdge> edges;

    /// Node definitions: name, m, and a constructor at a given precision.
    struct NodeSpec
    {
        std::string name;
        std::size_t m;
        std::function<JacobiFormObject(int qprec)> make;
    };

    static std::vector<NodeSpec> node_specs(const E8Shells* shells = nullptr)
    {
        std::vector<NodeSpec> specs;
        for (std::size_t m = 0; m <= 4; ++m)
            for (std::size_t j = 0; j <= m; ++j)
            {
                const int k = 12 - 2 * static_cast<int>(j);
                specs.push_back({tower_name(k, m), m, [k, m](int p) { return tower_form(k, m, p); }});
            }
        for (std::size_t m = 0; m <= 4; ++m)
        {
            specs.push_back({"eps4," + mA1_label(m), m, [m, shells](int p) { return eps4_form(m, p, shells); }});
            specs.push_back({"eps6," + mA1_label(m), m, [m, shells](int p) { return eps6_form(m, p, shells); }});
        }
        return specs;
    }

    static std::vector<TowerEdge> edge_list()
    {
        std::vector<TowerEdge> out;
        for (std::size_t m = 1; m <= 4; ++m)
            for (std::size_t j = 0; j < m; ++j)
            {
                const int k = 12 - 2 * static_cast<int>(j);
                out.push_back({tower_name(k, m), tower_name(k, m - 1), EdgeKind::pullback, std::nullopt});
            }
        for (std::size_t m = 1; m <= 4; ++m)
            out.push_back({tower_name(12 - 2 * static_cast<int>(m), m), tower_name(14 - 2 * static_cast<int>(m), m - 1),
                           EdgeKind::second_derivative, std::nullopt});
        for (std::size_t m = 1; m <= 4; ++m)
            out.push_back({"eps4," + mA1_label(m), "eps4," + mA1_label(m - 1), EdgeKind::pullback, Rational(1)});
        for (std::size_t m = 0; m <= 4; ++m)
            out.push_back({"eps4," + mA1_label(m), "eps6," + mA1_label(m), EdgeKind::heat, Rational(1)});
        // The eps6 restriction is proportional only for m <= 3; see the heat suite for 4 -> 3.
        for (std::size_t m = 1; m <= 3; ++m)
            out.push_back({"eps6," + mA1_label(m), "eps6," + mA1_label(m - 1), EdgeKind::pullback, std::nullopt});
        return out;
    }

    static TowerDiagram build(const Precision& precision, const SeriesLookup& lookup = {},
                              const E8Shells* shells = nullptr)
    {
        TowerDiagram d;
        for (const auto& spec : node_specs(shells))
        {
            const int p = precision(spec.m);
            std::optional<FourierExpansion> stored;
            if (lookup)
                stored = lookup(node_key(spec.name, p));
            // A stored expansion only needs the declared data, which the constructor gives at any precision.
            JacobiFormObject f = spec.make(stored ? 1 : p);
            if (stored)
                f.expansion = std::move(*stored);
            d.nodes.emplace(spec.name, std::move(f));
        }
        d.edges = edge_list();
        return d;
    }

    EdgeOutcome check(const TowerEdge& edge) const
    {
        EdgeOutcome out{edge, false, std::nullopt, {}};
        auto src = nodes.find(edge.source);
        auto dst = nodes.find(edge.target);
        if (src == nodes.end() || dst == nodes.end())
        {
            out.detail = "edge " + edge.label() + ": unknown node";
            return out;
        }
        try
        {
            Rational alpha;
            switch (edge.kind)
            {
            case EdgeKind::pullback:
                alpha = pullback_edge_check(src->second, dst->second);
                break;
            case EdgeKind::second_derivative:
                alpha = dashed_arrow_check(src->second, dst->second);
                break;
            case EdgeKind::heat:
                alpha = fit_edge(heat(src->second.expansion, src->second.weight), dst->second.expansion,
                                 src->second.name + " -> " + dst->second.name);
                break;
            }
            out.alpha = alpha;
            if (edge.expected_alpha && *edge.expected_alpha != alpha)
            {
                out.detail = "edge " + edge.label() + ": scalar " + alpha.get_str() + " differs from expected " +
                             edge.expected_alpha->get_str();
                return out;
            }
            out.ok = true;
            out.detail = "alpha = " + alpha.get_str();
        }
        catch (const std::exception& ex)
        {
            out.detail = std::string(ex.what()) + " [" + to_string(edge.kind) + "]";
        }
        return out;
    }

    /// All edges, checked on up to `jobs` threads; outcomes keep edge order.
    std::vector<EdgeOutcome> verify(unsigned jobs = 1) const
    {
        std::vector<EdgeOutcome> out(edges.size());
        jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(edges.size(), 1))));
        std::vector<std::future<void>> workers;
        for (unsigned w = 0; w < jobs; ++w)
            workers.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t i = w; i < edges.size(); i += jobs)
                    out[i] = check(edges[i]);
            }));
        for (auto& f : workers)
            f.get();
        return out;
    }
};

} // namespace theta_tower
