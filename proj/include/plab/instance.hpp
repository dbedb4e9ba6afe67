#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "plab/rational.hpp"

namespace plab {

// Raised when an exact computation would exceed the enumeration budget.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Edge {
    int u = 0;
    int v = 0;
};

struct Graph {
    int vertex_count = 0;
    std::vector<Edge> edges;  // edge id == index; parallel edges allowed

    std::uint32_t endpoint_mask(int edge_id) const {
        const Edge& e = edges[static_cast<size_t>(edge_id)];
        return (1u << e.u) | (1u << e.v);
    }
};

// Sparse nonnegative weights over edges; absent edges weigh zero.
template <class S>
struct WeightFunction {
    std::vector<std::pair<int, S>> weights;  // sorted by edge id

    S weight(int edge_id) const {
        auto it = std::lower_bound(weights.begin(), weights.end(), edge_id,
                                   [](const auto& a, int id) { return a.first < id; });
        if (it != weights.end() && it->first == edge_id) return it->second;
        return S(0);
    }
    bool is_zero() const {
        for (const auto& [id, w] : weights)
            if (w > S(0)) return false;
        return true;
    }
    int positive_count() const {
        int n = 0;
        for (const auto& [id, w] : weights)
            if (w > S(0)) ++n;
        return n;
    }
};

template <class S>
struct Outcome {
    S probability{};
    WeightFunction<S> weights;
};

template <class S>
struct AgentDistribution {
    std::vector<Outcome<S>> outcomes;
};

struct FixedOrder {};
struct UniformRandomOrder {};
struct IIDCount {
    int n = 1;
    int distribution_index = 0;
};
using ArrivalModel = std::variant<FixedOrder, UniformRandomOrder, IIDCount>;

template <class S>
struct Instance {
    Graph graph;
    std::vector<AgentDistribution<S>> agents;
    ArrivalModel arrival;
    std::string label;

    bool is_iid() const { return std::holds_alternative<IIDCount>(arrival); }

    // Number of sequential arrivals (IID instances store one shared distribution).
    int arriving_count() const {
        if (const auto* iid = std::get_if<IIDCount>(&arrival)) return iid->n;
        return static_cast<int>(agents.size());
    }
    const AgentDistribution<S>& arriving(int step) const {
        if (const auto* iid = std::get_if<IIDCount>(&arrival))
            return agents.at(static_cast<size_t>(iid->distribution_index));
        return agents.at(static_cast<size_t>(step));
    }
};

namespace detail {
inline bool probability_sum_ok(const Rat& sum) { return sum == Rat(1); }
inline bool probability_sum_ok(double sum) { return std::abs(sum - 1.0) <= 1e-12; }
}  // namespace detail

// Reports every violated type invariant; empty means the instance is well formed.
// Never throws: broken instances are data to be described, not rejected.
template <class S>
std::vector<std::string> validate(const Instance<S>& instance) {
    std::vector<std::string> violations;
    const Graph& g = instance.graph;
    if (g.vertex_count <= 0) violations.push_back("graph has no vertices");
    for (size_t i = 0; i < g.edges.size(); ++i) {
        const Edge& e = g.edges[i];
        if (e.u == e.v)
            violations.push_back("edge " + std::to_string(i) + " is a self-loop");
        if (e.u < 0 || e.v < 0 || e.u >= g.vertex_count || e.v >= g.vertex_count)
            violations.push_back("edge " + std::to_string(i) + " endpoint out of range");
    }
    if (instance.agents.empty()) violations.push_back("no agents");
    for (size_t a = 0; a < instance.agents.size(); ++a) {
        const auto& dist = instance.agents[a];
        if (dist.outcomes.empty()) {
            violations.push_back("agent " + std::to_string(a) + " has no outcomes");
            continue;
        }
        S sum(0);
        for (const auto& outcome : dist.outcomes) {
            sum += outcome.probability;
            if (!(outcome.probability > S(0)))
                violations.push_back("agent " + std::to_string(a) +
                                     " has a nonpositive outcome probability");
            for (const auto& [edge_id, w] : outcome.weights.weights) {
                if (edge_id < 0 || edge_id >= static_cast<int>(g.edges.size()))
                    violations.push_back("agent " + std::to_string(a) +
                                         " references missing edge " + std::to_string(edge_id));
                if (w < S(0))
                    violations.push_back("agent " + std::to_string(a) +
                                         " has a negative weight");
            }
        }
        if (!detail::probability_sum_ok(sum))
            violations.push_back("agent " + std::to_string(a) + " probabilities sum to " +
                                 [&] {
                                     if constexpr (ScalarTraits<S>::exact)
                                         return rat_str(sum);
                                     else
                                         return std::to_string(sum);
                                 }());
    }
    if (const auto* iid = std::get_if<IIDCount>(&instance.arrival)) {
        if (iid->n < 1) violations.push_back("iid arrival count must be positive");
        if (iid->distribution_index < 0 ||
            iid->distribution_index >= static_cast<int>(instance.agents.size()))
            violations.push_back("iid shared distribution index out of range");
    }
    return violations;
}

// Each outcome puts positive weight on at most one edge.
template <class S>
bool is_single_minded(const AgentDistribution<S>& dist) {
    for (const auto& outcome : dist.outcomes)
        if (outcome.weights.positive_count() > 1) return false;
    return true;
}

template <class S>
bool is_single_minded(const Instance<S>& instance) {
    for (const auto& agent : instance.agents)
        if (!is_single_minded(agent)) return false;
    return true;
}

}  // namespace plab
