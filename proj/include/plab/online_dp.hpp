#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "plab/offline.hpp"

namespace plab {

struct DPDecision {
    int step = -1;                // arrival step (fixed order / iid)
    std::uint32_t remaining = 0;  // remaining-agent bitset (random order)
    int agent = -1;               // arriving agent (random order)
    std::uint32_t state = 0;      // occupied-vertex bitset
    int outcome = 0;              // outcome index within the distribution
    int action = kUnassigned;     // chosen edge id, or kUnassigned for skip
};

// Optimal online expected value plus optional introspection data. The decision
// table, when recorded, covers every vertex state the recursion distinguishes.
template <class S>
struct DPValue {
    S value{};
    std::vector<DPDecision> decisions;

    // Value of the root step as a function of the starting occupied set
    // (fixed order and iid only); index is the vertex bitset.
    std::vector<S> root_state_values;
};

namespace detail {

template <class S>
struct CompiledOutcome {
    S probability{};
    std::vector<EdgeOption<S>> options;  // positive weights only, sorted by edge id
};

template <class S>
std::vector<CompiledOutcome<S>> compile_distribution(const Graph& graph,
                                                     const AgentDistribution<S>& dist) {
    std::vector<CompiledOutcome<S>> compiled;
    for (const auto& outcome : dist.outcomes)
        compiled.push_back({outcome.probability,
                            positive_options(graph, outcome.weights)});
    return compiled;
}

// Best action at (state, outcome) given continuation values; skip wins exact
// ties, smaller edge id wins ties between takes.
template <class S>
std::pair<S, int> best_action(const std::vector<S>& next, std::uint32_t state,
                              const CompiledOutcome<S>& outcome) {
    S best = next[state];
    int action = kUnassigned;
    for (const auto& opt : outcome.options) {
        if ((state & opt.mask) != 0u) continue;
        S cand = opt.weight + next[state | opt.mask];
        if (cand > best) {
            best = cand;
            action = opt.edge;
        }
    }
    return {std::move(best), action};
}

}  // namespace detail

// Backward induction over arrival steps for a fixed (known, adversarially
// chosen) order: V(t,S) = E[max(skip, best feasible take)], V(m,S) = 0.
template <class S>
DPValue<S> optimal_online_fixed_order(const Instance<S>& instance,
                                      bool record_decisions = false) {
    if (!std::holds_alternative<FixedOrder>(instance.arrival))
        throw std::invalid_argument("optimal_online_fixed_order: arrival model mismatch");
    const int m = instance.arriving_count();
    const int nv = instance.graph.vertex_count;
    if (m > 20) throw capacity_error("optimal_online_fixed_order: more than 20 agents");
    if (nv > 16) throw capacity_error("optimal_online_fixed_order: more than 16 vertices");

    const std::uint32_t states = 1u << nv;
    std::vector<S> next(states, S(0)), current(states, S(0));
    DPValue<S> result;
    for (int t = m - 1; t >= 0; --t) {
        auto compiled = detail::compile_distribution(instance.graph, instance.arriving(t));
        for (std::uint32_t state = 0; state < states; ++state) {
            S expectation(0);
            for (size_t j = 0; j < compiled.size(); ++j) {
                auto [best, action] = detail::best_action(next, state, compiled[j]);
                expectation += compiled[j].probability * best;
                if (record_decisions)
                    result.decisions.push_back(
                        {t, 0u, -1, state, static_cast<int>(j), action});
            }
            current[state] = expectation;
        }
        std::swap(current, next);
    }
    result.value = next[0];
    result.root_state_values = next;
    return result;
}

// Backward induction over remaining steps for iid arrivals sharing one
// distribution: V(k,S) with k steps to go; V(0,S) = 0.
template <class S>
DPValue<S> optimal_online_iid(const Instance<S>& instance, bool record_decisions = false) {
    const auto* iid = std::get_if<IIDCount>(&instance.arrival);
    if (iid == nullptr)
        throw std::invalid_argument("optimal_online_iid: arrival model mismatch");
    const int n = iid->n;
    const int nv = instance.graph.vertex_count;
    if (nv > 16) throw capacity_error("optimal_online_iid: more than 16 vertices");
    auto compiled = detail::compile_distribution(instance.graph, instance.arriving(0));
    const std::uint32_t states = 1u << nv;
    if (double(states) * double(n) * double(compiled.size()) > 1e8)
        throw capacity_error("optimal_online_iid: state space exceeds guard");

    std::vector<S> next(states, S(0)), current(states, S(0));
    DPValue<S> result;
    for (int k = 1; k <= n; ++k) {
        for (std::uint32_t state = 0; state < states; ++state) {
            S expectation(0);
            for (size_t j = 0; j < compiled.size(); ++j) {
                auto [best, action] = detail::best_action(next, state, compiled[j]);
                expectation += compiled[j].probability * best;
                if (record_decisions)
                    result.decisions.push_back(
                        {n - k, 0u, -1, state, static_cast<int>(j), action});
            }
            current[state] = expectation;
        }
        std::swap(current, next);
    }
    result.value = next[0];
    result.root_state_values = next;
    return result;
}

// Subset-memoized random-order DP; the algorithm observes which agent arrives
// and its realized weights. Exact up to 12 agents.
template <class S>
DPValue<S> optimal_online_random_order_plain(const Instance<S>& instance,
                                             bool record_decisions = false) {
    if (!std::holds_alternative<UniformRandomOrder>(instance.arrival))
        throw std::invalid_argument("optimal_online_random_order: arrival model mismatch");
    const int m = instance.arriving_count();
    const int nv = instance.graph.vertex_count;
    if (m > 12) throw capacity_error("optimal_online_random_order: more than 12 agents");
    if (nv > 16) throw capacity_error("optimal_online_random_order: more than 16 vertices");

    std::vector<std::vector<detail::CompiledOutcome<S>>> compiled;
    for (int a = 0; a < m; ++a)
        compiled.push_back(detail::compile_distribution(instance.graph, instance.arriving(a)));

    DPValue<S> result;
    std::unordered_map<std::uint64_t, S> memo;
    auto value = [&](auto&& self, std::uint32_t remaining, std::uint32_t state) -> S {
        if (remaining == 0u) return S(0);
        const std::uint64_t key =
            (static_cast<std::uint64_t>(remaining) << 16) | state;
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        S sum(0);
        int count = 0;
        for (int a = 0; a < m; ++a) {
            if ((remaining & (1u << a)) == 0u) continue;
            ++count;
            const std::uint32_t rest = remaining & ~(1u << a);
            S expectation(0);
            for (size_t j = 0; j < compiled[static_cast<size_t>(a)].size(); ++j) {
                const auto& outcome = compiled[static_cast<size_t>(a)][j];
                S best = self(self, rest, state);
                int action = kUnassigned;
                for (const auto& opt : outcome.options) {
                    if ((state & opt.mask) != 0u) continue;
                    S cand = opt.weight + self(self, rest, state | opt.mask);
                    if (cand > best) {
                        best = cand;
                        action = opt.edge;
                    }
                }
                expectation += outcome.probability * best;
                if (record_decisions)
                    result.decisions.push_back(
                        {-1, remaining, a, state, static_cast<int>(j), action});
            }
            sum += expectation;
        }
        S v = sum / S(count);
        memo.emplace(key, v);
        return v;
    };
    result.value = value(value, (1u << m) - 1u, 0u);
    return result;
}

// Random-order DP with exchangeable agents compressed to per-class counts;
// handles the m-copy families up to a few hundred agents.
template <class S>
DPValue<S> optimal_online_random_order_compressed(const Instance<S>& instance) {
    if (!std::holds_alternative<UniformRandomOrder>(instance.arrival))
        throw std::invalid_argument("optimal_online_random_order: arrival model mismatch");
    const int nv = instance.graph.vertex_count;
    if (nv > 16) throw capacity_error("optimal_online_random_order: more than 16 vertices");
    auto classes = detail::exchange_classes(instance);
    const size_t k = classes.size();

    // Options by class come from the first member; exchangeable members map to
    // identical endpoint masks, which is all the value recursion reads.
    std::vector<std::vector<detail::CompiledOutcome<S>>> compiled(k);
    std::vector<int> sizes(k);
    double index_space = 1u << nv;
    for (size_t c = 0; c < k; ++c) {
        const auto& cls = classes[c];
        sizes[c] = static_cast<int>(cls.members.size());
        index_space *= sizes[c] + 1;
        const auto& dist = instance.arriving(cls.members.front());
        for (size_t pos = 0; pos < cls.probabilities.size(); ++pos) {
            const int original = cls.original.front()[pos];
            compiled[c].push_back(
                {cls.probabilities[pos],
                 detail::positive_options(
                     instance.graph,
                     dist.outcomes[static_cast<size_t>(original)].weights)});
        }
    }
    if (index_space > 4e7)
        throw capacity_error("optimal_online_random_order: compressed state space exceeds guard");

    std::vector<int> counts = sizes;
    std::unordered_map<std::uint64_t, S> memo;
    auto encode = [&](const std::vector<int>& cnt, std::uint32_t state) {
        std::uint64_t key = state;
        for (size_t c = 0; c < cnt.size(); ++c)
            key = key * static_cast<std::uint64_t>(sizes[c] + 1) +
                  static_cast<std::uint64_t>(cnt[c]);
        return key;
    };
    auto value = [&](auto&& self, std::vector<int>& cnt, int total,
                     std::uint32_t state) -> S {
        if (total == 0) return S(0);
        const std::uint64_t key = encode(cnt, state);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        S sum(0);
        for (size_t c = 0; c < cnt.size(); ++c) {
            if (cnt[c] == 0) continue;
            --cnt[c];
            S expectation(0);
            for (const auto& outcome : compiled[c]) {
                S best = self(self, cnt, total - 1, state);
                for (const auto& opt : outcome.options) {
                    if ((state & opt.mask) != 0u) continue;
                    S cand = opt.weight + self(self, cnt, total - 1, state | opt.mask);
                    if (cand > best) best = cand;
                }
                expectation += outcome.probability * best;
            }
            sum += S(cnt[c] + 1) * expectation;
            ++cnt[c];
        }
        S v = sum / S(total);
        memo.emplace(key, v);
        return v;
    };
    int total = 0;
    for (int c : sizes) total += c;
    DPValue<S> result;
    result.value = value(value, counts, total, 0u);
    return result;
}

// Public random-order entry point: exact subset DP for small instances,
// class-compressed DP beyond that.
template <class S>
DPValue<S> optimal_online_random_order(const Instance<S>& instance,
                                       bool record_decisions = false) {
    if (instance.arriving_count() <= 12)
        return optimal_online_random_order_plain(instance, record_decisions);
    return optimal_online_random_order_compressed(instance);
}

// Dispatch on the instance's arrival model.
template <class S>
S optimal_online(const Instance<S>& instance) {
    if (std::holds_alternative<FixedOrder>(instance.arrival))
        return optimal_online_fixed_order(instance).value;
    if (std::holds_alternative<UniformRandomOrder>(instance.arrival))
        return optimal_online_random_order(instance).value;
    return optimal_online_iid(instance).value;
}

}  // namespace plab
