#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "plab/builders.hpp"
#include "plab/instance.hpp"

namespace plab {

// One sampled weight function per arriving agent, index-aligned with arrival.
template <class S>
struct Realization {
    std::vector<WeightFunction<S>> chosen;
};

template <class S>
struct Allocation {
    std::vector<int> assignment;  // edge id per agent, -1 for unassigned
    S value{};
};

inline constexpr int kUnassigned = -1;
inline constexpr long long kAllocationNodeBudget = 10'000'000;

template <class S>
struct EdgeOption {
    int edge = 0;
    S weight{};
    std::uint32_t mask = 0;
};

namespace detail {

template <class S>
struct AllocationSearch {
    std::span<const std::span<const EdgeOption<S>>> options;  // active agents only
    std::vector<S> suffix_best;
    long long nodes = 0;
    long long budget = kAllocationNodeBudget;
    S best_value = S(0);
    bool found = false;
    std::vector<int> best, current;

    void run() {
        const size_t n = options.size();
        suffix_best.assign(n + 1, S(0));
        for (size_t i = n; i-- > 0;) {
            S top(0);
            for (const auto& opt : options[i])
                if (opt.weight > top) top = opt.weight;
            suffix_best[i] = suffix_best[i + 1] + top;
        }
        current.assign(n, kUnassigned);
        dfs(0, 0u, S(0));
    }

    // Options are sorted by edge id and skip comes first, so assignment vectors
    // are visited in lexicographic order (unassigned before any edge); keeping
    // the incumbent on ties yields the lexicographically smallest maximizer.
    void dfs(size_t i, std::uint32_t occupied, const S& value) {
        if (++nodes > budget)
            throw capacity_error(
                "max_weight_allocation: enumeration exceeds node budget; "
                "use Monte Carlo estimation instead");
        if (i == options.size()) {
            if (!found || value > best_value) {
                best_value = value;
                best = current;
                found = true;
            }
            return;
        }
        if (found && !(value + suffix_best[i] > best_value)) return;
        current[i] = kUnassigned;
        dfs(i + 1, occupied, value);
        for (const auto& opt : options[i]) {
            if ((occupied & opt.mask) != 0u) continue;
            current[i] = opt.edge;
            dfs(i + 1, occupied | opt.mask, value + opt.weight);
        }
        current[i] = kUnassigned;
    }
};

// Positive-weight options of one realized weight function, sorted by edge id.
template <class S>
std::vector<EdgeOption<S>> positive_options(const Graph& graph, const WeightFunction<S>& wf) {
    std::vector<EdgeOption<S>> options;
    for (const auto& [edge, w] : wf.weights)
        if (w > S(0)) options.push_back({edge, w, graph.endpoint_mask(edge)});
    return options;
}

// Maximum-weight allocation over explicit per-agent option lists. Agents with
// no positive option stay unassigned and are excluded from the search.
template <class S>
Allocation<S> solve_allocation(std::span<const std::span<const EdgeOption<S>>> agent_options,
                               long long node_budget) {
    std::vector<std::span<const EdgeOption<S>>> active;
    std::vector<size_t> active_index;
    for (size_t i = 0; i < agent_options.size(); ++i) {
        if (!agent_options[i].empty()) {
            active.push_back(agent_options[i]);
            active_index.push_back(i);
        }
    }
    AllocationSearch<S> search;
    search.options = active;
    search.budget = node_budget;
    search.run();
    Allocation<S> result;
    result.assignment.assign(agent_options.size(), kUnassigned);
    result.value = search.best_value;
    for (size_t k = 0; k < active_index.size(); ++k)
        result.assignment[active_index[k]] = search.best[k];
    return result;
}

}  // namespace detail

// Exhaustive maximum-weight feasible allocation for one realization. Ties are
// broken toward the lexicographically smallest assignment vector, unassigned
// ordering before any edge id. Searches exceeding the node budget raise
// capacity_error.
template <class S>
Allocation<S> max_weight_allocation(const Instance<S>& instance,
                                    const Realization<S>& realization,
                                    long long node_budget = kAllocationNodeBudget) {
    const int n = instance.arriving_count();
    if (static_cast<int>(realization.chosen.size()) != n)
        throw std::invalid_argument("realization length does not match agent count");
    std::vector<std::vector<EdgeOption<S>>> storage(realization.chosen.size());
    std::vector<std::span<const EdgeOption<S>>> options(realization.chosen.size());
    for (size_t i = 0; i < realization.chosen.size(); ++i) {
        storage[i] = detail::positive_options(instance.graph, realization.chosen[i]);
        options[i] = storage[i];
    }
    return detail::solve_allocation<S>(options, node_budget);
}

namespace detail {

template <class S>
S binomial_coefficient(int n, int k) {
    if constexpr (ScalarTraits<S>::exact) {
        BigInt c = 1;
        for (int i = 0; i < k; ++i) {
            c *= (n - i);
            c /= (i + 1);
        }
        return Rat(c);
    } else {
        double c = 1.0;
        for (int i = 0; i < k; ++i) c = c * double(n - i) / double(i + 1);
        return c;
    }
}

// Canonical form reduces edges to ordered endpoint pairs so parallel copies of
// one edge compare equal; agents whose canonical distributions coincide are
// exchangeable for offline value purposes.
template <class S>
using CanonWeights = std::vector<std::tuple<int, int, S>>;

template <class S>
struct CanonOutcome {
    S probability{};
    CanonWeights<S> weights;
    int original_index = 0;
    auto key() const { return std::tie(probability, weights); }
    bool operator<(const CanonOutcome& other) const { return key() < other.key(); }
};

template <class S>
std::vector<CanonOutcome<S>> canonical_outcomes(const Graph& graph,
                                                const AgentDistribution<S>& dist) {
    std::vector<CanonOutcome<S>> canon;
    for (size_t j = 0; j < dist.outcomes.size(); ++j) {
        CanonWeights<S> weights;
        for (const auto& [edge, w] : dist.outcomes[j].weights.weights) {
            if (!(w > S(0))) continue;
            const Edge& e = graph.edges[static_cast<size_t>(edge)];
            weights.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v), w);
        }
        std::sort(weights.begin(), weights.end());
        canon.push_back({dist.outcomes[j].probability, std::move(weights),
                         static_cast<int>(j)});
    }
    std::sort(canon.begin(), canon.end());
    return canon;
}

template <class S>
struct ExchangeClass {
    std::vector<int> members;                // arriving agent indices
    std::vector<S> probabilities;            // per canonical outcome position
    std::vector<std::vector<int>> original;  // member -> canonical pos -> outcome index
};

template <class S>
std::vector<ExchangeClass<S>> exchange_classes(const Instance<S>& instance) {
    std::vector<ExchangeClass<S>> classes;
    std::map<std::vector<std::pair<S, CanonWeights<S>>>, size_t> index;
    const int n = instance.arriving_count();
    for (int i = 0; i < n; ++i) {
        auto canon = canonical_outcomes(instance.graph, instance.arriving(i));
        std::vector<std::pair<S, CanonWeights<S>>> key;
        std::vector<int> order;
        for (auto& c : canon) {
            key.emplace_back(c.probability, c.weights);
            order.push_back(c.original_index);
        }
        auto [it, inserted] = index.try_emplace(key, classes.size());
        if (inserted) {
            ExchangeClass<S> cls;
            for (auto& [p, w] : key) cls.probabilities.push_back(p);
            classes.push_back(std::move(cls));
        }
        classes[it->second].members.push_back(i);
        classes[it->second].original.push_back(std::move(order));
    }
    return classes;
}

}  // namespace detail

// Exact expectation of the offline optimum: sums probability times optimum
// over the joint outcome space. Exchangeable agents are enumerated by outcome
// multiplicities with multinomial weights, which collapses the m parallel-copy
// families to a polynomial number of terms; the guard applies to the collapsed
// term count.
template <class S>
S expected_opt_exact(const Instance<S>& instance, double term_guard = 1e7) {
    const int n = instance.arriving_count();
    auto classes = detail::exchange_classes(instance);

    double terms = 1.0;
    for (const auto& cls : classes) {
        const int c = static_cast<int>(cls.members.size());
        const int r = static_cast<int>(cls.probabilities.size());
        terms *= to_double(detail::binomial_coefficient<double>(c + r - 1, r - 1));
        if (terms > term_guard)
            throw capacity_error(
                "expected_opt_exact: joint outcome support exceeds guard; "
                "use mc_expected_opt instead");
    }

    // Per-agent, per-outcome positive option lists, compiled once.
    std::vector<std::vector<std::vector<EdgeOption<S>>>> compiled(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& dist = instance.arriving(i);
        compiled[static_cast<size_t>(i)].resize(dist.outcomes.size());
        for (size_t j = 0; j < dist.outcomes.size(); ++j)
            compiled[static_cast<size_t>(i)][j] =
                detail::positive_options(instance.graph, dist.outcomes[j].weights);
    }

    std::vector<int> chosen(static_cast<size_t>(n), 0);
    std::vector<std::span<const EdgeOption<S>>> spans(static_cast<size_t>(n));
    S total(0);

    auto leaf = [&](const S& probability) {
        for (int i = 0; i < n; ++i)
            spans[static_cast<size_t>(i)] =
                compiled[static_cast<size_t>(i)][static_cast<size_t>(
                    chosen[static_cast<size_t>(i)])];
        total += probability * detail::solve_allocation<S>(spans, kAllocationNodeBudget).value;
    };

    // Recursive composition enumeration: within a class, assign outcome slots
    // to members in canonical order; exchangeability makes the member identity
    // irrelevant to the optimum value.
    auto enumerate_class = [&](auto&& self, size_t ci, const S& probability) -> void {
        if (ci == classes.size()) {
            leaf(probability);
            return;
        }
        const auto& cls = classes[ci];
        const int c = static_cast<int>(cls.members.size());
        const int r = static_cast<int>(cls.probabilities.size());
        auto compose = [&](auto&& rec, int pos, int filled, int remaining,
                           const S& factor) -> void {
            if (pos == r - 1) {
                S f = factor;
                for (int t = 0; t < remaining; ++t) {
                    f *= cls.probabilities[static_cast<size_t>(pos)];
                    const int member = cls.members[static_cast<size_t>(filled + t)];
                    chosen[static_cast<size_t>(member)] =
                        cls.original[static_cast<size_t>(filled + t)][static_cast<size_t>(pos)];
                }
                self(self, ci + 1, f);
                return;
            }
            for (int k = 0; k <= remaining; ++k) {
                S f = factor * detail::binomial_coefficient<S>(remaining, k);
                for (int t = 0; t < k; ++t) {
                    f *= cls.probabilities[static_cast<size_t>(pos)];
                    const int member = cls.members[static_cast<size_t>(filled + t)];
                    chosen[static_cast<size_t>(member)] =
                        cls.original[static_cast<size_t>(filled + t)][static_cast<size_t>(pos)];
                }
                rec(rec, pos + 1, filled + k, remaining - k, f);
            }
        };
        if (r == 1) {
            for (int t = 0; t < c; ++t) {
                const int member = cls.members[static_cast<size_t>(t)];
                chosen[static_cast<size_t>(member)] =
                    cls.original[static_cast<size_t>(t)][0];
            }
            self(self, ci + 1, probability);
            return;
        }
        compose(compose, 0, 0, c, probability);
    };
    enumerate_class(enumerate_class, 0, S(1));
    return total;
}

// Expected maximum matching size of the iid 4-cycle instance with q agents.
template <class S>
S iid_cycle_opt_formula(int q) {
    if (q < 0) throw std::domain_error("iid_cycle_opt_formula: q must be >= 0");
    if (q == 0) return S(0);
    if (q == 1) return S(1);
    if constexpr (ScalarTraits<S>::exact) {
        if (q == 2) return Rat(11) / Rat(6);
        BigInt pow6 = 1;
        for (int i = 0; i < q; ++i) pow6 *= 6;
        return Rat(2) - Rat(4) / Rat(pow6);
    } else {
        if (q == 2) return 11.0 / 6.0;
        return 2.0 - 4.0 * std::exp(-q * std::log(6.0));
    }
}

// m -> infinity limits of the expected offline optimum for the parameterized
// families.
inline double expected_opt_limit(Family family, double lambda, double theta = 0.0) {
    switch (family) {
        case Family::single_choice:
            return lambda + 1.0;
        case Family::secretary_matching:
        case Family::secretary_2ba:
            return lambda + 2.0;
        case Family::iid_jackpot:
            return lambda + 2.0 +
                   (std::exp(-theta) / 36.0) *
                       (72.0 - 144.0 * std::exp(theta / 6.0) - 12.0 * theta -
                        theta * theta);
        default:
            throw std::invalid_argument("expected_opt_limit: no limit formula for family");
    }
}

namespace detail {

// Binomial(m, p) pmf at t. The numeric path switches to log-space evaluation
// for large m; the exact path carries full rationals.
template <class S>
S binomial_pmf(int m, const S& p, int t) {
    if constexpr (ScalarTraits<S>::exact) {
        if (p == S(0)) return t == 0 ? S(1) : S(0);
        if (p == S(1)) return t == m ? S(1) : S(0);
        S value = binomial_coefficient<S>(m, t);
        for (int i = 0; i < t; ++i) value *= p;
        for (int i = 0; i < m - t; ++i) value *= (S(1) - p);
        return value;
    } else {
        if (p <= 0.0) return t == 0 ? 1.0 : 0.0;
        if (p >= 1.0) return t == m ? 1.0 : 0.0;
        if (m >= 500)
            return std::exp(std::lgamma(m + 1.0) - std::lgamma(t + 1.0) -
                            std::lgamma(m - t + 1.0) + t * std::log(p) +
                            (m - t) * std::log1p(-p));
        double value = binomial_coefficient<double>(m, t);
        for (int i = 0; i < t; ++i) value *= p;
        for (int i = 0; i < m - t; ++i) value *= (1.0 - p);
        return value;
    }
}

}  // namespace detail

// Finite-m expected offline optimum of the iid jackpot family:
// (1-(1-1/m^2)^m) * lambda*m + (1-1/m^2)^m * E[F(q_m)], q_m ~ Binom(m, theta/m).
template <class S>
S expected_opt_finite_jackpot(int m, const S& lambda, const S& theta) {
    if (m < 1) throw std::domain_error("expected_opt_finite_jackpot: m must be >= 1");
    if (theta > S(m))
        throw std::domain_error("expected_opt_finite_jackpot: theta/m exceeds 1");
    if (theta < S(0))
        throw std::domain_error("expected_opt_finite_jackpot: theta must be >= 0");
    const S p_diag = S(1) / (S(m) * S(m));
    S no_diag(1);
    {
        const S base = S(1) - p_diag;
        for (int i = 0; i < m; ++i) no_diag *= base;
    }
    const S p = theta / S(m);
    S cycle_part(0);
    for (int t = 0; t <= m; ++t) {
        const S pmf = detail::binomial_pmf<S>(m, p, t);
        if (!(pmf > S(0))) continue;
        cycle_part += pmf * iid_cycle_opt_formula<S>(t);
    }
    return (S(1) - no_diag) * lambda * S(m) + no_diag * cycle_part;
}

}  // namespace plab
