#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "plab/instance.hpp"

namespace plab {

enum class Family {
    adversarial_2ba,
    prophet_matching,
    single_choice,
    secretary_matching,
    secretary_2ba,
    iid_cycle,
    iid_jackpot,
};

inline const char* family_name(Family family) {
    switch (family) {
        case Family::adversarial_2ba: return "adversarial_2ba";
        case Family::prophet_matching: return "prophet_matching";
        case Family::single_choice: return "single_choice";
        case Family::secretary_matching: return "secretary_matching";
        case Family::secretary_2ba: return "secretary_2ba";
        case Family::iid_cycle: return "iid_cycle";
        case Family::iid_jackpot: return "iid_jackpot";
    }
    return "unknown";
}

inline Family family_from_string(const std::string& name) {
    for (Family f : {Family::adversarial_2ba, Family::prophet_matching,
                     Family::single_choice, Family::secretary_matching,
                     Family::secretary_2ba, Family::iid_cycle, Family::iid_jackpot})
        if (name == family_name(f)) return f;
    throw std::invalid_argument("unknown family: " + name);
}

namespace detail {

template <class S>
WeightFunction<S> weights_of(std::vector<std::pair<int, S>> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return WeightFunction<S>{std::move(entries)};
}

// Drops zero-probability outcomes so degenerate parameters (m=1, theta=m)
// still produce well-formed distributions.
template <class S>
AgentDistribution<S> distribution_of(std::vector<Outcome<S>> outcomes) {
    std::vector<Outcome<S>> kept;
    for (auto& o : outcomes)
        if (o.probability > S(0)) kept.push_back(std::move(o));
    return AgentDistribution<S>{std::move(kept)};
}

inline std::string num_label(const Rat& x) { return rat_str(x); }
inline std::string num_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

}  // namespace detail

// 4-cycle a-b-c-d plus diagonal {a,c}; fixed arrival order (1,2,3).
// Agent 1: weight 3 on every cycle edge. Agent 2: weight 4 on one uniformly
// random cycle edge. Agent 3: weight 4/eps on the diagonal with probability eps.
template <class S>
Instance<S> build_adversarial_2ba(const S& epsilon) {
    if (!(epsilon > S(0)) || !(epsilon < S(1)))
        throw std::domain_error("adversarial_2ba: epsilon must lie in (0,1)");
    Graph g{4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}};
    AgentDistribution<S> agent1 = detail::distribution_of<S>(
        {{S(1), detail::weights_of<S>({{0, S(3)}, {1, S(3)}, {2, S(3)}, {3, S(3)}})}});
    std::vector<Outcome<S>> star;
    for (int e = 0; e < 4; ++e)
        star.push_back({S(1) / S(4), detail::weights_of<S>({{e, S(4)}})});
    AgentDistribution<S> agent2 = detail::distribution_of<S>(std::move(star));
    AgentDistribution<S> agent3 = detail::distribution_of<S>(
        {{epsilon, detail::weights_of<S>({{4, S(4) / epsilon}})},
         {S(1) - epsilon, WeightFunction<S>{}}});
    return Instance<S>{std::move(g),
                       {std::move(agent1), std::move(agent2), std::move(agent3)},
                       FixedOrder{},
                       "adversarial_2ba(eps=" + detail::num_label(epsilon) + ")"};
}

// Complete bipartite graph {a,b,c,d} x {0,1} plus the edge {0,1}; nine
// single-minded agents in fixed arrival order. Throws naming the first
// violated inequality of the parameter constraints.
template <class S>
Instance<S> build_prophet_matching(const S& p, const S& q, const S& epsilon) {
    const S r = (S(1) - p) * q + (S(1) - q) * p;
    if (!(p < q)) throw std::domain_error("prophet_matching: constraint p < q violated");
    if (!(q < r)) throw std::domain_error("prophet_matching: constraint q < r violated");
    if (!(r < S(1) / S(2)))
        throw std::domain_error("prophet_matching: constraint r < 1/2 violated");
    if (!(S(1) - p < S(2) * r))
        throw std::domain_error("prophet_matching: constraint 1-p < 2r violated");
    if (!(epsilon > S(0)) || !(epsilon < S(1)))
        throw std::domain_error("prophet_matching: epsilon must lie in (0,1)");

    // vertices: 0, 1, a=2, b=3, c=4, d=5
    Graph g{6,
            {{2, 0}, {2, 1}, {3, 0}, {3, 1}, {4, 0}, {4, 1}, {5, 0}, {5, 1}, {0, 1}}};
    std::vector<AgentDistribution<S>> agents;
    auto deterministic = [](int edge, const S& w) {
        return detail::distribution_of<S>({{S(1), detail::weights_of<S>({{edge, w}})}});
    };
    auto bernoulli = [](int edge, const S& w, const S& prob) {
        return detail::distribution_of<S>(
            {{prob, detail::weights_of<S>({{edge, w}})}, {S(1) - prob, WeightFunction<S>{}}});
    };
    agents.push_back(deterministic(0, r));
    agents.push_back(deterministic(1, r));
    agents.push_back(deterministic(2, S(1) - r));
    agents.push_back(deterministic(3, S(1) - r));
    agents.push_back(bernoulli(4, S(1) - p, q));
    agents.push_back(bernoulli(5, S(1) - p, q));
    agents.push_back(bernoulli(6, S(1), p));
    agents.push_back(bernoulli(7, S(1), p));
    agents.push_back(bernoulli(8, S(1) / epsilon, epsilon));
    return Instance<S>{std::move(g), std::move(agents), FixedOrder{},
                       "prophet_matching(p=" + detail::num_label(p) +
                           ",q=" + detail::num_label(q) +
                           ",eps=" + detail::num_label(epsilon) + ")"};
}

namespace detail {
template <class S>
AgentDistribution<S> unlikely_agent(int m, const S& lambda, int edge) {
    const S prob = S(1) / (S(m) * S(m));
    return distribution_of<S>({{prob, weights_of<S>({{edge, lambda * S(m)}})},
                               {S(1) - prob, WeightFunction<S>{}}});
}
}  // namespace detail

// Path a-b-c-d whose middle edge {b,c} is copied m times; lateral agents L and
// R hold the path ends, m unlikely agents hold one copy each.
template <class S>
Instance<S> build_secretary_matching(int m, const S& lambda) {
    if (m < 1) throw std::domain_error("secretary_matching: m must be >= 1");
    if (lambda < S(1)) throw std::domain_error("secretary_matching: lambda must be >= 1");
    std::vector<Edge> edges{{0, 1}, {2, 3}};  // {a,b}, {c,d}
    for (int i = 0; i < m; ++i) edges.push_back({1, 2});
    Graph g{4, std::move(edges)};
    std::vector<AgentDistribution<S>> agents;
    agents.push_back(detail::distribution_of<S>(
        {{S(1), detail::weights_of<S>({{0, S(1)}})}}));  // L
    agents.push_back(detail::distribution_of<S>(
        {{S(1), detail::weights_of<S>({{1, S(1)}})}}));  // R
    for (int i = 0; i < m; ++i) agents.push_back(detail::unlikely_agent(m, lambda, 2 + i));
    return Instance<S>{std::move(g), std::move(agents), UniformRandomOrder{},
                       "secretary_matching(m=" + std::to_string(m) +
                           ",lambda=" + detail::num_label(lambda) + ")"};
}

// 4-cycle plus diagonal {b,d}; lateral agents L and R each show one of two
// unit-weight edge pairs, m unlikely agents hold the diagonal.
template <class S>
Instance<S> build_secretary_2ba(int m, const S& lambda) {
    if (m < 1) throw std::domain_error("secretary_2ba: m must be >= 1");
    if (lambda < S(1)) throw std::domain_error("secretary_2ba: lambda must be >= 1");
    // edges: 0={a,b}, 1={b,c}, 2={c,d}, 3={a,d}, 4={b,d}
    Graph g{4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}}};
    const S half = S(1) / S(2);
    AgentDistribution<S> left = detail::distribution_of<S>(
        {{half, detail::weights_of<S>({{0, S(1)}, {1, S(1)}})},
         {half, detail::weights_of<S>({{2, S(1)}, {3, S(1)}})}});
    AgentDistribution<S> right = detail::distribution_of<S>(
        {{half, detail::weights_of<S>({{1, S(1)}, {2, S(1)}})},
         {half, detail::weights_of<S>({{3, S(1)}, {0, S(1)}})}});
    std::vector<AgentDistribution<S>> agents{std::move(left), std::move(right)};
    for (int i = 0; i < m; ++i) agents.push_back(detail::unlikely_agent(m, lambda, 4));
    return Instance<S>{std::move(g), std::move(agents), UniformRandomOrder{},
                       "secretary_2ba(m=" + std::to_string(m) +
                           ",lambda=" + detail::num_label(lambda) + ")"};
}

// 4-cycle, q iid agents; each shows a uniformly random pair of distinct cycle
// edges at weight one.
template <class S>
Instance<S> build_iid_cycle(int q) {
    if (q < 1) throw std::domain_error("iid_cycle: q must be >= 1");
    Graph g{4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
    std::vector<Outcome<S>> outcomes;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            outcomes.push_back(
                {S(1) / S(6), detail::weights_of<S>({{i, S(1)}, {j, S(1)}})});
    std::vector<AgentDistribution<S>> shared{detail::distribution_of<S>(std::move(outcomes))};
    return Instance<S>{std::move(g), std::move(shared), IIDCount{q, 0},
                       "iid_cycle(q=" + std::to_string(q) + ")"};
}

// 4-cycle plus diagonal {b,d}, m iid agents. Two independent coins per agent:
// heads with probability 1/m^2 puts lambda*m on the diagonal, heads with
// probability theta/m shows a uniform pair of cycle edges at weight one. The
// outcome list is the explicit product of the two coins.
template <class S>
Instance<S> build_iid_jackpot(int m, const S& lambda, const S& theta) {
    if (m < 1) throw std::domain_error("iid_jackpot: m must be >= 1");
    if (lambda < S(1)) throw std::domain_error("iid_jackpot: lambda must be >= 1");
    if (theta < S(1)) throw std::domain_error("iid_jackpot: theta must be >= 1");
    if (theta > S(m)) throw std::domain_error("iid_jackpot: theta/m exceeds 1");
    Graph g{4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}}};
    const S p_diag = S(1) / (S(m) * S(m));
    const S p_pair = theta / S(m);
    std::vector<Outcome<S>> outcomes;
    for (int diag = 1; diag >= 0; --diag) {
        const S pd = diag ? p_diag : S(1) - p_diag;
        std::vector<std::pair<int, S>> base;
        if (diag) base.push_back({4, lambda * S(m)});
        outcomes.push_back({pd * (S(1) - p_pair), detail::weights_of<S>(
                                                      std::vector<std::pair<int, S>>(base))});
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                auto entries = base;
                entries.push_back({i, S(1)});
                entries.push_back({j, S(1)});
                outcomes.push_back(
                    {pd * p_pair / S(6), detail::weights_of<S>(std::move(entries))});
            }
    }
    std::vector<AgentDistribution<S>> shared{detail::distribution_of<S>(std::move(outcomes))};
    return Instance<S>{std::move(g), std::move(shared), IIDCount{m, 0},
                       "iid_jackpot(m=" + std::to_string(m) +
                           ",lambda=" + detail::num_label(lambda) +
                           ",theta=" + detail::num_label(theta) + ")"};
}

// Single edge; m unlikely agents plus one important agent of deterministic
// unit weight.
template <class S>
Instance<S> build_single_choice_secretary(int m, const S& lambda) {
    if (m < 1) throw std::domain_error("single_choice: m must be >= 1");
    if (lambda < S(1)) throw std::domain_error("single_choice: lambda must be >= 1");
    Graph g{2, {{0, 1}}};
    std::vector<AgentDistribution<S>> agents;
    for (int i = 0; i < m; ++i) agents.push_back(detail::unlikely_agent(m, lambda, 0));
    agents.push_back(
        detail::distribution_of<S>({{S(1), detail::weights_of<S>({{0, S(1)}})}}));
    return Instance<S>{std::move(g), std::move(agents), UniformRandomOrder{},
                       "single_choice(m=" + std::to_string(m) +
                           ",lambda=" + detail::num_label(lambda) + ")"};
}

}  // namespace plab
