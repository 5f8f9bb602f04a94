#ifndef FASE_TESTS_RANDOM_TERMS_HPP
#define FASE_TESTS_RANDOM_TERMS_HPP

#include <random>
#include <string>
#include <vector>

#include "fase/error.hpp"
#include "fase/graph.hpp"
#include "fase/term.hpp"

namespace fase::testing {

struct TermGenConfig {
    std::vector<std::string> actions{"a", "b", "c"};
    int max_depth = 4;
    double urgent_prob = 0.3;
};

class TermGen {
public:
    TermGen(unsigned seed, TermGenConfig cfg = {}) : rng_(seed), cfg_(std::move(cfg)) {}

    // closed guarded term
    TermPtr next() {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            var_counter_ = 0;
            TermPtr t = gen(cfg_.max_depth, {});
            if (validate(t).ok()) return t;
        }
        throw FaseError("internal-inconsistency", "random term generation starved");
    }

    // closed guarded response process with a small RTS
    TermPtr next_response(int max_states = 30) {
        TermGenConfig saved = cfg_;
        cfg_.actions = {"in", "out"};
        for (int attempt = 0; attempt < 5000; ++attempt) {
            var_counter_ = 0;
            TermPtr t = gen(cfg_.max_depth, {});
            if (!validate(t).ok()) continue;
            try {
                StateGraph g = build_rts(t, max_states);
                validate_response(g);
                cfg_ = saved;
                return t;
            } catch (const FaseError&) {
                continue;
            }
        }
        cfg_ = saved;
        throw FaseError("internal-inconsistency", "random response generation starved");
    }

private:
    TermPtr gen(int depth, std::vector<std::string> bound) {
        if (depth <= 0) return leaf(bound);
        switch (pick({30, 15, 10, 8, 12, 15, 10})) {
        case 0:
            return mk_prefix(label(), chance(cfg_.urgent_prob), gen(depth - 1, bound));
        case 1:
            return mk_sum(gen(depth - 1, bound), gen(depth - 1, bound));
        case 2: {
            std::vector<std::string> sync;
            for (const auto& a : cfg_.actions)
                if (chance(0.5)) sync.push_back(a);
            return mk_par(gen(depth - 1, bound), SyncSet::finite(sync),
                          gen(depth - 1, bound));
        }
        case 3: {
            std::vector<std::pair<std::string, ActionLabel>> entries;
            for (const auto& a : cfg_.actions)
                if (chance(0.3))
                    entries.emplace_back(a, chance(0.3) ? ActionLabel::tau() : label());
            return mk_relabel(gen(depth - 1, bound), Relabeling::make(entries));
        }
        case 4: {
            std::string v = "V" + std::to_string(var_counter_++);
            bound.push_back(v);
            return mk_rec(v, gen(depth - 1, bound));
        }
        default:
            return leaf(bound);
        }
    }

    TermPtr leaf(const std::vector<std::string>& bound) {
        if (!bound.empty() && chance(0.6))
            return mk_var(bound[rng_() % bound.size()]);
        return mk_nil();
    }

    ActionLabel label() {
        if (chance(0.15)) return ActionLabel::tau();
        return ActionLabel::visible(cfg_.actions[rng_() % cfg_.actions.size()]);
    }

    bool chance(double p) { return std::uniform_real_distribution<>(0, 1)(rng_) < p; }

    int pick(std::vector<int> weights) {
        int total = 0;
        for (int w : weights) total += w;
        int r = static_cast<int>(rng_() % total);
        for (size_t i = 0; i < weights.size(); ++i) {
            r -= weights[i];
            if (r < 0) return static_cast<int>(i);
        }
        return 0;
    }

    std::mt19937 rng_;
    TermGenConfig cfg_;
    int var_counter_ = 0;
};

}  // namespace fase::testing

#endif
