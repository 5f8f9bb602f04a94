// Acceptance suite: one pass/fail line per criterion; exit code = #failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fase/analysis.hpp"
#include "fase/corpus.hpp"
#include "fase/graph.hpp"
#include "fase/parser.hpp"

#include "support/oracles.hpp"
#include "support/random_terms.hpp"
#include "support/synthetic.hpp"

using namespace fase;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::printf("criterion %d (%s): %s%s%s\n", idx, name.c_str(), ok ? "PASS" : "FAIL",
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) ++failures;
}

// wraps one criterion; any exception is a failure
void criterion(int idx, const std::string& name,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(idx, name, ok, detail);
}

long long rp_value(TermPtr p, int n, bool& finite) {
    Rrts r = build_rrts(p);
    RpResult res = response_performance(r, n);
    finite = res.perf.finite;
    return res.perf.value;
}

bool expect_rp(TermPtr p, int n, long long want, std::string& detail,
               const std::string& label) {
    bool finite = false;
    long long got = rp_value(p, n, finite);
    if (finite && got == want) return true;
    std::ostringstream os;
    os << label << ": rp(" << n << ") = " << (finite ? std::to_string(got) : "infinite")
       << ", expected " << want;
    detail = os.str();
    return false;
}

bool verify_catastrophic_witness(const Rrts& r, const CycleWitness& w, std::string& detail) {
    if (w.edges.empty() || w.time_steps < 1 || w.ins != 0 || w.outs != 0) {
        detail = "witness malformed (counts)";
        return false;
    }
    for (size_t k = 0; k < w.edges.size(); ++k) {
        const Edge& e = r.graph.edges[w.edges[k]];
        if (e.src != w.nodes[k] || e.dst != w.nodes[(k + 1) % w.nodes.size()]) {
            detail = "witness edges do not form a cycle";
            return false;
        }
        if (!e.label.is_tau() && !e.label.is_time()) {
            detail = "witness contains a visible action";
            return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    criterion(1, "case-study rp formulas", [](std::string& detail) {
        for (int N = 1; N <= 3; ++N)
            for (int n = 1; n <= 5; ++n)
                if (!expect_rp(gen_fifo(N), n, 2LL * n, detail,
                               "fifo(" + std::to_string(N) + ")"))
                    return false;
        for (int N = 1; N <= 2; ++N)
            for (int n = 1; n <= 4; ++n) {
                if (!expect_rp(gen_pipe(N), n, 2LL * n + N + 1, detail,
                               "pipe(" + std::to_string(N) + ")"))
                    return false;
                if (!expect_rp(gen_buff(N), n, 4LL * n, detail,
                               "buff(" + std::to_string(N) + ")"))
                    return false;
            }
        return true;
    });

    criterion(2, "catastrophic freedom", [](std::string& detail) {
        std::vector<std::pair<TermPtr (*)(int), const char*>> gens = {
            {gen_fifo, "fifo"}, {gen_pipe, "pipe"}, {gen_buff, "buff"}};
        for (int N = 1; N <= 3; ++N)
            for (auto [gen, name] : gens) {
                Rrts r = build_rrts(gen(N));
                if (detect_catastrophic(r)) {
                    detail = std::string(name) + "(" + std::to_string(N) +
                             ") reported catastrophic";
                    return false;
                }
            }
        Rrts r = build_rrts(gen_pathological("tau_divergent"));
        auto w = detect_catastrophic(r);
        if (!w) {
            detail = "tau_divergent missed";
            return false;
        }
        return verify_catastrophic_witness(r, *w, detail);
    });

    criterion(3, "asymptotic factors", [](std::string& detail) {
        for (int N = 1; N <= 2; ++N) {
            struct Want {
                TermPtr p;
                Rational factor;
                const char* name;
            } cases[] = {{gen_fifo(N), Rational(2, 1), "fifo"},
                         {gen_pipe(N), Rational(2, 1), "pipe"},
                         {gen_buff(N), Rational(4, 1), "buff"}};
            for (const auto& c : cases) {
                RatioResult res = asymptotic_factor(build_rrts(c.p));
                if (res.factor != c.factor) {
                    detail = std::string(c.name) + "(" + std::to_string(N) + ") factor " +
                             res.factor.str() + " != " + c.factor.str();
                    return false;
                }
            }
        }
        return true;
    });

    criterion(4, "rp oracle equivalence", [](std::string& detail) {
        auto agree = [&detail](TermPtr p, int n, const std::string& label) {
            Rrts r = build_rrts(p);
            RpResult a = response_performance(r, n);
            PerfResult b = performance(p, make_user(n));
            if (a.perf.finite != b.finite ||
                (a.perf.finite && a.perf.value != b.value)) {
                std::ostringstream os;
                os << label << " n=" << n << ": rrts "
                   << (a.perf.finite ? std::to_string(a.perf.value) : "inf") << " vs test "
                   << (b.finite ? std::to_string(b.value) : "inf");
                detail = os.str();
                return false;
            }
            return true;
        };
        for (int N = 1; N <= 2; ++N)
            for (int n = 1; n <= 3; ++n) {
                if (!agree(gen_fifo(N), n, "fifo(" + std::to_string(N) + ")")) return false;
                if (!agree(gen_pipe(N), n, "pipe(" + std::to_string(N) + ")")) return false;
                if (!agree(gen_buff(N), n, "buff(" + std::to_string(N) + ")")) return false;
            }
        fase::testing::TermGen gen(20250824);
        for (int i = 0; i < 110; ++i) {
            TermPtr p = gen.next_response();
            for (int n = 1; n <= 3; ++n)
                if (!agree(p, n, "random #" + std::to_string(i) + " " + print_term(p)))
                    return false;
        }
        return true;
    });

    criterion(5, "algorithmic cross-checks", [](std::string& detail) {
        std::mt19937 rng(5150);
        for (int i = 0; i < 220; ++i) {
            int nodes = 2 + static_cast<int>(rng() % 7);
            auto edges = fase::testing::random_weighted_graph(rng, nodes);
            auto brute = fase::testing::brute_ratio(nodes, edges);
            try {
                auto fast = max_ratio_cycle(nodes, edges);
                if (brute.unbalanced) {
                    detail = "ratio run " + std::to_string(i) + ": missed unbalanced cycle";
                    return false;
                }
                bool same = brute.best ? (fast && fast->factor == *brute.best)
                                       : !fast.has_value();
                if (!same) {
                    detail = "ratio run " + std::to_string(i) + " differs from brute force";
                    return false;
                }
            } catch (const FaseError& e) {
                if (e.code() != "unbalanced-cycle" || !brute.unbalanced) {
                    detail = "ratio run " + std::to_string(i) + ": " + e.what();
                    return false;
                }
            }
        }
        for (int i = 0; i < 220; ++i) {
            auto s = fase::testing::random_response_graph(rng);
            bool fast = detect_catastrophic(s.g, s.balance).has_value();
            bool brute = fase::testing::brute_catastrophic(s.g, s.balance);
            if (fast != brute) {
                detail = "catastrophic run " + std::to_string(i) + ": fast=" +
                         (fast ? "yes" : "no") + " brute=" + (brute ? "yes" : "no");
                return false;
            }
        }
        return true;
    });

    criterion(6, "semantics property suite", [](std::string& detail) {
        fase::testing::TermGen gen(612);
        for (int i = 0; i < 520; ++i) {
            TermPtr t = gen.next();
            SemanticsContext ctx(sort_alphabet(t));
            const Alphabet& a = ctx.alphabet();
            const auto& ts = ctx.time_step(t);
            for (int mask = 0; mask < (1 << a.size()); ++mask) {
                std::set<std::string> x;
                ActionSet xs(a.size());
                for (int b = 0; b < a.size(); ++b)
                    if (mask & (1 << b)) {
                        x.insert(a.name(b));
                        xs.add(b);
                    }
                bool impl = ts.has_value() && xs.subset_of(ts->max_refusal);
                if (impl != fase::testing::oracle_refuses(t, x)) {
                    detail = "powerset mismatch on " + print_term(t);
                    return false;
                }
            }
            if (ts) {
                if (ts->target != fase::testing::oracle_age(t)) {
                    detail = "aging target mismatch on " + print_term(t);
                    return false;
                }
                const auto& again = ctx.time_step(ts->target);
                if (again && again->target != ts->target) {
                    detail = "aging not idempotent on " + print_term(t);
                    return false;
                }
            }
        }
        return true;
    });

    criterion(7, "linear-time scaling of catastrophic detection", [](std::string& detail) {
        std::vector<double> times;
        std::vector<long long> sizes;
        for (int N : {2, 4, 6, 8}) {
            Rrts r = build_rrts(gen_pipe(N), 2000000);
            long long work = r.graph.node_count() + r.graph.edge_count();
            // repeat until the sample is long enough to measure
            int reps = 1;
            double secs = 0;
            while (true) {
                auto t0 = std::chrono::steady_clock::now();
                for (int k = 0; k < reps; ++k)
                    if (detect_catastrophic(r)) {
                        detail = "pipe(" + std::to_string(N) + ") reported catastrophic";
                        return false;
                    }
                secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                           .count();
                if (secs >= 0.2 || reps >= 1 << 20) break;
                reps *= 2;
            }
            times.push_back(secs / reps);
            sizes.push_back(work);
        }
        std::ostringstream os;
        for (size_t i = 0; i + 1 < times.size(); ++i) {
            double time_ratio = times[i + 1] / times[i];
            double size_ratio = static_cast<double>(sizes[i + 1]) / sizes[i];
            os << "N+E " << sizes[i] << "->" << sizes[i + 1] << " time x"
               << time_ratio << " size x" << size_ratio << "; ";
            if (time_ratio > 3.0 * size_ratio) {
                detail = os.str() + "growth exceeds 3x the size ratio";
                return false;
            }
        }
        detail = os.str();
        return true;
    });

    criterion(8, "linearity window", [](std::string& detail) {
        struct Case {
            TermPtr p;
            long long a;
            const char* name;
        } cases[] = {{gen_fifo(2), 2, "fifo(2)"}, {gen_buff(2), 4, "buff(2)"}};
        for (const auto& c : cases) {
            Rrts r = build_rrts(c.p);
            long long offset = 0;
            for (int n = 2; n <= 8; ++n) {
                RpResult res = response_performance(r, n);
                if (!res.perf.finite) {
                    detail = std::string(c.name) + " infinite at n=" + std::to_string(n);
                    return false;
                }
                long long diff = res.perf.value - c.a * n;
                if (n == 2) {
                    offset = diff;
                } else if (diff != offset) {
                    detail = std::string(c.name) + ": rp(n)-a*n not constant (" +
                             std::to_string(offset) + " vs " + std::to_string(diff) +
                             " at n=" + std::to_string(n) + ")";
                    return false;
                }
            }
        }
        return true;
    });

    std::printf("%s\n", failures == 0 ? "acceptance: all criteria passed"
                                      : "acceptance: FAILURES present");
    return failures;
}
