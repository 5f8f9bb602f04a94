#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fase/analysis.hpp"
#include "fase/corpus.hpp"
#include "fase/graph.hpp"
#include "fase/parser.hpp"

using namespace fase;
using nlohmann::json;

namespace {

int exit_code_for(const std::string& code) {
    if (code == "syntax") return 2;
    if (code == "validation") return 3;
    if (code == "not-response-process") return 4;
    if (code == "catastrophic-present" || code == "unbalanced-cycle") return 5;
    if (code == "internal-inconsistency") return 6;
    if (code == "state-cap" || code == "trace-cap") return 7;
    return 6;
}

struct Input {
    std::string file;  // empty means --expr was used
    std::string expr;

    std::string describe() const { return file.empty() ? "<expr>" : file; }

    std::string text() const {
        if (file.empty()) return expr;
        std::ifstream in(file);
        if (!in) throw FaseError("validation", "cannot read '" + file + "'");
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }

    TermPtr term() const {
        TermPtr t = parse(text());
        ValidationReport rep = validate(t);
        if (!rep.ok()) {
            std::string msg = "invalid process";
            for (const auto& m : rep.messages) msg += "; " + m;
            throw FaseError("validation", msg);
        }
        return t;
    }
};

void add_input(CLI::App* cmd, Input& in) {
    auto* file = cmd->add_option("file", in.file, "process file (.pafas)");
    auto* expr = cmd->add_option("--expr", in.expr, "inline process text");
    file->excludes(expr);
    cmd->final_callback([&in, file, expr] {
        if (!*file && !*expr)
            throw CLI::ValidationError("input", "need a file or --expr");
    });
}

std::string label_str(const EdgeLabel& l, const Alphabet& a) {
    if (!l.is_time()) return l.action.str();
    return l.full ? std::string("t:FULL") : "t:" + l.refusal.str(a);
}

json witness_json(const StateGraph& g, const CycleWitness& w) {
    json j;
    j["nodes"] = w.nodes;
    j["edges"] = json::array();
    for (int ei : w.edges) {
        const Edge& e = g.edges[ei];
        j["edges"].push_back(
            {{"src", e.src}, {"dst", e.dst}, {"label", label_str(e.label, g.alphabet)}});
    }
    j["timeSteps"] = w.time_steps;
    j["ins"] = w.ins;
    j["outs"] = w.outs;
    switch (w.cls) {
    case CycleWitness::Class::Catastrophic: j["class"] = "catastrophic"; break;
    case CycleWitness::Class::Bad: j["class"] = "bad"; break;
    case CycleWitness::Class::Unbalanced: j["class"] = "unbalanced"; break;
    }
    return j;
}

void print_witness(const StateGraph& g, const CycleWitness& w, const char* head) {
    std::cout << head << " (" << w.time_steps << " time steps, " << w.ins << " in, "
              << w.outs << " out):\n";
    for (int ei : w.edges) {
        const Edge& e = g.edges[ei];
        std::cout << "  " << e.src << " --" << label_str(e.label, g.alphabet) << "--> "
                  << e.dst << "   " << print_term(g.nodes[e.src]) << "\n";
    }
}

json result_envelope(const std::string& analysis, const Input& in, json result,
                     const StateGraph* g,
                     std::chrono::steady_clock::time_point start) {
    json j;
    j["analysis"] = analysis;
    j["input"] = in.describe();
    j["result"] = std::move(result);
    j["stats"] = {{"n", g ? g->node_count() : 0},
                  {"e", g ? g->edge_count() : 0},
                  {"elapsed_ms",
                   std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count()}};
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fase — worst-case efficiency analysis of asynchronous processes"};
    app.require_subcommand(1);

    Input input;
    bool use_json = false, use_dot = false, verbose_nodes = false, oracle = false;
    int max_states = kDefaultStateCap;
    int max_traces = kDefaultTraceCap;
    int depth = 3, n = 1;
    long long bound = -1;
    std::string graph_kind = "rts", trace_kind = "discrete", family, gen_arg;
    Input test_input;

    auto* check = app.add_subcommand("check", "parse and validate a process");
    add_input(check, input);
    check->add_flag("--json", use_json);

    auto* graph = app.add_subcommand("graph", "export RTS or RRTS");
    add_input(graph, input);
    graph->add_option("--kind", graph_kind, "rts|rrts");
    graph->add_flag("--json", use_json);
    graph->add_flag("--dot", use_dot);
    graph->add_flag("--verbose-nodes", verbose_nodes);
    graph->add_option("--max-states", max_states);

    auto* cat = app.add_subcommand("catastrophic", "detect catastrophic cycles");
    add_input(cat, input);
    cat->add_flag("--json", use_json);
    cat->add_option("--max-states", max_states);

    auto* factor = app.add_subcommand("factor", "asymptotic factor via bad-cycle search");
    add_input(factor, input);
    factor->add_flag("--json", use_json);
    factor->add_option("--max-states", max_states);

    auto* rp = app.add_subcommand("rp", "exact response performance rp(n)");
    add_input(rp, input);
    rp->add_option("-n", n, "user size")->required();
    rp->add_flag("--oracle", oracle, "cross-check against p(P, U_n)");
    rp->add_flag("--json", use_json);
    rp->add_option("--max-states", max_states);

    auto* perf = app.add_subcommand("perf", "test performance p(P, O)");
    add_input(perf, input);
    auto* test_file = perf->add_option("test", test_input.file, "test process file");
    auto* test_expr = perf->add_option("--test-expr", test_input.expr, "inline test process");
    test_file->excludes(test_expr);
    perf->final_callback([&test_input, test_file, test_expr] {
        if (!*test_file && !*test_expr)
            throw CLI::ValidationError("input", "need a test file or --test-expr");
        if (*test_expr) test_input.file.clear();
    });
    perf->add_option("-D", bound, "duration bound for satisfaction");
    perf->add_flag("--json", use_json);
    perf->add_option("--max-states", max_states);

    auto* traces = app.add_subcommand("traces", "bounded trace enumeration");
    add_input(traces, input);
    traces->add_option("--depth", depth, "maximum trace length");
    traces->add_option("--kind", trace_kind, "discrete|refusal");
    traces->add_option("--max-traces", max_traces);

    auto* gen = app.add_subcommand("gen", "emit a corpus process");
    gen->add_option("family", family, "fifo|pipe|buff|pathological")->required();
    gen->add_option("N", gen_arg, "buffer size N, or pathological term name");

    CLI11_PARSE(app, argc, argv);
    auto start = std::chrono::steady_clock::now();

    try {
        if (*check) {
            TermPtr t = parse(input.text());
            ValidationReport rep = validate(t);
            if (use_json) {
                json res = {{"kind", rep.ok() ? "valid" : "invalid"},
                            {"closed", rep.closed},
                            {"guarded", rep.guarded},
                            {"finiteControl", rep.finite_control},
                            {"messages", rep.messages},
                            {"sort", json::array()}};
                for (const auto& s : term_sort(t)) res["sort"].push_back(s);
                std::cout << result_envelope("check", input, res, nullptr, start).dump(2)
                          << "\n";
            } else {
                std::cout << (rep.ok() ? "valid" : "invalid") << ": " << print_term(t)
                          << "\n";
                for (const auto& m : rep.messages) std::cout << "  " << m << "\n";
            }
            return rep.ok() ? 0 : 3;
        }

        if (*graph) {
            StateGraph g;
            if (graph_kind == "rts") {
                g = build_rts(input.term(), max_states);
            } else if (graph_kind == "rrts") {
                g = build_rrts(input.term(), max_states).graph;
            } else {
                throw FaseError("validation", "unknown graph kind '" + graph_kind + "'");
            }
            if (use_dot)
                std::cout << to_dot(g, verbose_nodes);
            else if (use_json)
                std::cout << to_json(g) << "\n";
            else
                std::cout << graph_kind << ": " << g.node_count() << " nodes, "
                          << g.edge_count() << " edges\n";
            return 0;
        }

        if (*cat) {
            Rrts r = build_rrts(input.term(), max_states);
            auto w = detect_catastrophic(r);
            if (use_json) {
                json res = {{"kind", w ? "present" : "absent"}};
                if (w) res["witness"] = witness_json(r.graph, *w);
                std::cout << result_envelope("catastrophic", input, res, &r.graph, start)
                                 .dump(2)
                          << "\n";
            } else if (w) {
                print_witness(r.graph, *w, "catastrophic cycle");
            } else {
                std::cout << "none\n";
            }
            return w ? 1 : 0;
        }

        if (*factor) {
            Rrts r = build_rrts(input.term(), max_states);
            RatioResult res = asymptotic_factor(r);
            if (use_json) {
                json body = {{"kind", "factor"},
                             {"factor", {{"num", res.factor.num}, {"den", res.factor.den}}}};
                if (!res.witness.empty()) body["witness"] = witness_json(r.graph, res.witness);
                std::cout << result_envelope("factor", input, body, &r.graph, start).dump(2)
                          << "\n";
            } else {
                std::cout << res.factor.str() << "\n";
                if (!res.witness.empty()) print_witness(r.graph, res.witness, "bad cycle");
            }
            return 0;
        }

        if (*rp) {
            TermPtr p = input.term();
            Rrts r = build_rrts(p, max_states);
            RpResult res = response_performance(r, n, max_states);
            if (oracle) {
                PerfResult o = performance(p, make_user(n), max_states);
                if (o.finite != res.perf.finite ||
                    (o.finite && o.value != res.perf.value))
                    throw FaseError("internal-inconsistency",
                                    "rp(n) disagrees with p(P, U_n)");
            }
            if (use_json) {
                json body;
                if (res.perf.finite) {
                    body = {{"kind", "finite"}, {"value", res.perf.value}, {"n", n}};
                    if (res.path) {
                        body["path"] = json::array();
                        for (size_t k = 0; k < res.path->edges.size(); ++k) {
                            const Edge& e = r.graph.edges[res.path->edges[k]];
                            body["path"].push_back(
                                {{"src", e.src},
                                 {"dst", e.dst},
                                 {"label", label_str(e.label, r.graph.alphabet)},
                                 {"in", res.path->counters[k].first},
                                 {"out", res.path->counters[k].second}});
                        }
                    }
                } else {
                    body = {{"kind", "infinite"}, {"n", n}};
                    if (res.perf.witness)
                        body["witness"] = witness_json(r.graph, *res.perf.witness);
                }
                std::cout << result_envelope("rp", input, body, &r.graph, start).dump(2)
                          << "\n";
            } else if (res.perf.finite) {
                std::cout << "rp(" << n << ") = " << res.perf.value << "\n";
                if (res.path) {
                    for (size_t k = 0; k < res.path->edges.size(); ++k) {
                        const Edge& e = r.graph.edges[res.path->edges[k]];
                        std::cout << "  " << e.src << " --"
                                  << label_str(e.label, r.graph.alphabet) << "--> " << e.dst
                                  << "   [" << res.path->counters[k].first << " in, "
                                  << res.path->counters[k].second << " out]\n";
                    }
                }
            } else {
                std::cout << "rp(" << n << ") = infinite\n";
                if (res.perf.witness)
                    print_witness(r.graph, *res.perf.witness, "witness cycle");
            }
            return 0;
        }

        if (*perf) {
            TermPtr p = input.term();
            TermPtr o = test_input.term();
            PerfResult res = performance(p, o, max_states);
            if (use_json) {
                json body;
                if (res.finite) {
                    body = {{"kind", "finite"}, {"value", res.value}};
                    if (bound >= 0) body["satisfied"] = res.value <= bound;
                } else {
                    body = {{"kind", "infinite"}};
                    if (bound >= 0) body["satisfied"] = false;
                }
                std::cout << result_envelope("perf", input, body, nullptr, start).dump(2)
                          << "\n";
            } else {
                if (res.finite)
                    std::cout << "p(P,O) = " << res.value << "\n";
                else
                    std::cout << "p(P,O) = infinite\n";
                if (bound >= 0)
                    std::cout << ((res.finite && res.value <= bound) ? "satisfied"
                                                                     : "not satisfied")
                              << " (D = " << bound << ")\n";
            }
            return 0;
        }

        if (*traces) {
            TermPtr t = input.term();
            Alphabet a = sort_alphabet(t);
            std::vector<Trace> ts;
            if (trace_kind == "discrete")
                ts = discrete_traces(t, depth, max_traces);
            else if (trace_kind == "refusal")
                ts = refusal_traces(t, depth, max_traces);
            else
                throw FaseError("validation", "unknown trace kind '" + trace_kind + "'");
            for (const auto& tr : ts) std::cout << trace_str(tr, a) << "\n";
            return 0;
        }

        if (*gen) {
            TermPtr t;
            if (family == "pathological") {
                t = gen_pathological(gen_arg);
            } else {
                int gen_n = 0;
                try {
                    size_t pos = 0;
                    gen_n = std::stoi(gen_arg.empty() ? "1" : gen_arg, &pos);
                    if (pos != (gen_arg.empty() ? 1 : gen_arg.size()))
                        throw std::invalid_argument(gen_arg);
                } catch (const std::exception&) {
                    throw FaseError("validation",
                                    "buffer size must be an integer, got '" + gen_arg + "'");
                }
                if (family == "fifo")
                    t = gen_fifo(gen_n);
                else if (family == "pipe")
                    t = gen_pipe(gen_n);
                else if (family == "buff")
                    t = gen_buff(gen_n);
                else
                    throw FaseError("validation", "unknown family '" + family + "'");
            }
            std::cout << print_term(t) << "\n";
            return 0;
        }
    } catch (const FaseError& e) {
        std::cerr << "error (" << e.code() << "): " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    }
    return 0;
}
