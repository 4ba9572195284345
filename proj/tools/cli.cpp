#include "cli.hpp"

#include <abstrans/abstrans.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace abstrans::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string slurp(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw DomainError(ErrorKind::InvalidArgument, "cannot read " + file);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Parse errors from a file are reported with its name.
struct FileParseError : ParseError {
    FileParseError(const std::string& file, const ParseError& e)
        : ParseError(e.line(), e.column(), file + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                                               ": " + e.what(),
                     e.expected()) {}
};

template <typename F>
auto from_file(const std::string& file, F&& f) {
    std::string text = slurp(file);
    try {
        return f(text);
    } catch (const FileParseError&) {
        throw;
    } catch (const ParseError& e) {
        throw FileParseError(file, e);
    }
}

Transducer load(const std::string& file) {
    return from_file(file, [](const std::string& s) { return parse_transducer(s); });
}

void write_text(const std::string& file, const std::string& text, std::ostream& out) {
    if (file.empty() || file == "-") {
        out << text;
        return;
    }
    std::ofstream f(file);
    if (!f) throw DomainError(ErrorKind::InvalidArgument, "cannot write " + file);
    f << text;
}

ClosureOp closure_op(const std::string& s) { return s == "join" ? ClosureOp::Join : ClosureOp::Regular; }

WordSet lookahead_arg(const std::string& s) {
    std::string trimmed = s;
    while (!trimmed.empty() && trimmed.front() == ' ') trimmed.erase(trimmed.begin());
    if (trimmed.empty()) return {};
    if (trimmed.front() == '{') return parse_word_set(trimmed);
    return WordSet{parse_word(trimmed)};
}

Json language_json(const BoundedLanguage& l) {
    Json a = Json::array();
    for (const auto& s : l.to_strings()) a.push_back(s);
    return a;
}

std::string join_strings(const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
    return out;
}

std::string set_string(const std::set<StateId>& qs) {
    std::vector<std::string> v;
    for (const auto& q : qs) v.push_back(q.name());
    return "{" + join_strings(v, ", ") + "}";
}

Json state_json(const Transducer& t, const TransducerState& s, std::size_t k) {
    Json a = Json::array();
    for (const auto& [q, o] : s) {
        Json e;
        e["state"] = q.name();
        e["accepting"] = t.is_accepting(q);
        e["output"] = o.to_string();
        e["bounded"] = language_json(bounded_denote(o, k));
        a.push_back(e);
    }
    return a;
}

void print_state(std::ostream& out, const Transducer& t, const TransducerState& s, std::size_t k,
                 const std::string& indent) {
    if (s.empty()) out << indent << "(no states)\n";
    for (const auto& [q, o] : s) {
        out << indent << q.name() << (t.is_accepting(q) ? " [accepting]" : "") << ": " << o.to_string() << '\n';
        out << indent << "  k=" << k << ": {" << join_strings(bounded_denote(o, k).to_strings(), ", ") << "}\n";
    }
}

struct Common {
    std::string closure = "regular";
    std::size_t k = 3;
    bool json = false;
};

void add_closure(CLI::App* c, Common& o) {
    c->add_option("--closure", o.closure, "Output closure operator")
        ->check(CLI::IsMember({"join", "regular"}))
        ->capture_default_str();
}

void add_bound(CLI::App* c, Common& o) {
    c->add_option("-k,--output-bound", o.k, "Star unrollings shown for output words")->capture_default_str();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Abstract transducer toolkit", "abstrans"};
    app.require_subcommand(1);
    std::function<int()> action;
    Common common;

    // run
    std::string run_file, run_input, run_look;
    auto* run = app.add_subcommand("run", "Run a transducer on an input word");
    run->add_option("file", run_file, "Transducer file")->required();
    run->add_option("-i,--input", run_input, "Input word, e.g. a.b (empty for eps)");
    run->add_option("-l,--lookahead", run_look, "Lookahead words, e.g. {c, d.e}");
    add_closure(run, common);
    add_bound(run, common);
    run->add_flag("--json", common.json, "Structured output");
    run->callback([&] {
        action = [&] {
            Transducer t = load(run_file);
            Word input = parse_word(run_input);
            WordSet look = lookahead_arg(run_look);
            Runner r(t, closure_op(common.closure));
            TransducerState s = r.run(input, look);
            bool feas = !s.empty();
            bool acc = std::any_of(s.begin(), s.end(), [&](const auto& e) { return t.is_accepting(e.first); });
            if (common.json) {
                Json j;
                j["input"] = word_to_string(input);
                j["entries"] = state_json(t, s, common.k);
                j["feasible"] = feas;
                j["accepting"] = acc;
                out << j.dump(2) << '\n';
            } else {
                out << "input " << word_to_string(input) << '\n';
                print_state(out, t, s, common.k, "  ");
                out << "feasible: " << (feas ? "yes" : "no") << '\n';
                out << "accepting: " << (acc ? "yes" : "no") << '\n';
            }
            return 0;
        };
    });

    // elim
    std::string elim_file, elim_out;
    auto* elim = app.add_subcommand("elim", "Remove epsilon moves");
    elim->add_option("file", elim_file)->required();
    elim->add_option("-o,--output", elim_out, "Write the result here instead of stdout");
    add_closure(elim, common);
    elim->callback([&] {
        action = [&] {
            write_text(elim_out, print_transducer(eliminate_epsilon(load(elim_file), closure_op(common.closure))), out);
            return 0;
        };
    });

    // union
    std::vector<std::string> union_files;
    std::string union_out;
    auto* uni = app.add_subcommand("union", "Component-wise union");
    uni->add_option("files", union_files)->required()->expected(1, -1);
    uni->add_option("-o,--output", union_out);
    uni->callback([&] {
        action = [&] {
            std::vector<Transducer> ts;
            for (const auto& f : union_files) ts.push_back(load(f));
            write_text(union_out, print_transducer(compose_union(ts)), out);
            return 0;
        };
    });

    // reduce
    std::string reduce_file, reduce_out;
    bool reduce_elim = false;
    std::size_t reduce_k = 4;
    auto* red = app.add_subcommand("reduce", "Merge left-equivalent states");
    red->add_option("file", reduce_file)->required();
    red->add_flag("--eliminate", reduce_elim, "Remove epsilon moves first");
    red->add_option("-k,--output-bound", reduce_k)->capture_default_str();
    red->add_option("-o,--output", reduce_out);
    red->callback([&] {
        action = [&] {
            Transducer t = load(reduce_file);
            if (reduce_elim) t = eliminate_epsilon(t);
            Transducer r = reduce_left(t, reduce_k);
            err << "states: " << t.states().size() << " -> " << r.states().size() << '\n';
            write_text(reduce_out, print_transducer(r), out);
            return 0;
        };
    });

    // merge-states
    std::string merge_file, merge_out;
    std::vector<std::string> merge_states_arg;
    auto* mrg = app.add_subcommand("merge-states", "Merge a set of control states");
    mrg->add_option("file", merge_file)->required();
    mrg->add_option("states", merge_states_arg)->required()->expected(1, -1);
    mrg->add_option("-o,--output", merge_out);
    mrg->callback([&] {
        action = [&] {
            std::set<StateId> qs;
            for (const auto& s : merge_states_arg) qs.insert(StateId(s));
            write_text(merge_out, print_transducer(qmerge(load(merge_file), qs)), out);
            return 0;
        };
    });

    // abstract
    std::string abs_file, abs_prec, abs_out;
    bool abs_check = false;
    Bounds abs_bounds;
    auto* abs = app.add_subcommand("abstract", "Apply a precision file (merges, then input, then output widening)");
    abs->add_option("file", abs_file)->required();
    abs->add_option("-p,--precision", abs_prec)->required();
    abs->add_option("-o,--output", abs_out);
    abs->add_flag("--check", abs_check, "Check the result overapproximates the input");
    abs->add_option("--max-input", abs_bounds.n)->capture_default_str();
    abs->add_option("--max-look", abs_bounds.m)->capture_default_str();
    add_bound(abs, common);
    abs->callback([&] {
        action = [&] {
            Transducer t = load(abs_file);
            Precision p = from_file(abs_prec, [&](const std::string& s) { return parse_precision(s, t); });
            Transducer a = abstract_states(t, p.states);
            // Directives name the original states; merged ones are renamed.
            std::map<StateId, StateId> renamed;
            {
                Transducer cur = t;
                for (auto it = p.states.classes.rbegin(); it != p.states.classes.rend(); ++it) {
                    StateId m = merged_state_name(cur, *it);
                    for (const auto& q : *it) renamed[q] = m;
                    cur = qmerge(cur, *it);
                }
            }
            auto remap = [&](TransitionSelector s) {
                if (renamed.count(s.source)) s.source = renamed[s.source];
                if (renamed.count(s.target)) s.target = renamed[s.target];
                return s;
            };
            for (auto& d : p.alphabet.inputs) d.where = remap(d.where);
            for (auto& d : p.alphabet.outputs) d.where = remap(d.where);
            a = abstract_output_alphabet(abstract_input_alphabet(a, p.alphabet), p.alphabet);
            write_text(abs_out, print_transducer(a), out);
            if (abs_check) {
                abs_bounds.k = common.k;
                auto r = overapproximates_bounded(a, t, abs_bounds);
                err << (r.holds ? "overapproximation holds" : "overapproximation FAILS") << '\n';
                if (r.witness) err << r.witness->to_string() << '\n';
                return r.holds ? 0 : 1;
            }
            return 0;
        };
    });

    // equiv
    std::string eq1, eq2;
    Bounds eq_bounds;
    auto* eq = app.add_subcommand("equiv", "Bounded equivalence check");
    eq->add_option("left", eq1)->required();
    eq->add_option("right", eq2)->required();
    eq->add_option("--max-input", eq_bounds.n)->capture_default_str();
    eq->add_option("--max-look", eq_bounds.m)->capture_default_str();
    add_bound(eq, common);
    add_closure(eq, common);
    eq->add_flag("--json", common.json);
    eq->callback([&] {
        action = [&] {
            eq_bounds.k = common.k;
            auto r = equivalent_bounded(load(eq1), load(eq2), eq_bounds, closure_op(common.closure));
            std::string bounds = "n=" + std::to_string(eq_bounds.n) + ", m=" + std::to_string(eq_bounds.m) +
                                 ", k=" + std::to_string(eq_bounds.k);
            if (common.json) {
                Json j;
                j["equivalent"] = r.equivalent;
                j["bounds"] = {{"n", eq_bounds.n}, {"m", eq_bounds.m}, {"k", eq_bounds.k}};
                Json ws = Json::array();
                for (const auto& w : r.witnesses) {
                    Json x;
                    x["accepting"] = w.accepting;
                    x["input"] = word_to_string(w.input);
                    Json look = Json::array();
                    for (const auto& l : w.lookahead) look.push_back(word_to_string(l));
                    x["lookahead"] = look;
                    Json left = Json::array(), right = Json::array();
                    for (const auto& l : w.left) left.push_back(language_json(l));
                    for (const auto& l : w.right) right.push_back(language_json(l));
                    x["left"] = left;
                    x["right"] = right;
                    ws.push_back(x);
                }
                j["witnesses"] = ws;
                out << j.dump(2) << '\n';
            } else if (r.equivalent) {
                out << "EQUIVALENT (" << bounds << ")\n";
            } else {
                out << "DIFFER (" << bounds << ")\n";
                out << "witness: " << r.witnesses.front().to_string() << '\n';
                if (r.witnesses.size() > 1) out << "(" << r.witnesses.size() - 1 << " more)\n";
            }
            return 0;
        };
    });

    // lookahead
    std::string la_file;
    auto* la = app.add_subcommand("lookahead", "Lookahead needed per transition");
    la->add_option("file", la_file)->required();
    la->callback([&] {
        action = [&] {
            Transducer t = load(la_file);
            for (const auto& tr : t.transitions()) out << tr.to_string() << "  lookahead " << lookahead_of(t, tr) << '\n';
            out << "transducer lookahead " << transducer_lookahead(t) << '\n';
            return 0;
        };
    });

    // closure
    std::string cl_file, cl_state, cl_init = "eps";
    auto* cl = app.add_subcommand("closure", "Epsilon closure and output closure of a state");
    cl->add_option("file", cl_file)->required();
    cl->add_option("-s,--state", cl_state)->required();
    cl->add_option("--init", cl_init, "Output word carried into the closure")->capture_default_str();
    add_closure(cl, common);
    add_bound(cl, common);
    cl->callback([&] {
        action = [&] {
            Transducer t = load(cl_file);
            StateId q(cl_state);
            if (!t.has_state(q)) throw DomainError(ErrorKind::UnknownState, cl_state);
            OutputWord init = parse_output_word(cl_init);
            out << "eps-closure: " << set_string(eps_closure(t, q)) << '\n';
            out << "termination states: " << set_string(closure_termination_states(t, q)) << '\n';
            auto r = output_closure(t, q, init, closure_op(common.closure));
            out << "output closure (" << to_string(closure_op(common.closure)) << "):\n";
            TransducerState s;
            for (const auto& [p, o] : r.termination_map) s.add(p, o);
            print_state(out, t, s, common.k, "  ");
            return 0;
        };
    });

    // analyze
    std::vector<std::string> an_files, an_concerns;
    std::string an_cfa, an_view = "op", an_merge = "sep";
    AnalysisConfig an_cfg;
    auto* an = app.add_subcommand("analyze", "Run transducers over a control-flow automaton");
    an->add_option("files", an_files, "Transducer files; several are composed by union")->required()->expected(1, -1);
    an->add_option("-c,--cfa", an_cfa)->required();
    an->add_option("--concerns", an_concerns, "Concern file per transducer, in order")->expected(0, -1);
    an->add_option("--view", an_view)->check(CLI::IsMember({"op", "target"}))->capture_default_str();
    an->add_option("--lookahead", an_cfg.lookahead_depth)->capture_default_str();
    an->add_option("--merge", an_merge)->check(CLI::IsMember({"sep", "join"}))->capture_default_str();
    an->add_option("--budget", an_cfg.budget)->capture_default_str();
    add_closure(an, common);
    add_bound(an, common);
    an->add_flag("--json", common.json);
    an->callback([&] {
        action = [&] {
            if (!an_concerns.empty() && an_concerns.size() != an_files.size())
                throw DomainError(ErrorKind::InvalidArgument, "give one --concerns file per transducer");
            std::vector<Transducer> ts;
            std::vector<ConcernMap> cms;
            for (std::size_t i = 0; i < an_files.size(); ++i) {
                ts.push_back(load(an_files[i]));
                if (!an_concerns.empty())
                    cms.push_back(from_file(an_concerns[i],
                                            [&](const std::string& s) { return parse_concerns(s, ts.back()); }));
            }
            auto [t, cm] = compose_union(ts, cms);
            Cfa c = from_file(an_cfa, [](const std::string& s) { return parse_cfa(s); });
            an_cfg.view = an_view == "target" ? View::ByTargetLocation : View::ByOperation;
            an_cfg.merge = an_merge == "join" ? MergePolicy::Join : MergePolicy::Sep;
            an_cfg.closure = closure_op(common.closure);
            an_cfg.output_bound = common.k;
            an_cfg.concerns = cm;
            AnalysisReport rep = explore(c, t, an_cfg);

            if (common.json) {
                Json j;
                Json locs = Json::array();
                for (const auto& l : c.locations()) {
                    Json lj;
                    lj["location"] = l;
                    Json states = Json::array();
                    for (const auto* s : rep.at(l)) states.push_back(state_json(t, s->state, common.k));
                    lj["states"] = states;
                    Json cs = Json::array();
                    if (rep.concerns_by_location.count(l))
                        for (const auto& n : rep.concerns_by_location.at(l)) cs.push_back(n);
                    lj["concerns"] = cs;
                    locs.push_back(lj);
                }
                j["locations"] = locs;
                j["concerns"] = rep.concerns;
                j["statistics"] = {{"reached", rep.reached.size()},
                                   {"transfers", rep.transfers},
                                   {"merges", rep.merges},
                                   {"budget_exhausted", rep.budget_exhausted}};
                j["warnings"] = rep.warnings;
                out << j.dump(2) << '\n';
            } else {
                for (const auto& l : c.locations()) {
                    auto states = rep.at(l);
                    out << "location " << l << " (" << states.size() << " states)\n";
                    for (const auto* s : states) {
                        out << "  state\n";
                        print_state(out, t, s->state, common.k, "    ");
                    }
                    if (rep.concerns_by_location.count(l))
                        for (const auto& n : rep.concerns_by_location.at(l)) out << "  concern " << n << '\n';
                }
                out << "concerns: {" << join_strings({rep.concerns.begin(), rep.concerns.end()}, ", ") << "}\n";
                out << "reached " << rep.reached.size() << ", transfers " << rep.transfers << ", merges "
                    << rep.merges << '\n';
                for (const auto& w : rep.warnings) out << "warning: " << w << '\n';
            }
            return rep.budget_exhausted ? static_cast<int>(BudgetExhausted) : 0;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return ParseFailure;
    }

    try {
        return action ? action() : Ok;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what();
        if (!e.expected().empty()) err << " (expected " << join_strings(e.expected(), ", ") << ")";
        err << '\n';
        return ParseFailure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return DomainFailure;
    }
}

} // namespace abstrans::cli
