#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pndiag/diagnose.hpp"
#include "pndiag/error.hpp"
#include "pndiag/explain.hpp"
#include "pndiag/fixtures.hpp"
#include "pndiag/net.hpp"
#include "pndiag/net_format.hpp"

namespace pndiag::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kBuiltinFig1 = "builtin:fig1";

struct CommonOptions {
  std::string net_path;
  std::string format = "human";
  std::optional<std::size_t> max_unobs_segment;
  std::optional<std::size_t> max_explanations;

  bool json() const { return format == "json"; }
};

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("--net", opts.net_path, "Net file (.net.json) or builtin:fig1")->required();
  sub->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"human", "json"}));
  sub->add_option("--max-unobs-segment", opts.max_unobs_segment,
                  "Cap on consecutive unobservable firings (default 10 x places)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-explanations", opts.max_explanations,
                  "Cap on explanations per search (default 100000)")
      ->check(CLI::PositiveNumber);
}

NetSystem load_net(const std::string& path) {
  if (path == kBuiltinFig1) return fixtures::figure1();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kSchema, "cannot open net file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_net(text.str()).net;
}

SearchBudget budget_for(const NetSystem& net, const CommonOptions& opts) {
  SearchBudget budget = SearchBudget::defaults(net);
  if (opts.max_unobs_segment) budget.max_unobs_segment = *opts.max_unobs_segment;
  if (opts.max_explanations) budget.max_explanations = *opts.max_explanations;
  return budget;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

// "A,B,E*3" -> [A,B,E,E,E]. The empty string is the empty sequence.
FiringSequence parse_names(const NetSystem& net, std::string_view text) {
  FiringSequence out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    std::string item = trim(text.substr(start, end - start));
    std::size_t repeat = 1;
    if (const auto star = item.find('*'); star != std::string::npos) {
      const std::string count = trim(std::string_view(item).substr(star + 1));
      if (count.empty() || !std::all_of(count.begin(), count.end(), ::isdigit)) {
        throw Error(ErrorCode::kSchema, "bad repetition count in '" + item + "'");
      }
      repeat = std::stoul(count);
      item = trim(std::string_view(item).substr(0, star));
    }
    const auto t = net.find_transition(item);
    if (!t) throw Error(ErrorCode::kUnknownTransition, "unknown transition '" + item + "'");
    out.insert(out.end(), repeat, *t);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Observation parse_observation(const NetSystem& net, std::string_view text) {
  Observation o{parse_names(net, text)};
  for (const TransitionId t : o.events) {
    if (!net.labeling().is_observable(t)) {
      throw Error(ErrorCode::kNotObservable,
                  "observation contains unobservable transition '" + net.name(t) + "'");
    }
  }
  return o;
}

Json names_json(const NetSystem& net, const std::vector<TransitionId>& seq) {
  Json out = Json::array();
  for (const TransitionId t : seq) out.push_back(net.name(t));
  return out;
}

Json marking_json(const NetSystem& net, const Marking& m) {
  Json out = Json::object();
  for (const auto& [p, n] : m.counts()) out[net.name(p)] = n;
  return out;
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json trace_json(const NetSystem& net, const Observation& o, const DiagnosisTrace& trace) {
  Json per_prefix = Json::array();
  for (const PrefixVerdict& pv : trace.per_prefix) {
    per_prefix.push_back({
        {"prefix", pv.prefix},
        {"observation", names_json(net, prefixes(o)[pv.prefix].events)},
        {"explanations", pv.explanations},
        {"faulty", pv.faulty},
        {"verdict", to_string(pv.verdict)},
    });
  }
  Json j;
  j["mode"] = to_string(trace.mode);
  j["observation"] = names_json(net, o.events);
  j["per_prefix"] = std::move(per_prefix);
  j["final"] = to_string(trace.final);
  j["first_certain"] = trace.first_certain ? Json(*trace.first_certain) : Json(nullptr);
  j["anomalous"] = trace.anomalous;
  return j;
}

void print_trace(std::ostream& out, const NetSystem& net, const Observation& o,
                 const DiagnosisTrace& trace) {
  out << "mode: " << to_string(trace.mode) << '\n';
  out << "observation: " << format_sequence(net, o.events) << '\n';
  out << std::left << std::setw(8) << "prefix" << std::setw(24) << "observation"
      << std::setw(14) << "explanations" << std::setw(8) << "faulty" << "verdict" << '\n';
  const auto all = prefixes(o);
  for (const PrefixVerdict& pv : trace.per_prefix) {
    out << std::left << std::setw(8) << pv.prefix << std::setw(24)
        << format_sequence(net, all[pv.prefix].events) << std::setw(14) << pv.explanations
        << std::setw(8) << pv.faulty << to_string(pv.verdict) << '\n';
  }
  out << "final: " << to_string(trace.final);
  if (trace.first_certain) out << " (first certain at prefix " << *trace.first_certain << ')';
  out << '\n';
  if (trace.anomalous) out << "warning: certainty latched but a later prefix was not certain\n";
}

int cmd_check(const CommonOptions& opts, std::ostream& out) {
  const NetSystem net = load_net(opts.net_path);
  const StructureReport report = check_structure(net);
  std::vector<TransitionId> observable(net.labeling().observable().begin(),
                                       net.labeling().observable().end());
  std::vector<TransitionId> fault(net.labeling().fault().begin(), net.labeling().fault().end());
  if (opts.json()) {
    Json j;
    j["command"] = "check";
    j["places"] = net.place_count();
    j["transitions"] = net.transition_count();
    j["observable"] = names_json(net, observable);
    j["fault"] = names_json(net, fault);
    j["unobservable_acyclic"] = report.unobservable_acyclic;
    j["cycle_witness"] = report.cycle_witness;
    j["fault_count"] = report.fault_count;
    j["findings"] = report.findings;
    emit_json(out, j);
  } else {
    out << "places: " << net.place_count() << '\n';
    out << "transitions: " << net.transition_count() << '\n';
    out << "observable: " << format_sequence(net, observable) << '\n';
    out << "fault: " << format_sequence(net, fault) << '\n';
    out << "unobservable subnet: " << (report.unobservable_acyclic ? "acyclic" : "CYCLIC") << '\n';
    for (const auto& f : report.findings) out << "finding: " << f << '\n';
  }
  return report.ok() ? kExitOk : kExitFinding;
}

int cmd_simulate(const CommonOptions& opts, const std::string& seq_text, std::ostream& out) {
  const NetSystem net = load_net(opts.net_path);
  const FiringSequence seq = parse_names(net, seq_text);
  Json j;
  j["command"] = "simulate";
  j["sequence"] = names_json(net, seq);
  int code = kExitOk;
  try {
    const Marking m = fire_sequence(net, net.initial(), seq);
    j["ok"] = true;
    j["marking"] = marking_json(net, m);
  } catch (const FiringError& e) {
    j["ok"] = false;
    j["failed_step"] = e.step();
    j["marking"] = marking_json(net, e.marking());
    j["error"] = e.what();
    code = kExitFinding;
  }
  if (opts.json()) {
    emit_json(out, j);
  } else if (code == kExitOk) {
    out << "marking: " << j["marking"].dump() << '\n';
  } else {
    out << "disabled at step " << j["failed_step"].get<std::size_t>() << ": "
        << j["error"].get<std::string>() << '\n';
  }
  return code;
}

int cmd_project(const CommonOptions& opts, const std::string& seq_text, std::ostream& out) {
  const NetSystem net = load_net(opts.net_path);
  const FiringSequence seq = parse_names(net, seq_text);
  const Observation o = project(net.labeling(), seq);
  if (opts.json()) {
    emit_json(out, {{"command", "project"},
                    {"sequence", names_json(net, seq)},
                    {"observation", names_json(net, o.events)}});
  } else {
    out << format_sequence(net, o.events) << '\n';
  }
  return kExitOk;
}

int cmd_explain(const CommonOptions& opts, const std::string& obs_text, bool multiset,
                bool all_prefixes, std::ostream& out) {
  const NetSystem net = load_net(opts.net_path);
  const Observation o = parse_observation(net, obs_text);
  const SearchBudget budget = budget_for(net, opts);
  const auto all = prefixes(o);
  const std::size_t first = all_prefixes ? 0 : o.size();

  Json results = Json::array();
  for (std::size_t i = first; i < all.size(); ++i) {
    const auto explanations = multiset ? explain_multiset(net, to_multiset(all[i]), budget)
                                       : explain_ordered(net, all[i], budget);
    Json list = Json::array();
    for (const Explanation& e : explanations) {
      list.push_back({{"sequence", names_json(net, e.sequence)}, {"contains_fault", e.contains_fault}});
    }
    results.push_back({{"prefix", i},
                       {"observation", names_json(net, all[i].events)},
                       {"explanations", std::move(list)},
                       {"verdict", to_string(verdict_of(explanations))}});
  }

  if (opts.json()) {
    emit_json(out, {{"command", "explain"},
                    {"semantics", multiset ? "multiset" : "ordered"},
                    {"observation", names_json(net, o.events)},
                    {"results", std::move(results)}});
    return kExitOk;
  }
  out << "semantics: " << (multiset ? "multiset" : "ordered") << '\n';
  for (const Json& r : results) {
    out << "o_" << r["prefix"].get<std::size_t>() << " = [";
    bool comma = false;
    for (const Json& name : r["observation"]) {
      out << (comma ? "," : "") << name.get<std::string>();
      comma = true;
    }
    out << "]:";
    if (r["explanations"].empty()) out << " (no explanation)";
    comma = false;
    for (const Json& e : r["explanations"]) {
      out << (comma ? ", " : " ") << '[';
      bool inner = false;
      for (const Json& name : e["sequence"]) {
        out << (inner ? "," : "") << name.get<std::string>();
        inner = true;
      }
      out << ']';
      comma = true;
    }
    out << "  -> " << r["verdict"].get<std::string>() << '\n';
  }
  return kExitOk;
}

int cmd_diagnose(const CommonOptions& opts, const std::string& obs_text, const std::string& mode,
                 std::ostream& out) {
  const NetSystem net = load_net(opts.net_path);
  const Observation o = parse_observation(net, obs_text);
  const SearchBudget budget = budget_for(net, opts);
  const DiagnosisTrace trace =
      mode == "exact" ? diagnose_exact(net, o, budget) : diagnose_efficient(net, o, budget);
  if (opts.json()) {
    Json j{{"command", "diagnose"}};
    j.update(trace_json(net, o, trace));
    emit_json(out, j);
  } else {
    print_trace(out, net, o, trace);
  }
  return kExitOk;
}

int cmd_compare(const CommonOptions& opts, const std::string& obs_text, std::ostream& out) {
  const NetSystem net = load_net(opts.net_path);
  const Observation o = parse_observation(net, obs_text);
  const auto [exact, efficient] = compare(net, o, budget_for(net, opts));
  if (opts.json()) {
    emit_json(out, {{"command", "compare"},
                    {"observation", names_json(net, o.events)},
                    {"exact", trace_json(net, o, exact)},
                    {"efficient", trace_json(net, o, efficient)},
                    {"agree", exact.final == efficient.final}});
  } else {
    print_trace(out, net, o, exact);
    out << '\n';
    print_trace(out, net, o, efficient);
    out << '\n'
        << (exact.final == efficient.final ? "verdicts agree" : "verdicts differ") << '\n';
  }
  return kExitOk;
}

int cmd_precision(const CommonOptions& opts, std::size_t bound, unsigned jobs, std::ostream& out) {
  const NetSystem net = load_net(opts.net_path);
  const PrecisionReport report = precision_check(net, bound, budget_for(net, opts), jobs);
  if (opts.json()) {
    Json witnesses = Json::array();
    for (const auto& w : report.imprecise_witnesses) {
      witnesses.push_back({{"run", names_json(net, w.run)},
                           {"observation", names_json(net, w.observation.events)},
                           {"exact", to_string(w.exact)},
                           {"efficient", to_string(w.efficient)}});
    }
    Json undetected = Json::array();
    for (const auto& run : report.undetected_runs) undetected.push_back(names_json(net, run));
    emit_json(out, {
                       {"command", "precision"},
                       {"bound", report.bound},
                       {"precise", report.imprecise_witnesses.empty()},
                       {"diagnosable_within_bound", report.diagnosable_within_bound},
                       {"detection_delay", report.detection_delay
                                               ? Json(*report.detection_delay)
                                               : Json(nullptr)},
                       {"delay_metric", "observable events after the first fault firing"},
                       {"observations_checked", report.observations_checked},
                       {"faulty_runs_checked", report.faulty_runs_checked},
                       {"imprecise_witnesses", std::move(witnesses)},
                       {"undetected_runs", std::move(undetected)},
                   });
  } else {
    out << "bound: " << report.bound << '\n';
    out << "observations checked: " << report.observations_checked << '\n';
    out << "faulty runs checked: " << report.faulty_runs_checked << '\n';
    out << "diagnosable within bound: " << (report.diagnosable_within_bound ? "yes" : "no") << '\n';
    out << "detection delay: ";
    if (report.detection_delay) {
      out << *report.detection_delay << " observable events after the first fault firing\n";
    } else {
      out << "n/a\n";
    }
    for (const auto& run : report.undetected_runs) {
      out << "undetected faulty run: " << format_sequence(net, run) << '\n';
    }
    out << "imprecision witnesses: " << report.imprecise_witnesses.size() << '\n';
    for (const auto& w : report.imprecise_witnesses) {
      out << "  run " << format_sequence(net, w.run) << " observation "
          << format_sequence(net, w.observation.events) << ": exact " << to_string(w.exact)
          << ", efficient " << to_string(w.efficient) << '\n';
    }
  }
  return report.imprecise_witnesses.empty() ? kExitOk : kExitFinding;
}

int cmd_runs(const CommonOptions& opts, std::size_t max_len, std::ostream& out) {
  const NetSystem net = load_net(opts.net_path);
  const auto runs = enumerate_runs(net, max_len);
  if (opts.json()) {
    Json list = Json::array();
    for (const auto& run : runs) list.push_back(names_json(net, run));
    emit_json(out, {{"command", "runs"},
                    {"max_len", max_len},
                    {"count", runs.size()},
                    {"runs", std::move(list)}});
  } else {
    for (const auto& run : runs) out << format_sequence(net, run) << '\n';
    out << runs.size() << " runs\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Petri-net fault diagnosis: exact vs. efficient diagnosers", "pndiag"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string seq_text;
  std::string obs_text;
  std::string mode = "exact";
  bool ordered = false;
  bool multiset = false;
  bool all_prefixes = false;
  std::size_t bound = 6;
  unsigned jobs = 1;
  std::size_t max_len = 8;

  auto* check = app.add_subcommand("check", "Structure report");
  add_common(check, opts);

  auto* simulate = app.add_subcommand("simulate", "Fire a sequence from the initial marking");
  add_common(simulate, opts);
  simulate->add_option("--seq", seq_text, "Comma-separated transitions, NAME*k repeats")->required();

  auto* proj = app.add_subcommand("project", "Project a sequence onto observable transitions");
  add_common(proj, opts);
  proj->add_option("--seq", seq_text, "Comma-separated transitions, NAME*k repeats")->required();

  auto* explain = app.add_subcommand("explain", "List explanations of an observation");
  add_common(explain, opts);
  explain->add_option("--obs", obs_text, "Comma-separated observable transitions")->required();
  auto* ordered_flag = explain->add_flag("--ordered", ordered, "Order-preserving semantics (default)");
  explain->add_flag("--multiset", multiset, "Order-dropping semantics")->excludes(ordered_flag);
  explain->add_flag("--prefixes", all_prefixes, "Explain every prefix o_0 .. o_n");

  auto* diagnose = app.add_subcommand("diagnose", "Per-prefix diagnosis trace");
  add_common(diagnose, opts);
  diagnose->add_option("--obs", obs_text, "Comma-separated observable transitions")->required();
  diagnose->add_option("--mode", mode, "exact or efficient")
      ->check(CLI::IsMember({"exact", "efficient"}));

  auto* cmp = app.add_subcommand("compare", "Exact and efficient traces side by side");
  add_common(cmp, opts);
  cmp->add_option("--obs", obs_text, "Comma-separated observable transitions")->required();

  auto* precision = app.add_subcommand("precision", "Bounded precision and diagnosability check");
  add_common(precision, opts);
  precision->add_option("--bound", bound, "Maximum observation length")->check(CLI::PositiveNumber);
  precision->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* runs = app.add_subcommand("runs", "Enumerate fireable sequences");
  add_common(runs, opts);
  runs->add_option("--max-len", max_len, "Maximum sequence length");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(opts, out);
    if (simulate->parsed()) return cmd_simulate(opts, seq_text, out);
    if (proj->parsed()) return cmd_project(opts, seq_text, out);
    if (explain->parsed()) return cmd_explain(opts, obs_text, multiset, all_prefixes, out);
    if (diagnose->parsed()) return cmd_diagnose(opts, obs_text, mode, out);
    if (cmp->parsed()) return cmd_compare(opts, obs_text, out);
    if (precision->parsed()) return cmd_precision(opts, bound, jobs, out);
    if (runs->parsed()) return cmd_runs(opts, max_len, out);
  } catch (const BudgetExhausted& e) {
    err << "error[" << error_code_name(e.code()) << "]: " << e.what() << '\n';
    return kExitBudget;
  } catch (const SyntaxError& e) {
    err << "error[" << error_code_name(e.code()) << "]: " << opts.net_path << ':' << e.line()
        << ':' << e.column() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error[" << error_code_name(e.code()) << "]: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pndiag::cli
