#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "pebbletl/equiv.hpp"
#include "pebbletl/eval.hpp"
#include "pebbletl/minsky.hpp"
#include "pebbletl/model.hpp"
#include "pebbletl/parser.hpp"
#include "pebbletl/satsearch.hpp"
#include "pebbletl/translate.hpp"

namespace {

using namespace pebbletl;
using nlohmann::json;

// Exit codes: 0 success / definite True, 1 definite False or counterexample,
// 2 usage and format errors.
constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

struct Options {
  std::string format = "plain";
  bool json() const { return format == "json"; }
};

int cmd_parse(const std::string& formula_path, const Options& opt) {
  auto file = read_formula_file(slurp(formula_path));
  if (opt.json()) {
    json out{{"status", "ok"}, {"formula", print_formula(file.formula)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "ok: " << print_formula(file.formula) << "\n";
  }
  return kOk;
}

int cmd_eval(const std::string& model_path, const std::string& formula_path,
             std::size_t at, const Options& opt) {
  auto model = read_model(slurp(model_path));
  auto file = read_formula_file(slurp(formula_path));
  const Verdict v = eval_sentence(model, file.formula, at);
  const std::string mode = model.has_lasso() ? "lasso" : "bounded";
  if (opt.json()) {
    json out{{"verdict", to_string(v)}, {"mode", mode}, {"position", at}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << to_string(v) << " (" << mode << " mode, position " << at
              << ")\n";
  }
  return v == Verdict::False ? kRefuted : kOk;
}

int cmd_equiv(const std::string& path1, const std::string& path2,
              std::size_t horizon, const Options& opt) {
  auto m1 = read_model(slurp(path1));
  auto m2 = read_model(slurp(path2));
  EquivScope scope;
  scope.horizon = horizon;
  for (const auto& c : m1.constants()) scope.alphabet.constants.insert(c);
  for (const auto& c : m2.constants()) scope.alphabet.constants.insert(c);
  for (const TraceModel* m : {&m1, &m2})
    for (const auto& p : m->predicates()) {
      std::size_t arity = 0;
      for (const auto& step : m->predicate_timeline(p))
        for (const auto& tuple : step) arity = tuple.size();
      scope.alphabet.predicates[p] = arity;
    }
  auto r = pebble_equivalent(m1, m2, scope);
  std::string status = r.status == EquivStatus::Equivalent ? "equivalent"
                       : r.status == EquivStatus::BoundedEquivalent
                           ? "equivalent up to the checked horizon"
                           : "not equivalent";
  if (opt.json()) {
    json out{{"status", status}, {"checked_horizon", r.checked_horizon}};
    if (r.witness) {
      out["witness"] = {{"moment", r.witness->moment},
                        {"symbol", r.witness->symbol}};
      if (r.witness->tuple) out["witness"]["tuple"] = *r.witness->tuple;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << status << " (checked " << r.checked_horizon << " moments)\n";
    if (r.witness) {
      std::cout << "witness: moment " << r.witness->moment << ", symbol "
                << r.witness->symbol;
      if (r.witness->tuple) {
        std::cout << ", tuple (";
        for (std::size_t i = 0; i < r.witness->tuple->size(); ++i)
          std::cout << (i ? ", " : "") << (*r.witness->tuple)[i];
        std::cout << ")";
      }
      std::cout << "\n";
    }
  }
  return r.status == EquivStatus::NotEquivalent ? kRefuted : kOk;
}

int cmd_minsky_run(const std::string& machine_path, std::size_t max_steps,
                   const Options& opt) {
  auto m = parse_machine(slurp(machine_path));
  auto r = run(m, max_steps);
  if (opt.json()) {
    json states = json::array();
    for (const auto& s : r.states)
      states.push_back({{"label", s.label},
                        {"counter1", s.counter1},
                        {"counter2", s.counter2}});
    json out{{"halted", r.halted}, {"states", states}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << format_run(r);
  }
  return kOk;
}

int cmd_translate(const std::string& machine_path, const std::string& out_path,
                  const Options& opt) {
  auto m = parse_machine(slurp(machine_path));
  auto chi = translate_machine(m);
  const TranslationAlphabet alpha(m.stop_label());
  const std::string text = write_formula_file(alpha.to_alphabet(), *chi);
  if (!out_path.empty()) {
    spit(out_path, text);
    std::cout << "wrote " << out_path << "\n";
  } else if (opt.json()) {
    json out{{"formula", print_formula(chi)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  return kOk;
}

int cmd_certify(const std::string& machine_path, std::size_t horizon,
                const std::string& emit_model, const std::string& emit_formula,
                const Options& opt) {
  auto m = parse_machine(slurp(machine_path));
  auto report = certify(m, horizon);
  if (!emit_model.empty())
    spit(emit_model, write_model(canonical_model(m, horizon)));
  if (!emit_formula.empty()) {
    const TranslationAlphabet alpha(m.stop_label());
    spit(emit_formula,
         write_formula_file(alpha.to_alphabet(), *translate_machine(m)));
  }
  if (opt.json()) {
    json rules = json::array();
    for (const auto& rule : report.rules) {
      std::string verdicts;
      for (const auto& v : rule.verdicts)
        verdicts.push_back(v == Verdict::True    ? 'T'
                           : v == Verdict::False ? 'F'
                                                 : '?');
      rules.push_back({{"rule", rule.rule}, {"verdicts", verdicts}});
    }
    json out{{"horizon", report.horizon},
             {"rules", rules},
             {"no_violation", report.no_violation},
             {"counter_relation_ok", report.counter_relation_ok}};
    if (report.q_stop_seen_at) out["q_stop_seen_at"] = *report.q_stop_seen_at;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << report.to_text();
  }
  return report.no_violation && report.counter_relation_ok ? kOk : kRefuted;
}

int cmd_search(const std::string& formula_path, bool sat, bool valid,
               const SearchScope& scope, const Options& opt) {
  if (sat == valid)
    throw CLI::ValidationError("search", "pass exactly one of --sat/--valid");
  auto file = read_formula_file(slurp(formula_path));
  if (sat) {
    auto found = find_model(file.formula, scope);
    if (opt.json()) {
      json out{{"satisfiable_in_scope", found.has_value()}};
      if (found) out["model"] = write_model(*found);
      std::cout << out.dump(2) << "\n";
    } else if (found) {
      std::cout << "model found:\n" << write_model(*found);
    } else {
      std::cout << "none-in-scope (not a proof of unsatisfiability)\n";
    }
    return kOk;
  }
  auto counter = check_validity_small_scope(file.formula, scope);
  if (opt.json()) {
    json out{{"countermodel_found", counter.has_value()}};
    if (counter) out["model"] = write_model(*counter);
    std::cout << out.dump(2) << "\n";
  } else if (counter) {
    std::cout << "countermodel found:\n" << write_model(*counter);
  } else {
    std::cout << "no countermodel in scope (evidence only, not a validity "
                 "proof)\n";
  }
  return counter ? kRefuted : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pebbletl: a quantifier-free temporal logic of pebbles with predicate "
      "abstraction and equality"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --format appear after subcommand arguments
  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"plain", "json"}))
      ->capture_default_str();

  std::string formula_path, model_path, model_path2, machine_path;
  std::string out_path, emit_model, emit_formula;
  std::size_t at = 0, horizon = 10, max_steps = 50;
  bool sat = false, valid = false;
  SearchScope scope;

  auto* parse_cmd = app.add_subcommand("parse", "Parse a formula file");
  parse_cmd->add_option("formula", formula_path)->required();

  auto* eval_cmd =
      app.add_subcommand("eval", "Evaluate a sentence on a model");
  eval_cmd->add_option("model", model_path)->required();
  eval_cmd->add_option("formula", formula_path)->required();
  eval_cmd->add_option("--at", at, "Evaluation moment")->capture_default_str();

  auto* equiv_cmd =
      app.add_subcommand("equiv", "Check pebble equivalence of two models");
  equiv_cmd->add_option("model1", model_path)->required();
  equiv_cmd->add_option("model2", model_path2)->required();
  equiv_cmd->add_option("--horizon", horizon, "Moments to compare for prefixes")
      ->capture_default_str();

  auto* run_cmd = app.add_subcommand("minsky-run", "Run a counter machine");
  run_cmd->add_option("machine", machine_path)->required();
  run_cmd->add_option("--max-steps", max_steps, "State budget")
      ->capture_default_str();

  auto* translate_cmd = app.add_subcommand(
      "translate", "Translate a counter machine into a formula file");
  translate_cmd->add_option("machine", machine_path)->required();
  translate_cmd->add_option("-o,--output", out_path, "Write to a file");

  auto* certify_cmd = app.add_subcommand(
      "certify",
      "Check the machine translation against its run-shaped model");
  certify_cmd->add_option("machine", machine_path)->required();
  certify_cmd->add_option("--horizon", horizon, "Moments to certify")
      ->capture_default_str();
  certify_cmd->add_option("--emit-model", emit_model,
                          "Write the run-shaped model");
  certify_cmd->add_option("--emit-formula", emit_formula,
                          "Write the translation formula file");

  auto* search_cmd = app.add_subcommand(
      "search", "Bounded model/countermodel search (evidence only)");
  search_cmd->add_option("formula", formula_path)->required();
  search_cmd->add_flag("--sat", sat, "Search for a model");
  search_cmd->add_flag("--valid", valid, "Search for a countermodel");
  search_cmd->add_option("--domain", scope.max_domain, "Max domain size")
      ->capture_default_str();
  search_cmd->add_option("--prefix", scope.max_prefix, "Max lasso prefix")
      ->capture_default_str();
  search_cmd->add_option("--period", scope.max_period, "Max lasso period")
      ->capture_default_str();
  search_cmd->add_option("--ceiling", scope.ceiling, "Enumeration budget")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) return cmd_parse(formula_path, opt);
    if (eval_cmd->parsed()) return cmd_eval(model_path, formula_path, at, opt);
    if (equiv_cmd->parsed())
      return cmd_equiv(model_path, model_path2, horizon, opt);
    if (run_cmd->parsed()) return cmd_minsky_run(machine_path, max_steps, opt);
    if (translate_cmd->parsed())
      return cmd_translate(machine_path, out_path, opt);
    if (certify_cmd->parsed())
      return cmd_certify(machine_path, horizon, emit_model, emit_formula, opt);
    if (search_cmd->parsed())
      return cmd_search(formula_path, sat, valid, scope, opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error at [" << e.span().start << ", " << e.span().end
              << "): " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
