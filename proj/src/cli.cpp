#include <pfilter/cli.hpp>
#include <pfilter/families.hpp>
#include <pfilter/filter_io.hpp>
#include <pfilter/minimize.hpp>
#include <pfilter/nfa_io.hpp>
#include <pfilter/product.hpp>
#include <pfilter/reductions.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace pfilter::cli {

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string braces(const std::vector<std::string>& parts) {
  return "{" + join(parts, ",") + "}";
}

std::string word_text(const std::vector<std::string>& word) {
  if (word.empty()) return "ε";
  bool single_chars = true;
  for (const auto& y : word) single_chars = single_chars && y.size() == 1;
  return join(word, single_chars ? "" : ",");
}

// Where a subcommand writes its main result.
struct Sink {
  std::string path;

  void write(std::ostream& out, const std::string& text) const {
    if (path.empty() || path == "-") {
      out << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::Format, "cannot write '" + path + "'");
    file << text;
  }
};

struct BudgetOptions {
  std::string mode = "nondet";
  std::size_t max_k = 0;
  double time_limit = 300;
  std::uint64_t candidate_cap = 20'000'000;
  std::size_t state_cap = kDefaultStateCap;
  int jobs = 0;
  bool serial = false;

  SearchBudget budget() const {
    SearchBudget b;
    b.max_states = max_k;
    b.candidate_cap = candidate_cap;
    b.time_cap = std::chrono::milliseconds(static_cast<std::int64_t>(time_limit * 1000));
    b.determinize_cap = state_cap;
    b.execution = serial ? Execution::Serial : Execution::Parallel;
    b.jobs = jobs;
    return b;
  }
};

void add_budget_options(CLI::App* cmd, BudgetOptions& o, bool with_max_k) {
  if (with_max_k) {
    cmd->add_option("--max-k", o.max_k, "Largest size to try (0: no limit)");
  }
  cmd->add_option("--time-limit", o.time_limit, "Wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--candidate-cap", o.candidate_cap,
                  "Maximum number of search nodes")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--state-cap", o.state_cap,
                  "Maximum states created by determinization")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", o.jobs, "OpenMP threads for the search (0: default)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--serial", o.serial, "Use the serial search");
}

std::string verdict_text(const SimulationVerdict& v) {
  std::ostringstream s;
  if (v.holds) {
    s << "holds\n";
    return s.str();
  }
  s << "fails\n";
  s << "kind: " << to_string(*v.failure) << "\n";
  s << "witness: " << word_text(*v.witness) << "\n";
  if (v.color) s << "color: " << *v.color << "\n";
  return s.str();
}

std::vector<std::string> minimize_footer(const MinimizationResult& r,
                                         std::string_view mode) {
  return {"mode: " + std::string(mode),
          "size: " + std::to_string(r.size()),
          "lower_bound: " + std::to_string(r.lower_bound),
          std::string("proven_optimal: ") + (r.proven_optimal ? "true" : "false")};
}

std::string with_footer(const std::string& body,
                        const std::vector<std::string>& footer) {
  std::string out = body;
  for (const auto& line : footer) out += "# " + line + "\n";
  return out;
}

void report_stats(std::ostream& err, const SearchStats& stats) {
  err << "candidates: " << stats.candidates << "\n";
  err << "wall_seconds: " << std::fixed << std::setprecision(3)
      << stats.wall.count() << "\n";
}

int error_code(ErrorKind kind) {
  return kind == ErrorKind::CapExceeded || kind == ErrorKind::BudgetExhausted
             ? kBudget
             : kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Combinatorial filter toolkit: validation, tracing, output "
               "simulation, determinization and exact minimization",
               "pfilter"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough(false);

  Sink sink;
  auto with_output = [&](CLI::App* cmd) {
    cmd->add_option("-o,--output", sink.path, "Write the result to this file");
    return cmd;
  };

  std::string file;
  std::string file2;
  std::string word;
  std::size_t cap = kDefaultStateCap;

  auto* validate_cmd = app.add_subcommand("validate", "Check a filter file");
  validate_cmd->add_option("file", file, "Filter file")->required()->check(CLI::ExistingFile);

  auto* trace_cmd = app.add_subcommand("trace", "Trace a string through a filter");
  trace_cmd->add_option("string", word, "Observation string (\"\" for the empty string)")
      ->required();
  trace_cmd->add_option("file", file, "Filter file")->required()->check(CLI::ExistingFile);

  auto* det_cmd = with_output(app.add_subcommand("determinize", "Power set construction"));
  det_cmd->add_option("file", file, "Filter file")->required()->check(CLI::ExistingFile);
  det_cmd->add_option("--state-cap", cap, "Maximum number of subset states")
      ->check(CLI::PositiveNumber);

  auto* trim_cmd = with_output(app.add_subcommand("trim", "Drop unreachable states"));
  trim_cmd->add_option("file", file, "Filter file")->required()->check(CLI::ExistingFile);

  auto* sim_cmd = app.add_subcommand("check-sim", "Does F' output-simulate F?");
  sim_cmd->add_option("candidate", file, "F' (the simulating filter)")
      ->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("input", file2, "F (the filter being simulated)")
      ->required()->check(CLI::ExistingFile);

  BudgetOptions min_opts;
  auto* min_cmd = with_output(app.add_subcommand("minimize", "Exact minimization"));
  min_cmd->add_option("--mode", min_opts.mode, "nondet or det")
      ->check(CLI::IsMember({"nondet", "det"}));
  add_budget_options(min_cmd, min_opts, true);
  min_cmd->add_option("file", file, "Filter file")->required()->check(CLI::ExistingFile);

  BudgetOptions dec_opts;
  std::size_t k = 0;
  auto* dec_cmd = with_output(
      app.add_subcommand("decide", "Is there a simulating filter with at most k states?"));
  dec_cmd->add_option("--k", k, "State bound")->required()->check(CLI::PositiveNumber);
  dec_cmd->add_option("--mode", dec_opts.mode, "nondet or det")
      ->check(CLI::IsMember({"nondet", "det"}));
  add_budget_options(dec_cmd, dec_opts, false);
  dec_cmd->add_option("file", file, "Filter file")->required()->check(CLI::ExistingFile);

  auto* gen_cmd = app.add_subcommand("gen", "Generate a known filter");
  gen_cmd->require_subcommand(1);
  std::size_t rows = 1;
  bool minimizer = false;
  auto* gen_prime = with_output(gen_cmd->add_subcommand("prime-family", "Prime-cycle family"));
  gen_prime->add_option("--rows", rows, "Number of rows r")->required()
      ->check(CLI::PositiveNumber);
  gen_prime->add_flag("--minimizer", minimizer, "Emit the deterministic minimizer");
  std::string which;
  auto* gen_fig3 = with_output(gen_cmd->add_subcommand("fig3", "Ten-state filter or its nine-state minimizer"));
  gen_fig3->add_option("which", which, "input or minimizer")->required()
      ->check(CLI::IsMember({"input", "minimizer"}));
  auto* gen_donut = with_output(gen_cmd->add_subcommand("donut", "Two agents on a ring of regions"));

  auto* red_cmd = app.add_subcommand("reduce", "Build a filter from a universality question");
  red_cmd->require_subcommand(1);
  std::vector<std::string> files;
  auto* red_nfa = with_output(red_cmd->add_subcommand("nfa-universality", "From one NFA"));
  red_nfa->add_option("nfa", file, "Automaton file")->required()->check(CLI::ExistingFile);
  auto* red_dfa = with_output(red_cmd->add_subcommand("dfa-union", "From a family of DFAs"));
  red_dfa->add_option("dfas", files, "Automaton files")->required()->check(CLI::ExistingFile);

  auto* dot_cmd = with_output(app.add_subcommand("export-dot", "Graphviz rendering"));
  dot_cmd->add_option("file", file, "Filter file")->required()->check(CLI::ExistingFile);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kOk;
    err << "error\tUsage\t" << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*validate_cmd) {
      const Filter f = load_filter(file);
      out << "valid\n";
      out << "states: " << f.num_states() << "\n";
      out << "observations: " << f.num_symbols() << "\n";
      out << "colors: " << f.num_colors() << "\n";
      out << "deterministic: " << (is_deterministic(f) ? "true" : "false") << "\n";
      return kOk;
    }
    if (*trace_cmd) {
      const Filter f = load_filter(file);
      const TraceResult t = reached_states(f, word);
      std::vector<std::string> reached;
      for_each_bit(t.reached, [&](std::size_t v) {
        reached.push_back(f.state_name(static_cast<StateId>(v)));
      });
      out << "reached=" << braces(reached) << "\n";
      if (t.crashed()) {
        out << "crash\n";
      } else {
        std::vector<std::string> colors;
        for_each_bit(f.colors_of(t.reached), [&](std::size_t c) {
          colors.push_back(f.color_name(static_cast<Color>(c)));
        });
        out << "colors=" << braces(colors) << "\n";
      }
      return kOk;
    }
    if (*det_cmd) {
      const Filter f = trim(load_filter(file));
      sink.write(out, emit_filter(determinize(f, cap).filter));
      return kOk;
    }
    if (*trim_cmd) {
      sink.write(out, emit_filter(trim(load_filter(file))));
      return kOk;
    }
    if (*sim_cmd) {
      const Filter fp = load_filter(file);
      const Filter f = load_filter(file2);
      const SimulationVerdict v = output_simulates(fp, f);
      out << verdict_text(v);
      return v.holds ? kOk : kNegative;
    }
    if (*min_cmd) {
      const Filter f = load_filter(file);
      const SearchBudget budget = min_opts.budget();
      const MinimizationResult r = min_opts.mode == "det" ? minimize_det(f, budget)
                                                          : minimize_nondet(f, budget);
      sink.write(out, with_footer(emit_filter(r.minimizer),
                                  minimize_footer(r, min_opts.mode)));
      report_stats(err, r.stats);
      return r.proven_optimal ? kOk : kBudget;
    }
    if (*dec_cmd) {
      const Filter f = load_filter(file);
      const SearchBudget budget = dec_opts.budget();
      const SizeDecision d = dec_opts.mode == "det" ? decide_det_size_k(f, k, budget)
                                                    : decide_size_k(f, k, budget);
      report_stats(err, d.stats);
      if (d.answer == Decision::Yes) {
        sink.write(out, with_footer(emit_filter(*d.witness),
                                    {"answer: Yes", "k: " + std::to_string(k)}));
        return kOk;
      }
      out << to_string(d.answer) << "\n";
      return d.answer == Decision::No ? kNegative : kBudget;
    }
    if (*gen_prime) {
      const PrimeFamilyParams p = PrimeFamilyParams::of(rows);
      const Filter f = minimizer ? prime_family_minimizer(rows) : prime_family(rows);
      const std::vector<std::string> header = {
          std::string(minimizer ? "prime-family minimizer" : "prime-family"),
          "rows: " + std::to_string(rows),
          "n: " + std::to_string(p.n()) + ", z: " + std::to_string(p.z())};
      sink.write(out, emit_filter(f, header));
      return kOk;
    }
    if (*gen_fig3) {
      const Filter f = which == "input" ? fig3_input() : fig3_minimizer();
      sink.write(out, emit_filter(f));
      return kOk;
    }
    if (*gen_donut) {
      sink.write(out, emit_filter(donut_world()));
      return kOk;
    }
    if (*red_nfa) {
      const ReductionInstance inst = from_nfa_universality(load_nfa(file));
      const std::vector<std::string> header = {
          "reduction: nfa-universality", "source: " + inst.source,
          "fresh symbol: " + inst.fresh_symbol};
      sink.write(out, emit_filter(inst.filter, header));
      return kOk;
    }
    if (*red_dfa) {
      std::vector<Nfa> dfas;
      for (const auto& path : files) dfas.push_back(load_nfa(path));
      const ReductionInstance inst = from_dfa_union(dfas);
      const std::vector<std::string> header = {
          "reduction: dfa-union", "source: " + inst.source,
          "fresh symbol: " + inst.fresh_symbol};
      sink.write(out, emit_filter(inst.filter, header));
      return kOk;
    }
    if (*dot_cmd) {
      sink.write(out, to_dot(load_filter(file)));
      return kOk;
    }
  } catch (const Error& e) {
    err << "error\t" << to_string(e.kind()) << "\t" << e.what() << "\n";
    return error_code(e.kind());
  } catch (const std::exception& e) {
    err << "error\tInternal\t" << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace pfilter::cli
