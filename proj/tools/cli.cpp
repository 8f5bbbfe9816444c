#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mwis/alg1.hpp"
#include "mwis/io.hpp"
#include "mwis/report.hpp"
#include "mwis/separators.hpp"

namespace fs = std::filesystem;

namespace mwis::cli {

namespace {

// Thrown for bad user input that is not a graph-file parse error.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = s.find(sep, pos);
    out.push_back(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

template <typename T>
T number_or_throw(std::string_view s, std::string_view what) {
  auto v = detail::parse_number<T>(s);
  if (!v) throw InputError("bad " + std::string(what) + " '" + std::string(s) + "'");
  return *v;
}

double probability_or_throw(std::string_view s) {
  // from_chars for double is not available everywhere in GCC 11's library.
  std::string copy(s);
  std::size_t used = 0;
  double p = 0;
  try {
    p = std::stod(copy, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != copy.size() || !(p >= 0.0 && p <= 1.0)) throw InputError("bad edge probability '" + copy + "'");
  return p;
}

struct CommonFlags {
  std::string assert_level;
  std::uint64_t seed = 0;
  std::string stats_path;
  bool witness = false;
  std::optional<int> k_hint;
  unsigned parallel = 1;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--assert", f.assert_level, "Assertion level: off, fair or paranoid")
      ->check(CLI::IsMember({"off", "fair", "paranoid"}));
  cmd->add_option("--seed", f.seed, "Seed recorded in the report (and used by generators)");
  cmd->add_option("--stats", f.stats_path, "Also write run statistics to this file");
  cmd->add_flag("--witness", f.witness, "Include the independent set in the report");
  cmd->add_option("--k-hint", f.k_hint, "Assert the input is P_k-free; enables bound checks")->check(CLI::PositiveNumber);
  cmd->add_option("--parallel", f.parallel, "Worker threads for independent branches")->check(CLI::PositiveNumber);
}

AssertLevel level_of(const CommonFlags& f) {
  return f.assert_level.empty() ? default_assert_level() : parse_assert_level(f.assert_level).value();
}

SolverOptions options_of(const CommonFlags& f) {
  SolverOptions o;
  o.assert_level = level_of(f);
  o.k_hint = f.k_hint;
  o.threads = f.parallel;
  return o;
}

void write_stats_file(const std::string& path, const SolveResult& r, AssertLevel level) {
  if (path.empty()) return;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path);
  Json j;
  j["format_version"] = kReportFormatVersion;
  j["stats"] = stats_json(r.stats);
  j["assertions"] = assertions_json(level, r.stats);
  os << dump_report(j);
}

int finish_solve(std::string_view command, const SolveResult& r, const CommonFlags& f, AssertLevel level,
                 std::ostream& out) {
  Json j = solve_report(command, r, level, {f.witness, true});
  j["seed"] = f.seed;
  out << dump_report(j);
  write_stats_file(f.stats_path, r, level);
  return level != AssertLevel::off && r.stats.total_violations() > 0 ? kViolation : kOk;
}

void print_error(std::ostream& err, std::string_view kind, const std::string& message,
                 std::optional<std::size_t> line = std::nullopt) {
  Json j;
  j["error"] = kind;
  if (line) j["line"] = *line;
  j["message"] = message;
  err << j.dump() << "\n";
}

std::vector<fs::path> corpus_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

GeneratorSpec parse_generator_spec(std::string_view text) {
  auto parts = split(text, ':');
  if (parts.size() < 2) throw InputError("generator spec must look like kind:size[:key=value]");
  GeneratorSpec spec;
  const std::string_view kind = parts[0];
  if (kind == "gnp") spec.kind = GeneratorKind::random_gnp;
  else if (kind == "cograph") spec.kind = GeneratorKind::cograph;
  else if (kind == "pk-free") spec.kind = GeneratorKind::pk_free_rejection;
  else if (kind == "h-free") spec.kind = GeneratorKind::h_free_rejection;
  else if (kind == "path") spec.kind = GeneratorKind::path;
  else if (kind == "cycle") spec.kind = GeneratorKind::cycle;
  else if (kind == "star") spec.kind = GeneratorKind::star;
  else if (kind == "complete") spec.kind = GeneratorKind::complete;
  else throw InputError("unknown generator kind '" + std::string(kind) + "'");
  spec.size = number_or_throw<std::size_t>(parts[1], "size");
  if (spec.size > 4096) throw InputError("generator size too large");

  for (std::size_t i = 2; i < parts.size(); ++i) {
    auto eq = parts[i].find('=');
    if (eq == std::string_view::npos) throw InputError("expected key=value, got '" + std::string(parts[i]) + "'");
    std::string_view key = parts[i].substr(0, eq);
    std::string_view val = parts[i].substr(eq + 1);
    if (key == "p") spec.edge_probability = probability_or_throw(val);
    else if (key == "k") spec.k = number_or_throw<int>(val, "k");
    else if (key == "pattern") spec.pattern = parse_pattern_expression(val);
    else if (key == "seed") spec.seed = number_or_throw<std::uint64_t>(val, "seed");
    else if (key == "wmin") spec.min_weight = number_or_throw<Weight>(val, "wmin");
    else if (key == "wmax") spec.max_weight = number_or_throw<Weight>(val, "wmax");
    else if (key == "attempts") spec.attempt_cap = number_or_throw<std::size_t>(val, "attempts");
    else if (key == "mode" && val == "edge") spec.rejection = RejectionMode::per_edge;
    else if (key == "mode" && val == "graph") spec.rejection = RejectionMode::whole_graph;
    else throw InputError("unknown generator key '" + std::string(key) + "'");
  }
  if (spec.min_weight < 0 || spec.max_weight < spec.min_weight) throw InputError("need 0 <= wmin <= wmax");
  if (spec.kind == GeneratorKind::h_free_rejection && !spec.pattern) throw InputError("h-free needs pattern=<expr>");
  if (spec.kind == GeneratorKind::pk_free_rejection && spec.k < 1) throw InputError("k must be >= 1");
  if (spec.kind == GeneratorKind::cycle && spec.size < 3) throw InputError("cycle needs size >= 3");
  return spec;
}

ComponentOracle parse_oracle_spec(std::string_view text) {
  if (text == "bruteforce") return make_bruteforce_oracle();
  if (text.rfind("bruteforce:", 0) == 0) {
    auto cap = number_or_throw<std::size_t>(text.substr(11), "brute-force cap");
    if (cap > kBruteForceHardCap) throw InputError("brute-force cap above " + std::to_string(kBruteForceHardCap));
    return make_bruteforce_oracle(cap);
  }
  if (text.rfind("pk:", 0) == 0) {
    int k = number_or_throw<int>(text.substr(3), "k");
    if (k < 1) throw InputError("k must be >= 1");
    return make_pk_oracle(k);
  }
  throw InputError("unknown oracle '" + std::string(text) + "' (use bruteforce or pk:<k>)");
}

Graph load_pattern(const std::string& arg) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) {
    Graph h = read_graph_file(arg).graph;
    if (h.empty()) throw InputError("pattern graph is empty");
    return h;
  }
  try {
    return parse_pattern_expression(arg);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact maximum weight independent set solver", "mwis"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string file;

  auto* solve = app.add_subcommand("solve", "Solve a P_k-free instance with ALG1");
  solve->add_option("file", file, "Graph file")->required();
  add_common(solve, flags);

  auto* hfree = app.add_subcommand("solve-hfree", "Solve an H-free instance with ALG2");
  std::string pattern;
  std::vector<std::string> oracle_specs;
  bool h_free_hint = false;
  hfree->add_option("file", file, "Graph file")->required();
  hfree->add_option("--pattern", pattern, "Pattern expression (e.g. 2K2, P4+fork) or graph file")->required();
  hfree->add_option("--oracle", oracle_specs, "Oracle per component: bruteforce or pk:<k> (one value applies to all)");
  hfree->add_flag("--h-free", h_free_hint, "Assert the input is H-free; enables bound checks");
  add_common(hfree, flags);

  auto* sep = app.add_subcommand("separator", "Print a balanced separator core");
  int sep_i = 1;
  sep->add_option("file", file, "Graph file")->required();
  sep->add_option("--i", sep_i, "Balance parameter i (components of G - N[X] have at most n/2^i vertices)")
      ->check(CLI::Range(1, 62));

  auto* check = app.add_subcommand("check-pkfree", "Test whether a graph has no induced P_k");
  int check_k = 0;
  check->add_option("k", check_k, "Path length in vertices")->required()->check(CLI::PositiveNumber);
  check->add_option("file", file, "Graph file")->required();

  auto* gen = app.add_subcommand("generate", "Generate graphs, e.g. pk-free:40:k=5:p=0.9");
  std::string gen_spec, gen_out, gen_dir;
  std::size_t gen_count = 1;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("spec", gen_spec, "kind:size[:key=value...]")->required();
  gen->add_option("--out", gen_out, "Write to this file instead of standard output");
  gen->add_option("--out-dir", gen_dir, "Write --count files into this directory");
  gen->add_option("--count", gen_count, "Number of graphs (seeds seed, seed+1, ...)")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Base seed (overrides seed= in the spec)");

  auto* bench = app.add_subcommand("bench", "Solve every graph file in a directory");
  std::string bench_dir;
  bool bench_timing = false;
  bench->add_option("dir", bench_dir, "Corpus directory")->required();
  bench->add_flag("--timing", bench_timing, "Include wall-clock times (makes output nondeterministic)");
  add_common(bench, flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return kInputError;
  }

  try {
    if (*solve) {
      ParsedGraph in = read_graph_file(file);
      SolverOptions o = options_of(flags);
      SolveResult r = solve_pkfree(in.graph, in.weights, o);
      return finish_solve("solve", r, flags, o.assert_level, out);
    }

    if (*hfree) {
      ParsedGraph in = read_graph_file(file);
      PatternGraph h = PatternGraph::from_graph(load_pattern(pattern));
      std::vector<ComponentOracle> oracles;
      if (oracle_specs.empty()) oracle_specs.push_back("bruteforce");
      if (oracle_specs.size() == 1) oracle_specs.resize(h.component_count(), oracle_specs.front());
      if (oracle_specs.size() != h.component_count())
        throw InputError("pattern has " + std::to_string(h.component_count()) + " components but " +
                         std::to_string(oracle_specs.size()) + " oracles were given");
      for (const auto& s : oracle_specs) oracles.push_back(parse_oracle_spec(s));
      SolverOptions o = options_of(flags);
      o.h_free_hint = h_free_hint;
      SolveResult r = solve_hfree(h, in.graph, in.weights, oracles, o);
      return finish_solve("solve-hfree", r, flags, o.assert_level, out);
    }

    if (*sep) {
      ParsedGraph in = read_graph_file(file);
      SeparatorCore core = balanced_separator_core(in.graph, sep_i);
      bool ok = verify_balanced(in.graph, closed_neighborhood(in.graph, core.core), core.balance_bound());
      Json j = separator_report(core, ok);
      j["neighborhood"] = ids_json(closed_neighborhood(in.graph, core.core));
      out << dump_report(j);
      return kOk;
    }

    if (*check) {
      ParsedGraph in = read_graph_file(file);
      auto path = find_induced_path(in.graph, check_k);
      Json j;
      j["format_version"] = kReportFormatVersion;
      j["command"] = "check-pkfree";
      j["k"] = check_k;
      j["pk-free"] = !path.has_value();
      if (path) {
        Json p = Json::array();
        for (VertexId v : *path) p.push_back(v + 1);
        j["induced_path"] = std::move(p);
      }
      out << dump_report(j);
      return kOk;
    }

    if (*gen) {
      GeneratorSpec spec = parse_generator_spec(gen_spec);
      if (gen_seed) spec.seed = *gen_seed;
      if (!gen_out.empty() && !gen_dir.empty()) throw InputError("use either --out or --out-dir");
      if (gen_count > 1 && gen_dir.empty()) throw InputError("--count > 1 needs --out-dir");
      if (gen_dir.empty()) {
        GeneratedGraph g = generate(spec);
        std::string text = emit_graph(g.graph, g.weights);
        if (gen_out.empty()) {
          out << text;
        } else {
          std::ofstream os(gen_out, std::ios::binary);
          if (!os) throw InputError("cannot write " + gen_out);
          os << text;
        }
        return kOk;
      }
      fs::create_directories(gen_dir);
      Json files = Json::array();
      const std::uint64_t base = spec.seed;
      const std::size_t width = std::max<std::size_t>(4, std::to_string(gen_count - 1).size());
      for (std::size_t i = 0; i < gen_count; ++i) {
        spec.seed = base + i;
        GeneratedGraph g = generate(spec);
        std::string idx = std::to_string(i);
        idx.insert(0, width - idx.size(), '0');
        fs::path p = fs::path(gen_dir) / ("g" + idx + ".graph");
        std::ofstream os(p, std::ios::binary);
        if (!os) throw InputError("cannot write " + p.string());
        os << emit_graph(g.graph, g.weights);
        files.push_back(Json{{"file", p.filename().string()}, {"seed", spec.seed},
                             {"n", g.graph.num_vertices()}, {"m", g.graph.num_edges()}});
      }
      Json j;
      j["format_version"] = kReportFormatVersion;
      j["command"] = "generate";
      j["spec"] = gen_spec;
      j["files"] = std::move(files);
      out << dump_report(j);
      return kOk;
    }

    if (*bench) {
      SolverOptions o = options_of(flags);
      Json rows = Json::array();
      std::uint64_t violations = 0;
      for (const auto& path : corpus_files(bench_dir)) {
        Json row;
        row["file"] = path.filename().string();
        try {
          ParsedGraph in = read_graph_file(path.string());
          auto t0 = std::chrono::steady_clock::now();
          SolveResult r = solve_pkfree(in.graph, in.weights, o);
          auto t1 = std::chrono::steady_clock::now();
          row["n"] = in.graph.num_vertices();
          row["m"] = in.graph.num_edges();
          row["weight"] = r.weight;
          row["calls"] = r.stats.calls;
          row["branches"] = r.stats.branches;
          row["separators_added"] = r.stats.separators_added;
          row["max_depth"] = r.stats.max_depth;
          row["violations"] = r.stats.total_violations();
          if (bench_timing) row["elapsed_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
          violations += r.stats.total_violations();
        } catch (const std::exception& e) {
          row["error"] = e.what();
        }
        rows.push_back(std::move(row));
      }
      Json j;
      j["format_version"] = kReportFormatVersion;
      j["command"] = "bench";
      j["assert_level"] = to_string(o.assert_level);
      j["results"] = std::move(rows);
      j["violations"] = violations;
      out << dump_report(j);
      return o.assert_level != AssertLevel::off && violations > 0 ? kViolation : kOk;
    }
  } catch (const ParseError& e) {
    print_error(err, to_string(e.kind()), e.what(), e.line());
    return kInputError;
  } catch (const GenerationFailed& e) {
    print_error(err, "generation-failed", e.what());
    return kInputError;
  } catch (const OracleCapExceeded& e) {
    print_error(err, "oracle-cap-exceeded", e.what());
    return kInputError;
  } catch (const InvariantViolation& e) {
    print_error(err, "invariant-violation", e.what());
    return kViolation;
  } catch (const std::exception& e) {
    print_error(err, "input", e.what());
    return kInputError;
  }
  return kInputError;
}

}  // namespace mwis::cli
