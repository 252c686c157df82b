#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "depthposet/complex_io.hpp"
#include "depthposet/errors.hpp"
#include "depthposet/experiments.hpp"
#include "depthposet/homotopy.hpp"
#include "depthposet/poset.hpp"
#include "depthposet/random_models.hpp"
#include "depthposet/reduction.hpp"

namespace dp = depthposet;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitMismatch = 3;

// Writes to the file, or to stdout for an empty path.
template <class Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dp::Error(dp::ErrorCode::ParseError, "cannot write '" + path + "'");
  write(out);
}

std::vector<dp::BirthDeathPair> pairs_by_death(const dp::ReductionState& state) {
  auto pairs = state.pairs();
  std::sort(pairs.begin(), pairs.end(),
            [&](const auto& l, const auto& r) { return state.pos(l.death) < state.pos(r.death); });
  return pairs;
}

json pairs_json(const dp::LefschetzComplex& K, const std::vector<dp::BirthDeathPair>& pairs) {
  json out = json::array();
  for (const auto& p : pairs)
    out.push_back({{"birth", K.cell(p.birth).id}, {"death", K.cell(p.death).id}, {"degree", p.degree}});
  return out;
}

json arcs_json(const dp::PairRelation& rel) {
  json out = json::array();
  for (const auto& [u, v] : rel.arcs()) out.push_back({u, v});
  return out;
}

std::string pair_label(const dp::LefschetzComplex& K, const dp::BirthDeathPair& p) {
  return "(" + K.cell(p.birth).id + "," + K.cell(p.death).id + ")";
}

void write_dot(std::ostream& out, const dp::LefschetzComplex& K, const dp::PairRelation& rel) {
  out << "digraph depth_poset {\n";
  for (std::size_t i = 0; i < rel.size(); ++i)
    out << "  n" << i << " [label=\"" << pair_label(K, rel.node(i)) << "\"];\n";
  for (const auto& [u, v] : rel.arcs()) out << "  n" << u << " -> n" << v << ";\n";
  out << "}\n";
}

std::string optional_int(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

std::vector<int> default_n_values(int d) {
  switch (d) {
    case 1: return {8, 16, 32, 64};
    case 2: return {4, 6, 8, 10, 12};
    default: return {2, 3, 4, 5};
  }
}

struct Options {
  std::optional<int> n;
  std::vector<int> n_values;
  int d = 2;
  std::uint64_t seed = 0;
  std::size_t repeats = 10;
  std::string out;
  bool verify = false;
  bool verify_deep = false;
  std::size_t jobs = 1;
  std::string complex, filter, f0, f1, trace, events, dot;
  std::optional<std::string> stats;
  bool no_fixture = false;
};

dp::ExperimentConfig config_from(const Options& o, std::vector<int> fallback_n) {
  dp::ExperimentConfig c;
  c.d = o.d;
  c.n_values = o.n_values.empty() ? std::move(fallback_n) : o.n_values;
  c.repeats = o.repeats;
  c.seed = o.seed;
  c.verify = o.verify || o.verify_deep;
  c.verify_deep = o.verify_deep;
  c.out_dir = o.out.empty() ? "." : o.out;
  c.jobs = o.jobs;
  return c;
}

int cmd_gen_torus(const Options& o) {
  const auto torus = dp::cubical_torus(*o.n, o.d);
  emit(o.out, [&](std::ostream& out) { dp::write_complex(out, torus); });
  return 0;
}

int cmd_gen_filter(const Options& o) {
  const auto torus = dp::cubical_torus(*o.n, o.d);
  const auto filter = dp::random_torus_filter(torus, o.seed);
  emit(o.out, [&](std::ostream& out) { dp::write_filter(out, torus, filter); });
  return 0;
}

int cmd_reduce(const Options& o) {
  const auto K = dp::load_complex(o.complex);
  const auto f = dp::load_filter(o.filter, K);
  const auto state = dp::reduce(K, f.order);
  const auto pairs = pairs_by_death(state);
  json doc;
  doc["pairs"] = pairs_json(K, pairs);
  doc["death_relation"] = arcs_json(dp::death_relation(pairs, state.u1, state.order));
  doc["birth_relation"] = arcs_json(dp::birth_relation(pairs, state.u2, state.order));
  emit(o.out, [&](std::ostream& out) { out << doc.dump() << '\n'; });
  return 0;
}

int cmd_depth(const Options& o) {
  const auto K = dp::load_complex(o.complex);
  const auto f = dp::load_filter(o.filter, K);
  const auto state = dp::reduce(K, f.order);
  const auto poset = dp::depth_poset(state).restricted_to(pairs_by_death(state));
  const auto reduction = dp::transitive_reduction(poset);
  json doc;
  doc["pairs"] = pairs_json(K, poset.nodes());
  doc["arcs"] = arcs_json(poset);
  doc["reduction"] = arcs_json(reduction);
  emit(o.out, [&](std::ostream& out) { out << doc.dump() << '\n'; });

  if (o.stats) {
    const auto stats = dp::poset_stats(poset);
    const std::string n = optional_int(o.n), d = o.n ? std::to_string(o.d) : "";
    emit(*o.stats, [&](std::ostream& out) {
      out << "n,d,p,nodes,arcs_closure,arcs_reduction,components,min_nodes,max_nodes,height,cycles\n";
      auto row = [&](const dp::DegreeStats& s) {
        out << n << ',' << d << ',' << (s.degree ? std::to_string(*s.degree) : "all") << ',' << s.nodes << ','
            << s.arcs_closure << ',' << s.arcs_reduction << ',' << s.components << ',' << s.min_nodes << ','
            << s.max_nodes << ',' << s.height << ',' << s.cycles << '\n';
      };
      for (const auto& s : stats.per_degree) row(s);
      row(stats.total);
    });
  }
  if (!o.dot.empty()) emit(o.dot, [&](std::ostream& out) { write_dot(out, K, reduction); });
  return 0;
}

int cmd_homotopy(const Options& o) {
  const auto K = dp::load_complex(o.complex);
  const auto f0 = dp::load_filter(o.f0, K);
  const auto f1 = dp::load_filter(o.f1, K);
  const bool verify = o.verify || o.verify_deep;
  const auto run = dp::run_homotopy(K, f0, f1, {verify, o.verify_deep, !o.trace.empty()});
  emit(o.events, [&](std::ostream& out) { dp::write_events_csv(out, K, run.events); });
  if (!o.trace.empty()) emit(o.trace, [&](std::ostream& out) { dp::write_trace_csv(out, K, run.trace); });

  const auto& s = run.summary;
  std::cout << "events " << s.events << ", switches BB " << s.switches_bb << " DD " << s.switches_dd << " BD "
            << s.switches_bd << "\n";
  if (!verify) return 0;
  for (const auto& ev : run.events)
    for (const auto& c : ev.checks)
      if (!c.holds) std::cerr << "event " << ev.index << " " << dp::to_string(ev.label) << ": " << c.name << "\n";
  std::cout << "failed checks " << s.failed_checks << "\n";
  return s.failed_checks == 0 ? 0 : kExitMismatch;
}

int cmd_static_stats(const Options& o) {
  const auto config = config_from(o, default_n_values(o.d));
  const auto result = dp::experiment_static(config);
  std::cout << result.rows.size() << " rows written to " << config.out_dir << "\n";
  return 0;
}

int cmd_homotopy_stats(const Options& o) {
  const auto config = config_from(o, default_n_values(o.d));
  const auto result = dp::experiment_homotopy(config);
  std::size_t events = 0;
  for (const auto& t : result.trials) events += t.summary.events;
  std::cout << result.trials.size() << " homotopies, " << events << " events written to " << config.out_dir << "\n";
  if (!config.verify) return 0;
  std::cout << "failed checks " << result.failed_checks() << " (see homotopy_failures.csv)\n";
  return result.failed_checks() == 0 ? 0 : kExitMismatch;
}

int cmd_oracle_check(const Options& o) {
  const auto config = config_from(o, {2, 3});
  const auto report = dp::oracle_check(config, !o.no_fixture);
  for (const auto& m : report.mismatches) std::cerr << "mismatch: " << m << "\n";
  std::cout << report.instances << " instances, " << report.mismatches.size() << " mismatches\n";
  return report.ok() ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Depth posets of filtered Lefschetz complexes"};
  app.require_subcommand(1);
  Options o;

  auto add_n = [&](CLI::App* cmd) { cmd->add_option("--n", o.n, "Torus side length")->required(); };
  auto add_out = [&](CLI::App* cmd, const char* what) { cmd->add_option("--out", o.out, what); };
  auto add_batch = [&](CLI::App* cmd) {
    cmd->add_option("--n", o.n_values, "Side lengths, comma separated or repeated")->delimiter(',');
    cmd->add_option("--d", o.d, "Torus dimension")->check(CLI::Range(1, 3));
    cmd->add_option("--seed", o.seed, "Seed of the first trial; trial r uses seed + r");
    cmd->add_option("--repeats", o.repeats, "Trials per n");
    cmd->add_option("--jobs", o.jobs, "Worker threads");
  };

  auto* gen_torus = app.add_subcommand("gen-torus", "Write the cubical torus K(n, d)");
  add_n(gen_torus);
  gen_torus->add_option("--d", o.d, "Torus dimension")->required();
  add_out(gen_torus, "Complex file (stdout if omitted)");

  auto* gen_filter = app.add_subcommand("gen-filter", "Write a random filter on K(n, d)");
  add_n(gen_filter);
  gen_filter->add_option("--d", o.d, "Torus dimension")->required();
  gen_filter->add_option("--seed", o.seed, "Random seed");
  add_out(gen_filter, "Filter file (stdout if omitted)");

  auto* reduce = app.add_subcommand("reduce", "Birth-death pairs and the death and birth relations as JSON");
  reduce->add_option("--complex", o.complex)->required();
  reduce->add_option("--filter", o.filter)->required();
  add_out(reduce, "JSON file (stdout if omitted)");

  auto* depth = app.add_subcommand("depth", "Depth poset as JSON, with optional statistics and DOT export");
  depth->add_option("--complex", o.complex)->required();
  depth->add_option("--filter", o.filter)->required();
  add_out(depth, "JSON file (stdout if omitted)");
  depth->add_option("--stats", o.stats, "Statistics CSV (stdout if no file is given)")->expected(0, 1);
  depth->add_option("--dot", o.dot, "DOT file of the transitive reduction");
  depth->add_option("--n", o.n, "n column of the statistics");
  depth->add_option("--d", o.d, "d column of the statistics");

  auto* homotopy = app.add_subcommand("homotopy", "Straight-line homotopy between two filters");
  homotopy->add_option("--complex", o.complex)->required();
  homotopy->add_option("--f0", o.f0)->required();
  homotopy->add_option("--f1", o.f1)->required();
  homotopy->add_option("--events", o.events, "Events CSV")->required();
  homotopy->add_option("--trace", o.trace, "Vineyard trace CSV");
  homotopy->add_flag("--verify", o.verify, "Check anchors and set equations at every event");
  homotopy->add_flag("--verify-deep", o.verify_deep, "Also label every event on the prepared complex");

  auto* static_stats = app.add_subcommand("static-stats", "Depth poset statistics on random tori");
  add_batch(static_stats);
  add_out(static_stats, "Output directory");

  auto* homotopy_stats = app.add_subcommand("homotopy-stats", "Transposition statistics of random homotopies");
  add_batch(homotopy_stats);
  add_out(homotopy_stats, "Output directory");
  homotopy_stats->add_flag("--verify", o.verify, "Check anchors and set equations at every event");
  homotopy_stats->add_flag("--verify-deep", o.verify_deep, "Also label every event on the prepared complex");

  auto* oracle = app.add_subcommand("oracle-check", "Compare the depth poset with the brute-force oracle");
  add_batch(oracle);
  oracle->add_flag("--no-fixture", o.no_fixture, "Skip the built-in small fixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  }

  try {
    if (*gen_torus) return cmd_gen_torus(o);
    if (*gen_filter) return cmd_gen_filter(o);
    if (*reduce) return cmd_reduce(o);
    if (*depth) return cmd_depth(o);
    if (*homotopy) return cmd_homotopy(o);
    if (*static_stats) return cmd_static_stats(o);
    if (*homotopy_stats) return cmd_homotopy_stats(o);
    if (*oracle) return cmd_oracle_check(o);
  } catch (const dp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == dp::ErrorCode::MismatchFound ? kExitMismatch : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
