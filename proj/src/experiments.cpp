#include "depthposet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "depthposet/errors.hpp"
#include "depthposet/fixtures.hpp"
#include "depthposet/random_models.hpp"
#include "depthposet/reduction.hpp"

namespace depthposet {

void validate(const ExperimentConfig& config) {
  if (config.repeats < 1) throw Error(ErrorCode::OutOfRange, "repeats must be at least 1");
  if (config.n_values.empty()) throw Error(ErrorCode::OutOfRange, "no n values given");
  if (config.jobs < 1) throw Error(ErrorCode::OutOfRange, "jobs must be at least 1");
  for (int n : config.n_values)
    if (n < 2) throw Error(ErrorCode::NTooSmall, "n = " + std::to_string(n) + " is below 2");
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(std::max<std::size_t>(jobs, 1), count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

struct Trial {
  int n;
  std::uint64_t seed;
};

std::vector<Trial> trials_of(const ExperimentConfig& config) {
  std::vector<Trial> out;
  for (int n : config.n_values)
    for (std::size_t r = 0; r < config.repeats; ++r) out.push_back({n, config.seed + r});
  return out;
}

std::ofstream open_output(const ExperimentConfig& config, const std::string& name) {
  std::filesystem::path dir(config.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + (dir / name).string() + "'");
  return out;
}

std::string degree_text(const std::optional<int>& p) { return p ? std::to_string(*p) : "all"; }

// Exact mean sum / count, rendered with 12 significant digits.
std::string mean_text(long long sum, std::size_t count) {
  if (count == 0) return "0";
  Rational q{mpz_class(static_cast<long>(sum)), mpz_class(static_cast<unsigned long>(count))};
  q.canonicalize();
  return format_decimal(q, 12);
}

std::string mean_text(std::size_t sum, std::size_t count) { return mean_text(static_cast<long long>(sum), count); }

void append_rows(std::vector<StaticRow>& rows, int n, int d, std::uint64_t seed, const char* relation,
                 const PosetStats& stats) {
  for (const auto& s : stats.per_degree) rows.push_back({n, d, seed, relation, s});
  rows.push_back({n, d, seed, relation, stats.total});
}

}  // namespace

// --- static --------------------------------------------------------------

StaticResult run_static(const ExperimentConfig& config) {
  validate(config);
  const auto trials = trials_of(config);
  std::map<int, LefschetzComplex> tori;
  for (int n : config.n_values)
    if (!tori.count(n)) tori.emplace(n, cubical_torus(n, config.d));

  std::vector<std::vector<StaticRow>> per_trial(trials.size());
  parallel_for(trials.size(), config.jobs, [&](std::size_t i) {
    const auto& t = trials[i];
    const auto& torus = tori.at(t.n);
    const auto state = reduce(torus, random_torus_filter(torus, t.seed).order);
    auto& rows = per_trial[i];
    append_rows(rows, t.n, config.d, t.seed, "depth", poset_stats(depth_poset(state)));
    append_rows(rows, t.n, config.d, t.seed, "dr", poset_stats(death_relation(state)));
    append_rows(rows, t.n, config.d, t.seed, "br", poset_stats(birth_relation(state)));
  });

  StaticResult out;
  for (auto& rows : per_trial) out.rows.insert(out.rows.end(), rows.begin(), rows.end());
  return out;
}

void write_static_rows(std::ostream& out, const StaticResult& result) {
  out << "n,d,seed,relation,p,nodes,arcs_closure,arcs_reduction,components,min_nodes,max_nodes,height,cycles\n";
  for (const auto& r : result.rows) {
    const auto& s = r.stats;
    out << r.n << ',' << r.d << ',' << r.seed << ',' << r.relation << ',' << degree_text(s.degree) << ',' << s.nodes
        << ',' << s.arcs_closure << ',' << s.arcs_reduction << ',' << s.components << ',' << s.min_nodes << ','
        << s.max_nodes << ',' << s.height << ',' << s.cycles << '\n';
  }
}

void write_static_means(std::ostream& out, const StaticResult& result) {
  struct Sum {
    std::size_t runs = 0, nodes = 0, arcs_closure = 0, arcs_reduction = 0, components = 0, min_nodes = 0,
                max_nodes = 0, height = 0;
    long long cycles = 0;
  };
  // rows per n: depth, dr, br; within each, degrees ascending then "all"
  auto relation_rank = [](const std::string& r) { return r == "depth" ? 0 : r == "dr" ? 1 : 2; };
  using Key = std::tuple<int, int, int, bool, int>;
  std::map<Key, Sum> sums;
  for (const auto& r : result.rows) {
    const auto& s = r.stats;
    Key key{r.n, r.d, relation_rank(r.relation), !s.degree.has_value(), s.degree.value_or(0)};
    auto& m = sums[key];
    ++m.runs;
    m.nodes += s.nodes;
    m.arcs_closure += s.arcs_closure;
    m.arcs_reduction += s.arcs_reduction;
    m.components += s.components;
    m.min_nodes += s.min_nodes;
    m.max_nodes += s.max_nodes;
    m.height += s.height;
    m.cycles += s.cycles;
  }
  static const char* kRelations[] = {"depth", "dr", "br"};
  out << "n,d,relation,p,runs,nodes,arcs_closure,arcs_reduction,components,min_nodes,max_nodes,height,cycles\n";
  for (const auto& [key, m] : sums) {
    const auto& [n, d, rel, total, p] = key;
    out << n << ',' << d << ',' << kRelations[rel] << ',' << (total ? std::string("all") : std::to_string(p)) << ','
        << m.runs << ',' << mean_text(m.nodes, m.runs) << ',' << mean_text(m.arcs_closure, m.runs) << ','
        << mean_text(m.arcs_reduction, m.runs) << ',' << mean_text(m.components, m.runs) << ','
        << mean_text(m.min_nodes, m.runs) << ',' << mean_text(m.max_nodes, m.runs) << ','
        << mean_text(m.height, m.runs) << ',' << mean_text(m.cycles, m.runs) << '\n';
  }
}

StaticResult experiment_static(const ExperimentConfig& config) {
  auto result = run_static(config);
  auto runs = open_output(config, "static_runs.csv");
  write_static_rows(runs, result);
  auto means = open_output(config, "static_means.csv");
  write_static_means(means, result);
  return result;
}

// --- homotopy ------------------------------------------------------------

std::size_t HomotopyResult::failed_checks() const {
  std::size_t total = 0;
  for (const auto& t : trials) total += t.failures.size();
  return total;
}

HomotopyResult run_homotopy_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto trials = trials_of(config);
  std::map<int, LefschetzComplex> tori;
  for (int n : config.n_values)
    if (!tori.count(n)) tori.emplace(n, cubical_torus(n, config.d));

  HomotopyResult out;
  out.trials.resize(trials.size());
  const HomotopyOptions options{config.verify, config.verify_deep, false};
  parallel_for(trials.size(), config.jobs, [&](std::size_t i) {
    const auto& t = trials[i];
    const auto& torus = tori.at(t.n);
    auto [f0, f1] = random_filter_pair(torus, t.seed);
    auto run = run_homotopy(torus, f0, f1, options);
    auto& trial = out.trials[i];
    trial.n = t.n;
    trial.d = config.d;
    trial.seed = t.seed;
    trial.summary = run.summary;
    for (const auto& ev : run.events) {
      auto& tally = trial.tallies[{ev.dim_low, ev.dim_high, ev.label, ev.switch_type}];
      ++tally.count;
      tally.arcs_changed_closure += ev.arcs_changed_closure;
      tally.arcs_changed_reduction += ev.arcs_changed_reduction;
      for (const auto& c : ev.checks)
        if (!c.holds) trial.failures.push_back({ev.index, ev.label, c.name});
    }
  });
  return out;
}

void write_homotopy_runs(std::ostream& out, const HomotopyResult& result) {
  out << "n,d,seed,events,switches_bb,switches_dd,switches_bd,failed_checks,final_order_matches_f1\n";
  for (const auto& t : result.trials) {
    const auto& s = t.summary;
    out << t.n << ',' << t.d << ',' << t.seed << ',' << s.events << ',' << s.switches_bb << ',' << s.switches_dd << ','
        << s.switches_bd << ',' << s.failed_checks << ',' << (s.final_order_matches_f1 ? 1 : 0) << '\n';
  }
}

void write_homotopy_counts(std::ostream& out, const HomotopyResult& result) {
  out << "n,d,seed,dim_low,dim_high,case,switch,count,arcs_changed_closure,arcs_changed_reduction\n";
  for (const auto& t : result.trials)
    for (const auto& [kind, tally] : t.tallies) {
      const auto& [lo, hi, label, type] = kind;
      out << t.n << ',' << t.d << ',' << t.seed << ',' << lo << ',' << hi << ',' << to_string(label) << ','
          << to_string(type) << ',' << tally.count << ',' << tally.arcs_changed_closure << ','
          << tally.arcs_changed_reduction << '\n';
    }
}

void write_homotopy_means(std::ostream& out, const HomotopyResult& result) {
  std::map<std::pair<int, int>, std::size_t> runs;
  std::map<std::tuple<int, int, EventKind>, EventTally> sums;
  for (const auto& t : result.trials) {
    ++runs[{t.n, t.d}];
    for (const auto& [kind, tally] : t.tallies) {
      auto& s = sums[{t.n, t.d, kind}];
      s.count += tally.count;
      s.arcs_changed_closure += tally.arcs_changed_closure;
      s.arcs_changed_reduction += tally.arcs_changed_reduction;
    }
  }
  out << "n,d,dim_low,dim_high,case,switch,events_per_run,mean_arcs_changed_closure,mean_arcs_changed_reduction\n";
  for (const auto& [key, s] : sums) {
    const auto& [n, d, kind] = key;
    const auto& [lo, hi, label, type] = kind;
    out << n << ',' << d << ',' << lo << ',' << hi << ',' << to_string(label) << ',' << to_string(type) << ','
        << mean_text(s.count, runs[{n, d}]) << ',' << mean_text(s.arcs_changed_closure, s.count) << ','
        << mean_text(s.arcs_changed_reduction, s.count) << '\n';
  }
}

void write_homotopy_failures(std::ostream& out, const HomotopyResult& result) {
  out << "n,d,seed,event,case,check\n";
  for (const auto& t : result.trials)
    for (const auto& f : t.failures)
      out << t.n << ',' << t.d << ',' << t.seed << ',' << f.event << ',' << to_string(f.label) << ",\"" << f.check
          << "\"\n";
}

HomotopyResult experiment_homotopy(const ExperimentConfig& config) {
  auto result = run_homotopy_experiment(config);
  auto runs = open_output(config, "homotopy_runs.csv");
  write_homotopy_runs(runs, result);
  auto counts = open_output(config, "homotopy_counts.csv");
  write_homotopy_counts(counts, result);
  auto means = open_output(config, "homotopy_means.csv");
  write_homotopy_means(means, result);
  auto failures = open_output(config, "homotopy_failures.csv");
  write_homotopy_failures(failures, result);
  return result;
}

// --- oracle --------------------------------------------------------------

namespace {

std::string describe(const LefschetzComplex& complex, const BirthDeathPair& p) {
  return "(" + complex.cell(p.birth).id + "," + complex.cell(p.death).id + ")";
}

void check_fixture(OracleReport& report) {
  const auto fx = figure_fixture();
  const auto& K = fx.complex;
  const auto state = reduce(K, fx.filter.order);
  auto pair = [&](const char* b, const char* d) { return BirthDeathPair{K.index_of(b), K.index_of(d), 0}; };
  auto fail = [&](const std::string& what) { report.mismatches.push_back("fixture: " + what); };

  ++report.instances;
  const auto fast = depth_poset(state);
  if (!fast.same_as(brute_force_depth_poset(K, fx.filter.order))) fail("depth poset differs from the oracle");

  for (auto [b, d] : {std::pair{"C", "c"}, {"d", "gamma"}, {"e", "alpha"}, {"beta", "Sigma"}})
    if (!fast.find(pair(b, d))) fail(std::string("missing pair (") + b + "," + d + ")");
  if (death_relation(state).arc_count() != 1) fail("death relation does not have exactly one arc");
  if (birth_relation(state).arc_count() != 1) fail("birth relation does not have exactly one arc");
  const auto dg = fast.find(pair("d", "gamma")), ea = fast.find(pair("e", "alpha")), bs = fast.find(pair("beta", "Sigma"));
  if (dg && ea) {
    for (std::size_t u = 0; u < fast.size(); ++u)
      if (fast.has_arc(u, *dg) != (u == *ea)) fail("(e,alpha) is not the sole predecessor of (d,gamma)");
  }
  if (dg && bs && (fast.has_arc(*dg, *bs) || fast.has_arc(*bs, *dg))) fail("(d,gamma) and (beta,Sigma) are comparable");

  const auto before = take_snapshot(K, fx.filter.order);
  const std::size_t k = state.pos(K.index_of("c"));
  if (state.pos(K.index_of("d")) != k + 1) {
    fail("c and d are not consecutive");
    return;
  }
  const auto r = apply_transposition(K, before, k);
  if (r.event.switch_type != SwitchType::BD) fail("transposing c and d is not a BD switch");
  std::vector<BirthDeathPair> want{pair("C", "d"), pair("c", "gamma")};
  std::sort(want.begin(), want.end());
  if (r.event.pairs_added != want) {
    std::string got;
    for (const auto& p : r.event.pairs_added) got += describe(K, p);
    fail("switch yields " + got);
  }
  if (death_relation(r.after.reduction).arc_count() != 0 || birth_relation(r.after.reduction).arc_count() != 0)
    fail("relations are not empty after the switch");
}

}  // namespace

OracleReport oracle_check(const ExperimentConfig& config, bool include_fixture) {
  validate(config);
  const auto trials = trials_of(config);
  std::map<int, LefschetzComplex> tori;
  for (int n : config.n_values)
    if (!tori.count(n)) tori.emplace(n, cubical_torus(n, config.d));

  std::vector<char> equal(trials.size(), 0);
  parallel_for(trials.size(), config.jobs, [&](std::size_t i) {
    const auto& torus = tori.at(trials[i].n);
    const auto order = random_torus_filter(torus, trials[i].seed).order;
    equal[i] = depth_poset(torus, order).same_as(brute_force_depth_poset(torus, order, {64}));
  });

  OracleReport report;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    ++report.instances;
    if (!equal[i])
      report.mismatches.push_back("torus(" + std::to_string(trials[i].n) + "," + std::to_string(config.d) +
                                  ") seed " + std::to_string(trials[i].seed));
  }
  if (include_fixture) check_fixture(report);
  return report;
}

}  // namespace depthposet
