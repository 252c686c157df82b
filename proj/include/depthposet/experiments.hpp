#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "depthposet/homotopy.hpp"
#include "depthposet/poset.hpp"

namespace depthposet {

/// Trial r for a given n uses seed + r, so any single run can be regenerated
/// with gen-filter (static) or by drawing random_filter_pair (homotopy).
struct ExperimentConfig {
  int d = 2;
  std::vector<int> n_values;
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
  bool verify = false;
  bool verify_deep = false;
  std::string out_dir = ".";
  std::size_t jobs = 1;
};

/// Throws Error(OutOfRange) for repeats = 0, no n values or jobs = 0, and
/// Error(NTooSmall) for n < 2.
void validate(const ExperimentConfig& config);

/// Runs fn(0) .. fn(count - 1) on up to `jobs` threads. If calls throw, the
/// exception of the smallest index is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

// --- static statistics ---------------------------------------------------

struct StaticRow {
  int n = 0;
  int d = 0;
  std::uint64_t seed = 0;
  std::string relation;  ///< depth, dr or br
  DegreeStats stats;     ///< degree nullopt is the all-degrees row
};

struct StaticResult {
  std::vector<StaticRow> rows;  ///< ordered by n, seed, relation, degree
};

StaticResult run_static(const ExperimentConfig& config);
/// n,d,seed,relation,p,nodes,arcs_closure,arcs_reduction,components,min_nodes,max_nodes,height,cycles
void write_static_rows(std::ostream& out, const StaticResult& result);
/// Means over seeds per (n, relation, p), 12 significant digits.
void write_static_means(std::ostream& out, const StaticResult& result);
/// Writes static_runs.csv and static_means.csv into config.out_dir.
StaticResult experiment_static(const ExperimentConfig& config);

// --- homotopy statistics -------------------------------------------------

struct EventTally {
  std::size_t count = 0;
  std::size_t arcs_changed_closure = 0;
  std::size_t arcs_changed_reduction = 0;
};

/// (dim_low, dim_high, case, switch type)
using EventKind = std::tuple<int, int, CaseLabel, SwitchType>;

struct FailedCheck {
  std::size_t event = 0;
  CaseLabel label = CaseLabel::NoInteraction;
  std::string check;
};

struct HomotopyTrial {
  int n = 0;
  int d = 0;
  std::uint64_t seed = 0;
  HomotopySummary summary;
  std::map<EventKind, EventTally> tallies;
  std::vector<FailedCheck> failures;
};

struct HomotopyResult {
  std::vector<HomotopyTrial> trials;  ///< ordered by n, seed
  std::size_t failed_checks() const;
};

HomotopyResult run_homotopy_experiment(const ExperimentConfig& config);
/// n,d,seed,events,switches_bb,switches_dd,switches_bd,failed_checks,final_order_matches_f1
void write_homotopy_runs(std::ostream& out, const HomotopyResult& result);
/// n,d,seed,dim_low,dim_high,case,switch,count,arcs_changed_closure,arcs_changed_reduction (sums)
void write_homotopy_counts(std::ostream& out, const HomotopyResult& result);
/// n,d,dim_low,dim_high,case,switch,events_per_run,mean_arcs_changed_closure,mean_arcs_changed_reduction
void write_homotopy_means(std::ostream& out, const HomotopyResult& result);
/// n,d,seed,event,case,check for every failed verification check
void write_homotopy_failures(std::ostream& out, const HomotopyResult& result);
/// Writes homotopy_runs.csv, homotopy_counts.csv, homotopy_means.csv and
/// homotopy_failures.csv into config.out_dir.
HomotopyResult experiment_homotopy(const ExperimentConfig& config);

// --- oracle comparison ---------------------------------------------------

struct OracleReport {
  std::size_t instances = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// depth_poset against brute_force_depth_poset on torus(n, d) for each n and
/// seed, plus the small figure fixture when include_fixture is set.
/// Throws Error(TooLarge) when an instance has more than 64 pairs.
OracleReport oracle_check(const ExperimentConfig& config, bool include_fixture = true);

}  // namespace depthposet
