#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "depthposet/complex.hpp"
#include "depthposet/rational.hpp"
#include "depthposet/reduction.hpp"
#include "depthposet/relation.hpp"

namespace depthposet {

enum class CaseLabel { I1, I2, I3, II1, II2, II3, III1, III2, NoInteraction };
enum class SwitchType { None, BB, DD, BD };

std::string_view to_string(CaseLabel label);
std::string_view to_string(SwitchType type);
/// BB for I.1, DD for II.1, BD for III.1, None otherwise.
SwitchType switch_type_of(CaseLabel label);

/// The lambda in (0, 1] at which the straight-line values of the two cells
/// meet, if the motion is not parallel.
std::optional<Rational> crossing_lambda(const Filter& f0, const Filter& f1, CellIndex gamma, CellIndex eta);

/// Pairs, relations and depth poset for one cell order.
struct Snapshot {
  ReductionState reduction;
  PairRelation poset;            ///< transitive closure
  PairRelation poset_reduction;  ///< transitive reduction
};

Snapshot take_snapshot(const LefschetzComplex& complex, const CellOrder& order);

/// One named set equation (or consistency condition) and whether it held.
struct EquationCheck {
  std::string name;
  bool holds = false;
};

struct TranspositionEvent {
  std::size_t index = 0;
  Rational lambda;
  CellIndex low_cell = 0;   ///< at position k before the swap
  CellIndex high_cell = 0;  ///< at position k + 1 before the swap
  int dim_low = 0;
  int dim_high = 0;
  CaseLabel label = CaseLabel::NoInteraction;
  SwitchType switch_type = SwitchType::None;
  std::vector<BirthDeathPair> pairs_removed;
  std::vector<BirthDeathPair> pairs_added;
  std::size_t arcs_changed_closure = 0;
  std::size_t arcs_changed_reduction = 0;
  std::vector<EquationCheck> checks;         ///< filled when verifying
  std::optional<CaseLabel> prepared_label;   ///< deep verification only

  bool verified_ok() const;
};

struct TranspositionOptions {
  bool verify = false;       ///< anchors, switch patterns, set equations
  bool verify_deep = false;  ///< also label every event on the prepared complex
};

struct TranspositionResult {
  Snapshot after;
  TranspositionEvent event;
};

/// Label of swapping the cells at positions k and k + 1. Throws
/// Error(OutOfRange) or Error(IncidentCells).
CaseLabel classify_transposition(const LefschetzComplex& complex, const ReductionState& state, std::size_t k);

/// Swaps positions k and k + 1, recomputes everything for the new order and
/// fills the event record. Throws Error(OutOfRange) or Error(IncidentCells).
TranspositionResult apply_transposition(const LefschetzComplex& complex, const Snapshot& before, std::size_t k,
                                        TranspositionOptions options = {});

/// Set equations governing a switch or a I.2 / II.2 event. Throws
/// Error(NotApplicable) for other events.
std::vector<EquationCheck> verify_switch_equations(const LefschetzComplex& complex, const ReductionState& before,
                                                   const ReductionState& after, const TranspositionEvent& event);

/// Case label read off the prepared complex: all pairs with pivots below the
/// lower birth row or left of the earlier death column are cancelled first.
/// Empty when the configuration has no case template or the preparation
/// gets stuck.
std::optional<CaseLabel> prepared_label(const LefschetzComplex& complex, const ReductionState& before,
                                        const ReductionState& after, std::size_t k);

struct VineSample {
  Rational lambda;
  CellIndex birth = 0;
  CellIndex death = 0;
  Rational birth_value;
  Rational death_value;
};

/// One vine per birth-death pair present at lambda = 0 or created later. A
/// vine follows its untransposed cell through switches.
struct VineyardTrace {
  std::vector<std::vector<VineSample>> vines;
};

struct HomotopyOptions {
  bool verify = false;
  bool verify_deep = false;
  bool record_trace = false;
};

/// Straight-line homotopy f_lambda = (1 - lambda) f0 + lambda f1, advanced
/// one adjacent transposition at a time.
class Homotopy {
 public:
  /// Throws Error(DimensionMismatch) if the filters do not fit the complex.
  Homotopy(const LefschetzComplex& complex, Filter f0, Filter f1, HomotopyOptions options = {});

  const Rational& lambda() const noexcept { return lambda_; }
  const CellOrder& order() const noexcept { return current_.reduction.order; }
  const Snapshot& current() const noexcept { return current_; }
  Rational value(CellIndex c, const Rational& lambda) const;

  /// Smallest pending crossing; ties go to the smallest position.
  std::optional<std::pair<Rational, std::size_t>> next_event() const;

  /// Performs the next transposition. Returns nullopt when none is left.
  std::optional<TranspositionEvent> step();

  const VineyardTrace& trace() const noexcept { return trace_; }
  /// Appends a sample of every live vine at lambda = 1 (idempotent).
  void close_trace();

 private:
  void schedule(std::size_t k);
  void sample_vines(const Rational& lambda);

  const LefschetzComplex* complex_;
  Filter f0_;
  Filter f1_;
  HomotopyOptions options_;
  Rational lambda_;
  Snapshot current_;
  std::vector<Rational> slope_;
  std::set<std::pair<Rational, std::size_t>> queue_;
  std::vector<std::optional<Rational>> scheduled_;  ///< by position
  std::size_t events_done_ = 0;
  VineyardTrace trace_;
  std::map<BirthDeathPair, std::size_t> vine_of_pair_;
  bool trace_closed_ = false;
};

struct HomotopySummary {
  std::size_t events = 0;
  std::size_t switches_bb = 0;
  std::size_t switches_dd = 0;
  std::size_t switches_bd = 0;
  std::size_t failed_checks = 0;
  bool final_order_matches_f1 = false;
};

struct HomotopyRun {
  std::vector<TranspositionEvent> events;
  VineyardTrace trace;
  HomotopySummary summary;
};

HomotopyRun run_homotopy(const LefschetzComplex& complex, const Filter& f0, const Filter& f1,
                         HomotopyOptions options = {});

/// Header plus one row per event.
void write_events_csv(std::ostream& out, const LefschetzComplex& complex, const std::vector<TranspositionEvent>& events);
/// Header plus one row per vine sample.
void write_trace_csv(std::ostream& out, const LefschetzComplex& complex, const VineyardTrace& trace);

}  // namespace depthposet
