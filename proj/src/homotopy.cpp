#include "depthposet/homotopy.hpp"

#include <algorithm>
#include <ostream>

#include "depthposet/cancellation_matrix.hpp"
#include "depthposet/errors.hpp"
#include "depthposet/poset.hpp"

namespace depthposet {

std::string_view to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::I1: return "I.1";
    case CaseLabel::I2: return "I.2";
    case CaseLabel::I3: return "I.3";
    case CaseLabel::II1: return "II.1";
    case CaseLabel::II2: return "II.2";
    case CaseLabel::II3: return "II.3";
    case CaseLabel::III1: return "III.1";
    case CaseLabel::III2: return "III.2";
    case CaseLabel::NoInteraction: return "NoInteraction";
  }
  return "?";
}

std::string_view to_string(SwitchType type) {
  switch (type) {
    case SwitchType::None: return "None";
    case SwitchType::BB: return "BB";
    case SwitchType::DD: return "DD";
    case SwitchType::BD: return "BD";
  }
  return "?";
}

SwitchType switch_type_of(CaseLabel label) {
  switch (label) {
    case CaseLabel::I1: return SwitchType::BB;
    case CaseLabel::II1: return SwitchType::DD;
    case CaseLabel::III1: return SwitchType::BD;
    default: return SwitchType::None;
  }
}

std::optional<Rational> crossing_lambda(const Filter& f0, const Filter& f1, CellIndex gamma, CellIndex eta) {
  Rational gap0 = f0.value(eta) - f0.value(gamma);
  Rational gap1 = f1.value(eta) - f1.value(gamma);
  Rational denom = gap0 - gap1;
  if (sgn(denom) == 0) return std::nullopt;
  Rational lambda = gap0 / denom;
  if (sgn(lambda) <= 0 || lambda > 1) return std::nullopt;
  return lambda;
}

Snapshot take_snapshot(const LefschetzComplex& complex, const CellOrder& order) {
  Snapshot s{reduce(complex, order), {}, {}};
  s.poset = depth_poset(s.reduction);
  s.poset_reduction = transitive_reduction(s.poset);
  return s;
}

bool TranspositionEvent::verified_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const EquationCheck& c) { return c.holds; });
}

namespace {

using PairSet = std::set<BirthDeathPair>;

std::optional<CellIndex> partner(const ReductionState& s, CellIndex c) {
  auto i = s.pair_of(c);
  if (!i) return std::nullopt;
  const auto& p = s.pairs()[*i];
  return p.birth == c ? p.death : p.birth;
}

// Position of the partner; essential cells are treated as dying at infinity.
std::size_t partner_pos(const ReductionState& s, CellIndex c) {
  auto p = partner(s, c);
  return p ? s.pos(*p) : s.order.size();
}

// The two pairs of a transposition named as in the case analysis: for BB and
// DD (a, b) is the outer and (x, y) the inner pair; for BD (a, b) is the pair
// whose death b comes first and (x, y) the pair with birth x.
struct Config {
  enum class Kind { None, BB, DD, BD } kind = Kind::None;
  bool forward = true;  // the named configuration is the before-state
  bool consistent = true;
  const ReductionState* canonical = nullptr;
  const ReductionState* other = nullptr;
  CellIndex a = 0, b = 0, x = 0, y = 0;
  bool has_b = true, has_y = true;
};

// Named configuration in state s, whose cells at positions k and k + 1 are p and q.
bool name_forward(Config& c, const ReductionState& s, CellIndex p, CellIndex q) {
  const bool dp = s.is_death(p), dq = s.is_death(q);
  switch (c.kind) {
    case Config::Kind::BB:
      if (dp || dq || partner_pos(s, p) < partner_pos(s, q)) return false;
      c.a = p;
      c.x = q;
      if (auto t = partner(s, p)) c.b = *t; else c.has_b = false;
      if (auto t = partner(s, q)) c.y = *t; else c.has_y = false;
      return true;
    case Config::Kind::DD:
      if (!dp || !dq || s.pos(*partner(s, p)) < s.pos(*partner(s, q))) return false;
      c.y = p;
      c.b = q;
      c.x = *partner(s, p);
      c.a = *partner(s, q);
      return true;
    case Config::Kind::BD:
      if (!dp || dq) return false;
      c.b = p;
      c.a = *partner(s, p);
      c.x = q;
      if (auto t = partner(s, q)) c.y = *t; else c.has_y = false;
      return true;
    case Config::Kind::None:
      return true;
  }
  return false;
}

Config configure(const LefschetzComplex& complex, const ReductionState& before, const ReductionState& after,
                 std::size_t k) {
  Config c;
  c.canonical = &before;
  c.other = &after;
  const CellIndex u = before.order.sequence[k];
  const CellIndex v = before.order.sequence[k + 1];
  if (complex.dim(u) != complex.dim(v)) return c;
  const bool du = before.is_death(u), dv = before.is_death(v);
  c.kind = du == dv ? (du ? Config::Kind::DD : Config::Kind::BB) : Config::Kind::BD;
  if (name_forward(c, before, u, v)) return c;
  Config inv = c;
  inv.forward = false;
  inv.canonical = &after;
  inv.other = &before;
  inv.has_b = inv.has_y = true;
  inv.consistent = name_forward(inv, after, v, u);
  return inv;
}

bool pairs_changed(const ReductionState& before, const ReductionState& after) {
  PairSet lhs(before.pairs().begin(), before.pairs().end());
  PairSet rhs(after.pairs().begin(), after.pairs().end());
  return lhs != rhs;
}

CaseLabel label_of(const Config& c, bool switched) {
  const ReductionState& s = *c.canonical;
  switch (c.kind) {
    case Config::Kind::BB:
      if (switched) return CaseLabel::I1;
      if (c.has_b && c.has_y && s.u1.get(s.pos(c.y), s.pos(c.b))) return CaseLabel::I2;
      return CaseLabel::I3;
    case Config::Kind::DD:
      if (switched) return CaseLabel::II1;
      if (s.u2.get(s.pos(c.a), s.pos(c.x))) return CaseLabel::II2;
      return CaseLabel::II3;
    case Config::Kind::BD:
      return switched ? CaseLabel::III1 : CaseLabel::III2;
    case Config::Kind::None:
      return CaseLabel::NoInteraction;
  }
  return CaseLabel::NoInteraction;
}

void check_swappable(const LefschetzComplex& complex, const CellOrder& order, std::size_t k) {
  if (k + 1 >= order.size())
    throw Error(ErrorCode::OutOfRange, "position " + std::to_string(k) + " has no successor");
  const CellIndex u = order.sequence[k], v = order.sequence[k + 1];
  if (complex.is_facet(u, v))
    throw Error(ErrorCode::IncidentCells, complex.cell(u).id + " is a facet of " + complex.cell(v).id);
}

CellOrder swapped(const CellOrder& order, std::size_t k) {
  auto seq = order.sequence;
  std::swap(seq[k], seq[k + 1]);
  return CellOrder::from_sequence(std::move(seq));
}

std::optional<CaseLabel> prepared_label_of(const LefschetzComplex& complex, const Config& c) {
  if (c.kind == Config::Kind::None || !c.consistent || !c.has_b || !c.has_y) return std::nullopt;
  const ReductionState& s = *c.canonical;
  const auto delta = boundary_matrix(complex, s.order);
  CancellationMatrix m(delta.matrix);
  const std::size_t row_limit = s.pos(c.x);
  const std::size_t col_limit = c.kind == Config::Kind::BD ? s.pos(c.b) : s.pos(c.y);
  std::vector<CancellationMatrix::PositionPair> cancel;
  for (const auto& p : s.pairs()) {
    if ((p.birth == c.a && p.death == c.b) || (p.birth == c.x && p.death == c.y)) continue;
    const std::size_t r = s.pos(p.birth), col = s.pos(p.death);
    if (r > row_limit || col < col_limit) cancel.emplace_back(r, col);
  }
  if (!cancel_all(m, cancel)) return std::nullopt;
  auto inc = [&](CellIndex f, CellIndex g) { return m.entry(s.pos(f), s.pos(g)); };
  switch (c.kind) {
    case Config::Kind::BB: {
      // both incidences: the inverse switch
      const bool ay = inc(c.a, c.y), xb = inc(c.x, c.b);
      if (ay) return CaseLabel::I1;
      return xb ? CaseLabel::I2 : CaseLabel::I3;
    }
    case Config::Kind::DD: {
      const bool ay = inc(c.a, c.y), xb = inc(c.x, c.b);
      if (xb) return CaseLabel::II1;
      return ay ? CaseLabel::II2 : CaseLabel::II3;
    }
    case Config::Kind::BD: {
      const bool ax = inc(c.a, c.x), by = inc(c.b, c.y);
      if (ax && by) return CaseLabel::III1;
      if (!ax && !by) return CaseLabel::III2;
      return std::nullopt;
    }
    case Config::Kind::None:
      break;
  }
  return std::nullopt;
}

// --- set equations -------------------------------------------------------

BirthDeathPair bd(CellIndex birth, CellIndex death) { return {birth, death, 0}; }

PairSet operator^(PairSet lhs, const PairSet& rhs) {
  for (const auto& p : rhs)
    if (!lhs.erase(p)) lhs.insert(p);
  return lhs;
}

struct Side {
  const ReductionState* state;
  PredSuccSets of(CellIndex birth, CellIndex death) const { return pred_succ_sets(*state, bd(birth, death)); }
};

class EquationSet {
 public:
  EquationSet(const ReductionState& bef, const ReductionState& aft, std::vector<std::pair<BirthDeathPair, BirthDeathPair>> renames)
      : bef_{&bef}, aft_{&aft}, renames_(std::move(renames)) {}

  // A before-state pair under its after-state identity.
  BirthDeathPair carry(const BirthDeathPair& p) const {
    for (const auto& [from, to] : renames_)
      if (from == p) return to;
    return bd(p.birth, p.death);
  }
  PairSet carry(const std::vector<BirthDeathPair>& ps) const {
    PairSet out;
    for (const auto& p : ps) out.insert(carry(p));
    return out;
  }
  static PairSet plain(const std::vector<BirthDeathPair>& ps) {
    PairSet out;
    for (const auto& p : ps) out.insert(bd(p.birth, p.death));
    return out;
  }

  PredSuccSets bef(CellIndex birth, CellIndex death) const { return Side{bef_}.of(birth, death); }
  PredSuccSets aft(CellIndex birth, CellIndex death) const { return Side{aft_}.of(birth, death); }
  const ReductionState& bef_state() const { return *bef_; }
  const ReductionState& aft_state() const { return *aft_; }

  void expect(std::string name, const PairSet& lhs, const PairSet& rhs) {
    checks.push_back({std::move(name), lhs == rhs});
  }

  std::vector<EquationCheck> checks;

 private:
  const ReductionState* bef_;
  const ReductionState* aft_;
  std::vector<std::pair<BirthDeathPair, BirthDeathPair>> renames_;
};

std::vector<EquationCheck> equations_for(const Config& c, CaseLabel label) {
  const CellIndex a = c.a, b = c.b, x = c.x, y = c.y;
  const ReductionState& bef = *c.canonical;
  const ReductionState& aft = *c.other;
  switch (label) {
    case CaseLabel::I1: {
      EquationSet e(bef, aft, {{bd(x, y), bd(a, y)}, {bd(a, b), bd(x, b)}});
      const auto xy = e.bef(x, y), ab = e.bef(a, b), ay = e.aft(a, y), xb = e.aft(x, b);
      e.expect("BB succ1'(a,y) = succ1(x,y) + (x,b) + succ1(a,b)", e.plain(ay.succ1),
               e.carry(xy.succ1) ^ PairSet{bd(x, b)} ^ e.carry(ab.succ1));
      e.expect("BB succ1'(x,b) = succ1(a,b)", e.plain(xb.succ1), e.carry(ab.succ1));
      e.expect("BB succ2'(a,y) = succ2(x,y) + {(x,b), (a,b)}", e.plain(ay.succ2),
               e.carry(xy.succ2) ^ PairSet{bd(x, b)} ^ PairSet{e.carry(bd(a, b))});
      e.expect("BB succ2'(x,b) = succ2(a,b)", e.plain(xb.succ2), e.carry(ab.succ2));
      e.expect("BB pred1'(a,y) = pred1(x,y)", e.plain(ay.pred1), e.carry(xy.pred1));
      e.expect("BB pred1'(x,b) = pred1(a,b)", e.plain(xb.pred1), e.carry(ab.pred1));
      e.expect("BB pred2'(a,y) = pred2(x,y)", e.plain(ay.pred2), e.carry(xy.pred2));
      e.expect("BB pred2'(x,b) = pred2(a,b)", e.plain(xb.pred2), e.carry(ab.pred2));
      return e.checks;
    }
    case CaseLabel::II1: {
      EquationSet e(bef, aft, {{bd(x, y), bd(x, b)}, {bd(a, b), bd(a, y)}});
      const auto xy = e.bef(x, y), ab = e.bef(a, b), xb = e.aft(x, b), ay = e.aft(a, y);
      e.expect("DD succ1'(x,b) = succ1(x,y) + {(a,y), (a,b)}", e.plain(xb.succ1),
               e.carry(xy.succ1) ^ PairSet{bd(a, y)} ^ PairSet{e.carry(bd(a, b))});
      e.expect("DD succ1'(a,y) = succ1(a,b)", e.plain(ay.succ1), e.carry(ab.succ1));
      e.expect("DD succ2'(x,b) = succ2(x,y) + (a,y) + succ2(a,b)", e.plain(xb.succ2),
               e.carry(xy.succ2) ^ PairSet{bd(a, y)} ^ e.carry(ab.succ2));
      e.expect("DD succ2'(a,y) = succ2(a,b)", e.plain(ay.succ2), e.carry(ab.succ2));
      e.expect("DD pred1'(x,b) = pred1(x,y)", e.plain(xb.pred1), e.carry(xy.pred1));
      e.expect("DD pred1'(a,y) = pred1(a,b)", e.plain(ay.pred1), e.carry(ab.pred1));
      e.expect("DD pred2'(x,b) = pred2(x,y)", e.plain(xb.pred2), e.carry(xy.pred2));
      e.expect("DD pred2'(a,y) = pred2(a,b)", e.plain(ay.pred2), e.carry(ab.pred2));
      return e.checks;
    }
    case CaseLabel::III1: {
      EquationSet e(bef, aft, {{bd(a, b), bd(a, x)}, {bd(x, y), bd(b, y)}});
      const auto ab = e.bef(a, b), xy = e.bef(x, y), ax = e.aft(a, x), by = e.aft(b, y);
      e.expect("BD succ1'(a,x) = succ1(a,b)", e.plain(ax.succ1), e.carry(ab.succ1));
      e.expect("BD succ1'(b,y) = succ1(x,y)", e.plain(by.succ1), e.carry(xy.succ1));
      e.expect("BD succ2'(a,x) = succ2(a,b)", e.plain(ax.succ2), e.carry(ab.succ2));
      e.expect("BD succ2'(b,y) = succ2(x,y)", e.plain(by.succ2), e.carry(xy.succ2));

      // pairs (s, t) nested in (a, x) with U1[t, x] = 1, read before the swap
      PairSet from_u1;
      for (const auto& p : aft.pairs()) {
        if (p.death == x) continue;
        if (bef.pos(p.birth) > bef.pos(a) && bef.u1.get(bef.pos(p.death), bef.pos(x))) from_u1.insert(bd(p.birth, p.death));
      }
      // pairs (s, t) nested in (b, y) with U2[b, s] = 1, read before the swap
      PairSet from_u2;
      for (const auto& p : aft.pairs()) {
        if (p.birth == b) continue;
        if (bef.pos(p.death) < bef.pos(y) && bef.u2.get(bef.pos(b), bef.pos(p.birth))) from_u2.insert(bd(p.birth, p.death));
      }
      e.expect("BD pred1'(a,x) = {(s,t) nested in (a,x) : U1[t,x] = 1}", e.plain(ax.pred1), from_u1);
      e.expect("BD pred1'(b,y) = pred1(x,y)", e.plain(by.pred1), e.carry(xy.pred1));
      e.expect("BD pred2'(a,x) = pred2(a,b)", e.plain(ax.pred2), e.carry(ab.pred2));
      e.expect("BD pred2'(b,y) = {(s,t) nested in (b,y) : U2[b,s] = 1}", e.plain(by.pred2), from_u2);
      return e.checks;
    }
    case CaseLabel::I2: {
      EquationSet e(bef, aft, {});
      const auto xy = e.bef(x, y), ab = e.bef(a, b);
      e.expect("I.2 succ1'(x,y) = succ1(x,y) + (a,b) + succ1(a,b)", e.plain(e.aft(x, y).succ1),
               e.plain(xy.succ1) ^ PairSet{bd(a, b)} ^ e.plain(ab.succ1));
      return e.checks;
    }
    case CaseLabel::II2: {
      EquationSet e(bef, aft, {});
      const auto xy = e.bef(x, y), ab = e.bef(a, b);
      e.expect("II.2 succ2'(x,y) = succ2(x,y) + (a,b) + succ2(a,b)", e.plain(e.aft(x, y).succ2),
               e.plain(xy.succ2) ^ PairSet{bd(a, b)} ^ e.plain(ab.succ2));
      return e.checks;
    }
    default:
      break;
  }
  throw Error(ErrorCode::NotApplicable, "no set equations govern case " + std::string(to_string(label)));
}

// Both states of a BB or DD switch fit the nested template. The case
// analysis reads the switch from the state without the arc between the two
// pairs: U1[y, b] = 0 for BB, U2[a, x] = 0 for DD.
Config equation_orientation(const Config& c, CaseLabel label) {
  const ReductionState& s = *c.canonical;
  bool flip = false;
  if (label == CaseLabel::I1) flip = s.u1.get(s.pos(c.y), s.pos(c.b));
  if (label == CaseLabel::II1) flip = s.u2.get(s.pos(c.a), s.pos(c.x));
  if (!flip) return c;
  Config r = c;
  r.forward = !c.forward;
  r.canonical = c.other;
  r.other = c.canonical;
  const std::size_t k = std::min(s.pos(c.a), s.pos(c.x));
  const std::size_t at = label == CaseLabel::I1 ? k : std::min(s.pos(c.y), s.pos(c.b));
  r.consistent = name_forward(r, *r.canonical, r.canonical->order.sequence[at], r.canonical->order.sequence[at + 1]);
  return r;
}

bool equations_apply(const Config& c, CaseLabel label) {
  if (!c.consistent || !c.has_b || !c.has_y) return false;
  switch (label) {
    case CaseLabel::I1:
    case CaseLabel::II1:
    case CaseLabel::III1:
    case CaseLabel::I2:
    case CaseLabel::II2:
      return true;
    default:
      return false;
  }
}

std::vector<BirthDeathPair> difference(const std::vector<BirthDeathPair>& lhs, const std::vector<BirthDeathPair>& rhs) {
  PairSet r(rhs.begin(), rhs.end());
  std::vector<BirthDeathPair> out;
  for (const auto& p : lhs)
    if (!r.count(p)) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

void add_verification(const LefschetzComplex& complex, const Config& c, const Snapshot& before, const Snapshot& after,
                      TranspositionEvent& ev, bool switched) {
  const ReductionState& B = before.reduction;
  auto& checks = ev.checks;
  checks.push_back({"configuration has a case template", c.consistent});
  if (!c.consistent) return;

  // the switch predicted from the before-state against the recomputed pairs
  std::optional<bool> predicted;
  if (!c.forward) {
    predicted = false;
  } else if (c.kind == Config::Kind::None) {
    predicted = false;
  } else if (c.kind == Config::Kind::BB && c.has_b && c.has_y) {
    predicted = B.u2.get(B.pos(c.a), B.pos(c.x)) == 1;
  } else if (c.kind == Config::Kind::DD) {
    predicted = B.u1.get(B.pos(c.y), B.pos(c.b)) == 1;
  } else if (c.kind == Config::Kind::BD && c.has_y) {
    auto label = prepared_label_of(complex, c);
    checks.push_back({"prepared complex fits a case", label.has_value()});
    if (label) predicted = *label == CaseLabel::III1;
  }
  if (predicted) checks.push_back({"switch iff predicted by the before-state", *predicted == switched});

  if (switched && c.has_b && c.has_y) {
    PairSet removed(ev.pairs_removed.begin(), ev.pairs_removed.end());
    PairSet added(ev.pairs_added.begin(), ev.pairs_added.end());
    PairSet want_removed{bd(c.a, c.b), bd(c.x, c.y)};
    PairSet want_added;
    switch (c.kind) {
      case Config::Kind::BB: want_added = {bd(c.a, c.y), bd(c.x, c.b)}; break;
      case Config::Kind::DD: want_added = {bd(c.x, c.b), bd(c.a, c.y)}; break;
      case Config::Kind::BD: want_added = {bd(c.a, c.x), bd(c.b, c.y)}; break;
      case Config::Kind::None: break;
    }
    checks.push_back({"switch replaces the two pairs by the exchanged ones", removed == want_removed && added == want_added});
  }

  if (ev.label == CaseLabel::NoInteraction) {
    checks.push_back({"no interaction leaves the relations unchanged",
                      death_relation(B).same_as(death_relation(after.reduction)) &&
                          birth_relation(B).same_as(birth_relation(after.reduction)) &&
                          before.poset.same_as(after.poset)});
  }

  if (equations_apply(c, ev.label)) {
    auto eqs = equations_for(equation_orientation(c, ev.label), ev.label);
    checks.insert(checks.end(), eqs.begin(), eqs.end());
  }
}

}  // namespace

CaseLabel classify_transposition(const LefschetzComplex& complex, const ReductionState& state, std::size_t k) {
  check_swappable(complex, state.order, k);
  auto after = reduce(complex, swapped(state.order, k));
  return label_of(configure(complex, state, after, k), pairs_changed(state, after));
}

std::optional<CaseLabel> prepared_label(const LefschetzComplex& complex, const ReductionState& before,
                                        const ReductionState& after, std::size_t k) {
  check_swappable(complex, before.order, k);
  return prepared_label_of(complex, configure(complex, before, after, k));
}

std::vector<EquationCheck> verify_switch_equations(const LefschetzComplex& complex, const ReductionState& before,
                                                   const ReductionState& after, const TranspositionEvent& event) {
  const std::size_t k = before.pos(event.low_cell);
  check_swappable(complex, before.order, k);
  const Config c = configure(complex, before, after, k);
  if (!equations_apply(c, event.label))
    throw Error(ErrorCode::NotApplicable, "no set equations govern case " + std::string(to_string(event.label)));
  return equations_for(equation_orientation(c, event.label), event.label);
}

TranspositionResult apply_transposition(const LefschetzComplex& complex, const Snapshot& before, std::size_t k,
                                        TranspositionOptions options) {
  check_swappable(complex, before.reduction.order, k);
  TranspositionResult out{take_snapshot(complex, swapped(before.reduction.order, k)), {}};
  TranspositionEvent& ev = out.event;
  const ReductionState& B = before.reduction;
  const ReductionState& A = out.after.reduction;
  ev.low_cell = B.order.sequence[k];
  ev.high_cell = B.order.sequence[k + 1];
  ev.dim_low = complex.dim(ev.low_cell);
  ev.dim_high = complex.dim(ev.high_cell);
  ev.pairs_removed = difference(B.pairs(), A.pairs());
  ev.pairs_added = difference(A.pairs(), B.pairs());
  const bool switched = !ev.pairs_removed.empty() || !ev.pairs_added.empty() || B.pairing.essential.size() != A.pairing.essential.size() ||
                        !std::is_permutation(B.pairing.essential.begin(), B.pairing.essential.end(), A.pairing.essential.begin());
  const Config c = configure(complex, B, A, k);
  ev.label = label_of(c, switched);
  ev.switch_type = switch_type_of(ev.label);
  ev.arcs_changed_closure = PairRelation::arc_symmetric_difference(before.poset, out.after.poset);
  ev.arcs_changed_reduction = PairRelation::arc_symmetric_difference(before.poset_reduction, out.after.poset_reduction);

  if (options.verify || options.verify_deep) {
    add_verification(complex, c, before, out.after, ev, switched);
    if (switched != (ev.switch_type != SwitchType::None))
      ev.checks.push_back({"pairs change only in a switch case", false});
  }
  if (options.verify_deep) {
    ev.prepared_label = prepared_label_of(complex, c);
    if (c.kind != Config::Kind::None)
      ev.checks.push_back({"prepared-complex label agrees", ev.prepared_label == ev.label});
  }
  return out;
}

// --- homotopy ------------------------------------------------------------

Homotopy::Homotopy(const LefschetzComplex& complex, Filter f0, Filter f1, HomotopyOptions options)
    : complex_(&complex), f0_(std::move(f0)), f1_(std::move(f1)), options_(options), lambda_(0) {
  const std::size_t n = complex.size();
  if (f0_.values.size() != n || f1_.values.size() != n || f0_.order.size() != n || f1_.order.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "filters do not match the complex");
  current_ = take_snapshot(complex, f0_.order);
  slope_.resize(n);
  for (CellIndex c = 0; c < n; ++c) slope_[c] = f1_.value(c) - f0_.value(c);
  scheduled_.assign(n, std::nullopt);
  for (std::size_t k = 0; k + 1 < n; ++k) schedule(k);
  if (options_.record_trace) {
    for (const auto& p : current_.reduction.pairs()) {
      vine_of_pair_[p] = trace_.vines.size();
      trace_.vines.emplace_back();
    }
    sample_vines(lambda_);
  }
}

Rational Homotopy::value(CellIndex c, const Rational& lambda) const {
  return f0_.value(c) + lambda * slope_[c];
}

void Homotopy::schedule(std::size_t k) {
  if (k >= scheduled_.size()) return;
  if (scheduled_[k]) {
    queue_.erase({*scheduled_[k], k});
    scheduled_[k].reset();
  }
  const auto& seq = current_.reduction.order.sequence;
  if (k + 1 >= seq.size()) return;
  const CellIndex g = seq[k], h = seq[k + 1];
  // g sits below h just after lambda_; they cross only if g rises faster
  if (slope_[g] <= slope_[h]) return;
  Rational lambda = (f0_.value(h) - f0_.value(g)) / (slope_[g] - slope_[h]);
  if (lambda > 1) return;
  queue_.emplace(lambda, k);
  scheduled_[k] = std::move(lambda);
}

std::optional<std::pair<Rational, std::size_t>> Homotopy::next_event() const {
  if (queue_.empty()) return std::nullopt;
  return *queue_.begin();
}

void Homotopy::sample_vines(const Rational& lambda) {
  for (const auto& [pair, vine] : vine_of_pair_)
    trace_.vines[vine].push_back({lambda, pair.birth, pair.death, value(pair.birth, lambda), value(pair.death, lambda)});
}

std::optional<TranspositionEvent> Homotopy::step() {
  if (queue_.empty()) return std::nullopt;
  auto [lambda, k] = *queue_.begin();
  TranspositionOptions topts{options_.verify, options_.verify_deep};
  auto result = apply_transposition(*complex_, current_, k, topts);
  lambda_ = lambda;
  result.event.index = events_done_++;
  result.event.lambda = lambda;
  current_ = std::move(result.after);
  if (k > 0) schedule(k - 1);
  schedule(k);
  schedule(k + 1);

  if (options_.record_trace) {
    const auto& ev = result.event;
    std::map<BirthDeathPair, std::size_t> carried;
    for (const auto& gone : ev.pairs_removed) {
      auto it = vine_of_pair_.find(gone);
      if (it == vine_of_pair_.end()) continue;
      const bool birth_moved = gone.birth == ev.low_cell || gone.birth == ev.high_cell;
      const CellIndex kept = birth_moved ? gone.death : gone.birth;
      for (const auto& fresh : ev.pairs_added)
        if (fresh.birth == kept || fresh.death == kept) carried[fresh] = it->second;
      vine_of_pair_.erase(it);
    }
    for (const auto& fresh : ev.pairs_added) {
      auto it = carried.find(fresh);
      if (it != carried.end()) {
        vine_of_pair_[fresh] = it->second;
      } else {
        vine_of_pair_[fresh] = trace_.vines.size();
        trace_.vines.emplace_back();
      }
    }
    sample_vines(lambda_);
  }
  return std::move(result.event);
}

void Homotopy::close_trace() {
  if (!options_.record_trace || trace_closed_) return;
  trace_closed_ = true;
  if (lambda_ < 1) sample_vines(Rational(1));
}

HomotopyRun run_homotopy(const LefschetzComplex& complex, const Filter& f0, const Filter& f1, HomotopyOptions options) {
  Homotopy h(complex, f0, f1, options);
  HomotopyRun run;
  while (auto ev = h.step()) {
    switch (ev->switch_type) {
      case SwitchType::BB: ++run.summary.switches_bb; break;
      case SwitchType::DD: ++run.summary.switches_dd; break;
      case SwitchType::BD: ++run.summary.switches_bd; break;
      case SwitchType::None: break;
    }
    for (const auto& c : ev->checks)
      if (!c.holds) ++run.summary.failed_checks;
    run.events.push_back(std::move(*ev));
  }
  h.close_trace();
  run.summary.events = run.events.size();
  run.summary.final_order_matches_f1 = h.order() == f1.order;
  run.trace = h.trace();
  return run;
}

void write_events_csv(std::ostream& out, const LefschetzComplex& complex, const std::vector<TranspositionEvent>& events) {
  out << "index,lambda_num,lambda_den,low_cell,high_cell,dim_low,dim_high,case,switch,arcs_changed_closure,"
         "arcs_changed_reduction\n";
  for (const auto& ev : events) {
    out << ev.index << ',' << ev.lambda.get_num().get_str() << ',' << ev.lambda.get_den().get_str() << ','
        << complex.cell(ev.low_cell).id << ',' << complex.cell(ev.high_cell).id << ',' << ev.dim_low << ','
        << ev.dim_high << ',' << to_string(ev.label) << ',' << to_string(ev.switch_type) << ','
        << ev.arcs_changed_closure << ',' << ev.arcs_changed_reduction << '\n';
  }
}

void write_trace_csv(std::ostream& out, const LefschetzComplex& complex, const VineyardTrace& trace) {
  out << "vine,lambda,birth,death,birth_value,death_value\n";
  for (std::size_t v = 0; v < trace.vines.size(); ++v) {
    for (const auto& s : trace.vines[v]) {
      out << v << ',' << format_rational(s.lambda) << ',' << complex.cell(s.birth).id << ','
          << complex.cell(s.death).id << ',' << format_rational(s.birth_value) << ','
          << format_rational(s.death_value) << '\n';
    }
  }
}

}  // namespace depthposet
