#include "lsattack/setfn.hpp"

#include <numeric>
#include <queue>
#include <stdexcept>

namespace lsattack::setfn {

std::vector<int> GroundSet::all_ids() const {
  std::vector<int> ids(size);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

ElementSet::ElementSet(std::size_t ground_size) : member_(ground_size, 0) {}

ElementSet ElementSet::from_ids(std::size_t ground_size,
                                std::span<const int> ids) {
  ElementSet s(ground_size);
  for (int id : ids) s.insert(id);
  return s;
}

ElementSet ElementSet::from_ids(std::size_t ground_size,
                                std::initializer_list<int> ids) {
  return from_ids(ground_size, std::span<const int>(ids.begin(), ids.size()));
}

ElementSet ElementSet::from_mask(std::size_t ground_size, std::uint64_t mask) {
  if (ground_size > 64)
    throw std::invalid_argument("from_mask requires ground size <= 64");
  ElementSet s(ground_size);
  for (std::size_t i = 0; i < ground_size; ++i) {
    if (mask & (std::uint64_t{1} << i)) s.insert(static_cast<int>(i));
  }
  return s;
}

ElementSet ElementSet::full(std::size_t ground_size) {
  ElementSet s(ground_size);
  std::fill(s.member_.begin(), s.member_.end(), std::uint8_t{1});
  s.count_ = ground_size;
  return s;
}

void ElementSet::check_id(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= member_.size())
    throw std::invalid_argument("element id out of range");
}

bool ElementSet::contains(int id) const {
  check_id(id);
  return member_[static_cast<std::size_t>(id)] != 0;
}

void ElementSet::insert(int id) {
  check_id(id);
  auto& slot = member_[static_cast<std::size_t>(id)];
  if (slot) throw std::invalid_argument("element already in set");
  slot = 1;
  ++count_;
}

void ElementSet::erase(int id) {
  check_id(id);
  auto& slot = member_[static_cast<std::size_t>(id)];
  if (!slot) throw std::invalid_argument("element not in set");
  slot = 0;
  --count_;
}

ElementSet ElementSet::with(int id) const {
  ElementSet s = *this;
  s.insert(id);
  return s;
}

ElementSet ElementSet::without(int id) const {
  ElementSet s = *this;
  s.erase(id);
  return s;
}

ElementSet ElementSet::complement() const {
  ElementSet s(member_.size());
  for (std::size_t i = 0; i < member_.size(); ++i) s.member_[i] = !member_[i];
  s.count_ = member_.size() - count_;
  return s;
}

std::vector<int> ElementSet::ids() const {
  std::vector<int> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (member_[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::uint64_t ElementSet::to_mask() const {
  if (member_.size() > 64)
    throw std::invalid_argument("to_mask requires ground size <= 64");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (member_[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

double marginal_gain(SetFunction& f, const ElementSet& s, int e,
                     std::optional<double> value_of_s) {
  if (s.contains(e)) throw std::invalid_argument("element already in set");
  double base = value_of_s ? *value_of_s : f.eval(s);
  return f.eval(s.with(e)) - base;
}

double deletion_gain(SetFunction& f, const ElementSet& s, int e,
                     std::optional<double> value_of_s) {
  if (!s.contains(e)) throw std::invalid_argument("element not in set");
  double base = value_of_s ? *value_of_s : f.eval(s);
  return f.eval(s.without(e)) - base;
}

namespace {

// Cached upper bound on a marginal gain, stamped with the working-set
// mutation epoch it was computed at.
struct HeapEntry {
  int element;
  double bound;
  std::uint64_t epoch;
};

// Max-heap order: larger bound first, ties to the smaller element id.
struct HeapBelow {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.element > b.element;
  }
};

using BoundHeap =
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapBelow>;

enum class Direction { insert, erase };

// Shared core of the two lazy phases. Gains are F(S +/- e) - F(S); an entry
// popped at its own epoch holds an exact gain and is accepted or ends the
// phase. A stale entry is refreshed with one eval and either wins against the
// current heap top (>= in heap order, so ties go to the smaller id) or is
// re-pushed at the current epoch. An empty heap acts as a -inf top, so a sole
// remaining element is accepted iff its refreshed gain is positive.
PhaseStats lazy_phase(SetFunction& f, ElementSet& s,
                      std::span<const int> universe, Direction dir,
                      std::optional<double>& value) {
  PhaseStats st;
  if (!value) {
    value = f.eval(s);
    ++st.evals;
  }

  auto probe = [&](int e) {
    return dir == Direction::insert ? s.with(e) : s.without(e);
  };
  auto apply = [&](int e) {
    if (dir == Direction::insert)
      s.insert(e);
    else
      s.erase(e);
  };

  std::uint64_t epoch = 0;
  BoundHeap q;
  for (int e : universe) {
    if (s.contains(e) == (dir == Direction::insert)) continue;
    double gain = f.eval(probe(e)) - *value;
    ++st.evals;
    q.push({e, gain, epoch});
  }

  while (!q.empty()) {
    HeapEntry top = q.top();
    q.pop();
    if (top.epoch != epoch) {
      top.bound = f.eval(probe(top.element)) - *value;
      top.epoch = epoch;
      ++st.evals;
      ++st.stale_refreshes;
      if (!q.empty() && HeapBelow{}(top, q.top())) {
        q.push(top);
        continue;
      }
    }
    if (top.bound > 0) {
      apply(top.element);
      *value += top.bound;
      ++epoch;
      ++st.accepted;
    } else {
      break;
    }
  }
  return st;
}

PhaseStats naive_phase(SetFunction& f, ElementSet& s,
                       std::span<const int> universe, Direction dir,
                       std::optional<double>& value) {
  PhaseStats st;
  if (!value) {
    value = f.eval(s);
    ++st.evals;
  }
  for (;;) {
    bool found = false;
    int best_e = -1;
    double best_gain = 0.0;
    for (int e : universe) {  // universe must be sorted ascending
      if (s.contains(e) == (dir == Direction::insert)) continue;
      double gain =
          f.eval(dir == Direction::insert ? s.with(e) : s.without(e)) - *value;
      ++st.evals;
      if (!found || gain > best_gain) {
        found = true;
        best_gain = gain;
        best_e = e;
      }
    }
    if (!found || best_gain <= 0) break;
    if (dir == Direction::insert)
      s.insert(best_e);
    else
      s.erase(best_e);
    *value += best_gain;
    ++st.accepted;
  }
  return st;
}

void require_subset_of(const ElementSet& s, const GroundSet& v) {
  if (s.ground_size() != v.size)
    throw std::invalid_argument("working set does not match ground set");
}

}  // namespace

PhaseStats lazy_greedy_insert_inplace(SetFunction& f, ElementSet& s,
                                      std::span<const int> universe,
                                      std::optional<double>& value) {
  return lazy_phase(f, s, universe, Direction::insert, value);
}

PhaseStats lazy_greedy_delete_inplace(SetFunction& f, ElementSet& s,
                                      std::span<const int> universe,
                                      std::optional<double>& value) {
  return lazy_phase(f, s, universe, Direction::erase, value);
}

PhaseResult lazy_greedy_insert(SetFunction& f, ElementSet s, const GroundSet& v,
                               std::optional<double> value_of_s) {
  require_subset_of(s, v);
  auto universe = v.all_ids();
  PhaseStats st = lazy_greedy_insert_inplace(f, s, universe, value_of_s);
  return {std::move(s), *value_of_s, st};
}

PhaseResult lazy_greedy_delete(SetFunction& f, ElementSet s,
                               std::optional<double> value_of_s) {
  auto universe = GroundSet{s.ground_size()}.all_ids();
  PhaseStats st = lazy_greedy_delete_inplace(f, s, universe, value_of_s);
  return {std::move(s), *value_of_s, st};
}

PhaseResult local_search(SetFunction& f, ElementSet s, const GroundSet& v,
                         const LocalSearchConfig& cfg,
                         std::optional<double> value_of_s) {
  if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  require_subset_of(s, v);
  auto universe = v.all_ids();
  PhaseStats st;
  for (int t = 0; t < cfg.max_iter; ++t) {
    st += lazy_greedy_insert_inplace(f, s, universe, value_of_s);
    st += lazy_greedy_delete_inplace(f, s, universe, value_of_s);
  }
  if (cfg.return_best_side) {
    ElementSet comp = s.complement();
    double comp_value = f.eval(comp);
    ++st.evals;
    if (comp_value > *value_of_s) return {std::move(comp), comp_value, st};
  }
  return {std::move(s), *value_of_s, st};
}

PhaseStats naive_greedy_insert_inplace(SetFunction& f, ElementSet& s,
                                       std::span<const int> universe,
                                       std::optional<double>& value) {
  return naive_phase(f, s, universe, Direction::insert, value);
}

PhaseStats naive_greedy_delete_inplace(SetFunction& f, ElementSet& s,
                                       std::span<const int> universe,
                                       std::optional<double>& value) {
  return naive_phase(f, s, universe, Direction::erase, value);
}

PhaseResult naive_greedy_insert(SetFunction& f, ElementSet s, const GroundSet& v,
                                std::optional<double> value_of_s) {
  require_subset_of(s, v);
  auto universe = v.all_ids();
  PhaseStats st = naive_greedy_insert_inplace(f, s, universe, value_of_s);
  return {std::move(s), *value_of_s, st};
}

PhaseResult naive_local_search(SetFunction& f, ElementSet s, const GroundSet& v,
                               bool until_convergence) {
  require_subset_of(s, v);
  auto universe = v.all_ids();
  std::optional<double> value;
  PhaseStats st;
  for (;;) {
    PhaseStats pass;
    pass += naive_greedy_insert_inplace(f, s, universe, value);
    pass += naive_greedy_delete_inplace(f, s, universe, value);
    st += pass;
    if (!until_convergence || !pass.changed()) break;
  }
  return {std::move(s), *value, st};
}

bool is_local_optimum(SetFunction& f, const ElementSet& s, const GroundSet& v) {
  require_subset_of(s, v);
  double base = f.eval(s);
  bool optimal = true;
  for (std::size_t i = 0; i < v.size; ++i) {
    int e = static_cast<int>(i);
    double flipped = f.eval(s.contains(e) ? s.without(e) : s.with(e));
    if (flipped > base) optimal = false;
  }
  return optimal;
}

}  // namespace lsattack::setfn
