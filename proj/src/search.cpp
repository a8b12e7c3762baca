#include "qtag/search.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <string>

#include "qtag/constructions.hpp"
#include "qtag/error.hpp"

namespace qtag {

namespace {

using Mask = std::uint64_t;

Mask full_mask(int v) { return v == 64 ? ~Mask{0} : (Mask{1} << v) - 1; }

Mask rotate(Mask m, int t, int v) {
  t %= v;
  if (t == 0) return m;
  return ((m << t) | (m >> (v - t))) & full_mask(v);
}

Mask reflect(Mask m, int v) {
  Mask r = 0;
  for (int i = 0; i < v; ++i) {
    if (m >> i & 1) r |= Mask{1} << ((v - i) % v);
  }
  return r;
}

// Lexicographic order of the sorted supports of two equal-weight masks: the
// lowest differing element decides.
bool lex_less(Mask a, Mask b) {
  const Mask d = a ^ b;
  if (d == 0) return false;
  return (a & (d & (~d + 1))) != 0;
}

Support to_support(Mask m) {
  Support s;
  while (m) {
    s.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return s;
}

Mask to_mask(const Support& s) {
  Mask m = 0;
  for (int e : s) m |= Mask{1} << e;
  return m;
}

Mask next_combination(Mask x) {
  const Mask u = x & (~x + 1);
  const Mask w = x + u;
  return w | (((x ^ w) >> 2) / u);
}

// Calls f on every n-bit mask of weight r in increasing numeric order.
template <class F>
void for_each_combination(int n, int r, F&& f) {
  if (r == 0) {
    f(Mask{0});
    return;
  }
  if (r > n) return;
  const Mask limit = Mask{1} << n;
  for (Mask x = (Mask{1} << r) - 1; x < limit; x = next_combination(x)) {
    if (!f(x)) return;
  }
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 c = 1;
  for (int i = 1; i <= r; ++i) {
    c = c * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

int periodic_rho(Mask m, int k, int v) {
  int worst = 0;
  for (int t = 1; t < v; ++t) worst = std::max(worst, std::popcount(m & rotate(m, t, v)));
  return 2 * (k - worst);
}

bool is_canonical(Mask m, int v) {
  for (Mask base : {m, reflect(m, v)}) {
    for (Mask rest = base; rest; rest &= rest - 1) {
      const int a = std::countr_zero(rest);
      if (lex_less(rotate(base, v - a, v), m)) return false;
    }
  }
  return true;
}

int aperiodic_sidelobe(Mask m, int v, int stop_above = std::numeric_limits<int>::max()) {
  int worst = 0;
  for (int t = 1; t < v; ++t) {
    worst = std::max(worst, std::popcount(m & (m >> t)));
    if (worst > stop_above) break;
  }
  return worst;
}

int aperiodic_cross(Mask a, Mask b, int v) {
  int worst = std::popcount(a & b);
  const Mask full = full_mask(v);
  for (int t = 1; t < v; ++t) {
    worst = std::max(worst, std::popcount(a & (b >> t)));
    worst = std::max(worst, std::popcount(a & ((b << t) & full)));
  }
  return worst;
}

// Keeps the first `cap` witnesses in lexicographic order.
void add_witness(std::vector<Mask>& witnesses, Mask m, std::size_t cap) {
  auto pos = std::lower_bound(witnesses.begin(), witnesses.end(), m, lex_less);
  witnesses.insert(pos, m);
  if (witnesses.size() > cap) witnesses.pop_back();
}

void check_range(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace

int max_aperiodic_sidelobe(const Support& support, int v) {
  check_range(v >= 1 && v <= 64, "aperiodic helpers need 1 <= v <= 64");
  return aperiodic_sidelobe(to_mask(make_support(support, v)), v);
}

int max_aperiodic_cross(const Support& a, const Support& b, int v) {
  check_range(v >= 1 && v <= 64, "aperiodic helpers need 1 <= v <= 64");
  return aperiodic_cross(to_mask(make_support(a, v)), to_mask(make_support(b, v)), v);
}

SearchReport search_optimal_tag(int v, int k, const SearchLimits& limits) {
  check_range(v >= 2 && k >= 1 && 2 * k <= v, "tag search needs v >= 2 and 1 <= k <= v/2");
  if (v > limits.max_periodic_v || v > 64) {
    throw Error(ErrorCode::CapExceeded, "v = " + std::to_string(v) + " exceeds the exhaustive cap " +
                                            std::to_string(limits.max_periodic_v) +
                                            "; use a smaller length");
  }
  const std::uint64_t count = binomial(v - 1, k - 1);
  if (count > limits.max_candidates) {
    throw Error(ErrorCode::CapExceeded, std::to_string(count) + " candidates exceed the cap of " +
                                            std::to_string(limits.max_candidates));
  }

  SearchReport report;
  report.v = v;
  report.k = k;
  report.bound = comma_free_upper_bound(v, k);
  int best = std::numeric_limits<int>::min();
  std::vector<Mask> all_best;
  for_each_combination(v - 1, k - 1, [&](Mask c) {
    const Mask m = (c << 1) | 1;
    ++report.candidates_examined;
    const int rho = periodic_rho(m, k, v);
    if (rho < best || !is_canonical(m, v)) return true;
    if (rho > best) {
      best = rho;
      all_best.clear();
    }
    all_best.push_back(m);
    return true;
  });
  std::sort(all_best.begin(), all_best.end(), lex_less);
  report.objective = best;
  report.witness_count = all_best.size();
  for (std::size_t i = 0; i < all_best.size() && i < limits.max_witnesses; ++i) {
    report.witnesses.push_back(to_support(all_best[i]));
  }
  report.exhaustive = true;
  report.bound_met = best >= 1 && best == *report.bound;
  return report;
}

SearchReport search_ooc(int v, int k, std::optional<int> target_size, const SearchLimits& limits) {
  check_range(k >= 2 && v > k, "OOC search needs v > k >= 2");
  if (v > limits.max_ooc_v || k > limits.max_ooc_k) {
    throw Error(ErrorCode::CapExceeded, "OOC search is capped at v <= " +
                                            std::to_string(limits.max_ooc_v) + ", k <= " +
                                            std::to_string(limits.max_ooc_k));
  }
  const int bound = johnson_bound(v, k);
  if (target_size && *target_size > bound) {
    throw Error(ErrorCode::Infeasible, "target " + std::to_string(*target_size) +
                                           " exceeds the Johnson bound " + std::to_string(bound));
  }
  if (target_size && *target_size < 1) throw Error(ErrorCode::InvalidArgument, "target must be >= 1");
  const int goal = target_size.value_or(bound);

  std::vector<char> used(static_cast<std::size_t>(v), 0);
  int unused = v - 1;
  std::vector<Support> blocks;
  std::vector<Support> best;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;
  const int per_block = k * (k - 1);

  auto canonical = [&](const Support& b) {
    for (int shift : b) {
      Support t = translate(b, -shift, v);
      if (t < b) return false;
    }
    return true;
  };

  std::function<bool()> place_block;
  std::function<bool(Support&)> extend;

  // Returns true when the search should stop.
  extend = [&](Support& cur) -> bool {
    if (++nodes > limits.max_ooc_nodes) {
      out_of_budget = true;
      return true;
    }
    if (static_cast<int>(cur.size()) == k) {
      if (!canonical(cur) || (!blocks.empty() && !(blocks.back() < cur))) return false;
      blocks.push_back(cur);
      if (blocks.size() > best.size()) best = blocks;
      const bool stop = static_cast<int>(best.size()) >= goal || place_block();
      blocks.pop_back();
      return stop;
    }
    // A copy: deeper levels push onto `blocks` and may reallocate it.
    const Support prev = blocks.empty() ? Support{} : blocks.back();
    const bool tied_with_prev = !prev.empty() && std::equal(cur.begin(), cur.end(), prev.begin());
    std::vector<int> diffs;
    for (int x = cur.back() + 1; x < v; ++x) {
      // Blocks are generated in increasing lexicographic order.
      if (tied_with_prev && x < prev[cur.size()]) continue;
      diffs.clear();
      bool ok = true;
      for (int y : cur) {
        const int d = (x - y) % v;
        const int nd = (v - d) % v;
        if (d == nd || used[static_cast<std::size_t>(d)] || used[static_cast<std::size_t>(nd)]) {
          ok = false;
          break;
        }
        diffs.push_back(d);
        diffs.push_back(nd);
      }
      if (!ok) continue;
      std::vector<int> sorted = diffs;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      for (int d : diffs) used[static_cast<std::size_t>(d)] = 1;
      unused -= static_cast<int>(diffs.size());
      cur.push_back(x);
      const bool stop = extend(cur);
      cur.pop_back();
      unused += static_cast<int>(diffs.size());
      for (int d : diffs) used[static_cast<std::size_t>(d)] = 0;
      if (stop) return true;
    }
    return false;
  };

  place_block = [&]() -> bool {
    if (static_cast<int>(blocks.size()) + unused / per_block <= static_cast<int>(best.size())) {
      return false;
    }
    Support cur{0};
    return extend(cur);
  };

  if (goal > 0) place_block();

  SearchReport report;
  report.v = v;
  report.k = k;
  report.s = static_cast<int>(best.size());
  report.objective = static_cast<int>(best.size());
  report.witnesses = best;
  report.witness_count = best.empty() ? 0 : 1;
  report.candidates_examined = nodes;
  report.exhaustive = !out_of_budget;
  report.bound = bound;
  report.bound_met = static_cast<int>(best.size()) == bound;
  if (!best.empty() && !verify_ooc(best, v, 1, 1)) {
    throw Error(ErrorCode::VerificationMismatch, "OOC search produced an invalid code");
  }
  return report;
}

SearchReport search_min_aperiodic_header(int v, int k, const SearchLimits& limits) {
  check_range(v >= 1 && k >= 1 && k <= v, "header search needs 1 <= k <= v");
  if (v > limits.max_aperiodic_v || v > 64) {
    throw Error(ErrorCode::CapExceeded, "v = " + std::to_string(v) + " exceeds the exhaustive cap " +
                                            std::to_string(limits.max_aperiodic_v));
  }
  const std::uint64_t count = binomial(v, k);
  if (count > limits.max_candidates) {
    throw Error(ErrorCode::CapExceeded, std::to_string(count) + " candidates exceed the cap of " +
                                            std::to_string(limits.max_candidates));
  }
  SearchReport report;
  report.v = v;
  report.k = k;
  int best = std::numeric_limits<int>::max();
  std::vector<Mask> witnesses;
  for_each_combination(v, k, [&](Mask m) {
    ++report.candidates_examined;
    const int obj = aperiodic_sidelobe(m, v, best);
    if (obj > best) return true;
    if (obj < best) {
      best = obj;
      witnesses.clear();
      report.witness_count = 0;
    }
    ++report.witness_count;
    add_witness(witnesses, m, limits.max_witnesses);
    return true;
  });
  report.objective = best;
  for (Mask m : witnesses) report.witnesses.push_back(to_support(m));
  report.exhaustive = true;
  return report;
}

SearchReport search_header_set(int v, int k, int s, int min_distance, const SearchLimits& limits) {
  check_range(s >= 1 && min_distance >= 0, "header set search needs s >= 1, min_distance >= 0");
  if (s == 1) {
    SearchReport report = search_min_aperiodic_header(v, k, limits);
    report.s = 1;
    report.witnesses.resize(std::min<std::size_t>(report.witnesses.size(), 1));
    report.min_distance = v + 1;
    return report;
  }
  check_range(v >= 1 && k >= 1 && k <= v, "header set search needs 1 <= k <= v");
  if (v > limits.max_header_v || s > limits.max_header_s) {
    throw Error(ErrorCode::CapExceeded, "header set search is capped at v <= " +
                                            std::to_string(limits.max_header_v) + ", s <= " +
                                            std::to_string(limits.max_header_s));
  }
  if (min_distance > 2 * k || min_distance > v) {
    throw Error(ErrorCode::Infeasible, "no two weight-" + std::to_string(k) +
                                           " vectors are at distance " + std::to_string(min_distance));
  }
  if (binomial(v, k) > limits.max_candidates) {
    throw Error(ErrorCode::CapExceeded, "too many candidate supports");
  }

  std::vector<Mask> cands;
  for_each_combination(v, k, [&](Mask m) {
    cands.push_back(m);
    return true;
  });
  std::sort(cands.begin(), cands.end(), lex_less);
  std::vector<int> autos(cands.size());
  int lower_bound = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    autos[i] = aperiodic_sidelobe(cands[i], v);
    lower_bound = std::min(lower_bound, autos[i]);
  }
  // Some shift always lines up two ones of different codewords.
  lower_bound = std::max(lower_bound, 1);

  int best = std::numeric_limits<int>::max();
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> best_set;
  std::uint64_t nodes = 0;
  bool done = false;

  std::function<void(std::size_t, int)> dfs = [&](std::size_t from, int partial) {
    if (done) return;
    if (static_cast<int>(chosen.size()) == s) {
      best = partial;
      best_set = chosen;
      if (best <= lower_bound) done = true;
      return;
    }
    for (std::size_t i = from; i < cands.size() && !done; ++i) {
      if (++nodes > limits.max_header_nodes) {
        throw Error(ErrorCode::CapExceeded, "header set search exceeded its node budget of " +
                                                std::to_string(limits.max_header_nodes));
      }
      int obj = std::max(partial, autos[i]);
      if (obj >= best) continue;
      bool ok = true;
      for (std::size_t j : chosen) {
        if (std::popcount(cands[i] ^ cands[j]) < min_distance) {
          ok = false;
          break;
        }
        obj = std::max(obj, aperiodic_cross(cands[j], cands[i], v));
        if (obj >= best) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(i);
      dfs(i + 1, obj);
      chosen.pop_back();
    }
  };
  dfs(0, 0);

  if (best_set.empty()) {
    throw Error(ErrorCode::Infeasible, "no " + std::to_string(s) + " supports of weight " +
                                           std::to_string(k) + " are pairwise at distance >= " +
                                           std::to_string(min_distance));
  }
  SearchReport report;
  report.v = v;
  report.k = k;
  report.s = s;
  report.objective = best;
  int dmin = v + 1;
  for (std::size_t a = 0; a < best_set.size(); ++a) {
    report.witnesses.push_back(to_support(cands[best_set[a]]));
    for (std::size_t b = a + 1; b < best_set.size(); ++b) {
      dmin = std::min(dmin, std::popcount(cands[best_set[a]] ^ cands[best_set[b]]));
    }
  }
  report.min_distance = dmin;
  report.witness_count = 1;
  report.candidates_examined = nodes;
  report.exhaustive = true;
  return report;
}

}  // namespace qtag
