#include "oracle/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppkex::oracle {

using domain::BloodGroup;
using domain::CriteriaWeights;
using domain::HlaVector;

std::uint32_t eval_hla(const HlaVector& donor_typing, const HlaVector& recipient_typing,
                       const CriteriaWeights& cw) {
  const std::size_t mismatches = (donor_typing ^ recipient_typing).count();
  if (mismatches == 0) return cw.class_a;
  if (mismatches < 3) return cw.class_b;
  if (mismatches < 5) return cw.class_c;
  return 0;
}

std::uint32_t eval_abo(BloodGroup donor, BloodGroup recipient, const CriteriaWeights& cw) {
  const std::uint8_t d = domain::encode_blood_group(donor);
  const std::uint8_t r = domain::encode_blood_group(recipient);
  const bool equal = d == r;
  // Recipient must carry every antigen the donor has: bit 0 = A, bit 1 = B.
  const bool covers = ((r >> 1 & 1) && !(d & 1)) || ((r & 1) && !(d >> 1 & 1));
  return (equal || covers) ? cw.class_a : 0;
}

std::uint32_t eval_age(std::uint8_t donor_group, std::uint8_t recipient_group,
                       const CriteriaWeights& cw) {
  if (donor_group == recipient_group) return cw.class_a;
  if (donor_group == 0 && recipient_group == 1) return cw.class_b;  // junior organ, senior recipient
  return 0;
}

std::uint32_t eval_sex(std::uint8_t donor_sex, std::uint8_t recipient_sex,
                       const CriteriaWeights& cw) {
  if (donor_sex == recipient_sex) return cw.class_a;
  if (donor_sex == 1 && recipient_sex == 0) return 0;  // female organ to male recipient
  return cw.class_b;
}

std::uint32_t eval_weight(std::uint32_t donor_kg, std::uint32_t recipient_kg,
                          const CriteriaWeights& cw) {
  return donor_kg < recipient_kg ? 0 : cw.class_a;
}

bool crossmatch_ok(const HlaVector& donor_antigens, const HlaVector& recipient_antibodies) {
  return (donor_antigens & recipient_antibodies).none();
}

std::uint32_t edge_weight(const domain::PairRecord& donor_side,
                          const domain::PairRecord& recipient_side, const CriteriaWeights& cw) {
  const auto& d = donor_side.donor;
  const auto& r = recipient_side.recipient;
  if (!crossmatch_ok(d.hla, r.ahla)) return 0;
  std::uint32_t w = 1;
  w += cw.w_hla * eval_hla(d.hla, r.hla, cw);
  w += cw.w_abo * eval_abo(d.bg, r.bg, cw);
  w += cw.w_age * eval_age(domain::encode_age_group(d.age_years),
                           domain::encode_age_group(r.age_years), cw);
  w += cw.w_sex * eval_sex(d.sex, r.sex, cw);
  w += cw.w_weight * eval_weight(d.weight_kg, r.weight_kg, cw);
  return w;
}

Matrix compatibility_graph(const domain::Cohort& cohort, const CriteriaWeights& cw) {
  const std::size_t n = cohort.size();
  Matrix g(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;  // a pair cannot serve itself
      g[i][j] = edge_weight(cohort[i], cohort[j], cw);
    }
  }
  return g;
}

std::uint64_t cycle_count_trace(const Matrix& comp_graph, std::uint32_t len) {
  const std::size_t n = comp_graph.size();
  std::vector<std::vector<std::uint64_t>> u(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u[i][j] = comp_graph[i][j] > 0 ? 1 : 0;
  auto acc = u;
  for (std::uint32_t step = 1; step < len; ++step) {
    std::vector<std::vector<std::uint64_t>> next(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (acc[i][k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] += acc[i][k] * u[k][j];
      }
    acc = std::move(next);
  }
  std::uint64_t trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace += acc[i][i];
  return trace;
}

std::uint64_t total_cycles(std::uint32_t n, std::uint32_t len) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < len; ++i) {
    if (n < i + 1) return 0;
    total *= n - i;
  }
  return total;
}

namespace {

void extend_tuple(const Matrix& g, std::uint32_t len, std::vector<std::uint32_t>& tuple,
                  std::vector<bool>& used, std::vector<Candidate>& out) {
  const std::uint32_t n = static_cast<std::uint32_t>(g.size());
  if (tuple.size() == len) {
    Candidate cand;
    cand.vertices = tuple;
    std::uint32_t weight = 0;
    bool all_present = true;
    for (std::uint32_t t = 0; t < len; ++t) {
      const std::uint32_t w = g[tuple[t]][tuple[(t + 1) % len]];
      weight += w;
      all_present = all_present && w > 0;
    }
    cand.weight = all_present ? weight : 0;
    out.push_back(std::move(cand));
    return;
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (used[v]) continue;
    used[v] = true;
    tuple.push_back(v);
    extend_tuple(g, len, tuple, used, out);
    tuple.pop_back();
    used[v] = false;
  }
}

bool is_dummy(const std::vector<std::uint32_t>& vertices, std::uint32_t n_pairs) {
  return std::all_of(vertices.begin(), vertices.end(),
                     [n_pairs](std::uint32_t v) { return v == n_pairs; });
}

}  // namespace

std::vector<Candidate> find_cycles(const Matrix& comp_graph, std::uint32_t len) {
  std::vector<Candidate> out;
  const std::uint32_t n = static_cast<std::uint32_t>(comp_graph.size());
  out.reserve(total_cycles(n, len));
  std::vector<std::uint32_t> tuple;
  std::vector<bool> used(n, false);
  extend_tuple(comp_graph, len, tuple, used, out);
  return out;
}

std::vector<Candidate> knn_sort(const std::vector<Candidate>& candidates, std::uint64_t k,
                                std::uint32_t len, std::uint32_t n_pairs) {
  const std::vector<std::uint32_t> dummy(len, n_pairs);
  std::vector<Candidate> slots(k + 1, Candidate{0, dummy});
  for (const auto& cand : candidates) {
    slots[k] = cand;
    for (std::uint64_t j = k; j >= 1; --j) {
      if (slots[j].weight > slots[j - 1].weight) std::swap(slots[j], slots[j - 1]);
    }
  }
  slots.resize(k);
  return slots;
}

std::vector<Candidate> remove_duplicates(const std::vector<Candidate>& sorted,
                                         std::uint64_t unique_k, std::uint32_t len,
                                         std::uint32_t n_pairs) {
  std::vector<Candidate> zeroed = sorted;
  for (std::size_t i = 0; i < zeroed.size(); ++i) {
    bool dup = false;
    for (std::size_t j = 0; j < i && !dup; ++j) {
      for (std::uint32_t rot = 1; rot < len && !dup; ++rot) {
        bool same = true;
        for (std::uint32_t l = 0; l < len; ++l) {
          if (zeroed[i].vertices[l] != sorted[j].vertices[(l + rot) % len]) {
            same = false;
            break;
          }
        }
        dup = same;
      }
    }
    if (dup) zeroed[i].weight = 0;
  }
  return knn_sort(zeroed, unique_k, len, n_pairs);
}

bool disjoint_set(const std::vector<std::vector<std::uint32_t>>& set,
                  const std::vector<std::uint32_t>& cycle) {
  for (const auto& entry : set)
    for (const auto a : entry)
      for (const auto b : cycle)
        if (a == b) return false;
  return true;
}

std::vector<AnchorSet> anchor_sets(const std::vector<Candidate>& filtered, std::uint32_t len,
                                   std::uint32_t n_pairs) {
  const std::vector<std::uint32_t> dummy(len, n_pairs);
  std::vector<AnchorSet> sets;
  sets.reserve(filtered.size());
  for (std::size_t i = 0; i < filtered.size(); ++i) {
    AnchorSet s;
    s.entries.push_back(filtered[i].vertices);
    s.weight = filtered[i].weight;
    for (std::size_t j = 0; j < filtered.size(); ++j) {
      if (j == i) continue;
      const bool ok = disjoint_set(s.entries, filtered[j].vertices);
      s.entries.push_back(ok ? filtered[j].vertices : dummy);
      s.weight += ok ? filtered[j].weight : 0;
    }
    sets.push_back(std::move(s));
  }
  return sets;
}

AnchorSet find_maximum_set(const std::vector<AnchorSet>& sets) {
  AnchorSet best;  // weight 0, no entries
  for (const auto& s : sets) {
    if (s.weight > best.weight) best = s;
  }
  return best;
}

OracleResult run_pipeline(const domain::Cohort& cohort, const CriteriaWeights& cw,
                          std::uint32_t cycle_len) {
  OracleResult res;
  const std::uint32_t n = static_cast<std::uint32_t>(cohort.size());
  res.comp_graph = compatibility_graph(cohort, cw);
  res.unweighted.assign(n, std::vector<std::uint32_t>(n, 0));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) res.unweighted[i][j] = res.comp_graph[i][j] > 0;

  res.cycle_count = cycle_count_trace(res.comp_graph, cycle_len);
  res.candidates = find_cycles(res.comp_graph, cycle_len);
  if (cycle_len >= 4) {
    std::uint64_t valid = 0;
    for (const auto& c : res.candidates) valid += c.weight > 0;
    res.trace_tuple_divergence = valid != res.cycle_count;
  }
  res.sorted = knn_sort(res.candidates, res.cycle_count, cycle_len, n);
  res.unique_count = res.cycle_count / cycle_len;
  res.filtered = remove_duplicates(res.sorted, res.unique_count, cycle_len, n);
  res.sets = anchor_sets(res.filtered, cycle_len, n);
  res.winner = find_maximum_set(res.sets);
  res.total_weight = res.winner.weight;
  for (const auto& entry : res.winner.entries) {
    if (!is_dummy(entry, n)) res.solution_cycles.push_back(entry);
  }
  return res;
}

std::vector<std::vector<std::uint32_t>> canonical_cycles(const Matrix& comp_graph,
                                                         std::uint32_t len) {
  // Anchor each cycle at its smallest vertex so every simple cycle is
  // produced exactly once, independently of the tuple enumeration above.
  const std::uint32_t n = static_cast<std::uint32_t>(comp_graph.size());
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> path;
  std::vector<bool> used(n, false);

  auto dfs = [&](auto&& self, std::uint32_t start) -> void {
    if (path.size() == len) {
      if (comp_graph[path.back()][start] > 0) out.push_back(path);
      return;
    }
    for (std::uint32_t v = start + 1; v < n; ++v) {
      if (used[v] || comp_graph[path.back()][v] == 0) continue;
      used[v] = true;
      path.push_back(v);
      self(self, start);
      path.pop_back();
      used[v] = false;
    }
  };

  for (std::uint32_t s = 0; s < n; ++s) {
    path.assign(1, s);
    std::fill(used.begin(), used.end(), false);
    used[s] = true;
    dfs(dfs, s);
  }
  return out;
}

std::optional<std::uint64_t> optimal_packing_weight(const Matrix& comp_graph, std::uint32_t len,
                                                    std::uint32_t max_n) {
  const std::uint32_t n = static_cast<std::uint32_t>(comp_graph.size());
  if (n > max_n) return std::nullopt;
  auto cycles = canonical_cycles(comp_graph, len);
  std::vector<std::uint64_t> masks;
  std::vector<std::uint64_t> weights;
  for (const auto& c : cycles) {
    std::uint64_t mask = 0;
    std::uint64_t w = 0;
    for (std::uint32_t t = 0; t < len; ++t) {
      mask |= 1ull << c[t];
      w += comp_graph[c[t]][c[(t + 1) % len]];
    }
    masks.push_back(mask);
    weights.push_back(w);
  }
  std::uint64_t best = 0;
  auto dfs = [&](auto&& self, std::size_t idx, std::uint64_t used, std::uint64_t acc) -> void {
    best = std::max(best, acc);
    for (std::size_t i = idx; i < masks.size(); ++i) {
      if (masks[i] & used) continue;
      self(self, i + 1, used | masks[i], acc + weights[i]);
    }
  };
  dfs(dfs, 0, 0, 0);
  return best;
}

}  // namespace ppkex::oracle
