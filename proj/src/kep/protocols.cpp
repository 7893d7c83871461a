#include "kep/protocols.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <numeric>

#include "common/errors.hpp"

namespace ppkex::kep {

using mpc::ArithShareVec;
using mpc::BoolShareVec;
using mpc::Ring;

namespace {

// Candidate cycle sums stay below 4 * 2^24; packed set weights get a
// full ring word.
constexpr std::uint32_t kCandWeightWidth = 26;
constexpr std::uint32_t kSetWeightWidth = 32;

std::uint64_t lane_u64(const BoolShareVec& v, std::size_t lane) {
  std::uint64_t out = 0;
  for (std::uint32_t p = 0; p < v.width(); ++p) out |= std::uint64_t(v.get_bit(lane, p)) << p;
  return out;
}

void set_lane_u64(BoolShareVec& v, std::size_t lane, std::uint64_t value) {
  for (std::uint32_t p = 0; p < v.width(); ++p) v.set_bit(lane, p, (value >> p) & 1);
}

std::uint64_t count_tuples(std::uint32_t n, std::uint32_t len) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < len; ++i) total *= (n > i) ? (n - i) : 0;
  return total;
}

// All ordered distinct-vertex tuples in lexicographic order. This is the
// public candidate enumeration every later stage indexes into.
std::vector<std::vector<std::uint32_t>> enumerate_tuples(std::uint32_t n, std::uint32_t len) {
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(count_tuples(n, len));
  std::vector<std::uint32_t> tuple;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self) -> void {
    if (tuple.size() == len) {
      out.push_back(tuple);
      return;
    }
    for (std::uint32_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      tuple.push_back(v);
      self(self);
      tuple.pop_back();
      used[v] = false;
    }
  };
  rec(rec);
  return out;
}

SharedCohortHalf make_half(std::size_t n) {
  SharedCohortHalf h;
  h.d_hla = BoolShareVec(n, domain::kHlaCount);
  h.r_ahla = BoolShareVec(n, domain::kHlaCount);
  h.r_hla = BoolShareVec(n, domain::kHlaCount);
  h.d_bg = BoolShareVec(n, 2);
  h.r_bg = BoolShareVec(n, 2);
  h.d_age = BoolShareVec(n, 1);
  h.r_age = BoolShareVec(n, 1);
  h.d_sex = BoolShareVec(n, 1);
  h.r_sex = BoolShareVec(n, 1);
  h.d_w = BoolShareVec(n, 16);
  h.r_w = BoolShareVec(n, 16);
  return h;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Bytes serialize_cohort_half(const SharedCohortHalf& half) {
  const std::size_t n = half.n_pairs();
  Bytes out;
  out.reserve(n * kPairBlobBytes);
  for (std::size_t i = 0; i < n; ++i) {
    put_u64_le(out, lane_u64(half.d_hla, i));
    put_u64_le(out, lane_u64(half.r_ahla, i));
    put_u64_le(out, lane_u64(half.r_hla, i));
    out.push_back(std::uint8_t(half.d_bg.get_lane(i)));
    out.push_back(std::uint8_t(half.r_bg.get_lane(i)));
    out.push_back(std::uint8_t(half.d_age.get_lane(i)));
    out.push_back(std::uint8_t(half.r_age.get_lane(i)));
    out.push_back(std::uint8_t(half.d_sex.get_lane(i)));
    out.push_back(std::uint8_t(half.r_sex.get_lane(i)));
    const std::uint32_t dw = half.d_w.get_lane(i), rw = half.r_w.get_lane(i);
    out.push_back(std::uint8_t(dw & 0xff));
    out.push_back(std::uint8_t(dw >> 8));
    out.push_back(std::uint8_t(rw & 0xff));
    out.push_back(std::uint8_t(rw >> 8));
  }
  return out;
}

SharedCohortHalf parse_cohort_half(std::span<const std::uint8_t> blob, std::size_t n_pairs) {
  if (blob.size() != n_pairs * kPairBlobBytes) {
    throw ProtocolFault("input share payload has wrong size for " + std::to_string(n_pairs) +
                        " pairs");
  }
  SharedCohortHalf h = make_half(n_pairs);
  const std::uint8_t* p = blob.data();
  for (std::size_t i = 0; i < n_pairs; ++i, p += kPairBlobBytes) {
    const std::uint64_t dh = get_u64_le(p);
    const std::uint64_t rah = get_u64_le(p + 8);
    const std::uint64_t rh = get_u64_le(p + 16);
    if ((dh | rah | rh) >> domain::kHlaCount) {
      throw ProtocolFault("input share uses reserved antigen bits");
    }
    if ((p[24] | p[25]) >> 2 || (p[26] | p[27] | p[28] | p[29]) >> 1) {
      throw ProtocolFault("input share uses reserved flag bits");
    }
    set_lane_u64(h.d_hla, i, dh);
    set_lane_u64(h.r_ahla, i, rah);
    set_lane_u64(h.r_hla, i, rh);
    h.d_bg.set_lane(i, p[24]);
    h.r_bg.set_lane(i, p[25]);
    h.d_age.set_lane(i, p[26]);
    h.r_age.set_lane(i, p[27]);
    h.d_sex.set_lane(i, p[28]);
    h.r_sex.set_lane(i, p[29]);
    h.d_w.set_lane(i, std::uint32_t(p[30]) | std::uint32_t(p[31]) << 8);
    h.r_w.set_lane(i, std::uint32_t(p[32]) | std::uint32_t(p[33]) << 8);
  }
  return h;
}

std::pair<SharedCohortHalf, SharedCohortHalf> share_cohort(const domain::Cohort& cohort,
                                                           std::mt19937_64& rng) {
  const std::size_t n = cohort.size();
  SharedCohortHalf h0 = make_half(n), h1 = make_half(n);
  auto split = [&](BoolShareVec& a, BoolShareVec& b, std::size_t lane, std::uint64_t value,
                   std::uint32_t width) {
    const std::uint64_t mask = width >= 64 ? ~0ull : ((1ull << width) - 1);
    const std::uint64_t r = rng() & mask;
    set_lane_u64(a, lane, r);
    set_lane_u64(b, lane, (value ^ r) & mask);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = cohort[i].donor;
    const auto& r = cohort[i].recipient;
    split(h0.d_hla, h1.d_hla, i, d.hla.to_ullong(), domain::kHlaCount);
    split(h0.r_ahla, h1.r_ahla, i, r.ahla.to_ullong(), domain::kHlaCount);
    split(h0.r_hla, h1.r_hla, i, r.hla.to_ullong(), domain::kHlaCount);
    split(h0.d_bg, h1.d_bg, i, domain::encode_blood_group(d.bg), 2);
    split(h0.r_bg, h1.r_bg, i, domain::encode_blood_group(r.bg), 2);
    split(h0.d_age, h1.d_age, i, domain::encode_age_group(d.age_years), 1);
    split(h0.r_age, h1.r_age, i, domain::encode_age_group(r.age_years), 1);
    split(h0.d_sex, h1.d_sex, i, d.sex, 1);
    split(h0.r_sex, h1.r_sex, i, r.sex, 1);
    split(h0.d_w, h1.d_w, i, d.weight_kg, 16);
    split(h0.r_w, h1.r_w, i, r.weight_kg, 16);
  }
  return {std::move(h0), std::move(h1)};
}

KepPipeline::KepPipeline(mpc::Session& session, mpc::TripleSource& source, PipelineConfig cfg)
    : s_(session), g_(session), source_(source), cfg_(std::move(cfg)),
      id_width_(mpc::ceil_log2(std::uint64_t(cfg_.params.n_pairs) + 1)) {}

std::uint32_t KepPipeline::edge_lane(std::uint32_t i, std::uint32_t j) const {
  assert(i != j);
  return i * (cfg_.params.n_pairs - 1) + (j > i ? j - 1 : j);
}

BoolShareVec KepPipeline::dummy_record(std::size_t lanes, const RecordShape& shape) const {
  BoolShareVec rec = g_.bool_const(lanes, shape.weight_width, 0);
  const BoolShareVec field = g_.bool_const(lanes, shape.id_width, cfg_.params.n_pairs);
  for (std::uint32_t e = 0; e < shape.entries; ++e) rec = mpc::concat_width(rec, field);
  return rec;
}

template <typename Body>
auto KepPipeline::run_phase(mpc::Phase phase, Body&& body) {
  s_.begin_phase(phase);

  const auto t_tally = std::chrono::steady_clock::now();
  s_.begin_tally();
  (void)body();
  const mpc::TripleCounts need = s_.end_tally();
  s_.ledger().add_setup_seconds(seconds_since(t_tally));

  if (need == mpc::TripleCounts{}) {
    s_.store() = mpc::TripleStoreHalf{};
  } else {
    const auto t_fetch = std::chrono::steady_clock::now();
    s_.store() = source_.fetch(s_.party(), need);
    if (!(s_.store().provisioned() == need)) {
      throw SetupUnderprovisioned("dealer returned material not matching the request");
    }
    s_.ledger().add_setup_bytes(mpc::counts_wire_bytes() + mpc::store_wire_bytes(need));
    s_.ledger().add_setup_seconds(seconds_since(t_fetch));
  }

  const auto t_online = std::chrono::steady_clock::now();
  auto out = body();
  s_.ledger().add_online_seconds(seconds_since(t_online));
  if (!(s_.store().consumed() == s_.store().provisioned())) {
    throw ProtocolFault("phase consumed different dealer material than it tallied");
  }
  return out;
}

KepPipeline::MatchingOut KepPipeline::phase_matching(const SharedCohortHalf& in) {
  const std::uint32_t n = cfg_.params.n_pairs;
  const std::size_t e_count = std::size_t(n) * (n - 1);

  std::vector<std::uint32_t> di(e_count), rj(e_count);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      di[edge_lane(i, j)] = i;
      rj[edge_lane(i, j)] = j;
    }
  }

  const BoolShareVec dh = in.d_hla.gather(di);
  const BoolShareVec rah = in.r_ahla.gather(rj);
  const BoolShareVec rh = in.r_hla.gather(rj);
  const BoolShareVec dbg = in.d_bg.gather(di), rbg = in.r_bg.gather(rj);
  const BoolShareVec dage = in.d_age.gather(di), rage = in.r_age.gather(rj);
  const BoolShareVec dsex = in.d_sex.gather(di), rsex = in.r_sex.gather(rj);
  const BoolShareVec dw = in.d_w.gather(di), rw = in.r_w.gather(rj);

  // Crossmatch: any antibody hitting a donor antigen blocks the edge.
  const BoolShareVec ok = g_.not_(g_.width_or_tree(g_.and_(dh, rah)));

  // HLA typing mismatch count graded into classes A (0), B (1-2), C (3-4).
  const BoolShareVec mism = g_.hamming_weight(g_.xor_(dh, rh), 6);
  const std::vector<std::uint32_t> c0(e_count, 0), c2(e_count, 2), c4(e_count, 4);
  const BoolShareVec is0 = g_.eq_const(mism, c0);
  const BoolShareVec gt2 = g_.gt_const(mism, c2);
  const BoolShareVec gt4 = g_.gt_const(mism, c4);
  const BoolShareVec hla_a = is0;
  const BoolShareVec hla_b = g_.xor_(g_.not_(gt2), is0);
  const BoolShareVec hla_c = g_.xor_(gt2, gt4);

  // ABO: identical groups, or the recipient carries every donor antigen.
  const BoolShareVec d0 = dbg.slice_width(0, 1), d1 = dbg.slice_width(1, 2);
  const BoolShareVec r0 = rbg.slice_width(0, 1), r1 = rbg.slice_width(1, 2);
  const BoolShareVec bg_eq = g_.eq(dbg, rbg);
  const BoolShareVec cov = g_.and_(mpc::concat_width(r1, r0),
                                   mpc::concat_width(g_.not_(d0), g_.not_(d1)));
  const BoolShareVec abo_a = g_.width_or_tree(mpc::concat_width(bg_eq, cov));

  // Age groups: equal is class A, junior organ into senior recipient B.
  // Sex: equal is class A, female organ into male recipient scores zero,
  // the reverse direction class B. Both class-B ANDs share one round.
  const BoolShareVec age_a = g_.not_(g_.xor_(dage, rage));
  const BoolShareVec sex_a = g_.not_(g_.xor_(dsex, rsex));
  const BoolShareVec bsel = g_.and_(mpc::concat_width(g_.not_(dage), g_.not_(dsex)),
                                    mpc::concat_width(rage, rsex));
  const BoolShareVec age_b = bsel.slice_width(0, 1);
  const BoolShareVec sex_b = bsel.slice_width(1, 2);

  // Body weight: a donor organ lighter than the recipient scores zero.
  const BoolShareVec w_a = g_.not_(g_.gt(rw, dw));

  // One conversion batch for all ten selector bits per edge.
  BoolShareVec sel = ok;
  for (const BoolShareVec* part :
       {&hla_a, &hla_b, &hla_c, &abo_a, &age_a, &age_b, &sex_a, &sex_b, &w_a}) {
    sel = mpc::concat_lanes(sel, *part);
  }
  const ArithShareVec sel_arith = g_.b2a(sel);
  auto part = [&](std::size_t t) {
    ArithShareVec p(e_count);
    std::copy(sel_arith.v.begin() + t * e_count, sel_arith.v.begin() + (t + 1) * e_count,
              p.v.begin());
    return p;
  };

  const auto& cw = cfg_.weights;
  ArithShareVec raw = g_.arith_const(e_count, 1);
  raw = g_.add(raw, g_.mul_const(part(1), cw.w_hla * cw.class_a));
  raw = g_.add(raw, g_.mul_const(part(2), cw.w_hla * cw.class_b));
  raw = g_.add(raw, g_.mul_const(part(3), cw.w_hla * cw.class_c));
  raw = g_.add(raw, g_.mul_const(part(4), cw.w_abo * cw.class_a));
  raw = g_.add(raw, g_.mul_const(part(5), cw.w_age * cw.class_a));
  raw = g_.add(raw, g_.mul_const(part(6), cw.w_age * cw.class_b));
  raw = g_.add(raw, g_.mul_const(part(7), cw.w_sex * cw.class_a));
  raw = g_.add(raw, g_.mul_const(part(8), cw.w_sex * cw.class_b));
  raw = g_.add(raw, g_.mul_const(part(9), cw.w_weight * cw.class_a));

  const ArithShareVec ok_arith = part(0);
  const ArithShareVec edge_w = g_.mul(ok_arith, raw);

  MatchingOut out;
  out.edge_ok = ok;
  out.weights = ArithShareVec(std::size_t(n) * n);
  out.indicator = ArithShareVec(std::size_t(n) * n);
  std::vector<std::uint32_t> cell(e_count);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (i != j) cell[edge_lane(i, j)] = i * n + j;
  out.weights.scatter(edge_w, cell);
  out.indicator.scatter(ok_arith, cell);
  return out;
}

std::uint32_t KepPipeline::phase_cycle_count(const MatchingOut& m) {
  const std::uint32_t n = cfg_.params.n_pairs;
  const std::uint32_t len = cfg_.params.cycle_len;
  const std::size_t n2 = std::size_t(n) * n;

  // trace(U^len) over the 0/1 indicator; all values stay far below 2^32.
  ArithShareVec acc = m.indicator;
  std::vector<std::uint32_t> ai(n2 * n), bi(n2 * n);
  for (std::uint32_t step = 1; step < len; ++step) {
    std::size_t t = 0;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t k = 0; k < n; ++k, ++t) {
          ai[t] = i * n + k;
          bi[t] = k * n + j;
        }
    const ArithShareVec prod = g_.mul(acc.gather(ai), m.indicator.gather(bi));
    ArithShareVec next(n2);
    t = 0;
    for (std::size_t c = 0; c < n2; ++c) {
      Ring sum = 0;
      for (std::uint32_t k = 0; k < n; ++k) sum += prod.v[t++];
      next.v[c] = sum;
    }
    acc = std::move(next);
  }

  ArithShareVec trace(1);
  for (std::uint32_t i = 0; i < n; ++i) trace.v[0] += acc.v[std::size_t(i) * n + i];
  const std::uint32_t revealed = g_.reveal(trace)[0];

  if (cfg_.reveal_guard && revealed > count_tuples(n, len)) {
    throw ProtocolFault("reveal guard: cycle count " + std::to_string(revealed) +
                        " exceeds the tuple bound " + std::to_string(count_tuples(n, len)));
  }
  return revealed;
}

BoolShareVec KepPipeline::knn_wavefront(const BoolShareVec& cands, const RecordShape& shape,
                                        std::uint64_t k, const BoolShareVec& initial_slot) {
  const std::uint32_t w = shape.width();
  assert(cands.width() == w && initial_slot.width() == w && initial_slot.lanes() == 1);
  if (k == 0) return BoolShareVec(0, w);

  const std::uint64_t t_count = cands.lanes();
  const std::vector<std::uint32_t> rep(k + 1, 0);
  BoolShareVec slots = initial_slot.gather(rep);

  std::vector<std::uint32_t> head(k);
  std::iota(head.begin(), head.end(), 0u);
  if (t_count == 0) return slots.gather(head);

  // Comparator for insertion c at boundary j runs in layer 2c + (k-j) + 1;
  // the insertion write itself lands in layer 2c. Same-layer comparators
  // touch disjoint slot pairs, so each layer is one batch.
  const std::uint64_t last_layer = 2 * (t_count - 1) + k;
  for (std::uint64_t layer = 0; layer <= last_layer; ++layer) {
    if (layer % 2 == 0 && layer / 2 < t_count) {
      const std::vector<std::uint32_t> src{std::uint32_t(layer / 2)};
      const std::vector<std::uint32_t> dst{std::uint32_t(k)};
      slots.scatter(cands.gather(src), dst);
    }

    // offsets off = (k - j) + 1 with matching parity and a live insertion
    std::uint64_t off_lo = layer > 2 * (t_count - 1) ? layer - 2 * (t_count - 1) : 1;
    if (off_lo < 1) off_lo = 1;
    if (off_lo % 2 != layer % 2) ++off_lo;
    const std::uint64_t off_hi = std::min<std::uint64_t>(k, layer);
    std::vector<std::uint32_t> up, dn;
    for (std::uint64_t off = off_lo; off <= off_hi; off += 2) {
      const std::uint64_t j = k + 1 - off;
      up.push_back(std::uint32_t(j));
      dn.push_back(std::uint32_t(j - 1));
    }
    if (up.empty()) continue;

    const BoolShareVec a = slots.gather(up);
    const BoolShareVec b = slots.gather(dn);
    const BoolShareVec cond = g_.gt(a.slice_width(0, shape.weight_width),
                                    b.slice_width(0, shape.weight_width));
    const BoolShareVec delta = g_.and_broadcast(cond, g_.xor_(a, b));
    slots.scatter(g_.xor_(a, delta), up);
    slots.scatter(g_.xor_(b, delta), dn);
  }
  return slots.gather(head);
}

BoolShareVec KepPipeline::phase_cycle_eval(const MatchingOut& m, std::uint32_t cycle_count) {
  const std::uint32_t n = cfg_.params.n_pairs;
  const std::uint32_t len = cfg_.params.cycle_len;
  const RecordShape shape{kCandWeightWidth, len, id_width_};
  if (cycle_count == 0) return BoolShareVec(0, shape.width());

  const auto tuples = enumerate_tuples(n, len);
  const std::size_t t_count = tuples.size();

  // Validity is the AND of the hop indicators; the weight is the plain
  // sum of hop weights (zero contributions from missing hops), zeroed
  // afterwards unless the whole tour exists.
  BoolShareVec hops(t_count, len);
  ArithShareVec wsum(t_count);
  std::vector<std::uint32_t> hop_idx(t_count), cell_idx(t_count);
  for (std::uint32_t h = 0; h < len; ++h) {
    for (std::size_t t = 0; t < t_count; ++t) {
      const std::uint32_t a = tuples[t][h], b = tuples[t][(h + 1) % len];
      hop_idx[t] = edge_lane(a, b);
      cell_idx[t] = a * n + b;
    }
    const BoolShareVec hop = m.edge_ok.gather(hop_idx);
    std::copy(hop.plane(0), hop.plane(0) + hops.words_per_plane(), hops.plane(h));
    const ArithShareVec hw = m.weights.gather(cell_idx);
    for (std::size_t t = 0; t < t_count; ++t) wsum.v[t] += hw.v[t];
  }
  const BoolShareVec valid = g_.width_and_tree(hops);
  const BoolShareVec wb = g_.a2b(wsum, kCandWeightWidth);
  const BoolShareVec cand_w = g_.and_broadcast(valid, wb);

  // Vertex ids are public here; they become secret once sorting starts.
  BoolShareVec rec = cand_w;
  std::vector<std::uint32_t> ids(t_count);
  for (std::uint32_t h = 0; h < len; ++h) {
    for (std::size_t t = 0; t < t_count; ++t) ids[t] = tuples[t][h];
    rec = mpc::concat_width(rec, g_.xor_const_lanes(BoolShareVec(t_count, id_width_), ids));
  }

  const BoolShareVec init = dummy_record(1, shape);
  const BoolShareVec sorted = knn_wavefront(rec, shape, cycle_count, init);

  const std::uint64_t unique_k = cycle_count / len;
  if (unique_k == 0) return BoolShareVec(0, shape.width());

  // A later slot loses its weight when it equals any rotation of an
  // earlier slot. Pairs are compared in one flat batch, then OR-reduced
  // per later slot.
  const std::uint64_t k = cycle_count;
  const std::uint32_t id_planes = len * id_width_;
  const BoolShareVec sorted_ids = sorted.slice_width(shape.weight_width, shape.width());
  std::vector<std::uint32_t> li, lj;
  for (std::uint32_t i = 1; i < k; ++i)
    for (std::uint32_t j = 0; j < i; ++j) {
      li.push_back(i);
      lj.push_back(j);
    }

  BoolShareVec lhs(0, id_planes), rhs(0, id_planes);
  std::vector<std::uint32_t> group;
  group.reserve(li.size() * (len - 1));
  for (std::uint32_t rot = 1; rot < len; ++rot) {
    std::vector<std::uint32_t> perm(id_planes);
    for (std::uint32_t l = 0; l < len; ++l)
      for (std::uint32_t b = 0; b < id_width_; ++b)
        perm[l * id_width_ + b] = ((l + rot) % len) * id_width_ + b;
    const BoolShareVec a = sorted_ids.gather(li);
    const BoolShareVec b = sorted_ids.gather(lj).gather_planes(perm);
    lhs = rot == 1 ? a : mpc::concat_lanes(lhs, a);
    rhs = rot == 1 ? b : mpc::concat_lanes(rhs, b);
    group.insert(group.end(), li.begin(), li.end());
  }
  const BoolShareVec dup_pairs = g_.eq(lhs, rhs);
  const BoolShareVec dup = g_.or_tree_groups(dup_pairs, group, k);
  const BoolShareVec kept_w =
      g_.and_broadcast(g_.not_(dup), sorted.slice_width(0, shape.weight_width));
  const BoolShareVec zeroed = mpc::concat_width(kept_w, sorted_ids);

  return knn_wavefront(zeroed, shape, unique_k, init);
}

PipelineOutcome KepPipeline::phase_solution(const BoolShareVec& filtered,
                                            std::uint32_t cycle_count) {
  const std::uint32_t n = cfg_.params.n_pairs;
  const std::uint32_t len = cfg_.params.cycle_len;
  const std::uint64_t ku = filtered.lanes();
  const std::uint32_t vw = id_width_;

  PipelineOutcome out;
  out.cycle_count = cycle_count;
  out.unique_count = ku;

  // Presence bitmap of the real vertices named by a batch of id records.
  // Dummy ids (value n) fall outside the map on purpose: they never
  // block anything observable, see the disjointness notes in the tests.
  auto presence = [&](const BoolShareVec& recs) {
    const std::size_t lanes = recs.lanes();
    BoolShareVec x(lanes, std::size_t(len) * n * vw);
    for (std::uint32_t l = 0; l < len; ++l)
      for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t b = 0; b < vw; ++b) {
          const std::uint64_t* src = recs.plane(l * vw + b);
          std::uint64_t* dst = x.plane((l * n + v) * vw + b);
          if (s_.party() == 0 && ((v >> b) & 1) == 0) {
            for (std::size_t wd = 0; wd < x.words_per_plane(); ++wd) dst[wd] = ~src[wd];
          } else {
            std::copy(src, src + x.words_per_plane(), dst);
          }
        }
    x.mask_tail();
    const BoolShareVec eqs = g_.width_and_tree_blocks(x, vw);  // len*n planes, l-major
    std::vector<std::uint32_t> perm(std::size_t(len) * n);
    for (std::uint32_t v = 0; v < n; ++v)
      for (std::uint32_t l = 0; l < len; ++l) perm[v * len + l] = l * n + v;
    return g_.width_or_tree_blocks(eqs.gather_planes(perm), len);  // n planes
  };

  BoolShareVec winner(1, kSetWeightWidth);
  std::uint32_t entry_fields = 0;
  if (ku > 0) {
    const BoolShareVec anchor_ids = filtered.slice_width(kCandWeightWidth, filtered.width());
    BoolShareVec entries = anchor_ids;
    BoolShareVec acc = filtered.slice_width(0, kCandWeightWidth).zero_extend(kSetWeightWidth);
    BoolShareVec used = presence(anchor_ids);
    const BoolShareVec dummy_ids =
        dummy_record(ku, RecordShape{0, len, vw});

    for (std::uint64_t s = 0; s + 1 < ku; ++s) {
      std::vector<std::uint32_t> jidx(ku);
      for (std::uint64_t i = 0; i < ku; ++i) jidx[i] = std::uint32_t(s < i ? s : s + 1);
      const BoolShareVec cand = filtered.gather(jidx);
      const BoolShareVec cand_w = cand.slice_width(0, kCandWeightWidth);
      const BoolShareVec cand_ids = cand.slice_width(kCandWeightWidth, cand.width());

      const BoolShareVec pres = presence(cand_ids);
      const BoolShareVec ok = g_.not_(g_.width_or_tree(g_.and_(used, pres)));
      used = g_.xor_(used, g_.and_broadcast(ok, pres));
      entries = mpc::concat_width(entries, g_.mux(ok, cand_ids, dummy_ids));
      acc = g_.add_b(acc, g_.and_broadcast(ok, cand_w.zero_extend(kSetWeightWidth)));
    }

    const RecordShape set_shape{kSetWeightWidth, std::uint32_t(ku) * len, vw};
    const BoolShareVec sets = mpc::concat_width(acc, entries);
    winner = knn_wavefront(sets, set_shape, 1, dummy_record(1, set_shape));
    entry_fields = std::uint32_t(ku) * len;
  }

  // Single output reveal: the winning weight and its entry table.
  BoolShareVec flat(winner.width(), 1);
  for (std::uint32_t p = 0; p < winner.width(); ++p) flat.set_bit(p, 0, winner.get_bit(0, p));
  const auto bits = g_.reveal_bits(flat);

  std::uint32_t weight = 0;
  for (std::uint32_t q = 0; q < kSetWeightWidth; ++q) weight |= (bits[q] & 1u) << q;
  out.total_weight = weight;
  for (std::uint32_t e = 0; e < entry_fields / len; ++e) {
    std::vector<std::uint32_t> row(len, 0);
    for (std::uint32_t l = 0; l < len; ++l)
      for (std::uint32_t b = 0; b < vw; ++b)
        row[l] |= (bits[kSetWeightWidth + (std::size_t(e) * len + l) * vw + b] & 1u) << b;
    out.winner_entries.push_back(row);
    const bool dummy = std::all_of(row.begin(), row.end(),
                                   [n](std::uint32_t v) { return v == n; });
    if (!dummy) out.solution_cycles.push_back(row);
  }
  return out;
}

PipelineOutcome KepPipeline::run(const SharedCohortHalf& input) {
  if (input.n_pairs() != cfg_.params.n_pairs) {
    throw ValidationError("input shares cover " + std::to_string(input.n_pairs()) +
                          " pairs, params say " + std::to_string(cfg_.params.n_pairs));
  }
  const auto matching = run_phase(mpc::Phase::Matching, [&] { return phase_matching(input); });
  const std::uint32_t cycles =
      run_phase(mpc::Phase::CycleComputation, [&] { return phase_cycle_count(matching); });
  const BoolShareVec filtered = run_phase(
      mpc::Phase::CycleEvaluation, [&] { return phase_cycle_eval(matching, cycles); });
  return run_phase(mpc::Phase::SolutionEvaluation,
                   [&] { return phase_solution(filtered, cycles); });
}

}  // namespace ppkex::kep
