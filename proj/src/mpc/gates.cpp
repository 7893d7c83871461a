#include "mpc/gates.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "common/errors.hpp"

namespace ppkex::mpc {

namespace {

std::uint32_t low_mask(std::uint32_t width) {
  return width >= 32 ? 0xffffffffu : ((1u << width) - 1u);
}

// Public bit planes for one-operand-public gates. Not a share: both
// parties hold the same cleartext words.
struct PublicBits {
  std::size_t lanes = 0;
  std::uint32_t width = 0;
  std::size_t wpp = 0;
  std::vector<std::uint64_t> words;

  PublicBits(std::span<const std::uint32_t> vals, std::uint32_t w)
      : lanes(vals.size()), width(w), wpp((vals.size() + 63) / 64),
        words(std::size_t(w) * wpp, 0) {
    for (std::size_t l = 0; l < lanes; ++l) {
      const std::uint64_t bit = 1ull << (l % 64);
      for (std::uint32_t p = 0; p < width; ++p)
        if ((vals[l] >> p) & 1u) words[std::size_t(p) * wpp + l / 64] |= bit;
    }
  }

  const std::uint64_t* plane(std::uint32_t p) const { return words.data() + std::size_t(p) * wpp; }
};

}  // namespace

// ---- arithmetic ----

ArithShareVec Gates::add(const ArithShareVec& x, const ArithShareVec& y) const {
  assert(x.lanes() == y.lanes());
  ArithShareVec z(x.lanes());
  for (std::size_t i = 0; i < z.lanes(); ++i) z.v[i] = x.v[i] + y.v[i];
  return z;
}

ArithShareVec Gates::sub(const ArithShareVec& x, const ArithShareVec& y) const {
  assert(x.lanes() == y.lanes());
  ArithShareVec z(x.lanes());
  for (std::size_t i = 0; i < z.lanes(); ++i) z.v[i] = x.v[i] - y.v[i];
  return z;
}

ArithShareVec Gates::add_const(const ArithShareVec& x, Ring c) const {
  ArithShareVec z = x;
  if (s_.party() == 0)
    for (auto& v : z.v) v += c;
  return z;
}

ArithShareVec Gates::mul_const(const ArithShareVec& x, Ring c) const {
  ArithShareVec z(x.lanes());
  for (std::size_t i = 0; i < z.lanes(); ++i) z.v[i] = x.v[i] * c;
  return z;
}

ArithShareVec Gates::arith_const(std::size_t lanes, Ring c) const {
  return ArithShareVec(lanes, s_.party() == 0 ? c : 0);
}

ArithShareVec Gates::mul(const ArithShareVec& x, const ArithShareVec& y) {
  assert(x.lanes() == y.lanes());
  const std::size_t n = x.lanes();
  if (n == 0) return ArithShareVec(0);
  if (s_.tally()) {
    s_.count_arith(n);
    return ArithShareVec(n);
  }
  const auto* t = s_.store().take_arith(n);
  std::vector<Ring> de(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    de[i] = x.v[i] - t[i][0];
    de[n + i] = y.v[i] - t[i][1];
  }
  open_ring(de.data(), de.size());
  ArithShareVec z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Ring d = de[i], e = de[n + i];
    z.v[i] = t[i][2] + d * t[i][1] + e * t[i][0];
    if (s_.party() == 0) z.v[i] += d * e;
  }
  return z;
}

std::vector<Ring> Gates::reveal(const ArithShareVec& x) {
  std::vector<Ring> out(x.v);
  if (s_.tally()) return std::vector<Ring>(x.lanes(), 0);
  open_ring(out.data(), out.size(), /*reveal_frame=*/true);
  return out;
}

// ---- boolean ----

BoolShareVec Gates::xor_(const BoolShareVec& x, const BoolShareVec& y) const {
  assert(x.lanes() == y.lanes() && x.width() == y.width());
  BoolShareVec z = x;
  for (std::size_t i = 0; i < z.raw().size(); ++i) z.raw()[i] ^= y.raw()[i];
  return z;
}

BoolShareVec Gates::not_(const BoolShareVec& x) const {
  BoolShareVec z = x;
  if (s_.party() == 0) {
    for (auto& w : z.raw()) w = ~w;
    z.mask_tail();
  }
  return z;
}

BoolShareVec Gates::bool_const(std::size_t lanes, std::uint32_t width, std::uint32_t value) const {
  BoolShareVec z(lanes, width);
  if (s_.party() == 0) {
    for (std::uint32_t p = 0; p < width; ++p)
      if ((value >> p) & 1u) std::fill_n(z.plane(p), z.words_per_plane(), ~0ull);
    z.mask_tail();
  }
  return z;
}

BoolShareVec Gates::xor_const_lanes(const BoolShareVec& x,
                                    std::span<const std::uint32_t> vals) const {
  assert(vals.size() == x.lanes());
  BoolShareVec z = x;
  if (s_.party() == 0) {
    PublicBits pb(vals, x.width());
    for (std::uint32_t p = 0; p < x.width(); ++p) {
      auto* zp = z.plane(p);
      const auto* cp = pb.plane(p);
      for (std::size_t w = 0; w < z.words_per_plane(); ++w) zp[w] ^= cp[w];
    }
  }
  return z;
}

BoolShareVec Gates::and_(const BoolShareVec& x, const BoolShareVec& y) {
  assert(x.lanes() == y.lanes() && x.width() == y.width());
  const std::size_t n_words = x.raw().size();
  if (x.lanes() == 0 || x.width() == 0) return BoolShareVec(x.lanes(), x.width());
  if (s_.tally()) {
    s_.count_bool_words(n_words);
    return BoolShareVec(x.lanes(), x.width());
  }
  const auto* t = s_.store().take_bool_words(n_words);
  std::vector<std::uint64_t> de(2 * n_words);
  for (std::size_t i = 0; i < n_words; ++i) {
    de[i] = x.raw()[i] ^ t[i][0];
    de[n_words + i] = y.raw()[i] ^ t[i][1];
  }
  open_words(de.data(), de.size());
  BoolShareVec z(x.lanes(), x.width());
  for (std::size_t i = 0; i < n_words; ++i) {
    const std::uint64_t d = de[i], e = de[n_words + i];
    z.raw()[i] = t[i][2] ^ (d & t[i][1]) ^ (e & t[i][0]);
    if (s_.party() == 0) z.raw()[i] ^= d & e;
  }
  z.mask_tail();
  return z;
}

BoolShareVec Gates::and_broadcast(const BoolShareVec& sel, const BoolShareVec& x) {
  assert(sel.width() == 1 && sel.lanes() == x.lanes());
  BoolShareVec rep(x.lanes(), x.width());
  for (std::uint32_t p = 0; p < x.width(); ++p)
    std::copy(sel.plane(0), sel.plane(0) + sel.words_per_plane(), rep.plane(p));
  return and_(rep, x);
}

BoolShareVec Gates::mux(const BoolShareVec& sel, const BoolShareVec& t, const BoolShareVec& f) {
  return xor_(f, and_broadcast(sel, xor_(t, f)));
}

BoolShareVec Gates::or_(const BoolShareVec& x, const BoolShareVec& y) {
  return not_(and_(not_(x), not_(y)));
}

BoolShareVec Gates::or_tree(const BoolShareVec& x) {
  const std::vector<std::uint32_t> groups(x.lanes(), 0);
  return or_tree_groups(x, groups, 1);
}

BoolShareVec Gates::or_tree_groups(const BoolShareVec& x,
                                   std::span<const std::uint32_t> group_of_lane,
                                   std::size_t n_groups) {
  assert(group_of_lane.size() == x.lanes());
  std::vector<std::vector<std::uint32_t>> mem(n_groups);
  for (std::size_t l = 0; l < x.lanes(); ++l) {
    assert(group_of_lane[l] < n_groups);
    mem[group_of_lane[l]].push_back(std::uint32_t(l));
  }

  BoolShareVec cur = x;
  for (;;) {
    bool pending = false;
    for (const auto& m : mem)
      if (m.size() > 1) pending = true;
    if (!pending) break;

    std::vector<std::uint32_t> left, right, keep;
    std::vector<std::vector<std::uint32_t>> next(n_groups);
    // First pass: pair positions, recording only pair slots.
    for (std::size_t g = 0; g < n_groups; ++g) {
      const auto& m = mem[g];
      for (std::size_t i = 0; i + 1 < m.size(); i += 2) {
        next[g].push_back(std::uint32_t(left.size()));
        left.push_back(m[i]);
        right.push_back(m[i + 1]);
      }
    }
    // Second pass: carried odd members land after all pair outputs.
    for (std::size_t g = 0; g < n_groups; ++g) {
      const auto& m = mem[g];
      if (m.size() % 2 == 1) {
        next[g].push_back(std::uint32_t(left.size() + keep.size()));
        keep.push_back(m.back());
      }
    }
    BoolShareVec merged = or_(cur.gather(left), cur.gather(right));
    cur = keep.empty() ? std::move(merged) : concat_lanes(merged, cur.gather(keep));
    mem = std::move(next);
  }

  BoolShareVec out(n_groups, x.width());
  for (std::size_t g = 0; g < n_groups; ++g)
    if (!mem[g].empty())
      for (std::uint32_t p = 0; p < x.width(); ++p)
        out.set_bit(g, p, cur.get_bit(mem[g][0], p));
  out.mask_tail();
  return out;
}

BoolShareVec Gates::width_and_tree(const BoolShareVec& x) {
  BoolShareVec cur = x;
  assert(cur.width() >= 1);
  while (cur.width() > 1) {
    const std::uint32_t m = cur.width() / 2;
    BoolShareVec merged = and_(cur.slice_width(0, m), cur.slice_width(m, 2 * m));
    cur = (cur.width() % 2 == 1) ? concat_width(merged, cur.slice_width(2 * m, cur.width()))
                                 : std::move(merged);
  }
  return cur;
}

BoolShareVec Gates::width_or_tree(const BoolShareVec& x) {
  BoolShareVec cur = x;
  assert(cur.width() >= 1);
  while (cur.width() > 1) {
    const std::uint32_t m = cur.width() / 2;
    BoolShareVec merged = or_(cur.slice_width(0, m), cur.slice_width(m, 2 * m));
    cur = (cur.width() % 2 == 1) ? concat_width(merged, cur.slice_width(2 * m, cur.width()))
                                 : std::move(merged);
  }
  return cur;
}

BoolShareVec Gates::width_and_tree_blocks(const BoolShareVec& x, std::uint32_t block) {
  assert(block >= 1 && x.width() % block == 0);
  const std::uint32_t n_blocks = x.width() / block;
  BoolShareVec cur = x;
  std::uint32_t bw = block;
  while (bw > 1) {
    const std::uint32_t m = bw / 2;
    std::vector<std::uint32_t> lo, hi;
    lo.reserve(std::size_t(n_blocks) * m);
    hi.reserve(std::size_t(n_blocks) * m);
    for (std::uint32_t b = 0; b < n_blocks; ++b) {
      for (std::uint32_t q = 0; q < m; ++q) {
        lo.push_back(b * bw + 2 * q);
        hi.push_back(b * bw + 2 * q + 1);
      }
    }
    BoolShareVec merged = and_(cur.gather_planes(lo), cur.gather_planes(hi));
    if (bw % 2 == 1) {
      std::vector<std::uint32_t> odd(n_blocks);
      for (std::uint32_t b = 0; b < n_blocks; ++b) odd[b] = b * bw + (bw - 1);
      const BoolShareVec both = concat_width(merged, cur.gather_planes(odd));
      std::vector<std::uint32_t> perm;
      perm.reserve(std::size_t(n_blocks) * (m + 1));
      for (std::uint32_t b = 0; b < n_blocks; ++b) {
        for (std::uint32_t q = 0; q < m; ++q) perm.push_back(b * m + q);
        perm.push_back(n_blocks * m + b);
      }
      cur = both.gather_planes(perm);
      bw = m + 1;
    } else {
      cur = std::move(merged);
      bw = m;
    }
  }
  return cur;
}

BoolShareVec Gates::width_or_tree_blocks(const BoolShareVec& x, std::uint32_t block) {
  return not_(width_and_tree_blocks(not_(x), block));
}

BoolShareVec Gates::eq(const BoolShareVec& x, const BoolShareVec& y) {
  return width_and_tree(not_(xor_(x, y)));
}

BoolShareVec Gates::eq_const(const BoolShareVec& x, std::span<const std::uint32_t> vals) {
  return width_and_tree(not_(xor_const_lanes(x, vals)));
}

// Carry-out of x + ~y + 1 over (g, p) segments. The +1 is folded into
// segment 0, so only G survives to the top.
BoolShareVec Gates::gt(const BoolShareVec& x, const BoolShareVec& y) {
  assert(x.lanes() == y.lanes() && x.width() == y.width());
  const BoolShareVec ny = not_(y);
  BoolShareVec g = and_(x, ny);
  BoolShareVec p = xor_(x, ny);

  std::uint32_t wdt = g.width();
  while (wdt > 1) {
    const std::uint32_t m = wdt / 2;
    std::vector<std::uint32_t> lo(m), hi(m);
    for (std::uint32_t i = 0; i < m; ++i) {
      lo[i] = 2 * i;
      hi[i] = 2 * i + 1;
    }
    const BoolShareVec phi = p.gather_planes(hi);
    BoolShareVec t = and_(concat_width(phi, phi),
                          concat_width(g.gather_planes(lo), p.gather_planes(lo)));
    BoolShareVec gn = xor_(g.gather_planes(hi), t.slice_width(0, m));
    BoolShareVec pn = t.slice_width(m, 2 * m);
    if (wdt % 2 == 1) {
      gn = concat_width(gn, g.slice_width(wdt - 1, wdt));
      pn = concat_width(pn, p.slice_width(wdt - 1, wdt));
    }
    g = std::move(gn);
    p = std::move(pn);
    wdt = m + (wdt % 2);
  }
  return g;
}

BoolShareVec Gates::gt_const(const BoolShareVec& x, std::span<const std::uint32_t> vals) {
  assert(vals.size() == x.lanes());
  std::vector<std::uint32_t> nvals(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) nvals[i] = ~vals[i] & low_mask(x.width());
  PublicBits ny(nvals, x.width());

  // g = x AND public(~y) is local on XOR shares; p = x XOR public(~y).
  BoolShareVec g(x.lanes(), x.width());
  for (std::uint32_t pl = 0; pl < x.width(); ++pl)
    for (std::size_t w = 0; w < g.words_per_plane(); ++w)
      g.plane(pl)[w] = x.plane(pl)[w] & ny.plane(pl)[w];
  BoolShareVec p = xor_const_lanes(x, nvals);

  std::uint32_t wdt = g.width();
  while (wdt > 1) {
    const std::uint32_t m = wdt / 2;
    std::vector<std::uint32_t> lo(m), hi(m);
    for (std::uint32_t i = 0; i < m; ++i) {
      lo[i] = 2 * i;
      hi[i] = 2 * i + 1;
    }
    const BoolShareVec phi = p.gather_planes(hi);
    BoolShareVec t = and_(concat_width(phi, phi),
                          concat_width(g.gather_planes(lo), p.gather_planes(lo)));
    BoolShareVec gn = xor_(g.gather_planes(hi), t.slice_width(0, m));
    BoolShareVec pn = t.slice_width(m, 2 * m);
    if (wdt % 2 == 1) {
      gn = concat_width(gn, g.slice_width(wdt - 1, wdt));
      pn = concat_width(pn, p.slice_width(wdt - 1, wdt));
    }
    g = std::move(gn);
    p = std::move(pn);
    wdt = m + (wdt % 2);
  }
  return g;
}

// Kogge-Stone carry scan shared by the adders. G and P are per-position
// generate/propagate (carry-in already folded into G[0]); afterwards
// G[k] is the carry out of position k.
static void ks_scan(Gates& gates, BoolShareVec& G, BoolShareVec& P) {
  const std::uint32_t W = G.width();
  for (std::uint32_t s = 1; s < W; s *= 2) {
    const std::uint32_t m = W - s;
    const BoolShareVec phi = P.slice_width(s, W);
    const BoolShareVec glo = G.slice_width(0, m);
    const bool last = (2 * s >= W);
    BoolShareVec t = last ? gates.and_(phi, glo)
                          : gates.and_(concat_width(phi, phi),
                                       concat_width(glo, P.slice_width(0, m)));
    BoolShareVec gn = gates.xor_(G.slice_width(s, W), t.slice_width(0, m));
    G = concat_width(G.slice_width(0, s), gn);
    if (!last) P = concat_width(P.slice_width(0, s), t.slice_width(m, 2 * m));
  }
}

BoolShareVec Gates::add_b(const BoolShareVec& x, const BoolShareVec& y, bool carry_in) {
  assert(x.lanes() == y.lanes() && x.width() == y.width());
  const BoolShareVec psum = xor_(x, y);
  BoolShareVec G = and_(x, y);
  BoolShareVec P = psum;
  if (carry_in)
    for (std::size_t w = 0; w < G.words_per_plane(); ++w) G.plane(0)[w] ^= P.plane(0)[w];
  ks_scan(*this, G, P);

  BoolShareVec z(x.lanes(), x.width());
  std::copy(psum.plane(0), psum.plane(0) + z.words_per_plane(), z.plane(0));
  if (carry_in && s_.party() == 0)
    for (std::size_t w = 0; w < z.words_per_plane(); ++w) z.plane(0)[w] = ~z.plane(0)[w];
  for (std::uint32_t p = 1; p < x.width(); ++p)
    for (std::size_t w = 0; w < z.words_per_plane(); ++w)
      z.plane(p)[w] = psum.plane(p)[w] ^ G.plane(p - 1)[w];
  z.mask_tail();
  return z;
}

BoolShareVec Gates::add_b_const(const BoolShareVec& x, std::span<const std::uint32_t> vals,
                                bool carry_in) {
  assert(vals.size() == x.lanes());
  std::vector<std::uint32_t> mvals(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) mvals[i] = vals[i] & low_mask(x.width());
  PublicBits py(mvals, x.width());

  const BoolShareVec psum = xor_const_lanes(x, mvals);
  BoolShareVec G(x.lanes(), x.width());
  for (std::uint32_t pl = 0; pl < x.width(); ++pl)
    for (std::size_t w = 0; w < G.words_per_plane(); ++w)
      G.plane(pl)[w] = x.plane(pl)[w] & py.plane(pl)[w];
  BoolShareVec P = psum;
  if (carry_in)
    for (std::size_t w = 0; w < G.words_per_plane(); ++w) G.plane(0)[w] ^= P.plane(0)[w];
  ks_scan(*this, G, P);

  BoolShareVec z(x.lanes(), x.width());
  std::copy(psum.plane(0), psum.plane(0) + z.words_per_plane(), z.plane(0));
  if (carry_in && s_.party() == 0)
    for (std::size_t w = 0; w < z.words_per_plane(); ++w) z.plane(0)[w] = ~z.plane(0)[w];
  for (std::uint32_t p = 1; p < x.width(); ++p)
    for (std::size_t w = 0; w < z.words_per_plane(); ++w)
      z.plane(p)[w] = psum.plane(p)[w] ^ G.plane(p - 1)[w];
  z.mask_tail();
  return z;
}

BoolShareVec Gates::sub_b(const BoolShareVec& x, const BoolShareVec& y) {
  return add_b(x, not_(y), /*carry_in=*/true);
}

BoolShareVec Gates::hamming_weight(const BoolShareVec& x, std::uint32_t out_width) {
  assert(out_width >= 1 && out_width <= 32);
  assert(x.width() < (1ull << out_width));
  const std::size_t n = x.lanes();

  // cols[c] holds single planes of weight 2^c.
  std::vector<std::vector<BoolShareVec>> cols(out_width);
  for (std::uint32_t p = 0; p < x.width(); ++p) cols[0].push_back(x.slice_width(p, p + 1));

  for (;;) {
    bool pending = false;
    for (const auto& c : cols)
      if (c.size() > 2) pending = true;
    if (!pending) break;

    // One carry-save layer: full adders on triples of equal-weight planes,
    // both ANDs of every adder batched into one round.
    struct Fa {
      std::uint32_t col;
      BoolShareVec a, b, cin;
    };
    std::vector<Fa> fas;
    std::vector<std::vector<BoolShareVec>> next(out_width);
    for (std::uint32_t c = 0; c < out_width; ++c) {
      std::size_t i = 0;
      while (i + 3 <= cols[c].size()) {
        fas.push_back({c, std::move(cols[c][i]), std::move(cols[c][i + 1]),
                       std::move(cols[c][i + 2])});
        i += 3;
      }
      for (; i < cols[c].size(); ++i) next[c].push_back(std::move(cols[c][i]));
    }

    const std::uint32_t nf = std::uint32_t(fas.size());
    BoolShareVec lhs(n, 2 * nf), rhs(n, 2 * nf);
    std::vector<BoolShareVec> axb;
    axb.reserve(nf);
    for (std::uint32_t f = 0; f < nf; ++f) {
      const auto& fa = fas[f];
      axb.push_back(xor_(fa.a, fa.b));
      std::copy(fa.a.plane(0), fa.a.plane(0) + lhs.words_per_plane(), lhs.plane(2 * f));
      std::copy(axb[f].plane(0), axb[f].plane(0) + lhs.words_per_plane(), lhs.plane(2 * f + 1));
      std::copy(fa.b.plane(0), fa.b.plane(0) + rhs.words_per_plane(), rhs.plane(2 * f));
      std::copy(fa.cin.plane(0), fa.cin.plane(0) + rhs.words_per_plane(), rhs.plane(2 * f + 1));
    }
    BoolShareVec t = and_(lhs, rhs);
    for (std::uint32_t f = 0; f < nf; ++f) {
      const auto& fa = fas[f];
      BoolShareVec sum = xor_(axb[f], fa.cin);
      next[fa.col].push_back(std::move(sum));
      // carry = (a AND b) XOR ((a XOR b) AND cin); a carry past the top
      // column would always be zero-valued, so it is dropped.
      if (fa.col + 1 < out_width) {
        BoolShareVec carry = xor_(t.slice_width(2 * f, 2 * f + 1),
                                  t.slice_width(2 * f + 1, 2 * f + 2));
        next[fa.col + 1].push_back(std::move(carry));
      }
    }
    cols = std::move(next);
  }

  // At most two planes per column remain: assemble two addends.
  BoolShareVec xa(n, out_width), xb(n, out_width);
  bool need_add = false;
  for (std::uint32_t c = 0; c < out_width; ++c) {
    if (cols[c].size() >= 1)
      std::copy(cols[c][0].plane(0), cols[c][0].plane(0) + xa.words_per_plane(), xa.plane(c));
    if (cols[c].size() == 2) {
      std::copy(cols[c][1].plane(0), cols[c][1].plane(0) + xb.words_per_plane(), xb.plane(c));
      need_add = true;
    }
  }
  return need_add ? add_b(xa, xb) : xa;
}

// ---- conversions ----

BoolShareVec Gates::a2b(const ArithShareVec& x, std::uint32_t width) {
  assert(width >= 1 && width <= 32);
  const std::size_t n = x.lanes();
  std::vector<std::uint32_t> m(n, 0);
  BoolShareVec rb(n, width);
  if (s_.tally()) {
    s_.count_conv(n);
  } else {
    const ConvPair* cp = s_.store().take_conv(n);
    std::vector<Ring> masked(n);
    for (std::size_t i = 0; i < n; ++i) masked[i] = x.v[i] - cp[i].r_arith;
    open_ring(masked.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = masked[i] & low_mask(width);
      rb.set_lane(i, cp[i].r_bool & low_mask(width));
    }
  }
  return add_b_const(rb, m);
}

ArithShareVec Gates::b2a(const BoolShareVec& x) {
  const std::size_t n = x.lanes();
  const ConvPair* cp = nullptr;
  BoolShareVec rb(n, kRingBits);
  if (s_.tally()) {
    s_.count_conv(n);
  } else {
    cp = s_.store().take_conv(n);
    for (std::size_t i = 0; i < n; ++i) rb.set_lane(i, cp[i].r_bool);
  }
  BoolShareVec mb = sub_b(x.zero_extend(kRingBits), rb);
  if (s_.tally()) return ArithShareVec(n);

  open_words(mb.raw().data(), mb.raw().size());
  ArithShareVec z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z.v[i] = cp[i].r_arith;
    if (s_.party() == 0) z.v[i] += mb.get_lane(i);
  }
  return z;
}

std::vector<std::uint32_t> Gates::reveal_bits(const BoolShareVec& x) {
  if (s_.tally()) return std::vector<std::uint32_t>(x.lanes(), 0);
  BoolShareVec open = x;
  open_words(open.raw().data(), open.raw().size(), /*reveal_frame=*/true);
  std::vector<std::uint32_t> out(x.lanes());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = open.get_lane(i);
  return out;
}

// ---- masked opens ----

void Gates::open_words(std::uint64_t* words, std::size_t n_words, bool reveal_frame) {
  Bytes payload;
  payload.reserve(n_words * 8);
  for (std::size_t i = 0; i < n_words; ++i) put_u64_le(payload, words[i]);
  const Bytes peer = reveal_frame ? s_.reveal_exchange(payload) : s_.exchange(payload);
  if (peer.size() != n_words * 8) throw ProtocolFault("opened payload length mismatch");
  for (std::size_t i = 0; i < n_words; ++i) words[i] ^= get_u64_le(peer.data() + 8 * i);
}

void Gates::open_ring(Ring* vals, std::size_t n, bool reveal_frame) {
  Bytes payload;
  payload.reserve(n * 4);
  for (std::size_t i = 0; i < n; ++i) put_u32_le(payload, vals[i]);
  const Bytes peer = reveal_frame ? s_.reveal_exchange(payload) : s_.exchange(payload);
  if (peer.size() != n * 4) throw ProtocolFault("opened payload length mismatch");
  for (std::size_t i = 0; i < n; ++i) vals[i] += get_u32_le(peer.data() + 4 * i);
}

}  // namespace ppkex::mpc
