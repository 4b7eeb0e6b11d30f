#include "medsel/approx2.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "medsel/exact2.hpp"

namespace medsel {

namespace {

void check_disjoint_pair(const MultisetSeq& a, const MultisetSeq& b, const Universe& u) {
  validate_input_set(a, u, u.n);
  validate_input_set(b, u, u.n);
  std::vector<Value> all(a.values());
  all.insert(all.end(), b.values().begin(), b.values().end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw std::invalid_argument("disjointness violated");
  }
}

}  // namespace

std::tuple<MultisetSeq, MultisetSeq, ConstParams> pad_to_3n(const MultisetSeq& a,
                                                            const MultisetSeq& b,
                                                            const Universe& u,
                                                            const AlphaRatio& alpha,
                                                            const Ratio& c) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty multiset");
  if (a.size() > b.size()) throw std::invalid_argument("first set must be the smaller");
  check_disjoint_pair(a, b, u);

  ConstParams p{alpha, c};
  p.s = a.size();
  p.m = b.size();
  p.t = p.s + p.m;
  p.n = u.n;
  p.n_pow2 = bit_ceil64(u.n);
  p.embed_width = ceil_log2(static_cast<std::uint64_t>(p.n_pow2)) + 2;
  const Count spread = alpha.den - 2 * alpha.num;
  p.quantile_count = (2 * alpha.den + spread - 1) / spread;
  const int c_pow = ceil_log2_ratio(static_cast<std::uint64_t>(c.den),
                                    static_cast<std::uint64_t>(c.num));
  p.prefix_len = ceil_log2(12 * static_cast<std::uint64_t>(p.quantile_count)) + c_pow +
                 (p.n_pow2 != p.n ? 1 : 0);

  p.low_pads = p.m - (p.m + p.s + 1) / 2;
  p.high_pads = (p.m + p.s + 1) / 2 - p.s;

  std::vector<Value> av;
  av.reserve(static_cast<std::size_t>(p.m));
  for (Value v = 1; v <= p.low_pads; ++v) av.push_back(v);
  for (Value v : a.values()) av.push_back(v + u.n);
  for (Value v = 1; v <= p.high_pads; ++v) av.push_back(2 * u.n + v);

  std::vector<Value> bv;
  bv.reserve(static_cast<std::size_t>(p.m));
  for (Value v : b.values()) bv.push_back(v + u.n);

  return {MultisetSeq::from_sorted(av, a.owner()), MultisetSeq::from_sorted(bv, b.owner()), p};
}

QuantileSet build_quantiles(const MultisetSeq& x, const ConstParams& params) {
  if (x.size() != params.m) throw std::invalid_argument("padded size mismatch");
  if (params.m < params.quantile_count) throw std::invalid_argument("fewer elements than samples");

  QuantileSet q;
  q.h = params.quantile_count;
  q.gap_lower_bound = params.m / params.quantile_count;
  for (Count i = 1; i <= q.h; ++i) {
    q.elements.push_back(x[i * q.gap_lower_bound - 1]);
  }
  // Above the size threshold the sample gap covers a full prefix bucket,
  // which keeps the sample prefixes pairwise distinct.
  if (params.prefix_len <= params.embed_width &&
      q.gap_lower_bound >= ((Count{4} * params.n_pow2) >> params.prefix_len)) {
    for (std::size_t i = 1; i < q.elements.size(); ++i) {
      if (prefix_bits(q.elements[i - 1], params.prefix_len, params.embed_width) ==
          prefix_bits(q.elements[i], params.prefix_len, params.embed_width)) {
        throw std::logic_error("quantile prefixes collide");
      }
    }
  }
  return q;
}

namespace {

struct QuantSlice {
  const std::vector<Value>* vals;
  Count lo, hi;

  Count len() const { return hi - lo; }
  Value lower_median() const { return (*vals)[static_cast<std::size_t>(lo + (len() - 1) / 2)]; }
};

}  // namespace

Approx2Result approx_med2(const MultisetSeq& a, const MultisetSeq& b, const Universe& u,
                          const AlphaRatio& alpha, const Ratio& c) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty multiset");
  check_disjoint_pair(a, b, u);
  const Count t = a.size() + b.size();
  if (t * c.den < c.num * u.n) throw std::invalid_argument("density precondition");

  Approx2Result out;

  // Below the size threshold the exact interval protocol is cheap enough;
  // its median is always inside the window.
  if (u.n * c.num < 8 * alpha.den * alpha.den * c.den) {
    Interval2Result exact = median2_interval(a, b, u);
    out.fallback = true;
    out.output_a = exact.value;
    out.output_b = exact.value;
    out.transcript = std::move(exact.transcript);
    out.search_bits = out.transcript.total_bits;
    return out;
  }

  const bool swapped = a.size() > b.size();
  const MultisetSeq& small = swapped ? b : a;
  const MultisetSeq& big = swapped ? a : b;
  auto [pa, pb, params] = pad_to_3n(small, big, u, alpha, c);
  out.params = params;
  if (params.prefix_len > params.embed_width) {
    throw std::logic_error("prefix exceeds embedding width");
  }
  if (params.m / params.quantile_count < (Count{4} * params.n_pow2) >> params.prefix_len) {
    throw std::logic_error("quantile gap below prefix bucket");
  }

  const QuantileSet qa = build_quantiles(pa, params);
  const QuantileSet qb = build_quantiles(pb, params);

  PlayerId ida = small.owner(), idb = big.owner();
  if (ida == idb) {
    ida = 1;
    idb = 2;
  }
  Board board(CostModel{Count{4} * params.n_pow2, 2});

  QuantSlice sa{&qa.elements, 0, params.quantile_count};
  QuantSlice sb{&qb.elements, 0, params.quantile_count};

  std::optional<Value> out_small, out_big;
  while (true) {
    const Count live = sa.len();
    const Value xa = sa.lower_median();
    const Value xb = sb.lower_median();
    const Value prefix_a = prefix_bits(xa, params.prefix_len, params.embed_width);
    const Value prefix_b = prefix_bits(xb, params.prefix_len, params.embed_width);
    board.post_prefix(ida, prefix_a, params.prefix_len);
    const std::int64_t outcome =
        prefix_b < prefix_a ? kSignalLess : (prefix_b > prefix_a ? kSignalGreater : kSignalEqual);
    board.post_signal(idb, outcome);
    out.trace.push_back({live, prefix_a, prefix_b, outcome});

    if (live == 1) {
      if (prefix_a == prefix_b) {
        out_small = xa;
        out_big = xb;
        board.post_value(ida, xa);
        board.post_value(idb, xb);
      } else if (prefix_a < prefix_b) {
        out_small = xa;
        board.post_value(ida, xa);
      } else {
        out_big = xb;
        board.post_value(idb, xb);
      }
      break;
    }
    if (live == 2 && prefix_a == prefix_b) {
      out_small = xa;
      out_big = xb;
      board.post_value(ida, xa);
      board.post_value(idb, xb);
      break;
    }

    if (prefix_a == prefix_b) {
      // Equal prefixes: drop one fewer element per side; the first player
      // sheds from below, the second from above. The quantile gap puts the
      // first player's predecessor strictly under the shared prefix, which
      // keeps the sample median in the live window.
      const Value pred = (*sa.vals)[static_cast<std::size_t>(sa.lo + (live - 1) / 2 - 1)];
      if (prefix_bits(pred, params.prefix_len, params.embed_width) >= prefix_b) {
        throw std::logic_error("predecessor prefix not below the shared prefix");
      }
      const Count drop = (live - 1) / 2;
      sa.lo += drop;
      sb.hi -= drop;
    } else {
      const Count drop = live / 2;
      if (prefix_a < prefix_b) {
        sa.lo += drop;
        sb.hi -= drop;
      } else {
        sb.lo += drop;
        sa.hi -= drop;
      }
    }
    board.end_round();
  }

  // Outputs must be shifted originals, never padding.
  for (const std::optional<Value>& z : {out_small, out_big}) {
    if (z && (*z <= u.n || *z > 2 * u.n)) {
      throw std::logic_error("output escaped the shifted range");
    }
  }
  if (out_small) out_small = *out_small - u.n;
  if (out_big) out_big = *out_big - u.n;
  out.output_a = swapped ? out_big : out_small;
  out.output_b = swapped ? out_small : out_big;

  out.transcript = board.finalize();
  for (const Message& m : out.transcript.messages) {
    if (m.kind == MsgKind::kValue) {
      out.terminal_bits += m.bit_cost;
    } else {
      out.search_bits += m.bit_cost;
    }
  }
  return out;
}

}  // namespace medsel
