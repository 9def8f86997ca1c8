#include "ebgls/local_search.hpp"

#include <stdexcept>

namespace ebgls {

void activate_penalized(ActivationBits& bits, std::span<const EdgeKey> penalized_edges) {
  for (const EdgeKey& e : penalized_edges) {
    bits.set(e.lo);
    bits.set(e.hi);
  }
}

MoveDelta move_delta(const Instance& inst, const Tour& tour, TwoOptMove move,
                     const GuideFunction& guide) {
  const int n = tour.n();
  const auto wrap = [n](int p) { return p + 1 == n ? 0 : p + 1; };
  if (move.pos_a < 0 || move.pos_a >= n || move.pos_b < 0 || move.pos_b >= n)
    throw std::invalid_argument("move_delta: position out of range");
  if (move.pos_a == move.pos_b || wrap(move.pos_a) == move.pos_b ||
      wrap(move.pos_b) == move.pos_a)
    throw std::invalid_argument("move_delta: removed edges share an endpoint");

  const std::int32_t a = tour.city_at(move.pos_a);
  const std::int32_t b = tour.city_at(wrap(move.pos_a));
  const std::int32_t c = tour.city_at(move.pos_b);
  const std::int32_t d = tour.city_at(wrap(move.pos_b));

  MoveDelta out;
  out.delta_g = static_cast<std::int64_t>(inst.distance(a, c)) + inst.distance(b, d) -
                inst.distance(a, b) - inst.distance(c, d);
  out.delta_p = static_cast<std::int64_t>(guide.penalty(a, c)) + guide.penalty(b, d) -
                guide.penalty(a, b) - guide.penalty(c, d);
  out.delta_h = guide.delta_h(out.delta_g, out.delta_p);
  return out;
}

JointMatrix::JointMatrix(const Instance& inst, const PenaltyStore& penalties)
    : n_(static_cast<std::size_t>(inst.n())), cells_(n_ * n_, 0) {
  const std::int32_t* dist = inst.matrix_data();
  if (dist == nullptr) throw std::logic_error("JointMatrix: instance has no cached matrix");
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      if (a == b) continue;
      const std::uint64_t d = static_cast<std::uint32_t>(dist[a * n_ + b]);
      const std::uint64_t p = static_cast<std::uint32_t>(
          penalties.get(static_cast<std::int32_t>(a), static_cast<std::int32_t>(b)));
      cells_[a * n_ + b] = (p << 32) | d;
    }
  }
}

void JointMatrix::refresh(EdgeKey e, const PenaltyStore& penalties) {
  const std::uint64_t p = static_cast<std::uint32_t>(penalties.get(e));
  const std::size_t lo = static_cast<std::size_t>(e.lo);
  const std::size_t hi = static_cast<std::size_t>(e.hi);
  cells_[lo * n_ + hi] = (cells_[lo * n_ + hi] & 0xffffffffull) | (p << 32);
  cells_[hi * n_ + lo] = (cells_[hi * n_ + lo] & 0xffffffffull) | (p << 32);
}

namespace {

struct Edge2 {
  std::int32_t d;
  std::int32_t p;
};

struct JointPairs {
  const JointMatrix* joint;
  Edge2 operator()(std::int32_t a, std::int32_t b) const {
    const std::uint64_t cell = joint->load(a, b);
    return {JointMatrix::dist_of(cell), JointMatrix::pen_of(cell)};
  }
};

struct MatrixDistOnly {
  const std::int32_t* m;
  std::size_t n;
  Edge2 operator()(std::int32_t a, std::int32_t b) const {
    return {m[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)], 0};
  }
};

struct ComputedDistOnly {
  const Instance* inst;
  Edge2 operator()(std::int32_t a, std::int32_t b) const { return {inst->distance(a, b), 0}; }
};

template <typename DistFn>
struct SplitPairs {
  DistFn dist;
  const PenaltyStore* store;
  Edge2 operator()(std::int32_t a, std::int32_t b) const {
    return {dist(a, b).d, store->get(a, b)};
  }
};

// Tries the candidate moves around city c and applies the first improving
// one. Returns true when a move was applied. When neither removed edge
// carries a penalty the added edges cannot lower the penalty term, so a
// non-negative cost delta rejects before the remaining lookups.
template <bool use_pen, typename PairFn>
bool improve_city(const Instance& inst, const GuideFunction& guide, Tour& tour,
                  ActivationBits& bits, std::int64_t* pen_sum, BestTracker* best, PairFn at,
                  std::int32_t c) {
  const std::span<const std::int32_t> candidates = inst.neighbors(c);

  for (int dir = 0; dir < 2; ++dir) {
    const std::int32_t t2 = dir == 0 ? tour.succ(c) : tour.pred(c);
    const Edge2 e_c_t2 = at(c, t2);
    const std::int64_t d_c_t2 = e_c_t2.d;
    const std::int32_t p_c_t2 = use_pen ? e_c_t2.p : 0;

    for (const std::int32_t nb : candidates) {
      if (nb == t2 || nb == c) continue;
      const std::int32_t t4 = dir == 0 ? tour.succ(nb) : tour.pred(nb);
      if (t4 == c) continue;
      const Edge2 e_c_nb = at(c, nb);
      const Edge2 e_nb_t4 = at(nb, t4);
      std::int64_t dg = static_cast<std::int64_t>(e_c_nb.d) - d_c_t2 -
                        static_cast<std::int64_t>(e_nb_t4.d);
      std::int64_t dp = 0;
      if constexpr (use_pen) {
        if (p_c_t2 == 0 && e_nb_t4.p == 0) {
          if (dg >= 0) continue;  // the t2-t4 distance can only raise dg further
          const Edge2 e_t2_t4 = at(t2, t4);
          dg += e_t2_t4.d;
          dp = static_cast<std::int64_t>(e_c_nb.p) + e_t2_t4.p;
        } else {
          const Edge2 e_t2_t4 = at(t2, t4);
          dg += e_t2_t4.d;
          dp = static_cast<std::int64_t>(e_c_nb.p) + e_t2_t4.p - p_c_t2 - e_nb_t4.p;
        }
        if (!guide.improves_h(dg, dp)) continue;
      } else {
        if (dg >= 0) continue;
        dg += at(t2, t4).d;
        if (dg >= 0) continue;
      }

      // Removed edges are (x, succ x) pairs: dir 0 removes (c,t2),(nb,t4)
      // directly; dir 1 removes (t2,c),(t4,nb) so the anchors are t2, t4.
      if (dir == 0)
        tour.apply_two_opt(c, nb, dg);
      else
        tour.apply_two_opt(t2, t4, dg);
      if (pen_sum != nullptr && guide.penalties != nullptr) *pen_sum += dp;
      bits.set(c);
      bits.set(t2);
      bits.set(nb);
      bits.set(t4);
      if (best != nullptr) best->offer(tour);
      return true;
    }
  }
  return false;
}

template <bool use_pen, typename PairFn>
LocalSearchResult scan_loop(LocalSearchParams& params, PairFn at) {
  const Instance& inst = *params.inst;
  ActivationBits& bits = *params.bits;
  const int n = inst.n();

  LocalSearchResult result;
  int c = params.scan_start % n;
  if (c < 0) c += n;

  while (bits.active_count() > 0) {
    if (params.deadline != nullptr &&
        (params.deadline->target_hit() || params.deadline->wall_expired())) {
      result.stopped_early = true;
      return result;
    }
    if (bits.test(c)) {
      while (improve_city<use_pen>(inst, params.guide, *params.tour, bits, params.pen_sum,
                                   params.best, at, c)) {
        ++result.applied_moves;
        params.scan_start = c;
        if (params.deadline != nullptr && params.deadline->target_hit()) {
          result.stopped_early = true;
          return result;
        }
      }
      bits.clear(c);
    }
    ++c;
    if (c == n) c = 0;
  }
  return result;
}

}  // namespace

LocalSearchResult local_search_2opt_fls(LocalSearchParams& params) {
  const Instance& inst = *params.inst;
  const std::int32_t* dist_matrix = inst.matrix_data();
  const PenaltyStore* penalties = params.guide.penalties;
  const std::size_t n = static_cast<std::size_t>(inst.n());

  if (penalties != nullptr && params.joint != nullptr)
    return scan_loop<true>(params, JointPairs{params.joint});
  if (dist_matrix != nullptr) {
    const MatrixDistOnly dist{dist_matrix, n};
    if (penalties == nullptr) return scan_loop<false>(params, dist);
    return scan_loop<true>(params, SplitPairs<MatrixDistOnly>{dist, penalties});
  }
  const ComputedDistOnly dist{&inst};
  if (penalties == nullptr) return scan_loop<false>(params, dist);
  return scan_loop<true>(params, SplitPairs<ComputedDistOnly>{dist, penalties});
}

}  // namespace ebgls
