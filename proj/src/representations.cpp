#include "wglab/representations.hpp"

#include <algorithm>
#include <string>

#include "wglab/error.hpp"
#include "wglab/parallel.hpp"
#include "wglab/summation.hpp"

namespace wglab {

namespace {

std::vector<u128> window_powers(const PrimeWindow& window, int k) {
  std::vector<u128> out;
  out.reserve(window.size());
  for (u64 p : window.primes) {
    const u128 pk = checked_power(p, k);
    if (pk == 0) throw Error(Errc::range_too_large, std::to_string(p) + "^" + std::to_string(k) + " overflows");
    out.push_back(pk);
  }
  return out;
}

// m^t, saturating at cap + 1.
u64 tuple_count_bound(std::size_t m, int t, u64 cap) {
  u64 total = 1;
  for (int i = 0; i < t; ++i) {
    if (m != 0 && total > (cap + 1) / m) return cap + 1;
    total *= m;
  }
  return total;
}

void check_ks(int k, int s) {
  if (k < 1) throw Error(Errc::parameter_domain, "k must be >= 1");
  if (s < 1) throw Error(Errc::parameter_domain, "s must be >= 1");
}

}  // namespace

RepresentationRecord rho_naive(u64 n, const PrimeWindow& window, int k, int s) {
  check_ks(k, s);
  const std::size_t m = window.size();
  if (tuple_count_bound(m, s, kNaiveEnumerationBound) > kNaiveEnumerationBound) {
    throw Error(Errc::too_large, std::to_string(m) + "^" + std::to_string(s) +
                                     " tuples exceed the naive enumeration bound");
  }
  const auto powers = window_powers(window, k);
  const u128 target = n;
  RepresentationRecord rec;
  rec.n = n;
  double rho = 0.0;
  // Odometer over ordered tuples; sums and log-products kept per depth.
  std::vector<std::size_t> idx(s, 0);
  std::vector<u128> sum(s + 1, 0);
  std::vector<double> prod(s + 1, 1.0);
  if (m == 0) return rec;
  int depth = 0;
  for (;;) {
    sum[depth + 1] = sum[depth] + powers[idx[depth]];
    prod[depth + 1] = prod[depth] * window.weights[idx[depth]];
    if (depth + 1 < s) {
      ++depth;
      idx[depth] = 0;
      continue;
    }
    if (sum[s] == target) {
      rho += prod[s];
      ++rec.tuple_count;
    }
    while (depth >= 0 && ++idx[depth] == m) --depth;
    if (depth < 0) break;
  }
  rec.rho = rho;
  return rec;
}

RepresentationRecord rho_naive(u64 n, const ProblemContext& ctx) {
  return rho_naive(n, PrimeWindow::build(ctx), ctx.k, ctx.s);
}

SumIndex::SumIndex(const PrimeWindow& window, int k, int t, u64 cap) : t_(t) {
  check_ks(k, t);
  const std::size_t m = window.size();
  const u64 total = tuple_count_bound(m, t, cap);
  if (total > cap) {
    throw Error(Errc::memory_budget_exceeded, std::to_string(m) + "^" + std::to_string(t) +
                                                  " index entries exceed cap " + std::to_string(cap));
  }
  if (m == 0) return;
  const auto powers = window_powers(window, k);

  struct Raw {
    u128 key;
    double weight;
  };
  std::vector<Raw> raw;
  raw.reserve(total);
  std::vector<std::size_t> idx(t, 0);
  std::vector<u128> sum(t + 1, 0);
  std::vector<double> prod(t + 1, 1.0);
  int depth = 0;
  for (;;) {
    sum[depth + 1] = sum[depth] + powers[idx[depth]];
    prod[depth + 1] = prod[depth] * window.weights[idx[depth]];
    if (depth + 1 < t) {
      ++depth;
      idx[depth] = 0;
      continue;
    }
    raw.push_back({sum[t], prod[t]});
    while (depth >= 0 && ++idx[depth] == m) --depth;
    if (depth < 0) break;
  }
  std::stable_sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.key < b.key; });

  for (std::size_t i = 0; i < raw.size();) {
    CompensatedSum acc;
    std::size_t j = i;
    for (; j < raw.size() && raw[j].key == raw[i].key; ++j) acc.add(raw[j].weight);
    entries_.push_back({raw[i].key, acc.value(), static_cast<u64>(j - i)});
    i = j;
  }
}

const SumIndex::Entry* SumIndex::find(u128 key) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const Entry& e, u128 v) { return e.key < v; });
  if (it == entries_.end() || it->key != key) return nullptr;
  return &*it;
}

MitmCounter::MitmCounter(const PrimeWindow& window, int k, int s, u64 cap)
    : s_(s), left_(window, k, (s + 1) / 2, cap), right_(window, k, std::max(s / 2, 1), cap) {
  check_ks(k, s);
  if (s < 2) throw Error(Errc::parameter_domain, "meet-in-the-middle needs s >= 2");
  if (!window.primes.empty()) {
    const u128 lo = checked_power(window.primes.front(), k);
    const u128 hi = checked_power(window.primes.back(), k);
    min_sum_ = lo * static_cast<u128>(s);
    max_sum_ = hi * static_cast<u128>(s);
  }
}

MitmCounter::MitmCounter(const ProblemContext& ctx, u64 cap)
    : MitmCounter(PrimeWindow::build(ctx), ctx.k, ctx.s, cap) {}

RepresentationRecord MitmCounter::count(u64 n) const {
  RepresentationRecord rec;
  rec.n = n;
  const u128 target = n;
  if (left_.entries().empty() || target < min_sum_ || target > max_sum_) return rec;
  const u128 left_min = left_.entries().front().key;
  CompensatedSum acc;
  for (const auto& r : right_.entries()) {
    if (r.key + left_min > target) break;
    const auto* l = left_.find(target - r.key);
    if (l == nullptr) continue;
    acc.add(l->weight * r.weight);
    rec.tuple_count += l->count * r.count;
  }
  rec.rho = acc.value();
  return rec;
}

std::vector<RepresentationRecord> MitmCounter::count_all(std::span<const u64> n_list) const {
  std::vector<RepresentationRecord> out(n_list.size());
  parallel_chunks(n_list.size(), 64, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = count(n_list[i]);
  });
  return out;
}

std::vector<RepresentationRecord> rho_mitm(std::span<const u64> n_list, const ProblemContext& ctx) {
  return MitmCounter(ctx).count_all(n_list);
}

MomentValue moment(int t, const PrimeWindow& window, int k) {
  if (t < 1) throw Error(Errc::parameter_domain, "t must be >= 1");
  const SumIndex index(window, k, t);
  CompensatedSum acc;
  for (const auto& e : index.entries()) acc.add(e.weight * e.weight);
  return {t, acc.value(), static_cast<u64>(index.entries().size())};
}

MomentValue moment(int t, const ProblemContext& ctx) { return moment(t, PrimeWindow::build(ctx), ctx.k); }

}  // namespace wglab
