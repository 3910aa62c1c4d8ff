#include "apnls/core/convolution.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>

#include <omp.h>

namespace apnls {

namespace {

struct Contribution {
  FreqVector rep;  // symmetric representative of d
  FreqVector d;    // n - (m - n)
  Complex value;
};

bool contribution_order(const Contribution& a, const Contribution& b) {
  if (a.rep != b.rep) return a.rep < b.rep;
  return a.d < b.d;
}

// Contributions must be sorted by contribution_order. Entries with equal
// representative (d and -d) are added to each other before entering the
// running sum.
Complex accumulate(const std::vector<Contribution>& cs) {
  Complex acc{0.0, 0.0};
  std::size_t k = 0;
  while (k < cs.size()) {
    if (k + 1 < cs.size() && cs[k].rep == cs[k + 1].rep) {
      acc += cs[k].value + cs[k + 1].value;
      k += 2;
    } else {
      acc += cs[k].value;
      ++k;
    }
  }
  return acc;
}

Product finalize(const BasisPtr& basis, std::vector<Term> terms, const TruncationPolicy& trunc) {
  std::vector<char> keep(terms.size(), 1);
  std::size_t kept = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    double mag = std::abs(terms[k].coeff);
    if (mag == 0.0 || mag < trunc.threshold) {
      keep[k] = 0;
    } else {
      ++kept;
    }
  }
  if (kept > trunc.max_support) {
    if (trunc.threshold == 0.0) {
      throw CapacityError("product support " + std::to_string(kept) + " exceeds max_support " +
                          std::to_string(trunc.max_support));
    }
    std::vector<std::size_t> idx;
    idx.reserve(kept);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (keep[k]) idx.push_back(k);
    }
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      double ma = std::abs(terms[a].coeff), mb = std::abs(terms[b].coeff);
      if (ma != mb) return ma > mb;
      return a < b;
    });
    for (std::size_t r = trunc.max_support; r < idx.size(); ++r) keep[idx[r]] = 0;
  }

  Product out{APSeries(basis), 0.0};
  std::vector<Term> result;
  result.reserve(std::min(kept, terms.size()));
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (keep[k]) {
      result.push_back(terms[k]);
    } else {
      out.discarded_mass += std::abs(terms[k].coeff);
    }
  }
  out.series = APSeries::from_canonical(basis, std::move(result));
  return out;
}

struct Triple {
  FreqVector m;
  std::uint32_t i;
  std::uint32_t j;
  Complex value;
};


constexpr std::size_t kParallelMin = 4096;

struct Pair {
  std::int64_t m;
  std::uint32_t i;
  std::uint32_t j;
};

std::uint64_t mix(std::int64_t key) {
  std::uint64_t x = static_cast<std::uint64_t>(key);
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  return x;
}

// Balanced base-2^bits digits packed into one integer. The map is linear and
// preserves lexicographic order as long as every component of the sums and
// differences stays inside (-2^(bits-1), 2^(bits-1)).
struct KeyCodec {
  std::size_t dim;
  std::int64_t radix;

  static std::optional<KeyCodec> fit(const APSeries& f, const APSeries& g) {
    std::int64_t peak = 0;
    for (const APSeries* s : {&f, &g}) {
      for (const Term& t : s->terms()) peak = std::max<std::int64_t>(peak, t.freq.max_norm());
    }
    const std::size_t dim = f.basis().dim();
    const int bits = std::bit_width(static_cast<std::uint64_t>(4 * peak + 1)) + 1;
    if (static_cast<std::size_t>(bits) * dim > 62) return std::nullopt;
    return KeyCodec{dim, std::int64_t{1} << bits};
  }

  std::int64_t encode(const FreqVector& n) const {
    std::int64_t k = 0;
    for (std::size_t c = 0; c < dim; ++c) k = k * radix + n[c];
    return k;
  }

  FreqVector decode(std::int64_t k) const {
    FreqVector n(dim);
    for (std::size_t c = dim; c-- > 0;) {
      std::int64_t r = ((k % radix) + radix) % radix;
      if (r >= radix / 2) r -= radix;
      n[c] = static_cast<int>(r);
      k = (k - r) / radix;
    }
    return n;
  }
};

Product multiply_generic(const APSeries& f, const APSeries& g, const TruncationPolicy& trunc) {
  const auto ft = f.terms();
  const auto gt = g.terms();
  const std::size_t nf = ft.size(), ng = gt.size();
  const std::size_t total = nf * ng;
  if (total == 0) return finalize(f.basis_ptr(), {}, trunc);

  std::vector<Triple> triples(total);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(nf); ++i) {
    const Term& a = ft[i];
    Triple* row = triples.data() + i * ng;
    for (std::size_t j = 0; j < ng; ++j) {
      row[j] = {a.freq + gt[j].freq, static_cast<std::uint32_t>(i),
                static_cast<std::uint32_t>(j), a.coeff * gt[j].coeff};
    }
  }

  // Bucket count depends on the problem size only, never on the thread count.
  const std::size_t buckets = std::clamp<std::size_t>(total / 512, 1, 4096);
  std::vector<std::uint32_t> bucket_of(total);
  std::vector<std::size_t> offset(buckets + 1, 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(total); ++t) {
    bucket_of[t] = static_cast<std::uint32_t>(triples[t].m.hash() % buckets);
  }
  for (std::size_t t = 0; t < total; ++t) ++offset[bucket_of[t] + 1];
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<std::size_t> order(total);
  {
    std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
    for (std::size_t t = 0; t < total; ++t) order[cursor[bucket_of[t]]++] = t;
  }

  std::vector<std::vector<Term>> bucket_terms(buckets);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(buckets); ++b) {
    std::vector<std::size_t> members(order.begin() + offset[b], order.begin() + offset[b + 1]);
    std::stable_sort(members.begin(), members.end(), [&](std::size_t x, std::size_t y) {
      return triples[x].m < triples[y].m;
    });
    std::vector<Contribution> cs;
    std::size_t k = 0;
    while (k < members.size()) {
      const FreqVector& m = triples[members[k]].m;
      cs.clear();
      for (; k < members.size() && triples[members[k]].m == m; ++k) {
        const Triple& tr = triples[members[k]];
        FreqVector d = ft[tr.i].freq - gt[tr.j].freq;
        cs.push_back({symmetric_representative(d), d, tr.value});
      }
      std::sort(cs.begin(), cs.end(), contribution_order);
      bucket_terms[b].push_back({m, accumulate(cs)});
    }
  }

  std::vector<Term> terms;
  std::size_t count = 0;
  for (const auto& bt : bucket_terms) count += bt.size();
  terms.reserve(count);
  for (auto& bt : bucket_terms) terms.insert(terms.end(), bt.begin(), bt.end());
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.freq < b.freq; });
  return finalize(f.basis_ptr(), std::move(terms), trunc);
}

}  // namespace

namespace kernels {

Product multiply_serial(const APSeries& f, const APSeries& g, const TruncationPolicy& trunc) {
  f.require_compatible(g);
  std::map<FreqVector, std::vector<Contribution>> outputs;
  for (const Term& a : f.terms()) {
    for (const Term& b : g.terms()) {
      FreqVector d = a.freq - b.freq;
      outputs[a.freq + b.freq].push_back({symmetric_representative(d), d, a.coeff * b.coeff});
    }
  }
  std::vector<Term> terms;
  terms.reserve(outputs.size());
  for (auto& [m, cs] : outputs) {
    std::sort(cs.begin(), cs.end(), contribution_order);
    terms.push_back({m, accumulate(cs)});
  }
  return finalize(f.basis_ptr(), std::move(terms), trunc);
}

Product multiply_parallel(const APSeries& f, const APSeries& g, const TruncationPolicy& trunc) {
  f.require_compatible(g);
  if (f.empty() || g.empty()) return finalize(f.basis_ptr(), {}, trunc);
  std::optional<KeyCodec> codec = KeyCodec::fit(f, g);
  if (!codec) return multiply_generic(f, g, trunc);

  const auto ft = f.terms();
  const auto gt = g.terms();
  const std::size_t nf = ft.size(), ng = gt.size();
  const std::size_t total = nf * ng;
  const bool par = total >= kParallelMin;

  std::vector<std::int64_t> kf(nf), kg(ng);
  for (std::size_t i = 0; i < nf; ++i) kf[i] = codec->encode(ft[i].freq);
  for (std::size_t j = 0; j < ng; ++j) kg[j] = codec->encode(gt[j].freq);

  // Pairs in i-major order. For a fixed output m the key of d = 2 n_i - m
  // then increases along the pairs, so grouping by m with a stable order
  // leaves every group sorted by d.
  const std::size_t buckets = std::clamp<std::size_t>(total / 64, 1, std::size_t{1} << 16);
  std::vector<std::uint32_t> bucket_of(total);
#pragma omp parallel for schedule(static) if (par)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(nf); ++i) {
    for (std::size_t j = 0; j < ng; ++j) {
      bucket_of[i * ng + j] = static_cast<std::uint32_t>(mix(kf[i] + kg[j]) % buckets);
    }
  }
  std::vector<std::size_t> offset(buckets + 1, 0);
  for (std::size_t t = 0; t < total; ++t) ++offset[bucket_of[t] + 1];
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<Pair> pairs(total);
  {
    std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
    for (std::size_t t = 0; t < total; ++t) {
      const std::uint32_t i = static_cast<std::uint32_t>(t / ng), j = static_cast<std::uint32_t>(t % ng);
      pairs[cursor[bucket_of[t]]++] = {kf[i] + kg[j], i, j};
    }
  }

  // Group heads carry the accumulated coefficient.
  std::vector<Complex> head_value(total);
  std::vector<char> is_head(total, 0);
#pragma omp parallel for schedule(dynamic, 16) if (par)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(buckets); ++b) {
    Pair* lo = pairs.data() + offset[b];
    Pair* hi = pairs.data() + offset[b + 1];
    std::sort(lo, hi, [](const Pair& x, const Pair& y) { return x.m != y.m ? x.m < y.m : x.i < y.i; });
    for (Pair* g0 = lo; g0 < hi;) {
      Pair* g1 = g0;
      while (g1 < hi && g1->m == g0->m) ++g1;
      // Middle-out walk: ascending |d|, and d, -d added to each other first.
      const std::int64_t m = g0->m;
      auto dkey = [&](const Pair* p) { return 2 * kf[p->i] - m; };
      auto value = [&](const Pair* p) { return ft[p->i].coeff * gt[p->j].coeff; };
      Pair* right = g0;
      while (right < g1 && dkey(right) < 0) ++right;
      Pair* left = right;  // one past the last negative
      Complex acc{0.0, 0.0};
      while (left > g0 || right < g1) {
        if (right < g1 && left > g0) {
          const std::int64_t dl = -dkey(left - 1), dr = dkey(right);
          if (dl == dr) {
            acc += value(left - 1) + value(right);
            --left;
            ++right;
          } else if (dl < dr) {
            acc += value(--left);
          } else {
            acc += value(right++);
          }
        } else if (right < g1) {
          acc += value(right++);
        } else {
          acc += value(--left);
        }
      }
      const std::size_t pos = static_cast<std::size_t>(g0 - pairs.data());
      head_value[pos] = acc;
      is_head[pos] = 1;
      g0 = g1;
    }
  }

  std::vector<std::pair<std::int64_t, Complex>> outputs;
  for (std::size_t t = 0; t < total; ++t) {
    if (is_head[t]) outputs.emplace_back(pairs[t].m, head_value[t]);
  }
  std::sort(outputs.begin(), outputs.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Term> terms;
  terms.reserve(outputs.size());
  for (const auto& [key, c] : outputs) terms.push_back({codec->decode(key), c});
  return finalize(f.basis_ptr(), std::move(terms), trunc);
}

}  // namespace kernels

Product multiply(const APSeries& f, const APSeries& g, const TruncationPolicy& trunc) {
  return kernels::multiply_parallel(f, g, trunc);
}

Complex inner_product(const APSeries& f, const APSeries& g) {
  return mean_value(multiply(f, conjugate(g)).series);
}

}  // namespace apnls
