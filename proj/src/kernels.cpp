#include "sumsat/kernels.hpp"

#include <omp.h>

#include <bit>

namespace sumsat::kernels {

namespace {

void require_same_rank(const ElementSet& b, const ElementSet& c) {
  if (!(b.rank() == c.rank())) throw RankError("rank mismatch in sumset kernel");
}

template <class T>
void butterfly_serial(std::span<T> a) {
  const std::size_t n = a.size();
  for (std::size_t len = 1; len < n; len <<= 1) {
    for (std::size_t base = 0; base < n; base += 2 * len) {
      for (std::size_t i = base; i < base + len; ++i) {
        const T u = a[i];
        const T v = a[i + len];
        a[i] = u + v;
        a[i + len] = u - v;
      }
    }
  }
}

template <class T>
void butterfly_parallel(std::span<T> a) {
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(a.size() / 2);
  for (std::size_t len = 1; len < a.size(); len <<= 1) {
    const std::size_t shift = static_cast<std::size_t>(std::countr_zero(len));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < half; ++k) {
      const std::size_t uk = static_cast<std::size_t>(k);
      // k-th butterfly of this stage: block k >> shift, offset k & (len - 1).
      const std::size_t i = ((uk >> shift) << (shift + 1)) | (uk & (len - 1));
      const T u = a[i];
      const T v = a[i + len];
      a[i] = u + v;
      a[i + len] = u - v;
    }
  }
}

template <class T>
std::vector<T> indicator(const ElementSet& s) {
  std::vector<T> v(s.universe(), T{0});
  s.for_each([&](Element x) { v[x] = T{1}; });
  return v;
}

// counts = H(H(1_B) * H(1_C)) / n. Intermediate values reach n * |B| * |C|,
// so switch to 128-bit accumulators when that would overflow int64.
template <class T, bool Parallel>
Counts convolve_with(const ElementSet& b, const ElementSet& c) {
  auto fb = indicator<T>(b);
  auto fc = indicator<T>(c);
  auto transform = [](std::vector<T>& v) {
    if constexpr (Parallel) {
      butterfly_parallel<T>(v);
    } else {
      butterfly_serial<T>(v);
    }
  };
  transform(fb);
  transform(fc);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(fb.size());
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) fb[static_cast<std::size_t>(i)] *= fc[static_cast<std::size_t>(i)];
  transform(fb);
  const int log_n = std::countr_zero(static_cast<std::size_t>(n));
  Counts out(fb.size());
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    out[ui] = static_cast<std::uint64_t>(fb[ui] >> log_n);
  }
  return out;
}

template <bool Parallel>
Counts convolve(const ElementSet& b, const ElementSet& c) {
  require_same_rank(b, c);
  const unsigned __int128 bound = static_cast<unsigned __int128>(b.universe()) * b.size() * c.size();
  if (bound < (static_cast<unsigned __int128>(1) << 62)) {
    return convolve_with<std::int64_t, Parallel>(b, c);
  }
  return convolve_with<__int128, Parallel>(b, c);
}

}  // namespace

namespace serial {

void walsh_hadamard(std::span<std::int64_t> a) { butterfly_serial(a); }

Counts xor_convolve(const ElementSet& b, const ElementSet& c) { return convolve<false>(b, c); }

Counts pair_counts(const ElementSet& b, const ElementSet& c) {
  require_same_rank(b, c);
  Counts out(b.universe(), 0);
  const auto cs = c.elements();
  b.for_each([&](Element x) {
    for (Element y : cs) ++out[x ^ y];
  });
  return out;
}

ElementSet sumset_pairs(const ElementSet& b, const ElementSet& c) {
  require_same_rank(b, c);
  ElementSet out(b.rank());
  auto words = out.mutable_words();
  const auto cs = c.elements();
  b.for_each([&](Element x) {
    for (Element y : cs) {
      const Element d = x ^ y;
      words[d >> 6] |= std::uint64_t{1} << (d & 63);
    }
  });
  return out;
}

ElementSet sumset_translate(const ElementSet& b, const ElementSet& c) {
  require_same_rank(b, c);
  ElementSet out(b.rank());
  auto dst = out.mutable_words();
  const auto src = c.words();
  b.for_each([&](Element x) {
    const std::size_t high = x >> 6;
    const unsigned low = x & 63;
    for (std::size_t w = 0; w < src.size(); ++w) dst[w ^ high] |= xor_permute_word(src[w], low);
  });
  return out;
}

}  // namespace serial

namespace parallel {

void walsh_hadamard(std::span<std::int64_t> a) {
  if (a.size() < kParallelMinOrder) return serial::walsh_hadamard(a);
  butterfly_parallel(a);
}

Counts xor_convolve(const ElementSet& b, const ElementSet& c) {
  if (b.universe() < kParallelMinOrder) return serial::xor_convolve(b, c);
  return convolve<true>(b, c);
}

Counts pair_counts(const ElementSet& b, const ElementSet& c) {
  if (b.universe() < kParallelMinOrder) return serial::pair_counts(b, c);
  require_same_rank(b, c);
  Counts out(b.universe(), 0);
  const auto bs = b.elements();
  const auto cs = c.elements();
  const std::ptrdiff_t nb = static_cast<std::ptrdiff_t>(bs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < nb; ++i) {
    const Element x = bs[static_cast<std::size_t>(i)];
    for (Element y : cs) {
#pragma omp atomic
      ++out[x ^ y];
    }
  }
  return out;
}

ElementSet sumset_pairs(const ElementSet& b, const ElementSet& c) {
  if (b.universe() < kParallelMinOrder) return serial::sumset_pairs(b, c);
  require_same_rank(b, c);
  ElementSet out(b.rank());
  auto words = out.mutable_words();
  const auto bs = b.elements();
  const auto cs = c.elements();
  const std::ptrdiff_t nb = static_cast<std::ptrdiff_t>(bs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < nb; ++i) {
    const Element x = bs[static_cast<std::size_t>(i)];
    for (Element y : cs) {
      const Element d = x ^ y;
      const std::uint64_t bit = std::uint64_t{1} << (d & 63);
#pragma omp atomic
      words[d >> 6] |= bit;
    }
  }
  return out;
}

ElementSet sumset_translate(const ElementSet& b, const ElementSet& c) {
  if (b.universe() < kParallelMinOrder) return serial::sumset_translate(b, c);
  require_same_rank(b, c);
  ElementSet out(b.rank());
  auto dst = out.mutable_words();
  const auto src = c.words();
  const auto bs = b.elements();
  // Each output word gathers from one source word per shift, so threads
  // own disjoint output words.
  const std::ptrdiff_t nw = static_cast<std::ptrdiff_t>(dst.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t w = 0; w < nw; ++w) {
    std::uint64_t acc = 0;
    for (Element x : bs) {
      acc |= xor_permute_word(src[static_cast<std::size_t>(w) ^ (x >> 6)], x & 63);
    }
    dst[static_cast<std::size_t>(w)] = acc;
  }
  return out;
}

}  // namespace parallel

}  // namespace sumsat::kernels
