#pragma once

// Data-parallel sumset kernels. Every routine exists twice: a serial
// reference in kernels::serial and an OpenMP version in kernels::parallel.
// The two must agree bit-for-bit; tests and the benchmark compare them.

#include <cstdint>
#include <span>
#include <vector>

#include "sumsat/group.hpp"

namespace sumsat::kernels {

// Ordered representation counts: counts[d] = #{(b, c) in B x C : b + c = d}.
using Counts = std::vector<std::uint64_t>;

namespace serial {

// Unnormalized Walsh-Hadamard butterfly, in place; size must be a power of 2.
void walsh_hadamard(std::span<std::int64_t> a);

// XOR-convolution of the indicators of b and c via three transforms.
Counts xor_convolve(const ElementSet& b, const ElementSet& c);

// Quadratic loop over B x C.
Counts pair_counts(const ElementSet& b, const ElementSet& c);

// B + C by pairwise XOR of the element lists.
ElementSet sumset_pairs(const ElementSet& b, const ElementSet& c);

// B + C as the union of translates c + b over b in B.
ElementSet sumset_translate(const ElementSet& b, const ElementSet& c);

}  // namespace serial

namespace parallel {

void walsh_hadamard(std::span<std::int64_t> a);
Counts xor_convolve(const ElementSet& b, const ElementSet& c);
Counts pair_counts(const ElementSet& b, const ElementSet& c);
ElementSet sumset_pairs(const ElementSet& b, const ElementSet& c);
ElementSet sumset_translate(const ElementSet& b, const ElementSet& c);

}  // namespace parallel

// Below this group order the parallel entry points fall back to serial.
inline constexpr std::size_t kParallelMinOrder = std::size_t{1} << 12;

}  // namespace sumsat::kernels
