#include "momentflow/qmc.hpp"

#include <bit>
#include <stdexcept>

namespace momentflow {

namespace {

// Joe-Kuo primitive polynomials (degree s, inner coefficients a) and initial
// direction integers m for dimensions 2..32; dimension 1 is the van der
// Corput sequence.
struct JoeKuoRow {
  int s;
  std::uint32_t a;
  std::uint32_t m[8];
};

constexpr JoeKuoRow kJoeKuo[31] = {
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
    {6, 19, {1, 1, 1, 15, 7, 5}},
    {6, 22, {1, 3, 1, 15, 13, 25}},
    {6, 25, {1, 1, 5, 5, 19, 61}},
    {7, 1, {1, 3, 7, 11, 23, 15, 103}},
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},
    {7, 7, {1, 1, 3, 13, 7, 35, 63}},
    {7, 8, {1, 3, 5, 9, 1, 25, 53}},
    {7, 14, {1, 3, 1, 13, 9, 35, 107}},
    {7, 19, {1, 3, 1, 5, 27, 61, 31}},
    {7, 21, {1, 1, 5, 11, 19, 41, 61}},
    {7, 28, {1, 3, 5, 3, 3, 13, 69}},
    {7, 31, {1, 1, 7, 13, 1, 19, 1}},
    {7, 32, {1, 3, 7, 5, 13, 19, 59}},
    {7, 37, {1, 1, 3, 9, 25, 29, 41}},
    {7, 41, {1, 3, 5, 13, 23, 1, 55}},
    {7, 42, {1, 3, 7, 3, 13, 59, 17}},
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Plain (unscrambled) direction numbers of one dimension, MSB-aligned.
void raw_directions(int dim_index, std::uint32_t v[32]) {
  if (dim_index == 0) {
    for (int k = 0; k < 32; ++k) v[k] = 1u << (31 - k);
    return;
  }
  const JoeKuoRow& row = kJoeKuo[dim_index - 1];
  const int s = row.s;
  for (int k = 0; k < s && k < 32; ++k) v[k] = row.m[k] << (31 - k);
  for (int k = s; k < 32; ++k) {
    std::uint32_t x = v[k - s] ^ (v[k - s] >> s);
    for (int j = 1; j < s; ++j) {
      if ((row.a >> (s - 1 - j)) & 1u) x ^= v[k - j];
    }
    v[k] = x;
  }
}

// Applies a random nonsingular lower-triangular digit matrix to x. Row j
// (output digit j, stored at bit 31-j) mixes digits 0..j; the unit diagonal
// keeps the matrix invertible.
struct DigitScramble {
  std::uint32_t rows[32];

  explicit DigitScramble(std::uint64_t& rng) {
    std::uint64_t bits = 0;
    int avail = 0;
    for (int j = 0; j < 32; ++j) {
      if (avail < j) {
        bits = splitmix64(rng);
        avail = 64;
      }
      const std::uint32_t below =
          j == 0 ? 0u : static_cast<std::uint32_t>(bits & ((1ULL << j) - 1));
      bits >>= j;
      avail -= j;
      // digit d lives at bit 31-d; "below" covers digits 0..j-1
      std::uint32_t mask = 1u << (31 - j);
      for (int d = 0; d < j; ++d) {
        if ((below >> d) & 1u) mask |= 1u << (31 - d);
      }
      rows[j] = mask;
    }
  }

  [[nodiscard]] std::uint32_t apply(std::uint32_t x) const {
    std::uint32_t y = 0;
    for (int j = 0; j < 32; ++j) {
      y |= static_cast<std::uint32_t>(std::popcount(rows[j] & x) & 1)
           << (31 - j);
    }
    return y;
  }
};

}  // namespace

ScrambledSobol::ScrambledSobol(int dim, std::uint64_t seed,
                               std::uint64_t replicate)
    : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("ScrambledSobol: dimension out of range");
  }
  for (int d = 0; d < dim_; ++d) {
    std::uint64_t rng = seed;
    splitmix64(rng);
    rng ^= 0x6a09e667f3bcc909ULL * (replicate + 1);
    splitmix64(rng);
    rng ^= 0x3c6ef372fe94f82bULL * (static_cast<std::uint64_t>(d) + 1);

    std::uint32_t raw[32];
    raw_directions(d, raw);
    const DigitScramble scramble(rng);
    for (int k = 0; k < 32; ++k) {
      directions_[d][k] = scramble.apply(raw[k]);
    }
    shift_[d] = static_cast<std::uint32_t>(splitmix64(rng) >> 32);
    state_[d] = 0;
  }
}

Eigen::VectorXd ScrambledSobol::next() {
  Eigen::VectorXd point(dim_);
  // Gray-code order: index 0 is the (shifted) origin.
  if (index_ > 0) {
    const int bit = std::countr_zero(index_);
    for (int d = 0; d < dim_; ++d) state_[d] ^= directions_[d][bit];
  }
  ++index_;
  constexpr double kScale = 1.0 / 4294967296.0;  // 2^-32
  for (int d = 0; d < dim_; ++d) {
    point(d) = (static_cast<double>(state_[d] ^ shift_[d]) + 0.5) * kScale;
  }
  return point;
}

Eigen::MatrixXd ScrambledSobol::generate(Eigen::Index n) {
  Eigen::MatrixXd out(dim_, n);
  constexpr double kScale = 1.0 / 4294967296.0;
  for (Eigen::Index col = 0; col < n; ++col) {
    if (index_ > 0) {
      const int bit = std::countr_zero(index_);
      for (int d = 0; d < dim_; ++d) state_[d] ^= directions_[d][bit];
    }
    ++index_;
    for (int d = 0; d < dim_; ++d) {
      out(d, col) = (static_cast<double>(state_[d] ^ shift_[d]) + 0.5) * kScale;
    }
  }
  return out;
}

}  // namespace momentflow
