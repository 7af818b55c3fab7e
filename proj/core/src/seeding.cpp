#include "qaoapca/seeding.hpp"

#include <array>

namespace qaoapca {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t mix_word(std::uint64_t h, std::uint64_t word) {
  for (int i = 0; i < 8; ++i) {
    h ^= (word >> (8 * i)) & 0xffU;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

std::uint64_t stable_hash(std::string_view bytes) { return splitmix64(fnv1a(kFnvOffset, bytes)); }

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view stage_tag,
                          std::string_view graph_id, std::uint64_t index) {
  // Field lengths are mixed in so ("ab","c") and ("a","bc") differ.
  std::uint64_t h = mix_word(kFnvOffset, master_seed);
  h = mix_word(h, stage_tag.size());
  h = fnv1a(h, stage_tag);
  h = mix_word(h, graph_id.size());
  h = fnv1a(h, graph_id);
  h = mix_word(h, index);
  return splitmix64(h);
}

std::string hex64(std::uint64_t x) {
  static constexpr std::array<char, 16> digits{'0', '1', '2', '3', '4', '5', '6', '7',
                                               '8', '9', 'a', 'b', 'c', 'd', 'e', 'f'};
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[x & 0xfU];
    x >>= 4;
  }
  return s;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

}  // namespace qaoapca
