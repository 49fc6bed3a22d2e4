#include "ksep/boolfn.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace ksep {

namespace {

void check_n(int n) {
  if (n < 1 || n > BooleanFunction::max_n)
    throw std::out_of_range("bit count n must be in [1, " +
                            std::to_string(BooleanFunction::max_n) + "], got " +
                            std::to_string(n));
}

}  // namespace

BooleanFunction::BooleanFunction(int n) : n_(n) {
  words_.assign(((std::uint64_t{1} << n) + 63) / 64, 0);
}

BooleanFunction BooleanFunction::from_index(int n, std::uint64_t index) {
  check_n(n);
  if (n > 6)
    throw std::out_of_range("function indices are only usable up to n=6");
  std::uint64_t vertices = std::uint64_t{1} << n;
  if (vertices < 64 && index >> vertices)
    throw std::out_of_range("function index out of range for n=" + std::to_string(n));
  BooleanFunction f(n);
  f.words_[0] = index;
  return f;
}

BooleanFunction BooleanFunction::parity(int n) {
  check_n(n);
  BooleanFunction f(n);
  for (std::uint64_t v = 0; v < f.vertex_count(); ++v)
    if (std::popcount(v) & 1) f.words_[v >> 6] |= std::uint64_t{1} << (v & 63);
  return f;
}

BooleanFunction BooleanFunction::constant(int n, bool value) {
  check_n(n);
  BooleanFunction f(n);
  if (value) {
    for (auto& w : f.words_) w = ~std::uint64_t{0};
    std::uint64_t vertices = f.vertex_count();
    if (vertices < 64) f.words_[0] = (std::uint64_t{1} << vertices) - 1;
  }
  return f;
}

bool BooleanFunction::value(std::uint64_t v) const {
  if (v >= vertex_count()) throw std::out_of_range("vertex out of range");
  return (words_[v >> 6] >> (v & 63)) & 1;
}

std::uint64_t BooleanFunction::count_true() const {
  std::uint64_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool BooleanFunction::is_constant() const {
  std::uint64_t t = count_true();
  return t == 0 || t == vertex_count();
}

std::uint64_t BooleanFunction::to_index() const {
  if (n_ > 6) throw std::out_of_range("truth table wider than 64 bits");
  return words_[0];
}

BooleanFunction BooleanFunction::complement() const {
  BooleanFunction f(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) f.words_[i] = ~words_[i];
  std::uint64_t vertices = vertex_count();
  if (vertices < 64) f.words_[0] &= (std::uint64_t{1} << vertices) - 1;
  return f;
}

std::vector<int> BooleanFunction::vertex_coordinates(int n, std::uint64_t v) {
  check_n(n);
  if (v >= (std::uint64_t{1} << n)) throw std::out_of_range("vertex out of range");
  std::vector<int> x(n);
  for (int i = 0; i < n; ++i) x[i] = (v >> (n - 1 - i)) & 1;
  return x;
}

}  // namespace ksep
