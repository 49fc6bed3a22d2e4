#pragma once

#include <cstdint>
#include <vector>

namespace ksep {

// Truth table of an n-bit Boolean function over the 2^n hypercube vertices.
// Bit v of the table is the value at vertex v; the vertex index encodes the
// inputs with x1 as the MOST significant bit, so vertex 3 at n=3 is
// (x1,x2,x3) = (0,1,1). Function indices read the table LSB-first: bit v of
// the index is the value at vertex v.
class BooleanFunction {
 public:
  // Construction is allowed up to n=16 (learner tests use wide parity);
  // exhaustive censuses only ever instantiate n <= 4.
  static constexpr int max_n = 16;

  static BooleanFunction from_index(int n, std::uint64_t index);
  static BooleanFunction parity(int n);
  static BooleanFunction constant(int n, bool value);

  int n() const { return n_; }
  std::uint64_t vertex_count() const { return std::uint64_t{1} << n_; }
  bool value(std::uint64_t v) const;
  std::uint64_t count_true() const;
  bool is_constant() const;

  // Inverse of from_index; only defined while the index fits in 64 bits.
  std::uint64_t to_index() const;

  BooleanFunction complement() const;

  // (x1,...,xn) in {0,1}^n with x1 = MSB of the vertex index.
  static std::vector<int> vertex_coordinates(int n, std::uint64_t v);

  friend bool operator==(const BooleanFunction& a, const BooleanFunction& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  explicit BooleanFunction(int n);

  int n_ = 0;
  std::vector<std::uint64_t> words_;  // ceil(2^n / 64) words, spare bits zero
};

}  // namespace ksep
