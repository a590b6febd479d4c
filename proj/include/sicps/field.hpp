#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace sicps {

bool is_prime(std::uint64_t n);

/// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

using Symbol = std::uint32_t;
/// A message is a fixed-length vector of field symbols; linear maps act coordinate-wise.
using Packet = std::vector<Symbol>;
using FieldMatrix = std::vector<std::vector<Symbol>>;

/// Arithmetic modulo a prime q < 2^32.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t order);

  std::uint64_t order() const { return q_; }

  Symbol reduce(std::uint64_t x) const { return static_cast<Symbol>(x % q_); }
  Symbol add(Symbol a, Symbol b) const { return static_cast<Symbol>((std::uint64_t{a} + b) % q_); }
  Symbol sub(Symbol a, Symbol b) const { return static_cast<Symbol>((std::uint64_t{a} + q_ - b) % q_); }
  Symbol mul(Symbol a, Symbol b) const { return static_cast<Symbol>((std::uint64_t{a} * b) % q_); }
  Symbol pow(Symbol base, std::uint64_t exponent) const;
  /// Throws std::domain_error on zero.
  Symbol inv(Symbol a) const;

  /// acc += coeff * x, coordinate-wise.
  void axpy(Packet& acc, Symbol coeff, const Packet& x) const;
  /// acc -= coeff * x, coordinate-wise.
  void axmy(Packet& acc, Symbol coeff, const Packet& x) const;

  /// Solves A * X = B for square A by Gauss-Jordan elimination, where each row of
  /// B is a packet. Returns nullopt when A is singular.
  std::optional<std::vector<Packet>> solve(FieldMatrix a, std::vector<Packet> b) const;

  std::size_t rank(FieldMatrix a) const;

 private:
  std::uint64_t q_;
};

}  // namespace sicps
