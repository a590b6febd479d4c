#include "sicps/field.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace sicps {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  while (!is_prime(n)) ++n;
  return n;
}

PrimeField::PrimeField(std::uint64_t order) : q_(order) {
  if (order >= (std::uint64_t{1} << 32)) throw std::invalid_argument("field order must be below 2^32");
  if (!is_prime(order)) throw std::invalid_argument("field order " + std::to_string(order) + " is not prime");
}

Symbol PrimeField::pow(Symbol base, std::uint64_t exponent) const {
  Symbol result = reduce(1);
  Symbol b = reduce(base);
  while (exponent > 0) {
    if (exponent & 1U) result = mul(result, b);
    b = mul(b, b);
    exponent >>= 1U;
  }
  return result;
}

Symbol PrimeField::inv(Symbol a) const {
  if (reduce(a) == 0) throw std::domain_error("inverse of zero");
  return pow(a, q_ - 2);
}

void PrimeField::axpy(Packet& acc, Symbol coeff, const Packet& x) const {
  if (acc.size() != x.size()) throw std::invalid_argument("packet length mismatch");
  for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = add(acc[j], mul(coeff, x[j]));
}

void PrimeField::axmy(Packet& acc, Symbol coeff, const Packet& x) const {
  if (acc.size() != x.size()) throw std::invalid_argument("packet length mismatch");
  for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = sub(acc[j], mul(coeff, x[j]));
}

std::optional<std::vector<Packet>> PrimeField::solve(FieldMatrix a, std::vector<Packet> b) const {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("solve: right-hand side has wrong height");
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("solve: matrix is not square");
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Symbol scale = inv(a[col][col]);
    for (auto& v : a[col]) v = mul(v, scale);
    for (auto& v : b[col]) v = mul(v, scale);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Symbol factor = a[row][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] = sub(a[row][k], mul(factor, a[col][k]));
      axmy(b[row], factor, b[col]);
    }
  }
  return b;
}

std::size_t PrimeField::rank(FieldMatrix a) const {
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    const Symbol scale = inv(a[rank][col]);
    for (auto& v : a[rank]) v = mul(v, scale);
    for (std::size_t row = 0; row < rows; ++row) {
      if (row == rank || a[row][col] == 0) continue;
      const Symbol factor = a[row][col];
      for (std::size_t k = col; k < cols; ++k) a[row][k] = sub(a[row][k], mul(factor, a[rank][k]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace sicps
