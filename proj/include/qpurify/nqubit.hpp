#pragma once

#include <span>

#include "qpurify/matrix.hpp"

namespace qpurify {

/// Embeds a k-qubit gate into an n-qubit operator.  `qubits` lists the
/// register positions (0 = most significant) the gate's own qubits map to,
/// in the gate's qubit order.
inline ComplexMatrix embed_gate(const ComplexMatrix& u, std::span<const int> qubits,
                                int n) {
  const int k = static_cast<int>(qubits.size());
  if (u.rows() != (1 << k) || u.cols() != (1 << k))
    throw std::invalid_argument("embed_gate: gate dimension mismatch");
  for (int q : qubits)
    if (q < 0 || q >= n) throw std::invalid_argument("embed_gate: qubit out of range");
  const int dim = 1 << n;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    int sub_in = 0;
    for (int j = 0; j < k; ++j)
      sub_in = (sub_in << 1) | ((col >> (n - 1 - qubits[j])) & 1);
    for (int sub_out = 0; sub_out < (1 << k); ++sub_out) {
      const Complex amp = u(sub_out, sub_in);
      if (amp == Complex{0.0, 0.0}) continue;
      int row = col;
      for (int j = 0; j < k; ++j) {
        const int bit = (sub_out >> (k - 1 - j)) & 1;
        const int pos = n - 1 - qubits[j];
        row = (row & ~(1 << pos)) | (bit << pos);
      }
      out(row, col) += amp;
    }
  }
  return out;
}

inline ComplexMatrix embed_gate(const ComplexMatrix& u, std::initializer_list<int> qubits,
                                int n) {
  std::vector<int> q(qubits);
  return embed_gate(u, std::span<const int>(q), n);
}

}  // namespace qpurify
