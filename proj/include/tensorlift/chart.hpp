#pragma once

#include <optional>
#include <string>

#include "tensorlift/error.hpp"
#include "tensorlift/expr.hpp"

namespace tensorlift {

/// A coordinate slot on an extended chart: coordinate x^(level)index and the
/// matching frame field d/dx^(level)index.
struct FrameIndex {
  int level = 0;
  int index = 1;
  auto operator<=>(const FrameIndex&) const = default;
  VarRef var() const { return VarRef{level, index}; }
};

/// A coordinate chart of base dimension n extended to order k: coordinates
/// x^(r)a for r = 0..k, a = 1..n. Order 0 is the base manifold itself.
///
/// When complex_pairing m is present (requires n = 2m), coordinate a in 1..m
/// is paired with a+m as an (x, y) partner for the canonical complex
/// structure and the Wirtinger frame.
struct ExtendedChart {
  int base_dim = 1;
  int order = 0;
  std::optional<int> complex_pairing;

  static ExtendedChart base(int n, std::optional<int> m = std::nullopt) {
    ExtendedChart c{n, 0, m};
    c.validate();
    return c;
  }

  ExtendedChart at_order(int k) const {
    ExtendedChart c{base_dim, k, complex_pairing};
    c.validate();
    return c;
  }

  void validate() const {
    if (base_dim < 1) throw Error("chart dimension must be >= 1");
    if (order < 0) throw Error("order must be >= 0");
    if (complex_pairing) {
      if (*complex_pairing < 1 || 2 * *complex_pairing != base_dim) {
        throw Error("complex pairing requires dim = 2m");
      }
    }
  }

  /// Dimension of the extended manifold, n*(order+1).
  int frame_dim() const { return base_dim * (order + 1); }

  int flat(FrameIndex f) const { return f.level * base_dim + (f.index - 1); }
  FrameIndex unflat(int i) const { return FrameIndex{i / base_dim, i % base_dim + 1}; }

  bool operator==(const ExtendedChart& o) const {
    return base_dim == o.base_dim && order == o.order && complex_pairing == o.complex_pairing;
  }

  std::string str() const {
    std::string s = "chart(dim=" + std::to_string(base_dim) + ", order=" + std::to_string(order);
    if (complex_pairing) s += ", m=" + std::to_string(*complex_pairing);
    return s + ")";
  }
};

}  // namespace tensorlift
