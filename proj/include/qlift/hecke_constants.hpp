#pragma once

namespace qlift {

enum class GridVariant { mod24, mod8 };

// Placement of the sign factors in the half-integral T_{p^2}:
//   b(n) = a(p^2 n) + chi(p) eps(p) ((-1)^k n_red / p) p^{k-1} a(n) + chi(p^2) p^{2k-1} a(n/p^2)
// eps(p) = kron(eps_top, p); n_red = n / index_divisor.
struct Tp2Convention {
  long eps_top;
  long index_divisor;
};

inline constexpr Tp2Convention kTp2Mod24{12, 1};
inline constexpr Tp2Convention kTp2Mod8{1, 3};

inline constexpr Tp2Convention tp2_convention(GridVariant v) {
  return v == GridVariant::mod24 ? kTp2Mod24 : kTp2Mod8;
}

}  // namespace qlift
