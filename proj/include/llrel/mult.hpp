#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace llrel {

/// Base error type for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TypeError : Error {
  using Error::Error;
};

/// Three-valued answer of bounded decision procedures.
enum class Verdict { False, True, BoundLimited };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    default: return "bound-limited";
  }
}

/// A multiplicity in N u {w}. The infinite value absorbs addition.
class Mult {
 public:
  constexpr Mult() = default;
  constexpr Mult(std::uint32_t n) : n_(n == kOmegaRaw ? kOmegaRaw - 1 : n) {}

  static constexpr Mult omega() {
    Mult m;
    m.n_ = kOmegaRaw;
    return m;
  }

  constexpr bool is_omega() const { return n_ == kOmegaRaw; }
  constexpr bool is_zero() const { return n_ == 0; }
  constexpr std::uint32_t finite() const { return n_; }

  /// Contribution to the size measure used by enumeration bounds: finite
  /// counts weigh their value, an infinite entry weighs one.
  constexpr std::uint32_t weight() const { return is_omega() ? 1 : n_; }

  constexpr Mult& operator+=(Mult o) {
    if (is_omega() || o.is_omega())
      n_ = kOmegaRaw;
    else
      n_ += o.n_;
    return *this;
  }
  friend constexpr Mult operator+(Mult a, Mult b) { return a += b; }

  /// Scaling; w * 0 = 0.
  friend constexpr Mult operator*(Mult a, Mult b) {
    if (a.is_zero() || b.is_zero()) return Mult(0);
    if (a.is_omega() || b.is_omega()) return omega();
    return Mult(a.n_ * b.n_);
  }

  friend constexpr auto operator<=>(Mult a, Mult b) = default;
  friend constexpr bool operator==(Mult a, Mult b) = default;

  std::string str() const { return is_omega() ? "w" : std::to_string(n_); }

 private:
  static constexpr std::uint32_t kOmegaRaw = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t n_ = 0;
};

}  // namespace llrel
