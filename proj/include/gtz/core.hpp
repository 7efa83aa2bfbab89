#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace gtz {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Error kinds map one-to-one onto the C API status codes.
enum class ErrorKind { usage, numeric, solver, config, io };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class NumericError : public Error {
public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

class SolverError : public Error {
public:
  explicit SolverError(const std::string& what) : Error(ErrorKind::solver, what) {}
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

/// Per-level integer vector (level sizes, strides, multi-indices) for d in {1, 2}.
class Levels {
public:
  static constexpr int kMaxArity = 2;

  Levels() = default;
  Levels(std::initializer_list<std::int64_t> values);
  static Levels uniform(int arity, std::int64_t value);

  int arity() const noexcept { return arity_; }
  std::int64_t operator[](int j) const { return v_[static_cast<std::size_t>(j)]; }
  std::int64_t& operator[](int j) { return v_[static_cast<std::size_t>(j)]; }

  /// Product of all components (total matrix order for a size vector).
  std::int64_t product() const noexcept;
  bool all_equal(std::int64_t value) const noexcept;

  /// "50" for d=1, "50x50" for d=2.
  std::string to_string(char sep = 'x') const;
  /// Inverse of to_string; accepts 'x' or ',' separators.
  static Levels parse(const std::string& text);

  friend bool operator==(const Levels& a, const Levels& b) noexcept {
    return a.arity_ == b.arity_ && a.v_ == b.v_;
  }
  friend bool operator<(const Levels& a, const Levels& b) noexcept {
    if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
    return a.v_ < b.v_;
  }

private:
  int arity_ = 0;
  std::array<std::int64_t, kMaxArity> v_{};
};

} // namespace gtz
