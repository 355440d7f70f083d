#ifndef ORDFIX_CORE_HPP
#define ORDFIX_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ordfix {

/// Points of R^n. Grid functions, iterates and set elements all use this.
using Vector = std::vector<double>;

enum class ErrorCode {
  dimension_mismatch,
  invalid_argument,
  not_a_chain,
  precondition_failed,
  cone_exit,
  not_closed,
  non_finite,
  parse_error,
};

inline std::string_view to_string(ErrorCode c) {
  switch (c) {
  case ErrorCode::dimension_mismatch: return "dimension_mismatch";
  case ErrorCode::invalid_argument: return "invalid_argument";
  case ErrorCode::not_a_chain: return "not_a_chain";
  case ErrorCode::precondition_failed: return "precondition_failed";
  case ErrorCode::cone_exit: return "cone_exit";
  case ErrorCode::not_closed: return "not_closed";
  case ErrorCode::non_finite: return "non_finite";
  case ErrorCode::parse_error: return "parse_error";
  }
  return "unknown";
}

/// Every failure raised by the library. The code lets callers branch
/// without parsing the message.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

enum class Norm { sup, euclidean, l1 };

inline std::string_view to_string(Norm n) {
  switch (n) {
  case Norm::sup: return "sup";
  case Norm::euclidean: return "euclidean";
  case Norm::l1: return "l1";
  }
  return "unknown";
}

inline Norm parse_norm(std::string_view s) {
  if (s == "sup") return Norm::sup;
  if (s == "euclidean") return Norm::euclidean;
  if (s == "l1") return Norm::l1;
  throw Error(ErrorCode::invalid_argument, "unknown norm '" + std::string(s) + "'");
}

inline void require_same_dimension(std::span<const double> a,
                                   std::span<const double> b,
                                   std::string_view where) {
  if (a.size() != b.size())
    throw Error(ErrorCode::dimension_mismatch,
                std::string(where) + ": " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
}

inline double norm(std::span<const double> x, Norm kind = Norm::sup) {
  double acc = 0.0;
  switch (kind) {
  case Norm::sup:
    for (double v : x) acc = std::max(acc, std::abs(v));
    return acc;
  case Norm::euclidean:
    for (double v : x) acc += v * v;
    return std::sqrt(acc);
  case Norm::l1:
    for (double v : x) acc += std::abs(v);
    return acc;
  }
  return acc;
}

inline Vector subtract(std::span<const double> a, std::span<const double> b) {
  require_same_dimension(a, b, "subtract");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

/// ||a - b|| without materializing the difference.
inline double distance(std::span<const double> a, std::span<const double> b,
                       Norm kind = Norm::sup) {
  require_same_dimension(a, b, "distance");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = std::abs(a[i] - b[i]);
    switch (kind) {
    case Norm::sup: acc = std::max(acc, d); break;
    case Norm::euclidean: acc += d * d; break;
    case Norm::l1: acc += d; break;
    }
  }
  return kind == Norm::euclidean ? std::sqrt(acc) : acc;
}

} // namespace ordfix

#endif // ORDFIX_CORE_HPP
