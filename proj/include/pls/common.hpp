#ifndef PLS_COMMON_HPP
#define PLS_COMMON_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace pls {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Base for all library errors. Subclasses carry the condition named in the
// message; callers that need to distinguish catch the concrete type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NonSymmetric : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class Singular : public Error {
 public:
  using Error::Error;
};

class NotCentered : public Error {
 public:
  using Error::Error;
};

class DegenerateResponse : public Error {
 public:
  using Error::Error;
};

class DegenerateDirection : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class Breakdown : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

class ConstraintViolated : public Error {
 public:
  using Error::Error;
};

class DegenerateOls : public Error {
 public:
  using Error::Error;
};

class ResampleExhausted : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

inline bool all_finite(const Matrix& a) { return a.allFinite(); }

}  // namespace pls

#endif  // PLS_COMMON_HPP
