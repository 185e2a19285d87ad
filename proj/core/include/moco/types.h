#ifndef MOCO_TYPES_H_
#define MOCO_TYPES_H_

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace moco {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class ErrorCode {
  kNonFiniteValue,
  kLineSearchDivergence,
  kLmoFailure,
  kEigFailure,
  kUnsupportedCone,
  kRankTooLarge,
  kInnerSolverStall,
  kDegenerateSignal,
  kInvalidArgument,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. The code is
// stable and machine readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kLineSearchDivergence: return "LineSearchDivergence";
    case ErrorCode::kLmoFailure: return "LmoFailure";
    case ErrorCode::kEigFailure: return "EigFailure";
    case ErrorCode::kUnsupportedCone: return "UnsupportedCone";
    case ErrorCode::kRankTooLarge: return "RankTooLarge";
    case ErrorCode::kInnerSolverStall: return "InnerSolverStall";
    case ErrorCode::kDegenerateSignal: return "DegenerateSignal";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace moco

#endif  // MOCO_TYPES_H_
