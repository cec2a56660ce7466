#ifndef KRONLAP_COMMON_HPP
#define KRONLAP_COMMON_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kronlap {

using Complex = std::complex<double>;

enum class ErrorCode {
  Argument,   // bad argument, size mismatch, grid mismatch
  Config,     // config text rejected
  SizeCap,    // a size cap was exceeded
  Singular,   // singular solve (kernel mode hit)
  Eigen,      // eigensolver failure
  Io,         // file I/O
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

// Hard limit for the per-factor dense eigensolver.
inline constexpr int kMaxFactorPoints = 8192;

struct SizeCaps {
  std::size_t max_total = std::size_t{1} << 24;  // product grid points
  std::size_t max_dense = 4096;                  // dense N x N assembly
};

}  // namespace kronlap

#endif
