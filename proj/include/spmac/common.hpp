#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spmac {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

// All information quantities in this library are in bits (log base 2).
inline double xlog2x(double u) { return u > 0.0 ? u * std::log2(u) : 0.0; }

inline double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw std::domain_error("binary_entropy: argument outside [0,1]");
    return -xlog2x(x) - xlog2x(1.0 - x);
}

// Default numeric tolerances. Dimensions in this project are tiny (<= 12),
// so double precision supports tight checks.
namespace tol {
inline constexpr double kNorm = 1e-12;
inline constexpr double kHermitian = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kPovm = 1e-10;
inline constexpr double kProb = 1e-12;
}  // namespace tol

// SplitMix64. Used to derive independent substream seeds from a single run
// seed so that parallel work stays bit-reproducible.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    return splitmix64(s);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace spmac
