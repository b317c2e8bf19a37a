#pragma once

#include <stdexcept>
#include <string>

namespace k3fm {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularMatrix : Error {
  explicit SingularMatrix(const std::string& msg = "matrix is singular") : Error(msg) {}
};
struct NotSymmetric : Error {
  explicit NotSymmetric(const std::string& msg = "matrix is not symmetric") : Error(msg) {}
};
struct OddDiagonal : Error {
  explicit OddDiagonal(const std::string& msg = "Gram matrix has odd diagonal entry") : Error(msg) {}
};
struct Degenerate : Error {
  explicit Degenerate(const std::string& msg = "lattice is degenerate") : Error(msg) {}
};
struct UnknownName : Error {
  explicit UnknownName(const std::string& name) : Error("unknown lattice name: " + name) {}
};
struct TooLarge : Error {
  explicit TooLarge(const std::string& msg = "group exceeds the brute-force size bound") : Error(msg) {}
};
struct NotIsotropic : Error {
  explicit NotIsotropic(const std::string& msg = "element is not isotropic") : Error(msg) {}
};
struct NotAGroup : Error {
  explicit NotAGroup(const std::string& msg = "element list is not closed under composition") : Error(msg) {}
};
struct NotSubgroup : Error {
  explicit NotSubgroup(const std::string& msg = "element list is not a subgroup") : Error(msg) {}
};
struct DNotAdmissible : Error {
  explicit DNotAdmissible(const std::string& msg = "d^2 does not divide n") : Error(msg) {}
};
struct MismatchedProblem : Error {
  explicit MismatchedProblem(const std::string& msg = "partners belong to different (n, d) problems")
      : Error(msg) {}
};
struct BadSignature : Error {
  explicit BadSignature(const std::string& msg = "lattice does not have signature (1, rank-1)")
      : Error(msg) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace k3fm
