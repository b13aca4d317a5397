#ifndef PERIND_ERROR_HPP
#define PERIND_ERROR_HPP

#include <stdexcept>
#include <string>

namespace perind {

enum class Errc {
  invalid_argument,    // malformed or out-of-domain input
  non_divisor,         // m does not divide n
  not_coprime,         // gcd precondition violated
  lemma_precondition,  // m = 1: no witness set with 1 <= q < n exists
  zero_module,         // exterior power outside [1, degree]
  modulus_mismatch,
  weight_mismatch,     // direct-sum obstruction does not vanish
  budget_exceeded,
  parse_error,
  unsupported,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace perind

#endif
